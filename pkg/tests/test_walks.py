import random

import pytest

from fanlab import (
    OMEGA,
    CSequence,
    DomainError,
    LadderSystem,
    Ordinal,
    parse_ordinal,
    random_ordinal,
)

o = Ordinal.from_int
W2 = parse_ordinal("w*2")


@pytest.fixture
def cs():
    return CSequence(LadderSystem.canonical())


class TestStep:
    def test_examples(self, cs):
        assert cs.step(OMEGA, W2) == OMEGA
        assert cs.step(o(5), OMEGA) == o(5)
        assert cs.step(o(5), parse_ordinal("w+1")) == OMEGA

    def test_bounds(self, cs):
        rng = random.Random(0)
        bound = parse_ordinal("w^(w)")
        for _ in range(300):
            x, y = random_ordinal(rng, bound), random_ordinal(rng, bound)
            if x == y:
                continue
            alpha, beta = (x, y) if x < y else (y, x)
            step = cs.step(alpha, beta)
            assert alpha <= step < beta

    def test_rejects_bad_order(self, cs):
        with pytest.raises(DomainError):
            cs.step(W2, OMEGA)
        with pytest.raises(DomainError):
            cs.step(OMEGA, OMEGA)


class TestWalk:
    def test_examples(self, cs):
        assert cs.walk(OMEGA, OMEGA).steps == (OMEGA,)
        assert cs.rho2(OMEGA, OMEGA) == 0
        assert cs.walk(OMEGA, W2).steps == (W2, OMEGA)
        assert cs.rho2(OMEGA, W2) == 1
        assert cs.walk(o(5), parse_ordinal("w+1")).steps == (
            parse_ordinal("w+1"),
            OMEGA,
            o(5),
        )
        assert cs.rho2(o(5), parse_ordinal("w+1")) == 2

    def test_rejects_bad_order(self, cs):
        with pytest.raises(DomainError):
            cs.walk(W2, OMEGA)

    def test_trace_shape(self, cs):
        rng = random.Random(1)
        bound = parse_ordinal("w^(w)")
        for _ in range(500):
            x, y = random_ordinal(rng, bound), random_ordinal(rng, bound)
            alpha, beta = (x, y) if x <= y else (y, x)
            trace = cs.walk(alpha, beta).steps
            assert trace[0] == beta and trace[-1] == alpha
            assert all(a > b for a, b in zip(trace, trace[1:]))
            assert len(trace) < 10_000

    def test_recursion_identity_and_positivity(self, cs):
        rng = random.Random(2)
        bound = parse_ordinal("w^(w)")
        for _ in range(500):
            x, y = random_ordinal(rng, bound), random_ordinal(rng, bound)
            if x == y:
                continue
            alpha, beta = (x, y) if x < y else (y, x)
            assert cs.rho2(alpha, beta) >= 1
            assert cs.rho2(alpha, beta) == cs.rho2(alpha, cs.step(alpha, beta)) + 1

    def test_deterministic_across_instances(self):
        rng = random.Random(3)
        first = CSequence(LadderSystem.canonical())
        second = CSequence(LadderSystem.canonical())
        bound = parse_ordinal("w^(3)")
        for _ in range(100):
            x, y = random_ordinal(rng, bound), random_ordinal(rng, bound)
            alpha, beta = (x, y) if x <= y else (y, x)
            assert first.walk(alpha, beta) == second.walk(alpha, beta)

    def test_memo_returns_equal_traces(self, cs):
        a, b = OMEGA, parse_ordinal("w^(2)+w*3+7")
        assert cs.walk(a, b) is cs.walk(a, b)

    def test_seeded_ladders_also_walk(self):
        cs = CSequence(LadderSystem.seeded(11))
        rng = random.Random(4)
        bound = parse_ordinal("w^(3)")
        for _ in range(200):
            x, y = random_ordinal(rng, bound), random_ordinal(rng, bound)
            alpha, beta = (x, y) if x <= y else (y, x)
            trace = cs.walk(alpha, beta).steps
            assert trace[0] == beta and trace[-1] == alpha
