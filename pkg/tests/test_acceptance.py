"""Acceptance suite: every headline property at full scale, one line each.

Run with `pytest tests/test_acceptance.py -s` to see the PASS lines; each
test also enforces its case count, zero-failure requirement, and, where one
is stated, its wall-clock budget.
"""

import time

import pytest

from fanlab import verification as v


def _require(report, *, cases: int, budget: float | None = None):
    print(report.line())
    assert report.cases >= cases, f"expected at least {cases} cases, ran {report.cases}"
    assert report.passed, f"{report.name}: {report.failures[:5]}"
    if budget is not None:
        assert report.seconds < budget, f"{report.name} took {report.seconds:.1f}s"


SEED = 2024


def test_criterion_1_oracle_equivalence():
    _require(v.check_oracle_equivalence(SEED, 500), cases=500, budget=10.0)


def test_criterion_2_space_separation_correspondence():
    _require(v.check_correspondence(SEED, 1000), cases=1000, budget=10.0)


def test_criterion_3_extraction_round_trip():
    _require(v.check_extraction_roundtrip(SEED, 200), cases=200)


def test_criterion_4_witness_labelings():
    _require(v.check_separation_labeling(SEED, 100), cases=100)


def test_criterion_5_constant_labeling_algebra():
    _require(v.check_constant_diagonal(10, 10), cases=121)


def test_criterion_6_weak_bound_certification():
    _require(v.check_weak_bounds(SEED, 100), cases=100, budget=60.0)


def test_criterion_7_exact_quantities():
    _require(v.check_exact_quantities(), cases=3)


def test_criterion_8_structural_suites():
    start = time.perf_counter()
    _require(v.check_staircases(SEED, 10_000), cases=10_000)
    _require(v.check_walks(SEED, 10_000), cases=10_000)
    _require(v.check_clopen(SEED), cases=400)
    print(f"structural suites total: {time.perf_counter() - start:.2f}s")


def test_criterion_9_growth_monotonicity(capsys):
    report = v.check_growth(SEED)
    with capsys.disabled():
        print()
        print(report.line())
        # emit the full table for inspection
        from fanlab import FuncFamily, LadderSystem, first_limits, sum_threshold_family
        from fanlab.verification import W2, growth_rows

        family = FuncFamily.walk(LadderSystem.canonical(), W2)
        limits = first_limits(W2, 8)
        h = sum_threshold_family(family, limits)
        rows = growth_rows(h, [limits[:n] for n in range(2, 9)])
        print("N,min_cap,min_sum,witness_max")
        for row in rows:
            print(f"{row['N']},{row['min_cap']},{row['min_sum']},{row['witness_max']}")
    assert report.passed, report.failures[:5]


def test_supporting_invariants_all_pass():
    """The remaining invariant checks from every module, at full scale."""
    for report in (
        v.check_ordinal_roundtrip(SEED, 10_000),
        v.check_ordinal_order(SEED, 10_000),
        v.check_ladder_monotone(SEED, 1000),
        v.check_ladder_cofinal(SEED, 300),
        v.check_separation_monotone(SEED, 200),
        v.check_space_bases(SEED, 150),
        v.check_export_roundtrip(SEED, 100),
        v.check_disagreement_symmetry(SEED, 200),
        v.check_bound_extension_monotone(SEED, 60),
    ):
        print(report.line())
        assert report.passed, f"{report.name}: {report.failures[:5]}"
