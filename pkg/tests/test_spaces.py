import random

import pytest

from fanlab import (
    FuncFamily,
    ValidationError,
    build_space,
    clopen_check,
    explicit_hfamily,
    export_space,
    extract_from_space,
    induced_point_set,
    is_separation,
    probe_fan_closure,
    product_open_meets,
    space_from_json,
    space_separation_check,
    space_to_json,
    sum_threshold_family,
    tabulate_intersections,
)
from fanlab.verification import random_hfamily, random_labeling


def threshold_family(h: int, size: int):
    table = {(i, j): h for i in range(size) for j in range(i + 1, size)}
    return sum_threshold_family(FuncFamily.explicit(table), range(size))


class TestBuildSpace:
    def test_empty_family(self):
        space = build_space(explicit_hfamily([0, 1], {}))
        assert space.isolated == ()
        assert space.neighborhood(0, 0) == frozenset({("idx", 0)})

    def test_single_cell(self):
        space = build_space(explicit_hfamily([0, 1], {(0, 1): [(0, 0)]}))
        assert space.isolated == (((0, 0), (1, 0)),)
        assert ((0, 0), (1, 0)) in space.neighborhood(0, 0)
        assert ((0, 0), (1, 0)) not in space.neighborhood(0, 1)

    def test_isolated_point_count_matches_set_sizes(self):
        family = FuncFamily.explicit({(0, 1): 2})
        space = build_space(sum_threshold_family(family, [0, 1]))
        assert len(space.isolated) == 6

    def test_neighborhoods_decrease(self):
        rng = random.Random(30)
        for _ in range(30):
            space = build_space(random_hfamily(rng, rng.randint(2, 4)))
            for gamma in space.indices:
                for k in range(5):
                    assert space.neighborhood(gamma, k + 1) <= space.neighborhood(gamma, k)

    def test_index_points_never_shared(self):
        rng = random.Random(31)
        for _ in range(30):
            space = build_space(random_hfamily(rng, rng.randint(2, 4)))
            for gamma in space.indices:
                for other in space.indices:
                    if other != gamma:
                        assert ("idx", other) not in space.neighborhood(gamma, 0)


class TestSeparationCheck:
    def test_empty_space_always_separates(self):
        space = build_space(explicit_hfamily([0, 1, 2], {}))
        assert space_separation_check(space, [0, 1, 2], {0: 0, 1: 0, 2: 0})

    def test_shared_point_blocks(self):
        h = explicit_hfamily([0, 1], {(0, 1): [(0, 0)]})
        space = build_space(h)
        assert not space_separation_check(space, [0, 1], {0: 0, 1: 0})
        assert space_separation_check(space, [0, 1], {0: 0, 1: 1})

    def test_matches_solver_view_everywhere(self):
        rng = random.Random(32)
        for _ in range(300):
            h = random_hfamily(rng, rng.randint(2, 5))
            space = build_space(h)
            subset = [a for a in h.indices if rng.random() < 0.7]
            f = random_labeling(rng, subset, 7)
            assert space_separation_check(space, subset, f) == is_separation(h, subset, f)


class TestClopen:
    def test_empty_space(self):
        space = build_space(explicit_hfamily([0, 1], {}))
        assert clopen_check(space, 0, 0)

    def test_single_cell_at_depth_zero(self):
        space = build_space(explicit_hfamily([0, 1], {(0, 1): [(0, 0)]}))
        assert clopen_check(space, 0, 0)

    def test_small_thresholds_exhaustively(self):
        for h in range(5):
            space = build_space(threshold_family(h, 3))
            for gamma in space.indices:
                for k in range(6):
                    assert clopen_check(space, gamma, k)


class TestFanClosure:
    def test_empty_family_escapes_at_zero(self):
        h = explicit_hfamily([0, 1], {})
        probe = probe_fan_closure(h, [0, 1], 0)
        assert not probe.adversary_wins
        assert probe.escape == {0: 0, 1: 0}

    def test_threshold_three_blocked_then_escapes(self):
        h = threshold_family(3, 2)
        assert probe_fan_closure(h, [0, 1], 1).adversary_wins
        probe = probe_fan_closure(h, [0, 1], 2)
        assert probe.escape == {0: 2, 1: 2}
        assert not product_open_meets(induced_point_set(h, [0, 1]), probe.escape)

    def test_adversary_means_every_labeling_meets_the_points(self):
        import itertools

        h = threshold_family(3, 2)
        points = induced_point_set(h, [0, 1])
        for values in itertools.product(range(2), repeat=2):
            assert product_open_meets(points, dict(zip([0, 1], values)))


class TestExport:
    def test_json_round_trip(self):
        rng = random.Random(33)
        for _ in range(50):
            space = build_space(random_hfamily(rng, rng.randint(2, 4)))
            assert space_from_json(space_to_json(space)) == space

    def test_dot_output_shape(self):
        space = build_space(explicit_hfamily([0, 1], {(0, 1): [(0, 0)]}))
        dot = export_space(space, "dot")
        assert dot.count("[shape=box") == 2
        assert dot.count("[shape=point") == 1
        assert dot.count("--") == 2

    def test_unknown_format(self):
        space = build_space(explicit_hfamily([0, 1], {}))
        with pytest.raises(ValidationError):
            export_space(space, "svg")

    def test_json_export_is_deterministic(self):
        h = explicit_hfamily([0, 1, 2], {(0, 2): [(1, 1)], (1, 2): [(2, 0)]})
        assert export_space(build_space(h)) == export_space(build_space(h))

    def test_rejects_malformed_points(self):
        with pytest.raises(ValidationError):
            space_from_json({"indices": [0, 1], "isolated": [[[1, 0], [0, 0]]]})


class TestTabulateAndExtract:
    def test_round_trip_recovers_the_family(self):
        rng = random.Random(34)
        for _ in range(50):
            h = random_hfamily(rng, rng.randint(2, 4), coord_max=5)
            space = build_space(h)
            depth = 2
            for a, b in h.pairs():
                cdw = h.get(a, b)
                depth = max(depth, cdw.max_n() + 2, cdw.max_m() + 2)
            extracted = extract_from_space(tabulate_intersections(space, depth))
            for a, b in h.pairs():
                assert extracted.family.get(a, b) == h.get(a, b)

    def test_table_is_symmetric_and_monotone(self):
        h = explicit_hfamily([0, 1], {(0, 1): [(2, 1)]})
        data = tabulate_intersections(build_space(h), 4)
        data.validate_monotone()
        for i, n, j, m in data.cells:
            assert (j, m, i, n) in data.cells
