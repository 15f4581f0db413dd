"""Spaces induced by a c.d.w. family: index points plus isolated pair points.

A family over an index set A yields the space whose isolated points are the
tuples ((a, n), (b, m)) with a < b in A and (n, m) in the family's set for
(a, b); each index point g has the decreasing neighborhood base U_k(g)
consisting of g itself and the isolated points naming g in coordinate >= k.
A labeling f separates a subset exactly when the neighborhoods U_f(g)(g)
are pairwise disjoint, which is what ties these spaces to the solvers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .cdw import HFamily, SpaceData
from .errors import ValidationError
from .ordinals import index_from_json, index_to_json
from .separation import solve_separation


@dataclass(frozen=True)
class CombSpace:
    indices: tuple
    isolated: tuple  # of ((a, n), (b, m)) with a < b both in indices

    def position(self, value) -> int:
        return self.indices.index(value)

    def neighborhood(self, gamma, k: int) -> frozenset:
        """U_k(gamma): the point itself plus incident isolated points of depth >= k."""
        points = {("idx", gamma)}
        for p in self.isolated:
            (a, n), (b, m) = p
            if (a == gamma and n >= k) or (b == gamma and m >= k):
                points.add(p)
        return frozenset(points)


def build_space(h: HFamily, A=None) -> CombSpace:
    """Materialize the space of a family over A (default: all its indices)."""
    A = tuple(sorted(h.indices if A is None else set(A)))
    isolated = []
    for i, a in enumerate(A):
        for b in A[i + 1 :]:
            for n, m in sorted(h.get(a, b).points()):
                isolated.append(((a, n), (b, m)))
    return CombSpace(A, tuple(isolated))


def space_separation_check(space: CombSpace, A, f: dict) -> bool:
    """True iff the neighborhoods U_f(g)(g), g in A, are pairwise disjoint.

    Computed by scanning the isolated points; index points are never shared.
    """
    chosen = set(A)
    for (a, n), (b, m) in space.isolated:
        if a in chosen and b in chosen and n >= f[a] and m >= f[b]:
            return False
    return True


def clopen_check(space: CombSpace, gamma, k: int) -> bool:
    """Exhaustively verify that the complement of U_k(gamma) is open.

    Isolated points are open singletons, so the only question is whether
    every other index point has a basic neighborhood missing U_k(gamma).
    Depths beyond one plus the largest coordinate incident to gamma leave
    only the index point itself, so the search below is complete.
    """
    target = space.neighborhood(gamma, k)
    depth_cap = 1
    for (a, n), (b, m) in space.isolated:
        if a == gamma or b == gamma:
            depth_cap = max(depth_cap, n + 1, m + 1)
    for other in space.indices:
        if other == gamma:
            continue
        if not any(
            space.neighborhood(other, j).isdisjoint(target) for j in range(depth_cap + 1)
        ):
            return False
    return True


# -- fan view ----------------------------------------------------------------


@dataclass(frozen=True)
class FanClosureResult:
    adversary_wins: bool
    escape: dict | None  # labeling g with V_g missing the point set, if any


def induced_point_set(h: HFamily, B) -> list:
    """S_B: the fan-square points ((a, n), (b, m)) the family puts over B."""
    B = sorted(set(B))
    points = []
    for i, a in enumerate(B):
        for b in B[i + 1 :]:
            for n, m in h.get(a, b).points():
                points.append(((a, n), (b, m)))
    return points


def product_open_meets(points, g: dict) -> bool:
    """Whether the basic product open coded by g meets the given point set."""
    return any(n >= g[a] and m >= g[b] for (a, n), (b, m) in points)


def probe_fan_closure(h: HFamily, B, cap: int) -> FanClosureResult:
    """Adversary wins iff every labeling with range <= cap meets the point set.

    That is exactly failure of separation at the cap, so the solver decides it.
    """
    result = solve_separation(h, sorted(set(B)), cap)
    if result.separated:
        return FanClosureResult(False, result.witness)
    return FanClosureResult(True, None)


# -- serialization -----------------------------------------------------------


def space_to_json(space: CombSpace) -> dict:
    pos = {v: i for i, v in enumerate(space.indices)}
    return {
        "indices": [index_to_json(v) for v in space.indices],
        "isolated": [
            [[pos[a], n], [pos[b], m]] for (a, n), (b, m) in sorted(
                space.isolated, key=lambda p: (pos[p[0][0]], pos[p[1][0]], p[0][1], p[1][1])
            )
        ],
    }


def space_from_json(data: dict) -> CombSpace:
    indices = tuple(index_from_json(v) for v in data["indices"])
    isolated = []
    for (i, n), (j, m) in data["isolated"]:
        if not (0 <= i < len(indices) and 0 <= j < len(indices)) or i >= j:
            raise ValidationError(f"bad isolated point [[{i},{n}],[{j},{m}]]")
        isolated.append(((indices[i], int(n)), (indices[j], int(m))))
    return CombSpace(indices, tuple(sorted(isolated, key=lambda p: (
        indices.index(p[0][0]), indices.index(p[1][0]), p[0][1], p[1][1]))))


def space_to_dot(space: CombSpace, k: int = 0) -> str:
    """DOT graph: index and isolated nodes, edges p in U_k(gamma)."""
    pos = {v: i for i, v in enumerate(space.indices)}
    lines = ["graph space {"]
    for i, v in enumerate(space.indices):
        lines.append(f'  idx_{i} [shape=box, label="{v}"];')
    names = {}
    for p in sorted(space.isolated, key=lambda p: (pos[p[0][0]], pos[p[1][0]], p[0][1], p[1][1])):
        (a, n), (b, m) = p
        name = f"iso_{pos[a]}_{n}_{pos[b]}_{m}"
        names[p] = name
        lines.append(f'  {name} [shape=point, label="(({a},{n}),({b},{m}))"];')
    for gamma in space.indices:
        for p in sorted(space.neighborhood(gamma, k) - {("idx", gamma)},
                        key=lambda p: (pos[p[0][0]], pos[p[1][0]], p[0][1], p[1][1])):
            lines.append(f"  idx_{pos[gamma]} -- {names[p]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_space(space: CombSpace, fmt: str = "json", k: int = 0) -> str:
    if fmt == "json":
        return json.dumps(space_to_json(space), indent=2, sort_keys=True) + "\n"
    if fmt == "dot":
        return space_to_dot(space, k)
    raise ValidationError(f"unknown space format {fmt!r}")


def tabulate_intersections(space: CombSpace, depth: int) -> SpaceData:
    """The true neighborhood-intersection table of a built space."""
    hoods = {}
    for i, gamma in enumerate(space.indices):
        for n in range(depth):
            hoods[(i, n)] = space.neighborhood(gamma, n)
    cells = set()
    for i in range(len(space.indices)):
        for j in range(len(space.indices)):
            if i == j:
                continue
            for n in range(depth):
                for m in range(depth):
                    if not hoods[(i, n)].isdisjoint(hoods[(j, m)]):
                        cells.add((i, n, j, m))
    return SpaceData(space.indices, depth, frozenset(cells))
