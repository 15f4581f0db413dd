"""Finite downward-closed subsets of omega x omega and indexed families of them.

A downward-closed set is stored by its staircase: the antichain of maximal
elements, sorted by first coordinate.  Membership of (n, m) is a binary
search for the first staircase point with first coordinate >= n followed by
a dominance test.  Families assign such a set to every increasing index pair,
either from explicit tables, from an integer-valued function family via the
sum threshold n + m <= h, or by extraction from neighborhood-intersection
data of a space.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import DomainError, ValidationError
from .families import FuncFamily
from .ordinals import index_from_json, index_to_json


@dataclass(frozen=True)
class CdwSet:
    """Finite downward-closed set, held as its staircase antichain."""

    staircase: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = None
        for n, m in self.staircase:
            if n < 0 or m < 0:
                raise ValidationError("staircase coordinates must be naturals")
            if prev is not None and (n <= prev[0] or m >= prev[1]):
                raise ValidationError(
                    "staircase must have strictly increasing n and decreasing m"
                )
            prev = (n, m)
        object.__setattr__(self, "_firsts", tuple(n for n, _ in self.staircase))

    def __contains__(self, pair: tuple[int, int]) -> bool:
        n, m = pair
        if n < 0 or m < 0:
            return False
        i = bisect_left(self._firsts, n)
        return i < len(self.staircase) and m <= self.staircase[i][1]

    @property
    def is_empty(self) -> bool:
        return not self.staircase

    def max_m_for(self, n: int) -> int:
        """Largest m with (n, m) in the set, or -1 if no such m."""
        i = bisect_left(self._firsts, n)
        return self.staircase[i][1] if i < len(self.staircase) else -1

    def max_n(self) -> int:
        return self.staircase[-1][0] if self.staircase else -1

    def max_m(self) -> int:
        return self.staircase[0][1] if self.staircase else -1

    def points(self) -> Iterator[tuple[int, int]]:
        """All members, column by column."""
        prev_n = -1
        for n, m in self.staircase:
            for col in range(prev_n + 1, n + 1):
                for row in range(m + 1):
                    yield (col, row)
            prev_n = n

    def __len__(self) -> int:
        total, prev_n = 0, -1
        for n, m in self.staircase:
            total += (n - prev_n) * (m + 1)
            prev_n = n
        return total


EMPTY_CDW = CdwSet(())


def downward_close(pairs: Iterable[tuple[int, int]]) -> CdwSet:
    """Smallest downward-closed superset, i.e. the staircase of the input."""
    frontier: list[tuple[int, int]] = []
    best = -1
    for n, m in sorted(set(pairs), reverse=True):
        if n < 0 or m < 0:
            raise ValidationError("pairs must have natural coordinates")
        if m > best:
            frontier.append((n, m))
            best = m
    return CdwSet(tuple(reversed(frontier)))


def sum_threshold(family: FuncFamily, alpha, beta) -> CdwSet:
    """The set {(n, m) : n + m <= h} for h the family value at (alpha, beta)."""
    h = family.value(alpha, beta)
    return CdwSet(tuple((t, h - t) for t in range(h + 1)))


class HFamily:
    """Assignment of a downward-closed set to every pair a < b of indices."""

    def __init__(self, indices, kind: str, entries=None, family: FuncFamily | None = None):
        self.indices = tuple(sorted(set(indices)))
        self.kind = kind
        self._pos = {v: i for i, v in enumerate(self.indices)}
        if kind == "sum_threshold":
            if family is None:
                raise ValidationError("sum_threshold families need a function family")
            self.family = family
            if family.bound is not None:
                for v in self.indices:
                    if not isinstance(v, int) and v >= family.bound:
                        raise ValidationError(f"index {v} is not below the family bound")
            self._entries = None
        elif kind in ("explicit", "from_space"):
            self.family = family
            self._entries = {}
            for (a, b), cdw in (entries or {}).items():
                if a not in self._pos or b not in self._pos or not a < b:
                    raise ValidationError(f"bad entry key ({a}, {b})")
                if not isinstance(cdw, CdwSet):
                    raise ValidationError("entries must be CdwSet values")
                if not cdw.is_empty:
                    self._entries[(a, b)] = cdw
        else:
            raise ValidationError(f"unknown family kind {kind!r}")

    def position(self, value) -> int:
        try:
            return self._pos[value]
        except KeyError:
            raise DomainError(f"{value} is not an index of this family") from None

    def get(self, a, b) -> CdwSet:
        if self.position(a) >= self.position(b):
            raise DomainError(f"need a < b, got {a}, {b}")
        if self._entries is None:
            return sum_threshold(self.family, a, b)
        return self._entries.get((a, b), EMPTY_CDW)

    def pairs(self) -> Iterator[tuple]:
        for i, a in enumerate(self.indices):
            for b in self.indices[i + 1 :]:
                yield (a, b)

    def restrict(self, subset) -> "HFamily":
        """The same assignment over a subset of the indices."""
        subset = tuple(sorted(set(subset)))
        for v in subset:
            self.position(v)
        if self._entries is None:
            return HFamily(subset, self.kind, family=self.family)
        keep = {k: v for k, v in self._entries.items() if k[0] in subset and k[1] in subset}
        return HFamily(subset, self.kind, entries=keep, family=self.family)

    def to_json(self) -> dict:
        entries = []
        for a, b in self.pairs():
            cdw = self.get(a, b)
            if not cdw.is_empty:
                entries.append(
                    [self.position(a), self.position(b), [list(p) for p in cdw.staircase]]
                )
        data = {
            "indices": [index_to_json(v) for v in self.indices],
            "kind": self.kind,
            "entries": entries,
        }
        if self.kind == "sum_threshold" and self.family is not None:
            data["family"] = self.family.to_json()
        return data

    @classmethod
    def from_json(cls, data: dict) -> "HFamily":
        indices = tuple(index_from_json(v) for v in data["indices"])
        kind = data.get("kind", "explicit")
        if kind == "sum_threshold" and "family" in data:
            return cls(indices, "sum_threshold", family=FuncFamily.from_json(data["family"]))
        entries = {}
        for i, j, staircase in data.get("entries", []):
            try:
                cdw = CdwSet(tuple((int(n), int(m)) for n, m in staircase))
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"bad staircase for entry ({i}, {j}): {exc}") from exc
            entries[(indices[i], indices[j])] = cdw
        return cls(indices, "explicit" if kind == "sum_threshold" else kind, entries=entries)


def explicit_hfamily(indices, staircases: dict) -> HFamily:
    """Family from {(a, b): iterable of pairs}; each value is closed downward."""
    entries = {
        key: pairs if isinstance(pairs, CdwSet) else downward_close(pairs)
        for key, pairs in staircases.items()
    }
    return HFamily(indices, "explicit", entries=entries)


def sum_threshold_family(family: FuncFamily, indices) -> HFamily:
    return HFamily(indices, "sum_threshold", family=family)


# -- intersection data and extraction ---------------------------------------


@dataclass(frozen=True)
class SpaceData:
    """Finite table of which basic neighborhoods meet which.

    cells holds (i, n, j, m) position-based entries meaning the n-th basic
    neighborhood of point i meets the m-th of point j; bases decrease, so a
    true cell forces the cells with smaller n or m to be true as well.
    """

    points: tuple
    depth: int
    cells: frozenset = field(default_factory=frozenset)

    def intersects(self, i: int, n: int, j: int, m: int) -> bool:
        return (i, n, j, m) in self.cells

    def validate_monotone(self) -> None:
        for i, n, j, m in self.cells:
            if n >= self.depth or m >= self.depth or i == j:
                raise ValidationError(f"cell {(i, n, j, m)} outside the table domain")
            if (n and (i, n - 1, j, m) not in self.cells) or (
                m and (i, n, j, m - 1) not in self.cells
            ):
                raise ValidationError(
                    f"cell {(i, n, j, m)} violates the decreasing-base property"
                )


@dataclass(frozen=True)
class ExtractionResult:
    family: HFamily
    pruning_h: dict
    pruning_g: dict


def extract_from_space(data: SpaceData) -> ExtractionResult:
    """Recover a downward-closed family from neighborhood-intersection data.

    The pruning thresholds are the least values below which every section of
    the table is finite; on a finite table every section already is, so both
    come out 0 and the pruned table equals the input.  They are still
    computed and reported so the pipeline keeps its full shape.
    """
    data.validate_monotone()
    pruning_h = {p: 0 for p in data.points}
    pruning_g = {p: 0 for p in data.points}
    collected: dict[tuple, set] = {}
    for i, n, j, m in data.cells:
        if i < j:
            a, b = data.points[i], data.points[j]
            if n >= pruning_h[a] and m >= pruning_g[b]:
                collected.setdefault((a, b), set()).add((n, m))
    entries = {key: downward_close(pairs) for key, pairs in collected.items()}
    family = HFamily(data.points, "from_space", entries=entries)
    return ExtractionResult(family, pruning_h, pruning_g)
