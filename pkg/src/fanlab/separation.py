"""Decide and optimize separations of an index set against a c.d.w. family.

A labeling f separates A when (f(a), f(b)) avoids the family's set for every
pair a < b in A.  Because every set is closed downward, the feasible
labelings form an up-set: raising any label preserves separation.  The
solvers exploit this through per-index lower bounds: once f(a) is fixed,
the pair (a, b) rules out exactly an initial segment of values for f(b).

exists_separation_capped is the deliberately naive reference oracle; the
backtracking solver must agree with it and is the one callers should use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cdw import HFamily
from .errors import GuardExceeded

ENUM_GUARD = 10**8
SUBSET_GUARD = 20
MIN_SUM_EXACT_LIMIT = 12


@dataclass(frozen=True)
class SeparationResult:
    status: str  # "separated" | "blocked"
    cap: int
    witness: dict | None = None

    @property
    def separated(self) -> bool:
        return self.status == "separated"


@dataclass(frozen=True)
class MinSumResult:
    labeling: dict
    total: int
    exact: bool


def check_separation(h: HFamily, A, f: dict):
    """None if f separates A, else the first violating pair in index order."""
    A = sorted(A)
    for i, a in enumerate(A):
        for b in A[i + 1 :]:
            if (f[a], f[b]) in h.get(a, b):
                return (a, b)
    return None


def is_separation(h: HFamily, A, f: dict) -> bool:
    return check_separation(h, A, f) is None


def exists_separation_capped(h: HFamily, A, cap: int, guard: int = ENUM_GUARD) -> SeparationResult:
    """Brute-force oracle: try every labeling with values <= cap, in order.

    Returns the lexicographically least witness, or blocked when none works.
    """
    A = sorted(A)
    if (cap + 1) ** len(A) > guard:
        raise GuardExceeded(f"(cap+1)^|A| = {(cap + 1) ** len(A)} exceeds {guard}")
    pairs = [(i, j, h.get(A[i], A[j])) for i in range(len(A)) for j in range(i + 1, len(A))]
    for values in itertools.product(range(cap + 1), repeat=len(A)):
        if all((values[i], values[j]) not in cdw for i, j, cdw in pairs):
            return SeparationResult("separated", cap, dict(zip(A, values)))
    return SeparationResult("blocked", cap)


def _pair_bounds(h: HFamily, A):
    """For each position j, the list of (i, cdw) constraints with i < j."""
    incoming = [[] for _ in A]
    for i in range(len(A)):
        for j in range(i + 1, len(A)):
            cdw = h.get(A[i], A[j])
            if not cdw.is_empty:
                incoming[j].append((i, cdw))
    return incoming


def solve_separation(h: HFamily, A, cap: int) -> SeparationResult:
    """Backtracking solver; same status as the oracle, least witness."""
    A = sorted(A)
    incoming = _pair_bounds(h, A)
    values = [0] * len(A)

    def extend(j: int) -> bool:
        if j == len(A):
            return True
        lb = 0
        for i, cdw in incoming[j]:
            lb = max(lb, cdw.max_m_for(values[i]) + 1)
        for v in range(lb, cap + 1):
            values[j] = v
            if extend(j + 1):
                return True
        return False

    if extend(0):
        return SeparationResult("separated", cap, dict(zip(A, values)))
    return SeparationResult("blocked", cap)


def min_cap(h: HFamily, A) -> int:
    """Least cap at which A is separable; finite sets always separate."""
    cap = 0
    while True:
        if solve_separation(h, A, cap).separated:
            return cap
        cap += 1


def min_sum_labeling(h: HFamily, A, exact_limit: int = MIN_SUM_EXACT_LIMIT) -> MinSumResult:
    """A separation minimizing the label sum; branch-and-bound when |A| is small.

    Beyond the exact limit the greedy labeling is returned, flagged inexact.
    """
    A = sorted(A)
    incoming = _pair_bounds(h, A)

    def lower_bound(j: int, values) -> int:
        lb = 0
        for i, cdw in incoming[j]:
            lb = max(lb, cdw.max_m_for(values[i]) + 1)
        return lb

    greedy = []
    for j in range(len(A)):
        greedy.append(lower_bound(j, greedy))
    if len(A) > exact_limit:
        return MinSumResult(dict(zip(A, greedy)), sum(greedy), False)

    # Labels above this never help: the pair is already clear of the set.
    safe_cap = [0] * len(A)
    for i in range(len(A)):
        for j in range(i + 1, len(A)):
            cdw = h.get(A[i], A[j])
            if not cdw.is_empty:
                safe_cap[i] = max(safe_cap[i], cdw.max_n() + 1)
                safe_cap[j] = max(safe_cap[j], cdw.max_m() + 1)

    best_values = list(greedy)
    best_total = sum(greedy)
    values = [0] * len(A)

    def search(j: int, partial: int):
        nonlocal best_total, best_values
        if j == len(A):
            if partial < best_total:
                best_total, best_values = partial, values[:]
            return
        lb = lower_bound(j, values)
        for v in range(lb, max(lb, safe_cap[j]) + 1):
            if partial + v >= best_total:
                break
            values[j] = v
            search(j + 1, partial + v)

    search(0, 0)
    return MinSumResult(dict(zip(A, best_values)), best_total, True)


def adversary_two_sets(h: HFamily, A, B, f: dict):
    """Some a in A, b in B with a < b and (f(a), f(b)) in the family, if any."""
    for a in sorted(A):
        for b in sorted(B):
            if a < b and (f[a], f[b]) in h.get(a, b):
                return (a, b)
    return None


def largest_separable_subset(h: HFamily, A, cap: int, guard: int = SUBSET_GUARD) -> tuple:
    """A maximum-cardinality subset of A separable at the cap; exact search.

    Separability only shrinks when indices are added, so a branch whose
    chosen set already fails can be cut without looking at its extensions.
    """
    A = sorted(A)
    if len(A) > guard:
        raise GuardExceeded(f"|A| = {len(A)} exceeds the subset-search guard {guard}")
    best: list = []

    def search(i: int, chosen: list):
        nonlocal best
        if len(chosen) + (len(A) - i) <= len(best):
            return
        if i == len(A):
            if len(chosen) > len(best):
                best = chosen[:]
            return
        candidate = chosen + [A[i]]
        if solve_separation(h, candidate, cap).separated:
            search(i + 1, candidate)
        search(i + 1, chosen)

    search(0, [])
    return tuple(best)
