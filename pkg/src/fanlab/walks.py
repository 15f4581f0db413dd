"""Minimal walks along a C-sequence and the step-counting function rho2.

The C-sequence assigns to each successor b+1 the singleton {b} and to each
limit the range of its ladder.  A walk from b down to a repeatedly replaces
b by the least element of C_b that is >= a; rho2(a, b) is the number of
steps taken.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .ordinals import LadderSystem, Ordinal

_MAX_WALK_STEPS = 100_000
_CACHE_LIMIT = 1 << 18


@dataclass(frozen=True)
class WalkTrace:
    """Strictly decreasing trace b = steps[0] > ... > steps[-1] = a."""

    steps: tuple[Ordinal, ...]

    @property
    def step_count(self) -> int:
        return len(self.steps) - 1


class CSequence:
    """C-sequence over a ladder system, with a memoized walk evaluator."""

    def __init__(self, ladders: LadderSystem):
        self.ladders = ladders
        self._cache: dict[tuple[Ordinal, Ordinal], WalkTrace] = {}

    def step(self, alpha: Ordinal, beta: Ordinal) -> Ordinal:
        """min(C_beta \\ alpha): the least element of C_beta that is >= alpha."""
        if alpha >= beta:
            raise DomainError(f"step needs alpha < beta, got {alpha} >= {beta}")
        if beta.is_successor:
            return beta.predecessor()
        n = self.ladders.first_index_at_least(beta, alpha)
        return self.ladders.value(beta, n)

    def walk(self, alpha: Ordinal, beta: Ordinal) -> WalkTrace:
        if alpha > beta:
            raise DomainError(f"walk needs alpha <= beta, got {alpha} > {beta}")
        key = (alpha, beta)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        steps = [beta]
        current = beta
        while current > alpha:
            current = self.step(alpha, current)
            steps.append(current)
            if len(steps) > _MAX_WALK_STEPS:
                raise DomainError(f"walk from {beta} to {alpha} exceeded step guard")
        trace = WalkTrace(tuple(steps))
        if len(self._cache) >= _CACHE_LIMIT:
            self._cache.clear()
        self._cache[key] = trace
        return trace

    def rho2(self, alpha: Ordinal, beta: Ordinal) -> int:
        """Number of walk steps from beta down to alpha; 0 when equal."""
        return self.walk(alpha, beta).step_count
