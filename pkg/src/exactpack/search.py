"""Backtracking search for ``bins`` pairwise-distinct patterns whose
combined contents equal the item multiset exactly.

The literal approach, sweeping every size-``bins`` subset of the pattern
set, blows up combinatorially (C(99, 20) is beyond 4e20 on the classic
60-item triplet benchmark).  This search explores the same space with
exact pruning instead:

* branch on one item size per node, over the patterns that can still
  supply it;
* ban a chosen pattern, and its earlier siblings, inside the branch, which
  partitions the space (no packing is found twice, none is lost);
* backtrack as soon as any remaining size has no surviving supplier or a
  candidate no longer fits the remaining multiplicities.

With ``deterministic=True`` the branch size is the smallest remaining
value.  Because patterns are lexicographically sorted and every selectable
pattern containing the current minimum starts with it, chosen indices then
grow strictly and packings are discovered in lexicographic order of their
index sets, so the first hit is the lexicographically least solution.
With ``deterministic=False`` the branch size is the scarcest remaining
value (fewest live suppliers, ties to the smaller size), which usually
fails faster but discovers solutions in no particular order.

Infeasibility ("no distinct packing") is only ever reported after the
entire tree has been exhausted.
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass

from .model import ExactPackError, Instance, Packing
from .patterns import PatternSet, PatternSetMismatch, instance_digest

#: When True, every search node re-derives the covered multiset from the
#: chosen patterns and asserts chosen + remaining == items.  Test hook;
#: far too slow to leave on.
DEBUG_CONSERVATION = False


class TimeoutExceeded(ExactPackError):
    """Search aborted on wall-clock timeout; feasibility unresolved."""


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for :func:`solve` and :func:`solve_all`.

    ``timeout`` is wall-clock seconds (None means unlimited, the library
    default).  ``solution_limit`` bounds solve_all; None collects every
    packing.
    """

    first_solution_only: bool = False
    solution_limit: int | None = None
    timeout: float | None = None
    deterministic: bool = True

    def __post_init__(self) -> None:
        if self.solution_limit is not None and self.solution_limit < 1:
            raise ValueError(f"solution_limit must be >= 1, got {self.solution_limit}")


def solve(inst: Instance, ps: PatternSet, cfg: SearchConfig = SearchConfig()) -> Packing | None:
    """Find one packing, or prove none exists.

    Returns None only after exhausting the search space: it is a proof
    that no ``bins`` pairwise-distinct patterns cover the items.  With
    ``deterministic=True`` the returned packing is the lexicographically
    least solution by pattern-index sequence.
    """
    found = _Engine(inst, ps, cfg).run(limit=1)
    return found[0][1] if found else None


def solve_all(
    inst: Instance, ps: PatternSet, cfg: SearchConfig = SearchConfig()
) -> list[Packing]:
    """Collect distinct packings, up to ``cfg.solution_limit``.

    The result is ordered by chosen-index sequence; an empty list is a
    proof of infeasibility.  With ``deterministic=False`` and a solution
    limit the subset of packings returned is unspecified (each is still
    sound).
    """
    limit = 1 if cfg.first_solution_only else cfg.solution_limit
    found = _Engine(inst, ps, cfg).run(limit=limit)
    found.sort(key=lambda pair: pair[0])
    return [packing for _, packing in found]


class _Engine:
    """Single-use search state; build, call run() once, discard."""

    def __init__(self, inst: Instance, ps: PatternSet, cfg: SearchConfig):
        if ps.source_instance_digest != instance_digest(inst):
            raise PatternSetMismatch(
                "pattern set was not enumerated from this instance"
            )
        self.inst = inst
        self.patterns = ps.patterns
        self.pairs = [tuple(sorted(Counter(p).items())) for p in ps.patterns]
        self.support: dict[int, list[int]] = {
            v: [] for v in inst.items.distinct_values()
        }
        for idx, pat in enumerate(ps.patterns):
            for v in set(pat):
                self.support[v].append(idx)
        self.remaining = inst.items.counts()
        self.rem_total = inst.items.total
        self.banned = bytearray(len(ps.patterns))
        self.chosen: list[int] = []
        self.lex = cfg.deterministic
        self.deadline = None if cfg.timeout is None else time.monotonic() + cfg.timeout
        self.ticks = 0
        self.solutions: list[tuple[tuple[int, ...], Packing]] = []
        self.limit: int | None = None

    def run(self, limit: int | None) -> list[tuple[tuple[int, ...], Packing]]:
        self.limit = limit
        self._check_time(force=True)
        self._node()
        return self.solutions

    def _check_time(self, force: bool = False) -> None:
        if self.deadline is None:
            return
        self.ticks += 1
        if force or (self.ticks & 1023) == 0:
            if time.monotonic() >= self.deadline:
                raise TimeoutExceeded(
                    f"search exceeded its time budget at {len(self.solutions)} "
                    f"solution(s) found"
                )

    def _fits(self, idx: int) -> bool:
        remaining = self.remaining
        return all(remaining[v] >= c for v, c in self.pairs[idx])

    def _node(self) -> bool:
        """Explore one node; True means stop (solution limit reached)."""
        self._check_time()
        depth = len(self.chosen)
        inst = self.inst
        if DEBUG_CONSERVATION:
            covered = Counter(v for i in self.chosen for v in self.patterns[i])
            covered.update({v: c for v, c in self.remaining.items() if c})
            assert dict(covered) == {
                v: c for v, c in inst.items.counts().items()
            }, "conservation broken: chosen + remaining != items"
        # every pattern consumes per_bin items, so this only fails on
        # malformed inputs; exact conservation guard
        if self.rem_total != (inst.bins - depth) * inst.per_bin:
            return False
        if depth == inst.bins:
            if self.rem_total == 0:
                indices = tuple(sorted(self.chosen))
                packing = Packing(tuple(sorted(self.patterns[i] for i in indices)))
                self.solutions.append((indices, packing))
                return self.limit is not None and len(self.solutions) >= self.limit
            return False
        if self.rem_total == 0:
            return False

        # forward check: every remaining size needs enough live supply and
        # enough remaining bins to carry its copies (both exact cuts)
        banned = self.banned
        bins_left = inst.bins - depth
        lex_value = None
        if self.lex:
            lex_value = min(v for v, c in self.remaining.items() if c)
        branch_value = None
        candidates: list[int] = []
        forced: list[int] | None = None
        best_count = None
        for v, c in self.remaining.items():
            if not c:
                continue
            live = [i for i in self.support[v] if not banned[i] and self._fits(i)]
            if not live:
                return False
            supply = 0
            heaviest = 0
            for i in live:
                in_pattern = self.patterns[i].count(v)
                supply += in_pattern
                if in_pattern > heaviest:
                    heaviest = in_pattern
            if supply < c or c > bins_left * heaviest:
                return False
            if forced is None and len(live) == 1:
                # sole supplier: it sits in every completion, so taking it
                # now changes neither the solution set nor emission order
                forced = live
            if self.lex:
                if v == lex_value:
                    branch_value, candidates = v, live
            elif best_count is None or (len(live), v) < (best_count, branch_value):
                best_count, branch_value, candidates = len(live), v, live
        if forced is not None:
            candidates = forced

        remaining = self.remaining
        stop = False
        tried: list[int] = []
        for idx in candidates:
            # consume idx and exclude earlier siblings for the whole subtree:
            # partitions packings by the least candidate they contain
            banned[idx] = True
            tried.append(idx)
            for v, c in self.pairs[idx]:
                remaining[v] -= c
            self.rem_total -= inst.per_bin
            self.chosen.append(idx)
            stop = self._node()
            self.chosen.pop()
            self.rem_total += inst.per_bin
            for v, c in self.pairs[idx]:
                remaining[v] += c
            if stop:
                break
        for idx in tried:
            banned[idx] = False
        return stop
