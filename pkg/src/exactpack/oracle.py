"""Desk-scale reference solvers and exact counting.

These exist to validate, not to compete: ``exhaustive_subset_solve``
sweeps every size-``bins`` subset of the pattern set exactly as the
method's definition prescribes, and ``brute_force_assign`` searches raw
item-to-bin assignments without ever building a pattern set.  Both agree
with the pruned search wherever they run, which is what the test suite
leans on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .model import ExactPackError, Instance, Packing, canonical_pattern
from .patterns import PatternSet, PatternSetMismatch, instance_digest

#: Refuse the subset sweep beyond this many subsets unless forced.
DEFAULT_SUBSET_CAP = 10_000_000

#: Largest item count the assignment brute force accepts.
BRUTE_FORCE_MAX_ITEMS = 16


class OracleTooLarge(ExactPackError):
    """The subset sweep would exceed its cap; use the pruned search."""


class InstanceTooLarge(ExactPackError):
    """Too many items for the assignment brute force."""


def binomial(n: int, k: int) -> int:
    """Exact C(n, k) as an arbitrary-precision integer; 0 when k > n."""
    return math.comb(n, k)


@dataclass(frozen=True)
class CountReport:
    """Pattern-set size and the exact number of bin-count-sized subsets."""

    pattern_count: int
    subset_count: int


def count_report(inst: Instance, ps: PatternSet) -> CountReport:
    """How big the literal sweep would be: |patterns| and C(|patterns|, bins)."""
    if ps.source_instance_digest != instance_digest(inst):
        raise PatternSetMismatch("pattern set was not enumerated from this instance")
    return CountReport(
        pattern_count=len(ps),
        subset_count=binomial(len(ps), inst.bins),
    )


def exhaustive_subset_solve(
    inst: Instance, ps: PatternSet, cap: int | None = DEFAULT_SUBSET_CAP
) -> Packing | None:
    """Sweep every ``bins``-subset of the pattern set in lexicographic
    index order; return the first whose combined contents equal the items,
    or None after exhausting all subsets.

    Refuses with OracleTooLarge when C(|patterns|, bins) exceeds ``cap``;
    pass ``cap=None`` to run regardless.
    """
    if ps.source_instance_digest != instance_digest(inst):
        raise PatternSetMismatch("pattern set was not enumerated from this instance")
    subsets = binomial(len(ps), inst.bins)
    if cap is not None and subsets > cap:
        raise OracleTooLarge(
            f"{subsets} subsets exceed the cap of {cap}; "
            "this instance needs the pruned search"
        )
    target = tuple(inst.items.elements())
    for indices in combinations(range(len(ps)), inst.bins):
        flat = sorted(v for i in indices for v in ps[i])
        if tuple(flat) == target:
            return Packing(tuple(ps[i] for i in indices))
    return None


def brute_force_assign(
    inst: Instance, max_items: int = BRUTE_FORCE_MAX_ITEMS
) -> Packing | None:
    """Search direct item-to-bin assignments, bypassing patterns entirely.

    Bins are built in strictly increasing lexicographic order, which both
    kills permutation symmetry and enforces pairwise distinctness, so each
    candidate packing is visited exactly once.  Independent of the
    enumerator and the pruned search by construction.
    """
    if inst.n > max_items:
        raise InstanceTooLarge(f"{inst.n} items exceed the limit of {max_items}")
    if inst.bins * inst.per_bin != inst.n:
        return None
    items = tuple(inst.items.elements())

    def bin_choices(pool: tuple[int, ...], floor: tuple[int, ...]):
        # all per_bin-sub-multisets of pool summing to capacity, above floor
        found = set()
        for idx in combinations(range(len(pool)), inst.per_bin):
            chosen = tuple(pool[i] for i in idx)
            if sum(chosen) == inst.capacity and chosen > floor:
                found.add(chosen)
        return sorted(found)

    def assign(pool: tuple[int, ...], floor: tuple[int, ...], left: int):
        if left == 0:
            return [] if not pool else None
        for content in bin_choices(pool, floor):
            rest = list(pool)
            for v in content:
                rest.remove(v)
            tail = assign(tuple(rest), content, left - 1)
            if tail is not None:
                return [content] + tail
        return None

    bins = assign(items, (), inst.bins)
    if bins is None:
        return None
    return Packing(tuple(canonical_pattern(b) for b in bins))
