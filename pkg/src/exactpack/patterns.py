"""Exhaustive, deterministic generation of candidate bin contents.

A pattern is a canonical tuple of ``per_bin`` sizes summing exactly to the
capacity.  Two enumeration modes exist:

* ``distinct-values``: every size in a pattern is different; patterns are
  drawn from the instance's distinct values.  This is the default.
* ``multiplicity-bounded``: a size may repeat within a pattern, but no more
  often than it occurs among the items.

Both are generated by one recursive combination walk over a sorted pool
with prefix-sum pruning, emitting patterns in strict lexicographic order.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Iterator

from .model import (
    ExactPackError,
    Instance,
    Pattern,
    ValidationReport,
    instance_validate,
)

MODE_DISTINCT = "distinct-values"
MODE_BOUNDED = "multiplicity-bounded"
MODES = (MODE_DISTINCT, MODE_BOUNDED)

#: Refuse to materialize more patterns than this unless told otherwise.
DEFAULT_PATTERN_CAP = 10_000_000


class PatternExplosion(ExactPackError):
    """The pattern count exceeded the cap; the instance is out of this
    method's reach."""


class InvalidInstance(ExactPackError):
    """The instance failed arithmetic validation; see ``report``."""

    def __init__(self, report: ValidationReport):
        super().__init__(str(report))
        self.report = report


class PatternSetMismatch(ExactPackError):
    """A pattern set was paired with an instance it was not built from."""


def instance_digest(inst: Instance) -> str:
    """Content hash tying a pattern set to the exact instance it came from."""
    parts = [f"{inst.bins}|{inst.per_bin}|{inst.capacity}"]
    parts.extend(f"{v}:{c}" for v, c in sorted(inst.items.counts().items()))
    return hashlib.sha256(";".join(parts).encode("ascii")).hexdigest()


@dataclass(frozen=True)
class PatternSet:
    """All candidate patterns for one instance, strictly lex-increasing."""

    patterns: tuple[Pattern, ...]
    mode: str
    per_bin: int
    capacity: int
    source_instance_digest: str

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self) -> Iterator[Pattern]:
        return iter(self.patterns)

    def __getitem__(self, index: int) -> Pattern:
        return self.patterns[index]


def enumerate_patterns(
    inst: Instance,
    mode: str = MODE_DISTINCT,
    *,
    cap: int = DEFAULT_PATTERN_CAP,
    relaxed_bounds: bool = False,
) -> PatternSet:
    """Generate every canonical pattern of the instance, in lex order.

    Raises InvalidInstance if the instance fails arithmetic validation and
    PatternExplosion if more than ``cap`` patterns would be produced.
    Deterministic: identical inputs yield identical sequences.
    """
    if mode not in MODES:
        raise ValueError(f"unknown enumeration mode {mode!r}; expected one of {MODES}")
    report = instance_validate(inst, relaxed_bounds=relaxed_bounds)
    if not report.ok:
        raise InvalidInstance(report)
    if mode == MODE_DISTINCT:
        pool = list(inst.items.distinct_values())
    else:
        pool = list(inst.items.elements())
    patterns = _combinations_summing_to(pool, inst.per_bin, inst.capacity, cap)
    return PatternSet(
        patterns=tuple(patterns),
        mode=mode,
        per_bin=inst.per_bin,
        capacity=inst.capacity,
        source_instance_digest=instance_digest(inst),
    )


def _combinations_summing_to(
    pool: list[int], length: int, target: int, cap: int
) -> list[Pattern]:
    """Distinct non-decreasing ``length``-tuples from ``pool`` summing to
    ``target``, each pool slot used at most once, in lex order.

    ``pool`` must be sorted.  Repeats in the pool allow repeated values in a
    tuple up to their pool multiplicity; the equal-value skip rule keeps the
    output duplicate-free.
    """
    n = len(pool)
    out: list[Pattern] = []
    if length > n:
        return out
    prefix = [0] * (n + 1)
    for i, v in enumerate(pool):
        prefix[i + 1] = prefix[i] + v

    acc: list[int] = []

    def walk(start: int, slots: int, need: int) -> None:
        if slots == 0:
            if need == 0:
                out.append(tuple(acc))
                if len(out) > cap:
                    raise PatternExplosion(
                        f"more than {cap} patterns; raise the cap to proceed"
                    )
            return
        # cheapest completion takes the next `slots` values, dearest the last
        if start + slots > n or prefix[start + slots] - prefix[start] > need:
            return
        if prefix[n] - prefix[n - slots] < need:
            return
        for i in range(start, n - slots + 1):
            if i > start and pool[i] == pool[i - 1]:
                continue
            if prefix[i + slots] - prefix[i] > need:
                break
            acc.append(pool[i])
            walk(i + 1, slots - 1, need - pool[i])
            acc.pop()

    walk(0, length, target)
    return out


def value_support(
    ps: PatternSet, values: Iterable[int] = ()
) -> dict[int, list[int]]:
    """Map each size to the ordered indices of patterns containing it.

    ``values`` seeds the mapping (typically the instance's distinct values),
    so sizes no pattern can supply show up with an empty list, which proves
    the instance infeasible.
    """
    support: dict[int, list[int]] = {v: [] for v in values}
    for idx, pat in enumerate(ps.patterns):
        for v in sorted(set(pat)):
            support.setdefault(v, []).append(idx)
    return support


def pattern_dump(ps: PatternSet) -> str:
    """Render the pattern set in the line-oriented dump format.

    Header ``patterns=<count> per_bin=<l> capacity=<c> mode=<mode>``, then
    one pattern per line, sizes space-separated in non-decreasing order,
    lines in lexicographic order.
    """
    lines = [
        f"patterns={len(ps.patterns)} per_bin={ps.per_bin} "
        f"capacity={ps.capacity} mode={ps.mode}"
    ]
    lines.extend(" ".join(str(v) for v in pat) for pat in ps.patterns)
    return "\n".join(lines) + "\n"
