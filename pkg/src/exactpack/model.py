"""Core value types: size multisets, problem instances, bin patterns, packings.

The whole pipeline works on one kind of data: positive integer item sizes,
counted with multiplicity.  A problem instance asks for the items to be
split into exactly ``bins`` groups of exactly ``per_bin`` items, each group
summing exactly to ``capacity``, with no two groups containing the same
sizes.  Everything here is an immutable value and safe to share between
threads or processes.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


class ExactPackError(Exception):
    """Base class for every error raised by this package."""


class NonPositiveValue(ExactPackError):
    """An item size, count, or dimension was zero or negative."""


#: A bin's contents in canonical form: sizes in non-decreasing order.
Pattern = tuple[int, ...]


def canonical_pattern(sizes: Iterable[int]) -> Pattern:
    """Sort bin contents into the canonical non-decreasing tuple."""
    return tuple(sorted(sizes))


class Multiset:
    """An immutable multiset of positive integer sizes.

    Equality is multiplicity-exact: two multisets are equal iff every value
    occurs the same number of times in both.  Construction is
    order-insensitive, so any permutation of the input yields an equal
    multiset.
    """

    __slots__ = ("_counts", "_total")

    def __init__(self, values: Iterable[int] = ()):
        counts = Counter(values)
        for v in counts:
            if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
                raise NonPositiveValue(f"item sizes must be positive integers, got {v!r}")
        self._counts: dict[int, int] = dict(counts)
        self._total: int = sum(counts.values())

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "Multiset":
        """Build from a value -> multiplicity mapping (all counts must be >= 1)."""
        m = cls()
        for v, c in counts.items():
            if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
                raise NonPositiveValue(f"item sizes must be positive integers, got {v!r}")
            if c <= 0:
                raise NonPositiveValue(f"multiplicity of {v} must be positive, got {c}")
        m._counts = {v: int(c) for v, c in counts.items()}
        m._total = sum(m._counts.values())
        return m

    @property
    def total(self) -> int:
        """Number of items, counting multiplicity."""
        return self._total

    def count(self, value: int) -> int:
        """Multiplicity of ``value`` (0 if absent)."""
        return self._counts.get(value, 0)

    def counts(self) -> dict[int, int]:
        """A fresh value -> multiplicity dict (mutating it does not affect self)."""
        return dict(self._counts)

    def distinct_values(self) -> tuple[int, ...]:
        """All distinct values, strictly increasing (multiplicities dropped)."""
        return tuple(sorted(self._counts))

    def elements(self) -> Iterator[int]:
        """Iterate every item, repeating each value by its multiplicity, sorted."""
        for v in sorted(self._counts):
            for _ in range(self._counts[v]):
                yield v

    def __contains__(self, value: int) -> bool:
        return value in self._counts

    def __bool__(self) -> bool:
        return self._total > 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self) -> int:
        return hash(frozenset(self._counts.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{v}: {c}" for v, c in sorted(self._counts.items()))
        return f"Multiset({{{inner}}})"


def spread(patterns: Iterable[Sequence[int]]) -> Multiset:
    """Flatten a collection of patterns into one multiset of their sizes.

    The result counts every occurrence, so its total is
    ``len(patterns) * per_bin`` when all patterns have equal length.
    """
    return Multiset(v for pat in patterns for v in pat)


@dataclass(frozen=True)
class Instance:
    """A packing problem: distribute ``items`` into ``bins`` groups of
    ``per_bin`` items, each summing exactly to ``capacity``.

    The constructor only enforces basic positivity; arithmetic feasibility
    (counts and sums lining up) is checked by :func:`instance_validate`,
    because benchmark files may legitimately describe instances this solver
    deems out of scope.
    """

    items: Multiset
    bins: int
    per_bin: int
    capacity: int

    def __post_init__(self) -> None:
        if self.bins < 1:
            raise NonPositiveValue(f"bins must be >= 1, got {self.bins}")
        if self.per_bin < 1:
            raise NonPositiveValue(f"per_bin must be >= 1, got {self.per_bin}")
        if self.capacity < 1:
            raise NonPositiveValue(f"capacity must be >= 1, got {self.capacity}")

    @property
    def n(self) -> int:
        """Total number of items."""
        return self.items.total

    def total_size(self) -> int:
        """Sum of all item sizes."""
        return sum(v * c for v, c in self.items.counts().items())


#: Violation kinds reported by instance_validate.
COUNT_MISMATCH = "count-mismatch"
SUM_MISMATCH = "sum-mismatch"
PER_BIN_BOUNDS = "per-bin-bounds"
SIZE_BOUNDS = "size-bounds"


@dataclass(frozen=True)
class ValidationReport:
    """Arithmetic feasibility check result; empty violations means feasible."""

    violations: tuple[tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(f"{kind}: {detail}" for kind, detail in self.violations)


def instance_validate(inst: Instance, relaxed_bounds: bool = False) -> ValidationReport:
    """Check the arithmetic an exact packing requires.

    Violations are data, not failures: every broken constraint is listed.
    ``relaxed_bounds`` lifts the default ``1 < per_bin < n`` requirement,
    admitting single-item bins and the one-bin-takes-all case.
    """
    violations: list[tuple[str, str]] = []
    n = inst.n
    if inst.bins * inst.per_bin != n:
        violations.append(
            (COUNT_MISMATCH,
             f"bins*per_bin = {inst.bins}*{inst.per_bin} = {inst.bins * inst.per_bin} != {n} items")
        )
    total = inst.total_size()
    if inst.capacity * inst.bins != total:
        violations.append(
            (SUM_MISMATCH,
             f"capacity*bins = {inst.capacity}*{inst.bins} = {inst.capacity * inst.bins} "
             f"!= total item size {total}")
        )
    if not relaxed_bounds and not (1 < inst.per_bin < n):
        violations.append(
            (PER_BIN_BOUNDS, f"per_bin = {inst.per_bin} outside 1 < per_bin < n = {n}")
        )
    oversized = [v for v in inst.items.distinct_values() if v > inst.capacity]
    if oversized:
        violations.append(
            (SIZE_BOUNDS, f"item sizes exceed capacity {inst.capacity}: {oversized}")
        )
    return ValidationReport(tuple(violations))


@dataclass(frozen=True)
class Packing:
    """A claimed assignment of all items: one canonical pattern per bin.

    Patterns are stored sorted (within each bin and across bins), so two
    packings are equal iff they assign the same size-multisets to bins.
    Construction does not check validity against an instance; that is the
    verifier's job, which also lets malformed claims be represented and
    diagnosed.
    """

    patterns: tuple[Pattern, ...]

    @classmethod
    def from_bins(cls, bins: Iterable[Iterable[int]]) -> "Packing":
        """Canonicalize arbitrary bin contents (any order, any nesting)."""
        return cls(tuple(sorted(canonical_pattern(b) for b in bins)))

    def spread(self) -> Multiset:
        """All packed items as one multiset."""
        return spread(self.patterns)

    def __iter__(self) -> Iterator[Pattern]:
        return iter(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)
