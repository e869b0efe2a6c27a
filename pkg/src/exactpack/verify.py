"""Independent validation of claimed packings.

The verifier trusts nothing: it accepts arbitrary bin contents (including
malformed ones that no solver here would produce) and reports every broken
requirement, not just the first, so a bad benchmark result is diagnosable
in one pass.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .model import Instance, Packing, canonical_pattern

BIN_COUNT = "bin-count"
BIN_LENGTH = "bin-length"
BIN_SUM = "bin-sum"
DUPLICATE_BINS = "duplicate-bins"
SPREAD_MISMATCH = "spread-mismatch"


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of checking one claimed packing against an instance."""

    violations: tuple[tuple[str, str], ...]

    @property
    def valid(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.valid:
            return "valid"
        return "\n".join(f"{kind}: {detail}" for kind, detail in self.violations)


def verify(inst: Instance, packing: Packing | Sequence[Sequence[int]]) -> VerifyReport:
    """Check a claimed packing: bin count, per-bin item count, per-bin sum,
    pairwise-distinct bins, and exact coverage of the item multiset.

    Bins are canonicalized (sorted) first, so neither bin order nor item
    order within a bin affects the verdict; distinctness means distinct as
    multisets of sizes.
    """
    bins = packing.patterns if isinstance(packing, Packing) else packing
    canon = [canonical_pattern(b) for b in bins]
    violations: list[tuple[str, str]] = []

    if len(canon) != inst.bins:
        violations.append(
            (BIN_COUNT, f"expected {inst.bins} bins, got {len(canon)}")
        )
    for i, b in enumerate(canon):
        if len(b) != inst.per_bin:
            violations.append(
                (BIN_LENGTH, f"bin {i} has {len(b)} items, expected {inst.per_bin}")
            )
    for i, b in enumerate(canon):
        if sum(b) != inst.capacity:
            violations.append(
                (BIN_SUM, f"bin {i} sums to {sum(b)}, expected {inst.capacity}")
            )
    repeated = sorted(b for b, c in Counter(canon).items() if c > 1)
    if repeated:
        violations.append(
            (DUPLICATE_BINS,
             "repeated bins: " + "; ".join(" ".join(map(str, b)) for b in repeated))
        )
    packed = Counter(v for b in canon for v in b)
    wanted = inst.items.counts()
    if packed != wanted:
        missing = {v: c - packed.get(v, 0) for v, c in wanted.items()
                   if packed.get(v, 0) < c}
        extra = {v: c - wanted.get(v, 0) for v, c in packed.items()
                 if c > wanted.get(v, 0)}
        violations.append(
            (SPREAD_MISMATCH, f"missing {missing or '{}'}, extra {extra or '{}'}")
        )
    return VerifyReport(tuple(violations))
