"""Exact solver for bin packing with a fixed bin count, a fixed number of
items per bin, exact fills, and pairwise-distinct bins.

Typical use::

    from exactpack import Instance, Multiset, enumerate_patterns, solve, verify

    inst = Instance(items=Multiset([1, 2, 3, 4, 5, 6]), bins=3, per_bin=2, capacity=7)
    packing = solve(inst, enumerate_patterns(inst))
    assert packing is not None and verify(inst, packing).valid
"""
from .model import (
    ExactPackError,
    Instance,
    Multiset,
    NonPositiveValue,
    Packing,
    Pattern,
    ValidationReport,
    canonical_pattern,
    instance_validate,
    spread,
)
from .patterns import (
    MODE_BOUNDED,
    MODE_DISTINCT,
    InvalidInstance,
    PatternExplosion,
    PatternSet,
    PatternSetMismatch,
    enumerate_patterns,
    instance_digest,
    pattern_dump,
    value_support,
)
from .search import SearchConfig, TimeoutExceeded, solve, solve_all
from .oracle import (
    CountReport,
    InstanceTooLarge,
    OracleTooLarge,
    binomial,
    brute_force_assign,
    count_report,
    exhaustive_subset_solve,
)
from .verify import VerifyReport, verify
from .formats import (
    DerivationError,
    InstanceFile,
    InvalidPacking,
    NamedInstance,
    Overrides,
    ParseError,
    parse_instance,
    parse_solution,
    serialize_solution,
    solution_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "CountReport",
    "DerivationError",
    "ExactPackError",
    "Instance",
    "InstanceFile",
    "InstanceTooLarge",
    "InvalidInstance",
    "InvalidPacking",
    "MODE_BOUNDED",
    "MODE_DISTINCT",
    "Multiset",
    "NamedInstance",
    "NonPositiveValue",
    "OracleTooLarge",
    "Overrides",
    "Packing",
    "ParseError",
    "Pattern",
    "PatternExplosion",
    "PatternSet",
    "PatternSetMismatch",
    "SearchConfig",
    "TimeoutExceeded",
    "ValidationReport",
    "VerifyReport",
    "binomial",
    "brute_force_assign",
    "canonical_pattern",
    "count_report",
    "enumerate_patterns",
    "exhaustive_subset_solve",
    "instance_digest",
    "instance_validate",
    "parse_instance",
    "parse_solution",
    "pattern_dump",
    "serialize_solution",
    "solution_to_json",
    "solve",
    "solve_all",
    "spread",
    "value_support",
    "verify",
]
