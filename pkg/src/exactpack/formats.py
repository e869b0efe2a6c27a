"""Instance and solution file formats, bit-exact.

Three instance layouts are read:

* ``bpplib``: line 1 the item count, line 2 the capacity, then one size
  per line.
* ``falkenauer``: line 1 the number of problems; per problem an
  identifier line, a header ``capacity n [best-known]`` (the third field
  is ignored when present), then n size lines.
* ``list``: whitespace-separated sizes; the capacity must come from
  overrides.

Bin count and items-per-bin are derived when absent: bins = total size /
capacity, then per_bin = n / bins, both required to divide exactly.
Explicit overrides always win over derivation.

Solutions are written with a ``bins=<k> per_bin=<l> capacity=<c>`` header
followed by one line per bin, sizes space-separated in non-decreasing
order, bins in lexicographic order, newline-terminated.  Reading tolerates
bins and in-bin sizes in any order (everything is canonicalized).  Only
ASCII digits, spaces, and newlines are significant; carriage returns are
stripped.  A JSON mirror of the same fields is available for tooling,
and the reader sniffs it automatically; the text format stays canonical.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .model import ExactPackError, Instance, Multiset, Packing
from .verify import VerifyReport, verify as _verify

FORMAT_BPPLIB = "bpplib"
FORMAT_FALKENAUER = "falkenauer"
FORMAT_LIST = "list"
FORMATS = (FORMAT_BPPLIB, FORMAT_FALKENAUER, FORMAT_LIST)


class ParseError(ExactPackError):
    """Malformed input text; carries the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class DerivationError(ExactPackError):
    """Bin count or per-bin count could not be derived integrally."""


class InvalidPacking(ExactPackError):
    """Refused to serialize a packing that fails verification."""

    def __init__(self, report: VerifyReport):
        super().__init__(str(report))
        self.report = report


@dataclass(frozen=True)
class Overrides:
    """Explicit bins / per_bin / capacity values; any subset may be set."""

    bins: int | None = None
    per_bin: int | None = None
    capacity: int | None = None


@dataclass(frozen=True)
class NamedInstance:
    name: str
    instance: Instance


@dataclass(frozen=True)
class InstanceFile:
    """Parsed contents of one instance file: format tag plus named instances."""

    format: str
    instances: tuple[NamedInstance, ...]

    def __len__(self) -> int:
        return len(self.instances)


def parse_instance(
    text: str,
    format: str = FORMAT_BPPLIB,
    overrides: Overrides | None = None,
    name: str = "instance",
) -> InstanceFile:
    """Parse instance text in the given format, deriving missing shape
    parameters (see module docstring)."""
    if format not in FORMATS:
        raise ValueError(f"unknown instance format {format!r}; expected one of {FORMATS}")
    overrides = overrides or Overrides()
    lines = text.split("\n")
    if format == FORMAT_LIST:
        instances = [_parse_list(lines, overrides, name)]
    elif format == FORMAT_BPPLIB:
        instances = [_parse_bpplib(lines, overrides, name)]
    else:
        instances = _parse_falkenauer(lines, overrides)
    return InstanceFile(format=format, instances=tuple(instances))


def _clean(raw: str) -> str:
    return raw.replace("\r", "").strip()


def _int_field(raw: str, lineno: int, what: str) -> int:
    token = _clean(raw)
    if not re.fullmatch(r"-?\d+", token):
        raise ParseError(f"expected {what}, got {token!r}", lineno)
    return int(token)


def _read_sizes(lines: list[str], start: int, count: int) -> list[int]:
    sizes = []
    for off in range(count):
        lineno = start + off
        if lineno > len(lines):
            raise ParseError(f"expected {count} item sizes, file ends after "
                             f"{off}", len(lines))
        v = _int_field(lines[lineno - 1], lineno, "an item size")
        if v <= 0:
            raise ParseError(f"item sizes must be positive, got {v}", lineno)
        sizes.append(v)
    return sizes


def _derive(sizes: list[int], capacity: int, overrides: Overrides, name: str) -> Instance:
    total = sum(sizes)
    n = len(sizes)
    if overrides.bins is not None:
        bins = overrides.bins
    else:
        if capacity <= 0 or total % capacity:
            raise DerivationError(
                f"{name}: cannot derive bin count, total size {total} is not "
                f"a multiple of capacity {capacity}"
            )
        bins = total // capacity
    if overrides.per_bin is not None:
        per_bin = overrides.per_bin
    else:
        if bins <= 0 or n % bins:
            raise DerivationError(
                f"{name}: cannot derive items per bin, {n} items do not "
                f"split into {bins} bins"
            )
        per_bin = n // bins
    return Instance(items=Multiset(sizes), bins=bins, per_bin=per_bin, capacity=capacity)


def _parse_list(lines: list[str], overrides: Overrides, name: str) -> NamedInstance:
    sizes = []
    for lineno, line in enumerate(lines, start=1):
        for token in _clean(line).split():
            if not re.fullmatch(r"-?\d+", token):
                raise ParseError(f"expected an item size, got {token!r}", lineno)
            v = int(token)
            if v <= 0:
                raise ParseError(f"item sizes must be positive, got {v}", lineno)
            sizes.append(v)
    if overrides.capacity is None:
        raise DerivationError(f"{name}: list format carries no capacity; one must be given")
    return NamedInstance(name, _derive(sizes, overrides.capacity, overrides, name))


def _parse_bpplib(lines: list[str], overrides: Overrides, name: str) -> NamedInstance:
    if len(lines) < 2:
        raise ParseError("expected an item count line and a capacity line", 1)
    n = _int_field(lines[0], 1, "the item count")
    if n < 0:
        raise ParseError(f"item count must be non-negative, got {n}", 1)
    capacity = _int_field(lines[1], 2, "the capacity")
    sizes = _read_sizes(lines, 3, n)
    trailing = [i for i in range(3 + n, len(lines) + 1) if _clean(lines[i - 1])]
    if trailing:
        raise ParseError("unexpected trailing content", trailing[0])
    cap = overrides.capacity if overrides.capacity is not None else capacity
    return NamedInstance(name, _derive(sizes, cap, overrides, name))


def _parse_falkenauer(lines: list[str], overrides: Overrides) -> list[NamedInstance]:
    if not lines or not _clean(lines[0]):
        raise ParseError("expected a problem count", 1)
    count = _int_field(lines[0], 1, "the problem count")
    out: list[NamedInstance] = []
    lineno = 2
    for _ in range(count):
        while lineno <= len(lines) and not _clean(lines[lineno - 1]):
            lineno += 1
        if lineno > len(lines):
            raise ParseError(f"expected {count} problems, found {len(out)}", len(lines))
        ident = _clean(lines[lineno - 1])
        lineno += 1
        if lineno > len(lines):
            raise ParseError(f"problem {ident!r} is missing its header", lineno - 1)
        header = _clean(lines[lineno - 1]).split()
        if len(header) not in (2, 3) or not all(re.fullmatch(r"\d+", t) for t in header):
            raise ParseError(
                f"expected 'capacity n [best-known]', got {lines[lineno - 1]!r}", lineno
            )
        capacity, n = int(header[0]), int(header[1])
        lineno += 1
        sizes = _read_sizes(lines, lineno, n)
        lineno += n
        cap = overrides.capacity if overrides.capacity is not None else capacity
        out.append(NamedInstance(ident, _derive(sizes, cap, overrides, ident)))
    return out


_SOLUTION_HEADER = re.compile(r"bins=(\d+) per_bin=(\d+) capacity=(\d+)")


def serialize_solution(inst: Instance, packing: Packing) -> str:
    """Render a packing in the canonical text format; byte-deterministic.

    Refuses (InvalidPacking) if the packing does not verify against the
    instance.
    """
    report = _verify(inst, packing)
    if not report.valid:
        raise InvalidPacking(report)
    canon = Packing.from_bins(packing.patterns)
    lines = [f"bins={inst.bins} per_bin={inst.per_bin} capacity={inst.capacity}"]
    lines.extend(" ".join(str(v) for v in b) for b in canon.patterns)
    return "\n".join(lines) + "\n"


def solution_to_json(inst: Instance, packing: Packing) -> str:
    """JSON mirror of the text format, for tooling."""
    report = _verify(inst, packing)
    if not report.valid:
        raise InvalidPacking(report)
    canon = Packing.from_bins(packing.patterns)
    doc = {
        "bins": inst.bins,
        "per_bin": inst.per_bin,
        "capacity": inst.capacity,
        "packing": [list(b) for b in canon.patterns],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_solution(text: str) -> Packing:
    """Inverse of serialize_solution; canonicalizes bins on read.

    Accepts the JSON mirror too (sniffed by a leading brace).  File-internal
    consistency (header counts vs. actual lines) is enforced here; whether
    the packing fits an instance is the verifier's business.
    """
    if text.lstrip()[:1] == "{":
        return _parse_solution_json(text)
    lines = text.split("\n")
    header_line = None
    body: list[tuple[int, str]] = []
    for i, raw in enumerate(lines, start=1):
        s = _clean(raw)
        if not s:
            continue
        if header_line is None:
            header_line = i
            m = _SOLUTION_HEADER.fullmatch(s)
            if not m:
                raise ParseError("expected 'bins=K per_bin=L capacity=C' header", i)
            bins, per_bin, capacity = map(int, m.groups())
        else:
            body.append((i, s))
    if header_line is None:
        raise ParseError("empty solution")
    if len(body) != bins:
        raise ParseError(
            f"header says bins={bins} but found {len(body)} bin lines",
            body[-1][0] if body else header_line,
        )
    parsed = []
    for lineno, s in body:
        tokens = s.split()
        if not all(re.fullmatch(r"\d+", t) for t in tokens):
            raise ParseError(f"expected item sizes, got {s!r}", lineno)
        if len(tokens) != per_bin:
            raise ParseError(
                f"header says per_bin={per_bin} but this bin has {len(tokens)} items",
                lineno,
            )
        parsed.append([int(t) for t in tokens])
    return Packing.from_bins(parsed)


def _parse_solution_json(text: str) -> Packing:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON solution: {exc}") from exc
    try:
        bins, per_bin = int(doc["bins"]), int(doc["per_bin"])
        packing = doc["packing"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"JSON solution missing fields: {exc}") from exc
    if len(packing) != bins:
        raise ParseError(f"header says bins={bins} but found {len(packing)} bins")
    for b in packing:
        if len(b) != per_bin:
            raise ParseError(f"header says per_bin={per_bin} but a bin has {len(b)} items")
    return Packing.from_bins(packing)
