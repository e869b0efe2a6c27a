"""Command-line front end: solve, verify, enumerate, count, oracle, bench.

Exit codes are a stable contract:

* 0  success (solution found / solution valid)
* 1  usage, parse, or data errors
* 2  proven infeasible (no distinct packing / solution invalid)
* 3  wall-clock timeout, feasibility unresolved
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .model import ExactPackError, Instance, instance_validate
from .oracle import DEFAULT_SUBSET_CAP, count_report, exhaustive_subset_solve
from .patterns import (
    DEFAULT_PATTERN_CAP,
    MODE_BOUNDED,
    MODE_DISTINCT,
    PatternExplosion,
    enumerate_patterns,
    pattern_dump,
)
from .search import SearchConfig, TimeoutExceeded, solve, solve_all
from .formats import (
    FORMAT_BPPLIB,
    FORMATS,
    Overrides,
    parse_instance,
    parse_solution,
    serialize_solution,
    solution_to_json,
)
from .verify import verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_TIMEOUT = 3

DEFAULT_CLI_TIMEOUT = 60.0
WORKERS_ENV = "EXACTPACK_BENCH_WORKERS"

_MODE_ALIASES = {
    MODE_DISTINCT: MODE_DISTINCT,
    "distinct": MODE_DISTINCT,
    MODE_BOUNDED: MODE_BOUNDED,
    "bounded": MODE_BOUNDED,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _mode(value: str) -> str:
    try:
        return _MODE_ALIASES[value]
    except KeyError:
        raise argparse.ArgumentTypeError(
            f"expected one of {sorted(_MODE_ALIASES)}, got {value!r}"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="exactpack", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    loader = _Parser(add_help=False)
    loader.add_argument("--instance", required=True, help="instance file path")
    loader.add_argument("--format", choices=FORMATS, default=FORMAT_BPPLIB)
    loader.add_argument("--capacity", type=int, help="override bin capacity")
    loader.add_argument("--per-bin", type=int, help="override items per bin")
    loader.add_argument("--bins", type=int, help="override bin count")
    loader.add_argument("--relaxed-bounds", action="store_true",
                        help="allow per_bin of 1 or n")

    p = sub.add_parser("solve", parents=[loader],
                       help="find a distinct packing, or prove none exists")
    p.add_argument("--mode", type=_mode, default=MODE_DISTINCT)
    p.add_argument("--all", action="store_true", help="collect every packing")
    p.add_argument("--limit", type=int, help="stop after this many packings")
    p.add_argument("--timeout", type=float, default=DEFAULT_CLI_TIMEOUT,
                   help="wall-clock seconds; 0 means unlimited (default 60)")
    p.add_argument("--output", help="write solution(s) here instead of stdout")
    p.add_argument("--json", action="store_true", help="emit the JSON mirror")

    p = sub.add_parser("verify", parents=[loader],
                       help="check a solution file against an instance")
    p.add_argument("--solution", required=True, help="solution file path")

    p = sub.add_parser("enumerate", parents=[loader],
                       help="dump every candidate pattern")
    p.add_argument("--mode", type=_mode, default=MODE_DISTINCT)
    p.add_argument("--cap", type=int, default=DEFAULT_PATTERN_CAP)
    p.add_argument("--output", help="write the dump here instead of stdout")

    p = sub.add_parser("count", parents=[loader],
                       help="print pattern and subset counts")
    p.add_argument("--mode", type=_mode, default=MODE_DISTINCT)

    p = sub.add_parser("oracle", parents=[loader],
                       help="literal subset sweep (desk-scale instances only)")
    p.add_argument("--mode", type=_mode, default=MODE_DISTINCT)
    p.add_argument("--cap", type=int, default=DEFAULT_SUBSET_CAP,
                   help="refuse beyond this many subsets")
    p.add_argument("--force", action="store_true", help="ignore the cap")

    p = sub.add_parser("bench", help="solve every instance file in a directory")
    p.add_argument("--dir", required=True, help="directory of instance files")
    p.add_argument("--format", choices=FORMATS, default=FORMAT_BPPLIB)
    p.add_argument("--mode", type=_mode, default=MODE_DISTINCT)
    p.add_argument("--timeout", type=float, default=DEFAULT_CLI_TIMEOUT,
                   help="per-instance wall-clock seconds; 0 means unlimited")
    p.add_argument("--report", required=True, help="write the JSON report here")
    p.add_argument("--workers", type=int,
                   default=int(os.environ.get(WORKERS_ENV, "1")),
                   help=f"parallel workers (default ${WORKERS_ENV} or 1)")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    handler = {
        "solve": _cmd_solve,
        "verify": _cmd_verify,
        "enumerate": _cmd_enumerate,
        "count": _cmd_count,
        "oracle": _cmd_oracle,
        "bench": _cmd_bench,
    }[args.command]
    try:
        return handler(args)
    except TimeoutExceeded as exc:
        print(f"TIMEOUT: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (ExactPackError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


def _load_first_instance(args) -> Instance:
    text = Path(args.instance).read_text(encoding="utf-8")
    overrides = Overrides(bins=args.bins, per_bin=args.per_bin, capacity=args.capacity)
    parsed = parse_instance(text, format=args.format, overrides=overrides,
                            name=Path(args.instance).stem)
    if len(parsed) > 1:
        print(f"note: {args.instance} holds {len(parsed)} instances; "
              f"using {parsed.instances[0].name!r} (bench handles whole files)",
              file=sys.stderr)
    return parsed.instances[0].instance


def _checked(args) -> Instance:
    inst = _load_first_instance(args)
    report = instance_validate(inst, relaxed_bounds=getattr(args, "relaxed_bounds", False))
    if not report.ok:
        raise ExactPackError(f"instance is out of scope: {report}")
    return inst


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_solve(args) -> int:
    inst = _checked(args)
    ps = enumerate_patterns(inst, args.mode, relaxed_bounds=args.relaxed_bounds)
    timeout = None if args.timeout is not None and args.timeout <= 0 else args.timeout
    cfg = SearchConfig(timeout=timeout, solution_limit=args.limit)
    if args.all or args.limit:
        packings = solve_all(inst, ps, cfg)
        if not packings:
            print("NO DISTINCT PACKING")
            return EXIT_INFEASIBLE
        if args.json:
            docs = [json.loads(solution_to_json(inst, p)) for p in packings]
            _emit(json.dumps({"solutions": docs}, indent=2) + "\n", args.output)
        else:
            _emit("\n".join(serialize_solution(inst, p) for p in packings), args.output)
        return EXIT_OK
    packing = solve(inst, ps, cfg)
    if packing is None:
        print("NO DISTINCT PACKING")
        return EXIT_INFEASIBLE
    text = solution_to_json(inst, packing) if args.json else serialize_solution(inst, packing)
    _emit(text, args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    inst = _load_first_instance(args)
    packing = parse_solution(Path(args.solution).read_text(encoding="utf-8"))
    report = verify(inst, packing)
    if report.valid:
        print("valid")
        return EXIT_OK
    print(report)
    return EXIT_INFEASIBLE


def _cmd_enumerate(args) -> int:
    inst = _checked(args)
    ps = enumerate_patterns(inst, args.mode, cap=args.cap,
                            relaxed_bounds=args.relaxed_bounds)
    _emit(pattern_dump(ps), args.output)
    return EXIT_OK


def _cmd_count(args) -> int:
    inst = _checked(args)
    ps = enumerate_patterns(inst, args.mode, relaxed_bounds=args.relaxed_bounds)
    report = count_report(inst, ps)
    print(f"patterns={report.pattern_count}")
    print(f"subsets={report.subset_count}")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    inst = _checked(args)
    ps = enumerate_patterns(inst, args.mode, relaxed_bounds=args.relaxed_bounds)
    packing = exhaustive_subset_solve(inst, ps, cap=None if args.force else args.cap)
    if packing is None:
        print("NO DISTINCT PACKING")
        return EXIT_INFEASIBLE
    sys.stdout.write(serialize_solution(inst, packing))
    return EXIT_OK


@dataclass(frozen=True)
class BenchRow:
    """One bench outcome; 'solved' rows always passed verification first."""

    name: str
    n: int
    bins: int
    per_bin: int
    capacity: int
    pattern_count: int
    outcome: str  # solved | distinct-infeasible | timeout | out-of-scope
    seconds: float
    detail: str = ""


def _bench_one(task) -> BenchRow:
    path, index, fmt, mode, timeout = task
    text = Path(path).read_text(encoding="utf-8")
    parsed = parse_instance(text, format=fmt, name=Path(path).stem)
    named = parsed.instances[index]
    inst = named.instance
    label = named.name if len(parsed) > 1 else Path(path).name
    shape = (inst.n, inst.bins, inst.per_bin, inst.capacity)
    start = time.perf_counter()
    report = instance_validate(inst)
    if not report.ok:
        return BenchRow(label, *shape, 0, "out-of-scope",
                        time.perf_counter() - start, str(report))
    try:
        ps = enumerate_patterns(inst, mode)
    except PatternExplosion as exc:
        return BenchRow(label, *shape, 0, "out-of-scope",
                        time.perf_counter() - start, str(exc))
    try:
        packing = solve(inst, ps, SearchConfig(timeout=timeout))
    except TimeoutExceeded:
        return BenchRow(label, *shape, len(ps), "timeout",
                        time.perf_counter() - start)
    elapsed = time.perf_counter() - start
    if packing is None:
        return BenchRow(label, *shape, len(ps), "distinct-infeasible", elapsed)
    check = verify(inst, packing)
    if not check.valid:  # would be a solver bug; never report it as solved
        return BenchRow(label, *shape, len(ps), "out-of-scope", elapsed,
                        f"solver output failed verification: {check}")
    return BenchRow(label, *shape, len(ps), "solved", elapsed)


def _cmd_bench(args) -> int:
    root = Path(args.dir)
    files = sorted(p for p in root.iterdir() if p.is_file())
    if not files:
        raise ExactPackError(f"no instance files in {root}")
    timeout = None if args.timeout is not None and args.timeout <= 0 else args.timeout
    tasks = []
    for path in files:
        try:
            parsed = parse_instance(path.read_text(encoding="utf-8"), format=args.format,
                                    name=path.stem)
        except ExactPackError as exc:
            print(f"skipping {path.name}: {exc}", file=sys.stderr)
            continue
        tasks.extend((str(path), i, args.format, args.mode, timeout)
                     for i in range(len(parsed)))
    workers = max(1, args.workers)
    if workers == 1:
        rows = [_bench_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_bench_one, tasks))
    summary = {key: 0 for key in
               ("solved", "distinct-infeasible", "timeout", "out-of-scope")}
    for row in rows:
        summary[row.outcome] += 1
    doc = {"rows": [asdict(r) for r in rows],
           "summary": {**summary, "total": len(rows)}}
    Path(args.report).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    width = max((len(r.name) for r in rows), default=4)
    print(f"{'name':<{width}}  {'n':>4} {'bins':>4} {'per':>4} {'cap':>6} "
          f"{'pats':>6}  {'outcome':<19} {'seconds':>8}")
    for r in rows:
        print(f"{r.name:<{width}}  {r.n:>4} {r.bins:>4} {r.per_bin:>4} "
              f"{r.capacity:>6} {r.pattern_count:>6}  {r.outcome:<19} "
              f"{r.seconds:>8.3f}")
    print("summary: " + " ".join(f"{k}={v}" for k, v in doc["summary"].items()))
    return EXIT_OK


if __name__ == "__main__":
    main()
