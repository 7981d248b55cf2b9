"""Command-line entry point: search, oracle, scan-residues and bench.

Progress and diagnostics go to standard error; data goes to files or
standard output only, so output is safely pipeable.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field

from . import bench, engine, oracle
from .buckets import BucketOverflowError
from .congruence import CaseId, SearchConfig, is_probable_prime
from .hashtable import TableFullError
from .verify import Solution, eval_residual, is_primitive

log = logging.getLogger("quartsearch")


@dataclass
class CliInvocation:
    subcommand: str
    configs: list[SearchConfig] = field(default_factory=list)
    engine_kind: engine.EngineKind | None = None
    out_path: str | None = None
    checkpoint_path: str | None = None
    log_every: int = 1000
    workers: int = 1
    bound: int = 0
    sample: int = 100
    seed: int = 0
    compare: bool = False


def _parse_pages(text: str, p: int) -> tuple[int, int]:
    try:
        lo_s, hi_s = text.split("..")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--pages expects LO..HI, got {text!r}")
    if not 0 <= lo <= hi <= p - 1:
        raise argparse.ArgumentTypeError(f"--pages {text} outside [0, {p - 1}]")
    return lo, hi


def _add_config_flags(sp: argparse.ArgumentParser, default_bound: int) -> None:
    sp.add_argument("--case", choices=["N", "S", "both"], default="both")
    sp.add_argument("--bound", type=int, default=default_bound)
    sp.add_argument("--page-prime", type=int, default=200_003)
    sp.add_argument("--table-bits", type=int, default=27)
    sp.add_argument("--bucket-bits", type=int, default=10)
    sp.add_argument("--bucket-cap-bits", type=int, default=17)
    sp.add_argument("--engine", choices=["h64", "h64b", "merge"], default="h64b")
    sp.add_argument("--pages", default=None, metavar="LO..HI")
    sp.add_argument("--filters-13-17", action="store_true")


def _build_configs(args: argparse.Namespace, parser: argparse.ArgumentParser
                   ) -> list[SearchConfig]:
    if not is_probable_prime(args.page_prime) or args.page_prime in (2, 3, 5):
        parser.error(f"--page-prime {args.page_prime} is not a usable prime")
    page_range = None
    if args.pages:
        try:
            page_range = _parse_pages(args.pages, args.page_prime)
        except argparse.ArgumentTypeError as e:
            parser.error(str(e))
    cases = [CaseId.N, CaseId.S] if args.case == "both" else [CaseId(args.case)]
    try:
        return [
            SearchConfig(
                bound=args.bound, case=c, page_prime=args.page_prime,
                table_bits=args.table_bits, bucket_count_bits=args.bucket_bits,
                bucket_capacity_bits=args.bucket_cap_bits,
                filters_13_17=args.filters_13_17, page_range=page_range,
            )
            for c in cases
        ]
    except ValueError as e:
        parser.error(str(e))


def parse_args(argv: list[str] | None = None) -> CliInvocation:
    parser = argparse.ArgumentParser(
        prog="quartsearch",
        description="Search for primitive solutions of x^4 + 2y^4 = z^4 + 4w^4",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("search", help="run the paged meet-in-the-middle search")
    _add_config_flags(sp, default_bound=100_000_000)
    sp.add_argument("--checkpoint", default=None, metavar="PATH")
    sp.add_argument("--out", default=None, metavar="PATH")
    sp.add_argument("--log-every", type=int, default=1000)
    sp.add_argument("--workers", type=int, default=1)

    so = sub.add_parser("oracle", help="exact reference search (small bounds)")
    so.add_argument("--bound", type=int, required=True)
    so.add_argument("--out", default=None, metavar="PATH")

    sub.add_parser("scan-residues", help="check all modular facts the sieves use")

    sb = sub.add_parser("bench", help="per-page counters and engine throughput")
    _add_config_flags(sb, default_bound=1_000_000)
    sb.add_argument("--sample", type=int, default=100, metavar="N")
    sb.add_argument("--seed", type=int, default=0)
    sb.add_argument("--compare", action="store_true",
                    help="compare all three engine kinds instead of emitting CSV")
    sb.add_argument("--out", default=None, metavar="PATH")

    args = parser.parse_args(argv)
    inv = CliInvocation(subcommand=args.subcommand)
    if args.subcommand in ("search", "bench"):
        inv.configs = _build_configs(args, parser)
        inv.engine_kind = engine.EngineKind(args.engine)
        inv.out_path = args.out
        if args.subcommand == "search":
            inv.checkpoint_path = args.checkpoint
            inv.log_every = max(1, args.log_every)
            inv.workers = max(1, args.workers)
        else:
            inv.sample = args.sample
            inv.seed = args.seed
            inv.compare = args.compare
    elif args.subcommand == "oracle":
        inv.bound = args.bound
        inv.out_path = args.out
    return inv


def _write_solution_file(path: str | None, solutions: list[Solution]) -> None:
    lines = [s.line() + "\n" for s in sorted(set(solutions), key=Solution.sort_key)]
    if path is None:
        sys.stdout.writelines(lines)
        return
    tmp = path + ".tmp"
    with open(tmp, "w") as f:
        f.writelines(lines)
    os.replace(tmp, path)


def _load_partial(path: str) -> list[Solution]:
    if not os.path.exists(path):
        return []
    with open(path) as f:
        return [Solution.from_line(line) for line in f if line.strip()]


def _run_search(inv: CliInvocation) -> int:
    multi_case = len(inv.configs) > 1
    partial_path = (inv.out_path + ".partial") if inv.out_path else None
    solutions: list[Solution] = _load_partial(partial_path) if partial_path else []
    if inv.checkpoint_path and inv.out_path and os.path.exists(inv.out_path):
        # Resuming: solutions already flushed to the out file must survive.
        solutions.extend(_load_partial(inv.out_path))
    partial = open(partial_path, "a") if partial_path else None

    def on_solution(s: Solution) -> None:
        print(f"solution: {s.line()}", file=sys.stderr)
        if partial is not None:
            partial.write(s.line() + "\n")
            partial.flush()

    try:
        for cfg in inv.configs:
            cp_path = inv.checkpoint_path
            if cp_path and multi_case:
                cp_path = f"{cp_path}.{cfg.case.value}"
            checkpoint = None
            if cp_path and os.path.exists(cp_path):
                checkpoint = engine.Checkpoint.load(cp_path)
                print(f"resuming case {cfg.case} after page "
                      f"{checkpoint.last_completed_page}", file=sys.stderr)

            def progress(r: int, cp: engine.Checkpoint, _cfg=cfg) -> None:
                print(f"case {_cfg.case} page {r}/{_cfg.page_prime} "
                      f"writes={cp.writes} reads={cp.reads} hits={cp.hits}",
                      file=sys.stderr)

            solutions.extend(engine.run(
                cfg, inv.engine_kind, checkpoint,
                checkpoint_path=cp_path, progress=progress,
                progress_every=inv.log_every, workers=inv.workers,
                on_solution=on_solution,
            ))
    except (BucketOverflowError, TableFullError, engine.CheckpointMismatchError) as e:
        print(f"fatal: {e}", file=sys.stderr)
        return 1
    finally:
        if partial is not None:
            partial.close()

    for s in solutions:
        assert eval_residual(*s.quadruple()) == 0 and is_primitive(*s.quadruple())
    _write_solution_file(inv.out_path, solutions)
    if partial_path and os.path.exists(partial_path):
        os.remove(partial_path)
    return 0


def _run_bench(inv: CliInvocation) -> int:
    out = open(inv.out_path, "w") if inv.out_path else sys.stdout
    try:
        for cfg in inv.configs:
            sample = bench.sample_pages(cfg, inv.sample, inv.seed)
            if inv.compare:
                cmp = bench.compare_engines(cfg, sample)
                print(f"# case {cfg.case} bound {cfg.bound}", file=out)
                print(cmp.text(), file=out)
            else:
                metrics = bench.measure_pages(cfg, inv.engine_kind, sample)
                print(f"# case {cfg.case} bound {cfg.bound} "
                      f"reads/writes={bench.read_write_ratio(metrics):.3f}",
                      file=out)
                print(bench.metrics_csv(metrics), end="", file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def run_cli(inv: CliInvocation) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    if inv.subcommand == "search":
        return _run_search(inv)
    if inv.subcommand == "oracle":
        result = oracle.exact_search(inv.bound)
        _write_solution_file(inv.out_path, list(result.solutions))
        return 0
    if inv.subcommand == "scan-residues":
        report = oracle.verify_residue_claims()
        print(report.text())
        return 0 if report.all_pass else 1
    if inv.subcommand == "bench":
        return _run_bench(inv)
    raise AssertionError(f"unknown subcommand {inv.subcommand}")


def main(argv: list[str] | None = None) -> None:
    sys.exit(run_cli(parse_args(argv)))


if __name__ == "__main__":
    main()
