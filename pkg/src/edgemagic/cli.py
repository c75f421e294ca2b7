"""Command-line interface: solve, classify, generate, census, conjecture.

Exit codes are a stable contract: 0 success (witness found / conjecture
holds), 1 negative result (no witness / conjecture fails), 2 usage or input
error.  Graph streams read standard input when the source argument is "-".
Caps and defaults fall back to environment variables EDGEMAGIC_P_MAX,
EDGEMAGIC_P_SPARSE, EDGEMAGIC_Q_BRUTE, EDGEMAGIC_Q_ENUM, EDGEMAGIC_STORE,
EDGEMAGIC_FORMAT, and EDGEMAGIC_JOBS when the matching flag is not given.
"""

from __future__ import annotations

import argparse
import os
import sys
from contextlib import nullcontext
from dataclasses import dataclass

from .census import CensusStore, check_mop_conjecture, report_emit, run_census
from .generators import (
    P_SPARSE,
    FAMILY_NAMES,
    SparseSpec,
    generate_mops,
    generate_sparse_graphs,
    named_family,
)
from .graphs import P_MAX, Graph6Error, emit_graph6, parse_graph6
from .solver import Q_BRUTE, Q_ENUM, classify, is_k_em, witness_to_json


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    return int(value) if value else default


@dataclass
class CliConfig:
    """Effective caps and IO defaults (flags first, then environment)."""

    p_max: int = P_MAX
    p_sparse: int = P_SPARSE
    q_brute: int = Q_BRUTE
    q_enum: int = Q_ENUM
    store: str | None = None
    format: str = "csv"
    jobs: int = 1

    @classmethod
    def from_env(cls) -> "CliConfig":
        return cls(
            p_max=_env_int("EDGEMAGIC_P_MAX", P_MAX),
            p_sparse=_env_int("EDGEMAGIC_P_SPARSE", P_SPARSE),
            q_brute=_env_int("EDGEMAGIC_Q_BRUTE", Q_BRUTE),
            q_enum=_env_int("EDGEMAGIC_Q_ENUM", Q_ENUM),
            store=os.environ.get("EDGEMAGIC_STORE") or None,
            format=os.environ.get("EDGEMAGIC_FORMAT") or "csv",
            jobs=_env_int("EDGEMAGIC_JOBS", 1),
        )

    def __post_init__(self):
        for name in ("p_max", "p_sparse", "q_brute", "q_enum"):
            if getattr(self, name) < 1:
                raise ValueError(f"cap {name} must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")


def _open_source(arg: str):
    if arg == "-":
        return nullcontext(sys.stdin)  # leave stdin open
    return open(arg)


def _spectrum_text(members) -> str:
    return ";".join(str(k) for k in sorted(members)) or "-"


def cmd_solve(args, config: CliConfig) -> int:
    g = parse_graph6(args.graph6)
    witness = is_k_em(g, args.k)
    if witness is None:
        print("none")
        return 1
    print(witness_to_json(witness, g.p))
    return 0


def cmd_classify(args, config: CliConfig) -> int:
    failed = False
    with _open_source(args.source) as fh:
        for lineno, line in enumerate(fh, 1):
            record = line.strip()
            if not record:
                continue
            try:
                g = parse_graph6(record)
            except Graph6Error as exc:
                print(f"line {lineno}: {exc}", file=sys.stderr)
                failed = True
                continue
            spectrum = classify(g)
            print(f"{record}\t{_spectrum_text(spectrum.members)}")
    return 2 if failed else 0


def cmd_generate(args, config: CliConfig) -> int:
    if args.kind == "mop":
        graphs = generate_mops(args.p, p_max=config.p_max)
    elif args.kind == "sparse":
        spec = SparseSpec(args.p, args.h)
        graphs = generate_sparse_graphs(spec, args.connected_only, p_cap=config.p_sparse)
    else:
        graphs = [named_family(args.name, args.n)]
    for g in graphs:
        print(emit_graph6(g))
    return 0


def cmd_census(args, config: CliConfig) -> int:
    ks = [int(part) for part in args.k.split(",")] if args.k else None
    mode = args.mode if args.mode else ("k-list" if ks else "spectrum")
    store_path = args.store or config.store
    store = CensusStore(store_path) if store_path else None
    errors = []

    def report_error(lineno, message):
        errors.append((lineno, message))
        print(f"line {lineno}: {message}", file=sys.stderr)

    with _open_source(args.source) as fh:
        rows = run_census(
            fh,
            mode=mode,
            ks=ks,
            store=store,
            jobs=args.jobs or config.jobs,
            p_max=config.p_max,
            include_empty=args.include_empty,
            on_error=report_error,
        )
    fmt = args.format or config.format
    if args.out and args.out != "-":
        report_emit(rows, fmt, args.out)
    else:
        report_emit(rows, fmt, sys.stdout)
    return 0


def cmd_conjecture(args, config: CliConfig) -> int:
    p_max = args.p_max or max(config.p_max, args.p)
    verdict = check_mop_conjecture(args.p, p_max=p_max, jobs=args.jobs or config.jobs)
    if verdict.holds:
        print(f"HOLDS: all {verdict.checked} maximal outerplanar graphs of order "
              f"{verdict.p} have spectrum {{2}}")
        return 0
    print(f"FAILS: {len(verdict.counterexamples)} of {verdict.checked} graphs deviate")
    for code, spectrum in verdict.counterexamples:
        print(f"  {code}\t{_spectrum_text(spectrum)}")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgemagic",
        description="Exact solver and census engine for k-edge-magic graph labelings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="find a k-EM witness for one graph")
    p_solve.add_argument("graph6", help="graph6 record")
    p_solve.add_argument("--k", type=int, required=True, help="base label k >= 0")
    p_solve.set_defaults(func=cmd_solve)

    p_classify = sub.add_parser("classify", help="spectrum of each graph in a stream")
    p_classify.add_argument("source", nargs="?", default="-", help="graph6 file or - for stdin")
    p_classify.set_defaults(func=cmd_classify)

    p_generate = sub.add_parser("generate", help="emit graph6 lines for a family")
    gen_sub = p_generate.add_subparsers(dest="kind", required=True)
    g_mop = gen_sub.add_parser("mop", help="maximal outerplanar graphs of one order")
    g_mop.add_argument("--p", type=int, required=True)
    g_sparse = gen_sub.add_parser("sparse", help="all (p, p-h)-graphs up to isomorphism")
    g_sparse.add_argument("--p", type=int, required=True)
    g_sparse.add_argument("--h", type=int, required=True)
    g_sparse.add_argument("--connected-only", action="store_true")
    g_family = gen_sub.add_parser("family", help="one named fixture graph")
    g_family.add_argument("name", choices=FAMILY_NAMES)
    g_family.add_argument("n", type=int)
    p_generate.set_defaults(func=cmd_generate)

    p_census = sub.add_parser("census", help="classify a stream into a report file")
    p_census.add_argument("source", help="graph6 file or - for stdin")
    p_census.add_argument("--mode", choices=("spectrum", "k-list"))
    p_census.add_argument("--k", help="comma-separated k values for k-list mode")
    p_census.add_argument("--format", choices=("csv", "jsonl"))
    p_census.add_argument("--out", help="report path (default stdout)")
    p_census.add_argument("--store", help="JSONL result store path")
    p_census.add_argument("--jobs", type=int, help="parallel classification workers")
    p_census.add_argument("--include-empty", action="store_true",
                          help="keep edgeless graphs in the tables")
    p_census.set_defaults(func=cmd_census)

    p_conj = sub.add_parser("conjecture", help="check the prime-order MOP spectrum {2}")
    p_conj.add_argument("p", type=int, help="prime order >= 5")
    p_conj.add_argument("--p-max", type=int, help="raise the generation cap")
    p_conj.add_argument("--jobs", type=int)
    p_conj.set_defaults(func=cmd_conjecture)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = CliConfig.from_env()
        return args.func(args, config)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
