"""Census orchestration: spectra over graph streams, persistence, reports.

A census reads graph6 records, computes the k-EM spectrum (or a fixed list
of k values) once per isomorphism class, and emits deterministic CSV or
JSONL reports ordered by canonical code.  Results can be persisted to an
append-only JSONL store keyed by canonical code and solver version, so
interrupted or repeated runs reuse earlier work instead of recomputing.
"""

from __future__ import annotations

import concurrent.futures
import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path

from .graphs import P_MAX, Graph, Graph6Error, canonical_graph, emit_graph6, parse_graph6
from .solver import (
    SOLVER_VERSION,
    Witness,
    classify_detailed,
    counting_filter,
    witness_from_json,
    witness_to_json,
)
from .generators import generate_mops

logger = logging.getLogger(__name__)

CSV_HEADER = "graph6,p,q,spectrum"


@dataclass
class CensusRow:
    """One isomorphism class's census result.

    ``ks`` lists the residues actually decided (all of 0..p-1 in spectrum
    mode).  ``ruled_out`` records, for each decided non-member, whether the
    counting filter excluded it or the search was exhausted.  Rows for graphs
    beyond the configured caps carry status "skipped" and no spectrum.
    """

    code: str
    graph6: str
    p: int
    q: int
    spectrum: tuple[int, ...] = ()
    ks: tuple[int, ...] = ()
    witnesses: dict[int, Witness] = field(default_factory=dict)
    ruled_out: dict[int, str] = field(default_factory=dict)
    status: str = "ok"


@dataclass(frozen=True)
class ConjectureVerdict:
    """Outcome of the prime-order check that every MOP spectrum is exactly {2}."""

    p: int
    holds: bool
    counterexamples: tuple[tuple[str, tuple[int, ...]], ...]
    checked: int
    filter_admits: tuple[int, ...]


def row_to_json(row: CensusRow) -> str:
    payload = {
        "code": row.code,
        "graph6": row.graph6,
        "p": row.p,
        "q": row.q,
        "spectrum": list(row.spectrum),
        "ks": list(row.ks),
        "witnesses": {
            str(k): json.loads(witness_to_json(w, row.p))
            for k, w in sorted(row.witnesses.items())
        },
        "ruled_out": {str(k): reason for k, reason in sorted(row.ruled_out.items())},
        "status": row.status,
    }
    return json.dumps(payload, separators=(",", ":"))


def row_from_json(text: str) -> CensusRow:
    payload = json.loads(text)
    witnesses = {}
    for k, wj in payload["witnesses"].items():
        witness, _ = witness_from_json(json.dumps(wj))
        witnesses[int(k)] = witness
    return CensusRow(
        code=payload["code"],
        graph6=payload["graph6"],
        p=payload["p"],
        q=payload["q"],
        spectrum=tuple(payload["spectrum"]),
        ks=tuple(payload["ks"]),
        witnesses=witnesses,
        ruled_out={int(k): reason for k, reason in payload["ruled_out"].items()},
        status=payload["status"],
    )


class CensusStore:
    """Append-only JSONL store of census rows; last entry per code wins.

    Lines written under a different solver version are ignored on load.
    Single-writer: callers append completed rows from one thread.
    """

    def __init__(self, path, solver_version: str = SOLVER_VERSION):
        self.path = Path(path)
        self.solver_version = solver_version

    def load(self) -> dict[str, CensusRow]:
        rows: dict[str, CensusRow] = {}
        if not self.path.exists():
            return rows
        with self.path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    payload = json.loads(line)
                    if payload.pop("solver_version", None) != self.solver_version:
                        continue
                    row = row_from_json(json.dumps(payload))
                except (ValueError, KeyError) as exc:
                    logger.warning("store %s line %d unreadable: %s", self.path, lineno, exc)
                    continue
                rows[row.code] = row
        return rows

    def append(self, row: CensusRow) -> None:
        payload = json.loads(row_to_json(row))
        payload["solver_version"] = self.solver_version
        with self.path.open("a") as fh:
            fh.write(json.dumps(payload, separators=(",", ":")) + "\n")


def _classify_job(args: tuple[Graph, tuple[int, ...]]):
    g, ks = args
    return classify_detailed(g, ks)


def _merge_row(cached: CensusRow, ks, members, witnesses, ruled_out) -> CensusRow:
    all_ks = tuple(sorted(set(cached.ks) | set(ks)))
    spectrum = tuple(sorted(set(cached.spectrum) | set(members)))
    merged_witnesses = dict(cached.witnesses)
    merged_witnesses.update(witnesses)
    merged_ruled_out = dict(cached.ruled_out)
    merged_ruled_out.update(ruled_out)
    return replace(
        cached,
        spectrum=spectrum,
        ks=all_ks,
        witnesses=merged_witnesses,
        ruled_out=merged_ruled_out,
    )


def _project_row(row: CensusRow, requested: tuple[int, ...]) -> CensusRow:
    """Restrict a row's knowledge to the residues this run asked about."""
    wanted = set(requested)
    return replace(
        row,
        spectrum=tuple(k for k in row.spectrum if k in wanted),
        ks=requested,
        witnesses={k: w for k, w in row.witnesses.items() if k in wanted},
        ruled_out={k: r for k, r in row.ruled_out.items() if k in wanted},
    )


def run_census(
    source,
    mode: str = "spectrum",
    ks=None,
    store: CensusStore | None = None,
    jobs: int = 1,
    p_max: int = P_MAX,
    include_empty: bool = False,
    on_error=None,
) -> list[CensusRow]:
    """Classify a graph6 stream, one row per isomorphism class, sorted by code.

    ``source`` is any iterable of graph6 lines (blank lines skipped).  In
    "spectrum" mode every residue 0..p-1 is decided; in "k-list" mode only
    the residues of ``ks`` (reduced mod each graph's p).  Unreadable records
    are reported with their line number and processing continues; graphs over
    the cap become status-"skipped" rows.  Edgeless graphs, which are k-EM
    for every k with c = 0, are excluded unless ``include_empty`` is set.
    """
    if mode not in ("spectrum", "k-list"):
        raise ValueError(f"unknown census mode {mode!r}")
    if mode == "k-list":
        if not ks:
            raise ValueError("k-list mode needs at least one k")
        ks = list(ks)
        if any(k < 0 for k in ks):
            raise ValueError(f"k values must be nonnegative, got {sorted(ks)}")
    if on_error is None:
        def on_error(lineno, message):
            logger.warning("line %d: %s", lineno, message)

    cached = store.load() if store is not None else {}
    rows: dict[str, CensusRow] = {}
    pending: list[tuple[CensusRow, Graph, tuple[int, ...], tuple[int, ...]]] = []
    scheduled: set[str] = set()

    for lineno, line in enumerate(source, 1):
        record = line.strip()
        if not record:
            continue
        try:
            g = parse_graph6(record)
        except Graph6Error as exc:
            on_error(lineno, str(exc))
            continue
        if g.q == 0 and not include_empty:
            continue
        if g.p > p_max:
            key = emit_graph6(g)
            rows.setdefault(
                key, CensusRow(code=key, graph6=key, p=g.p, q=g.q, status="skipped")
            )
            continue
        rep = canonical_graph(g, p_max=p_max)
        code = emit_graph6(rep)
        if code in rows or code in scheduled:
            continue
        requested = (
            tuple(range(g.p)) if mode == "spectrum" else tuple(sorted({k % g.p for k in ks}))
        )
        base = cached.get(code, CensusRow(code=code, graph6=code, p=g.p, q=g.q))
        needed = tuple(k for k in requested if k not in base.ks)
        if not needed:
            rows[code] = _project_row(base, requested)
            continue
        scheduled.add(code)
        pending.append((base, rep, requested, needed))

    if pending:
        work = [(rep, needed) for _, rep, _, needed in pending]
        if jobs > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_classify_job, work))
        else:
            results = [_classify_job(item) for item in work]
        for (base, _, requested, needed), outcome in zip(pending, results):
            merged = _merge_row(base, needed, *outcome)
            if store is not None:
                store.append(merged)
            rows[merged.code] = _project_row(merged, requested)

    return [rows[code] for code in sorted(rows)]


def _spectrum_cell(row: CensusRow) -> str:
    if row.status == "skipped":
        return "skipped"
    return ";".join(str(k) for k in row.spectrum)


def report_emit(rows, format: str, dest) -> None:
    """Write rows as CSV (graph6,p,q,spectrum) or JSONL; byte-deterministic."""
    if format not in ("csv", "jsonl"):
        raise ValueError(f"unknown report format {format!r}")
    if isinstance(dest, (str, Path)):
        with open(dest, "w") as fh:
            report_emit(rows, format, fh)
        return
    if format == "csv":
        dest.write(CSV_HEADER + "\n")
        for row in rows:
            dest.write(f"{row.graph6},{row.p},{row.q},{_spectrum_cell(row)}\n")
    else:
        for row in rows:
            dest.write(row_to_json(row) + "\n")


def rows_from_jsonl(source) -> list[CensusRow]:
    """Reload a JSONL report; inverse of report_emit(..., "jsonl", ...)."""
    if isinstance(source, (str, Path)):
        with open(source) as fh:
            return rows_from_jsonl(fh)
    return [row_from_json(line) for line in source if line.strip()]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_mop_conjecture(p: int, p_max: int = P_MAX, jobs: int = 1) -> ConjectureVerdict:
    """Exhaustively test that every MOP of prime order p has spectrum exactly {2}.

    The counting filter already forces k = 2 for q = 2p-3 and prime p > 3
    (the admitted set is recorded for cross-checking); the exhaustive census
    supplies the other direction, a 2-EM witness for every graph.
    """
    if not is_prime(p):
        raise ValueError(f"order must be prime, got {p}")
    if p < 5:
        raise ValueError(f"prime-order check starts at p=5, got {p}")
    if p > p_max:
        raise ValueError(f"order {p} exceeds cap {p_max}; raise the cap explicitly")
    mops = generate_mops(p, p_max=p_max)
    admitted = tuple(k for k in range(p) if counting_filter(mops[0], k))

    work = [(g, tuple(range(p))) for g in mops]
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_classify_job, work))
    else:
        results = [_classify_job(item) for item in work]

    counterexamples = []
    for g, (members, _, _) in zip(mops, results):
        if members != {2 % p}:
            counterexamples.append(
                (emit_graph6(g), tuple(sorted(members)))
            )
    return ConjectureVerdict(
        p=p,
        holds=not counterexamples,
        counterexamples=tuple(counterexamples),
        checked=len(mops),
        filter_admits=admitted,
    )
