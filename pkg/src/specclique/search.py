"""Corpus and parameter-sweep harness for the spectral clique bounds."""

from __future__ import annotations

import csv
import io
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from typing import Iterable, Optional

from .bounds import SLACK_REL, BoundReport, bound_report, conj1_lhs, conj1_rhs
from .graph import FamilySpec, Graph, generate
from .oracle import DEFAULT_CHI_MAX_N, DEFAULT_CHI_NODE_LIMIT, DEFAULT_NODE_LIMIT, exact_invariants
from .spectral import ZERO_TOL_REL, Spectrum, spectral_summary

__all__ = [
    "ScanOptions",
    "CorpusStats",
    "analyze_graph",
    "scan_corpus",
    "gcd_specs",
    "sweep_gcd_graphs",
    "compare_conjectures",
    "CSV_COLUMNS",
    "write_csv",
    "stats_json",
    "resolve_jobs",
]

TIGHT_SLACK_REL = 1e-12
VIOLATION_MARGIN_REL = 1e-6


@dataclass(frozen=True)
class ScanOptions:
    zero_tol_rel: float = ZERO_TOL_REL
    slack_rel: float = SLACK_REL
    node_limit: int = DEFAULT_NODE_LIMIT
    chi_max_n: int = DEFAULT_CHI_MAX_N
    chi_node_limit: int = DEFAULT_CHI_NODE_LIMIT
    with_chi: bool = True
    jobs: int = 1


def _confirm_violation(g: Graph, spec: Spectrum, omega: int, opts: ScanOptions) -> bool:
    """Re-check a failed inequality with an independent eigensolver and tight slack.

    A violation stands only if the excess over the right side exceeds
    1e-6 * 2m under both solvers.
    """
    rhs = conj1_rhs(g.m, omega)
    margin = VIOLATION_MARGIN_REL * 2 * g.m
    for s in (spec, spectral_summary(g, opts.zero_tol_rel, method="jacobi")):
        _, lhs = conj1_lhs(s, omega)
        if lhs <= rhs + TIGHT_SLACK_REL * 2 * g.m or lhs - rhs <= margin:
            return False
    return True


def analyze_graph(g: Graph, opts: ScanOptions = ScanOptions()) -> BoundReport:
    """Spectral bounds plus exact omega (and chi within limits) for one graph."""
    spec = spectral_summary(g, opts.zero_tol_rel)
    oracle = exact_invariants(g, opts.node_limit, opts.chi_max_n, with_chi=opts.with_chi,
                              chi_node_limit=opts.chi_node_limit)
    omega = None if oracle.truncated else oracle.omega
    chi = oracle.chi
    rep = bound_report(g, spec, omega, chi, opts.slack_rel)
    rep.omega_truncated = oracle.truncated
    rep.chi_truncated = oracle.chi_truncated
    if oracle.truncated:
        rep.notes.append(f"omega search truncated, best clique {oracle.omega}")
    if oracle.chi_truncated and oracle.chi_bounds:
        rep.notes.append("chi search truncated, {} <= chi <= {}".format(*oracle.chi_bounds))
    if rep.conj1_status == "violation" and not _confirm_violation(g, spec, omega, opts):
        rep.conj1_status = "borderline"
        rep.notes.append("conj1 failure within numerical tolerance")
    return rep


def _analyze_safe(args) -> BoundReport | tuple[str, str]:
    g, opts = args
    try:
        return analyze_graph(g, opts)
    except Exception as exc:  # per-graph failures are recorded, never fatal
        return (g.label or "", f"{type(exc).__name__}: {exc}")


@dataclass
class CorpusStats:
    total: int = 0
    omega_lt_chi_count: int = 0
    conj1_violations: list[str] = field(default_factory=list)
    conj1_borderline: list[str] = field(default_factory=list)
    conj1_beats_bn_count: int = 0
    s_plus_exceeds_count: int = 0
    s_plus_exceeds: list[str] = field(default_factory=list)
    truncated_count: int = 0
    errors: list[tuple[str, str]] = field(default_factory=list)
    per_graph: list[BoundReport] = field(default_factory=list)

    def add(self, rep: BoundReport) -> None:
        self.total += 1
        self.per_graph.append(rep)
        if rep.omega_truncated:
            self.truncated_count += 1
        if rep.conj1_status == "violation":
            self.conj1_violations.append(rep.graph_label)
        elif rep.conj1_status == "borderline":
            self.conj1_borderline.append(rep.graph_label)
        if rep.s_plus_exceeds_conj_rhs:
            self.s_plus_exceeds_count += 1
            self.s_plus_exceeds.append(rep.graph_label)
        if _omega_lt_chi(rep):
            self.omega_lt_chi_count += 1
            if _conj1_beats_bn(rep):
                self.conj1_beats_bn_count += 1

    def merge(self, other: "CorpusStats") -> "CorpusStats":
        out = CorpusStats()
        for rep in itertools.chain(self.per_graph, other.per_graph):
            out.add(rep)
        out.errors = self.errors + other.errors
        out.total += len(out.errors)
        return out


def _omega_lt_chi(rep: BoundReport) -> bool:
    return rep.omega_exact is not None and rep.chi_exact is not None and rep.omega_exact < rep.chi_exact


def _conj1_beats_bn(rep: BoundReport) -> bool:
    return (rep.clique_lb_conj1 is not None and rep.clique_lb_bn is not None
            and rep.clique_lb_conj1 > rep.clique_lb_bn)


def resolve_jobs(jobs: Optional[int]) -> int:
    if jobs is None:
        jobs = int(os.environ.get("SPECCLIQUE_JOBS", "1") or 1)
    return max(1, jobs)


def scan_corpus(graphs: Iterable[Graph], opts: ScanOptions = ScanOptions()) -> CorpusStats:
    """Run every bound and the exact oracle over a stream of graphs.

    Results keep input order regardless of ``opts.jobs``.
    """
    stats = CorpusStats()
    items = ((g, opts) for g in graphs)
    if opts.jobs > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            results = list(pool.map(_analyze_safe, items, chunksize=4))
    else:
        results = [_analyze_safe(item) for item in items]
    for res in results:
        if isinstance(res, BoundReport):
            stats.add(res)
        else:
            stats.total += 1
            stats.errors.append(res)
    return stats


def _proper_divisors(n: int) -> list[int]:
    return [d for d in range(1, n) if n % d == 0]


def gcd_specs(n_max: int, n_min: int = 2) -> list[FamilySpec]:
    """All X_n(d1, d2) with d1 < d2 distinct proper divisors of n, n_min <= n <= n_max."""
    specs = []
    for n in range(max(n_min, 2), n_max + 1):
        for d1, d2 in itertools.combinations(_proper_divisors(n), 2):
            specs.append(FamilySpec("gcd", (n, d1, d2)))
    return specs


def sweep_gcd_graphs(n_max: int, opts: ScanOptions = ScanOptions(), n_min: int = 2) -> CorpusStats:
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    return scan_corpus((generate(s) for s in gcd_specs(n_max, n_min)), opts)


def compare_conjectures(stats: CorpusStats) -> dict:
    """Share of omega < chi graphs where the ell-eigenvalue bound beats the two-eigenvalue bound."""
    pool = [r for r in stats.per_graph if _omega_lt_chi(r)]
    wins = [r.graph_label for r in pool if _conj1_beats_bn(r)]
    return {
        "omega_lt_chi": len(pool),
        "conj1_beats_bn": len(wins),
        "fraction": len(wins) / len(pool) if pool else 0.0,
        "graphs": wins,
    }


CSV_COLUMNS = [f.name for f in fields(BoundReport)]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.10g}"
    if isinstance(value, list):
        return ";".join(map(str, value))
    return str(value)


def write_csv(stats: CorpusStats, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rep in stats.per_graph:
        writer.writerow([_fmt(getattr(rep, c)) for c in CSV_COLUMNS])


def csv_text(stats: CorpusStats) -> str:
    buf = io.StringIO()
    write_csv(stats, buf)
    return buf.getvalue()


def stats_json(stats: CorpusStats, include_graphs: bool = False) -> str:
    doc = {
        "total": stats.total,
        "omega_lt_chi_count": stats.omega_lt_chi_count,
        "conj1_violations": stats.conj1_violations,
        "conj1_borderline": stats.conj1_borderline,
        "conj1_beats_bn_count": stats.conj1_beats_bn_count,
        "s_plus_exceeds_count": stats.s_plus_exceeds_count,
        "s_plus_exceeds": stats.s_plus_exceeds,
        "truncated_count": stats.truncated_count,
        "chi_truncated_count": sum(r.chi_truncated for r in stats.per_graph),
        "errors": [list(e) for e in stats.errors],
        "compare": {k: v for k, v in compare_conjectures(stats).items() if k != "graphs"},
    }
    if include_graphs:
        doc["per_graph"] = [r.to_dict() for r in stats.per_graph]
    return json.dumps(doc, indent=2, sort_keys=True)
