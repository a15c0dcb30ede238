"""Command-line interface: ``specclique {analyze,gen,scan,sweep-gcd,verify,compare}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import data
from .bounds import (
    SLACK_REL,
    bound_report,
    clique_lb_iterative,
    hoffman_full_lb,
    hoffman_ratio_lb,
    iterative_trace,
)
from .families import read_srg_table, verify_family_theorem, verify_srg_table
from .graph import Graph, GraphError, generate, parse_graph6, read_graph6_lines, write_graph6
from .oracle import DEFAULT_CHI_MAX_N, DEFAULT_CHI_NODE_LIMIT, DEFAULT_NODE_LIMIT, exact_invariants
from .search import (
    ScanOptions,
    compare_conjectures,
    csv_text,
    resolve_jobs,
    scan_corpus,
    stats_json,
    sweep_gcd_graphs,
)
from .spectral import ZERO_TOL_REL, spectral_summary

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_TRUNCATED = 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers


def load_graph(source: str) -> Graph:
    """A family spec (``barbell:8``), a graph6 string, or a file whose first graph is used."""
    if os.path.isfile(source):
        with open(source, "rb") as fh:
            for g in read_graph6_lines(fh, source=os.path.basename(source)):
                return g
        raise UsageError(f"{source}: no graph found")
    try:
        return generate(source)
    except GraphError as spec_err:
        try:
            return parse_graph6(source, label=source)
        except GraphError:
            raise UsageError(f"cannot read graph {source!r}: {spec_err}") from spec_err


def load_corpus(source: str) -> list[Graph]:
    if source.startswith("bundled:"):
        name = source.split(":", 1)[1]
        if name not in data.BUNDLED:
            raise UsageError(f"unknown bundled corpus {name!r}")
        return data.bundled_graphs(name)
    if source == "-":
        return list(read_graph6_lines(sys.stdin, source="stdin"))
    if not os.path.isfile(source):
        raise UsageError(f"no such corpus file: {source}")
    with open(source, "rb") as fh:
        return list(read_graph6_lines(fh, source=os.path.basename(source)))


def _options(args) -> ScanOptions:
    return ScanOptions(
        zero_tol_rel=args.zero_tol,
        slack_rel=args.slack,
        node_limit=args.node_limit,
        chi_max_n=args.chi_max_n,
        chi_node_limit=args.chi_node_limit or DEFAULT_CHI_NODE_LIMIT,
        jobs=resolve_jobs(args.jobs),
    )


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# analyze


def render_trace(steps, mode: str) -> list[str]:
    name = "sum_{i<=ell} mu_i^2" if mode == "conj1" else "mu_1^2 + mu_2^2"
    lines = []
    for st in steps:
        rel = "<=" if st.holds else ">"
        verdict = f"omega >= {st.omega}" if st.holds else f"omega > {st.omega}"
        lines.append(f"  omega = {st.omega}, ell = {st.ell}: {name} = {st.lhs:.2f} {rel} "
                     f"2m(omega-1)/omega = {st.rhs:.2f}  =>  {verdict}")
    return lines


def cmd_analyze(args) -> int:
    g = load_graph(args.input)
    spec = spectral_summary(g, args.zero_tol)
    oracle = None
    if not args.no_oracle:
        oracle = exact_invariants(g, args.node_limit, args.chi_max_n, chi_node_limit=args.chi_node_limit)
    omega = oracle.omega if oracle and not oracle.truncated else None
    chi = oracle.chi if oracle else None
    rep = bound_report(g, spec, omega, chi, args.slack)
    if oracle:
        rep.omega_truncated = oracle.truncated
        rep.chi_truncated = oracle.chi_truncated
    conj_steps = iterative_trace(spec, g.m, "conj1", args.slack) if g.m else []
    bn_steps = iterative_trace(spec, g.m, "bn", args.slack) if g.m and not g.is_complete else []

    if args.format == "json":
        doc = rep.to_dict()
        doc["spectrum"] = [[v, k] for v, k in spec.grouped()]
        doc["eigenvalues"] = list(spec.eigenvalues)
        doc["n_zero"], doc["n_neg"] = spec.n_zero, spec.n_neg
        doc["trace_conj1"] = [st.__dict__ for st in conj_steps]
        doc["trace_bn"] = [st.__dict__ for st in bn_steps]
        _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        from .search import CorpusStats
        stats = CorpusStats()
        stats.add(rep)
        _emit(args, csv_text(stats))
    else:
        out = [f"graph: {rep.graph_label}  n = {g.n}, m = {g.m}"]
        spectrum = ", ".join(f"{v + 0.0:.4f}^{k}" if abs(v) >= 5e-5 else f"0.0000^{k}"
                             for v, k in spec.grouped())
        out.append(f"spectrum: ({spectrum})")
        out.append(f"n+ = {spec.n_pos}, n0 = {spec.n_zero}, n- = {spec.n_neg}, "
                   f"s+ = {spec.s_plus:.4f}, s- = {spec.s_minus:.4f}")
        if g.m:
            out.append(f"omega <= chi <= 1 + mu_1 = {1 + spec.mu1:.4f}")
            out.append("iterative bound, ell = min(n+, omega):")
            out.extend(render_trace(conj_steps, "conj1"))
            lb = rep.clique_lb_conj1
            out.append(f"  bound: omega >= {lb}" if lb is not None else
                       "  bound: none (inequality failed at every candidate, counterexample)")
            if bn_steps:
                out.append("iterative bound, two eigenvalues:")
                out.extend(render_trace(bn_steps, "bn"))
                out.append(f"  bound: omega >= {rep.clique_lb_bn}")
            out.append(f"spectral Turan bound: omega >= {rep.clique_lb_turan}")
            out.append(f"Hoffman ratio bound: chi >= {hoffman_ratio_lb(spec):.4f}")
            out.append(f"full Hoffman bound: chi >= {hoffman_full_lb(spec)}")
            out.append(f"Cvetkovic inertia bound: omega <= {rep.cvetkovic_ub}")
        if oracle:
            if oracle.truncated:
                out.append(f"exact omega: search truncated (omega >= {oracle.omega})")
            else:
                out.append(f"exact omega = {oracle.omega}")
            if oracle.chi is not None:
                out.append(f"exact chi = {oracle.chi}")
            elif oracle.chi_bounds:
                out.append(f"chi in [{oracle.chi_bounds[0]}, {oracle.chi_bounds[1]}] (truncated)")
            if rep.conj1_holds_at_exact_omega is not None:
                out.append(f"inequality at exact omega: {'holds' if rep.conj1_holds_at_exact_omega else 'FAILS'}")
                out.append(f"s+ > 2m(omega-1)/omega: {'yes' if rep.s_plus_exceeds_conj_rhs else 'no'}")
        _emit(args, "\n".join(out) + "\n")
    if rep.conj1_status == "violation":
        return EXIT_FAIL
    if oracle and (oracle.truncated or oracle.chi_truncated):
        return EXIT_TRUNCATED
    return EXIT_OK


# ---------------------------------------------------------------------------
# other commands


def cmd_gen(args) -> int:
    lines = []
    for spec in args.specs:
        g = load_graph(spec)
        lines.append(write_graph6(g).decode("ascii") + (f" {g.label}" if args.labels and g.label else ""))
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _render_stats(args, stats) -> None:
    if args.format == "csv":
        _emit(args, csv_text(stats))
    elif args.format == "json":
        _emit(args, stats_json(stats, include_graphs=args.per_graph) + "\n")
    else:
        cmp = compare_conjectures(stats)
        out = [
            f"graphs: {stats.total}",
            f"omega < chi: {stats.omega_lt_chi_count}",
            f"violations: {len(stats.conj1_violations)}",
        ]
        out += [f"  {lab}" for lab in stats.conj1_violations]
        out.append(f"numerically borderline: {len(stats.conj1_borderline)}")
        out.append(f"s+ > 2m(omega-1)/omega: {stats.s_plus_exceeds_count}")
        out += [f"  {lab}" for lab in stats.s_plus_exceeds]
        out.append(f"ell-eigenvalue bound beats two-eigenvalue bound (omega < chi): "
                   f"{cmp['conj1_beats_bn']}/{cmp['omega_lt_chi']} = {cmp['fraction']:.3f}")
        out.append(f"oracle truncated: {stats.truncated_count}")
        out.append(f"chi truncated: {sum(r.chi_truncated for r in stats.per_graph)}")
        out.append(f"errors: {len(stats.errors)}")
        out += [f"  {lab}: {msg}" for lab, msg in stats.errors]
        _emit(args, "\n".join(out) + "\n")


def _stats_exit(stats) -> int:
    if stats.conj1_violations:
        return EXIT_FAIL
    if stats.truncated_count:
        return EXIT_TRUNCATED
    return EXIT_OK


def cmd_scan(args) -> int:
    stats = scan_corpus(load_corpus(args.corpus), _options(args))
    _render_stats(args, stats)
    return _stats_exit(stats)


def cmd_sweep_gcd(args) -> int:
    stats = sweep_gcd_graphs(args.n_max, _options(args), n_min=args.n_min)
    _render_stats(args, stats)
    return _stats_exit(stats)


def cmd_compare(args) -> int:
    stats = scan_corpus(load_corpus(args.corpus), _options(args))
    cmp = compare_conjectures(stats)
    if args.format == "json":
        _emit(args, json.dumps(cmp, indent=2, sort_keys=True) + "\n")
    else:
        lines = [f"omega < chi graphs: {cmp['omega_lt_chi']}",
                 f"ell-eigenvalue bound strictly better: {cmp['conj1_beats_bn']}",
                 f"fraction: {cmp['fraction']:.3f}"]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    lines: list[str] = []
    ok = True
    truncated = False
    if args.target in ("kneser", "johnson"):
        rep = verify_family_theorem(args.target, args.p_max)
        for c in rep.checks:
            lines.append(f"{args.target}({c.p},{c.k}) ell={c.ell} lhs={c.lhs} rhs={float(c.rhs):.4f} "
                         f"tightness={c.tightness:.4f} {'pass' if c.ok else 'FAIL'}")
        ok = rep.passed
        lines.append(f"{args.target} p <= {args.p_max}: {len(rep.checks)} cases, "
                     f"{len(rep.failures)} failures")
    elif args.target in ("srg-typec", "srg-lambda1"):
        if args.table:
            with open(args.table) as fh:
                rows = read_srg_table(fh)
        else:
            rows = read_srg_table(data.bundled_text("srg").splitlines())
        checks = verify_srg_table(rows, "typec" if args.target == "srg-typec" else "lambda1")
        for c in checks:
            lines.append(f"SRG{c.params} {c.status} {c.detail}")
        failed = [c for c in checks if c.status == "fail"]
        ok = not failed
        applied = sum(c.status != "n/a" for c in checks)
        lines.append(f"{args.target}: {applied} applicable, {len(failed)} failures")
    else:
        stats = scan_corpus(load_corpus(args.corpus), _options(args))
        checked = 0
        for rep in stats.per_graph:
            if rep.omega_truncated or rep.chi_truncated:
                truncated = True
            if rep.omega_exact is None or rep.chi_exact is None or rep.m == 0:
                continue
            if rep.omega_exact == rep.chi_exact:
                checked += 1
                if not rep.conj1_holds_at_exact_omega:
                    ok = False
                    lines.append(f"FAIL {rep.graph_label}: inequality fails at omega = chi = {rep.omega_exact}")
            if rep.ando_lin_holds is False:
                ok = False
                lines.append(f"FAIL {rep.graph_label}: s+ > 2m(chi-1)/chi")
        lines.append(f"weakly perfect graphs checked: {checked}, "
                     f"{'all pass' if ok else 'failures present'}")
    _emit(args, "\n".join(lines) + "\n")
    if not ok:
        return EXIT_FAIL
    return EXIT_TRUNCATED if truncated else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", "-o", metavar="PATH")
    common.add_argument("--zero-tol", type=float, default=ZERO_TOL_REL,
                        help="relative tolerance for classifying eigenvalues as zero")
    common.add_argument("--slack", type=float, default=SLACK_REL,
                        help="relative additive slack for inequality comparisons")
    common.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    common.add_argument("--chi-max-n", type=int, default=DEFAULT_CHI_MAX_N)
    common.add_argument("--chi-node-limit", type=int, default=None,
                        help="node budget for the colouring search (default: 10^6 in scans, --node-limit in analyze)")
    common.add_argument("--jobs", "-j", type=int, default=None,
                        help="worker processes (default: $SPECCLIQUE_JOBS or 1)")

    parser = argparse.ArgumentParser(prog="specclique", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="all bounds and the iterative trace for one graph")
    p.add_argument("input", help="family spec (e.g. circulant:16:1,2,3,4), graph6 string or file")
    p.add_argument("--no-oracle", action="store_true", help="skip exact omega/chi")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gen", parents=[common], help="write graph6 for family specs")
    p.add_argument("specs", nargs="+")
    p.add_argument("--labels", action="store_true", help="append the spec as a label")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("scan", parents=[common], help="run all bounds over a graph6 corpus")
    p.add_argument("corpus", help="graph6 file, '-' for stdin, or bundled:named / bundled:atlas7")
    p.add_argument("--per-graph", action="store_true", help="include per-graph reports in JSON")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("sweep-gcd", parents=[common], help="scan all gcd graphs X_n(d1,d2)")
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--per-graph", action="store_true")
    p.set_defaults(func=cmd_sweep_gcd)

    p = sub.add_parser("compare", parents=[common], help="ell-eigenvalue vs two-eigenvalue bound")
    p.add_argument("corpus")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", parents=[common], help="family theorem sweeps and corpus lemma checks")
    p.add_argument("target", choices=("kneser", "johnson", "srg-typec", "srg-lambda1",
                                       "weakly-perfect-corpus"))
    p.add_argument("--p-max", type=int, default=12)
    p.add_argument("--table", help="CSV of n,d,lambda,mu rows (default: bundled table)")
    p.add_argument("--corpus", default="bundled:atlas7")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("node_limit", "chi_max_n", "chi_node_limit"):
        if getattr(args, name) is not None and getattr(args, name) <= 0:
            parser.error(f"--{name.replace('_', '-')} must be positive")
    if args.zero_tol <= 0 or args.slack < 0:
        parser.error("tolerances must be positive")
    try:
        return args.func(args)
    except (UsageError, GraphError) as exc:
        print(f"specclique: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
