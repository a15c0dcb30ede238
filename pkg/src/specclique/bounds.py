"""Spectral clique and chromatic bounds.

Every inequality is compared with an additive slack of ``1e-9 * max(1, 2m)``
so that exact-arithmetic equality cases (complete graphs, K3 walk checks)
do not flip on eigensolver round-off.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .graph import Graph
from .spectral import Spectrum, walk_count

__all__ = [
    "SLACK_REL",
    "TraceStep",
    "BoundReport",
    "conj1_lhs",
    "conj1_rhs",
    "conj1_holds",
    "bn_holds",
    "iterative_trace",
    "clique_lb_iterative",
    "clique_lb_turan",
    "hoffman_ratio_lb",
    "hoffman_full_lb",
    "cvetkovic_ub",
    "s_plus_exceeds",
    "walk_power_terms",
    "walk_power_check",
    "clique_cap",
    "bound_report",
]

SLACK_REL = 1e-9
CEIL_NUDGE = 1e-9


def _slack(m: int, rel: float = SLACK_REL) -> float:
    return rel * max(1.0, 2.0 * m)


def conj1_rhs(m: int, omega: int) -> float:
    return 2.0 * m * (omega - 1) / omega


def _ell(spec: Spectrum, omega: int) -> int:
    ell = min(spec.n_pos, omega)
    if ell and spec.eigenvalues[ell - 1] <= spec.zero_tol:
        raise AssertionError("summed eigenvalue is not positive after zero classification")
    return ell


def conj1_lhs(spec: Spectrum, omega: int) -> tuple[int, float]:
    """Return ``(ell, sum of squares of the ell largest eigenvalues)`` with ell = min(n+, omega)."""
    ell = _ell(spec, omega)
    return ell, float(np.sum(spec.array[:ell] ** 2))


def conj1_holds(spec: Spectrum, m: int, omega: int, slack_rel: float = SLACK_REL) -> bool:
    if omega < 2:
        raise ValueError("omega must be >= 2")
    _, lhs = conj1_lhs(spec, omega)
    return lhs <= conj1_rhs(m, omega) + _slack(m, slack_rel)


def bn_holds(spec: Spectrum, m: int, omega: int, slack_rel: float = SLACK_REL) -> bool:
    """Two-eigenvalue inequality mu1^2 + mu2^2 <= 2m(omega-1)/omega.

    Not defined for complete graphs; callers are expected to check that.
    """
    if omega < 2:
        raise ValueError("omega must be >= 2")
    lhs = spec.mu1 ** 2 + (spec.eigenvalues[1] ** 2 if spec.n > 1 else 0.0)
    return lhs <= conj1_rhs(m, omega) + _slack(m, slack_rel)


def clique_cap(spec: Spectrum) -> int:
    """floor(1 + mu1): omega <= chi <= 1 + mu1."""
    return int(math.floor(1.0 + spec.mu1 + CEIL_NUDGE))


@dataclass(frozen=True)
class TraceStep:
    omega: int
    ell: int
    lhs: float
    rhs: float
    holds: bool


def iterative_trace(spec: Spectrum, m: int, mode: str = "conj1",
                    slack_rel: float = SLACK_REL) -> list[TraceStep]:
    """Candidate-by-candidate record of the iterative clique bound.

    Starts at omega = 2 and stops at the first candidate whose inequality
    holds, or at the cap floor(1 + mu1).
    """
    if mode not in ("conj1", "bn"):
        raise ValueError(f"unknown mode {mode!r}")
    steps = []
    for omega in range(2, max(clique_cap(spec), 2) + 1):
        if mode == "conj1":
            ell, lhs = conj1_lhs(spec, omega)
        else:
            ell = 2
            lhs = spec.mu1 ** 2 + (spec.eigenvalues[1] ** 2 if spec.n > 1 else 0.0)
        rhs = conj1_rhs(m, omega)
        ok = lhs <= rhs + _slack(m, slack_rel)
        steps.append(TraceStep(omega, ell, lhs, rhs, ok))
        if ok:
            break
    return steps


def clique_lb_iterative(spec: Spectrum, m: int, mode: str = "conj1",
                        complete: bool = False, slack_rel: float = SLACK_REL) -> Optional[int]:
    """Smallest candidate omega not refuted by the chosen inequality.

    Returns 1 for edgeless graphs and ``None`` when no candidate up to
    floor(1 + mu1) satisfies the inequality, i.e. the inequality failed at
    the true clique number. ``mode="bn"`` on a complete graph falls back to
    the spectral Turan bound.
    """
    if m == 0:
        return 1
    if mode == "bn" and complete:
        return clique_lb_turan(spec, m)
    steps = iterative_trace(spec, m, mode, slack_rel)
    if steps and steps[-1].holds:
        return steps[-1].omega
    return None


def clique_lb_turan(spec: Spectrum, m: int) -> int:
    if m == 0:
        return 1
    gap = 2.0 * m - spec.mu1 ** 2
    if gap <= _slack(m):
        return clique_cap(spec)
    return max(2, math.ceil(2.0 * m / gap - CEIL_NUDGE))


def hoffman_ratio_lb(spec: Spectrum) -> float:
    if spec.mu_n >= -spec.zero_tol:
        raise ValueError("Hoffman ratio bound needs at least one edge (mu_n < 0)")
    return 1.0 + spec.mu1 / abs(spec.mu_n)


def hoffman_full_lb(spec: Spectrum) -> int:
    """Smallest c >= 2 with mu1 + (sum of the c - 1 smallest eigenvalues) <= 0."""
    if spec.mu_n >= -spec.zero_tol:
        raise ValueError("Hoffman bound needs at least one edge")
    w = spec.array
    slack = SLACK_REL * max(1.0, spec.s_plus + spec.s_minus)
    tail = np.cumsum(w[::-1])
    for c in range(2, spec.n + 1):
        if w[0] + tail[c - 2] <= slack:
            return c
    return spec.n


def cvetkovic_ub(spec: Spectrum) -> int:
    tol = spec.zero_tol
    w = spec.array
    return int(min(np.sum(w <= -1.0 + tol) + 1, np.sum(w >= -1.0 - tol)))


def s_plus_exceeds(spec: Spectrum, m: int, omega: int, slack_rel: float = SLACK_REL) -> bool:
    if omega < 2:
        raise ValueError("omega must be >= 2")
    return spec.s_plus > conj1_rhs(m, omega) + _slack(m, slack_rel)


def walk_power_terms(spec: Spectrum, g: Graph, r: int, omega: int) -> tuple[float, float, int]:
    """Return ``(sum of r-th powers of the ell top eigenvalues, w_r (omega-1)/omega, w_r)``."""
    ell = _ell(spec, omega)
    lhs = float(np.sum(spec.array[:ell] ** r))
    w_r = walk_count(g, r)
    return lhs, w_r * (omega - 1) / omega, w_r


def walk_power_check(spec: Spectrum, g: Graph, r: int, omega: int) -> bool:
    """Power-r analogue of the ell-eigenvalue inequality, with walk counts on the right.

    Diagnostic only: it fails for r != 2 on ordinary graphs (e.g. the 6-vertex wheel).
    """
    if r < 1 or omega < 2:
        raise ValueError("need r >= 1 and omega >= 2")
    lhs, rhs, w_r = walk_power_terms(spec, g, r, omega)
    return lhs <= rhs + SLACK_REL * max(1.0, float(w_r))


@dataclass
class BoundReport:
    graph_label: str
    n: int
    m: int
    mu1: float
    n_pos: int
    s_plus: float
    clique_lb_conj1: Optional[int]
    clique_lb_bn: Optional[int]
    clique_lb_turan: int
    hoffman_ratio_lb: Optional[float]
    hoffman_full_lb: Optional[int]
    cvetkovic_ub: int
    s_plus_exceeds_conj_rhs: Optional[bool] = None
    conj1_holds_at_exact_omega: Optional[bool] = None
    omega_exact: Optional[int] = None
    chi_exact: Optional[int] = None
    omega_truncated: bool = False
    chi_truncated: bool = False
    conj1_status: Optional[str] = None
    ando_lin_holds: Optional[bool] = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def bound_report(g: Graph, spec: Spectrum, omega_exact: int | None = None,
                 chi_exact: int | None = None, slack_rel: float = SLACK_REL) -> BoundReport:
    """Collect every spectral bound for one graph, plus the exact-omega checks when known."""
    m = g.m
    notes = []
    has_edges = m > 0
    bn = clique_lb_iterative(spec, m, "bn", complete=g.is_complete, slack_rel=slack_rel)
    if g.is_complete and has_edges:
        notes.append("bn: complete graph, Turan fallback")
    conj1 = clique_lb_iterative(spec, m, "conj1", slack_rel=slack_rel)
    if conj1 is None:
        notes.append("conj1: no candidate up to floor(1+mu1) satisfied the inequality")
    rep = BoundReport(
        graph_label=g.label or "",
        n=g.n,
        m=m,
        mu1=spec.mu1,
        n_pos=spec.n_pos,
        s_plus=spec.s_plus,
        clique_lb_conj1=conj1,
        clique_lb_bn=bn,
        clique_lb_turan=clique_lb_turan(spec, m),
        hoffman_ratio_lb=hoffman_ratio_lb(spec) if has_edges else None,
        hoffman_full_lb=hoffman_full_lb(spec) if has_edges else None,
        cvetkovic_ub=cvetkovic_ub(spec),
        omega_exact=omega_exact,
        chi_exact=chi_exact,
        notes=notes,
    )
    if omega_exact is not None and omega_exact >= 2 and has_edges:
        rep.conj1_holds_at_exact_omega = conj1_holds(spec, m, omega_exact, slack_rel)
        rep.s_plus_exceeds_conj_rhs = s_plus_exceeds(spec, m, omega_exact, slack_rel)
        rep.conj1_status = "holds" if rep.conj1_holds_at_exact_omega else "violation"
    if chi_exact is not None and chi_exact >= 2 and has_edges:
        rep.ando_lin_holds = spec.s_plus <= conj1_rhs(m, chi_exact) + _slack(m, slack_rel)
    return rep
