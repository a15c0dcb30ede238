"""Closed-form spectra for Kneser, Johnson and strongly regular graphs.

All Kneser/Johnson quantities are exact Python integers, so the family
sweeps compare the clique inequality without any floating point.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

__all__ = [
    "ClosedForm",
    "SrgParams",
    "InfeasibleParameters",
    "OmegaExceedsInertiaBound",
    "LambdaNotOne",
    "kneser_closed",
    "johnson_closed",
    "srg_derive",
    "conj1_srg_terms",
    "conj1_srg_form",
    "typec_admissible",
    "typec_inequality",
    "lambda1_inequality",
    "TheoremCheck",
    "FamilyTheoremReport",
    "verify_family_theorem",
    "read_srg_table",
    "LAMBDA1_EXCEPTIONS",
    "SrgCheck",
    "verify_srg_table",
]

Number = Union[int, float, Fraction]
SRG_TOL = 1e-6
SLACK = 1e-9


class InfeasibleParameters(ValueError):
    pass


class OmegaExceedsInertiaBound(ValueError):
    pass


class LambdaNotOne(ValueError):
    pass


@dataclass(frozen=True)
class ClosedForm:
    family: str
    p: int
    k: int
    spectrum: tuple[tuple[int, int], ...]  # (eigenvalue, multiplicity), descending
    n: int
    two_m: int
    omega: int
    chi: int | None = None
    n_pos_formula: int | None = None

    @property
    def n_pos(self) -> int:
        return sum(mult for eig, mult in self.spectrum if eig > 0)

    def expanded(self) -> list[int]:
        return [eig for eig, mult in self.spectrum for _ in range(mult)]

    def top_squares(self, ell: int) -> int:
        """Sum of squares of the ell largest eigenvalues, counted with multiplicity."""
        total, left = 0, ell
        for eig, mult in self.spectrum:
            take = min(mult, left)
            total += take * eig * eig
            left -= take
            if not left:
                break
        return total


def _check_pk(p: int, k: int) -> None:
    if k < 1 or p < 2 * k:
        raise ValueError(f"need p >= 2k >= 2, got p={p}, k={k}")


def _mult(p: int, i: int) -> int:
    return math.comb(p, i) - (math.comb(p, i - 1) if i else 0)


def _merge(pairs: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    acc: dict[int, int] = defaultdict(int)
    for eig, mult in pairs:
        acc[eig] += mult
    return tuple(sorted(acc.items(), reverse=True))


def kneser_closed(p: int, k: int) -> ClosedForm:
    _check_pk(p, k)
    spectrum = _merge(((-1) ** i * math.comb(p - k - i, k - i), _mult(p, i)) for i in range(k + 1))
    n_pos = math.comb(p - 1, k) if k % 2 == 0 else math.comb(p - 1, k - 1)
    return ClosedForm(
        family="kneser", p=p, k=k, spectrum=spectrum,
        n=math.comb(p, k), two_m=math.comb(p, k) * math.comb(p - k, k),
        omega=p // k, chi=p - 2 * k + 2, n_pos_formula=n_pos,
    )


def johnson_closed(p: int, k: int) -> ClosedForm:
    _check_pk(p, k)
    spectrum = _merge(((k - i) * (p - k - i) - i, _mult(p, i)) for i in range(k + 1))
    omega = p - k + 1
    mu1, mun = spectrum[0][0], spectrum[-1][0]
    if Fraction(1) - Fraction(mu1, mun) != omega:
        raise AssertionError(f"J({p},{k}): 1 - mu1/mu_n != p - k + 1")
    return ClosedForm(
        family="johnson", p=p, k=k, spectrum=spectrum,
        n=math.comb(p, k), two_m=k * (p - k) * math.comb(p, k), omega=omega,
    )


@dataclass(frozen=True)
class TheoremCheck:
    p: int
    k: int
    ell: int
    lhs: int
    rhs: Fraction
    ok: bool

    @property
    def tightness(self) -> float:
        return float(self.lhs / self.rhs)


@dataclass
class FamilyTheoremReport:
    family: str
    p_max: int
    checks: list[TheoremCheck] = field(default_factory=list)

    @property
    def failures(self) -> list[TheoremCheck]:
        return [c for c in self.checks if not c.ok]

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_family_theorem(family: str, p_max: int, k_min: int = 2) -> FamilyTheoremReport:
    """Check the ell-eigenvalue clique inequality for every (p, k) with k_min <= k <= p/2, p <= p_max.

    Uses closed-form spectra; ell = min(n+, omega) with n+ from the parity
    formula for Kneser graphs and from the closed spectrum for Johnson graphs.
    """
    if family not in ("kneser", "johnson"):
        raise ValueError(f"unknown family {family!r}")
    if p_max < 4:
        raise ValueError("p_max must be >= 4")
    report = FamilyTheoremReport(family, p_max)
    for p in range(2 * k_min, p_max + 1):
        for k in range(k_min, p // 2 + 1):
            cf = kneser_closed(p, k) if family == "kneser" else johnson_closed(p, k)
            n_pos = cf.n_pos_formula if cf.n_pos_formula is not None else cf.n_pos
            ell = min(n_pos, cf.omega)
            lhs = cf.top_squares(ell)
            rhs = Fraction(cf.two_m * (cf.omega - 1), cf.omega)
            report.checks.append(TheoremCheck(p, k, ell, lhs, rhs, lhs <= rhs))
    return report


# ---------------------------------------------------------------------------
# strongly regular graphs


@dataclass(frozen=True)
class SrgParams:
    n: int
    d: int
    lam: int
    mu: int
    r: Number
    s: Number
    f: int
    g: int

    @property
    def exact(self) -> bool:
        return isinstance(self.r, (int, Fraction))

    def spectrum(self) -> list[tuple[Number, int]]:
        return [(self.d, 1), (self.r, self.f), (self.s, self.g)]


def _isqrt_exact(x: int) -> int | None:
    if x < 0:
        return None
    root = math.isqrt(x)
    return root if root * root == x else None


def srg_derive(n: int, d: int, lam: int, mu: int) -> SrgParams:
    """Restricted eigenvalues r > s and their multiplicities for SRG(n, d, lambda, mu)."""
    if not (0 < d < n) or lam < 0 or mu < 1:
        raise InfeasibleParameters(f"need 0 < d < n, lambda >= 0, mu >= 1: {(n, d, lam, mu)}")
    if d * (d - lam - 1) != (n - d - 1) * mu:
        raise InfeasibleParameters(f"d(d-lambda-1) != (n-d-1)mu for {(n, d, lam, mu)}")
    disc = (lam - mu) ** 2 + 4 * (d - mu)
    if disc <= 0:
        raise InfeasibleParameters("non-positive discriminant")
    root = _isqrt_exact(disc)
    if root is not None:
        r = Fraction(lam - mu + root, 2)
        s = Fraction(lam - mu - root, 2)
        f_val = Fraction((n - 1) * root - (2 * d + (n - 1) * (lam - mu)), 2 * root)
        if r.denominator != 1 or s.denominator != 1 or f_val.denominator != 1:
            raise InfeasibleParameters(f"non-integral eigenvalue data for {(n, d, lam, mu)}")
        r, s, f = int(r), int(s), int(f_val)
        g = n - 1 - f
        if d + f * r + g * s != 0 or (d - r) * (d - s) != n * (d + r * s) or mu != r * s + d:
            raise InfeasibleParameters(f"identity check failed for {(n, d, lam, mu)}")
    else:
        sq = math.sqrt(disc)
        r = (lam - mu + sq) / 2
        s = (lam - mu - sq) / 2
        f_real = ((n - 1) - (2 * d + (n - 1) * (lam - mu)) / sq) / 2
        f = round(f_real)
        if abs(f_real - f) > SRG_TOL:
            raise InfeasibleParameters(f"multiplicity {f_real:.6f} not integral for {(n, d, lam, mu)}")
        g = n - 1 - f
        if (abs(d + f * r + g * s) > SRG_TOL * n
                or abs((d - r) * (d - s) - n * (d + r * s)) > SRG_TOL * n * d
                or abs(mu - (r * s + d)) > SRG_TOL * d):
            raise InfeasibleParameters(f"identity check failed for {(n, d, lam, mu)}")
    if f < 0 or g < 0:
        raise InfeasibleParameters(f"negative multiplicity for {(n, d, lam, mu)}")
    return SrgParams(n, d, lam, mu, r, s, f, g)


def conj1_srg_terms(params: SrgParams, omega: int) -> tuple[Number, Number]:
    """``(d^2 + (omega-1) r^2, n d (omega-1)/omega)``; exact when r is an integer."""
    if omega < 2:
        raise ValueError("omega must be >= 2")
    if omega > 1 + params.f:
        raise OmegaExceedsInertiaBound(f"omega={omega} exceeds 1 + f = {1 + params.f}")
    lhs = params.d ** 2 + (omega - 1) * params.r ** 2
    rhs = Fraction(params.n * params.d * (omega - 1), omega)
    if not params.exact:
        rhs = float(rhs)
    return lhs, rhs


def conj1_srg_form(params: SrgParams, omega: int) -> bool:
    lhs, rhs = conj1_srg_terms(params, omega)
    if params.exact:
        return lhs <= rhs
    return lhs <= rhs + SLACK * max(1.0, params.n * params.d)


def typec_admissible(params: SrgParams) -> bool:
    """Whether 1 - d/s is an integer within the inertia bound min(f, g) + 1."""
    if params.exact:
        w = 1 - Fraction(params.d, params.s)
        return w.denominator == 1 and w <= 1 + min(params.f, params.g)
    return False


def typec_inequality(params: SrgParams) -> bool:
    """r mu <= d s (s + 1)."""
    lhs = params.r * params.mu
    rhs = params.d * params.s * (params.s + 1)
    if params.exact:
        return lhs <= rhs
    return lhs <= rhs + SLACK * max(1.0, abs(rhs))


LAMBDA1_EXCEPTIONS = frozenset({(9, 4, 1, 2), (15, 6, 1, 3)})


def lambda1_inequality(params: SrgParams) -> bool:
    """8d + 4rs + d rs <= d^2 for lambda = 1, with the two small-degree graphs checked directly."""
    if params.lam != 1:
        raise LambdaNotOne(f"lambda = {params.lam}")
    rs = params.mu - params.d  # rs = mu - d exactly
    d = params.d
    if 8 * d + 4 * rs + d * rs <= d * d:
        return True
    key = (params.n, params.d, params.lam, params.mu)
    return key in LAMBDA1_EXCEPTIONS and conj1_srg_form(params, 3)


def read_srg_table(lines: Iterable[str]) -> list[tuple[int, int, int, int]]:
    """Parse ``n,d,lambda,mu`` CSV lines; ``#`` comments and a header row are skipped."""
    rows = []
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [x.strip() for x in line.split(",")]
        if parts[0].lower() == "n":
            continue
        if len(parts) != 4:
            raise ValueError(f"expected n,d,lambda,mu: {raw!r}")
        rows.append(tuple(int(x) for x in parts))
    return rows


@dataclass(frozen=True)
class SrgCheck:
    params: tuple[int, int, int, int]
    status: str  # "pass", "fail" or "n/a"
    detail: str


def verify_srg_table(rows: Iterable[tuple[int, int, int, int]], target: str) -> list[SrgCheck]:
    """Check the Type-C or lambda = 1 inequalities over a table of parameter sets.

    ``target="typec"`` applies to sets where 1 - d/s is an admissible clique
    number; ``target="lambda1"`` to sets with lambda = 1 (clique number 3).
    Infeasible or out-of-scope rows are reported as ``n/a``.
    """
    if target not in ("typec", "lambda1"):
        raise ValueError(f"unknown SRG target {target!r}")
    out = []
    for row in rows:
        row = tuple(row)
        try:
            prm = srg_derive(*row)
        except InfeasibleParameters as exc:
            out.append(SrgCheck(row, "n/a", f"infeasible: {exc}"))
            continue
        if target == "typec":
            if not typec_admissible(prm):
                out.append(SrgCheck(row, "n/a", "1 - d/s not an admissible clique number"))
                continue
            omega = int(1 - Fraction(prm.d, prm.s))
            ineq = typec_inequality(prm)
            conj = conj1_srg_form(prm, omega)
            detail = f"r*mu={prm.r * prm.mu} d*s*(s+1)={prm.d * prm.s * (prm.s + 1)} omega={omega}"
        else:
            if prm.lam != 1:
                out.append(SrgCheck(row, "n/a", "lambda != 1"))
                continue
            ineq = lambda1_inequality(prm)
            conj = conj1_srg_form(prm, 3)
            lhs, rhs = conj1_srg_terms(prm, 3)
            detail = f"d^2+2r^2={lhs} nd*2/3={rhs}"
        out.append(SrgCheck(row, "pass" if ineq and conj else "fail", detail))
    return out
