"""Adjacency eigendecomposition and the spectral summary consumed by the bounds."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = [
    "Spectrum",
    "EigenError",
    "NoConvergence",
    "eigenvalues_symmetric",
    "jacobi_eigh",
    "spectral_summary",
    "group_multiplicities",
    "walk_count",
    "ZERO_TOL_REL",
]

ZERO_TOL_REL = 1e-8
GROUP_TOL_REL = 1e-6


class EigenError(ArithmeticError):
    pass


class NoConvergence(EigenError):
    pass


def jacobi_eigh(a: np.ndarray, max_sweeps: int = 100, eps: float = 1e-14):
    """Cyclic Jacobi eigensolver for a real symmetric matrix.

    Returns ``(w, v)`` with eigenvalues ascending and eigenvectors in the
    columns of ``v``, the same convention as :func:`numpy.linalg.eigh`.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    scale = max(np.abs(a).max(initial=0.0), 1.0)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= eps * scale * n:
            w = np.diag(a).copy()
            idx = np.argsort(w, kind="stable")
            return w[idx], v[:, idx]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= eps * scale * 1e-3:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")


def eigenvalues_symmetric(g: Graph, tol: float = 1e-10, method: str = "lapack",
                          max_sweeps: int = 100) -> np.ndarray:
    """All adjacency eigenvalues of ``g`` in descending order.

    Every eigenpair is checked against ``||A v - mu v|| <= tol * ||A||_2``
    before the eigenvectors are discarded.

    Parameters
    ----------
    method : {"lapack", "jacobi"}
        ``lapack`` uses the divide-and-conquer driver behind
        :func:`numpy.linalg.eigh`; ``jacobi`` is the in-package cyclic
        Jacobi solver, much slower but independent of LAPACK.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = g.to_numpy(float)
    if method == "lapack":
        w, v = np.linalg.eigh(a)
    elif method == "jacobi":
        w, v = jacobi_eigh(a, max_sweeps=max_sweeps)
    else:
        raise ValueError(f"unknown eigen method {method!r}")
    norm = max(abs(w[0]), abs(w[-1]), 1.0)
    resid = np.linalg.norm(a @ v - v * w, axis=0)
    worst = float(resid.max(initial=0.0))
    if worst > tol * norm:
        raise EigenError(f"eigen residual {worst:.3e} exceeds {tol:.1e} * ||A||")
    return w[::-1].copy()


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    zero_tol: float
    n_pos: int
    n_zero: int
    n_neg: int
    s_plus: float
    s_minus: float

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def mu1(self) -> float:
        return self.eigenvalues[0]

    @property
    def mu_n(self) -> float:
        return self.eigenvalues[-1]

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.eigenvalues)

    def grouped(self, rel_gap: float = GROUP_TOL_REL) -> list[tuple[float, int]]:
        return group_multiplicities(self.eigenvalues, rel_gap * max(1.0, self.mu1))

    @classmethod
    def from_eigenvalues(cls, eigenvalues, zero_tol_rel: float = ZERO_TOL_REL) -> "Spectrum":
        w = np.sort(np.asarray(eigenvalues, dtype=float))[::-1]
        tol = zero_tol_rel * max(1.0, float(w[0]))
        pos = w > tol
        neg = w < -tol
        return cls(
            eigenvalues=tuple(float(x) for x in w),
            zero_tol=tol,
            n_pos=int(pos.sum()),
            n_zero=int(len(w) - pos.sum() - neg.sum()),
            n_neg=int(neg.sum()),
            s_plus=float(np.sum(w[pos] ** 2)),
            s_minus=float(np.sum(w[neg] ** 2)),
        )


def spectral_summary(g: Graph, zero_tol_rel: float = ZERO_TOL_REL, method: str = "lapack") -> Spectrum:
    if zero_tol_rel <= 0:
        raise ValueError("zero_tol_rel must be positive")
    return Spectrum.from_eigenvalues(eigenvalues_symmetric(g, method=method), zero_tol_rel)


def group_multiplicities(values, gap: float) -> list[tuple[float, int]]:
    """Group a descending sequence into (mean value, multiplicity) runs split at gaps > ``gap``."""
    groups: list[list[float]] = []
    for x in values:
        if groups and groups[-1][-1] - x <= gap:
            groups[-1].append(x)
        else:
            groups.append([x])
    return [(float(np.mean(grp)), len(grp)) for grp in groups]


def walk_count(g: Graph, r: int):
    """Number of walks with r vertices (length r - 1 in edges), i.e. 1^T A^(r-1) 1.

    Exact Python-int arithmetic; w_1 = n, w_2 = 2m, w_3 = sum of squared degrees.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    nbrs = [g.neighbors(i).tolist() for i in range(g.n)]
    x = [1] * g.n
    for _ in range(r - 1):
        x = [sum(x[j] for j in nb) for nb in nbrs]
    return sum(x)
