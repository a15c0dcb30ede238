"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line (with timing) that the terminal summary
prints, so ``pytest tests/test_acceptance.py`` gives a one-line verdict per
criterion even when everything passes.
"""

import contextlib
import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from specclique.bounds import (
    conj1_holds,
    conj1_lhs,
    hoffman_full_lb,
    hoffman_ratio_lb,
    iterative_trace,
    clique_lb_iterative,
    walk_power_check,
    walk_power_terms,
)
from specclique.cli import main
from specclique.data import bundled_graphs
from specclique.families import (
    conj1_srg_terms,
    johnson_closed,
    kneser_closed,
    srg_derive,
    verify_family_theorem,
)
from specclique.graph import complement, generate, parse_graph6, write_graph6
from specclique.oracle import exact_invariants, max_clique_exact
from specclique.search import scan_corpus
from specclique.spectral import eigenvalues_symmetric, spectral_summary

from conftest import random_graph

RESULTS: list[str] = []


@contextlib.contextmanager
def criterion(number, title, budget):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        in_time = elapsed < budget
        verdict = "PASS" if ok and in_time else "FAIL"
        extra = "" if in_time else f" (over budget {budget:g}s)"
        RESULTS.append(f"{verdict} criterion {number:>2}: {title} [{elapsed:.3f}s]{extra}")
    assert in_time, f"criterion {number} took {elapsed:.3f}s, budget {budget}s"


def close(got, want, tol):
    return abs(got - want) <= tol


def circulant_closed(n, conn):
    return sorted((sum(2 * math.cos(2 * math.pi * j * s / n) for s in conn) for j in range(n)), reverse=True)


def test_circulant_worked_example():
    with criterion(1, "circulant 16 (1,2,3,4) spectrum, trace and bound", 1.0):
        g = generate("circulant:16:1,2,3,4")
        spec = spectral_summary(g)
        # independent route: roots-of-unity closed form
        assert np.allclose(spec.array, circulant_closed(16, (1, 2, 3, 4)), atol=1e-10)
        quoted = [8.0] + [4.027] * 2 + [0.0] * 3 + [-0.332] * 2 + [-1.198] * 2 + [-2.0] * 4 + [-2.496] * 2
        misses = [(i, got, want) for i, (got, want) in enumerate(zip(spec.eigenvalues, quoted))
                  if not close(got, want, 5e-4)]
        assert spec.n_pos == 3
        steps = iterative_trace(spec, g.m, "conj1")
        lhs = [st.lhs for st in steps]
        rhs = [st.rhs for st in steps]
        assert close(lhs[0], 80.2, 0.05) and all(close(x, 96.4, 0.05) for x in lhs[1:])
        assert all(close(a, b, 0.05) for a, b in zip(rhs, [64, 85.3, 96, 102.4]))
        assert clique_lb_iterative(spec, g.m, "conj1") == 5
        assert max_clique_exact(g).omega == 5
        assert not misses, f"eigenvalues outside 5e-4 of the quoted values: {misses}"


def test_barbell_worked_example():
    with criterion(2, "barbell 8 two-eigenvalue trace and Hoffman bounds", 1.0):
        g = generate("barbell:8")
        spec = spectral_summary(g)
        assert (g.n, g.m) == (16, 57)
        top_two = spec.mu1 ** 2 + spec.eigenvalues[1] ** 2
        # independent route: direct dense eigensolve of the adjacency matrix
        direct = np.sort(np.linalg.eigvalsh(g.to_numpy()))[::-1]
        assert close(top_two, direct[0] ** 2 + direct[1] ** 2, 1e-9)
        steps = {st.omega: st for st in iterative_trace(spec, g.m, "bn")}
        assert close(steps[7].rhs, 97.7, 0.05) and close(steps[8].rhs, 99.7, 0.05)
        assert not steps[7].holds and steps[8].holds
        assert clique_lb_iterative(spec, g.m, "bn") == 8
        assert close(hoffman_ratio_lb(spec), 4.8, 0.02)
        assert hoffman_full_lb(spec) == 8
        inv = exact_invariants(g)
        assert inv.omega == 8 and inv.chi == 8
        assert close(top_two, 98.45, 0.02), f"mu1^2 + mu2^2 = {top_two:.4f}, quoted 98.45"


def test_schlafli_parameters():
    with criterion(3, "Schlafli SRG parameters and exact ell-eigenvalue terms", 0.01):
        prm = srg_derive(27, 16, 10, 8)
        assert (prm.r, prm.s, prm.f, prm.g) == (4, -2, 6, 20)
        lhs, rhs = conj1_srg_terms(prm, 6)
        assert lhs == 336 and rhs == Fraction(360) and isinstance(lhs, int)


def test_cycle_asymmetry():
    with criterion(4, "C7 needs ell truncation, C5 negative-side asymmetry", 0.1):
        g7 = generate("cycle:7")
        s7 = spectral_summary(g7)
        top3 = float(np.sum(s7.array[:3] ** 2))
        assert top3 > 7 and 2 * g7.m * 1 / 2 == 7
        assert conj1_lhs(s7, 2)[0] == 2 and conj1_holds(s7, g7.m, 2)
        g5 = generate("cycle:5")
        s5 = spectral_summary(g5)
        bottom = s5.eigenvalues[-1] ** 2 + s5.eigenvalues[-2] ** 2
        assert close(bottom, 5.236, 0.001) and bottom > g5.m
        phi = (1 + 5 ** 0.5) / 2
        assert close(bottom, 2 * phi * phi, 1e-12)


def test_family_theorem_sweeps():
    with criterion(5, "Kneser and Johnson sweeps p <= 24, exact arithmetic", 30.0):
        for family in ("kneser", "johnson"):
            rep = verify_family_theorem(family, 24)
            assert rep.checks and not rep.failures, rep.failures[:3]
            assert all(isinstance(c.lhs, int) and isinstance(c.rhs, Fraction) for c in rep.checks)


def test_closed_vs_numeric():
    with criterion(6, "closed-form spectra match numeric spectra for p <= 10", 60.0):
        for family, closed in (("kneser", kneser_closed), ("johnson", johnson_closed)):
            for p in range(2, 11):
                for k in range(1, p // 2 + 1):
                    g = generate(f"{family}:{p}:{k}")
                    spec = spectral_summary(g)
                    cf = closed(p, k)
                    tol = 1e-8 * max(1.0, spec.mu1)
                    gap = np.max(np.abs(spec.array - np.array(cf.expanded(), dtype=float)))
                    assert gap <= tol, (family, p, k, gap)
                    if family == "kneser":
                        assert spec.n_pos == cf.n_pos_formula, (p, k)


def test_gcd_sweep(capsys):
    with criterion(7, "gcd graph sweep n <= 60 has no violations", 600.0):
        code = main(["sweep-gcd", "--n-max", "60", "--format", "json"])
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["conj1_violations"] == [] and doc["truncated_count"] == 0 and doc["errors"] == []
        assert doc["total"] > 0


def test_s_plus_phenomenon():
    with criterion(8, "named corpus: s+ exceeds exactly for C7 and Coxeter", 5.0):
        graphs = bundled_graphs("named")
        assert sorted(g.label for g in graphs) == sorted(
            ["C5", "C6", "C7", "Petersen", "Coxeter", "K4", "Schlafli"])
        stats = scan_corpus(graphs)
        assert set(stats.s_plus_exceeds) == {"C7", "Coxeter"}
        assert stats.conj1_violations == []


@pytest.mark.slow
def test_folded_cube_complement():
    with criterion(9, "complement of folded 7-cube: n+ = 8, omega = 22", 300.0):
        g = complement(generate("foldedcube:7"))
        assert spectral_summary(g).n_pos == 8
        res = max_clique_exact(g)
        assert res.omega == 22 and not res.truncated
        assert all(g.adj[a, b] for i, a in enumerate(res.clique) for b in res.clique[i + 1:])


def test_walk_counterexample():
    with criterion(10, "wheel 6 walk check fails at r = 1; r = 2 matches", 10.0):
        g = generate("wheel:6")
        spec = spectral_summary(g)
        lhs, rhs, _ = walk_power_terms(spec, g, 1, 3)
        assert close(lhs, 4.685, 0.005) and close(rhs, 4.0, 1e-12)
        assert not walk_power_check(spec, g, 1, 3)
        rng = np.random.default_rng(7)
        checked = 0
        while checked < 100:
            h = random_graph(rng, int(rng.integers(2, 20)), float(rng.random()))
            if h.m == 0:
                continue
            sh = spectral_summary(h)
            omega = max_clique_exact(h).omega
            w = max(omega, 2)
            assert walk_power_check(sh, h, 2, w) == conj1_holds(sh, h.m, w)
            checked += 1


def test_property_suites():
    with criterion(11, "round trip, trace identities, Turan, weakly perfect, Ando-Lin", 300.0):
        rng = np.random.default_rng(11)
        tested = []
        for _ in range(1000):
            g = random_graph(rng, int(rng.integers(1, 40)), float(rng.random()))
            assert parse_graph6(write_graph6(g)) == g
            tested.append(g)
        corpus = bundled_graphs("atlas7") + bundled_graphs("named")
        for g in tested + corpus:
            w = eigenvalues_symmetric(g)
            slack = 1e-6 * max(1, 2 * g.m)
            assert abs(w.sum()) <= slack and abs(np.sum(w * w) - 2 * g.m) <= slack
        stats = scan_corpus(corpus)
        assert not stats.errors and not stats.truncated_count
        weakly_perfect = 0
        for rep in stats.per_graph:
            assert rep.clique_lb_turan <= rep.omega_exact
            if rep.m and rep.omega_exact == rep.chi_exact:
                weakly_perfect += 1
                assert rep.conj1_holds_at_exact_omega, rep.graph_label
            if rep.m and rep.chi_exact is not None:
                assert rep.ando_lin_holds, rep.graph_label
        assert weakly_perfect > 1000
