import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from specclique.bounds import (
    bn_holds,
    bound_report,
    clique_cap,
    clique_lb_iterative,
    clique_lb_turan,
    conj1_holds,
    conj1_lhs,
    conj1_rhs,
    cvetkovic_ub,
    hoffman_full_lb,
    hoffman_ratio_lb,
    iterative_trace,
    s_plus_exceeds,
    walk_power_check,
    walk_power_terms,
)
from specclique.graph import Graph, from_edges, generate
from specclique.oracle import max_clique_exact
from specclique.spectral import Spectrum, spectral_summary

from conftest import random_graph


def summary(text):
    g = generate(text)
    return g, spectral_summary(g)


def cycle_closed(n):
    return sorted((2 * math.cos(2 * math.pi * j / n) for j in range(n)), reverse=True)


# -- main inequality -------------------------------------------------------


def test_conj1_circulant_steps():
    g, s = summary("circulant:16:1,2,3,4")
    assert not conj1_holds(s, g.m, 4)
    assert conj1_holds(s, g.m, 5)
    ell, lhs = conj1_lhs(s, 4)
    assert ell == 3 and lhs == pytest.approx(96.44, abs=0.01)


def test_conj1_c7_needs_ell_truncation():
    g, s = summary("cycle:7")
    closed = cycle_closed(7)
    assert conj1_holds(s, g.m, 2)
    assert sum(x * x for x in closed[:3]) > conj1_rhs(g.m, 2)
    assert conj1_lhs(s, 2)[1] == pytest.approx(closed[0] ** 2 + closed[1] ** 2)
    assert s.s_plus > conj1_rhs(g.m, 2)


def test_conj1_rejects_small_omega():
    g, s = summary("cycle:5")
    with pytest.raises(ValueError):
        conj1_holds(s, g.m, 1)


def test_bn_barbell():
    g, s = summary("barbell:8")
    assert not bn_holds(s, g.m, 7)
    assert bn_holds(s, g.m, 8)


def test_bn_c5():
    g, s = summary("cycle:5")
    assert bn_holds(s, g.m, 2)
    assert s.mu1 ** 2 + s.eigenvalues[1] ** 2 == pytest.approx(4 + ((5 ** 0.5 - 1) / 2) ** 2)


# -- iterative procedure ----------------------------------------------------


def test_iterative_circulant():
    g, s = summary("circulant:16:1,2,3,4")
    assert clique_lb_iterative(s, g.m, "conj1") == 5
    steps = iterative_trace(s, g.m, "conj1")
    assert [st.omega for st in steps] == [2, 3, 4, 5]
    assert [st.ell for st in steps] == [2, 3, 3, 3]
    assert [st.holds for st in steps] == [False, False, False, True]
    assert [round(st.rhs, 2) for st in steps] == [64.0, 85.33, 96.0, 102.4]


def test_iterative_bn_modes_circulant():
    g, s = summary("circulant:16:1,2,3,4")
    assert clique_lb_iterative(s, g.m, "bn") == 3


def test_iterative_barbell():
    g, s = summary("barbell:8")
    assert s.n_pos == 2
    assert clique_lb_iterative(s, g.m, "bn") == 8
    assert clique_lb_iterative(s, g.m, "conj1") == 8


@pytest.mark.parametrize("n", [2, 3, 4, 5, 9])
def test_iterative_complete(n):
    g, s = summary(f"complete:{n}")
    assert clique_lb_iterative(s, g.m, "conj1") == n
    assert clique_lb_iterative(s, g.m, "bn", complete=True) == n
    assert all(st.ell == 1 for st in iterative_trace(s, g.m))


def test_iterative_edgeless():
    s = spectral_summary(Graph(np.zeros((4, 4), dtype=bool)))
    assert clique_lb_iterative(s, 0) == 1
    assert clique_lb_turan(s, 0) == 1


def test_iterative_flags_counterexample():
    # a synthetic spectrum whose top eigenvalues are too heavy for any candidate
    fake = Spectrum.from_eigenvalues([3.0, 2.9, 2.9, -2.0, -2.0, -2.0, -2.8])
    assert clique_lb_iterative(fake, 5, "conj1") is None
    with pytest.raises(ValueError):
        iterative_trace(fake, 5, "other")


def test_first_true_is_minimal_true(rng):
    """Once the inequality holds for a candidate it holds for every larger one."""
    for _ in range(150):
        g = random_graph(rng, int(rng.integers(2, 20)), float(rng.random()))
        if g.m == 0:
            continue
        s = spectral_summary(g)
        verdicts = [conj1_holds(s, g.m, w) for w in range(2, g.n + 2)]
        if True in verdicts:
            first = verdicts.index(True)
            assert all(verdicts[first:])
        rhs = [conj1_rhs(g.m, w) for w in range(2, g.n + 2)]
        assert all(b > a for a, b in zip(rhs, rhs[1:]))
        lhs = [conj1_lhs(s, w)[1] for w in range(2, g.n + 2)]
        assert all(b >= a for a, b in zip(lhs, lhs[1:]))


def test_ell_summands_positive(rng):
    for _ in range(100):
        g = random_graph(rng, int(rng.integers(1, 16)), 0.4)
        s = spectral_summary(g)
        for w in range(2, g.n + 2):
            ell, _ = conj1_lhs(s, w)
            assert all(x > s.zero_tol for x in s.eigenvalues[:ell])


def test_clique_cap():
    _, s = summary("complete:6")
    assert clique_cap(s) == 6
    _, s = summary("cycle:5")
    assert clique_cap(s) == 3


# -- classical bounds --------------------------------------------------------


@pytest.mark.parametrize("text,expected", [("complete:4", 4), ("cycle:5", 2), ("petersen", 2)])
def test_turan(text, expected):
    g, s = summary(text)
    assert clique_lb_turan(s, g.m) == expected


def test_turan_complete_multipartite_equality():
    # K_{3,3,3}: mu1^2 = 36 = 2m * 2/3 exactly, so omega >= 3
    a = np.ones((9, 9), dtype=bool)
    for part in range(3):
        a[3 * part:3 * part + 3, 3 * part:3 * part + 3] = False
    g = Graph(a)
    assert clique_lb_turan(spectral_summary(g), g.m) == 3


def test_hoffman_ratio():
    _, s = summary("barbell:8")
    assert hoffman_ratio_lb(s) == pytest.approx(4.8, abs=0.02)
    for n in (2, 5, 8):
        assert hoffman_ratio_lb(summary(f"complete:{n}")[1]) == pytest.approx(n)
    assert hoffman_ratio_lb(summary("cycle:5")[1]) == pytest.approx(1 + 2 / ((1 + 5 ** 0.5) / 2))
    with pytest.raises(ValueError):
        hoffman_ratio_lb(spectral_summary(Graph(np.zeros((3, 3), dtype=bool))))


@pytest.mark.parametrize("text,expected", [("barbell:8", 8), ("complete:4", 4), ("cycle:5", 3)])
def test_hoffman_full(text, expected):
    assert hoffman_full_lb(summary(text)[1]) == expected


def test_hoffman_full_dominates_ratio(rng):
    for _ in range(150):
        g = random_graph(rng, int(rng.integers(2, 20)), float(rng.random()))
        if g.m == 0:
            continue
        s = spectral_summary(g)
        assert hoffman_full_lb(s) >= math.ceil(hoffman_ratio_lb(s) - 1e-9)


@pytest.mark.parametrize("text,expected", [("petersen", 5), ("complete:4", 4), ("schlafli", 7)])
def test_cvetkovic(text, expected):
    assert cvetkovic_ub(summary(text)[1]) == expected


def test_s_plus_exceeds():
    for text in ("cycle:7", "coxeter"):
        g, s = summary(text)
        assert s_plus_exceeds(s, g.m, 2)
    g, s = summary("complete:4")
    assert not s_plus_exceeds(s, g.m, 4)


# -- walk generalisation -----------------------------------------------------


def test_walk_wheel6_counterexample():
    g, s = summary("wheel:6")
    lhs, rhs, w1 = walk_power_terms(s, g, 1, 3)
    assert w1 == 6
    assert lhs == pytest.approx(1 + 6 ** 0.5 + 2 * (5 ** 0.5 - 1) / 2, abs=1e-9)
    assert lhs == pytest.approx(4.685, abs=0.005) and rhs == pytest.approx(4.0)
    assert not walk_power_check(s, g, 1, 3)


def test_walk_k3_equality():
    g, s = summary("complete:3")
    assert walk_power_check(s, g, 3, 3)
    lhs, rhs, _ = walk_power_terms(s, g, 3, 3)
    assert lhs == pytest.approx(8) and rhs == pytest.approx(8)


def test_walk_r2_matches_main(rng):
    for _ in range(100):
        g = random_graph(rng, int(rng.integers(2, 18)), float(rng.random()))
        if g.m == 0:
            continue
        s = spectral_summary(g)
        for w in range(2, 6):
            assert walk_power_check(s, g, 2, w) == conj1_holds(s, g.m, w)


def test_walk_rejects_bad_args():
    g, s = summary("cycle:5")
    with pytest.raises(ValueError):
        walk_power_check(s, g, 0, 3)


# -- report ------------------------------------------------------------------


def test_report_invariants(rng):
    for _ in range(100):
        g = random_graph(rng, int(rng.integers(1, 16)), float(rng.random()))
        s = spectral_summary(g)
        omega = max_clique_exact(g).omega
        rep = bound_report(g, s, omega)
        assert omega <= rep.cvetkovic_ub
        assert rep.clique_lb_turan <= omega
        if g.m:
            assert rep.clique_lb_turan >= 2
        if rep.conj1_holds_at_exact_omega:
            assert rep.clique_lb_conj1 is not None and rep.clique_lb_conj1 <= omega


def test_report_complete_notes():
    g, s = summary("complete:5")
    rep = bound_report(g, s, 5, 5)
    assert rep.clique_lb_bn == 5 and any("complete" in note for note in rep.notes)
    assert rep.conj1_status == "holds" and rep.ando_lin_holds


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 10).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), min_size=1))))
def test_turan_never_exceeds_omega(case):
    n, pairs = case
    edges = [(a, b) for a, b in pairs if a != b]
    if not edges:
        return
    g = from_edges(n, edges)
    s = spectral_summary(g)
    omega = max_clique_exact(g).omega
    assert clique_lb_turan(s, g.m) <= omega
    assert omega <= clique_cap(s)
