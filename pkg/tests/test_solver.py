from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from matroid_menger.digraph import Digraph
from matroid_menger.matroid import DirectSumMatroid, Uniform
from matroid_menger.oracle import check_duality, classic_maxflow_value
from matroid_menger.solver import Certificate, cover_covers_all_paths, solve, verify_certificate

from cases import A, B, C, E1, E2, E3, H1, H2, H3, P1, P2, T, all_free, flag, par1
from test_augment import arcs, caps, random_instance


def test_solve_flag():
    D, M = flag()
    trace = []
    cert = solve(D, M, trace)
    assert cert == Certificate(((E1, H1), (E2, E3, H3)), frozenset({A, B, C, T}), frozenset({E1, E2}))
    assert trace == [0, 1, 2]


def test_solve_par1():
    D, M = par1()
    cert = solve(D, M)
    assert cert.paths == ((P1,),)
    assert cert.cut == {1} and cert.cover == {P1}
    assert M.span(cert.cover) == {P1, P2}


def test_solve_single_edge_and_unreachable():
    D = Digraph.build(2, [(0, 1)], 0, 1)
    cert = solve(D, all_free(D))
    assert cert == Certificate(((0,),), frozenset({1}), frozenset({0}))
    D = Digraph.build(3, [(0, 1)], 0, 2)
    cert = solve(D, all_free(D))
    assert cert.paths == () and cert.cover == frozenset()
    assert cert.cut == {2}
    assert verify_certificate(D, all_free(D), cert)


def test_solve_ignores_matroid_loops():
    D = Digraph.build(2, [(0, 1), (0, 1)], 0, 1)
    M = DirectSumMatroid.from_digraph(D, {1: Uniform({0, 1}, 0)})
    cert = solve(D, M)
    assert cert.paths == () and cert.cut == {1}


def test_verify_examples():
    D, M = flag()
    assert verify_certificate(D, M, solve(D, M))
    bad = Certificate(((E1, H1), (E2, E3, H3)), frozenset({A, B, C, T}), frozenset({E1}))
    assert verify_certificate(D, M, bad).clause == "span-condition"
    D, M = par1()
    assert verify_certificate(D, M, Certificate(((P1,),), frozenset({0, 1}), frozenset({P1}))).clause == "cut"


def test_verify_clauses():
    D, M = flag()
    X = frozenset({A, B, C, T})
    cases = {
        "paths": Certificate(((E1, H3),), X, frozenset({E1})),
        "edge-disjoint": Certificate(((E2, H2), (E2, E3, H3)), X, frozenset({E2})),
        "independence": Certificate(((E1, H1), (E2, H2)), frozenset({T}), frozenset({H1, H2})),
        "cover": Certificate(((E1, H1), (E2, E3, H3)), X, frozenset({E1, E2, H1})),
    }
    for clause, cert in cases.items():
        assert verify_certificate(D, M, cert).clause == clause, clause


def test_verify_out_condition():
    D = Digraph.build(3, [(0, 1), (1, 2), (2, 1), (1, 2)], 0, 2)
    M = all_free(D)
    cert = Certificate(((0, 1, 2, 3),), frozenset({2}), frozenset({1}))
    assert verify_certificate(D, M, cert).clause == "paths"
    cert = Certificate(((0, 1),), frozenset({1, 2}), frozenset({0}))
    assert verify_certificate(D, M, cert)


def test_cover_examples():
    D, M = flag()
    assert cover_covers_all_paths(D, M, solve(D, M))
    D, M = par1()
    assert cover_covers_all_paths(D, M, solve(D, M))
    D = Digraph.build(3, [(0, 1)], 0, 2)
    assert cover_covers_all_paths(D, all_free(D), solve(D, all_free(D)))


def test_solve_is_deterministic():
    D, M = flag()
    assert solve(D, M) == solve(D, M)


@settings(max_examples=200, deadline=None)
@given(arcs, caps)
def test_solve_is_optimal_and_certified(arc_list, cap_list):
    D, M = random_instance(arc_list, cap_list)
    cert = solve(D, M)
    assert verify_certificate(D, M, cert)
    assert cover_covers_all_paths(D, M, cert)
    rep = check_duality(D, M)
    assert rep.duality_holds
    assert len(cert.paths) == rep.max_paths == M.rank(cert.cover)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=14))
def test_all_free_matches_classic_max_flow(arc_list):
    D = Digraph.build(6, arc_list, 0, 5)
    assert len(solve(D, all_free(D)).paths) == classic_maxflow_value(D)
