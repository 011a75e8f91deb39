from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matroid_menger.digraph import (
    Digraph,
    build_paths_greedy,
    check_cut,
    contract_system,
    cut_boundary,
    delete_spanned,
    is_edge_disjoint,
    path_problem,
    reachable_from,
    shortest_path,
)
from matroid_menger.errors import DependentSetError, InvalidCutError, MalformedAugmentationError
from matroid_menger.oracle import enumerate_st_paths

from cases import A, B, C, E1, E2, E3, H1, H2, H3, P1, P2, S, T, flag, par1


def test_digraph_rejects_bad_inputs():
    with pytest.raises(ValueError):
        Digraph.build(2, [], 0, 0)
    with pytest.raises(ValueError):
        Digraph.build(2, [(0, 2)], 0, 1)
    with pytest.raises(ValueError):
        Digraph.build(2, [(3, 0, 1), (3, 0, 1)], 0, 1)


def test_in_out_maps_agree_with_edges():
    D, _ = flag()
    assert D.out_edges(S) == (E1, E2)
    assert D.in_edges(T) == (H1, H2, H3)
    assert D.out_edges(B) == (E3, H2)
    for e in D.edges:
        assert e.id in D.out_edges(e.tail) and e.id in D.in_edges(e.head)
    assert sum(len(D.in_edges(v)) for v in D.vertices) == len(D.edges)


def test_loops_and_parallel_edges_allowed():
    D = Digraph.build(2, [(0, 1), (0, 1), (1, 1)], 0, 1)
    assert D.edge(2).is_loop
    assert D.in_edges(1) == (0, 1, 2) and D.out_edges(1) == (2,)


def test_cut_boundary_examples():
    D, _ = par1()
    assert cut_boundary(D, {1}) == ({P1, P2}, frozenset())
    D, _ = flag()
    assert cut_boundary(D, {T}) == ({H1, H2, H3}, frozenset())
    assert cut_boundary(D, {A, B, C, T}) == ({E1, E2}, frozenset())
    # b sits outside, so e3 enters and h2 crosses in
    assert cut_boundary(D, {A, C, T}) == ({E1, E3, H2}, frozenset())


def test_cut_boundary_rejects_invalid_cuts():
    D, _ = flag()
    with pytest.raises(InvalidCutError):
        cut_boundary(D, {S, T})
    with pytest.raises(InvalidCutError):
        cut_boundary(D, {A})
    with pytest.raises(InvalidCutError):
        check_cut(D, {T, 9})


def test_cut_boundary_outgoing_edges():
    D = Digraph.build(3, [(0, 1), (1, 2), (2, 1)], 0, 2)
    assert cut_boundary(D, {2}) == ({1}, {2})


def test_build_paths_greedy_examples():
    D, _ = flag()
    paths, unused = build_paths_greedy({E1, H1, E2, E3, H3}, D)
    assert sorted(paths) == [(E1, H1), (E2, E3, H3)]
    assert unused == frozenset()
    D, _ = par1()
    assert build_paths_greedy({P1}, D) == (((P1,),), frozenset())
    assert build_paths_greedy(set(), D, required=0) == ((), frozenset())


def test_build_paths_greedy_drops_cycles_and_dead_ends():
    # s->a, a->b, b->a, a->t, a->c (dead end)
    D = Digraph.build(5, [(0, 1), (1, 2), (2, 1), (1, 4), (1, 3)], 0, 4)
    paths, unused = build_paths_greedy(range(5), D)
    assert paths == ((0, 3),)
    assert unused == {1, 2, 4}


def test_build_paths_greedy_required():
    D, _ = flag()
    with pytest.raises(MalformedAugmentationError):
        build_paths_greedy({E1}, D, required=1)


def test_contract_system_examples():
    D, _ = flag()
    Dc = contract_system(D, {A, B, C, T}, {T})
    arcs = {e.id: (e.tail, e.head) for e in Dc.edges}
    assert arcs == {E1: (S, A), E2: (S, B), E3: (B, C), H1: (A, T), H2: (B, T), H3: (C, T)}

    D, _ = par1()
    Dc = contract_system(D, {1}, {1})
    assert [(e.tail, e.head) for e in Dc.edges] == [(0, 1), (0, 1)]

    D, _ = flag()
    Dc = contract_system(D, {T}, {T})
    assert {e.id: (e.tail, e.head) for e in Dc.edges} == {H1: (S, T), H2: (S, T), H3: (S, T)}


def test_contract_system_merges_outside_into_s():
    D, _ = flag()
    Dc = contract_system(D, {C, T}, {T})
    arcs = {e.id: (e.tail, e.head) for e in Dc.edges}
    # e1, e2 lie inside V - X and vanish; b and a collapse onto s
    assert arcs == {E3: (S, C), H1: (S, T), H2: (S, T), H3: (C, T)}
    with pytest.raises(InvalidCutError):
        contract_system(D, {C, T}, {B, T})


def test_delete_spanned_examples():
    D, M = flag()
    kept = delete_spanned(D, M, {H1}).edge_ids
    assert H1 not in kept and H2 not in kept and H3 in kept
    assert delete_spanned(D, M, set()) == D
    D, M = par1()
    assert delete_spanned(D, M, {P1}).edge_ids == frozenset()
    with pytest.raises(DependentSetError):
        delete_spanned(D, M, {P1, P2})


def test_shortest_path_and_reachability():
    D, _ = flag()
    assert shortest_path(D, S, T) == (E1, H1)
    assert shortest_path(D, B, T) == (H2,)
    assert shortest_path(D, T, S) is None
    assert shortest_path(D, C, C) == ()
    assert reachable_from(D, B) == {B, C, T}


def test_path_problem():
    D, _ = flag()
    assert path_problem(D, (E2, E3, H3)) is None
    assert path_problem(D, ()) == "empty path"
    assert "not in digraph" in path_problem(D, (9,))
    assert path_problem(D, (E1, H3)) is not None
    D2 = Digraph.build(3, [(0, 1), (1, 0), (0, 2)], 0, 2)
    assert path_problem(D2, (0, 1, 2)) == "path repeats a vertex"


arcs_strategy = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=10)


@settings(max_examples=150, deadline=None)
@given(arcs_strategy, st.data())
def test_boundary_partitions_crossing_edges(arcs, data):
    D = Digraph.build(5, arcs, 0, 4)
    others = data.draw(st.sets(st.integers(1, 3)))
    X = frozenset(others) | {4}
    ins, outs = cut_boundary(D, X)
    for e in D.edges:
        crossing = (e.tail in X) != (e.head in X)
        assert (e.id in ins or e.id in outs) == crossing
        assert not (e.id in ins and e.id in outs)


@settings(max_examples=150, deadline=None)
@given(arcs_strategy, st.data())
def test_greedy_decomposition_of_disjoint_paths(arcs, data):
    """Unions of edge-disjoint simple paths decompose into at least as many paths."""
    D = Digraph.build(5, arcs, 0, 4)
    all_paths = enumerate_st_paths(D)
    chosen: list = []
    for p in data.draw(st.permutations(all_paths)) if all_paths else []:
        if is_edge_disjoint(chosen + [p]):
            chosen.append(p)
    paths, unused = build_paths_greedy({e for p in chosen for e in p}, D, required=len(chosen))
    assert is_edge_disjoint(paths)
    assert all(path_problem(D, p) is None for p in paths)
    used = {e for p in paths for e in p}
    assert used | unused == {e for p in chosen for e in p}
    assert not used & unused
