"""Brute-force ground truth.

Nothing here shares code with the engines beyond the digraph and matroid
models: path systems are found by exhaustive backtracking, cuts by full
enumeration, waves by listing every candidate, and the free/partition case
by a plain max-flow computation in networkx.

Every routine is guarded by an instance-size limit. The limits can be
relaxed through ``MATROID_MENGER_GUARDS`` (``off`` or ``key=value,...``);
relaxed guards can make these routines very slow.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from typing import Iterator, Optional, Sequence

import networkx as nx

from .digraph import Digraph, Path, cut_boundary, edges_of, last_edges
from .errors import GuardExceeded, UnsupportedMatroidError
from .matroid import DirectSumMatroid, Free, Matroid, Partition, Restriction, Uniform

GUARD_ENV = "MATROID_MENGER_GUARDS"


@dataclass(frozen=True)
class Guards:
    max_edges: Optional[int] = 20
    max_vertices: Optional[int] = 20
    max_paths: Optional[int] = 10**6
    wave_edges: Optional[int] = 8


def current_guards() -> Guards:
    raw = os.environ.get(GUARD_ENV, "").strip()
    if not raw:
        return Guards()
    if raw.lower() in ("off", "none", "0"):
        return Guards(None, None, None, None)
    names = {f.name for f in fields(Guards)}
    updates = {}
    for item in raw.split(","):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in names:
            raise ValueError(f"{GUARD_ENV}: unknown guard {key!r}")
        value = value.strip().lower()
        updates[key] = None if value in ("off", "none", "") else int(float(value))
    return replace(Guards(), **updates)


def _guard(value: int, limit: Optional[int], what: str) -> None:
    if limit is not None and value > limit:
        raise GuardExceeded(f"{what} = {value} exceeds guard {limit}")


def _simple_paths(D: Digraph, stop: frozenset[int], limit: Optional[int]) -> Iterator[Path]:
    """Simple paths from s whose only vertex in ``stop`` is the last one, in lexicographic order."""
    count = 0
    on_path = [False] * D.vertex_count
    on_path[D.s] = True
    trail: list[int] = []

    def dfs(v):
        nonlocal count
        for eid in D.out_edges(v):
            w = D.head(eid)
            if on_path[w]:
                continue
            trail.append(eid)
            if w in stop:
                count += 1
                _guard(count, limit, "path count")
                yield tuple(trail)
            else:
                on_path[w] = True
                yield from dfs(w)
                on_path[w] = False
            trail.pop()

    yield from dfs(D.s)


def enumerate_st_paths(D: Digraph, limit: Optional[int] = None) -> list[Path]:
    """All simple s->t paths, ordered lexicographically by edge-id sequence."""
    if limit is None:
        limit = current_guards().max_paths
    return list(_simple_paths(D, frozenset((D.t,)), limit))


def max_independent_path_system(D: Digraph, M: Matroid) -> tuple[int, tuple[Path, ...]]:
    """Largest edge-disjoint s->t path system with independent edge set, by backtracking."""
    g = current_guards()
    _guard(len(D.edges), g.max_edges, "edge count")
    paths = [p for p in enumerate_st_paths(D, g.max_paths) if M.is_independent(p)]
    edge_sets = [frozenset(p) for p in paths]
    firsts = [p[0] for p in paths]
    best: list[int] = []
    chosen: list[int] = []

    def bound(i: int, used: frozenset[int]) -> int:
        return len({firsts[j] for j in range(i, len(paths)) if firsts[j] not in used})

    def rec(i: int, used: frozenset[int]):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        for j in range(i, len(paths)):
            if len(chosen) + bound(j, used) <= len(best):
                return
            if used & edge_sets[j]:
                continue
            new = used | edge_sets[j]
            if not M.is_independent(new):
                continue
            chosen.append(j)
            rec(j + 1, new)
            chosen.pop()

    rec(0, frozenset())
    return len(best), tuple(paths[j] for j in best)


def _cuts(D: Digraph) -> Iterator[frozenset[int]]:
    """All t-s cuts in ascending bitmask order."""
    for mask in range(1 << D.vertex_count):
        if mask >> D.t & 1 and not mask >> D.s & 1:
            yield frozenset(v for v in D.vertices if mask >> v & 1)


def min_cut_rank(D: Digraph, M: Matroid) -> tuple[int, frozenset[int]]:
    """Minimum over t-s cuts of the rank of the entering edges; ties go to the smallest bitmask."""
    _guard(D.vertex_count, current_guards().max_vertices, "vertex count")
    best = None
    for X in _cuts(D):
        r = M.rank(cut_boundary(D, X)[0])
        if best is None or r < best[0]:
            best = (r, X)
    return best


@dataclass(frozen=True)
class OracleReport:
    max_paths: int
    min_cut_rank: int
    argmax: tuple[Path, ...]
    argmin: frozenset[int]
    duality_holds: bool


def check_duality(D: Digraph, M: Matroid) -> OracleReport:
    size, witness = max_independent_path_system(D, M)
    value, cut = min_cut_rank(D, M)
    return OracleReport(size, value, witness, cut, size == value)


def _capacity_blocks(M: Matroid, v: int) -> list[tuple[frozenset[int], Optional[int]]]:
    """Per-vertex capacity blocks of a free/uniform/partition matroid (None = uncapacitated)."""
    ground = M.ground
    while isinstance(M, Restriction):
        M = M.base
    if isinstance(M, Free):
        return [(ground, None)]
    if isinstance(M, Uniform):
        return [(ground, M.r)]
    if isinstance(M, Partition):
        blocks = [(b & ground, c) for b, c in M.blocks]
        stray = ground - frozenset().union(*(b for b, _ in M.blocks))
        return blocks + ([(stray, 0)] if stray else [])
    raise UnsupportedMatroidError(f"vertex {v}: {type(M).__name__} does not reduce to edge capacities")


def classic_maxflow_value(D: Digraph, M: Optional[Matroid] = None) -> int:
    """Unit-capacity s-t max flow, computed by networkx.

    With ``M`` given, each uniform or partition block at a vertex is routed
    through an extra hub node whose outgoing capacity is the block capacity.
    """
    G = nx.DiGraph()
    G.add_nodes_from(D.vertices)

    def add(u, v, c: int):
        if G.has_edge(u, v):
            G[u][v]["capacity"] += c
        else:
            G.add_edge(u, v, capacity=c)

    route: dict[int, tuple[int, int]] = {}
    if M is not None:
        if not isinstance(M, DirectSumMatroid):
            raise UnsupportedMatroidError("expected a per-vertex direct sum")
        for v, block in M.blocks.items():
            for i, (members, c) in enumerate(_capacity_blocks(block, v)):
                if c is None:
                    continue
                add(("hub", v, i), v, c)
                for e in members:
                    route[e] = ("hub", v, i)
    for e in D.edges:
        if not e.is_loop:
            add(e.tail, route.get(e.id, e.head), 1)
    return int(nx.maximum_flow_value(G, D.s, D.t))


# Waves, checked straight from their definition.

Wave = tuple[tuple[Path, ...], frozenset[int]]


def _is_extension(w0: Wave, w1: Wave, D: Digraph) -> bool:
    W0, X0 = w0
    W1, X1 = w1
    if not X1 <= X0:
        return False
    for q in W1:
        ok = False
        for p in W0:
            if q[: len(p)] == p and all(D.head(e) in X0 for e in q[len(p):]):
                ok = True
                break
        if not ok:
            return False
    ends_in_x1 = [p for p in W0 if D.head(p[-1]) in X1]
    return all(p in W1 for p in ends_in_x1)


def enumerate_waves(D: Digraph, M: Matroid) -> list[Wave]:
    """Every wave of the system, paths sorted within each wave."""
    _guard(len(D.edges), current_guards().wave_edges, "edge count for wave enumeration")
    out: list[Wave] = []
    for X in _cuts(D):
        ins = cut_boundary(D, X)[0]
        candidates = [p for p in _simple_paths(D, X, None) if M.is_independent(p)]
        chosen: list[Path] = []

        def rec(i: int, used: frozenset[int]):
            if M.spans(last_edges(chosen), ins):
                out.append((tuple(sorted(chosen)), X))
            for j in range(i, len(candidates)):
                p = candidates[j]
                if used.intersection(p):
                    continue
                new = used.union(p)
                if not M.is_independent(new):
                    continue
                chosen.append(p)
                rec(j + 1, new)
                chosen.pop()

        rec(0, frozenset())
    return out


def brute_force_proper_extension(D: Digraph, M: Matroid, wave: Wave, waves: Optional[Sequence[Wave]] = None) -> Optional[Wave]:
    """Some wave properly extending ``wave``, or None if it is maximal."""
    W, X = tuple(sorted(wave[0])), frozenset(wave[1])
    for cand in enumerate_waves(D, M) if waves is None else waves:
        if cand[1] < X and _is_extension((W, X), cand, D):
            return cand
    return None


def path_system_is_valid(D: Digraph, M: Matroid, paths: Sequence[Path]) -> bool:
    """Oracle-side check of a path-system witness."""
    A = edges_of(paths)
    if sum(len(p) for p in paths) != len(A) or not M.is_independent(A):
        return False
    for p in paths:
        verts = [D.tail(p[0])] + [D.head(e) for e in p]
        if verts[0] != D.s or verts[-1] != D.t or len(set(verts)) != len(verts):
            return False
        if any(D.tail(p[i + 1]) != D.head(p[i]) for i in range(len(p) - 1)):
            return False
    return True
