"""Finite multidigraphs with a designated source and sink.

Vertices are dense integers ``0..vertex_count-1``. Edges carry their own
integer ids, which need not be dense: deleting or contracting edges keeps the
surviving ids so that matroid oracles keyed by edge id stay valid.

Paths are plain tuples of edge ids in traversal order and path systems are
tuples of paths. Vertex sequences are derived on demand because parallel
edges make them ambiguous as an encoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import DependentSetError, InvalidCutError, MalformedAugmentationError

Path = tuple[int, ...]
PathSystem = tuple[Path, ...]


@dataclass(frozen=True)
class Edge:
    id: int
    tail: int
    head: int

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class Digraph:
    vertex_count: int
    edges: tuple[Edge, ...]
    s: int
    t: int
    names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if not (0 <= self.s < self.vertex_count and 0 <= self.t < self.vertex_count):
            raise ValueError("s and t must be vertices")
        if self.s == self.t:
            raise ValueError("s and t must differ")
        seen = set()
        for e in self.edges:
            if e.id < 0 or e.id in seen:
                raise ValueError(f"bad or duplicate edge id {e.id}")
            seen.add(e.id)
            if not (0 <= e.tail < self.vertex_count and 0 <= e.head < self.vertex_count):
                raise ValueError(f"edge {e.id} has an endpoint outside the vertex range")
        if self.names is not None and len(self.names) != self.vertex_count:
            raise ValueError("names must list every vertex")

    @classmethod
    def build(
        cls,
        vertex_count: int,
        arcs: Iterable[tuple[int, int] | tuple[int, int, int]],
        s: int,
        t: int,
        names: Optional[Sequence[str]] = None,
    ) -> "Digraph":
        """Build from ``(tail, head)`` pairs (ids assigned in order) or ``(id, tail, head)`` triples."""
        edges = []
        for i, arc in enumerate(arcs):
            if len(arc) == 2:
                edges.append(Edge(i, arc[0], arc[1]))
            else:
                edges.append(Edge(*arc))
        return cls(vertex_count, tuple(edges), s, t, tuple(names) if names is not None else None)

    @cached_property
    def _by_id(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def edge_ids(self) -> frozenset[int]:
        return frozenset(self._by_id)

    @cached_property
    def in_map(self) -> tuple[tuple[int, ...], ...]:
        lists: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for e in sorted(self.edges, key=lambda e: e.id):
            lists[e.head].append(e.id)
        return tuple(tuple(x) for x in lists)

    @cached_property
    def out_map(self) -> tuple[tuple[int, ...], ...]:
        lists: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for e in sorted(self.edges, key=lambda e: e.id):
            lists[e.tail].append(e.id)
        return tuple(tuple(x) for x in lists)

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def edge(self, eid: int) -> Edge:
        return self._by_id[eid]

    def tail(self, eid: int) -> int:
        return self._by_id[eid].tail

    def head(self, eid: int) -> int:
        return self._by_id[eid].head

    def in_edges(self, v: int) -> tuple[int, ...]:
        return self.in_map[v]

    def out_edges(self, v: int) -> tuple[int, ...]:
        return self.out_map[v]

    def name(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    def without(self, eids: Iterable[int]) -> "Digraph":
        """Return a copy with the given edges removed (ids of the rest unchanged)."""
        drop = frozenset(eids)
        if not drop:
            return self
        return Digraph(
            self.vertex_count,
            tuple(e for e in self.edges if e.id not in drop),
            self.s,
            self.t,
            self.names,
        )

    def restricted_to(self, eids: Iterable[int]) -> "Digraph":
        keep = frozenset(eids)
        return Digraph(
            self.vertex_count, tuple(e for e in self.edges if e.id in keep), self.s, self.t, self.names
        )


def check_cut(D: Digraph, X: Iterable[int]) -> frozenset[int]:
    X = frozenset(X)
    if D.s in X or D.t not in X:
        raise InvalidCutError(f"not a t-s cut: {sorted(X)}")
    if any(not 0 <= v < D.vertex_count for v in X):
        raise InvalidCutError("cut contains unknown vertices")
    return X


def cut_boundary(D: Digraph, X: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Edges entering and leaving the cut ``X``."""
    X = check_cut(D, X)
    return _boundary(D, X)


def _boundary(D: Digraph, X: frozenset[int]) -> tuple[frozenset[int], frozenset[int]]:
    ins, outs = [], []
    for e in D.edges:
        t_in, h_in = e.tail in X, e.head in X
        if h_in and not t_in:
            ins.append(e.id)
        elif t_in and not h_in:
            outs.append(e.id)
    return frozenset(ins), frozenset(outs)


def in_edges_of_set(D: Digraph, X: Iterable[int]) -> frozenset[int]:
    """Edges entering an arbitrary vertex set (no cut validation)."""
    return _boundary(D, frozenset(X))[0]


def path_vertices(D: Digraph, path: Sequence[int]) -> tuple[int, ...]:
    if not path:
        raise ValueError("paths are nonempty")
    verts = [D.tail(path[0])]
    for eid in path:
        e = D.edge(eid)
        if e.tail != verts[-1]:
            raise ValueError(f"edge {eid} does not continue the path")
        verts.append(e.head)
    return tuple(verts)


def path_problem(D: Digraph, path: Sequence[int]) -> Optional[str]:
    """Describe why ``path`` is not a simple directed path in ``D``, or return None."""
    if not path:
        return "empty path"
    for eid in path:
        if eid not in D.edge_ids:
            return f"edge {eid} not in digraph"
    try:
        verts = path_vertices(D, path)
    except ValueError as exc:
        return str(exc)
    if len(set(verts)) != len(verts):
        return "path repeats a vertex"
    return None


def edges_of(paths: Iterable[Sequence[int]]) -> frozenset[int]:
    return frozenset(eid for p in paths for eid in p)


def last_edges(paths: Iterable[Sequence[int]]) -> frozenset[int]:
    return frozenset(p[-1] for p in paths)


def is_edge_disjoint(paths: Sequence[Sequence[int]]) -> bool:
    total = sum(len(p) for p in paths)
    return total == len(edges_of(paths))


def build_paths_greedy(
    edge_set: Iterable[int], D: Digraph, required: Optional[int] = None
) -> tuple[PathSystem, frozenset[int]]:
    """Decompose an edge set into edge-disjoint s->t paths.

    Traces from s, always taking the smallest unused outgoing edge. A trace
    that closes a cycle drops the cycle; a trace that dead-ends backs off one
    edge. Returns the paths in extraction order and the edges left over.
    """
    remaining = set(edge_set)
    unused = {e for e in remaining if D.edge(e).is_loop}
    remaining -= unused
    paths: list[Path] = []
    s, t = D.s, D.t
    while True:
        trail: list[int] = []
        depth = {s: 0}
        v = s
        while v != t:
            outs = [e for e in D.out_edges(v) if e in remaining]
            if not outs:
                if not trail:
                    break
                e = trail.pop()
                unused.add(e)
                del depth[v]
                v = D.tail(e)
                continue
            e = min(outs)
            remaining.discard(e)
            w = D.head(e)
            if w in depth:
                i = depth[w]
                unused.update(trail[i:])
                unused.add(e)
                for f in trail[i:]:
                    del depth[D.head(f)]
                del trail[i:]
                v = w
                continue
            trail.append(e)
            depth[w] = len(trail)
            v = w
        if v != t:
            break
        paths.append(tuple(trail))
    unused |= remaining
    if required is not None and len(paths) < required:
        raise MalformedAugmentationError(
            f"extracted {len(paths)} s->t paths, {required} required"
        )
    return tuple(paths), frozenset(unused)


def contract_system(D: Digraph, X: Iterable[int], Y: Iterable[int]) -> Digraph:
    """Merge ``V - X`` into s and ``Y`` into t.

    The result keeps the vertex numbering: the merged super-vertices reuse the
    ids of s and t, and the absorbed vertices become isolated. Edges inside
    ``V - X`` or inside ``Y`` are dropped; every other edge keeps its id.
    """
    X = check_cut(D, X)
    Y = check_cut(D, Y)
    if not Y <= X:
        raise InvalidCutError("contract_system needs Y to be a subset of X")

    def image(v: int) -> int:
        if v not in X:
            return D.s
        if v in Y:
            return D.t
        return v

    edges = []
    for e in D.edges:
        if (e.tail not in X and e.head not in X) or (e.tail in Y and e.head in Y):
            continue
        edges.append(Edge(e.id, image(e.tail), image(e.head)))
    return Digraph(D.vertex_count, tuple(edges), D.s, D.t, D.names)


def delete_spanned(D: Digraph, M, A0: Iterable[int]) -> Digraph:
    """``D`` minus every edge spanned by the independent set ``A0``."""
    A0 = frozenset(A0)
    if not M.is_independent(A0):
        raise DependentSetError(f"{sorted(A0)} is dependent")
    return D.without(M.span(A0) & D.edge_ids)


def reachable_from(D: Digraph, v: int) -> frozenset[int]:
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for eid in D.out_edges(u):
            w = D.head(eid)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def shortest_path(D: Digraph, source: int, target: int) -> Optional[Path]:
    """Breadth-first shortest path, ties broken by ascending edge id."""
    if source == target:
        return ()
    parent: dict[int, int] = {}
    seen = {source}
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for eid in D.out_edges(u):
                w = D.head(eid)
                if w in seen:
                    continue
                seen.add(w)
                parent[w] = eid
                if w == target:
                    out = []
                    while w != source:
                        e = parent[w]
                        out.append(e)
                        w = D.tail(e)
                    return tuple(reversed(out))
                nxt.append(w)
        frontier = nxt
    return None

