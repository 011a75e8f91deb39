"""Augmenting walks for independent path systems (Lawler-Martel style).

A walk starts at s and moves forward along edges outside the current path
system or backward along edges inside it. Its effect is the symmetric
difference of its edge set with the path-system edges. That difference must
be independent at the end, and any dependence created by a step must be
repaired by the very next step. s is never re-entered, and each edge is used
at most once.

The search is breadth-first over states ``(vertex, used edges)``. The used
set determines the symmetric difference, so deduplicating on it is exact;
the number of states is exponential in the worst case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .digraph import (
    Digraph,
    PathSystem,
    build_paths_greedy,
    edges_of,
    is_edge_disjoint,
    last_edges,
    path_problem,
)
from .errors import DependentSetError, InternalInvariantError, MalformedAugmentationError
from .matroid import Matroid


class SignedStep(NamedTuple):
    edge: int
    forward: bool

    def __str__(self):
        return f"{self.edge}" if self.forward else f"~{self.edge}"


Walk = tuple[SignedStep, ...]


def fwd(e: int) -> SignedStep:
    return SignedStep(e, True)


def rev(e: int) -> SignedStep:
    return SignedStep(e, False)


@dataclass(frozen=True)
class WalkCheck:
    ok: bool
    condition: Optional[str] = None
    step: Optional[int] = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _require_valid_system(D: Digraph, M: Matroid, P: Sequence[Sequence[int]]) -> frozenset[int]:
    A = edges_of(P)
    if not is_edge_disjoint(P):
        raise ValueError("path system is not edge-disjoint")
    if not M.is_independent(A):
        raise DependentSetError("path system is not independent")
    return A


def walk_end(D: Digraph, W: Sequence[SignedStep]) -> int:
    v = D.s
    for st in W:
        v = D.head(st.edge) if st.forward else D.tail(st.edge)
    return v


def is_augmenting_walk(D: Digraph, M: Matroid, P: Sequence[Sequence[int]], W: Sequence[SignedStep]) -> WalkCheck:
    """Replay ``W`` against ``P`` and report the earliest violated condition.

    Conditions are numbered as: 1 residual direction, 2 never back at s,
    3 final independence, 4 one-step repair. ``repeat`` flags an edge used
    twice (walks are normalized to once-per-edge).
    """
    A = _require_valid_system(D, M, P)
    v = D.s
    used: set[int] = set()
    sym = set(A)
    dependent = False
    prev_forward_circuit: Optional[frozenset[int]] = None
    for i, st in enumerate(W):
        e = st.edge
        if e not in D.edge_ids:
            return WalkCheck(False, "1", i, f"edge {e} not in digraph")
        if e in used:
            return WalkCheck(False, "repeat", i, f"edge {e} used twice")
        edge = D.edge(e)
        if st.forward:
            if e in A:
                return WalkCheck(False, "1", i, f"edge {e} is a path edge; only reverse traversal allowed")
            if edge.tail != v:
                return WalkCheck(False, "1", i, f"edge {e} does not leave vertex {v}")
            w = edge.head
        else:
            if e not in A:
                return WalkCheck(False, "1", i, f"edge {e} is not a path edge; cannot reverse it")
            if edge.head != v:
                return WalkCheck(False, "1", i, f"reversed edge {e} does not leave vertex {v}")
            w = edge.tail
        if w == D.s:
            return WalkCheck(False, "2", i, "walk returns to s")
        used.add(e)
        before = frozenset(sym)
        sym ^= {e}
        ok = M.is_independent(sym)
        if dependent:
            if not ok:
                return WalkCheck(False, "4", i, "dependence not repaired by the next step")
            # A forward step's dependence can only be undone by reversing a
            # path edge of its fundamental circuit at the same vertex.
            if st.forward or prev_forward_circuit is None or e not in prev_forward_circuit:
                raise InternalInvariantError(f"repair at step {i} is not a reverse circuit edge")
        prev_forward_circuit = None
        if not ok:
            if not st.forward:
                raise InternalInvariantError("a reverse step cannot create dependence")
            prev_forward_circuit = M.fundamental_circuit(before, e)
        dependent = not ok
        v = w
    if dependent:
        return WalkCheck(False, "3", len(W) - 1 if W else None, "final symmetric difference dependent")
    return WalkCheck(True)


def _successors(D: Digraph, A: frozenset[int], v: int, used: frozenset[int]) -> list[SignedStep]:
    steps = []
    for e in D.out_edges(v):
        if e not in A and e not in used:
            h = D.head(e)
            if h != v and h != D.s:
                steps.append(SignedStep(e, True))
    for e in D.in_edges(v):
        if e in A and e not in used:
            tl = D.tail(e)
            if tl != v and tl != D.s:
                steps.append(SignedStep(e, False))
    steps.sort(key=lambda st: (st.edge, not st.forward))
    return steps


def _search(D: Digraph, M: Matroid, P, target: Optional[int]):
    A = _require_valid_system(D, M, P)
    if target == D.s:
        return (), frozenset((D.s,))
    start = (D.s, frozenset())
    parent: dict[tuple[int, frozenset[int]], tuple] = {start: None}
    reached = {D.s}
    indep_cache: dict[frozenset[int], bool] = {}

    def independent(S):
        r = indep_cache.get(S)
        if r is None:
            r = indep_cache[S] = M.is_independent(S)
        return r

    frontier = [(D.s, frozenset(), A, False)]
    while frontier:
        nxt = []
        for v, used, sym, dep in frontier:
            for st in _successors(D, A, v, used):
                e = st.edge
                w = D.head(e) if st.forward else D.tail(e)
                nused = used | {e}
                key = (w, nused)
                if key in parent:
                    continue
                nsym = sym ^ {e}
                ok = independent(nsym)
                if dep and not ok:
                    continue
                parent[key] = ((v, used), st)
                if ok:
                    reached.add(w)
                    if w == target:
                        steps = []
                        k = key
                        while parent[k] is not None:
                            k, step = parent[k]
                            steps.append(step)
                        return tuple(reversed(steps)), frozenset(reached)
                nxt.append((w, nused, nsym, not ok))
        frontier = nxt
    return None, frozenset(reached)


def find_shortest_augmenting_walk(
    D: Digraph, M: Matroid, P: Sequence[Sequence[int]], target: Optional[int] = None
) -> Optional[Walk]:
    """Shortest augmenting walk ending at ``target`` (default t), lexicographically least; None if absent."""
    return _search(D, M, P, D.t if target is None else target)[0]


def reachable_endpoints(D: Digraph, M: Matroid, P: Sequence[Sequence[int]]) -> frozenset[int]:
    """Final vertices of all augmenting walks, including the empty walk at s."""
    return _search(D, M, P, None)[1]


def _t_span(D: Digraph, M: Matroid, P) -> frozenset[int]:
    ins = frozenset(D.in_edges(D.t)) & M.ground
    return M.span(last_edges(P) & ins) & ins


def apply_augmentation(D: Digraph, M: Matroid, P: Sequence[Sequence[int]], W: Sequence[SignedStep]) -> PathSystem:
    """Replace the paths touched by ``W`` with one more path rebuilt from the symmetric difference."""
    check = is_augmenting_walk(D, M, P, W)
    if not check or walk_end(D, W) != D.t or not W:
        raise ValueError(f"not an augmenting walk to t: {check}")
    walk_edges = frozenset(st.edge for st in W)
    touched = [p for p in P if walk_edges & set(p)]
    kept = [p for p in P if not walk_edges & set(p)]
    k = len(touched)
    try:
        rebuilt, _ = build_paths_greedy(walk_edges ^ edges_of(touched), D, required=k + 1)
    except MalformedAugmentationError as exc:
        raise InternalInvariantError(f"augmentation rebuild failed: {exc}") from exc
    if len(rebuilt) != k + 1:
        raise InternalInvariantError(f"rebuilt {len(rebuilt)} paths from {k} touched ones")
    new = tuple(sorted(kept + list(rebuilt)))
    for p in new:
        problem = path_problem(D, p)
        if problem or D.tail(p[0]) != D.s or D.head(p[-1]) != D.t:
            raise InternalInvariantError(f"rebuilt path {p} invalid: {problem}")
    if not is_edge_disjoint(new) or not M.is_independent(edges_of(new)):
        raise InternalInvariantError("augmented system lost disjointness or independence")
    old_span, new_span = _t_span(D, M, P), _t_span(D, M, new)
    if not old_span < new_span:
        raise InternalInvariantError("span at t did not grow strictly")
    return new


def t_rank(D: Digraph, M: Matroid, P: Sequence[Sequence[int]]) -> int:
    """Rank of the last edges at t."""
    ins = frozenset(D.in_edges(D.t))
    return M.rank(last_edges(P) & ins)


def augment_until_stall(
    D: Digraph, M: Matroid, P: Sequence[Sequence[int]] = (), trace: Optional[list[int]] = None
) -> PathSystem:
    """Augment toward t until no augmenting walk reaches it.

    ``trace`` (if given) receives the rank of the last edges at t before the
    first augmentation and after each one.
    """
    P = tuple(sorted(tuple(p) for p in P))
    limit = M.rank(frozenset(D.in_edges(D.t)) & M.ground)
    if trace is not None:
        trace.append(t_rank(D, M, P))
    rounds = 0
    while True:
        W = find_shortest_augmenting_walk(D, M, P)
        if W is None:
            return P
        P = apply_augmentation(D, M, P, W)
        rounds += 1
        if trace is not None:
            trace.append(t_rank(D, M, P))
        if rounds > limit:
            raise InternalInvariantError("more augmentations than the rank at t allows")
