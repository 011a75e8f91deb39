"""Proof-following engine built on waves.

A wave ``(W, X)`` is a t-s cut ``X`` together with an independent system of
edge-disjoint paths from s into ``X``, each meeting ``X`` only at its end,
whose last edges span every edge entering ``X``. Waves are ordered by
shrinking the cut while continuing paths forward inside the old cut.

The engine finds a maximal wave, then repeatedly grows an s-arborescence
around one of its paths (contracting what it has used) until the
arborescence reaches t. The unique s->t path of each arborescence becomes
one path of the answer, and the first maximal wave's cut certifies it.

Maximality is decided by trying every smaller cut, which is exponential in
the cut size; ``ProofLimits`` caps the instance size.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

from .augment import augment_until_stall
from .digraph import (
    Digraph,
    Path,
    PathSystem,
    check_cut,
    contract_system,
    cut_boundary,
    delete_spanned,
    edges_of,
    in_edges_of_set,
    is_edge_disjoint,
    last_edges,
    path_problem,
    path_vertices,
    shortest_path,
)
from .errors import GuardExceeded, InternalInvariantError, InvalidCutError, NotMaximalError
from .matroid import ContractedMatroid, Matroid
from .solver import Certificate, VerificationReport, verify_certificate


@dataclass(frozen=True)
class ContractedSystem:
    """``(D - span(A0), M / span(A0))`` for an independent edge set ``A0``."""

    base_digraph: Digraph
    base_matroid: Matroid
    a0: frozenset[int] = frozenset()

    @cached_property
    def spanned(self) -> frozenset[int]:
        return self.base_matroid.span(self.a0)

    @cached_property
    def digraph(self) -> Digraph:
        return delete_spanned(self.base_digraph, self.base_matroid, self.a0)

    @cached_property
    def matroid(self) -> Matroid:
        if not self.spanned:
            return self.base_matroid
        return ContractedMatroid(self.base_matroid, self.spanned)

    def extended(self, more: Iterable[int]) -> "ContractedSystem":
        return ContractedSystem(self.base_digraph, self.base_matroid, self.a0 | frozenset(more))


@dataclass(frozen=True)
class Wave:
    paths: PathSystem
    cut: frozenset[int]

    @classmethod
    def of(cls, paths: Iterable[Sequence[int]], cut: Iterable[int]) -> "Wave":
        return cls(tuple(sorted(tuple(p) for p in paths)), frozenset(cut))


@dataclass(frozen=True)
class Arborescence:
    root: int
    edges: tuple[int, ...]

    def vertices(self, D: Digraph) -> frozenset[int]:
        return frozenset((self.root,)) | {D.head(e) for e in self.edges}

    def path_to(self, D: Digraph, v: int) -> Path:
        into = {D.head(e): e for e in self.edges}
        out = []
        while v != self.root:
            e = into[v]
            out.append(e)
            v = D.tail(e)
        return tuple(reversed(out))


class Extension(NamedTuple):
    leq: bool
    complete: bool
    proper: bool


class _AlreadyAtT:
    def __repr__(self):
        return "ALREADY_AT_T"


ALREADY_AT_T = _AlreadyAtT()


@dataclass(frozen=True)
class ProofLimits:
    max_vertices: int = 10
    max_edges: int = 14


def is_wave(sys: ContractedSystem, w: Wave) -> VerificationReport:
    D, M = sys.digraph, sys.matroid
    try:
        X = check_cut(D, w.cut)
    except InvalidCutError as exc:
        return VerificationReport(False, "cut", str(exc))
    for p in w.paths:
        problem = path_problem(D, p)
        if problem:
            return VerificationReport(False, "path", f"{list(p)}: {problem}")
        verts = path_vertices(D, p)
        if verts[0] != D.s:
            return VerificationReport(False, "path", f"{list(p)} does not start at s")
        if [v for v in verts if v in X] != [verts[-1]]:
            return VerificationReport(False, "meets-cut", f"{list(p)} must meet the cut only at its end")
    if not is_edge_disjoint(w.paths):
        return VerificationReport(False, "edge-disjoint", "paths share an edge")
    if not M.is_independent(edges_of(w.paths)):
        return VerificationReport(False, "independence", "path edges are dependent")
    ins = cut_boundary(D, X)[0]
    if not M.spans(last_edges(w.paths), ins):
        return VerificationReport(False, "span", "last edges do not span the entering edges")
    return VerificationReport(True)


def _assert_wave(sys: ContractedSystem, w: Wave, what: str) -> None:
    report = is_wave(sys, w)
    if not report:
        raise InternalInvariantError(f"{what} is not a wave: {report}")


def trivial_wave(sys: ContractedSystem) -> Wave:
    """Greedy base of the edges leaving s, as one-edge paths, against the cut V - s."""
    D, M = sys.digraph, sys.matroid
    out_s = [e for e in D.out_edges(D.s) if D.head(e) != D.s]
    B = M.basis(out_s)
    return Wave.of(((e,) for e in B), frozenset(D.vertices) - {D.s})


def _continues(D: Digraph, q: Path, p: Path, X0: frozenset[int]) -> bool:
    return q[: len(p)] == p and all(D.head(e) in X0 for e in q[len(p):])


def wave_leq(sys: ContractedSystem, w0: Wave, w1: Wave) -> Extension:
    """Whether ``w1`` extends ``w0``; also reports completeness and properness."""
    D = sys.digraph
    X0, X1 = w0.cut, w1.cut
    if not X1 <= X0:
        return Extension(False, False, False)
    continued = set()
    for q in w1.paths:
        origin = [p for p in w0.paths if _continues(D, q, p, X0)]
        if not origin:
            return Extension(False, False, False)
        continued.add(origin[0])
    for p in w0.paths:
        if D.head(p[-1]) in X1 and p not in w1.paths:
            return Extension(False, False, False)
    return Extension(True, continued == set(w0.paths), X1 < X0)


def merge_waves(sys: ContractedSystem, w: Wave, q: Wave) -> Wave:
    """Combine ``w`` with a wave ``q`` of continuations into a wave at ``q``'s cut extending ``w``."""
    D, M = sys.digraph, sys.matroid
    X, Y = w.cut, q.cut
    if not Y <= X:
        raise ValueError("merge_waves needs the second cut inside the first")
    for path in q.paths:
        if not any(_continues(D, path, p, X) for p in w.paths):
            raise ValueError(f"{list(path)} is not a forward continuation of a path of the first wave")
    w_y = [p for p in w.paths if D.head(p[-1]) in Y]
    ins = cut_boundary(D, Y)[0]
    start = last_edges(w_y)
    B = M.basis(start | last_edges(q.paths), start=start)
    if not M.spans(B, ins):
        raise ValueError("second argument is not a wave: its last edges do not span the cut")
    chosen = set(w_y) | {p for p in q.paths if B.intersection(p)}
    merged = Wave.of(chosen, Y)
    _assert_wave(sys, merged, "merged wave")
    if not wave_leq(sys, w, merged).leq:
        raise InternalInvariantError("merged wave does not extend its first argument")
    return merged


def truncate_to_cut(sys: ContractedSystem, paths: Sequence[Path], Z: Iterable[int]) -> Wave:
    """Initial segments of ``paths`` up to their first vertex in ``Z``."""
    D, M = sys.digraph, sys.matroid
    Z = check_cut(D, Z)
    ins, outs = cut_boundary(D, Z)
    A = edges_of(paths)
    if A & outs or not M.spans(A & ins, ins):
        raise ValueError("paths and cut do not satisfy the complementarity conditions")
    cut_paths = []
    for p in paths:
        verts = path_vertices(D, p)
        first = next((i for i, v in enumerate(verts) if v in Z), None)
        if first is None or first == 0:
            raise ValueError(f"{list(p)} does not enter the cut from outside")
        cut_paths.append(tuple(p[:first]))
    return Wave.of(cut_paths, Z)


def _candidate_cuts(D: Digraph, X: frozenset[int]) -> list[frozenset[int]]:
    others = sorted(X - {D.t})
    out = []
    for size in range(len(others)):
        for combo in itertools.combinations(others, size):
            out.append(frozenset(combo) | {D.t})
    return out


def find_proper_extension(sys: ContractedSystem, w: Wave) -> Optional[Wave]:
    """A wave properly extending ``w``, or None when ``w`` is maximal.

    For each smaller cut Y (smallest first), the part outside X is merged
    into s, Y into t, the edges entering X are cut back to the last edges of
    ``w``, and augmenting walks decide whether continuations can span the
    edges entering Y.
    """
    D, M = sys.digraph, sys.matroid
    X = w.cut
    lasts = last_edges(w.paths)
    by_last = {p[-1]: p for p in w.paths}
    entering_x = cut_boundary(D, X)[0]
    normalized = D.without(entering_x - lasts)
    for Y in _candidate_cuts(D, X):
        ins_y = cut_boundary(D, Y)[0]
        if M.rank(ins_y) > len(w.paths):
            continue
        contracted = contract_system(normalized, X, Y)
        start = [(p[-1],) for p in w.paths if D.head(p[-1]) in Y]
        R = augment_until_stall(contracted, M, start)
        if not M.spans(last_edges(R), ins_y):
            continue
        lifted = Wave.of((by_last[r[0]] + r[1:] for r in R), Y)
        _assert_wave(sys, lifted, "lifted continuation system")
        ext = merge_waves(sys, w, lifted)
        if not wave_leq(sys, w, ext).proper:
            raise InternalInvariantError("extension found is not proper")
        return ext
    return None


def maximal_wave(sys: ContractedSystem, start: Optional[Wave] = None) -> Wave:
    """Extend ``start`` (default: the trivial wave) until no proper extension exists."""
    w = trivial_wave(sys) if start is None else start
    _assert_wave(sys, w, "starting wave")
    while True:
        nxt = find_proper_extension(sys, w)
        if nxt is None:
            return w
        w = nxt


def reach_t_path(sys: ContractedSystem, w: Wave, v: int):
    """A v->t path avoiding everything spanned by the wave's edges.

    Returns ``ALREADY_AT_T`` for v = t. Failure to find a path proves ``w``
    is not maximal and raises ``NotMaximalError``.
    """
    D, M = sys.digraph, sys.matroid
    if v not in w.cut:
        raise ValueError(f"vertex {v} is not in the wave's cut")
    if v == D.t:
        return ALREADY_AT_T
    A = edges_of(w.paths)
    H = delete_spanned(D, M, A)
    Q = shortest_path(H, v, D.t)
    if Q is None:
        raise NotMaximalError(f"no path from {v} to t outside the span; the wave is not maximal")
    if not M.is_independent(A | set(Q)):
        raise InternalInvariantError("path to t breaks independence")
    return Q


def grow_arborescence(sys: ContractedSystem, w0: Wave, P: Path) -> tuple[Arborescence, Wave]:
    """Grow an s-arborescence from ``P`` until it reaches t.

    Each round adds the smallest edge leaving the arborescence that is not
    spanned by the arborescence plus the current wave, then re-maximizes the
    remaining wave in the system contracted by the arborescence. Returns the
    arborescence and that final wave, a complete extension of ``w0 - P``.
    """
    D = sys.digraph
    if P not in w0.paths:
        raise ValueError("P must be a path of the wave")
    start = Wave.of((p for p in w0.paths if p != P), w0.cut)
    arb = list(P)
    verts = set(path_vertices(D, P))
    cur = start
    _assert_wave(sys.extended(arb), cur, "wave without P")
    while D.t not in verts:
        free = sys.extended(set(arb) | edges_of(cur.paths)).digraph
        leaving = [e for v in verts for e in free.out_edges(v) if free.head(e) not in verts]
        if not leaving:
            raise InternalInvariantError("arborescence is stuck before reaching t")
        e = min(leaving)
        arb.append(e)
        verts.add(D.head(e))
        step_sys = sys.extended(arb)
        _assert_wave(step_sys, cur, "previous wave in the contracted system")
        nxt = maximal_wave(step_sys, cur)
        ext = wave_leq(step_sys, cur, nxt)
        if not (ext.leq and ext.complete):
            raise InternalInvariantError("re-maximized wave is not a complete extension")
        cur = nxt
    final_sys = sys.extended(arb)
    A_arb = frozenset(arb)
    others = edges_of(start.paths)
    if A_arb & others or not sys.matroid.is_independent(A_arb | edges_of(cur.paths)):
        raise InternalInvariantError("arborescence conflicts with the remaining wave")
    ext = wave_leq(final_sys, start, cur)
    if not (ext.leq and ext.complete):
        raise InternalInvariantError("final wave is not a complete extension of the remaining paths")
    return Arborescence(D.s, tuple(arb)), cur


def proof_solve(
    D: Digraph,
    M: Matroid,
    limits: ProofLimits = ProofLimits(),
    trace: Optional[list[ContractedSystem]] = None,
) -> Certificate:
    """Certificate built by following the wave argument; verified before returning.

    ``trace`` (if given) receives every contracted system the run works in.
    """
    if D.vertex_count > limits.max_vertices or len(D.edges) > limits.max_edges:
        raise GuardExceeded(
            f"proof engine limited to {limits.max_vertices} vertices and {limits.max_edges} edges"
        )
    sys = ContractedSystem(D, M)
    if trace is not None:
        trace.append(sys)
    w = maximal_wave(sys)
    X0 = w.cut
    found: list[Path] = []
    while w.paths:
        P = min(w.paths, key=lambda p: p[0])
        arb, w = grow_arborescence(sys, w, P)
        star = arb.path_to(D, D.t)
        if star[: len(P)] != P:
            raise InternalInvariantError("the arborescence's s->t path does not continue P")
        found.append(star)
        sys = sys.extended(arb.edges)
        if trace is not None:
            trace.append(sys)
    ins = in_edges_of_set(D, X0)
    cert = Certificate(tuple(sorted(found)), X0, edges_of(found) & ins)
    report = verify_certificate(D, M, cert)
    if not report:
        raise InternalInvariantError(f"proof engine produced an invalid certificate: {report}")
    return cert
