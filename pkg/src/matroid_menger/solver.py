"""Direct engine: augment to a stall, read the cut off the reachable set, certify."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .augment import augment_until_stall, reachable_endpoints
from .digraph import (
    Digraph,
    PathSystem,
    check_cut,
    cut_boundary,
    delete_spanned,
    edges_of,
    is_edge_disjoint,
    path_problem,
)
from .errors import InternalInvariantError, InvalidCutError
from .matroid import Matroid
from .oracle import enumerate_st_paths


@dataclass(frozen=True)
class Certificate:
    paths: PathSystem
    cut: frozenset[int]
    cover: frozenset[int]


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    clause: Optional[str] = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _fail(clause: str, detail: str) -> VerificationReport:
    return VerificationReport(False, clause, detail)


def verify_certificate(D: Digraph, M: Matroid, cert: Certificate) -> VerificationReport:
    """Check a certificate from scratch; returns the first violated clause."""
    if not D.edge_ids <= M.ground:
        return _fail("instance", "matroid ground does not cover the digraph edges")
    try:
        X = check_cut(D, cert.cut)
    except InvalidCutError as exc:
        return _fail("cut", str(exc))
    for p in cert.paths:
        problem = path_problem(D, p)
        if problem is None and (D.tail(p[0]) != D.s or D.head(p[-1]) != D.t):
            problem = "not an s->t path"
        if problem:
            return _fail("paths", f"{list(p)}: {problem}")
    if not is_edge_disjoint(cert.paths):
        return _fail("edge-disjoint", "paths share an edge")
    A = edges_of(cert.paths)
    if not M.is_independent(A):
        return _fail("independence", "united path edges are dependent")
    ins, outs = cut_boundary(D, X)
    if A & outs:
        return _fail("out-condition", f"path edges leave the cut: {sorted(A & outs)}")
    crossing = A & ins
    if not cert.cover <= crossing:
        return _fail("cover", f"cover edges {sorted(cert.cover - crossing)} are not path edges entering the cut")
    if not M.spans(cert.cover, ins):
        missing = sorted(e for e in ins if not M.in_span(cert.cover, e))
        return _fail("span-condition", f"entering edges not spanned by the cover: {missing}")
    if cert.cover != crossing:
        return _fail("cover", f"path edges entering the cut missing from cover: {sorted(crossing - cert.cover)}")
    for p in cert.paths:
        if len(cert.cover.intersection(p)) != 1:
            return _fail("cover", f"path {list(p)} does not contribute exactly one cover edge")
    r = M.rank(ins)
    if not len(cert.paths) == len(cert.cover) == r:
        return _fail("cardinality", f"|P|={len(cert.paths)}, |C|={len(cert.cover)}, rank(in(X))={r}")
    return VerificationReport(True)


def loopless(D: Digraph, M: Matroid) -> tuple[Digraph, Matroid]:
    """The system with matroid loops deleted (edge ids unchanged)."""
    D0 = delete_spanned(D, M, ())
    return D0, M.restrict(M.ground & D0.edge_ids)


def solve(D: Digraph, M: Matroid, trace: Optional[list[int]] = None) -> Certificate:
    """Independent path system plus a complementary t-s cut, verified before returning.

    ``trace`` receives the rank of the last edges at t before and after every
    augmentation.
    """
    D0, M0 = loopless(D, M)
    P = augment_until_stall(D0, M0, (), trace)
    Y = reachable_endpoints(D0, M0, P)
    X = frozenset(D.vertices) - Y
    ins, _ = cut_boundary(D, X)
    cert = Certificate(P, X, edges_of(P) & ins)
    report = verify_certificate(D, M, cert)
    if not report:
        raise InternalInvariantError(f"solver produced an invalid certificate: {report}")
    return cert


def cover_covers_all_paths(D: Digraph, M: Matroid, cert: Certificate, limit: Optional[int] = None) -> bool:
    """True iff every s->t path of ``D`` uses an edge spanned by the cover."""
    spanned = M.span(cert.cover)
    for p in enumerate_st_paths(D, limit):
        if not spanned.intersection(p):
            return False
    return True
