"""Matroid independence oracles over edge ids.

Every derived quantity (rank, span, fundamental circuit, contraction) is
computed from ``is_independent`` alone, so any user-supplied oracle works
with every engine. Bases are always grown greedily in ascending id order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence

from .errors import DependentSetError, GroundSetError, GuardExceeded

AXIOM_GROUND_LIMIT = 12


class Matroid:
    """Base class. Subclasses set ``ground`` and implement ``_independent``."""

    ground: frozenset[int]

    def _independent(self, S: frozenset[int]) -> bool:
        raise NotImplementedError

    def _checked(self, S: Iterable[int]) -> frozenset[int]:
        S = frozenset(S)
        if not S <= self.ground:
            raise GroundSetError(f"{sorted(S - self.ground)} outside the ground set")
        return S

    def is_independent(self, S: Iterable[int]) -> bool:
        return self._independent(self._checked(S))

    def basis(self, S: Iterable[int], start: Iterable[int] = ()) -> frozenset[int]:
        """Greedy maximal independent subset of ``S`` containing the independent set ``start``."""
        S = self._checked(S)
        B = set(start)
        if not self._independent(frozenset(B)):
            raise DependentSetError("greedy start set is dependent")
        for e in sorted(S - B):
            B.add(e)
            if not self._independent(frozenset(B)):
                B.discard(e)
        return frozenset(B)

    def rank(self, S: Iterable[int]) -> int:
        return len(self.basis(S))

    def in_span(self, S: Iterable[int], e: int) -> bool:
        S = self._checked(S)
        self._checked((e,))
        if e in S:
            return True
        return not self._independent(self.basis(S) | {e})

    def span(self, S: Iterable[int]) -> frozenset[int]:
        S = self._checked(S)
        B = self.basis(S)
        return S | frozenset(e for e in self.ground - S if not self._independent(B | {e}))

    def spans(self, S: Iterable[int], T: Iterable[int]) -> bool:
        """True iff every element of ``T`` lies in ``span(S)``."""
        S = self._checked(S)
        B = self.basis(S)
        return all(e in S or not self._independent(B | {e}) for e in self._checked(T))

    def fundamental_circuit(self, S: Iterable[int], e: int) -> frozenset[int]:
        S = self._checked(S)
        self._checked((e,))
        if not self._independent(S):
            raise DependentSetError("fundamental_circuit needs an independent base set")
        Se = S | {e}
        if e in S or self._independent(Se):
            raise DependentSetError(f"S + {e} is independent; no circuit")
        return frozenset(x for x in Se if self._independent(Se - {x}))

    def loops(self) -> frozenset[int]:
        return frozenset(e for e in self.ground if not self._independent(frozenset((e,))))

    def contract(self, S: Iterable[int]) -> "Matroid":
        S = self._checked(S)
        if not S:
            return self
        return ContractedMatroid(self, S)

    def restrict(self, T: Iterable[int]) -> "Matroid":
        T = self._checked(T)
        if T == self.ground:
            return self
        return Restriction(self, T)


class Free(Matroid):
    def __init__(self, ground: Iterable[int]):
        self.ground = frozenset(ground)

    def _independent(self, S):
        return True

    def __repr__(self):
        return f"Free({sorted(self.ground)})"


class Uniform(Matroid):
    def __init__(self, ground: Iterable[int], rank: int):
        if rank < 0:
            raise ValueError("uniform rank must be nonnegative")
        self.ground = frozenset(ground)
        self.r = rank

    def _independent(self, S):
        return len(S) <= self.r

    def __repr__(self):
        return f"Uniform({sorted(self.ground)}, {self.r})"


class Partition(Matroid):
    """Blocks with capacities; elements outside every block are loops."""

    def __init__(self, blocks: Iterable[tuple[Iterable[int], int]], ground: Optional[Iterable[int]] = None):
        self.blocks = tuple((frozenset(b), int(c)) for b, c in blocks)
        self._block_of: dict[int, int] = {}
        for i, (b, c) in enumerate(self.blocks):
            if c < 0:
                raise ValueError("partition capacities must be nonnegative")
            for e in b:
                if e in self._block_of:
                    raise ValueError(f"element {e} in two partition blocks")
                self._block_of[e] = i
        self.ground = frozenset(ground) if ground is not None else frozenset(self._block_of)

    def _independent(self, S):
        counts = [0] * len(self.blocks)
        for e in S:
            i = self._block_of.get(e)
            if i is None:
                return False
            counts[i] += 1
            if counts[i] > self.blocks[i][1]:
                return False
        return True

    def __repr__(self):
        blocks = [(sorted(b), c) for b, c in self.blocks]
        extra = self.ground - frozenset().union(*(b for b, _ in self.blocks))
        return f"Partition({blocks}, ground={sorted(self.ground)})" if extra else f"Partition({blocks})"


class Graphic(Matroid):
    """Cycle matroid of an auxiliary undirected multigraph: independent = acyclic."""

    def __init__(self, aux_edges: Mapping[int, tuple[Hashable, Hashable]]):
        self.aux_edges = {int(k): (u, v) for k, (u, v) in aux_edges.items()}
        self.ground = frozenset(self.aux_edges)

    def _independent(self, S):
        parent: dict[Hashable, Hashable] = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in S:
            u, v = self.aux_edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def __repr__(self):
        return f"Graphic({self.aux_edges})"


class LinearGF2(Matroid):
    """Column matroid over GF(2); each element is an int bit-vector."""

    def __init__(self, columns: Mapping[int, int]):
        self.columns = {int(k): int(v) for k, v in columns.items()}
        if any(v < 0 for v in self.columns.values()):
            raise ValueError("GF(2) columns must be nonnegative bit-vectors")
        self.ground = frozenset(self.columns)

    def _independent(self, S):
        pivots: dict[int, int] = {}
        for e in S:
            v = self.columns[e]
            while v:
                top = v.bit_length() - 1
                if top not in pivots:
                    pivots[top] = v
                    break
                v ^= pivots[top]
            else:
                return False
        return True

    def __repr__(self):
        return f"LinearGF2({self.columns})"


class PredicateMatroid(Matroid):
    """Wrap an arbitrary predicate. Nothing guarantees the axioms; see ``axiom_spot_check``."""

    def __init__(self, ground: Iterable[int], predicate: Callable[[frozenset[int]], bool]):
        self.ground = frozenset(ground)
        self.predicate = predicate

    def _independent(self, S):
        return bool(self.predicate(S))


class Restriction(Matroid):
    def __init__(self, base: Matroid, ground: Iterable[int]):
        self.base = base
        self.ground = frozenset(ground)

    def _independent(self, S):
        return self.base._independent(S)

    def __repr__(self):
        return f"Restriction({self.base!r}, {sorted(self.ground)})"


class ContractedMatroid(Matroid):
    """Minor ``(base / contracted) \\ deleted``.

    ``T`` is independent iff ``T`` plus a basis of the contracted set is
    independent in the base, i.e. r(T + S) = |T| + r(S).
    """

    def __init__(self, base: Matroid, contracted: Iterable[int], deleted: Iterable[int] = ()):
        contracted = frozenset(contracted)
        deleted = frozenset(deleted)
        if isinstance(base, ContractedMatroid):
            contracted |= base.contracted
            deleted |= base.deleted
            base = base.base
        if contracted & deleted:
            raise ValueError("contracted and deleted sets overlap")
        self.base = base
        self.contracted = base._checked(contracted)
        self.deleted = base._checked(deleted)
        self.contracted_basis = base.basis(contracted)
        self.ground = base.ground - contracted - deleted

    def _independent(self, S):
        return self.base._independent(S | self.contracted_basis)

    def restrict(self, T):
        T = self._checked(T)
        return ContractedMatroid(self.base, self.contracted, self.base.ground - self.contracted - T)

    def __repr__(self):
        return f"ContractedMatroid({self.base!r}, /{sorted(self.contracted)}, \\{sorted(self.deleted)})"


class DirectSumMatroid(Matroid):
    """Blockwise direct sum, one block per vertex (keyed by vertex id)."""

    def __init__(self, blocks: Mapping[int, Matroid]):
        self.blocks = dict(blocks)
        self._key_of: dict[int, int] = {}
        for key, m in self.blocks.items():
            for e in m.ground:
                if e in self._key_of:
                    raise ValueError(f"element {e} in two direct-sum blocks")
                self._key_of[e] = key
        self.ground = frozenset(self._key_of)

    @classmethod
    def from_digraph(cls, D, per_vertex: Mapping[int, Matroid] = ()) -> "DirectSumMatroid":
        """One block per vertex on its in-edges; unspecified vertices get ``Free``."""
        per_vertex = dict(per_vertex)
        blocks = {}
        for v in D.vertices:
            ins = frozenset(D.in_edges(v))
            m = per_vertex.pop(v, None)
            if m is None:
                m = Free(ins)
            elif m.ground != ins:
                raise GroundSetError(f"matroid at vertex {v} has ground {sorted(m.ground)}, in-edges are {sorted(ins)}")
            blocks[v] = m
        if per_vertex:
            raise ValueError(f"matroids given for unknown vertices {sorted(per_vertex)}")
        return cls(blocks)

    def block_of(self, e: int) -> int:
        return self._key_of[e]

    def _independent(self, S):
        split: dict[int, set[int]] = {}
        for e in S:
            split.setdefault(self._key_of[e], set()).add(e)
        return all(self.blocks[k]._independent(frozenset(part)) for k, part in split.items())

    def __repr__(self):
        return f"DirectSumMatroid({self.blocks!r})"


def strip_loops(M: Matroid) -> tuple[Matroid, frozenset[int]]:
    loops = M.loops()
    if not loops:
        return M, loops
    return M.restrict(M.ground - loops), loops


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    axiom: Optional[str] = None
    witness: tuple[frozenset[int], ...] = ()

    def __bool__(self):
        return self.ok


def axiom_spot_check(M: Matroid) -> AxiomReport:
    """Exhaustively check the independence axioms on a ground of at most 12 elements."""
    elems: Sequence[int] = sorted(M.ground)
    n = len(elems)
    if n > AXIOM_GROUND_LIMIT:
        raise GuardExceeded(f"axiom check limited to {AXIOM_GROUND_LIMIT} elements, got {n}")

    def as_set(mask: int) -> frozenset[int]:
        return frozenset(elems[i] for i in range(n) if mask >> i & 1)

    full = (1 << n) - 1
    indep = [M.is_independent(as_set(m)) for m in range(1 << n)]
    if not indep[0]:
        return AxiomReport(False, "empty-set", (frozenset(),))
    for m in range(1 << n):
        if not indep[m]:
            continue
        for i in range(n):
            if m >> i & 1 and not indep[m & ~(1 << i)]:
                return AxiomReport(False, "heredity", (as_set(m), as_set(m & ~(1 << i))))
    # With heredity in place, exchange fails for I iff some independent J with
    # |J| = |I| + 1 avoids every x such that I + x is independent.
    maxsize = [0] * (1 << n)
    for m in range(1, 1 << n):
        if indep[m]:
            maxsize[m] = bin(m).count("1")
        else:
            maxsize[m] = max(maxsize[m & ~(1 << i)] for i in range(n) if m >> i & 1)
    for m in range(1 << n):
        if not indep[m]:
            continue
        ext = 0
        for i in range(n):
            if not m >> i & 1 and indep[m | 1 << i]:
                ext |= 1 << i
        blocked = full & ~ext
        size = bin(m).count("1")
        if maxsize[blocked] > size:
            for J in itertools.combinations([i for i in range(n) if blocked >> i & 1], size + 1):
                jm = sum(1 << i for i in J)
                if indep[jm]:
                    return AxiomReport(False, "exchange", (as_set(m), as_set(jm)))
    return AxiomReport(True)
