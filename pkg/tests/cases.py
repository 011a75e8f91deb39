"""Named instances and corpora shared by the test modules.

FLAG: s->a (e1), s->b (e2), b->c (e3), a->t (h1), b->t (h2), c->t (h3); the
matroid at t is GF(2) with h1 = h2 = (1,0), h3 = (0,1); everything else free.
PAR1: two parallel edges p1, p2 from s to t, uniform of rank 1 at t.
"""

from __future__ import annotations

import itertools
import random

from matroid_menger.digraph import Digraph
from matroid_menger.documents import INSTANCE_VERSION, parse_instance
from matroid_menger.generate import generate_instance
from matroid_menger.matroid import DirectSumMatroid, Free, LinearGF2, Partition, Uniform

S, A, B, C, T = range(5)
E1, E2, E3, H1, H2, H3 = range(6)
P1, P2 = 0, 1

FLAG_DOCUMENT = {
    "version": INSTANCE_VERSION,
    "vertices": ["s", "a", "b", "c", "t"],
    "s": "s",
    "t": "t",
    "edges": [
        {"id": 0, "tail": "s", "head": "a"},
        {"id": 1, "tail": "s", "head": "b"},
        {"id": 2, "tail": "b", "head": "c"},
        {"id": 3, "tail": "a", "head": "t"},
        {"id": 4, "tail": "b", "head": "t"},
        {"id": 5, "tail": "c", "head": "t"},
    ],
    "matroids": {"t": {"type": "gf2", "columns": {"3": "10", "4": "10", "5": "01"}}},
}


def flag():
    D = Digraph.build(5, [(S, A), (S, B), (B, C), (A, T), (B, T), (C, T)], S, T, names="s a b c t".split())
    M_t = LinearGF2({H1: 0b10, H2: 0b10, H3: 0b01})
    return D, DirectSumMatroid.from_digraph(D, {T: M_t})


def par1(rank: int = 1):
    D = Digraph.build(2, [(0, 1), (0, 1)], 0, 1, names=["s", "t"])
    return D, DirectSumMatroid.from_digraph(D, {1: Uniform({P1, P2}, rank)})


def all_free(D):
    return DirectSumMatroid.from_digraph(D)


def _relevant_pairs(n):
    s, t = 0, n - 1
    return [(u, v) for u in range(n) for v in range(n) if u != v and u != t and v != s]


def _canonical(arcs, n):
    if n < 4:
        return True
    swap = {0: 0, 1: 2, 2: 1, 3: 3}
    image = tuple(sorted((swap[u], swap[v]) for u, v in arcs))
    return tuple(arcs) <= image


def _vertex_options(ins):
    d = len(ins)
    opts = [Free(ins)]
    if d >= 2:
        opts.append(Uniform(ins, 1))
    if d >= 3:
        half = (d + 1) // 2
        opts.append(Uniform(ins, 2))
        opts.append(Partition([(ins[:half], 1), (ins[half:], 1)]))
    return opts


def exhaustive_small_instances():
    """Every instance with at most 4 vertices and 6 edges over the s->t-relevant arcs.

    Edges never enter s or leave t. Four-vertex arc multisets are taken up to
    swapping the two inner vertices. Each vertex gets every distinct member
    of {free, uniform(1), uniform(2), partition into two halves with cap 1}.
    """
    for n in (2, 3, 4):
        pairs = _relevant_pairs(n)
        for m in range(7):
            for arcs in itertools.combinations_with_replacement(pairs, m):
                if not _canonical(arcs, n):
                    continue
                D = Digraph.build(n, arcs, 0, n - 1)
                choices = []
                for v in range(n):
                    ins = list(D.in_edges(v))
                    if ins:
                        choices.append([(v, o) for o in _vertex_options(ins)])
                for combo in itertools.product(*choices):
                    yield D, DirectSumMatroid.from_digraph(D, dict(combo))


def random_corpus(count: int = 1000, seed: int = 20240601):
    """Seeded generator instances with 3-7 vertices and up to 12 edges, full matroid zoo."""
    rng = random.Random(seed)
    for _ in range(count):
        s = rng.randrange(2**31)
        n = rng.randint(3, 7)
        m = rng.randint(n - 1, 12)
        yield s, parse_instance(generate_instance(s, n, m))


def random_free_digraphs(count: int = 200, seed: int = 7):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, 9)
        m = rng.randint(0, 20)
        arcs = [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
        D = Digraph.build(n, arcs, 0, n - 1)
        yield D, all_free(D)
