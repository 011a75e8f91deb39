"""Seeded random instance documents.

Edges never enter s or leave t (such edges cannot lie on an s->t path). About
30% of the vertices with in-edges get a non-free matroid; GF(2) columns have
dimension at most 4 so that dependencies are common. Output depends only on
the arguments, so a fixed seed gives byte-identical documents.
"""

from __future__ import annotations

import random
from typing import Sequence

from .documents import INSTANCE_VERSION

KINDS = ("free", "uniform", "partition", "gf2", "graphic")
NON_FREE_SHARE = 0.3


def _matroid_spec(rng: random.Random, kind: str, ins: Sequence[int]) -> dict:
    d = len(ins)
    if kind == "uniform":
        return {"type": "uniform", "rank": rng.randint(1, max(1, d - 1))}
    if kind == "partition":
        groups: list[list[int]] = [[], []]
        for e in ins:
            groups[rng.randrange(2)].append(e)
        blocks = [{"edges": g, "cap": rng.randint(1, len(g))} for g in groups if g]
        return {"type": "partition", "blocks": blocks}
    if kind == "gf2":
        dim = rng.randint(1, 4)
        return {
            "type": "gf2",
            "columns": {str(e): format(rng.randint(1, (1 << dim) - 1), f"0{dim}b") for e in ins},
        }
    if kind == "graphic":
        k = rng.randint(2, 3)
        aux = {}
        for e in ins:
            u, v = rng.sample(range(k), 2)
            aux[str(e)] = [u, v]
        return {"type": "graphic", "aux_edges": aux}
    return {"type": "free"}


def generate_instance(seed: int, vertices: int, edges: int, kinds: Sequence[str] = KINDS) -> dict:
    if vertices < 2:
        raise ValueError("need at least two vertices")
    unknown = set(kinds) - set(KINDS)
    if unknown:
        raise ValueError(f"unknown matroid kinds {sorted(unknown)}")
    rng = random.Random(seed)
    names = ["s"] + [f"v{i}" for i in range(1, vertices - 1)] + ["t"]
    s, t = 0, vertices - 1
    arcs = []
    for i in range(edges):
        while True:
            tail = rng.choice([v for v in range(vertices) if v != t])
            head = rng.choice([v for v in range(vertices) if v != s])
            if tail != head:
                break
        arcs.append({"id": i, "tail": names[tail], "head": names[head]})
    non_free = [k for k in kinds if k != "free"]
    matroids = {}
    for v in range(vertices):
        ins = [a["id"] for a in arcs if a["head"] == names[v]]
        if not ins or not non_free:
            continue
        if "free" in kinds and rng.random() >= NON_FREE_SHARE:
            continue
        matroids[names[v]] = _matroid_spec(rng, rng.choice(non_free), ins)
    return {
        "version": INSTANCE_VERSION,
        "vertices": names,
        "s": "s",
        "t": "t",
        "edges": arcs,
        "matroids": matroids,
    }
