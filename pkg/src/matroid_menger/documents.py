"""JSON instance and certificate documents.

Instance::

    {"version": "matroid-menger/1",
     "vertices": ["s", "a", "t"],            # dense ids in this order
     "s": "s", "t": "t",
     "edges": [{"id": 0, "tail": "s", "head": "a"}, ...],
     "matroids": {"t": {"type": "uniform", "rank": 1}, ...}}

Matroid specs: ``free``; ``uniform`` with ``rank``; ``partition`` with
``blocks: [{"edges": [...], "cap": c}]``; ``gf2`` with ``columns`` mapping
edge id strings to bit strings (at most 64 bits); ``graphic`` with
``aux_edges`` mapping edge id strings to ``[u, v]``. Vertices without an
entry are free. Each spec must cover exactly the in-edges of its vertex.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass
from typing import Any, Optional, Union

from .digraph import Digraph, Edge
from .errors import InstanceError
from .matroid import DirectSumMatroid, Free, Graphic, LinearGF2, Matroid, Partition, Uniform
from .solver import Certificate, VerificationReport

log = logging.getLogger(__name__)

INSTANCE_VERSION = "matroid-menger/1"
CERTIFICATE_VERSION = "matroid-menger-cert/1"
GF2_MAX_BITS = 64


@dataclass(frozen=True)
class Instance:
    document: dict
    digraph: Digraph
    matroid: DirectSumMatroid
    loops: frozenset[int]
    full_digraph: Digraph
    full_matroid: DirectSumMatroid

    def vertex_id(self, name: str) -> int:
        return self.document["vertices"].index(name)


def _load(data: Union[bytes, str, dict]) -> Any:
    if isinstance(data, dict):
        return data
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InstanceError(f"not UTF-8: {exc}") from exc
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} col {exc.colno}") from exc


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceError("expected an integer", where)
    return value


def _edge_key(key, where: str) -> int:
    try:
        return int(key)
    except (TypeError, ValueError):
        raise InstanceError(f"edge id key {key!r} is not an integer", where) from None


def _check_cover(keys: list[int], ins: frozenset[int], where: str) -> None:
    seen = set()
    for k in keys:
        if k in seen:
            raise InstanceError(f"edge {k} listed twice", where)
        seen.add(k)
        if k not in ins:
            raise InstanceError(f"edge {k} is not an in-edge of this vertex", where)
    missing = ins - seen
    if missing:
        raise InstanceError(f"uncovered in-edge {sorted(missing)}", where)


def matroid_from_spec(spec: Any, ins: frozenset[int], where: str) -> Matroid:
    if not isinstance(spec, dict) or "type" not in spec:
        raise InstanceError("matroid spec must be an object with a type", where)
    kind = spec["type"]
    if kind == "free":
        return Free(ins)
    if kind == "uniform":
        r = _int(spec.get("rank"), f"{where}.rank")
        if r < 0:
            raise InstanceError("rank must be nonnegative", f"{where}.rank")
        return Uniform(ins, r)
    if kind == "partition":
        blocks = spec.get("blocks")
        if not isinstance(blocks, list):
            raise InstanceError("blocks must be a list", f"{where}.blocks")
        parsed, keys = [], []
        for i, b in enumerate(blocks):
            bw = f"{where}.blocks[{i}]"
            if not isinstance(b, dict) or not isinstance(b.get("edges"), list):
                raise InstanceError("block needs an edges list", bw)
            members = [_int(e, f"{bw}.edges") for e in b["edges"]]
            cap = _int(b.get("cap"), f"{bw}.cap")
            if cap < 0:
                raise InstanceError("cap must be nonnegative", f"{bw}.cap")
            keys.extend(members)
            parsed.append((members, cap))
        _check_cover(keys, ins, f"{where}.blocks")
        return Partition(parsed, ground=ins)
    if kind == "gf2":
        cols = spec.get("columns")
        if not isinstance(cols, dict):
            raise InstanceError("columns must be an object", f"{where}.columns")
        parsed = {}
        for k, bits in cols.items():
            cw = f"{where}.columns.{k}"
            if not isinstance(bits, str) or not bits or set(bits) - {"0", "1"}:
                raise InstanceError("column must be a nonempty bit string", cw)
            if len(bits) > GF2_MAX_BITS:
                raise InstanceError(f"column wider than {GF2_MAX_BITS} bits", cw)
            parsed[_edge_key(k, cw)] = int(bits, 2)
        _check_cover(list(parsed), ins, f"{where}.columns")
        return LinearGF2(parsed)
    if kind == "graphic":
        aux = spec.get("aux_edges")
        if not isinstance(aux, dict):
            raise InstanceError("aux_edges must be an object", f"{where}.aux_edges")
        parsed = {}
        for k, ends in aux.items():
            aw = f"{where}.aux_edges.{k}"
            if not isinstance(ends, list) or len(ends) != 2:
                raise InstanceError("aux edge must be a [u, v] pair", aw)
            parsed[_edge_key(k, aw)] = (ends[0], ends[1])
        _check_cover(list(parsed), ins, f"{where}.aux_edges")
        return Graphic(parsed)
    raise InstanceError(f"unknown matroid type {kind!r}", f"{where}.type")


def parse_instance(data: Union[bytes, str, dict]) -> Instance:
    """Validate a document and build the loop-free instance (matroid loops are removed with a warning)."""
    doc = _load(data)
    if not isinstance(doc, dict):
        raise InstanceError("instance must be a JSON object")
    if doc.get("version") != INSTANCE_VERSION:
        raise InstanceError(f"expected version {INSTANCE_VERSION!r}", "$.version")
    names = doc.get("vertices")
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise InstanceError("vertices must be a list of names", "$.vertices")
    index = {}
    for i, n in enumerate(names):
        if n in index:
            raise InstanceError(f"duplicate vertex {n!r}", f"$.vertices[{i}]")
        index[n] = i

    def vertex(name, where):
        if name not in index:
            raise InstanceError(f"unknown vertex {name!r}", where)
        return index[name]

    s = vertex(doc.get("s"), "$.s")
    t = vertex(doc.get("t"), "$.t")
    if s == t:
        raise InstanceError("s and t must differ", "$.t")
    raw_edges = doc.get("edges")
    if not isinstance(raw_edges, list):
        raise InstanceError("edges must be a list", "$.edges")
    edges, seen = [], set()
    for i, e in enumerate(raw_edges):
        where = f"$.edges[{i}]"
        if not isinstance(e, dict):
            raise InstanceError("edge must be an object", where)
        eid = _int(e.get("id"), f"{where}.id")
        if eid < 0:
            raise InstanceError("edge ids must be nonnegative", f"{where}.id")
        if eid in seen:
            raise InstanceError(f"duplicate edge id {eid}", f"{where}.id")
        seen.add(eid)
        edges.append(Edge(eid, vertex(e.get("tail"), f"{where}.tail"), vertex(e.get("head"), f"{where}.head")))
    D = Digraph(len(names), tuple(edges), s, t, tuple(names))
    specs = doc.get("matroids", {})
    if not isinstance(specs, dict):
        raise InstanceError("matroids must be an object", "$.matroids")
    blocks = {}
    for name, spec in specs.items():
        v = vertex(name, f"$.matroids.{name}")
        blocks[v] = matroid_from_spec(spec, frozenset(D.in_edges(v)), f"$.matroids.{name}")
    full = DirectSumMatroid.from_digraph(D, blocks)
    loops = full.loops()
    if loops:
        log.warning("removing matroid loops %s", sorted(loops))
        D0 = D.without(loops)
        M0 = DirectSumMatroid.from_digraph(
            D0, {v: m.restrict(m.ground - loops) for v, m in full.blocks.items()}
        )
    else:
        D0, M0 = D, full
    return Instance(doc, D0, M0, loops, D, full)


def dump_json(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def instance_hash(doc: dict) -> str:
    canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def serialize_instance(inst: Instance) -> str:
    return dump_json(inst.document)


def report_to_dict(report: VerificationReport) -> dict:
    return {"ok": report.ok, "clause": report.clause, "detail": report.detail}


def certificate_to_document(
    inst: Instance, cert: Certificate, engine: str, report: Optional[VerificationReport] = None
) -> dict:
    D = inst.digraph
    doc = {
        "version": CERTIFICATE_VERSION,
        "engine": engine,
        "instance_sha256": instance_hash(inst.document),
        "paths": [list(p) for p in cert.paths],
        "cut": sorted(D.name(v) for v in cert.cut),
        "cover": sorted(cert.cover),
    }
    if report is not None:
        doc["verification"] = report_to_dict(report)
    return doc


def parse_certificate(data: Union[bytes, str, dict], inst: Instance) -> tuple[Certificate, dict]:
    doc = _load(data)
    if not isinstance(doc, dict):
        raise InstanceError("certificate must be a JSON object")
    if doc.get("version") != CERTIFICATE_VERSION:
        raise InstanceError(f"expected version {CERTIFICATE_VERSION!r}", "$.version")
    paths = doc.get("paths")
    if not isinstance(paths, list) or not all(isinstance(p, list) for p in paths):
        raise InstanceError("paths must be a list of edge-id lists", "$.paths")
    parsed_paths = tuple(tuple(_int(e, f"$.paths[{i}]") for e in p) for i, p in enumerate(paths))
    cut = doc.get("cut")
    if not isinstance(cut, list):
        raise InstanceError("cut must be a list of vertex names", "$.cut")
    names = inst.document["vertices"]
    ids = []
    for i, n in enumerate(cut):
        if n not in names:
            raise InstanceError(f"unknown vertex {n!r}", f"$.cut[{i}]")
        ids.append(names.index(n))
    cover = doc.get("cover")
    if not isinstance(cover, list):
        raise InstanceError("cover must be a list of edge ids", "$.cover")
    cert = Certificate(parsed_paths, frozenset(ids), frozenset(_int(e, "$.cover") for e in cover))
    meta = {k: doc.get(k) for k in ("engine", "instance_sha256", "verification")}
    return cert, meta
