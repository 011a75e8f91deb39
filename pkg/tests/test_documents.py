from __future__ import annotations

import copy
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matroid_menger.documents import (
    certificate_to_document,
    dump_json,
    instance_hash,
    parse_certificate,
    parse_instance,
    serialize_instance,
)
from matroid_menger.errors import InstanceError
from matroid_menger.generate import KINDS, generate_instance
from matroid_menger.matroid import LinearGF2
from matroid_menger.solver import solve, verify_certificate

from cases import FLAG_DOCUMENT, flag


def test_flag_document_parses():
    inst = parse_instance(json.dumps(FLAG_DOCUMENT).encode())
    assert len(inst.digraph.edges) == 6
    assert isinstance(inst.matroid.blocks[4], LinearGF2)
    D, M = flag()
    assert inst.digraph.edges == D.edges
    for S in ({3, 4}, {3, 5}, {0, 3, 5}):
        assert inst.matroid.is_independent(S) == M.is_independent(S)


def test_round_trip():
    inst = parse_instance(FLAG_DOCUMENT)
    again = parse_instance(serialize_instance(inst))
    assert again.document == inst.document
    assert again.digraph == inst.digraph


def test_uncovered_in_edge():
    doc = copy.deepcopy(FLAG_DOCUMENT)
    del doc["matroids"]["t"]["columns"]["5"]
    with pytest.raises(InstanceError) as err:
        parse_instance(doc)
    assert "uncovered in-edge" in err.value.message
    assert err.value.location == "$.matroids.t.columns"


def test_empty_edge_list():
    doc = dict(FLAG_DOCUMENT, edges=[], matroids={})
    inst = parse_instance(doc)
    assert solve(inst.digraph, inst.matroid).paths == ()


@pytest.mark.parametrize(
    "patch, location",
    [
        ({"version": "x"}, "$.version"),
        ({"s": "zz"}, "$.s"),
        ({"t": "s"}, "$.t"),
        ({"vertices": ["s", "s"]}, "$.vertices[1]"),
        ({"edges": [{"id": 0, "tail": "s", "head": "a"}, {"id": 0, "tail": "a", "head": "t"}]}, "$.edges[1].id"),
        ({"edges": [{"id": 0, "tail": "s", "head": "q"}]}, "$.edges[0].head"),
        ({"edges": [{"id": True, "tail": "s", "head": "a"}]}, "$.edges[0].id"),
        ({"matroids": {"t": {"type": "weird"}}}, "$.matroids.t.type"),
        ({"matroids": {"t": {"type": "uniform", "rank": -1}}}, "$.matroids.t.rank"),
        ({"matroids": {"t": {"type": "gf2", "columns": {"3": "12", "4": "1", "5": "1"}}}}, "$.matroids.t.columns.3"),
        ({"matroids": {"a": {"type": "partition", "blocks": [{"edges": [0], "cap": 1}, {"edges": [0], "cap": 1}]}}}, "$.matroids.a.blocks"),
        ({"matroids": {"a": {"type": "graphic", "aux_edges": {"0": [1]}}}}, "$.matroids.a.aux_edges.0"),
    ],
)
def test_schema_errors_have_locations(patch, location):
    doc = dict(copy.deepcopy(FLAG_DOCUMENT), **patch)
    with pytest.raises(InstanceError) as err:
        parse_instance(doc)
    assert err.value.location == location


def test_invalid_json_location():
    with pytest.raises(InstanceError) as err:
        parse_instance(b'{"version": ')
    assert err.value.location.startswith("line 1")


def test_loops_are_stripped(caplog):
    doc = copy.deepcopy(FLAG_DOCUMENT)
    doc["matroids"]["a"] = {"type": "uniform", "rank": 0}
    inst = parse_instance(doc)
    assert inst.loops == {0}
    assert 0 not in inst.digraph.edge_ids and 0 in inst.full_digraph.edge_ids
    assert "removing matroid loops" in caplog.text
    cert = solve(inst.digraph, inst.matroid)
    assert len(cert.paths) == 1


def test_certificate_round_trip():
    inst = parse_instance(FLAG_DOCUMENT)
    cert = solve(inst.digraph, inst.matroid)
    doc = certificate_to_document(inst, cert, "solve", verify_certificate(inst.digraph, inst.matroid, cert))
    assert doc["cut"] == ["a", "b", "c", "t"]
    assert doc["cover"] == [0, 1]
    assert doc["verification"] == {"ok": True, "clause": None, "detail": ""}
    parsed, meta = parse_certificate(dump_json(doc), inst)
    assert parsed == cert
    assert meta["instance_sha256"] == instance_hash(FLAG_DOCUMENT)


def test_certificate_unknown_vertex():
    inst = parse_instance(FLAG_DOCUMENT)
    doc = {"version": "matroid-menger-cert/1", "paths": [], "cut": ["zz"], "cover": []}
    with pytest.raises(InstanceError) as err:
        parse_certificate(doc, inst)
    assert err.value.location == "$.cut[0]"


def test_hash_ignores_key_order():
    shuffled = dict(reversed(list(FLAG_DOCUMENT.items())))
    assert instance_hash(shuffled) == instance_hash(FLAG_DOCUMENT)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.integers(2, 7), st.integers(0, 12), st.sets(st.sampled_from(KINDS), min_size=1))
def test_generated_documents_round_trip(seed, n, m, kinds):
    doc = generate_instance(seed, n, m, sorted(kinds))
    assert dump_json(doc) == dump_json(generate_instance(seed, n, m, sorted(kinds)))
    inst = parse_instance(dump_json(doc))
    assert parse_instance(serialize_instance(inst)).document == doc
    assert all(e.head != inst.digraph.s and e.tail != inst.digraph.t for e in inst.full_digraph.edges)
