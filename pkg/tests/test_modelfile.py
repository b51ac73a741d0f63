"""Model file format: schema conformance, canonical bytes, parser diagnostics."""

import json

import jsonschema
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stexo.catalog import REGISTRY, fixture_documents, get_fixture
from stexo.errors import ValidationError
from stexo.modelfile import (
    MODEL_FILE_SCHEMA,
    canonical_bytes,
    model_document,
    parse_bytes,
    reexport,
)
from stexo.simplicial import Cochain

SMALL = ("rp-w2-zero", "rp-kreck", "z2-remark", "z2-secondary")
BIG = ("z4-semidirect", "d4-reflection", "k2-stress")


@pytest.fixture(scope="module")
def small_documents():
    return {name: fixture_documents(name) for name in SMALL}


@pytest.fixture(scope="module")
def rp_doc(small_documents):
    return small_documents["rp-w2-zero"]["base"]


def test_registry_documents_validate_against_schema(small_documents):
    for name, docs in small_documents.items():
        for part, doc in docs.items():
            jsonschema.validate(doc, MODEL_FILE_SCHEMA)


def test_small_fixture_round_trips_are_byte_stable(small_documents):
    for name, docs in small_documents.items():
        for part, doc in docs.items():
            blob = canonical_bytes(doc)
            parsed = parse_bytes(blob, default_name=f"{name}-{part}")
            assert canonical_bytes(reexport(parsed)) == blob
            # a second serialization of the same document is identical
            assert canonical_bytes(doc) == blob


@pytest.mark.slow
@pytest.mark.parametrize("name", BIG)
def test_big_fixture_round_trips_are_byte_stable(name):
    for part, doc in fixture_documents(name).items():
        jsonschema.validate(doc, MODEL_FILE_SCHEMA)
        blob = canonical_bytes(doc)
        assert canonical_bytes(reexport(parse_bytes(blob))) == blob


def test_canonical_bytes_ignore_key_order(rp_doc):
    scrambled = json.loads(json.dumps(rp_doc))
    scrambled = dict(reversed(list(scrambled.items())))
    assert canonical_bytes(scrambled) == canonical_bytes(rp_doc)


def test_parsed_model_carries_normal_type_data(rp_doc):
    parsed = parse_bytes(canonical_bytes(rp_doc))
    assert set(parsed.cochains) == {"w1", "w2"}
    assert parsed.cd_at_most_3 is None
    fx = get_fixture("rp-w2-zero")
    assert parsed.model.cells == fx.nt.base.cells
    assert np.array_equal(parsed.cochains["w1"].values, fx.nt.w1.values)


def test_cover_document_reassembles(small_documents):
    docs = small_documents["rp-kreck"]
    base = parse_bytes(canonical_bytes(docs["base"]))
    cover = parse_bytes(canonical_bytes(docs["cover"]))
    assert cover.involution is not None
    proj = cover.maps["projection"].from_model_to(cover.model, base.model)
    assert proj.validate() == []
    section = base.maps["section"].into_parent(base.model)
    assert section.target is base.model


def test_all_registry_names_export_something():
    for name in REGISTRY:
        docs = fixture_documents(name)
        assert "base" in docs


def _corrupt(doc, mutate):
    clone = json.loads(canonical_bytes(doc))
    mutate(clone)
    return canonical_bytes(clone)


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda d: d.update(surprise=1), "unknown"),
        (lambda d: d.update(format_version=99), "format_version"),
        (lambda d: d["cells"].append(7), "cells"),
        (lambda d: d["faces"][0][0].__setitem__(0, {"cell": 10 ** 6}), "violation"),
        (lambda d: d["cochains"]["w1"].__setitem__("degree", -1), "degree"),
        (
            lambda d: d["cochains"]["w1"].__setitem__("support", [0, 0]),
            "support",
        ),
        (
            lambda d: d.update(assertions={"cd_at_most_3": {"value": True, "provenance": ""}}),
            "provenance",
        ),
        (lambda d: d.update(assertions={"mystery": None}), "mystery"),
    ],
)
def test_parser_rejects_corrupt_documents(rp_doc, mutate, fragment):
    with pytest.raises(ValidationError) as err:
        parse_bytes(_corrupt(rp_doc, mutate))
    assert fragment in str(err.value)


def test_parser_rejects_non_json():
    with pytest.raises(ValidationError) as err:
        parse_bytes(b"{this is not json")
    assert "not a JSON model file" in str(err.value)


def test_parser_rejects_fixed_point_involution(small_documents):
    doc = json.loads(canonical_bytes(small_documents["rp-kreck"]["cover"]))
    doc["involution"][0] = [0, 1]  # identity on vertices has fixed cells
    with pytest.raises(ValidationError):
        parse_bytes(canonical_bytes(doc))


def test_model_document_rejects_foreign_cochain():
    a = get_fixture("rp-w2-zero").nt
    b = get_fixture("z2-remark").nt
    with pytest.raises(ValidationError):
        model_document(a.base, cochains={"w1": b.w1})


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_arbitrary_supports_round_trip(data):
    model = get_fixture("z2-remark").nt.base
    degree = data.draw(st.integers(min_value=0, max_value=model.max_degree))
    n = model.cells[degree]
    if n:
        bits = data.draw(st.sets(st.integers(min_value=0, max_value=n - 1)))
    else:
        bits = set()
    values = np.zeros(n, dtype=np.uint8)
    for i in bits:
        values[i] = 1
    doc = model_document(model, cochains={"u": Cochain(model, degree, values)})
    parsed = parse_bytes(canonical_bytes(doc))
    assert np.array_equal(parsed.cochains["u"].values, values)
