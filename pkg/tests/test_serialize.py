from __future__ import annotations

import json

import numpy as np
import pytest

from fusionforge.errors import SchemaError
from fusionforge.families import from_descriptor
from fusionforge.serialize import canonical_dumps, extension_to_dict, from_json, md_to_dict, to_json


@pytest.mark.parametrize("desc", ["sl2:k=3", "vir:u=2,v=5", "lattice:gram=[[2,1],[1,2]]"])
def test_round_trip_is_lossless(desc):
    md = from_descriptor(desc)
    back = from_json(to_json(md))
    assert back.labels == md.labels
    assert back.h == md.h
    assert back.central_charge == md.central_charge
    assert np.array_equal(back.S, md.S)
    assert np.array_equal(back.N, md.N)


def test_schema_tag_is_checked():
    d = md_to_dict(from_descriptor("sl2:k=1"))
    d["schema"] = "other/2"
    with pytest.raises(SchemaError):
        from_json(json.dumps(d))


def test_canonical_output():
    text = canonical_dumps({"b": -0.0, "a": [1 / 3, 2.0000000000000004], "c": 1e-20})
    assert text == canonical_dumps({"c": 1e-20, "a": [1 / 3, 2.0000000000000004], "b": -0.0})
    d = json.loads(text)
    assert list(d) == ["a", "b", "c"]
    assert d["b"] == 0 and not text.count("-0")
    assert d["a"] == [0.333333333333333, 2.0]


def test_extension_export(free_fermion):
    d = extension_to_dict(free_fermion)
    assert d["statistics"] == "1/2Z-VOSA"
    assert d["basis"] == ["(1,1)+", "(1,1)-", "(1,2)+"]
    assert d["adim"]["(1,2)-"] == 0.0
    first = canonical_dumps(d)
    assert first == canonical_dumps(extension_to_dict(free_fermion))
