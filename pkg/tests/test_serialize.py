from __future__ import annotations

import json
import random

import pytest

from qvariety.errors import ParseError
from qvariety.generators import grassmannian, milnor_hypersurface
from qvariety.harness import rand_object
from qvariety.interp import RegularFunction1D
from qvariety.qset import QAlgebraicSet, QRegularMap
from qvariety.ratpoly import parse_poly
from qvariety.serialize import dumps, from_json, loads, roundtrip, to_json


def test_set_roundtrip_is_byte_identical():
    for V in (grassmannian(2, 1), milnor_hypersurface(1, 2)):
        text = dumps(to_json(V))
        assert roundtrip(text) == text
        assert from_json(loads(text)) == V


def test_unnormalized_rationals():
    doc = {"ambient_dim": 1, "generators": ["2/4*x1 - 6/3"]}
    first = roundtrip(json.dumps(doc))
    assert json.loads(first)["generators"] == ["1/2*x1 - 2"]
    assert roundtrip(first) == first


def test_map_with_certificates():
    V = QAlgebraicSet(2, (parse_poly("x1^2 + x2^2 - 1"),))
    f = QRegularMap(V, (parse_poly("x1", 2),), parse_poly("x2", 2), "samples", (("3/5", "4/5"),), "slope")
    text = dumps(to_json(f))
    assert roundtrip(text) == text
    assert from_json(loads(text)) == f


def test_regular_function_roundtrip():
    g = RegularFunction1D(parse_poly("37/175*x1", 1), 1)
    assert from_json(to_json(g)) == g


def test_random_objects():
    rng = random.Random(17)
    for _ in range(100):
        text = dumps(to_json(rand_object(rng)))
        assert roundtrip(text) == text


@pytest.mark.parametrize("text", [
    "{not json",
    '{"ambient_dim": 2}',
    '{"ambient_dim": "2", "generators": []}',
    '{"ambient_dim": 1, "generators": ["x1 +"]}',
    '{"something": 1}',
    '{"ambient_dim": 1, "generators": ["x1"], "certificates": {"notes": [3]}}',
])
def test_malformed_documents(text):
    with pytest.raises(ParseError):
        roundtrip(text)
