"""Unit tests for reading and writing instance files."""

import json
import os
import tempfile

import numpy as np
import pytest
from steinerchase.error import ValidationError
from steinerchase.geometry.error import InfeasibleBodyError
from steinerchase.geometry.maxaffine import MaxAffine
from steinerchase.geometry.norm import NormTag
from steinerchase.geometry.polytope import HPolytope
from steinerchase.instances.error import ParseError
from steinerchase.instances.serialization import dumps, load, loads, save
from steinerchase.workfn.request import Body, Func, Instance


@pytest.fixture
def instance():
    """A body with awkward floats followed by a function."""
    third = 1.0 / 3.0
    return Instance(
        2,
        NormTag.LINF,
        [
            Body(HPolytope([[1.0, 0.1], [-1.0, 0.0], [0.0, -1.0], [0.0, 1.0]], [third, 2.0, 1e-300 + 2.0, np.pi])),
            Func(MaxAffine.from_pieces([[0.0, 0.0, 0.0], [0.7, -0.2, 0.1]])),
        ],
    )


def test_round_trip_exact(instance):
    """Tests that text round trips rebuild the instance bit for bit.

    Args:
        instance: Instance fixture.
    """
    text = dumps(instance)
    assert loads(text) == instance
    assert dumps(loads(text)) == text
    # four opening lines, one per request, two closing lines
    assert text.count("\n") == 4 + len(instance.requests) + 2
    assert text.splitlines()[4:-2] == [line for line in text.splitlines() if "\"type\"" in line]


def test_file_round_trip(instance):
    """Tests save and load through a UTF-8 file.

    Args:
        instance: Instance fixture.
    """
    with tempfile.TemporaryDirectory() as temp_dir:
        path = os.path.join(temp_dir, "instance.json")
        save(instance, path)
        assert load(path) == instance


def test_empty_instance():
    """Tests an instance without requests."""
    empty = Instance(3, NormTag.EUCLIDEAN)
    assert loads(dumps(empty)) == empty
    assert json.loads(dumps(empty))["requests"] == []


def test_field_order_irrelevant():
    """Tests that fields may come in any order."""
    text = '{"requests": [{"b": [1, 1], "A": [[1], [-1]], "type": "body"}], "norm": "L1", "dim": 1}'
    instance = loads(text)
    assert instance.norm is NormTag.L1
    assert instance.requests[0].polytope.contains(np.array([0.5]))


def test_bad_json_position():
    """Tests that syntax errors carry their line and column."""
    with pytest.raises(ParseError) as e:
        loads('{\n  "dim": 2,\n  "norm": }')
    assert e.value.line == 3
    assert e.value.column == 11
    assert str(e.value).startswith("line 3, column 11: ")


@pytest.mark.parametrize(
    "document, field",
    [
        ({"dim": 2, "requests": []}, "norm"),
        ({"dim": 2, "norm": "l2", "requests": [], "seed": 1}, "seed"),
        ({"dim": 0, "norm": "l2", "requests": []}, "dim"),
        ({"dim": True, "norm": "l2", "requests": []}, "dim"),
        ({"dim": 2, "norm": "l7", "requests": []}, "norm"),
        ({"dim": 2, "norm": 2, "requests": []}, "norm"),
        ({"dim": 2, "norm": "l2", "requests": {}}, "requests"),
        ({"dim": 1, "norm": "l2", "requests": [{"type": "ball"}]}, "requests[0].type"),
        ({"dim": 1, "norm": "l2", "requests": [{"type": "body", "A": [[1]]}]}, "requests[0].b"),
        ({"dim": 1, "norm": "l2", "requests": [{"type": "body", "A": [[1]], "b": [1], "c": 0}]}, "requests[0].c"),
        ({"dim": 1, "norm": "l2", "requests": [{"type": "body", "A": [[True]], "b": [1]}]}, "requests[0].A"),
        ({"dim": 1, "norm": "l2", "requests": [{"type": "body", "A": [[1], [-1]], "b": ["1", 1]}]}, "requests[0].b"),
        ({"dim": 1, "norm": "l2", "requests": [{"type": "func", "pieces": [[1, 0]]}]}, "requests[0].pieces"),
        ({"dim": 1, "norm": "l2", "requests": [{"type": "func", "pieces": [[0]]}]}, "requests[0].pieces"),
        ({"dim": 2, "norm": "l2", "requests": [{"type": "func", "pieces": [[0, 0]]}]}, "requests[0]"),
    ],
)
def test_invalid_documents(document, field):
    """Tests that every invalid document names the offending field.

    Args:
        document: The JSON document.
        field: Expected field.
    """
    with pytest.raises(ValidationError) as e:
        loads(json.dumps(document))
    assert e.value.field == field


def test_infeasible_body():
    """Tests that infeasible bodies are rejected while loading."""
    text = json.dumps({"dim": 1, "norm": "l1", "requests": [{"type": "body", "A": [[1], [-1]], "b": [0, -1]}]})
    with pytest.raises(InfeasibleBodyError) as e:
        loads(text)
    assert e.value.field == "requests[0]"


def test_missing_file():
    """Tests that a missing file is an OS error."""
    with pytest.raises(FileNotFoundError):
        load("/definitely/not/here.json")


def test_negative_zero_keeps_sign():
    """Tests that -0.0 survives a text round trip with its sign bit."""
    instance = Instance(
        2,
        NormTag.L1,
        [
            Body(HPolytope([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]], [1.0, -0.0, 1.0, 1.0])),
            Func(MaxAffine.from_pieces([[0.0, 0.0, 0.0], [-0.0, 1.0, -0.0]])),
        ],
    )
    text = dumps(instance)
    assert "-0.0" in text
    loaded = loads(text)
    assert np.signbit(loaded.requests[0].polytope.b[1])
    assert np.signbit(loaded.requests[1].function.pieces[1, 0])
    assert np.signbit(loaded.requests[1].function.pieces[1, 2])
    assert not np.signbit(loaded.requests[0].polytope.b[0])
    assert dumps(loaded) == text
