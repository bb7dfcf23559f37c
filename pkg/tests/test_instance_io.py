import json

import pytest
from hypothesis import given, settings, strategies as st

from electiongame import fixtures, instance_io as io
from electiongame.errors import ParseError, UnsortedCandidates
from electiongame.generate import GeneratorConfig, generate


def test_fixture_table1():
    g = io.load("fixtures:table1")
    assert g.table == tuple(tuple(tuple(float(x) for x in c) for c in p) for p in fixtures.TABLE1)
    assert g.beta == 100


def test_parametric_fixture():
    g = io.load("fixtures:table3:m=5,beta=100,epsilon=1e-6")
    assert g.m == 5 and g.metadata["epsilon"] == 1e-6
    with pytest.raises(KeyError):
        io.load("fixtures:nope")


def test_store_load_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    io.store(fixtures.table2(), a)
    io.store(io.load(a), b)
    assert a.read_bytes() == b.read_bytes()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9))
def test_roundtrip_bit_exact(seed):
    g = generate(GeneratorConfig(m=3, n=3, seed=seed))
    back = io.parse(io.render(g))
    assert back == g and back.table == g.table
    assert back.metadata["seed"] == seed


def test_malformed_json_line():
    with pytest.raises(ParseError) as exc:
        io.parse('{\n  "beta": 100,\n  "parties": [\n}')
    assert exc.value.line == 4


@pytest.mark.parametrize("doc,field", [
    ({"parties": []}, "beta"),
    ({"beta": "x", "parties": []}, "beta"),
    ({"beta": 100, "parties": {}}, "parties"),
    ({"beta": 100, "parties": [{"candidates": [{"utilities": [1, "a"]}]}]},
     "parties[0].candidates[0].utilities[1]"),
    ({"beta": 100, "parties": [], "format": "other"}, "format"),
    ({"beta": 100, "parties": [], "version": 9}, "version"),
])
def test_field_errors(doc, field):
    with pytest.raises(ParseError) as exc:
        io.parse(json.dumps(doc))
    assert exc.value.field == field


def test_normalize_flag():
    doc = {"beta": 100, "parties": [
        {"candidates": [{"utilities": [1, 0]}, {"utilities": [3, 0]}]},
        {"candidates": [{"utilities": [0, 5]}]},
    ]}
    with pytest.raises(UnsortedCandidates):
        io.parse(json.dumps(doc))
    g = io.parse(json.dumps(doc), normalize=True)
    assert g.table[0][0] == (3, 0)


def test_names_survive():
    doc = {"beta": 10, "parties": [{"name": "Left", "candidates": [{"utilities": [1, 0]}]},
                                   {"name": "Right", "candidates": [{"utilities": [0, 1]}]}]}
    g = io.parse(json.dumps(doc))
    assert [p.name for p in g.parties] == ["Left", "Right"]
    assert '"name": "Left"' in io.render(g)
