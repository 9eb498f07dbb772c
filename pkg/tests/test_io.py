import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import e237, random_definite_graph
from pgcycles import DualGraph, GenericOn, GraphError, Unknown, blow_up
from pgcycles.graph import Cycle, format_rational, parse_rational
from pgcycles.io import InputError, dumps, load_json, parse_cycle, parse_ideal, parse_optional_int, to_jsonable


@given(st.fractions(max_denominator=10**6))
def test_rational_round_trip(q):
    assert parse_rational(format_rational(q)) == q
    assert json.loads(json.dumps(format_rational(q))) == format_rational(q)


def test_floats_and_bools_are_not_coefficients():
    with pytest.raises(TypeError):
        parse_rational(0.5)
    with pytest.raises(TypeError):
        parse_rational(True)
    with pytest.raises(GraphError):
        parse_cycle(e237(), {"E0": 0.5})


def test_graph_and_cycle_json_round_trip():
    rng = random.Random(12)
    for _ in range(30):
        g = random_definite_graph(rng)
        m = blow_up(g, GenericOn(g.ids[0]))
        y = DualGraph.from_dict(json.loads(dumps(m.target)))
        assert y == m.target
        z = m.target.cycle({v: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for v in y.ids})
        assert Cycle.from_dict(y, json.loads(dumps(z))) == z


def test_to_jsonable():
    assert to_jsonable({"a": Fraction(1, 2), "b": [Unknown("pg")], "c": {3, 1}}) == {
        "a": "1/2",
        "b": [{"unknown": "pg"}],
        "c": [1, 3],
    }


def test_load_json_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [\n  1,,\n]}')
    with pytest.raises(InputError, match="line 2"):
        load_json(bad)
    with pytest.raises(InputError, match="cannot read"):
        load_json(tmp_path / "missing.json")


def test_parse_optional_int():
    assert parse_optional_int("unknown", "h1") is None
    assert parse_optional_int(None, "h1") is None
    assert parse_optional_int("3", "h1") == 3
    with pytest.raises(GraphError):
        parse_optional_int("x", "h1")
    with pytest.raises(GraphError):
        parse_optional_int(True, "h1")


def test_parse_ideal_with_history():
    data = {
        "base_graph": {"vertices": [{"id": "E0", "self_intersection": -3, "genus": 1}], "edges": []},
        "centers": ["E0", "E0", "E0"],
        "flags": ["minimally_elliptic", "generated"],
        "cycle": {"E0": 1, "E0.F1": 2, "E0.F2": 2, "E0.F3": 2},
        "cohomological_cycle": {"E0": 1},
        "h1": 1,
        "gap": 0,
    }
    d, history = parse_ideal(data)
    assert len(history) == 3 and d.sing.pg == 1 and d.generated
    with pytest.raises(GraphError, match="unknown flags"):
        parse_ideal({**data, "flags": ["bogus"]})
    with pytest.raises(GraphError, match="cycle"):
        parse_ideal({k: v for k, v in data.items() if k != "cycle"})


def test_malformed_graph_objects():
    with pytest.raises(GraphError, match="malformed"):
        DualGraph.from_dict({"vertices": [{"id": "E0"}]})
    with pytest.raises(GraphError, match="edge entries"):
        DualGraph.from_dict({"vertices": [{"id": "E0", "self_intersection": -2}], "edges": [["E0"]]})
