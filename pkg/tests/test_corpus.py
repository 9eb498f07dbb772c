import json

import pytest

from oracles import canonical_by_adjunction, minimal_anti_nef, negative_definite_by_search
from pgcycles.corpus import PROVENANCE, fixture_names, load_entry, run_entry


@pytest.mark.parametrize("name", fixture_names())
def test_fixture_checks_pass(name):
    results = run_entry(load_entry(name))
    assert results
    failed = [(r.check, r.expected, r.actual) for r in results if not r.ok]
    assert not failed


@pytest.mark.parametrize("name", fixture_names())
def test_recorded_cycles_agree_with_oracles(name):
    entry = load_entry(name)
    g = entry.graph
    for check in entry.checks:
        kind, want = check["check"], check["expect"]
        if kind == "negative_definite" and len(g) <= 6:
            assert negative_definite_by_search(g.matrix, 3) == want
        elif kind == "fundamental_cycle":
            assert minimal_anti_nef(g.matrix, [1] * len(g)) == tuple(want[v] for v in g.ids)
        elif kind == "canonical_cycle":
            zk = canonical_by_adjunction(g.matrix, [g.genus(v) for v in g.ids])
            assert g.cycle(want).vector == tuple(zk)


def test_every_check_has_provenance():
    assert len(fixture_names()) >= 15
    for name in fixture_names():
        entry = load_entry(name)
        assert all(c["provenance"] in PROVENANCE for c in entry.checks)


def test_missing_provenance_is_refused():
    data = {"name": "x", "graph": {"vertices": [{"id": "E0", "self_intersection": -2}]}, "checks": [{"check": "minimal", "expect": True}]}
    with pytest.raises(ValueError, match="provenance"):
        load_entry(data)


def test_inline_entry():
    data = {
        "name": "a2",
        "graph": {"vertices": [{"id": "A", "self_intersection": -2}, {"id": "B", "self_intersection": -2}], "edges": [["A", "B"]]},
        "singularity": {"kind": "rational"},
        "checks": [
            {"check": "fundamental_cycle", "expect": {"A": 1, "B": 1}, "provenance": "trivial"},
            {"check": "ideal", "ideal": {"cycle": {"A": 1, "B": 1}, "gap": 0}, "expect": {"colength": 1, "good": True, "multiplicity": 2}, "provenance": "trivial"},
        ],
    }
    assert all(r.ok for r in run_entry(load_entry(json.loads(json.dumps(data)))))
