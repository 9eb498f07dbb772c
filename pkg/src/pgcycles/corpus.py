"""Worked examples as JSON fixtures, and a runner that re-verifies them.

Each fixture holds a graph (or a base graph plus blow-up centers), the
singularity's analytic data, named cycles and a list of checks.  Every
check records where its expected value comes from in ``provenance``:
``published`` (a value stated in the literature), ``trivial`` (immediate
arithmetic) or ``derived`` (computed here and confirmed by a brute-force
oracle in the test suite).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Any, Callable

from .blowup import blow_up_sequence, is_minimal, is_minimal_wrt, parse_center
from .construction import certify_pg_cycle, choose_W, run_construction
from .cycles import SingularityData, canonical_cycle, degree, fundamental_cycle, is_numerically_gorenstein, k_dot
from .elliptic import classify_ulrich
from .graph import Cycle, DualGraph, is_anti_nef, perp
from .invariants import (
    IdealDescriptor,
    Unknown,
    colength,
    good_ideal_test,
    ideal_colength,
    is_pg_cycle,
    mu_data,
    multiplicity,
    ulrich_screen,
)
from .io import parse_cycle, parse_optional_int, parse_singularity, to_jsonable

__all__ = ["CorpusEntry", "CheckResult", "load_entry", "load_corpus", "fixture_names", "run_entry", "run_corpus"]

PROVENANCE = ("published", "trivial", "derived")


@dataclass(frozen=True)
class CheckResult:
    entry: str
    check: str
    expected: Any
    actual: Any
    provenance: str

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class CorpusEntry:
    name: str
    description: str
    graph: DualGraph
    history: list
    sing: SingularityData | None
    cycles: dict
    checks: list

    def cycle(self, ref) -> Cycle:
        if isinstance(ref, str):
            return self.cycles[ref]
        return parse_cycle(self.graph, ref)


def fixture_names() -> list[str]:
    root = resources.files("pgcycles") / "corpus"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_entry(name_or_data) -> CorpusEntry:
    if isinstance(name_or_data, str):
        text = (resources.files("pgcycles") / "corpus" / f"{name_or_data}.json").read_text()
        data = json.loads(text)
    else:
        data = name_or_data
    definite = data.get("definite", True)
    if "graph" in data:
        graph, history = DualGraph.from_dict(data["graph"], check_definite=definite), []
    else:
        base = DualGraph.from_dict(data["base_graph"])
        history = blow_up_sequence(base, [parse_center(c) for c in data.get("centers", [])])
        graph = history[-1].target if history else base
    cycles = {k: parse_cycle(graph, v) for k, v in data.get("cycles", {}).items()}
    sing = None
    if "singularity" in data:
        sd = dict(data["singularity"])
        for key in ("maximal_ideal_cycle", "cohomological_cycle"):
            if isinstance(sd.get(key), str):
                sd[key] = cycles[sd[key]].to_dict()
        sing = parse_singularity(sd, graph)
    for c in data["checks"]:
        if c.get("provenance") not in PROVENANCE:
            raise ValueError(f"{data['name']}: check {c.get('check')!r} lacks a provenance in {PROVENANCE}")
    return CorpusEntry(data["name"], data.get("description", ""), graph, history, sing, cycles, data["checks"])


def load_corpus() -> list[CorpusEntry]:
    return [load_entry(n) for n in fixture_names()]


def _tri(x):
    return "unknown" if isinstance(x, Unknown) else x


def _cycle_json(z: Cycle) -> dict:
    return to_jsonable(z.coefficients)


def _ideal(entry: CorpusEntry, spec: dict) -> IdealDescriptor:
    flags = set(spec.get("flags", ()))
    return IdealDescriptor(
        entry.sing,
        entry.cycle(spec["cycle"]),
        h1=parse_optional_int(spec.get("h1"), "h1"),
        integral_gap=parse_optional_int(spec.get("gap"), "gap"),
        no_fixed_component="no_fixed_component" in flags,
        generated="generated" in flags,
        stable="stable" in flags,
    )


def _ideal_values(entry: CorpusEntry, spec: dict, keys) -> dict:
    d = _ideal(entry, spec)
    history = entry.history or None
    values: dict[str, Callable[[], Any]] = {
        "colength": lambda: colength(d),
        "ideal_colength": lambda: ideal_colength(d),
        "multiplicity": lambda: multiplicity(d),
        "KZ": lambda: k_dot(d.graph, d.Z),
        "Zsq": lambda: d.Z.dot(d.Z),
        "mu_upper": lambda: mu_data(d).upper,
        "mu_lower": lambda: mu_data(d).lower,
        "mu": lambda: mu_data(d).mu,
        "pg_cycle": lambda: is_pg_cycle(d),
        "good": lambda: good_ideal_test(d),
        "ulrich": lambda: ulrich_screen(d, history=history),
    }
    return {k: _tri(to_jsonable(values[k]())) for k in keys}


def _construction(entry: CorpusEntry, spec: dict, keys) -> dict:
    W = entry.cycle(spec["W"]) if "W" in spec else None
    r = run_construction(entry.sing, W, spec.get("C0"))
    cert = certify_pg_cycle(r)
    values = {
        "n": r.n,
        "neg_Zsq": int(-r.Zsq),
        "KZ": int(r.KZ),
        "branch_counts": r.branch_counts,
        "passed": cert.passed,
        "good_certified": cert.good_certified,
        "multiplicity": cert.multiplicity,
        "C_n_is_canonical": r.C == canonical_cycle(r.Y),
    }
    return {k: values[k] for k in keys}


def _classify(spec: dict) -> list:
    return [
        {
            "label": u.label,
            "colength": u.colength,
            "gap": u.integral_gap,
            "parametrization": u.parametrization.describe(),
        }
        for u in classify_ulrich(spec["degree"])
    ]


def _evaluate(entry: CorpusEntry, check: dict):
    kind = check["check"]
    g = entry.graph
    if kind == "negative_definite":
        return g.form.is_negative_definite
    if kind == "minimal":
        return is_minimal(g)
    if kind == "fundamental_cycle":
        return _cycle_json(fundamental_cycle(g))
    if kind == "canonical_cycle":
        return _cycle_json(canonical_cycle(g))
    if kind == "numerically_gorenstein":
        return is_numerically_gorenstein(g)
    if kind == "degree":
        return degree(entry.sing)
    if kind == "choose_W":
        return _cycle_json(choose_W(g))
    if kind == "pairing":
        return to_jsonable(entry.cycle(check["a"]).dot(entry.cycle(check["b"])))
    if kind == "k_dot":
        return to_jsonable(k_dot(g, entry.cycle(check["cycle"])))
    if kind == "anti_nef":
        return is_anti_nef(entry.cycle(check["cycle"]))
    if kind == "perp":
        return sorted(perp(entry.cycle(check["cycle"])))
    if kind == "minimal_wrt":
        return is_minimal_wrt(g, entry.cycle(check["cycle"]))
    if kind == "ideal":
        return _ideal_values(entry, check["ideal"], check["expect"].keys())
    if kind == "construction":
        return _construction(entry, check["construction"], check["expect"].keys())
    if kind == "classify":
        return _classify(check["classify"])
    raise ValueError(f"{entry.name}: unknown check kind {kind!r}")


def run_entry(entry: CorpusEntry) -> list[CheckResult]:
    out = []
    for check in entry.checks:
        actual = _evaluate(entry, check)
        out.append(CheckResult(entry.name, check["check"], check["expect"], actual, check["provenance"]))
    return out


def run_corpus() -> list[CheckResult]:
    results = []
    for entry in load_corpus():
        results.extend(run_entry(entry))
    return results
