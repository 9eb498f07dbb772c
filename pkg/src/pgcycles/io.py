"""JSON reading and writing for graphs, cycles, singularities and ideals."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .blowup import BlowupMap, blow_up_sequence, parse_center
from .cycles import SingularityData
from .errors import GraphError, PgCyclesError
from .graph import Cycle, DualGraph, format_rational
from .invariants import IdealDescriptor, Unknown

__all__ = [
    "InputError",
    "load_json",
    "dumps",
    "to_jsonable",
    "parse_graph",
    "parse_cycle",
    "parse_optional_int",
    "parse_singularity",
    "parse_ideal",
    "IDEAL_FLAGS",
]

IDEAL_FLAGS = ("generated", "no_fixed_component", "stable", "gorenstein", "rational", "minimally_elliptic")


class InputError(PgCyclesError):
    """A file could not be read or is not valid JSON."""


def load_json(path) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{p}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def to_jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, Unknown):
        return {"unknown": x.reason}
    if isinstance(x, (DualGraph, Cycle, BlowupMap)):
        return x.to_dict()
    if isinstance(x, Mapping):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [to_jsonable(v) for v in items]
    return x


def dumps(x) -> str:
    """Canonical JSON: sorted keys, so equal values print identically."""
    return json.dumps(to_jsonable(x), sort_keys=True, indent=2)


def parse_graph(data) -> DualGraph:
    if not isinstance(data, Mapping):
        raise GraphError("graph JSON must be an object with 'vertices' and 'edges'")
    return DualGraph.from_dict(data)


def parse_cycle(graph: DualGraph, data) -> Cycle:
    if not isinstance(data, Mapping):
        raise GraphError("cycle JSON must be an object")
    return Cycle.from_dict(graph, data)


def parse_optional_int(value, name):
    """An int, or ``None`` for ``null`` / ``"unknown"``."""
    if value is None or value == "unknown":
        return None
    if isinstance(value, str):
        try:
            value = int(value)
        except ValueError:
            raise GraphError(f"{name} must be an integer or 'unknown', got {value!r}") from None
    if isinstance(value, bool) or not isinstance(value, int):
        raise GraphError(f"{name} must be an integer or 'unknown', got {value!r}")
    return value


def _graph_and_history(data: Mapping) -> tuple[DualGraph, list[BlowupMap]]:
    if "graph" in data:
        return parse_graph(data["graph"]), []
    if "base_graph" in data:
        base = parse_graph(data["base_graph"])
        centers = [parse_center(c) for c in data.get("centers", [])]
        history = blow_up_sequence(base, centers)
        return (history[-1].target if history else base), history
    raise GraphError("expected a 'graph' or a 'base_graph' with 'centers'")


def parse_singularity(data: Mapping, graph: DualGraph | None = None) -> SingularityData:
    if graph is None:
        graph, _ = _graph_and_history(data)
    flags = set(data.get("flags", ()))
    kind = data.get("kind")
    if "rational" in flags:
        kind = kind or "rational"
    if "minimally_elliptic" in flags:
        kind = kind or "minimally_elliptic"
    m = data.get("maximal_ideal_cycle")
    c = data.get("cohomological_cycle")
    try:
        return SingularityData(
            graph,
            pg=parse_optional_int(data.get("pg"), "pg"),
            maximal_ideal_cycle=parse_cycle(graph, m) if m is not None else None,
            cohomological_cycle=parse_cycle(graph, c) if c is not None else None,
            gorenstein=bool(data.get("gorenstein", False) or "gorenstein" in flags),
            kind=kind,
        )
    except ValueError as exc:
        raise GraphError(str(exc)) from None


def parse_ideal(data: Mapping) -> tuple[IdealDescriptor, list[BlowupMap]]:
    """An ideal descriptor and the blow-up history that produced its graph (possibly empty)."""
    if not isinstance(data, Mapping):
        raise GraphError("ideal JSON must be an object")
    unknown = set(data.get("flags", ())) - set(IDEAL_FLAGS)
    if unknown:
        raise GraphError(f"unknown flags {sorted(unknown)}; allowed: {list(IDEAL_FLAGS)}")
    graph, history = _graph_and_history(data)
    sing = parse_singularity(data, graph)
    if "cycle" not in data:
        raise GraphError("ideal JSON needs a 'cycle'")
    flags = set(data.get("flags", ()))
    d = IdealDescriptor(
        sing,
        parse_cycle(graph, data["cycle"]),
        h1=parse_optional_int(data.get("h1"), "h1"),
        integral_gap=parse_optional_int(data.get("gap"), "gap"),
        no_fixed_component="no_fixed_component" in flags,
        generated="generated" in flags,
        stable="stable" in flags,
    )
    return d, history
