"""Blow-ups of points on the exceptional set and their inverses, at graph level.

A blow-up of a smooth point of ``E`` (or of a transverse intersection
point of two components) changes the dual graph locally; cycles move
along it by total transform (``pullback``) and push forward by dropping
the new curve.  Strict transforms keep their vertex ids, so the
correspondence recorded in a :class:`BlowupMap` is the identity on old ids.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import BlowupError, GraphError, GraphMismatch
from .graph import Cycle, DualGraph, Vertex, is_anti_nef

__all__ = [
    "GenericOn",
    "Intersection",
    "OnBranch",
    "PointSpec",
    "BlowupMap",
    "blow_up",
    "blow_up_sequence",
    "pullback_along",
    "pushforward_along",
    "contract",
    "is_minimal",
    "minus_one_curves",
    "is_minimal_wrt",
    "descend",
    "parse_center",
]


@dataclass(frozen=True)
class GenericOn:
    """A general point of one exceptional curve."""

    vertex: str

    @property
    def label(self):
        return self.vertex


@dataclass(frozen=True)
class Intersection:
    """The transverse intersection point of two adjacent curves."""

    first: str
    second: str

    @property
    def label(self):
        return f"{self.first}:{self.second}"


@dataclass(frozen=True)
class OnBranch:
    """The point where a marked transverse curve germ meets ``carrier``."""

    branch: str
    carrier: str

    @property
    def label(self):
        return self.branch


PointSpec = Union[GenericOn, Intersection, OnBranch]


def parse_center(text: str) -> PointSpec:
    """``"E0"`` -> generic point, ``"E1:E2"`` -> intersection point."""
    parts = text.split(":")
    if len(parts) == 1:
        return GenericOn(parts[0])
    if len(parts) == 2:
        return Intersection(parts[0], parts[1])
    raise BlowupError(f"cannot parse blow-up center {text!r}")


def _carriers(g: DualGraph, p: PointSpec) -> tuple[str, ...]:
    if isinstance(p, GenericOn):
        cs = (p.vertex,)
    elif isinstance(p, OnBranch):
        cs = (p.carrier,)
    elif isinstance(p, Intersection):
        cs = (p.first, p.second)
        if p.first == p.second:
            raise BlowupError("an intersection center needs two distinct curves")
    else:
        raise BlowupError(f"unknown center type {p!r}")
    for c in cs:
        if c not in g:
            raise BlowupError(f"center refers to unknown vertex {c!r}")
    if len(cs) == 2 and not g.adjacent(*cs):
        raise BlowupError(f"{cs[0]!r} and {cs[1]!r} do not meet")
    return cs


def _fresh_id(g: DualGraph, prefix: str) -> str:
    # ``:`` is reserved for intersection centers on the command line
    n = 1
    while f"{prefix}.F{n}" in g:
        n += 1
    return f"{prefix}.F{n}"


@dataclass(frozen=True)
class BlowupMap:
    """One monoidal transform ``b: target -> source``."""

    source: DualGraph
    target: DualGraph
    new_vertex: str
    center: PointSpec
    correspondence: dict = field(compare=False)

    @property
    def carriers(self) -> tuple[str, ...]:
        return _carriers(self.source, self.center)

    def pullback(self, z: Cycle) -> Cycle:
        """Total transform ``b^* Z``."""
        if z.graph is not self.source and z.graph != self.source:
            raise GraphMismatch("cycle is not on the blow-up source")
        coeffs = {self.correspondence[v]: c for v, c in z.items()}
        coeffs[self.new_vertex] = sum((z[c] for c in self.carriers), Fraction(0))
        return Cycle(self.target, coeffs)

    def strict_transform(self, z: Cycle) -> Cycle:
        if z.graph is not self.source and z.graph != self.source:
            raise GraphMismatch("cycle is not on the blow-up source")
        return Cycle(self.target, {self.correspondence[v]: c for v, c in z.items()})

    def pushforward(self, z: Cycle) -> Cycle:
        """``b_* Z``: forget the exceptional curve."""
        if z.graph is not self.target and z.graph != self.target:
            raise GraphMismatch("cycle is not on the blow-up target")
        inverse = {new: old for old, new in self.correspondence.items()}
        return Cycle(self.source, {inverse[v]: c for v, c in z.items() if v != self.new_vertex})

    @property
    def exceptional(self) -> Cycle:
        return self.target.basis(self.new_vertex)

    def to_dict(self) -> dict:
        c = self.center
        if isinstance(c, GenericOn):
            center = {"type": "generic", "vertex": c.vertex}
        elif isinstance(c, Intersection):
            center = {"type": "intersection", "vertices": [c.first, c.second]}
        else:
            center = {"type": "branch", "branch": c.branch, "carrier": c.carrier}
        return {
            "center": center,
            "new_vertex": self.new_vertex,
            "correspondence": dict(sorted(self.correspondence.items())),
        }


def blow_up(g: DualGraph, p: PointSpec, new_id: str | None = None) -> BlowupMap:
    """Blow up one point of the exceptional set."""
    carriers = _carriers(g, p)
    fid = new_id if new_id is not None else _fresh_id(g, p.label.replace(":", "x"))
    if fid in g:
        raise BlowupError(f"vertex id {fid!r} already in use")
    verts = [
        Vertex(v.id, v.self_intersection - 1, v.genus) if v.id in carriers else v for v in g.vertices
    ]
    verts.append(Vertex(fid, -1, 0))
    edges = [e for e in g.edges if set(e) != set(carriers)]
    edges += [(c, fid) for c in carriers]
    # the form of the target is the source's plus an orthogonal <-1>
    target = DualGraph(verts, edges, check_definite=False)
    return BlowupMap(g, target, fid, p, {v: v for v in g.ids})


def blow_up_sequence(g: DualGraph, centers: Iterable[PointSpec]) -> list[BlowupMap]:
    """Blow up centers one after another; each center refers to the then-current graph."""
    maps = []
    for p in centers:
        m = blow_up(g, p)
        maps.append(m)
        g = m.target
    return maps


def pullback_along(history: Sequence[BlowupMap], z: Cycle) -> Cycle:
    for m in history:
        z = m.pullback(z)
    return z


def pushforward_along(history: Sequence[BlowupMap], z: Cycle) -> Cycle:
    for m in reversed(history):
        z = m.pushforward(z)
    return z


def _is_minus_one_curve(v: Vertex) -> bool:
    return v.genus == 0 and v.self_intersection == -1


def minus_one_curves(g: DualGraph) -> tuple[str, ...]:
    return tuple(v.id for v in g.vertices if _is_minus_one_curve(v))


def contract(g: DualGraph, v: str) -> tuple[DualGraph, dict]:
    """Blow down the (-1)-curve ``v``.

    Only curves meeting at most two others can be contracted: a curve
    meeting three would leave a triple point, which has no simple dual graph.
    """
    vert = g.vertex(v)
    if not _is_minus_one_curve(vert):
        raise BlowupError(f"{v!r} is not a (-1)-curve (E^2={vert.self_intersection}, g={vert.genus})")
    nbrs = g.neighbors(v)
    if len(g) == 1:
        raise BlowupError(f"contracting {v!r} leaves no exceptional curve")
    if len(nbrs) > 2:
        raise BlowupError(
            f"{v!r} meets {len(nbrs)} curves; contracting it creates a non-normal-crossing point"
        )
    if len(nbrs) == 2 and g.adjacent(*nbrs):
        raise BlowupError(f"contracting {v!r} would give {nbrs[0]!r}, {nbrs[1]!r} a double intersection")
    verts = [
        Vertex(w.id, w.self_intersection + 1, w.genus) if w.id in nbrs else w
        for w in g.vertices
        if w.id != v
    ]
    edges = [e for e in g.edges if v not in e]
    if len(nbrs) == 2:
        edges.append(tuple(nbrs))
    try:
        target = DualGraph(verts, edges)
    except GraphError as exc:
        raise BlowupError(f"contracting {v!r} does not give a valid graph: {exc}") from None
    return target, {w: w for w in g.ids if w != v}


def is_minimal(g: DualGraph) -> bool:
    """True iff no vertex is a smooth rational curve of self-intersection -1."""
    return not minus_one_curves(g)


def is_minimal_wrt(g: DualGraph, z: Cycle) -> bool:
    """True iff ``Z.C < 0`` for every (-1)-curve ``C``."""
    if z.graph is not g and z.graph != g:
        raise GraphMismatch("cycle is not on the given graph")
    if not is_anti_nef(z):
        raise GraphError(f"minimality with respect to Z needs Z anti-nef: {z!r}")
    pair = z.pairings()
    return all(pair[c] < 0 for c in minus_one_curves(g))


def descend(z: Cycle) -> tuple[Cycle, list[str]]:
    """Contract (-1)-curves ``C`` with ``Z.C = 0`` while any remain.

    Returns the pushed-forward cycle on the smaller graph and the contracted
    ids.  Such a ``Z`` is the pullback of its pushforward, so the ideal it
    represents is unchanged.
    """
    contracted = []
    while True:
        pair = z.pairings()
        c = next((c for c in minus_one_curves(z.graph) if pair[c] == 0), None)
        if c is None:
            return z, contracted
        g2, corr = contract(z.graph, c)
        z = Cycle(g2, {corr[v]: k for v, k in z.items() if v != c})
        contracted.append(c)
