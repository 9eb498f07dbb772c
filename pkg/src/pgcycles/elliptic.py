"""Simple elliptic singularities: divisor classes on E0 and Ulrich ideals.

``Pic^0(E0)`` is modeled as ``(Q/Z)^2``.  It is divisible with exactly
``n^2`` points of order dividing ``n``, which is all the classification
needs.  A point of ``E0`` is identified with its Abel-Jacobi image, so a
divisor ``sum a_i P_i`` has class ``(sum a_i, sum a_i P_i)``.
"""
from __future__ import annotations

import itertools
from math import lcm
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .blowup import BlowupMap, GenericOn, Intersection, OnBranch, blow_up, pullback_along
from .cycles import k_dot
from .errors import GraphError
from .graph import Cycle, DualGraph, Vertex, is_anti_nef
from .invariants import Unknown

__all__ = [
    "GroupElement",
    "EllipticGroup",
    "EllipticSingularity",
    "RestrictedClass",
    "restricted_class",
    "torsion_count",
    "Parametrization",
    "UlrichCase",
    "classify_ulrich",
    "realize_case",
    "ELLIPTIC",
]

ELLIPTIC = "E0"


def _mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class GroupElement:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _mod1(self.a))
        object.__setattr__(self, "b", _mod1(self.b))

    def __add__(self, other):
        return GroupElement(self.a + other.a, self.b + other.b)

    def __neg__(self):
        return GroupElement(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n: int):
        if isinstance(n, bool) or not isinstance(n, int):
            return NotImplemented
        return GroupElement(n * self.a, n * self.b)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def order(self) -> int:
        return lcm(self.a.denominator, self.b.denominator)

    def __repr__(self):
        return f"<{self.a}, {self.b}>"


class EllipticGroup:
    """``(Q/Z)^2`` standing in for the points of an elliptic curve."""

    def zero(self) -> GroupElement:
        return GroupElement(0, 0)

    def element(self, a, b) -> GroupElement:
        return GroupElement(Fraction(a), Fraction(b))

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, n: int, x):
        return n * x

    def torsion(self, n: int) -> list[GroupElement]:
        """All ``P`` with ``n P = 0``; there are ``n^2`` of them."""
        if n < 1:
            raise ValueError("torsion order must be >= 1")
        return [GroupElement(Fraction(i, n), Fraction(j, n)) for i in range(n) for j in range(n)]

    def divide(self, m: int, target: GroupElement) -> list[GroupElement]:
        """All ``P`` with ``m P = target``."""
        if m < 1:
            raise ValueError("m must be >= 1")
        root = GroupElement(target.a / m, target.b / m)
        return [root + t for t in self.torsion(m)]

    def random_element(self, rng, max_denominator: int = 97) -> GroupElement:
        d1, d2 = rng.randint(1, max_denominator), rng.randint(1, max_denominator)
        return GroupElement(Fraction(rng.randrange(d1), d1), Fraction(rng.randrange(d2), d2))


def torsion_count(model: EllipticGroup, m: int, target: GroupElement, exclude: Sequence = ()) -> int:
    """Number of ``P`` with ``m P = target``, not counting points in ``exclude``."""
    excl = set(exclude)
    return sum(1 for p in model.divide(m, target) if p not in excl)


@dataclass
class EllipticSingularity:
    """Degree ``e``, the class ``c`` with ``O_E0(-E0) = O(c + (e-1) O)``, and blown-up points.

    ``points`` maps the id of each curve created by blowing up a point of
    ``E0`` to that point.
    """

    e: int
    base_class: GroupElement = field(default_factory=lambda: GroupElement(0, 0))
    points: dict = field(default_factory=dict)

    def __post_init__(self):
        if isinstance(self.e, bool) or not isinstance(self.e, int) or self.e < 1:
            raise ValueError(f"degree must be a positive integer, got {self.e!r}")

    def minimal_graph(self) -> DualGraph:
        return DualGraph([Vertex(ELLIPTIC, -self.e, 1)])

    def blow_up_point(self, g: DualGraph, p: GroupElement, new_id: str | None = None) -> BlowupMap:
        """Blow up the point ``p`` of the strict transform of ``E0``."""
        m = blow_up(g, GenericOn(ELLIPTIC), new_id)
        self.points[m.new_vertex] = p
        return m


@dataclass(frozen=True)
class RestrictedClass:
    degree: int
    cls: GroupElement | Unknown

    @property
    def trivial(self):
        if isinstance(self.cls, Unknown):
            return self.cls if self.degree == 0 else False
        return self.degree == 0 and self.cls.is_zero()


def restricted_class(s: EllipticSingularity, z: Cycle, history: Sequence[BlowupMap]) -> RestrictedClass:
    """Degree and class of ``O_X(-Z)`` restricted to ``E0``.

    ``history`` starts at the minimal resolution.  The class is
    ``z_0 (c + sum of blown points) - sum_v z_v P_v``, with ``v`` over the
    curves meeting ``E0`` and ``P_v`` their meeting points.
    """
    if history:
        if history[0].source != s.minimal_graph():
            raise GraphError("history must start at the minimal resolution")
        final = history[-1].target
    else:
        final = s.minimal_graph()
    if z.graph != final:
        raise GraphError("cycle is not on the final graph of the history")

    meet: dict = {}
    blown: list = []
    missing = None
    for m in history:
        c = m.center
        on_e0 = (isinstance(c, GenericOn) and c.vertex == ELLIPTIC) or (
            isinstance(c, OnBranch) and c.carrier == ELLIPTIC
        )
        if on_e0:
            p = s.points.get(m.new_vertex)
            if p is None:
                missing = missing or m.new_vertex
            meet[m.new_vertex] = p
            blown.append(p)
        elif isinstance(c, Intersection) and ELLIPTIC in (c.first, c.second):
            other = c.second if c.first == ELLIPTIC else c.first
            p = meet.pop(other, None)
            if p is None:
                missing = missing or m.new_vertex
            meet[m.new_vertex] = p
            blown.append(p)

    degree = int(-z.dot(z.graph.basis(ELLIPTIC)))
    if missing is not None:
        return RestrictedClass(degree, Unknown(f"point of E0 under {missing}"))
    z0 = int(z[ELLIPTIC])
    cls = z0 * s.base_class
    for p in blown:
        cls = cls + z0 * p
    for v, p in meet.items():
        cls = cls - int(z[v]) * p
    return RestrictedClass(degree, cls)


@dataclass(frozen=True)
class Parametrization:
    kind: str  # single | curve E0 | P1 minus points | finite | unstated
    count: int | None = None

    def describe(self) -> str:
        if self.kind == "P1 minus points":
            return f"P1 minus {self.count} points"
        if self.kind == "finite":
            return str(self.count)
        return self.kind


@dataclass(frozen=True)
class UlrichCase:
    """A numeric type of Ulrich ideal on a simple elliptic singularity.

    ``base_cycle`` is ``f_* Z`` on the starting model (``X_0`` for e >= 2,
    its blow-up ``X_1`` at the base point of ``m`` for e = 1) and
    ``point_multiplicities`` the extra coefficients over the blown-up free
    points of ``E0``.
    """

    label: str
    e: int
    colength: int
    integral_gap: int
    h1: int
    n: int
    base_cycle: tuple
    point_multiplicities: tuple
    Zsq: int
    KZ: int
    MZ: int
    mu: int | None
    parametrization: Parametrization

    @property
    def closure_colength(self) -> int:
        return self.colength - self.integral_gap

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "e": self.e,
            "colength": self.colength,
            "integral_gap": self.integral_gap,
            "h1": self.h1,
            "n": self.n,
            "base_cycle": dict(self.base_cycle),
            "point_multiplicities": list(self.point_multiplicities),
            "Z^2": self.Zsq,
            "KZ": self.KZ,
            "-MZ": self.MZ,
            "mu": self.mu,
            "parametrization": self.parametrization.describe(),
        }


def _base_model(s: EllipticSingularity):
    """Starting graph, history and maximal ideal cycle, plus whether ``m`` is a p_g-ideal."""
    g0 = s.minimal_graph()
    if s.e >= 2:
        return g0, [], g0.basis(ELLIPTIC), False
    # e = 1: m O_X0 has a base point p0 with O_E0(-E0) = O(p0), i.e. p0 = c
    m1 = s.blow_up_point(g0, s.base_class, "E1")
    g1 = m1.target
    return g1, [m1], g1.cycle({ELLIPTIC: 1, "E1": 2}), True


def _partitions(total: int, largest: int | None = None):
    if total == 0:
        yield ()
        return
    largest = total if largest is None else largest
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def realize_case(
    s: EllipticSingularity, base: dict, mults: Sequence[int], points: Sequence[GroupElement]
) -> tuple[Cycle, list[BlowupMap], Cycle]:
    """Build ``Z = f^* base + sum c_j F_j`` with ``F_j`` over ``points``; returns (Z, history, M)."""
    if len(mults) != len(points):
        raise ValueError("one point per multiplicity")
    g, history, M, _ = _base_model(s)
    zb = g.cycle(base)
    maps = list(history)
    for p in points:
        m = s.blow_up_point(g, p)
        maps.append(m)
        g = m.target
    tail = maps[len(history):]
    z = pullback_along(tail, zb)
    for m, c in zip(tail, mults):
        z = z + c * z.graph.basis(m.new_vertex)
    return z, maps, pullback_along(tail, M)


def _base_candidates(e: int):
    """Base cycles with ``-M f_*Z <= 4`` (the bound from mu = 3 and gap <= 1)."""
    if e >= 2:
        for n in range(1, 4 // e + 1):
            yield {ELLIPTIC: n}, n
    else:
        for b in range(1, 5):
            for a in range((b + 1) // 2, b + 1):
                yield {ELLIPTIC: a, "E1": b}, a


def _parametrize(model, s, mults, target, constrained, occupied) -> Parametrization | None:
    r = len(mults)
    if not constrained:
        if r == 0:
            return Parametrization("single")
        if r == 1:
            return Parametrization("curve E0")
        return Parametrization(f"open subset of Sym^{r} E0")
    if r == 0:
        return Parametrization("single") if target.is_zero() else None
    if r == 1:
        count = torsion_count(model, mults[0], target, occupied)
        return Parametrization("finite", count) if count else None
    if mults == (1, 1):
        # pairs {P, target - P}: a pencil on E0, i.e. a P1; the members with
        # P = target - P at a free point are the tangent ones and drop out
        return Parametrization("P1 minus points", torsion_count(model, 2, target, occupied))
    return Parametrization(f"{r - 1}-dimensional family")


def classify_ulrich(
    e: int, model: EllipticGroup | None = None, base_class: GroupElement | None = None
) -> list[UlrichCase]:
    """Numeric types of Ulrich ideals on a simple elliptic singularity of degree ``e``.

    Candidates are ``Z = f^* B + sum c_j F_j`` over single blow-ups of
    free points of ``E0``.  A candidate survives if it is anti-nef, good
    (``h1 = 1``: ``K Z = 0``, integrally closed; ``h1 = 0``: ``K Z = 2 (1 + gap)``),
    meets ``mu = 3`` (exactly ``-MZ + 1`` for p_g-ideals or when ``m`` is one,
    ``-MZ - gap <= 3`` otherwise), and its restriction to ``E0`` fits ``h1``
    (trivial for ``h1 = 1``, degree >= 2 so that it is generated for ``h1 = 0``).
    """
    if isinstance(e, bool) or not isinstance(e, int) or e < 1:
        raise ValueError(f"degree must be a positive integer, got {e!r}")
    model = model or EllipticGroup()
    c = base_class if base_class is not None else model.zero()
    s0 = EllipticSingularity(e, c)
    _, _, _, m_is_pg = _base_model(s0)
    occupied = [c] if e == 1 else []
    found = []
    for base, n in _base_candidates(e):
        g, hist, M, _ = _base_model(EllipticSingularity(e, c))
        zb = g.cycle(base)
        if not is_anti_nef(zb):
            continue
        room = int(-zb.dot(g.basis(ELLIPTIC)))
        for total in range(room + 1):
            for mults in _partitions(total):
                s = EllipticSingularity(e, c)
                placeholder = [model.zero()] * len(mults)
                z, maps, Mx = realize_case(s, base, mults, placeholder)
                if not is_anti_nef(z):
                    continue
                rc = restricted_class(s, z, maps)
                # with every point at the origin, the class is the target
                target = rc.cls
                kz = int(k_dot(z.graph, z))
                zsq = int(z.dot(z))
                mz = int(-Mx.dot(z))
                for h1, gap in itertools.product((1, 0), (0, 1)):
                    if h1 == 1:
                        if gap or kz != 0 or rc.degree != 0:
                            continue
                        mu = mz + 1
                        if mu != 3:
                            continue
                    else:
                        if kz != 2 * (1 + gap) or rc.degree < 2:
                            continue
                        if m_is_pg:
                            if gap == 0 and mz + 1 != 3:
                                continue
                            if mz + 1 - gap > 3:
                                continue
                            mu = mz + 1 if gap == 0 else None
                        else:
                            if mz - gap > 3:
                                continue
                            mu = None
                    closure = -(zsq + kz) // 2 + 1 - h1
                    colen = closure + gap
                    if -zsq != 2 * colen:
                        raise AssertionError(f"goodness arithmetic broke for {base}, {mults}")
                    if gap:
                        par = Parametrization("unstated")
                    else:
                        par = _parametrize(model, s, mults, target, h1 == 1, occupied)
                    if par is None:
                        continue
                    found.append(
                        UlrichCase(
                            label="",
                            e=e,
                            colength=colen,
                            integral_gap=gap,
                            h1=h1,
                            n=n,
                            base_cycle=tuple(sorted(base.items())),
                            point_multiplicities=mults,
                            Zsq=zsq,
                            KZ=kz,
                            MZ=mz,
                            mu=mu,
                            parametrization=par,
                        )
                    )
    found.sort(key=lambda u: (u.colength, u.integral_gap, u.point_multiplicities))
    out = []
    for i, u in enumerate(found):
        label = f"({'abcdefgh'[i]})" if e == 2 else f"l={u.colength}"
        out.append(replace(u, label=label))
    return out
