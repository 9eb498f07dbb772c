"""Cycles attached to a singularity: fundamental, canonical, degree."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .blowup import is_minimal
from .errors import GraphError, MissingAnalyticData
from .graph import Cycle, DualGraph, is_anti_nef

__all__ = [
    "SingularityData",
    "anti_nef_closure",
    "fundamental_cycle",
    "canonical_cycle",
    "k_dot",
    "k_vector",
    "is_numerically_gorenstein",
    "degree",
]

RATIONAL = "rational"
MINIMALLY_ELLIPTIC = "minimally_elliptic"


def _increment_closure(z0: Cycle, floor: Sequence[int], select: str = "first") -> Cycle:
    """Smallest integral ``Z >= z0`` with ``-Z.E_j >= floor[j]`` for all j.

    The feasible set is closed under componentwise minimum, so adding a
    violating ``E_j`` never overshoots the minimum; which violator is picked
    does not change the result.
    """
    g = z0.graph
    if not g.form.is_negative_definite:
        raise GraphError("closure needs a negative definite graph")
    if not z0.is_integral():
        raise GraphError("closure input must be an integral cycle")
    if any(c < 0 for c in z0.vector):
        raise GraphError(f"closure input must be effective, got {z0!r}")
    mat = g.form.matrix
    z = [int(c) for c in z0.vector]
    p = [sum(a * b for a, b in zip(row, z)) for row in mat]
    n = len(z)
    order = range(n) if select == "first" else range(n - 1, -1, -1)
    while True:
        j = next((j for j in order if -p[j] < floor[j]), None)
        if j is None:
            return Cycle(g, z)
        z[j] += 1
        for i in range(n):
            p[i] += mat[i][j]


def anti_nef_closure(g: DualGraph, z0: Cycle, *, select: str = "first") -> Cycle:
    """Smallest anti-nef integral cycle ``Z >= z0`` (Laufer's loop).

    ``select`` is ``"first"`` (lowest-index violating vertex, the default) or
    ``"last"``; both give the same cycle.
    """
    if z0.graph is not g and z0.graph != g:
        raise GraphError("cycle is not on the given graph")
    return _increment_closure(z0, [0] * len(g), select)


def fundamental_cycle(g: DualGraph) -> Cycle:
    return anti_nef_closure(g, g.reduced())


def k_vector(g: DualGraph) -> tuple[int, ...]:
    """``K_X . E_i`` from adjunction: ``-E_i^2 + 2 g(E_i) - 2``."""
    return tuple(-v.self_intersection + 2 * v.genus - 2 for v in g.vertices)


def canonical_cycle(g: DualGraph) -> Cycle:
    """The rational cycle ``Z_K`` with ``Z_K . E_i = -K_X . E_i`` for every i."""
    rhs = [-k for k in k_vector(g)]
    return Cycle(g, g.form.solve(rhs))


def k_dot(g: DualGraph, z: Cycle) -> Fraction:
    """``K_X . Z``; equals ``-Z_K . Z``."""
    if z.graph is not g and z.graph != g:
        raise GraphError("cycle is not on the given graph")
    return sum((k * z[v] for k, v in zip(k_vector(g), g.ids)), Fraction(0))


def is_numerically_gorenstein(g: DualGraph) -> bool:
    return canonical_cycle(g).is_integral()


@dataclass(frozen=True)
class SingularityData:
    """A dual graph plus the analytic data it does not determine.

    ``pg=None`` means unknown.  ``kind`` may declare the singularity
    ``"rational"`` (forces ``pg=0``) or ``"minimally_elliptic"`` (Gorenstein
    with ``pg=1``).  Missing maximal ideal / cohomological cycles fall back
    to graph-determined defaults only where those are theorems: see
    :meth:`maximal_ideal_cycle_or_default` and :meth:`cohomological_cycle_or_default`.
    """

    graph: DualGraph
    pg: int | None = None
    maximal_ideal_cycle: Cycle | None = None
    cohomological_cycle: Cycle | None = None
    gorenstein: bool = False
    kind: str | None = None

    def __post_init__(self):
        pg, kind = self.pg, self.kind
        if kind not in (None, RATIONAL, MINIMALLY_ELLIPTIC):
            raise ValueError(f"unknown singularity kind {kind!r}")
        if pg is not None and (not isinstance(pg, int) or pg < 0):
            raise ValueError(f"pg must be a non-negative integer, got {pg!r}")
        if kind == RATIONAL:
            if pg not in (None, 0):
                raise ValueError("a rational singularity has pg = 0")
            pg = 0
        if kind == MINIMALLY_ELLIPTIC:
            if pg not in (None, 1):
                raise ValueError("a minimally elliptic singularity has pg = 1")
            pg = 1
            object.__setattr__(self, "gorenstein", True)
        if pg == 0:
            kind = RATIONAL
        object.__setattr__(self, "pg", pg)
        object.__setattr__(self, "kind", kind)

        m = self.maximal_ideal_cycle
        if m is not None:
            self._check_on_graph(m, "maximal ideal cycle")
            if not (m.is_integral() and m.is_positive() and is_anti_nef(m)):
                raise GraphError(f"maximal ideal cycle must be integral, anti-nef and > 0: {m!r}")
        c = self.cohomological_cycle
        if c is not None:
            if pg == 0:
                raise ValueError("a rational singularity has no cohomological cycle")
            self._check_on_graph(c, "cohomological cycle")
            if not (c.is_integral() and c.is_positive()):
                raise GraphError(f"cohomological cycle must be integral and > 0: {c!r}")

    def _check_on_graph(self, z: Cycle, what: str):
        if z.graph is not self.graph and z.graph != self.graph:
            raise GraphError(f"{what} is not on the singularity's graph")

    @property
    def is_rational(self) -> bool:
        return self.pg == 0

    def maximal_ideal_cycle_or_default(self) -> Cycle:
        """``M``; defaults to ``Z_f`` for rational or minimally elliptic data on a minimal graph."""
        if self.maximal_ideal_cycle is not None:
            return self.maximal_ideal_cycle
        if self.kind in (RATIONAL, MINIMALLY_ELLIPTIC) and is_minimal(self.graph):
            return fundamental_cycle(self.graph)
        raise MissingAnalyticData("maximal ideal cycle")

    def cohomological_cycle_or_default(self) -> Cycle:
        """``C_X``; defaults to ``Z_K`` for Gorenstein data with pg > 0 on a minimal graph."""
        if self.cohomological_cycle is not None:
            return self.cohomological_cycle
        if self.pg == 0:
            raise ValueError("a rational singularity has no cohomological cycle")
        g = self.graph
        if self.gorenstein and self.pg and is_minimal(g) and is_numerically_gorenstein(g):
            zk = canonical_cycle(g)
            if zk.is_positive():
                return zk
        raise MissingAnalyticData("cohomological cycle")


def degree(s: SingularityData) -> int:
    """``-Z_f^2`` on the minimal resolution."""
    g = s.graph
    if not is_minimal(g):
        raise GraphError("degree is defined on the minimal resolution; contract the (-1)-curves first")
    zf = fundamental_cycle(g)
    return int(-zf.dot(zf))
