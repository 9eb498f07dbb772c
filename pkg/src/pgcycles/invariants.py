"""Numeric ideal theory of anti-nef cycles.

An :class:`IdealDescriptor` is the combinatorial shadow of an
``m``-primary ideal ``I`` whose integral closure is ``I_Z``: the cycle
``Z`` plus the analytic numbers the graph cannot see (``h^1(O_X(-Z))``,
the colength of ``I`` in its integral closure, stability).  Functions here
combine those with intersection numbers; whenever a needed datum is absent
they return :class:`Unknown` naming it instead of guessing.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .blowup import BlowupMap, descend, is_minimal
from .cycles import SingularityData, canonical_cycle, degree, fundamental_cycle, k_dot
from .errors import BlowupError, GraphError, InconsistentAnalyticData, MissingAnalyticData
from .graph import Cycle, is_anti_nef, support

__all__ = [
    "Unknown",
    "TriBool",
    "H1Value",
    "is_known",
    "IdealDescriptor",
    "MuData",
    "colength",
    "ideal_colength",
    "multiplicity",
    "epsilon",
    "mu_data",
    "is_pg_cycle",
    "good_ideal_test",
    "ulrich_screen",
    "report",
]


@dataclass(frozen=True)
class Unknown:
    """A value that depends on analytic data the inputs do not supply."""

    reason: str

    def __bool__(self):
        raise TypeError(f"Unknown({self.reason!r}) has no truth value; test with `is True` / `is False`")


TriBool = Union[bool, Unknown]
H1Value = Union[int, Unknown]


def is_known(x) -> bool:
    return not isinstance(x, Unknown)


def _as_value(x, name):
    if x is None or isinstance(x, Unknown):
        return x if isinstance(x, Unknown) else Unknown(name)
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise ValueError(f"{name} must be a non-negative integer or unknown, got {x!r}")
    return x


@dataclass(frozen=True)
class IdealDescriptor:
    """An ideal ``I`` with ``I`` integral over ``I_Z`` and ``Z`` anti-nef.

    ``h1`` is ``h^1(O_X(-Z))``, ``integral_gap`` is the length of
    ``I_Z / I`` (0 when ``I`` is integrally closed).  ``None`` means unknown.
    Rational singularities force ``h1 = 0`` and generation; ``h1 = pg``
    with no fixed component forces generation.
    """

    sing: SingularityData
    Z: Cycle
    h1: H1Value | None = None
    integral_gap: int | Unknown | None = None
    no_fixed_component: bool = False
    generated: bool = False
    stable: bool = False

    def __post_init__(self):
        s, z = self.sing, self.Z
        if z.graph is not s.graph and z.graph != s.graph:
            raise GraphError("ideal cycle is not on the singularity's graph")
        if not (z.is_integral() and z.is_positive() and is_anti_nef(z)):
            raise GraphError(f"an ideal cycle must be integral, anti-nef and > 0: {z!r}")
        h1 = _as_value(self.h1, "h1")
        gap = _as_value(self.integral_gap, "integral_gap")
        gen, nfc, stable = self.generated, self.no_fixed_component or self.generated, self.stable
        if s.pg is not None and is_known(h1) and h1 > s.pg:
            raise InconsistentAnalyticData(f"h1 = {h1} exceeds pg = {s.pg}")
        if s.is_rational:
            if is_known(h1) and h1 != 0:
                raise InconsistentAnalyticData("h1 of an anti-nef cycle on a rational singularity is 0")
            h1, gen, nfc = 0, True, True
            stable = stable or gap == 0
        elif s.pg is not None and h1 == s.pg and nfc:
            gen = True
            stable = stable or gap == 0
        object.__setattr__(self, "h1", h1)
        object.__setattr__(self, "integral_gap", gap)
        object.__setattr__(self, "generated", gen)
        object.__setattr__(self, "no_fixed_component", nfc)
        object.__setattr__(self, "stable", stable)

    @property
    def graph(self):
        return self.Z.graph


def colength(d: IdealDescriptor) -> int | Unknown:
    """``l(A/I_Z) = -(Z^2 + K Z)/2 + pg - h1`` (Kato's Riemann-Roch)."""
    pg = d.sing.pg
    if pg is None:
        return Unknown("pg")
    if not is_known(d.h1):
        return d.h1
    z = d.Z
    value = -(z.dot(z) + k_dot(z.graph, z)) / 2 + pg - d.h1
    if value.denominator != 1:
        raise InconsistentAnalyticData(f"colength came out non-integral ({value}); check pg and h1")
    if value < 0:
        raise InconsistentAnalyticData(f"colength came out negative ({value}); check pg and h1")
    return int(value)


def ideal_colength(d: IdealDescriptor) -> int | Unknown:
    """``l(A/I) = l(A/I_Z) + l(I_Z/I)``."""
    c = colength(d)
    if not is_known(c):
        return c
    if not is_known(d.integral_gap):
        return d.integral_gap
    return c + d.integral_gap


def multiplicity(d: IdealDescriptor) -> int:
    """``e_0(I) = -Z^2``; valid once ``O_X(-Z)`` is generated."""
    if not d.generated:
        raise MissingAnalyticData("generatedness of O_X(-Z)")
    return int(-d.Z.dot(d.Z))


def epsilon(s: SingularityData, z1: Cycle, z2: Cycle, h1_z1, h1_z2, h1_sum) -> int | Unknown:
    """``pg - h1(Z1) - h1(Z2) + h1(Z1+Z2)`` with its range checks.

    The value must lie in ``[0, pg]``, and vanishes as soon as either
    cycle is a p_g-cycle; violations mean the h^1 inputs are inconsistent.
    """
    for z in (z1, z2):
        if z.graph is not s.graph and z.graph != s.graph:
            raise GraphError("cycle is not on the singularity's graph")
        if not is_anti_nef(z):
            raise GraphError(f"epsilon is defined for anti-nef cycles: {z!r}")
    if s.pg is None:
        return Unknown("pg")
    values = []
    for name, h in (("h1(Z1)", h1_z1), ("h1(Z2)", h1_z2), ("h1(Z1+Z2)", h1_sum)):
        h = _as_value(h, name)
        if not is_known(h):
            return h
        if h > s.pg:
            raise InconsistentAnalyticData(f"{name} = {h} exceeds pg = {s.pg}")
        values.append(h)
    a, b, c = values
    eps = s.pg - a - b + c
    if not 0 <= eps <= s.pg:
        raise InconsistentAnalyticData(f"epsilon = {eps} outside [0, pg={s.pg}]")
    if eps and s.pg in (a, b):
        raise InconsistentAnalyticData("epsilon must vanish when one cycle is a p_g-cycle")
    return eps


@dataclass(frozen=True)
class MuData:
    """Bounds on the number of generators ``mu(I_Z)``.

    ``exact_coangle`` is ``l(I_Z / closure(I_Z m))``; ``mu`` is filled in
    only where it is known to equal ``-MZ + 1``.
    """

    upper: int
    lower: int | Unknown
    exact_coangle: int | Unknown
    mu: int | Unknown


def _maximal_cycle(d: IdealDescriptor, M: Cycle | None) -> Cycle:
    if M is None:
        M = d.sing.maximal_ideal_cycle_or_default()
    if M.graph is not d.graph and M.graph != d.graph:
        raise GraphError("maximal ideal cycle is not on the ideal's graph")
    if not is_anti_nef(M):
        raise GraphError(f"maximal ideal cycle must be anti-nef: {M!r}")
    return M


def mu_data(d: IdealDescriptor, M: Cycle | None = None, eps=None, *, maximal_ideal_h1=None) -> MuData:
    """Generator-count data from ``-MZ``.

    ``eps`` is ``epsilon(Z, M)`` if known.  It is forced to 0 when ``I_Z``
    or ``m`` is a p_g-ideal (pass ``maximal_ideal_h1 = pg`` for the latter);
    in those cases ``mu`` is exact.
    """
    M = _maximal_cycle(d, M)
    pg = d.sing.pg
    upper = int(-M.dot(d.Z)) + 1
    lower = upper - pg if pg is not None else Unknown("pg")
    exact_known = is_pg_cycle(d) is True or (pg is not None and maximal_ideal_h1 == pg)
    if eps is None:
        eps = 0 if exact_known else Unknown("epsilon(Z, M)")
    eps = _as_value(eps, "epsilon(Z, M)")
    if is_known(eps):
        if pg is not None and eps > pg:
            raise InconsistentAnalyticData(f"epsilon = {eps} exceeds pg = {pg}")
        if exact_known and eps:
            raise InconsistentAnalyticData("epsilon(Z, M) vanishes for p_g-ideals")
    coangle = upper - eps if is_known(eps) else eps
    mu = coangle if exact_known else Unknown("mu = -MZ + 1 needs a p_g-ideal among I_Z and m")
    return MuData(upper, lower, coangle, mu)


_CLASS_REASON = "line-bundle class on C_X not graph-determined"


def is_pg_cycle(d: IdealDescriptor) -> TriBool:
    s = d.sing
    if s.is_rational:
        return True
    try:
        cx = s.cohomological_cycle_or_default()
    except MissingAnalyticData:
        cx = None
    obstructed = False
    if cx is not None:
        pair = d.Z.pairings()
        obstructed = any(pair[v] != 0 for v in support(cx))
    if s.pg is not None and is_known(d.h1):
        if d.h1 == s.pg and d.generated:
            if obstructed:
                raise InconsistentAnalyticData("h1 = pg but O_{C_X}(-Z) has nonzero degree")
            return True
        if d.h1 < s.pg:
            return False
    if obstructed:
        return False
    if s.pg is None:
        return Unknown("pg")
    if is_known(d.h1):
        return Unknown("no fixed component of O_X(-Z)")
    return Unknown(_CLASS_REASON)


def good_ideal_test(d: IdealDescriptor) -> TriBool:
    """Decide goodness from numeric criteria where they apply.

    Rational: good iff integrally closed and represented on the minimal
    resolution.  Gorenstein: for a p_g-cycle good iff ``K Z = 0``; otherwise,
    for stable ``I``, good iff ``K Z = 2 (pg - h1 + gap)``.
    """
    s, gap = d.sing, d.integral_gap
    if s.is_rational:
        if is_known(gap) and gap > 0:
            return False
        try:
            z, _ = descend(d.Z)
        except BlowupError as exc:
            return Unknown(f"minimal model not reachable by simple contractions ({exc})")
        if not is_minimal(z.graph):
            return False
        return True if is_known(gap) else gap
    if not s.gorenstein:
        return Unknown("Gorenstein property")
    if s.pg is None:
        return Unknown("pg")
    kz = k_dot(d.graph, d.Z)
    if is_pg_cycle(d) is True:
        if is_known(gap) and gap > 0:
            return False
        if kz != 0:
            return False
        return True if is_known(gap) else gap
    if not is_known(d.h1):
        return d.h1
    if not is_known(gap):
        return gap
    if not d.generated:
        return Unknown("generatedness of O_X(-Z)")
    if not d.stable:
        return Unknown("stability I^2 = QI")
    return kz == 2 * (s.pg - d.h1 + gap)


def _minimal_degree(d: IdealDescriptor, history: Sequence[BlowupMap] | None) -> int:
    g = d.graph
    if history:
        base = history[0].source
        end = history[-1].target
        if end is not g and end != g:
            raise GraphError("blow-up history does not end at the ideal's graph")
        if not is_minimal(base):
            raise GraphError("blow-up history must start at the minimal resolution")
        zf = fundamental_cycle(base)
        return int(-zf.dot(zf))
    return degree(d.sing)


def ulrich_screen(
    d: IdealDescriptor,
    M: Cycle | None = None,
    history: Sequence[BlowupMap] | None = None,
    *,
    eps=None,
    maximal_ideal_h1=None,
) -> TriBool:
    """Screen a minimally elliptic ideal for the Ulrich property.

    A non-minimal graph needs ``history``, the blow-ups from the minimal
    resolution, so the degree ``e`` can be read off.  ``False`` is returned
    as soon as a necessary condition fails (``e >= 5``; p_g-ideal with
    ``e > 2``; gap > 1; not good; ``-MZ - gap > 3``); ``True`` only when
    goodness is certified and ``mu = 3`` is exact.
    """
    s = d.sing
    if not (s.gorenstein and s.pg == 1):
        raise ValueError("the Ulrich screen applies to minimally elliptic data (Gorenstein, pg = 1)")
    if not is_minimal(d.graph) and not history:
        return Unknown("degree on the minimal resolution (pass the blow-up history)")
    e = _minimal_degree(d, history)
    if e >= 5:
        return False
    gap = d.integral_gap
    if is_known(gap) and gap > 1:
        return False
    pgc = is_pg_cycle(d)
    if pgc is True and e > 2:
        return False
    good = good_ideal_test(d)
    if good is False:
        return False
    try:
        M = _maximal_cycle(d, M)
    except MissingAnalyticData as exc:
        return Unknown(exc.datum)
    mz = int(-M.dot(d.Z))
    if mz - (gap if is_known(gap) else 1) > 3:
        return False
    data = mu_data(d, M, eps, maximal_ideal_h1=maximal_ideal_h1)
    if is_known(data.mu) and gap == 0:
        if data.mu != 3:
            return False
        return good
    if is_known(data.exact_coangle) and gap == 0 and data.exact_coangle > 3:
        return False
    if good is not True:
        return good
    return Unknown("mu(I) = 3 not graph-determined")


def _json(x):
    if isinstance(x, Unknown):
        return {"unknown": x.reason}
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def report(d: IdealDescriptor, M: Cycle | None = None, **screen_kw) -> dict:
    """Every invariant of ``d`` as a JSON-ready dict; Unknowns carry their reason."""
    z = d.Z
    out = {
        "Z": z.to_dict()["coefficients"],
        "Z^2": _json(z.dot(z)),
        "KZ": _json(k_dot(z.graph, z)),
        "anti_nef": is_anti_nef(z),
        "h1": _json(d.h1),
        "integral_gap": _json(d.integral_gap),
    }
    zk = canonical_cycle(z.graph)
    out["canonical_cycle"] = zk.to_dict()["coefficients"]
    out["colength"] = _json(colength(d))
    out["ideal_colength"] = _json(ideal_colength(d))
    out["multiplicity"] = _json(multiplicity(d)) if d.generated else _json(Unknown("generatedness of O_X(-Z)"))
    try:
        mu = mu_data(d, M)
        out["mu"] = {k: _json(getattr(mu, k)) for k in ("lower", "upper", "exact_coangle", "mu")}
    except MissingAnalyticData as exc:
        out["mu"] = _json(Unknown(exc.datum))
    out["pg_cycle"] = _json(is_pg_cycle(d))
    out["good"] = _json(good_ideal_test(d))
    if d.sing.gorenstein and d.sing.pg == 1:
        out["ulrich"] = _json(ulrich_screen(d, M, **screen_kw))
    return out
