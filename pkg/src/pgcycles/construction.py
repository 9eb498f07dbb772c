"""Building p_g-cycles by blowing up where a general section meets C.

A general ``h`` with ``div(h) = W + H`` has ``H`` meeting each ``E_j``
transversally in ``-W.E_j`` points.  Those points are tracked as branch
tokens.  Each sweep blows up the branch points lying on ``supp(C)``,
replaces ``C`` by ``b*C - F`` and moves each token onto its new curve.
When no token lies on ``supp(C)`` the exceptional part of ``div(h)`` is
the p_g-cycle.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .blowup import BlowupMap, OnBranch, blow_up, pullback_along
from .cycles import SingularityData, _increment_closure, canonical_cycle, k_dot, k_vector
from .errors import ConstructionError, GraphError
from .graph import Cycle, DualGraph, is_anti_nef, support

__all__ = [
    "Branch",
    "ConstructionState",
    "Seed",
    "SweepRecord",
    "ConstructionResult",
    "Certificate",
    "choose_W",
    "check_W",
    "seed_C0",
    "run_construction",
    "certify_pg_cycle",
]


def _w_floor(g: DualGraph) -> list[int]:
    kv = k_vector(g)
    floor = []
    for v, k in zip(g.vertices, kv):
        bound = max(k, 2 * v.genus, 0)
        if g.neighbors(v.id):
            bound = max(bound, k + 1)
        floor.append(bound)
    return floor


def choose_W(s: SingularityData | DualGraph) -> Cycle:
    """Smallest integral ``W >= E`` with ``-W.E_j >= max(K E_j + [E_j has a neighbour], K E_j, 2 g_j)``.

    Only neighbours change ``(K + E_i) E_j`` upward (by 1), so the bound
    over all ``i`` reduces to that single term.
    """
    g = s.graph if isinstance(s, SingularityData) else s
    return _increment_closure(g.reduced(), _w_floor(g))


def check_W(w: Cycle) -> list[str]:
    """Names of the W constraints ``w`` violates (empty if it is admissible)."""
    g = w.graph
    bad = []
    if not (w.is_integral() and w.is_positive()):
        bad.append("W integral and > 0")
    pair = w.pairings()
    for v, need in zip(g.ids, _w_floor(g)):
        if -pair[v] < need:
            bad.append(f"-W.{v} >= {need}")
    return bad


@dataclass(frozen=True)
class Seed:
    cycle: Cycle
    strategy: str
    conditional: bool = False
    note: str = ""


def seed_C0(s: SingularityData, strategy="canonical", W: Cycle | None = None) -> Seed:
    """Starting cycle ``C_0``.

    ``strategy`` is ``"canonical"`` (``Z_K``, which must be integral and
    > 0), ``"W"``, or an explicit :class:`Cycle`.  An explicit cycle is
    accepted, but the certificate built on it is conditional: its
    ``h^1(O_C) = p_g`` hypothesis cannot be checked from the graph.
    """
    g = s.graph
    if s.is_rational:
        w = W if W is not None else choose_W(s)
        return Seed(w, "W", False, "rational: every anti-nef cycle is already a p_g-cycle")
    if isinstance(strategy, Cycle):
        if strategy.graph != g:
            raise GraphError("C0 is not on the singularity's graph")
        if not (strategy.is_integral() and strategy.is_positive()):
            raise ConstructionError(f"C0 must be integral and > 0: {strategy!r}")
        return Seed(strategy, "explicit", True, "h^1(O_C0) = pg is assumed, not checked")
    if strategy == "canonical":
        zk = canonical_cycle(g)
        if not zk.is_integral():
            raise ConstructionError(f"canonical cycle is not integral: {zk!r}")
        if not zk.is_positive():
            raise ConstructionError(f"canonical cycle is not > 0: {zk!r}")
        return Seed(zk, "canonical")
    if strategy == "W":
        return Seed(W if W is not None else choose_W(s), "W")
    raise ValueError(f"unknown seed strategy {strategy!r}")


@dataclass
class Branch:
    """One point of ``H`` on the exceptional set, followed through blow-ups.

    ``chain`` lists the curves created over this point with their
    multiplicity ``m`` in ``div(h)`` beyond the pullback of ``W``.
    """

    id: str
    carrier: str
    chain: list = field(default_factory=list)


@dataclass
class ConstructionState:
    graph: DualGraph
    C: Cycle
    branches: list
    step: int = 0
    D: Cycle | None = None


@dataclass(frozen=True)
class SweepRecord:
    step: int
    blown: tuple
    carriers: tuple
    C_after: Cycle

    @property
    def count(self):
        return len(self.blown)


@dataclass(frozen=True)
class ConstructionResult:
    sing: SingularityData
    W: Cycle
    seed: Seed
    Y: DualGraph
    Z: Cycle
    C: Cycle
    n: int
    history: tuple
    branches: tuple
    sweeps: tuple

    @property
    def C0(self) -> Cycle:
        return self.seed.cycle

    @property
    def KZ(self) -> Fraction:
        return k_dot(self.Y, self.Z)

    @property
    def Zsq(self) -> Fraction:
        return self.Z.dot(self.Z)

    @property
    def branch_counts(self) -> list[int]:
        return [s.count for s in self.sweeps]

    def ladder_cycle(self) -> Cycle:
        """``pullback(W) + sum m F_m``, the divisor bookkeeping recomputed independently."""
        z = pullback_along(self.history, self.W)
        for b in self.branches:
            for v, m in b.chain:
                z = z + m * self.Y.basis(v)
        return z


def _initial_branches(W: Cycle) -> list[Branch]:
    pair = W.pairings()
    out = []
    for v in W.graph.ids:
        for _ in range(int(-pair[v])):
            out.append(Branch(f"h{len(out)}", v))
    return out


def run_construction(
    s: SingularityData,
    W: Cycle | None = None,
    C0=None,
    *,
    shuffle_seed: int | None = None,
) -> ConstructionResult:
    """Iterate branch blow-ups until no branch point lies on ``supp(C)``.

    ``C0`` is a :class:`Seed`, a cycle, a strategy name or ``None`` (Z_K
    when possible, else W).  ``shuffle_seed`` permutes the blow-up order
    inside each sweep; the output does not depend on it.
    """
    g = s.graph
    if W is None:
        W = choose_W(s)
    if W.graph != g:
        raise GraphError("W is not on the singularity's graph")
    if not (W.is_integral() and W.is_positive() and is_anti_nef(W)):
        raise ConstructionError(f"W must be integral, anti-nef and > 0: {W!r}")
    if isinstance(C0, Seed):
        seed = C0
    elif C0 is None:
        try:
            seed = seed_C0(s, "canonical", W)
        except ConstructionError:
            seed = seed_C0(s, "W", W)
    else:
        seed = seed_C0(s, C0, W)
    if seed.cycle.graph != g:
        raise GraphError("C0 is not on the singularity's graph")

    branches = _initial_branches(W)
    state = ConstructionState(g, seed.cycle, branches, 0, W)
    history: list[BlowupMap] = []
    sweeps = []
    bound = int(seed.cycle.max_coefficient())
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None

    if not s.is_rational:
        while True:
            supp = support(state.C)
            active = [b for b in state.branches if b.carrier in supp]
            if not active:
                break
            if state.step >= bound:
                raise ConstructionError(
                    f"no termination after {state.step} sweeps (bound {bound}); this is a bug"
                )
            if rng is not None:
                rng.shuffle(active)
            blown, carriers = [], []
            for b in active:
                m = blow_up(state.graph, OnBranch(b.id, b.carrier))
                history.append(m)
                f = m.exceptional
                state.C = m.pullback(state.C) - f
                state.D = m.pullback(state.D) + f
                b.chain.append((m.new_vertex, len(b.chain) + 1))
                carriers.append(b.carrier)
                b.carrier = m.new_vertex
                blown.append(b.id)
                state.graph = m.target
            state.step += 1
            order = sorted(range(len(blown)), key=lambda i: int(blown[i][1:]))
            sweeps.append(
                SweepRecord(
                    state.step,
                    tuple(blown[i] for i in order),
                    tuple(carriers[i] for i in order),
                    state.C,
                )
            )

    return ConstructionResult(
        sing=s,
        W=W,
        seed=seed,
        Y=state.graph,
        Z=state.D,
        C=state.C,
        n=state.step,
        history=tuple(history),
        branches=tuple(Branch(b.id, b.carrier, list(b.chain)) for b in state.branches),
        sweeps=tuple(sweeps),
    )


@dataclass(frozen=True)
class Certificate:
    checks: dict
    good_certified: bool
    multiplicity: int | None
    conditional: bool

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, ok in self.checks.items() if not ok]


def certify_pg_cycle(result: ConstructionResult) -> Certificate:
    """Numeric checks on a construction's output.

    ``Z`` anti-nef and integral, ``Z.E = 0`` on ``supp(C_n)`` (for rational
    input: no blow-ups at all), the sweep bound, and agreement with the
    ``pullback(W) + sum m F_m`` ledger.  For a
    canonical seed also ``K Z = 0`` and ``C_n = Z_K(Y)``; with a Gorenstein
    singularity that certifies ``I_Z`` as a good ideal.
    """
    z, y = result.Z, result.Y
    checks = {}
    checks["integral"] = z.is_integral()
    checks["anti_nef"] = is_anti_nef(z)
    if result.sing.is_rational:
        # every anti-nef cycle is a p_g-cycle; there is nothing to blow up
        checks["rational_model"] = result.n == 0
    else:
        pair = z.pairings()
        checks["perp_on_support_C"] = all(pair[v] == 0 for v in support(result.C))
    checks["step_bound"] = result.n <= result.C0.max_coefficient()
    checks["divisor_ledger"] = z == result.ladder_cycle()
    canonical = result.seed.strategy == "canonical"
    if canonical:
        checks["KZ_zero"] = result.KZ == 0
        checks["C_n_canonical"] = result.C == canonical_cycle(y)
    ok = all(checks.values())
    good = ok and canonical and result.sing.gorenstein
    mult = int(-result.Zsq) if ok else None
    return Certificate(checks, good, mult, result.seed.conditional)
