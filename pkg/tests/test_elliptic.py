import random
from fractions import Fraction

import pytest

from pgcycles import IdealDescriptor, SingularityData, classify_ulrich, colength, k_dot
from pgcycles.elliptic import (
    EllipticGroup,
    EllipticSingularity,
    GroupElement,
    Parametrization,
    realize_case,
    restricted_class,
    torsion_count,
)
from pgcycles.invariants import Unknown

G = EllipticGroup()


def test_group_law():
    p, q = G.element("1/3", "1/2"), G.element("2/3", "1/2")
    assert (p + q).is_zero()
    assert -p == q and p - p == G.zero()
    assert 3 * p == G.element(0, "1/2")
    assert p.order() == 6
    assert GroupElement(Fraction(5, 4), -1) == G.element("1/4", 0)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_torsion_has_n_squared_points(n):
    pts = G.torsion(n)
    assert len(set(pts)) == n * n
    assert all((n * p).is_zero() for p in pts)


def test_divide_and_count():
    t = G.element("1/7", "3/5")
    roots = G.divide(2, t)
    assert len(set(roots)) == 4 and all(2 * r == t for r in roots)
    assert torsion_count(G, 2, t) == 4
    assert torsion_count(G, 2, t, exclude=roots[:1]) == 3


def test_tangent_point_class_e2():
    rng = random.Random(2)
    for _ in range(5):
        c = G.random_element(rng)
        solutions = 0
        candidates = G.divide(2, c) + [G.random_element(rng) for _ in range(6)]
        for p in candidates:
            s = EllipticSingularity(2, c)
            g0 = s.minimal_graph()
            m = s.blow_up_point(g0, p)
            z = m.pullback(g0.reduced()) + 2 * m.exceptional
            rc = restricted_class(s, z, [m])
            assert rc.degree == 0
            solutions += rc.trivial is True
        assert solutions == 4


def test_restricted_class_needs_registered_points():
    s = EllipticSingularity(3)
    g0 = s.minimal_graph()
    from pgcycles import GenericOn, blow_up

    m = blow_up(g0, GenericOn("E0"))
    rc = restricted_class(s, m.pullback(g0.reduced()), [m])
    assert rc.cls == Unknown(f"point of E0 under {m.new_vertex}")
    assert rc.degree == 3 and rc.trivial is False


def test_parametrization_descriptions():
    assert Parametrization("single").describe() == "single"
    assert Parametrization("P1 minus points", 4).describe() == "P1 minus 4 points"
    assert Parametrization("finite", 3).describe() == "3"


@pytest.mark.parametrize("e", range(5, 13))
def test_no_ulrich_ideals_from_degree_five(e):
    assert classify_ulrich(e) == []


def test_classification_independent_of_base_class():
    rng = random.Random(9)
    for e in (1, 2, 3, 4):
        ref = [u.to_dict() for u in classify_ulrich(e)]
        for _ in range(3):
            assert [u.to_dict() for u in classify_ulrich(e, G, G.random_element(rng))] == ref


def test_degree_two_type_c_has_four_ideals():
    (c,) = [u for u in classify_ulrich(2) if u.label == "(c)"]
    assert c.parametrization.describe() == "4"
    assert (c.colength, c.KZ, c.mu) == (3, 0, 3)
    assert c.point_multiplicities == (2,)


def test_every_case_is_good_and_three_generated():
    for e in (1, 2, 3, 4):
        for u in classify_ulrich(e):
            assert -u.Zsq == 2 * u.colength
            assert u.KZ == 2 * (1 - u.h1 + u.integral_gap)
            assert u.mu in (3, None)
            assert u.MZ - u.integral_gap <= 3


def test_families_are_numerically_constant():
    rng = random.Random(4)
    for e in (1, 2, 3):
        for u in classify_ulrich(e):
            if not u.point_multiplicities:
                continue
            seen = set()
            for _ in range(2):
                s = EllipticSingularity(e, G.zero())
                pts = [G.random_element(rng) for _ in u.point_multiplicities]
                z, maps, M = realize_case(s, dict(u.base_cycle), u.point_multiplicities, pts)
                sd = SingularityData(z.graph, kind="minimally_elliptic", maximal_ideal_cycle=M)
                d = IdealDescriptor(sd, z, h1=u.h1, integral_gap=u.integral_gap)
                seen.add((colength(d), z.dot(z), k_dot(z.graph, z), M.dot(z)))
            assert len(seen) == 1
            assert seen.pop()[:3] == (u.colength - u.integral_gap, u.Zsq, u.KZ)


def test_bad_degree():
    with pytest.raises(ValueError):
        classify_ulrich(0)
    with pytest.raises(ValueError):
        EllipticSingularity(True)
