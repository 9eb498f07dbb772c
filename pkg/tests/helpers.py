"""Graph builders and random generators shared by the tests."""
from __future__ import annotations

import random

from pgcycles import DualGraph, GenericOn, Intersection, SingularityData, Vertex
from pgcycles.errors import GraphError


def star(center, arms, center_genus=0, arm_genus=0):
    vs = [Vertex("E0", center, center_genus)] + [Vertex(f"E{i}", w, arm_genus) for i, w in enumerate(arms, 1)]
    return DualGraph(vs, [("E0", f"E{i}") for i in range(1, len(arms) + 1)])


def chain(weights):
    vs = [Vertex(f"E{i}", w, 0) for i, w in enumerate(weights)]
    return DualGraph(vs, [(f"E{i}", f"E{i + 1}") for i in range(len(weights) - 1)])


def single(self_int, genus):
    return DualGraph([Vertex("E0", self_int, genus)])


def e237():
    return star(-1, [-2, -3, -7])


def degree4_star():
    return star(-2, [-3, -3, -3, -3])


def random_tree(rng: random.Random, n, weights=range(-5, 0), genus_p=0.15, check_definite=False):
    vs = [Vertex(f"E{i}", rng.choice(weights), 1 if rng.random() < genus_p else 0) for i in range(n)]
    edges = [(f"E{rng.randrange(i)}", f"E{i}") for i in range(1, n)]
    return DualGraph(vs, edges, check_definite=check_definite)


def random_definite_graph(rng: random.Random, max_vertices=5):
    """A random negative definite tree; weights get more negative until it is definite."""
    while True:
        try:
            return random_tree(rng, rng.randint(1, max_vertices), check_definite=True)
        except GraphError:
            continue


def random_center(rng: random.Random, g: DualGraph):
    if g.edges and rng.random() < 0.4:
        a, b = rng.choice(g.edges)[:2]
        return Intersection(a, b)
    return GenericOn(rng.choice(g.ids))


def random_cycle(rng: random.Random, g: DualGraph, lo=-3, hi=5):
    return g.cycle({v: rng.randint(lo, hi) for v in g.ids})


def random_positive_cycle(rng: random.Random, g: DualGraph, hi=4):
    return g.cycle({v: rng.randint(1, hi) for v in g.ids})


def sing(g, pg=None, gorenstein=False, kind=None, **kw):
    return SingularityData(g, pg=pg, gorenstein=gorenstein, kind=kind, **kw)
