"""Weighted dual graphs, cycles and the intersection pairing.

Everything here is exact: coefficients are :class:`fractions.Fraction`
and every definiteness or sign decision is made without floating point.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import GraphError, GraphMismatch

__all__ = [
    "Vertex",
    "DualGraph",
    "QuadForm",
    "Cycle",
    "intersect",
    "is_negative_definite",
    "is_anti_nef",
    "perp",
    "support",
    "parse_rational",
    "format_rational",
]


def parse_rational(value) -> Fraction:
    """Accept ints, Fractions and ``"p/q"`` strings; reject floats."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"coefficient must be int, Fraction or 'p/q' string, got {value!r}")


def format_rational(q: Fraction):
    """JSON form of a rational: an int when integral, else ``"p/q"``."""
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _det(rows: Sequence[Sequence[int]]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for r in range(k + 1, n):
            f = m[r][k] / m[k][k]
            if f:
                for c in range(k, n):
                    m[r][c] -= f * m[k][c]
    return det


@dataclass(frozen=True)
class Vertex:
    id: str
    self_intersection: int
    genus: int = 0


class QuadForm:
    """Dense symmetric integer matrix of a dual graph's intersection form."""

    def __init__(self, matrix: Sequence[Sequence[int]]):
        self.matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        n = len(self.matrix)
        for i in range(n):
            if len(self.matrix[i]) != n:
                raise GraphError("intersection matrix is not square")
            for j in range(i):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise GraphError("intersection matrix is not symmetric")

    def __len__(self):
        return len(self.matrix)

    @cached_property
    def leading_minors(self) -> tuple[Fraction, ...]:
        """Leading principal minors of the negated matrix."""
        neg = [[Fraction(-x) for x in row] for row in self.matrix]
        n = len(neg)
        # without row swaps the k-th minor is the product of the first k pivots
        minors = []
        det = Fraction(1)
        for k in range(n):
            if neg[k][k] == 0:
                return tuple(minors) + tuple(_det([row[:j] for row in self.matrix[:j]]) * (-1) ** j
                                             for j in range(k + 1, n + 1))
            det *= neg[k][k]
            minors.append(det)
            for r in range(k + 1, n):
                f = neg[r][k] / neg[k][k]
                if f:
                    for c in range(k, n):
                        neg[r][c] -= f * neg[k][c]
        return tuple(minors)

    @property
    def is_negative_definite(self) -> bool:
        return all(m > 0 for m in self.leading_minors)

    def pair(self, x: Sequence, y: Sequence) -> Fraction:
        total = Fraction(0)
        for i, row in enumerate(self.matrix):
            if x[i]:
                total += x[i] * sum((a * b for a, b in zip(row, y) if a and b), Fraction(0))
        return total

    def apply(self, x: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum((a * b for a, b in zip(row, x) if a and b), Fraction(0)) for row in self.matrix)

    def solve(self, rhs: Sequence) -> tuple[Fraction, ...]:
        """Solve ``A x = rhs`` exactly; ``A`` must be nonsingular."""
        n = len(self.matrix)
        m = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(self.matrix)]
        for k in range(n):
            piv = next((r for r in range(k, n) if m[r][k] != 0), None)
            if piv is None:
                raise GraphError("intersection matrix is singular")
            m[k], m[piv] = m[piv], m[k]
            p = m[k][k]
            m[k] = [v / p for v in m[k]]
            for r in range(n):
                if r != k and m[r][k]:
                    f = m[r][k]
                    m[r] = [a - f * b for a, b in zip(m[r], m[k])]
        return tuple(row[n] for row in m)


class DualGraph:
    """Weighted dual graph of the exceptional set of a resolution.

    Vertices carry a self-intersection and a genus; edges are transverse
    intersections of multiplicity one.  The graph is immutable.  With
    ``check_definite=True`` (the default) construction also demands a
    negative definite intersection matrix; pass ``False`` to build a
    configuration only in order to test it.
    """

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable = (), *, check_definite: bool = True):
        verts = tuple(v if isinstance(v, Vertex) else Vertex(*v) for v in vertices)
        if not verts:
            raise GraphError("a dual graph needs at least one vertex")
        index: dict[str, int] = {}
        for i, v in enumerate(verts):
            if not isinstance(v.id, str) or not v.id:
                raise GraphError(f"vertex id must be a non-empty string, got {v.id!r}")
            if v.id in index:
                raise GraphError(f"duplicate vertex id {v.id!r}")
            if not isinstance(v.self_intersection, int) or isinstance(v.self_intersection, bool):
                raise GraphError(f"self-intersection of {v.id!r} must be an integer")
            if not isinstance(v.genus, int) or v.genus < 0:
                raise GraphError(f"genus of {v.id!r} must be a non-negative integer")
            index[v.id] = i
        self._vertices = verts
        self._index = index

        pairs: set[frozenset] = set()
        for e in edges:
            a, b, *rest = e
            mult = rest[0] if rest else 1
            if a not in index or b not in index:
                raise GraphError(f"edge {a!r}-{b!r} references an unknown vertex")
            if a == b:
                raise GraphError(f"loop at {a!r}: self-intersecting curves are not representable")
            if mult != 1:
                raise GraphError(
                    f"edge {a!r}-{b!r} has multiplicity {mult}; only transverse simple "
                    "intersections (multiplicity 1) are supported"
                )
            key = frozenset((a, b))
            if key in pairs:
                raise GraphError(f"edge {a!r}-{b!r} listed twice")
            pairs.add(key)
        self._edges = frozenset(pairs)
        self._adj: dict[str, tuple[str, ...]] = {
            v.id: tuple(sorted((w for p in pairs if v.id in p for w in p if w != v.id), key=index.get))
            for v in verts
        }
        self._check_connected()
        if check_definite:
            self.check_definite()

    def _check_connected(self):
        seen = {self._vertices[0].id}
        queue = deque(seen)
        while queue:
            for w in self._adj[queue.popleft()]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != len(self._vertices):
            missing = sorted(set(self._index) - seen)
            raise GraphError(f"dual graph is disconnected; unreachable vertices: {missing}")

    def check_definite(self):
        for v in self._vertices:
            if v.self_intersection > -1:
                raise GraphError(
                    f"vertex {v.id!r} has self-intersection {v.self_intersection}; "
                    "exceptional curves need E^2 <= -1"
                )
        if not self.form.is_negative_definite:
            raise GraphError("intersection matrix is not negative definite")

    # -- structure -----------------------------------------------------
    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self._vertices

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self._vertices)

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        out = [tuple(sorted(p, key=self._index.get)) for p in self._edges]
        return tuple(sorted(out, key=lambda e: (self._index[e[0]], self._index[e[1]])))

    def __len__(self):
        return len(self._vertices)

    def __contains__(self, vid):
        return vid in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.ids)

    def index(self, vid: str) -> int:
        try:
            return self._index[vid]
        except KeyError:
            raise GraphError(f"unknown vertex {vid!r}") from None

    def vertex(self, vid: str) -> Vertex:
        return self._vertices[self.index(vid)]

    def neighbors(self, vid: str) -> tuple[str, ...]:
        self.index(vid)
        return self._adj[vid]

    def adjacent(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self._edges

    def self_intersection(self, vid: str) -> int:
        return self.vertex(vid).self_intersection

    def genus(self, vid: str) -> int:
        return self.vertex(vid).genus

    @cached_property
    def form(self) -> QuadForm:
        n = len(self._vertices)
        mat = [[0] * n for _ in range(n)]
        for i, v in enumerate(self._vertices):
            mat[i][i] = v.self_intersection
        for p in self._edges:
            a, b = (self._index[x] for x in p)
            mat[a][b] = mat[b][a] = 1
        return QuadForm(mat)

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        return self.form.matrix

    # -- cycles --------------------------------------------------------
    def cycle(self, coefficients=None, **kw) -> "Cycle":
        coeffs = dict(coefficients or {})
        coeffs.update(kw)
        return Cycle(self, coeffs)

    def zero(self) -> "Cycle":
        return Cycle(self, {})

    def reduced(self) -> "Cycle":
        """The reduced exceptional cycle E = sum of all E_i."""
        return Cycle(self, {v: 1 for v in self.ids})

    def basis(self, vid: str) -> "Cycle":
        self.index(vid)
        return Cycle(self, {vid: 1})

    # -- value semantics -----------------------------------------------
    def _key(self):
        return (frozenset(self._vertices), self._edges)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, DualGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        vs = ", ".join(
            f"{v.id}({v.self_intersection}{', g=%d' % v.genus if v.genus else ''})" for v in self._vertices
        )
        es = ", ".join(f"{a}-{b}" for a, b in self.edges)
        return f"DualGraph([{vs}], [{es}])"

    def to_dict(self) -> dict:
        verts = sorted(self._vertices, key=lambda v: v.id)
        edges = sorted(tuple(sorted(p)) for p in self._edges)
        return {
            "vertices": [
                {"id": v.id, "self_intersection": v.self_intersection, "genus": v.genus} for v in verts
            ],
            "edges": [[a, b, 1] for a, b in edges],
        }

    @classmethod
    def from_dict(cls, data: Mapping, *, check_definite: bool = True) -> "DualGraph":
        try:
            verts = [
                Vertex(str(v["id"]), v["self_intersection"], v.get("genus", 0)) for v in data["vertices"]
            ]
            edges = [tuple(e) for e in data.get("edges", [])]
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph object: {exc!r}") from None
        for e in edges:
            if len(e) not in (2, 3):
                raise GraphError(f"edge entries are [idA, idB, mult], got {list(e)!r}")
        return cls(verts, edges, check_definite=check_definite)


def _same_graph(g1: DualGraph, g2: DualGraph):
    if g1 is not g2 and g1 != g2:
        raise GraphMismatch("cycles live on different graphs")


class Cycle:
    """Rational combination of the vertices of a :class:`DualGraph`.

    Coefficients are stored densely in vertex order, so membership is total;
    missing keys at construction mean zero.
    """

    __slots__ = ("graph", "_v")

    def __init__(self, graph: DualGraph, coefficients: Mapping[str, object] | Sequence = ()):
        self.graph = graph
        if isinstance(coefficients, Mapping):
            vec = [Fraction(0)] * len(graph)
            for vid, c in coefficients.items():
                vec[graph.index(vid)] = parse_rational(c)
        else:
            if len(coefficients) != len(graph):
                raise GraphError("coefficient vector length does not match the graph")
            vec = [parse_rational(c) for c in coefficients]
        self._v = tuple(vec)

    @property
    def vector(self) -> tuple[Fraction, ...]:
        return self._v

    def __getitem__(self, vid: str) -> Fraction:
        return self._v[self.graph.index(vid)]

    def items(self):
        return zip(self.graph.ids, self._v)

    @property
    def coefficients(self) -> dict[str, Fraction]:
        return dict(self.items())

    def __iter__(self):
        return iter(self.graph.ids)

    def _aligned(self, other: "Cycle") -> tuple[Fraction, ...]:
        """``other``'s coefficients in this graph's vertex order."""
        _same_graph(self.graph, other.graph)
        if other.graph is self.graph or other.graph.ids == self.graph.ids:
            return other._v
        return tuple(other[v] for v in self.graph.ids)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return Cycle(self.graph, [a + b for a, b in zip(self._v, self._aligned(other))])

    def __sub__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return Cycle(self.graph, [a - b for a, b in zip(self._v, self._aligned(other))])

    def __neg__(self):
        return Cycle(self.graph, [-a for a in self._v])

    def __mul__(self, k):
        if isinstance(k, (int, Fraction)) and not isinstance(k, bool):
            return Cycle(self.graph, [a * k for a in self._v])
        return NotImplemented

    __rmul__ = __mul__

    def dot(self, other: "Cycle") -> Fraction:
        return self.graph.form.pair(self._v, self._aligned(other))

    def pairings(self) -> dict[str, Fraction]:
        """``{E_i: Z.E_i}`` for every vertex."""
        return dict(zip(self.graph.ids, self.graph.form.apply(self._v)))

    # -- order ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        if self.graph is not other.graph and self.graph != other.graph:
            return False
        return self._v == self._aligned(other)

    def __hash__(self):
        return hash(frozenset(self.items()))

    def __ge__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return all(a >= b for a, b in zip(self._v, self._aligned(other)))

    def __le__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return other.__ge__(self)

    def __gt__(self, other):
        return self >= other and self != other

    def __lt__(self, other):
        return self <= other and self != other

    def is_zero(self) -> bool:
        return not any(self._v)

    def is_effective(self) -> bool:
        return all(a >= 0 for a in self._v)

    def is_positive(self) -> bool:
        """``Z > 0``: effective and nonzero."""
        return self.is_effective() and not self.is_zero()

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self._v)

    def max_coefficient(self) -> Fraction:
        return max(self._v)

    # -- presentation --------------------------------------------------
    def __repr__(self):
        terms = []
        for vid, c in self.items():
            if not c:
                continue
            s = str(c) if c.denominator == 1 else f"({c})"
            if c == 1:
                s = ""
            elif c == -1:
                s = "-"
            terms.append(f"{s}{vid}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        return f"Cycle({body})"

    def to_dict(self) -> dict:
        return {"coefficients": {vid: format_rational(c) for vid, c in sorted(self.items())}}

    @classmethod
    def from_dict(cls, graph: DualGraph, data: Mapping) -> "Cycle":
        coeffs = data.get("coefficients", data) if isinstance(data, Mapping) else data
        if not isinstance(coeffs, Mapping):
            raise GraphError("cycle JSON must map vertex ids to coefficients")
        try:
            return cls(graph, coeffs)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise GraphError(f"bad cycle coefficient: {exc}") from None


def intersect(z1: Cycle, z2: Cycle) -> Fraction:
    """Intersection number ``Z1 . Z2``."""
    return z1.dot(z2)


def is_negative_definite(g: DualGraph) -> bool:
    return g.form.is_negative_definite


def is_anti_nef(z: Cycle) -> bool:
    return all(p <= 0 for p in z.graph.form.apply(z.vector))


def perp(d: Cycle) -> frozenset[str]:
    """Vertices ``E_i`` with ``D . E_i = 0``."""
    return frozenset(vid for vid, p in d.pairings().items() if p == 0)


def support(z: Cycle) -> frozenset[str]:
    return frozenset(vid for vid, c in z.items() if c)
