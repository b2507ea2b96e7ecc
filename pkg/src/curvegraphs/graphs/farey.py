"""Slopes on the once-punctured torus and distances in the Farey graph.

Two slopes are adjacent when the curves meet once, i.e. |p s - q r| = 1. A
unimodular change of coordinates sends the target to infinity. Distances from
infinity follow the continued fraction: walking down the triangles crossed by
the vertical line to p/q, each new vertex is one step from the nearer end of
the edge it hangs on.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Any, Sequence


class NonUnimodular(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Slope:
    p: int
    q: int

    def __post_init__(self) -> None:
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"({self.p}, {self.q}) is not a primitive vector")
        if self.q < 0 or (self.q == 0 and self.p != 1):
            raise ValueError(f"({self.p}, {self.q}) is not normalized")

    @classmethod
    def of(cls, p: int, q: int) -> Slope:
        if gcd(p, q) != 1:
            raise ValueError(f"({p}, {q}) is not a primitive vector")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    def __str__(self) -> str:
        return "inf" if self.q == 0 else f"{self.p}/{self.q}"


INF = Slope(1, 0)


def _slope(s) -> Slope:
    return s if isinstance(s, Slope) else Slope.of(*s)


def farey_adjacent(s, t) -> bool:
    s, t = _slope(s), _slope(t)
    return abs(s.p * t.q - s.q * t.p) == 1


def _check(M: Sequence[Sequence[int]]) -> tuple[int, int, int, int]:
    (a, b), (c, d) = M
    if abs(a * d - b * c) != 1:
        raise NonUnimodular(f"det {a * d - b * c} != +-1")
    return a, b, c, d


def farey_apply(M: Sequence[Sequence[int]], s) -> Slope:
    a, b, c, d = _check(M)
    s = _slope(s)
    return Slope.of(a * s.p + b * s.q, c * s.p + d * s.q)


def _to_infinity(t: Slope) -> tuple[tuple[int, int], tuple[int, int]]:
    # extended gcd: x p + y q = 1, then [[x, y], [-q, p]] sends (p, q) to (1, 0)
    old_r, r, old_x, x, old_y, y = t.p, t.q, 1, 0, 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_x, x = x, old_x - k * x
        old_y, y = y, old_y - k * y
    if old_r < 0:
        old_x, old_y = -old_x, -old_y
    return ((old_x, old_y), (-t.q, t.p))


def continued_fraction(p: int, q: int) -> list[int]:
    out = []
    while q:
        a = p // q
        out.append(a)
        p, q = q, p - a * q
    return out


def _distance_from_infinity(s: Slope) -> int:
    if s == INF:
        return 0
    a0 = s.p // s.q
    if s.q == 1:
        return 1
    # the triangle (inf, a0, a0 + 1) is the first one crossed on the way to s;
    # every Farey edge separates the graph, so a path to a new mediant passes
    # through one end of the edge it hangs on
    left, right = (a0, 1), (a0 + 1, 1)
    d_left = d_right = 1
    while True:
        m = (left[0] + right[0], left[1] + right[1])
        d_m = min(d_left, d_right) + 1
        if m == (s.p, s.q):
            return d_m
        # compare s with m: s < m iff s.p * m.q < m.p * s.q
        if s.p * m[1] < m[0] * s.q:
            right, d_right = m, d_m
        else:
            left, d_left = m, d_m


def farey_distance(s, t) -> int:
    s, t = _slope(s), _slope(t)
    return _distance_from_infinity(farey_apply(_to_infinity(t), s))


def bounded_slopes(B: int) -> list[Slope]:
    """Every normalized slope with |p| <= B and q <= B."""
    out = [INF]
    for q in range(1, B + 1):
        for p in range(-B, B + 1):
            if gcd(p, q) == 1:
                out.append(Slope(p, q))
    return out


def _bezout(a: int, b: int) -> tuple[int, int]:
    # x, y with a x + b y = gcd(a, b) = 1
    old_r, r, old_x, x, old_y, y = a, b, 1, 0, 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_x, x = x, old_x - k * x
        old_y, y = y, old_y - k * y
    if old_r < 0:
        old_x, old_y = -old_x, -old_y
    return old_x, old_y


def _k_range(c: int, step: int, B: int) -> tuple[int, int]:
    """Integers k with |c + k step| <= B (step != 0), or a wide range when step == 0."""
    if step == 0:
        return (-(10**18), 10**18) if abs(c) <= B else (1, 0)
    a, b = (-B - c, B - c) if step > 0 else (c - B, c + B)
    step = abs(step)
    return -((-a) // step), b // step


def _box_edges(B: int, index: dict[Slope, int]):
    """Yield (s, t) for every Farey edge with both ends in the box (both orders)."""
    for s in index:
        # p u - q r = 1 has the solutions (r0 + k p, u0 + k q)
        x, y = _bezout(s.p, -s.q)  # s.p * x - s.q * y = 1 gives u0 = x, r0 = y
        r0, u0 = y, x
        lo, hi = _k_range(u0, s.q, B)
        if s.p:
            lo2, hi2 = _k_range(r0, s.p, B)
            lo, hi = max(lo, lo2), min(hi, hi2)
        for k in range(lo, hi + 1):
            t = Slope.of(r0 + k * s.p, u0 + k * s.q)
            if t in index:
                yield s, t


def farey_graph(B: int):
    """The Farey graph on slopes with |p|, |q| <= B as a :class:`GraphModel`."""
    from .model import GraphModel

    verts = bounded_slopes(B)
    index = {s: i for i, s in enumerate(verts)}
    g = GraphModel(meta={"builder": "farey", "B": B})
    for s in verts:
        g.add_vertex(str(s), p=s.p, q=s.q, label=str(s))
    for s, t in _box_edges(B, index):
        g.add_edge(str(s), str(t))
    return g


def bounded_farey_distances(B: int, sources: Sequence) -> tuple[dict[Slope, int], Any]:
    """Exhaustive distances in the Farey graph restricted to the box of size B.

    Returns the vertex index and a (len(sources), V) matrix of path lengths
    (``inf`` when the box disconnects a pair). Paths never leave the box, so
    these are upper bounds that are exact whenever some geodesic stays inside.
    """
    import numpy as np
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import shortest_path

    verts = bounded_slopes(B)
    index = {s: i for i, s in enumerate(verts)}
    rows, cols = [], []
    for s, t in _box_edges(B, index):
        rows.append(index[s])
        cols.append(index[t])
    V = len(verts)
    A = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(V, V)).tocsr()
    src = [index[_slope(s)] for s in sources]
    D = shortest_path(A, directed=False, unweighted=True, indices=src)
    return index, D
