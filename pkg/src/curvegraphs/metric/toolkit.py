"""Distances, hyperbolicity measurements and coarse-geometry checkers.

Everything here works on finite data: a :class:`GraphModel`, or an oracle
that decides small distances exactly. Reports are plain dataclasses that
serialize to versioned JSON.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from collections import deque
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from ..graphs.model import GraphModel, UnknownVertex

__all__ = [
    "REPORT_VERSION",
    "EXHAUSTIVE_QUADRUPLES",
    "Disconnected",
    "FamilyGap",
    "EmptyImage",
    "Condition2Fail",
    "UndecidedPair",
    "KindMismatch",
    "HyperbolicityReport",
    "GuessingReport",
    "QIReport",
    "CertifierReport",
    "TranslationReport",
    "GraphOracle",
    "bfs_distances",
    "all_distances",
    "diameter",
    "delta_four_point",
    "guessing_check",
    "quasi_retract_check",
    "qi_bound_from_retract",
    "qi_inequality_audit",
    "translation_growth",
    "bounded_orbit_certify",
    "putman_check",
]

REPORT_VERSION = 1
EXHAUSTIVE_QUADRUPLES = 10**6
INF = math.inf


class Disconnected(ValueError):
    pass


class FamilyGap(KeyError):
    pass


class EmptyImage(ValueError):
    pass


class Condition2Fail(AssertionError):
    def __init__(self, pair: tuple):
        super().__init__(f"no common partner in the orbit for {pair}")
        self.pair = pair


class UndecidedPair(ValueError):
    pass


class KindMismatch(TypeError):
    pass


class _Report:
    kind = "report"

    def to_dict(self) -> dict[str, Any]:
        return {"schema": self.kind, "version": REPORT_VERSION, **asdict(self)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, default=_plain)


def _plain(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x, key=repr)
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return repr(x)


# --- distances -----------------------------------------------------------------

def bfs_distances(G: GraphModel, v: str, adj: Mapping | None = None) -> dict[str, float]:
    """Shortest-path distances from v; unreachable vertices get ``inf``."""
    if v not in G.vertices:
        raise UnknownVertex(v)
    adj = adj if adj is not None else G.adjacency()
    dist: dict[str, float] = {v: 0}
    q = deque([v])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    for w in G.vertices:
        dist.setdefault(w, INF)
    return dist


def all_distances(G: GraphModel) -> dict[str, dict[str, float]]:
    adj = G.adjacency()
    return {v: bfs_distances(G, v, adj) for v in sorted(G.vertices)}


def diameter(G: GraphModel, subset: Iterable[str] | None = None) -> float:
    """Largest distance in G between two vertices of ``subset`` (default: all)."""
    keys = sorted(subset if subset is not None else G.vertices)
    adj = G.adjacency()
    best: float = 0
    for v in keys:
        d = bfs_distances(G, v, adj)
        best = max([best] + [d[w] for w in keys])
    return best


def _induced(G: GraphModel, keep: Iterable[str]) -> GraphModel:
    keep = set(keep)
    H = GraphModel(meta={"builder": "induced"})
    for k in sorted(keep):
        H.add_vertex(k, **G.vertices[k])
    for u, v in G.edges:
        if u in keep and v in keep:
            H.add_edge(u, v)
    return H


# --- hyperbolicity -------------------------------------------------------------

@dataclass
class HyperbolicityReport(_Report):
    kind = "hyperbolicity"
    quadruples: int
    exhaustive: bool
    delta4: Fraction
    slim: int | None
    triangles: int
    seed: int


def _defect(D, a, b, c, d) -> Fraction:
    s = sorted((D[a][b] + D[c][d], D[a][c] + D[b][d], D[a][d] + D[b][c]))
    return Fraction(int(s[2] - s[1]), 2)


def delta_four_point(
    G: GraphModel, sample_size: int = 20000, seed: int = 0, triangles: int = 0
) -> HyperbolicityReport:
    """Maximal four-point defect, exhaustive when |V|^4 is at most the threshold."""
    keys = sorted(G.vertices)
    if not keys:
        raise Disconnected("empty graph")
    dist = all_distances(G)
    if any(math.isinf(d) for row in dist.values() for d in row.values()):
        raise Disconnected("four-point defect needs a connected graph")
    idx = {k: i for i, k in enumerate(keys)}
    D = np.array([[dist[u][v] for v in keys] for u in keys], dtype=np.int64)
    n = len(keys)
    rng = random.Random(seed)
    if n**4 <= EXHAUSTIVE_QUADRUPLES:
        best = 0
        for a in range(n):
            for b in range(n):
                s1 = D[a, b] + D  # (c, d) -> d(a,b) + d(c,d)
                s2 = D[a][:, None] + D[b][None, :]  # d(a,c) + d(b,d)
                s3 = D[a][None, :] + D[b][:, None]  # d(a,d) + d(b,c)
                hi = np.maximum(np.maximum(s1, s2), s3)
                lo = np.minimum(np.minimum(s1, s2), s3)
                mid = s1 + s2 + s3 - hi - lo
                best = max(best, int((hi - mid).max()))
        delta, count, exhaustive = Fraction(best, 2), n**4, True
    else:
        delta = Fraction(0)
        for _ in range(sample_size):
            q = [rng.randrange(n) for _ in range(4)]
            delta = max(delta, _defect(D, *q))
        count, exhaustive = sample_size, False
    slim = None
    if triangles:
        adj = G.adjacency()
        slim = 0
        for _ in range(triangles):
            x, y, z = (keys[rng.randrange(n)] for _ in range(3))
            sides = [_geodesic(adj, dist, x, y), _geodesic(adj, dist, y, z), _geodesic(adj, dist, z, x)]
            for i in range(3):
                others = sides[(i + 1) % 3] + sides[(i + 2) % 3]
                for p in sides[i]:
                    slim = max(slim, min(int(dist[p][o]) for o in others))
    return HyperbolicityReport(count, exhaustive, delta, slim, triangles, seed)


def _geodesic(adj, dist, x: str, y: str) -> list[str]:
    path = [x]
    while path[-1] != y:
        u = path[-1]
        path.append(min(w for w in adj[u] if dist[w][y] == dist[u][y] - 1))
    return path


# --- guessing geodesics ----------------------------------------------------------

class GraphOracle:
    """Exact distances read off a finite model."""

    def __init__(self, G: GraphModel):
        self.G = G
        self._dist = all_distances(G)

    def distance(self, u: str, v: str) -> float:
        return self._dist[u][v]

    def within(self, u: str, v: str, r: int) -> bool:
        return self._dist[u][v] <= r

    def adjacent(self, u: str, v: str) -> bool:
        return self.G.has_edge(u, v)


@dataclass
class GuessingReport(_Report):
    kind = "guessing"
    M: int
    pairs: int
    triples: int
    passed: bool
    violation: dict | None = None


def _connected(vertices: list, adjacent: Callable) -> bool:
    if not vertices:
        return False
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(len(vertices)):
            if j not in seen and adjacent(vertices[i], vertices[j]):
                seen.add(j)
                stack.append(j)
    return len(seen) == len(vertices)


def guessing_check(
    oracle: Any,
    family: Callable[[Hashable, Hashable], Iterable],
    M: int,
    pairs: Sequence[tuple] = (),
    triples: Sequence[tuple] = (),
) -> GuessingReport:
    """Check the two hypotheses of the guessing-geodesics criterion on samples.

    ``oracle`` provides ``within(u, v, r)`` and ``adjacent(u, v)``. For every
    sampled pair the family set must contain both ends and be connected; when
    the ends are at distance at most 1 it must have diameter at most M. For
    every sampled triple (x, y, z) the set for (x, y) must lie in the
    M-neighbourhood of the sets for (x, z) and (z, y).
    """
    cache: dict = {}

    def fam(x, y):
        if (x, y) not in cache:
            try:
                got = family(x, y)
            except KeyError as exc:
                raise FamilyGap((x, y)) from exc
            if got is None:
                raise FamilyGap((x, y))
            cache[(x, y)] = sorted(set(got), key=repr)
        return cache[(x, y)]

    def fail(**info) -> GuessingReport:
        return GuessingReport(M, len(pairs), len(triples), False, {k: repr(v) for k, v in info.items()})

    all_pairs = list(pairs) + [p for (x, y, z) in triples for p in ((x, y), (x, z), (z, y))]
    for x, y in all_pairs:
        A = fam(x, y)
        if x not in A or y not in A:
            return fail(condition="contains-ends", pair=(x, y))
        if not _connected(A, oracle.adjacent):
            return fail(condition="connected", pair=(x, y))
        if x == y or oracle.within(x, y, 1):
            for u, v in itertools.combinations(A, 2):
                if not oracle.within(u, v, M):
                    return fail(condition="local", pair=(x, y), far=(u, v))
    for x, y, z in triples:
        target = fam(x, z) + fam(z, y)
        for c in fam(x, y):
            if not any(c == t or oracle.within(c, t, M) for t in target):
                return fail(condition="slim", triple=(x, y, z), vertex=c)
    return GuessingReport(M, len(pairs), len(triples), True)


# --- quasi-retracts ----------------------------------------------------------------

@dataclass
class QIReport(_Report):
    kind = "qi"
    checked: int
    violations: list = field(default_factory=list)
    constants: tuple | None = None
    retract: tuple | None = None
    undecided: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def quasi_retract_check(X: GraphModel, Y: Iterable[str], r: Mapping[str, Iterable[str]]) -> QIReport:
    """Smallest (A, B) for which r is an (A, B)-quasi-retract of X onto Y.

    Distances inside Y use the induced path metric. A failure of the identity
    clause or of path-connectivity is reported as a violation.
    """
    Y = set(Y)
    for y in Y:
        if y not in X.vertices:
            raise UnknownVertex(y)
    images: dict[str, set[str]] = {}
    for x in X.vertices:
        if x not in r:
            raise EmptyImage(f"r is undefined at {x}")
        img = set(r[x])
        if not img:
            raise EmptyImage(f"r({x}) is empty")
        if not img <= Y:
            return QIReport(0, [{"clause": 0, "vertex": x, "reason": "image leaves Y"}])
        images[x] = img
    for y in sorted(Y):
        if images[y] != {y}:
            return QIReport(0, [{"clause": 3, "vertex": y, "image": sorted(images[y])}])
    H = _induced(X, Y)
    dY = all_distances(H)
    if any(math.isinf(d) for row in dY.values() for d in row.values()):
        return QIReport(0, [{"clause": 0, "reason": "Y is not path-connected"}])
    A = 0
    for img in images.values():
        A = max([A] + [int(dY[u][v]) for u in img for v in img])
    B = 0
    checked = 0
    edges = list(X.edges) + [(x, x) for x in X.vertices]
    for x, x2 in edges:
        checked += 1
        B = max(B, int(min(dY[u][v] for u in images[x] for v in images[x2])))
    return QIReport(checked, [], None, (A, B))


def qi_bound_from_retract(A: float, B: float) -> float:
    """Multiplicative constant of the inclusion of an (A, B)-quasi-retract."""
    if A < 0 or B < 0:
        raise ValueError("retract constants are nonnegative")
    return 2 * A + B


def qi_inequality_audit(pairs: Iterable[tuple], mult: int = 2, add: int = 2) -> QIReport:
    """Check d_A - add <= d <= mult * d_A on pairs of decided distances.

    Each pair is ``(d_A, d)`` with entries in {0, 1, 2} or ``"GEQ3"``. A GEQ3
    entry is only used through the lower bound 3 it certifies.
    """
    checked = undecided = 0
    violations = []
    for k, rec in enumerate(pairs):
        dA, d = rec[0], rec[1]
        if "UNDECIDED" in (dA, d):
            undecided += 1
            continue
        lo_A = 3 if dA == "GEQ3" else dA
        lo_d = 3 if d == "GEQ3" else d
        exact_A, exact_d = dA != "GEQ3", d != "GEQ3"
        used = False
        # lower inequality d >= d_A - add needs an upper value of d_A, lower of d
        if exact_A:
            used = True
            if exact_d and d < dA - add:
                violations.append({"index": k, "pair": [dA, d], "inequality": "lower"})
        elif exact_d:
            used = True  # d_A >= 3 gives d >= 1
            if d < lo_A - add:
                violations.append({"index": k, "pair": [dA, d], "inequality": "lower"})
        # upper inequality d <= mult * d_A
        if exact_A:
            if lo_d > mult * dA:
                violations.append({"index": k, "pair": [dA, d], "inequality": "upper"})
        if used:
            checked += 1
        else:
            undecided += 1
    return QIReport(checked, violations, (mult, add), None, undecided)


# --- translation length ----------------------------------------------------------

@dataclass
class TranslationReport(_Report):
    kind = "translation"
    distances: list
    slope: Fraction


def translation_growth(
    action: Callable[[Any], Any], base: Any, K: int, distance: Callable[[Any, Any], int]
) -> TranslationReport:
    """d(base, g^k base) for k = 0..K and the estimate d(base, g^K base)/K."""
    seq = []
    x = base
    for k in range(K + 1):
        if type(x) is not type(base):
            raise KindMismatch(f"action produced {type(x).__name__} from {type(base).__name__}")
        seq.append(distance(base, x))
        x = action(x)
    slope = Fraction(seq[-1], K) if K else Fraction(0)
    return TranslationReport(seq, slope)


# --- bounded orbits ----------------------------------------------------------------

@dataclass
class CertifierReport(_Report):
    kind = "bounded-orbit"
    orbit: str
    A: float
    diameter_bound: float
    observed_diameter: float
    cross_orbit_bounds: dict
    note: str = (
        "A is the largest observed distance over related in-orbit pairs; it stands in "
        "for the finiteness hypothesis, which cannot be checked on finite data"
    )


def bounded_orbit_certify(
    G: GraphModel,
    orbit_label: str,
    V: Callable[[str, str], bool],
    label_field: str = "orbit",
) -> CertifierReport:
    """Certify a finite orbit diameter from a relation V on in-orbit pairs."""
    orbits: dict[str, list[str]] = {}
    for k in sorted(G.vertices):
        orbits.setdefault(str(G.vertices[k].get(label_field)), []).append(k)
    if orbit_label not in orbits:
        raise UnknownVertex(f"no vertex carries orbit label {orbit_label!r}")
    orb = orbits[orbit_label]
    dist = all_distances(G)
    A: float = 0
    for a, b in itertools.permutations(orb, 2):
        if V(a, b):
            A = max(A, dist[a][b])
    for a, b in itertools.combinations(orb, 2):
        if V(a, b) or V(b, a):
            continue
        if not any(V(a, d) and V(b, d) for d in orb if d not in (a, b)):
            raise Condition2Fail((a, b))
    observed = max([0] + [dist[a][b] for a in orb for b in orb])
    c = orb[0]
    cross = {}
    for label, members in sorted(orbits.items()):
        if label == orbit_label:
            continue
        B = dist[members[0]][c]
        cross[label] = 2 * B + 2 * A
    return CertifierReport(orbit_label, A, 2 * A, observed, cross)


def putman_check(
    G: GraphModel, base: str, generator_images: Iterable[str], orbit_witnesses: Iterable[str]
) -> bool:
    """Finite-data form of the connectivity criterion's hypotheses."""
    adj = G.adjacency()
    d = bfs_distances(G, base, adj)
    if any(math.isinf(d[s]) for s in generator_images):
        return False
    witnesses = set(orbit_witnesses)
    seen: set[str] = set()
    for v in sorted(G.vertices):
        if v in seen:
            continue
        comp = {w for w, x in bfs_distances(G, v, adj).items() if not math.isinf(x)}
        seen |= comp
        if not comp & witnesses:
            return False
    return True
