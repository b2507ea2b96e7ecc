"""Word-ball models of the arc and separating-curve graphs, exact small distances."""

from __future__ import annotations

import hashlib
from typing import Iterable, Sequence, Union

from ..planar.engine import (
    ArcClass,
    CurveClass,
    PuncturedDisk,
    apply_generator,
    complement_analysis,
    fingerprint,
    inside_punctures,
    intersection_number,
    is_sep2_vertex,
)
from ..planar.words import ArcWord, CurveWord
from .model import GraphModel

Class = Union[ArcClass, CurveClass]

GEQ3 = "GEQ3"
UNDECIDED = "UNDECIDED"
UPPER_BOUND_CAVEAT = (
    "vertices are a generator-word ball; model distances are upper bounds for the full graph"
)


class EmptySeed(ValueError):
    pass


class MembershipFail(ValueError):
    def __init__(self, offending: list):
        super().__init__(f"seeds fail the membership predicate: {offending}")
        self.offending = offending


class KindMismatch(ValueError):
    pass


class FingerprintCollision(RuntimeError):
    pass


# --- class (de)serialization ---------------------------------------------------

def class_to_dict(x: Class) -> dict:
    w = x.word
    if isinstance(w, ArcWord):
        return {
            "kind": "arc", "n": x.n, "start": w.start, "start_half": w.start_half,
            "crossings": list(w.crossings), "end": w.end,
        }
    return {"kind": "curve", "n": x.n, "half0": w.half0, "crossings": list(w.crossings)}


def class_from_dict(d: dict) -> Class:
    if d["kind"] == "arc":
        w = ArcWord(d["start"], d["start_half"], tuple(d["crossings"]), d["end"])
        return ArcClass(d["n"], w)
    return CurveClass(d["n"], CurveWord(d["half0"], tuple(d["crossings"])))


def class_key(x: Class) -> str:
    fp = fingerprint(x)
    return fp[0][0] + ":" + hashlib.sha1(repr(fp).encode()).hexdigest()[:16]


def word_to_str(word: Sequence[int]) -> str:
    return " ".join(f"s{g}" if g > 0 else f"S{-g}" for g in word)


# --- membership and adjacency --------------------------------------------------

def is_a2_vertex(x: Class, disk: PuncturedDisk) -> bool:
    if not isinstance(x, ArcClass):
        return False
    s, t = x.endpoints
    return s != t and s in disk.marked and t in disk.marked


def is_member(kind: str, x: Class, disk: PuncturedDisk) -> bool:
    if kind == "A2":
        return is_a2_vertex(x, disk)
    if kind == "Sep2":
        return isinstance(x, CurveClass) and is_sep2_vertex(x, disk)
    raise KindMismatch(f"unknown graph kind {kind!r}")


def edge_threshold(kind: str, disk: PuncturedDisk) -> int:
    """Largest intersection number counted as adjacency."""
    if kind == "Sep2" and len(disk.blocks) == 4:
        return 2
    return 0


def adjacent(kind: str, x: Class, y: Class, disk: PuncturedDisk) -> bool:
    if x == y:
        return False
    limit = edge_threshold(kind, disk)
    if limit == 0 and isinstance(x, CurveClass) and isinstance(y, CurveClass):
        # disjoint curves have nested or disjoint insides
        ix, iy = inside_punctures(x), inside_punctures(y)
        if not (ix <= iy or iy <= ix or not (ix & iy)):
            return False
    return intersection_number(x, y) <= limit


# --- word balls ----------------------------------------------------------------

def build_word_ball(kind: str, disk: PuncturedDisk, seeds: Iterable[Class], L: int) -> GraphModel:
    """All members g*s with |g| <= L, with every adjacency among them."""
    seeds = list(seeds)
    if not seeds:
        raise EmptySeed("no seeds given")
    if L < 0:
        raise ValueError("L must be nonnegative")
    bad = [repr(s) for s in seeds if not is_member(kind, s, disk)]
    if bad:
        raise MembershipFail(bad)
    n = disk.n
    gens = list(range(1, n)) + [-g for g in range(1, n)]
    seen: dict = {}
    order: list = []
    frontier = []
    for idx, s in enumerate(seeds):
        if s.word not in seen:
            seen[s.word] = (s, idx, ())
            order.append(s.word)
            frontier.append(s.word)
    for _ in range(L):
        nxt = []
        for w in frontier:
            x, idx, word = seen[w]
            for g in gens:
                y = apply_generator(g, x)
                if y.word not in seen:
                    seen[y.word] = (y, idx, (g,) + word)
                    order.append(y.word)
                    nxt.append(y.word)
        frontier = nxt

    g = GraphModel(meta={
        "builder": "word_ball",
        "kind": kind,
        "n": n,
        "blocks": [sorted(b) for b in disk.blocks],
        "seeds": [class_to_dict(s) for s in seeds],
        "L": L,
        "adjacency_max_intersection": edge_threshold(kind, disk),
        "caveat": UPPER_BOUND_CAVEAT,
    })
    members: list[tuple[str, Class]] = []
    by_fp: dict = {}
    for w in order:
        x, idx, word = seen[w]
        if not is_member(kind, x, disk):
            continue
        fp = fingerprint(x)
        if fp in by_fp and by_fp[fp] != x.word:
            raise FingerprintCollision(f"{x} and {by_fp[fp]} share a fingerprint")
        by_fp[fp] = x.word
        key = class_key(x)
        g.add_vertex(
            key,
            cls=class_to_dict(x),
            fingerprint=fp,
            seed=idx,
            word=word_to_str(word),
            label=word_to_str(word) + f" * seed{idx}" if word else f"seed{idx}",
        )
        members.append((key, x))
    for a in range(len(members)):
        ka, xa = members[a]
        for b in range(a + 1, len(members)):
            kb, xb = members[b]
            if adjacent(kind, xa, xb, disk):
                g.add_edge(ka, kb)
    return g


def model_classes(g: GraphModel) -> dict[str, Class]:
    return {k: class_from_dict(v["cls"]) for k, v in g.vertices.items()}


# --- exact small distances -----------------------------------------------------

def _kind_of(x: Class) -> str:
    return "A2" if isinstance(x, ArcClass) else "Sep2"


def distance_leq2(kind: str, x: Class, y: Class, disk: PuncturedDisk):
    """Exact distance when it is at most 2, else ``GEQ3``.

    A common neighbour of two intersecting vertices lives in one component of
    the complement of x u y. Since x u y is connected, each component is a
    punctured disk or (next to the boundary circle) a punctured annulus, so
    the question reduces to which punctures a component can reach. With four
    blocks the Sep2 adjacency allows two intersections and the complement no
    longer settles distance 2; then ``UNDECIDED`` may be returned.
    """
    if _kind_of(x) != kind or _kind_of(y) != kind:
        raise KindMismatch(f"expected two {kind} vertices")
    for v in (x, y):
        if not is_member(kind, v, disk):
            raise KindMismatch(f"{v} is not a {kind} vertex")
    if x == y:
        return 0
    i = intersection_number(x, y)
    if i <= edge_threshold(kind, disk):
        return 1
    comps = complement_analysis([x, y], disk)
    if kind == "A2":
        for c in comps:
            if len(set(c["punctures"]) & disk.marked) >= 2:
                return 2
        return GEQ3
    for c in comps:
        if len(c["blocks_inside"]) >= 2:
            return 2
    if edge_threshold(kind, disk) > 0:
        return UNDECIDED
    return GEQ3


def within2(kind: str, x: Class, y: Class, disk: PuncturedDisk) -> bool:
    d = distance_leq2(kind, x, y, disk)
    if d == UNDECIDED:
        raise RuntimeError(f"distance between {x} and {y} is undecided")
    return d != GEQ3


# --- the layered example -------------------------------------------------------

def remark_graph(m: int, w: int) -> GraphModel:
    """m layers of w vertices; an edge whenever layer indices differ by at most one."""
    if m < 1 or w < 1:
        raise ValueError("need m >= 1 and w >= 1")
    g = GraphModel(meta={"builder": "remark_graph", "m": m, "w": w})
    keys = [[f"L{i}.{k}" for k in range(w)] for i in range(m)]
    for i in range(m):
        for k in range(w):
            g.add_vertex(keys[i][k], layer=i, orbit=f"O{i}", label=keys[i][k])
    for i in range(m):
        for j in range(i, min(i + 2, m)):
            for u in keys[i]:
                for v in keys[j]:
                    g.add_edge(u, v)
    return g


def decide_phi_pair(a: ArcClass, b: ArcClass, disk: PuncturedDisk) -> tuple:
    """(d_A2(a, b), d_Sep2(phi a, phi b)), each exact up to 2 or GEQ3."""
    from ..planar.engine import phi_boundary

    return (
        distance_leq2("A2", a, b, disk),
        distance_leq2("Sep2", phi_boundary(a), phi_boundary(b), disk),
    )


class SmallDistanceOracle:
    """``within``/``adjacent`` answers for the metric checkers, decided exactly up to 2."""

    def __init__(self, kind: str, disk: PuncturedDisk):
        self.kind = kind
        self.disk = disk

    def adjacent(self, x: Class, y: Class) -> bool:
        return adjacent(self.kind, x, y, self.disk)

    def within(self, x: Class, y: Class, r: int) -> bool:
        if r > 2:
            raise ValueError("distances above 2 are not decided")
        d = distance_leq2(self.kind, x, y, self.disk)
        if d == UNDECIDED:
            raise RuntimeError(f"distance between {x} and {y} is undecided")
        return d != GEQ3 and d <= r
