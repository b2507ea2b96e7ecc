"""Isotopy classes of arcs and curves on the n-punctured disk.

Classes are immutable values wrapping a canonical cutting sequence. Everything
else (fingerprints, intersection numbers, complements) is derived exactly from
the planar overlay in :mod:`curvegraphs.planar.overlay`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .overlay import Component, Overlay
from .words import (
    DOWN,
    UP,
    ArcWord,
    CurveWord,
    Inessential,
    reduce_arc,
    reduce_curve,
    twist_arc,
    twist_curve,
)

__all__ = [
    "BadMarks",
    "SameEndpoint",
    "NotEmbedded",
    "Inessential",
    "PuncturedDisk",
    "ArcClass",
    "CurveClass",
    "make_disk",
    "seed_arc",
    "seed_curve",
    "apply_generator",
    "apply_word",
    "intersection_number",
    "fingerprint",
    "fingerprint_t1",
    "phi_boundary",
    "complement_analysis",
    "is_sep2_vertex",
    "inside_punctures",
]


class BadMarks(ValueError):
    pass


class SameEndpoint(ValueError):
    pass


class NotEmbedded(ValueError):
    pass


@dataclass(frozen=True)
class PuncturedDisk:
    n: int
    blocks: tuple[frozenset[int], ...]

    @property
    def marked(self) -> frozenset[int]:
        return frozenset().union(*self.blocks) if self.blocks else frozenset()

    @property
    def singletons(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def block_of(self, p: int) -> int | None:
        for idx, b in enumerate(self.blocks):
            if p in b:
                return idx
        return None

    def triangulation(self) -> list[tuple[str, int]]:
        """Edges of the reference triangulation T0 of the (n+1)-punctured sphere.

        Axis segments e_0..e_n plus vertical rays u_i (up) and d_i (down) from
        the interior punctures 2..n-1 to the boundary puncture.
        """
        edges = [("e", j) for j in range(self.n + 1)]
        edges += [("u", i) for i in range(2, self.n)]
        edges += [("d", i) for i in range(2, self.n)]
        return edges


def make_disk(n: int, marks: Iterable | None = None) -> PuncturedDisk:
    """Build a disk with n punctures.

    ``marks`` is either a set Q of punctures (each becomes a singleton block) or a
    partition given as an iterable of iterables. ``None`` marks every puncture.
    """
    if n < 3:
        raise BadMarks(f"need at least 3 punctures, got {n}")
    if marks is None:
        marks = range(1, n + 1)
    marks = list(marks)
    if marks and all(isinstance(m, int) for m in marks):
        blocks = [frozenset([m]) for m in marks]
    else:
        blocks = [frozenset(b) for b in marks]
    seen: set[int] = set()
    for b in blocks:
        if not b:
            raise BadMarks("empty block")
        if seen & b:
            raise BadMarks(f"blocks overlap at {sorted(seen & b)}")
        bad = [p for p in b if not 1 <= p <= n]
        if bad:
            raise BadMarks(f"punctures {bad} not on the disk")
        seen |= b
    return PuncturedDisk(n, tuple(blocks))


@dataclass(frozen=True)
class ArcClass:
    n: int
    word: ArcWord

    @property
    def kind(self) -> str:
        return "arc"

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.word.start, self.word.end)

    def __repr__(self) -> str:
        return f"ArcClass(n={self.n}, {_word_str(self.word)})"


@dataclass(frozen=True)
class CurveClass:
    n: int
    word: CurveWord

    @property
    def kind(self) -> str:
        return "curve"

    def __repr__(self) -> str:
        return f"CurveClass(n={self.n}, {_word_str(self.word)})"


Class = Union[ArcClass, CurveClass]


def _word_str(w) -> str:
    half = "UD"
    if isinstance(w, ArcWord):
        return f"p{w.start}{half[w.start_half]}{list(w.crossings)}p{w.end}"
    return f"{half[w.half0]}{list(w.crossings)}"


def _disk_n(disk) -> int:
    return disk.n if isinstance(disk, PuncturedDisk) else int(disk)


def seed_arc(disk, i: int, j: int) -> ArcClass:
    """Arc from p_i to p_j running just above the axis."""
    n = _disk_n(disk)
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"bad seed arc endpoints ({i}, {j})")
    return ArcClass(n, reduce_arc(min(i, j), UP, [], max(i, j)))


def seed_curve(disk, run: Iterable[int]) -> CurveClass:
    """Round curve enclosing a run of consecutive punctures."""
    n = _disk_n(disk)
    run = sorted(set(run))
    if not run or run != list(range(run[0], run[-1] + 1)):
        raise ValueError(f"{run} is not a run of consecutive punctures")
    if len(run) < 2 or len(run) > n - 1:
        raise Inessential(f"curve around {run} bounds a disk with <2 punctures on one side")
    return CurveClass(n, reduce_curve(UP, [run[-1], run[0] - 1]))


def apply_generator(gen: int, x: Class) -> Class:
    """Apply sigma_|gen| (gen > 0) or its inverse (gen < 0)."""
    i, sign = abs(gen), (1 if gen > 0 else -1)
    if not 1 <= i <= x.n - 1:
        raise ValueError(f"generator {gen} out of range for n={x.n}")
    if isinstance(x, ArcClass):
        return ArcClass(x.n, twist_arc(x.word, i, sign))
    return CurveClass(x.n, twist_curve(x.word, i, sign))


def apply_word(word: Sequence[int], x: Class) -> Class:
    """Apply a generator word right-to-left, like composition of maps."""
    for g in reversed(word):
        x = apply_generator(g, x)
    return x


def reduce_raw(n: int, raw) -> Class:
    """Reduce a raw (possibly backtracking) cutting sequence to its class.

    ``raw`` is ``("arc", start, start_half, crossings, end)`` or
    ``("curve", half0, crossings)``.
    """
    if raw[0] == "arc":
        _, s, h, seq, t = raw
        x: Class = ArcClass(n, reduce_arc(s, h, list(seq), t))
    else:
        _, h, seq = raw
        if len(seq) % 2:
            raise ValueError("a closed curve crosses the axis an even number of times")
        x = CurveClass(n, reduce_curve(h, list(seq)))
    if not is_simple(x):
        raise NotEmbedded(f"{x} has no embedded representative")
    if isinstance(x, CurveClass):
        inside = inside_punctures(x)
        if len(inside) < 2 or len(inside) > n - 1:
            raise Inessential(f"{x} encloses {sorted(inside)}")
    return x


@functools.lru_cache(maxsize=None)
def _single(n: int, word) -> Overlay:
    return Overlay(n, [word], minimize=False)


def is_simple(x: Class) -> bool:
    try:
        ov = _single(x.n, x.word)
    except RuntimeError:
        return False
    for h in (UP, DOWN):
        ch = ov.chords(0, h)
        for a in range(len(ch)):
            ka = sorted((ov.key[ch[a][0]], ov.key[ch[a][1]]))
            for b in range(a + 1, len(ch)):
                kb0, kb1 = ov.key[ch[b][0]], ov.key[ch[b][1]]
                if (ka[0] < kb0 < ka[1]) != (ka[0] < kb1 < ka[1]):
                    return False
    return True


@functools.lru_cache(maxsize=None)
def _fingerprint(n: int, word) -> tuple:
    ov = _single(n, word)
    weights = [len(lst) for lst in ov.seg_lists]
    spans = {UP: [0] * (n + 1), DOWN: [0] * (n + 1)}
    terminals: dict[tuple[int, int, int], int] = {}
    for h in (UP, DOWN):
        for a, b in ov.chords(0, h):
            ka, kb = sorted((ov.key[a][0], ov.key[b][0]))
            for i in range(2, n):
                if ka < 2 * i < kb:
                    spans[h][i] += 1
            for tok, other in ((a, b), (b, a)):
                if ov.key[tok][0] % 2 == 0:
                    p = ov.key[tok][0] // 2
                    tri = p if ov.key[other][0] > 2 * p else p - 1
                    terminals[(h, tri, p)] = terminals.get((h, tri, p), 0) + 1
    coords = tuple(weights) + tuple(spans[UP][2:n]) + tuple(spans[DOWN][2:n])
    kind = "arc" if isinstance(word, ArcWord) else "curve"
    ends = (word.start, word.end) if kind == "arc" else ()
    return (kind, coords, tuple(sorted(terminals.items())), ends)


def fingerprint(x: Class) -> tuple:
    """Normal coordinates against T0, terminal counts and endpoints."""
    return _fingerprint(x.n, x.word)


def fingerprint_t1(x: Class) -> tuple:
    """Normal coordinates against the second triangulation T1 = h(T0).

    h = sigma_1 sigma_2 ... sigma_{n-1}; coordinates of x against h(T0) are those
    of h^-1(x) against T0.
    """
    inv = [-g for g in range(1, x.n)]
    return fingerprint(apply_word(inv, x))


@functools.lru_cache(maxsize=200_000)
def _intersection(n: int, w1, w2) -> int:
    if w1 == w2:
        return 0
    return Overlay(n, [w1, w2]).intersection(0, 1)


def intersection_number(a: Class, b: Class) -> int:
    """Geometric intersection number; crossings at punctures are not counted."""
    if a.n != b.n:
        raise ValueError("classes live on different disks")
    w1, w2 = sorted((a.word, b.word), key=repr)
    return _intersection(a.n, w1, w2)


def phi_boundary(a: ArcClass) -> CurveClass:
    """Boundary of a regular neighbourhood of an arc with distinct endpoints."""
    w = a.word
    s, t = w.start, w.end
    if s == t:
        raise SameEndpoint("regular neighbourhood of a loop arc has two boundary curves")

    def around(p: int, half: int) -> list[int]:
        return [p, p - 1] if half == UP else [p - 1, p]

    seq = list(w.crossings) + around(t, w.end_half) + list(reversed(w.crossings))
    seq += around(s, w.start_half)
    # the closing piece (before crossing 0) runs alongside the first piece of a;
    # the word has even length, so piece 0 lies in the other half
    c = CurveClass(a.n, reduce_curve(w.start_half ^ 1, seq))
    inside = inside_punctures(c)
    if len(inside) < 2 or len(inside) > a.n - 1:
        raise Inessential(f"neighbourhood boundary of {a} is inessential")
    return c


@functools.lru_cache(maxsize=None)
def _inside(n: int, word: CurveWord) -> frozenset[int]:
    ov = _single(n, word)
    for comp in ov.components():
        if not comp.boundary:
            return comp.punctures
    raise RuntimeError("curve has no inner side")


def inside_punctures(c: CurveClass) -> frozenset[int]:
    """Punctures on the side of c away from the boundary circle."""
    return _inside(c.n, c.word)


def complement_analysis(system: Sequence[Class], disk: PuncturedDisk | None = None) -> list[dict]:
    """Components of the disk cut along a system in pairwise minimal position."""
    if not system:
        raise ValueError("empty system")
    n = system[0].n
    words = []
    for x in system:
        if x.word not in words:
            words.append(x.word)
    comps = Overlay(n, words).components()
    marked = disk.marked if disk is not None else frozenset(range(1, n + 1))
    out = []
    for comp in comps:
        rec = {
            "punctures": sorted(comp.punctures),
            "boundary": comp.boundary,
            "pieces": sorted(comp.classes),
            "q_count": len(comp.punctures & marked),
        }
        if disk is not None:
            rec["blocks_inside"] = sorted(
                idx for idx, b in enumerate(disk.blocks) if b <= comp.punctures
            )
            rec["blocks_touched"] = sorted(
                idx for idx, b in enumerate(disk.blocks) if b & comp.punctures
            )
        out.append(rec)
    return out


def is_sep2_vertex(c: CurveClass, disk: PuncturedDisk) -> bool:
    """Condition (i): no block split by c; (ii): at least two blocks per side."""
    inside = inside_punctures(c)
    if len(inside) < 2 or len(inside) > c.n - 1:
        return False
    n_in = n_out = 0
    for b in disk.blocks:
        if b <= inside:
            n_in += 1
        elif not (b & inside):
            n_out += 1
        else:
            return False
    return n_in >= 2 and n_out >= 2
