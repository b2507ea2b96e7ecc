"""Unicorn arcs built on the exact planar overlay.

Both arcs are drawn as semicircle chords in mutual minimal position. A point
pi of a cap b is the crossing of a chord of a with a chord of b, so the
cutting sequence of a' u b' is a prefix of a's sequence followed by a suffix
of b's. Exact rational crossing positions decide which other crossings lie on
a' and b', and hence whether a' u b' is embedded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..planar.engine import ArcClass, intersection_number, reduce_raw
from ..planar.overlay import Overlay, semicircle_crossing_x
from ..planar.words import ArcWord


class NotAPath(RuntimeError):
    """Consecutive vertices of a unicorn path intersect."""


@dataclass(frozen=True)
class UnicornDatum:
    a: ArcClass
    alpha: int
    b: ArcClass
    beta: int
    # (piece of a, exact x of pi) for each pi, in order along a from alpha
    points: tuple[tuple[int, Fraction], ...]
    embedded: tuple[bool, ...]
    arcs: tuple[ArcClass, ...]


def _orient(w: ArcWord, start: int) -> ArcWord:
    if w.start == start:
        return w
    if w.end == start:
        return w.reversed()
    raise ValueError(f"p{start} is not an endpoint of {w}")


def unicorn_datum(a: ArcClass, alpha: int, b: ArcClass, beta: int) -> UnicornDatum:
    wa = _orient(a.word, alpha)
    wb = _orient(b.word, beta).reversed()  # b now runs towards beta
    ov = Overlay(a.n, [wa, wb])
    xs = ov.coordinates()

    def span(chord):
        # (x at the lower-index item, x at the higher-index item)
        return xs[chord[0]], xs[chord[1]]

    cross = []
    for h, A, B in ov.crossings(0, 1):
        sa, sb = span(A), span(B)
        x = semicircle_crossing_x(tuple(sorted(sa)), tuple(sorted(sb)))
        cross.append((A[0][1], sa, B[0][1], sb, x))

    def on_a_prefix(ka, sa, x, ka0, x0):
        # is the point (ka, x) on a' when a' stops at (ka0, x0)?
        if ka != ka0:
            return ka < ka0
        return min(sa[0], x0) < x < max(sa[0], x0)

    def on_b_suffix(kb, sb, x, kb0, x0):
        if kb != kb0:
            return kb > kb0
        return min(sb[1], x0) < x < max(sb[1], x0)

    def along_a(rec):
        ka, sa, _, _, x = rec
        return (ka, abs(x - sa[0]))

    cross.sort(key=along_a)
    points, flags, arcs = [], [], []
    for ka0, sa0, kb0, sb0, x0 in cross:
        ok = True
        for ka, sa, kb, sb, x in cross:
            if (ka, kb, x) == (ka0, kb0, x0):
                continue
            if on_a_prefix(ka, sa, x, ka0, x0) and on_b_suffix(kb, sb, x, kb0, x0):
                ok = False
                break
        points.append((ka0, x0))
        flags.append(ok)
        if ok:
            seq = list(wa.crossings[:ka0]) + list(wb.crossings[kb0:])
            arcs.append(reduce_raw(a.n, ("arc", wa.start, wa.start_half, seq, wb.end)))
    # largest a-part first
    arcs.reverse()
    return UnicornDatum(a, alpha, b, beta, tuple(points), tuple(flags), tuple(arcs))


def unicorn_arcs(a: ArcClass, alpha: int, b: ArcClass, beta: int) -> list[ArcClass]:
    """Embedded unicorn arcs from a^alpha, b^beta, the one with the largest a-part first."""
    return list(unicorn_datum(a, alpha, b, beta).arcs)


def unicorn_path(a: ArcClass, alpha: int, b: ArcClass, beta: int) -> list[ArcClass]:
    path = [a, *unicorn_arcs(a, alpha, b, beta), b]
    for x, y in zip(path, path[1:]):
        if x != y and intersection_number(x, y) != 0:
            raise NotAPath(f"{x} and {y} intersect")
    return path


def a_family(a: ArcClass, b: ArcClass) -> set[ArcClass]:
    """The connected subgraph A(a, b): the edge when adjacent, else all unicorn paths."""
    if a == b:
        return {a}
    if intersection_number(a, b) == 0:
        return {a, b}
    out: set[ArcClass] = set()
    for x, y in ((a, b), (b, a)):
        for alpha in set(x.endpoints):
            for beta in set(y.endpoints):
                if alpha != beta:
                    out.update(unicorn_path(x, alpha, y, beta))
    return out


def slim_check(a: ArcClass, b: ArcClass, d: ArcClass, disk, M: int = 2) -> bool:
    """Is A(a, b) inside the M-neighbourhood of A(a, d) u A(d, b)?

    Only M <= 2 is supported, since distances up to 2 are decided exactly.
    """
    from ..graphs.builders import GEQ3, distance_leq2

    if M > 2:
        raise ValueError("only neighbourhoods of radius at most 2 are decidable")
    target = a_family(a, d) | a_family(d, b)
    for c in a_family(a, b):
        if c in target:
            continue
        if not any(
            (r := distance_leq2("A2", c, t, disk)) != GEQ3 and r <= M for t in target
        ):
            return False
    return True
