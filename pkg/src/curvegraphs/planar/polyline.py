"""Exact rational polylines on the punctured disk.

Punctures sit at (1, 0) .. (n, 0) and the boundary is the circle of radius
(n + 1)/2 + 1/2 about ((n + 1)/2, 0). A polyline is read back to its class
through its crossings with the horizontal axis; a class is drawn as nested
rectangular chords above and below the axis.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .engine import ArcClass, CurveClass, NotEmbedded, _single, reduce_raw
from .words import DOWN, UP, ArcWord

Point = tuple[Fraction, Fraction]


def boundary_circle(n: int) -> tuple[Fraction, Fraction]:
    """(centre x, radius) of the boundary circle."""
    c = Fraction(n + 1, 2)
    return c, c + Fraction(1, 2)


def _segment_span(n: int, j: int) -> tuple[Fraction, Fraction]:
    c, r = boundary_circle(n)
    lo = Fraction(j) if j >= 1 else c - r
    hi = Fraction(j + 1) if j < n else c + r
    return lo, hi


# --- drawing ---------------------------------------------------------------------

def to_polyline(x) -> list[Point]:
    """An embedded rational polyline in the class of x.

    Arcs start and end at their punctures; a closed curve repeats its first
    vertex at the end.
    """
    n = x.n
    ov = _single(n, x.word)
    pos: dict = {}
    for j, lst in enumerate(ov.seg_lists):
        lo, hi = _segment_span(n, j)
        m = len(lst)
        for idx, it in enumerate(lst):
            pos[it] = lo + (hi - lo) * (Fraction(1, 4) + Fraction(idx + 1, 2 * (m + 1)))
    for (p, h), lst in ov.tok_lists.items():
        m = len(lst)
        for idx, it in enumerate(lst):
            pos[it] = p - Fraction(1, 4) + Fraction(idx + 1, 2 * (m + 1))
    height: dict = {}
    depth_max = 0
    for h in (UP, DOWN):
        chords = sorted(ov.chords(0, h), key=lambda ch: abs(pos[ch[0]] - pos[ch[1]]))
        spans = []
        for ch in chords:
            lo, hi = sorted((pos[ch[0]], pos[ch[1]]))
            d = 1 + max([dd for (l2, h2, dd) in spans if lo < l2 and h2 < hi], default=0)
            spans.append((lo, hi, d))
            height[(h, frozenset(ch))] = d
            depth_max = max(depth_max, d)
    unit = Fraction(1, 2 * (depth_max + 1))
    eps = unit / 4
    st = ov.strands[0]

    def piece(k: int) -> list[Point]:
        a, b = (0, k), (0, st.step(k, 1))
        h = st.piece_half(k, 1)
        s = 1 if h == UP else -1
        H = s * unit * height[(h, frozenset((a, b)))]
        out: list[Point] = []
        for end in (a, b):
            leg = [(pos[end], H)]
            if st.is_token(end[1]):
                leg.insert(0, (pos[end], s * eps))
                leg.insert(0, (Fraction(st.token_info(end[1])[0]), Fraction(0)))
            else:
                leg.insert(0, (pos[end], Fraction(0)))
            out.extend(leg if end == a else leg[::-1])
        return out

    pts: list[Point] = []
    count = st.count - 1 if st.is_arc else st.count
    for k in range(count):
        seg = piece(k)
        if pts and pts[-1] == seg[0]:
            seg = seg[1:]
        pts.extend(seg)
    if not st.is_arc and pts[-1] != pts[0]:
        pts.append(pts[0])
    return pts


# --- reading ---------------------------------------------------------------------

def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return (
        _cross(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool:
    d1, d2 = _cross(c, d, a), _cross(c, d, b)
    d3, d4 = _cross(a, b, c), _cross(a, b, d)
    if ((d1 > 0) != (d2 > 0)) and d1 and d2 and ((d3 > 0) != (d4 > 0)) and d3 and d4:
        return True
    return any(
        (
            _on_segment(c, a, b),
            _on_segment(d, a, b),
            _on_segment(a, c, d),
            _on_segment(b, c, d),
        )
    )


def _check_embedded(pts: list[Point], closed: bool) -> None:
    segs = list(zip(pts, pts[1:]))
    m = len(segs)
    for i in range(m):
        if segs[i][0] == segs[i][1]:
            raise NotEmbedded(f"degenerate segment at vertex {i}")
        for j in range(i + 1, m):
            adjacent = j == i + 1 or (closed and i == 0 and j == m - 1)
            if adjacent:
                # neighbours may only share their common vertex
                a, b = segs[i]
                c, d = segs[j]
                shared = b if j == i + 1 else a
                other_i = a if j == i + 1 else b
                other_j = d if j == i + 1 else c
                if _on_segment(other_j, *segs[i]) or _on_segment(other_i, *segs[j]):
                    raise NotEmbedded(f"segments {i} and {j} overlap")
                continue
            if _segments_meet(*segs[i], *segs[j]):
                if not closed and i == 0 and j == m - 1 and pts[0] == pts[-1]:
                    # a loop arc returns to its own puncture
                    a, b = segs[i]
                    c, d = segs[j]
                    if not (_on_segment(b, c, d) or _on_segment(c, a, b)):
                        continue
                raise NotEmbedded(f"segments {i} and {j} cross")


def from_polyline(n: int, points: Sequence, closed: bool | None = None):
    """Reduce an embedded rational polyline to its class.

    An open polyline must start and end at punctures and otherwise avoid
    them; a closed one (last vertex equal to the first) must avoid all
    punctures. Raises :class:`NotEmbedded` on self-crossings.
    """
    pts: list[Point] = [(Fraction(x), Fraction(y)) for x, y in points]
    if len(pts) < 2:
        raise ValueError("a polyline needs at least two vertices")
    if closed is None:
        closed = len(pts) > 2 and pts[0] == pts[-1]
    punctures = {(Fraction(p), Fraction(0)): p for p in range(1, n + 1)}
    c, r = boundary_circle(n)
    for q in pts:
        if (q[0] - c) ** 2 + q[1] ** 2 >= r * r:
            raise ValueError(f"vertex {q} is not inside the disk")
    if not closed:
        for q in (pts[0], pts[-1]):
            if q not in punctures:
                raise ValueError(f"arc endpoint {q} is not a puncture")
    _check_embedded(pts, closed)
    segs = list(zip(pts, pts[1:]))
    for idx, (a, b) in enumerate(segs):
        for q, p in punctures.items():
            if _on_segment(q, a, b):
                at_end = not closed and ((idx == 0 and q == a) or (idx == len(segs) - 1 and q == b))
                if not at_end:
                    raise ValueError(f"polyline meets puncture {p} away from its ends")

    def axis_segment(x: Fraction) -> int:
        j = int(x // 1) if x >= 1 else 0
        return min(j, n)

    # record axis crossings as sign changes of y between off-axis vertices
    half_seq: list[int] = []
    crossings: list[int] = []
    last_sign = 0
    zero_xs: list[Fraction] = []
    walk = pts[1:] if not closed else pts[:-1]
    if closed:
        # start at an off-axis vertex so that every crossing is seen once
        k0 = next((i for i, q in enumerate(walk) if q[1] != 0), None)
        if k0 is None:
            raise ValueError("closed polyline lies on the axis")
        walk = walk[k0:] + walk[:k0] + [walk[k0]]
    prev = pts[0] if not closed else None
    for q in walk:
        if prev is not None and q[1] != 0 and prev[1] != 0 and (q[1] > 0) != (prev[1] > 0):
            t = prev[1] / (prev[1] - q[1])
            zero_xs.append(prev[0] + t * (q[0] - prev[0]))
        if q[1] == 0:
            zero_xs.append(q[0])
        else:
            sign = 1 if q[1] > 0 else -1
            if last_sign == 0:
                half_seq.append(UP if sign > 0 else DOWN)
                zero_xs = []
            elif sign != last_sign:
                js = {axis_segment(x) for x in zero_xs}
                if len(js) != 1:
                    raise ValueError("polyline runs along the axis past a puncture")
                crossings.append(js.pop())
            zero_xs = []
            last_sign = sign
        prev = q
    if not half_seq:
        raise ValueError("polyline never leaves the axis")
    if closed:
        # the walk starts on the piece that ends at crossing 0, i.e. the last piece
        word = ("curve", half_seq[0] ^ 1, crossings)
        if len(crossings) == 0:
            raise ValueError("closed polyline does not cross the axis; it bounds a disk")
    else:
        word = ("arc", punctures[pts[0]], half_seq[0], crossings, punctures[pts[-1]])
    return reduce_raw(n, word)
