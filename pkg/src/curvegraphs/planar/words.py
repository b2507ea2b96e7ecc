"""Cutting sequences of arcs and curves on the punctured disk.

The disk D_n carries punctures p_1..p_n on the horizontal axis. The axis is cut
into segments e_0..e_n, where e_j runs from p_j to p_{j+1} (e_0 and e_n run
out to the boundary circle). A simple arc or curve in minimal position with the
axis is recorded by the ordered list of segments it crosses. Every piece between
two consecutive crossings lies in the upper half (``UP``) or lower half
(``DOWN``), and these alternate.

Arc germs at a puncture are recorded by the half the arc leaves into. Reduction
removes backtracking (``j, j``) and spins at the endpoints (a first crossing on
a segment incident to the start puncture), which is all that is needed for the
reduced sequence to be an isotopy invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

UP = 0
DOWN = 1


class Inessential(ValueError):
    """Raised when a word reduces to an inessential arc or curve."""


@dataclass(frozen=True, order=True)
class ArcWord:
    start: int
    start_half: int
    crossings: tuple[int, ...]
    end: int

    @property
    def end_half(self) -> int:
        return self.start_half ^ (len(self.crossings) & 1)

    def reversed(self) -> ArcWord:
        return ArcWord(self.end, self.end_half, self.crossings[::-1], self.start)


@dataclass(frozen=True, order=True)
class CurveWord:
    # piece k runs from crossing k to crossing k+1 (cyclically) in half half0 ^ (k & 1)
    half0: int
    crossings: tuple[int, ...]


def _free_reduce(seq: list[int]) -> list[int]:
    out: list[int] = []
    for j in seq:
        if out and out[-1] == j:
            out.pop()
        else:
            out.append(j)
    return out


def reduce_arc(start: int, start_half: int, seq: list[int], end: int) -> ArcWord:
    """Reduce a raw arc word to its canonical form.

    Raises :class:`Inessential` for a loop arc bounding an unpunctured disk.
    """
    seq = _free_reduce(seq)
    end_half = start_half ^ (len(seq) & 1)
    changed = True
    while changed:
        changed = False
        if seq and seq[0] in (start - 1, start):
            seq.pop(0)
            start_half ^= 1
            changed = True
        if seq and seq[-1] in (end - 1, end):
            seq.pop()
            end_half ^= 1
            changed = True
        if changed:
            seq = _free_reduce(seq)
    if not seq:
        if start == end:
            raise Inessential(f"loop arc at p{start} bounds a disk")
        if abs(start - end) == 1:
            # upper and lower arcs between neighbours are isotopic
            start_half = UP
    word = ArcWord(start, start_half, tuple(seq), end)
    rev = word.reversed()
    return min(word, rev)


def _cyclic_reduce(seq: list[int], half0: int) -> tuple[list[int], int]:
    seq = _free_reduce(seq)
    while len(seq) >= 2 and seq[0] == seq[-1]:
        # piece 0 is unchanged by dropping the last and first crossing
        seq = seq[1:-1]
        half0 ^= 1
    return seq, half0


def reduce_curve(half0: int, seq: list[int]) -> CurveWord:
    """Cyclically reduce and canonicalize a closed curve word.

    The canonical representative is the least rotation or reversal. Raises
    :class:`Inessential` for a null-homotopic curve.
    """
    seq, half0 = _cyclic_reduce(seq, half0)
    if not seq:
        raise Inessential("curve bounds a disk")
    m = len(seq)
    best = None
    for k in range(m):
        # rotation starting at crossing k: piece 0 becomes old piece k
        rot = tuple(seq[k:] + seq[:k])
        cand = CurveWord(half0 ^ (k & 1), rot)
        if best is None or cand < best:
            best = cand
        # reversal: old piece k-1 (before crossing k) becomes the new piece 0
        rev = tuple(reversed(seq[: k + 1])) + tuple(reversed(seq[k + 1:]))
        cand = CurveWord(half0 ^ ((k - 1) & 1), rev)
        if cand < best:
            best = cand
    return best


# --- half-twist action ------------------------------------------------------

def _crossing_image(i: int, sign: int, j: int, downward: bool) -> list[int]:
    if j != i:
        return [j]
    if (sign > 0) == downward:
        return [i - 1, i, i + 1]
    return [i + 1, i, i - 1]


def _germ_image(i: int, sign: int, p: int, half: int) -> tuple[int, int, list[int]]:
    """Image of an endpoint germ: (new puncture, new half, crossings leaving it)."""
    if p not in (i, i + 1):
        return p, half, []
    q = i + 1 if p == i else i
    if (half == UP) == (sign > 0):
        return q, half ^ 1, [i - 1]
    return q, half ^ 1, [i + 1]


def twist_arc(word: ArcWord, i: int, sign: int) -> ArcWord:
    """Apply the half-twist sigma_i (sign=+1) or its inverse (sign=-1)."""
    s, sh, pre = _germ_image(i, sign, word.start, word.start_half)
    t, _, post = _germ_image(i, sign, word.end, word.end_half)
    seq = list(pre)
    half = word.start_half
    for j in word.crossings:
        seq.extend(_crossing_image(i, sign, j, half == UP))
        half ^= 1
    seq.extend(reversed(post))
    return reduce_arc(s, sh, seq, t)


def twist_curve(word: CurveWord, i: int, sign: int) -> CurveWord:
    seq: list[int] = []
    # crossing k separates piece k-1 from piece k; the piece before the new
    # crossing 0 is still old piece m-1, so half0 carries over unchanged
    for k, j in enumerate(word.crossings):
        before = word.half0 ^ ((k - 1) & 1)
        seq.extend(_crossing_image(i, sign, j, before == UP))
    return reduce_curve(word.half0, seq)
