"""Planar overlay of several reduced arcs/curves and mutual bigon removal.

Every class is drawn as semicircular chords in the upper and lower half disks,
with endpoints on the axis. Along each axis segment the crossing points of one
class have a forced order (planarity); points of different classes may be
interleaved freely. Two chords in the same half cross exactly when their
endpoints interleave, so a drawing is fixed by the interleaving.

Bigons between two classes appear as ladders: a crossing, a run of parallel
chord pairs through adjacent axis points, and a second crossing (or a shared
puncture, for half-bigons). Removing one swaps the adjacent points on each rung
and lowers the crossing count by two without touching any other pair. When no
ladder is left, every pair is in minimal position.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .words import UP, DOWN, ArcWord, CurveWord

Word = Union[ArcWord, CurveWord]
Item = tuple[int, int]  # (class index, item index within the class)


class _Strands:
    """Items and pieces of a single class."""

    def __init__(self, word: Word):
        self.word = word
        self.is_arc = isinstance(word, ArcWord)
        if self.is_arc:
            m = len(word.crossings)
            self.m = m
            self.count = m + 2
            # item 0 = start token, 1..m = crossings, m+1 = end token
            self.seg = [None] + list(word.crossings) + [None]
        else:
            self.m = len(word.crossings)
            self.count = self.m
            self.seg = list(word.crossings)

    def is_token(self, k: int) -> bool:
        return self.is_arc and (k == 0 or k == self.m + 1)

    def token_info(self, k: int) -> tuple[int, int]:
        w = self.word
        if k == 0:
            return w.start, w.start_half
        return w.end, w.end_half

    def major(self, k: int) -> int:
        if self.is_token(k):
            return 2 * self.token_info(k)[0]
        return 2 * self.seg[k] + 1

    def step(self, k: int, d: int) -> int | None:
        nk = k + d
        if self.is_arc:
            return nk if 0 <= nk <= self.m + 1 else None
        return nk % self.m

    def piece_half(self, k: int, d: int) -> int:
        lo = k if d > 0 else k - 1
        if self.is_arc:
            return self.word.start_half ^ (lo & 1)
        return self.word.half0 ^ (lo % self.m & 1)

    def directions(self, k: int) -> list[int]:
        if self.is_arc:
            if k == 0:
                return [1]
            if k == self.m + 1:
                return [-1]
        return [1, -1]

    def dir_into(self, k: int, half: int) -> int | None:
        for d in self.directions(k):
            if self.piece_half(k, d) == half:
                return d
        return None

    def compare(self, v: int, w: int) -> int:
        """-1 if item v lies left of item w on their common segment/puncture."""
        for first in (True, False):
            dv0 = self.directions(v)[0 if first else -1]
            h = self.piece_half(v, dv0)
            dw0 = self.dir_into(w, h)
            if dw0 is None or (not first and len(self.directions(v)) == 1):
                continue
            res = self._walk(v, dv0, w, dw0)
            if res is not None:
                return -1 if res else 1
        raise RuntimeError("cannot order strands; class is not simple")

    def _walk(self, v: int, dv: int, w: int, dw: int) -> bool | None:
        depth = 0
        limit = self.count + 2
        while depth <= limit:
            s = self.major(v)
            nv, nw = self.step(v, dv), self.step(w, dw)
            tv, tw = self.major(nv), self.major(nw)
            if tv != tw:
                if (tv > s) == (tw > s):
                    v_left = tv > tw
                else:
                    v_left = tv < tw
                return v_left ^ bool(depth & 1)
            if self.is_token(nv) or self.is_token(nw):
                return None
            v, w = nv, nw
            depth += 1
        return None


@dataclass
class Component:
    """A connected component of the disk cut along an overlay."""

    punctures: frozenset[int]
    boundary: bool
    classes: frozenset[int]


class Overlay:
    """Simultaneous drawing of several classes in pairwise minimal position."""

    def __init__(self, n: int, words: list[Word], minimize: bool = True):
        self.n = n
        self.words = list(words)
        self.strands = [_Strands(w) for w in words]
        # per segment j (0..n): ordered items; per (puncture, half): ordered tokens
        self.seg_lists: list[list[Item]] = [[] for _ in range(n + 1)]
        self.tok_lists: dict[tuple[int, int], list[Item]] = {
            (p, h): [] for p in range(1, n + 1) for h in (UP, DOWN)
        }
        for c, st in enumerate(self.strands):
            per_seg: dict[int, list[int]] = {}
            per_tok: dict[tuple[int, int], list[int]] = {}
            for k in range(st.count):
                if st.is_token(k):
                    per_tok.setdefault(st.token_info(k), []).append(k)
                else:
                    per_seg.setdefault(st.seg[k], []).append(k)
            cmp = functools.cmp_to_key(st.compare)
            for j, ks in per_seg.items():
                self.seg_lists[j].extend((c, k) for k in sorted(ks, key=cmp))
            for key, ks in per_tok.items():
                self.tok_lists[key].extend((c, k) for k in sorted(ks, key=cmp))
        self._partner: list[dict[Item, Item]] = [{}, {}]
        for c, st in enumerate(self.strands):
            for k in range(st.count):
                for d in st.directions(k):
                    nk = st.step(k, d)
                    self._partner[st.piece_half(k, d)][(c, k)] = (c, nk)
        self._reindex()
        if minimize:
            self.remove_bigons()

    # --- positions -----------------------------------------------------------

    def _reindex(self) -> None:
        self.key: dict[Item, tuple[int, int]] = {}
        self.token_half: dict[Item, int] = {}
        for j, lst in enumerate(self.seg_lists):
            for idx, it in enumerate(lst):
                self.key[it] = (2 * j + 1, idx)
        for (p, h), lst in self.tok_lists.items():
            for idx, it in enumerate(lst):
                self.key[it] = (2 * p, idx)
                self.token_half[it] = h

    def _container(self, it: Item) -> list[Item]:
        major = self.key[it][0]
        if major % 2 == 1:
            return self.seg_lists[(major - 1) // 2]
        return self.tok_lists[(major // 2, self.token_half[it])]

    def _swap(self, u: Item, v: Item) -> None:
        lst = self._container(u)
        iu, iv = self.key[u][1], self.key[v][1]
        lst[iu], lst[iv] = v, u
        self.key[u] = (self.key[u][0], iv)
        self.key[v] = (self.key[v][0], iu)

    def partner(self, it: Item, half: int) -> Item | None:
        return self._partner[half].get(it)

    def chords(self, c: int, half: int) -> list[tuple[Item, Item]]:
        out = []
        for it, other in self._partner[half].items():
            if it[0] == c and it[1] < other[1]:
                out.append((it, other))
        return out

    # --- bigon ladders -------------------------------------------------------

    def _adjacent_gap(self, x: Item, y: Item) -> tuple[Item, Item] | None:
        kx, ky = self.key[x], self.key[y]
        if kx[0] != ky[0] or abs(kx[1] - ky[1]) != 1:
            return None
        if kx[0] % 2 == 0 and self.token_half[x] != self.token_half[y]:
            return None
        return (x, y) if kx < ky else (y, x)

    def _rung(self, u: Item, v: Item, half: int):
        a, b = self.partner(u, half), self.partner(v, half)
        if a is None or b is None:
            return None
        ku, kv, ka, kb = self.key[u], self.key[v], self.key[a], self.key[b]
        lo_a, hi_a = min(ku, ka), max(ku, ka)
        lo_b, hi_b = min(kv, kb), max(kv, kb)

        def in_a(k):
            return lo_a < k < hi_a

        def in_b(k):
            return lo_b < k < hi_b

        if in_a(kv) != in_a(kb):
            return "cap"
        if (in_a(kv) and in_a(kb)) or (in_b(ku) and in_b(ka)):
            gap = self._adjacent_gap(a, b)
            return gap if gap is not None else None
        return None

    def _ladder(self, gap: tuple[Item, Item], half: int):
        chain = []
        cur = gap
        for _ in range(len(self.key) + 2):
            r = self._rung(cur[0], cur[1], half)
            if r is None:
                return None
            if r == "cap":
                return "cap", chain
            chain.append(r)
            if self.key[r[0]][0] % 2 == 0:
                return "corner", chain
            if r == gap or (r[1], r[0]) == gap:
                return None
            cur = r
            half ^= 1
        return None

    def _find_bigon(self) -> list[tuple[Item, Item]] | None:
        for lst in self.seg_lists:
            for u, v in zip(lst, lst[1:]):
                if u[0] == v[0]:
                    continue
                r1 = self._ladder((u, v), UP)
                if r1 is None:
                    continue
                r2 = self._ladder((u, v), DOWN)
                if r2 is None:
                    continue
                if r1[0] == "corner" and r2[0] == "corner":
                    continue
                return [(u, v)] + r1[1] + r2[1]
        for (p, h), lst in self.tok_lists.items():
            for u, v in zip(lst, lst[1:]):
                if u[0] == v[0]:
                    continue
                r = self._ladder((u, v), h)
                if r is not None and r[0] == "cap":
                    return [(u, v)] + r[1]
        return None

    def remove_bigons(self) -> int:
        removed = 0
        while True:
            gaps = self._find_bigon()
            if gaps is None:
                return removed
            for u, v in gaps:
                self._swap(u, v)
            removed += 1

    # --- crossings -----------------------------------------------------------

    def crossings(self, c1: int, c2: int) -> list[tuple[int, tuple[Item, Item], tuple[Item, Item]]]:
        """All (half, chord of c1, chord of c2) pairs that cross."""
        out = []
        for h in (UP, DOWN):
            ch1 = self.chords(c1, h)
            ch2 = self.chords(c2, h) if c2 != c1 else []
            for A in ch1:
                ka = sorted((self.key[A[0]], self.key[A[1]]))
                for B in ch2:
                    kb0, kb1 = self.key[B[0]], self.key[B[1]]
                    if (ka[0] < kb0 < ka[1]) != (ka[0] < kb1 < ka[1]):
                        out.append((h, A, B))
        return out

    def intersection(self, c1: int, c2: int) -> int:
        return len(self.crossings(c1, c2))

    def coordinates(self) -> dict[Item, int]:
        """Integer x-coordinates realizing the current interleaving."""
        keys = sorted(set(self.key.values()))
        rank = {k: i for i, k in enumerate(keys)}
        # tokens of different halves at one puncture may share a key; that is
        # harmless since chords of different halves never meet
        return {it: rank[k] for it, k in self.key.items()}

    # --- complement ----------------------------------------------------------

    def components(self) -> list[Component]:
        """Connected components of the disk minus all drawn classes."""
        rng = random.Random(0x5EED)
        parent: dict = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        # a cell of a half disk is identified by the set of chords spanning it
        lines: list[list[tuple[tuple[int, int], Item]]] = [[], []]
        for it, k in self.key.items():
            if k[0] % 2 == 1:
                lines[UP].append((k, it))
                lines[DOWN].append((k, it))
            else:
                lines[self.token_half[it]].append((k, it))
        cell_of_gap: list[list] = [[], []]
        gap_keys: list[list] = [[], []]
        classes_of_cell: dict = {}
        for h in (UP, DOWN):
            line = sorted(lines[h])
            tags: dict[Item, int] = {}
            acc = 0
            cells = [(h, acc)]
            for k, it in line:
                other = self.partner(it, h)
                pair = (it, other) if it < other else (other, it)
                tag = tags.get(pair)
                if tag is None:
                    tag = tags[pair] = rng.getrandbits(64)
                acc ^= tag
                cells.append((h, acc))
            cell_of_gap[h] = cells
            gap_keys[h] = [k for k, _ in line]
            for g, (k, it) in enumerate(line):
                for cell in (cells[g], cells[g + 1]):
                    classes_of_cell.setdefault(cell, set()).add(it[0])
            for cell in cells:
                find(cell)

        def gap_at(h: int, key: tuple) -> tuple:
            import bisect

            return cell_of_gap[h][bisect.bisect_left(gap_keys[h], key)]

        # glue the halves through every open sub-interval of each segment
        for j, lst in enumerate(self.seg_lists):
            for idx in range(len(lst) + 1):
                probe = (2 * j + 1, idx - 0.5)
                union(gap_at(UP, probe), gap_at(DOWN, probe))

        punct: dict = {}
        for p in range(1, self.n + 1):
            for h in (UP, DOWN):
                toks = self.tok_lists[(p, h)]
                cells = {gap_at(h, (2 * p, -0.5))}
                for idx in range(len(toks)):
                    cells.add(gap_at(h, (2 * p, idx + 0.5)))
                for cell in cells:
                    punct.setdefault(find(cell), set()).add(p)
        boundary_roots = {find(gap_at(h, (0, 0))) for h in (UP, DOWN)}
        boundary_roots |= {find(gap_at(h, (2 * self.n + 2, 0))) for h in (UP, DOWN)}

        comps: dict = {}
        for cell in list(parent):
            r = find(cell)
            comps.setdefault(r, set()).update(classes_of_cell.get(cell, ()))
        out = []
        for r in sorted(comps, key=lambda r: (sorted(punct.get(r, ())), r)):
            out.append(
                Component(
                    punctures=frozenset(punct.get(r, ())),
                    boundary=r in boundary_roots,
                    classes=frozenset(comps[r]),
                )
            )
        return out


def semicircle_crossing_x(a: tuple[int, int], b: tuple[int, int]) -> Fraction:
    """x-coordinate where semicircles over intervals a and b meet."""
    ca = Fraction(a[0] + a[1], 2)
    ra = Fraction(a[1] - a[0], 2)
    cb = Fraction(b[0] + b[1], 2)
    rb = Fraction(b[1] - b[0], 2)
    return (ra * ra - rb * rb + cb * cb - ca * ca) / (2 * (cb - ca))
