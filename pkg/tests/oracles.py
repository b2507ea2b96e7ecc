"""Independent oracles used to freeze expected values.

None of these share code paths with the bigon-removal engine beyond the
single-class drawing (which fixes the forced order of one class's points).
"""

from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction

from curvegraphs.planar.overlay import Overlay


def _merges(left, right):
    n = len(left) + len(right)
    for pos in itertools.combinations(range(n), len(left)):
        out, li, ri = [], 0, 0
        pos = set(pos)
        for k in range(n):
            if k in pos:
                out.append(left[li]); li += 1
            else:
                out.append(right[ri]); ri += 1
        yield out


def min_interleaving_crossings(n, w1, w2, cap=200_000):
    """Minimum chord-crossing count over every interleaving of the two classes.

    Returns None when the search space exceeds ``cap``.
    """
    ov = Overlay(n, [w1, w2], minimize=False)
    slots = []
    for lst in ov.seg_lists:
        slots.append(lst)
    for key in sorted(ov.tok_lists):
        slots.append(ov.tok_lists[key])
    options = []
    total = 1
    for lst in slots:
        left = [it for it in lst if it[0] == 0]
        right = [it for it in lst if it[0] == 1]
        opts = list(_merges(left, right))
        total *= len(opts)
        if total > cap:
            return None
        options.append(opts)
    best = None
    for combo in itertools.product(*options):
        for lst, order in zip(slots, combo):
            lst[:] = order
        ov._reindex()
        c = ov.intersection(0, 1)
        if best is None or c < best:
            best = c
    return best


def bfs(adj, src):
    dist = {src: 0}
    q = deque([src])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def farey_box_distances(B):
    """BFS on the Farey graph of slopes with |p|, q <= B, edges by |ps - qr| = 1.

    Builds adjacency by checking every pair directly; meant for small B.
    """
    from math import gcd

    verts = [(1, 0)] + [(p, q) for q in range(1, B + 1) for p in range(-B, B + 1) if gcd(p, q) == 1]
    adj = {v: [] for v in verts}
    for (p, q), (r, s) in itertools.combinations(verts, 2):
        if abs(p * s - q * r) == 1:
            adj[(p, q)].append((r, s))
            adj[(r, s)].append((p, q))
    return {v: bfs(adj, v) for v in verts}


def four_point_brute(dist, nodes):
    best = Fraction(0)
    for a, b, c, d in itertools.product(nodes, repeat=4):
        s = sorted([dist[a][b] + dist[c][d], dist[a][c] + dist[b][d], dist[a][d] + dist[b][c]])
        best = max(best, Fraction(s[2] - s[1], 2))
    return best


def ordinal_points(alpha, n, N=3):
    """Finite sample of [0, w^alpha * n] as Cantor-normal-form coefficient tuples.

    Coefficients below the top are truncated to < N; every point of positive
    rank keeps its true rank (the smallest exponent with nonzero coefficient).
    Returns the list of ranks, one per sampled point.
    """
    if alpha == 0:
        return [0] * n  # n isolated points; the ordinal [0, n] would have n + 1
    ranks = []
    for top in range(n + 1):
        lows = [()] if top == n else itertools.product(range(N), repeat=alpha)
        for low in lows:
            coeffs = (top,) + tuple(low)  # exponents alpha, alpha-1, ..., 0
            nz = [alpha - i for i, c in enumerate(coeffs) if c]
            ranks.append(min(nz) if nz else 0)
    return ranks


def charsys_oracle(leaves, k=0):
    """(alpha, n) of the k-th derivative of a disjoint union of countable leaves.

    ``leaves`` holds ("fin", m) or ("char", alpha, n).
    """
    ranks = []
    for leaf in leaves:
        if leaf[0] == "fin":
            ranks += [0] * leaf[1]
        else:
            ranks += ordinal_points(leaf[1], leaf[2])
    ranks = [r - k for r in ranks if r >= k]
    if not ranks:
        return None
    top = max(ranks)
    return top, ranks.count(top)
