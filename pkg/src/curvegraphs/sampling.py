"""Seeded random generator words and classes."""

from __future__ import annotations

import random

from .planar.engine import ArcClass, PuncturedDisk, apply_word, seed_arc, seed_curve


def random_word(rng: random.Random, n: int, max_len: int) -> list[int]:
    length = rng.randint(0, max_len)
    return [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)]


def random_seed(rng: random.Random, disk: PuncturedDisk):
    n = disk.n
    if rng.random() < 0.5:
        i, j = sorted(rng.sample(range(1, n + 1), 2))
        return seed_arc(disk, i, j)
    size = rng.randint(2, n - 1)
    start = rng.randint(1, n - size + 1)
    return seed_curve(disk, range(start, start + size))


def random_class(rng: random.Random, disk: PuncturedDisk, max_len: int):
    word = random_word(rng, disk.n, max_len)
    seed = random_seed(rng, disk)
    return word, seed, apply_word(word, seed)


def random_a2_arc(
    rng: random.Random, disk: PuncturedDisk, max_len: int, ends: tuple[int, int] | None = None
) -> ArcClass:
    """Rejection-sample an arc with endpoints in Q (and equal to ``ends`` if given)."""
    marked = sorted(disk.marked)
    want = set(ends) if ends is not None else None
    for _ in range(100_000):
        i, j = rng.sample(marked, 2)
        x = apply_word(random_word(rng, disk.n, max_len), seed_arc(disk, i, j))
        s, t = x.endpoints
        if s in disk.marked and t in disk.marked and (want is None or {s, t} == want):
            return x
    raise RuntimeError("rejection sampling did not find a suitable arc")
