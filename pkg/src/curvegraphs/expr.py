"""Text syntax for classes: ``"s2 S1 * arc(1,3)"`` or ``"curve(2,4)"``.

``s<i>`` is the half-twist sigma_i and ``S<i>`` its inverse. The word is applied
right to left to the seed after ``*``. ``arc(i,j)`` is the straight arc between
punctures i and j; ``curve(i,j)`` is the round curve around punctures i..j.
"""

from __future__ import annotations

import re

from .planar.engine import PuncturedDisk, apply_word, seed_arc, seed_curve

_GEN = re.compile(r"^([sS])(\d+)$")
_SEED = re.compile(r"^\s*(arc|curve)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


class ExprSyntax(ValueError):
    pass


def parse_word(text: str) -> list[int]:
    out = []
    for tok in text.split():
        m = _GEN.match(tok)
        if not m:
            raise ExprSyntax(f"bad generator {tok!r}; use s<i> or S<i>")
        i = int(m.group(2))
        out.append(i if m.group(1) == "s" else -i)
    return out


def format_word(word) -> str:
    return " ".join(f"s{g}" if g > 0 else f"S{-g}" for g in word)


def parse_class(disk: PuncturedDisk, text: str):
    word_text, _, seed_text = text.rpartition("*")
    m = _SEED.match(seed_text)
    if not m:
        raise ExprSyntax(f"bad seed {seed_text.strip()!r}; use arc(i,j) or curve(i,j)")
    kind, i, j = m.group(1), int(m.group(2)), int(m.group(3))
    if kind == "arc":
        seed = seed_arc(disk, i, j)
    else:
        seed = seed_curve(disk, range(min(i, j), max(i, j) + 1))
    word = parse_word(word_text)
    for g in word:
        if not 1 <= abs(g) <= disk.n - 1:
            raise ExprSyntax(f"generator {format_word([g])} out of range for n={disk.n}")
    return apply_word(word, seed)
