"""Symbolic end spaces and their Cantor-Bendixson derivatives.

Terms describe compact, separable, totally disconnected spaces below omega^omega
in Cantor-Bendixson rank, plus Cantor sets. ``CharSpace(a, n)`` is the countable
space whose a-th derivative has exactly n points; ``CharSpace(0, n)`` is n
discrete points and normalizes to ``Finite(n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union as _U


@dataclass(frozen=True, order=True)
class Empty:
    def __str__(self) -> str:
        return "empty"


@dataclass(frozen=True, order=True)
class Finite:
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("Finite(k) needs k >= 1")

    def __str__(self) -> str:
        return f"fin({self.k})"


@dataclass(frozen=True, order=True)
class CharSpace:
    rank: int
    top: int

    def __post_init__(self) -> None:
        if self.rank < 0 or self.top < 1:
            raise ValueError("CharSpace(rank, top) needs rank >= 0 and top >= 1")

    def __str__(self) -> str:
        return f"char({self.rank},{self.top})"


@dataclass(frozen=True, order=True)
class Cantor:
    def __str__(self) -> str:
        return "cantor"


@dataclass(frozen=True)
class Union:
    parts: tuple

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("Union needs at least one part")

    def __str__(self) -> str:
        return "union(" + ", ".join(str(p) for p in self.parts) + ")"


EndSpace = _U[Empty, Finite, CharSpace, Cantor, Union]
Leaf = _U[Finite, CharSpace, Cantor]


class NotCountable(ValueError):
    pass


class EmptyCase(ValueError):
    pass


def _sort_key(x) -> tuple:
    order = {Finite: 0, CharSpace: 1, Cantor: 2}
    if isinstance(x, Finite):
        return (0, 0, x.k)
    if isinstance(x, CharSpace):
        return (1, x.rank, x.top)
    return (order[type(x)], 0, 0)


def leaves(E: EndSpace) -> list:
    """Clopen summands of E, flattened, unmerged and in term order."""
    if isinstance(E, Empty):
        return []
    if isinstance(E, Union):
        out = []
        for p in E.parts:
            out.extend(leaves(p))
        return out
    if isinstance(E, CharSpace) and E.rank == 0:
        return [Finite(E.top)]
    return [E]


def normalize(E: EndSpace) -> EndSpace:
    """Flatten, drop empty parts, merge homeomorphic summands of one kind, sort."""
    fin = 0
    chars: dict[int, int] = {}
    cantor = False
    for leaf in leaves(E):
        if isinstance(leaf, Finite):
            fin += leaf.k
        elif isinstance(leaf, CharSpace):
            chars[leaf.rank] = chars.get(leaf.rank, 0) + leaf.top
        else:
            cantor = True
    parts: list = []
    if fin:
        parts.append(Finite(fin))
    parts += [CharSpace(r, chars[r]) for r in sorted(chars)]
    if cantor:
        parts.append(Cantor())
    if not parts:
        return Empty()
    if len(parts) == 1:
        return parts[0]
    return Union(tuple(sorted(parts, key=_sort_key)))


def make_union(*parts: EndSpace) -> EndSpace:
    return normalize(Union(tuple(parts)))


def cb_derivative(E: EndSpace) -> EndSpace:
    """The space of limit points of E."""
    out = []
    for leaf in leaves(E):
        if isinstance(leaf, Cantor):
            out.append(leaf)
        elif isinstance(leaf, CharSpace):
            out.append(CharSpace(leaf.rank - 1, leaf.top))
    return normalize(Union(tuple(out))) if out else Empty()


def is_countable(E: EndSpace) -> bool:
    return not any(isinstance(x, Cantor) for x in leaves(E))


def cardinality(E: EndSpace) -> int | None:
    """Number of points, or None when infinite."""
    total = 0
    for leaf in leaves(E):
        if not isinstance(leaf, Finite):
            return None
        total += leaf.k
    return total


def characteristic_system(E: EndSpace) -> tuple[int, int]:
    """(alpha, n) with |E^(alpha)| = n finite and every earlier derivative infinite.

    Raises :class:`NotCountable` if E contains a Cantor set and
    :class:`EmptyCase` if E is empty.
    """
    E = normalize(E)
    if isinstance(E, Empty):
        raise EmptyCase("the empty space has no characteristic system")
    if not is_countable(E):
        raise NotCountable(f"{E} contains a Cantor set")
    alpha = 0
    while cardinality(E) is None:
        E = cb_derivative(E)
        alpha += 1
    return alpha, cardinality(E)
