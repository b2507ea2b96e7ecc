"""Surface descriptors, the finite-invariance index and its zero cases.

A descriptor is a genus together with a list of clopen leaves of the end
space, each carrying a mark for its ends accumulated by genus: ``none``,
``all``, or ``top`` (the top Cantor-Bendixson stratum of a countable leaf,
which is a finite closed set). ``top`` is what a single nonplanar end with
planar punctures accumulating onto it needs.

Descriptor text grammar (whitespace is ignored)::

    descriptor := field (';' field)*
    field      := 'genus' '=' (INT | 'inf')
                | 'ends' '=' term
                | 'ag' '=' ('none' | 'all' | '[' mark (',' mark)* ']')
    term       := 'empty' | 'cantor' | 'fin(' INT ')' | 'char(' INT ',' INT ')'
                | 'union(' term (',' term)* ')'
    mark       := 'none' | 'all' | 'top'

A bracketed ``ag`` list gives one mark per leaf, in the left-to-right order of
the leaves of the ``ends`` term.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Any

from .space import (
    Cantor,
    CharSpace,
    Empty,
    Finite,
    Union,
    cardinality,
    characteristic_system,
    is_countable,
    leaves,
    normalize,
)

INF = math.inf
MARKS = ("none", "all", "top")


class FiniteTypeInput(ValueError):
    pass


class UnknownName(KeyError):
    pass


class DescriptorSyntax(ValueError):
    pass


# --- results ---------------------------------------------------------------------

@dataclass(frozen=True)
class Exact:
    k: int

    def to_dict(self) -> dict:
        return {"exact": self.k}


@dataclass(frozen=True)
class Infinity:
    def to_dict(self) -> dict:
        return {"infinity": True}


@dataclass(frozen=True)
class LowerBound:
    k: int
    certificate: tuple = ()

    def to_dict(self) -> dict:
        return {"lower_bound": self.k, "certificate": [list(c) for c in self.certificate]}


FiiResult = Exact | Infinity | LowerBound


# --- descriptors -------------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceDescriptor:
    genus: float  # a nonnegative int or INF
    leaves: tuple  # ((leaf, mark), ...)

    def __post_init__(self) -> None:
        if not (self.genus == INF or (isinstance(self.genus, int) and self.genus >= 0)):
            raise ValueError(f"bad genus {self.genus!r}")
        marked = False
        for leaf, mark in self.leaves:
            if isinstance(leaf, (Empty, Union)):
                raise ValueError("leaves must be Finite, CharSpace or Cantor")
            if mark not in MARKS:
                raise ValueError(f"unknown mark {mark!r}")
            if mark == "top" and not isinstance(leaf, CharSpace):
                raise ValueError("only countable infinite leaves can mark their top stratum")
            marked |= mark != "none"
        if marked != (self.genus == INF):
            raise ValueError("genus is infinite exactly when some end is accumulated by genus")

    @property
    def ends(self):
        return normalize(Union(tuple(l for l, _ in self.leaves))) if self.leaves else Empty()

    def ag_status(self) -> str:
        marks = {m for _, m in self.leaves}
        if marks <= {"none"}:
            return "empty"
        if marks == {"all"}:
            return "all"
        return "mixed"

    def is_infinite_type(self) -> bool:
        return self.genus == INF or cardinality(self.ends) is None

    def canonical(self) -> tuple:
        """Merge homeomorphic leaves with equal marks; equal keys mean equal surfaces."""
        fin: dict[str, int] = {}
        chars: dict[tuple[int, str], int] = {}
        cantor: set[str] = set()
        for leaf, mark in self.leaves:
            if isinstance(leaf, CharSpace) and leaf.rank == 0:
                leaf = Finite(leaf.top)
            if isinstance(leaf, Finite):
                fin[mark] = fin.get(mark, 0) + leaf.k
            elif isinstance(leaf, CharSpace):
                chars[(leaf.rank, mark)] = chars.get((leaf.rank, mark), 0) + leaf.top
            else:
                cantor.add(mark)
        return (
            self.genus,
            tuple(sorted(fin.items())),
            tuple(sorted(chars.items())),
            tuple(sorted(cantor)),
        )

    def __str__(self) -> str:
        g = "inf" if self.genus == INF else str(self.genus)
        ends = ", ".join(str(l) for l, _ in self.leaves)
        ends = f"union({ends})" if len(self.leaves) != 1 else ends
        ag = "[" + ", ".join(m for _, m in self.leaves) + "]"
        return f"genus={g}; ends={ends or 'empty'}; ag={ag}"


def surface(genus, ends, ag="none") -> SurfaceDescriptor:
    """Build a descriptor from an end term and ``none``/``all``/per-leaf marks."""
    ls = leaves(ends)
    if isinstance(ag, str):
        marks = [ag] * len(ls)
    else:
        marks = list(ag)
        if len(marks) != len(ls):
            raise ValueError(f"{len(marks)} marks for {len(ls)} leaves")
    return SurfaceDescriptor(genus, tuple(zip(ls, marks)))


# --- the catalog -------------------------------------------------------------------

CATALOG: dict[str, SurfaceDescriptor] = {
    "cantor_tree": surface(0, Cantor()),
    "blooming_cantor_tree": surface(INF, Cantor(), "all"),
    "loch_ness": surface(INF, Finite(1), "all"),
    "plane_minus_cantor": surface(0, Union((Cantor(), Finite(1)))),
    "tripod": surface(INF, Finite(3), "all"),
    "spotted_loch_ness": surface(INF, CharSpace(1, 1), ["top"]),
    "jacobs_ladder": surface(INF, Finite(2), "all"),
    "punctured_jacobs_ladder": surface(INF, Union((Finite(2), Finite(1))), ["all", "none"]),
}

# values for catalog surfaces that no general rule covers
_CATALOG_FII = {
    "plane_minus_cantor": 2,
    "tripod": 3,
    "spotted_loch_ness": 1,
    "jacobs_ladder": 2,
    "punctured_jacobs_ladder": 3,
}


def named_surface(name: str) -> SurfaceDescriptor:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownName(name) from None


def catalog_name(S: SurfaceDescriptor) -> str | None:
    key = S.canonical()
    for name, T in CATALOG.items():
        if T.canonical() == key:
            return name
    return None


# --- the index -----------------------------------------------------------------------

def _require_infinite_type(S: SurfaceDescriptor) -> None:
    if not S.is_infinite_type():
        raise FiniteTypeInput(f"{S} is of finite type")


def classify_fii_zero(S: SurfaceDescriptor) -> str:
    """CantorTree, BloomingCantorTree, LochNess or NotZero."""
    _require_infinite_type(S)
    if S.genus != INF and S.genus > 0:
        return "NotZero"
    status = S.ag_status()
    if status == "mixed":
        return "NotZero"
    E = S.ends
    if isinstance(E, Cantor):
        return "CantorTree" if status == "empty" else "BloomingCantorTree"
    if status == "all" and cardinality(E) == 1:
        return "LochNess"
    return "NotZero"


def fii(S: SurfaceDescriptor):
    """Finite-invariance index by a cascade of rules; first match wins."""
    _require_infinite_type(S)
    if S.genus != INF and S.genus > 0:
        return Infinity()
    status = S.ag_status()
    E = S.ends
    if status != "mixed" and is_countable(E):
        if cardinality(E) == 1:
            return Exact(0)
        return Exact(characteristic_system(E)[1])
    if status != "mixed" and isinstance(E, Cantor):
        return Exact(0)
    name = catalog_name(S)
    if name in _CATALOG_FII:
        return Exact(_CATALOG_FII[name])
    return invariant_collection_bound(S)


def invariant_collection_bound(S: SurfaceDescriptor) -> LowerBound:
    """An explicit invariant collection of disjoint closed proper subsets.

    Homeomorphisms of the end space preserving the genus-accumulated ends keep
    the perfect kernel, the part of it accumulated by genus, and the finite
    set of countable points of largest rank. The kernel pieces are clopen and
    that finite set splits into singletons.
    """
    total = [l for l, _ in S.leaves]
    kernel = {"all": [], "none": []}
    for idx, (leaf, mark) in enumerate(S.leaves):
        if isinstance(leaf, Cantor):
            kernel[mark].append(idx)
    cert: list[tuple[Any, ...]] = []
    for mark in ("all", "none"):
        idxs = kernel[mark]
        if idxs and len(idxs) < len(total):
            cert.append(("kernel", mark, tuple(idxs)))
    top_rank = -1
    for leaf in total:
        if isinstance(leaf, Finite):
            top_rank = max(top_rank, 0)
        elif isinstance(leaf, CharSpace):
            top_rank = max(top_rank, leaf.rank)
    if top_rank >= 0:
        for idx, leaf in enumerate(total):
            rank = 0 if isinstance(leaf, Finite) else getattr(leaf, "rank", None)
            if rank == top_rank:
                count = leaf.k if isinstance(leaf, Finite) else leaf.top
                for j in range(count):
                    cert.append(("point", top_rank, idx, j))
    if not cert:
        # the genus-accumulated ends form a closed invariant set
        cert = [("ag",)]
    return LowerBound(len(cert), tuple(cert))


# --- text syntax -----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z_]+)|(.))")


def _tokens(text: str) -> list[str]:
    out = []
    for num, word, sym in _TOKEN.findall(text):
        tok = num or word or sym
        if tok.strip():
            out.append(tok)
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.pos = 0

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise DescriptorSyntax(f"expected {expected or 'a token'} at token {self.pos}, got {tok!r}")
        self.pos += 1
        return tok

    def integer(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise DescriptorSyntax(f"expected an integer, got {tok!r}")
        return int(tok)

    def term(self):
        head = self.take()
        if head == "empty":
            return Empty()
        if head == "cantor":
            return Cantor()
        if head == "fin":
            self.take("(")
            k = self.integer()
            self.take(")")
            return Finite(k)
        if head == "char":
            self.take("(")
            a = self.integer()
            self.take(",")
            n = self.integer()
            self.take(")")
            return CharSpace(a, n)
        if head == "union":
            self.take("(")
            parts = [self.term()]
            while self.peek() == ",":
                self.take(",")
                parts.append(self.term())
            self.take(")")
            return Union(tuple(parts))
        raise DescriptorSyntax(f"unknown end term {head!r}")


def parse_descriptor(text: str) -> SurfaceDescriptor:
    fields: dict[str, Any] = {}
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        if "=" not in chunk:
            raise DescriptorSyntax(f"field {chunk.strip()!r} has no '='")
        name, value = (s.strip() for s in chunk.split("=", 1))
        if name in fields:
            raise DescriptorSyntax(f"duplicate field {name!r}")
        if name == "genus":
            if value == "inf":
                fields[name] = INF
            elif value.isdigit():
                fields[name] = int(value)
            else:
                raise DescriptorSyntax(f"bad genus {value!r}")
        elif name == "ends":
            p = _Parser(value)
            fields[name] = p.term()
            if p.peek() is not None:
                raise DescriptorSyntax(f"trailing input in ends: {p.toks[p.pos:]}")
        elif name == "ag":
            if value in ("none", "all"):
                fields[name] = value
            elif value.startswith("[") and value.endswith("]"):
                marks = [m.strip() for m in value[1:-1].split(",")]
                bad = [m for m in marks if m not in MARKS]
                if bad:
                    raise DescriptorSyntax(f"unknown marks {bad}")
                fields[name] = marks
            else:
                raise DescriptorSyntax(f"bad ag value {value!r}")
        else:
            raise DescriptorSyntax(f"unknown field {name!r}")
    for required in ("genus", "ends"):
        if required not in fields:
            raise DescriptorSyntax(f"missing field {required!r}")
    try:
        return surface(fields["genus"], fields["ends"], fields.get("ag", "none"))
    except ValueError as exc:
        raise DescriptorSyntax(str(exc)) from exc


def parse_end_term(text: str):
    """Parse a bare end term such as ``union(cantor, char(2,3))``."""
    p = _Parser(text)
    E = p.term()
    if p.peek() is not None:
        raise DescriptorSyntax(f"trailing input at token {p.pos}: {p.peek()!r}")
    return E
