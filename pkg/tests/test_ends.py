"""End spaces, characteristic systems and the finite-invariance index."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvegraphs.ends import (
    Cantor,
    CharSpace,
    DescriptorSyntax,
    Empty,
    EmptyCase,
    Exact,
    Finite,
    FiniteTypeInput,
    Infinity,
    LowerBound,
    NotCountable,
    Union,
    UnknownName,
    catalog_name,
    cb_derivative,
    characteristic_system,
    classify_fii_zero,
    fii,
    invariant_collection_bound,
    named_surface,
    normalize,
    parse_descriptor,
    parse_end_term,
    surface,
)
from oracles import charsys_oracle

leaf_st = st.one_of(
    st.tuples(st.just("fin"), st.integers(1, 4)),
    st.tuples(st.just("char"), st.integers(0, 3), st.integers(1, 3)),
)


def build(leaves):
    parts = [Finite(l[1]) if l[0] == "fin" else CharSpace(l[1], l[2]) for l in leaves]
    return Union(tuple(parts))


@settings(max_examples=200, deadline=None)
@given(st.lists(leaf_st, min_size=1, max_size=4), st.integers(0, 3))
def test_derivatives_match_ordinal_oracle(leaves, k):
    E = build(leaves)
    for _ in range(k):
        E = cb_derivative(E)
    want = charsys_oracle(leaves, k)
    if want is None:
        assert normalize(E) == Empty()
    else:
        assert characteristic_system(E) == want


def test_derivative_examples():
    assert cb_derivative(CharSpace(2, 3)) == CharSpace(1, 3)
    assert cb_derivative(Finite(4)) == Empty()
    assert str(cb_derivative(parse_end_term("union(cantor, char(1,2), fin(3))"))) == "union(fin(2), cantor)"


def test_charsys_errors():
    with pytest.raises(NotCountable):
        characteristic_system(Union((Cantor(), Finite(1))))
    with pytest.raises(EmptyCase):
        characteristic_system(Empty())


def test_parse_round_trip():
    S = parse_descriptor("genus=inf; ends=union(cantor, fin(1)); ag=[all, none]")
    assert parse_descriptor(str(S)) == S
    assert parse_descriptor("genus = 0 ; ends = char(2, 3)").ends == CharSpace(2, 3)


@pytest.mark.parametrize(
    "text",
    ["genus=inf", "ends=cantor", "genus=x; ends=cantor", "genus=0; ends=fin(2", "genus=0; ends=cantor; ag=some",
     "genus=0; ends=cantor; bogus=1", "genus=0; genus=1; ends=cantor", "genus=0; ends=cantor; ag=[all, none]"],
)
def test_parse_errors(text):
    with pytest.raises(DescriptorSyntax):
        parse_descriptor(text)


def test_genus_and_marks_must_agree():
    with pytest.raises(ValueError):
        surface(0, Finite(1), "all")
    with pytest.raises(ValueError):
        surface(math.inf, Finite(1), "none")


# --- the index ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "name, value",
    [("cantor_tree", 0), ("blooming_cantor_tree", 0), ("loch_ness", 0), ("plane_minus_cantor", 2), ("tripod", 3),
     ("spotted_loch_ness", 1), ("jacobs_ladder", 2), ("punctured_jacobs_ladder", 3)],
)
def test_catalog_values(name, value):
    assert fii(named_surface(name)) == Exact(value)


@pytest.mark.parametrize("alpha", range(1, 5))
@pytest.mark.parametrize("n", range(2, 7))
def test_countable_grid(alpha, n):
    assert fii(surface(0, CharSpace(alpha, n))) == Exact(n)
    assert fii(surface(math.inf, CharSpace(alpha, n), "all")) == Exact(n)


def test_finite_positive_genus_is_infinity():
    assert fii(surface(3, CharSpace(1, 1))) == Infinity()


def test_finite_type_is_rejected():
    with pytest.raises(FiniteTypeInput):
        fii(surface(2, Finite(3)))


def test_unknown_name():
    with pytest.raises(UnknownName):
        named_surface("klein")


def test_zero_classification():
    assert classify_fii_zero(named_surface("cantor_tree")) == "CantorTree"
    assert classify_fii_zero(named_surface("blooming_cantor_tree")) == "BloomingCantorTree"
    assert classify_fii_zero(named_surface("loch_ness")) == "LochNess"
    assert classify_fii_zero(named_surface("tripod")) == "NotZero"


def test_catalog_lookup_is_up_to_leaf_order():
    S = parse_descriptor("genus=0; ends=union(fin(1), cantor)")
    assert catalog_name(S) == "plane_minus_cantor"


def test_lower_bound_certificate():
    S = parse_descriptor("genus=inf; ends=union(cantor, fin(3), cantor); ag=[all, none, none]")
    res = fii(S)
    assert isinstance(res, LowerBound)
    assert res == invariant_collection_bound(S)
    assert res.k == len(res.certificate) >= 3
    assert res.to_dict()["lower_bound"] == res.k
