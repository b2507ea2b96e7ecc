"""Isotopy classes on punctured disks: canonical forms, twists, intersections."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvegraphs.planar import (
    ArcClass,
    BadMarks,
    Inessential,
    apply_generator,
    apply_word,
    complement_analysis,
    fingerprint,
    fingerprint_t1,
    inside_punctures,
    intersection_number,
    is_sep2_vertex,
    is_simple,
    make_disk,
    phi_boundary,
    seed_arc,
    seed_curve,
)
from curvegraphs.sampling import random_class, random_word
from oracles import min_interleaving_crossings

D5 = make_disk(5)


def seeds(disk):
    n = disk.n
    out = [seed_arc(disk, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    out += [seed_curve(disk, range(i, j + 1)) for i in range(1, n) for j in range(i + 1, n + 1) if j - i + 1 <= n - 1]
    return out


def words(n, max_len):
    gen = st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i]))
    return st.lists(gen, max_size=max_len)


# --- disks and seeds -------------------------------------------------------------------

def test_make_disk_marks_and_blocks():
    d = make_disk(6, [1, 3, 5])
    assert d.marked == frozenset({1, 3, 5}) and d.singletons
    d = make_disk(8, [[1, 2], [3, 4]])
    assert d.block_of(4) == 1 and d.block_of(6) is None and not d.singletons


@pytest.mark.parametrize("n, marks", [(2, None), (5, [[1, 2], [2, 3]]), (5, [7]), (5, [[]])])
def test_make_disk_rejects_bad_marks(n, marks):
    with pytest.raises(BadMarks):
        make_disk(n, marks)


def test_seed_arc_is_straight_and_canonical():
    a = seed_arc(D5, 1, 2)
    assert a.kind == "arc" and a.endpoints == (1, 2) and a.word.crossings == ()
    assert seed_arc(D5, 2, 1) == a


def test_seed_curve_rejects_inessential_runs():
    with pytest.raises(Inessential):
        seed_curve(D5, [3])
    with pytest.raises(Inessential):
        seed_curve(D5, range(1, 6))
    with pytest.raises(ValueError):
        seed_curve(D5, [1, 3])


def test_generator_out_of_range():
    with pytest.raises(ValueError):
        apply_generator(5, seed_arc(D5, 1, 2))


def test_half_twist_swaps_endpoints():
    a = apply_generator(2, seed_arc(D5, 1, 2))
    assert set(a.endpoints) == {1, 3}
    assert apply_generator(1, seed_arc(D5, 1, 2)) == seed_arc(D5, 1, 2)


# --- group relations --------------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(words(5, 8), st.sampled_from(seeds(D5)), st.integers(1, 4), st.sampled_from([1, -1]))
def test_generator_then_inverse_is_identity(word, x, i, s):
    y = apply_word(word, x)
    assert apply_generator(-s * i, apply_generator(s * i, y)) == y


@settings(max_examples=150, deadline=None)
@given(words(5, 6), st.sampled_from(seeds(D5)), st.integers(1, 3))
def test_braid_relation(word, x, i):
    y = apply_word(word, x)
    assert apply_word([i, i + 1, i], y) == apply_word([i + 1, i, i + 1], y)


@settings(max_examples=100, deadline=None)
@given(words(5, 6), st.sampled_from(seeds(D5)))
def test_far_generators_commute(word, x):
    y = apply_word(word, x)
    assert apply_word([1, 3], y) == apply_word([3, 1], y)
    assert apply_word([1, -4], y) == apply_word([-4, 1], y)


@settings(max_examples=60, deadline=None)
@given(words(5, 6), st.sampled_from(seeds(D5)))
def test_full_twist_is_central(word, x):
    delta2 = [1, 2, 3, 4] * 5
    y = apply_word(word, x)
    assert apply_word(delta2, y) == y


# --- intersection numbers -------------------------------------------------------------------

def test_golden_intersections():
    c12, c23 = seed_curve(D5, [1, 2]), seed_curve(D5, [2, 3])
    assert intersection_number(c12, c23) == 2
    assert intersection_number(seed_arc(D5, 1, 2), seed_arc(D5, 2, 3)) == 0
    assert intersection_number(seed_arc(D5, 1, 3), seed_arc(D5, 2, 4)) == 1
    assert intersection_number(seed_curve(D5, [1, 2]), seed_curve(D5, [1, 2, 3])) == 0


@pytest.mark.parametrize("k", [1, 2, 3, -2])
def test_dehn_twist_formula(k):
    # sigma_1^2 is the twist about c12, and i(c, T^k c) = |k| i(c, c12)^2
    c23 = seed_curve(D5, [2, 3])
    t = apply_word([1 if k > 0 else -1] * (2 * abs(k)), c23)
    assert intersection_number(c23, t) == 4 * abs(k)


def test_intersection_matches_interleaving_oracle():
    rng = random.Random(11)
    n = 5
    checked = 0
    for _ in range(150):
        _, _, a = random_class(rng, D5, 4)
        _, _, b = random_class(rng, D5, 4)
        if a == b:
            continue
        want = min_interleaving_crossings(n, a.word, b.word, cap=20000)
        if want is None:
            continue
        checked += 1
        assert intersection_number(a, b) == want, (a, b)
    assert checked >= 50


def test_intersection_is_symmetric_and_invariant():
    rng = random.Random(5)
    d = make_disk(6)
    for _ in range(100):
        _, _, a = random_class(rng, d, 6)
        _, _, b = random_class(rng, d, 6)
        g = random_word(rng, 6, 3)
        i = intersection_number(a, b)
        assert i == intersection_number(b, a) == intersection_number(apply_word(g, a), apply_word(g, b))


def test_self_intersection_is_zero():
    x = apply_word([1, 2, -3], seed_curve(D5, [2, 3]))
    assert intersection_number(x, x) == 0


def test_intersection_needs_same_disk():
    with pytest.raises(ValueError):
        intersection_number(seed_arc(D5, 1, 2), seed_arc(make_disk(6), 1, 2))


# --- fingerprints ---------------------------------------------------------------------------

def test_fingerprint_of_straight_arc():
    fp = fingerprint(seed_arc(make_disk(3), 2, 3))
    assert fp[0] == "arc" and fp[3] == (2, 3)
    assert all(c == 0 for c in fp[1])


def test_fingerprints_separate_classes():
    rng = random.Random(2)
    d = make_disk(6)
    by0, by1 = {}, {}
    for _ in range(300):
        _, _, x = random_class(rng, d, 7)
        assert by0.setdefault(fingerprint(x), x) == x
        assert by1.setdefault(fingerprint_t1(x), x) == x


def test_fingerprints_distinguish_twisted_arc_with_shared_ends():
    d = make_disk(3)
    x = seed_arc(d, 2, 3)
    y = apply_word([1, 1], x)
    assert x != y and fingerprint(x) != fingerprint(y)
    # both ends are shared, so the interiors can be made disjoint
    assert intersection_number(x, y) == 0


def test_is_simple_on_reduced_classes():
    rng = random.Random(4)
    for _ in range(50):
        _, _, x = random_class(rng, D5, 6)
        assert is_simple(x)


# --- boundary curves, complements, separating curves -------------------------------------

def test_phi_boundary_of_straight_arcs():
    assert phi_boundary(seed_arc(D5, 1, 2)) == seed_curve(D5, [1, 2])
    # the arc passes over p3, which stays outside its neighbourhood
    assert inside_punctures(phi_boundary(seed_arc(D5, 2, 4))) == frozenset({2, 4})


@settings(max_examples=60, deadline=None)
@given(words(6, 6), st.integers(1, 5))
def test_phi_is_equivariant(word, i):
    d = make_disk(6)
    a = seed_arc(d, i, i + 1)
    assert phi_boundary(apply_word(word, a)) == apply_word(word, phi_boundary(a))
    assert inside_punctures(phi_boundary(apply_word(word, a))) == frozenset(apply_word(word, a).endpoints)


def test_phi_of_arc_is_disjoint_from_arc():
    a = apply_word([2, -3, 1], seed_arc(D5, 1, 2))
    assert intersection_number(a, phi_boundary(a)) == 0


def test_phi_on_smallest_disk_is_essential():
    d = make_disk(3)
    assert inside_punctures(phi_boundary(seed_arc(d, 1, 3))) == frozenset({1, 3})


def test_complement_of_two_crossing_curves():
    comps = complement_analysis([seed_curve(D5, [1, 2]), seed_curve(D5, [2, 3])])
    # inside c12 only, inside both, inside c23 only, and the outer region
    assert sorted(len(c["punctures"]) for c in comps) == [1, 1, 1, 2]
    assert sum(c["boundary"] for c in comps) == 1
    outer = next(c for c in comps if c["boundary"])
    assert outer["punctures"] == [4, 5]


def test_complement_blocks():
    d = make_disk(8, [[1, 2], [3, 4], [5, 6], [7, 8]])
    comps = complement_analysis([seed_curve(d, [1, 2, 3, 4])], d)
    inside = next(c for c in comps if not c["boundary"])
    assert inside["blocks_inside"] == [0, 1]


def test_sep2_membership():
    d8 = make_disk(8)
    assert is_sep2_vertex(seed_curve(d8, [3, 4]), d8)
    assert not is_sep2_vertex(seed_curve(d8, range(1, 8)), d8)
    blocks = make_disk(8, [[1, 2], [3, 4], [5, 6], [7, 8]])
    assert is_sep2_vertex(seed_curve(blocks, [1, 2, 3, 4]), blocks)
    assert not is_sep2_vertex(seed_curve(blocks, [2, 3]), blocks)
    assert not is_sep2_vertex(seed_curve(blocks, [1, 2]), blocks)
