"""Class expressions and seeded sampling."""

from __future__ import annotations

import random

import pytest

from curvegraphs.expr import ExprSyntax, format_word, parse_class, parse_word
from curvegraphs.planar import apply_word, make_disk, seed_arc, seed_curve
from curvegraphs.sampling import random_a2_arc, random_class

D5 = make_disk(5)


def test_parse_word():
    assert parse_word("s2 S1  s3") == [2, -1, 3]
    assert parse_word("") == []
    assert format_word([2, -1]) == "s2 S1"


def test_parse_class_applies_right_to_left():
    assert parse_class(D5, "s2 S1 * arc(1,3)") == apply_word([2, -1], seed_arc(D5, 1, 3))
    assert parse_class(D5, "curve(2,4)") == seed_curve(D5, [2, 3, 4])
    assert parse_class(D5, "s1 * (arc(1,3))".replace("(arc(1,3))", "arc(1,3)")) == apply_word([1], seed_arc(D5, 1, 3))


@pytest.mark.parametrize("text", ["x2 * arc(1,2)", "s2 * line(1,2)", "s9 * arc(1,2)", "s1 *", "arc(1)"])
def test_parse_errors(text):
    with pytest.raises(ExprSyntax):
        parse_class(D5, text)


def test_sampling_is_deterministic():
    a = [random_class(random.Random(4), D5, 6)[2] for _ in range(3)]
    b = [random_class(random.Random(4), D5, 6)[2] for _ in range(3)]
    assert a == b


def test_a2_sampler_respects_marks_and_ends():
    d = make_disk(7, [1, 2, 3, 4, 5])
    rng = random.Random(1)
    for _ in range(20):
        x = random_a2_arc(rng, d, 6, ends=(2, 5))
        assert set(x.endpoints) == {2, 5}
