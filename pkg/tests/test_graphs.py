"""Graph models, word balls, exact small distances and the Farey graph."""

from __future__ import annotations

import itertools
import json
import re

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvegraphs.graphs import (
    GEQ3,
    UNDECIDED,
    EmptySeed,
    KindMismatch,
    MembershipFail,
    NonUnimodular,
    Slope,
    bounded_farey_distances,
    bounded_slopes,
    build_word_ball,
    class_from_dict,
    class_to_dict,
    decide_phi_pair,
    distance_leq2,
    farey_adjacent,
    farey_apply,
    farey_distance,
    farey_graph,
    model_classes,
    remark_graph,
    within2,
)
from curvegraphs.graphs.farey import continued_fraction
from curvegraphs.graphs.model import GraphModel, UnknownVertex, distance_table_csv
from curvegraphs.planar import apply_word, make_disk, seed_arc, seed_curve
from oracles import farey_box_distances


def nxg(g: GraphModel) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.edges)
    return G


# --- model serialization ------------------------------------------------------------------

DOT_LINE = re.compile(r'^  ("(?:[^"\\]|\\.)*")( \[label="(?:[^"\\]|\\.)*"\]| -- "(?:[^"\\]|\\.)*");$')


def test_json_round_trip_is_exact():
    d = make_disk(5)
    g = build_word_ball("A2", d, [seed_arc(d, 1, 2)], 2)
    text = g.to_json()
    again = GraphModel.from_dict(json.loads(text))
    assert again.to_json() == text
    assert model_classes(again) == model_classes(g)


def test_dot_output_follows_the_grammar():
    g = GraphModel()
    g.add_vertex('a"b', label='x "quoted" \\ label')
    g.add_vertex("c")
    g.add_edge('a"b', "c")
    lines = g.to_dot("G").splitlines()
    assert lines[0] == 'graph "G" {' and lines[-1] == "}"
    assert all(DOT_LINE.match(line) for line in lines[1:-1])


def test_add_edge_needs_vertices():
    g = GraphModel()
    g.add_vertex("a")
    with pytest.raises(UnknownVertex):
        g.add_edge("a", "b")


def test_distance_csv():
    assert distance_table_csv([("a", "b", 1)]) == "source,target,distance\na,b,1\n"


def test_class_dict_round_trip():
    x = apply_word([1, -2, 3], seed_curve(make_disk(5), [1, 2]))
    assert class_from_dict(json.loads(json.dumps(class_to_dict(x)))) == x


# --- word balls ------------------------------------------------------------------------------

def test_word_ball_membership_and_errors():
    d = make_disk(6)
    with pytest.raises(EmptySeed):
        build_word_ball("Sep2", d, [], 1)
    with pytest.raises(MembershipFail):
        build_word_ball("Sep2", d, [seed_curve(d, [1, 2, 3, 4, 5])], 1)
    g = build_word_ball("Sep2", d, [seed_curve(d, [2, 3])], 2)
    assert g.meta["L"] == 2 and "caveat" in g.meta
    assert len(g) == 23


def test_word_ball_edges_are_exactly_disjoint_pairs():
    from curvegraphs.planar import intersection_number

    d = make_disk(5)
    g = build_word_ball("A2", d, [seed_arc(d, 1, 2)], 2)
    cl = model_classes(g)
    for u, v in itertools.combinations(sorted(cl), 2):
        assert g.has_edge(u, v) == (intersection_number(cl[u], cl[v]) == 0)


@pytest.mark.parametrize(
    "kind, disk, seed, L",
    [
        ("A2", make_disk(5), "arc", 3),
        ("A2", make_disk(6, [1, 2, 3, 4]), "arc", 3),
        ("Sep2", make_disk(6), "curve", 3),
    ],
)
def test_small_distances_agree_with_ball_distances(kind, disk, seed, L):
    """Ball distances up to 2 are exact; GEQ3 must never meet a ball distance <= 2."""
    s = seed_arc(disk, 1, 2) if seed == "arc" else seed_curve(disk, [2, 3])
    g = build_word_ball(kind, disk, [s], L)
    cl = model_classes(g)
    dist = dict(nx.all_pairs_shortest_path_length(nxg(g)))
    for u, v in itertools.combinations(sorted(cl), 2):
        db = dist[u].get(v, 99)
        r = distance_leq2(kind, cl[u], cl[v], disk)
        if db <= 2:
            assert r == db
        if r == GEQ3:
            assert db >= 3


def test_distance_rejects_kind_mismatch():
    d = make_disk(6)
    with pytest.raises(KindMismatch):
        distance_leq2("A2", seed_arc(d, 1, 2), seed_curve(d, [1, 2]), d)


def test_four_blocks_use_twice_intersecting_edges():
    d = make_disk(8, [[1, 2], [3, 4], [5, 6], [7, 8]])
    x, y = seed_curve(d, [1, 2, 3, 4]), seed_curve(d, [3, 4, 5, 6])
    assert distance_leq2("Sep2", x, y, d) == 1
    g = build_word_ball("Sep2", d, [x, y], 1)
    assert g.meta["adjacency_max_intersection"] == 2


def test_four_block_distance_can_be_undecided():
    d = make_disk(8, [[1, 2], [3, 4], [5, 6], [7, 8]])
    g = build_word_ball("Sep2", d, [seed_curve(d, [1, 2, 3, 4])], 2)
    cl = model_classes(g)
    results = {distance_leq2("Sep2", cl[u], cl[v], d) for u, v in itertools.combinations(sorted(cl), 2)}
    assert UNDECIDED in results
    u, v = sorted(cl)[:2]
    with pytest.raises(RuntimeError):
        within2("Sep2", cl[u], cl[v], d)


def test_phi_pair_examples():
    d = make_disk(7, [1, 2, 3, 4, 5])
    assert decide_phi_pair(seed_arc(d, 1, 2), seed_arc(d, 3, 4), d) == (1, 1)
    assert decide_phi_pair(seed_arc(d, 1, 2), seed_arc(d, 2, 3), d) == (1, 2)


# --- the layered graph --------------------------------------------------------------------------

@pytest.mark.parametrize("m", range(2, 8))
def test_remark_graph_diameter(m):
    G = nxg(remark_graph(m, 3))
    assert nx.diameter(G) == m - 1


# --- Farey graph ----------------------------------------------------------------------------------

def test_slope_normalization():
    assert Slope.of(-2, -3) == Slope(2, 3)
    assert Slope.of(-1, 0) == Slope(1, 0)
    with pytest.raises(ValueError):
        Slope.of(2, 4)


def test_continued_fraction():
    assert continued_fraction(233, 144) == [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2]
    assert continued_fraction(-7, 3) == [-3, 1, 2]


def test_farey_apply_requires_unimodular():
    with pytest.raises(NonUnimodular):
        farey_apply([[2, 0], [0, 1]], (1, 0))
    assert farey_apply([[2, 1], [1, 1]], (1, 0)) == Slope(2, 1)


def test_farey_distance_matches_box_oracle():
    D = farey_box_distances(10)
    for s, row in D.items():
        for t, d in row.items():
            assert farey_distance(s, t) == d, (s, t)


def test_bounded_distances_match_box_oracle():
    D = farey_box_distances(8)
    idx, M = bounded_farey_distances(8, list(D))
    for i, s in enumerate(D):
        for t, d in D[s].items():
            assert M[i][idx[Slope.of(*t)]] == d


def test_farey_graph_edges():
    g = farey_graph(4)
    for s, t in itertools.combinations(bounded_slopes(4), 2):
        assert g.has_edge(str(s), str(t)) == farey_adjacent(s, t)


@settings(max_examples=200, deadline=None)
@given(st.integers(-300, 300), st.integers(1, 300), st.integers(-300, 300), st.integers(1, 300))
def test_farey_distance_invariance_and_triangle(p, q, r, u):
    from math import gcd

    if gcd(p, q) != 1 or gcd(r, u) != 1:
        return
    s, t = (p, q), (r, u)
    d = farey_distance(s, t)
    assert d == farey_distance(t, s)
    A = [[2, 1], [1, 1]]
    assert farey_distance(farey_apply(A, s), farey_apply(A, t)) == d
    assert abs(farey_distance((1, 0), s) - farey_distance((1, 0), t)) <= d


def test_anosov_orbit_growth_pinned():
    x = (1, 0)
    out = []
    for _ in range(6):
        x = farey_apply([[2, 1], [1, 1]], x)
        out.append(farey_distance((1, 0), x))
    assert x == Slope(233, 144)
    idx, M = bounded_farey_distances(250, [(1, 0)])
    assert out[-1] == M[0][idx[x]] == 6
