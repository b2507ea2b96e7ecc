"""Reproducible experiments backing the acceptance checks.

Every experiment is a plain function of a random seed returning an
:class:`ExperimentRecord`. ``run_suite`` runs them all and produces the
summary table written by the ``paper-suite`` command.
"""

from __future__ import annotations

import collections
import itertools
import math
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from .ends import (
    CharSpace,
    Exact,
    Infinity,
    Finite,
    fii,
    named_surface,
    surface,
)
from .graphs import (
    GEQ3,
    SmallDistanceOracle,
    bounded_farey_distances,
    bounded_slopes,
    build_word_ball,
    decide_phi_pair,
    farey_apply,
    farey_distance,
    model_classes,
    remark_graph,
)
from .graphs.model import GraphModel
from .metric import (
    Condition2Fail,
    bounded_orbit_certify,
    diameter,
    guessing_check,
    qi_bound_from_retract,
    qi_inequality_audit,
    quasi_retract_check,
)
from .planar.engine import (
    apply_word,
    fingerprint,
    fingerprint_t1,
    intersection_number,
    is_sep2_vertex,
    make_disk,
    seed_arc,
    seed_curve,
)
from .sampling import random_a2_arc, random_class, random_word
from .unicorn import a_family, slim_check, unicorn_datum, unicorn_path

DEFAULT_SEED = 20240601
SUITE_VERSION = 1


@dataclass
class ExperimentRecord:
    id: int
    name: str
    claim: str
    passed: bool
    params: dict
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)


def _timed(fn: Callable[..., ExperimentRecord]) -> Callable[..., ExperimentRecord]:
    def run(*args, **kwargs) -> ExperimentRecord:
        t = time.perf_counter()
        rec = fn(*args, **kwargs)
        rec.seconds = round(time.perf_counter() - t, 3)
        return rec

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# --- 1: finite-invariance index ----------------------------------------------------

CATALOG_EXPECTED = {
    "cantor_tree": 0,
    "blooming_cantor_tree": 0,
    "loch_ness": 0,
    "plane_minus_cantor": 2,
    "tripod": 3,
    "spotted_loch_ness": 1,
    "jacobs_ladder": 2,
    "punctured_jacobs_ladder": 3,
}


@_timed
def exp_fii_catalog(seed: int = DEFAULT_SEED) -> ExperimentRecord:
    """Catalog values, the countable grid and the positive-genus rule."""
    bad = []
    for name, want in CATALOG_EXPECTED.items():
        got = fii(named_surface(name))
        if got != Exact(want):
            bad.append({"surface": name, "got": got.to_dict(), "want": want})
    grid = 0
    for alpha in range(1, 5):
        for n in range(2, 7):
            for ag in ("none", "all"):
                genus = math.inf if ag == "all" else 0
                got = fii(surface(genus, CharSpace(alpha, n), ag))
                grid += 1
                if got != Exact(n):
                    bad.append({"char": [alpha, n], "ag": ag, "got": got.to_dict()})
    finite_genus = 0
    for g in (1, 2, 5):
        for E in (CharSpace(1, 1), CharSpace(2, 3)):
            finite_genus += 1
            got = fii(surface(g, E))
            if got != Infinity():
                bad.append({"genus": g, "ends": str(E), "got": got.to_dict()})
    return ExperimentRecord(
        1,
        "fii-catalog",
        "finite-invariance index matches the catalog, the countable grid and the genus rule",
        not bad,
        {"grid": "alpha 1..4 x n 2..6 x ag {none, all}"},
        {"catalog": len(CATALOG_EXPECTED), "grid_cases": grid, "finite_genus_cases": finite_genus,
         "failures": bad},
    )


# --- 2: engine soundness -----------------------------------------------------------

def braid_rewrite(rng: random.Random, word: list[int], n: int) -> list[int]:
    """Apply one braid-group relation somewhere in the word.

    Tries a braid or commutation move at a random position and otherwise
    inserts a relator (a cancelling pair or a braid relator).
    """
    w = list(word)
    spots = []
    for k in range(len(w) - 2):
        a, b, c = w[k : k + 3]
        if a == c and abs(abs(a) - abs(b)) == 1 and (a > 0) == (b > 0):
            spots.append(("braid", k))
    for k in range(len(w) - 1):
        if abs(abs(w[k]) - abs(w[k + 1])) >= 2:
            spots.append(("commute", k))
    if spots and rng.random() < 0.7:
        move, k = rng.choice(spots)
        if move == "braid":
            a, b = w[k], w[k + 1]
            w[k : k + 3] = [b, a, b]
        else:
            w[k], w[k + 1] = w[k + 1], w[k]
        return w
    pos = rng.randint(0, len(w))
    i = rng.randint(1, n - 1)
    if n > 2 and rng.random() < 0.5:
        j = i + 1 if i < n - 1 else i - 1
        rel = [i, j, i, -j, -i, -j]
    else:
        s = rng.choice((1, -1))
        rel = [s * i, -s * i]
    return w[:pos] + rel + w[pos:]


@_timed
def exp_engine_soundness(seed: int = DEFAULT_SEED, count: int = 500, n: int = 7, max_len: int = 8) -> ExperimentRecord:
    """Fingerprints survive braid rewrites; intersection numbers are symmetric and invariant."""
    rng = random.Random(seed)
    disk = make_disk(n)
    sample = [random_class(rng, disk, max_len) for _ in range(count)]
    rewrite_fail = []
    for word, seed_cls, x in sample:
        w2 = word
        for _ in range(rng.randint(1, 3)):
            w2 = braid_rewrite(rng, w2, n)
        if fingerprint(apply_word(w2, seed_cls)) != fingerprint(x):
            rewrite_fail.append({"word": word, "rewritten": w2})
    inter_fail = []
    for _ in range(count):
        (_, _, a), (_, _, b) = rng.sample(sample, 2)
        g = random_word(rng, n, 3) or [1]
        i1 = intersection_number(a, b)
        i2 = intersection_number(b, a)
        i3 = intersection_number(apply_word(g, a), apply_word(g, b))
        if not i1 == i2 == i3:
            inter_fail.append({"a": repr(a), "b": repr(b), "values": [i1, i2, i3]})
    classes = {x for _, _, x in sample}
    t0 = collections.defaultdict(set)
    t1 = collections.defaultdict(set)
    for x in classes:
        t0[fingerprint(x)].add(x)
        t1[fingerprint_t1(x)].add(x)
    collisions = sum(len(v) - 1 for v in t0.values()) + sum(len(v) - 1 for v in t1.values())
    passed = not rewrite_fail and not inter_fail and collisions == 0
    return ExperimentRecord(
        2,
        "engine-soundness",
        "fingerprints are braid invariant, intersection numbers symmetric and invariant, no collisions",
        passed,
        {"n": n, "count": count, "max_len": max_len, "seed": seed},
        {"distinct_classes": len(classes), "rewrite_failures": rewrite_fail[:5],
         "intersection_failures": inter_fail[:5], "collisions": collisions},
    )


# --- 3: unicorn paths --------------------------------------------------------------

def unicorn_disk():
    return make_disk(7, [1, 2, 3, 4, 5])


def _distinct_pair(rng, disk, max_len):
    a = random_a2_arc(rng, disk, max_len)
    b = random_a2_arc(rng, disk, max_len)
    while b == a:
        b = random_a2_arc(rng, disk, max_len)
    return a, b


@_timed
def exp_unicorn_validity(seed: int = DEFAULT_SEED, count: int = 300, max_len: int = 6) -> ExperimentRecord:
    """Unicorn paths are paths of the right length with vertices in A2."""
    rng = random.Random(seed)
    disk = unicorn_disk()
    facets = {"path": 0, "count": 0, "membership": 0, "endpoints": 0}
    short = []
    for _ in range(count):
        a, b = _distinct_pair(rng, disk, max_len)
        alpha, beta = rng.choice(a.endpoints), rng.choice(b.endpoints)
        i = intersection_number(a, b)
        try:
            path = unicorn_path(a, alpha, b, beta)
        except Exception:
            facets["path"] += 1
            continue
        if len(path) != i + 2:
            facets["count"] += 1
            datum = unicorn_datum(a, alpha, b, beta)
            short.append({"i": i, "vertices": len(path), "non_embedded": datum.embedded.count(False)})
        interior = path[1:-1]
        if alpha != beta:
            if any(not set(c.endpoints) <= disk.marked for c in interior):
                facets["membership"] += 1
            if any(set(c.endpoints) != {alpha, beta} for c in interior):
                facets["endpoints"] += 1
    return ExperimentRecord(
        3,
        "unicorn-validity",
        "unicorn paths have disjoint consecutive vertices, i(a,b)+2 vertices, interior in A2",
        not any(facets.values()),
        {"n": 7, "Q": [1, 2, 3, 4, 5], "count": count, "max_len": max_len, "seed": seed},
        {"facet_failures": facets, "short_paths": short[:20]},
    )


# --- 4 and 10: slim unicorn triangles -------------------------------------------------

def slim_triples(seed: int = DEFAULT_SEED, count: int = 100, shared: int = 15, max_len: int = 6):
    rng = random.Random(seed)
    disk = unicorn_disk()
    out = []
    for k in range(count):
        if k < shared:
            a = random_a2_arc(rng, disk, max_len)
            b = random_a2_arc(rng, disk, max_len, ends=a.endpoints)
            d = random_a2_arc(rng, disk, max_len, ends=a.endpoints)
        else:
            a, b, d = (random_a2_arc(rng, disk, max_len) for _ in range(3))
        out.append((a, b, d))
    return disk, out


@_timed
def exp_slim(seed: int = DEFAULT_SEED, count: int = 100, shared: int = 15) -> ExperimentRecord:
    """A(a, b) lies in the 2-neighbourhood of A(a, d) u A(d, b)."""
    disk, triples = slim_triples(seed, count, shared)
    fails = [repr(t) for t in triples if not slim_check(*t, disk, M=2)]
    n_shared = sum(1 for a, b, d in triples if set(a.endpoints) == set(b.endpoints) == set(d.endpoints))
    return ExperimentRecord(
        4,
        "unicorn-slim",
        "unicorn triangles are 2-slim",
        not fails and n_shared >= 10,
        {"n": 7, "Q": [1, 2, 3, 4, 5], "count": count, "shared": shared, "seed": seed},
        {"failures": fails, "shared_endpoint_triples": n_shared},
    )


# --- 5: the map to separating curves --------------------------------------------------

def _both_sides_decided(rec: tuple) -> bool:
    """Both inequalities follow from the pair, not just one of them.

    (2, GEQ3) settles only the lower side and (GEQ3, GEQ3) neither.
    """
    dA, d = rec
    if "UNDECIDED" in rec:
        return False
    if d == "GEQ3":
        return dA in (0, 1)
    return True


@_timed
def exp_phi_inequalities(seed: int = DEFAULT_SEED, count: int = 200, max_len: int = 4) -> ExperimentRecord:
    """d_A - 2 <= d(phi a, phi b) <= 2 d_A on decided pairs, plus a pinned pair."""
    rng = random.Random(seed)
    disk = unicorn_disk()
    pairs = []
    skipped = 0
    while len(pairs) < count:
        a, b = random_a2_arc(rng, disk, max_len), random_a2_arc(rng, disk, max_len)
        rec = decide_phi_pair(a, b, disk)
        if _both_sides_decided(rec):
            pairs.append(rec)
        else:
            skipped += 1
    pinned = decide_phi_pair(seed_arc(disk, 1, 2), seed_arc(disk, 2, 3), disk)
    report = qi_inequality_audit(pairs + [pinned], mult=2, add=2)
    hist = collections.Counter(f"{x},{y}" for x, y in pairs)
    return ExperimentRecord(
        5,
        "phi-inequalities",
        "the boundary map distorts small distances within d_A - 2 <= d <= 2 d_A",
        report.ok and pinned == (1, 2) and report.checked == count + 1,
        {"n": 7, "Q": [1, 2, 3, 4, 5], "count": count, "max_len": max_len, "seed": seed},
        {"pinned": list(pinned), "checked": report.checked, "violations": report.violations,
         "histogram": dict(sorted(hist.items())), "skipped_partial": skipped},
    )


# --- 6: separating-curve graph ------------------------------------------------------

@_timed
def exp_sep2(seed: int = DEFAULT_SEED, L: int = 4) -> ExperimentRecord:
    """Connected word ball of separating curves; the twice-intersecting rule is used."""
    disk = make_disk(8)
    g = build_word_ball("Sep2", disk, [seed_curve(disk, [3, 4])], L)
    classes = model_classes(g)
    connected = len(g) > 0 and math.isfinite(diameter(g))
    members_ok = all(is_sep2_vertex(c, disk) for c in classes.values())
    disk4 = make_disk(8, [[1, 2], [3, 4], [5, 6], [7, 8]])
    g4 = build_word_ball("Sep2", disk4, [seed_curve(disk4, [1, 2, 3, 4]), seed_curve(disk4, [3, 4, 5, 6])], 2)
    cl4 = model_classes(g4)
    twice = sum(1 for u, v in g4.edges if intersection_number(cl4[u], cl4[v]) == 2)
    return ExperimentRecord(
        6,
        "sep2-structure",
        "the separating-curve word ball is connected and its edges use the at-most-twice rule",
        connected and members_ok and twice >= 1,
        {"n": 8, "L": L, "seed_curve": [3, 4], "four_block_L": 2},
        {"vertices": len(g), "edges": len(g.edges), "connected": connected, "members_ok": members_ok,
         "four_block_vertices": len(g4), "four_block_edges": len(g4.edges), "edges_with_i2": twice},
    )


# --- 7: Farey graph -------------------------------------------------------------------

ANOSOV = ((2, 1), (1, 1))


@_timed
def exp_farey(seed: int = DEFAULT_SEED, B: int = 40, K: int = 10) -> ExperimentRecord:
    """Continued-fraction distances against the exhaustive box oracle; translation growth."""
    box = bounded_slopes(B)
    idx, D = bounded_farey_distances(B, box)
    mismatches = 0
    example = None
    for i, s in enumerate(box):
        row = D[i]
        for t in box[i:]:
            if farey_distance(s, t) != row[idx[t]]:
                mismatches += 1
                example = example or [str(s), str(t)]
    seq = []
    x = (1, 0)
    for _ in range(K):
        x = farey_apply(ANOSOV, x)
        seq.append(farey_distance((1, 0), x))
    ks = range(1, K + 1)
    growth_ok = all(a <= b for a, b in zip(seq, seq[1:])) and all(d >= k / 4 for d, k in zip(seq, ks))
    return ExperimentRecord(
        7,
        "farey-model",
        "Farey distances are exact and the Anosov map translates with positive speed",
        mismatches == 0 and growth_ok,
        {"B": B, "K": K, "matrix": [list(r) for r in ANOSOV]},
        {"slopes": len(box), "pairs": len(box) * (len(box) + 1) // 2, "mismatches": mismatches,
         "first_mismatch": example, "orbit_distances": seq},
    )


# --- 8 and 9: the layered graph --------------------------------------------------------

@_timed
def exp_remark_graph(seed: int = DEFAULT_SEED, w: int = 3) -> ExperimentRecord:
    """remark_graph(m, w) has diameter m - 1 and every orbit has diameter at most 2."""
    bad = []
    for m in range(2, 11):
        g = remark_graph(m, w)
        d = diameter(g)
        orbit_d = max(diameter(g, [k for k, v in g.vertices.items() if v["orbit"] == f"O{i}"]) for i in range(m))
        if d != m - 1 or orbit_d > 2:
            bad.append({"m": m, "diameter": d, "orbit_diameter": orbit_d})
    return ExperimentRecord(
        8, "remark-graph", "layered graph diameters", not bad, {"m": "2..10", "w": w}, {"failures": bad}
    )


def condition2_violator() -> GraphModel:
    """An orbit {x, y, z} where V relates only y and z: x meets neither."""
    g = GraphModel(meta={"builder": "condition2_violator"})
    for k in ("x", "y", "z"):
        g.add_vertex(k, orbit="O")
    g.add_vertex("c", orbit="C")
    g.add_edge("x", "c")
    g.add_edge("c", "y")
    g.add_edge("y", "z")
    return g


@_timed
def exp_certifier(seed: int = DEFAULT_SEED, m: int = 5, w: int = 3) -> ExperimentRecord:
    """The bounded-orbit certifier passes on layers and rejects a violator."""
    g = remark_graph(m, w)
    reports = []
    ok = True
    for i in range(m):
        rep = bounded_orbit_certify(g, f"O{i}", g.has_edge)
        reports.append({"orbit": rep.orbit, "A": rep.A, "bound": rep.diameter_bound,
                        "observed": rep.observed_diameter})
        ok &= rep.A == 1 and rep.diameter_bound == 2 and rep.observed_diameter <= rep.diameter_bound
    bad = condition2_violator()
    witness = None
    try:
        bounded_orbit_certify(bad, "O", bad.has_edge)
    except Condition2Fail as exc:
        witness = list(exc.pair)
    return ExperimentRecord(
        9,
        "orbit-certifier",
        "bounded-orbit certificates with bound 2A, and a witness for a violator",
        ok and witness is not None,
        {"m": m, "w": w},
        {"layers": reports, "violator_witness": witness},
    )


# --- 10: coarse-geometry checkers --------------------------------------------------------

@_timed
def exp_checkers(seed: int = DEFAULT_SEED) -> ExperimentRecord:
    """Identity quasi-retract, the QI arithmetic, and guessing geodesics on unicorn families."""
    g = remark_graph(5, 3)
    rep = quasi_retract_check(g, g.vertices, {k: [k] for k in g.vertices})
    A, B = rep.retract
    arith = qi_bound_from_retract(2, 2)
    disk, triples = slim_triples(seed)
    guess = guessing_check(SmallDistanceOracle("A2", disk), a_family, 2, triples=triples)
    return ExperimentRecord(
        10,
        "coarse-checkers",
        "identity retract is (0, <=1), the QI constant is 2A + B, and unicorn families guess geodesics",
        A == 0 and B <= 1 and arith == 6 and guess.passed,
        {"remark_graph": [5, 3], "M": 2, "triples": len(triples), "seed": seed},
        {"retract": [A, B], "qi_bound_2_2": arith, "guessing": guess.to_dict()},
    )


EXPERIMENTS: dict[int, Callable[..., ExperimentRecord]] = {
    1: exp_fii_catalog,
    2: exp_engine_soundness,
    3: exp_unicorn_validity,
    4: exp_slim,
    5: exp_phi_inequalities,
    6: exp_sep2,
    7: exp_farey,
    8: exp_remark_graph,
    9: exp_certifier,
    10: exp_checkers,
}


def run_suite(seed: int = DEFAULT_SEED, only: list[int] | None = None) -> dict:
    records = [EXPERIMENTS[k](seed=seed) for k in sorted(only or EXPERIMENTS)]
    return {
        "schema": "paper-suite",
        "version": SUITE_VERSION,
        "seed": seed,
        "records": [r.to_dict() for r in records],
        "passed": sum(r.passed for r in records),
        "total": len(records),
    }


def summary_table(result: dict) -> str:
    """Tab-separated table: id, name, PASS/FAIL, seconds, claim."""
    lines = ["id\tname\tresult\tseconds\tclaim"]
    for r in result["records"]:
        lines.append(f"{r['id']}\t{r['name']}\t{'PASS' if r['passed'] else 'FAIL'}\t{r['seconds']}\t{r['claim']}")
    return "\n".join(lines) + "\n"
