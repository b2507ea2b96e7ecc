"""HTTP service over the core package.

Every route is a POST taking a JSON body. Domain errors come back as 422 with
``{"error": {"type": ..., "message": ...}}``; anything unexpected is a 500 with
the same shape.
"""

from __future__ import annotations

import json
import random
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import ends, expr, suite
from ..graphs import (
    GEQ3,
    build_word_ball,
    class_key,
    class_to_dict,
    decide_phi_pair,
    farey_apply,
    farey_distance,
    farey_graph,
    remark_graph,
)
from ..graphs.model import GraphModel, UnknownVertex, distance_table_csv
from ..metric import (
    Condition2Fail,
    all_distances,
    bounded_orbit_certify,
    delta_four_point,
    putman_check,
    qi_inequality_audit,
    quasi_retract_check,
    translation_growth,
)
from ..planar.engine import (
    ArcClass,
    PuncturedDisk,
    apply_word,
    fingerprint,
    intersection_number,
    make_disk,
)
from ..sampling import random_a2_arc
from ..unicorn import a_family, slim_check, unicorn_path
from . import schemas as S


class ValidationFailure(ValueError):
    """A request that is well-formed JSON but makes no sense for the domain."""


DOMAIN_ERRORS = (ValueError, KeyError, TypeError, Condition2Fail)

app = FastAPI(title="curvegraphs", version=str(S.API_VERSION))


def _error(status: int, kind: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"type": kind, "message": message}})


@app.exception_handler(RequestValidationError)
async def _on_request_validation(request: Request, exc: RequestValidationError):
    msgs = "; ".join(f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}" for e in exc.errors())
    return _error(422, "RequestValidation", msgs)


async def _on_domain_error(request: Request, exc: Exception):
    message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
    return _error(422, type(exc).__name__, str(message))


async def _on_internal_error(request: Request, exc: Exception):
    return _error(500, type(exc).__name__, str(exc))


for _cls in DOMAIN_ERRORS:
    app.add_exception_handler(_cls, _on_domain_error)
app.add_exception_handler(Exception, _on_internal_error)


# --- helpers ---------------------------------------------------------------------------

def _disk(req: S.DiskSpec) -> PuncturedDisk:
    return make_disk(req.n, None if req.marks == "all" else req.marks)


def _parse(disk: PuncturedDisk, text: str):
    return expr.parse_class(disk, text)


def class_record(x, word: str | None = None) -> dict[str, Any]:
    rec = {
        "kind": x.kind,
        "n": x.n,
        "key": class_key(x),
        "fingerprint": _listify(fingerprint(x)),
        "canonical": class_to_dict(x),
        "word": word,
    }
    if isinstance(x, ArcClass):
        rec["endpoints"] = list(x.endpoints)
    return rec


def _report(rep) -> dict:
    return json.loads(rep.to_json())


def _listify(x):
    if isinstance(x, (tuple, list)):
        return [_listify(v) for v in x]
    return x


def _graph(payload: dict) -> GraphModel:
    try:
        return GraphModel.from_dict(payload)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationFailure(f"malformed graph: {exc}") from exc


def _default_sep2_seed(disk: PuncturedDisk) -> str:
    """The round curve around the first two blocks, when they form a run."""
    blocks = sorted(disk.blocks, key=min)
    run = sorted(blocks[0] | blocks[1]) if len(blocks) >= 2 else []
    if not run or run != list(range(run[0], run[-1] + 1)):
        raise ValidationFailure("give --seed curves explicitly for this block structure")
    return f"curve({run[0]},{run[-1]})"


def _descriptor(req: S.DescriptorRequest):
    if (req.desc is None) == (req.name is None):
        raise ValidationFailure("give exactly one of desc and name")
    return ends.named_surface(req.name) if req.name else ends.parse_descriptor(req.desc)


# --- ends ---------------------------------------------------------------------------------

@app.post("/ends/derive", response_model=S.DeriveResponse)
def ends_derive(req: S.EndTermRequest):
    E = ends.normalize(ends.parse_end_term(req.ends))
    D = E
    for _ in range(req.times):
        D = ends.cb_derivative(D)
    return {"ends": str(E), "derived": str(D), "times": req.times}


@app.post("/ends/charsys", response_model=S.CharsysResponse)
def ends_charsys(req: S.EndTermRequest):
    E = ends.parse_end_term(req.ends)
    alpha, n = ends.characteristic_system(E)
    return {"ends": str(ends.normalize(E)), "alpha": alpha, "n": n}


@app.post("/ends/fii", response_model=S.FiiResponse)
def ends_fii(req: S.DescriptorRequest):
    return {"fii": ends.fii(_descriptor(req)).to_dict()}


@app.post("/ends/classify", response_model=S.ClassifyResponse)
def ends_classify(req: S.DescriptorRequest):
    Sd = _descriptor(req)
    return {"surface": str(Sd), "catalog": ends.catalog_name(Sd), "classification": ends.classify_fii_zero(Sd)}


# --- engine ----------------------------------------------------------------------------------

@app.post("/engine/intersect", response_model=S.IntersectResponse)
def engine_intersect(req: S.IntersectRequest):
    disk = _disk(req)
    a, b = _parse(disk, req.a), _parse(disk, req.b)
    return {"a": class_record(a, req.a), "b": class_record(b, req.b), "intersection": intersection_number(a, b)}


@app.post("/engine/fingerprint", response_model=S.ClassRecord)
def engine_fingerprint(req: S.ClassRequest):
    return class_record(_parse(_disk(req), req.x), req.x)


@app.post("/engine/apply", response_model=S.ClassRecord)
def engine_apply(req: S.ApplyRequest):
    disk = _disk(req)
    word = expr.parse_word(req.word)
    x = apply_word(word, _parse(disk, req.x))
    return class_record(x, f"{req.word} * ({req.x})".strip())


# --- unicorn ---------------------------------------------------------------------------------

@app.post("/unicorn/path", response_model=S.UnicornPathResponse)
def unicorn_path_route(req: S.UnicornPathRequest):
    disk = _disk(req)
    a, b = _parse(disk, req.a), _parse(disk, req.b)
    if not isinstance(a, ArcClass) or not isinstance(b, ArcClass):
        raise ValidationFailure("unicorn paths join two arcs")
    if req.alpha not in a.endpoints or req.beta not in b.endpoints:
        raise ValidationFailure(f"alpha must be in {list(a.endpoints)} and beta in {list(b.endpoints)}")
    path = unicorn_path(a, req.alpha, b, req.beta)
    out = {
        "intersection": intersection_number(a, b),
        "path": [class_record(x) for x in path],
        "edges": len(path) - 1,
    }
    if req.dot:
        g = GraphModel(meta={"builder": "unicorn_family"})
        fam = sorted(a_family(a, b), key=repr)
        keys = {x: class_key(x) for x in fam}
        for x in fam:
            g.add_vertex(keys[x], label=repr(x))
        for i, x in enumerate(fam):
            for y in fam[i + 1:]:
                if intersection_number(x, y) == 0:
                    g.add_edge(keys[x], keys[y])
        out["dot"] = g.to_dot("A")
    return out


@app.post("/unicorn/slim", response_model=S.SlimResponse)
def unicorn_slim(req: S.SlimRequest):
    disk = _disk(req)
    a, b, d = (_parse(disk, t) for t in (req.a, req.b, req.d))
    for x in (a, b, d):
        if not isinstance(x, ArcClass):
            raise ValidationFailure("slim checks take three arcs")
    sizes = {"ab": len(a_family(a, b)), "ad": len(a_family(a, d)), "db": len(a_family(d, b))}
    return {"slim": slim_check(a, b, d, disk, M=req.M), "M": req.M, "family_sizes": sizes}


# --- graphs -------------------------------------------------------------------------------------

@app.post("/graph/build")
def graph_build(req: S.GraphBuildRequest) -> dict:
    kind = req.kind.lower()
    if kind == "remark":
        return remark_graph(req.m, req.w).to_dict()
    if kind == "farey":
        return farey_graph(req.B).to_dict()
    if kind == "a2":
        disk = make_disk(req.n, req.marks)
        seeds = req.seeds or ["arc(1,2)"]
    else:
        disk = make_disk(req.n, None if req.blocks == "singletons" else req.blocks)
        seeds = req.seeds or [_default_sep2_seed(disk)]
    kind = "A2" if kind == "a2" else "Sep2"
    g = build_word_ball(kind, disk, [_parse(disk, s) for s in seeds], req.L)
    g.meta["seed_exprs"] = seeds
    return g.to_dict()


@app.post("/graph/export", response_model=S.GraphExportResponse)
def graph_export(req: S.GraphExportRequest):
    g = _graph(req.graph)
    text = g.to_dot() if req.format == "dot" else g.to_json()
    return {"format": req.format, "text": text}


@app.post("/graph/distance", response_model=S.GraphDistanceResponse)
def graph_distance(req: S.GraphDistanceRequest):
    g = _graph(req.graph)
    sources = req.sources if req.sources is not None else sorted(g.vertices)
    for s in sources:
        if s not in g.vertices:
            raise UnknownVertex(s)
    dist = all_distances(g)
    rows = []
    for s in sources:
        for t in sorted(g.vertices):
            d = dist[s][t]
            rows.append((s, t, None if d == float("inf") else int(d)))
    csv_rows = [(s, t, "inf" if d is None else d) for s, t, d in rows]
    return {"rows": rows, "csv": distance_table_csv(csv_rows)}


# --- metric --------------------------------------------------------------------------------------

@app.post("/metric/delta")
def metric_delta(req: S.DeltaRequest) -> dict:
    return _report(delta_four_point(_graph(req.graph), req.sample_size, req.seed, req.triangles))


@app.post("/metric/qi-audit")
def metric_qi_audit(req: S.QIAuditRequest) -> dict:
    if req.pairs is not None:
        pairs = [tuple(p) for p in req.pairs]
        for p in pairs:
            for v in p:
                if v not in (0, 1, 2, GEQ3, "UNDECIDED"):
                    raise ValidationFailure(f"distance entries are 0, 1, 2 or GEQ3, got {v!r}")
    else:
        disk = make_disk(req.n, req.marks)
        rng = random.Random(req.seed)
        pairs = [
            decide_phi_pair(random_a2_arc(rng, disk, req.max_len), random_a2_arc(rng, disk, req.max_len), disk)
            for _ in range(req.count)
        ]
    rep = _report(qi_inequality_audit(pairs, req.mult, req.add))
    rep["pairs"] = [list(p) for p in pairs]
    return rep


@app.post("/metric/retract")
def metric_retract(req: S.RetractRequest) -> dict:
    g = _graph(req.graph)
    r = req.r if req.r is not None else {k: [k] for k in g.vertices}
    return _report(quasi_retract_check(g, req.Y, r))


@app.post("/metric/certify")
def metric_certify(req: S.CertifyRequest) -> dict:
    g = _graph(req.graph)
    if req.relation == "edge":
        V = g.has_edge
    else:
        dist = all_distances(g)
        V = lambda u, v: dist[u][v] <= 2  # noqa: E731
    return _report(bounded_orbit_certify(g, req.orbit, V, req.label_field))


@app.post("/metric/putman", response_model=S.PutmanResponse)
def metric_putman(req: S.PutmanRequest):
    g = _graph(req.graph)
    for v in [req.base, *req.generator_images, *req.witnesses]:
        if v not in g.vertices:
            raise UnknownVertex(v)
    return {"passed": putman_check(g, req.base, req.generator_images, req.witnesses)}


@app.post("/metric/translation")
def metric_translation(req: S.TranslationRequest) -> dict:
    M = req.matrix
    rep = translation_growth(lambda s: farey_apply(M, s), farey_apply(((1, 0), (0, 1)), req.base), req.K, farey_distance)
    return _report(rep)


# --- the suite ------------------------------------------------------------------------------------

@app.post("/paper-suite")
def paper_suite(req: S.SuiteRequest) -> dict:
    only = req.only
    if only is not None:
        bad = [k for k in only if k not in suite.EXPERIMENTS]
        if bad:
            raise ValidationFailure(f"unknown experiments {bad}")
    seed = suite.DEFAULT_SEED if req.seed is None else req.seed
    result = suite.run_suite(seed, only)
    result["table"] = suite.summary_table(result)
    return result

