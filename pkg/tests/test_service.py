"""HTTP routes: request models, responses and error bodies."""

from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from curvegraphs.service.app import app

client = TestClient(app, raise_server_exceptions=False)


def post(route, body):
    r = client.post(route, json=body)
    return r.status_code, r.json()


def test_fii_route():
    assert post("/ends/fii", {"desc": "genus=inf; ends=fin(3); ag=all"}) == (200, {"fii": {"exact": 3}})
    assert post("/ends/fii", {"name": "spotted_loch_ness"}) == (200, {"fii": {"exact": 1}})


@pytest.mark.parametrize(
    "route, body, kind",
    [
        ("/ends/fii", {"desc": "genus=inf; ends=fin(3"}, "DescriptorSyntax"),
        ("/ends/fii", {"name": "nowhere"}, "UnknownName"),
        ("/ends/fii", {}, "ValidationFailure"),
        ("/ends/charsys", {"ends": "cantor"}, "NotCountable"),
        ("/engine/fingerprint", {"n": 5, "x": "s7 * arc(1,2)"}, "ExprSyntax"),
        ("/engine/fingerprint", {"n": 2, "x": "arc(1,2)"}, "RequestValidation"),
        ("/engine/fingerprint", {"n": 5, "x": "arc(1,2)", "extra": 1}, "RequestValidation"),
        ("/unicorn/path", {"n": 5, "a": "arc(1,2)", "b": "curve(1,2)", "alpha": 1, "beta": 1}, "ValidationFailure"),
        ("/unicorn/path", {"n": 5, "a": "arc(1,2)", "b": "arc(3,4)", "alpha": 3, "beta": 3}, "ValidationFailure"),
        ("/paper-suite", {"only": [0]}, "ValidationFailure"),
    ],
)
def test_validation_errors(route, body, kind):
    status, data = post(route, body)
    assert status == 422
    assert data["error"]["type"] == kind and data["error"]["message"]


def test_derive_and_charsys():
    assert post("/ends/derive", {"ends": "char(3,2)", "times": 2})[1]["derived"] == "char(1,2)"
    assert post("/ends/charsys", {"ends": "union(char(2,3), fin(4))"})[1] == {
        "ends": "union(fin(4), char(2,3))", "alpha": 2, "n": 3}


def test_classify():
    data = post("/ends/classify", {"desc": "genus=inf; ends=fin(1); ag=all"})[1]
    assert data["catalog"] == "loch_ness" and data["classification"] == "LochNess"


def test_engine_routes():
    status, data = post("/engine/intersect", {"n": 5, "a": "curve(1,2)", "b": "curve(2,3)"})
    assert status == 200 and data["intersection"] == 2
    rec = post("/engine/apply", {"n": 5, "word": "s2", "x": "arc(1,2)"})[1]
    assert rec["kind"] == "arc" and sorted(rec["endpoints"]) == [1, 3]
    fp = post("/engine/fingerprint", {"n": 5, "marks": [1, 2, 3], "x": "s2 * arc(1,2)"})[1]
    assert fp["key"] == rec["key"]


def test_unicorn_path_route():
    body = {"n": 4, "a": "arc(1,3)", "b": "s2 s2 * arc(2,4)", "alpha": 1, "beta": 2, "dot": True}
    status, data = post("/unicorn/path", body)
    assert status == 200
    assert data["intersection"] == 2 and data["edges"] == 3 and len(data["path"]) == 4
    assert data["dot"].startswith('graph "A" {')


def test_slim_route():
    body = {"n": 5, "a": "arc(1,3)", "b": "arc(2,4)", "d": "arc(3,5)"}
    assert post("/unicorn/slim", body)[1]["slim"] is True


def test_graph_routes():
    status, g = post("/graph/build", {"kind": "sep2", "n": 6, "L": 1, "seeds": ["curve(2,3)"]})
    assert status == 200 and g["schema"] == "graph-model"
    dot = post("/graph/export", {"graph": g, "format": "dot"})[1]["text"]
    assert dot.startswith('graph "G"')
    src = g["vertices"][0]["key"]
    table = post("/graph/distance", {"graph": g, "sources": [src]})[1]
    assert table["rows"][0][:2] == [src, g["vertices"][0]["key"]]
    assert table["csv"].startswith("source,target,distance\n")
    assert post("/graph/distance", {"graph": g, "sources": ["nope"]})[0] == 422
    assert post("/graph/export", {"graph": {"vertices": 3}})[0] == 422


def test_remark_and_farey_builds():
    g = post("/graph/build", {"kind": "remark", "m": 4, "w": 2})[1]
    assert len(g["vertices"]) == 8
    f = post("/graph/build", {"kind": "farey", "B": 2})[1]
    assert {v["key"] for v in f["vertices"]} >= {"inf", "0/1", "1/2"}


def test_metric_routes():
    g = post("/graph/build", {"kind": "remark", "m": 4, "w": 2})[1]
    assert post("/metric/delta", {"graph": g})[1]["delta4"] in ("0", "1/2", "1")
    keys = [v["key"] for v in g["vertices"]]
    assert post("/metric/retract", {"graph": g, "Y": keys})[1]["retract"] == [0, 1]
    cert = post("/metric/certify", {"graph": g, "orbit": "O1"})[1]
    assert cert["A"] == 1 and cert["diameter_bound"] == 2
    assert post("/metric/putman", {"graph": g, "base": "L0.0", "generator_images": ["L3.1"],
                                   "witnesses": ["L0.0"]})[1] == {"passed": True}
    tr = post("/metric/translation", {"K": 4})[1]
    assert tr["distances"] == [0, 1, 2, 3, 4]
    audit = post("/metric/qi-audit", {"pairs": [[1, 2], [1, 1], [2, "GEQ3"]]})[1]
    assert audit["checked"] == 3 and audit["violations"] == []
    assert post("/metric/qi-audit", {"pairs": [[7, 1]]})[0] == 422
    sampled = post("/metric/qi-audit", {"count": 10, "seed": 3})[1]
    assert len(sampled["pairs"]) == 10


def test_certify_reports_condition_two_failure():
    from curvegraphs.suite import condition2_violator

    g = condition2_violator().to_dict()
    status, data = post("/metric/certify", {"graph": g, "orbit": "O"})
    assert status == 422 and data["error"]["type"] == "Condition2Fail"


def test_paper_suite_route_subset():
    status, data = post("/paper-suite", {"only": [1, 8, 9]})
    assert status == 200 and data["passed"] == data["total"] == 3
    assert data["table"].splitlines()[0] == "id\tname\tresult\tseconds\tclaim"
