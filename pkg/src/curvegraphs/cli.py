"""Command-line client for the curvegraphs service.

Each subcommand turns its flags into a JSON request, sends it to the service
and prints the JSON response. By default the service runs in-process; pass
``--server URL`` to talk to a running instance instead.

Exit codes: 0 success, 2 validation error (error JSON on stderr), 64 usage
error, 70 internal error.

Environment:
    CURVEGRAPHS_CACHE_DIR  directory where responses are memoized by request
                           (every route is deterministic given its body).

Syntax reminders:
    classes     "s2 S1 * arc(1,3)", "curve(2,4)"; s<i> is sigma_i, S<i> its
                inverse, applied right to left to the seed after '*'
    descriptors "genus=inf; ends=union(cantor, fin(1)); ag=[all, none]"
                (full grammar in curvegraphs.ends.surfaces)
    blocks      "singletons" or "1,2;3,4;5,6;7,8"
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_USAGE = 64
EXIT_INTERNAL = 70
CLI_SCHEMA_VERSION = 1
CACHE_ENV = "CURVEGRAPHS_CACHE_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# --- flag helpers -----------------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def _blocks(text: str):
    if text == "singletons":
        return text
    try:
        return [[int(t) for t in part.split(",")] for part in text.split(";") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"blocks are 'singletons' or like '1,2;3,4', got {text!r}") from None


def _matrix(text: str) -> list[list[int]]:
    rows = [_int_list(r) for r in text.split(";")]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise argparse.ArgumentTypeError("matrix is 'a,b;c,d'")
    return rows


def _str_list(text: str) -> list[str]:
    return [t for t in text.replace(",", " ").split() if t]


def _disk_body(args) -> dict:
    return {"n": args.n, "marks": args.marks if args.marks is not None else "all"}


def _load_graph(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from None
    # files written with --json carry the envelope
    if isinstance(data, dict) and str(data.get("schema", "")).startswith("curvegraphs/") and "result" in data:
        data = data["result"]
    return data


def _descriptor_body(args) -> dict:
    if (args.desc is None) == (args.name is None):
        raise UsageError("give exactly one of --desc and --name")
    return {"desc": args.desc} if args.desc is not None else {"name": args.name}


# --- request builders ---------------------------------------------------------------------
# each returns (route, body)

def _ends_derive(a):
    return "/ends/derive", {"ends": a.ends, "times": a.times}


def _ends_charsys(a):
    return "/ends/charsys", {"ends": a.ends}


def _ends_fii(a):
    return "/ends/fii", _descriptor_body(a)


def _ends_classify(a):
    return "/ends/classify", _descriptor_body(a)


def _engine_intersect(a):
    return "/engine/intersect", {**_disk_body(a), "a": a.a, "b": a.b}


def _engine_fingerprint(a):
    return "/engine/fingerprint", {**_disk_body(a), "x": a.x}


def _engine_apply(a):
    return "/engine/apply", {**_disk_body(a), "word": a.word, "x": a.x}


def _unicorn_path(a):
    body = {**_disk_body(a), "a": a.a, "b": a.b, "alpha": a.alpha, "beta": a.beta, "dot": bool(a.dot)}
    return "/unicorn/path", body


def _unicorn_slim(a):
    return "/unicorn/slim", {**_disk_body(a), "a": a.a, "b": a.b, "d": a.d, "M": a.M}


def _graph_build(a):
    body = {"kind": a.kind, "n": a.n, "blocks": a.blocks, "seeds": a.from_ or [], "L": a.L,
            "m": a.m, "w": a.w, "B": a.B}
    if a.marks is not None:
        body["marks"] = a.marks
    return "/graph/build", body


def _graph_export(a):
    return "/graph/export", {"graph": _load_graph(a.input), "format": a.format}


def _graph_distance(a):
    return "/graph/distance", {"graph": _load_graph(a.input), "sources": a.sources}


def _metric_delta(a):
    body = {"graph": _load_graph(a.input), "sample_size": a.sample_size, "seed": a.seed, "triangles": a.triangles}
    return "/metric/delta", body


def _metric_qi(a):
    body = {"n": a.n, "marks": a.marks or [1, 2, 3, 4, 5], "count": a.count, "max_len": a.max_len,
            "seed": a.seed, "mult": a.mult, "add": a.add}
    return "/metric/qi-audit", body


def _metric_retract(a):
    g = _load_graph(a.input)
    Y = a.Y if a.Y is not None else [v["key"] for v in g.get("vertices", [])]
    body = {"graph": g, "Y": Y}
    if a.map:
        body["r"] = _load_graph(a.map)
    return "/metric/retract", body


def _metric_certify(a):
    return "/metric/certify", {"graph": _load_graph(a.input), "orbit": a.orbit, "relation": a.relation}


def _metric_putman(a):
    body = {"graph": _load_graph(a.input), "base": a.base, "generator_images": a.images, "witnesses": a.witnesses}
    return "/metric/putman", body


def _metric_translation(a):
    return "/metric/translation", {"matrix": a.matrix, "base": a.base, "K": a.K}


def _paper_suite(a):
    return "/paper-suite", {"seed": a.seed, "only": a.only}


# --- parser -----------------------------------------------------------------------------------

def _disk_flags(p, n: int = 5):
    p.add_argument("--n", type=int, default=n, help="number of punctures")
    p.add_argument("--marks", type=_int_list, default=None, help="marked punctures Q, e.g. '1,2,3' (default: all)")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="curvegraphs", description="Exact experiments on arc and curve graphs.")
    top.add_argument("--server", help="base URL of a running service (default: in-process)")
    top.add_argument("--json", action="store_true", help="wrap output in a versioned envelope")
    top.add_argument("--out", help="write the JSON output to this file instead of stdout")
    # the same flags after the subcommand; SUPPRESS keeps the top-level values otherwise
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the JSON output to this file instead of stdout")
    sub = top.add_subparsers(dest="group", parser_class=_Parser)
    sub.required = True

    def cmd(group_parsers, name, fn, help_):
        p = group_parsers.add_parser(name, help=help_, parents=[common])
        p.set_defaults(fn=fn, command=name)
        return p

    ends = sub.add_parser("ends", help="end spaces and the finite-invariance index").add_subparsers(
        dest="command", parser_class=_Parser)
    ends.required = True
    p = cmd(ends, "derive", _ends_derive, "Cantor-Bendixson derivative of an end term")
    p.add_argument("--ends", required=True)
    p.add_argument("--times", type=int, default=1)
    p = cmd(ends, "charsys", _ends_charsys, "characteristic system of a countable end term")
    p.add_argument("--ends", required=True)
    for name, fn in (("fii", _ends_fii), ("classify", _ends_classify)):
        p = cmd(ends, name, fn, f"{name} of a surface descriptor")
        p.add_argument("--desc")
        p.add_argument("--name", help="catalog name, e.g. tripod")

    eng = sub.add_parser("engine", help="classes, fingerprints, intersection numbers").add_subparsers(
        dest="command", parser_class=_Parser)
    eng.required = True
    p = cmd(eng, "intersect", _engine_intersect, "geometric intersection number")
    _disk_flags(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p = cmd(eng, "fingerprint", _engine_fingerprint, "canonical record of a class")
    _disk_flags(p)
    p.add_argument("--x", required=True)
    p = cmd(eng, "apply", _engine_apply, "apply a generator word to a class")
    _disk_flags(p)
    p.add_argument("--word", required=True)
    p.add_argument("--x", required=True)

    uni = sub.add_parser("unicorn", help="unicorn paths").add_subparsers(dest="command", parser_class=_Parser)
    uni.required = True
    p = cmd(uni, "path", _unicorn_path, "unicorn path from a to b")
    _disk_flags(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--dot", help="write the DOT rendering of A(a,b) here")
    p = cmd(uni, "slim", _unicorn_slim, "slim-triangle check for three arcs")
    _disk_flags(p)
    for f in ("--a", "--b", "--d"):
        p.add_argument(f, required=True)
    p.add_argument("--M", type=int, default=2)

    gr = sub.add_parser("graph", help="finite graph models").add_subparsers(dest="command", parser_class=_Parser)
    gr.required = True
    p = cmd(gr, "build", _graph_build, "build a word ball or a model graph")
    p.add_argument("--kind", required=True, type=str.lower, choices=["a2", "sep2", "remark", "farey"])
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--blocks", type=_blocks, default="singletons")
    p.add_argument("--marks", type=_int_list, default=None)
    p.add_argument("--from", dest="from_", action="append", help="seed class expression (repeatable)")
    p.add_argument("--L", type=int, default=3)
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--w", type=int, default=3)
    p.add_argument("--B", type=int, default=5)
    p.add_argument("--dot", action="store_true", help="also write a .dot file next to --out")
    p = cmd(gr, "export", _graph_export, "re-serialize a graph as JSON or DOT")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=["json", "dot"], default="dot")
    p = cmd(gr, "distance", _graph_distance, "distance table")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--sources", type=_str_list, default=None)
    p.add_argument("--csv", help="write the table as CSV here")

    met = sub.add_parser("metric", help="hyperbolicity and coarse-geometry checks").add_subparsers(
        dest="command", parser_class=_Parser)
    met.required = True
    p = cmd(met, "delta", _metric_delta, "four-point hyperbolicity constant")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--sample-size", type=int, default=20000)
    p.add_argument("--triangles", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p = cmd(met, "qi-audit", _metric_qi, "audit d_A - 2 <= d(phi a, phi b) <= 2 d_A on random pairs")
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--marks", type=_int_list, default=None)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--mult", type=int, default=2)
    p.add_argument("--add", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p = cmd(met, "retract", _metric_retract, "quasi-retract constants")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--Y", type=_str_list, default=None, help="target vertices (default: all)")
    p.add_argument("--map", help="JSON file mapping each vertex to its image set (default: identity)")
    p = cmd(met, "certify", _metric_certify, "bounded-orbit certificate")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--orbit", required=True)
    p.add_argument("--relation", choices=["edge", "within2"], default="edge")
    p = cmd(met, "putman", _metric_putman, "connectivity-criterion hypotheses")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--images", type=_str_list, required=True)
    p.add_argument("--witnesses", type=_str_list, required=True)
    p = cmd(met, "translation", _metric_translation, "Farey translation growth of a matrix")
    p.add_argument("--matrix", type=_matrix, default=[[2, 1], [1, 1]])
    p.add_argument("--base", type=_int_list, default=[1, 0])
    p.add_argument("--K", type=int, default=10)

    p = sub.add_parser("paper-suite", help="run every acceptance experiment", parents=[common])
    p.set_defaults(fn=_paper_suite, command="paper-suite")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--only", type=_int_list, default=None)
    p.add_argument("--table", help="write the pass/fail summary table (TSV) here")
    return top


# --- transport ------------------------------------------------------------------------------

class _InProcess:
    def __init__(self):
        import warnings

        with warnings.catch_warnings():
            warnings.filterwarnings("ignore", message="Using `httpx`")
            from fastapi.testclient import TestClient

        from .service.app import app

        self.client = TestClient(app, raise_server_exceptions=False)

    def post(self, route: str, body: dict) -> tuple[int, Any]:
        r = self.client.post(route, json=body)
        return r.status_code, r.json()


class _Remote:
    def __init__(self, base: str):
        import httpx

        self.client = httpx.Client(base_url=base.rstrip("/"), timeout=600)

    def post(self, route: str, body: dict) -> tuple[int, Any]:
        r = self.client.post(route, json=body)
        try:
            return r.status_code, r.json()
        except ValueError:
            return r.status_code, {"error": {"type": "BadResponse", "message": r.text[:200]}}


def _cached_post(transport, route: str, body: dict) -> tuple[int, Any]:
    cache = os.environ.get(CACHE_ENV)
    if not cache:
        return transport.post(route, body)
    key = hashlib.sha256(json.dumps([route, body], sort_keys=True).encode()).hexdigest()
    path = Path(cache) / f"{key}.json"
    if path.exists():
        return 200, json.loads(path.read_text())
    status, data = transport.post(route, body)
    if status == 200:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(data, sort_keys=True))
    return status, data


def _dumps(x: Any) -> str:
    return json.dumps(x, sort_keys=True, separators=(",", ":"))


def _write(path: str, text: str) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text)


def _side_outputs(args, result: dict) -> None:
    """Files written besides stdout, per subcommand."""
    if args.command == "build" and getattr(args, "dot", False):
        if not args.out:
            raise UsageError("--dot needs --out")
        from .graphs.model import GraphModel

        _write(str(Path(args.out).with_suffix(".dot")), GraphModel.from_dict(result).to_dot())
    if args.command == "path" and args.dot:
        _write(args.dot, result.get("dot") or "")
    if args.command == "distance" and args.csv:
        _write(args.csv, result["csv"])
    if args.command == "paper-suite" and args.table:
        _write(args.table, result["table"])


def run(argv: Sequence[str] | None = None) -> int:
    """Run one command; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        route, body = args.fn(args)
        transport = _Remote(args.server) if args.server else _InProcess()
        status, data = _cached_post(transport, route, body)
    except UsageError as exc:
        sys.stderr.write(f"curvegraphs: error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:  # transport failures
        sys.stderr.write(_dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}) + "\n")
        return EXIT_INTERNAL
    if status != 200:
        sys.stderr.write(_dumps(data) + "\n")
        return EXIT_VALIDATION if status in (400, 404, 422) else EXIT_INTERNAL
    if args.json:
        name = f"{args.group} {args.command}" if args.group != "paper-suite" else "paper-suite"
        data = {"schema": f"curvegraphs/{name.replace(' ', '-')}", "version": CLI_SCHEMA_VERSION, "result": data}
    text = _dumps(data)
    try:
        payload = data["result"] if args.json else data
        if args.out:
            _write(args.out, text + "\n")
        _side_outputs(args, payload)
    except UsageError as exc:
        sys.stderr.write(f"curvegraphs: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(_dumps({"error": {"type": "OSError", "message": str(exc)}}) + "\n")
        return EXIT_INTERNAL
    if not args.out:
        sys.stdout.write(text + "\n")
    return EXIT_OK


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
