"""Finite graph models with stable serialization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Hashable

SCHEMA_VERSION = 1


class UnknownVertex(KeyError):
    pass


@dataclass
class GraphModel:
    """Vertex table, undirected edge set and the recipe that produced them."""

    vertices: dict[str, dict[str, Any]] = field(default_factory=dict)
    edges: set[tuple[str, str]] = field(default_factory=set)
    meta: dict[str, Any] = field(default_factory=dict)

    def add_vertex(self, key: str, **payload: Any) -> bool:
        if key in self.vertices:
            return False
        self.vertices[key] = payload
        return True

    def add_edge(self, u: str, v: str) -> None:
        if u == v:
            return
        for w in (u, v):
            if w not in self.vertices:
                raise UnknownVertex(w)
        self.edges.add((u, v) if u < v else (v, u))

    def adjacency(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {k: [] for k in self.vertices}
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def has_edge(self, u: str, v: str) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def __len__(self) -> int:
        return len(self.vertices)

    # --- serialization -------------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": "graph-model",
            "version": SCHEMA_VERSION,
            "meta": self.meta,
            "vertices": [{"key": k, **self.vertices[k]} for k in sorted(self.vertices)],
            "edges": [list(e) for e in sorted(self.edges)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1, default=_jsonable)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> GraphModel:
        g = cls(meta=dict(data.get("meta", {})))
        for rec in data["vertices"]:
            rec = dict(rec)
            g.vertices[rec.pop("key")] = rec
        for u, v in data["edges"]:
            g.add_edge(u, v)
        return g

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {_dot_id(name)} {{"]
        for k in sorted(self.vertices):
            label = self.vertices[k].get("label", k)
            lines.append(f"  {_dot_id(k)} [label={_dot_id(str(label))}];")
        for u, v in sorted(self.edges):
            lines.append(f"  {_dot_id(u)} -- {_dot_id(v)};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def distance_table_csv(rows: list[tuple[Hashable, Hashable, Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["source", "target", "distance"])
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _jsonable(x: Any) -> Any:
    if isinstance(x, (set, frozenset, tuple)):
        return sorted(x) if isinstance(x, (set, frozenset)) else list(x)
    if hasattr(x, "numerator"):
        return str(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")
