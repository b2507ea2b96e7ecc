"""Request and response models for the HTTP service.

Class expressions use the text syntax of :mod:`curvegraphs.expr`; end terms
and surface descriptors use the grammar of :mod:`curvegraphs.ends.surfaces`.
"""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

API_VERSION = 1

Marks = Union[Literal["all"], list[int], list[list[int]]]


class _Req(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ErrorBody(BaseModel):
    type: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorBody


# --- ends -------------------------------------------------------------------------

class EndTermRequest(_Req):
    ends: str = Field(..., description="end term, e.g. union(cantor, char(2,3))")
    times: int = Field(1, ge=0, le=64)


class DeriveResponse(BaseModel):
    ends: str
    derived: str
    times: int


class CharsysResponse(BaseModel):
    ends: str
    alpha: int
    n: int


class DescriptorRequest(_Req):
    desc: Optional[str] = None
    name: Optional[str] = None


class FiiResponse(BaseModel):
    fii: dict[str, Any]


class ClassifyResponse(BaseModel):
    surface: str
    catalog: Optional[str]
    classification: str


# --- engine -------------------------------------------------------------------------

class DiskSpec(_Req):
    n: int = Field(..., ge=3, le=64)
    marks: Marks = "all"


class ClassRecord(BaseModel):
    kind: str
    n: int
    key: str
    endpoints: Optional[list[int]] = None
    fingerprint: list[Any]
    canonical: dict[str, Any]
    word: Optional[str] = None


class IntersectRequest(DiskSpec):
    a: str
    b: str


class IntersectResponse(BaseModel):
    a: ClassRecord
    b: ClassRecord
    intersection: int


class ClassRequest(DiskSpec):
    x: str


class ApplyRequest(DiskSpec):
    word: str
    x: str


# --- unicorn --------------------------------------------------------------------------

class UnicornPathRequest(DiskSpec):
    a: str
    b: str
    alpha: int
    beta: int
    dot: bool = False


class UnicornPathResponse(BaseModel):
    intersection: int
    path: list[ClassRecord]
    edges: int
    dot: Optional[str] = None


class SlimRequest(DiskSpec):
    a: str
    b: str
    d: str
    M: int = Field(2, ge=0, le=2)


class SlimResponse(BaseModel):
    slim: bool
    M: int
    family_sizes: dict[str, int]


# --- graphs ------------------------------------------------------------------------

class GraphBuildRequest(_Req):
    kind: Literal["A2", "Sep2", "a2", "sep2", "remark", "farey"]
    n: int = Field(8, ge=1, le=64)
    blocks: Union[Literal["singletons"], list[list[int]]] = "singletons"
    marks: Optional[list[int]] = None
    seeds: list[str] = Field(default_factory=list)
    L: int = Field(3, ge=0, le=8)
    m: int = Field(5, ge=1, le=200)
    w: int = Field(3, ge=1, le=200)
    B: int = Field(5, ge=1, le=60)


class GraphPayload(_Req):
    graph: dict[str, Any]


class GraphExportRequest(GraphPayload):
    format: Literal["json", "dot"] = "json"


class GraphExportResponse(BaseModel):
    format: str
    text: str


class GraphDistanceRequest(GraphPayload):
    sources: Optional[list[str]] = None


class GraphDistanceResponse(BaseModel):
    rows: list[tuple[str, str, Optional[int]]]
    csv: str


# --- metric -----------------------------------------------------------------------------

class DeltaRequest(GraphPayload):
    sample_size: int = Field(20000, ge=1)
    seed: int = 0
    triangles: int = Field(0, ge=0)


class QIAuditRequest(_Req):
    pairs: Optional[list[tuple[Union[int, str], Union[int, str]]]] = None
    n: int = Field(7, ge=4, le=16)
    marks: list[int] = Field(default_factory=lambda: [1, 2, 3, 4, 5])
    count: int = Field(200, ge=1, le=5000)
    max_len: int = Field(4, ge=0, le=12)
    seed: int = 0
    mult: int = 2
    add: int = 2


class RetractRequest(GraphPayload):
    Y: list[str]
    r: Optional[dict[str, list[str]]] = None


class CertifyRequest(GraphPayload):
    orbit: str
    relation: Literal["edge", "within2"] = "edge"
    label_field: str = "orbit"


class PutmanRequest(GraphPayload):
    base: str
    generator_images: list[str]
    witnesses: list[str]


class PutmanResponse(BaseModel):
    passed: bool


class TranslationRequest(_Req):
    matrix: list[list[int]] = Field(default_factory=lambda: [[2, 1], [1, 1]])
    base: tuple[int, int] = (1, 0)
    K: int = Field(10, ge=0, le=200)


class SuiteRequest(_Req):
    seed: Optional[int] = None
    only: Optional[list[int]] = None
