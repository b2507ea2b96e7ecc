"""Arcs and curves on punctured disks: cutting sequences, overlays, polylines."""

from .engine import (
    ArcClass,
    BadMarks,
    CurveClass,
    Inessential,
    NotEmbedded,
    PuncturedDisk,
    SameEndpoint,
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
from .polyline import from_polyline, to_polyline
