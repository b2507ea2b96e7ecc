"""Finite models of the arc, separating-curve, Farey and layered graphs."""

from .builders import (
    GEQ3,
    UNDECIDED,
    EmptySeed,
    SmallDistanceOracle,
    FingerprintCollision,
    KindMismatch,
    MembershipFail,
    adjacent,
    build_word_ball,
    class_from_dict,
    class_key,
    class_to_dict,
    decide_phi_pair,
    distance_leq2,
    is_a2_vertex,
    is_member,
    model_classes,
    remark_graph,
    within2,
)
from .farey import (
    NonUnimodular,
    Slope,
    bounded_farey_distances,
    bounded_slopes,
    farey_graph,
    farey_adjacent,
    farey_apply,
    farey_distance,
)
from .model import GraphModel, UnknownVertex, distance_table_csv
