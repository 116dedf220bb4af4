"""Exact interval-set algebra for midpoint sets of the middle-thirds Cantor set."""

from .cantor import (
    DEFAULT_STAGE_CAP,
    CantorStage,
    PartitionCell,
    ResourceCapError,
    TernaryDigits,
    in_limit_set,
    partition,
    stage,
    stage_interval_of,
)
from .cover import CoverError, CoverReport, SphereAssignment, assign_sphere, cover_report
from .intervals import (
    Interval,
    IntervalSet,
    Rational,
    affine,
    contains_point,
    intersect,
    is_subset,
    measure,
    normalize,
    union,
)
from .midpoint import (
    DEFAULT_PAIR_CAP,
    MidpointCertificate,
    build_certificates,
    check_partition_lemma,
    check_scaling_lemma,
    midpoint_set,
    midpoint_set_bruteforce,
    stage_midpoint_set,
    verify_midpoint_claims,
)
from .witness import WitnessChain, find_witness, refine_witness, witness_midpoint_residual

__version__ = "0.1.0"
