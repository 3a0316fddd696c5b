"""Exact-arithmetic Second Law toolkit for finite thermodynamical theories.

Decide whether a finitely generated theory satisfies the Kelvin-Planck
Second Law and, equivalently, synthesize or refute a per-state entropy
and positive temperature satisfying the Clausius-Duhem inequality, with
substitution-checkable certificates on both branches.
"""

from .measures import (
    Condition,
    SignedMeasure,
    SpaceMismatch,
    StateSpace,
    UnknownState,
    combine,
    dirac,
    l1_norm,
    negative_part,
    positive_part,
    total,
    zero,
)
from .theory import MassNotConserved, Process, TheorySpec, example_a, example_b, zero_process
from .exactlp import (
    Constraint,
    Infeasible,
    LinearProgram,
    LPOutcome,
    Optimal,
    Unbounded,
    linear_program,
    solve,
    verify_outcome,
)
from .separation import (
    ClausiusDuhemPair,
    Compliant,
    DirectionReport,
    KPVerdict,
    MarginReport,
    NotKelvinPlanck,
    Violated,
    ViolationCertificate,
    analyze_directions,
    check_kelvin_planck,
    find_violation,
    max_uniform_coldness,
    synthesize_cd_pair,
    verify_cd_pair,
    verify_violation,
)
from .histories import (
    DurationMismatch,
    OffGridTime,
    ProcessHistory,
    conic_combination,
    endpoint_process,
    parallel_compose,
    rational_sum,
    restrict,
    subdivide,
    zero_history,
)
from .ingest import BodyProcessRecord, derive_history, derive_process, merge_records

__version__ = "0.1.0"

__all__ = [
    "BodyProcessRecord",
    "ClausiusDuhemPair",
    "Compliant",
    "Condition",
    "Constraint",
    "DirectionReport",
    "DurationMismatch",
    "Infeasible",
    "KPVerdict",
    "LPOutcome",
    "LinearProgram",
    "MarginReport",
    "MassNotConserved",
    "NotKelvinPlanck",
    "OffGridTime",
    "Optimal",
    "Process",
    "ProcessHistory",
    "SignedMeasure",
    "SpaceMismatch",
    "StateSpace",
    "TheorySpec",
    "Unbounded",
    "UnknownState",
    "Violated",
    "ViolationCertificate",
    "analyze_directions",
    "check_kelvin_planck",
    "combine",
    "conic_combination",
    "derive_history",
    "derive_process",
    "dirac",
    "endpoint_process",
    "example_a",
    "example_b",
    "find_violation",
    "l1_norm",
    "linear_program",
    "max_uniform_coldness",
    "merge_records",
    "negative_part",
    "parallel_compose",
    "positive_part",
    "rational_sum",
    "restrict",
    "solve",
    "subdivide",
    "synthesize_cd_pair",
    "total",
    "verify_cd_pair",
    "verify_outcome",
    "verify_violation",
    "zero",
    "zero_history",
    "zero_process",
]
