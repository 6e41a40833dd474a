"""Exact-arithmetic certification that explicit real curve families have
field of moduli Q while Q is not a field of definition.

Public surface: the number tower (`numbers`), negative-Pell units (`pell`),
exact polynomial/form algebra (`polyforms`, `projline`), the two curve
families (`hyperelliptic`, `plane`), the element text grammar (`grammar`),
and the certificate pipelines (`certify`).
"""

from .certify import (
    SCHEMA_VERSION,
    VERDICT_INCONCLUSIVE,
    VERDICT_NO_OBSTRUCTION,
    VERDICT_OBSTRUCTED,
    DescentProblem,
    certificate_to_json,
    cocycle_scan,
    hypotheses_check,
    run_control_pipeline,
    run_hyper_pipeline,
    run_pipeline,
    run_plane_pipeline,
    verify_certificate,
)
from .grammar import (
    ElementSyntaxError,
    format_element,
    format_quad,
    format_rat,
    parse_element,
    parse_quad,
)
from .numbers import (
    FieldDesc,
    FieldMismatchError,
    GaloisAut,
    QuadElt,
    TowerElt,
    ZeroInversionError,
    cyclotomic,
    euler_phi,
    field_tower,
)
from .pell import (
    EtaSelection,
    InvalidParameterError,
    PellSolution,
    PellUnsolvableError,
    norm_minus_one_units,
    select_etas,
    solve_negative_pell,
)

__version__ = "1.0.0"

__all__ = [
    "SCHEMA_VERSION",
    "VERDICT_INCONCLUSIVE",
    "VERDICT_NO_OBSTRUCTION",
    "VERDICT_OBSTRUCTED",
    "DescentProblem",
    "ElementSyntaxError",
    "EtaSelection",
    "FieldDesc",
    "FieldMismatchError",
    "GaloisAut",
    "InvalidParameterError",
    "PellSolution",
    "PellUnsolvableError",
    "QuadElt",
    "TowerElt",
    "ZeroInversionError",
    "certificate_to_json",
    "cocycle_scan",
    "cyclotomic",
    "euler_phi",
    "field_tower",
    "format_element",
    "format_quad",
    "format_rat",
    "hypotheses_check",
    "norm_minus_one_units",
    "parse_element",
    "parse_quad",
    "run_control_pipeline",
    "run_hyper_pipeline",
    "run_pipeline",
    "run_plane_pipeline",
    "select_etas",
    "solve_negative_pell",
    "verify_certificate",
    "__version__",
]
