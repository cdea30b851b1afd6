# src/anumrad/__init__.py

"""Numerical gauges and executable inequality checks for Hilbert-space
operators measured by a positive semidefinite metric A.

Core objects: metric frames (``new_frame``), the A-adjoint calculus
(``sharp``, ``reduced``), rotation-sweep gauges (``a_numerical_radius``,
``a_crawford``, ``a_seminorm``, ...), 2x2 block constructions, a registry of
tolerance-aware inequality checks, and a seeded fuzzing harness with a CLI.
"""

from .adjoint import (
    ReducedOp,
    admits_a_adjoint,
    im_a,
    is_a_positive,
    is_a_selfadjoint,
    is_a_unitary,
    re_a,
    reduced,
    sharp,
)
from .blocks import BlockOp, assemble, b_sharp_blockwise_check, block_gauge
from .catalog import (
    CheckDef,
    CheckResult,
    REGISTRY,
    registry_ids,
    resolve_ids,
    run_all,
    run_check,
)
from .errors import (
    AnumradError,
    BadRank,
    DimensionMismatch,
    EmptyRange,
    NoAdjoint,
    NoConvergence,
    NotAPositive,
    NotHermitian,
    NotPSD,
    ReproMismatch,
    RequiresStrictPositivity,
    UnknownCheckId,
    UnsupportedExponent,
)
from .frame import AFrame, a_inner, a_norm_vec, direct_sum, in_null_space, new_frame
from .gauges import (
    DEFAULT_SWEEP,
    GaugeSweep,
    SweepConfig,
    a_crawford,
    a_crawford_C,
    a_min_modulus,
    a_numerical_radius,
    a_positive_power,
    a_seminorm,
    crawford,
    crawford_C,
    numerical_radius,
    oracle_gauge,
    sweep_gauges,
)
from .harness import (
    FuzzConfig,
    Instance,
    Report,
    TOOL_VERSION,
    fuzz,
    gen_compatible,
    gen_psd,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    make_instance,
    report_to_csv,
    report_to_json,
    repro_paper,
    save_instance,
    scan_sharpness,
    validate_instance,
)
from .matrixcore import (
    EigDecomp,
    as_cmatrix,
    as_cvector,
    herm_eig,
    pinv,
    psd_sqrt,
    range_basis,
    svd,
)
from .seeding import splitmix64

__version__ = TOOL_VERSION

__all__ = [
    "AFrame",
    "AnumradError",
    "BadRank",
    "BlockOp",
    "CheckDef",
    "CheckResult",
    "DEFAULT_SWEEP",
    "DimensionMismatch",
    "EigDecomp",
    "EmptyRange",
    "FuzzConfig",
    "GaugeSweep",
    "Instance",
    "NoAdjoint",
    "NoConvergence",
    "NotAPositive",
    "NotHermitian",
    "NotPSD",
    "REGISTRY",
    "ReducedOp",
    "Report",
    "ReproMismatch",
    "RequiresStrictPositivity",
    "SweepConfig",
    "TOOL_VERSION",
    "UnknownCheckId",
    "UnsupportedExponent",
    "a_crawford",
    "a_crawford_C",
    "a_inner",
    "a_min_modulus",
    "a_norm_vec",
    "a_numerical_radius",
    "a_positive_power",
    "a_seminorm",
    "admits_a_adjoint",
    "as_cmatrix",
    "as_cvector",
    "assemble",
    "b_sharp_blockwise_check",
    "block_gauge",
    "crawford",
    "crawford_C",
    "direct_sum",
    "fuzz",
    "gen_compatible",
    "gen_psd",
    "herm_eig",
    "im_a",
    "in_null_space",
    "instance_from_dict",
    "instance_to_dict",
    "is_a_positive",
    "is_a_selfadjoint",
    "is_a_unitary",
    "load_instance",
    "make_instance",
    "new_frame",
    "numerical_radius",
    "oracle_gauge",
    "pinv",
    "psd_sqrt",
    "range_basis",
    "re_a",
    "reduced",
    "registry_ids",
    "report_to_csv",
    "report_to_json",
    "repro_paper",
    "resolve_ids",
    "run_all",
    "run_check",
    "save_instance",
    "scan_sharpness",
    "sharp",
    "splitmix64",
    "svd",
    "sweep_gauges",
    "validate_instance",
]
