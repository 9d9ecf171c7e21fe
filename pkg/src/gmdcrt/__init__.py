"""Chinese remainder theorem with integer matrix moduli.

Single-vector solving, reconstruction of several vectors from unordered
residue sets, a two-vector solver driven by a difference condition, and
a multi-tone undersampling simulator.
"""

from .errors import (
    ConditionNotMet,
    DetectionMismatch,
    DimensionMismatch,
    InconsistentSystem,
    InvalidOverride,
    MdcrtError,
    NoCommonDifference,
    NoPeaks,
    NoSolution,
    ReconstructionFailed,
    ResidueOutOfRange,
    SingularMatrix,
)
from .exactint import adjugate, det, hnf, integer_kernel, snf, solve_integer
from .freqsim import SignalSpec, detect_residues, end_to_end, mddft, sample, sampling_rate, tones_of
from .lattice import (
    Lattice,
    contains,
    fpd,
    in_fpd,
    in_half_lattice,
    in_shifted_lattice_sum,
    intersect,
    is_right_multiple,
    lattice_equal,
    lattice_of,
    lcrm,
    remainder,
    vector_remainder,
)
from .mdcrt import Congruence, CrtSolution, solve, solve_residues
from .multivec import (
    ModuliSet,
    ReconstructionOutcome,
    ResidueSetSystem,
    compute_range,
    crt_invocation_bound,
    make_system,
    reconstruct,
    residue_system,
    uniquely_determinable,
)
from .pairvec import (
    OneDimProblem,
    PairSystem,
    asymmetric_difference,
    check_condition,
    common_difference_set,
    distinct_in_all_sets,
    onedim_condition_set,
    onedim_prior_sets,
    pair_system,
    reconstruct_pair,
)

__all__ = [
    "adjugate",
    "asymmetric_difference",
    "check_condition",
    "common_difference_set",
    "compute_range",
    "ConditionNotMet",
    "Congruence",
    "contains",
    "crt_invocation_bound",
    "CrtSolution",
    "det",
    "detect_residues",
    "DetectionMismatch",
    "DimensionMismatch",
    "distinct_in_all_sets",
    "end_to_end",
    "fpd",
    "hnf",
    "in_fpd",
    "in_half_lattice",
    "in_shifted_lattice_sum",
    "InconsistentSystem",
    "integer_kernel",
    "intersect",
    "InvalidOverride",
    "is_right_multiple",
    "Lattice",
    "lattice_equal",
    "lattice_of",
    "lcrm",
    "make_system",
    "MdcrtError",
    "mddft",
    "ModuliSet",
    "NoCommonDifference",
    "NoPeaks",
    "NoSolution",
    "onedim_condition_set",
    "onedim_prior_sets",
    "OneDimProblem",
    "pair_system",
    "PairSystem",
    "reconstruct",
    "reconstruct_pair",
    "ReconstructionFailed",
    "ReconstructionOutcome",
    "remainder",
    "residue_system",
    "ResidueOutOfRange",
    "ResidueSetSystem",
    "sample",
    "sampling_rate",
    "SignalSpec",
    "SingularMatrix",
    "snf",
    "solve",
    "solve_integer",
    "solve_residues",
    "tones_of",
    "uniquely_determinable",
    "vector_remainder",
]

__version__ = "0.1.0"
