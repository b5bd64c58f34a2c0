"""strucmaps: exact higher structure maps on length-four free resolutions.

The package constructs and verifies the two families of higher structure
maps carried by free resolutions of codimension-four Gorenstein ideals
with six generators (format (1,6,10,6,1)), together with the E6 minuscule
combinatorics that organizes them and the pfaffian-presentation extraction
built on top.
"""

from .ring import (
    ContextMismatch,
    ExactDivisionError,
    NotAPerfectSquare,
    Poly,
    Ring,
    RingError,
    gcd_list,
    poly_gcd,
)
from .linalg import Mat, NoSolution, mat_vec, solve_linear_graded, solve_rational
from .complexes import (
    FreeComplex,
    NonConstantEntries,
    NoRationalIsotropicVector,
    build_pfaffian_section,
    build_split,
    hyperbolic_normalize,
    pfaffian_ring,
    sub_pfaffian,
    verify_complex,
)
from .spinor import (
    SignInconsistency,
    SpinorCoordinates,
    SpinorElement,
    TensorElement,
    ZeroMap,
    be_multipliers,
    clifford_action,
    embed_so,
    embed_trivial,
    p_map,
    spinor_coordinates,
)
from .alpha1 import LiftFailure, StructureMapsAlpha1, build_alpha1, split_target_w62
from .alpha2 import (
    StructureMapsAlpha2,
    build_alpha2,
    compute_multiplication,
    derive_defect_relations,
    derive_multiplication_constraints,
    palmer_check,
)
from .liecomb import (
    DoubleCoset,
    DynkinGraph,
    MinusculeRep,
    NotFiniteType,
    NotMinuscule,
    Quadric,
    RootSystem,
    WeylElement,
    WeylGroup,
    big_cell_parametrization,
    bruhat_leq,
    build_minuscule_rep,
    check_plucker,
    double_cosets,
    grade_decomposition,
    min_coset_reps,
    plucker_ideal_basis,
    weyl_group,
    weyl_order,
)
from .assembler import (
    AssemblyError,
    ExtractionFailed,
    PfaffianPresentation,
    SquareMatrixM,
    W1Vector,
    assemble_M_split,
    assemble_w1,
    extract_pfaffian_presentation,
    skew_matrix_from_w11,
    slot_layout,
    submaximal_pfaffians,
    verify_presentation,
)

__version__ = "0.1.0"

__all__ = [
    "AssemblyError",
    "ContextMismatch",
    "DoubleCoset",
    "DynkinGraph",
    "ExactDivisionError",
    "ExtractionFailed",
    "FreeComplex",
    "LiftFailure",
    "Mat",
    "MinusculeRep",
    "NoRationalIsotropicVector",
    "NoSolution",
    "NonConstantEntries",
    "NotAPerfectSquare",
    "NotFiniteType",
    "NotMinuscule",
    "PfaffianPresentation",
    "Poly",
    "Quadric",
    "Ring",
    "RingError",
    "RootSystem",
    "SignInconsistency",
    "SpinorCoordinates",
    "SpinorElement",
    "SquareMatrixM",
    "StructureMapsAlpha1",
    "StructureMapsAlpha2",
    "TensorElement",
    "W1Vector",
    "WeylElement",
    "WeylGroup",
    "ZeroMap",
    "assemble_M_split",
    "assemble_w1",
    "be_multipliers",
    "big_cell_parametrization",
    "bruhat_leq",
    "build_alpha1",
    "build_alpha2",
    "build_minuscule_rep",
    "build_pfaffian_section",
    "build_split",
    "check_plucker",
    "clifford_action",
    "compute_multiplication",
    "derive_defect_relations",
    "derive_multiplication_constraints",
    "double_cosets",
    "embed_so",
    "embed_trivial",
    "extract_pfaffian_presentation",
    "gcd_list",
    "grade_decomposition",
    "hyperbolic_normalize",
    "mat_vec",
    "min_coset_reps",
    "p_map",
    "palmer_check",
    "pfaffian_ring",
    "plucker_ideal_basis",
    "poly_gcd",
    "skew_matrix_from_w11",
    "slot_layout",
    "solve_linear_graded",
    "solve_rational",
    "spinor_coordinates",
    "split_target_w62",
    "sub_pfaffian",
    "submaximal_pfaffians",
    "verify_complex",
    "verify_presentation",
    "weyl_group",
    "weyl_order",
]
