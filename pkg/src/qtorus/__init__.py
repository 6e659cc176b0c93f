"""Exact invariants of torus-valued section spaces over closed oriented surfaces.

Everything is integer or Q/Z arithmetic; no floats anywhere. The package
splits into a local layer (quadratic forms on a lattice, braided refinements),
a topological layer (twisted surface cohomology two independent ways), and a
global layer (section-space homotopy groups, the commutator pairing of the
induced gerbe, and block dimension counts), plus a batch CLI.
"""

from .braided import (
    BraidedData,
    GradedObject,
    balancing_check,
    braiding_phase,
    double_braiding,
    double_braiding_matrix,
    fuse,
    hexagon_check,
    perturb_refinement,
    standard_refinement,
    twist,
)
from .cochain import (
    TriangulatedSurface,
    TwistedCochain,
    class_of,
    coboundary,
    cocycle_check,
    cup_evaluate,
    holonomies,
    triangulate,
)
from .errors import InvariantViolation, QtorusError
from .forms import (
    BilinearData,
    Frac1,
    LevelClassReport,
    QuadraticForm,
    SymmetricForm,
    evaluate,
    invariance_check,
    is_e_infinity_liftable,
    is_linear,
    level_classify,
    polarize,
    quad_from_bilinear,
)
from .gerbe import (
    BlockReport,
    BuntReport,
    GerbeBlock,
    LevelInput,
    SectionSpaceInvariants,
    block_report,
    bunt_report,
    commutator_pairing,
    enumerate_components,
    pairing_on_cocycles,
    pi2_character,
    section_space,
)
from .lattice import (
    FgAbGroup,
    IntMatrix,
    SnfResult,
    cokernel,
    det,
    inverse_unimodular,
    is_unimodular,
    kernel_basis,
    rank,
    smith_normal_form,
    solve_exact,
    subquotient,
)
from .schemas import ERROR_SCHEMA, REPORT_SCHEMAS
from .selfcheck import SelfCheckResult, run_selfcheck
from .surface import (
    CochainComplexSurface,
    CohomologyTriple,
    LatticeLocalSystem,
    SurfaceGroup,
    build_complex,
    cohomology_presentations,
    fox_derivative,
    invariants_coinvariants_check,
    twisted_cohomology,
)

__version__ = "0.1.0"

__all__ = [
    "BilinearData",
    "BlockReport",
    "BraidedData",
    "BuntReport",
    "CochainComplexSurface",
    "CohomologyTriple",
    "ERROR_SCHEMA",
    "FgAbGroup",
    "Frac1",
    "GerbeBlock",
    "GradedObject",
    "IntMatrix",
    "InvariantViolation",
    "LatticeLocalSystem",
    "LevelClassReport",
    "LevelInput",
    "QtorusError",
    "QuadraticForm",
    "REPORT_SCHEMAS",
    "SectionSpaceInvariants",
    "SelfCheckResult",
    "SnfResult",
    "SurfaceGroup",
    "SymmetricForm",
    "TriangulatedSurface",
    "TwistedCochain",
    "balancing_check",
    "block_report",
    "braiding_phase",
    "build_complex",
    "bunt_report",
    "class_of",
    "coboundary",
    "cocycle_check",
    "cohomology_presentations",
    "cokernel",
    "commutator_pairing",
    "cup_evaluate",
    "det",
    "double_braiding",
    "double_braiding_matrix",
    "enumerate_components",
    "evaluate",
    "fox_derivative",
    "fuse",
    "hexagon_check",
    "holonomies",
    "invariance_check",
    "invariants_coinvariants_check",
    "inverse_unimodular",
    "is_e_infinity_liftable",
    "is_linear",
    "is_unimodular",
    "kernel_basis",
    "level_classify",
    "pairing_on_cocycles",
    "perturb_refinement",
    "pi2_character",
    "polarize",
    "quad_from_bilinear",
    "rank",
    "run_selfcheck",
    "section_space",
    "smith_normal_form",
    "solve_exact",
    "standard_refinement",
    "subquotient",
    "triangulate",
    "twist",
    "twisted_cohomology",
]
