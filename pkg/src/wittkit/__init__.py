"""Exact computations in Witt algebras over the symbolic mu field.

Elements are finite sums of t^alpha d over ambient rank m, with scalars
in Q(mu1..mun) extended by auxiliary unknowns when a verifier needs
symbolic free coefficients.  Everything is exact: no floats, no
tolerances.  The centralizer and rigidity modules turn the structure
statements about power-sum probes and 2-local derivations into finite
rank computations on degree-truncated windows.
"""

from .errors import (
    ArityMismatch,
    BadArity,
    BadK,
    DenominatorVanishes,
    DivisionByZero,
    ExactDivisionError,
    LengthMismatch,
    MissingProbe,
    PairOutsideBox,
    ParseError,
    WittkitError,
)
from .scalars import (
    MuPolynomial,
    NumberField,
    NumberFieldElement,
    Scalar,
    ScalarField,
    format_polynomial,
    format_scalar,
    poly_gcd,
)
from .witt import (
    MU_DIRECTION,
    AlgebraVariant,
    CartanElement,
    VariantKind,
    WittAlgebra,
    WittElement,
    ad_apply,
    bracket,
    bracket_monomial_rule,
    check_antisymmetry,
    check_bilinearity,
    check_cartan_commutes,
    check_closure,
    check_jacobi,
    check_monomial_rule_agreement,
    format_element,
    proportional,
    widen_element,
)
from .linalg import (
    ScalarMatrix,
    SolveResult,
    kernel,
    rank,
    modular_rank,
    solve,
    specialization_points,
    specialize,
)
from .centralizer import (
    CentralizerResult,
    TruncatedSpace,
    VerificationReport,
    ad_matrix,
    centralizer_basis,
    lemma_4_1_families,
    predicted_centralizer_4_1,
    span_rank,
    verify_lemma_2_2,
    verify_lemma_4_1,
)
from .rigidity import (
    BoxLinearMap,
    InnerSolveResult,
    LeibnizReport,
    ObstructionData,
    PointwiseMap,
    ResidualRecord,
    RigidityReport,
    lemma_3_3_obstruction,
    leibniz_check,
    realize_in_span,
    rigidity_pipeline,
    solve_inner,
    verify_lemma_3_2,
    verify_lemma_3_3,
    verify_lemma_3_4,
    verify_lemma_4_3,
    verify_lemma_4_4,
)
from .parsing import parse_element, parse_scalar

__version__ = "0.1.0"

__all__ = [
    "MU_DIRECTION",
    "AlgebraVariant",
    "ArityMismatch",
    "BadArity",
    "BadK",
    "BoxLinearMap",
    "CartanElement",
    "CentralizerResult",
    "DenominatorVanishes",
    "DivisionByZero",
    "ExactDivisionError",
    "InnerSolveResult",
    "LeibnizReport",
    "LengthMismatch",
    "MissingProbe",
    "MuPolynomial",
    "NumberField",
    "NumberFieldElement",
    "ObstructionData",
    "PairOutsideBox",
    "ParseError",
    "PointwiseMap",
    "ResidualRecord",
    "RigidityReport",
    "Scalar",
    "ScalarField",
    "ScalarMatrix",
    "SolveResult",
    "TruncatedSpace",
    "VariantKind",
    "VerificationReport",
    "WittAlgebra",
    "WittElement",
    "WittkitError",
    "ad_apply",
    "ad_matrix",
    "bracket",
    "bracket_monomial_rule",
    "centralizer_basis",
    "check_antisymmetry",
    "check_bilinearity",
    "check_cartan_commutes",
    "check_closure",
    "check_jacobi",
    "check_monomial_rule_agreement",
    "format_element",
    "format_polynomial",
    "format_scalar",
    "kernel",
    "modular_rank",
    "leibniz_check",
    "lemma_3_3_obstruction",
    "lemma_4_1_families",
    "parse_element",
    "parse_scalar",
    "poly_gcd",
    "predicted_centralizer_4_1",
    "proportional",
    "rank",
    "realize_in_span",
    "rigidity_pipeline",
    "solve",
    "solve_inner",
    "span_rank",
    "specialization_points",
    "specialize",
    "verify_lemma_2_2",
    "verify_lemma_3_2",
    "verify_lemma_3_3",
    "verify_lemma_3_4",
    "verify_lemma_4_1",
    "verify_lemma_4_3",
    "verify_lemma_4_4",
    "widen_element",
]
