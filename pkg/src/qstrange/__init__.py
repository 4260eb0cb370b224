"""Exact tools for strange q-series: partial sums, dissections, divisibility
certificates, asymptotic expansions at roots of unity, and Fishburn-type
congruences."""

from qstrange.cyclofield import ConductorMismatch, CycloNum, eval_at_root
from qstrange.dissection import (
    Dissection,
    DivisibilityFalsified,
    DivisibilityReport,
    DivisibilityRow,
    OddModulusRequired,
    dissect,
    pochhammer_factorization,
    residue_set,
    thresholds,
    verify_theorem,
)
from qstrange.exactpoly import (
    IntPoly,
    NotDivisible,
    RatPoly,
    cyclotomic,
    exact_div,
    pochhammer,
    qbinomial,
    subst_one_minus_q,
    theta_deriv,
)
from qstrange.fishburn import (
    CongruenceReport,
    ScanReport,
    XiSequence,
    scan_congruences,
    verify_congruence,
    xi_coeffs,
)
from qstrange.partialtheta import (
    Character,
    CharacterInvalid,
    IntegralityViolation,
    MeanValueNonzero,
    TwistedSeq,
    character_from_json_obj,
    gamma_coeff,
    get_character,
    l_value,
    theta_truncated,
    twisted_sequence,
)
from qstrange.qfamilies import (
    FamilySpec,
    InvalidParam,
    ParseError,
    PartialSum,
    kernel_poly,
    parse_family,
    partial_sum,
    partial_sum_prefix,
    term_poly,
)
from qstrange.strangematch import (
    MatchReport,
    OddOrderRequired,
    c_array,
    expansion_coeff,
    extraction_identity_check,
    match_expansion,
    stable_derivative,
)

__version__ = "0.1.0"

__all__ = [
    "Character",
    "CharacterInvalid",
    "CongruenceReport",
    "ConductorMismatch",
    "CycloNum",
    "Dissection",
    "DivisibilityFalsified",
    "DivisibilityReport",
    "DivisibilityRow",
    "FamilySpec",
    "IntPoly",
    "IntegralityViolation",
    "InvalidParam",
    "MatchReport",
    "MeanValueNonzero",
    "NotDivisible",
    "OddModulusRequired",
    "OddOrderRequired",
    "ParseError",
    "PartialSum",
    "RatPoly",
    "ScanReport",
    "TwistedSeq",
    "XiSequence",
    "__version__",
    "c_array",
    "character_from_json_obj",
    "cyclotomic",
    "dissect",
    "eval_at_root",
    "exact_div",
    "expansion_coeff",
    "extraction_identity_check",
    "gamma_coeff",
    "get_character",
    "kernel_poly",
    "l_value",
    "match_expansion",
    "parse_family",
    "partial_sum",
    "partial_sum_prefix",
    "pochhammer",
    "pochhammer_factorization",
    "qbinomial",
    "residue_set",
    "scan_congruences",
    "stable_derivative",
    "subst_one_minus_q",
    "term_poly",
    "theta_deriv",
    "theta_truncated",
    "thresholds",
    "twisted_sequence",
    "verify_congruence",
    "verify_theorem",
    "xi_coeffs",
]
