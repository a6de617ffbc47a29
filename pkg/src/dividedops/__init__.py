"""Exact arithmetic in rings of divided-power differential operators on
Laurent polynomials over F_p, and their order preserving automorphisms."""

from .autgroup import (
    FactoredAut,
    GeneratorImages,
    MonomialAut,
    ShiftVector,
    apply_images,
    compose_images,
    extract_digits,
    factorize,
    matrix_shift,
    monomial_apply,
    monomial_compose_images,
    monomial_generator_images,
    shift_apply,
    shift_compose_images,
    shift_divided_image,
    shift_generator_images,
    validate_generator_images,
)
from .diffop import DiffOp, divided_image_from_levels, normal_form_from_action
from .errors import (
    DividedOpsError,
    InconsistentAction,
    InsufficientPrecision,
    InvalidAutomorphism,
    MismatchError,
    NotAUnit,
    NotGL,
    NotInStabilizer,
    NotSigmaForm,
    ParseError,
    PrecisionMismatch,
    WindowTooLarge,
)
from .expr import eval_laurent, eval_operator, parse
from .laurent import LaurentPoly
from .oracles import (
    ExponentWindow,
    action_equiv_check,
    kernel_bruteforce,
    relation_suite,
)
from .scalars import (
    FpScalar,
    PadicInt,
    Prime,
    binom_int_mod_p,
    binom_nat_mod_p,
    binom_padic,
    padic_length,
)

__version__ = "0.1.0"

__all__ = [
    "DiffOp",
    "DividedOpsError",
    "ExponentWindow",
    "FactoredAut",
    "FpScalar",
    "GeneratorImages",
    "InconsistentAction",
    "InsufficientPrecision",
    "InvalidAutomorphism",
    "LaurentPoly",
    "MismatchError",
    "MonomialAut",
    "NotAUnit",
    "NotGL",
    "NotInStabilizer",
    "NotSigmaForm",
    "PadicInt",
    "ParseError",
    "PrecisionMismatch",
    "Prime",
    "ShiftVector",
    "WindowTooLarge",
    "action_equiv_check",
    "apply_images",
    "binom_int_mod_p",
    "binom_nat_mod_p",
    "binom_padic",
    "compose_images",
    "divided_image_from_levels",
    "eval_laurent",
    "eval_operator",
    "extract_digits",
    "factorize",
    "kernel_bruteforce",
    "matrix_shift",
    "monomial_apply",
    "monomial_compose_images",
    "monomial_generator_images",
    "normal_form_from_action",
    "padic_length",
    "parse",
    "relation_suite",
    "shift_apply",
    "shift_compose_images",
    "shift_divided_image",
    "shift_generator_images",
    "validate_generator_images",
]
