"""Cohomology rings, cup-lengths and interval bounds for LS-category and topological complexity."""

from .algebra import (
    Element,
    GeneratorSpec,
    GradedAlgebra,
    Presentation,
    adjoin_root,
    attach_steenrod,
    basic_divisor,
    build_algebra,
    multiplication_kernel,
    multiply,
    steenrod_apply,
    tensor,
)
from .bounds import (
    BoundResult,
    EvalOptions,
    Step,
    cover_size,
    evaluate,
    list_facts,
    list_rules,
    ring_of,
)
from .expr import render
from .invariants import (
    WitnessProduct,
    cup_length,
    duality_check,
    poincare_polynomial,
    zero_divisor_cup_length,
)
from .linalg import FieldTag
from .parser import parse_space_expr

__all__ = [
    "BoundResult",
    "Element",
    "EvalOptions",
    "FieldTag",
    "GeneratorSpec",
    "GradedAlgebra",
    "Presentation",
    "Step",
    "WitnessProduct",
    "adjoin_root",
    "attach_steenrod",
    "basic_divisor",
    "build_algebra",
    "cover_size",
    "cup_length",
    "duality_check",
    "evaluate",
    "list_facts",
    "list_rules",
    "multiplication_kernel",
    "multiply",
    "parse_space_expr",
    "poincare_polynomial",
    "render",
    "ring_of",
    "steenrod_apply",
    "tensor",
    "zero_divisor_cup_length",
]
