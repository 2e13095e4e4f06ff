"""Exact intersection-theory kernel for counting maximal subbundles.

The package computes, as exact polynomials in the formal bundle rank n,
the number of maximal rank-n' subbundles of a general rank-n bundle on a
curve, by integrating a top Chern class over the parameter space of
candidates.  Everything runs in exact rational arithmetic over presented
graded-commutative cohomology rings.
"""

from .chern import ChernCharacter, TotalChernClass
from .errors import (
    FiberClassError,
    IncompletePresentationError,
    KernelError,
    PresentationError,
    PresetError,
    UnknownGeneratorError,
)
from .formulas import hirschowitz_smax, m1_closed, m2_closed, quot_dim, s_invariant, stratum_dim
from .gradedring import GradedElement, RingPresentation, load_presentation
from .parsing import ParseError, parse_expression
from .pipeline import (
    CountResult,
    Preset,
    count_maximal_subbundles,
    evaluation_character,
    load_preset,
    preset_from_text,
    sections_character,
    upstairs_character,
)
from .scalars import ParamScalar

__version__ = "0.1.0"

__all__ = [
    "ChernCharacter",
    "CountResult",
    "FiberClassError",
    "GradedElement",
    "IncompletePresentationError",
    "KernelError",
    "ParamScalar",
    "ParseError",
    "PresentationError",
    "Preset",
    "PresetError",
    "RingPresentation",
    "TotalChernClass",
    "UnknownGeneratorError",
    "count_maximal_subbundles",
    "evaluation_character",
    "hirschowitz_smax",
    "load_preset",
    "load_presentation",
    "m1_closed",
    "m2_closed",
    "parse_expression",
    "preset_from_text",
    "quot_dim",
    "s_invariant",
    "sections_character",
    "stratum_dim",
    "upstairs_character",
]
