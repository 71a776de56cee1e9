"""Graded modules over the Steenrod algebra."""

from exponent_toolkit.modules.base import GradedModule
from exponent_toolkit.modules.free import FreeModule
from exponent_toolkit.modules.presented import (
    FinitelyPresentedModule,
    GradedModulePresentation,
    Relation,
    ShiftedModule,
    TruncatedModule,
    dense_dimensions,
    zero_presentation,
)

__all__ = [
    "FinitelyPresentedModule",
    "FreeModule",
    "GradedModule",
    "GradedModulePresentation",
    "Relation",
    "ShiftedModule",
    "TruncatedModule",
    "dense_dimensions",
    "zero_presentation",
]
