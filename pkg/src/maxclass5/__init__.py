"""Metabelian 5-groups of maximal class: exact engine and invariants."""

from .engine import Element, PcGroup, build_group
from .errors import (BadGenerator, ConsistencyError, CosetIndexError,
                     DimensionError, FormatError, MaxClass5Error, MissingS,
                     ParamError, PrecondError, SizeGuard, StructureError,
                     SweepError, UnsupportedQuotient)
from .kernel import BACKEND
from .params import PresentationParams, validate_params

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Element", "PcGroup", "PresentationParams", "build_group",
    "validate_params", "MaxClass5Error", "ParamError", "DimensionError",
    "ConsistencyError", "StructureError", "CosetIndexError",
    "UnsupportedQuotient", "BadGenerator", "SizeGuard", "FormatError",
    "PrecondError", "MissingS", "SweepError", "__version__",
]
