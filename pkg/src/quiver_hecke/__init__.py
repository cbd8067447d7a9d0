"""Quiver Hecke - exact computations in quiver Hecke (KLR) algebras."""

__version__ = "0.1.0"

from quiver_hecke.config import Config, get_config, set_config
from quiver_hecke.errors import (
    KLRError,
    NotLambdaDefinable,
    ParseError,
    TruncationExhausted,
)
from quiver_hecke.cartan import (
    CartanDatum,
    RootVector,
    build_cartan,
    canonical_associator,
    extend_cartan,
    lambda_pm,
    preset,
)
from quiver_hecke.qha import KLRAlgebra, AlgebraElement, multiply, render
from quiver_hecke.parser import element_from_text
from quiver_hecke.gmod import GradedModule, one_letter, shift, unit_module
from quiver_hecke.convolution import convolution
from quiver_hecke.homs import Morphism, hom_space, is_isomorphic
from quiver_hecke.catalogue import (
    build_Cpm,
    determinantial,
    extended_algebra,
    head_module,
    kato_module,
    module_from_spec,
    simple_power,
)
from quiver_hecke.rmat import Lambda, delta, lambda_tilde, rmatrix
from quiver_hecke.models import CaseResult, Report
from quiver_hecke.cache import load_json, save_json, with_cache

__all__ = [
    # Version
    "__version__",
    # Config
    "Config",
    "get_config",
    "set_config",
    # Errors
    "KLRError",
    "NotLambdaDefinable",
    "ParseError",
    "TruncationExhausted",
    # Cartan data
    "CartanDatum",
    "RootVector",
    "build_cartan",
    "canonical_associator",
    "extend_cartan",
    "lambda_pm",
    "preset",
    # Algebra
    "KLRAlgebra",
    "AlgebraElement",
    "multiply",
    "render",
    "element_from_text",
    # Modules
    "GradedModule",
    "one_letter",
    "shift",
    "unit_module",
    "convolution",
    "Morphism",
    "hom_space",
    "is_isomorphic",
    "build_Cpm",
    "determinantial",
    "extended_algebra",
    "head_module",
    "kato_module",
    "module_from_spec",
    "simple_power",
    # R-matrices
    "Lambda",
    "delta",
    "lambda_tilde",
    "rmatrix",
    # Reports
    "CaseResult",
    "Report",
    "load_json",
    "save_json",
    "with_cache",
]
