"""Model spaces, conjugations and truncated Toeplitz operators for finite Blaschke products."""

__version__ = "0.1.0"

from .inner import AtomicMeasure, BlaschkeProduct, SingularInner, parse_inner, parse_measure
from .modelspace import ModelSpace, ModelVector, QuadratureGrid, build_model_space, project
from .conjugation import Conjugation, build_conjugation, is_c_symmetric
from .tto import ModelOperator, TTOSpace, build_tto_space, sarason_residual, theorem_check

__all__ = [
    "AtomicMeasure", "BlaschkeProduct", "SingularInner", "parse_inner", "parse_measure",
    "ModelSpace", "ModelVector", "QuadratureGrid", "build_model_space", "project",
    "Conjugation", "build_conjugation", "is_c_symmetric",
    "ModelOperator", "TTOSpace", "build_tto_space", "sarason_residual", "theorem_check",
]
