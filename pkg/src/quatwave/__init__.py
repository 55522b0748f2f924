"""Biquaternion formulation of relativistic quantum mechanics with matrix cross-checks."""
from .algebra import (
    CONTRAVARIANT,
    COVARIANT,
    ONE,
    ZERO,
    Biquaternion,
    FieldStrength,
    FourVector,
    I,
    J,
    K,
    conj_complex,
    conj_herm,
    conj_quat,
    four_vector,
    minkowski_norm,
    mul,
    qnorm,
    split_vector_parts,
    vec_products,
)
from .lorentz import LorentzGenerator, exp_biquat, transform_contravariant, transform_covariant
from .spinor import P_L, P_R, ChiralPair, StandardPair, from_standard, to_standard
from .matrix import from_matrix, to_matrix

__version__ = "0.1.0"

__all__ = [
    "CONTRAVARIANT", "COVARIANT", "ONE", "ZERO", "I", "J", "K",
    "Biquaternion", "FieldStrength", "FourVector",
    "conj_complex", "conj_herm", "conj_quat", "four_vector", "minkowski_norm",
    "mul", "qnorm", "split_vector_parts", "vec_products",
    "LorentzGenerator", "exp_biquat", "transform_contravariant", "transform_covariant",
    "P_L", "P_R", "ChiralPair", "StandardPair", "from_standard", "to_standard",
    "from_matrix", "to_matrix",
]
