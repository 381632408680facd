"""
Sparse real tensors, their multilinear evaluation and the Z-tensor form A = D - C.
"""

from tensors.core import (
    EigenPair,
    Tensor,
    abs_tensor,
    apply,
    identity_tensor,
    intersection_count,
    is_symmetric,
    make_tensor,
    power_form,
    principal_subtensor,
    residual,
    shift,
)
from tensors.io import load_tensor, parse_tensor, save_tensor
from tensors.zform import Sign, ZDecomposition, compose, z_decompose

__all__ = [
    "EigenPair",
    "Tensor",
    "abs_tensor",
    "apply",
    "identity_tensor",
    "intersection_count",
    "is_symmetric",
    "make_tensor",
    "power_form",
    "principal_subtensor",
    "residual",
    "shift",
    "load_tensor",
    "parse_tensor",
    "save_tensor",
    "Sign",
    "ZDecomposition",
    "compose",
    "z_decompose",
]
