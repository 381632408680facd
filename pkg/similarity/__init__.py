"""
Diagonal similarity transforms and sign-similarity of a Z-tensor with |A|.
"""

from similarity.diagonal import (
    SimilarityWitness,
    diag_similar_transform,
    find_sign_similarity,
    verify_similarity,
)

__all__ = [
    "SimilarityWitness",
    "diag_similar_transform",
    "find_sign_similarity",
    "verify_similarity",
]
