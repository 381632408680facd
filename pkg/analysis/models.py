"""
Pydantic result models for the analysis verbs.
Shared by the CLI (structured output) and the HTTP backend (response schemas).
"""

import math
from typing import List, Optional

from pydantic import BaseModel, Field

from harness.models import TheoremReport
from tensors.core import EigenPair


class VerbResult(BaseModel):
    """Base result; verdict is the predicate answer for boolean verbs."""
    verdict: Optional[bool] = None


class EigenPairModel(BaseModel):
    lam: float
    x: List[float]
    residual: Optional[float] = None
    iterations: int = 0
    method: str = ""

    @classmethod
    def from_pair(cls, pair: EigenPair) -> "EigenPairModel":
        return cls(
            lam=pair.lam,
            x=[float(v) for v in pair.x],
            residual=None if math.isnan(pair.residual) else pair.residual,
            iterations=pair.iterations,
            method=pair.method,
        )


class InspectResult(VerbResult):
    order: int
    dim: int
    nnz: int
    symmetric: bool
    nonnegative: bool
    z_form: bool
    z_form_error: Optional[str] = None
    weakly_irreducible: bool


class BipartiteResult(VerbResult):
    kind: str
    witnesses: List[List[int]] = Field(default_factory=list)


class IrreducibleResult(VerbResult):
    irreducible: bool
    witness: Optional[List[int]] = None
    weakly_irreducible: bool


class EigResult(VerbResult):
    method: str
    pairs: List[EigenPairModel] = Field(default_factory=list)


class CompareResult(VerbResult):
    lambda_a: float
    lambda_abs: float
    gap: float
    tol: float
    equal: bool
    route: str
    witness: Optional[List[int]] = None
    a_pair: EigenPairModel
    abs_pair: EigenPairModel


class SimilarResult(VerbResult):
    similar: bool
    p: Optional[List[float]] = None
    V: Optional[List[int]] = None


class ComplexValue(BaseModel):
    re: float
    im: float


class CharPolyResult(VerbResult):
    order: int
    degree: int
    coefficients: List[str]
    expression: str
    roots: List[ComplexValue]
    spectral_radius: float


class RhoResult(VerbResult):
    value: float
    method: str
    lower_bound: bool


class VerifyResult(VerbResult):
    report: TheoremReport


class RegressionResult(VerbResult):
    reports: List[TheoremReport]


class CheckInfo(BaseModel):
    theorem_id: str
    description: str
    orders: List[int]
    dims: List[int]
