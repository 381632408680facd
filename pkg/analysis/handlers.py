"""
Verb handlers: thin adapters from a tensor (or harness arguments) to a result model.

No numerical logic lives here; every number comes from the library packages.
"""

from typing import List, Optional, Sequence

from analysis.models import (
    BipartiteResult,
    CharPolyResult,
    CheckInfo,
    CompareResult,
    ComplexValue,
    EigenPairModel,
    EigResult,
    InspectResult,
    IrreducibleResult,
    RegressionResult,
    RhoResult,
    SimilarResult,
    VerifyResult,
)
from common.errors import TensorInputError, ZFormError
from common.logging_config import get_logger
from harness.registry import check_theorem, list_checks
from harness.regression import regression_suite
from similarity.diagonal import find_sign_similarity
from spectra.charpoly import char_poly_dim2
from spectra.newton_oracle import brute_force_h_eigenpairs
from spectra.options import SolverOptions
from spectra.power_iteration import power_iteration_rho
from spectra.z_eigen import (
    compare_with_absolute,
    largest_h_eigenpair_nonnegative,
    largest_h_eigenvalue_z,
    rho_estimate,
)
from structure.bipartite import BipartitionKind, detect_bipartitions
from structure.graphs import is_weakly_irreducible
from structure.reducibility import find_reducing_set
from tensors.core import Tensor, is_symmetric
from tensors.zform import z_decompose

logger = get_logger(__name__)

EIG_METHODS = ("auto", "power", "brute")


def inspect_tensor(T: Tensor) -> InspectResult:
    try:
        z_decompose(T)
        z_form, z_error = True, None
    except ZFormError as e:
        z_form, z_error = False, str(e)
    return InspectResult(
        order=T.order,
        dim=T.dim,
        nnz=T.nnz,
        symmetric=is_symmetric(T),
        nonnegative=T.is_nonnegative(),
        z_form=z_form,
        z_form_error=z_error,
        weakly_irreducible=is_weakly_irreducible(T),
    )


def bipartite(T: Tensor, kind: str = "odd", strict: bool = False, limit: Optional[int] = None) -> BipartiteResult:
    bip_kind = BipartitionKind.of(kind, strict)
    witnesses = detect_bipartitions(T, bip_kind, limit)
    return BipartiteResult(
        verdict=bool(witnesses),
        kind=bip_kind.value,
        witnesses=[sorted(w.V) for w in witnesses],
    )


def irreducible(T: Tensor) -> IrreducibleResult:
    witness = find_reducing_set(T)
    return IrreducibleResult(
        verdict=witness is None,
        irreducible=witness is None,
        witness=None if witness is None else sorted(witness),
        weakly_irreducible=is_weakly_irreducible(T),
    )


def eig(T: Tensor, method: str = "auto", opts: Optional[SolverOptions] = None) -> EigResult:
    """
    Eigenpairs by the requested method.

    auto: Perron pair for nonnegative tensors, lambda(A) for Z-tensors,
    the oracle list otherwise.
    """
    opts = opts or SolverOptions()
    if method not in EIG_METHODS:
        raise TensorInputError(f"Unknown method '{method}', expected one of {EIG_METHODS}")

    if method == "power":
        pairs = [power_iteration_rho(T, opts)]
    elif method == "brute":
        pairs = brute_force_h_eigenpairs(T, opts)
    elif T.is_nonnegative():
        pairs = [largest_h_eigenpair_nonnegative(T, opts)]
    else:
        try:
            pairs = [largest_h_eigenvalue_z(T, opts)]
        except ZFormError:
            pairs = brute_force_h_eigenpairs(T, opts)
    return EigResult(method=method, pairs=[EigenPairModel.from_pair(p) for p in pairs])


def compare(A: Tensor, tol: Optional[float] = None, opts: Optional[SolverOptions] = None) -> CompareResult:
    comparison = compare_with_absolute(A, opts, tol)
    return CompareResult(
        verdict=comparison.equal,
        lambda_a=comparison.a_pair.lam,
        lambda_abs=comparison.abs_pair.lam,
        gap=comparison.gap,
        tol=comparison.tol,
        equal=comparison.equal,
        route=comparison.route,
        witness=None if comparison.witness is None else sorted(comparison.witness),
        a_pair=EigenPairModel.from_pair(comparison.a_pair),
        abs_pair=EigenPairModel.from_pair(comparison.abs_pair),
    )


def similar(A: Tensor) -> SimilarResult:
    witness = find_sign_similarity(A)
    if witness is None:
        return SimilarResult(verdict=False, similar=False)
    return SimilarResult(
        verdict=True,
        similar=True,
        p=list(witness.p),
        V=None if witness.V is None else sorted(witness.V),
    )


def charpoly(T: Tensor) -> CharPolyResult:
    poly = char_poly_dim2(T)
    roots = poly.roots()
    return CharPolyResult(
        order=poly.order,
        degree=poly.degree,
        coefficients=[str(c) for c in poly.coefficients],
        expression=poly.as_expression(),
        roots=[ComplexValue(re=float(r.real), im=float(r.imag)) for r in roots],
        spectral_radius=float(max(abs(r) for r in roots)) if len(roots) else 0.0,
    )


def rho(T: Tensor, opts: Optional[SolverOptions] = None) -> RhoResult:
    estimate = rho_estimate(T, opts)
    return RhoResult(value=estimate.value, method=estimate.method, lower_bound=estimate.lower_bound)


def verify(
    theorem_id: str,
    trials: int,
    seed: int = 0,
    orders: Optional[Sequence[int]] = None,
    dims: Optional[Sequence[int]] = None,
    workers: Optional[int] = None,
) -> VerifyResult:
    report = check_theorem(theorem_id, trials, seed, orders, dims, workers)
    return VerifyResult(verdict=report.ok, report=report)


def regression(opts: Optional[SolverOptions] = None) -> RegressionResult:
    reports = regression_suite(opts)
    return RegressionResult(verdict=all(r.ok for r in reports), reports=reports)


def theorems() -> List[CheckInfo]:
    return [
        CheckInfo(
            theorem_id=d.theorem_id,
            description=d.description,
            orders=list(d.orders),
            dims=list(d.dims),
        )
        for d in list_checks()
    ]
