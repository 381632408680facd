"""
Built-in theorem checks.

Each check builds one seeded instance and returns PASS, FAIL or INCONCLUSIVE.
Checks that need lambda(A) from the oracle on the non-convex side report
oracle misses as INCONCLUSIVE rather than FAIL.
"""

import itertools

import numpy as np

from common.config import config
from common.errors import MaxItersExceededError, RetriesExhaustedError
from common.logging_config import get_logger
from harness.generators import GenSpec, gen_patterned_tensor, gen_z_tensor, random_index_set
from harness.registry import TrialContext, TrialOutcome, register
from similarity.diagonal import diag_similar_transform, find_sign_similarity, verify_similarity
from spectra.charpoly import char_poly_dim2, spectra_equal_dim2, spectral_radius_dim2
from spectra.newton_oracle import brute_force_h_eigenpairs
from spectra.power_iteration import power_iteration_rho
from spectra.z_eigen import compare_with_absolute
from structure.bipartite import (
    find_weak_even_bipartitions,
    find_weak_odd_bipartitions,
    is_even_bipartite,
    is_odd_bipartite,
    is_weakly_even_bipartite,
    is_weakly_odd_bipartite,
)
from structure.gf2 import subset_order_key
from structure.graphs import is_weakly_irreducible
from structure.reducibility import is_irreducible, is_reducible_for
from tensors.core import Tensor, abs_tensor, apply, residual, shift
from tensors.zform import z_decompose

logger = get_logger(__name__)

EQUALITY_TOL = 1e-6
GAP_MARGIN = 1e-8
GAP_FLOOR = 1e-10


def _proper_subsets(dim: int):
    for size in range(1, dim):
        for combo in itertools.combinations(range(1, dim + 1), size):
            yield frozenset(combo)


def _non_bipartite_z_tensor(ctx: TrialContext, **spec_kwargs) -> Tensor:
    """Resample until C admits no weak odd-bipartition."""
    for attempt in range(config.GENERATOR_RETRIES):
        spec = GenSpec(ctx.order, ctx.dim, seed=ctx.seed * 1000 + attempt, **spec_kwargs)
        A = gen_z_tensor(spec)
        if not find_weak_odd_bipartitions(z_decompose(A).C, limit=1):
            return A
    raise RetriesExhaustedError("Could not draw a C without weak odd-bipartitions")


# Structure


@register(
    "L-dual",
    "Odd order: T is (weakly) odd-bipartite for V iff (weakly) even-bipartite for the complement",
    orders=(3, 5), dims=(2, 3, 4), parity="odd",
)
def check_odd_order_duality(ctx: TrialContext) -> TrialOutcome:
    V = random_index_set(ctx.rng, ctx.dim)
    strict = bool(ctx.rng.random() < 0.5)
    parity = "odd" if ctx.rng.random() < 0.5 else "even"
    T = gen_patterned_tensor(ctx.order, ctx.dim, ctx.seed, V, parity=parity, strict=strict)

    full = frozenset(range(1, ctx.dim + 1))
    for W in _proper_subsets(ctx.dim):
        rest = full - W
        if is_weakly_odd_bipartite(T, W) != is_weakly_even_bipartite(T, rest):
            return TrialOutcome.failed(f"weak duality breaks at V={sorted(W)}", T)
        if is_odd_bipartite(T, W) != is_even_bipartite(T, rest):
            return TrialOutcome.failed(f"strict duality breaks at V={sorted(W)}", T)
    return TrialOutcome.passed()


@register(
    "T-oddbip-irred",
    "Even order: an odd-bipartite tensor is irreducible",
    orders=(4,), dims=(2, 3, 4, 5, 6), parity="even", max_dim=6,
)
def check_odd_bipartite_irreducible(ctx: TrialContext) -> TrialOutcome:
    V = random_index_set(ctx.rng, ctx.dim)
    T = gen_patterned_tensor(ctx.order, ctx.dim, ctx.seed, V, parity="odd", strict=True)
    if not is_odd_bipartite(T, V):
        return TrialOutcome.failed(f"generator did not produce an odd-bipartite tensor for V={sorted(V)}", T)
    if not is_irreducible(T):
        return TrialOutcome.failed(f"odd-bipartite for V={sorted(V)} but reducible", T)
    return TrialOutcome.passed()


@register(
    "T-evenbip-red",
    "An even-bipartite tensor is reducible for its bipartition",
    orders=(3, 4, 5), dims=(2, 3, 4, 5),
)
def check_even_bipartite_reducible(ctx: TrialContext) -> TrialOutcome:
    V = random_index_set(ctx.rng, ctx.dim)
    T = gen_patterned_tensor(ctx.order, ctx.dim, ctx.seed, V, parity="even", strict=True)
    if not is_even_bipartite(T, V):
        return TrialOutcome.failed(f"generator did not produce an even-bipartite tensor for V={sorted(V)}", T)
    if not is_reducible_for(T, V):
        return TrialOutcome.failed(f"even-bipartite for V={sorted(V)} but not reducible for it", T)
    return TrialOutcome.passed()


@register(
    "C-weakirred",
    "Even order: C odd-bipartite makes A and |A| weakly irreducible",
    orders=(4,), dims=(2, 3, 4, 5), parity="even",
)
def check_weak_irreducibility(ctx: TrialContext) -> TrialOutcome:
    V = random_index_set(ctx.rng, ctx.dim)
    A = gen_z_tensor(GenSpec(ctx.order, ctx.dim, bipartition=V, strict=True, seed=ctx.seed))
    C = z_decompose(A).C
    if not is_odd_bipartite(C, V):
        return TrialOutcome.failed(f"C is not odd-bipartite for V={sorted(V)}", A)
    if not (is_weakly_irreducible(A) and is_weakly_irreducible(abs_tensor(A))):
        return TrialOutcome.failed("A or |A| is not weakly irreducible", A)
    if is_irreducible(C) and not is_weakly_irreducible(C):
        return TrialOutcome.failed("C irreducible but not weakly irreducible", A)
    return TrialOutcome.passed()


@register(
    "X-detector",
    "GF(2) detectors agree with exhaustive subset enumeration",
    orders=(2, 3, 4, 5), dims=(2, 3, 4, 5, 6), max_dim=10,
)
def check_detector(ctx: TrialContext) -> TrialOutcome:
    patterned = ctx.rng.random() < 0.7
    V = random_index_set(ctx.rng, ctx.dim) if patterned else None
    parity = "odd" if ctx.rng.random() < 0.5 else "even"
    T = gen_patterned_tensor(ctx.order, ctx.dim, ctx.seed, V, parity=parity, density=0.3)

    subsets = sorted(_proper_subsets(ctx.dim), key=subset_order_key)
    odd_expected = [W for W in subsets if is_weakly_odd_bipartite(T, W)]
    even_expected = [W for W in subsets if is_weakly_even_bipartite(T, W)]
    if find_weak_odd_bipartitions(T) != odd_expected:
        return TrialOutcome.failed("odd detector disagrees with enumeration", T)
    if find_weak_even_bipartitions(T) != even_expected:
        return TrialOutcome.failed("even detector disagrees with enumeration", T)
    return TrialOutcome.passed()


# Spectra


def _sign_flip_equality(ctx: TrialContext, A: Tensor, chain_check: bool) -> TrialOutcome:
    comparison = compare_with_absolute(A, ctx.solver_options())
    if comparison.route != "sign-flip":
        return TrialOutcome.failed("no sign-flip transfer despite a weak odd-bipartition", A)
    if abs(comparison.gap) > EQUALITY_TOL:
        return TrialOutcome.failed(
            f"lambda(A)={comparison.a_pair.lam:.12g} != lambda(|A|)={comparison.abs_pair.lam:.12g}", A
        )
    if comparison.a_pair.residual > config.ITERATIVE_TOL:
        return TrialOutcome.failed(f"flipped residual {comparison.a_pair.residual:.3e}", A)

    if chain_check and A.dim <= config.ORACLE_MAX_DIM:
        pairs = brute_force_h_eigenpairs(A, ctx.solver_options(starts=50))
        above = [p.lam for p in pairs if p.lam > comparison.abs_pair.lam + EQUALITY_TOL]
        if above:
            return TrialOutcome.failed(
                f"oracle eigenvalue {max(above):.12g} exceeds rho(|A|)={comparison.abs_pair.lam:.12g}", A
            )
    return TrialOutcome.passed()


@register(
    "T-eq-odd",
    "Even order: C odd-bipartite gives lambda(A) = lambda(|A|)",
    orders=(4,), dims=(2, 3, 4, 5), parity="even",
)
def check_equality_odd_bipartite(ctx: TrialContext) -> TrialOutcome:
    V = random_index_set(ctx.rng, ctx.dim)
    A = gen_z_tensor(GenSpec(ctx.order, ctx.dim, bipartition=V, strict=True, seed=ctx.seed))
    return _sign_flip_equality(ctx, A, chain_check=False)


@register(
    "T-eq-weak",
    "Even order: C weakly odd-bipartite gives lambda(A) = lambda(|A|)",
    orders=(4,), dims=(3, 4, 5), parity="even",
)
def check_equality_weakly_odd_bipartite(ctx: TrialContext) -> TrialOutcome:
    V = random_index_set(ctx.rng, ctx.dim)
    A = gen_z_tensor(GenSpec(
        ctx.order, ctx.dim, bipartition=V, require_weakly_irreducible=True,
        symmetric=True, seed=ctx.seed,
    ))
    return _sign_flip_equality(ctx, A, chain_check=True)


@register(
    "T-iff",
    "Even order, C weakly irreducible: lambda(A) = lambda(|A|) iff C is weakly odd-bipartite",
    orders=(4,), dims=(3, 4), parity="even", max_dim=4,
)
def check_equality_iff(ctx: TrialContext) -> TrialOutcome:
    bipartite_side = ctx.params.get("side", "mixed")
    if bipartite_side == "mixed":
        bipartite_side = "bipartite" if ctx.rng.random() < 0.5 else "non-bipartite"

    if bipartite_side == "bipartite":
        V = random_index_set(ctx.rng, ctx.dim)
        A = gen_z_tensor(GenSpec(
            ctx.order, ctx.dim, bipartition=V, require_weakly_irreducible=True,
            symmetric=True, seed=ctx.seed,
        ))
        return _sign_flip_equality(ctx, A, chain_check=False)

    A = _non_bipartite_z_tensor(ctx, require_weakly_irreducible=True, symmetric=True)
    comparison = compare_with_absolute(A, ctx.solver_options())
    gap = comparison.gap
    residuals = f"oracle residual {comparison.a_pair.residual:.3e}, lambda(A)={comparison.a_pair.lam:.12g}"
    if gap > GAP_MARGIN:
        return TrialOutcome.passed(f"gap {gap:.3e}")
    if gap < -EQUALITY_TOL:
        return TrialOutcome.failed(f"lambda(A) exceeds rho(|A|) by {-gap:.3e}; {residuals}", A)
    if gap > GAP_FLOOR:
        return TrialOutcome.inconclusive(f"gap {gap:.3e} within the near-threshold band; {residuals}", A)
    return TrialOutcome.failed(f"no strict gap ({gap:.3e}) without a weak odd-bipartition; {residuals}", A)


@register(
    "T-odd-suff",
    "Odd order: weak odd-bipartition with vanishing rows on V gives lambda(A) = lambda(|A|)",
    orders=(3, 5), dims=(2, 3, 4), parity="odd", max_dim=4,
)
def check_odd_order_sufficiency(ctx: TrialContext) -> TrialOutcome:
    V = random_index_set(ctx.rng, ctx.dim)
    A = gen_z_tensor(GenSpec(
        ctx.order, ctx.dim, bipartition=V, vanishing_rows=V, density=0.5, seed=ctx.seed,
    ))
    return _sign_flip_equality(ctx, A, chain_check=False)


@register(
    "C-odd-even",
    "Odd order: weakly even-bipartite C with vanishing rows off V gives lambda(A) = lambda(|A|)",
    orders=(3, 5), dims=(2, 3, 4), parity="odd", max_dim=4,
)
def check_odd_order_even_variant(ctx: TrialContext) -> TrialOutcome:
    W = random_index_set(ctx.rng, ctx.dim)
    outside = frozenset(range(1, ctx.dim + 1)) - W
    A = gen_z_tensor(GenSpec(
        ctx.order, ctx.dim, bipartition=W, parity="even", vanishing_rows=outside,
        density=0.5, seed=ctx.seed,
    ))
    C = z_decompose(A).C
    if C.nnz and not is_weakly_even_bipartite(C, W):
        return TrialOutcome.failed(f"C is not weakly even-bipartite for {sorted(W)}", A)
    return _sign_flip_equality(ctx, A, chain_check=False)


@register(
    "X-oracle",
    "Power iteration and the brute-force oracle agree on rho of nonnegative tensors",
    orders=(3, 4), dims=(2, 3),
)
def check_oracle_agreement(ctx: TrialContext) -> TrialOutcome:
    A = gen_z_tensor(GenSpec(
        ctx.order, ctx.dim, density=0.5, require_weakly_irreducible=True, seed=ctx.seed,
    ))
    N = abs_tensor(A)
    try:
        rho = power_iteration_rho(N, ctx.solver_options()).lam
    except MaxItersExceededError as e:
        return TrialOutcome.inconclusive(f"power iteration did not converge: {e}", N)
    pairs = brute_force_h_eigenpairs(N, ctx.solver_options())
    if not pairs:
        return TrialOutcome.inconclusive("oracle found no eigenpair", N)
    if abs(pairs[0].lam - rho) > EQUALITY_TOL:
        return TrialOutcome.failed(f"rho={rho:.12g} but oracle max={pairs[0].lam:.12g}", N)
    return TrialOutcome.passed()


@register(
    "P-shift",
    "Eigenpairs of B map to eigenpairs of a(B + bI) with eigenvalue a(lambda + b)",
    orders=(2, 3, 4), dims=(2, 3),
)
def check_shift_law(ctx: TrialContext) -> TrialOutcome:
    B = gen_patterned_tensor(ctx.order, ctx.dim, ctx.seed, density=0.5)
    a = ctx.params.get("a")
    if a is None:
        a = float(ctx.rng.uniform(0.05, 2.0)) * (1.0 if ctx.rng.random() < 0.5 else -1.0)
    b = float(ctx.params.get("b", ctx.rng.uniform(-2.0, 2.0)))
    S = shift(B, a, b)

    pairs = brute_force_h_eigenpairs(B, ctx.solver_options(starts=50))
    if not pairs:
        return TrialOutcome.inconclusive("oracle found no eigenpair of B", B)
    m = B.order
    for pair in pairs:
        mu = a * (pair.lam + b)
        if residual(S, mu, pair.x) > config.ITERATIVE_TOL:
            return TrialOutcome.failed(f"pair lam={pair.lam:.12g} does not map under a={a}, b={b}", B)
        xm1 = pair.x ** (m - 1)
        recovered = float(np.dot(apply(S, pair.x), xm1) / np.dot(xm1, xm1))
        if abs(recovered - mu) > 1e-9 * max(1.0, abs(mu)):
            return TrialOutcome.failed(f"recovered eigenvalue {recovered:.12g} != {mu:.12g}", B)
    return TrialOutcome.passed()


# Similarity


@register(
    "T-sign-sim",
    "A and |A| are sign-similar iff m is even and C is weakly odd-bipartite",
    orders=(3, 4, 5), dims=(2, 3, 4, 5),
)
def check_sign_similarity(ctx: TrialContext) -> TrialOutcome:
    if ctx.rng.random() < 0.5:
        V = random_index_set(ctx.rng, ctx.dim)
        A = gen_z_tensor(GenSpec(
            ctx.order, ctx.dim, bipartition=V, require_weakly_irreducible=True,
            symmetric=True, seed=ctx.seed,
        ))
    else:
        A = gen_z_tensor(GenSpec(
            ctx.order, ctx.dim, require_weakly_irreducible=True, symmetric=True, seed=ctx.seed,
        ))

    C = z_decompose(A).C
    expected = A.order % 2 == 0 and bool(find_weak_odd_bipartitions(C, limit=1))
    witness = find_sign_similarity(A)
    if (witness is not None) != expected:
        return TrialOutcome.failed(f"witness {witness} but expected similarity={expected}", A)

    if witness is None:
        abs_a = abs_tensor(A)
        for signs in itertools.product((1.0, -1.0), repeat=A.dim):
            if verify_similarity(A, abs_a, signs, tol=0.0):
                return TrialOutcome.failed(f"sign vector {signs} realizes a similarity the detector missed", A)
    return TrialOutcome.passed()


@register(
    "C-spec-eq",
    "Dimension 2: sign-similar A and |A| have identical characteristic polynomials",
    orders=(4,), dims=(2,), parity="even", max_dim=2,
)
def check_spectrum_equality(ctx: TrialContext) -> TrialOutcome:
    V = random_index_set(ctx.rng, ctx.dim)
    A = gen_z_tensor(GenSpec(
        ctx.order, ctx.dim, bipartition=V, require_weakly_irreducible=True, seed=ctx.seed,
    ))
    witness = find_sign_similarity(A)
    if witness is None:
        return TrialOutcome.failed("no sign-similarity for a weakly odd-bipartite C", A)
    transformed = diag_similar_transform(abs_tensor(A), witness.p)
    if char_poly_dim2(transformed).monic() != char_poly_dim2(A).monic():
        return TrialOutcome.failed("similarity transform changed the characteristic polynomial", A)
    if not spectra_equal_dim2(A, abs_tensor(A)):
        return TrialOutcome.failed("Spec(A) != Spec(|A|) in exact arithmetic", A)
    return TrialOutcome.passed()


@register(
    "T-rho-iff",
    "Dimension 2: rho(A) = rho(|A|) iff Spec(A) = Spec(|A|)",
    orders=(4,), dims=(2,), parity="even", max_dim=2,
)
def check_rho_iff_spectrum(ctx: TrialContext) -> TrialOutcome:
    bipartite = ctx.rng.random() < 0.5
    V = random_index_set(ctx.rng, ctx.dim) if bipartite else None
    A = gen_z_tensor(GenSpec(
        ctx.order, ctx.dim, bipartition=V, require_weakly_irreducible=True,
        symmetric=True, density=0.6, seed=ctx.seed,
    ))
    rho_gap = abs(spectral_radius_dim2(A) - spectral_radius_dim2(abs_tensor(A)))
    same_spectrum = spectra_equal_dim2(A, abs_tensor(A))
    if 1e-9 < rho_gap <= EQUALITY_TOL:
        return TrialOutcome.inconclusive(f"rho gap {rho_gap:.3e} near threshold", A)
    if (rho_gap <= 1e-9) != same_spectrum:
        return TrialOutcome.failed(f"rho gap {rho_gap:.3e} but spectra equal={same_spectrum}", A)
    return TrialOutcome.passed()
