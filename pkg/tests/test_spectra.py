"""Tests for power iteration, the brute-force oracle and dimension-2 characteristic polynomials."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from common.config import config
from common.errors import (
    DegeneratePolynomialError,
    DimensionMismatchError,
    GuardExceededError,
    MaxItersExceededError,
    NotNonnegativeError,
    NotWeaklyIrreducibleError,
    TensorInputError,
)
from harness.generators import GenSpec, gen_z_tensor
from spectra.charpoly import CharPoly2, char_poly_dim2, spectra_equal_dim2, spectral_radius_dim2
from spectra.newton_oracle import (
    brute_force_h_eigenpairs,
    canonical_vector,
    largest_real_eigenvalue,
    row_mismatch,
    sphere_starts,
)
from spectra.options import SolverOptions
from spectra.power_iteration import blockwise_rho, power_iteration_rho
from tensors.core import abs_tensor, identity_tensor, make_tensor, residual


def _full_ones(order, dim):
    return make_tensor(order, dim, [(idx, 1.0) for idx in itertools.product(range(1, dim + 1), repeat=order)])


class TestSolverOptions:
    def test_defaults_from_config(self):
        opts = SolverOptions()
        assert opts.tol == config.SOLVER_TOL
        assert opts.starts == config.ORACLE_STARTS

    @pytest.mark.parametrize("changes", [
        {"tol": 0.0}, {"tol": 1e-3, "dedup_tol": 1e-4}, {"max_iters": 0}, {"starts": 0}, {"seed": -1},
    ])
    def test_validation(self, changes):
        with pytest.raises(TensorInputError):
            SolverOptions(**changes)

    def test_with_(self):
        assert SolverOptions().with_(seed=3).seed == 3


class TestPowerIteration:
    @pytest.mark.parametrize("order,dim", [(3, 2), (4, 3), (2, 4)])
    def test_all_ones_tensor(self, order, dim):
        pair = power_iteration_rho(_full_ones(order, dim))
        assert pair.lam == pytest.approx(dim ** (order - 1), abs=1e-9)
        assert pair.method == "power"
        assert np.all(pair.x > 0)
        assert np.sum(pair.x ** order) == pytest.approx(1.0)
        assert pair.residual <= 1e-8

    def test_brackets_enclose_the_eigenvalue(self):
        N = make_tensor(3, 2, [((1, 1, 1), 1.0), ((1, 2, 2), 2.0), ((2, 1, 1), 1.0)])
        pair = power_iteration_rho(N)
        lo, hi = pair.brackets[-1]
        assert lo - 1.0 <= pair.lam <= hi - 1.0
        assert all(b[0] <= pair.lam + 1.0 + 1e-9 for b in pair.brackets)
        assert residual(N, pair.lam, pair.x) <= 1e-8

    def test_budget_exhaustion(self):
        N = make_tensor(3, 2, [((1, 1, 1), 1.0), ((1, 2, 2), 2.0), ((2, 1, 1), 1.0)])
        with pytest.raises(MaxItersExceededError):
            power_iteration_rho(N, max_iters=1)

    def test_rejects_negative_entries(self, ex4):
        with pytest.raises(NotNonnegativeError):
            power_iteration_rho(ex4.A)

    def test_rejects_disconnected_tensor(self):
        with pytest.raises(NotWeaklyIrreducibleError):
            power_iteration_rho(identity_tensor(3, 2))

    def test_identity_without_connectivity_requirement(self):
        pair = power_iteration_rho(identity_tensor(3, 2), require_weakly_irreducible=False)
        assert pair.lam == pytest.approx(1.0)
        assert pair.iterations == 1


class TestBlockwise:
    def test_strongly_connected_is_plain_power_iteration(self, ones_tensor):
        pair = blockwise_rho(ones_tensor)
        assert pair.method == "power"
        assert pair.lam == pytest.approx(4.0)

    def test_blocks_split_again_when_needed(self):
        # {1, 2} is strongly connected only through the entry (1, 2, 3)
        N = make_tensor(3, 3, [((1, 2, 3), 1.0), ((2, 1, 1), 1.0), ((3, 3, 3), 2.0)])
        pair = blockwise_rho(N)
        assert pair.method == "blocks"
        assert pair.lam == 2.0
        np.testing.assert_allclose(pair.x, [0.0, 0.0, 1.0])

    def test_nilpotent_tensor_has_rho_zero(self):
        N = make_tensor(3, 2, [((1, 2, 2), 1.0)])
        pair = blockwise_rho(N)
        assert pair.lam == 0.0
        assert residual(N, 0.0, pair.x) == 0.0

    def test_rejects_negative_entries(self, ex4):
        with pytest.raises(NotNonnegativeError):
            blockwise_rho(ex4.A)


class TestOracle:
    def test_sphere_starts(self):
        starts = sphere_starts(3, 10, seed=1)
        np.testing.assert_allclose(np.linalg.norm(starts, axis=1), 1.0)
        np.testing.assert_array_equal(starts, sphere_starts(3, 10, seed=1))

    def test_canonical_vector(self):
        np.testing.assert_allclose(canonical_vector(np.array([0.5, -2.0])), [-0.25, 1.0])

    def test_diagonal_tensor(self, opts):
        T = make_tensor(3, 2, [((1, 1, 1), 3.0), ((2, 2, 2), 1.0)])
        pairs = brute_force_h_eigenpairs(T, opts.with_(starts=60))
        lams = sorted(round(p.lam, 8) for p in pairs)
        assert lams == [1.0, 3.0]
        assert largest_real_eigenvalue(pairs) == pytest.approx(3.0)
        for pair in pairs:
            assert pair.residual <= opts.tol
            assert np.max(pair.x) == pytest.approx(1.0)

    def test_worked_example_four(self, ex4, opts):
        pairs = brute_force_h_eigenpairs(ex4.A, opts.with_(starts=60))
        assert pairs
        assert all(p.lam == pytest.approx(1.0, abs=1e-8) for p in pairs)

    def test_sorted_and_deterministic(self, ex3, opts):
        first = brute_force_h_eigenpairs(ex3.A, opts.with_(starts=40))
        second = brute_force_h_eigenpairs(ex3.A, opts.with_(starts=40))
        assert [p.lam for p in first] == [p.lam for p in second]
        assert [p.lam for p in first] == sorted((p.lam for p in first), reverse=True)

    def test_agrees_with_power_iteration(self, opts):
        N = make_tensor(3, 2, [((1, 1, 1), 1.0), ((1, 2, 2), 2.0), ((2, 1, 1), 1.0)])
        rho = power_iteration_rho(N).lam
        pairs = brute_force_h_eigenpairs(N, opts.with_(starts=80))
        assert largest_real_eigenvalue(pairs) == pytest.approx(rho, abs=1e-7)

    def test_guard(self):
        with pytest.raises(GuardExceededError):
            brute_force_h_eigenpairs(identity_tensor(2, config.ORACLE_MAX_DIM + 1))

    def test_largest_of_empty(self):
        assert largest_real_eigenvalue([]) is None


class TestOracleAcceptance:
    def test_row_mismatch_exposes_tiny_components(self, ex1):
        # x = (1, s, s^2), lam = 1 + s^2 nearly solves |A| x^4 = lam x^[4]:
        # only the last row fails, and its terms are of size s^8
        N = abs_tensor(ex1.A)
        s = 0.0196
        x = np.array([1.0, s, s * s])
        lam = 1.0 + s * s
        assert residual(N, lam, x) <= 1e-10
        assert row_mismatch(N, N, lam, x) > 1e-6
        assert row_mismatch(N, N, 1.0, np.array([1.0, 0.0, 0.0])) == 0.0

    @pytest.mark.parametrize("absolute", [False, True])
    def test_chain_example_has_only_eigenvalue_one(self, ex1, opts, absolute):
        T = abs_tensor(ex1.A) if absolute else ex1.A
        pairs = brute_force_h_eigenpairs(T, opts.with_(starts=100))
        assert pairs
        for pair in pairs:
            assert pair.lam == pytest.approx(1.0, abs=1e-8)
            assert row_mismatch(T, abs_tensor(T), pair.lam, pair.x) <= 1e-9


def _dim_two_z_tensor(order, seed):
    return gen_z_tensor(GenSpec(
        order, 2, density=0.6, require_weakly_irreducible=True, symmetric=True, seed=seed,
    ))


@pytest.mark.slow
def test_oracle_matches_power_iteration_on_most_tensors():
    attempted = converged = 0
    for seed in range(50):
        order, dim = (3, 4)[seed % 2], (2, 3)[(seed // 2) % 2]
        N = abs_tensor(gen_z_tensor(GenSpec(
            order, dim, density=0.5, require_weakly_irreducible=True, seed=seed,
        )))
        try:
            rho = blockwise_rho(N).lam
        except MaxItersExceededError:
            continue
        attempted += 1
        pairs = brute_force_h_eigenpairs(N, SolverOptions(seed=seed))
        if not pairs:
            continue
        converged += 1
        assert pairs[0].lam == pytest.approx(rho, abs=1e-6), f"seed {seed}"
    assert attempted >= 45
    assert converged >= 0.9 * attempted


@pytest.mark.slow
@pytest.mark.parametrize("order", [3, 4])
def test_oracle_eigenvalues_are_characteristic_roots(order):
    for seed in range(25):
        A = _dim_two_z_tensor(order, seed)
        roots = char_poly_dim2(A).roots()
        for pair in brute_force_h_eigenpairs(A, SolverOptions(seed=seed, starts=60)):
            assert np.min(np.abs(roots - pair.lam)) <= 1e-6, f"seed {seed}, lam {pair.lam}"


class TestCharPoly:
    def test_matrix_case(self):
        M = make_tensor(2, 2, [((1, 1), 1.0), ((1, 2), 2.0), ((2, 1), 3.0), ((2, 2), 4.0)])
        poly = char_poly_dim2(M)
        assert poly.coefficients == (Fraction(1), Fraction(-5), Fraction(-2))
        for root in poly.roots():
            assert abs(poly.evaluate(root.real)) < 1e-9

    def test_rational_coefficients_are_exact(self):
        T = make_tensor(2, 2, [((1, 1), 0.5), ((2, 2), 2.0)])
        assert char_poly_dim2(T).coefficients == (Fraction(1), Fraction(-5, 2), Fraction(1))

    def test_worked_example_four(self, ex4):
        poly = char_poly_dim2(ex4.A)
        assert poly.degree == 6
        assert poly.monic() == tuple(Fraction(c) for c in (1, -6, 15, -20, 15, -6, 1))
        np.testing.assert_allclose(poly.roots(), np.ones(6), atol=1e-9)
        assert spectral_radius_dim2(ex4.A) == pytest.approx(1.0)

    def test_absolute_tensor_has_the_same_spectrum(self, ex4):
        assert spectra_equal_dim2(ex4.A, abs_tensor(ex4.A))
        assert spectra_equal_dim2(ex4.A, abs_tensor(ex4.A), tol=1e-12)

    def test_diagonal_spectrum(self):
        T = make_tensor(3, 2, [((1, 1, 1), 3.0), ((2, 2, 2), -1.0)])
        roots = char_poly_dim2(T).roots()
        np.testing.assert_allclose(sorted(roots.real), [-1.0, -1.0, 3.0, 3.0], atol=1e-9)
        assert spectral_radius_dim2(T) == pytest.approx(3.0)

    def test_different_spectra(self):
        S = make_tensor(3, 2, [((1, 1, 1), 3.0), ((2, 2, 2), 1.0)])
        T = make_tensor(3, 2, [((1, 1, 1), 2.0), ((2, 2, 2), 1.0)])
        assert not spectra_equal_dim2(S, T)

    def test_dimension_checked(self, ex3):
        with pytest.raises(DimensionMismatchError):
            char_poly_dim2(ex3.A)
        with pytest.raises(DimensionMismatchError):
            spectra_equal_dim2(make_tensor(3, 2, []), make_tensor(4, 2, []))

    def test_zero_polynomial_has_no_monic_form(self):
        with pytest.raises(DegeneratePolynomialError):
            CharPoly2(order=3, coefficients=(Fraction(0),) * 5).monic()
