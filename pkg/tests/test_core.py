"""Tests for the sparse tensor core and the Z-form decomposition."""

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from common.config import config
from common.errors import (
    DimensionMismatchError,
    DuplicateEntryError,
    GuardExceededError,
    IndexOutOfRangeError,
    NegativeDiagonalError,
    PositiveOffDiagonalError,
    TensorInputError,
    ZFormError,
)
from strategies import tensors, vectors
from tensors.core import (
    EigenPair,
    Tensor,
    abs_tensor,
    all_index_tuples,
    apply,
    apply_jacobian,
    check_dense_guard,
    identity_tensor,
    intersection_count,
    is_symmetric,
    make_tensor,
    power_form,
    residual,
    shift,
)
from tensors.zform import Sign, compose, is_z_form, z_decompose


class TestConstruction:
    def test_zero_values_are_dropped(self):
        T = make_tensor(3, 2, [((1, 1, 2), 0.0), ((2, 1, 1), 1.5)])
        assert T.nnz == 1
        assert T.entry((1, 1, 2)) == 0.0
        assert T.entry((2, 1, 1)) == 1.5

    def test_repeated_identical_entry_is_accepted(self):
        T = make_tensor(2, 2, [((1, 2), 1.0), ((1, 2), 1.0)])
        assert T.nnz == 1

    def test_conflicting_duplicate_raises(self):
        with pytest.raises(DuplicateEntryError):
            make_tensor(2, 2, [((1, 2), 1.0), ((1, 2), 2.0)])

    @pytest.mark.parametrize("idx", [(0, 1, 1), (1, 3, 1), (1, 1)])
    def test_bad_index_raises(self, idx):
        with pytest.raises(IndexOutOfRangeError):
            make_tensor(3, 2, [(idx, 1.0)])

    def test_shape_is_validated(self):
        with pytest.raises(TensorInputError):
            Tensor(1, 2, {})
        with pytest.raises(TensorInputError):
            Tensor(3, 0, {})

    def test_non_finite_value_raises(self):
        with pytest.raises(TensorInputError):
            make_tensor(2, 2, [((1, 1), float("inf"))])

    def test_entries_are_read_only(self, ex2):
        with pytest.raises(TypeError):
            ex2.A.entries[(1, 1, 1, 1, 1)] = 5.0

    def test_equality_and_hash(self):
        S = make_tensor(2, 2, [((1, 2), 1.0), ((2, 1), 3.0)])
        T = make_tensor(2, 2, [((2, 1), 3.0), ((1, 2), 1.0)])
        assert S == T
        assert hash(S) == hash(T)
        assert repr(S) == "Tensor(order=2, dim=2, nnz=2)"


class TestEvaluation:
    def test_apply_and_power_form(self, ex4):
        A = ex4.A
        np.testing.assert_allclose(apply(A, [1.0, 1.0]), [0.0, 1.0])
        assert power_form(A, [1.0, 1.0]) == pytest.approx(1.0)

    def test_matrix_case_is_matrix_vector_product(self):
        M = np.array([[1.0, 2.0], [3.0, 4.0]])
        T = make_tensor(2, 2, [((i + 1, j + 1), M[i, j]) for i in range(2) for j in range(2)])
        x = np.array([0.5, -1.5])
        np.testing.assert_allclose(apply(T, x), M @ x)

    def test_vector_length_checked(self, ex4):
        with pytest.raises(DimensionMismatchError):
            apply(ex4.A, [1.0, 1.0, 1.0])

    def test_residual_of_known_eigenpair(self, ex4):
        assert residual(ex4.A, 1.0, [0.0, 1.0]) == 0.0
        assert residual(ex4.A, 2.0, [0.0, 1.0]) == pytest.approx(1.0)

    def test_jacobian_matches_finite_differences(self, ex3):
        A = ex3.A
        x = np.array([0.7, -0.4, 1.1])
        h = 1e-6
        numeric = np.column_stack([
            (apply(A, x + h * e) - apply(A, x - h * e)) / (2 * h) for e in np.eye(3)
        ])
        np.testing.assert_allclose(apply_jacobian(A, x), numeric, atol=1e-6)

    @given(tensors(), st.floats(-3.0, 3.0, allow_nan=False), st.data())
    @settings(max_examples=60, deadline=None)
    def test_apply_is_homogeneous(self, T, t, data):
        x = np.array(data.draw(vectors(T.dim)))
        np.testing.assert_allclose(
            apply(T, t * x), t ** (T.order - 1) * apply(T, x), rtol=1e-9, atol=1e-9
        )

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_apply_is_linear_in_the_tensor(self, data):
        S = data.draw(tensors(min_order=3, max_order=3, min_dim=3, max_dim=3))
        T = data.draw(tensors(min_order=3, max_order=3, min_dim=3, max_dim=3))
        x = np.array(data.draw(vectors(3)))
        np.testing.assert_allclose(apply(S + T, x), apply(S, x) + apply(T, x), atol=1e-9)
        np.testing.assert_allclose(apply(2.5 * S, x), 2.5 * apply(S, x), atol=1e-9)


class TestAlgebra:
    def test_abs_and_identity(self, ex2):
        assert abs_tensor(ex2.A).is_nonnegative()
        I = identity_tensor(3, 2)
        assert dict(I.entries) == {(1, 1, 1): 1.0, (2, 2, 2): 1.0}

    def test_shift_maps_eigenpairs(self, ex4):
        B = shift(ex4.A, 2.0, 3.0)
        # (1, e2) of A becomes (2 * (1 + 3), e2)
        assert residual(B, 8.0, [0.0, 1.0]) == pytest.approx(0.0)

    def test_shift_with_zero_scale_is_zero_tensor(self, ex4):
        assert shift(ex4.A, 0.0, 5.0).nnz == 0

    def test_subtraction_cancels(self, ex1):
        assert (ex1.A - ex1.A).nnz == 0

    def test_shape_mismatch_on_add(self, ex1, ex4):
        with pytest.raises(DimensionMismatchError):
            ex1.A + ex4.A

    def test_symmetry(self):
        sym = make_tensor(3, 2, [((1, 1, 2), 1.0), ((1, 2, 1), 1.0), ((2, 1, 1), 1.0)])
        assert is_symmetric(sym)
        assert not is_symmetric(make_tensor(3, 2, [((1, 1, 2), 1.0)]))

    def test_intersection_count_uses_multiplicity(self):
        assert intersection_count((1, 1, 3, 3, 3), {3}) == 3
        assert intersection_count((1, 1, 3, 3, 3), {1, 2}) == 2

    def test_dense_guard(self, monkeypatch):
        monkeypatch.setattr(config, "DENSE_GUARD", 8)
        check_dense_guard(3, 2, "test")
        with pytest.raises(GuardExceededError):
            check_dense_guard(3, 3, "test")
        with pytest.raises(GuardExceededError):
            list(all_index_tuples(2, 3))

    def test_revalidated_pair(self, ex4):
        pair = EigenPair(lam=1.0, x=np.array([0.0, 1.0]), residual=float("nan"))
        assert pair.revalidated(ex4.A).residual == 0.0


class TestZForm:
    def test_decompose_example(self, ex2):
        dec = z_decompose(ex2.A)
        np.testing.assert_array_equal(dec.d, [1.0, 1.0, 3.0])
        assert dict(dec.C.entries) == {(1, 1, 3, 3, 3): 1.0, (2, 2, 3, 3, 3): 2.0}
        assert dec.a_tensor() == ex2.A
        assert dec.abs_tensor() == abs_tensor(ex2.A)

    def test_positive_off_diagonal_rejected(self):
        with pytest.raises(PositiveOffDiagonalError):
            z_decompose(make_tensor(2, 2, [((1, 2), 1.0)]))

    def test_negative_diagonal_rejected(self):
        with pytest.raises(NegativeDiagonalError):
            z_decompose(make_tensor(2, 2, [((1, 1), -1.0)]))
        assert not is_z_form(make_tensor(2, 2, [((1, 1), -1.0)]))

    def test_compose_validates_inputs(self):
        C = make_tensor(3, 2, [((1, 2, 2), 1.0)])
        with pytest.raises(DimensionMismatchError):
            compose([1.0], C)
        with pytest.raises(ZFormError):
            compose([1.0, 1.0], make_tensor(3, 2, [((1, 1, 1), 1.0)]))
        with pytest.raises(ZFormError):
            compose([1.0, 1.0], make_tensor(3, 2, [((1, 2, 2), -1.0)]))

    def test_compose_signs(self):
        C = make_tensor(3, 2, [((1, 2, 2), 0.5)])
        assert compose([1.0, 2.0], C, Sign.PLUS).entry((1, 2, 2)) == 0.5
        assert compose([1.0, 2.0], C, "minus").entry((1, 2, 2)) == -0.5

    @given(tensors(nonnegative=True))
    @settings(max_examples=50, deadline=None)
    def test_decompose_compose_round_trip(self, N):
        A = compose(N.diagonal(), Tensor(N.order, N.dim, {
            k: v for k, v in N.entries.items() if not N.is_diagonal_key(k)
        }))
        dec = z_decompose(A)
        assert compose(dec.d, dec.C) == A
