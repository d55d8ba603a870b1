import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import assert_close
from winverse.core import matcore
from winverse.core.matcore import Tolerance
from winverse.utils.errors import ShapeError, SingularBlockError
from winverse.utils.random_problems import random_unitary

J3 = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=complex)


def _random(seed, shape):
    rng = np.random.default_rng(seed)
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_as_matrix_rejects_bad_input():
    with pytest.raises(ShapeError):
        matcore.as_matrix([1, 2, 3])
    with pytest.raises(ValueError):
        matcore.as_matrix([[1, np.nan]])
    assert matcore.as_matrix([[1, 2]]).dtype == np.complex128


def test_tolerance_must_be_nonnegative():
    with pytest.raises(ValueError):
        Tolerance(rank_rtol=-1.0)


@pytest.mark.parametrize("M, expected", [
    (np.eye(3), 3),
    (np.zeros((2, 4)), 0),
    (J3, 2),
    (np.array([[1, 2], [2, 4]]), 1),
    ([[0, 0, 1], [0, 1, 1], [1, 1, 1], [0, 0, 0]], 3),
])
def test_rank(M, expected):
    assert matcore.rank(M) == expected


def test_pinv_of_zero_has_transposed_shape():
    X = matcore.pinv(np.zeros((2, 5)))
    assert X.shape == (5, 2)
    assert not X.any()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 5), st.integers(1, 5), st.integers(1, 5))
def test_pinv_satisfies_penrose_equations(seed, rows, cols, r):
    r = min(r, rows, cols)
    M = _random(seed, (rows, r)) @ _random(seed + 1, (r, cols))
    X = matcore.pinv(M)
    scale = max(1.0, matcore.max_norm(M), matcore.max_norm(X))
    for label, value in matcore.penrose_residuals(M, X).items():
        assert value / scale < 1e-8, label
    assert matcore.rank(X) == matcore.rank(M) == r


@pytest.mark.parametrize("A, expected", [
    (np.eye(3), 0),
    (np.zeros((2, 2)), 1),
    (J3, 3),
    (np.diag([2.0, 0.0]), 1),
    ([[0, 1], [0, 0]], 2),
])
def test_index(A, expected):
    assert matcore.index(A) == expected


def test_index_of_fixture_products(fix1_pair, fix2_pair):
    A, W = fix1_pair
    assert matcore.index(A @ W) == 2
    assert matcore.index(W @ A) == 3
    A, W = fix2_pair
    assert matcore.index(A @ W) == 3
    assert matcore.index(W @ A) == 2


def test_index_needs_square_matrix():
    with pytest.raises(ShapeError):
        matcore.index(np.ones((2, 3)))


def test_matrix_power_zero_is_identity():
    assert_close(matcore.matrix_power(J3, 0), np.eye(3))
    assert not matcore.matrix_power(J3, 3).any()
    with pytest.raises(ValueError):
        matcore.matrix_power(J3, -1)


def test_inverse_raises_on_singular_block():
    with pytest.raises(SingularBlockError):
        matcore.inverse(np.zeros((2, 2)))
    assert matcore.inverse(np.zeros((0, 0))).shape == (0, 0)


def test_range_projector():
    P = matcore.range_projector(np.array([[1], [0]]))
    assert_close(P, [[1, 0], [0, 0]])
    M = _random(3, (4, 2))
    P = matcore.range_projector(M)
    assert matcore.is_idempotent(P)
    assert_close(P, matcore.ctranspose(P))
    assert_close(P, M @ matcore.pinv(M))


def test_range_inclusion_and_equality():
    M = _random(5, (4, 2))
    assert matcore.range_inclusion(M @ _random(6, (2, 3)), M)
    assert not matcore.range_inclusion(np.eye(2), np.zeros((2, 2)))
    assert matcore.range_equal(M, M @ _random(7, (2, 2)))
    assert not matcore.range_equal(M, M[:, :1])
    with pytest.raises(ShapeError):
        matcore.range_inclusion(np.eye(2), np.eye(3))


def test_null_space_equal_under_invertible_left_factor():
    A = _random(11, (3, 2)) @ _random(12, (2, 4))
    G = _random(13, (3, 3))
    assert matcore.null_space_equal(A, G @ A)
    assert not matcore.null_space_equal(A, _random(14, (3, 4)))


def test_null_spaces_stay_equal_after_right_multiplication():
    A = _random(21, (3, 2)) @ _random(22, (2, 4))
    B = _random(23, (5, 3)) @ A
    C = _random(24, (4, 3))
    assert matcore.null_space_equal(A, B)
    assert matcore.null_space_equal(A @ C, B @ C)


def test_range_projector_fixes_high_powers():
    A = np.array([[1, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=complex)
    k = matcore.index(A)
    for m in range(1, k + 1):
        P = matcore.range_projector(matcore.matrix_power(A, m))
        for ell in range(k, k + 3):
            A_ell = matcore.matrix_power(A, ell)
            assert_close(P @ A_ell, A_ell)


def test_matrix_eq_is_scale_relative():
    A = 1e6 * np.eye(2)
    assert matcore.matrix_eq(A, A + 1e-4)
    assert not matcore.matrix_eq(np.eye(2), np.eye(2) + 1e-6)
    with pytest.raises(ShapeError):
        matcore.matrix_eq(np.eye(2), np.eye(3))


def test_is_projector_onto():
    # projector onto span(e1) along span(e1 - e2)
    P = np.array([[1, 1], [0, 0]], dtype=complex)
    assert matcore.is_projector_onto(P, np.array([[1], [0]]), np.array([[1, 1]]))
    assert not matcore.is_projector_onto(P, np.array([[0], [1]]), np.array([[1, 1]]))


def _rotated(M, seed):
    Q = random_unitary(np.random.default_rng(seed), M.shape[0])
    return Q @ M @ matcore.ctranspose(Q)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_index_of_rotated_nilpotent(seed):
    A = _rotated(J3, seed)
    assert matcore.index(A) == 3
    assert [matcore.power_rank(A, ell) for ell in range(6)] == [3, 2, 1, 0, 0, 0]
    assert not matcore.power_range_projector(A, 3).any()


def test_power_rank_keeps_small_singular_values():
    # eigenvalues 20 and 0.05: the two singular values of A^6 are 16 decades apart
    A = np.array([[20, 0, 1], [0, 0.05, 1], [0, 0, 0]], dtype=complex)
    assert matcore.rank(matcore.matrix_power(A, 6)) == 1
    assert matcore.index(A) == 1
    assert matcore.power_rank(A, 6) == 2
    assert_close(matcore.power_range_projector(A, 6), np.diag([1, 1, 0]))


def test_power_range_basis_of_fixture_product(fix2_pair):
    A, W = fix2_pair
    AW = A @ W
    for ell in range(5):
        basis = matcore.power_range_basis(AW, ell)
        assert basis.dim == matcore.rank(matcore.matrix_power(AW, ell))
        assert matcore.range_equal(basis.matrix, matcore.matrix_power(AW, ell))
    with pytest.raises(ValueError):
        matcore.power_range_basis(AW, -1)
    with pytest.raises(ShapeError):
        matcore.power_rank(A, 1)


def test_pinv_at_known_rank():
    M = np.diag([3.0, 1e-3, 0.0])
    assert_close(matcore.pinv(M, r=2), np.diag([1 / 3, 1e3, 0]))
    assert_close(matcore.pinv(M, r=1), np.diag([1 / 3, 0, 0]))
    assert not matcore.pinv(M, r=0).any()


def test_factored_pinv_matches_pinv_of_the_product():
    L, R = _random(41, (4, 2)), _random(43, (2, 5))
    K = _random(42, (2, 2)) + 3 * np.eye(2)
    X = matcore.factored_pinv(L, np.linalg.inv(K), R)
    assert_close(X, matcore.pinv(L @ K @ R), atol=1e-8)
