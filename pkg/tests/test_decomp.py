import numpy as np
import pytest

from conftest import assert_close
from winverse.core import decomp
from winverse.core.matcore import (
    ctranspose, identity, matrix_power, max_norm, penrose_residuals, pinv, power_rank,
    range_projector, rank, spectral_norm,
)
from winverse.utils.errors import ShapeError, SingularBlockError, WeightError
from winverse.utils.random_problems import random_unitary

J3 = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=complex)


def _assert_unitary(U):
    assert_close(ctranspose(U) @ U, identity(U.shape[0]))


def test_core_ep_of_identity_has_no_nilpotent_part():
    f = decomp.core_ep_decompose(np.eye(3))
    assert (f.t, f.k) == (3, 0)
    assert f.N.shape == (0, 0)
    assert_close(f.reconstruct(), np.eye(3))


def test_core_ep_of_nilpotent_has_no_core():
    f = decomp.core_ep_decompose(J3)
    assert (f.t, f.k) == (0, 3)
    assert f.T.shape == (0, 0)
    assert_close(f.reconstruct(), J3)
    assert_close(matrix_power(f.N, 3), np.zeros((3, 3)))


def test_core_ep_of_fixture_product(fix2_pair):
    A, W = fix2_pair
    f = decomp.core_ep_decompose(A @ W)
    assert (f.t, f.k) == (1, 3)
    _assert_unitary(f.U)
    assert_close(f.reconstruct(), A @ W)
    assert_close(matrix_power(f.N, 3), np.zeros((3, 3)))
    assert rank(matrix_power(f.N, 2)) == 1


def test_core_ep_needs_square_matrix():
    with pytest.raises(ShapeError):
        decomp.core_ep_decompose(np.ones((2, 3)))


def test_core_ep_of_random_square(corpus_problem):
    WA = corpus_problem.WA
    f = decomp.core_ep_decompose(WA)
    _assert_unitary(f.U)
    assert_close(f.reconstruct(), WA)
    assert f.t == power_rank(WA, f.k)
    assert rank(f.T) == f.t
    assert_close(matrix_power(f.N, f.k), np.zeros(f.N.shape), atol=1e-8)


def test_pair_decomposition_of_fixtures(fix1_pair, fix2_pair):
    f = decomp.weighted_pair_decompose(*fix1_pair)
    assert (f.t, f.index_aw, f.index_wa, f.k) == (1, 2, 3, 3)
    f = decomp.weighted_pair_decompose(*fix2_pair)
    assert (f.t, f.index_aw, f.index_wa, f.k) == (1, 3, 2, 3)
    assert_close(matrix_power(f.A3 @ f.W3, 3), np.zeros((3, 3)))
    assert rank(matrix_power(f.A3 @ f.W3, 2)) == 1
    assert_close(matrix_power(f.W3 @ f.A3, 2), np.zeros((2, 2)))


def test_pair_decomposition_reconstructs(corpus_problem):
    P = corpus_problem
    f = decomp.weighted_pair_decompose(P.A, P.W, P.tol)
    _assert_unitary(f.U)
    _assert_unitary(f.V)
    assert_close(f.reconstruct_A(), P.A)
    assert_close(f.reconstruct_W(), P.W)
    assert (f.index_aw, f.index_wa) == (P.index_aw, P.index_wa)
    assert rank(f.A1) == rank(f.W1) == f.t
    assert_close(matrix_power(f.A3 @ f.W3, P.index_aw), np.zeros((P.p - f.t,) * 2), atol=1e-8)
    assert_close(matrix_power(f.W3 @ f.A3, P.index_wa), np.zeros((P.n - f.t,) * 2), atol=1e-8)


def test_pair_decomposition_validates_inputs(fix1_pair):
    A, W = fix1_pair
    with pytest.raises(ShapeError):
        decomp.weighted_pair_decompose(A, W.T)
    with pytest.raises(WeightError, match="weight matrix must be nonzero"):
        decomp.weighted_pair_decompose(A, np.zeros_like(W))


def test_tilde_sums_base_case(fix1_pair):
    f = decomp.weighted_pair_decompose(*fix1_pair)
    s_1, t_1 = decomp.tilde_sums(f, 1)
    assert_close(s_1, f.A1 @ f.W2 + f.A2 @ f.W3)
    assert_close(t_1, f.W1 @ f.A2 + f.W2 @ f.A3)
    with pytest.raises(ValueError):
        decomp.tilde_sums(f, 0)


@pytest.mark.parametrize("ell", [1, 2, 3, 5])
def test_pair_power_matches_matrix_power(corpus_problem, ell):
    P = corpus_problem
    f = decomp.weighted_pair_decompose(P.A, P.W, P.tol)
    assert_close(decomp.pair_power(f, ell, 'aw'), P.aw_power(ell), atol=1e-8)
    assert_close(decomp.pair_power(f, ell, 'wa'), P.wa_power(ell), atol=1e-8)


def test_pair_product_factors_rejects_unknown_side(fix1_pair):
    f = decomp.weighted_pair_decompose(*fix1_pair)
    with pytest.raises(ValueError):
        decomp.pair_product_factors(f, 'aa')


def test_block_triangular_pinv(fix1_pair, fix2_pair, corpus_problem):
    for A, W in (fix1_pair, fix2_pair, (corpus_problem.A, corpus_problem.W)):
        f = decomp.weighted_pair_decompose(A, W)
        X = decomp.block_triangular_pinv(f.A1, f.A2, f.A3, f.U, f.V)
        assert_close(X, pinv(A), atol=1e-8)


def test_block_triangular_pinv_of_block_diagonal():
    rng = np.random.default_rng(5)
    A1 = rng.standard_normal((2, 2)) + 2 * np.eye(2)
    X = decomp.block_triangular_pinv(A1, np.zeros((2, 1)), np.zeros((1, 1)), np.eye(3), np.eye(3))
    expected = np.zeros((3, 3), dtype=complex)
    expected[:2, :2] = np.linalg.inv(A1)
    assert_close(X, expected)
    with pytest.raises(SingularBlockError):
        decomp.block_triangular_pinv(np.zeros((2, 2)), np.zeros((2, 1)), np.zeros((1, 1)),
                                     np.eye(3), np.eye(3))


def test_triangular_projector(corpus_problem):
    P = corpus_problem
    f = decomp.weighted_pair_decompose(P.A, P.W, P.tol)
    projector = decomp.triangular_projector(f.A3, f.U, f.t, reference=spectral_norm(P.A))
    assert_close(projector, range_projector(P.A), atol=1e-8)



def test_core_ep_of_rotated_nilpotent():
    Q = random_unitary(np.random.default_rng(8), 3)
    A = Q @ J3 @ ctranspose(Q)
    f = decomp.core_ep_decompose(A)
    assert (f.t, f.k) == (0, 3)
    assert_close(f.reconstruct(), A)


def test_row_factor_reproduces_high_powers(corpus_problem):
    WA = corpus_problem.WA
    f = decomp.core_ep_decompose(WA)
    R = f.row_factor()
    assert R.shape == (f.t, f.n)
    for ell in (f.k, f.k + 2):
        expected = f.U[:, :f.t] @ matrix_power(f.T, ell) @ R
        assert_close(expected, matrix_power(WA, ell), atol=1e-8)


@pytest.mark.parametrize("ell", [0, 1, 2, 3, 6])
def test_power_pinv_satisfies_penrose_equations(corpus_problem, ell):
    WA = corpus_problem.WA
    M = matrix_power(WA, ell)
    X = decomp.power_pinv(WA, ell)
    scale = max(1.0, max_norm(M), max_norm(X))
    for label, value in penrose_residuals(M, X).items():
        assert value / scale < 1e-8, label


def test_power_pinv_keeps_small_singular_values():
    A = np.array([[20, 0, 1], [0, 0.05, 1], [0, 0, 0]], dtype=complex)
    # A (A^6)^dagger = diag(20^-5, 0.05^-5, 0)
    assert_close(A @ decomp.power_pinv(A, 6), np.diag([20.0 ** -5, 20.0 ** 5, 0]))
    assert_close(A @ decomp.power_pinv(A, 3), np.diag([20.0 ** -2, 20.0 ** 2, 0]))


def test_power_pinv_of_rotated_nilpotent_vanishes():
    Q = random_unitary(np.random.default_rng(9), 3)
    A = Q @ J3 @ ctranspose(Q)
    assert_close(decomp.power_pinv(A, 3), np.zeros((3, 3)))
    assert_close(decomp.power_pinv(A, 1), pinv(A), atol=1e-8)


@pytest.mark.parametrize("extra", [0, 2])
def test_power_gram_pinv_matches_explicit_product(corpus_problem, extra):
    P = corpus_problem
    f = decomp.core_ep_decompose(P.WA)
    k, q = P.k, P.k + extra + 1
    product = ctranspose(matrix_power(P.WA, k)) @ matrix_power(P.WA, q) @ P.W
    reference = spectral_norm(P.WA) ** (k + q) * spectral_norm(P.W)
    expected = pinv(product, reference=reference)
    assert_close(decomp.power_gram_pinv(f, k, q, right=P.W), expected, atol=1e-7)


def test_power_gram_pinv_needs_exponents_above_the_index(fix1_pair):
    A, W = fix1_pair
    f = decomp.core_ep_decompose(W @ A)
    with pytest.raises(ValueError):
        decomp.power_gram_pinv(f, f.k - 1, f.k)
