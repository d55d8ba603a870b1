import numpy as np
import pytest

from conftest import assert_close, unit
from winverse.core import geninv, wgeninv
from winverse.core.matcore import (
    is_idempotent, null_space_equal, pinv, power_range_basis, range_equal, range_projector,
)
from winverse.core.wgeninv import REPRESENTATIONS, WeightedProblem
from winverse.utils.errors import ShapeError, WeightError
from winverse.utils.random_problems import ProblemSpec, random_problem

FIX1_W_DRAZIN = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 0, 0]]
FIX1_W_CORE_EP = [[0, 0, 0, 0], [0, 0.5, 0.5, 0], [0, 0, 0, 0]]
FIX1_M2 = [[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]]


def test_problem_validation(fix1_pair):
    A, W = fix1_pair
    with pytest.raises(ShapeError):
        WeightedProblem(A, A)
    with pytest.raises(WeightError):
        WeightedProblem(A, np.zeros_like(W))
    with pytest.raises(ValueError):
        WeightedProblem(A, W, 0)
    P = WeightedProblem(A, W, 2)
    assert (P.p, P.n, P.index_aw, P.index_wa, P.k) == (3, 4, 2, 3, 3)
    assert P.with_m(5).m == 5


def test_fix1_reference_values(fix1):
    assert_close(wgeninv.w_drazin(fix1), FIX1_W_DRAZIN)
    assert_close(wgeninv.w_core_ep(fix1), FIX1_W_CORE_EP)
    assert_close(wgeninv.w_m_weak_core(fix1), FIX1_M2)


def test_fix1_m2_differs_from_drazin_and_core_ep(fix1):
    X = wgeninv.w_m_weak_core(fix1)
    # entries (1, 3) and (1, 2) of the differences are exactly 1 and 0.5
    assert np.max(np.abs(X - wgeninv.w_drazin(fix1))) == pytest.approx(1.0)
    assert np.max(np.abs(X - wgeninv.w_core_ep(fix1))) == pytest.approx(0.5)


def test_fix2_reference_value(fix2):
    assert_close(wgeninv.w_m_weak_core(fix2), unit((4, 3), 0, 0))


def test_fix2_weighted_inverse_is_not_built_from_product_inverses(fix2):
    X = wgeninv.w_m_weak_core(fix2)
    aw_core = geninv.m_weak_core(fix2.AW, 2)
    squared_times_a = aw_core @ aw_core @ fix2.A
    times_w = X @ fix2.W
    assert_close(squared_times_a, [[1, 1, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0]])
    assert_close(times_w, [[1, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    assert np.max(np.abs(squared_times_a - X)) > 0.5
    assert np.max(np.abs(times_w - aw_core)) > 0.5


def test_fix2_m_equal_to_index_of_wa_gives_core_ep(fix2):
    assert fix2.index_wa == fix2.m
    assert_close(wgeninv.w_m_weak_core(fix2), wgeninv.w_core_ep(fix2))


@pytest.mark.parametrize("variant", REPRESENTATIONS)
def test_representations_on_fixtures(fix1, fix2, variant):
    for P in (fix1, fix2):
        assert_close(wgeninv.w_m_weak_core_rep(P, variant), wgeninv.w_m_weak_core(P))


def test_representations_agree_on_random_problems(corpus_problem):
    values = wgeninv.w_m_weak_core_all(corpus_problem)
    reference = values['definition']
    assert set(values) == set(REPRESENTATIONS)
    for value in values.values():
        assert_close(value, reference, atol=1e-7)


def test_unknown_representation(fix1):
    with pytest.raises(ValueError):
        wgeninv.w_m_weak_core_rep(fix1, 'prop_z')


def test_canonical_forms(corpus_problem):
    P = corpus_problem
    X = wgeninv.w_m_weak_core(P)
    assert_close(wgeninv.w_m_weak_core_canonical(P, commuted=True), X, atol=1e-7)
    assert_close(wgeninv.w_core_ep_canonical(P), wgeninv.w_core_ep(P), atol=1e-8)


def test_outer_inverse_representation(corpus_problem):
    P = corpus_problem
    X = wgeninv.w_m_weak_core(P)
    for Y in (wgeninv.w_drazin(P), wgeninv.w_core_ep(P), wgeninv.w_m_weak_group(P)):
        assert_close(wgeninv.w_m_weak_core_outer(P, Y), X, atol=1e-7)


def test_w_drazin_from_both_sides(corpus_problem):
    P = corpus_problem
    assert_close(wgeninv.w_drazin(P), wgeninv.w_drazin_dual(P), atol=1e-8)


def test_w_core_ep_is_bt_like_pseudoinverse(corpus_problem):
    P = corpus_problem
    expected = pinv(P.WAW @ P.aw_projector(P.k))
    assert_close(wgeninv.w_core_ep(P), expected, atol=1e-7)


def test_large_m_gives_w_core_ep(corpus_problem):
    P = corpus_problem
    for m in (P.k, P.k + 1, P.index_wa):
        Q = P.with_m(max(m, 1))
        if Q.m >= P.index_wa:
            assert_close(wgeninv.w_m_weak_core(Q), wgeninv.w_core_ep(Q), atol=1e-8)


def test_m_equal_one_is_weak_group_times_projector(corpus_problem):
    P = corpus_problem.with_m(1)
    expected = wgeninv.w_weak_group(P) @ range_projector(P.WA)
    assert_close(wgeninv.w_m_weak_core(P), expected)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_identity_weight_reduces_to_square_inverses(corpus_problem, m):
    A = corpus_problem.WA
    P = WeightedProblem(A, np.eye(A.shape[0]), m)
    assert_close(wgeninv.w_m_weak_core(P), geninv.m_weak_core(A, m), atol=1e-8)
    assert_close(wgeninv.w_m_weak_group(P), geninv.m_weak_group(A, m), atol=1e-8)
    assert_close(wgeninv.w_core_ep(P), geninv.core_ep(A), atol=1e-8)


def test_identity_weight_on_nonsingular_matrix():
    A = np.array([[2, 1], [1j, 3]])
    P = WeightedProblem(A, np.eye(2), 3)
    assert_close(wgeninv.w_m_weak_core(P), np.linalg.inv(A))


def test_projectors(corpus_problem):
    P = corpus_problem
    left, right = wgeninv.w_m_weak_core_projectors(P)
    assert is_idempotent(left, P.tol)
    assert is_idempotent(right, P.tol)
    assert range_equal(left, power_range_basis(P.WA, P.k).matrix, P.tol)
    assert range_equal(right, power_range_basis(P.AW, P.k).matrix, P.tol)


def test_w_m_weak_group_range(corpus_problem):
    P = corpus_problem
    assert range_equal(wgeninv.w_m_weak_group(P), power_range_basis(P.AW, P.k).matrix)
    assert range_equal(wgeninv.w_m_weak_core(P), power_range_basis(P.AW, P.k).matrix)


def test_zero_matrix_with_nonzero_weight():
    P = WeightedProblem(np.zeros((3, 2)), np.ones((2, 3)), 2)
    assert_close(wgeninv.w_m_weak_core(P), np.zeros((3, 2)))
    assert_close(wgeninv.w_core_ep(P), np.zeros((3, 2)))


def test_outer_inverse_null_operator_shape(fix1):
    G = wgeninv.outer_inverse_null_operator(fix1)
    assert G.shape == (4, 4)
    assert_close(G, G @ fix1.wa_projector(fix1.m))


def test_prop_a_on_fixtures(fix1, fix2):
    assert_close(wgeninv.w_m_weak_core_rep(fix1, 'prop_a'), FIX1_M2)
    assert_close(wgeninv.w_m_weak_core_rep(fix2, 'prop_a'), unit((4, 3), 0, 0))


def test_representations_agree_on_integer_problems(integer_problem):
    values = wgeninv.w_m_weak_core_all(integer_problem)
    reference = values['definition']
    for value in values.values():
        assert_close(value, reference, atol=1e-8)


def test_outer_inverse_null_rows_on_fixtures(fix1, fix2):
    for P in (fix1, fix2):
        rows = wgeninv.outer_inverse_null_rows(P)
        assert rows.shape == (P.wa_factors.t, P.n)
        assert null_space_equal(rows, wgeninv.outer_inverse_null_operator(P))
        assert null_space_equal(rows, wgeninv.w_m_weak_core(P))


def test_outer_inverse_null_rows_match_the_inverse(corpus_problem, integer_problem):
    for P in (corpus_problem, integer_problem):
        rows = wgeninv.outer_inverse_null_rows(P)
        assert null_space_equal(rows, wgeninv.w_m_weak_core(P), P.tol)


def test_empty_core_gives_zero_inverses():
    P = random_problem(ProblemSpec(seed=5, p=4, n=3, t=0))
    assert P.wa_factors.t == 0
    zero = np.zeros((4, 3))
    assert_close(wgeninv.w_m_weak_core(P), zero)
    assert_close(wgeninv.w_core_ep(P), zero)
    for value in wgeninv.w_m_weak_core_all(P).values():
        assert_close(value, zero)
