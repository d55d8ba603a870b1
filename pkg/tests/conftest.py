import numpy as np
import pytest

from winverse.core.matcore import DEFAULT_TOL, max_norm
from winverse.core.wgeninv import WeightedProblem
from winverse.io.matrix_file import load_fixture
from winverse.utils.random_problems import random_corpus, random_problem

CORPUS = random_corpus(24, seed=2024, max_dim=5)
INTEGER_CORPUS = random_corpus(16, seed=7, max_dim=6, kind='integer')


def assert_close(actual, expected, atol=1e-9):
    """Scale relative max-norm comparison used across the suite."""
    actual, expected = np.asarray(actual), np.asarray(expected)
    assert actual.shape == expected.shape
    scale = max(1.0, max_norm(actual), max_norm(expected))
    assert max_norm(actual - expected) <= atol * scale


def unit(shape, i, j):
    """Matrix of the given shape with a single 1 at (i, j)."""
    M = np.zeros(shape, dtype=np.complex128)
    M[i, j] = 1
    return M


@pytest.fixture
def fix1_pair():
    return load_fixture('fix1_A'), load_fixture('fix1_W')


@pytest.fixture
def fix2_pair():
    return load_fixture('fix2_A'), load_fixture('fix2_W')


@pytest.fixture
def fix1(fix1_pair):
    A, W = fix1_pair
    return WeightedProblem(A, W, 2, DEFAULT_TOL)


@pytest.fixture
def fix2(fix2_pair):
    A, W = fix2_pair
    return WeightedProblem(A, W, 2, DEFAULT_TOL)


@pytest.fixture
def fix3_B():
    return load_fixture('fix3_B')


@pytest.fixture(params=CORPUS, ids=lambda spec: f"seed{spec.seed}-{spec.p}x{spec.n}")
def corpus_problem(request):
    return random_problem(request.param)


@pytest.fixture(params=INTEGER_CORPUS, ids=lambda spec: f"int{spec.seed}-{spec.p}x{spec.n}")
def integer_problem(request):
    return random_problem(request.param)
