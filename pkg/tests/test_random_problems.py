import numpy as np
import pytest

from winverse.core.matcore import power_rank, rank
from winverse.utils.parallel import parallel_executor
from winverse.utils.random_problems import ProblemSpec, random_corpus, random_problem


def test_same_spec_gives_same_problem():
    spec = ProblemSpec(seed=42, p=5, n=3)
    first, second = random_problem(spec), random_problem(spec)
    np.testing.assert_array_equal(first.A, second.A)
    np.testing.assert_array_equal(first.W, second.W)
    assert first.m == second.m


@pytest.mark.parametrize("t", [0, 1, 2, 3])
def test_core_size_is_respected(t):
    P = random_problem(ProblemSpec(seed=t, p=4, n=3, t=t, m=1))
    assert power_rank(P.AW, P.k) == t
    assert power_rank(P.WA, P.k) == t
    assert 1 <= P.m


def test_deficient_weight_and_integer_kind():
    P = random_problem(ProblemSpec(seed=1, p=4, n=4, t=1, deficient_weight=True))
    assert rank(P.W) < 4
    Q = random_problem(ProblemSpec(seed=1, kind='integer'))
    np.testing.assert_array_equal(Q.A, np.round(Q.A.real))
    with pytest.raises(ValueError):
        random_problem(ProblemSpec(seed=1, kind='hermitian'))


def test_corpus():
    specs = random_corpus(6, seed=1, max_dim=4)
    assert len(specs) == 6
    assert all(2 <= s.p <= 4 and 2 <= s.n <= 4 for s in specs)
    assert [s.deficient_weight for s in specs] == [False, True] * 3
    assert random_corpus(6, seed=1, max_dim=4) == specs


def _square(x):
    if x < 0:
        raise ValueError("negative")
    return x * x


def test_parallel_executor_collects_results_and_failures():
    results, failed = parallel_executor(_square, [1, -2, 3], method='Thread', max_workers=2, bar=False)
    assert results == [1, None, 9]
    assert failed == [1]
