"""
Random (A, W) pairs for property tests and sweeps.

``canonical`` problems are assembled from the block form
``A = U [[A1, A2], [0, A3]] V*``, ``W = V [[W1, W2], [0, W3]] U*`` with random
unitaries, well conditioned A1 and W1, and A3, W3 triangular so that A3W3 and
W3A3 are nilpotent. The core size t (0 included) and both indices are then
known by construction and the power based representations stay accurate in
double precision. ``integer`` problems draw small integer matrices directly;
their cores are often ill-conditioned.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from winverse.core.decomp import upper_block
from winverse.core.matcore import DEFAULT_TOL, ctranspose
from winverse.core.wgeninv import WeightedProblem

PROBLEM_KINDS = ('canonical', 'integer')


@dataclass(frozen=True)
class ProblemSpec:
    """
    Recipe of one random problem.

    Attributes:
        seed (int): Seed of the generator; the same spec gives the same problem.
        p (int): Rows of A.
        n (int): Columns of A.
        t (int, optional): Size of the nonsingular core, random when None.
        m (int, optional): The parameter m, drawn from 1..k+2 when None.
        deficient_weight (bool): Zero the leading row and column of W3.
        kind (str): 'canonical' or 'integer'.
    """
    seed: int
    p: int = 4
    n: int = 3
    t: Optional[int] = None
    m: Optional[int] = None
    deficient_weight: bool = False
    kind: str = 'canonical'


def random_unitary(rng, n):
    """Haar distributed unitary from the QR factorization of a complex Gaussian matrix."""
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    phases = np.diagonal(R) / np.abs(np.diagonal(R))
    return Q * phases


def _complex_normal(rng, shape, scale):
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def _conditioned(rng, t):
    """Unitary times a diagonal with singular values in [0.8, 1.25]."""
    return random_unitary(rng, t) @ np.diag(rng.uniform(0.8, 1.25, t))


def _triangular(rng, rows, cols, strict):
    M = _complex_normal(rng, (rows, cols), 0.7)
    return np.triu(M, k=1 if strict else 0)


def _canonical_pair(rng, spec):
    p, n = spec.p, spec.n
    t = spec.t if spec.t is not None else int(rng.integers(0, min(p, n) + 1))
    A3 = _triangular(rng, p - t, n - t, strict=True)
    W3 = _triangular(rng, n - t, p - t, strict=False)
    if spec.deficient_weight and W3.size:
        W3[0, :] = 0
        W3[:, 0] = 0
    A_block = upper_block(_conditioned(rng, t), _complex_normal(rng, (t, n - t), 0.5), A3)
    W_block = upper_block(_conditioned(rng, t), _complex_normal(rng, (t, p - t), 0.5), W3)
    U, V = random_unitary(rng, p), random_unitary(rng, n)
    return U @ A_block @ ctranspose(V), V @ W_block @ ctranspose(U)


def _integer_pair(rng, spec):
    while True:
        A = rng.integers(-3, 4, (spec.p, spec.n)).astype(np.complex128)
        W = rng.integers(-3, 4, (spec.n, spec.p)).astype(np.complex128)
        if spec.deficient_weight:
            W[:, 0] = 0
        if np.any(W != 0):
            return A, W


def random_problem(spec, tol=DEFAULT_TOL):
    """
    Build the problem described by ``spec``.

    Returns:
        WeightedProblem: With m taken from the spec or drawn from 1..k+2.
    """
    rng = np.random.default_rng(spec.seed)
    if spec.kind == 'canonical':
        A, W = _canonical_pair(rng, spec)
    elif spec.kind == 'integer':
        A, W = _integer_pair(rng, spec)
    else:
        raise ValueError(f"Unknown problem kind {spec.kind!r}.")
    problem = WeightedProblem(A, W, 1, tol)
    m = spec.m if spec.m is not None else int(rng.integers(1, problem.k + 3))
    return problem.with_m(m)


def random_corpus(count, seed=0, max_dim=6, kind='canonical'):
    """
    Specs of ``count`` problems with p, n in 2..max_dim; every other problem
    gets a rank deficient weight.

    ``kind='mixed'`` alternates pairs of canonical and integer problems, so
    both kinds appear with and without a deficient weight.
    """
    if kind not in PROBLEM_KINDS + ('mixed',):
        raise ValueError(f"Unknown problem kind {kind!r}.")
    rng = np.random.default_rng(seed)
    specs = []
    for i in range(count):
        p, n = (int(v) for v in rng.integers(2, max_dim + 1, 2))
        specs.append(ProblemSpec(
            seed=int(rng.integers(0, 2**31 - 1)), p=p, n=n,
            deficient_weight=bool(i % 2),
            kind=PROBLEM_KINDS[(i // 2) % 2] if kind == 'mixed' else kind,
        ))
    return specs
