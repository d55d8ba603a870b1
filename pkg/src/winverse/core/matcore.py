"""
Dense complex matrix primitives.

Every other module works on plain two dimensional ``complex128`` numpy arrays
(the ``ComplexMatrix`` value type) and gets its spectral primitives from here:
numerical rank, Moore-Penrose inverse, index, orthogonal projectors and
subspace tests. All functions are pure; inputs are never modified.
"""
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from winverse.utils.errors import ShapeError, SingularBlockError

__all__ = [
    'Tolerance', 'DEFAULT_TOL', 'SubspaceBasis', 'as_matrix', 'as_vector', 'identity',
    'ctranspose', 'max_norm', 'spectral_norm', 'rank', 'pinv', 'factored_pinv', 'inverse',
    'matrix_power', 'index', 'power_range_basis', 'power_rank', 'power_range_projector',
    'orth_basis', 'range_projector', 'range_inclusion', 'range_equal', 'null_space_equal',
    'matrix_eq', 'is_idempotent', 'is_projector_onto', 'penrose_residuals',
]


@dataclass(frozen=True)
class Tolerance:
    """
    Numerical thresholds shared by all computations.

    Attributes:
        rank_rtol (float): Relative singular value cutoff. A singular value counts
            when it exceeds ``rank_rtol * sigma_max * max(rows, cols)``.
        eq_atol (float): Scale relative max-norm threshold for matrix equality.
    """
    rank_rtol: float = 1e-11
    eq_atol: float = 1e-9

    def __post_init__(self):
        if not (self.rank_rtol >= 0 and self.eq_atol >= 0):
            raise ValueError("Tolerances must be nonnegative.")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis of a subspace, stored column-wise."""
    matrix: np.ndarray
    dim: int


def as_matrix(M, name='matrix'):
    """
    Validate and convert input to a complex 2-D array.

    Args:
        M (array_like): Nested sequence or array.
        name (str): Name used in error messages.

    Returns:
        np.ndarray: complex128 array with ``ndim == 2``.

    Raises:
        ShapeError: If the input is not two dimensional.
        ValueError: If any entry is NaN or infinite.
    """
    arr = np.array(M, dtype=np.complex128)
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be two dimensional, got shape {arr.shape}.")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non finite entries.")
    return arr


def as_vector(b, length, name='vector'):
    """Convert ``b`` to a complex 1-D array of the given length."""
    arr = np.array(b, dtype=np.complex128).reshape(-1)
    if arr.shape[0] != length:
        raise ShapeError(f"{name} must have length {length}, got {arr.shape[0]}.")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non finite entries.")
    return arr


def identity(n):
    return np.eye(n, dtype=np.complex128)


def ctranspose(M):
    return np.conj(M).T


def max_norm(M):
    """Largest entry modulus, 0 for empty arrays."""
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.max(np.abs(M)))


def _svd(M):
    if min(M.shape) == 0:
        return (np.zeros((M.shape[0], 0), dtype=np.complex128), np.zeros(0),
                np.zeros((0, M.shape[1]), dtype=np.complex128))
    return linalg.svd(M, full_matrices=False)


def _cutoff(s, shape, tol, reference=None):
    top = s[0] if s.size else 0.0
    if reference is not None:
        top = max(top, reference)
    return tol.rank_rtol * top * max(shape)


def spectral_norm(M):
    """Largest singular value, 0 for empty arrays."""
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(linalg.svdvals(M)[0])


def rank(M, tol=DEFAULT_TOL, reference=None):
    """
    Numerical rank of ``M``.

    Counts singular values ``sigma_i > rank_rtol * sigma_max * max(rows, cols)``.
    Returns 0 for the zero matrix.

    Args:
        M (array_like): Any matrix.
        tol (Tolerance): Numerical thresholds.
        reference (float, optional): Largest singular value of an enclosing
            matrix. When ``M`` is a block of it, the cutoff is taken relative
            to ``max(sigma_max, reference)`` so that a block holding only
            rounding noise has rank 0.
    """
    M = np.asarray(M)
    if M.size == 0:
        return 0
    s = linalg.svdvals(M)
    if s[0] == 0:
        return 0
    return int(np.sum(s > _cutoff(s, M.shape, tol, reference)))


def pinv(M, tol=DEFAULT_TOL, reference=None, r=None):
    """
    Moore-Penrose inverse of ``M``.

    Uses the same cutoff as :func:`rank` so that ranks of ``M`` and of its
    pseudoinverse always agree. When the rank ``r`` is known from elsewhere the
    cutoff is skipped and the ``r`` leading singular triplets are inverted.
    """
    M = np.asarray(M, dtype=np.complex128)
    if M.size == 0 or max_norm(M) == 0 or r == 0:
        return np.zeros((M.shape[1], M.shape[0]), dtype=np.complex128)
    if r is not None:
        u, s, vh = _svd(M)
        return ctranspose(vh[:r]) @ np.diag(1.0 / s[:r]) @ ctranspose(u[:, :r])
    rtol = tol.rank_rtol * max(M.shape)
    atol = 0.0 if reference is None else rtol * reference
    return linalg.pinv(M, atol=atol, rtol=rtol)


def factored_pinv(left, core_inverse, right):
    """
    ``(left K right)^dagger = right^dagger K^-1 left^dagger`` for ``left`` of
    full column rank, ``right`` of full row rank and a nonsingular K given by
    its inverse.
    """
    r = core_inverse.shape[0]
    return pinv(right, r=r) @ core_inverse @ pinv(left, r=r)


def inverse(M, name='block'):
    """
    Inverse of a nonsingular square block, empty blocks allowed.

    Raises:
        SingularBlockError: If ``M`` is numerically singular.
    """
    M = np.asarray(M, dtype=np.complex128)
    if M.shape[0] != M.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {M.shape}.")
    if M.size == 0:
        return M.copy()
    try:
        return linalg.inv(M)
    except linalg.LinAlgError:
        raise SingularBlockError(f"{name} is singular.")


def matrix_power(M, ell):
    """``M**ell`` by repeated multiplication, with ``M**0`` the identity."""
    M = np.asarray(M, dtype=np.complex128)
    if M.shape[0] != M.shape[1]:
        raise ShapeError(f"Matrix power needs a square matrix, got shape {M.shape}.")
    if ell < 0:
        raise ValueError("Matrix power exponent must be nonnegative.")
    result = identity(M.shape[0])
    for _ in range(ell):
        result = result @ M
    return result


def _power_chain(A, tol, reference=None):
    """
    Orthonormal bases of R(A^0), R(A^1), ... up to the first repeated dimension.

    Each basis comes from ``A`` applied to the previous one, with the rank
    cutoff relative to ``max(|A|, reference)`` rather than to the norm of the
    power itself, so a power that vanishes in exact arithmetic gets dimension
    0 and small but genuine directions of an ill-conditioned power survive.
    """
    A = np.asarray(A, dtype=np.complex128)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeError(f"Matrix powers need a square matrix, got shape {A.shape}.")
    scale = max(spectral_norm(A), reference or 0.0)
    chain = [SubspaceBasis(matrix=identity(n), dim=n)]
    while True:
        basis = orth_basis(A @ chain[-1].matrix, tol, reference=scale)
        chain.append(basis)
        if basis.dim == chain[-2].dim:
            return chain


def index(A, tol=DEFAULT_TOL, reference=None):
    """
    Index of a square matrix: the smallest ``k >= 0`` with
    ``rank(A^k) == rank(A^(k+1))``.

    Ranks of the powers are those of :func:`power_range_basis`.
    """
    return len(_power_chain(A, tol, reference)) - 2


def power_range_basis(A, ell, tol=DEFAULT_TOL, reference=None):
    """
    Orthonormal basis of R(A^ell) for a square ``A``.

    Args:
        A (array_like): Square matrix.
        ell (int): Nonnegative exponent.
        tol (Tolerance): Numerical thresholds.
        reference (float, optional): Norm of an enclosing matrix when ``A`` is
            one of its blocks, see :func:`rank`.

    Returns:
        SubspaceBasis: The basis; its ``dim`` is rank(A^ell).
    """
    if ell < 0:
        raise ValueError("Matrix power exponent must be nonnegative.")
    chain = _power_chain(A, tol, reference)
    return chain[min(ell, len(chain) - 1)]


def power_rank(A, ell, tol=DEFAULT_TOL, reference=None):
    """rank(A^ell) from :func:`power_range_basis`."""
    return power_range_basis(A, ell, tol, reference).dim


def power_range_projector(A, ell, tol=DEFAULT_TOL, reference=None):
    """Orthogonal projector onto R(A^ell), see :func:`power_range_basis`."""
    basis = power_range_basis(A, ell, tol, reference).matrix
    return basis @ ctranspose(basis)


def orth_basis(M, tol=DEFAULT_TOL, reference=None):
    """Orthonormal basis of R(M) as a :class:`SubspaceBasis`."""
    M = np.asarray(M, dtype=np.complex128)
    u, s, _ = _svd(M)
    r = int(np.sum(s > _cutoff(s, M.shape, tol, reference))) if s.size and s[0] > 0 else 0
    return SubspaceBasis(matrix=u[:, :r], dim=r)


def range_projector(M, tol=DEFAULT_TOL, reference=None):
    """
    Orthogonal projector ``P_M = M M^dagger`` onto R(M).

    Built from the leading left singular vectors, which equals ``M @ pinv(M)``
    and is Hermitian to rounding. ``reference`` is passed on to the rank
    cutoff, see :func:`rank`.
    """
    basis = orth_basis(M, tol, reference).matrix
    return basis @ ctranspose(basis)


def range_inclusion(X, Y, tol=DEFAULT_TOL):
    """True iff R(X) is contained in R(Y)."""
    X, Y = np.asarray(X), np.asarray(Y)
    if X.shape[0] != Y.shape[0]:
        raise ShapeError(f"Range inclusion needs equal row counts, got {X.shape} and {Y.shape}.")
    outside = X - range_projector(Y, tol) @ X
    return max_norm(outside) <= tol.eq_atol * max(1.0, max_norm(X))


def range_equal(X, Y, tol=DEFAULT_TOL):
    """True iff R(X) == R(Y), by mutual inclusion."""
    return range_inclusion(X, Y, tol) and range_inclusion(Y, X, tol)


def _normalized(M):
    scale = max_norm(M)
    return M / scale if scale > 0 else M


def null_space_equal(X, Y, tol=DEFAULT_TOL):
    """
    True iff N(X) == N(Y).

    Tested through ranks: the null spaces agree exactly when
    ``rank(X) == rank(Y) == rank([X; Y])``. Each operand is scaled to unit
    max-norm first so that the shared relative cutoff sees both.
    """
    X, Y = np.asarray(X), np.asarray(Y)
    if X.shape[1] != Y.shape[1]:
        raise ShapeError(f"Null space test needs equal column counts, got {X.shape} and {Y.shape}.")
    X, Y = _normalized(X), _normalized(Y)
    r_stack = rank(np.vstack([X, Y]), tol)
    return rank(X, tol) == r_stack and rank(Y, tol) == r_stack


def matrix_eq(A, B, tol=DEFAULT_TOL):
    """
    Scale relative equality: ``max|A - B| <= eq_atol * max(1, |A|, |B|)``.

    Raises:
        ShapeError: If shapes differ.
    """
    A, B = np.asarray(A), np.asarray(B)
    if A.shape != B.shape:
        raise ShapeError(f"Cannot compare shapes {A.shape} and {B.shape}.")
    return max_norm(A - B) <= tol.eq_atol * max(1.0, max_norm(A), max_norm(B))


def is_idempotent(P, tol=DEFAULT_TOL):
    return matrix_eq(P @ P, P, tol)


def is_projector_onto(P, range_of, null_of, tol=DEFAULT_TOL):
    """
    Check that ``P`` is the projector onto R(range_of) along N(null_of).

    Args:
        P (np.ndarray): Candidate idempotent.
        range_of (np.ndarray): Matrix whose column space is the target range.
        null_of (np.ndarray): Matrix whose null space is the target kernel.
    """
    return (is_idempotent(P, tol)
            and range_equal(P, range_of, tol)
            and null_space_equal(P, null_of, tol))


def penrose_residuals(M, X):
    """Max-norm residuals of the four Penrose equations for candidate ``X``."""
    MX, XM = M @ X, X @ M
    return {
        'AXA=A': max_norm(MX @ M - M),
        'XAX=X': max_norm(XM @ X - X),
        '(AX)*=AX': max_norm(ctranspose(MX) - MX),
        '(XA)*=XA': max_norm(ctranspose(XM) - XM),
    }
