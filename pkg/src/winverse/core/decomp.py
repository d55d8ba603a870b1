"""
Core-EP decomposition of a square matrix and the simultaneous unitary block
upper triangularization of a pair (A, W).
"""
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from winverse.core.matcore import (
    DEFAULT_TOL, as_matrix, ctranspose, factored_pinv, identity, index, inverse, matrix_power,
    max_norm, pinv, power_rank, range_projector, rank, spectral_norm,
)
from winverse.utils.errors import DecompositionError, ShapeError, SingularBlockError, WeightError

__all__ = [
    'block2x2', 'upper_block', 'CoreEPFactors', 'WeightedPairFactors', 'core_ep_decompose',
    'weighted_pair_decompose', 'power_pinv', 'power_gram_pinv', 'tilde_sum', 'tilde_sums',
    'pair_product_factors', 'pair_power', 'block_triangular_pinv', 'triangular_projector',
]


def block2x2(top_left, top_right, bottom_left, bottom_right):
    """Assemble a 2x2 block matrix; empty blocks are allowed."""
    return np.block([[top_left, top_right], [bottom_left, bottom_right]])


def upper_block(T, S, N):
    """``[[T, S], [0, N]]``."""
    return block2x2(T, S, np.zeros((N.shape[0], T.shape[1]), dtype=np.complex128), N)


@dataclass(frozen=True, eq=False)
class CoreEPFactors:
    """
    Core-EP decomposition ``A = U [[T, S], [0, N]] U*``.

    Attributes:
        U (np.ndarray): Unitary n x n.
        T (np.ndarray): Nonsingular t x t block.
        S (np.ndarray): t x (n-t) block.
        N (np.ndarray): Nilpotent (n-t) x (n-t) block.
        t (int): rank(A^k).
        k (int): Index of the decomposed matrix.
    """
    U: np.ndarray
    T: np.ndarray
    S: np.ndarray
    N: np.ndarray
    t: int
    k: int

    @property
    def n(self):
        return self.U.shape[0]

    def block(self):
        return upper_block(self.T, self.S, self.N)

    def reconstruct(self):
        return self.U @ self.block() @ ctranspose(self.U)

    def tail(self, ell=None):
        """
        ``Z_ell = sum_{i < min(ell, k)} T^-(i+1) S N^i``, so that the top-right
        block of the block form of A^ell is ``T^ell Z_ell``. ``ell`` defaults to k.
        """
        ell = self.k if ell is None else min(ell, self.k)
        T_inv = inverse(self.T, 'T')
        total = np.zeros(self.S.shape, dtype=np.complex128)
        left, right = T_inv, identity(self.n - self.t)
        for _ in range(ell):
            total = total + left @ self.S @ right
            left, right = left @ T_inv, right @ self.N
        return total

    def row_factor(self):
        """
        ``R = [I_t, Z_k] U*``, the full row rank factor of
        ``A^ell = U[:, :t] T^ell R`` for every ``ell >= k``.
        """
        return np.hstack([identity(self.t), self.tail()]) @ ctranspose(self.U)


@dataclass(frozen=True, eq=False)
class WeightedPairFactors:
    """
    Simultaneous decomposition ``A = U [[A1, A2], [0, A3]] V*`` and
    ``W = V [[W1, W2], [0, W3]] U*`` of a p x n matrix A and an n x p weight W.

    ``index_aw`` and ``index_wa`` are Ind(AW) and Ind(WA); ``k`` is their maximum.
    """
    U: np.ndarray
    V: np.ndarray
    A1: np.ndarray
    A2: np.ndarray
    A3: np.ndarray
    W1: np.ndarray
    W2: np.ndarray
    W3: np.ndarray
    t: int
    index_aw: int
    index_wa: int

    @property
    def k(self):
        return max(self.index_aw, self.index_wa)

    def reconstruct_A(self):
        return self.U @ upper_block(self.A1, self.A2, self.A3) @ ctranspose(self.V)

    def reconstruct_W(self):
        return self.V @ upper_block(self.W1, self.W2, self.W3) @ ctranspose(self.U)


def _sort_cut(A, t):
    """Eigenvalue magnitude separating the t largest eigenvalues from the rest."""
    mags = np.sort(np.abs(linalg.eigvals(A)))[::-1]
    if mags[t] > 0:
        return float(np.sqrt(mags[t - 1] * mags[t]))
    return 0.5 * float(mags[t - 1])


def core_ep_decompose(A, tol=DEFAULT_TOL):
    """
    Core-EP decomposition of a square matrix from an ordered complex Schur form.

    The size ``t`` of the nonsingular block is fixed as rank(A^k), k = Ind(A),
    both read off the chain of power ranges (see ``matcore.power_range_basis``).
    Eigenvalues are then reordered so that the t of largest modulus lead the
    Schur form: the leading t x t triangle is T, the trailing one is N.

    Args:
        A (array_like): Square matrix.
        tol (Tolerance): Numerical thresholds.

    Returns:
        CoreEPFactors: The factors.

    Raises:
        ShapeError: If A is not square.
        DecompositionError: If reordering does not isolate exactly t eigenvalues.
    """
    A = as_matrix(A, 'A')
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeError(f"Core-EP decomposition needs a square matrix, got shape {A.shape}.")
    if n == 0:
        empty = np.zeros((0, 0), dtype=np.complex128)
        return CoreEPFactors(U=empty, T=empty, S=empty, N=empty, t=0, k=0)

    k = index(A, tol)
    t = power_rank(A, k, tol)
    if t in (0, n):
        schur_form, U = linalg.schur(A, output='complex')
    else:
        cut = _sort_cut(A, t)
        schur_form, U, sdim = linalg.schur(A, output='complex', sort=lambda x: abs(x) > cut)
        if sdim != t:
            raise DecompositionError(
                f"Schur reordering selected {sdim} eigenvalues, expected rank(A^{k}) = {t}.")

    T = schur_form[:t, :t]
    if t and np.linalg.cond(T) > 1.0 / np.sqrt(tol.rank_rtol):
        warnings.warn("Nonsingular core-EP block is ill-conditioned.", RuntimeWarning)
    return CoreEPFactors(U=U, T=T, S=schur_form[:t, t:], N=schur_form[t:, t:], t=t, k=k)


def weighted_pair_decompose(A, W, tol=DEFAULT_TOL):
    """
    Simultaneous unitary block upper triangularization of (A, W).

    U comes from the core-EP decomposition of AW and V from that of WA. Since
    A maps R((WA)^k) into R((AW)^k) and W maps R((AW)^k) into R((WA)^k), the
    lower-left blocks of U* A V and V* W U vanish; they are checked against
    ``eq_atol`` and then set to exact zero.

    Raises:
        ShapeError: If W is not n x p for a p x n matrix A.
        WeightError: If W is zero.
        DecompositionError: If rank((AW)^k) and rank((WA)^k) disagree numerically,
            or a lower-left block is not negligible.
    """
    A, W = as_matrix(A, 'A'), as_matrix(W, 'W')
    p, n = A.shape
    if W.shape != (n, p):
        raise ShapeError(f"W must have shape {(n, p)} for A of shape {A.shape}, got {W.shape}.")
    if max_norm(W) <= tol.eq_atol:
        raise WeightError("weight matrix must be nonzero")

    aw = core_ep_decompose(A @ W, tol)
    wa = core_ep_decompose(W @ A, tol)
    if aw.t != wa.t:
        raise DecompositionError(
            f"rank((AW)^k) = {aw.t} differs from rank((WA)^k) = {wa.t}; "
            "check the rank tolerance.")
    t, U, V = aw.t, aw.U, wa.U

    a_blocks = ctranspose(U) @ A @ V
    w_blocks = ctranspose(V) @ W @ U
    scale = max(1.0, max_norm(A), max_norm(W))
    lower = max(max_norm(a_blocks[t:, :t]), max_norm(w_blocks[t:, :t]))
    if lower > tol.eq_atol * scale:
        raise DecompositionError(f"Lower-left blocks are not negligible (max {lower:.3e}).")

    return WeightedPairFactors(
        U=U, V=V,
        A1=a_blocks[:t, :t], A2=a_blocks[:t, t:], A3=a_blocks[t:, t:],
        W1=w_blocks[:t, :t], W2=w_blocks[:t, t:], W3=w_blocks[t:, t:],
        t=t, index_aw=aw.k, index_wa=wa.k,
    )


def power_pinv(A, ell, tol=DEFAULT_TOL, factors=None):
    """
    Moore-Penrose inverse of ``A^ell`` without a singular value cutoff on the power.

    For ``ell >= k`` it is ``R^dagger T^-ell U[:, :t]*`` from the full rank
    factorization ``A^ell = U[:, :t] T^ell R`` (see
    :meth:`CoreEPFactors.row_factor`). Lower powers are pseudoinverted at
    their known rank ``t + rank(N^ell)``.

    Args:
        A (array_like): Square matrix.
        ell (int): Nonnegative exponent.
        tol (Tolerance): Numerical thresholds.
        factors (CoreEPFactors, optional): Core-EP factors of A.
    """
    f = factors if factors is not None else core_ep_decompose(A, tol)
    if ell >= f.k:
        T_inv_ell = matrix_power(inverse(f.T, 'T'), ell)
        return factored_pinv(f.U[:, :f.t], T_inv_ell, f.row_factor())
    r = f.t + power_rank(f.N, ell, tol, reference=spectral_norm(f.block()))
    return pinv(matrix_power(A, ell), r=r)


def power_gram_pinv(factors, k, q, right=None):
    """
    Moore-Penrose inverse of ``(A^k)* A^q right`` for ``k, q >= Ind(A)``.

    Both powers share the factor ``U[:, :t]``, which has orthonormal columns,
    so the product is ``R* (T^k)* T^q (R right)`` and its inverse is assembled
    from those three factors. ``R right`` must have full row rank t.

    Args:
        factors (CoreEPFactors): Core-EP factors of A.
        k (int): Exponent of the adjoint power.
        q (int): Exponent of the plain power.
        right (np.ndarray, optional): Right factor, the identity when None.
    """
    f = factors
    if min(k, q) < f.k:
        raise ValueError(f"Exponents must be at least Ind(A) = {f.k}, got {k} and {q}.")
    R = f.row_factor()
    T_inv = inverse(f.T, 'T')
    core_inverse = matrix_power(T_inv, q) @ ctranspose(matrix_power(T_inv, k))
    return factored_pinv(ctranspose(R), core_inverse, R if right is None else R @ right)


def tilde_sum(left, coupling, right, ell):
    """``sum_{j<ell} left^j coupling right^(ell-1-j)``."""
    total = np.zeros(coupling.shape, dtype=np.complex128)
    for j in range(ell):
        total = total + matrix_power(left, j) @ coupling @ matrix_power(right, ell - 1 - j)
    return total


def tilde_sums(factors, ell):
    """
    Top-right blocks of (AW)^ell and (WA)^ell in the pair decomposition.

    Returns:
        tuple: ``(S_ell, T_ell)`` with
        ``S_ell = sum_j (A1W1)^j (A1W2 + A2W3) (A3W3)^(ell-1-j)`` and
        ``T_ell = sum_j (W1A1)^j (W1A2 + W2A3) (W3A3)^(ell-1-j)``.
    """
    if ell < 1:
        raise ValueError("ell must be a positive integer.")
    f = factors
    s_ell = tilde_sum(f.A1 @ f.W1, f.A1 @ f.W2 + f.A2 @ f.W3, f.A3 @ f.W3, ell)
    t_ell = tilde_sum(f.W1 @ f.A1, f.W1 @ f.A2 + f.W2 @ f.A3, f.W3 @ f.A3, ell)
    return s_ell, t_ell


def pair_product_factors(factors, side):
    """
    Core-EP factors of AW (``side='aw'``, unitary U) or WA (``side='wa'``,
    unitary V) read off the pair decomposition.
    """
    f = factors
    if side == 'aw':
        return CoreEPFactors(U=f.U, T=f.A1 @ f.W1, S=f.A1 @ f.W2 + f.A2 @ f.W3,
                             N=f.A3 @ f.W3, t=f.t, k=f.index_aw)
    if side == 'wa':
        return CoreEPFactors(U=f.V, T=f.W1 @ f.A1, S=f.W1 @ f.A2 + f.W2 @ f.A3,
                             N=f.W3 @ f.A3, t=f.t, k=f.index_wa)
    raise ValueError(f"side must be 'aw' or 'wa', got {side!r}.")


def pair_power(factors, ell, side):
    """(AW)^ell or (WA)^ell assembled from the blocks and the tilde sums."""
    product = pair_product_factors(factors, side)
    s_ell, t_ell = tilde_sums(factors, ell)
    top_right = s_ell if side == 'aw' else t_ell
    block = upper_block(matrix_power(product.T, ell), top_right, matrix_power(product.N, ell))
    return product.U @ block @ ctranspose(product.U)


def block_triangular_pinv(A1, A2, A3, U, V, tol=DEFAULT_TOL):
    """
    Moore-Penrose inverse of ``U [[A1, A2], [0, A3]] V*`` with A1 nonsingular.

    With ``Q = A3^dagger A3`` and
    ``Omega = (A1 A1* + A2 (I - Q) A2*)^-1`` the inverse is
    ``V [[A1* Omega, -A1* Omega A2 A3^dagger],
    [(I - Q) A2* Omega, A3^dagger - (I - Q) A2* Omega A2 A3^dagger]] U*``.

    Raises:
        SingularBlockError: If A1 is singular.
    """
    A1, A2, A3 = (np.asarray(M, dtype=np.complex128) for M in (A1, A2, A3))
    t = A1.shape[0]
    if t and rank(A1, tol) < t:
        raise SingularBlockError("A1 is singular.")
    A3_pinv = pinv(A3, tol, reference=spectral_norm(upper_block(A1, A2, A3)))
    complement = identity(A3.shape[1]) - A3_pinv @ A3
    omega = inverse(A1 @ ctranspose(A1) + A2 @ complement @ ctranspose(A2), 'Omega')
    A1h_omega = ctranspose(A1) @ omega
    lower_left = complement @ ctranspose(A2) @ omega
    block = block2x2(
        A1h_omega, -A1h_omega @ A2 @ A3_pinv,
        lower_left, A3_pinv - lower_left @ A2 @ A3_pinv,
    )
    return V @ block @ ctranspose(U)


def triangular_projector(A3, U, t, tol=DEFAULT_TOL, reference=None):
    """
    Projector ``P_A = U diag(I_t, P_A3) U*`` of a block triangular A.

    ``reference`` should be the largest singular value of A so that a block
    A3 that vanishes in exact arithmetic projects to zero.
    """
    rest = A3.shape[0]
    block = block2x2(identity(t), np.zeros((t, rest), dtype=np.complex128),
                     np.zeros((rest, t), dtype=np.complex128), range_projector(A3, tol, reference))
    return U @ block @ ctranspose(U)
