"""
W-weighted generalized inverses of rectangular matrices.

A is p x n and the weight W is a nonzero n x p matrix. All weighted inverses
are p x n. The central object is the W-weighted m-weak core inverse
``A^{#m,W} = A^{wg m,W} P_{(WA)^m}``, available through every known
representation so they can be cross-validated.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from winverse.core import geninv
from winverse.core.decomp import (
    block2x2, core_ep_decompose, pair_product_factors, power_gram_pinv, power_pinv,
    weighted_pair_decompose,
)
from winverse.core.matcore import (
    DEFAULT_TOL, as_matrix, ctranspose, identity, index, inverse, matrix_power, max_norm,
    power_range_projector, spectral_norm,
)
from winverse.utils.errors import ShapeError, WeightError

__all__ = [
    'REPRESENTATIONS', 'WeightedProblem', 'w_drazin', 'w_drazin_dual', 'w_core_ep',
    'w_m_weak_group', 'w_weak_group', 'w_m_weak_core', 'w_m_weak_core_canonical',
    'w_core_ep_canonical', 'outer_inverse_null_operator', 'outer_inverse_null_rows',
    'w_m_weak_core_rep', 'w_m_weak_core_outer', 'w_m_weak_core_all', 'w_m_weak_core_projectors',
]

REPRESENTATIONS = (
    'definition', 'prop_a', 'prop_b', 'prop_c', 'prop_d', 'prop_e', 'prop_f',
    'prop_g', 'prop_h', 'prop_i', 'urquhart', 'canonical',
)


@dataclass(frozen=True, eq=False)
class WeightedProblem:
    """
    The data (A, W, m) of a weighted inverse computation.

    ``k = max(Ind(AW), Ind(WA))`` is computed once on construction, along
    with the two indices.

    Attributes:
        A (np.ndarray): p x n matrix.
        W (np.ndarray): Nonzero n x p weight.
        m (int): Positive integer parameter.
        tol (Tolerance): Numerical thresholds.
    """
    A: np.ndarray
    W: np.ndarray
    m: int = 1
    tol: object = DEFAULT_TOL
    index_aw: int = field(init=False)
    index_wa: int = field(init=False)

    def __post_init__(self):
        A, W = as_matrix(self.A, 'A'), as_matrix(self.W, 'W')
        p, n = A.shape
        if W.shape != (n, p):
            raise ShapeError(f"W must have shape {(n, p)} for A of shape {A.shape}, got {W.shape}.")
        if max_norm(W) <= self.tol.eq_atol:
            raise WeightError("weight matrix must be nonzero")
        object.__setattr__(self, 'A', A)
        object.__setattr__(self, 'W', W)
        object.__setattr__(self, 'm', geninv.check_m(self.m))
        object.__setattr__(self, 'index_aw', index(A @ W, self.tol))
        object.__setattr__(self, 'index_wa', index(W @ A, self.tol))

    @property
    def k(self):
        return max(self.index_aw, self.index_wa)

    @property
    def p(self):
        return self.A.shape[0]

    @property
    def n(self):
        return self.A.shape[1]

    @property
    def AW(self):
        return self.A @ self.W

    @property
    def WA(self):
        return self.W @ self.A

    @property
    def WAW(self):
        return self.W @ self.A @ self.W

    def with_m(self, m):
        """Same (A, W) with another m."""
        return WeightedProblem(self.A, self.W, m, self.tol)

    def wa_power(self, ell):
        return matrix_power(self.WA, ell)

    def aw_power(self, ell):
        return matrix_power(self.AW, ell)

    @cached_property
    def wa_factors(self):
        """Core-EP factors of WA, shared by the power based representations."""
        return core_ep_decompose(self.WA, self.tol)

    def wa_projector(self, ell):
        """Orthogonal projector onto R((WA)^ell)."""
        return power_range_projector(self.WA, ell, self.tol)

    def aw_projector(self, ell):
        """Orthogonal projector onto R((AW)^ell)."""
        return power_range_projector(self.AW, ell, self.tol)

    def wa_power_pinv(self, ell):
        """``((WA)^ell)^dagger`` from the core-EP factors of WA."""
        return power_pinv(self.WA, ell, self.tol, self.wa_factors)


def w_drazin(P):
    """W-weighted Drazin inverse ``A ((WA)^d)^2``."""
    D = geninv.drazin(P.WA, P.tol, P.wa_factors)
    return P.A @ D @ D


def w_drazin_dual(P):
    """The same inverse from the other side, ``((AW)^d)^2 A``."""
    D = geninv.drazin(P.AW, P.tol)
    return D @ D @ P.A


def w_core_ep(P):
    """W-weighted core-EP inverse ``A ((WA)^core-EP)^2``."""
    C = geninv.core_ep(P.WA, P.tol, P.wa_factors)
    return P.A @ C @ C


def w_m_weak_group(P):
    """W-weighted m-weak group inverse ``(A^{cep,W} W)^(m+1) (AW)^(m-1) A``."""
    m = P.m
    return matrix_power(w_core_ep(P) @ P.W, m + 1) @ P.aw_power(m - 1) @ P.A


def w_weak_group(P):
    return w_m_weak_group(P.with_m(1))


def w_m_weak_core(P):
    """W-weighted m-weak core inverse ``A^{wg m,W} P_{(WA)^m}``."""
    return w_m_weak_group(P) @ P.wa_projector(P.m)


def w_m_weak_core_canonical(P, factors=None, commuted=False):
    """
    Canonical form from the pair decomposition:
    ``U [[(W1A1W1)^-1, (A1W1)^-(m+1) W1^-1 T_m P_{(W3A3)^m}], [0, 0]] V*``.

    With ``commuted=True`` the top-right block is written
    ``W1^-1 (W1A1)^-(m+1) T_m P_{(W3A3)^m}``; both agree because
    ``W1 (A1W1)^(m+1) = (W1A1)^(m+1) W1``. The power sum is carried as
    ``T_m = (W1A1)^m Z_m`` (see :meth:`CoreEPFactors.tail` on the WA factors),
    which leaves ``(A1W1)^-1 W1^-1 Z_m`` and ``W1^-1 (W1A1)^-1 Z_m``.
    """
    f = factors or weighted_pair_decompose(P.A, P.W, P.tol)
    m, t = P.m, f.t
    W1_inv = inverse(f.W1, 'W1')
    z_m = pair_product_factors(f, 'wa').tail(m)
    projector = power_range_projector(f.W3 @ f.A3, m, P.tol, reference=spectral_norm(P.WA))
    if commuted:
        lead = W1_inv @ inverse(f.W1 @ f.A1, 'W1A1')
    else:
        lead = inverse(f.A1 @ f.W1, 'A1W1') @ W1_inv
    block = block2x2(
        inverse(f.W1 @ f.A1 @ f.W1, 'W1A1W1'), lead @ z_m @ projector,
        np.zeros((P.p - t, t), dtype=np.complex128),
        np.zeros((P.p - t, P.n - t), dtype=np.complex128),
    )
    return f.U @ block @ ctranspose(f.V)


def w_core_ep_canonical(P, factors=None):
    """``U [[(W1A1W1)^-1, 0], [0, 0]] V*``."""
    f = factors or weighted_pair_decompose(P.A, P.W, P.tol)
    t = f.t
    block = block2x2(
        inverse(f.W1 @ f.A1 @ f.W1, 'W1A1W1'), np.zeros((t, P.n - t), dtype=np.complex128),
        np.zeros((P.p - t, t), dtype=np.complex128),
        np.zeros((P.p - t, P.n - t), dtype=np.complex128),
    )
    return f.U @ block @ ctranspose(f.V)


def outer_inverse_null_operator(P):
    """``[(WA)^k]* (WA)^m P_{(WA)^m}``, whose null space is N(A^{#m,W})."""
    return ctranspose(P.wa_power(P.k)) @ P.wa_power(P.m) @ P.wa_projector(P.m)


def outer_inverse_null_rows(P):
    """
    A t x n matrix with the null space of :func:`outer_inverse_null_operator`.

    With ``WA = V [[G, S], [0, N]] V*`` the operator factors as
    ``R* (G^k)* G^m [I_t, Z_m] V* P_{(WA)^m}`` and the left factors have full
    column rank, so ``[I_t, Z_m] V* P_{(WA)^m}`` keeps the null space without
    the powers of G.
    """
    f = P.wa_factors
    rows = np.hstack([identity(f.t), f.tail(P.m)]) @ ctranspose(f.U)
    return rows @ P.wa_projector(P.m)


def _prop_a(P):
    m = P.m
    return (matrix_power(w_core_ep(P) @ P.W, m + 1) @ P.aw_power(m - 1) @ P.A
            @ P.wa_projector(m))


def _prop_b(P):
    m = P.m
    C = geninv.core_ep(P.WA, P.tol, P.wa_factors)
    return P.A @ matrix_power(C, m + 2) @ P.wa_power(m) @ P.wa_projector(m)


def _prop_c(P):
    m, tol, f = P.m, P.tol, P.wa_factors
    return (P.A @ geninv.core_ep(P.WA, tol, f) @ geninv.m_weak_group(P.WA, m, tol, f)
            @ P.wa_projector(m))


def _prop_d(P):
    m, k = P.m, P.k
    D = geninv.drazin(P.WA, P.tol, P.wa_factors)
    return (P.A @ matrix_power(D, m + 2) @ P.wa_projector(k)
            @ P.wa_power(m) @ P.wa_projector(m))


def _prop_e(P):
    m, k = P.m, P.k
    return (P.A @ P.wa_power(k) @ P.wa_power_pinv(k + m + 2)
            @ P.wa_power(m) @ P.wa_projector(m))


def _prop_f(P):
    m, k = P.m, P.k
    return (P.A @ P.wa_power(k) @ P.wa_power_pinv(k + m + 2)
            @ P.wa_power(2 * m) @ P.wa_power_pinv(m))


def _prop_g(P):
    m, k = P.m, P.k
    D = geninv.drazin(P.WA, P.tol, P.wa_factors)
    # the BT inverse of M = (WA)^m is (M P_M)^dagger, so its pseudoinverse is M P_M
    bt_dagger = P.wa_power(m) @ P.wa_projector(m)
    return P.A @ matrix_power(D, m + 2) @ P.wa_projector(k) @ bt_dagger


def _prop_h(P):
    m, k = P.m, P.k
    return (P.aw_power(k) @ P.A @ P.wa_power_pinv(k + m + 2)
            @ P.wa_power(m) @ P.wa_projector(m))


def _prop_i(P, Y=None):
    Y = w_core_ep(P) if Y is None else Y
    return Y @ P.WAW @ w_m_weak_core(P)


def _urquhart(P):
    m, k = P.m, P.k
    wa_kh = ctranspose(P.wa_power(k))
    gram_pinv = power_gram_pinv(P.wa_factors, k, m + k + 1, right=P.W)
    return (P.aw_power(k) @ gram_pinv @ wa_kh
            @ P.wa_power(2 * m) @ P.wa_power_pinv(m))


_FORMULAS = {
    'definition': w_m_weak_core,
    'prop_a': _prop_a,
    'prop_b': _prop_b,
    'prop_c': _prop_c,
    'prop_d': _prop_d,
    'prop_e': _prop_e,
    'prop_f': _prop_f,
    'prop_g': _prop_g,
    'prop_h': _prop_h,
    'prop_i': _prop_i,
    'urquhart': _urquhart,
    'canonical': w_m_weak_core_canonical,
}


def w_m_weak_core_rep(P, variant):
    """
    W-weighted m-weak core inverse through a named representation.

    Args:
        P (WeightedProblem): Problem data.
        variant (str): One of :data:`REPRESENTATIONS`. ``prop_i`` uses the
            W-weighted core-EP inverse as the outer inverse Y of WAW.

    Raises:
        ValueError: If the variant is unknown.
    """
    try:
        formula = _FORMULAS[variant]
    except KeyError:
        raise ValueError(f"Unknown representation variant: {variant!r}.")
    return formula(P)


def w_m_weak_core_outer(P, Y):
    """Representation ``Y WAW A^{#m,W}`` for a caller supplied outer inverse Y of WAW."""
    return _prop_i(P, Y)


def w_m_weak_core_all(P):
    """All representation values keyed by variant name."""
    return {variant: w_m_weak_core_rep(P, variant) for variant in REPRESENTATIONS}


def w_m_weak_core_projectors(P):
    """
    The idempotents ``(WAW X, X WAW)`` for ``X = A^{#m,W}``; the first projects
    onto R((WA)^k), the second onto R((AW)^k).
    """
    X = w_m_weak_core(P)
    WAW = P.WAW
    return WAW @ X, X @ WAW

