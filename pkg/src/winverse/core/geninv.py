"""
Generalized inverses of square matrices.

Drazin, group, core, core-EP, BT, m-weak group and m-weak core inverses, all
computed from block formulas on a single core-EP decomposition.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from winverse.core.decomp import block2x2, core_ep_decompose, power_gram_pinv, power_pinv
from winverse.core.matcore import (
    DEFAULT_TOL, as_matrix, ctranspose, index, inverse, matrix_power, pinv,
    power_range_projector, range_projector, spectral_norm,
)
from winverse.utils.errors import IndexConditionError

__all__ = [
    'SQUARE_KINDS', 'M_INDEXED', 'SquareInverseKind', 'check_m', 'drazin', 'group_inverse',
    'core_ep', 'core_inverse', 'bt_inverse', 'm_weak_group', 'm_weak_core', 'weak_group',
    'weak_core', 'm_weak_core_canonical', 'm_weak_core_urquhart', 'square_inverse',
]

SQUARE_KINDS = ('drazin', 'group', 'core', 'core_ep', 'bt', 'm_weak_group', 'm_weak_core')
M_INDEXED = ('m_weak_group', 'm_weak_core')


@dataclass(frozen=True)
class SquareInverseKind:
    """Tag of a square generalized inverse; ``m`` is required by the m-indexed kinds."""
    tag: str
    m: Optional[int] = None

    def __post_init__(self):
        if self.tag not in SQUARE_KINDS:
            raise ValueError(f"Unknown square inverse kind: {self.tag!r}.")
        if (self.tag in M_INDEXED) != (self.m is not None):
            raise ValueError(f"Kind {self.tag!r} {'requires' if self.tag in M_INDEXED else 'takes no'} m.")
        if self.m is not None:
            check_m(self.m)


def check_m(m):
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}.")
    return int(m)


def _zero_padded(factors, top_left, top_right):
    """``U [[top_left, top_right], [0, 0]] U*``."""
    rest = factors.n - factors.t
    block = block2x2(top_left, top_right,
                     np.zeros((rest, factors.t), dtype=np.complex128),
                     np.zeros((rest, rest), dtype=np.complex128))
    return factors.U @ block @ ctranspose(factors.U)


def drazin(A, tol=DEFAULT_TOL, factors=None):
    """
    Drazin inverse ``U [[T^-1, T^-(k+1) sum_j T^j S N^(k-1-j)], [0, 0]] U*``.

    The top-right block is evaluated as ``T^-1 Z_k``, see
    :meth:`CoreEPFactors.tail`.

    Args:
        A (array_like): Square matrix.
        tol (Tolerance): Numerical thresholds.
        factors (CoreEPFactors, optional): Precomputed decomposition of A.
    """
    f = factors or core_ep_decompose(A, tol)
    T_inv = inverse(f.T, 'T')
    return _zero_padded(f, T_inv, T_inv @ f.tail())


def group_inverse(A, tol=DEFAULT_TOL):
    """Group inverse, the Drazin inverse of an index <= 1 matrix."""
    A = as_matrix(A, 'A')
    if index(A, tol) > 1:
        raise IndexConditionError("group inverse requires index ≤ 1")
    return drazin(A, tol)


def core_ep(A, tol=DEFAULT_TOL, factors=None):
    """Core-EP inverse ``U [[T^-1, 0], [0, 0]] U*``."""
    f = factors or core_ep_decompose(A, tol)
    return _zero_padded(f, inverse(f.T, 'T'), np.zeros_like(f.S))


def core_inverse(A, tol=DEFAULT_TOL):
    """Core inverse ``A^# A A^dagger`` of an index <= 1 matrix."""
    A = as_matrix(A, 'A')
    if index(A, tol) > 1:
        raise IndexConditionError("core inverse requires index ≤ 1")
    return drazin(A, tol) @ A @ pinv(A, tol)


def bt_inverse(A, tol=DEFAULT_TOL):
    """BT inverse ``(A P_A)^dagger``."""
    A = as_matrix(A, 'A')
    return pinv(A @ range_projector(A, tol), tol)


def m_weak_group(A, m, tol=DEFAULT_TOL, factors=None):
    """m-weak group inverse ``(A^core-EP)^(m+1) A^m``."""
    m = check_m(m)
    A = as_matrix(A, 'A')
    return matrix_power(core_ep(A, tol, factors), m + 1) @ matrix_power(A, m)


def m_weak_core(A, m, tol=DEFAULT_TOL, factors=None):
    """m-weak core inverse: the m-weak group inverse times ``P_{A^m}``."""
    m = check_m(m)
    A = as_matrix(A, 'A')
    return m_weak_group(A, m, tol, factors) @ power_range_projector(A, m, tol)


def weak_group(A, tol=DEFAULT_TOL):
    return m_weak_group(A, 1, tol)


def weak_core(A, tol=DEFAULT_TOL):
    return m_weak_core(A, 1, tol)


def m_weak_core_canonical(factors, m, tol=DEFAULT_TOL):
    """
    m-weak core inverse assembled from core-EP factors:
    ``U [[T^-1, T^-(m+1) S_m P_{N^m}], [0, 0]] U*`` with
    ``S_m = sum_j T^j S N^(m-1-j)``.

    Works on any :class:`CoreEPFactors`, in particular those of AW and WA
    obtained from :func:`winverse.core.decomp.pair_product_factors`.
    """
    m = check_m(m)
    f = factors
    T_inv = inverse(f.T, 'T')
    projector = power_range_projector(f.N, m, tol, reference=spectral_norm(f.block()))
    # T^-(m+1) S_m = T^-1 Z_m
    top_right = T_inv @ f.tail(m) @ projector
    return _zero_padded(f, T_inv, top_right)


def m_weak_core_urquhart(A, m, tol=DEFAULT_TOL):
    """
    ``A^k ((A^k)* A^(m+k+1))^dagger (A^k)* A^(2m) (A^m)^dagger``.

    Both pseudoinverses come from the core-EP factors of A
    (:func:`~winverse.core.decomp.power_gram_pinv`,
    :func:`~winverse.core.decomp.power_pinv`) so that no singular value of
    the high powers is lost to a relative cutoff.
    """
    m = check_m(m)
    A = as_matrix(A, 'A')
    f = core_ep_decompose(A, tol)
    k = f.k
    A_k = matrix_power(A, k)
    return (A_k @ power_gram_pinv(f, k, m + k + 1) @ ctranspose(A_k)
            @ matrix_power(A, 2 * m) @ power_pinv(A, m, tol, f))


def square_inverse(kind, A, tol=DEFAULT_TOL):
    """Dispatch on a :class:`SquareInverseKind`."""
    if kind.tag in M_INDEXED:
        return {'m_weak_group': m_weak_group, 'm_weak_core': m_weak_core}[kind.tag](A, kind.m, tol)
    return {
        'drazin': drazin,
        'group': group_inverse,
        'core': core_inverse,
        'core_ep': core_ep,
        'bt': bt_inverse,
    }[kind.tag](A, tol)
