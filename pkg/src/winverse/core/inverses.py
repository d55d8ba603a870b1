"""
Named inverse kinds, as exposed on the command line, and the residuals of
their defining equations.
"""
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from winverse.core import geninv, verify, wgeninv
from winverse.core.matcore import (
    DEFAULT_TOL, as_matrix, ctranspose, index, matrix_power, max_norm,
    penrose_residuals, pinv, power_range_basis, power_range_projector, range_equal,
    range_inclusion, range_projector,
)
from winverse.utils.errors import ShapeError

__all__ = [
    'SQUARE', 'WEIGHTED', 'INVERSE_KINDS', 'M_KINDS', 'InverseReport', 'validate_kind',
    'compute_inverse', 'inverse_report',
]

SQUARE = ('pinv', 'drazin', 'group', 'core', 'core-ep', 'bt', 'mwg', 'mwc')
WEIGHTED = ('w-drazin', 'w-core-ep', 'w-mwg', 'w-mwc')
INVERSE_KINDS = SQUARE + WEIGHTED
M_KINDS = ('mwg', 'mwc', 'w-mwg', 'w-mwc')


@dataclass(frozen=True, eq=False)
class InverseReport:
    """A computed inverse with the residuals of every defining equation checked."""
    kind: str
    inverse: np.ndarray
    residuals: Dict[str, float] = field(default_factory=dict)

    @property
    def max_residual(self):
        return max(self.residuals.values(), default=0.0)


def validate_kind(kind, W, m):
    """
    Check that the arguments fit the kind.

    Raises:
        ValueError: Unknown kind, missing W for a weighted kind, or a missing
            or invalid m for an m-indexed kind.
    """
    if kind not in INVERSE_KINDS:
        raise ValueError(f"Unknown inverse kind {kind!r}; expected one of {', '.join(INVERSE_KINDS)}.")
    if kind in WEIGHTED and W is None:
        raise ValueError(f"Inverse kind {kind!r} needs a weight matrix W.")
    if kind in M_KINDS:
        if m is None:
            raise ValueError(f"Inverse kind {kind!r} needs m.")
        geninv.check_m(m)


def _square(A, kind):
    A = as_matrix(A, 'A')
    if kind != 'pinv' and A.shape[0] != A.shape[1]:
        raise ShapeError(f"Inverse kind {kind!r} needs a square matrix, got shape {A.shape}.")
    return A


def compute_inverse(kind, A, W=None, m=None, tol=DEFAULT_TOL):
    """
    Compute the inverse of the given kind.

    Args:
        kind (str): One of :data:`INVERSE_KINDS`.
        A (array_like): Input matrix; square for the unweighted kinds except pinv.
        W (array_like, optional): Weight, required by the ``w-`` kinds.
        m (int, optional): Required by the m-indexed kinds.
        tol (Tolerance): Numerical thresholds.

    Returns:
        np.ndarray: The inverse.
    """
    validate_kind(kind, W, m)
    if kind in WEIGHTED:
        P = wgeninv.WeightedProblem(A, W, m or 1, tol)
        return {
            'w-drazin': wgeninv.w_drazin,
            'w-core-ep': wgeninv.w_core_ep,
            'w-mwg': wgeninv.w_m_weak_group,
            'w-mwc': wgeninv.w_m_weak_core,
        }[kind](P)
    A = _square(A, kind)
    if kind == 'mwg':
        return geninv.m_weak_group(A, m, tol)
    if kind == 'mwc':
        return geninv.m_weak_core(A, m, tol)
    return {
        'pinv': pinv,
        'drazin': geninv.drazin,
        'group': geninv.group_inverse,
        'core': geninv.core_inverse,
        'core-ep': geninv.core_ep,
        'bt': geninv.bt_inverse,
    }[kind](A, tol)


def _res(lhs, rhs):
    return max_norm(lhs - rhs) / max(1.0, max_norm(lhs), max_norm(rhs))


def _flag(holds):
    return 0.0 if holds else 1.0


def _square_residuals(kind, A, X, m, tol):
    if kind == 'pinv':
        scale = max(1.0, max_norm(A), max_norm(X))
        return {label: value / scale for label, value in penrose_residuals(A, X).items()}
    if kind == 'bt':
        AP = A @ range_projector(A, tol)
        scale = max(1.0, max_norm(AP), max_norm(X))
        return {label: value / scale for label, value in penrose_residuals(AP, X).items()}
    k = index(A, tol)
    A_k = matrix_power(A, k)
    A_k_range = power_range_basis(A, k, tol).matrix
    if kind in ('drazin', 'group'):
        return {
            'XA^(k+1)=A^k': _res(X @ matrix_power(A, k + 1), A_k),
            'XAX=X': _res(X @ A @ X, X),
            'AX=XA': _res(A @ X, X @ A),
        }
    if kind == 'core':
        return {
            'AX=P_A': _res(A @ X, range_projector(A, tol)),
            'R(X)<=R(A)': _flag(range_inclusion(X, A, tol)),
        }
    if kind == 'core-ep':
        return {
            'XAX=X': _res(X @ A @ X, X),
            'R(X)=R(A^k)': _flag(range_equal(X, A_k_range, tol)),
            'R(X*)=R(A^k)': _flag(range_equal(ctranspose(X), A_k_range, tol)),
        }
    C = geninv.core_ep(A, tol)
    A_m = matrix_power(A, m)
    target = matrix_power(C, m) @ A_m
    if kind == 'mwc':
        target = target @ power_range_projector(A, m, tol)
    return {
        'AX^2=X': _res(A @ X @ X, X),
        'AX=(A^cep)^m A^m' + (' P' if kind == 'mwc' else ''): _res(A @ X, target),
    }


def _weighted_residuals(kind, P, X):
    A, W, AW, WAW, k, m, tol = P.A, P.W, P.AW, P.WAW, P.k, P.m, P.tol
    if kind == 'w-drazin':
        return {
            'XWAWX=X': _res(X @ WAW @ X, X),
            'AWX=XWA': _res(AW @ X, X @ P.WA),
            'XW(AW)^(k+1)=(AW)^k': _res(X @ W @ P.aw_power(k + 1), P.aw_power(k)),
        }
    if kind == 'w-core-ep':
        aw_k_range = power_range_basis(AW, k, tol).matrix
        return {
            'WAWX=P_(WA)^k': _res(WAW @ X, P.wa_projector(k)),
            'R(X)<=R((AW)^k)': _flag(range_inclusion(X, aw_k_range, tol)),
        }
    if kind == 'w-mwg':
        target = matrix_power(wgeninv.w_core_ep(P) @ W, m) @ P.aw_power(m - 1) @ A
        return {
            'AWX=(A^cep,W W)^m (AW)^(m-1) A': _res(AW @ X, target),
            'AWXWX=X': _res(AW @ X @ W @ X, X),
        }
    return dict(verify.check_thm31(P, X).residuals)


def inverse_report(kind, A, W=None, m=None, tol=DEFAULT_TOL):
    """
    Compute an inverse together with its defining residuals.

    Returns:
        InverseReport: The inverse and a label -> residual mapping.
    """
    X = compute_inverse(kind, A, W, m, tol)
    if kind in WEIGHTED:
        residuals = _weighted_residuals(kind, wgeninv.WeightedProblem(A, W, m or 1, tol), X)
    else:
        residuals = _square_residuals(kind, as_matrix(A, 'A'), X, m, tol)
    return InverseReport(kind, X, {label: float(value) for label, value in residuals.items()})
