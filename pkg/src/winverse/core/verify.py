"""
Certificates for the W-weighted m-weak core inverse.

Each ``check_*`` function takes a :class:`~winverse.core.wgeninv.WeightedProblem`
and a candidate ``X`` and reports the residual of every clause of one
characterizing system. The computed inverse is the only matrix passing any of
them, so a certificate doubles as a uniqueness test.

Equation residuals are scale relative: ``max|lhs - rhs|`` divided by
``max(1, |X|, |A| |W|, |lhs|, |rhs|)``. Range and null space clauses report
0 when they hold and 1 when they do not.
"""
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from winverse.core import geninv, wgeninv
from winverse.core.matcore import (
    DEFAULT_TOL, as_matrix, index, matrix_power, max_norm, null_space_equal,
    power_range_basis, power_range_projector, range_equal, range_inclusion,
)
from winverse.utils.errors import ShapeError

__all__ = [
    'SYSTEMS', 'CertificateReport', 'check_thm31', 'check_thm32', 'check_thm33', 'check_thm34',
    'check_outer_inverse', 'check', 'run_all', 'check_square_corollary', 'theorem_identities',
    'representation_spread',
]

SYSTEMS = ('thm31', 'thm32', 'thm33', 'thm34', 'outer')


@dataclass(frozen=True, eq=False)
class CertificateReport:
    """
    Outcome of checking one characterizing system.

    Attributes:
        system_id (str): Which system was checked.
        residuals (list): ``(label, residual)`` pairs, one per clause.
        satisfied (bool): True iff every residual is within ``tol_used.eq_atol``.
        tol_used (Tolerance): Thresholds the check ran with.
    """
    system_id: str
    residuals: List[Tuple[str, float]] = field(default_factory=list)
    satisfied: bool = False
    tol_used: object = None

    @property
    def failing(self):
        """Labels of the clauses above tolerance."""
        return [label for label, value in self.residuals if value > self.tol_used.eq_atol]

    def as_dict(self):
        return {
            'system': self.system_id,
            'satisfied': self.satisfied,
            'residuals': {label: value for label, value in self.residuals},
        }


def _report(system_id, residuals, tol):
    residuals = [(label, float(value)) for label, value in residuals]
    satisfied = all(value <= tol.eq_atol for _, value in residuals)
    return CertificateReport(system_id, residuals, satisfied, tol)


def _candidate(P, X):
    X = as_matrix(X, 'X')
    if X.shape != (P.p, P.n):
        raise ShapeError(f"Candidate must have shape {(P.p, P.n)}, got {X.shape}.")
    return X


def _scale(P, X, *terms):
    return max(1.0, max_norm(X), max_norm(P.A) * max_norm(P.W), *(max_norm(t) for t in terms))


def _eq(P, X, lhs, rhs):
    return max_norm(lhs - rhs) / _scale(P, X, lhs, rhs)


def _clause(holds):
    return 0.0 if holds else 1.0


def _aw_k_range(P):
    """Orthonormal basis of R((AW)^k)."""
    return power_range_basis(P.AW, P.k, P.tol).matrix


def _wa_m_weak_core(P):
    return geninv.m_weak_core(P.WA, P.m, P.tol, P.wa_factors)


def check_thm31(P, X):
    """``XWAWX = X``, ``AWX = A (WA)^{#m}`` and ``XWA = A^{wg m,W} P_{(WA)^m} WA``."""
    X = _candidate(P, X)
    WA = P.WA
    wg_tail = wgeninv.w_m_weak_group(P) @ P.wa_projector(P.m) @ WA
    return _report('thm31', [
        ('XWAWX=X', _eq(P, X, X @ P.WAW @ X, X)),
        ('AWX=A(WA)^#m', _eq(P, X, P.AW @ X, P.A @ _wa_m_weak_core(P))),
        ('XWA=A^wgm,W P WA', _eq(P, X, X @ WA, wg_tail)),
    ], P.tol)


def check_thm32(P, X):
    """``AWX = A (WA)^{#m}`` and ``R(X) ⊆ R((AW)^k)``."""
    X = _candidate(P, X)
    return _report('thm32', [
        ('AWX=A(WA)^#m', _eq(P, X, P.AW @ X, P.A @ _wa_m_weak_core(P))),
        ('R(X)<=R((AW)^k)', _clause(range_inclusion(X, _aw_k_range(P), P.tol))),
    ], P.tol)


def check_thm33(P, X):
    """``WAWX = WA (WA)^{#m}`` and ``R(X) ⊆ R((AW)^k)``."""
    X = _candidate(P, X)
    return _report('thm33', [
        ('WAWX=WA(WA)^#m', _eq(P, X, P.WAW @ X, P.WA @ _wa_m_weak_core(P))),
        ('R(X)<=R((AW)^k)', _clause(range_inclusion(X, _aw_k_range(P), P.tol))),
    ], P.tol)


def check_thm34(P, X):
    """``AWX = A (WA)^{#m}`` and ``AWXWX = X``."""
    X = _candidate(P, X)
    return _report('thm34', [
        ('AWX=A(WA)^#m', _eq(P, X, P.AW @ X, P.A @ _wa_m_weak_core(P))),
        ('AWXWX=X', _eq(P, X, P.AW @ X @ P.W @ X, X)),
    ], P.tol)


def check_outer_inverse(P, X):
    """
    X is the outer inverse of WAW with range R((AW)^k) and null space
    ``N([(WA)^k]* (WA)^m P_{(WA)^m})``.

    The null space clause compares against
    :func:`~winverse.core.wgeninv.outer_inverse_null_rows`, which has the same
    null space without the high powers of WA.
    """
    X = _candidate(P, X)
    return _report('outer', [
        ('XWAWX=X', _eq(P, X, X @ P.WAW @ X, X)),
        ('R(X)=R((AW)^k)', _clause(range_equal(X, _aw_k_range(P), P.tol))),
        ('N(X)=N(G)', _clause(null_space_equal(X, wgeninv.outer_inverse_null_rows(P), P.tol))),
    ], P.tol)


_CHECKS = {
    'thm31': check_thm31,
    'thm32': check_thm32,
    'thm33': check_thm33,
    'thm34': check_thm34,
    'outer': check_outer_inverse,
}


def check(system_id, P, X):
    """
    Run the certificate named ``system_id``.

    Raises:
        ValueError: If ``system_id`` is not one of :data:`SYSTEMS`.
    """
    if system_id not in _CHECKS:
        raise ValueError(f"Unknown system {system_id!r}; expected one of {', '.join(SYSTEMS)}.")
    return _CHECKS[system_id](P, X)


def run_all(P, X):
    """All five certificates, keyed by system id."""
    return {system_id: fn(P, X) for system_id, fn in _CHECKS.items()}


def check_square_corollary(A, m, X, tol=None):
    """
    Square case (W = I) of the characterizations of the m-weak core inverse.

    Clauses, all of which hold exactly for ``X = A^{#m}``:
    ``XAX = X``, ``AX = (A^cep)^m A^m P_{A^m}``,
    ``XA = (A^cep)^(m+1) A^m P_{A^m} A``, ``R(X) ⊆ R(A^k)`` and ``AX^2 = X``.

    Args:
        A (array_like): Square matrix.
        m (int): Positive integer.
        X (array_like): Candidate n x n matrix.
        tol (Tolerance, optional): Thresholds, default :data:`DEFAULT_TOL`.
    """
    P = wgeninv.WeightedProblem(A, np.eye(np.shape(A)[0]), m, tol or DEFAULT_TOL)
    X = _candidate(P, X)
    A, m, tol = P.A, P.m, P.tol
    C = geninv.core_ep(A, tol)
    A_m = matrix_power(A, m)
    ax_target = matrix_power(C, m) @ A_m @ power_range_projector(A, m, tol)
    k = index(A, tol)
    return _report('square', [
        ('XAX=X', _eq(P, X, X @ A @ X, X)),
        ('AX=(A^cep)^m A^m P', _eq(P, X, A @ X, ax_target)),
        ('XA=(A^cep)^(m+1) A^m P A', _eq(P, X, X @ A, C @ ax_target @ A)),
        ('R(X)<=R(A^k)', _clause(range_inclusion(X, power_range_basis(A, k, tol).matrix, tol))),
        ('AX^2=X', _eq(P, X, A @ X @ X, X)),
    ], tol)


def theorem_identities(P):
    """
    Residuals of the identities satisfied by ``X = A^{#m,W}``, used by the
    sweep and the test suite.

    Returns:
        dict: label -> scale relative residual.
    """
    X = wgeninv.w_m_weak_core(P)
    tol, m, k = P.tol, P.m, P.k
    A, W, AW, WA = P.A, P.W, P.AW, P.WA
    wa_core = _wa_m_weak_core(P)
    aw_core = geninv.m_weak_core(AW, m, tol)
    wg = wgeninv.w_m_weak_group(P)
    wa_wg = geninv.m_weak_group(WA, m, tol)
    cep_w = wgeninv.w_core_ep(P)
    proj_wa_m = P.wa_projector(m)
    residuals = {
        'XWAWX=X': _eq(P, X, X @ P.WAW @ X, X),
        'XW(AW)^(k+1)=(AW)^k': _eq(P, X, X @ W @ P.aw_power(k + 1), P.aw_power(k)),
        'AWXWX=X': _eq(P, X, AW @ X @ W @ X, X),
        'AWX=A(WA)^#m': _eq(P, X, AW @ X, A @ wa_core),
        'XWA=A^wgm,W P WA': _eq(P, X, X @ WA, wg @ proj_wa_m @ WA),
        'WX=(WA)^#m': _eq(P, X, W @ X, wa_core),
        'X=(AW)^#m A (WA)^#m': _eq(P, X, X, aw_core @ A @ wa_core),
        'X=A((WA)^#m)^2': _eq(P, X, X, A @ wa_core @ wa_core),
        'A^wgm,W WAW A^wgm,W=A^wgm,W': _eq(P, X, wg @ P.WAW @ wg, wg),
        'W A^wgm,W=(WA)^wgm': _eq(P, X, W @ wg, wa_wg),
        'AWA^wgm,W=(A^cep,W W)^m(AW)^(m-1)A': _eq(
            P, X, AW @ wg, matrix_power(cep_w @ W, m) @ P.aw_power(m - 1) @ A),
        'AWA^wgm,W WA^wgm,W=A^wgm,W': _eq(P, X, AW @ wg @ W @ wg, wg),
        'A^wgm,W=A((WA)^wgm)^2': _eq(P, X, wg, A @ wa_wg @ wa_wg),
    }
    residuals['R(X)=R((AW)^k)'] = _clause(range_equal(X, _aw_k_range(P), tol))
    return residuals


def representation_spread(P):
    """Largest scale relative distance between any representation and the definition."""
    values = wgeninv.w_m_weak_core_all(P)
    reference = values['definition']
    return max(_eq(P, reference, value, reference) for value in values.values())

