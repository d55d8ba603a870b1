"""
General solutions of linear equations built on the W-weighted m-weak core inverse.

Right-hand equations act on a vector ``x`` of length p, the left-hand equation
on a p x n matrix ``X``. Every solver returns the distinguished particular
solution, the operator that maps a free parameter into the homogeneous part,
and the residual of the assembled solution in the original equation.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg

from winverse.core import wgeninv
from winverse.core.matcore import (
    as_matrix, as_vector, ctranspose, identity, max_norm, power_range_basis, range_inclusion,
)
from winverse.utils.errors import ShapeError, SolveError

__all__ = [
    'EQUATIONS', 'SolveResult', 'solve_right_normal', 'solve_right_reduced',
    'solve_right_projected', 'solve_left_power', 'solve',
]

EQUATIONS = ('right-normal', 'right-projected', 'right-reduced', 'left-power')


@dataclass(frozen=True, eq=False)
class SolveResult:
    """
    Solution of one linear equation.

    Attributes:
        particular (np.ndarray): Solution for a zero free parameter.
        homogeneous_projector (np.ndarray): H with homogeneous part ``H y``
            (right equations) or ``Y H`` (left equation).
        residual (float): Scale relative residual of ``solution``.
        unique_in_range (np.ndarray or None): The particular solution when it
            lies in R((AW)^k), where it is the only solution.
        solution (np.ndarray): Particular plus the homogeneous part of the
            supplied parameter.
        side (str): ``'right'`` or ``'left'``.
    """
    particular: np.ndarray
    homogeneous_projector: np.ndarray
    residual: float
    unique_in_range: Optional[np.ndarray]
    solution: np.ndarray
    side: str = 'right'

    @property
    def in_range(self):
        return self.unique_in_range is not None

    def assemble(self, parameter):
        """Solution for the given free parameter."""
        if self.side == 'right':
            return self.particular + self.homogeneous_projector @ parameter
        return self.particular + parameter @ self.homogeneous_projector

    def parameter_for(self, candidate):
        """
        Recover a free parameter reproducing ``candidate`` by least squares.

        Args:
            candidate (np.ndarray): A solution of the same equation.

        Returns:
            tuple: ``(parameter, residual)`` where residual is the max-norm
            distance between ``candidate`` and the assembled solution.
        """
        candidate = np.asarray(candidate, dtype=np.complex128)
        delta = candidate - self.particular
        H = self.homogeneous_projector
        if self.side == 'right':
            parameter = linalg.lstsq(H, delta)[0]
        else:
            parameter = ctranspose(linalg.lstsq(ctranspose(H), ctranspose(delta))[0])
        return parameter, max_norm(self.assemble(parameter) - candidate)


def _parameter(value, shape, name):
    if value is None:
        return np.zeros(shape, dtype=np.complex128)
    if len(shape) == 1:
        return as_vector(value, shape[0], name)
    value = as_matrix(value, name)
    if value.shape != shape:
        raise ShapeError(f"{name} must have shape {shape}, got {value.shape}.")
    return value


def _residual(lhs, rhs, operator_scale):
    return max_norm(lhs - rhs) / max(1.0, operator_scale, max_norm(lhs), max_norm(rhs))


def _checked(residual, tol, equation):
    if residual > tol.eq_atol:
        raise SolveError(f"Residual {residual:.3e} of the {equation} equation exceeds {tol.eq_atol:.1e}.")
    return residual


def _right_result(P, particular, H, y, operator, rhs, equation):
    solution = particular + H @ y
    scale = max_norm(operator) * max_norm(solution)
    residual = _checked(_residual(operator @ solution, rhs, scale), P.tol, equation)
    aw_k_range = power_range_basis(P.AW, P.k, P.tol).matrix
    in_range = range_inclusion(particular.reshape(-1, 1), aw_k_range, P.tol)
    return SolveResult(
        particular=particular, homogeneous_projector=H, residual=residual,
        unique_in_range=particular if in_range else None, solution=solution,
    )


def _wa_k_h(P):
    return ctranspose(P.wa_power(P.k))


def solve_right_normal(P, b, y=None):
    """
    Solve ``[(WA)^k]* (WA)^(m+1) W x = [(WA)^k]* (WA)^(2m) [(WA)^m]^dagger b``.

    General solution ``x = A^{#m,W} b + (I_p - A^{wg m,W} WAW) y``. The
    particular solution is the only one in R((AW)^k).

    Args:
        P (WeightedProblem): Problem data.
        b (array_like): Right-hand side of length n.
        y (array_like, optional): Free parameter of length p, default zero.

    Returns:
        SolveResult: The solution.

    Raises:
        ShapeError: If b or y have the wrong length.
        SolveError: If the assembled solution misses the equation.
    """
    m = P.m
    b = as_vector(b, P.n, 'b')
    y = _parameter(y, (P.p,), 'y')
    G = _wa_k_h(P)
    operator = G @ P.wa_power(m + 1) @ P.W
    rhs = G @ P.wa_power(2 * m) @ P.wa_power_pinv(m) @ b
    particular = wgeninv.w_m_weak_core(P) @ b
    H = identity(P.p) - wgeninv.w_m_weak_group(P) @ P.WAW
    return _right_result(P, particular, H, y, operator, rhs, 'right-normal')


def solve_right_reduced(P, b, y=None):
    """
    Solve ``[(WA)^k]* (WA)^(m+1) W x = [(WA)^k]* (WA)^m b`` for b in R((WA)^m).

    Particular solution ``A (WA)^k [(WA)^(k+m+2)]^dagger (WA)^m b``.

    Raises:
        SolveError: If b is not in R((WA)^m), or the residual is too large.
    """
    m, k, tol = P.m, P.k, P.tol
    b = as_vector(b, P.n, 'b')
    y = _parameter(y, (P.p,), 'y')
    wa_m = P.wa_power(m)
    if not range_inclusion(b.reshape(-1, 1), power_range_basis(P.WA, m, tol).matrix, tol):
        raise SolveError("The reduced equation needs b in R((WA)^m).")
    G = _wa_k_h(P)
    operator = G @ P.wa_power(m + 1) @ P.W
    rhs = G @ wa_m @ b
    particular = P.A @ P.wa_power(k) @ P.wa_power_pinv(k + m + 2) @ wa_m @ b
    H = identity(P.p) - wgeninv.w_m_weak_group(P) @ P.WAW
    return _right_result(P, particular, H, y, operator, rhs, 'right-reduced')


def solve_right_projected(P, b, y=None):
    """
    Solve ``G WAW x = G b`` with ``G = [(WA)^k]* (WA)^(2m) [(WA)^m]^dagger``.

    General solution ``x = A^{#m,W} b + (I_p - A^{#m,W} WAW) y``; the
    particular solution is the only one in R((AW)^k).
    """
    m = P.m
    b = as_vector(b, P.n, 'b')
    y = _parameter(y, (P.p,), 'y')
    G = _wa_k_h(P) @ P.wa_power(2 * m) @ P.wa_power_pinv(m)
    X = wgeninv.w_m_weak_core(P)
    particular = X @ b
    H = identity(P.p) - X @ P.WAW
    return _right_result(P, particular, H, y, G @ P.WAW, G @ b, 'right-projected')


def solve_left_power(P, B, Y=None):
    """
    Solve ``X W (AW)^(k+1) = B (AW)^k`` for a p x n matrix X.

    General solution ``X = B A^{#m,W} + Y (I_n - WAW A^{#m,W})``.

    Args:
        P (WeightedProblem): Problem data.
        B (array_like): p x p matrix.
        Y (array_like, optional): Free p x n parameter, default zero.

    Raises:
        ShapeError: If B or Y have the wrong shape.
        SolveError: If the assembled solution misses the equation.
    """
    p, n, k = P.p, P.n, P.k
    B = _parameter(B, (p, p), 'B')
    Y = _parameter(Y, (p, n), 'Y')
    X = wgeninv.w_m_weak_core(P)
    particular = B @ X
    H = identity(n) - P.WAW @ X
    solution = particular + Y @ H
    operator = P.W @ P.aw_power(k + 1)
    lhs = solution @ operator
    scale = max_norm(solution) * max_norm(operator)
    residual = _checked(_residual(lhs, B @ P.aw_power(k), scale), P.tol, 'left-power')
    return SolveResult(
        particular=particular, homogeneous_projector=H, residual=residual,
        unique_in_range=None, solution=solution, side='left',
    )


def solve(equation, P, rhs, parameter=None):
    """
    Dispatch on an equation name from :data:`EQUATIONS`.

    Raises:
        ValueError: If the equation name is unknown.
    """
    solvers = {
        'right-normal': solve_right_normal,
        'right-projected': solve_right_projected,
        'right-reduced': solve_right_reduced,
        'left-power': solve_left_power,
    }
    if equation not in solvers:
        raise ValueError(f"Unknown equation {equation!r}; expected one of {', '.join(EQUATIONS)}.")
    return solvers[equation](P, rhs, parameter)

