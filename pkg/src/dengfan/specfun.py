"""Special functions backing the closed-form solution.

Log-gamma and log-beta support the normalization constants, whose gamma
arguments reach the thousands for heavy molecules; every gamma ratio in
the package therefore stays in log space. The terminating Gauss series
and the Jacobi three-term recurrence give two independent evaluation
routes for the polynomial part of the wavefunctions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def log_beta(a: float, b: float) -> float:
    """ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b) for a, b > 0."""
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"log_beta requires positive arguments, got ({a}, {b})")
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def hyp2f1_terminating(n: int, beta: float, gamma: float, z):
    """Terminating Gauss series 2F1(-n, beta; gamma; z).

    Exact finite sum of n + 1 terms; `z` may be a scalar or ndarray.
    """
    if n < 0 or n != int(n):
        raise DomainError(f"degree n must be a non-negative integer, got {n}")
    n = int(n)
    for k in range(1, n + 1):
        if gamma + k - 1 == 0.0:
            raise DomainError(f"gamma = {gamma} hits a non-positive integer inside the sum")
    z_arr = np.asarray(z, dtype=float)
    term = np.ones_like(z_arr)
    total = term.copy()
    for k in range(1, n + 1):
        coeff = (-(n - k + 1)) * (beta + k - 1) / ((gamma + k - 1) * k)
        term = term * coeff * z_arr
        total = total + term
    if np.ndim(z) == 0:
        return float(total)
    return total


@dataclass(frozen=True)
class JacobiParams:
    """Degree and exponents of a Jacobi polynomial P_n^(a,b)."""

    n: int
    a: float
    b: float

    def __post_init__(self) -> None:
        if self.n < 0 or self.n != int(self.n):
            raise DomainError(f"degree n must be a non-negative integer, got {self.n}")
        if not self.a > -1.0:
            raise DomainError(f"Jacobi exponent a must exceed -1, got {self.a}")
        if not self.b > -1.0:
            raise DomainError(f"Jacobi exponent b must exceed -1, got {self.b}")


def jacobi_poly(p: JacobiParams, x):
    """P_n^(a,b)(x) by the standard three-term recurrence.

    Stable for the small degrees used here; `x` may be scalar or ndarray.
    """
    value = _jacobi_recurrence(int(p.n), p.a, p.b, np.asarray(x, dtype=float))
    if np.ndim(x) == 0:
        return float(value)
    return value


def jacobi_poly_hyp(p: JacobiParams, x):
    """P_n^(a,b)(x) via ((a+1)_n / n!) 2F1(-n, 1+a+b+n; a+1; (1-x)/2).

    Kept as an independent cross-check of the recurrence route.
    """
    n, a, b = int(p.n), p.a, p.b
    prefactor = 1.0
    for k in range(n):
        prefactor *= (a + 1.0 + k) / (k + 1.0)
    s = (1.0 - np.asarray(x, dtype=float)) / 2.0
    value = prefactor * hyp2f1_terminating(n, 1.0 + a + b + n, a + 1.0, s)
    if np.ndim(x) == 0:
        return float(value)
    return value


def _jacobi_recurrence(n: int, a: float, b: float, x):
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev
    p_curr = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for k in range(2, n + 1):
        c = 2.0 * k + a + b
        a1 = 2.0 * k * (k + a + b) * (c - 2.0)
        a2 = (c - 1.0) * (a * a - b * b)
        a3 = (c - 1.0) * c * (c - 2.0)
        a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c
        p_next = ((a2 + a3 * x) * p_curr - a4 * p_prev) / a1
        p_prev, p_curr = p_curr, p_next
    return p_curr
