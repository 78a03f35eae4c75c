"""Parametric Nikiforov-Uvarov machinery.

A hypergeometric-type radial equation

    psi'' + (c1 - c2 s)/(s (1 - c3 s)) psi'
          + (-A s^2 + B s - C)/(s^2 (1 - c3 s)^2) psi = 0

is fixed by six numbers. Everything else is algebra on those six: the
thirteen derived constants, the bound-state quantization condition, and
the wavefunction shape s^c12 (1 - c3 s)^c13 P_n^(c10,c11)(1 - 2 c3 s).
The quantization condition doubles as a residual whose root in the
energy variable gives a route to the spectrum that is independent of
any closed-form rearrangement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    BracketError,
    DomainError,
    NonNormalizableStateError,
    UnsupportedBranchError,
)
from .specfun import JacobiParams, jacobi_poly


@dataclass(frozen=True)
class NUCoefficients:
    """The six inputs of the parametric scheme."""

    c1: float
    c2: float
    c3: float
    A: float
    B: float
    C: float


@dataclass(frozen=True)
class NUConstants:
    """The derived constants c4..c13.

    Normalizable solutions additionally satisfy c10 > -1, c11 > -1 and
    c12 > 0, c13 > 0; `wavefunction_form` enforces that, plain
    derivation does not (off-eigenvalue trial coefficients legitimately
    produce c12 = 0).
    """

    c4: float
    c5: float
    c6: float
    c7: float
    c8: float
    c9: float
    c10: float
    c11: float
    c12: float
    c13: float


def _core_constants(c: NUCoefficients):
    """c4..c9 plus the two square roots, shared by all operations."""
    if c.c3 == 0.0:
        raise UnsupportedBranchError("the c3 = 0 branch is not supported")
    c4 = 0.5 * (1.0 - c.c1)
    c5 = 0.5 * (c.c2 - 2.0 * c.c3)
    c6 = c5 * c5 + c.A
    c7 = 2.0 * c4 * c5 - c.B
    c8 = c4 * c4 + c.C
    c9 = c.c3 * (c7 + c.c3 * c8) + c6
    if c8 < 0.0 or c9 < 0.0:
        raise DomainError(f"negative radicand in derived constants (c8={c8}, c9={c9})")
    return c4, c5, c6, c7, c8, c9, math.sqrt(c8), math.sqrt(c9)


def derive_constants(c: NUCoefficients) -> NUConstants:
    """Derived constants c4..c13 from the six coefficients."""
    c4, c5, c6, c7, c8, c9, sq8, sq9 = _core_constants(c)
    return NUConstants(
        c4=c4,
        c5=c5,
        c6=c6,
        c7=c7,
        c8=c8,
        c9=c9,
        c10=c.c1 + 2.0 * c4 + 2.0 * sq8 - 1.0,
        c11=1.0 - c.c1 - 2.0 * c4 + 2.0 * sq9 / c.c3,
        c12=c4 + sq8,
        c13=-c4 + (sq9 - c5) / c.c3,
    )


def quantization_residual(n: int, c: NUCoefficients) -> float:
    """Left-hand side of the bound-state quantization condition.

    Zero exactly when (n, coefficients) admit a degree-n polynomial
    solution. Under the energy mappings used in this package the
    residual decreases monotonically in the trial energy, so it
    brackets cleanly for bisection.
    """
    if n < 0 or n != int(n):
        raise DomainError(f"n must be a non-negative integer, got {n}")
    _, c5, _, c7, c8, c9, sq8, sq9 = _core_constants(c)
    return (
        c.c2 * n
        - (2.0 * n + 1.0) * c5
        + (2.0 * n + 1.0) * (sq9 + c.c3 * sq8)
        + n * (n - 1.0) * c.c3
        + c7
        + 2.0 * c.c3 * c8
        + 2.0 * math.sqrt(c8 * c9)
    )


def solve_energy_by_root(
    n: int,
    l: int,
    mapping: Callable[[float], NUCoefficients],
    bracket: tuple[float, float],
    *,
    rel_width: float = 1e-14,
    max_iter: int = 200,
) -> float:
    """Bisection root of the quantization residual in the energy variable.

    `mapping` turns a trial reduced energy into coefficients; the
    residual must change sign over `bracket`. `l` is bookkeeping only
    (the mapping already encodes it). Stops once the bracket width
    drops below `rel_width` relative to the bracket magnitude.
    """
    lo, hi = bracket
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise BracketError(f"degenerate bracket ({lo}, {hi})")
    r_lo = quantization_residual(n, mapping(lo))
    r_hi = quantization_residual(n, mapping(hi))
    if not (math.isfinite(r_lo) and math.isfinite(r_hi)):
        raise DomainError("non-finite residual at a bracket end")
    if r_lo == 0.0:
        return lo
    if r_hi == 0.0:
        return hi
    if (r_lo > 0.0) == (r_hi > 0.0):
        raise BracketError(
            f"residual does not change sign over ({lo}, {hi}): {r_lo:.3g} vs {r_hi:.3g}"
        )
    scale = max(abs(lo), abs(hi))
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        r_mid = quantization_residual(n, mapping(mid))
        if not math.isfinite(r_mid):
            raise DomainError(f"non-finite residual at trial energy {mid}")
        if r_mid == 0.0:
            return mid
        if (r_mid > 0.0) == (r_lo > 0.0):
            lo, r_lo = mid, r_mid
        else:
            hi, r_hi = mid, r_mid
        if hi - lo <= rel_width * scale:
            break
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class WavefunctionForm:
    """Shape parameters of psi(s) = N s^exp_s (1 - c3 s)^exp_one_minus_s P_n."""

    exp_s: float
    exp_one_minus_s: float
    jacobi_a: float
    jacobi_b: float


def wavefunction_form(c: NUCoefficients, n: int) -> WavefunctionForm:
    """Exponents and Jacobi parameters of the degree-n solution."""
    if n < 0 or n != int(n):
        raise DomainError(f"n must be a non-negative integer, got {n}")
    k = derive_constants(c)
    if k.c12 <= 0.0 or k.c13 <= 0.0:
        raise NonNormalizableStateError(
            f"shape exponents must be positive for a normalizable state "
            f"(c12={k.c12}, c13={k.c13})"
        )
    return WavefunctionForm(exp_s=k.c12, exp_one_minus_s=k.c13, jacobi_a=k.c10, jacobi_b=k.c11)


def nu_wavefunction(c: NUCoefficients, n: int, s):
    """Unnormalized psi(s) assembled from the shape parameters.

    Intended for verification work on s in (0, 1/c3); scalar or ndarray.
    """
    form = wavefunction_form(c, n)
    s_arr = np.asarray(s, dtype=float)
    poly = jacobi_poly(JacobiParams(n, form.jacobi_a, form.jacobi_b), 1.0 - 2.0 * c.c3 * s_arr)
    value = s_arr**form.exp_s * (1.0 - c.c3 * s_arr) ** form.exp_one_minus_s * poly
    if np.ndim(s) == 0:
        return float(value)
    return value
