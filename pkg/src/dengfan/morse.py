"""Morse oscillator comparison model.

Only the s-wave spectrum is computed analytically; rotating-Morse
levels for l > 0 are shipped as reference fixture data (see `tables`),
not recomputed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnboundStateError
from .molecules import DEFAULT_CONSTANTS, MoleculeParams, PhysicalConstants, kappa


@dataclass(frozen=True)
class MorsePotential:
    """D (1 - exp(-alpha (r - r_e)))^2: zero at r_e, D at infinity, finite at r = 0."""

    D: float
    alpha: float
    r_e: float

    def __post_init__(self) -> None:
        if self.D <= 0.0 or self.alpha <= 0.0 or self.r_e <= 0.0:
            raise DomainError("Morse parameters must be strictly positive")

    @classmethod
    def from_molecule(cls, mol: MoleculeParams,
                      constants: PhysicalConstants = DEFAULT_CONSTANTS) -> "MorsePotential":
        return cls(D=mol.d_ev(constants), alpha=mol.alpha, r_e=mol.r_e)


def v_morse(r, p: MorsePotential):
    """Potential energy in eV; defined for r >= 0 (stays finite at r = 0)."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0.0):
        raise DomainError("r must be non-negative")
    g = -np.expm1(-p.alpha * (r_arr - p.r_e))
    value = p.D * g * g
    if np.ndim(r) == 0:
        return float(value)
    return value


def morse_max_n(p: MorsePotential, mu: float,
                constants: PhysicalConstants = DEFAULT_CONSTANTS) -> int:
    """Largest bound n of the s-wave spectrum (n + 1/2 < sqrt(D/(kappa alpha^2)))."""
    cutoff = math.sqrt(p.D / (kappa(mu, constants) * p.alpha**2))
    limit = cutoff - 0.5
    if limit <= 0.0:
        return -1
    n_max = int(math.floor(limit))
    if n_max == limit:
        n_max -= 1
    return n_max


def morse_energy_l0(n: int, p: MorsePotential, mu: float,
                    constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """s-wave level in eV, measured from the dissociation limit (negative when bound).

    E_n = -D + hw (n + 1/2) - kappa alpha^2 (n + 1/2)^2, hw = 2 alpha sqrt(kappa D).
    """
    if n < 0 or n != int(n):
        raise DomainError(f"n must be a non-negative integer, got {n}")
    k = kappa(mu, constants)
    x = n + 0.5
    if x >= math.sqrt(p.D / (k * p.alpha**2)):
        raise UnboundStateError(
            f"n={n} lies beyond the Morse bound-state cutoff "
            f"(max n = {morse_max_n(p, mu, constants)})"
        )
    hw = 2.0 * p.alpha * math.sqrt(k * p.D)
    return -p.D + hw * x - k * p.alpha**2 * x * x
