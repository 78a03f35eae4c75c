"""Shifted Deng-Fan potential: closed-form spectrum and wavefunctions.

The substitution s = exp(-alpha r), together with a Pekeris-type
exponential replacement of the centrifugal term, maps the radial
equation onto the parametric hypergeometric form handled by `nu`. Two
dimensionless quantities fix every closed formula:

    delta_l  short-range exponent, 0.5 (1 + sqrt((1+2l)^2 + 4 d b^2/alpha^2))
    eta      decay rate of the bound tail in units of alpha

with d = D/kappa the reduced well depth and b = exp(alpha r_e) - 1.
Bound states exist while eta > 0; their energy is
kappa alpha^2 (l(l+1) d0 - eta^2).

All prefactors of the normalized wavefunction are assembled in log
space (gamma arguments reach ~2000 for CO) with the sign tracked
separately; exponentiation happens once, at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import ConvergenceError, DomainError, UnboundStateError
from .molecules import DEFAULT_CONSTANTS, MoleculeParams, PhysicalConstants, kappa
from .nu import NUCoefficients
from .specfun import JacobiParams, hyp2f1_terminating, jacobi_poly, log_gamma


def b_param(alpha: float, r_e: float) -> float:
    """Dimensionless well-shape parameter exp(alpha r_e) - 1."""
    if alpha <= 0.0 or r_e <= 0.0:
        raise DomainError(f"alpha and r_e must be strictly positive, got ({alpha}, {r_e})")
    return float(np.expm1(alpha * r_e))


@dataclass(frozen=True)
class SdfPotential:
    """Shifted Deng-Fan well: depth D (eV), range alpha (1/A), minimum at r_e (A)."""

    D: float
    alpha: float
    r_e: float

    def __post_init__(self) -> None:
        if self.D <= 0.0:
            raise DomainError("well depth D must be strictly positive")
        if self.alpha <= 0.0 or self.r_e <= 0.0:
            raise DomainError("alpha and r_e must be strictly positive")

    @property
    def b(self) -> float:
        return b_param(self.alpha, self.r_e)

    @classmethod
    def from_molecule(cls, mol: MoleculeParams,
                      constants: PhysicalConstants = DEFAULT_CONSTANTS) -> "SdfPotential":
        return cls(D=mol.d_ev(constants), alpha=mol.alpha, r_e=mol.r_e)


def _match_input(r, value):
    if np.ndim(r) == 0:
        return float(value)
    return value


def v_sdf(r, p: SdfPotential):
    """Potential energy in eV: -D at r_e, 0 at infinity, +inf as r -> 0."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0.0):
        raise DomainError("r must be strictly positive")
    w = p.b / np.expm1(p.alpha * r_arr)
    return _match_input(r, p.D * (w * w - 2.0 * w))


def v_df(r, p: SdfPotential):
    """Unshifted variant D (1 - b/(exp(alpha r) - 1))^2; equals v_sdf + D."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0.0):
        raise DomainError("r must be strictly positive")
    w = 1.0 - p.b / np.expm1(p.alpha * r_arr)
    return _match_input(r, p.D * w * w)


def pekeris_centrifugal(r, alpha: float, d0: float):
    """Exponential stand-in for 1/r^2: alpha^2 (d0 + 1/t + 1/t^2), t = exp(alpha r) - 1.

    Exact in the alpha -> 0 limit; with d0 = 1/12 the leading error at
    small alpha r is (alpha r)^2/240 relative.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0.0):
        raise DomainError("r must be strictly positive")
    if alpha <= 0.0:
        raise DomainError("alpha must be strictly positive")
    t = np.expm1(alpha * r_arr)
    return _match_input(r, alpha * alpha * (d0 + 1.0 / t + 1.0 / (t * t)))


@dataclass(frozen=True)
class ReducedQuantities:
    """Energy and depth in A^-2: epsilon = E/kappa, d = D/kappa."""

    epsilon: float
    d: float

    def __post_init__(self) -> None:
        if self.d <= 0.0:
            raise DomainError("reduced depth d must be strictly positive")


def reduced_quantities(energy: float, p: SdfPotential, mu: float,
                       constants: PhysicalConstants = DEFAULT_CONSTANTS) -> ReducedQuantities:
    k = kappa(mu, constants)
    return ReducedQuantities(epsilon=energy / k, d=p.D / k)


def map_to_nu(epsilon: float, d: float, b: float, l: int, d0: float,
              alpha: float) -> NUCoefficients:
    """Coefficients of the parametric equation for a trial reduced energy."""
    a2 = alpha * alpha
    ll = l * (l + 1.0)
    return NUCoefficients(
        c1=1.0,
        c2=1.0,
        c3=1.0,
        A=(d * b * (2.0 + b) - epsilon) / a2 + ll * d0,
        B=2.0 * (d * b - epsilon) / a2 + ll * (2.0 * d0 - 1.0),
        C=-epsilon / a2 + ll * d0,
    )


def delta_from_reduced(l: int, d: float, b: float, alpha: float) -> float:
    """Short-range exponent; >= 1, strictly increasing in l and in the depth."""
    if l < 0:
        raise DomainError("l must be non-negative")
    return 0.5 * (1.0 + math.sqrt((1.0 + 2.0 * l) ** 2 + 4.0 * d * b * b / (alpha * alpha)))


def eta_from_reduced(n: int, l: int, d: float, b: float, alpha: float) -> float:
    """Tail decay rate in units of alpha; positive exactly for bound states."""
    if n < 0:
        raise DomainError("n must be non-negative")
    m = n + delta_from_reduced(l, d, b, alpha)
    strength = d * b * (2.0 + b) / (alpha * alpha)
    return strength / (2.0 * m) - 0.5 * m


def delta_l(l: int, p: SdfPotential, mu: float,
            constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    return delta_from_reduced(l, p.D / kappa(mu, constants), p.b, p.alpha)


def eta(n: int, l: int, p: SdfPotential, mu: float,
        constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    return eta_from_reduced(n, l, p.D / kappa(mu, constants), p.b, p.alpha)


def max_bound_n(l: int, p: SdfPotential, mu: float,
                constants: PhysicalConstants = DEFAULT_CONSTANTS) -> int:
    """Largest n with eta > 0, or -1 when no bound state exists for this l."""
    d = p.D / kappa(mu, constants)
    b = p.b
    limit = math.sqrt(d * b * (2.0 + b)) / p.alpha - delta_from_reduced(l, d, b, p.alpha)
    if limit <= 0.0:
        return -1
    n_max = int(math.floor(limit))
    if n_max == limit:  # eta exactly zero is not bound
        n_max -= 1
    return n_max


def energy_nl(n: int, l: int, p: SdfPotential, mu: float,
              d0: float | None = None,
              constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Closed-form bound-state energy in eV.

    Raises UnboundStateError when eta(n, l) <= 0. With l = 0 the result
    is exactly independent of d0.
    """
    d0v = constants.d0 if d0 is None else d0
    k = kappa(mu, constants)
    et = eta_from_reduced(n, l, p.D / k, p.b, p.alpha)
    if et <= 0.0:
        raise UnboundStateError(f"(n={n}, l={l}) is not bound (eta={et:.6g})")
    return k * p.alpha**2 * (l * (l + 1.0) * d0v - et * et)


@dataclass(frozen=True)
class BoundState:
    """One bound level with its wavefunction parameters."""

    n: int
    l: int
    energy: float      # eV, negative
    eta: float
    delta_l: float
    norm: float        # A^(-1/2)

    def __post_init__(self) -> None:
        if self.n < 0 or self.l < 0:
            raise DomainError("quantum numbers must be non-negative")
        if not self.energy < 0.0:
            raise UnboundStateError(f"bound-state energy must be negative, got {self.energy}")
        if not self.eta > 0.0:
            raise UnboundStateError(f"eta must be positive, got {self.eta}")
        if not self.delta_l >= 1.0:
            raise DomainError(f"delta_l must be >= 1, got {self.delta_l}")
        if not self.norm > 0.0:
            raise DomainError(f"norm must be positive, got {self.norm}")


def log_norm_constant(n: int, l: int, p: SdfPotential, mu: float,
                      constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """ln N_nl, assembled purely from log-gamma terms."""
    d = p.D / kappa(mu, constants)
    de = delta_from_reduced(l, d, p.b, p.alpha)
    et = eta_from_reduced(n, l, d, p.b, p.alpha)
    if et <= 0.0:
        raise UnboundStateError(f"(n={n}, l={l}) is not bound (eta={et:.6g})")
    return 0.5 * (
        math.log(2.0 * et * p.alpha)
        + log_gamma(n + 1.0)
        + math.log(n + et + de)
        + log_gamma(n + 2.0 * (et + de))
        - math.log(n + de)
        - log_gamma(n + 2.0 * et + 1.0)
        - log_gamma(n + 2.0 * de)
    )


def norm_constant(n: int, l: int, p: SdfPotential, mu: float,
                  constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Normalization constant N_nl in A^(-1/2)."""
    return math.exp(log_norm_constant(n, l, p, mu, constants))


def bound_state(n: int, l: int, p: SdfPotential, mu: float,
                d0: float | None = None,
                constants: PhysicalConstants = DEFAULT_CONSTANTS) -> BoundState:
    """Assemble the full bound-state record for (n, l)."""
    return BoundState(
        n=n,
        l=l,
        energy=energy_nl(n, l, p, mu, d0, constants),
        eta=eta(n, l, p, mu, constants),
        delta_l=delta_l(l, p, mu, constants),
        norm=norm_constant(n, l, p, mu, constants),
    )


def radial_wavefunction(n: int, l: int, p: SdfPotential, mu: float, r, *,
                        constants: PhysicalConstants = DEFAULT_CONSTANTS,
                        route: str = "jacobi"):
    """Normalized radial wavefunction R_nl(r) in A^(-1/2).

    R = N exp(-eta alpha r) (1 - exp(-alpha r))^delta P_n(1 - 2 exp(-alpha r))
    with Jacobi parameters (2 eta, 2 delta - 1). `route` selects the
    polynomial evaluation: "jacobi" (recurrence) or "hypergeometric"
    (terminating series with its Pochhammer prefactor); the two agree to
    rounding and exist as mutual checks.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0.0):
        raise DomainError("r must be strictly positive")
    d = p.D / kappa(mu, constants)
    de = delta_from_reduced(l, d, p.b, p.alpha)
    et = eta_from_reduced(n, l, d, p.b, p.alpha)
    if et <= 0.0:
        raise UnboundStateError(f"(n={n}, l={l}) is not bound (eta={et:.6g})")
    s = np.exp(-p.alpha * r_arr)
    log_env = (log_norm_constant(n, l, p, mu, constants)
               - et * p.alpha * r_arr + de * np.log1p(-s))
    if route == "jacobi":
        poly = np.asarray(jacobi_poly(JacobiParams(n, 2.0 * et, 2.0 * de - 1.0), 1.0 - 2.0 * s))
    elif route == "hypergeometric":
        log_env = log_env + (log_gamma(2.0 * et + 1.0 + n) - log_gamma(2.0 * et + 1.0)
                             - log_gamma(n + 1.0))
        poly = np.asarray(hyp2f1_terminating(n, n + 2.0 * (et + de), 1.0 + 2.0 * et, s))
    else:
        raise ValueError(f"unknown route '{route}'")
    with np.errstate(divide="ignore"):
        log_poly = np.log(np.abs(poly))
    value = np.sign(poly) * np.exp(log_env + log_poly)
    return _match_input(r, value)


def count_radial_nodes(n: int, l: int, p: SdfPotential, mu: float, *,
                       constants: PhysicalConstants = DEFAULT_CONSTANTS,
                       r_max: float | None = None, points: int = 20001) -> int:
    """Interior sign changes of R_nl on a dense radial grid.

    Counted on the polynomial factor: the envelope is strictly positive
    for r > 0, so it carries no sign change, and the count survives
    envelope underflow for heavy molecules.
    """
    d = p.D / kappa(mu, constants)
    de = delta_from_reduced(l, d, p.b, p.alpha)
    et = eta_from_reduced(n, l, d, p.b, p.alpha)
    if et <= 0.0:
        raise UnboundStateError(f"(n={n}, l={l}) is not bound")
    if r_max is None:
        r_max = max(20.0 / p.alpha, 6.0 * p.r_e)
    r_grid = np.linspace(1e-4, r_max, points)
    poly = jacobi_poly(JacobiParams(n, 2.0 * et, 2.0 * de - 1.0),
                       1.0 - 2.0 * np.exp(-p.alpha * r_grid))
    signs = np.sign(poly)
    signs = signs[signs != 0.0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def normalization_integral(n: int, l: int, p: SdfPotential, mu: float, *,
                           constants: PhysicalConstants = DEFAULT_CONSTANTS,
                           rel_tol: float = 1e-9) -> float:
    """Adaptive quadrature of int |R_nl|^2 dr, via the substitution s = exp(-alpha r).

    The integrand behaves like s^(2 eta - 1) at s = 0 and
    (1 - s)^(2 delta) at s = 1; returns a value that must equal 1 for a
    correctly normalized state.
    """
    d = p.D / kappa(mu, constants)
    de = delta_from_reduced(l, d, p.b, p.alpha)
    et = eta_from_reduced(n, l, d, p.b, p.alpha)
    if et <= 0.0:
        raise UnboundStateError(f"(n={n}, l={l}) is not bound")
    log_n2 = 2.0 * log_norm_constant(n, l, p, mu, constants)
    jac = JacobiParams(n, 2.0 * et, 2.0 * de - 1.0)
    log_alpha = math.log(p.alpha)

    def integrand(s: float) -> float:
        if s <= 0.0 or s >= 1.0:
            return 0.0
        poly = jacobi_poly(jac, 1.0 - 2.0 * s)
        if poly == 0.0:
            return 0.0
        log_val = (log_n2 + (2.0 * et - 1.0) * math.log(s)
                   + 2.0 * de * math.log1p(-s) - log_alpha
                   + 2.0 * math.log(abs(poly)))
        return math.exp(log_val) if log_val > -700.0 else 0.0

    # hint the adaptive scheme at the envelope peak
    peak = (2.0 * et - 1.0) / (2.0 * et - 1.0 + 2.0 * de) if et > 0.5 else 0.5 / (0.5 + 2.0 * de)
    peak = min(max(peak, 1e-12), 1.0 - 1e-12)
    value, err = integrate.quad(integrand, 0.0, 1.0, points=[peak],
                                limit=200, epsabs=0.0, epsrel=rel_tol)
    if not math.isfinite(value) or (value != 0.0 and err / abs(value) > 1e-6):
        raise ConvergenceError(
            f"normalization quadrature did not converge for (n={n}, l={l}): "
            f"value={value}, err={err}"
        )
    return float(value)


def _signed_log_gamma(x: float) -> tuple[float, float]:
    """(sign, ln|Gamma(x)|) for any non-pole real x, via reflection for x < 0."""
    if x > 0.0:
        return 1.0, math.lgamma(x)
    if x == math.floor(x):
        raise DomainError(f"Gamma pole at {x}")
    refl = math.pi / math.sin(math.pi * x)
    return math.copysign(1.0, refl), math.log(abs(refl)) - math.lgamma(1.0 - x)


def verify_eq29(a: float, b: float, n: int) -> tuple[float, float]:
    """Both sides of the squared-series integral identity.

    lhs: quadrature of int_0^1 s^(2a-1) (1-s)^(2(b+1))
         [2F1(-n, n + 2(a+b+1); 2a+1; s)]^2 ds
    rhs: its closed form in gamma functions.

    Stated validity is a > -1/2, b > -3/2, but the integral only
    converges for a > 0; a <= 0 raises ConvergenceError up front.
    """
    if not a > -0.5:
        raise DomainError(f"requires a > -1/2, got {a}")
    if not b > -1.5:
        raise DomainError(f"requires b > -3/2, got {b}")
    if n < 0 or n != int(n) or n > 8:
        raise DomainError(f"n must be an integer in [0, 8], got {n}")
    if a <= 0.0:
        raise ConvergenceError(
            f"lhs integral diverges at s = 0 for a = {a} <= 0 despite the stated range"
        )
    n = int(n)

    beta_series = n + 2.0 * (a + b + 1.0)
    gamma_series = 2.0 * a + 1.0

    def series_sq(s: float) -> float:
        val = hyp2f1_terminating(n, beta_series, gamma_series, s)
        return val * val

    exp0 = 2.0 * a - 1.0
    exp1 = 2.0 * (b + 1.0)
    if exp0 < 0.0 or exp1 < 0.0:
        # endpoint-singular weights go to the dedicated QUADPACK rule
        lhs, err = integrate.quad(series_sq, 0.0, 1.0, weight="alg",
                                  wvar=(exp0, exp1), limit=200)
    else:
        def integrand(s: float) -> float:
            if s <= 0.0 or s >= 1.0:
                return 0.0
            return s**exp0 * (1.0 - s) ** exp1 * series_sq(s)

        lhs, err = integrate.quad(integrand, 0.0, 1.0, limit=200, epsabs=0.0, epsrel=1e-11)
    if not math.isfinite(lhs) or (lhs != 0.0 and err / abs(lhs) > 1e-8):
        raise ConvergenceError(f"lhs quadrature did not converge: value={lhs}, err={err}")

    sign = 1.0
    log_mag = log_gamma(n + 1.0) + log_gamma(2.0 * a) + log_gamma(2.0 * a + 1.0) \
        - log_gamma(n + 2.0 * a + 1.0)
    for factor in (n + b + 1.0, 1.0 / (n + a + b + 1.0)):
        sign *= math.copysign(1.0, factor)
        log_mag += math.log(abs(factor))
    for gamma_arg, power in ((n + 2.0 * b + 2.0, +1.0), (n + 2.0 * (a + b + 1.0), -1.0)):
        s_g, l_g = _signed_log_gamma(gamma_arg)
        sign *= s_g
        log_mag += power * l_g
    rhs = sign * math.exp(log_mag)
    return float(lhs), float(rhs)
