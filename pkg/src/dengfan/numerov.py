"""Numerov shooting solver for radial bound states with the exact centrifugal term.

Fully independent of the closed-form machinery: given any radial
potential V(r) in eV and kappa = hbar^2/(2 mu) in eV A^2, it integrates

    R'' = [ (V(r) - E)/kappa + l(l+1)/r^2 ] R

on a uniform grid, outward from the origin side and inward from the far
wall. The eigenvalue is pinned by bisection, first on the node count of
the outward solution (the count jumps from n to n+1 exactly at the n-th
eigenvalue), then on the log-derivative mismatch of the two branches at
the outermost classical turning point.

Two practical safeguards:

* exponential growth through classically forbidden regions is handled
  by rescaling the solution whenever it exceeds 1e100, never by failing;
* the outward start is pulled in from r_min whenever the inner barrier
  is too stiff for the step (h^2 (U - E)/12 must stay well below 1),
  which costs nothing because the true solution there is hundreds of
  orders of magnitude below any representable amplitude.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numba import njit
from scipy.integrate import simpson

from .errors import BracketError, ConvergenceError, DomainError

_RESCALE = 1e100
_SEED = 1e-150
# target for (local wavenumber x step); keeps the 4th-order eigenvalue
# error near 1e-8 eV for the stiffest bundled molecule (CO)
_KH_TARGET = 0.006
# start integrating where h^2 (U - E)/12 <= 0.5
_STIFFNESS_CAP = 6.0


@dataclass(frozen=True)
class RadialProblem:
    """Radial bound-state problem on a uniform grid.

    `potential` must accept an ndarray of radii (A) and return energies
    (eV). `kappa` is hbar^2/(2 mu) in eV A^2.
    """

    potential: Callable
    l: int
    kappa: float
    r_min: float
    r_max: float
    step: float

    def __post_init__(self) -> None:
        if self.l < 0 or self.l != int(self.l):
            raise DomainError(f"l must be a non-negative integer, got {self.l}")
        if self.kappa <= 0.0:
            raise DomainError("kappa must be strictly positive")
        if not 0.0 < self.r_min < self.r_max:
            raise DomainError(f"need 0 < r_min < r_max, got ({self.r_min}, {self.r_max})")
        if self.step <= 0.0:
            raise DomainError("step must be strictly positive")
        if (self.r_max - self.r_min) / self.step < 1e4:
            raise DomainError("grid too coarse: need at least 1e4 points over the domain")

    @property
    def n_points(self) -> int:
        return int(round((self.r_max - self.r_min) / self.step)) + 1

    def grid(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.n_points)


def default_problem(potential: Callable, l: int, kappa: float, alpha: float, r_e: float, *,
                    r_min: float = 1e-4, r_max: float | None = None,
                    min_points: int = 20001, kh_target: float = _KH_TARGET) -> RadialProblem:
    """Problem with a domain wide enough for the bundled molecules.

    r_max defaults to max(20/alpha, 6 r_e); the step resolves the
    fastest classical oscillation, k_max h <= kh_target, with at least
    `min_points` samples.
    """
    if r_max is None:
        r_max = max(20.0 / alpha, 6.0 * r_e)
    probe = np.linspace(r_min, r_max, 4096)
    v_eff = np.asarray(potential(probe), dtype=float) + kappa * l * (l + 1.0) / probe**2
    if not np.all(np.isfinite(v_eff)):
        raise DomainError("potential produced non-finite samples on the probe grid")
    depth = max(float(v_eff[-1] - v_eff.min()), 1e-30)
    k_max = math.sqrt(depth / kappa)
    n = max(min_points, int(math.ceil((r_max - r_min) * k_max / kh_target)) + 1)
    return RadialProblem(potential=potential, l=l, kappa=kappa,
                         r_min=r_min, r_max=r_max, step=(r_max - r_min) / (n - 1))


@dataclass
class ShootingResult:
    """Converged eigenvalue with its normalized wavefunction on the problem grid."""

    energy: float
    node_count: int
    wavefunction: np.ndarray
    converged: bool
    iterations: int


@njit(cache=True)
def _sweep_nodes(f, i0, i1, y0, y1):
    """Outward Numerov sweep counting sign changes; keeps no history."""
    nodes = 0
    last_sign = 0
    if y0 != 0.0:
        last_sign = 1 if y0 > 0.0 else -1
    if y1 != 0.0:
        s = 1 if y1 > 0.0 else -1
        if last_sign != 0 and s != last_sign:
            nodes += 1
        last_sign = s
    y_prev = y0
    y_curr = y1
    for i in range(i0 + 1, i1):
        y_next = ((12.0 - 10.0 * f[i]) * y_curr - f[i - 1] * y_prev) / f[i + 1]
        if abs(y_next) > _RESCALE:
            y_next /= _RESCALE
            y_curr /= _RESCALE
        if y_next != 0.0:
            s = 1 if y_next > 0.0 else -1
            if last_sign != 0 and s != last_sign:
                nodes += 1
            last_sign = s
        y_prev = y_curr
        y_curr = y_next
    return nodes


@njit(cache=True)
def _sweep_out(f, y, i0, i1):
    """Outward sweep filling y[i0..i1]; y[i0], y[i0+1] must be preseeded."""
    for i in range(i0 + 1, i1):
        y[i + 1] = ((12.0 - 10.0 * f[i]) * y[i] - f[i - 1] * y[i - 1]) / f[i + 1]
        if abs(y[i + 1]) > _RESCALE:
            inv = 1.0 / _RESCALE
            for j in range(i0, i + 2):
                y[j] *= inv


@njit(cache=True)
def _sweep_in(f, y, i_stop, i_end):
    """Inward sweep filling y[i_stop..i_end]; y[i_end], y[i_end-1] preseeded."""
    for i in range(i_end - 1, i_stop, -1):
        y[i - 1] = ((12.0 - 10.0 * f[i]) * y[i] - f[i + 1] * y[i + 1]) / f[i - 1]
        if abs(y[i - 1]) > _RESCALE:
            inv = 1.0 / _RESCALE
            for j in range(i - 1, i_end + 1):
                y[j] *= inv


def _prepare(problem: RadialProblem):
    r = problem.grid()
    v = np.asarray(problem.potential(r), dtype=float)
    if v.shape != r.shape:
        raise DomainError("potential callable must return one sample per radius")
    if not np.all(np.isfinite(v)):
        raise DomainError("potential produced non-finite samples")
    v_eff = v + problem.kappa * problem.l * (problem.l + 1.0) / (r * r)
    u = v_eff / problem.kappa
    h = float(r[1] - r[0])
    return r, u, v_eff, h


def _start_index(u: np.ndarray, eps_floor: float, h: float) -> int:
    cap = _STIFFNESS_CAP / (h * h) + eps_floor
    idx = np.nonzero(u <= cap)[0]
    if idx.size == 0:
        raise DomainError("potential barrier too stiff everywhere for this step size")
    return int(idx[0])


def _outward_seeds(i0: int, r: np.ndarray, l: int) -> tuple[float, float]:
    if i0 == 0:
        # regular small-r behavior r^(l+1), scaled to a safe magnitude
        p0 = (l + 1.0) * math.log(r[0])
        p1 = (l + 1.0) * math.log(r[1])
        top = max(p0, p1)
        return math.exp(p0 - top) * _SEED, math.exp(p1 - top) * _SEED
    # deep inside the inner barrier the true solution is far below any
    # representable amplitude; any seed relaxes onto the growing branch
    return 0.0, _SEED


def count_nodes(problem: RadialProblem, energy: float) -> int:
    """Interior sign changes of the outward-integrated solution at energy E (eV).

    Non-decreasing in E; jumps by one exactly at each eigenvalue.
    """
    if not math.isfinite(energy):
        raise DomainError("energy must be finite")
    r, u, v_eff, h = _prepare(problem)
    eps = energy / problem.kappa
    i0 = _start_index(u, min(eps, float(v_eff.min()) / problem.kappa), h)
    f = 1.0 - (h * h / 12.0) * (u - eps)
    y0, y1 = _outward_seeds(i0, r, problem.l)
    return int(_sweep_nodes(f, i0, u.size - 1, y0, y1))


def solve_bound_state(problem: RadialProblem, n_target: int, *,
                      e_lo: float | None = None, e_hi: float | None = None,
                      e_tol: float = 1e-9, max_sweeps: int = 400) -> ShootingResult:
    """Find the bound state with exactly `n_target` interior nodes.

    Bisects on the outward node count until the eigenvalue is isolated,
    then on the log-derivative mismatch at the outermost classical
    turning point, until the energy bracket is narrower than `e_tol`
    (eV). The returned wavefunction is normalized by quadrature and has
    a positive outer lobe.
    """
    if n_target < 0 or n_target != int(n_target):
        raise DomainError(f"n_target must be a non-negative integer, got {n_target}")
    r, u, v_eff, h = _prepare(problem)
    kap = problem.kappa
    n_pts = r.size
    e_floor = float(v_eff.min())
    e_wall = float(v_eff[-1])
    lo = e_floor + 1e-12 * max(1.0, abs(e_floor)) if e_lo is None else float(e_lo)
    hi = e_wall if e_hi is None else float(e_hi)
    if not lo < hi:
        raise BracketError(f"energy window is empty: ({lo}, {hi})")
    eps_floor = e_floor / kap
    i0 = _start_index(u, min(eps_floor, lo / kap), h)
    sweeps = 0

    def nodes_at(energy: float) -> int:
        nonlocal sweeps
        sweeps += 1
        f = 1.0 - (h * h / 12.0) * (u - energy / kap)
        y0, y1 = _outward_seeds(i0, r, problem.l)
        return int(_sweep_nodes(f, i0, n_pts - 1, y0, y1))

    c_hi = nodes_at(hi)
    if c_hi < n_target + 1:
        raise BracketError(
            f"no state with {n_target} nodes below {hi:.6g} eV (node count there: {c_hi})"
        )
    c_lo = nodes_at(lo)
    if c_lo > n_target:
        raise BracketError(
            f"lower window edge {lo:.6g} eV already has {c_lo} nodes (> {n_target})"
        )

    y_out = np.empty(n_pts)
    y_in = np.empty(n_pts)

    def mismatch(energy: float):
        """Log-derivative difference (out minus in) at the turning point."""
        nonlocal sweeps
        sweeps += 1
        eps = energy / kap
        f = 1.0 - (h * h / 12.0) * (u - eps)
        allowed = np.nonzero(u < eps)[0]
        if allowed.size == 0:
            return None
        i_t = int(allowed[-1])
        if i_t < i0 + 2 or i_t > n_pts - 3:
            return None
        y_out[i0], y_out[i0 + 1] = _outward_seeds(i0, r, problem.l)
        _sweep_out(f, y_out, i0, i_t + 1)
        k_tail = math.sqrt(max(u[-1] - eps, 0.0))
        y_in[n_pts - 1] = _SEED
        y_in[n_pts - 2] = _SEED * math.exp(min(k_tail * h, 200.0))
        _sweep_in(f, y_in, i_t - 1, n_pts - 1)
        if y_out[i_t] == 0.0 or y_in[i_t] == 0.0:
            return None
        scale = y_out[i_t] / y_in[i_t]
        return ((y_out[i_t + 1] - y_out[i_t - 1])
                - scale * (y_in[i_t + 1] - y_in[i_t - 1])) / (2.0 * h * y_out[i_t])

    # phase 1: isolate the jump of the node count from n to n+1
    span = hi - lo
    coarse = max(e_tol, span * 2.0**-22)
    while hi - lo > coarse and sweeps < max_sweeps:
        mid = 0.5 * (lo + hi)
        if nodes_at(mid) <= n_target:
            lo = mid
        else:
            hi = mid

    # phase 2: refine on the matching-derivative discontinuity
    d_lo = mismatch(lo)
    d_hi = mismatch(hi)
    use_derivative = (d_lo is not None and d_hi is not None
                      and (d_lo > 0.0) != (d_hi > 0.0))
    while hi - lo > e_tol and sweeps < max_sweeps:
        mid = 0.5 * (lo + hi)
        if use_derivative:
            d_mid = mismatch(mid)
            if d_mid is None:
                use_derivative = False
                continue
            if (d_mid > 0.0) == (d_lo > 0.0):
                lo, d_lo = mid, d_mid
            else:
                hi = mid
        else:
            if nodes_at(mid) <= n_target:
                lo = mid
            else:
                hi = mid

    if hi - lo > e_tol:
        raise ConvergenceError(
            f"eigenvalue not converged after {sweeps} sweeps; last bracket "
            f"({lo:.12g}, {hi:.12g}) eV"
        )
    energy = 0.5 * (lo + hi)

    # assemble the matched, normalized wavefunction at the converged energy
    eps = energy / kap
    f = 1.0 - (h * h / 12.0) * (u - eps)
    allowed = np.nonzero(u < eps)[0]
    if allowed.size == 0:
        raise ConvergenceError(f"no classically allowed region at E = {energy:.9g} eV")
    i_t = int(min(max(allowed[-1], i0 + 2), n_pts - 3))
    y_out[i0], y_out[i0 + 1] = _outward_seeds(i0, r, problem.l)
    _sweep_out(f, y_out, i0, i_t + 1)
    k_tail = math.sqrt(max(u[-1] - eps, 0.0))
    y_in[n_pts - 1] = _SEED
    y_in[n_pts - 2] = _SEED * math.exp(min(k_tail * h, 200.0))
    _sweep_in(f, y_in, i_t - 1, n_pts - 1)
    wave = np.zeros(n_pts)
    wave[i0:i_t + 1] = y_out[i0:i_t + 1]
    if y_in[i_t] != 0.0:
        wave[i_t:] = y_in[i_t:] * (y_out[i_t] / y_in[i_t])
    norm_sq = normalize_quadrature(wave, r)
    if norm_sq > 0.0:
        wave /= math.sqrt(norm_sq)
    if wave[i_t] < 0.0:
        wave = -wave
    signs = np.sign(wave)
    signs = signs[signs != 0.0]
    node_count = int(np.count_nonzero(signs[1:] != signs[:-1]))
    return ShootingResult(
        energy=energy,
        node_count=node_count,
        wavefunction=wave,
        converged=(node_count == n_target),
        iterations=sweeps,
    )


def normalize_quadrature(samples: np.ndarray, grid: np.ndarray) -> float:
    """Integral of |R|^2 over the grid by composite Simpson quadrature.

    Warns (never fails) when the samples have not decayed below 1e-12
    of their peak at the grid ends; the returned value then misses
    roughly the warned tail fraction.
    """
    samples = np.asarray(samples, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if samples.shape != grid.shape or samples.ndim != 1:
        raise DomainError("samples and grid must be matching one-dimensional arrays")
    peak = float(np.max(np.abs(samples))) if samples.size else 0.0
    if peak == 0.0:
        return 0.0
    edge = max(abs(float(samples[0])), abs(float(samples[-1]))) / peak
    if edge > 1e-12:
        warnings.warn(
            f"wavefunction has not decayed at the grid ends (edge/peak = {edge:.3g}); "
            f"truncation error of order {edge**2:.3g} relative",
            stacklevel=2,
        )
    return float(simpson(samples * samples, x=grid))
