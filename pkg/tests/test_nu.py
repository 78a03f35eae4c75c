import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dengfan.errors import (
    BracketError,
    DomainError,
    NonNormalizableStateError,
    UnsupportedBranchError,
)
from dengfan.molecules import kappa
from dengfan.nu import (
    NUCoefficients,
    derive_constants,
    nu_wavefunction,
    quantization_residual,
    solve_energy_by_root,
    wavefunction_form,
)
from dengfan.sdf import (
    SdfPotential,
    delta_l,
    energy_nl,
    eta,
    map_to_nu,
    reduced_quantities,
)


def sdf_mapping(pot, mu, l, d0=1.0 / 12.0):
    d = pot.D / kappa(mu)
    return lambda eps: map_to_nu(eps, d, pot.b, l, d0, pot.alpha)


class TestDeriveConstants:
    def test_trivial_substitution(self):
        k = derive_constants(NUCoefficients(1.0, 1.0, 1.0, 0.0, 0.0, 0.0))
        assert k.c4 == 0.0
        assert k.c5 == -0.5
        assert k.c6 == 0.25
        assert k.c7 == 0.0
        assert k.c8 == 0.0
        assert k.c9 == 0.25
        assert k.c12 == 0.0
        assert k.c13 == 1.0

    @given(st.floats(0.0, 50.0), st.floats(-20.0, 20.0), st.floats(0.0, 30.0))
    def test_specialized_expressions(self, a, b, c_val):
        # c1 = c2 = c3 = 1 specialization of the general formulas; the
        # printed specialization table is reproduced except for its c10
        # entry, which contradicts the general formula (we follow the
        # general one: c10 = 2 sqrt(C)).
        radicand = 4.0 * (a - b + c_val) + 1.0
        if radicand < 0.0:
            return
        k = derive_constants(NUCoefficients(1.0, 1.0, 1.0, a, b, c_val))
        root = math.sqrt(radicand)
        assert k.c4 == 0.0
        assert k.c5 == -0.5
        assert k.c6 == pytest.approx(a + 0.25, rel=1e-14, abs=1e-14)
        assert k.c7 == pytest.approx(-b, rel=1e-14, abs=1e-14)
        assert k.c8 == pytest.approx(c_val, rel=1e-15, abs=0.0)
        assert k.c9 == pytest.approx(radicand / 4.0, rel=1e-13, abs=1e-13)
        assert k.c10 == pytest.approx(2.0 * math.sqrt(c_val), rel=1e-13, abs=1e-13)
        assert k.c11 == pytest.approx(root, rel=1e-13, abs=1e-13)
        assert k.c12 == pytest.approx(math.sqrt(c_val), rel=1e-14, abs=1e-14)
        assert k.c13 == pytest.approx(0.5 * (1.0 + root), rel=1e-13, abs=1e-13)

    def test_c3_zero_unsupported(self):
        with pytest.raises(UnsupportedBranchError):
            derive_constants(NUCoefficients(1.0, 1.0, 0.0, 1.0, 1.0, 1.0))

    def test_negative_radicand(self):
        with pytest.raises(DomainError):
            derive_constants(NUCoefficients(1.0, 1.0, 1.0, 0.0, 0.0, -1.0))

    def test_exponents_match_bound_state_parameters(self, h2):
        mol, pot = h2
        e0 = energy_nl(0, 0, pot, mol.mu)
        red = reduced_quantities(e0, pot, mol.mu)
        k = derive_constants(sdf_mapping(pot, mol.mu, 0)(red.epsilon))
        assert k.c12 == pytest.approx(eta(0, 0, pot, mol.mu), rel=1e-10)
        assert k.c13 == pytest.approx(delta_l(0, pot, mol.mu), rel=1e-10)


class TestQuantizationResidual:
    def test_hand_substitution(self):
        c = NUCoefficients(1.0, 1.0, 1.0, 0.0, 0.0, 0.0)
        assert quantization_residual(0, c) == pytest.approx(1.0, rel=1e-15)

    def test_zero_at_eigenvalue(self, h2):
        mol, pot = h2
        e0 = energy_nl(0, 0, pot, mol.mu)
        eps0 = reduced_quantities(e0, pot, mol.mu).epsilon
        residual = quantization_residual(0, sdf_mapping(pot, mol.mu, 0)(eps0))
        assert abs(residual) < 1e-8

    def test_displaced_energy_has_consistent_sign(self, h2):
        # the residual decreases in the energy variable, so pushing the
        # trial energy deeper (more negative) must leave it positive
        mol, pot = h2
        e0 = energy_nl(0, 0, pot, mol.mu)
        eps0 = reduced_quantities(e0, pot, mol.mu).epsilon
        mapping = sdf_mapping(pot, mol.mu, 0)
        assert quantization_residual(0, mapping(1.1 * eps0)) > 0.0
        assert quantization_residual(0, mapping(0.9 * eps0)) < 0.0

    def test_negative_n_rejected(self):
        with pytest.raises(DomainError):
            quantization_residual(-1, NUCoefficients(1.0, 1.0, 1.0, 0.0, 0.0, 0.0))


class TestSolveEnergyByRoot:
    def test_h2_ground_state_matches_closed_form(self, h2):
        mol, pot = h2
        red = reduced_quantities(-1.0, pot, mol.mu)
        eps = solve_energy_by_root(0, 0, sdf_mapping(pot, mol.mu, 0), (-red.d, 0.0))
        expected = energy_nl(0, 0, pot, mol.mu) / kappa(mol.mu)
        assert eps == pytest.approx(expected, rel=1e-10)

    def test_co_excited_state_matches_closed_form(self, molecules, potentials):
        mol, pot = molecules["CO"], potentials["CO"]
        red = reduced_quantities(-1.0, pot, mol.mu)
        eps = solve_energy_by_root(7, 10, sdf_mapping(pot, mol.mu, 10), (-red.d, 0.0))
        expected = energy_nl(7, 10, pot, mol.mu) / kappa(mol.mu)
        assert eps == pytest.approx(expected, rel=1e-10)

    def test_degenerate_bracket(self, h2):
        mol, pot = h2
        with pytest.raises(BracketError):
            solve_energy_by_root(0, 0, sdf_mapping(pot, mol.mu, 0), (-5.0, -5.0))

    def test_no_sign_change(self, h2):
        mol, pot = h2
        with pytest.raises(BracketError):
            solve_energy_by_root(0, 0, sdf_mapping(pot, mol.mu, 0), (-3.0, -1.0))


@given(st.floats(-2000.0, -1e-3))
def test_c13_is_independent_of_trial_energy(eps):
    pot = SdfPotential(D=4.74441001, alpha=1.9426, r_e=0.7416)
    mapping = sdf_mapping(pot, 0.50391, 3)
    k_ref = derive_constants(mapping(-500.0))
    k = derive_constants(mapping(eps))
    assert k.c13 == pytest.approx(k_ref.c13, rel=1e-12)


def test_c13_variance_over_energy_samples(h2):
    mol, pot = h2
    mapping = sdf_mapping(pot, mol.mu, 5)
    values = np.array([derive_constants(mapping(eps)).c13
                       for eps in np.linspace(-1100.0, -1.0, 100)])
    assert float(np.var(values)) < 1e-14
    assert float(values.max() - values.min()) < 1e-10 * float(values.mean())


def quantized_coefficients(eta_val: float, delta_val: float, n: int) -> NUCoefficients:
    """Coefficients with c1=c2=c3=1 built to satisfy the quantization
    condition exactly at degree n, with prescribed shape exponents."""
    c_val = eta_val * eta_val
    a_val = (eta_val + n + delta_val) ** 2
    b_val = a_val + c_val + 0.25 - (delta_val - 0.5) ** 2
    return NUCoefficients(1.0, 1.0, 1.0, a_val, b_val, c_val)


class TestWavefunctionForm:
    def test_bound_state_shape(self, h2):
        mol, pot = h2
        e0 = energy_nl(2, 0, pot, mol.mu)
        eps0 = reduced_quantities(e0, pot, mol.mu).epsilon
        form = wavefunction_form(sdf_mapping(pot, mol.mu, 0)(eps0), 2)
        et = eta(2, 0, pot, mol.mu)
        de = delta_l(0, pot, mol.mu)
        assert form.exp_s == pytest.approx(et, rel=1e-10)
        assert form.exp_one_minus_s == pytest.approx(de, rel=1e-10)
        assert form.jacobi_a == pytest.approx(2.0 * et, rel=1e-10)
        assert form.jacobi_b == pytest.approx(2.0 * de - 1.0, rel=1e-10)

    def test_sqrt_c_exponent(self):
        form = wavefunction_form(NUCoefficients(1.0, 1.0, 1.0, 0.0, 0.0, 0.25), 0)
        assert form.exp_s == 0.5

    def test_non_normalizable_rejected(self):
        with pytest.raises(NonNormalizableStateError):
            wavefunction_form(NUCoefficients(1.0, 1.0, 1.0, 0.0, 0.0, 0.0), 0)

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_assembled_solution_satisfies_the_ode(self, n):
        # central-difference residual of the full equation on 200
        # interior points, scaled by h^2 and the solution peak; the
        # difference step is decoupled from the evaluation grid so the
        # endpoint-singular fourth derivative stays out of the budget
        c = quantized_coefficients(1.3, 2.2, n)
        assert abs(quantization_residual(n, c)) < 1e-10
        s = np.linspace(0.0, 1.0, 202)[1:-1]
        h = 1e-4
        psi = nu_wavefunction(c, n, s)
        psi_plus = nu_wavefunction(c, n, s + h)
        psi_minus = nu_wavefunction(c, n, s - h)
        second = psi_plus - 2.0 * psi + psi_minus
        first = (psi_plus - psi_minus) / 2.0
        tau = (c.c1 - c.c2 * s) / (s * (1.0 - c.c3 * s))
        sigma = (-c.A * s**2 + c.B * s - c.C) / (s * (1.0 - c.c3 * s)) ** 2
        residual = second + h * tau * first + h * h * sigma * psi
        peak = float(np.max(np.abs(psi)))
        assert float(np.max(np.abs(residual))) / peak < 1e-6
