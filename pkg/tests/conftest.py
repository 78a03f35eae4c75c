import time

import pytest
from hypothesis import HealthCheck, settings

from dengfan.molecules import default_molecules, kappa
from dengfan.sdf import SdfPotential
from dengfan.tables import oracle_energy, reference_levels

settings.register_profile(
    "package",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("package")


@pytest.fixture(scope="session")
def molecules():
    return {mol.name: mol for mol in default_molecules()}


@pytest.fixture(scope="session")
def potentials(molecules):
    return {name: SdfPotential.from_molecule(mol) for name, mol in molecules.items()}


@pytest.fixture(scope="session")
def h2(molecules, potentials):
    return molecules["H2"], potentials["H2"]


@pytest.fixture(scope="session")
def oracle_table(molecules, potentials):
    """All 36 reference states solved by the Numerov oracle, with wall time."""
    energies = {}
    start = time.perf_counter()
    for ref in reference_levels():
        mol = molecules[ref.molecule]
        energies[(ref.molecule, ref.n, ref.l)] = oracle_energy(
            potentials[ref.molecule], ref.n, ref.l, mol.mu
        )
    elapsed = time.perf_counter() - start
    return energies, elapsed


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: release-gate criteria")
