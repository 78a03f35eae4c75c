"""Bound-state ro-vibrational spectra of diatomic molecules in the
shifted Deng-Fan potential, cross-validated by an independent Numerov
solver and a quantization-condition root finder."""

__version__ = "0.1.0"

from .errors import (
    BracketError,
    ConvergenceError,
    DengfanError,
    DomainError,
    MoleculeParseError,
    NonNormalizableStateError,
    UnboundStateError,
    UnsupportedBranchError,
)
from .molecules import (
    DEFAULT_CONSTANTS,
    MoleculeParams,
    PhysicalConstants,
    cm1_to_ev,
    default_molecules,
    get_molecule,
    kappa,
    load_molecules,
)
from .morse import MorsePotential, morse_energy_l0, v_morse
from .nu import (
    NUCoefficients,
    NUConstants,
    WavefunctionForm,
    derive_constants,
    quantization_residual,
    solve_energy_by_root,
    wavefunction_form,
)
from .numerov import (
    RadialProblem,
    ShootingResult,
    count_nodes,
    default_problem,
    normalize_quadrature,
    solve_bound_state,
)
from .sdf import (
    BoundState,
    SdfPotential,
    b_param,
    bound_state,
    delta_l,
    energy_nl,
    eta,
    map_to_nu,
    max_bound_n,
    norm_constant,
    normalization_integral,
    pekeris_centrifugal,
    radial_wavefunction,
    v_df,
    v_sdf,
    verify_eq29,
)

__all__ = [name for name in dir() if not name.startswith("_")]
