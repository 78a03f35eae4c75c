"""Physical constants, unit conversion, and the bundled molecule table.

Everything downstream of this module works in eV and Angstrom only.
Wavenumber input (cm^-1) is converted once, here, at the database
boundary, so no other module ever sees a mixed unit system.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import DomainError, MoleculeParseError

# one cm^-1 expressed in Angstrom^-1
_CM1_IN_INVERSE_ANGSTROM = 1e-8


@dataclass(frozen=True)
class PhysicalConstants:
    """hbar*c in eV*Angstrom, one amu in eV, and the Pekeris offset d0."""

    hbar_c: float = 1973.29
    amu_c2: float = 931.494028e6
    d0: float = 1.0 / 12.0

    def __post_init__(self) -> None:
        if self.hbar_c <= 0.0:
            raise DomainError("hbar_c must be strictly positive")
        if self.amu_c2 <= 0.0:
            raise DomainError("amu_c2 must be strictly positive")
        if not 0.0 <= self.d0 < 1.0:
            raise DomainError("d0 must lie in [0, 1)")


DEFAULT_CONSTANTS = PhysicalConstants()


def cm1_to_ev(wavenumber: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Photon energy in eV for a wavenumber in cm^-1 (E = 2 pi hbar c / lambda)."""
    if wavenumber < 0.0:
        raise DomainError("wavenumber must be non-negative")
    return wavenumber * 2.0 * math.pi * constants.hbar_c * _CM1_IN_INVERSE_ANGSTROM


def kappa(mu: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """hbar^2/(2 mu) in eV*Angstrom^2 for a reduced mass in amu."""
    if mu <= 0.0:
        raise DomainError("reduced mass must be strictly positive")
    return constants.hbar_c**2 / (2.0 * mu * constants.amu_c2)


# JSON keys of the database format, in writing order.
_RECORD_KEYS = ("name", "mu_amu", "alpha_per_angstrom", "re_angstrom", "D_cm1", "D_ev")


@dataclass(frozen=True)
class MoleculeParams:
    """One molecule record: reduced mass (amu), range (1/A), bond length (A), depth (cm^-1)."""

    name: str
    mu: float
    alpha: float
    r_e: float
    D_wavenumber: float
    # Pins the well depth in eV when the source tabulated it directly;
    # must stay within 0.1% of the converted D_wavenumber.
    D_ev_override: float | None = None

    def __post_init__(self) -> None:
        if not self.name:
            raise MoleculeParseError("field 'name' must be a non-empty string")
        for attr, key in (("mu", "mu_amu"), ("alpha", "alpha_per_angstrom"),
                          ("r_e", "re_angstrom"), ("D_wavenumber", "D_cm1")):
            value = getattr(self, attr)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise MoleculeParseError(f"field '{key}' must be a finite number")
            if value <= 0.0:
                raise MoleculeParseError(f"field '{key}' must be strictly positive")
        if self.D_ev_override is not None:
            converted = cm1_to_ev(self.D_wavenumber)
            if abs(self.D_ev_override - converted) > 1e-3 * converted:
                raise MoleculeParseError(
                    "field 'D_ev' deviates more than 0.1% from the converted D_cm1 "
                    f"({self.D_ev_override} vs {converted})"
                )

    def d_ev(self, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
        """Well depth in eV; the override wins when present."""
        if self.D_ev_override is not None:
            return self.D_ev_override
        return cm1_to_ev(self.D_wavenumber, constants)

    def to_record(self) -> dict:
        record = {
            "name": self.name,
            "mu_amu": self.mu,
            "alpha_per_angstrom": self.alpha,
            "re_angstrom": self.r_e,
            "D_cm1": self.D_wavenumber,
        }
        if self.D_ev_override is not None:
            record["D_ev"] = self.D_ev_override
        return record

    @classmethod
    def from_record(cls, record: dict) -> "MoleculeParams":
        if not isinstance(record, dict):
            raise MoleculeParseError("record must be a JSON object")
        unknown = set(record) - set(_RECORD_KEYS)
        if unknown:
            raise MoleculeParseError(f"unknown field '{sorted(unknown)[0]}'")
        for key in ("name", "mu_amu", "alpha_per_angstrom", "re_angstrom", "D_cm1"):
            if key not in record:
                raise MoleculeParseError(f"missing field '{key}'")
        return cls(
            name=str(record["name"]),
            mu=_as_number(record, "mu_amu"),
            alpha=_as_number(record, "alpha_per_angstrom"),
            r_e=_as_number(record, "re_angstrom"),
            D_wavenumber=_as_number(record, "D_cm1"),
            D_ev_override=_as_number(record, "D_ev") if "D_ev" in record else None,
        )


def _as_number(record: dict, key: str) -> float:
    value = record[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MoleculeParseError(f"field '{key}' must be a number")
    return float(value)


def loads_molecules(text: str) -> list[MoleculeParams]:
    """Parse the molecule database format.

    One JSON object per line; blank lines and lines starting with '#'
    are skipped, so an empty file is a valid empty database.
    """
    out: list[MoleculeParams] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MoleculeParseError(f"line {lineno}: invalid JSON ({exc})") from exc
        try:
            out.append(MoleculeParams.from_record(record))
        except MoleculeParseError as exc:
            raise MoleculeParseError(f"line {lineno}: {exc}") from exc
    return out


def dumps_molecules(molecules: list[MoleculeParams]) -> str:
    """Serialize records to the database format (round-trips exactly)."""
    lines = [json.dumps(mol.to_record()) for mol in molecules]
    return "\n".join(lines) + ("\n" if lines else "")


def load_molecules(path: str | Path) -> list[MoleculeParams]:
    """Load a molecule database file."""
    p = Path(path)
    if not p.is_file():
        raise MoleculeParseError(f"molecule database not found: {p}")
    return loads_molecules(p.read_text(encoding="utf-8"))


def default_molecules() -> list[MoleculeParams]:
    """The four bundled molecules (H2, LiH, CO, HCl)."""
    text = resources.files("dengfan.data").joinpath("molecules.jsonl").read_text(encoding="utf-8")
    return loads_molecules(text)


def get_molecule(name: str, molecules: list[MoleculeParams] | None = None) -> MoleculeParams:
    """Look up one molecule by name (case-sensitive)."""
    table = default_molecules() if molecules is None else molecules
    for mol in table:
        if mol.name == name:
            return mol
    known = ", ".join(mol.name for mol in table)
    raise KeyError(f"unknown molecule '{name}' (known: {known})")
