"""Command-line workbench.

Subcommands: levels (spectrum slices), table3 (full reference-table
reproduction with deviations), curves (potential-curve CSV),
wavefunction (radial wavefunction dump), validate (invariant suite).

Exit codes: 0 success, 1 validation failure, 2 usage error,
3 numerical non-convergence. Output is deterministic: identical inputs
produce byte-identical files, metadata lives on '#'-prefixed lines, and
numbers are printed with 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConvergenceError, DengfanError, MoleculeParseError
from .molecules import (
    DEFAULT_CONSTANTS,
    PhysicalConstants,
    default_molecules,
    kappa,
    load_molecules,
)
from .morse import MorsePotential, v_morse
from .numerov import default_problem, solve_bound_state
from .sdf import SdfPotential, radial_wavefunction, v_sdf
from .tables import compute_reference_table, levels_rows
from .validation import run_validation

_METADATA = f"# dengfan {__version__}"


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _emit(lines: list[str], out_path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _render_table(header: list[str], rows: list[list], fmt: str,
                  metadata: list[str]) -> list[str]:
    if fmt == "csv":
        lines = list(metadata)
        lines.append(",".join(header))
        lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
        return lines
    widths = [max(len(h), *(len(_fmt(row[i])) for row in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    lines = list(metadata)
    lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    for row in rows:
        lines.append("  ".join(_fmt(cell).rjust(w) for cell, w in zip(row, widths)))
    return lines


def _load_db(args) -> list:
    if args.config:
        return load_molecules(args.config)
    return default_molecules()


def _constants(args) -> PhysicalConstants:
    if args.d0 is None:
        return DEFAULT_CONSTANTS
    return PhysicalConstants(d0=args.d0)


def _find_molecule(name: str, molecules) -> object | None:
    for mol in molecules:
        if mol.name == name:
            return mol
    return None


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list: {text}") from exc


def cmd_levels(args) -> int:
    molecules = _load_db(args)
    mol = _find_molecule(args.molecule, molecules)
    if mol is None:
        known = ", ".join(m.name for m in molecules)
        print(f"error: unknown molecule '{args.molecule}' (known: {known})", file=sys.stderr)
        return 2
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    bad = set(methods) - {"nu", "oracle", "morse"}
    if bad or not methods:
        print(f"error: methods must be a subset of nu,oracle,morse (got '{args.methods}')",
              file=sys.stderr)
        return 2
    constants = _constants(args)
    rows = levels_rows(mol, args.n, args.l, methods, d0=args.d0, constants=constants)
    header = ["molecule", "n", "l"] + [f"e_{m}" for m in ("nu", "oracle", "morse") if m in methods]
    table = [[row[h] for h in header] for row in rows]
    lines = _render_table(header, table, args.format,
                          [_METADATA, "# energies in eV, negative = bound"])
    _emit(lines, args.out)
    return 0


def cmd_table3(args) -> int:
    molecules = _load_db(args)
    constants = _constants(args)
    rows, failures = compute_reference_table(molecules, d0=args.d0, constants=constants,
                                             with_oracle=not args.skip_oracle)
    header = ["molecule", "n", "l", "minus_e_nu", "minus_e_oracle", "minus_e_morse",
              "dev_nu", "dev_oracle", "dev_morse"]
    table = []
    for row in rows:
        oracle_cell = "failed" if (not args.skip_oracle and row.e_oracle is None) else (
            -row.e_oracle if row.e_oracle is not None else "")
        table.append([
            row.molecule, row.n, row.l,
            -row.e_nu if row.e_nu is not None else "",
            oracle_cell,
            -row.e_morse_ref if row.e_morse_ref is not None else "",
            row.dev_nu if row.dev_nu is not None else "",
            row.dev_oracle if row.dev_oracle is not None else "",
            row.dev_morse if row.dev_morse is not None else "",
        ])
    metadata = [_METADATA,
                "# energies tabulated as -E_nl in eV (positive = bound), matching the reference convention",
                "# dev_* columns: computed minus reference, in eV (signed)"]
    lines = _render_table(header, table, "csv", metadata)
    _emit(lines, args.out)
    summary = []
    for label, values in (("nu", [r.dev_nu for r in rows]),
                          ("oracle", [r.dev_oracle for r in rows]),
                          ("morse_l0", [r.dev_morse for r in rows])):
        known = [abs(v) for v in values if v is not None]
        if known:
            summary.append(f"max |dev_{label}| = {max(known):.3e} eV over {len(known)} cells")
    for failure in failures:
        summary.append(f"oracle non-convergence: {failure}")
    print("\n".join(summary), file=sys.stderr)
    return 3 if failures else 0


def cmd_curves(args) -> int:
    molecules = _load_db(args)
    mol = _find_molecule(args.molecule, molecules)
    if mol is None:
        known = ", ".join(m.name for m in molecules)
        print(f"error: unknown molecule '{args.molecule}' (known: {known})", file=sys.stderr)
        return 2
    if not (0.0 < args.r_min < args.r_max) or args.points < 2:
        print("error: need 0 < r-min < r-max and points >= 2", file=sys.stderr)
        return 2
    constants = _constants(args)
    pot = SdfPotential.from_molecule(mol, constants)
    morse_pot = MorsePotential.from_molecule(mol, constants)
    kap = kappa(mol.mu, constants)
    r = np.linspace(args.r_min, args.r_max, args.points)
    columns = [("r", r), ("v_sdf", v_sdf(r, pot)), ("v_morse", v_morse(r, morse_pot))]
    for l in args.l:
        columns.append((f"v_eff_l{l}", v_sdf(r, pot) + kap * l * (l + 1.0) / (r * r)))
    header = [name for name, _ in columns]
    table = [[col[i] for _, col in columns] for i in range(r.size)]
    metadata = [_METADATA,
                "# r in Angstrom, energies in eV",
                "# v_eff_l = v_sdf + kappa l(l+1)/r^2 with kappa = hbar^2/(2 mu); the",
                "# hbar^2/(2 mu) factor is included explicitly (exact centrifugal term)"]
    lines = _render_table(header, table, "csv", metadata)
    _emit(lines, args.out)
    return 0


def cmd_wavefunction(args) -> int:
    molecules = _load_db(args)
    mol = _find_molecule(args.molecule, molecules)
    if mol is None:
        known = ", ".join(m.name for m in molecules)
        print(f"error: unknown molecule '{args.molecule}' (known: {known})", file=sys.stderr)
        return 2
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if set(methods) - {"nu", "oracle"} or not methods:
        print(f"error: methods must be a subset of nu,oracle (got '{args.methods}')", file=sys.stderr)
        return 2
    constants = _constants(args)
    pot = SdfPotential.from_molecule(mol, constants)
    r_max = args.r_max if args.r_max is not None else max(20.0 / pot.alpha, 6.0 * pot.r_e)
    r = np.linspace(args.r_min, r_max, args.points)
    columns = [("r", r)]
    try:
        if "nu" in methods:
            columns.append(("R_nu", radial_wavefunction(args.n, args.l, pot, mol.mu,
                                                        r, constants=constants)))
        if "oracle" in methods:
            problem = default_problem(lambda x: v_sdf(x, pot), args.l,
                                      kappa(mol.mu, constants), pot.alpha, pot.r_e)
            result = solve_bound_state(problem, args.n)
            if not result.converged:
                print("error: oracle wavefunction did not converge", file=sys.stderr)
                return 3
            columns.append(("R_oracle", np.interp(r, problem.grid(), result.wavefunction)))
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DengfanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    header = [name for name, _ in columns]
    table = [[col[i] for _, col in columns] for i in range(r.size)]
    lines = _render_table(header, table, "csv",
                          [_METADATA, "# r in Angstrom, R in Angstrom^(-1/2)"])
    _emit(lines, args.out)
    return 0


def cmd_validate(args) -> int:
    molecules = _load_db(args)
    constants = _constants(args)
    results = run_validation(args.scope, d0=args.d0, constants=constants, molecules=molecules)
    if args.format == "json":
        payload = [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]
        _emit([json.dumps(payload, indent=2)], args.out)
    else:
        lines = [_METADATA]
        for r in results:
            lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
        n_fail = sum(1 for r in results if not r.passed)
        lines.append(f"# {len(results) - n_fail}/{len(results)} checks passed")
        _emit(lines, args.out)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dengfan",
        description="Bound-state spectra of diatomic molecules in the shifted Deng-Fan potential",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="molecule database file overriding the bundled one")
    common.add_argument("--d0", type=float, default=None,
                        help="Pekeris offset constant (default 1/12)")
    common.add_argument("--out", help="write output to this path instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("levels", parents=[common], help="bound-state energies for one molecule")
    p.add_argument("--molecule", required=True)
    p.add_argument("--n", type=_int_list, default=[0, 5, 7], help="comma-separated n list")
    p.add_argument("--l", type=_int_list, default=[0, 5, 10], help="comma-separated l list")
    p.add_argument("--methods", default="nu", help="subset of nu,oracle,morse")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("table3", parents=[common],
                       help="reproduce the full 36-level reference table with deviations")
    p.add_argument("--skip-oracle", action="store_true",
                   help="closed-form and Morse columns only")
    p.set_defaults(func=cmd_table3)

    p = sub.add_parser("curves", parents=[common], help="potential-curve CSV")
    p.add_argument("--molecule", required=True)
    p.add_argument("--r-min", type=float, default=0.2)
    p.add_argument("--r-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=500)
    p.add_argument("--l", type=_int_list, default=[0, 5, 10],
                   help="l values for effective-potential columns")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("wavefunction", parents=[common], help="radial wavefunction dump")
    p.add_argument("--molecule", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--methods", default="nu", help="subset of nu,oracle")
    p.add_argument("--r-min", type=float, default=1e-3)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--points", type=int, default=2000)
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("validate", parents=[common], help="run the invariant suite")
    p.add_argument("--scope", choices=("fast", "full"), default="fast")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MoleculeParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DengfanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())
