"""Command-line interface: CSV tables of spectra, wavefunctions and oracle checks.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import sys

import numpy as np

from pseudoharmonic import moldb, oracle, wavefunc
from pseudoharmonic.spectrum import QuantumState, energy_closed_form, spectrum_table
from pseudoharmonic.units import constants_rows, ev_to_cm1

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

# (n, l) rows of the published energy table, in print order
PUBLISHED_STATES = (
    (0, 0),
    (1, 0), (1, 1),
    (2, 0), (2, 1), (2, 2),
    (4, 0), (4, 1), (4, 2), (4, 3), (4, 4),
    (5, 0), (5, 1), (5, 2), (5, 3), (5, 4), (5, 5),
)  # fmt: skip
PUBLISHED_MOLECULES = ("N2", "CO", "NO", "CH")


class UsageError(Exception):
    pass


def _fmt(x, digits: int) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.{digits}g}"


def write_table(header, rows, digits: int, out=None) -> None:
    out = sys.stdout if out is None else out
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row {row!r} does not match header {header!r}")
        writer.writerow([_fmt(v, digits) if not isinstance(v, str) else v for v in row])


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _resolve_molecule(args):
    pool = None
    if args.molecules:
        try:
            pool = moldb.load_molecule_file(args.molecules)
        except OSError as exc:
            raise UsageError(f"cannot read {args.molecules}: {exc}") from None
        except moldb.MoleculeFileError as exc:
            raise UsageError(f"{args.molecules}: {exc}") from None
    try:
        return moldb.get_molecule(args.molecule, pool)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def cmd_constants(args) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    for name, value, unit in constants_rows():
        writer.writerow([name, repr(value), unit])
    return EXIT_OK


def cmd_spectrum(args) -> int:
    mol = _resolve_molecule(args)
    try:
        rows = spectrum_table(mol, args.n_max, args.l_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.units == "cm1":
        rows = [(n, l, ev_to_cm1(e)) for n, l, e in rows]
    write_table(("n", "l", f"energy_{args.units}"), rows, args.digits)
    return EXIT_OK


def cmd_table2(args) -> int:
    mols = [moldb.get_molecule(name) for name in PUBLISHED_MOLECULES]
    rows = [
        (n, l, *(energy_closed_form(m, QuantumState(n, l)) for m in mols))
        for n, l in PUBLISHED_STATES
    ]
    write_table(("n", "l", *PUBLISHED_MOLECULES), rows, args.digits)
    return EXIT_OK


def cmd_wavefunction(args) -> int:
    mol = _resolve_molecule(args)
    st = QuantumState(args.n, args.l)
    try:
        rf = wavefunc.normalize(mol, st)
    except wavefunc.NormalizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    window = wavefunc.default_grid(mol)
    r_min = window.r_min if args.r_min is None else args.r_min
    r_max = window.r_max if args.r_max is None else args.r_max
    if not r_min < r_max:
        raise UsageError(f"--r-min ({r_min}) must be below --r-max ({r_max})")
    r = np.linspace(r_min, r_max, args.samples)
    write_table(("r_angstrom", "u"), zip(r, rf(r)), args.digits)
    return EXIT_OK


def cmd_verify(args) -> int:
    mol = _resolve_molecule(args)
    shot = mol
    if args.perturb_d0:
        shot = dataclasses.replace(mol, d0=mol.d0 * (1.0 + args.perturb_d0))
    rows = []
    ok = True
    for n in range(args.n_max + 1):
        for l in range(args.l_max + 1):
            try:
                rep = oracle.verify(shot, QuantumState(n, l), reference=mol)
            except (oracle.SearchError, oracle.ConvergenceError) as exc:
                print(f"error: oracle failed at n={n}, l={l}: {exc}", file=sys.stderr)
                return EXIT_NUMERIC
            ok &= rep.rel_err <= args.tol_rel and rep.node_count == n
            rows.append((n, l, rep.e_closed, rep.e_numeric, rep.rel_err, rep.node_count))
    write_table(("n", "l", "e_closed_ev", "e_numeric_ev", "rel_err", "nodes"), rows, args.digits)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudoharmonic",
        description="Bound states of the pseudoharmonic potential for diatomic molecules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=_positive_int, default=7, help="significant digits (default 7)")

    mol_opts = argparse.ArgumentParser(add_help=False)
    mol_opts.add_argument("--molecule", required=True, help="molecule name (builtin: N2, CO, NO, CH)")
    mol_opts.add_argument("--molecules", metavar="PATH", help="molecule file: 'name d0_cm1 r0_angstrom mu_amu' per line")

    p = sub.add_parser("constants", help="print the physical constants as name,value,unit")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("spectrum", parents=[common, mol_opts], help="closed-form energies")
    p.add_argument("--n-max", type=_non_negative_int, required=True)
    p.add_argument("--l-max", type=_non_negative_int, required=True)
    p.add_argument("--units", choices=("ev", "cm1"), default="ev")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("table2", parents=[common], help="energies of N2, CO, NO, CH for the published (n, l) grid")
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("wavefunction", parents=[common, mol_opts], help="normalized radial function u(r)")
    p.add_argument("--n", type=_non_negative_int, required=True)
    p.add_argument("--l", type=_non_negative_int, required=True)
    p.add_argument("--r-min", type=_positive_float, help="angstrom (default: normalization window)")
    p.add_argument("--r-max", type=_positive_float, help="angstrom (default: normalization window)")
    p.add_argument("--samples", type=_positive_int, default=2001)
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("verify", parents=[common, mol_opts], help="compare closed form with Numerov shooting")
    p.add_argument("--n-max", type=_non_negative_int, required=True)
    p.add_argument("--l-max", type=_non_negative_int, required=True)
    p.add_argument("--tol-rel", type=_positive_float, default=1e-6)
    # test hook: relative change of D0 seen by the oracle only
    p.add_argument("--perturb-d0", type=float, default=0.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
