"""Exact bound states of the pseudoharmonic potential V(r) = D0 (r/r0 - r0/r)^2."""

from pseudoharmonic.spectrum import (
    Molecule,
    QuantumState,
    DimensionlessParams,
    dimensionless_params,
    energy_closed_form,
    energy_via_oscillator,
    effective_l,
    gamma_squared,
    potential,
    quantization_residual,
    spectrum_table,
)
from pseudoharmonic.moldb import builtin_table, get_molecule, parse_molecule_file

__version__ = "0.1.0"

__all__ = [
    "Molecule",
    "QuantumState",
    "DimensionlessParams",
    "dimensionless_params",
    "energy_closed_form",
    "energy_via_oscillator",
    "effective_l",
    "gamma_squared",
    "potential",
    "quantization_residual",
    "spectrum_table",
    "builtin_table",
    "get_molecule",
    "parse_molecule_file",
]
