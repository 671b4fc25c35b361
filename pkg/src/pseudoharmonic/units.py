"""Physical constants and the two unit conversions used throughout the package.

Energies are carried internally in wavenumbers (cm^-1), lengths in angstrom and
masses in atomic mass units. Conversion to eV happens only at output boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, fields


@dataclass(frozen=True)
class ConstantsTable:
    """CODATA-2018 values, SI units."""

    hbar: float = 1.054571817e-34  # J s
    amu_kg: float = 1.66053906660e-27  # kg
    ev_J: float = 1.602176634e-19  # J per eV
    cm1_J: float = 1.986445857e-23  # J per cm^-1 (h c)
    angstrom_m: float = 1e-10  # m per angstrom

    def __post_init__(self):
        for f in fields(self):
            if not getattr(self, f.name) > 0:
                raise ValueError(f"constant {f.name} must be positive")


CONSTANTS = ConstantsTable()

UNITS = {
    "hbar": "J*s",
    "amu_kg": "kg",
    "ev_J": "J/eV",
    "cm1_J": "J/cm^-1",
    "angstrom_m": "m/angstrom",
}

CM1_TO_EV = CONSTANTS.cm1_J / CONSTANTS.ev_J


def cm1_to_ev(x):
    """Convert an energy (scalar or array) from cm^-1 to eV."""
    return x * CM1_TO_EV


def ev_to_cm1(x):
    return x / CM1_TO_EV


def kinetic_scale(mu: float, r0: float) -> float:
    """Return hbar^2 / (2 mu r0^2) in cm^-1.

    Parameters
    ----------
    mu : float
        Reduced mass in amu.
    r0 : float
        Length in angstrom.
    """
    if not (mu > 0 and r0 > 0):
        raise ValueError(f"mu and r0 must be positive, got mu={mu!r}, r0={r0!r}")
    c = CONSTANTS
    joules = c.hbar**2 / (2.0 * mu * c.amu_kg * (r0 * c.angstrom_m) ** 2)
    return joules / c.cm1_J


def constants_rows() -> list[tuple[str, float, str]]:
    return [(f.name, getattr(CONSTANTS, f.name), UNITS[f.name]) for f in fields(CONSTANTS)]


__all__ = ["ConstantsTable", "CONSTANTS", "CM1_TO_EV", "cm1_to_ev", "ev_to_cm1", "kinetic_scale", "constants_rows"]
