"""Closed-form pseudoharmonic spectrum and its harmonic-oscillator mapping.

Two independent algebraic routes to the same eigenvalues are exposed:

* the direct truncation condition of the Kummer series,
  ``E = -2 D0 + 2 sqrt(D0 K) [2n + 1 + sqrt(gamma^2 + (l + 1/2)^2)]``,
* the mapping onto a 3D oscillator ``B^2 r^2`` with a non-integer effective
  angular momentum ``L(L + 1) = l(l + 1) + gamma^2``.

Here ``K = hbar^2 / (2 mu r0^2)`` (see :func:`pseudoharmonic.units.kinetic_scale`)
and ``gamma^2 = D0 / K``. All arithmetic is done in cm^-1; results are
returned in eV.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from pseudoharmonic.units import cm1_to_ev, ev_to_cm1, kinetic_scale

MAX_TABLE_ROWS = 10**6


@dataclass(frozen=True)
class Molecule:
    """Spectroscopic parameters of a diatomic: D0 [cm^-1], r0 [angstrom], mu [amu]."""

    name: str
    d0: float
    r0: float
    mu: float

    def __post_init__(self):
        if not self.name or any(ch.isspace() for ch in self.name):
            raise ValueError(f"molecule name must be nonempty without whitespace: {self.name!r}")
        for field in ("d0", "r0", "mu"):
            value = getattr(self, field)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{field} must be a positive finite number, got {value!r}")

    @property
    def kinetic(self) -> float:
        """hbar^2 / (2 mu r0^2) in cm^-1."""
        return kinetic_scale(self.mu, self.r0)


@dataclass(frozen=True)
class QuantumState:
    n: int
    l: int

    def __post_init__(self):
        for field in ("n", "l"):
            value = getattr(self, field)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 0:
                raise ValueError(f"{field} must be a non-negative integer, got {value!r}")


@dataclass(frozen=True)
class DimensionlessParams:
    gamma_sq: float
    epsilon_sq: float
    q: float
    l_eff: float


def potential(mol: Molecule, r):
    """V(r) = D0 (r/r0 - r0/r)^2 in cm^-1; ``r`` in angstrom, scalar or array."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise ValueError("potential is defined only for r > 0")
    rho = r_arr / mol.r0
    value = mol.d0 * (rho - 1.0 / rho) ** 2
    return float(value) if np.ndim(r) == 0 else value


def oscillator_potential(mol: Molecule, r):
    """The pure oscillator B^2 r^2 with B^2 = D0 / r0^2, in cm^-1."""
    r_arr = np.asarray(r, dtype=float)
    value = mol.d0 * (r_arr / mol.r0) ** 2
    return float(value) if np.ndim(r) == 0 else value


def gamma_squared(mol: Molecule) -> float:
    """2 mu D0 r0^2 / hbar^2."""
    return mol.d0 / mol.kinetic


def _centrifugal_root(gamma_sq: float, l: int) -> float:
    return math.sqrt((l + 0.5) ** 2 + gamma_sq)


def effective_l(mol: Molecule, l: int) -> float:
    """Effective angular momentum L with L(L+1) = l(l+1) + gamma^2."""
    g2 = gamma_squared(mol)
    return 0.5 * (-1.0 + math.sqrt((2 * l + 1) ** 2 + 4.0 * g2))


def dimensionless_params(mol: Molecule, st: QuantumState, e_ev: float | None = None) -> DimensionlessParams:
    """Collect gamma^2, epsilon^2, q and L for a state.

    ``epsilon_sq`` is evaluated at ``e_ev`` if given, otherwise at the
    closed-form eigenvalue of ``st``. Only the plus branch of
    ``q = 1/2 +- sqrt((l+1/2)^2 + gamma^2)`` is regular at the origin.
    """
    g2 = gamma_squared(mol)
    e_cm1 = energy_closed_form_cm1(mol, st) if e_ev is None else ev_to_cm1(e_ev)
    eps2 = (e_cm1 + 2.0 * mol.d0) / mol.kinetic
    q = 0.5 + _centrifugal_root(g2, st.l)
    return DimensionlessParams(gamma_sq=g2, epsilon_sq=eps2, q=q, l_eff=effective_l(mol, st.l))


def level_spacing_cm1(mol: Molecule) -> float:
    """E(n+1, l) - E(n, l) = 4 sqrt(D0 K), independent of n and l."""
    return 4.0 * math.sqrt(mol.d0 * mol.kinetic)


def energy_closed_form_cm1(mol: Molecule, st: QuantumState) -> float:
    d0, k = mol.d0, mol.kinetic
    return -2.0 * d0 + 2.0 * math.sqrt(d0 * k) * (2 * st.n + 1 + _centrifugal_root(d0 / k, st.l))


def energy_closed_form(mol: Molecule, st: QuantumState) -> float:
    """Eigenvalue E_nl in eV from the series-truncation condition."""
    return cm1_to_ev(energy_closed_form_cm1(mol, st))


def energy_via_oscillator(mol: Molecule, st: QuantumState, *, pure_oscillator: bool = False) -> float:
    """Eigenvalue in eV obtained from the oscillator spectrum.

    The oscillator ``B^2 r^2`` has levels ``sqrt(hbar^2/2mu) B (4n + 2L + 3)``;
    shifting by ``-2 D0`` with ``L = effective_l(mol, l)`` gives the
    pseudoharmonic eigenvalue. With ``pure_oscillator=True`` the mapping and
    shift are both disabled (``L = l``), returning the bare oscillator level
    ``hbar omega (2n + l + 3/2)``.
    """
    # sqrt(hbar^2 / 2mu) * B == sqrt(K * D0) in cm^-1
    prefactor = math.sqrt(mol.kinetic * mol.d0)
    if pure_oscillator:
        return cm1_to_ev(prefactor * (4 * st.n + 2 * st.l + 3))
    big_l = effective_l(mol, st.l)
    return cm1_to_ev(prefactor * (4 * st.n + 2 * big_l + 3) - 2.0 * mol.d0)


def quantization_residual(mol: Molecule, st: QuantumState, e: float) -> float:
    """Truncation residual ``a + n`` of the Kummer parameter at energy ``e`` [eV].

    Vanishes exactly at the eigenvalue of ``st`` and decreases strictly with ``e``.
    """
    g2 = gamma_squared(mol)
    if g2 <= 0:
        raise ValueError("quantization residual undefined for gamma = 0")
    eps2 = (ev_to_cm1(e) + 2.0 * mol.d0) / mol.kinetic
    return 0.5 * (1.0 + _centrifugal_root(g2, st.l) - eps2 / (2.0 * math.sqrt(g2))) + st.n


def spectrum_table(mol: Molecule, n_max: int, l_max: int) -> list[tuple[int, int, float]]:
    """All (n, l, E[eV]) with n <= n_max, l <= l_max, sorted by (n, l)."""
    if n_max < 0 or l_max < 0:
        raise ValueError("n_max and l_max must be non-negative")
    if (n_max + 1) * (l_max + 1) > MAX_TABLE_ROWS:
        raise ValueError(f"table would exceed {MAX_TABLE_ROWS} rows")
    return [
        (n, l, energy_closed_form(mol, QuantumState(n, l)))
        for n in range(n_max + 1)
        for l in range(l_max + 1)
    ]
