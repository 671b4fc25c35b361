"""Exact radial eigenfunctions built from terminating Kummer series.

The radial function is ``u(r) = N r^q exp(-(gamma/2) rho^2) 1F1(-n, b; gamma rho^2)``
with ``rho = r/r0``, ``b = 1 + sqrt((l+1/2)^2 + gamma^2)`` and ``q = (1 + b) / 2``.
The second Kummer solution, proportional to ``rho^(1-b)``, is singular at the
origin and is never constructed.

For the molecules of interest ``q`` is of order a few hundred, so ``r^q``
alone overflows. Everything is evaluated as ``log|u|`` plus a sign and
exponentiated only after subtracting the maximum over the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from pseudoharmonic.spectrum import Molecule, QuantumState, dimensionless_params
from pseudoharmonic.units import ev_to_cm1

NORM_TOL = 1e-8
TAIL_TOL = 1e-12


class NormalizationError(ArithmeticError):
    """Raised when a grid cannot resolve the normalization integral."""


def kummer_polynomial(n: int, b: float, z):
    """1F1(-n, b; z) as the finite sum of its n + 1 terms.

    ``z`` may be a scalar or an array.
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    if not b > 0:
        raise ValueError(f"b must be positive, got {b!r}")
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(n):
        term = term * ((-n + k) * z) / ((b + k) * (k + 1))
        total = total + term
    return float(total) if total.ndim == 0 else total


def laguerre(n: int, nu: float, z):
    """Generalized Laguerre polynomial by the three-term recurrence.

    (k+1) L_{k+1} = (2k + 1 + nu - z) L_k - (k + nu) L_{k-1}
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    if not nu > -1:
        raise ValueError(f"nu must exceed -1, got {nu!r}")
    z = np.asarray(z, dtype=float)
    prev = np.ones_like(z)
    if n == 0:
        return float(prev) if prev.ndim == 0 else prev
    cur = 1.0 + nu - z
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + nu - z) * cur - (k + nu) * prev) / (k + 1)
    return float(cur) if cur.ndim == 0 else cur


def laguerre_prefactor(n: int, nu: float) -> float:
    """Binomial C(n + nu, n) = Gamma(n + nu + 1) / (Gamma(nu + 1) n!)."""
    return math.exp(math.lgamma(n + nu + 1) - math.lgamma(nu + 1) - math.lgamma(n + 1))


def _shape(mol: Molecule, st: QuantumState):
    p = dimensionless_params(mol, st)
    gamma = math.sqrt(p.gamma_sq)
    b = 1.0 + math.sqrt((st.l + 0.5) ** 2 + p.gamma_sq)
    return p.q, gamma, b


def log_radial(mol: Molecule, st: QuantumState, r):
    """Return ``(log|u|, sign(u))`` of the unnormalized radial function at ``r`` [angstrom]."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("radial function is defined only for r > 0")
    q, gamma, b = _shape(mol, st)
    rho2 = (r / mol.r0) ** 2
    poly = kummer_polynomial(st.n, b, gamma * rho2)
    with np.errstate(divide="ignore"):
        log_abs = q * np.log(r) - 0.5 * gamma * rho2 + np.log(np.abs(poly))
    return log_abs, np.sign(poly)


def radial_unnormalized(mol: Molecule, st: QuantumState, r):
    """u(r) = r^q exp(-(gamma/2)(r/r0)^2) 1F1(-n, b; gamma (r/r0)^2)."""
    log_abs, sign = log_radial(mol, st, r)
    value = sign * np.exp(log_abs)
    return float(value) if value.ndim == 0 else value


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on [r_min, r_max] with an odd number of points (Simpson)."""

    r_min: float
    r_max: float
    n_points: int = 20001

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise ValueError(f"need 0 < r_min < r_max, got {self.r_min}, {self.r_max}")
        if self.n_points < 5 or self.n_points % 2 == 0:
            raise ValueError(f"n_points must be odd and >= 5, got {self.n_points}")

    @property
    def step(self) -> float:
        return (self.r_max - self.r_min) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.n_points)


def default_grid(mol: Molecule, n_points: int = 20001, widths: float = 8.0) -> GridSpec:
    """Window of ``widths`` packet widths (r0 / sqrt(gamma)) around r0."""
    sqrt_gamma = math.sqrt(math.sqrt(mol.d0 / mol.kinetic))
    lo = mol.r0 * max(1e-3, 1.0 - widths / sqrt_gamma)
    hi = mol.r0 * (1.0 + widths / sqrt_gamma)
    return GridSpec(lo, hi, n_points)


@dataclass(frozen=True)
class RadialFunction:
    molecule: Molecule
    state: QuantumState
    grid: np.ndarray
    values: np.ndarray
    norm_constant: float
    log_norm_constant: float

    def __post_init__(self):
        self.grid.flags.writeable = False
        self.values.flags.writeable = False

    @property
    def step(self) -> float:
        return float(self.grid[1] - self.grid[0])

    def norm(self) -> float:
        return float(simpson(self.values**2, x=self.grid))

    def __call__(self, r):
        """Normalized u at arbitrary radii, evaluated exactly rather than interpolated."""
        log_abs, sign = log_radial(self.molecule, self.state, r)
        value = sign * np.exp(log_abs + self.log_norm_constant)
        return float(value) if value.ndim == 0 else value


def normalize(mol: Molecule, st: QuantumState, grid_spec: GridSpec | None = None) -> RadialFunction:
    """Sample u on ``grid_spec`` and scale it to unit norm (composite Simpson).

    Raises :class:`NormalizationError` if halving the grid density changes the
    integral by more than ``NORM_TOL`` (grid too coarse) or if the endpoints
    carry non-negligible weight (window too narrow).
    """
    spec = default_grid(mol) if grid_spec is None else grid_spec
    r = spec.points()
    log_abs, sign = log_radial(mol, st, r)
    shift = float(np.max(log_abs))
    shape = sign * np.exp(log_abs - shift)

    dens = shape**2
    full = simpson(dens, x=r)
    coarse = simpson(dens[::2], x=r[::2])
    if not full > 0:
        raise NormalizationError("radial function vanishes on the grid")
    change = abs(full - coarse) / full
    if change > NORM_TOL:
        raise NormalizationError(
            f"grid too coarse: halving density changes the norm by {change:.2e} "
            f"(> {NORM_TOL:.0e}); step {spec.step:.3e} angstrom, try more points"
        )
    tail = max(dens[0], dens[-1])
    if tail > TAIL_TOL:
        raise NormalizationError(
            f"grid [{spec.r_min}, {spec.r_max}] truncates the wavefunction: "
            f"edge density {tail:.2e} of peak (> {TAIL_TOL:.0e})"
        )

    values = shape / math.sqrt(full)
    log_norm = -shift - 0.5 * math.log(full)
    return RadialFunction(
        molecule=mol,
        state=st,
        grid=r,
        values=values,
        norm_constant=math.exp(log_norm),
        log_norm_constant=log_norm,
    )


def count_nodes(rf: RadialFunction) -> int:
    return count_sign_changes(rf.values)


def count_sign_changes(values) -> int:
    """Strict sign changes, skipping exact zeros."""
    signs = np.sign(np.asarray(values))
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def radial_equation_residual(rf: RadialFunction, e: float, i: int) -> float:
    """Second-difference residual of the radial equation at grid index ``i``.

    Returns ``u'' + (E - V(r) - l(l+1) hbar^2/(2 mu r^2)) (2 mu / hbar^2) u``
    at ``r_i`` in angstrom^-2 times the units of ``u``, with ``e`` in eV.
    The error of the centred difference is O(h^2) at an eigenvalue.
    """
    n = len(rf.grid)
    if not 0 < i < n - 1:
        raise IndexError(f"interior index required, got {i} for grid of {n}")
    r, u, h = rf.grid, rf.values, rf.step
    mol, l = rf.molecule, rf.state.l
    kin = mol.kinetic * mol.r0**2  # hbar^2 / (2 mu) in cm^-1 angstrom^2
    ri = r[i]
    rho = ri / mol.r0
    v = mol.d0 * (rho - 1.0 / rho) ** 2
    upp = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / h**2
    return float(upp + (ev_to_cm1(e) - v) / kin * u[i] - l * (l + 1) / ri**2 * u[i])
