"""Numerov shooting eigensolver for the radial equation.

This module checks the closed-form spectrum by independent means. It only
needs the potential V(r) and hbar^2/(2 mu). It never touches the closed-form
energy, the Kummer polynomial or the Laguerre recurrence: brackets are found
blind, from the potential alone.

Algorithm: a single outward Numerov sweep of ``u'' = f(r) u`` with
``f = l(l+1)/r^2 + (V - E) 2mu/hbar^2``, started on the regular ``r^q``
branch. By Sturm oscillation theory the number of sign changes of the sweep
equals the number of eigenvalues below E. Node counts bracket the n-th
level; the sign of the divergent endpoint then bisects it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numba
import numpy as np

from pseudoharmonic.spectrum import Molecule, QuantumState, energy_closed_form, potential
from pseudoharmonic.units import cm1_to_ev, ev_to_cm1

RESCALE_AT = 1e250
SEED = 1e-12
Q_CAP = 1e4
MAX_BISECTIONS = 200
MAX_BRACKET_SPACINGS = 50


class SearchError(RuntimeError):
    """No energy bracket for the requested state could be found on the grid."""


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class RadialGrid:
    r_min: float
    r_max: float
    n_points: int = 40001

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise ValueError(f"need 0 < r_min < r_max, got {self.r_min}, {self.r_max}")
        if self.n_points < 1001 or self.n_points % 2 == 0:
            raise ValueError(f"n_points must be odd and >= 1001, got {self.n_points}")

    @property
    def step(self) -> float:
        return (self.r_max - self.r_min) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.n_points)

    def refined(self) -> RadialGrid:
        return RadialGrid(self.r_min, self.r_max, 2 * self.n_points - 1)


def default_grid(mol: Molecule, n_points: int = 40001) -> RadialGrid:
    """Ten packet widths r0/sqrt(gamma) on either side of r0."""
    sqrt_gamma = (mol.d0 / mol.kinetic) ** 0.25
    lo = mol.r0 * max(1e-3, 1.0 - 10.0 / sqrt_gamma)
    hi = mol.r0 * (1.0 + 10.0 / sqrt_gamma)
    return RadialGrid(lo, hi, n_points)


def oscillator_grid(mol: Molecule, n_points: int = 40001) -> RadialGrid:
    """Grid from near the origin out to twelve widths, for the pure B^2 r^2 oscillator."""
    sqrt_gamma = (mol.d0 / mol.kinetic) ** 0.25
    return RadialGrid(mol.r0 * 1e-4, mol.r0 * 12.0 / sqrt_gamma, n_points)


@dataclass(frozen=True)
class VerificationReport:
    molecule: Molecule
    state: QuantumState
    e_closed: float
    e_numeric: float
    rel_err: float
    node_count: int
    grid: RadialGrid


@numba.njit(cache=True, nogil=True)
def _numerov_kernel(f, h, u0, u1):
    """Outward Numerov sweep of u'' = f u.

    Returns (u_end, log_scale, sign changes) with the true endpoint value
    equal to ``u_end * exp(log_scale)``.
    """
    n = f.shape[0]
    c = h * h / 12.0
    w_prev = 1.0 - c * f[0]
    w_cur = 1.0 - c * f[1]
    u_prev = u0
    u_cur = u1
    log_scale = 0.0
    nodes = 0
    last_sign = 1.0 if u1 > 0 else -1.0
    for i in range(1, n - 1):
        w_next = 1.0 - c * f[i + 1]
        u_next = ((12.0 - 10.0 * w_cur) * u_cur - w_prev * u_prev) / w_next
        if u_next != 0.0:
            s = 1.0 if u_next > 0 else -1.0
            if s != last_sign:
                nodes += 1
                last_sign = s
        a = abs(u_next)
        if a > RESCALE_AT:
            u_cur /= a
            u_next /= a
            log_scale += np.log(a)
        u_prev = u_cur
        u_cur = u_next
        w_prev = w_cur
        w_cur = w_next
    return u_cur, log_scale, nodes


class _Sweeper:
    """Precomputed pieces of f(r) for repeated sweeps at different energies."""

    def __init__(self, mol: Molecule, l: int, grid: RadialGrid, potential_fn: Callable | None = None):
        self.grid = grid
        self.r = grid.points()
        v = potential(mol, self.r) if potential_fn is None else np.asarray(potential_fn(self.r), dtype=float)
        self.inv_kin = 1.0 / (mol.kinetic * mol.r0**2)  # 2 mu / hbar^2 in 1/(cm^-1 angstrom^2)
        self.v = v
        self.veff = v + l * (l + 1) / (self.inv_kin * self.r**2)
        self.base = l * (l + 1) / self.r**2 + v * self.inv_kin
        h = grid.step
        c = self.r[0] ** 2 * self.base[0]
        q = min(0.5 + math.sqrt(0.25 + max(c, 0.0)), Q_CAP)
        self.u0 = SEED
        self.u1 = SEED * ((self.r[0] + h) / self.r[0]) ** q

    def sweep(self, e_cm1: float) -> tuple[float, int]:
        f = self.base - e_cm1 * self.inv_kin
        end, log_scale, nodes = _numerov_kernel(f, self.grid.step, self.u0, self.u1)
        if end == 0.0:
            return 0.0, int(nodes)
        log_abs = math.log(abs(end)) + log_scale
        # past float range only the sign is informative
        return math.copysign(math.exp(min(log_abs, 709.0)), end), int(nodes)

    def local_quantum(self) -> float:
        """hbar omega of the harmonic fit at the minimum of V_eff, in cm^-1."""
        i = int(np.argmin(self.veff))
        i = min(max(i, 1), len(self.r) - 2)
        h = self.grid.step
        curv = (self.veff[i + 1] - 2 * self.veff[i] + self.veff[i - 1]) / h**2
        return math.sqrt(2.0 * max(curv, 0.0) / self.inv_kin) or 1.0


def numerov_sweep(mol: Molecule, l: int, e: float, grid: RadialGrid, potential_fn: Callable | None = None) -> tuple[float, int]:
    """Sweep outward at energy ``e`` [eV].

    Returns u(r_max) for the seed ``u(r_min) = 1e-12`` (saturating at about
    1e308 in magnitude) and the number of sign changes.
    ``potential_fn`` maps radii in angstrom to cm^-1 and defaults to the
    pseudoharmonic potential.
    """
    return _Sweeper(mol, l, grid, potential_fn).sweep(ev_to_cm1(e))


def shoot_eigenvalue(
    mol: Molecule,
    st: QuantumState,
    grid: RadialGrid,
    tol: float,
    potential_fn: Callable | None = None,
    *,
    _with_nodes: bool = False,
):
    """Energy [eV] of the state with ``st.n`` radial nodes, to within ``tol`` [eV]."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    sw = _Sweeper(mol, st.l, grid, potential_fn)
    n = st.n
    tol_cm1 = ev_to_cm1(tol)

    # nothing is bound below the lowest point of V_eff on the grid
    floor = float(np.min(sw.veff))
    lo = floor
    quantum = sw.local_quantum()
    limit = lo + MAX_BRACKET_SPACINGS * (n + 1) * quantum
    hi = lo + (n + 1) * quantum
    nodes_hi = sw.sweep(hi)[1]
    while nodes_hi <= n:
        lo, hi = hi, floor + 2.0 * (hi - floor)
        if hi > limit:
            raise SearchError(f"no bracket for n={n}, l={st.l} of {mol.name} below {cm1_to_ev(limit):.6g} eV")
        nodes_hi = sw.sweep(hi)[1]

    # narrow to the window where the node count steps from n to n+1
    nodes_lo = sw.sweep(lo)[1]
    if nodes_lo > n:
        raise SearchError(f"lower energy bound already has {nodes_lo} nodes (> {n})")
    for _ in range(MAX_BISECTIONS):
        if nodes_lo == n and nodes_hi == n + 1:
            break
        mid = 0.5 * (lo + hi)
        m_nodes = sw.sweep(mid)[1]
        if m_nodes <= n:
            lo, nodes_lo = mid, m_nodes
        else:
            hi, nodes_hi = mid, m_nodes
    else:
        raise ConvergenceError(f"could not isolate level n={n}, l={st.l}")

    # endpoint sign flips exactly once across the level
    sign_lo = math.copysign(1.0, sw.sweep(lo)[0])
    for _ in range(MAX_BISECTIONS):
        if hi - lo <= tol_cm1:
            break
        mid = 0.5 * (lo + hi)
        end, _ = sw.sweep(mid)
        if math.copysign(1.0, end) == sign_lo:
            lo = mid
        else:
            hi = mid
    else:
        raise ConvergenceError(f"bisection for n={n}, l={st.l} did not reach tol={tol:g} eV")

    e_cm1 = 0.5 * (lo + hi)
    # the state must be bound inside the grid: both ends classically forbidden,
    # except a left end close enough to the origin to act as u(0) = 0
    origin_wall = grid.r_min <= 1e-2 * grid.r_max
    if not ((sw.veff[0] > e_cm1 or origin_wall) and sw.veff[-1] > e_cm1):
        raise SearchError(
            f"level n={n}, l={st.l} of {mol.name} is not confined by grid "
            f"[{grid.r_min}, {grid.r_max}] angstrom"
        )
    e = cm1_to_ev(e_cm1)
    if _with_nodes:
        return e, sw.sweep(lo)[1]
    return e


def verify(mol: Molecule, st: QuantumState, grid: RadialGrid | None = None, reference: Molecule | None = None) -> VerificationReport:
    """Shoot ``st`` numerically and compare with the closed form.

    ``reference`` (default ``mol``) is the molecule fed to the closed form;
    passing a perturbed copy is how disagreement detection is exercised.
    """
    grid = default_grid(mol) if grid is None else grid
    e_closed = energy_closed_form(mol if reference is None else reference, st)
    e_numeric, nodes = shoot_eigenvalue(mol, st, grid, 1e-8 * abs(e_closed), _with_nodes=True)
    return VerificationReport(
        molecule=mol,
        state=st,
        e_closed=e_closed,
        e_numeric=e_numeric,
        rel_err=abs(e_numeric - e_closed) / abs(e_closed),
        node_count=nodes,
        grid=grid,
    )
