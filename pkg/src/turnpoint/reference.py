"""Independent standard-QM oracle: Numerov shooting for bound states of the
same wells, plus the textbook step-potential reflection coefficient.

Eigenvalues are located by node-count bisection: the number of interior sign
changes of the left-integrated solution equals the number of eigenvalues
below E, so the k-th level (0-based) sits exactly at the k -> k+1 transition.
The box is fixed per level before the final bisection so the mismatch
function stays continuous in E.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import potentials
from .errors import ConvergenceFailure, DomainError, InvalidInput
from .potentials import PotentialSpec, UnitSystem


@dataclass(frozen=True)
class NumerovConfig:
    n_points: int = 4001
    box_padding: float = 5.0  # multiples of the classical width beyond each turning point
    energy_tol: float = 1e-9

    def __post_init__(self):
        if self.n_points < 101 or self.n_points % 2 == 0:
            raise InvalidInput(f"n_points must be odd and >= 101, got {self.n_points}")
        if self.box_padding < 0.0:
            raise InvalidInput("box_padding must be >= 0")
        if not self.energy_tol > 0.0:
            raise InvalidInput("energy_tol must be positive")


@dataclass(frozen=True)
class ReferenceLevel:
    n_index: int  # 0-based; equals the node count
    energy: float
    node_count: int


_HARD_WALL_KINDS = ("isw", "trig")


def _potential_on_grid(spec: PotentialSpec, grid: np.ndarray, units: UnitSystem) -> np.ndarray:
    """U on the grid; endpoints where U is undefined act as hard walls
    (psi = 0 there, so the value never enters the recurrence)."""
    u = np.empty(len(grid))
    for i, x in enumerate(grid):
        try:
            u[i] = potentials.evaluate(spec, float(x), units)
        except DomainError:
            if i in (0, len(grid) - 1):
                u[i] = 0.0  # wall point, psi pinned to zero
            else:
                raise
    return u


def numerov_integrate(
    spec: PotentialSpec,
    E: float,
    grid: np.ndarray,
    units: UnitSystem | None = None,
) -> np.ndarray:
    """Three-term Numerov recurrence left-to-right on a uniform grid.

    Starts from psi = 0 at the left edge with a small kick; rescales in
    place when the amplitude threatens overflow (output is unnormalized
    anyway). Deterministic for identical inputs.
    """
    units = units or UnitSystem()
    grid = np.asarray(grid, dtype=float)
    h = grid[1] - grid[0]
    u = _potential_on_grid(spec, grid, units)
    g = (2.0 * units.mass / units.hbar ** 2) * (E - u)
    c = 1.0 + h * h * g / 12.0
    psi = np.zeros(len(grid))
    psi[0] = 0.0
    psi[1] = 1e-6
    for i in range(1, len(grid) - 1):
        psi[i + 1] = ((12.0 - 10.0 * c[i]) * psi[i] - c[i - 1] * psi[i - 1]) / c[i + 1]
        if abs(psi[i + 1]) > 1e100:
            psi[: i + 2] /= 1e100
    return psi


def _count_nodes(psi: np.ndarray) -> int:
    # include the right edge: its sign flip marks the eigenvalue crossing
    interior = psi[1:]
    signs = np.sign(interior[np.abs(interior) > 0.0])
    if len(signs) < 2:
        return 0
    return int(np.sum(signs[:-1] != signs[1:]))


def _build_grid(
    spec: PotentialSpec, E: float, config: NumerovConfig, units: UnitSystem
) -> np.ndarray:
    """Integration box: exact finite domain for hard walls, padded
    turning-point box for soft wells."""
    dom = potentials.domain_of(spec)
    if spec.kind in _HARD_WALL_KINDS:
        return np.linspace(dom.lo, dom.hi, config.n_points)
    pairs = potentials.analytic_turning_points(spec, E, units)
    if pairs is None:
        lo = dom.lo if math.isfinite(dom.lo) else -100.0
        hi = dom.hi if math.isfinite(dom.hi) else 100.0
        return np.linspace(lo, hi, config.n_points)
    tp = pairs[-1]
    lo = tp.x1 - config.box_padding * tp.d
    hi = tp.x2 + config.box_padding * tp.d
    if math.isfinite(dom.lo):
        lo = max(lo, dom.lo)
    if math.isfinite(dom.hi):
        hi = min(hi, dom.hi)
    # inverse-square poles: clip where U is ~1e4 times the scan energy so the
    # stencil stays stable (h^2 * g moderate); psi is pinned to zero there
    pole_coeff = None
    if isinstance(spec, potentials.QuadraticInverse):
        pole_coeff = spec.b
    elif isinstance(spec, potentials.ParabolicWell):
        pole_coeff = spec.u0 * spec.a ** 2
    if pole_coeff is not None:
        cap = 1e4 * max(E, 1.0)
        lo = max(lo, math.sqrt(pole_coeff / cap))
    return np.linspace(lo, hi, config.n_points)


def shoot_bound_states(
    spec: PotentialSpec,
    n_max: int,
    config: NumerovConfig | None = None,
    units: UnitSystem | None = None,
) -> list[ReferenceLevel]:
    """Lowest n_max standard eigenvalues, 0-based by node count."""
    config = config or NumerovConfig()
    units = units or UnitSystem()
    if n_max < 1:
        raise InvalidInput(f"n_max must be >= 1, got {n_max}")
    floor = potentials.u_min(spec)
    w = potentials.characteristic_width(spec, units)
    scale = max(units.hbar ** 2 / (units.mass * w * w), 1e-12)
    levels: list[ReferenceLevel] = []
    for k in range(n_max):
        e_lo = floor + 1e-9 * scale
        e_hi = floor + scale
        # expand until the box solution has more than k nodes
        expansions = 0
        while True:
            grid = _build_grid(spec, e_hi, config, units)
            if _count_nodes(numerov_integrate(spec, e_hi, grid, units)) > k:
                break
            e_hi = floor + (e_hi - floor) * 2.0
            expansions += 1
            if expansions > 60:
                raise ConvergenceFailure(f"could not bracket reference level {k}")
        # freeze the box, then bisect on the node count transition k -> k+1
        grid = _build_grid(spec, e_hi, config, units)
        lo, hi = e_lo, e_hi
        while hi - lo > config.energy_tol * (1.0 + abs(lo)):
            mid = 0.5 * (lo + hi)
            if _count_nodes(numerov_integrate(spec, mid, grid, units)) > k:
                hi = mid
            else:
                lo = mid
        energy = 0.5 * (lo + hi)
        levels.append(ReferenceLevel(n_index=k, energy=energy, node_count=k))
    return levels


def standard_step_R(E: float, U0: float, units: UnitSystem | None = None) -> float:
    """Textbook step reflection: R = ((K - K2)/(K + K2))^2 above the step,
    R = 1 at or below it."""
    units = units or UnitSystem()
    if not (E > 0.0 and math.isfinite(E)):
        raise InvalidInput(f"E must be positive, got {E}")
    if not (U0 > 0.0 and math.isfinite(U0)):
        raise InvalidInput(f"U0 must be positive, got {U0}")
    if E <= U0:
        return 1.0
    m1 = units.m1
    K = m1 * math.sqrt(E)
    K2 = m1 * math.sqrt(E - U0)
    return ((K - K2) / (K + K2)) ** 2
