"""Turning-point solver: S-integral, delta-equivalent energy, self-consistent
ground and excited levels, and wavefunction construction for infinitely high
wells of arbitrary form.

The quantization branches are K*d = (2n-1)*pi (symmetric, cosine factor),
K*d = 2*n*pi (antisymmetric, sine factor) and K*d = n*pi (general, cosine for
odd n, sine for even n), with K = m1*sqrt(E) and d the turning-point width
evaluated at the same energy. Widths depend on the unknown energy, so every
level is a root of a scalar residual, solved by bracketing and bisection
rather than fixed-point iteration (the right-hand sides need not contract).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

from . import numerics, potentials
from .errors import (
    AmbiguousWells,
    DegenerateNorm,
    InvalidEnergy,
    InvalidLevel,
    NoBoundRegion,
)
from .numerics import Tolerances
from .potentials import PotentialSpec, TurningPoints, UnitSystem

VARIANTS = ("symmetric", "antisymmetric", "general")

_TINY_WIDTH = 1e-12


@dataclass(frozen=True)
class LevelSpec:
    n: int
    variant: str = "general"

    def __post_init__(self):
        if self.n < 1:
            raise InvalidLevel(f"quantum number must be >= 1, got {self.n}")
        if self.variant not in VARIANTS:
            raise InvalidLevel(f"unknown variant {self.variant!r}")

    @property
    def q(self) -> int:
        """Quantization multiple: K*d = q*pi."""
        if self.variant == "symmetric":
            return 2 * self.n - 1
        if self.variant == "antisymmetric":
            return 2 * self.n
        return self.n

    @property
    def uses_cosine(self) -> bool:
        if self.variant == "symmetric":
            return True
        if self.variant == "antisymmetric":
            return False
        return self.n % 2 == 1


@dataclass(frozen=True)
class EnergyLevel:
    level: LevelSpec
    energy: float
    tp: TurningPoints
    K: float
    residual: float  # |K*d - q*pi|


@dataclass(frozen=True)
class GroundState:
    """Zero-point level; energy is the positive magnitude of the bound value
    -2*hbar^2/(m*d^2), with `bound` preserving the sign convention."""

    energy: float
    tp: TurningPoints
    residual: float  # |E - 2 hbar^2 / (m d^2)|
    bound: bool = True


@dataclass(frozen=True)
class WaveFunctionDescriptor:
    level: LevelSpec
    tp: TurningPoints
    amplitude: float
    q_eval: Callable[[float], float]
    mirrored: bool = False  # QuadraticInverse: identical well mirrored at -x0

    def trig_factor(self, x: float) -> float:
        phase = self.level.q * math.pi * (x - self.tp.x0) / self.tp.d
        return math.cos(phase) if self.level.uses_cosine else math.sin(phase)

    def __call__(self, x: float) -> float:
        if not self.tp.x1 <= x <= self.tp.x2:
            return 0.0
        return self.amplitude * self.trig_factor(x) * math.exp(-self.q_eval(x))


def turning_points(
    spec: PotentialSpec,
    E: float,
    units: UnitSystem | None = None,
    tol: Tolerances | None = None,
) -> TurningPoints:
    """Turning points at energy E; closed form when available, else a
    bracketed bisection on f(x) = E - U(x).

    For QuadraticInverse the positive-side pair is returned (the mirrored
    well carries the same spectrum by symmetry).
    """
    units = units or UnitSystem()
    tol = tol or Tolerances()
    pairs = potentials.analytic_turning_points(spec, E, units)
    if pairs is not None:
        return pairs[-1]

    dom = potentials.domain_of(spec)
    lo = dom.lo if math.isfinite(dom.lo) else -100.0
    hi = dom.hi if math.isfinite(dom.hi) else 100.0

    def f(x: float) -> float:
        return E - potentials.evaluate(spec, x, units)

    n_grid = 256
    brackets: list[numerics.Bracket] = []
    while n_grid <= 4096:
        brackets = numerics.bracket_roots(f, lo, hi, n_grid)
        if brackets:
            break
        n_grid *= 2
    if len(brackets) < 2:
        raise NoBoundRegion(f"found {len(brackets)} turning point(s) at E={E}")
    if len(brackets) > 2:
        raise AmbiguousWells(
            f"found {len(brackets)} turning points at E={E}; narrow the domain"
        )
    x1 = numerics.bisect(f, brackets[0], tol)
    x2 = numerics.bisect(f, brackets[1], tol)
    return TurningPoints(x1, x2)


def _tight(tol: Tolerances) -> Tolerances:
    """Turning-point tolerance for use inside energy residuals.

    The residual of K(E)*d(E) - q*pi inherits the error of the numeric
    turning points, so those must be located well below the requested
    energy tolerance for the final residual check to be satisfiable.
    """
    return replace(
        tol,
        root_abs=min(tol.root_abs, 1e-14),
        root_rel=min(tol.root_rel, tol.energy_rel * 1e-3),
    )


def _width_fn(
    spec: PotentialSpec, units: UnitSystem, tol: Tolerances
) -> Callable[[float], float]:
    """d(E), preferring closed forms; raises InvalidEnergy below the minimum."""

    def width(E: float) -> float:
        return turning_points(spec, E, units, tol).d

    return width


def _energy_bracket(spec: PotentialSpec, units: UnitSystem) -> tuple[float, float]:
    """Initial [E_lo, E_hi] for the self-consistent solves."""
    floor = potentials.u_min(spec)
    w = potentials.characteristic_width(spec, units)
    scale = units.hbar ** 2 / (units.mass * w * w)
    scale = max(scale, 1e-12)
    return floor + 1e-9 * scale, floor + 1e3 * scale


def s_integral(
    spec: PotentialSpec,
    E: float,
    units: UnitSystem | None = None,
    tol: Tolerances | None = None,
) -> float:
    """S = integral of U over [x1, x2], the area under the potential
    between the turning points."""
    units = units or UnitSystem()
    tol = tol or Tolerances()
    tp = turning_points(spec, E, units, tol)
    if isinstance(spec, potentials.InfiniteSquareWell):
        return 0.0
    return numerics.integrate(lambda x: potentials.evaluate(spec, x, units), tp.x1, tp.x2, tol)


def delta_equivalent_energy(S: float, units: UnitSystem | None = None) -> float:
    """Bound-state energy -m*S^2/(2*hbar^2) of the equivalent delta well."""
    units = units or UnitSystem()
    if S < 0.0:
        raise InvalidEnergy(f"S must be non-negative, got {S}")
    return -units.mass * S * S / (2.0 * units.hbar ** 2)


def ground_state_energy(
    spec: PotentialSpec,
    units: UnitSystem | None = None,
    tol: Tolerances | None = None,
) -> GroundState:
    """Self-consistent zero-point energy E = 2*hbar^2 / (m * d(E)^2)."""
    units = units or UnitSystem()
    tol = tol or Tolerances()
    tp_tol = _tight(tol)
    width = _width_fn(spec, units, tp_tol)
    coeff = 2.0 * units.hbar ** 2 / units.mass

    def residual(E: float) -> float:
        d = width(E)
        if d < _TINY_WIDTH * (1.0 + abs(E)):
            return -math.inf  # E below any admissible level
        return E - coeff / (d * d)

    e_lo, e_hi = _energy_bracket(spec, units)
    energy = numerics.solve_self_consistent(residual, e_lo, e_hi, tol)
    tp = turning_points(spec, energy, units, tp_tol)
    return GroundState(energy=energy, tp=tp, residual=abs(residual(energy)))


def excited_energy(
    spec: PotentialSpec,
    level: LevelSpec,
    units: UnitSystem | None = None,
    tol: Tolerances | None = None,
) -> EnergyLevel:
    """Self-consistent solve of K(E) * d(E) = q * pi for the given branch."""
    units = units or UnitSystem()
    tol = tol or Tolerances()
    tp_tol = _tight(tol)
    width = _width_fn(spec, units, tp_tol)
    m1 = units.m1
    target = level.q * math.pi

    def residual(E: float) -> float:
        d = width(E)
        if d < _TINY_WIDTH * (1.0 + abs(E)):
            return -target
        return m1 * math.sqrt(E) * d - target

    e_lo, e_hi = _energy_bracket(spec, units)
    energy = numerics.solve_self_consistent(residual, e_lo, e_hi, tol)
    tp = turning_points(spec, energy, units, tp_tol)
    K = m1 * math.sqrt(energy)
    return EnergyLevel(level=level, energy=energy, tp=tp, K=K, residual=abs(K * tp.d - target))


def q_function(
    spec: PotentialSpec,
    units: UnitSystem | None = None,
    tol: Tolerances | None = None,
    anchor: float | None = None,
) -> Callable[[float], float]:
    """Evaluator for Q(x) = m1 * integral of sqrt(U).

    Closed forms are used when the family has one (zero integration
    constant). Otherwise Q is computed by quadrature anchored at `anchor`
    (Q(anchor) = 0); the normalization amplitude absorbs the constant
    offset between the two conventions.
    """
    units = units or UnitSystem()
    tol = tol or Tolerances()
    probe = potentials.analytic_q(spec, _probe_point(spec), units)
    if probe is not None:
        def analytic(x: float) -> float:
            value = potentials.analytic_q(spec, x, units)
            assert value is not None
            return value

        return analytic
    if anchor is None:
        raise InvalidEnergy("numeric Q evaluator needs an anchor point")
    m1 = units.m1

    def sqrt_u(x: float) -> float:
        return math.sqrt(potentials.evaluate(spec, x, units))

    def numeric(x: float) -> float:
        # magnitude of the running integral: reproduces the even closed-form
        # antiderivatives on symmetric wells (anchor at the midpoint)
        if x == anchor:
            return 0.0
        if x > anchor:
            return m1 * numerics.integrate(sqrt_u, anchor, x, tol)
        return m1 * numerics.integrate(sqrt_u, x, anchor, tol)

    return numeric


def _probe_point(spec: PotentialSpec) -> float:
    dom = potentials.domain_of(spec)
    if math.isfinite(dom.lo) and math.isfinite(dom.hi):
        return 0.5 * (dom.lo + dom.hi)
    if math.isfinite(dom.lo):
        return dom.lo + 1.0
    return 1.0


def wavefunction(
    spec: PotentialSpec,
    level: LevelSpec,
    E: float,
    units: UnitSystem | None = None,
    tol: Tolerances | None = None,
) -> WaveFunctionDescriptor:
    """Un-normalized descriptor for psi_n on the well interval [x1, x2]."""
    units = units or UnitSystem()
    tol = tol or Tolerances()
    tp = turning_points(spec, E, units, tol)
    q_eval = q_function(spec, units, tol, anchor=tp.x0)
    return WaveFunctionDescriptor(
        level=level,
        tp=tp,
        amplitude=1.0,
        q_eval=q_eval,
        mirrored=isinstance(spec, potentials.QuadraticInverse),
    )


def normalize(desc: WaveFunctionDescriptor, tol: Tolerances | None = None) -> WaveFunctionDescriptor:
    """Scale the amplitude so that the norm over [x1, x2] is 1."""
    tol = tol or Tolerances()

    def density(x: float) -> float:
        return (desc.trig_factor(x) * math.exp(-desc.q_eval(x))) ** 2

    norm_sq = numerics.integrate(density, desc.tp.x1, desc.tp.x2, tol)
    if norm_sq < 1e-300:
        raise DegenerateNorm(f"norm integral {norm_sq} too small")
    return replace(desc, amplitude=1.0 / math.sqrt(norm_sq))


def sample(desc: WaveFunctionDescriptor, grid: list[float]) -> list[tuple[float, float]]:
    """Pointwise (x, psi(x)) over an ascending grid; zero outside the well."""
    return [(x, desc(x)) for x in grid]
