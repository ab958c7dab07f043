"""Shared numerical kernel: root bracketing and bisection, adaptive Simpson
quadrature tolerant of integrable endpoint singularities, and the
self-consistent scalar-equation solver behind every implicit energy formula.

Bisection is used everywhere instead of Newton or secant steps: the
integrands and residuals here have kinks (|x|) and poles (cot^2), and
robustness beats speed at this problem scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import (
    ConvergenceFailure,
    MaxIterationsExceeded,
    QuadratureDivergence,
    TurnpointError,
)

_EVAL_ERRORS = (TurnpointError, ArithmeticError, ValueError, OverflowError)

_BISECT_MAX_ITER = 200
_EXPAND_FACTOR = 10.0
_MAX_EXPANSIONS = 12


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"bracket requires lo < hi, got [{self.lo}, {self.hi}]")
        if not (math.isfinite(self.f_lo) and math.isfinite(self.f_hi)):
            raise ValueError("bracket endpoint values must be finite")
        if math.copysign(1.0, self.f_lo) == math.copysign(1.0, self.f_hi) and self.f_lo != 0.0 and self.f_hi != 0.0:
            raise ValueError("bracket endpoints must differ in sign")


@dataclass(frozen=True)
class Tolerances:
    root_abs: float = 1e-12
    root_rel: float = 1e-10
    quad_rel: float = 1e-10
    quad_max_depth: int = 60
    energy_rel: float = 1e-10

    def __post_init__(self):
        for name in ("root_abs", "root_rel", "quad_rel", "energy_rel"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if self.quad_max_depth < 10:
            raise ValueError("quad_max_depth must be >= 10")


def bracket_roots(
    f: Callable[[float], float], lo: float, hi: float, n_grid: int = 256
) -> list[Bracket]:
    """Sign-change intervals of f on a uniform n_grid scan of [lo, hi].

    Points where f raises are skipped and split the scan. An empty list
    means no sign change was seen; that is not an error here.
    """
    if not lo < hi:
        raise ValueError(f"bracket_roots requires lo < hi, got [{lo}, {hi}]")
    if n_grid < 2:
        raise ValueError("n_grid must be >= 2")
    xs = [lo + (hi - lo) * i / n_grid for i in range(n_grid + 1)]
    values: list[float | None] = []
    for x in xs:
        try:
            v = f(x)
            values.append(v if math.isfinite(v) else None)
        except _EVAL_ERRORS:
            values.append(None)
    out: list[Bracket] = []
    for i in range(n_grid):
        a, b = values[i], values[i + 1]
        if a is None or b is None:
            continue
        if a == 0.0:
            # exact hit: emit a degenerate-width bracket against the neighbor
            if b != 0.0:
                out.append(Bracket(xs[i], xs[i + 1], a, b))
            continue
        if b == 0.0:
            continue  # will be emitted by the next pair (or stands alone at hi)
        if (a > 0.0) != (b > 0.0):
            out.append(Bracket(xs[i], xs[i + 1], a, b))
    if values[-1] == 0.0 and values[-2] is not None and values[-2] != 0.0:
        out.append(Bracket(xs[-2], xs[-1], values[-2], values[-1]))
    return out


def bisect(f: Callable[[float], float], b: Bracket, tol: Tolerances | None = None) -> float:
    """Root of f inside the bracket by plain bisection."""
    tol = tol or Tolerances()
    lo, hi = b.lo, b.hi
    f_lo = b.f_lo
    if f_lo == 0.0:
        return lo
    if b.f_hi == 0.0:
        return hi
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol.root_abs + tol.root_rel * abs(mid):
            return mid
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    raise MaxIterationsExceeded(f"bisection did not converge on [{b.lo}, {b.hi}]")


def integrate(
    f: Callable[[float], float], a: float, b: float, tol: Tolerances | None = None
) -> float:
    """Adaptive Simpson integral of f over [a, b].

    If f raises at an endpoint, the affected sub-interval is shrunk
    geometrically toward that endpoint (factor 0.5 per step) and slices
    are summed until the last slice contributes below quad_rel * |total|:
    integrable endpoint singularities converge, non-integrable ones raise
    QuadratureDivergence.
    """
    tol = tol or Tolerances()
    if not a < b:
        if a == b:
            return 0.0
        raise ValueError(f"integrate requires a <= b, got [{a}, {b}]")
    a_bad = not _evaluable(f, a)
    b_bad = not _evaluable(f, b)
    if not a_bad and not b_bad:
        return _adaptive_simpson(f, a, b, tol)
    # shrink away from singular endpoints, then sum geometric slices inward
    width = b - a
    inset = 0.25
    lo = a + width * inset if a_bad else a
    hi = b - width * inset if b_bad else b
    while not (_evaluable(f, lo) and _evaluable(f, hi)) :
        inset *= 0.5
        if inset < 1e-40:
            raise QuadratureDivergence("no evaluable core interval found")
        lo = a + width * inset if a_bad else a
        hi = b - width * inset if b_bad else b
    total = _adaptive_simpson(f, lo, hi, tol)
    if a_bad:
        total += _singular_tail(f, a, lo, tol, toward_lo=True, core=total)
    if b_bad:
        total += _singular_tail(f, hi, b, tol, toward_lo=False, core=total)
    return total


def _evaluable(f: Callable[[float], float], x: float) -> bool:
    try:
        return math.isfinite(f(x))
    except _EVAL_ERRORS:
        return False


def _singular_tail(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Tolerances,
    toward_lo: bool,
    core: float,
) -> float:
    """Sum slices shrinking geometrically toward the singular endpoint."""
    total = 0.0
    width = b - a
    outer = b if toward_lo else a  # evaluable edge
    frac = 1.0
    max_slices = 400
    prev_slice = math.inf
    for _ in range(max_slices):
        frac *= 0.5
        inner = a + width * frac if toward_lo else b - width * frac
        singular_end = a if toward_lo else b
        if inner == outer or inner == singular_end:
            # slice width fell below one ulp of the endpoint; accept the sum
            # if the contributions were shrinking (integrable tail)
            if abs(prev_slice) < math.sqrt(tol.quad_rel) * max(abs(core) + abs(total), 1e-300):
                return total
            raise QuadratureDivergence("endpoint singularity does not appear integrable")
        lo, hi = (inner, outer) if toward_lo else (outer, inner)
        slice_value = _adaptive_simpson(f, lo, hi, tol)
        total += slice_value
        outer = inner
        prev_slice = slice_value
        scale = abs(core) + abs(total)
        if abs(slice_value) <= tol.quad_rel * max(scale, 1e-300):
            return total
    raise QuadratureDivergence("endpoint singularity does not appear integrable")


def _adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: Tolerances) -> float:
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    # tolerance scale from a 16-panel composite: the crude 3-point estimate
    # can be spuriously tiny when the samples straddle the integrand's nodes
    n = 16
    h = (b - a) / n
    samples = [fa] + [f(a + h * i) for i in range(1, n)] + [fb]
    composite = h / 3.0 * sum(
        w * v for w, v in zip([1] + [4, 2] * (n // 2 - 1) + [4, 1], samples)
    )
    scale = max(abs(whole), abs(composite), 1e-300)
    # force the first levels of subdivision: oscillatory integrands whose
    # nodes sit on the dyadic sample points would otherwise be accepted as 0
    return _simpson_rec(
        f, a, b, fa, fm, fb, whole, tol.quad_rel * scale, tol.quad_max_depth, tol, force=6
    )


def _simpson_rec(
    f: Callable[[float], float],
    a: float,
    b: float,
    fa: float,
    fm: float,
    fb: float,
    whole: float,
    eps: float,
    depth: int,
    tol: Tolerances,
    force: int = 0,
) -> float:
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if (force <= 0 and abs(delta) <= 15.0 * eps) or m <= a or b <= m:
        return left + right + delta / 15.0
    if depth <= 0:
        raise QuadratureDivergence(f"quadrature failed to converge on [{a}, {b}]")
    return (
        _simpson_rec(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1, tol, force - 1)
        + _simpson_rec(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1, tol, force - 1)
    )


def solve_self_consistent(
    g: Callable[[float], float],
    e_lo: float,
    e_hi: float,
    tol: Tolerances | None = None,
    n_grid: int = 64,
) -> float:
    """Root E* of the residual g on [e_lo, e_hi] with |g(E*)| <= energy_rel * (1 + E*).

    If the initial range shows no sign change it is expanded geometrically
    upward (hi <- 10 * hi) at most 12 times before ConvergenceFailure.
    """
    tol = tol or Tolerances()
    lo, hi = e_lo, e_hi
    brackets: list[Bracket] = []
    for _ in range(_MAX_EXPANSIONS + 1):
        brackets = bracket_roots(g, lo, hi, n_grid)
        if brackets:
            break
        hi *= _EXPAND_FACTOR
    if not brackets:
        raise ConvergenceFailure(f"no sign change of the residual on [{e_lo}, {hi}]")
    # bisect well past the interval tolerance so steep residuals still land
    tight = Tolerances(
        root_abs=1e-14,
        root_rel=max(tol.energy_rel * 1e-4, 1e-15),
        quad_rel=tol.quad_rel,
        quad_max_depth=tol.quad_max_depth,
        energy_rel=tol.energy_rel,
    )
    root = bisect(g, brackets[0], tight)
    residual = abs(g(root))
    if residual > tol.energy_rel * (1.0 + abs(root)):
        raise ConvergenceFailure(
            f"residual {residual} above tolerance at E={root}"
        )
    return root
