"""Command-line surface: solve / wavefunction / scatter / compare.

stdout carries only the emitted document (JSON or CSV); stderr carries
diagnostics and the rendered comparison table. Exit codes: 0 success,
2 spec/expression parse error, 3 convergence failure, 4 invalid physical
input.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import reference, scattering, solver
from .errors import (
    ConvergenceFailure,
    ExpressionSyntaxError,
    InvalidInput,
    InvalidRegion,
    MaxIterationsExceeded,
    QuadratureDivergence,
    SpecParseError,
    TurnpointError,
)
from .numerics import Tolerances
from .potentials import (
    PotentialSpec,
    Step,
    UnitSystem,
    VWell,
    parse_potential_spec,
    spec_to_dict,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CONVERGENCE = 3
EXIT_INVALID = 4

_PARSE_ERRORS = (SpecParseError, ExpressionSyntaxError)
_CONVERGENCE_ERRORS = (ConvergenceFailure, QuadratureDivergence, MaxIterationsExceeded)

# known variational upper bound for the V-form well ground state, in units
# of (hbar^2 U0^2 / m)^(1/3): 1.5 * (1/(2 pi))^(1/3) ~= 0.813
_VWELL_VARIATIONAL_COEFF = 1.5 * (0.5 / math.pi) ** (1.0 / 3.0)


@dataclass
class RunConfig:
    potential: PotentialSpec
    units: UnitSystem = field(default_factory=UnitSystem)
    tolerances: Tolerances = field(default_factory=Tolerances)
    n_max: int = 3
    variant: str = "all"  # symmetric | antisymmetric | general | all

    def __post_init__(self):
        if self.n_max < 1:
            raise InvalidInput(f"n_max must be >= 1, got {self.n_max}")
        if self.variant not in (*solver.VARIANTS, "all"):
            raise InvalidInput(f"unknown variant {self.variant!r}")

    @property
    def variants(self) -> tuple[str, ...]:
        return solver.VARIANTS if self.variant == "all" else (self.variant,)


def format_float(value: float) -> str:
    """17-significant-digit, locale-independent rendering (exact round trip)."""
    if value != value:
        raise ValueError("refusing to serialize NaN")
    return format(value, ".17g")


def to_json(value, indent: int = 0) -> str:
    """Minimal JSON emitter with stable key order and .17g floats."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f'{inner}"{k}": {to_json(v, indent + 1)}' for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{inner}{to_json(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if value is None:
        return "null"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _check_residual(residual: float, scale: float, tol: Tolerances) -> None:
    if residual > tol.energy_rel * (1.0 + abs(scale)):
        raise ConvergenceFailure(
            f"residual {residual} above configured tolerance; refusing to emit"
        )


def _solve_levels(config: RunConfig) -> tuple[solver.GroundState, list[solver.EnergyLevel]]:
    if isinstance(config.potential, Step):
        raise InvalidInput("the step potential has no bound levels; use the scatter subcommand")
    ground = solver.ground_state_energy(config.potential, config.units, config.tolerances)
    _check_residual(ground.residual, ground.energy, config.tolerances)
    levels: list[solver.EnergyLevel] = []
    for n in range(1, config.n_max + 1):
        per_n = [
            solver.excited_energy(
                config.potential, solver.LevelSpec(n, variant), config.units, config.tolerances
            )
            for variant in config.variants
        ]
        per_n.sort(key=lambda lv: lv.energy)
        for lv in per_n:
            _check_residual(lv.residual, lv.level.q * math.pi, config.tolerances)
        levels.extend(per_n)
    return ground, levels


def _level_record(lv: solver.EnergyLevel) -> dict:
    return {
        "n": lv.level.n,
        "variant": lv.level.variant,
        "energy": lv.energy,
        "K": lv.K,
        "d": lv.tp.d,
        "x0": lv.tp.x0,
        "residual": lv.residual,
    }


def run_solve(config: RunConfig) -> dict:
    ground, levels = _solve_levels(config)
    return {
        "potential": spec_to_dict(config.potential),
        "units": {"hbar": config.units.hbar, "mass": config.units.mass},
        "ground_state": {
            "energy": ground.energy,
            "d": ground.tp.d,
            "x0": ground.tp.x0,
            "bound": ground.bound,
            "residual": ground.residual,
        },
        "levels": [_level_record(lv) for lv in levels],
    }


def run_wavefunction(config: RunConfig, n: int, variant: str, samples: int) -> str:
    """CSV document `x,psi` with `samples` rows spanning [x1-0.1d, x2+0.1d]."""
    if n > config.n_max:
        raise InvalidInput(f"n={n} exceeds n_max={config.n_max}")
    if variant not in solver.VARIANTS:
        raise InvalidInput(f"wavefunction needs a concrete variant, got {variant!r}")
    if samples < 1:
        raise InvalidInput(f"samples must be >= 1, got {samples}")
    level = solver.LevelSpec(n, variant)
    result = solver.excited_energy(config.potential, level, config.units, config.tolerances)
    desc = solver.wavefunction(
        config.potential, level, result.energy, config.units, config.tolerances
    )
    desc = solver.normalize(desc, config.tolerances)
    tp = desc.tp
    lo, hi = tp.x1 - 0.1 * tp.d, tp.x2 + 0.1 * tp.d
    if samples == 1:
        grid = [lo]
    else:
        grid = [lo + (hi - lo) * i / (samples - 1) for i in range(samples)]
    lines = ["x,psi"]
    for x, psi in solver.sample(desc, grid):
        lines.append(f"{format_float(x)},{format_float(psi)}")
    return "\n".join(lines) + "\n"


def run_scatter(u0: float, energies: list[float], x_probe: float, units: UnitSystem) -> dict:
    if not u0 > 0.0:
        raise InvalidInput(f"u0 must be positive, got {u0}")
    if x_probe < 0.0:
        raise InvalidRegion(f"x probe must be >= 0, got {x_probe}")
    records = []
    for E in energies:
        coeffs = scattering.match_coefficients(E, u0, units)
        if coeffs.regime == scattering.REGIME_BELOW:
            t_at_x = 0.0
        else:
            t_at_x = scattering.transmission_at(E, u0, x_probe, units)
        record = {
            "E": E,
            "regime": coeffs.regime,
            "R": coeffs.R,
            "T0": coeffs.T0,
            "T_at_x": t_at_x,
            "standard_R": reference.standard_step_R(E, u0, units),
        }
        if E <= u0:
            record["raw_subbarrier_R"] = {
                "value": scattering.raw_subbarrier_R(E, u0),
                "non_physical": True,
            }
        records.append(record)
    return {
        "u0": u0,
        "units": {"hbar": units.hbar, "mass": units.mass},
        "x": x_probe,
        "records": records,
    }


def run_compare(config: RunConfig, numerov: reference.NumerovConfig | None = None) -> dict:
    """Solve document extended with sorted-order pairing against the
    Numerov reference; indices are explicit on both sides because the
    variant indexing and the node-count indexing disagree."""
    doc = run_solve(config)
    ground, levels = doc["ground_state"], doc["levels"]
    erbil_rows = [(f"n={lv['n']}", lv["variant"], lv["energy"]) for lv in levels]
    erbil_rows.sort(key=lambda row: row[2])
    ref_levels = reference.shoot_bound_states(
        config.potential,
        max(len(erbil_rows), 1),
        numerov or reference.NumerovConfig(),
        config.units,
    )

    def row(index: str, variant: str, erbil_value: float, ref: reference.ReferenceLevel) -> dict:
        rel_diff = abs(erbil_value - ref.energy) / max(abs(ref.energy), 1e-300)
        return {
            "label": f"{index} {variant}".strip(),
            "erbil_index": index,
            "erbil_variant": variant,
            "reference_node_count": ref.node_count,
            "erbil_value": erbil_value,
            "reference_value": ref.energy,
            "rel_diff": rel_diff,
        }

    # the zero-point level and the lowest true eigenvalue share node count 0,
    # so both the ground row and the first sorted excited row pair with it
    ground_row = row("ground", "-", ground["energy"], ref_levels[0])
    ground_row["ratio_reference_over_erbil"] = (
        ref_levels[0].energy / ground["energy"] if ground["energy"] else math.inf
    )
    comparison = [ground_row]
    comparison += [
        row(index, variant, value, ref)
        for (index, variant, value), ref in zip(erbil_rows, ref_levels)
    ]
    doc["comparison"] = comparison
    if isinstance(config.potential, VWell):
        u = config.units
        scale = (u.hbar ** 2 * config.potential.u0 ** 2 / u.mass) ** (1.0 / 3.0)
        doc["known_ground_state_estimate"] = {
            "method": "variational",
            "value": _VWELL_VARIATIONAL_COEFF * scale,
        }
    return doc


def render_comparison_table(doc: dict) -> str:
    header = f"{'label':<24} {'node':>4} {'erbil':>22} {'reference':>22} {'rel_diff':>12}"
    lines = [header, "-" * len(header)]
    for row in doc["comparison"]:
        lines.append(
            f"{row['label']:<24} {row['reference_node_count']:>4} "
            f"{row['erbil_value']:>22.12g} {row['reference_value']:>22.12g} "
            f"{row['rel_diff']:>12.4g}"
        )
    return "\n".join(lines)


def _read_config_file(path: str) -> dict[str, str]:
    """Flat `key = value` file; '#' starts a comment."""
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise SpecParseError(f"{path}:{lineno}: expected key = value")
                key, _, value = line.partition("=")
                values[key.strip().lower().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise SpecParseError(f"cannot read config file {path}: {exc}") from None
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turnpoint",
        description="Turning-point solver for 1D wells, with a Numerov reference and step scattering.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_shared(p: argparse.ArgumentParser) -> None:
        p.add_argument("--potential", help="potential spec, e.g. sho:omega=1 or 'expr:0.5*x^2;domain=-10..10'")
        p.add_argument("--config", help="flat key = value config file; flags override")
        p.add_argument("--hbar", type=float, default=None)
        p.add_argument("--mass", type=float, default=None)
        p.add_argument("--n-max", type=int, default=None, dest="n_max")
        p.add_argument("--variant", choices=[*solver.VARIANTS, "all"], default=None)
        p.add_argument("--tol-energy", type=float, default=None, dest="tol_energy")
        p.add_argument("--tol-quad", type=float, default=None, dest="tol_quad")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=["json", "csv"], default=None)

    p_solve = sub.add_parser("solve", help="ground and excited energies")
    add_shared(p_solve)

    p_wf = sub.add_parser("wavefunction", help="normalized wavefunction samples as CSV")
    add_shared(p_wf)
    p_wf.add_argument("--n", type=int, default=1)
    p_wf.add_argument("--samples", type=int, default=None)

    p_sc = sub.add_parser("scatter", help="step-potential coefficients")
    add_shared(p_sc)
    p_sc.add_argument("--u0", type=float, default=None)
    p_sc.add_argument("--energy", action="append", type=float, default=None,
                      help="single energy; repeatable")
    p_sc.add_argument("--e-min", type=float, default=None, dest="e_min")
    p_sc.add_argument("--e-max", type=float, default=None, dest="e_max")
    p_sc.add_argument("--e-count", type=int, default=None, dest="e_count")
    p_sc.add_argument("--x", type=float, default=None, help="probe position in region II (default 0)")

    p_cmp = sub.add_parser("compare", help="side-by-side with the Numerov reference")
    add_shared(p_cmp)
    return parser


def _setting(args: argparse.Namespace, file_values: dict[str, str], key: str, cast, default):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if key in file_values:
        return cast(file_values[key])
    return default


def _make_config(args: argparse.Namespace, file_values: dict[str, str]) -> RunConfig:
    spec_text = _setting(args, file_values, "potential", str, None)
    if not spec_text:
        raise SpecParseError("no potential given (use --potential or a config file)")
    energy_rel = _setting(args, file_values, "tol_energy", float, None)
    if energy_rel is None:
        env_tol = os.environ.get("TURNPOINT_TOL_ENERGY")
        if env_tol:
            try:
                energy_rel = float(env_tol)
            except ValueError:
                raise InvalidInput(
                    f"TURNPOINT_TOL_ENERGY is not a number: {env_tol!r}"
                ) from None
        else:
            energy_rel = 1e-10
    quad_rel = _setting(args, file_values, "tol_quad", float, 1e-10)
    tolerances = Tolerances(energy_rel=energy_rel, quad_rel=quad_rel)
    units = UnitSystem(
        hbar=_setting(args, file_values, "hbar", float, 1.0),
        mass=_setting(args, file_values, "mass", float, 1.0),
    )
    return RunConfig(
        potential=parse_potential_spec(spec_text),
        units=units,
        tolerances=tolerances,
        n_max=_setting(args, file_values, "n_max", int, 3),
        variant=_setting(args, file_values, "variant", str, "all"),
    )


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dispatch(args: argparse.Namespace) -> int:
    file_values = _read_config_file(args.config) if args.config else {}
    out_path = _setting(args, file_values, "out", str, None)
    fmt_default = "csv" if args.command == "wavefunction" else "json"
    fmt = _setting(args, file_values, "format", str, fmt_default)

    if args.command == "scatter":
        if fmt != "json":
            raise InvalidInput("scatter emits JSON only")
        units = UnitSystem(
            hbar=_setting(args, file_values, "hbar", float, 1.0),
            mass=_setting(args, file_values, "mass", float, 1.0),
        )
        u0 = _setting(args, file_values, "u0", float, None)
        if u0 is None:
            raise InvalidInput("scatter requires --u0")
        energies = list(args.energy) if args.energy else []
        if "energy" in file_values and not energies:
            energies = [float(tok) for tok in file_values["energy"].split(",") if tok.strip()]
        e_min = _setting(args, file_values, "e_min", float, None)
        e_max = _setting(args, file_values, "e_max", float, None)
        e_count = _setting(args, file_values, "e_count", int, None)
        if e_min is not None or e_max is not None or e_count is not None:
            if None in (e_min, e_max, e_count) or e_count < 2 or not e_min < e_max:
                raise InvalidInput("energy range needs --e-min < --e-max and --e-count >= 2")
            energies += list(np.linspace(e_min, e_max, e_count))
        if not energies:
            raise InvalidInput("scatter requires --energy or an --e-min/--e-max/--e-count range")
        if any(E <= 0.0 for E in energies):
            raise InvalidInput("all energies must be positive")
        x_probe = _setting(args, file_values, "x", float, 0.0)
        doc = run_scatter(u0, energies, x_probe, units)
        _emit(to_json(doc) + "\n", out_path)
        return EXIT_OK

    config = _make_config(args, file_values)

    if args.command == "solve":
        if fmt != "json":
            raise InvalidInput("solve emits JSON only")
        _emit(to_json(run_solve(config)) + "\n", out_path)
        return EXIT_OK

    if args.command == "wavefunction":
        if fmt != "csv":
            raise InvalidInput("wavefunction emits CSV only")
        variant = config.variant if config.variant != "all" else "symmetric"
        samples = _setting(args, file_values, "samples", int, 201)
        _emit(run_wavefunction(config, args.n, variant, samples), out_path)
        return EXIT_OK

    if args.command == "compare":
        if fmt != "json":
            raise InvalidInput("compare emits JSON only")
        doc = run_compare(config)
        print(render_comparison_table(doc), file=sys.stderr)
        _emit(to_json(doc) + "\n", out_path)
        return EXIT_OK

    raise InvalidInput(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except _PARSE_ERRORS as exc:
        print(f"turnpoint: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _CONVERGENCE_ERRORS as exc:
        print(f"turnpoint: convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except TurnpointError as exc:
        print(f"turnpoint: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
