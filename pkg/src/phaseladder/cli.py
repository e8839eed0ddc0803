"""Command-line front end: config parsing, run orchestration, CSV emission.

Config files are flat ``key = value`` text with ``#`` comments.  Angles are
given in the units their key names carry (arcseconds, milliarcseconds,
radians); everything is converted to radians at the boundary.  Every run
needs an explicit seed, either in the config or via ``--seed``.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .detection import DRIFT_GRANULARITIES, NoiseModel
from .ladder import ArrayConfig
from .montecarlo import SweepResult, SweepRow, photon_budget, run_trial, sweep
from .reconstruction import precision_bounds
from .reference import ReferenceScenario, simulate_reference_run
from .single_baseline import SingleBaselineModel, single_baseline_failure, single_baseline_sigma_theta
from .units import arcsec_to_rad, mas_to_rad, rad_to_mas

MODES = ("estimate", "sweep", "compare", "reference")


@dataclass(frozen=True)
class RunConfig:
    mode: str = "sweep"
    wavelength_nm: float = 380.0
    theta_bar_as: float = 1.2
    k_count: int | None = None
    max_baseline_m: float | None = None
    sigma_rad: float = 0.0
    flip_a: float = 0.0
    flip_b: float = 0.0
    flip_a2: float = 0.0
    flip_b2: float = 0.0
    alpha: float = 0.2
    l0_km: float = 10.0
    drift_granularity: str = "dataset"
    m_grid: tuple[int, ...] = (1, 2, 4, 8, 16, 32)
    m_per_setting: int = 1024
    trials: int = 1000
    seed: int | None = None
    out: str = "results.csv"
    theta_as: float | None = None
    gamma0_as: float = 1.0
    theta0_mas: float = 1.0
    theta_t_mas: float | None = None
    theta_r_as: float = 0.0
    drift_correlation: float = 1.0

    def array_config(self) -> ArrayConfig:
        wavelength_m = self.wavelength_nm * 1e-9
        theta_bar_rad = arcsec_to_rad(self.theta_bar_as)
        if (self.k_count is None) == (self.max_baseline_m is None):
            raise ValueError(
                "exactly one of 'k_count' and 'max_baseline_m' must be given"
            )
        if self.k_count is not None:
            return ArrayConfig(wavelength_m, theta_bar_rad, self.k_count)
        return ArrayConfig.from_max_baseline(
            wavelength_m, theta_bar_rad, self.max_baseline_m
        )

    def noise_model(self) -> NoiseModel:
        return NoiseModel(
            sigma_rad=self.sigma_rad,
            flip_a=self.flip_a,
            flip_b=self.flip_b,
            flip_a2=self.flip_a2,
            flip_b2=self.flip_b2,
            alpha=self.alpha,
            l0_m=self.l0_km * 1000.0,
            drift_granularity=self.drift_granularity,
        )

    def scenario(self, theta_t_rad: float) -> ReferenceScenario:
        return ReferenceScenario(
            gamma0_rad=arcsec_to_rad(self.gamma0_as),
            theta_t_rad=theta_t_rad,
            theta0_rad=mas_to_rad(self.theta0_mas),
            theta_r_rad=arcsec_to_rad(self.theta_r_as),
        )


def _parse_bool_free_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"key '{key}' expects an integer, got {raw!r}") from None


def _parse_float(key: str, unit: str):
    def parse(raw: str) -> float:
        try:
            return float(raw)
        except ValueError:
            raise ValueError(f"key '{key}' expects a number ({unit}), got {raw!r}") from None

    return parse


def _parse_m_grid(raw: str) -> tuple[int, ...]:
    try:
        grid = tuple(int(part) for part in raw.replace(",", " ").split())
    except ValueError:
        raise ValueError(
            f"key 'm_grid' expects comma-separated integers, got {raw!r}"
        ) from None
    if not grid:
        raise ValueError("key 'm_grid' must not be empty")
    return grid


def _parse_mode(raw: str) -> str:
    if raw not in MODES:
        raise ValueError(f"key 'mode' must be one of {MODES}, got {raw!r}")
    return raw


def _parse_granularity(raw: str) -> str:
    if raw not in DRIFT_GRANULARITIES:
        raise ValueError(
            f"key 'drift_granularity' must be one of {DRIFT_GRANULARITIES}, got {raw!r}"
        )
    return raw


# key -> (parser, unit description)
_KEY_SPECS = {
    "mode": (_parse_mode, "one of " + "/".join(MODES)),
    "wavelength_nm": (_parse_float("wavelength_nm", "nanometres"), "nanometres"),
    "theta_bar_as": (_parse_float("theta_bar_as", "arcseconds"), "arcseconds"),
    "k_count": (lambda raw: _parse_bool_free_int("k_count", raw), "baseline count"),
    "max_baseline_m": (_parse_float("max_baseline_m", "metres"), "metres"),
    "sigma_rad": (_parse_float("sigma_rad", "radians"), "radians"),
    "flip_a": (_parse_float("flip_a", "rate in [0,1)"), "rate in [0,1)"),
    "flip_b": (_parse_float("flip_b", "rate in [0,1)"), "rate in [0,1)"),
    "flip_a2": (_parse_float("flip_a2", "rate in [0,1)"), "rate in [0,1)"),
    "flip_b2": (_parse_float("flip_b2", "rate in [0,1)"), "rate in [0,1)"),
    "alpha": (_parse_float("alpha", "dimensionless"), "dimensionless"),
    "l0_km": (_parse_float("l0_km", "kilometres"), "kilometres"),
    "drift_granularity": (_parse_granularity, "dataset/baseline/photon"),
    "m_grid": (_parse_m_grid, "comma-separated integers"),
    "m_per_setting": (lambda raw: _parse_bool_free_int("m_per_setting", raw), "samples"),
    "trials": (lambda raw: _parse_bool_free_int("trials", raw), "count"),
    "seed": (lambda raw: _parse_bool_free_int("seed", raw), "unsigned integer"),
    "out": (str, "path"),
    "theta_as": (_parse_float("theta_as", "arcseconds"), "arcseconds"),
    "gamma0_as": (_parse_float("gamma0_as", "arcseconds"), "arcseconds"),
    "theta0_mas": (_parse_float("theta0_mas", "milliarcseconds"), "milliarcseconds"),
    "theta_t_mas": (_parse_float("theta_t_mas", "milliarcseconds"), "milliarcseconds"),
    "theta_r_as": (_parse_float("theta_r_as", "arcseconds"), "arcseconds"),
    "drift_correlation": (_parse_float("drift_correlation", "in [0,1]"), "in [0,1]"),
}

_REQUIRED_KEYS = ("wavelength_nm", "theta_bar_as")


def parse_config(path: str | Path) -> RunConfig:
    """Parse and validate a flat key-value config file.

    Unknown keys are rejected; missing required keys and malformed values are
    reported with the key name and expected unit.
    """
    path = Path(path)
    values: dict = {}
    for lineno, raw_line in enumerate(path.read_text().splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw_line!r}")
        key, _, raw_value = line.partition("=")
        key = key.strip()
        raw_value = raw_value.strip()
        if key not in _KEY_SPECS:
            raise ValueError(f"{path}:{lineno}: unknown key '{key}'")
        if key in values:
            raise ValueError(f"{path}:{lineno}: duplicate key '{key}'")
        parser, _unit = _KEY_SPECS[key]
        values[key] = parser(raw_value)

    for key in _REQUIRED_KEYS:
        if key not in values:
            _, unit = _KEY_SPECS[key]
            raise ValueError(f"{path}: missing required key '{key}' ({unit})")
    if ("k_count" in values) == ("max_baseline_m" in values):
        raise ValueError(
            f"{path}: exactly one of 'k_count' (baseline count) and "
            "'max_baseline_m' (metres) must be given"
        )

    config = RunConfig(**values)
    config.array_config()  # validates the geometry now
    config.noise_model()
    return config


def derived_header(config: RunConfig) -> str:
    array = config.array_config()
    delta_phi, delta_theta = precision_bounds(array)
    return (
        f"derived: L1_m = {array.l1_m!r}, K = {array.k_count}, "
        f"delta_phi_rad = {delta_phi!r}, delta_theta_mas = {rad_to_mas(delta_theta)!r}"
    )


def _format_float(x: float) -> str:
    return format(float(x), ".17e")


def _meta_lines(config: RunConfig) -> list[str]:
    lines = [f"# phaseladder {__version__}", f"# {derived_header(config)}"]
    for field in fields(RunConfig):
        value = getattr(config, field.name)
        if value is None:
            continue
        if isinstance(value, tuple):
            value = ",".join(str(v) for v in value)
        lines.append(f"{field.name} = {value}")
    return lines


def emit_results(result: SweepResult, path: str | Path, config: RunConfig) -> None:
    """Write sweep rows as CSV plus a ``.meta`` sidecar.

    The CSV body is a pure function of the sweep result (full-precision
    scientific floats, LF newlines), so identical runs emit identical bytes.
    The sidecar holds the config snapshot in config-file syntax and
    round-trips through :func:`parse_config`.
    """
    path = Path(path)
    lines = ["M,N,eps_mean,eps_stderr,trials,seed"]
    for row in result.rows:
        lines.append(
            f"{row.m_per_setting},{_format_float(row.photon_budget)},"
            f"{_format_float(row.eps_mean)},{_format_float(row.eps_stderr)},"
            f"{row.trials},{row.seed}"
        )
    try:
        path.write_text("\n".join(lines) + "\n")
        Path(str(path) + ".meta").write_text("\n".join(_meta_lines(config)) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc


def _emit_trials_csv(rows: list[str], header: str, path: Path, config: RunConfig) -> None:
    try:
        path.write_text("\n".join([header] + rows) + "\n")
        Path(str(path) + ".meta").write_text("\n".join(_meta_lines(config)) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc


def _run_estimate(config: RunConfig) -> None:
    array = config.array_config()
    noise = config.noise_model()
    children = np.random.SeedSequence(config.seed).spawn(config.trials)
    rows = []
    successes = 0
    for t in range(config.trials):
        rng = np.random.default_rng(children[t])
        if config.theta_as is not None:
            theta = arcsec_to_rad(config.theta_as)
        else:
            theta = float(rng.uniform(0.0, array.theta_bar_rad))
        outcome = run_trial(theta, array, noise, config.m_per_setting, rng)
        successes += outcome.success
        theta_est = outcome.estimated_phi1_rad * array.wavelength_m / (
            2.0 * np.pi * array.l1_m
        )
        rows.append(
            f"{t},{_format_float(theta)},{_format_float(theta_est)},"
            f"{_format_float(outcome.true_phi1_rad)},"
            f"{_format_float(outcome.estimated_phi1_rad)},{int(outcome.success)}"
        )
    _emit_trials_csv(
        rows,
        "trial,theta_true_rad,theta_est_rad,phi1_true_rad,phi1_est_rad,success",
        Path(config.out),
        config,
    )
    print(f"estimate: {successes}/{config.trials} trials within tolerance")
    print(f"wrote {config.out}")


def _run_sweep(config: RunConfig) -> None:
    result = sweep(
        config.array_config(),
        config.noise_model(),
        config.m_grid,
        config.trials,
        config.seed,
    )
    emit_results(result, config.out, config)
    print(f"wrote {config.out}")


def _single_baseline_rows(config: RunConfig, budgets: Sequence[float]) -> SweepResult:
    array = config.array_config()
    _, delta_theta = precision_bounds(array)
    model = SingleBaselineModel(
        wavelength_m=array.wavelength_m,
        l1_m=array.l1_m,
        theta_bar_rad=array.theta_bar_rad,
        sigma_rad=config.sigma_rad,
    )
    rows = []
    for m, n in zip(config.m_grid, budgets):
        eps = single_baseline_failure(
            delta_theta, single_baseline_sigma_theta(n, model)
        )
        rows.append(
            SweepRow(
                m_per_setting=m,
                photon_budget=n,
                eps_mean=eps,
                eps_stderr=0.0,
                trials=0,
                seed=config.seed,
            )
        )
    return SweepResult(
        rows=tuple(rows),
        config=array,
        noise=config.noise_model(),
        master_seed=config.seed,
        trials=0,
    )


def _run_compare(config: RunConfig) -> None:
    stem = Path(config.out)
    ladder_path = stem.with_name(stem.stem + "_ladder" + stem.suffix)
    single_path = stem.with_name(stem.stem + "_single_baseline" + stem.suffix)
    result = sweep(
        config.array_config(),
        config.noise_model(),
        config.m_grid,
        config.trials,
        config.seed,
    )
    emit_results(result, ladder_path, config)
    budgets = [row.photon_budget for row in result.rows]
    emit_results(_single_baseline_rows(config, budgets), single_path, config)
    print(f"wrote {ladder_path} and {single_path}")


def _run_reference(config: RunConfig) -> None:
    array = config.array_config()
    noise = config.noise_model()
    theta0_rad = mas_to_rad(config.theta0_mas)
    rows = []
    for i, m in enumerate(config.m_grid):
        children = np.random.SeedSequence(config.seed, spawn_key=(i,)).spawn(
            config.trials
        )
        failures = 0
        for t in range(config.trials):
            rng = np.random.default_rng(children[t])
            if config.theta_t_mas is not None:
                theta_t = mas_to_rad(config.theta_t_mas)
            else:
                theta_t = float(rng.uniform(0.0, theta0_rad))
            outcome = simulate_reference_run(
                config.scenario(theta_t),
                array,
                noise,
                m,
                rng,
                drift_correlation=config.drift_correlation,
            )
            failures += not outcome.success
        eps = failures / config.trials
        rows.append(
            SweepRow(
                m_per_setting=m,
                photon_budget=2.0 * photon_budget(m, array, noise),
                eps_mean=eps,
                eps_stderr=float(np.sqrt(eps * (1.0 - eps) / config.trials)),
                trials=config.trials,
                seed=config.seed,
            )
        )
    result = SweepResult(
        rows=tuple(rows),
        config=array,
        noise=noise,
        master_seed=config.seed,
        trials=config.trials,
    )
    emit_results(result, config.out, config)
    print(f"wrote {config.out}")


_RUNNERS = {
    "estimate": _run_estimate,
    "sweep": _run_sweep,
    "compare": _run_compare,
    "reference": _run_reference,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phaseladder",
        description="Multi-baseline interferometric angle estimation runs.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        p = sub.add_parser(mode, help=f"run in {mode} mode")
        p.add_argument("--config", required=True, help="key = value config file")
        p.add_argument("--seed", type=int, default=None, help="master RNG seed")
        p.add_argument("--trials", type=int, default=None, help="override trial count")
        p.add_argument("--out", default=None, help="override output CSV path")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = parse_config(args.config)
        overrides = {"mode": args.mode}
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.trials is not None:
            overrides["trials"] = args.trials
        if args.out is not None:
            overrides["out"] = args.out
        config = replace(config, **overrides)
        if config.seed is None:
            raise ValueError(
                "a seed is required: set 'seed' in the config or pass --seed"
            )
        if config.seed < 0:
            raise ValueError(f"seed must be non-negative, got {config.seed}")
        if config.trials < 1:
            raise ValueError(f"trials must be >= 1, got {config.trials}")
        print(derived_header(config))
        _RUNNERS[config.mode](config)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
