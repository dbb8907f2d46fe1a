"""Benchmark harness: missing-ratio and hole-width sweeps over all methods.

Every (sweep point, trial) pair builds one shared observation set from the
benchmark signal, runs the selected reconstruction methods on it, and
records the aligned error in dB. Runs are deterministic given the config:
trial seeds are base_seed + trial index and are shared across methods, so
every method sees the same mask and signal at a given point and trial.
"""

from __future__ import annotations

import dataclasses
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from time import perf_counter

import numpy as np

from .gabor import benchmark_system, istft
from .griffin_lim import GliConfig, gli_run
from .masks import hole_mask, random_mask
from .metrics import error_db
from .observe import Observations, observe, rpi_fill
from .phasecut import PciConfig, extract_phases, pci_signal, pci_solve, phase_cost_matrix
from .phaselift import PliConfig, extract_signal, pli_solve
from .signals import benchmark_signal

METHODS = ("gli", "pli", "pci", "rpi")
CSV_HEADER = "sweep_param,method,trial,e_db,seconds,converged,seed"

DEFAULT_RATIOS = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
DEFAULT_WIDTHS = (1, 3, 5, 7, 9)


@dataclass(frozen=True)
class ExperimentConfig:
    sweep: str = "ratio"
    ratios: tuple[float, ...] = DEFAULT_RATIOS
    widths: tuple[int, ...] = DEFAULT_WIDTHS
    fixed_ratio: float = 0.3
    methods: tuple[str, ...] = METHODS
    n_trials: int = 5
    base_seed: int = 1234
    workers: int = 1
    record_timing: bool = True
    output_dir: str | None = None
    pli_points: tuple[float, ...] | None = None  # None = run at every point
    pci_points: tuple[float, ...] | None = None
    gli: GliConfig = GliConfig()
    pli: PliConfig = PliConfig()
    pci: PciConfig = PciConfig()

    def validate(self) -> None:
        if self.sweep not in ("ratio", "hole_width"):
            raise ValueError(f"sweep must be 'ratio' or 'hole_width', got {self.sweep!r}")
        if not all(0.0 <= r <= 1.0 for r in self.ratios):
            raise ValueError("ratios must lie in [0, 1]")
        if not all(w >= 1 for w in self.widths):
            raise ValueError("hole widths must be >= 1")
        if not (0.0 <= self.fixed_ratio <= 1.0):
            raise ValueError("fixed_ratio must lie in [0, 1]")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")
        if not self.methods:
            raise ValueError("at least one method must be selected")
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class ResultRow:
    sweep_param: float
    method: str
    trial: int
    e_db: float
    seconds: float
    converged: bool
    seed: int


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build a validated config from parsed JSON, rejecting unknown keys."""
    data = dict(data)
    kwargs: dict = {}
    nested = {"gli": GliConfig, "pli": PliConfig, "pci": PciConfig}
    for key, cls in nested.items():
        if key in data:
            block = data.pop(key)
            if not isinstance(block, dict):
                raise ValueError(f"config block {key!r} must be an object")
            known_fields = {f.name for f in dataclasses.fields(cls)}
            bad = set(block) - known_fields
            if bad:
                raise ValueError(f"unknown keys in {key!r} block: {sorted(bad)}")
            if "penalty_schedule" in block:
                block["penalty_schedule"] = tuple(block["penalty_schedule"])
            kwargs[key] = cls(**block)
    top_fields = {f.name for f in dataclasses.fields(ExperimentConfig)}
    bad = set(data) - top_fields
    if bad:
        raise ValueError(f"unknown config keys: {sorted(bad)}")
    for key, value in data.items():
        if key in ("ratios", "widths", "methods"):
            value = tuple(value)
        elif key in ("pli_points", "pci_points") and value is not None:
            value = tuple(value)
        kwargs[key] = value
    cfg = ExperimentConfig(**kwargs)
    cfg.validate()
    return cfg


def config_to_dict(cfg: ExperimentConfig) -> dict:
    out = dataclasses.asdict(cfg)
    for key in ("ratios", "widths", "methods", "pli_points", "pci_points"):
        if out[key] is not None:
            out[key] = list(out[key])
    out["pli"]["penalty_schedule"] = list(out["pli"]["penalty_schedule"])
    return out


def _reconstruct(method: str, obs: Observations, trial_seed: int, cfg: ExperimentConfig):
    """Run one method on one observation set; returns (x_hat, converged)."""
    if method == "gli":
        result = gli_run(obs, dataclasses.replace(cfg.gli, init_seed=trial_seed))
        return result.x_hat, True
    if method == "rpi":
        return istft(obs.system, rpi_fill(obs, seed=trial_seed)), True
    if method == "pli":
        lifted = pli_solve(obs, cfg.pli)
        return extract_signal(lifted, obs), lifted.converged
    if method == "pci":
        gamma = phase_cost_matrix(obs)
        U = pci_solve(gamma, obs, cfg.pci)
        return pci_signal(obs, extract_phases(U)), U.converged
    raise ValueError(f"unknown method {method!r}")


def _methods_at_point(cfg: ExperimentConfig, param: float) -> list[str]:
    selected = []
    for method in cfg.methods:
        points = cfg.pli_points if method == "pli" else cfg.pci_points if method == "pci" else None
        if points is not None and not any(np.isclose(param, p) for p in points):
            continue
        selected.append(method)
    return selected


def _run_point_trial(args) -> list[ResultRow]:
    cfg, param, trial = args
    system = benchmark_system()
    trial_seed = cfg.base_seed + trial
    x = benchmark_signal(seed=trial_seed)
    if cfg.sweep == "ratio":
        mask = random_mask(system.bins, system.frames, param, seed=trial_seed)
    else:
        mask = hole_mask(
            system.bins, system.frames, cfg.fixed_ratio, width=int(param), seed=trial_seed
        )
    obs = observe(system, x, mask)
    rows = []
    for method in _methods_at_point(cfg, param):
        start = perf_counter()
        x_hat, converged = _reconstruct(method, obs, trial_seed, cfg)
        seconds = perf_counter() - start if cfg.record_timing else 0.0
        rows.append(
            ResultRow(
                sweep_param=float(param),
                method=method,
                trial=trial,
                e_db=error_db(x, x_hat).e_db,
                seconds=seconds,
                converged=bool(converged),
                seed=trial_seed,
            )
        )
    return rows


def _run_sweep(cfg: ExperimentConfig) -> list[ResultRow]:
    cfg.validate()
    points = cfg.ratios if cfg.sweep == "ratio" else cfg.widths
    tasks = [(cfg, float(p), trial) for p in points for trial in range(cfg.n_trials)]
    rows: list[ResultRow] = []
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            for chunk in pool.map(_run_point_trial, tasks):
                rows.extend(chunk)
    else:
        for task in tasks:
            rows.extend(_run_point_trial(task))
    rows.sort(key=lambda r: (r.sweep_param, r.method, r.trial))
    return rows


def run_ratio_sweep(cfg: ExperimentConfig) -> list[ResultRow]:
    """Error vs. fraction of uniformly missing phases."""
    if cfg.sweep != "ratio":
        cfg = dataclasses.replace(cfg, sweep="ratio")
    return _run_sweep(cfg)


def run_hole_sweep(cfg: ExperimentConfig) -> list[ResultRow]:
    """Error vs. hole width at a fixed missing ratio."""
    if cfg.sweep != "hole_width":
        cfg = dataclasses.replace(cfg, sweep="hole_width")
    return _run_sweep(cfg)


def _format_float(value: float) -> str:
    return repr(float(value))


def summarize(rows: list[ResultRow]) -> list[tuple]:
    """(sweep_param, method, median, min, max, n) per point and method."""
    keys = sorted({(r.sweep_param, r.method) for r in rows})
    out = []
    for param, method in keys:
        vals = [r.e_db for r in rows if r.sweep_param == param and r.method == method]
        out.append(
            (param, method, float(np.median(vals)), min(vals), max(vals), len(vals))
        )
    return out


def emit(rows: list[ResultRow], output_dir, cfg: ExperimentConfig) -> dict:
    """Write results.csv, summary.csv, curves.csv and config.json.

    Output is byte-deterministic for a fixed config as long as timing
    recording is disabled (the seconds column is the only wall-clock value).
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    results_path = output_dir / "results.csv"
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    _format_float(r.sweep_param),
                    r.method,
                    str(r.trial),
                    _format_float(r.e_db),
                    _format_float(r.seconds),
                    str(r.converged),
                    str(r.seed),
                ]
            )
        )
    results_path.write_text("\n".join(lines) + "\n")

    summary = summarize(rows)
    summary_lines = ["sweep_param,method,median_e_db,min_e_db,max_e_db,n_trials"]
    for param, method, med, lo, hi, n in summary:
        summary_lines.append(
            f"{_format_float(param)},{method},{_format_float(med)},"
            f"{_format_float(lo)},{_format_float(hi)},{n}"
        )
    (output_dir / "summary.csv").write_text("\n".join(summary_lines) + "\n")

    methods = sorted({r.method for r in rows})
    params = sorted({r.sweep_param for r in rows})
    curve_lines = ["sweep_param," + ",".join(methods)]
    medians = {(param, method): med for param, method, med, _, _, _ in summary}
    for param in params:
        cells = [_format_float(param)]
        for method in methods:
            med = medians.get((param, method))
            cells.append("" if med is None else _format_float(med))
        curve_lines.append(",".join(cells))
    (output_dir / "curves.csv").write_text("\n".join(curve_lines) + "\n")

    (output_dir / "config.json").write_text(
        json.dumps(config_to_dict(cfg), indent=2, sort_keys=True) + "\n"
    )
    return {
        "results": results_path,
        "summary": output_dir / "summary.csv",
        "curves": output_dir / "curves.csv",
        "config": output_dir / "config.json",
    }
