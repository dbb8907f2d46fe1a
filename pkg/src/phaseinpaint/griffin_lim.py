"""Griffin-Lim style alternating projections with partially known phases.

Each iteration projects onto the set of realizable coefficient grids
(analysis of some signal) and then onto the measurement set (observed
magnitudes everywhere, observed phases where the mask is 1). The distance
between the two projections never increases, which is asserted in tests.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .gabor import consistency_projection, istft
from .observe import Observations

_INIT_STREAM = 0x611A


@dataclass(frozen=True)
class GliConfig:
    n_iter: int = 2000
    init_seed: int = 0
    residual_tol: float = 1e-12
    record_trace: bool = True


@dataclass(frozen=True)
class GliResult:
    x_hat: np.ndarray
    iterations_run: int
    residual_trace: np.ndarray


def clamp(z: np.ndarray, obs: Observations) -> np.ndarray:
    """Nearest grid with observed magnitudes and observed phases on the mask.

    Off the mask only the magnitude is imposed and the phase of ``z`` is
    kept (phase of a zero entry is taken as 0).
    """
    z = np.asarray(z)
    if z.shape != obs.mask.shape:
        raise ValueError(f"expected shape {obs.mask.shape}, got {z.shape}")
    phase = obs.mask * np.angle(obs.known) + (1 - obs.mask) * np.angle(z)
    return obs.magnitudes * np.exp(1j * phase)


def gli_run(obs: Observations, cfg: GliConfig = GliConfig()) -> GliResult:
    """Alternate consistency and measurement projections from a random start.

    Missing phases are initialized uniformly on [0, 2 pi). The loop stops
    early once the change of the residual ||y - z|| drops below
    ``residual_tol``; the final (not best-residual) iterate is synthesized.
    """
    if cfg.n_iter < 1:
        raise ValueError("n_iter must be >= 1")
    system = obs.system
    rng = np.random.default_rng([int(cfg.init_seed), _INIT_STREAM])
    phi0 = rng.uniform(0.0, 2.0 * np.pi, size=obs.mask.shape)
    phase = obs.mask * np.angle(obs.known) + (1 - obs.mask) * phi0
    y = obs.magnitudes * np.exp(1j * phase)
    trace: list[float] = []
    prev_res = None
    iterations = 0
    for i in range(1, cfg.n_iter + 1):
        z = consistency_projection(system, y)
        y = clamp(z, obs)
        res = float(np.linalg.norm(y - z))
        iterations = i
        if cfg.record_trace:
            trace.append(res)
        if prev_res is not None and abs(prev_res - res) < cfg.residual_tol:
            break
        prev_res = res
    return GliResult(
        x_hat=istft(system, y),
        iterations_run=iterations,
        residual_trace=np.asarray(trace),
    )


def save_residual_trace(result: GliResult, path) -> None:
    """Write the per-iteration residual as CSV (iteration, residual)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["iteration", "residual"])
        for i, res in enumerate(result.residual_trace, start=1):
            writer.writerow([i, f"{res:.17g}"])
