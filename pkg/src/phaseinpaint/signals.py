"""Synthetic test signals: linear chirps, impulses, exact-SNR noise.

All generators are deterministic given their seed. Frequencies are expressed
as fractions of Nyquist by default (1.0 = half the sampling rate), isolated
behind ``SignalSpec.freq_unit`` so the convention can be flipped to raw
cycles-per-sample if needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_NOISE_STREAM = 0x51C7A1


@dataclass(frozen=True)
class SignalSpec:
    """Recipe for a chirps-plus-impulses test signal with additive noise."""

    length: int
    chirps: tuple[tuple[float, float], ...] = ()
    dirac_positions: tuple[int, ...] = ()
    snr_db: float = math.inf
    seed: int = 0
    freq_unit: str = "nyquist"


def _cycles_per_sample(freq: float, freq_unit: str) -> float:
    if freq_unit == "nyquist":
        return 0.5 * freq
    if freq_unit == "cycles":
        return freq
    raise ValueError(f"unknown freq_unit {freq_unit!r}")


def linear_chirp(
    n_samples: int, f_start: float, f_end: float, freq_unit: str = "nyquist"
) -> np.ndarray:
    """Real cosine whose instantaneous frequency ramps linearly.

    The phase integral uses (n_samples - 1) in the denominator so the last
    sample sits exactly at ``f_end``. With the default unit a frequency of
    1.0 means Nyquist, i.e. 0.5 cycles per sample.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    a = _cycles_per_sample(f_start, freq_unit)
    b = _cycles_per_sample(f_end, freq_unit)
    n = np.arange(n_samples, dtype=float)
    if n_samples == 1:
        phase_cycles = np.zeros(1)
    else:
        phase_cycles = a * n + (b - a) * n * n / (2.0 * (n_samples - 1))
    return np.cos(2.0 * np.pi * phase_cycles)


def dirac(n_samples: int, pos: int) -> np.ndarray:
    """Unit impulse at sample ``pos``."""
    if not (0 <= pos < n_samples):
        raise IndexError(f"impulse position {pos} outside [0, {n_samples})")
    x = np.zeros(n_samples)
    x[pos] = 1.0
    return x


def add_noise_snr(x: np.ndarray, snr_db: float, seed: int) -> np.ndarray:
    """Add white Gaussian noise rescaled to hit ``snr_db`` exactly.

    The noise draw is deterministic per seed and then scaled so that
    10*log10(||x||^2 / ||noise||^2) equals the requested SNR with no
    sampling variance. ``snr_db = inf`` returns the signal unchanged.
    """
    x = np.asarray(x, dtype=float)
    if math.isinf(snr_db) and snr_db > 0:
        return x.copy()
    norm_x = np.linalg.norm(x)
    if norm_x == 0.0:
        raise ValueError("SNR is undefined for an all-zero signal")
    rng = np.random.default_rng([int(seed), _NOISE_STREAM])
    noise = rng.standard_normal(x.size)
    noise *= norm_x / (np.linalg.norm(noise) * 10.0 ** (snr_db / 20.0))
    return x + noise


def synthesize(spec: SignalSpec) -> np.ndarray:
    """Sum of all components in ``spec``, then noise at the requested SNR."""
    if spec.length < 1:
        raise ValueError("signal length must be >= 1")
    x = np.zeros(spec.length)
    for f_start, f_end in spec.chirps:
        x += linear_chirp(spec.length, f_start, f_end, spec.freq_unit)
    for pos in spec.dirac_positions:
        x += dirac(spec.length, pos)
    if math.isinf(spec.snr_db) and spec.snr_db > 0:
        return x
    return add_noise_snr(x, spec.snr_db, spec.seed)


def benchmark_spec(seed: int, snr_db: float = 10.0) -> SignalSpec:
    """Spec of the default benchmark signal used throughout the test harness."""
    return SignalSpec(
        length=128,
        chirps=((0.0, 0.8), (0.8, 0.6)),
        dirac_positions=(64,),
        snr_db=snr_db,
        seed=seed,
    )


def benchmark_signal(seed: int, snr_db: float = 10.0) -> np.ndarray:
    """Two crossing chirps plus an impulse at sample 64, noise at 10 dB SNR."""
    return synthesize(benchmark_spec(seed, snr_db))


def save_signal_csv(x: np.ndarray, path) -> None:
    """Write a signal as a single-column CSV with 17 significant digits."""
    np.savetxt(path, np.asarray(x, dtype=float), fmt="%.17g")
