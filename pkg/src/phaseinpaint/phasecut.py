"""Phase-only semidefinite relaxation solved by block coordinate descent.

Magnitudes are split off: with c the flattened magnitudes and P the
orthogonal projector onto realizable coefficient vectors, the matrix
Diag(c) (I - P) Diag(c) scores any unit-modulus phase vector u by how far
c * u falls outside the realizable set. The relaxation optimizes the PSD
Gram matrix U of the phases under a unit diagonal. Cells whose phase is
observed are condensed into a single aggregate coordinate carrying their
fixed relative phases, so every coordinate update keeps the standard
closed form.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field

import numpy as np

from .gabor import flatten_grid, range_projector, synthesis_matrix
from .observe import Observations


@dataclass(frozen=True)
class PciConfig:
    max_sweeps: int = 500
    obj_tol: float = 1e-9
    nu: float = 1e-6
    zero_mag_eps: float = 1e-12
    log_every: int = 0  # record (sweep, objective, min-eig, seconds) every k sweeps


@dataclass(frozen=True)
class KnownBlockReduction:
    """Index map condensing all phase-known cells into one coordinate.

    Free cells keep their own coordinate; the known cells contribute their
    fixed unit phases scaled by one shared unknown unit scalar (the anchor
    coordinate, last). Cells with (near-)zero magnitude are left free even
    when masked as known, since their phase is undefined and irrelevant.
    """

    n_cells: int
    free_cells: np.ndarray
    known_cells: np.ndarray
    known_phases: np.ndarray
    phase_anchor_cell: int  # largest-magnitude cell, used when nothing is known

    @property
    def has_anchor(self) -> bool:
        return self.known_cells.size > 0

    @property
    def dim(self) -> int:
        return self.free_cells.size + (1 if self.has_anchor else 0)

    def aggregation_matrix(self) -> np.ndarray:
        """Matrix B with one unit-modulus entry per row; u_full = B @ u_reduced."""
        B = np.zeros((self.n_cells, self.dim), dtype=complex)
        B[self.free_cells, np.arange(self.free_cells.size)] = 1.0
        if self.has_anchor:
            B[self.known_cells, -1] = self.known_phases
        return B

    def expand(self, reduced: np.ndarray) -> np.ndarray:
        """Expand a reduced phase vector back to one value per cell."""
        full = np.zeros(self.n_cells, dtype=complex)
        full[self.free_cells] = reduced[: self.free_cells.size]
        if self.has_anchor:
            full[self.known_cells] = self.known_phases * reduced[-1]
        return full


@dataclass
class PhaseMatrix:
    """BCD output: reduced Gram matrix of the phases plus diagnostics."""

    values: np.ndarray
    reduction: KnownBlockReduction
    converged: bool = True
    objective: float = 0.0
    objective_trace: np.ndarray = field(default_factory=lambda: np.zeros(0))
    sweeps_run: int = 0
    sweep_log: list = field(default_factory=list)

    def expand(self) -> np.ndarray:
        """Full cell-by-cell Gram matrix (unit diagonal, fixed known block)."""
        B = self.reduction.aggregation_matrix()
        U = B @ self.values @ B.conj().T
        return 0.5 * (U + U.conj().T)


def phase_cost_matrix(obs: Observations) -> np.ndarray:
    """Hermitian PSD cost: Diag(c) (I - P) Diag(c), c = flattened magnitudes."""
    c = flatten_grid(obs.magnitudes)
    proj = range_projector(obs.system)
    gamma = (np.eye(obs.system.n_cells) - proj) * np.outer(c, c)
    return 0.5 * (gamma + gamma.conj().T)


def reduce_known_block(obs: Observations, zero_mag_eps: float = 1e-12) -> KnownBlockReduction:
    """Build the condensation map for the phase-known cells."""
    c = flatten_grid(obs.magnitudes)
    b = flatten_grid(obs.known)
    mask = flatten_grid(obs.mask).astype(bool)
    c_max = float(np.max(c)) if c.size else 0.0
    usable = mask & (c > zero_mag_eps * c_max)
    known_cells = np.flatnonzero(usable)
    free_cells = np.flatnonzero(~usable)
    phases = np.ones(0, dtype=complex)
    if known_cells.size:
        phases = b[known_cells] / np.abs(b[known_cells])
    return KnownBlockReduction(
        n_cells=c.size,
        free_cells=free_cells,
        known_cells=known_cells,
        known_phases=phases,
        phase_anchor_cell=int(np.argmax(c)) if c.size else 0,
    )


def _reduced_cost(gamma: np.ndarray, red: KnownBlockReduction) -> np.ndarray:
    B = red.aggregation_matrix()
    reduced = B.conj().T @ gamma @ B
    return 0.5 * (reduced + reduced.conj().T)


def pci_solve(
    gamma: np.ndarray, obs: Observations, cfg: PciConfig = PciConfig()
) -> PhaseMatrix:
    """Cyclic block coordinate descent over the reduced Gram matrix.

    Every coordinate update solves its row/column subproblem in closed form
    subject to the unit diagonal and positive semidefiniteness; the strict
    feasibility parameter ``nu`` keeps a positive Schur complement. Updates
    that would not lower the objective are skipped, so the per-sweep
    objective is non-increasing by construction. Starts from the all-ones
    rank-one matrix (a neutral common phase).
    """
    if not (0.0 < cfg.nu < 1.0):
        raise ValueError("nu must lie strictly between 0 and 1")
    red = reduce_known_block(obs, cfg.zero_mag_eps)
    reduced = _reduced_cost(np.asarray(gamma), red)
    d = red.dim
    U = np.ones((d, d), dtype=complex)
    if d == 0:
        return PhaseMatrix(values=U, reduction=red, converged=True)
    scale = float(np.linalg.norm(reduced, 2))
    if scale == 0.0:
        return PhaseMatrix(values=U, reduction=red, converged=True, objective=0.0)
    G = reduced / scale
    floor = 1e-15 * d

    def objective(mat: np.ndarray) -> float:
        return float(np.sum(mat * G.T).real)

    obj = objective(U)
    trace: list[float] = [scale * obj]
    log: list[tuple] = []
    converged = False
    sweeps = 0
    one_minus_nu = 1.0 - cfg.nu
    t_start = time.perf_counter()
    for sweep in range(1, cfg.max_sweeps + 1):
        for i in range(d):
            g = G[:, i].copy()
            g[i] = 0.0
            x = U @ g
            x[i] = 0.0
            quad = float(np.vdot(g, x).real)
            col = U[:, i]
            old_contrib = 2.0 * float(np.vdot(col, g).real)
            if quad > 0.0:
                new_col = (-np.sqrt(one_minus_nu / quad)) * x
                new_contrib = 2.0 * float(np.vdot(new_col, g).real)
            else:
                new_col = np.zeros(d, dtype=complex)
                new_contrib = 0.0
            if new_contrib <= old_contrib:
                U[:, i] = new_col
                U[i, :] = np.conj(new_col)
                U[i, i] = 1.0
        sweeps = sweep
        prev = obj
        obj = objective(U)
        trace.append(scale * obj)
        if cfg.log_every and sweep % cfg.log_every == 0:
            min_eig = float(np.linalg.eigvalsh(U)[0])
            log.append((sweep, scale * obj, min_eig, time.perf_counter() - t_start))
        if prev - obj < cfg.obj_tol * max(abs(prev), floor):
            converged = True
            break
        if obj <= floor:
            converged = True
            break
    return PhaseMatrix(
        values=U,
        reduction=red,
        converged=converged,
        objective=scale * obj,
        objective_trace=np.asarray(trace),
        sweeps_run=sweeps,
        sweep_log=log,
    )


def bcd_full_with_fixed_entries(
    gamma: np.ndarray, obs: Observations, cfg: PciConfig = PciConfig()
) -> tuple[np.ndarray, float]:
    """Reference BCD on the unreduced Gram matrix with hard-fixed entries.

    Only the free coordinates are swept; the phase-known block stays pinned
    at its fixed relative phases. Used as a small-instance cross-check of
    the condensed formulation, not in production paths.
    """
    red = reduce_known_block(obs, cfg.zero_mag_eps)
    n = red.n_cells
    u0 = np.ones(n, dtype=complex)
    if red.has_anchor:
        u0[red.known_cells] = red.known_phases
    U = np.outer(u0, np.conj(u0))
    gamma = np.asarray(gamma)
    scale = float(np.linalg.norm(gamma, 2))
    if scale == 0.0:
        return U, 0.0
    G = gamma / scale
    obj = float(np.sum(U * G.T).real)
    one_minus_nu = 1.0 - cfg.nu
    floor = 1e-15 * n
    for _ in range(cfg.max_sweeps):
        for i in red.free_cells:
            g = G[:, i].copy()
            g[i] = 0.0
            x = U @ g
            x[i] = 0.0
            quad = float(np.vdot(g, x).real)
            col = U[:, i]
            old_contrib = 2.0 * float(np.vdot(col, g).real)
            if quad > 0.0:
                new_col = (-np.sqrt(one_minus_nu / quad)) * x
                new_contrib = 2.0 * float(np.vdot(new_col, g).real)
            else:
                new_col = np.zeros(n, dtype=complex)
                new_contrib = 0.0
            if new_contrib <= old_contrib:
                U[:, i] = new_col
                U[i, :] = np.conj(new_col)
                U[i, i] = 1.0
        prev = obj
        obj = float(np.sum(U * G.T).real)
        if prev - obj < cfg.obj_tol * max(abs(prev), floor) or obj <= floor:
            break
    return U, scale * obj


def extract_phases(U: PhaseMatrix) -> np.ndarray:
    """Unit-modulus phase estimate for every cell from the Gram matrix.

    Takes the leading eigenvector, normalizes each entry to the unit circle
    (near-zero entries become 1), aligns the global phase to the observed
    block in least squares, then overwrites the observed cells exactly.
    """
    red = U.reduction
    vals, vecs = np.linalg.eigh(U.values)
    leading = vecs[:, -1]
    full = red.expand(leading)
    mags = np.abs(full)
    u = np.where(mags < 1e-12, 1.0 + 0j, full / np.where(mags < 1e-12, 1.0, mags))
    if red.has_anchor:
        cross = np.sum(np.conj(u[red.known_cells]) * red.known_phases)
        if abs(cross) > 0.0:
            u = u * (cross / abs(cross))
        u[red.known_cells] = red.known_phases
    else:
        pivot = u[red.phase_anchor_cell]
        u = u * np.conj(pivot)
    return u


def pci_signal(obs: Observations, u: np.ndarray) -> np.ndarray:
    """Least-squares signal whose analysis matches magnitudes with phases u."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (obs.system.n_cells,):
        raise ValueError(f"phase vector must have shape ({obs.system.n_cells},)")
    c = flatten_grid(obs.magnitudes)
    return synthesis_matrix(obs.system) @ (c * u)


def write_sweep_log(U: PhaseMatrix, path) -> None:
    """Write the optional per-sweep log as CSV."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sweep", "objective", "min_eig_estimate", "seconds"])
        for row in U.sweep_log:
            writer.writerow([row[0], f"{row[1]:.17g}", f"{row[2]:.17g}", f"{row[3]:.6f}"])
