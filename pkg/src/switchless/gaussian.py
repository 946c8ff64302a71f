"""Covariance-matrix simulator for n-mode Gaussian states.

Conventions: hbar = 1, vacuum variance 1/2 per quadrature, and the
quadrature vector is ordered ``(x_1, ..., x_n, p_1, ..., p_n)``.
Modes are addressed with 0-based indices.

All operations are pure; they return a new :class:`GaussianState`.
Transformations are written in the Heisenberg picture, ``q -> M q``, so
the covariance updates as ``V -> M V M^T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

SYM_TOL = 1e-12


class GaussianStateError(ValueError):
    """Raised for invalid modes, parameters or degenerate measurements."""


@dataclass(frozen=True)
class GaussianState:
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float).copy()
        cov = np.asarray(self.cov, dtype=float)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2:
            raise GaussianStateError(f"covariance must be 2n x 2n, got {cov.shape}")
        if mean.shape != (cov.shape[0],):
            raise GaussianStateError("mean length does not match covariance")
        cov = 0.5 * (cov + cov.T)
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def n_modes(self) -> int:
        return self.cov.shape[0] // 2

    def xi(self, mode: int) -> int:
        """Index of the x quadrature of ``mode`` in the quadrature vector."""
        return _check_mode(self, mode)

    def pi(self, mode: int) -> int:
        """Index of the p quadrature of ``mode``."""
        return _check_mode(self, mode) + self.n_modes

    def mode_cov(self, mode: int) -> np.ndarray:
        """2x2 reduced covariance ``[[Vxx, Vxp], [Vpx, Vpp]]`` of one mode."""
        idx = [self.xi(mode), self.pi(mode)]
        return self.cov[np.ix_(idx, idx)].copy()

    def var_x(self, mode: int) -> float:
        return float(self.cov[self.xi(mode), self.xi(mode)])

    def var_p(self, mode: int) -> float:
        return float(self.cov[self.pi(mode), self.pi(mode)])

    def purity_det(self) -> float:
        """``det(2 V)``; equals 1 for pure states."""
        return float(np.linalg.det(2.0 * self.cov))

    def is_physical(self, tol: float = 1e-10) -> bool:
        """Check ``V + i Omega / 2 >= 0`` (the uncertainty relation)."""
        n = self.n_modes
        omega = np.block([[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]])
        eig = np.linalg.eigvalsh(self.cov + 0.5j * omega)
        return bool(eig.min() >= -tol)


def _check_mode(state: GaussianState, mode: int) -> int:
    if not isinstance(mode, (int, np.integer)) or not 0 <= mode < state.n_modes:
        raise GaussianStateError(f"mode {mode!r} out of range for {state.n_modes}-mode state")
    return int(mode)


def _apply(state: GaussianState, m: np.ndarray, noise: np.ndarray | None = None) -> GaussianState:
    cov = m @ state.cov @ m.T
    if noise is not None:
        cov = cov + noise
    return GaussianState(m @ state.mean, cov)


def _local(state: GaussianState, modes: tuple[int, ...], block: np.ndarray) -> np.ndarray:
    """Embed a transform acting on ``(x_modes..., p_modes...)`` into the full space."""
    n = state.n_modes
    idx = [state.xi(k) for k in modes] + [k + n for k in modes]
    if len(set(idx)) != len(idx):
        raise GaussianStateError(f"duplicate modes {modes}")
    m = np.eye(2 * n)
    m[np.ix_(idx, idx)] = block
    return m


def new_vacuum(n: int) -> GaussianState:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise GaussianStateError(f"need at least one mode, got {n!r}")
    return GaussianState(np.zeros(2 * n), 0.5 * np.eye(2 * n))


def from_single_mode(covs: list[np.ndarray]) -> GaussianState:
    """Product state from a list of 2x2 ``(x, p)`` covariances."""
    n = len(covs)
    state = new_vacuum(n)
    cov = np.zeros((2 * n, 2 * n))
    for k, c in enumerate(covs):
        c = np.asarray(c, dtype=float)
        if c.shape != (2, 2) or not np.allclose(c, c.T, atol=SYM_TOL):
            raise GaussianStateError(f"mode {k}: invalid single-mode covariance")
        if np.linalg.det(c) < 0.25 - 1e-12 or c[0, 0] <= 0:
            raise GaussianStateError(f"mode {k}: covariance violates the uncertainty relation")
        idx = [k, k + n]
        cov[np.ix_(idx, idx)] = c
    return GaussianState(state.mean, cov)


def tensor(*states: GaussianState) -> GaussianState:
    """Tensor product; modes of later states are appended."""
    n_tot = sum(s.n_modes for s in states)
    mean = np.zeros(2 * n_tot)
    cov = np.zeros((2 * n_tot, 2 * n_tot))
    offset = 0
    for s in states:
        n = s.n_modes
        idx = list(range(offset, offset + n)) + list(range(n_tot + offset, n_tot + offset + n))
        mean[idx] = s.mean
        cov[np.ix_(idx, idx)] = s.cov
        offset += n
    return GaussianState(mean, cov)


def squeeze(state: GaussianState, mode: int, r: float) -> GaussianState:
    """``x -> x e^r``, ``p -> p e^-r``; ``r > 0`` squeezes p."""
    block = np.diag([np.exp(r), np.exp(-r)])
    return _apply(state, _local(state, (mode,), block))


def rotate(state: GaussianState, mode: int, theta: float) -> GaussianState:
    c, s = np.cos(theta), np.sin(theta)
    block = np.array([[c, s], [-s, c]])
    return _apply(state, _local(state, (mode,), block))


def beamsplitter(state: GaussianState, m1: int, m2: int, reflectivity: float) -> GaussianState:
    """Beamsplitter with power reflectivity R (R = 1 is the identity)."""
    if not 0.0 <= reflectivity <= 1.0:
        raise GaussianStateError(f"reflectivity must lie in [0, 1], got {reflectivity}")
    if m1 == m2:
        raise GaussianStateError("beamsplitter needs two distinct modes")
    a, b = np.sqrt(reflectivity), np.sqrt(1.0 - reflectivity)
    u = np.array([[a, b], [-b, a]])
    block = np.zeros((4, 4))
    block[:2, :2] = u
    block[2:, 2:] = u
    return _apply(state, _local(state, (m1, m2), block))


def cz(state: GaussianState, m1: int, m2: int, gain: float = 1.0) -> GaussianState:
    """Controlled-Z: ``p1 -> p1 + g x2``, ``p2 -> p2 + g x1``.

    The sign is chosen so that graph nullifiers take the form
    ``p_i - sum_j A_ij x_j``; ``gain=-1`` undoes ``gain=1``.
    """
    if m1 == m2:
        raise GaussianStateError("cz needs two distinct modes")
    block = np.eye(4)
    block[2, 1] = gain
    block[3, 0] = gain
    return _apply(state, _local(state, (m1, m2), block))


def loss(state: GaussianState, mode: int, eta: float) -> GaussianState:
    """Pure-loss channel with transmission ``eta``."""
    if not 0.0 <= eta <= 1.0:
        raise GaussianStateError(f"loss transmission must lie in [0, 1], got {eta}")
    m = _local(state, (mode,), np.sqrt(eta) * np.eye(2))
    noise = np.zeros_like(state.cov)
    for k in (state.xi(mode), state.pi(mode)):
        noise[k, k] = 0.5 * (1.0 - eta)
    return _apply(state, m, noise)


def amplify(state: GaussianState, mode: int, eta: float) -> GaussianState:
    """Phase-insensitive amplifier with amplitude gain ``1/sqrt(eta)``."""
    if not 0.0 < eta <= 1.0:
        raise GaussianStateError(f"amplifier target must lie in (0, 1], got {eta}")
    m = _local(state, (mode,), np.eye(2) / np.sqrt(eta))
    noise = np.zeros_like(state.cov)
    for k in (state.xi(mode), state.pi(mode)):
        noise[k, k] = 0.5 * (1.0 / eta - 1.0)
    return _apply(state, m, noise)


def quadrature(state: GaussianState, mode: int, angle: float) -> np.ndarray:
    """Coefficient vector of ``x cos(angle) + p sin(angle)`` on ``mode``."""
    c = np.zeros(2 * state.n_modes)
    c[state.xi(mode)] = np.cos(angle)
    c[state.pi(mode)] = np.sin(angle)
    return c


def combo(
    n_modes: int,
    x: Mapping[int, float] | None = None,
    p: Mapping[int, float] | None = None,
) -> np.ndarray:
    """Build a quadrature combination ``sum c_i x_i + sum d_j p_j``."""
    c = np.zeros(2 * n_modes)
    for k, v in (x or {}).items():
        c[k] += v
    for k, v in (p or {}).items():
        c[n_modes + k] += v
    if not np.any(c):
        raise GaussianStateError("quadrature combination must have a nonzero coefficient")
    return c


def nullifier_variance(state: GaussianState, c: np.ndarray) -> float:
    c = np.asarray(c, dtype=float)
    if c.shape != state.mean.shape:
        raise GaussianStateError(
            f"combination has length {c.size}, state needs {state.mean.size}"
        )
    return float(c @ state.cov @ c)


def remove_modes(state: GaussianState, modes) -> GaussianState:
    """Marginal state with ``modes`` traced out."""
    drop = {_check_mode(state, k) for k in modes}
    keep = [k for k in range(state.n_modes) if k not in drop]
    if not keep:
        raise GaussianStateError("cannot trace out every mode")
    idx = keep + [k + state.n_modes for k in keep]
    return GaussianState(state.mean[idx], state.cov[np.ix_(idx, idx)])


def homodyne_condition(
    state: GaussianState, mode: int, angle: float = 0.0, outcome: float = 0.0
) -> GaussianState:
    """Condition on measuring ``x cos(angle) + p sin(angle)`` of ``mode``.

    Returns the state of the remaining modes (order preserved). The
    conditional covariance does not depend on ``outcome``.
    """
    if state.n_modes < 2:
        raise GaussianStateError("need at least two modes to condition")
    c = quadrature(state, mode, angle)
    var = float(c @ state.cov @ c)
    cross = state.cov @ c
    rest = remove_modes(state, [mode])
    n = state.n_modes
    keep = [k for k in range(n) if k != mode]
    idx = keep + [k + n for k in keep]
    b = cross[idx]
    if var <= SYM_TOL:
        if np.max(np.abs(b)) <= SYM_TOL:
            return rest
        raise GaussianStateError(
            f"singular homodyne conditioning on mode {mode}: measured variance {var:.3e} "
            f"with cross-covariance up to {np.max(np.abs(b)):.3e}"
        )
    mean = rest.mean + b * (outcome - c @ state.mean) / var
    cov = rest.cov - np.outer(b, b) / var
    return GaussianState(mean, cov)


def feedforward(
    state: GaussianState,
    mode: int,
    angle: float,
    gains: Mapping[tuple[int, str], float] | None = None,
) -> GaussianState:
    """Homodyne ``mode`` and displace other modes by ``gain * outcome``.

    ``gains`` maps ``(target_mode, "x" | "p")`` to a linear feedforward gain.
    This is the unconditional (outcome-averaged) post-feedforward state, so
    covariances combine linearly and never depend on the measured values:
    the measured quadrature enters each target as an operator.

    The measured mode is kept so that mode indices stay stable across a
    circuit; drop it afterwards with :func:`remove_modes`.
    """
    c = quadrature(state, mode, angle)
    m = np.eye(2 * state.n_modes)
    for (target, quad), g in (gains or {}).items():
        if target == mode:
            raise GaussianStateError("cannot feed forward onto the measured mode")
        if quad == "x":
            row = state.xi(target)
        elif quad == "p":
            row = state.pi(target)
        else:
            raise GaussianStateError(f"quadrature must be 'x' or 'p', got {quad!r}")
        m[row] += g * c
    return _apply(state, m)
