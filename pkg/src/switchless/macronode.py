"""Macronode gate decomposition and noise bookkeeping for the FFCZ gate."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class GateError(ValueError):
    pass


@dataclass(frozen=True)
class GateSpec:
    """One computational step: homodyne angle combinations and pair edge weight.

    ``post_scale`` is an extra squeezing exponent applied after the step;
    it only carries the compensating ``S(-s)`` of a two-step Fourier gate.
    """

    theta_plus: float
    theta_minus: float
    t: float
    post_scale: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.t <= 1.0:
            raise GateError(f"edge weight must lie in (0, 1], got {self.t}")


@dataclass(frozen=True)
class NoisePair:
    dx2: float
    dp2: float

    def __post_init__(self):
        if self.dx2 < 0 or self.dp2 < 0:
            raise GateError(f"noise variances must be >= 0, got ({self.dx2}, {self.dp2})")


def rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def squeeze_exp(s: float) -> np.ndarray:
    """Squeezer by exponent: ``x -> e^s x``, ``p -> e^-s p``."""
    return np.diag([math.exp(s), math.exp(-s)])


def squeeze_scale(a: float) -> np.ndarray:
    """Squeezer by scale factor: ``x -> a x``, ``p -> p / a``."""
    if a == 0 or not math.isfinite(a):
        raise GateError(f"scale factor must be finite and nonzero, got {a}")
    return np.diag([a, 1.0 / a])


def edge_squeezing(t: float) -> float:
    """Exponent ``s`` with ``e^s = 1/t``."""
    if not 0.0 < t <= 1.0:
        raise GateError(f"edge weight must lie in (0, 1], got {t}")
    return -math.log(t)


def decompose(spec: GateSpec) -> np.ndarray:
    """``S(s) R(theta+/2) S[tan(theta-/2)] R(theta+/2)`` as a 2x2 matrix."""
    a = math.tan(spec.theta_minus / 2)
    if abs(a) < 1e-15:
        raise GateError("tan(theta-/2) = 0 makes the middle squeezer singular")
    half = rotation(spec.theta_plus / 2)
    return squeeze_exp(edge_squeezing(spec.t)) @ half @ squeeze_scale(a) @ half


def fourier_steps(t: float) -> list[GateSpec]:
    """Steps needed for a Fourier gate through pairs of edge weight ``t``.

    With ``t = 1`` one step suffices. Otherwise the first step gives
    ``S(s) F`` and a second step applies ``S(-s)``. The angles are
    bookkeeping only; the noise model depends on the step count.
    """
    if not 0.0 < t <= 1.0:
        raise GateError(f"edge weight must lie in (0, 1], got {t}")
    first = GateSpec(math.pi / 2, 0.0, t)
    if t == 1.0:
        return [first]
    return [first, GateSpec(0.0, 0.0, t, post_scale=-edge_squeezing(t))]


def propagate_cz(n1: NoisePair, n2: NoisePair) -> tuple[NoisePair, NoisePair]:
    return NoisePair(n1.dx2, n1.dp2 + n2.dx2), NoisePair(n2.dx2, n2.dp2 + n1.dx2)


def propagate_fourier(n: NoisePair, xi: float) -> NoisePair:
    if xi < 0:
        raise GateError(f"gate noise must be >= 0, got {xi}")
    return NoisePair(n.dp2 + xi, n.dx2 + xi)


def ffcz_variances(n1: NoisePair, n2: NoisePair, xi: float) -> tuple[NoisePair, NoisePair]:
    """CZ on both modes, then a Fourier gate with noise ``xi`` on each."""
    a, b = propagate_cz(n1, n2)
    return propagate_fourier(a, xi), propagate_fourier(b, xi)
