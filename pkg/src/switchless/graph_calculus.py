"""Self-loop / edge-weight calculus for a two-mode entangled pair.

An ideal pair with squeezing ``r`` has self-loops ``sech(2r)`` on both
modes and edge weight ``tanh(2r)``. Loss on one arm deforms that arm's
self-loop and the edge; rescaling makes both self-loops equal again and
defines an effective squeezing ``y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# 2x beyond which cosh overflows in double precision
_OVERFLOW_ARG = 700.0


class GraphCalculusError(ValueError):
    pass


def sech(x: float) -> float:
    """Overflow-free ``1/cosh(x)``."""
    ax = abs(x)
    if ax > _OVERFLOW_ARG:
        return 0.0
    e = math.exp(-ax)
    return 2.0 * e / (1.0 + e * e)


def arcsech(v: float) -> float:
    if not 0.0 < v <= 1.0:
        raise GraphCalculusError(f"arcsech needs 0 < v <= 1, got {v}")
    return math.log1p(math.sqrt((1.0 - v) * (1.0 + v))) - math.log(v)


@dataclass(frozen=True)
class PairGraph:
    eps_a: float
    eps_b: float
    t: float


@dataclass(frozen=True)
class RescaledPair:
    y: float
    gamma_a: float
    gamma_b: float

    @property
    def self_loop(self) -> float:
        return sech(2.0 * self.y)

    @property
    def edge_weight(self) -> float:
        return math.tanh(2.0 * self.y)


def ideal_pair(r: float) -> PairGraph:
    if r < 0 or not math.isfinite(r):
        raise GraphCalculusError(f"squeezing must be finite and >= 0, got {r}")
    e = sech(2.0 * r)
    return PairGraph(e, e, math.tanh(2.0 * r))


def _check_eta(eta: float) -> None:
    if not 0.0 < eta <= 1.0:
        raise GraphCalculusError(f"transmission must lie in (0, 1], got {eta}")


def apply_switch_loss(pair: PairGraph, eta: float) -> PairGraph:
    """Loss ``eta`` on arm b: ``eps_b -> eta eps_b + 1 - eta``, ``t -> t/sqrt(eta)``."""
    _check_eta(eta)
    return PairGraph(pair.eps_a, eta * pair.eps_b + (1.0 - eta), pair.t / math.sqrt(eta))


def gamma_b_printed(r: float, eta: float) -> float:
    """``gamma_b`` in the textbook quadratic-root form (cancels for small r)."""
    s, t = sech(2 * r), math.tanh(2 * r)
    zeta = eta * s + 1.0 - eta
    return (-s + math.sqrt(s * s + 4 * t * t / (eta * zeta * zeta))) / (2 * t * t / (eta * s))


def rescale(lossy: PairGraph, r: float, eta: float) -> RescaledPair:
    """Equalise the self-loops of a pair whose arm b went through loss ``eta``.

    ``gamma_b`` is the positive root of
    ``gamma_b zeta^2 + gamma_b^2 zeta^2 t^2 / (eta s^2) = 1`` (s = sech 2r,
    t = tanh 2r, zeta the lossy self-loop), written in rationalised form;
    ``gamma_a`` then follows from ``sqrt(gamma_a) s = sqrt(gamma_b) zeta``.
    """
    _check_eta(eta)
    if r <= 0:
        raise GraphCalculusError("rescaling needs r > 0: the edge weight vanishes at r = 0")
    s, zeta = lossy.eps_a, lossy.eps_b
    t = lossy.t * math.sqrt(eta)
    if s == 0.0:
        raise GraphCalculusError(f"self-loop underflows at r = {r}; squeezing too large")
    q = 4.0 * t * t / (eta * s * s * zeta * zeta)
    gamma_b = 2.0 / (zeta * zeta * (1.0 + math.sqrt(1.0 + q)))
    gamma_a = gamma_b * (zeta / s) ** 2
    sech2y = math.sqrt(gamma_b) * zeta
    return RescaledPair(0.5 * arcsech(min(sech2y, 1.0)), gamma_a, gamma_b)


def rescale_residuals(res: RescaledPair, r: float, eta: float) -> tuple[float, float, float]:
    """Residuals of the two defining equations and of sech^2 + tanh^2 = 1."""
    s, t = sech(2 * r), math.tanh(2 * r)
    zeta = eta * s + 1.0 - eta
    e2y, t2y = sech(2 * res.y), math.tanh(2 * res.y)
    r_t = math.sqrt(res.gamma_a * res.gamma_b / eta) * t - t2y
    r_s = max(abs(math.sqrt(res.gamma_a) * s - e2y), abs(math.sqrt(res.gamma_b) * zeta - e2y))
    r_id = e2y * e2y + t2y * t2y - 1.0
    return abs(r_t), r_s, abs(r_id)


def effective_squeezing(r: float, eta: float) -> RescaledPair:
    return rescale(apply_switch_loss(ideal_pair(r), eta), r, eta)


def effective_gate_noise(y: float) -> float:
    """Gate noise ``(1 + 1/tanh^2(2y)) sech(2y) / 2`` of a pair with parameter y."""
    if y <= 0:
        raise GraphCalculusError(f"gate noise diverges for y <= 0 (got {y})")
    t = math.tanh(2 * y)
    return (1.0 + 1.0 / (t * t)) * sech(2 * y) / 2.0
