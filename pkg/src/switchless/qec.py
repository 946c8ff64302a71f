"""GKP error probabilities for the FFCZ gate in both architectures."""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import special

from . import graph_calculus as gc
from .macronode import NoisePair, ffcz_variances

SQRT_PI = math.sqrt(math.pi)
MODELS = ("at_least_one_per_side", "at_least_two_per_side")


class QECError(ValueError):
    pass


def sigma2_from_r(r: float) -> float:
    return math.exp(-2.0 * r) / 2.0


def db_to_r(db: float) -> float:
    """Squeezing in dB, ``10 log10(e^{2r})``, to the parameter r."""
    return db * math.log(10.0) / 20.0


def r_to_db(r: float) -> float:
    return 20.0 * r / math.log(10.0)


@dataclass(frozen=True)
class ConventionalScenario:
    r: float
    eta: float

    def __post_init__(self):
        if not self.r > 0:
            raise QECError(f"conventional scenario needs r > 0, got {self.r}")
        if not 0.0 < self.eta <= 1.0:
            raise QECError(f"switch transmission must lie in (0, 1], got {self.eta}")


@dataclass(frozen=True)
class ProposedScenario:
    r: float
    n_branches: int

    def __post_init__(self):
        if not self.r >= 0:
            raise QECError(f"proposed scenario needs r >= 0, got {self.r}")
        if not isinstance(self.n_branches, (int, np.integer)) or self.n_branches < 1:
            raise QECError(f"need at least one branch per side, got {self.n_branches!r}")


@dataclass(frozen=True)
class TrialVariances:
    s1x: float
    s1p: float
    s2x: float
    s2p: float

    def __post_init__(self):
        if min(astuple(self)) <= 0:
            raise QECError(f"trial variances must be positive, got {astuple(self)}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return astuple(self)


def _kmax(sigma: float) -> int:
    return max(8, math.ceil(6.0 * sigma / SQRT_PI))


def gkp_misid(sigma: float) -> float:
    """Probability that a Gaussian peak of width ``sigma`` lands in a wrong bin.

    Correct bins are ``[2k sqrt(pi) - sqrt(pi)/2, 2k sqrt(pi) + sqrt(pi)/2]``;
    this sums the Gaussian mass of the complementary bins directly, which
    stays accurate when the result is tiny. By symmetry only positive wrong
    bins are summed and doubled.
    """
    if sigma < 0 or math.isnan(sigma):
        raise QECError(f"sigma must be >= 0, got {sigma}")
    if sigma == 0:
        return 0.0
    if math.isinf(sigma):
        return 0.5
    scale = math.sqrt(2.0) * sigma
    total = 0.0
    for k in range(_kmax(sigma) + 1):
        lo = (2 * k + 0.5) * SQRT_PI / scale
        hi = (2 * k + 1.5) * SQRT_PI / scale
        # erfc(lo) - erfc(hi) without cancellation in the far tail
        term = 0.5 * (special.erfc(lo) - special.erfc(hi))
        total += term
        if term < 1e-18 and k > 0:
            break
    return min(2.0 * total, 0.5)


def gkp_misid_quad(sigma: float) -> float:
    """Same quantity by adaptive quadrature over the correct bins."""
    from scipy import integrate

    if sigma == 0:
        return 0.0
    norm = 1.0 / math.sqrt(2.0 * math.pi * sigma * sigma)

    def density(x):
        return norm * math.exp(-x * x / (2.0 * sigma * sigma))

    inside = 0.0
    for k in range(-_kmax(sigma), _kmax(sigma) + 1):
        c = 2 * k * SQRT_PI
        a, b = c - SQRT_PI / 2, c + SQRT_PI / 2
        if a > 12 * sigma or b < -12 * sigma:
            continue
        val, _ = integrate.quad(density, a, b, epsabs=1e-15, epsrel=1e-13, limit=200)
        inside += val
    return 1.0 - inside


def gkp_misid_mc(sigma: float, n_samples: int, rng: np.random.Generator) -> tuple[float, float]:
    """Monte-Carlo estimate and its standard error."""
    x = rng.normal(0.0, sigma, size=n_samples)
    # distance to the nearest correct-bin centre
    phase = np.mod(x + SQRT_PI, 2 * SQRT_PI) - SQRT_PI
    p = float(np.mean(np.abs(phase) > SQRT_PI / 2))
    return p, math.sqrt(max(p * (1 - p), 1e-300) / n_samples)


def gkp_bias(sigma: float) -> float:
    """``1 - 2 E(sigma)``: correct-bin minus wrong-bin mass.

    For wide peaks this uses the Fourier series of the bin indicator,
    ``(4/pi) sum_j (-1)^j/(2j+1) exp(-pi (2j+1)^2 sigma^2 / 2)``, which keeps
    relative accuracy where ``E`` is within rounding of 1/2.
    """
    if sigma < 0.5:
        return 1.0 - 2.0 * gkp_misid(sigma)
    a = math.pi * sigma * sigma / 2.0
    total = 0.0
    for j in range(64):
        m = 2 * j + 1
        term = math.exp(-a * m * m) / m
        total += -term if j % 2 else term
        if term < 1e-18 * abs(total):
            break
    return 4.0 / math.pi * total


def conventional_trial_variances(s: ConventionalScenario) -> TrialVariances:
    """Switched architecture: loss enters through the rescaled pair and pre-amplification.

    Steady-state GKP inputs have width sigma^2 in both quadratures.
    """
    sig2 = sigma2_from_r(s.r)
    xi = gc.effective_gate_noise(gc.effective_squeezing(s.r, s.eta).y)
    loss = 1.0 - s.eta
    (m1, _) = ffcz_variances(NoisePair(sig2, sig2), NoisePair(sig2, sig2), xi)
    xi_x = m1.dx2 + 2 * loss
    xi_p = m1.dp2 + loss
    sx, sp = xi_x + sig2, xi_p + sig2
    return TrialVariances(sx, sp, sx, sp)


def proposed_trial_variances(s: ProposedScenario) -> TrialVariances:
    """Switching-free architecture built on two-sided tree graphs.

    Inputs are GKP Bell halves of widths ``2 sigma^2`` (x) and
    ``(N + 2) sigma^2`` (p); the pair adds ``(N + 1) sigma^2`` per step.
    """
    n = s.n_branches
    sig2 = sigma2_from_r(s.r)
    dx, dp = 2 * sig2, (n + 2) * sig2
    xi = (n + 1) * sig2
    (m1, _) = ffcz_variances(NoisePair(dx, dp), NoisePair(dx, dp), xi)
    xi_x, xi_p = m1.dx2, m1.dp2
    sx = xi_p + (n + 2) * sig2
    sp = xi_x + 2 * sig2
    return TrialVariances(sx, sp, sx, sp)


def odd_failure_probability(p: Sequence[float]) -> float:
    """P(exactly one) + P(exactly three) failures of four independent trials."""
    p = [float(v) for v in p]
    if len(p) != 4:
        raise QECError("need exactly four trial probabilities")
    q = [1.0 - v for v in p]
    one = sum(p[i] * math.prod(q[j] for j in range(4) if j != i) for i in range(4))
    three = sum(q[i] * math.prod(p[j] for j in range(4) if j != i) for i in range(4))
    return one + three


def p_fail(t: TrialVariances) -> float:
    return odd_failure_probability([gkp_misid(math.sqrt(v)) for v in t.as_tuple()])


def p_fail_margin(t: TrialVariances) -> float:
    """``1/2 - p_fail``, resolvable even when ``p_fail`` rounds to 1/2.

    Uses ``P(odd failures) = (1 - prod_i (1 - 2 p_i)) / 2``.
    """
    return 0.5 * math.prod(gkp_bias(math.sqrt(v)) for v in t.as_tuple())


def bell_prep_success(p_single: float, n: int, model: str) -> float:
    """Probability of a GKP Bell pair when each side has ``n`` heralded tries."""
    if not 0.0 <= p_single <= 1.0:
        raise QECError(f"probability must lie in [0, 1], got {p_single}")
    if n < 1:
        raise QECError(f"need n >= 1, got {n}")
    miss = 1.0 - p_single
    if model == "at_least_one_per_side":
        side = -math.expm1(n * math.log1p(-p_single)) if p_single < 1 else 1.0
    elif model == "at_least_two_per_side":
        side = 1.0 - miss**n - n * p_single * miss ** (n - 1)
    else:
        raise QECError(f"unknown model {model!r}; choose one of {MODELS}")
    return side * side


def prep_threshold(n: int, model: str, target: float = 0.9999, tol: float = 1e-6) -> float:
    """Smallest single-shot probability reaching ``target`` Bell success (bisection)."""
    from scipy import optimize

    f = lambda p: bell_prep_success(p, n, model) - target  # noqa: E731
    if f(1.0) < 0:
        return math.nan
    return float(optimize.bisect(f, 0.0, 1.0, xtol=tol * 1e-3))


def _curve(scenarios: Iterable, pipeline) -> list[tuple[float, float]]:
    rows = [(sc.r, p_fail(pipeline(sc))) for sc in scenarios]
    return sorted(rows)


def proposed_error_curve(n: int, r_grid: Sequence[float]) -> list[tuple[float, float]]:
    if len(r_grid) == 0:
        raise QECError("empty squeezing grid")
    return _curve((ProposedScenario(r, n) for r in r_grid), proposed_trial_variances)


def conventional_error_curve(eta: float, r_grid: Sequence[float]) -> list[tuple[float, float]]:
    if len(r_grid) == 0:
        raise QECError("empty squeezing grid")
    return _curve((ConventionalScenario(r, eta) for r in r_grid), conventional_trial_variances)
