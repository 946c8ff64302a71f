"""Oracle-versus-analytic consistency checks run by ``switchless selftest``."""

from __future__ import annotations

import math
import os
import sys
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import circuits, graph_calculus as gc, qec


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float


def _grid(start, stop, step):
    return [round(start + i * step, 10) for i in range(int(round((stop - start) / step)) + 1)]


R_GRID = _grid(0.2, 2.4, 0.2)
ETA_GRID = (0.8, 0.9, 0.95, 0.99, 1.0)


def check_conditioning() -> float:
    worst = 0.0
    for r in _grid(0.0, 2.4, 0.2):
        vx, vp = circuits.lossy_pair_conditional_variance(r, 1.0)
        want = gc.sech(2 * r) / 2
        worst = max(worst, abs(vx - want), abs(vp - want))
    return worst


def check_lossy_self_loop() -> float:
    worst = 0.0
    for r in R_GRID:
        for eta in ETA_GRID:
            vx, vp = circuits.lossy_pair_conditional_variance(r, eta)
            eps_b = gc.apply_switch_loss(gc.ideal_pair(r), eta).eps_b
            worst = max(worst, abs(vx - eps_b / 2), abs(vp - eps_b / 2))
    return worst


def check_rescaling(perturb_gamma_b: float = 0.0) -> float:
    worst = 0.0
    for r in R_GRID:
        for eta in ETA_GRID:
            res = gc.effective_squeezing(r, eta)
            if perturb_gamma_b:
                res = replace(res, gamma_b=res.gamma_b * (1 + perturb_gamma_b))
            worst = max(worst, *gc.rescale_residuals(res, r, eta))
        lossless = gc.effective_squeezing(r, 1.0)
        worst = max(worst, abs(lossless.y - r), abs(lossless.gamma_a - 1), abs(lossless.gamma_b - 1))
    return worst


def check_gate_noise() -> float:
    worst = 0.0
    for r in (0.5, 1.0, 1.5, 2.0):
        excess = circuits.pair_teleportation_noise(r)
        worst = max(worst, abs(np.trace(excess) - gc.effective_gate_noise(r)))
    return worst


def check_tree_bell_pair() -> float:
    worst = 0.0
    for n in (1, 2, 3, 5):
        for r in (0.5, 1.0):
            want = (n + 1) * qec.sigma2_from_r(r)
            worst = max(worst, *(abs(v - want) for v in circuits.bell_pair_hub_variance(n, r)))
    return worst


def check_misid_dual() -> float:
    sigmas = [round(0.05 * k, 10) for k in range(1, 61)]
    return max(abs(qec.gkp_misid(s) - qec.gkp_misid_quad(s)) for s in sigmas)


def check_injection() -> float:
    inputs = (0.5 * np.eye(2), np.diag([2.0, 0.125]))
    a = circuits.simulate_injection(2, 1.0, inputs[0])[1]
    b = circuits.simulate_injection(2, 1.0, inputs[1])[1]
    far = circuits.simulate_injection(2, 5.0, inputs[0])[1]
    # independence residual, plus any excess of the large-squeezing noise over 1e-3
    return max(float(np.max(np.abs(a - b))), max(0.0, float(np.max(np.diag(far))) - 1e-3))


def mc_misid_zscore(seed: int, n_samples: int = 10_000_000) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for s in (0.2, 0.5, 1.0):
        est, _ = qec.gkp_misid_mc(s, n_samples, rng)
        # standard error from the exact value, not the estimate
        p = qec.gkp_misid(s)
        sd = math.sqrt(p * (1 - p) / n_samples)
        worst = max(worst, abs(est - p) / sd)
    return worst


def mc_prep_zscore(seed: int, n_samples: int = 10_000_000) -> float:
    rng = np.random.default_rng(seed)
    p, n = 0.735, 10
    worst = 0.0
    for model, need in (("at_least_one_per_side", 1), ("at_least_two_per_side", 2)):
        hits = rng.binomial(n, p, size=(n_samples, 2))
        est = float(np.mean(np.all(hits >= need, axis=1)))
        exact = qec.bell_prep_success(p, n, model)
        worst = max(worst, abs(est - exact) / math.sqrt(exact * (1 - exact) / n_samples))
    return worst


def run_checks(seed: int = 0, perturb_gamma_b: float = 0.0) -> list[CheckResult]:
    checks: list[tuple[str, Callable[[], float], float]] = [
        ("conditioning identity sech(2r)/2", check_conditioning, 1e-12),
        ("lossy self-loop vs oracle", check_lossy_self_loop, 1e-10),
        ("rescaling residuals", lambda: check_rescaling(perturb_gamma_b), 1e-12),
        ("lossless gate noise vs teleportation", check_gate_noise, 1e-10),
        ("tree Bell pair (N+1) sigma^2", check_tree_bell_pair, 1e-10),
        ("E(sigma) erf sum vs quadrature", check_misid_dual, 1e-12),
        ("injection noise input-independent", check_injection, 1e-12),
        ("E(sigma) Monte Carlo (z-score)", lambda: mc_misid_zscore(seed), 3.0),
        ("Bell prep Monte Carlo (z-score)", lambda: mc_prep_zscore(seed), 3.0),
    ]
    out = []
    for name, fn, tol in checks:
        res = fn()
        out.append(CheckResult(name, bool(res <= tol), res, tol))
    return out


def report(results: list[CheckResult], stream=None) -> bool:
    stream = stream or sys.stdout
    color = "NO_COLOR" not in os.environ and getattr(stream, "isatty", lambda: False)()
    ok_tag, bad_tag = ("\033[32mPASS\033[0m", "\033[31mFAIL\033[0m") if color else ("PASS", "FAIL")
    for res in results:
        tag = ok_tag if res.passed else bad_tag
        print(f"{tag}  {res.name:<40s} residual={res.residual:.3e}  tol={res.tolerance:.1e}", file=stream)
    passed = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} checks passed", file=stream)
    return passed
