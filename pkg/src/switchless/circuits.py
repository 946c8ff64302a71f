"""Optical circuits built on the covariance simulator.

These are the brute-force references for the analytic formulas in
:mod:`switchless.graph_calculus`, :mod:`switchless.macronode` and
:mod:`switchless.qec`. Feedforward is modelled as linear displacement by
the measured quadrature (see :func:`switchless.gaussian.feedforward`),
which keeps every added-noise figure independent of the input state.

Mode layout of a two-sided tree graph with ``N`` branches per side::

    0            hub on side 1 (in-circuit mode "1")
    1            hub on side 2 (in-circuit mode "2")
    2 .. N+1     side-1 branches (set K)
    N+2 .. 2N+1  side-2 branches (set L)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import gaussian as g
from .gaussian import GaussianState, GaussianStateError

SQRT2 = np.sqrt(2.0)


class Construction(str, enum.Enum):
    CANONICAL_CZ = "canonical_cz"
    BELL_MEASURED_TREES = "bell_measured_trees"


@dataclass(frozen=True)
class TreeGraphSpec:
    n_branches: int
    r: float
    construction: Construction = Construction.CANONICAL_CZ

    def __post_init__(self):
        if not isinstance(self.n_branches, (int, np.integer)) or self.n_branches < 1:
            raise GaussianStateError(f"need at least one branch per side, got {self.n_branches!r}")
        if not np.isfinite(self.r) or self.r < 0:
            raise GaussianStateError(f"squeezing must be finite and >= 0, got {self.r}")
        object.__setattr__(self, "construction", Construction(self.construction))


def side1(n: int) -> list[int]:
    return list(range(2, n + 2))


def side2(n: int) -> list[int]:
    return list(range(n + 2, 2 * n + 2))


def squeezed_vacua(n: int, r: float) -> GaussianState:
    """``n`` p-squeezed vacua, Var(p) = exp(-2r)/2."""
    state = g.new_vacuum(n)
    for k in range(n):
        state = g.squeeze(state, k, r)
    return state


def graph_state(adjacency: np.ndarray, r: float) -> GaussianState:
    """Canonical graph state: p-squeezed vacua joined by unit-gain CZ edges."""
    a = np.asarray(adjacency, dtype=float)
    n = a.shape[0]
    state = squeezed_vacua(n, r)
    for i in range(n):
        for j in range(i + 1, n):
            if a[i, j]:
                state = g.cz(state, i, j, a[i, j])
    return state


def graph_nullifiers(adjacency: np.ndarray) -> list[np.ndarray]:
    """Coefficient vectors of ``p_i - sum_j A_ij x_j``."""
    a = np.asarray(adjacency, dtype=float)
    n = a.shape[0]
    out = []
    for i in range(n):
        c = np.zeros(2 * n)
        c[:n] = -a[i]
        c[n + i] = 1.0
        out.append(c)
    return out


def two_sided_tree_adjacency(n: int) -> np.ndarray:
    a = np.zeros((2 * n + 2, 2 * n + 2))
    edges = [(0, 1)] + [(0, k) for k in side1(n)] + [(1, l) for l in side2(n)]
    for i, j in edges:
        a[i, j] = a[j, i] = 1.0
    return a


def tree_nullifiers(n: int) -> dict[str, np.ndarray]:
    """Nullifiers of the two-sided tree, keyed ``d1``, ``d2``, ``k<i>``, ``l<i>``."""
    vecs = graph_nullifiers(two_sided_tree_adjacency(n))
    out = {"d1": vecs[0], "d2": vecs[1]}
    for i, k in enumerate(side1(n)):
        out[f"k{i}"] = vecs[k]
    for i, l in enumerate(side2(n)):
        out[f"l{i}"] = vecs[l]
    return out


def _bell_measured_trees(n: int, r: float) -> GaussianState:
    # Tree 1 on modes (0, a, K), tree 2 on (1, b, L); a and b are appended
    # after the 2N+2 target modes and removed at the end.
    a, b = 2 * n + 2, 2 * n + 3
    adj = np.zeros((2 * n + 4, 2 * n + 4))
    for hub, leaves in ((0, [a] + side1(n)), (1, [b] + side2(n))):
        for leaf in leaves:
            adj[hub, leaf] = adj[leaf, hub] = 1.0
    state = graph_state(adj, r)
    # Measuring x_a - p_b and p_a - x_b turns x_a into x_2 (and x_b into x_1)
    # in the hub nullifiers.
    state = g.rotate(state, b, np.pi / 2)
    state = g.beamsplitter(state, a, b, 0.5)
    # x of b carries (p_b - x_a)/sqrt2, p of a carries (p_a - x_b)/sqrt2.
    state = g.feedforward(state, b, 0.0, {(0, "p"): SQRT2})
    state = g.feedforward(state, a, np.pi / 2, {(1, "p"): SQRT2})
    return g.remove_modes(state, [a, b])


def build_two_sided_tree(spec: TreeGraphSpec) -> GaussianState:
    """Two-sided tree graph with ``2N + 2`` modes.

    ``canonical_cz`` gives every nullifier variance ``exp(-2r)/2``. The
    ``bell_measured_trees`` route fuses two star graphs with a Bell
    measurement and unit-gain feedforward, which doubles the hub nullifier
    variances and leaves the branch nullifiers untouched.
    """
    n = spec.n_branches
    if spec.construction is Construction.CANONICAL_CZ:
        return graph_state(two_sided_tree_adjacency(n), spec.r)
    return _bell_measured_trees(n, spec.r)


def tmss(r: float) -> GaussianState:
    """Two-mode squeezed vacuum: Cov(x1, x2) = sinh(2r)/2 = -Cov(p1, p2)."""
    state = g.new_vacuum(2)
    state = g.squeeze(state, 0, -r)
    state = g.squeeze(state, 1, r)
    return g.beamsplitter(state, 0, 1, 0.5)


def lossy_pair_conditional_variance(r: float, eta: float) -> tuple[float, float]:
    """Send one TMSS arm through loss, homodyne the other arm.

    Returns the conditional (Var x, Var p) of the lossy arm.
    """
    state = g.loss(tmss(r), 1, eta)
    vx = g.homodyne_condition(state, 0, 0.0).var_x(0)
    vp = g.homodyne_condition(state, 0, np.pi / 2).var_p(0)
    return vx, vp


def pair_teleportation(
    input_cov: np.ndarray, r: float, gain_x: float, gain_p: float
) -> tuple[np.ndarray, np.ndarray]:
    """Teleport one mode through a TMSS with feedforward gains.

    The input meets arm A on a 50:50 beamsplitter; the two outputs are
    homodyned in x and p and fed to arm B. The implemented map is
    ``diag(gain_x, gain_p)``, which is symplectic only for
    ``gain_x * gain_p = 1``. Returns ``(output_cov, excess_cov)`` with the
    excess measured against ``G V_in G^T``.
    """
    vin = np.asarray(input_cov, dtype=float)
    state = g.tensor(g.from_single_mode([vin]), tmss(r))
    # modes: 0 input, 1 arm A, 2 arm B
    state = g.beamsplitter(state, 0, 1, 0.5)
    # x of mode 1 -> (x_A - x_in)/sqrt2 ; p of mode 0 -> (p_in + p_A)/sqrt2
    state = g.feedforward(state, 1, 0.0, {(2, "x"): -SQRT2 * gain_x})
    state = g.feedforward(state, 0, np.pi / 2, {(2, "p"): SQRT2 * gain_p})
    out = g.remove_modes(state, [0, 1]).mode_cov(0)
    gm = np.diag([gain_x, gain_p])
    return out, out - gm @ vin @ gm.T


def pair_teleportation_noise(r: float, edge_weight: float | None = None) -> np.ndarray:
    """Excess covariance of one macronode-style teleportation step.

    The feedforward gains ``(1/t, t)`` implement the squeezing ``S(s)`` with
    ``e^s = 1/t`` that a pair of edge weight ``t = tanh(2r)`` imposes.
    """
    t = np.tanh(2 * r) if edge_weight is None else edge_weight
    _, excess = pair_teleportation(0.5 * np.eye(2), r, 1.0 / t, t)
    return excess


def simulate_injection(
    n_branches: int, r: float, input_cov: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Inject a single-mode state into hub 1 through its first branch.

    The input and branch ``k`` meet on a 50:50 beamsplitter and are
    homodyned in x and p; every other branch and hub 2 are measured in x
    and fed forward at unit gain. The input arrives on hub 1 rotated by
    ``R(pi/2)``: ``(x, p) -> (p, -x)``.

    Returns ``(output_cov, added_noise)``, the added noise being measured
    against the ideally rotated input.
    """
    vin = np.asarray(input_cov, dtype=float)
    n = n_branches
    tree = build_two_sided_tree(TreeGraphSpec(n, r))
    state = g.tensor(tree, g.from_single_mode([vin]))
    src = 2 * n + 2
    k = side1(n)[0]

    state = g.beamsplitter(state, src, k, 0.5)
    # x of src: (x_in + x_k)/sqrt2 ; p of k: (p_k - p_in)/sqrt2
    state = g.feedforward(state, src, 0.0, {(0, "p"): -SQRT2})
    state = g.feedforward(state, k, np.pi / 2, {(0, "x"): -SQRT2})

    # Remaining x-neighbours of hub 1 are erased from its p quadrature.
    for other in side1(n)[1:] + [1]:
        state = g.feedforward(state, other, 0.0, {(0, "p"): -1.0})
    for leaf in side2(n):
        state = g.feedforward(state, leaf, 0.0, {})

    drop = [m for m in range(state.n_modes) if m != 0]
    out = g.remove_modes(state, drop).mode_cov(0)
    rot = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return out, out - rot @ vin @ rot.T


def bell_pair_hub_variance(n_branches: int, r: float) -> tuple[float, float]:
    """Disentangle every branch of a canonical tree through a squeezed ancilla.

    Each branch meets an x-squeezed vacuum (Var x = exp(-2r)/2) on a 50:50
    beamsplitter; one port is measured in x and fed to the neighbouring hub
    at unit gain, the other is measured in p. Returns the variances of the
    remaining pair nullifiers ``p1 - x2`` and ``p2 - x1``.
    """
    n = n_branches
    tree = build_two_sided_tree(TreeGraphSpec(n, r))
    anc = g.new_vacuum(2 * n)
    for j in range(2 * n):
        anc = g.squeeze(anc, j, -r)
    state = g.tensor(tree, anc)
    m0 = 2 * n + 2
    for j, (hub, leaf) in enumerate([(0, k) for k in side1(n)] + [(1, l) for l in side2(n)]):
        m = m0 + j
        state = g.beamsplitter(state, leaf, m, 0.5)
        # x of leaf: (x_leaf + x_m)/sqrt2 ; p of m: (p_m - p_leaf)/sqrt2
        state = g.feedforward(state, leaf, 0.0, {(hub, "p"): -SQRT2})
        state = g.feedforward(state, m, np.pi / 2, {})
    pair = g.remove_modes(state, [m for m in range(state.n_modes) if m > 1])
    v1 = g.nullifier_variance(pair, g.combo(2, x={1: -1.0}, p={0: 1.0}))
    v2 = g.nullifier_variance(pair, g.combo(2, x={0: -1.0}, p={1: 1.0}))
    return v1, v2
