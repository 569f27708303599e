"""Asymmetric profiles: exact utilities, the potential, and dynamics.

With players on possibly different strategies, the number of rivals on
a type is a Poisson-binomial count, computed exactly by dynamic
programming.  The game admits the congestion potential

    Phi(P) = sum_k d_k E[ sum_{l=1}^{X_k(P)} 1/s(l) ],

whose change under any unilateral deviation equals the deviator's
utility change, so round-robin exact best responses never decrease Phi
and terminate at an epsilon-equilibrium.  Best responses are exact: the
deviator's objective is linear over the ranking polytope, whose
vertices are uniform prefixes of the ranking, so an argmax over the K
prefixes suffices.  Welfare is also linear in any single column, which
gives the coordinate-ascent heuristic used to lower-bound the optimum
for price-of-anarchy ratios.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Ranking, Strategy, StrategyProfile, ValueVector, as_values
from .score import ScoreFunction, classify_score, score_eval

__all__ = [
    "pb_pmf",
    "utility_of",
    "welfare_of",
    "potential",
    "best_response",
    "br_dynamics",
    "check_equilibrium",
    "poa_tight_instance",
    "welfare_ascent",
    "BrReport",
    "EquilibriumReport",
]


def pb_pmf(probabilities) -> np.ndarray:
    """Exact Poisson-binomial pmf over {0..n} by O(n^2) convolution."""
    probs = np.asarray(probabilities, dtype=float)
    if probs.size and (probs.min() < -1e-12 or probs.max() > 1 + 1e-12):
        raise ValueError("probabilities must lie in [0, 1]")
    pmf = np.array([1.0])
    for p in np.clip(probs, 0.0, 1.0):
        nxt = np.zeros(pmf.size + 1)
        nxt[:-1] = pmf * (1.0 - p)
        nxt[1:] += pmf * p
        pmf = nxt
    return pmf


def _share_of_counts(s: ScoreFunction, n: int) -> np.ndarray:
    """1/s(1+c) for c = 0..n."""
    return np.array([1.0 / score_eval(s, c + 1) for c in range(n + 1)])


def _values_against(others: np.ndarray, d: np.ndarray, s: ScoreFunction) -> np.ndarray:
    """V_k = d_k E[1/s(1 + X_k)] for X_k from the rivals' K x m matrix."""
    m = others.shape[1]
    weights = _share_of_counts(s, m)
    return np.array(
        [d[k] * float(pb_pmf(others[k]) @ weights) for k in range(others.shape[0])]
    )


def utility_of(P: StrategyProfile, i: int, d, s: ScoreFunction) -> float:
    """Player i's exact expected utility in the profile."""
    if not (0 <= i < P.n):
        raise IndexError(f"player index {i} out of range for n={P.n}")
    mat = P.matrix()
    others = np.delete(mat, i, axis=1)
    v = _values_against(others, as_values(d), s)
    return float(mat[:, i] @ v)


def welfare_of(P: StrategyProfile, d, s: ScoreFunction) -> float:
    """Exact social welfare of the profile (branch chosen by score class)."""
    mat = P.matrix()
    dv = as_values(d)
    n = P.n
    if classify_score(s).is_down:
        covered = np.array([1.0 - pb_pmf(mat[k])[0] for k in range(P.k)])
        return float(dv @ covered)
    counts = np.arange(n + 1, dtype=float)
    ratio = np.array([c / score_eval(s, int(c)) if c > 0 else 0.0 for c in counts])
    return float(
        sum(dv[k] * float(pb_pmf(mat[k]) @ ratio) for k in range(P.k))
    )


def potential(P: StrategyProfile, d, s: ScoreFunction) -> float:
    """Rosenthal-style exact potential of the profile."""
    mat = P.matrix()
    dv = as_values(d)
    n = P.n
    # H[c] = sum_{l=1..c} 1/s(l)
    H = np.concatenate(([0.0], np.cumsum(_share_of_counts(s, n - 1))))
    return float(sum(dv[k] * float(pb_pmf(mat[k]) @ H) for k in range(P.k)))


def _ranking_of(P: StrategyProfile, i: int, rankings) -> Ranking:
    if rankings is None:
        return Ranking.identity(P.k)
    if isinstance(rankings, Ranking):
        return rankings
    return rankings[P.tool_of[i]]


def best_prefix_vertex(v: np.ndarray, ranking: Ranking) -> tuple[Strategy, float]:
    """Maximize a linear objective over the ranking polytope.

    The optimum is uniform over a prefix of the ranking; ties break
    toward the shortest prefix so dynamics stay deterministic.
    """
    ordered = v[ranking.idx]
    averages = np.cumsum(ordered) / np.arange(1, ordered.size + 1)
    j = int(np.argmax(averages))
    p = np.zeros(ordered.size)
    p[ranking.idx[: j + 1]] = 1.0 / (j + 1)
    return Strategy(p), float(averages[j])


def best_response(
    P: StrategyProfile, i: int, d, s: ScoreFunction, rankings=None
) -> Strategy:
    """Player i's exact best response to the rest of the profile."""
    mat = P.matrix()
    others = np.delete(mat, i, axis=1)
    v = _values_against(others, as_values(d), s)
    strategy, _ = best_prefix_vertex(v, _ranking_of(P, i, rankings))
    return strategy


@dataclass(frozen=True)
class BrReport:
    profile: StrategyProfile
    potential_trace: tuple[float, ...]
    converged: bool
    epsilon: float
    rounds: int


def br_dynamics(
    P0: StrategyProfile,
    d,
    s: ScoreFunction,
    eps: float = 1e-8,
    max_rounds: int = 200,
    rankings=None,
) -> BrReport:
    """Round-robin exact best responses until an eps-equilibrium.

    Stops when no player improves by more than eps in a full round;
    non-convergence is reported, not raised.  The potential trace is
    nondecreasing because every step is an exact best response.
    """
    P = P0
    dv = as_values(d)
    trace = [potential(P, dv, s)]
    converged = False
    rounds = 0
    for rounds in range(1, max_rounds + 1):
        best_gain = 0.0
        for i in range(P.n):
            mat = P.matrix()
            others = np.delete(mat, i, axis=1)
            v = _values_against(others, dv, s)
            current = float(mat[:, i] @ v)
            strategy, value = best_prefix_vertex(v, _ranking_of(P, i, rankings))
            if value > current + 1e-15:
                P = P.replace(i, strategy)
                trace.append(trace[-1] + (value - current))
            best_gain = max(best_gain, value - current)
        if best_gain <= eps:
            converged = True
            break
    return BrReport(P, tuple(trace), converged, eps, rounds)


@dataclass(frozen=True)
class EquilibriumReport:
    is_equilibrium: bool
    max_gain: float
    worst_player: int
    gains: tuple[float, ...]


def check_equilibrium(
    P: StrategyProfile, d, s: ScoreFunction, eps: float = 1e-9, rankings=None
) -> EquilibriumReport:
    """Compare every player's utility to their exact best response."""
    mat = P.matrix()
    dv = as_values(d)
    gains = []
    for i in range(P.n):
        others = np.delete(mat, i, axis=1)
        v = _values_against(others, dv, s)
        current = float(mat[:, i] @ v)
        _, value = best_prefix_vertex(v, _ranking_of(P, i, rankings))
        gains.append(value - current)
    worst = int(np.argmax(gains))
    return EquilibriumReport(
        is_equilibrium=bool(gains[worst] <= eps),
        max_gain=float(gains[worst]),
        worst_player=worst,
        gains=tuple(float(g) for g in gains),
    )


def poa_tight_instance(
    n: int,
) -> tuple[ValueVector, StrategyProfile, StrategyProfile]:
    """The family on which the price-of-anarchy bound of 2 is tight.

    K = n^2 + 1 types with values [1, 1/n, ..., 1/n]; in the good
    profile player 1 covers type 1 and everyone else spreads uniformly,
    while in the (weak) equilibrium all n players pile on type 1 for
    welfare exactly 1.
    """
    if n < 2:
        raise ValueError("tight instance needs n >= 2")
    k = n * n + 1
    d = ValueVector([1.0] + [1.0 / n] * (k - 1))
    top = np.zeros(k)
    top[0] = 1.0
    spread = np.full(k, 1.0 / k)
    p_plus = StrategyProfile([Strategy(top)] + [Strategy(spread)] * (n - 1))
    p_eq = StrategyProfile([Strategy(top)] * n)
    return d, p_plus, p_eq


def welfare_ascent(
    P0: StrategyProfile,
    d,
    s: ScoreFunction,
    max_rounds: int = 100,
    tol: float = 1e-10,
    rankings=None,
) -> StrategyProfile:
    """Coordinate ascent on welfare; a lower bound on the true optimum.

    Welfare is linear in any one column, so each step is an exact
    prefix-vertex argmax of the per-type marginal coverage gain.
    """
    P = P0
    dv = as_values(d)
    down = classify_score(s).is_down
    n = P.n
    if down:
        gain_of_counts = np.array([1.0 if c == 0 else 0.0 for c in range(n)])
    else:
        ratio = np.array(
            [c / score_eval(s, int(c)) if c > 0 else 0.0 for c in range(n + 1)]
        )
        gain_of_counts = ratio[1:] - ratio[:-1]
    current = welfare_of(P, dv, s)
    for _ in range(max_rounds):
        improved = False
        for i in range(n):
            mat = P.matrix()
            others = np.delete(mat, i, axis=1)
            marg = np.array(
                [
                    dv[k] * float(pb_pmf(others[k]) @ gain_of_counts)
                    for k in range(P.k)
                ]
            )
            strategy, _ = best_prefix_vertex(marg, _ranking_of(P, i, rankings))
            candidate = P.replace(i, strategy)
            w = welfare_of(candidate, dv, s)
            if w > current + tol:
                P, current, improved = candidate, w, True
        if not improved:
            break
    return P
