"""Symmetric equilibrium and socially optimal strategies.

Both solvers are water-fills: a scalar level is bisected until the
per-type inverse conditions use up exactly one unit of probability.

Equilibrium: on the support, d_k * share(n-1, p_k) equals the common
per-player utility c, and off the support d_k <= c.  The sum
S(c) = sum_k inv_share(n-1, c / d_k) is strictly decreasing where it is
positive, so the crossing S(c) = 1 is unique.

Optimum: for S_UP scores the first-order condition equalizes
d_k * marginal_served(n-1, p_k); for S_DOWN scores welfare depends on
the score only through coverage and the condition is the closed form
d_k * (1 - p_k)^(n-1) = c.  Values are pooled by PAVA first (pooling
changes neither solution), so inputs need not be sorted.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Strategy, as_probs, as_values
from .reduce import pava_reduce
from .score import (
    ScoreFunction,
    _inv_marginal_served_vec,
    _inv_share_vec,
    _share_vec,
    classify_score,
    served,
)

__all__ = [
    "SymmetricSolution",
    "solve_eq",
    "solve_opt",
    "eval_utility",
    "eval_welfare_sym",
    "limit_dist",
]

_SNAP = 1e-12


@dataclass(frozen=True)
class SymmetricSolution:
    """A symmetric strategy plus its equalized level and payoffs.

    For an equilibrium, ``level`` is the common per-player utility; for
    an optimum it is the equalized marginal welfare (per player).
    """

    strategy: Strategy
    level: float
    per_player_utility: float
    welfare: float


def _water_fill(
    d: np.ndarray, fill: Callable[[float], np.ndarray], sum_tol: float
) -> tuple[np.ndarray, float]:
    """Bisect a log-level t = log(c) so that fill(t) sums to 1.

    ``fill`` maps the log-level to per-type probabilities, entrywise
    nonincreasing in t, with fill(log max d) = 0.  Bisecting in log
    space matters: the S_DOWN optimum and infinite-gamma fills need
    levels as small as exp(-O(n)), which a linear bracket cannot reach.
    Returns the snapped, renormalized probabilities and the level c.
    """
    t_hi = math.log(float(np.max(d)))
    offset = 40.0
    t_lo = t_hi - offset
    while float(fill(t_lo).sum()) < 1.0 and offset < 1e6:
        offset *= 2.0
        t_lo = t_hi - offset
    t = t_hi
    for _ in range(300):
        t = 0.5 * (t_lo + t_hi)
        total = float(fill(t).sum())
        if abs(total - 1.0) <= sum_tol:
            break
        if total > 1.0:
            t_lo = t
        else:
            t_hi = t
    p = fill(t)
    p[p < _SNAP] = 0.0
    p = p / p.sum()
    return p, math.exp(t)


def _prefix_best(d: np.ndarray) -> tuple[np.ndarray, float]:
    """Best prefix-uniform vertex for a solo player: argmax prefix mean."""
    averages = np.cumsum(d) / np.arange(1, d.size + 1)
    j = int(np.argmax(averages))  # ties break toward the shortest prefix
    p = np.zeros_like(d)
    p[: j + 1] = 1.0 / (j + 1)
    return p, float(averages[j])


def solve_eq(n: int, d, s: ScoreFunction, sum_tol: float = 1e-10) -> SymmetricSolution:
    """Unique symmetric equilibrium of the n-player game.

    Values are PAVA-pooled internally, so ``d`` need not be decreasing.
    n = 1 returns the best prefix-uniform vertex (no competition, so the
    water-fill degenerates).
    """
    dv = as_values(d)
    if not np.any(dv > 0):
        raise ValueError("cannot solve a game with all-zero values")
    dv = pava_reduce(dv).reduced

    if n == 1:
        p, val = _prefix_best(dv)
        return SymmetricSolution(Strategy(p), val, val, val)

    m = n - 1
    pos = dv > 0
    log_d = np.log(dv[pos])

    if s.is_infinite_power:
        # share(m, p) = (1-p)^m inverts in log space without underflow.
        def fill(t: float) -> np.ndarray:
            p = np.zeros_like(dv)
            p[pos] = np.clip(1.0 - np.exp(np.minimum(t - log_d, 0.0) / m), 0.0, 1.0)
            return p

    else:

        def fill(t: float) -> np.ndarray:
            p = np.zeros_like(dv)
            p[pos] = _inv_share_vec(s, m, np.exp(np.minimum(t - log_d, 1.0)))
            return p

    p, _ = _water_fill(dv, fill, sum_tol)
    utility = float(np.sum(p * dv * _share_vec(s, m, p)))
    welfare = eval_welfare_sym(p, n, dv, s)
    return SymmetricSolution(Strategy(p), utility, utility, welfare)


def solve_opt(n: int, d, s: ScoreFunction, sum_tol: float = 1e-10) -> SymmetricSolution:
    """Unique symmetric socially optimal strategy of the n-player game."""
    dv = as_values(d)
    if not np.any(dv > 0):
        raise ValueError("cannot solve a game with all-zero values")
    dv = pava_reduce(dv).reduced

    if n == 1:
        p, val = _prefix_best(dv)
        return SymmetricSolution(Strategy(p), val, val, val)

    m = n - 1
    pos = dv > 0
    log_d = np.log(dv[pos])
    cls = classify_score(s)

    if cls.is_down:
        # Coverage welfare: d_k (1 - p_k)^(n-1) equalized on the support.
        def fill(t: float) -> np.ndarray:
            p = np.zeros_like(dv)
            p[pos] = np.clip(1.0 - np.exp(np.minimum(t - log_d, 0.0) / m), 0.0, 1.0)
            return p

    else:

        def fill(t: float) -> np.ndarray:
            p = np.zeros_like(dv)
            p[pos] = _inv_marginal_served_vec(s, m, np.exp(np.minimum(t - log_d, 1.0)))
            return p

    p, level = _water_fill(dv, fill, sum_tol)
    utility = float(np.sum(p * dv * _share_vec(s, m, p)))
    welfare = eval_welfare_sym(p, n, dv, s)
    return SymmetricSolution(Strategy(p), level, utility, welfare)


def eval_utility(p_dev, p, n: int, d, s: ScoreFunction) -> float:
    """Expected utility of one player at ``p_dev`` against n-1 at ``p``."""
    dev = as_probs(p_dev)
    base = as_probs(p)
    dv = as_values(d)
    if not (dev.size == base.size == dv.size):
        raise ValueError("dimension mismatch between strategies and values")
    if n == 1:
        return float(np.sum(dev * dv))
    return float(np.sum(dev * dv * _share_vec(s, n - 1, base)))


def eval_welfare_sym(p, n: int, d, s: ScoreFunction) -> float:
    """Expected social welfare when all n players play ``p``.

    S_UP: sum_k d_k E[X_k / s(X_k)] (= n times per-player utility).
    S_DOWN: sum_k d_k (1 - (1-p_k)^n), independent of the score.
    """
    pv = as_probs(p)
    dv = as_values(d)
    if classify_score(s).is_down:
        return float(np.sum(dv * (1.0 - (1.0 - pv) ** n)))
    return float(np.sum(dv * served(s, n, pv)))


def limit_dist(d, gamma: float, sdown_optimum: bool = False) -> Strategy:
    """Limiting strategy as the player count grows.

    Equilibria (and S_UP optima) approach p_k proportional to
    d_k^(1/gamma); with ``sdown_optimum=True`` the S_DOWN optimum limit,
    the uniform distribution over all K types, is returned instead
    (zero-valued types trigger a warning since the finite-n optimum
    never plays them).
    """
    dv = as_values(d)
    if sdown_optimum:
        if np.any(dv == 0):
            warnings.warn(
                "uniform S_down-optimum limit includes zero-valued types",
                stacklevel=2,
            )
        return Strategy(np.full(dv.size, 1.0 / dv.size))
    if not (gamma > 0) or math.isinf(gamma):
        raise ValueError("gamma must be positive and finite")
    weights = dv ** (1.0 / gamma)
    return Strategy(weights / weights.sum())
