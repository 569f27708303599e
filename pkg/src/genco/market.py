"""Multi-tool competition: partially symmetric equilibria and market shares.

Players choose one of up to two tools (rankings over the shared types)
and then a distribution obeying that ranking.  A pure partially
symmetric equilibrium is a split (m_1, m_2) plus one strategy per tool
such that neither a within-tool deviation nor a tool switch helps
anyone.  Candidates are produced by alternating per-group water-fills
against the other group's Poisson-binomial background and then audited
from scratch with exact prefix-vertex best responses; splits whose
iteration fails to converge or whose candidate fails the audit are
reported as "no equilibrium found", never as nonexistence proofs, so
the share sets are constructive lower bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Ranking, Strategy, StrategyProfile, as_values
from .dynamics import best_prefix_vertex, pb_pmf, _values_against
from .reduce import canonicalize, pava_reduce, uncanonicalize
from .score import ScoreFunction, _binom_pmf_matrix, score_eval

__all__ = [
    "MarketEquilibrium",
    "MarketShareReport",
    "group_eq_response",
    "find_partial_sym_equilibria",
    "market_share_bounds",
]


@dataclass(frozen=True)
class MarketEquilibrium:
    """A verified split: per-tool counts, strategies, and utilities.

    ``strategies[j]`` and ``utilities[j]`` are None when tool j is
    unused; strategies are in original type order.
    """

    counts: tuple[int, ...]
    strategies: tuple[Strategy | None, ...]
    utilities: tuple[float | None, ...]
    max_gain: float


@dataclass(frozen=True)
class MarketShareReport:
    """Constructive per-tool market-share sets and their extremes.

    ``complete`` is always False: the search certifies membership, not
    exhaustion, so these are bounds on the true share sets.
    """

    share_sets: tuple[frozenset[int], ...]
    share_min: tuple[int | None, ...]
    share_max: tuple[int | None, ...]
    complete: bool = False


def _mixed_share_weights(
    s: ScoreFunction, m: int, background: np.ndarray
) -> np.ndarray:
    """w[l] = E_Y[1/s(1 + l + Y)] for l = 0..m-1 against a count pmf."""
    out = np.zeros(m)
    for y, prob in enumerate(background):
        if prob == 0.0:
            continue
        out += prob * np.array(
            [1.0 / score_eval(s, 1 + ell + y) for ell in range(m)]
        )
    return out


def group_eq_response(
    m: int,
    ranking: Ranking,
    background,
    d,
    s: ScoreFunction,
    sum_tol: float = 1e-10,
) -> Strategy:
    """Water-fill a group of m identical players against a fixed background.

    ``d`` must already be in the ranking's order; ``background`` maps
    each type to the pmf of outside producers on it (None for none).
    The per-type map p -> d_k E[1/s(1 + X(m-1, p) + Y_k)] is
    nonincreasing in p, so the level c with unit total inverse is found
    by bisection.  With m = 1 the map is constant and the fill
    degenerates to a point mass on the best type.
    """
    dv = as_values(d)
    if len(ranking) != dv.size:
        raise ValueError("ranking and values disagree on K")
    if background is None:
        background = [None] * dv.size
    if len(background) != dv.size:
        raise ValueError("background needs one count pmf per type")
    if not np.any(dv > 0):
        raise ValueError("cannot fill a group with all-zero values")

    weights = np.zeros((dv.size, max(m, 1)))
    empty = np.array([1.0])
    for k in range(dv.size):
        pmf_y = empty if background[k] is None else np.asarray(background[k])
        weights[k] = _mixed_share_weights(s, max(m, 1), pmf_y)

    def fv(p: np.ndarray) -> np.ndarray:
        """f_k(p_k) = d_k E[1/s(1 + X(m-1, p_k) + Y_k)]."""
        if m == 1:
            return dv * weights[:, 0]
        pmf = _binom_pmf_matrix(m - 1, p)
        return dv * np.einsum("kl,kl->k", pmf, weights)

    top = fv(np.zeros(dv.size))
    bottom = fv(np.ones(dv.size))

    def fill(c: float) -> np.ndarray:
        p = np.zeros(dv.size)
        live = (top > c) & (dv > 0)
        p[live & (bottom >= c)] = 1.0
        interior = live & (bottom < c)
        if np.any(interior):
            lo = np.zeros(int(interior.sum()))
            hi = np.ones_like(lo)
            dsub = np.flatnonzero(interior)
            for _ in range(52):
                mid = 0.5 * (lo + hi)
                full = np.zeros(dv.size)
                full[dsub] = mid
                val = fv(full)[dsub]
                above = val > c
                lo = np.where(above, mid, lo)
                hi = np.where(above, hi, mid)
            p[dsub] = 0.5 * (lo + hi)
        return p

    hi_c = float(top.max())
    lo_c = 0.0
    for _ in range(200):
        c = 0.5 * (lo_c + hi_c)
        total = float(fill(c).sum())
        if abs(total - 1.0) <= sum_tol:
            break
        if total > 1.0:
            lo_c = c
        else:
            hi_c = c
    p = fill(c)
    if p.sum() <= 0:  # degenerate (m = 1): point mass on the best type
        p[int(np.argmax(top))] = 1.0
    p[p < 1e-12] = 0.0
    return Strategy(p / p.sum())


def _group_background(
    strategies: dict[int, np.ndarray], counts: dict[int, int], k: int
) -> list[np.ndarray | None]:
    """Per-type count pmf generated by the given groups (original order)."""
    out: list[np.ndarray | None] = []
    for t in range(k):
        probs = []
        for j, q in strategies.items():
            probs.extend([q[t]] * counts[j])
        out.append(pb_pmf(probs) if probs else None)
    return out


def _profile_of(split, strategies, tools) -> StrategyProfile:
    cols: list[Strategy] = []
    tool_of: list[int] = []
    for j, m_j in enumerate(split):
        for _ in range(m_j):
            cols.append(Strategy(strategies[j]))
            tool_of.append(j)
    return StrategyProfile(cols, tool_of)


def _audit(
    split: tuple[int, ...],
    strategies: dict[int, np.ndarray],
    tools: tuple[Ranking, ...],
    dv: np.ndarray,
    s: ScoreFunction,
) -> tuple[float, list[float | None]]:
    """Max deviation gain over within-tool and tool-switch best responses."""
    P = _profile_of(split, strategies, tools)
    mat = P.matrix()
    utilities: list[float | None] = [None] * len(tools)
    max_gain = -np.inf
    seen_tools = set()
    for i in range(P.n):
        j = P.tool_of[i]
        others = np.delete(mat, i, axis=1)
        v = _values_against(others, dv, s)
        current = float(mat[:, i] @ v)
        if j not in seen_tools:
            utilities[j] = current
            seen_tools.add(j)
        for ranking in tools:
            _, value = best_prefix_vertex(v, ranking)
            max_gain = max(max_gain, value - current)
    return float(max_gain), utilities


def find_partial_sym_equilibria(
    n: int,
    tools,
    d,
    s: ScoreFunction,
    eps: float = 1e-7,
    max_iter: int = 200,
    fp_tol: float = 1e-8,
) -> list[MarketEquilibrium]:
    """Enumerate verified pure partially symmetric equilibria.

    For every split (m_1, m_2) with m_1 + m_2 = n, groups alternate
    water-fill responses (on their PAVA-reduced canonicalized values)
    until a fixed point, and the candidate is kept only if it lies in
    both ranking polytopes and survives a from-scratch best-response
    audit covering within-tool and cross-tool deviations.
    """
    tools = tuple(t if isinstance(t, Ranking) else Ranking(t) for t in tools)
    if not 1 <= len(tools) <= 2:
        raise ValueError("pairwise market analysis supports 1 or 2 tools")
    dv = as_values(d)
    k = dv.size
    reduced = {
        j: pava_reduce(canonicalize(dv, r)).reduced for j, r in enumerate(tools)
    }

    results: list[MarketEquilibrium] = []
    splits: list[tuple[int, ...]]
    if len(tools) == 1:
        splits = [(n,)]
    else:
        splits = [(m1, n - m1) for m1 in range(n + 1)]

    def verify(split, strategies) -> MarketEquilibrium | None:
        active = [j for j, m_j in enumerate(split) if m_j > 0]
        if not all(
            Strategy(strategies[j]).respects(tools[j], tol=1e-7) for j in active
        ):
            return None
        gain, utilities = _audit(split, strategies, tools, dv, s)
        if gain > eps:
            return None
        return MarketEquilibrium(
            counts=split,
            strategies=tuple(
                Strategy(strategies[j]) if j in active else None
                for j in range(len(tools))
            ),
            utilities=tuple(utilities),
            max_gain=gain,
        )

    for split in splits:
        active = [j for j, m_j in enumerate(split) if m_j > 0]
        # Candidate 1: every group at its own tool's n-player symmetric
        # equilibrium (for identical tools this is already the joint one).
        strategies: dict[int, np.ndarray] = {}
        for j in active:
            init = group_eq_response(n, tools[j], None, reduced[j], s)
            strategies[j] = uncanonicalize(init.arr, tools[j])
        found = verify(split, strategies)
        if found is not None:
            results.append(found)
            continue

        if len(active) <= 1:
            continue
        # Candidate 2: fixed point of alternating group responses.
        converged = False
        for _ in range(max_iter):
            delta = 0.0
            for j in active:
                others = {jj: strategies[jj] for jj in active if jj != j}
                bg = _group_background(others, {jj: split[jj] for jj in others}, k)
                bg_canon = [bg[t] for t in tools[j].idx]
                resp = group_eq_response(split[j], tools[j], bg_canon, reduced[j], s)
                new = uncanonicalize(resp.arr, tools[j])
                delta = max(delta, float(np.abs(new - strategies[j]).max()))
                strategies[j] = new
            if delta < fp_tol:
                converged = True
                break
        if not converged:
            continue
        found = verify(split, strategies)
        if found is not None:
            results.append(found)
    return results


def market_share_bounds(
    equilibria, n_tools: int | None = None
) -> MarketShareReport:
    """Aggregate per-tool share sets over the verified equilibria."""
    eqs = list(equilibria)
    if n_tools is None:
        n_tools = len(eqs[0].counts) if eqs else 0
    sets = [set() for _ in range(n_tools)]
    for eq in eqs:
        for j, m_j in enumerate(eq.counts):
            sets[j].add(int(m_j))
    return MarketShareReport(
        share_sets=tuple(frozenset(s_) for s_ in sets),
        share_min=tuple(min(s_) if s_ else None for s_ in sets),
        share_max=tuple(max(s_) if s_ else None for s_ in sets),
        complete=False,
    )
