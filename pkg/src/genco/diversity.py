"""Majorization comparisons and scalar diversity measures.

``p`` majorizes ``q`` when every prefix sum of p dominates that of q;
read it as "p is less diverse than q".  Inputs are expected already
sorted nonincreasing (solver outputs are), so the check doubles as a
sanity check on the ranking-polytope invariant.  Shannon entropy is
Schur-concave and the Gini coefficient Schur-convex, so majorization
implies lower entropy and higher Gini.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import as_probs

__all__ = ["MajorizationVerdict", "majorizes", "shannon_entropy", "gini"]


@dataclass(frozen=True)
class MajorizationVerdict:
    majorizes: bool
    worst_prefix_gap: float
    at_prefix: int  # 1-based index of the smallest prefix-sum gap


def majorizes(p, q, tol: float = 1e-9) -> MajorizationVerdict:
    """Check all K prefix-sum dominance conditions of p over q."""
    pv = as_probs(p)
    qv = as_probs(q)
    if pv.size != qv.size:
        raise ValueError("majorization needs equal K")
    gaps = np.cumsum(pv) - np.cumsum(qv)
    worst = int(np.argmin(gaps))
    return MajorizationVerdict(
        majorizes=bool(gaps[worst] >= -tol),
        worst_prefix_gap=float(gaps[worst]),
        at_prefix=worst + 1,
    )


def shannon_entropy(p) -> float:
    """Entropy in nats, with 0 log 0 = 0."""
    pv = as_probs(p)
    pos = pv > 0
    return float(-np.sum(pv[pos] * np.log(pv[pos])))


def gini(p) -> float:
    """Mean absolute difference Gini: 0 at uniform, (K-1)/K at a point mass."""
    pv = as_probs(p)
    return float(np.abs(pv[:, None] - pv[None, :]).sum() / (2.0 * pv.size))
