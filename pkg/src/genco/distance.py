"""Ranking-stability distances via L1 isotonic regression.

The weighted inversion WI(p, p') is the least total-variation edit that
makes p' respect p's ranking: reorder p' by p's (stable, descending)
order, fit the closest nonincreasing sequence under L1 loss, and take
half the loss.  The fit imposes monotonicity only, not the simplex
constraint, matching the computational recipe this quantity is defined
by; the fitted sequence may therefore sum away from 1 (recorded in the
matrix metadata).  WI_avg symmetrizes, and the distance matrix averages
WI_avg over instances for every (tool, variant) pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .core import as_probs
from .empirical import SampleSet

__all__ = [
    "DistanceMatrix",
    "isotonic_l1_fit",
    "wi",
    "wi_avg",
    "distance_matrix",
    "distributions_from_samples",
]


def _block_median(sorted_vals: list[float]) -> float:
    m = len(sorted_vals)
    half = m // 2
    if m % 2:
        return sorted_vals[half]
    return 0.5 * (sorted_vals[half - 1] + sorted_vals[half])


def isotonic_l1_fit(target) -> np.ndarray:
    """Closest nonincreasing sequence under L1 loss.

    Pool-adjacent-violators with median pooling: blocks keep sorted
    multisets and merge while a later block's median exceeds an earlier
    one's.  L1 optima are generally non-unique; the pooled-median
    (midpoint for even blocks) representative is returned.
    """
    arr = np.asarray(target, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("isotonic fit needs finite targets")
    if arr.size <= 1:
        return arr.copy()

    blocks: list[list[float]] = []  # sorted member values
    sizes: list[int] = []
    medians: list[float] = []
    for v in arr:
        cur = [float(v)]
        cur_med = float(v)
        while medians and cur_med > medians[-1] + 0.0:
            prev = blocks.pop()
            sizes.pop()
            medians.pop()
            cur = sorted(prev + cur)
            cur_med = _block_median(cur)
        blocks.append(cur)
        sizes.append(len(cur))
        medians.append(cur_med)

    out = np.empty_like(arr)
    pos = 0
    for size, med in zip(sizes, medians):
        out[pos : pos + size] = med
        pos += size
    return out


def wi(p, p_prime) -> float:
    """Weighted inversion: min over q sharing p's ranking of TV(q, p').

    Ties in p impose no order between the tied positions; the stable
    sort keeps their original relative order, and the pooled L1 fit is
    tie-invariant.
    """
    pv = as_probs(p)
    qv = as_probs(p_prime)
    if pv.size != qv.size:
        raise ValueError("weighted inversion needs equal K")
    order = np.argsort(-pv, kind="stable")
    reordered = qv[order]
    fit = isotonic_l1_fit(reordered)
    return float(np.abs(fit - reordered).sum() / 2.0)


def wi_avg(p, p_prime) -> float:
    """Symmetrized weighted inversion: (WI(p,p') + WI(p',p)) / 2."""
    return 0.5 * (wi(p, p_prime) + wi(p_prime, p))


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric zero-diagonal WI_avg distances between (tool, variant)
    pairs, averaged over instances."""

    labels: tuple[tuple[str, str], ...]
    D: np.ndarray
    n_instances: int
    metadata: dict = field(default_factory=dict)


def distance_matrix(
    dists: Mapping[tuple[str, str, str], Sequence[float]],
) -> DistanceMatrix:
    """Assemble the pairwise distance matrix from per-instance
    distributions keyed by (tool, variant, instance).

    Every (tool, variant) must be present for every instance; missing
    cells are named explicitly.
    """
    labels = sorted({(t, v) for (t, v, _i) in dists})
    instances = sorted({i for (_t, _v, i) in dists})
    if not labels or not instances:
        raise ValueError("no distributions given")
    missing = [
        (t, v, i) for (t, v) in labels for i in instances if (t, v, i) not in dists
    ]
    if missing:
        raise ValueError(f"missing distribution cells: {missing[:5]}")

    m = len(labels)
    d = np.zeros((m, m))
    for a in range(m):
        for b in range(a + 1, m):
            ta, va = labels[a]
            tb, vb = labels[b]
            vals = [
                wi_avg(dists[(ta, va, i)], dists[(tb, vb, i)]) for i in instances
            ]
            d[a, b] = d[b, a] = float(np.mean(vals))
    return DistanceMatrix(
        labels=tuple(labels),
        D=d,
        n_instances=len(instances),
        metadata={
            "note": "WI's L1 fit imposes monotonicity only; fitted vectors "
            "may leave the probability simplex"
        },
    )


def distributions_from_samples(
    cells: Sequence[SampleSet], min_count: int = 10
) -> dict[tuple[str, str, str], np.ndarray]:
    """Per-cell distributions over each instance's shared response set.

    The response set of an instance keeps valid answers sampled at
    least ``min_count`` times across all of that instance's cells; each
    cell's counts are restricted to it and renormalized.  Cells with no
    mass on the response set are named in the error.
    """
    by_instance: dict[str, list[SampleSet]] = {}
    for c in cells:
        by_instance.setdefault(c.instance, []).append(c)

    out: dict[tuple[str, str, str], np.ndarray] = {}
    for instance, group in sorted(by_instance.items()):
        totals: dict[str, int] = {}
        for c in group:
            for k, a in c.counts.items():
                if c.validity.get(k, 0):
                    totals[k] = totals.get(k, 0) + a
        responses = sorted(k for k, a in totals.items() if a >= min_count)
        if not responses:
            raise ValueError(
                f"instance {instance!r}: no valid answer reaches min_count={min_count}"
            )
        for c in group:
            vec = np.array([c.counts.get(k, 0) for k in responses], dtype=float)
            if vec.sum() <= 0:
                raise ValueError(
                    f"cell {(c.tool, c.tau, instance)} has no mass on the "
                    f"shared response set"
                )
            out[(c.tool, c.tau, instance)] = vec / vec.sum()
    return out
