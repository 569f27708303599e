"""Ranking canonicalization and the pool-adjacent-violators reduction.

Solvers assume the identity ranking with weakly decreasing values.
``canonicalize`` reorders a value vector into a tool's ranking order;
``pava_reduce`` then pools every weakly increasing run into its mean,
which leaves equilibria, optima, utilities, and welfare unchanged while
making the monotonicity assumption hold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Ranking, as_values

__all__ = ["PavaResult", "canonicalize", "uncanonicalize", "pava_reduce"]


def canonicalize(d, ranking: Ranking) -> np.ndarray:
    """Reorder values by the ranking: output[j] = d[ranking_j]."""
    arr = as_values(d)
    if len(ranking) != arr.size:
        raise ValueError(f"ranking length {len(ranking)} != K = {arr.size}")
    return arr[ranking.idx]


def uncanonicalize(values, ranking: Ranking) -> np.ndarray:
    """Invert :func:`canonicalize`: scatter values back to type order."""
    arr = np.asarray(values, dtype=float)
    if len(ranking) != arr.size:
        raise ValueError(f"ranking length {len(ranking)} != K = {arr.size}")
    out = np.empty_like(arr)
    out[ranking.idx] = arr
    return out


@dataclass(frozen=True)
class PavaResult:
    """A weakly decreasing pooled vector plus its block structure.

    ``blocks`` are half-open index ranges [start, stop) of the pooled
    runs; ``mean_of_block[b]`` is the shared value on block b.  The sum
    of ``reduced`` equals the sum of the input exactly up to rounding.
    """

    reduced: np.ndarray
    blocks: tuple[tuple[int, int], ...]
    mean_of_block: tuple[float, ...]


def pava_reduce(d) -> PavaResult:
    """Pool weakly increasing runs into means until weakly decreasing.

    Stack-based, O(K).  Idempotent; K <= 1 passes through unchanged.
    """
    arr = np.asarray(as_values(d) if not isinstance(d, np.ndarray) else d, dtype=float)
    if arr.size == 0:
        return PavaResult(arr.copy(), (), ())

    # Each stack entry is (block_sum, block_len); merge while the new
    # block's mean exceeds its predecessor's.
    sums: list[float] = []
    lens: list[int] = []
    for v in arr:
        cur_sum, cur_len = float(v), 1
        while sums and cur_sum * lens[-1] > sums[-1] * cur_len:
            cur_sum += sums.pop()
            cur_len += lens.pop()
        sums.append(cur_sum)
        lens.append(cur_len)

    reduced = np.empty_like(arr)
    blocks: list[tuple[int, int]] = []
    means: list[float] = []
    start = 0
    for s_, l_ in zip(sums, lens):
        mean = s_ / l_
        reduced[start : start + l_] = mean
        blocks.append((start, start + l_))
        means.append(mean)
        start += l_
    return PavaResult(reduced, tuple(blocks), tuple(means))
