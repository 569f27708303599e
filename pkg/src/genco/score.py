"""Congestion score functions and their binomial expectation kernels.

A score function ``s`` maps a collision count ``x`` (how many players
produced the same content type) to a penalty divisor: a player on a type
of value ``d`` with ``x`` total producers earns ``d / s(x)``.  Admissible
score functions are increasing with ``s(1) = 1``, have discrete-convex
``1/s``, and fall into two classes depending on whether the total served
demand ``x/s(x)`` rises (S_UP) or falls (S_DOWN) with congestion.  The
power family ``x**gamma`` covers both: gamma <= 1 is S_UP, gamma >= 1 is
S_DOWN, and the identity (gamma = 1) is the only member of both.

Everything downstream reduces to two expectation kernels over a binomial
competitor count X(m, p):

    share(s, m, p)           = E[ 1 / s(1 + X(m, p)) ]
    served(s, n, p)          = E[ X(n, p) / s(X(n, p)) ] = n * p * share(s, n-1, p)
    marginal_served(s, m, p) = E[ dserved(1 + X(m, p)) ]   (S_UP only)

where ``dserved(x) = x/s(x) - (x-1)/s(x-1)`` is the discrete gain in
served demand from one extra producer.  All three are strictly monotone
in ``p``, and their numeric inverses drive the water-filling solvers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.special import gammaln

__all__ = [
    "ScoreClass",
    "ScoreFunction",
    "score_eval",
    "classify_score",
    "share",
    "inv_share",
    "served",
    "marginal_served",
    "inv_marginal_served",
]

# Bisection iteration count: halves the unit interval to ~2e-16.
_BISECT_ITERS = 52
_EPS = 1e-12


class ScoreClass(enum.Enum):
    """Which welfare regime a score function belongs to."""

    S_UP = "S_up"
    S_DOWN = "S_down"
    BOTH = "both"

    @property
    def is_up(self) -> bool:
        return self in (ScoreClass.S_UP, ScoreClass.BOTH)

    @property
    def is_down(self) -> bool:
        return self in (ScoreClass.S_DOWN, ScoreClass.BOTH)


@dataclass(frozen=True)
class ScoreFunction:
    """A congestion penalty, either ``x**gamma`` or an explicit table.

    ``gamma`` may be ``math.inf`` (winner-take-nothing-on-collision);
    table values give ``s(1..n_max)`` and are only valid up to ``n_max``.
    By convention ``s(0) = 1`` so empty types never divide by zero.
    """

    kind: str  # "power" | "table"
    gamma: float | None = None
    values: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind == "power":
            if self.gamma is None or not (self.gamma > 0):
                raise ValueError("power score needs gamma > 0 (inf allowed)")
        elif self.kind == "table":
            if not self.values:
                raise ValueError("table score needs values for s(1..n_max)")
        else:
            raise ValueError(f"unknown score kind {self.kind!r}")

    @staticmethod
    def power(gamma: float) -> "ScoreFunction":
        return ScoreFunction(kind="power", gamma=float(gamma))

    @staticmethod
    def table(values: Sequence[float]) -> "ScoreFunction":
        return ScoreFunction(kind="table", values=tuple(float(v) for v in values))

    @property
    def n_max(self) -> float:
        """Largest collision count this score can be evaluated at."""
        if self.kind == "table":
            return len(self.values)  # type: ignore[arg-type]
        return math.inf

    @property
    def is_infinite_power(self) -> bool:
        return self.kind == "power" and math.isinf(self.gamma)  # type: ignore[arg-type]

    def label(self) -> str:
        if self.kind == "power":
            g = self.gamma
            return "x^inf" if math.isinf(g) else f"x^{g:g}"
        return f"table[{len(self.values)}]"  # type: ignore[arg-type]


def score_eval(s: ScoreFunction, x: int) -> float:
    """Evaluate ``s(x)`` at an integer collision count.

    Returns 1 at x = 0 (convention) and +inf for the infinite power at
    x >= 2.  Table scores raise on x beyond their tabulated range.
    """
    if x < 0:
        raise ValueError("collision count must be nonnegative")
    if x <= 1:
        return 1.0
    if s.kind == "power":
        if math.isinf(s.gamma):  # type: ignore[arg-type]
            return math.inf
        return float(x) ** s.gamma  # type: ignore[operator]
    values = s.values  # type: ignore[assignment]
    if x > len(values):
        raise ValueError(f"table score defined up to {len(values)}, got x={x}")
    return values[x - 1]


def _check_weak(seq: np.ndarray, cmp: str, tol: float = 1e-12) -> bool:
    d = np.diff(seq)
    if cmp == "nondecreasing":
        return bool(np.all(d >= -tol))
    if cmp == "nonincreasing":
        return bool(np.all(d <= tol))
    raise ValueError(cmp)


def classify_score(s: ScoreFunction, upto: int | None = None) -> ScoreClass:
    """Classify ``s`` into S_UP, S_DOWN, or BOTH (identity only).

    Powers classify analytically; tables are checked numerically on
    their provided range.  Functions violating the admissibility
    conditions (increasing, 1/s discrete-convex, s(1)=1 with s > 1
    somewhere) are rejected with the violated condition named.
    """
    if s.kind == "power":
        g = s.gamma
        if g == 1.0:
            return ScoreClass.BOTH
        return ScoreClass.S_UP if g < 1.0 else ScoreClass.S_DOWN

    vals = np.asarray(s.values, dtype=float)
    n_max = len(vals)
    if upto is not None and upto > n_max:
        raise ValueError(f"table score defined up to {n_max}, need {upto}")
    if abs(vals[0] - 1.0) > 1e-12:
        raise ValueError("inadmissible score: s(1) must equal 1 (D.3)")
    if n_max > 1 and not np.all(np.diff(vals) > 0):
        raise ValueError("inadmissible score: s must be strictly increasing (D.1)")
    if not np.any(vals > 1.0 + 1e-12):
        raise ValueError("inadmissible score: s(x) > 1 must hold somewhere (D.3)")
    inv = 1.0 / vals
    if n_max > 2 and not _check_weak(np.diff(inv), "nondecreasing"):
        raise ValueError("inadmissible score: 1/s must be discrete-convex (D.2)")

    x = np.arange(1, n_max + 1, dtype=float)
    ratio = x / vals
    up = _check_weak(ratio, "nondecreasing") and (
        n_max <= 2 or _check_weak(np.diff(ratio), "nonincreasing")
    )
    down = _check_weak(ratio, "nonincreasing")
    if up and down:
        return ScoreClass.BOTH
    if up:
        return ScoreClass.S_UP
    if down:
        return ScoreClass.S_DOWN
    raise ValueError(
        "inadmissible score: x/s(x) neither increasing-concave nor decreasing (D.4)"
    )


# ---------------------------------------------------------------------------
# Binomial expectation machinery.


@lru_cache(maxsize=1024)
def _log_binom_coeffs(m: int) -> tuple[np.ndarray, np.ndarray]:
    ell = np.arange(m + 1, dtype=float)
    log_c = gammaln(m + 1) - gammaln(ell + 1) - gammaln(m - ell + 1)
    return ell, log_c


def _binom_pmf_matrix(m: int, p: np.ndarray) -> np.ndarray:
    """Pmf of Binomial(m, p_i) for each p_i: shape (len(p), m + 1).

    Log-space evaluation keeps this stable for m in the thousands;
    p = 0 and p = 1 rows are exact point masses.
    """
    ell, log_c = _log_binom_coeffs(m)
    p = np.asarray(p, dtype=float)
    out = np.zeros((p.size, m + 1))
    interior = (p > 0.0) & (p < 1.0)
    if np.any(interior):
        pi = p[interior, None]
        out[interior] = np.exp(log_c + ell * np.log(pi) + (m - ell) * np.log1p(-pi))
    out[p <= 0.0, 0] = 1.0
    out[p >= 1.0, m] = 1.0
    return out


@lru_cache(maxsize=4096)
def _share_weights(s: ScoreFunction, m: int) -> np.ndarray:
    """Weights 1/s(1+ell) for ell = 0..m."""
    return np.array([1.0 / score_eval(s, ell + 1) for ell in range(m + 1)])


def _share_vec(s: ScoreFunction, m: int, p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if m == 0:
        return np.ones_like(p)
    if s.kind == "power":
        g = s.gamma
        if math.isinf(g):
            return (1.0 - p) ** m
        if g == 1.0:
            # Closed form: (1 - (1-p)^(m+1)) / ((m+1) p), -> 1 as p -> 0.
            # expm1/log1p avoids the cancellation at tiny p.
            out = np.ones_like(p)
            pos = p > 0
            with np.errstate(divide="ignore"):
                out[pos] = -np.expm1((m + 1) * np.log1p(-p[pos])) / ((m + 1) * p[pos])
            return out
    return _binom_pmf_matrix(m, p) @ _share_weights(s, m)


def share(s: ScoreFunction, m: int, p) -> float | np.ndarray:
    """Expected utility share against ``m`` rivals playing ``p``.

    Exactly ``sum_l C(m,l) p^l (1-p)^(m-l) / s(1+l)``; strictly
    decreasing in p with share(m, 0) = 1.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    scalar = np.isscalar(p)
    out = _share_vec(s, m, np.atleast_1d(np.asarray(p, dtype=float)))
    return float(out[0]) if scalar else out


def _bisect_decreasing(eval_interior, y: np.ndarray, floor: float) -> np.ndarray:
    """Solve eval(p) = y per coordinate for a strictly decreasing map on
    [0, 1] with eval(0) = 1 and eval(1) = floor; clamps outside range.

    ``eval_interior`` is only called on p strictly inside (0, 1).
    """
    lo = np.zeros_like(y)
    hi = np.ones_like(y)
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        too_high = eval_interior(mid) > y
        lo = np.where(too_high, mid, lo)
        hi = np.where(too_high, hi, mid)
    out = 0.5 * (lo + hi)
    out[y >= 1.0] = 0.0
    out[y <= floor] = 1.0
    return out


def _fused_kernel(s: ScoreFunction, m: int, weights: np.ndarray):
    """Return p -> E[w(X(m, p))] for strictly interior p, minimal overhead."""
    ell, log_c = _log_binom_coeffs(m)
    if s.kind == "power" and s.gamma == 1.0 and weights is None:
        return lambda p: -np.expm1((m + 1) * np.log1p(-p)) / ((m + 1) * p)

    def kernel(p: np.ndarray) -> np.ndarray:
        pmf = np.exp(log_c + ell * np.log(p[:, None]) + (m - ell) * np.log1p(-p[:, None]))
        return pmf @ weights

    return kernel


@lru_cache(maxsize=4096)
def _share_floor(s: ScoreFunction, m: int) -> float:
    return float(_share_vec(s, m, np.array([1.0]))[0])


@lru_cache(maxsize=4096)
def _marginal_floor(s: ScoreFunction, m: int) -> float:
    return float(_marginal_served_vec(s, m, np.array([1.0]))[0])


def _inv_share_vec(s: ScoreFunction, m: int, y: np.ndarray) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if s.is_infinite_power:
        out = np.clip(1.0 - np.maximum(y, 0.0) ** (1.0 / m), 0.0, 1.0)
        out[y >= 1.0] = 0.0
        return out
    if m == 1:
        # share(1, p) = 1 - p (1 - 1/s(2)) is linear in p.
        out = np.clip((1.0 - y) / (1.0 - 1.0 / score_eval(s, 2)), 0.0, 1.0)
        out[y >= 1.0] = 0.0
        return out
    if s.kind == "power" and s.gamma == 1.0:
        kernel = _fused_kernel(s, m, None)
    else:
        kernel = _fused_kernel(s, m, _share_weights(s, m))
    return _bisect_decreasing(kernel, y, _share_floor(s, m))


def inv_share(s: ScoreFunction, m: int, y) -> float | np.ndarray:
    """Inverse of ``share(s, m, .)``: the p with share(m, p) = y.

    Clamps to 0 for y >= 1 and to 1 for y <= share(m, 1); bisected to
    ~1e-15 in between (m >= 1 required).
    """
    if m < 1:
        raise ValueError("inv_share needs m >= 1")
    scalar = np.isscalar(y)
    out = _inv_share_vec(s, m, np.atleast_1d(np.asarray(y, dtype=float)))
    return float(out[0]) if scalar else out


def served(s: ScoreFunction, n: int, p) -> float | np.ndarray:
    """Expected demand served per unit value: E[X(n,p)/s(X(n,p))].

    Equals ``n * p * share(s, n-1, p)`` exactly.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    p_arr = np.asarray(p, dtype=float)
    out = n * p_arr * _share_vec(s, n - 1, np.atleast_1d(p_arr))
    return float(out[0]) if np.isscalar(p) else out


@lru_cache(maxsize=4096)
def _dserved_weights(s: ScoreFunction, m: int) -> np.ndarray:
    """dserved(1+ell) = (1+ell)/s(1+ell) - ell/s(ell) for ell = 0..m."""
    xs = np.arange(m + 2, dtype=float)
    if s.kind == "power" and not math.isinf(s.gamma):  # type: ignore[arg-type]
        ratio = xs ** (1.0 - s.gamma)  # type: ignore[operator]
        ratio[0] = 0.0
    else:
        ratio = np.array([x / score_eval(s, int(x)) if x > 0 else 0.0 for x in xs])
    return ratio[1:] - ratio[:-1]


def _marginal_served_vec(s: ScoreFunction, m: int, p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if m == 0:
        return np.ones_like(p)
    if s.kind == "power" and s.gamma == 1.0:
        return (1.0 - p) ** m
    return _binom_pmf_matrix(m, p) @ _dserved_weights(s, m)


def _require_up(s: ScoreFunction) -> None:
    if not classify_score(s).is_up:
        raise ValueError(
            "marginal served-demand kernel is defined for S_up scores only; "
            "the S_down optimum uses the closed form (1-p)^(n-1)"
        )


def marginal_served(s: ScoreFunction, m: int, p) -> float | np.ndarray:
    """Marginal welfare kernel: E[dserved(1 + X(m, p))] for s in S_UP.

    This is d/dp of ``p * share(s, m, p)``, i.e. (1/n) dW/dp_k at a
    symmetric profile with n = m + 1; strictly decreasing in p with
    value 1 at p = 0.
    """
    _require_up(s)
    scalar = np.isscalar(p)
    out = _marginal_served_vec(s, m, np.atleast_1d(np.asarray(p, dtype=float)))
    return float(out[0]) if scalar else out


def _inv_marginal_served_vec(s: ScoreFunction, m: int, y: np.ndarray) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if s.kind == "power" and s.gamma == 1.0:
        out = np.clip(1.0 - np.maximum(y, 0.0) ** (1.0 / m), 0.0, 1.0)
        out[y >= 1.0] = 0.0
        return out
    if m == 1:
        # marginal(1, p) = 1 - p (2 - 2/s(2)) is linear in p.
        out = np.clip((1.0 - y) / (2.0 - 2.0 / score_eval(s, 2)), 0.0, 1.0)
        out[y >= 1.0] = 0.0
        return out
    kernel = _fused_kernel(s, m, _dserved_weights(s, m))
    return _bisect_decreasing(kernel, y, _marginal_floor(s, m))


def inv_marginal_served(s: ScoreFunction, m: int, y) -> float | np.ndarray:
    """Inverse of ``marginal_served(s, m, .)`` with the same clamping."""
    _require_up(s)
    if m < 1:
        raise ValueError("inv_marginal_served needs m >= 1")
    scalar = np.isscalar(y)
    out = _inv_marginal_served_vec(s, m, np.atleast_1d(np.asarray(y, dtype=float)))
    return float(out[0]) if scalar else out
