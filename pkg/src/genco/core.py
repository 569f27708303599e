"""Domain types, validation, and shared numeric conventions.

All types are immutable after construction and every operation in the
package is a pure function, so concurrent use is safe.  Probabilities
are 64-bit floats; the default absolute tolerance is 1e-9 everywhere a
simplex or ordering constraint is checked.  Rankings are 1-based
permutations (matching the instance JSON schema); use ``Ranking.idx``
for 0-based numpy indexing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .score import ScoreFunction, classify_score

__all__ = [
    "TOL",
    "ValidationError",
    "ValueVector",
    "Ranking",
    "Strategy",
    "GameInstance",
    "StrategyProfile",
    "InstanceReport",
    "validate_instance",
]

TOL = 1e-9


class ValidationError(ValueError):
    """An invariant on a domain object was violated."""


def as_values(d) -> np.ndarray:
    """Coerce a ValueVector or array-like of type values to a float array."""
    if isinstance(d, ValueVector):
        return d.arr
    return np.asarray(d, dtype=float)


def as_probs(p) -> np.ndarray:
    if isinstance(p, Strategy):
        return p.arr
    return np.asarray(p, dtype=float)


@dataclass(frozen=True)
class ValueVector:
    """Per-type nonnegative expected values d_k."""

    values: tuple[float, ...]

    def __init__(self, values: Sequence[float]):
        object.__setattr__(self, "values", tuple(float(v) for v in values))
        arr = np.asarray(self.values)
        if arr.size < 1:
            raise ValidationError("value vector needs at least one type")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("value vector entries must be finite")
        if np.any(arr < 0):
            k = int(np.argmax(arr < 0)) + 1
            raise ValidationError(f"negative value at index {k}")
        if not np.any(arr > 0):
            raise ValidationError("value vector needs at least one positive entry")

    @property
    def arr(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    @property
    def k(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Ranking:
    """A tool's ordering over types: a 1-based permutation of {1..K}."""

    order: tuple[int, ...]

    def __init__(self, order: Sequence[int]):
        object.__setattr__(self, "order", tuple(int(i) for i in order))
        k = len(self.order)
        if sorted(self.order) != list(range(1, k + 1)):
            raise ValidationError("ranking is not a permutation of 1..K")

    @staticmethod
    def identity(k: int) -> "Ranking":
        return Ranking(range(1, k + 1))

    @property
    def idx(self) -> np.ndarray:
        """0-based index array: position j holds the type ranked j-th."""
        return np.asarray(self.order, dtype=int) - 1

    @property
    def k(self) -> int:
        return len(self.order)

    def __len__(self) -> int:
        return len(self.order)


@dataclass(frozen=True)
class Strategy:
    """A distribution over the K types (a single player's play)."""

    probs: tuple[float, ...]

    def __init__(self, probs: Sequence[float]):
        object.__setattr__(self, "probs", tuple(float(v) for v in probs))
        arr = np.asarray(self.probs)
        if arr.size < 1:
            raise ValidationError("strategy needs at least one type")
        if np.any(arr < -TOL) or not np.all(np.isfinite(arr)):
            raise ValidationError("strategy entries must be nonnegative")
        if abs(arr.sum() - 1.0) > TOL:
            raise ValidationError(f"strategy sums to {arr.sum()!r}, not 1")

    @property
    def arr(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)

    def respects(self, ranking: Ranking, tol: float = TOL) -> bool:
        """True iff the entries are nonincreasing along the ranking."""
        ordered = self.arr[ranking.idx]
        return bool(np.all(np.diff(ordered) <= tol))

    def __len__(self) -> int:
        return len(self.probs)


@dataclass(frozen=True)
class GameInstance:
    """An n-player game: values d, score s, and one ranking per tool.

    Fields are stored as given (possibly invalid); run
    :func:`validate_instance` to get a report before solving.
    """

    n: int
    d: object
    s: ScoreFunction
    rankings: tuple = field(default=())

    def tools(self) -> tuple[Ranking, ...]:
        return tuple(
            r if isinstance(r, Ranking) else Ranking(r) for r in self.rankings
        )


@dataclass(frozen=True)
class StrategyProfile:
    """Per-player strategies (columns), each tagged with a tool index."""

    columns: tuple[Strategy, ...]
    tool_of: tuple[int, ...] = ()

    def __init__(self, columns: Sequence[Strategy], tool_of: Sequence[int] = ()):
        cols = tuple(
            c if isinstance(c, Strategy) else Strategy(c) for c in columns
        )
        object.__setattr__(self, "columns", cols)
        tools = tuple(int(t) for t in tool_of) if tool_of else (0,) * len(cols)
        if len(tools) != len(cols):
            raise ValidationError("tool_of length must match player count")
        object.__setattr__(self, "tool_of", tools)
        ks = {len(c) for c in cols}
        if len(ks) > 1:
            raise ValidationError("all strategies must share the same K")

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def k(self) -> int:
        return len(self.columns[0])

    def matrix(self) -> np.ndarray:
        """K x n matrix; column i is player i's distribution."""
        return np.column_stack([c.arr for c in self.columns])

    def replace(self, i: int, strategy: Strategy) -> "StrategyProfile":
        cols = list(self.columns)
        cols[i] = strategy
        return StrategyProfile(cols, self.tool_of)


@dataclass(frozen=True)
class InstanceReport:
    ok: bool
    violations: tuple[str, ...]


def validate_instance(g: GameInstance) -> InstanceReport:
    """Report-style check of all GameInstance invariants (never raises)."""
    violations: list[str] = []
    if not isinstance(g.n, int) or g.n < 1:
        violations.append(f"player count must be a positive integer, got {g.n!r}")

    d = np.asarray(as_values(g.d) if not isinstance(g.d, ValueVector) else g.d.arr)
    if d.size < 1:
        violations.append("value vector is empty")
    else:
        for k in np.flatnonzero(d < 0):
            violations.append(f"negative value at index {int(k) + 1}")
        if not np.all(np.isfinite(d)):
            violations.append("value vector has non-finite entries")
        if d.size and np.all(d <= 0):
            violations.append("value vector has no positive entry")

    try:
        upto = g.n if isinstance(g.n, int) and g.n >= 1 else None
        classify_score(g.s, upto=upto)
    except ValueError as exc:
        violations.append(str(exc))

    rankings = g.rankings or ()
    if not rankings:
        violations.append("at least one tool ranking is required")
    for j, r in enumerate(rankings, start=1):
        order = list(r.order) if isinstance(r, Ranking) else [int(x) for x in r]
        if sorted(order) != list(range(1, len(order) + 1)):
            violations.append(f"ranking {j} is not a permutation")
        elif d.size and len(order) != d.size:
            violations.append(f"ranking {j} has length {len(order)}, expected {d.size}")

    return InstanceReport(ok=not violations, violations=tuple(violations))
