"""Unbiased game-value estimation from empirical answer samples.

A SampleSet holds the answers drawn for one (tool, temperature,
instance) cell together with their validity flags, which play the role
of the type values.  Simulated competitors must draw *without
replacement* from the sample (with replacement, two players could both
"produce" an answer observed once, biasing utilities downward), and the
minimum-variance unbiased estimator of the n-player utility is the
U-statistic: average the game value over all ordered without-
replacement draws.  It evaluates in closed form through hypergeometric
collision counts,

    Uhat = sum_k (a_k d_k / S) sum_l [1/s(1+l)] * H(l; a_k, S, n-1),

where H is the probability that l of the n-1 competitors also drew
answer k.  Cross-sample variants cover deviators drawing from a
different cell; variance is reported through the conservative
sqrt(1/(S*R)) bound.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.stats import hypergeom

from .score import ScoreFunction, classify_score
from .dynamics import _share_of_counts

__all__ = [
    "SampleSet",
    "UtilityGrid",
    "GridSolution",
    "load_samples",
    "ustat_self",
    "ustat_cross",
    "welfare_hat",
    "se_bound",
    "grid_solution",
    "pairwise_market_empirical",
]

_IDENTITY = ScoreFunction.power(1.0)


@dataclass(frozen=True)
class SampleSet:
    """Observed answers for one (tool, temperature, instance) cell.

    ``tau`` is kept as the exact string from the input file; grid
    points are matched by string equality, never by float comparison.
    """

    tool: str
    tau: str
    instance: str
    counts: dict[str, int]
    validity: dict[str, int]

    @property
    def size(self) -> int:
        return sum(self.counts.values())

    @property
    def cell(self) -> tuple[str, str, str]:
        return (self.tool, self.tau, self.instance)

    def mean_validity(self) -> float:
        s = self.size
        return sum(a * self.validity[k] for k, a in self.counts.items()) / s


def _normalize_answer(answer: str) -> str:
    return answer.strip().lower()


def load_samples(path) -> list[SampleSet]:
    """Parse the sample CSV into one SampleSet per cell.

    Schema: header row with ``instance_id, tool, tau, answer, valid``
    (valid in {0,1}); an optional ``count`` column pre-aggregates rows.
    Raises with first-bad-line numbers on malformed rows, non-binary
    validity, or an answer marked both valid and invalid in one cell.
    """
    cells: dict[tuple[str, str, str], dict[str, int]] = {}
    valid_of: dict[tuple[str, str, str], dict[str, int]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            warnings.warn(f"empty sample file: {path}", stacklevel=2)
            return []
        required = {"instance_id", "tool", "tau", "answer", "valid"}
        missing = required - set(reader.fieldnames)
        if missing:
            raise ValueError(f"sample file missing columns: {sorted(missing)}")
        has_count = "count" in reader.fieldnames
        n_rows = 0
        for lineno, row in enumerate(reader, start=2):
            n_rows += 1
            if any(row.get(c) is None for c in required):
                raise ValueError(f"line {lineno}: malformed row (missing fields)")
            valid_raw = row["valid"].strip()
            if valid_raw not in ("0", "1"):
                raise ValueError(
                    f"line {lineno}: validity must be 0 or 1, got {valid_raw!r}"
                )
            try:
                count = int(row["count"]) if has_count and row.get("count") else 1
            except ValueError as exc:
                raise ValueError(f"line {lineno}: bad count {row['count']!r}") from exc
            if count < 1:
                raise ValueError(f"line {lineno}: count must be >= 1")
            key = (row["tool"].strip(), row["tau"].strip(), row["instance_id"].strip())
            answer = _normalize_answer(row["answer"])
            cells.setdefault(key, {})
            valid_of.setdefault(key, {})
            prev = valid_of[key].get(answer)
            if prev is not None and prev != int(valid_raw):
                raise ValueError(
                    f"line {lineno}: answer {answer!r} marked both valid and "
                    f"invalid in cell {key}"
                )
            valid_of[key][answer] = int(valid_raw)
            cells[key][answer] = cells[key].get(answer, 0) + count
    if n_rows == 0:
        warnings.warn(f"sample file has no data rows: {path}", stacklevel=2)
        return []
    out = [
        SampleSet(tool=t, tau=tau, instance=i, counts=cells[key], validity=valid_of[key])
        for key in sorted(cells, key=lambda k: (k[0], float(k[1]), k[2]))
        for (t, tau, i) in [key]
    ]
    return out


def _competition_pmf(
    dev: SampleSet,
    keys: Sequence[str],
    groups: Sequence[tuple[SampleSet, int]],
) -> np.ndarray:
    """Pmf of the deviator's per-type competitor count, keys x (n_bg + 1).

    A group drawing from the deviator's own cell shares the sample, so
    its hypergeometric is conditioned on the deviator's draw
    (a_k - 1 successes out of S - 1); other groups use their own
    counts.  Groups are independent, so the pmfs convolve.
    """
    n_keys = len(keys)
    total = sum(m for _, m in groups)
    out = np.zeros((n_keys, total + 1))
    out[:, 0] = 1.0
    done = 0
    for cell, m in groups:
        if m == 0:
            continue
        shared = cell.cell == dev.cell
        a = np.array([cell.counts.get(k, 0) for k in keys], dtype=int)
        if shared:
            a = a - np.array([1 if dev.counts.get(k, 0) else 0 for k in keys])
            pop = cell.size - 1
        else:
            pop = cell.size
        if m > pop:
            raise ValueError(
                f"group on cell {cell.cell} draws {m} from only {pop} samples"
            )
        ell = np.arange(m + 1)
        pmf = hypergeom.pmf(ell[None, :], pop, a[:, None], m)
        new = np.zeros((n_keys, done + m + 1))
        for row in range(n_keys):
            new[row] = np.convolve(out[row, : done + 1], pmf[row])
        out[:, : done + m + 1] = new
        out[:, done + m + 1 :] = 0.0
        done += m
    return out


def _merge_groups(
    groups: Sequence[tuple[SampleSet, int]],
) -> list[tuple[SampleSet, int]]:
    """Coalesce groups that draw from the same cell: their draws are
    jointly without replacement, not independent."""
    merged: dict[tuple[str, str, str], tuple[SampleSet, int]] = {}
    for cell, m in groups:
        if m == 0:
            continue
        if cell.cell in merged:
            prev_cell, prev_m = merged[cell.cell]
            merged[cell.cell] = (prev_cell, prev_m + m)
        else:
            merged[cell.cell] = (cell, m)
    return list(merged.values())


def _member_utility(
    dev: SampleSet, groups: Sequence[tuple[SampleSet, int]], s: ScoreFunction
) -> float:
    """E[value/s(collisions)] for a player drawing from ``dev`` against
    groups drawing without replacement from their own cells."""
    groups = _merge_groups(groups)
    keys = [k for k, v in dev.validity.items() if v and dev.counts.get(k, 0)]
    if not keys:
        return 0.0
    n_bg = sum(m for _, m in groups)
    weights = _share_of_counts(s, n_bg)
    pmf = _competition_pmf(dev, keys, groups)
    a = np.array([dev.counts[k] for k in keys], dtype=float)
    return float(np.sum(a / dev.size * (pmf @ weights)))


def ustat_self(sample: SampleSet, n: int, s: ScoreFunction) -> float:
    """Unbiased n-player utility estimate from one shared sample."""
    if n > sample.size:
        raise ValueError(f"n={n} exceeds sample size S={sample.size}")
    if n < 1:
        raise ValueError("n must be >= 1")
    return _member_utility(sample, [(sample, n - 1)], s)


def ustat_cross(
    dev: SampleSet,
    groups: Sequence[tuple[SampleSet, int]],
    s: ScoreFunction,
) -> float:
    """Deviator utility against competitor groups on disjoint samples.

    ``groups`` pair each background cell with its player count; counts
    must not exceed the cell's sample size.
    """
    for cell, m in groups:
        if m > cell.size:
            raise ValueError(
                f"group count {m} exceeds sample size {cell.size} for {cell.cell}"
            )
        if m < 0:
            raise ValueError("group counts must be nonnegative")
    return _member_utility(dev, list(groups), s)


def welfare_hat(sample: SampleSet, n: int, s: ScoreFunction) -> float:
    """Unbiased welfare estimate: n * Uhat, with the identity score
    substituted for S_DOWN scores (coverage welfare)."""
    if classify_score(s).is_down:
        return n * ustat_self(sample, n, _IDENTITY)
    return n * ustat_self(sample, n, s)


def se_bound(sample_size: int, repetitions: int) -> float:
    """Conservative standard error of an R-instance average of
    U-statistics, from Var(Uhat) <= 1/S."""
    if sample_size < 1 or repetitions < 1:
        raise ValueError("sample size and repetitions must be >= 1")
    return float(np.sqrt(1.0 / (sample_size * repetitions)))


@dataclass(frozen=True)
class UtilityGrid:
    """Instance-averaged utilities over a temperature grid.

    ``U[dev, bg]`` is the utility of one player at grid[dev] when the
    other n-1 sit at grid[bg]; W is welfare at symmetric play and
    ``se`` the per-point standard-error bound.
    """

    grid: tuple[str, ...]
    U: np.ndarray
    W: np.ndarray
    se: np.ndarray
    n: int
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class GridSolution:
    grid: UtilityGrid
    tau_eq: tuple[str, ...]
    tau_opt: str
    epsilon: float


def _group_cells(cells: Iterable[SampleSet]) -> dict[str, dict[str, SampleSet]]:
    """tau -> instance -> cell, validating one tool and consistent grids."""
    cells = list(cells)
    if not cells:
        raise ValueError("no sample cells given")
    tools = {c.tool for c in cells}
    if len(tools) != 1:
        raise ValueError(f"cells span multiple tools: {sorted(tools)}")
    by_tau: dict[str, dict[str, SampleSet]] = {}
    for c in cells:
        by_tau.setdefault(c.tau, {})
        if c.instance in by_tau[c.tau]:
            raise ValueError(f"duplicate cell for {c.cell}")
        by_tau[c.tau][c.instance] = c
    instance_sets = {tau: frozenset(m) for tau, m in by_tau.items()}
    if len(set(instance_sets.values())) != 1:
        raise ValueError("inconsistent instance sets across the temperature grid")
    return by_tau


def grid_solution(
    cells: Iterable[SampleSet],
    n: int,
    s: ScoreFunction,
    eps: float | None = None,
) -> GridSolution:
    """Equilibrium and optimal temperatures for one tool on a grid.

    Utilities and welfare are unweighted means across instances.  The
    optimum is the welfare argmax; equilibria are the grid points no
    single deviation to another grid point beats by more than eps
    (default: twice the standard-error bound).  The equilibrium set may
    be empty.
    """
    by_tau = _group_cells(cells)
    grid = tuple(sorted(by_tau, key=float))
    instances = sorted(next(iter(by_tau.values())))
    r = len(instances)
    t = len(grid)

    u = np.zeros((t, t))
    w = np.zeros(t)
    se = np.zeros(t)
    for b, tau_bg in enumerate(grid):
        bg_cells = by_tau[tau_bg]
        w[b] = np.mean([welfare_hat(bg_cells[i], n, s) for i in instances])
        se[b] = np.sqrt(sum(1.0 / bg_cells[i].size for i in instances)) / r
        for a, tau_dev in enumerate(grid):
            if a == b:
                u[a, b] = np.mean(
                    [ustat_self(bg_cells[i], n, s) for i in instances]
                )
            else:
                u[a, b] = np.mean(
                    [
                        ustat_cross(
                            by_tau[tau_dev][i], [(bg_cells[i], n - 1)], s
                        )
                        for i in instances
                    ]
                )

    epsilon = float(eps) if eps is not None else 2.0 * float(se.mean())
    tau_opt = grid[int(np.argmax(w))]
    tau_eq = tuple(
        grid[b] for b in range(t) if np.all(u[:, b] <= u[b, b] + epsilon)
    )
    ugrid = UtilityGrid(
        grid=grid,
        U=u,
        W=w,
        se=se,
        n=n,
        metadata={
            "variance": "conservative sqrt(1/(S*R)) bound; plug-in variance not estimated",
            "instances": r,
        },
    )
    return GridSolution(grid=ugrid, tau_eq=tau_eq, tau_opt=tau_opt, epsilon=epsilon)


def _mean_member_utility(
    by_tau: dict[str, dict[str, SampleSet]],
    instances: Sequence[str],
    dev_tau: str,
    groups_spec: Sequence[tuple[dict[str, dict[str, SampleSet]], str, int]],
    s: ScoreFunction,
) -> float:
    vals = []
    for i in instances:
        dev = by_tau[dev_tau][i]
        groups = [
            (table[tau][i], m) for table, tau, m in groups_spec if m > 0
        ]
        vals.append(_member_utility(dev, groups, s))
    return float(np.mean(vals))


def pairwise_market_empirical(
    cells_a: Iterable[SampleSet],
    cells_b: Iterable[SampleSet],
    n: int,
    s: ScoreFunction,
    eps: float | None = None,
) -> list[tuple[int, str | None, int, str | None]]:
    """Verified empirical market splits between two tools.

    Brute-forces every split (m_1, m_2) and temperature pair, keeping
    candidates where no player can gain more than eps by changing
    temperature and/or tool (deviations joining an existing group share
    its sample).  Unused tools get temperature None.
    """
    tables = [_group_cells(cells_a), _group_cells(cells_b)]
    grids = [tuple(sorted(t_, key=float)) for t_ in tables]
    instances = sorted(next(iter(tables[0].values())))
    if instances != sorted(next(iter(tables[1].values()))):
        raise ValueError("the two tools cover different instance sets")
    r = len(instances)
    if eps is None:
        s_min = min(
            c.size for table in tables for tau in table for c in table[tau].values()
        )
        eps = 2.0 * se_bound(s_min, r)

    # All deviation targets: (tool index, tau).
    targets = [(t_i, tau) for t_i in (0, 1) for tau in grids[t_i]]

    def candidate_ok(split, taus) -> bool:
        for j in (0, 1):
            if split[j] == 0:
                continue
            own_groups = [
                (tables[g], taus[g], split[g] - (1 if g == j else 0))
                for g in (0, 1)
                if split[g] > 0
            ]
            current = _mean_member_utility(tables[j], instances, taus[j], own_groups, s)
            for t_i, tau in targets:
                if (t_i, tau) == (j, taus[j]):
                    continue
                dev_util = _mean_member_utility(
                    tables[t_i], instances, tau, own_groups, s
                )
                if dev_util > current + eps:
                    return False
        return True

    results: list[tuple[int, str | None, int, str | None]] = []
    for m1 in range(n + 1):
        m2 = n - m1
        tau1s: Sequence[str | None] = grids[0] if m1 > 0 else (None,)
        tau2s: Sequence[str | None] = grids[1] if m2 > 0 else (None,)
        for tau1 in tau1s:
            for tau2 in tau2s:
                taus = (tau1 or grids[0][0], tau2 or grids[1][0])
                if candidate_ok((m1, m2), taus):
                    results.append((m1, tau1, m2, tau2))
    return results
