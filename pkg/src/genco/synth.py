"""Deterministic synthetic sample corpus for end-to-end pipeline runs.

Mimics temperature-steered generators without any model calls: each
(tool, instance) pair has a ranked universe of answers whose validity
thins out down the ranking, and the sampling distribution at
temperature tau is a softmax over ranks with spread increasing in tau.
Low temperatures concentrate on the few top (mostly valid) answers,
so collisions are costly under competition; high temperatures spread
over the tail and trade validity for uniqueness.  That makes the
theoretical shapes (equilibrium temperature rising with n, optimum at
least as hot as equilibrium) recoverable from the estimators alone.
"""

from __future__ import annotations

import csv

import numpy as np

__all__ = ["DEFAULT_TAUS", "corpus_rows", "write_corpus"]

DEFAULT_TAUS = ("0.2", "0.4", "0.6", "0.8", "1.0")

_UNIVERSE = 40  # answers per (tool, instance)
_VALID_TOP = 14  # top-ranked answers that are valid
_VALID_EVERY = 4  # every 4th tail answer is also valid


def _answer_pool(rng: np.random.Generator, instance: int) -> list[tuple[str, int]]:
    """Ranked (answer, validity) pairs for one instance.

    Validity depends only on (instance, answer), never on the tool or
    temperature, so tools compete on a shared ground truth.
    """
    answers = [f"i{instance:02d}_w{j:02d}" for j in range(_UNIVERSE)]
    validity = [
        1 if j < _VALID_TOP or (j % _VALID_EVERY == 0) else 0
        for j in range(_UNIVERSE)
    ]
    return list(zip(answers, validity))


def _tool_ranking(rng: np.random.Generator, tool: int) -> np.ndarray:
    """Tool-specific ordering over the universe: mostly quality-sorted,
    with tool-dependent swaps so rankings differ across tools."""
    order = np.arange(_UNIVERSE)
    n_swaps = 4 + 3 * tool
    for _ in range(n_swaps):
        a, b = rng.integers(0, _UNIVERSE, size=2)
        order[a], order[b] = order[b], order[a]
    return order


def corpus_rows(
    n_tools: int = 3,
    taus: tuple[str, ...] = DEFAULT_TAUS,
    n_instances: int = 5,
    samples_per_cell: int = 500,
    seed: int = 7,
) -> list[tuple[str, str, str, str, int]]:
    """All corpus rows as (instance_id, tool, tau, answer, valid)."""
    rng = np.random.default_rng(seed)
    rows: list[tuple[str, str, str, str, int]] = []
    for inst in range(n_instances):
        pool = _answer_pool(rng, inst)
        for tool in range(n_tools):
            order = _tool_ranking(rng, tool)
            for tau in taus:
                spread = 6.0 * float(tau)  # effective diversity scale
                ranks = np.empty(_UNIVERSE)
                ranks[order] = np.arange(_UNIVERSE)
                logits = -ranks / max(spread, 1e-6)
                probs = np.exp(logits - logits.max())
                probs /= probs.sum()
                draws = rng.choice(_UNIVERSE, size=samples_per_cell, p=probs)
                for j in draws:
                    answer, valid = pool[j]
                    rows.append((f"inst{inst:02d}", f"tool{tool}", tau, answer, valid))
    return rows


def write_corpus(path, **kwargs) -> None:
    """Write the synthetic corpus to a sample CSV."""
    rows = corpus_rows(**kwargs)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["instance_id", "tool", "tau", "answer", "valid"])
        writer.writerows(rows)
