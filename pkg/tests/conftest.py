import math

import numpy as np
import pytest

from genco import ScoreFunction

S1 = ScoreFunction.power(1.0)
S_HALF = ScoreFunction.power(0.5)
S2 = ScoreFunction.power(2.0)
S_INF = ScoreFunction.power(math.inf)
GAMMA_GRID = (0.5, 1.0, 2.0, math.inf)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_decreasing_d(rng, k_max=8, allow_zero=True):
    k = int(rng.integers(2, k_max + 1))
    d = np.sort(rng.uniform(0.05, 5.0, k))[::-1]
    if allow_zero and rng.random() < 0.25:
        d[-1] = 0.0
    return d


def random_score(rng):
    return ScoreFunction.power(GAMMA_GRID[int(rng.integers(0, len(GAMMA_GRID)))])


def random_instance(rng, k_max=8, n_max=6, allow_zero=True):
    d = random_decreasing_d(rng, k_max, allow_zero)
    n = int(rng.integers(2, n_max + 1))
    return n, d, random_score(rng)


def random_monotone_strategy(rng, k):
    p = np.sort(rng.random(k) + 1e-3)[::-1]
    return p / p.sum()


@pytest.fixture(scope="session")
def corpus_path(tmp_path_factory):
    """The bundled synthetic sample corpus: 3 tools x 5 taus x 5 instances."""
    from genco.synth import write_corpus

    path = tmp_path_factory.mktemp("corpus") / "samples.csv"
    write_corpus(path)
    return path


@pytest.fixture(scope="session")
def corpus_cells(corpus_path):
    from genco import load_samples

    return load_samples(corpus_path)
