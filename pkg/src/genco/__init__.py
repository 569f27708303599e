"""Equilibrium solvers and estimators for ranked-tool congestion games.

Computes equilibrium and socially optimal content distributions for
ranking-constrained congestion games, diversity diagnostics, price-of-
anarchy ratios, multi-tool market shares, unbiased utility estimates
from empirical sample files, and ranking-stability distances.
"""

from .core import (
    GameInstance,
    InstanceReport,
    Ranking,
    Strategy,
    StrategyProfile,
    ValidationError,
    ValueVector,
    validate_instance,
)
from .diversity import MajorizationVerdict, gini, majorizes, shannon_entropy
from .dynamics import (
    BrReport,
    EquilibriumReport,
    best_response,
    br_dynamics,
    check_equilibrium,
    pb_pmf,
    poa_tight_instance,
    potential,
    utility_of,
    welfare_ascent,
    welfare_of,
)
from .empirical import (
    GridSolution,
    SampleSet,
    UtilityGrid,
    grid_solution,
    load_samples,
    pairwise_market_empirical,
    se_bound,
    ustat_cross,
    ustat_self,
    welfare_hat,
)
from .distance import (
    DistanceMatrix,
    distance_matrix,
    distributions_from_samples,
    isotonic_l1_fit,
    wi,
    wi_avg,
)
from .market import (
    MarketEquilibrium,
    MarketShareReport,
    find_partial_sym_equilibria,
    group_eq_response,
    market_share_bounds,
)
from .reduce import PavaResult, canonicalize, pava_reduce, uncanonicalize
from .score import (
    ScoreClass,
    ScoreFunction,
    classify_score,
    inv_marginal_served,
    inv_share,
    marginal_served,
    score_eval,
    served,
    share,
)
from .solve import (
    SymmetricSolution,
    eval_utility,
    eval_welfare_sym,
    limit_dist,
    solve_eq,
    solve_opt,
)

__version__ = "0.1.0"
