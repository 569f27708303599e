"""Batch command-line front end.

Subcommands mirror the library: solve-eq, solve-opt, limits, poa,
dynamics, market, estimate, pairwise, distance, check.  Every artifact
embeds the tool version, the effective config, input-file hashes, and
any seed, and is written atomically (temp file + rename); identical
inputs and seed therefore produce byte-identical outputs.  Numeric
output is printed with 12 significant digits.  Exit codes: 0 ok,
2 validation error (with a machine-readable error JSON on stdout),
3 non-convergence (artifacts still written).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import tempfile
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .core import GameInstance, Ranking, Strategy, StrategyProfile, validate_instance
from .diversity import majorizes
from .dynamics import (
    br_dynamics,
    check_equilibrium,
    poa_tight_instance,
    potential,
    utility_of,
    welfare_ascent,
    welfare_of,
)
from .empirical import grid_solution, load_samples, pairwise_market_empirical
from .distance import distance_matrix, distributions_from_samples
from .market import find_partial_sym_equilibria, market_share_bounds
from .reduce import pava_reduce
from .score import ScoreFunction, share
from .solve import eval_utility, limit_dist, solve_eq, solve_opt

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NO_CONVERGENCE = 3


# ---------------------------------------------------------------------------
# Serialization helpers.


def _round12(obj):
    """Round all floats to 12 significant digits, recursively."""
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return str(obj)
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _round12(obj.tolist())
    if isinstance(obj, (np.floating, np.integer)):
        return _round12(obj.item())
    return obj


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _file_hash(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _metadata(args: argparse.Namespace, inputs: list[str]) -> dict:
    config = {
        k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None
    }
    return {
        "tool": "genco",
        "version": __version__,
        "config": _round12(config),
        "input_hashes": {str(p): _file_hash(p) for p in inputs},
    }


def _emit(args: argparse.Namespace, payload: dict, inputs: list[str]) -> None:
    doc = {"metadata": _metadata(args, inputs), **_round12(payload)}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    out = getattr(args, "out", None)
    if out:
        _atomic_write(Path(out), text)
    print(text, end="")


def _emit_csv(path: str, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(
            ",".join(
                f"{v:.12g}" if isinstance(v, (float, np.floating)) else str(v)
                for v in row
            )
        )
    _atomic_write(Path(path), "\n".join(lines) + "\n")


def _fail_validation(detail) -> int:
    print(json.dumps({"error": "validation", "detail": detail}, indent=2))
    return EXIT_VALIDATION


# ---------------------------------------------------------------------------
# Instance parsing.


def _score_from_json(spec: dict) -> ScoreFunction:
    if spec.get("kind") == "power":
        gamma = spec.get("gamma")
        if gamma in ("inf", "Infinity"):
            gamma = math.inf
        return ScoreFunction.power(float(gamma))
    if spec.get("kind") == "table":
        return ScoreFunction.table(spec["values"])
    raise ValueError(f"unknown score kind in instance: {spec!r}")


def _parse_gamma(text: str) -> float:
    return math.inf if text.strip().lower() in ("inf", "infinity") else float(text)


def _instance_from_args(args: argparse.Namespace) -> GameInstance:
    if getattr(args, "instance", None):
        with open(args.instance, encoding="utf-8") as fh:
            doc = json.load(fh)
        rankings = doc.get("rankings") or [list(range(1, len(doc["d"]) + 1))]
        return GameInstance(
            n=int(doc["n"]),
            d=doc["d"],
            s=_score_from_json(doc["score"]),
            rankings=tuple(tuple(r) for r in rankings),
        )
    if args.n is None or args.d is None or args.gamma is None:
        raise ValueError("provide --instance FILE or all of --n, --d, --gamma")
    d = [float(x) for x in args.d.split(",")]
    return GameInstance(
        n=args.n,
        d=d,
        s=ScoreFunction.power(_parse_gamma(args.gamma)),
        rankings=(tuple(range(1, len(d) + 1)),),
    )


def _validated(args) -> tuple[GameInstance, list[str]]:
    g = _instance_from_args(args)
    report = validate_instance(g)
    if not report.ok:
        raise ValueError(list(report.violations))
    return g, ([args.instance] if getattr(args, "instance", None) else [])


def _solution_payload(sol) -> dict:
    return {
        "p": list(sol.strategy.probs),
        "level": sol.level,
        "utility": sol.per_player_utility,
        "welfare": sol.welfare,
    }


# ---------------------------------------------------------------------------
# Subcommands.


def _cmd_solve(args: argparse.Namespace, which: str) -> int:
    try:
        g, inputs = _validated(args)
    except ValueError as exc:
        return _fail_validation(exc.args[0] if exc.args else str(exc))
    solver = solve_eq if which == "eq" else solve_opt
    sol = solver(g.n, g.d, g.s)
    _emit(args, {"solution": _solution_payload(sol)}, inputs)
    return EXIT_OK


def _cmd_limits(args: argparse.Namespace) -> int:
    try:
        d = [float(x) for x in args.d.split(",")]
        gammas = [float(x) for x in args.gammas.split(",")]
        if any(not (g_ > 0) or math.isinf(g_) for g_ in gammas):
            raise ValueError("limit gammas must be positive and finite")
    except ValueError as exc:
        return _fail_validation(str(exc))
    rows = []
    for g_ in gammas:
        p = limit_dist(d, g_)
        rows.append([g_] + list(p.probs))
    header = ["gamma"] + [f"p{k + 1}" for k in range(len(d))]
    if args.out:
        _emit_csv(args.out, header, rows)
    payload = {"limits": [dict(zip(header, _round12(row))) for row in rows]}
    print(json.dumps({"metadata": _metadata(args, []), **payload}, indent=2))
    return EXIT_OK


def _cmd_poa(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    if args.tight:
        n = args.tight
        if n < 2:
            return _fail_validation("--tight needs n >= 2")
        d, p_plus, p_eq = poa_tight_instance(n)
        s = ScoreFunction.power(1.0)
        w_plus = welfare_of(p_plus, d, s)
        w_eq = welfare_of(p_eq, d, s)
        payload = {
            "n": n,
            "welfare_plus": w_plus,
            "welfare_eq": w_eq,
            "ratio": w_plus / w_eq,
            "lower_bound": 2.0 - 3.0 / (2 * n) - 1.0 / n**2,
        }
        _emit(args, {"poa": payload}, [])
        return EXIT_OK

    try:
        g, inputs = _validated(args)
    except ValueError as exc:
        return _fail_validation(exc.args[0] if exc.args else str(exc))
    d = np.asarray(g.d, dtype=float)
    k = d.size
    ranking = g.tools()[0]
    eq = br_dynamics(
        _random_profile(rng, k, g.n, ranking), d, g.s, rankings=ranking
    )
    w_eq = welfare_of(eq.profile, d, g.s)
    best = max(
        (
            welfare_of(
                welfare_ascent(
                    _random_profile(rng, k, g.n, ranking), d, g.s, rankings=ranking
                ),
                d,
                g.s,
            )
            for _ in range(args.starts)
        ),
        default=0.0,
    )
    sym = solve_opt(g.n, d, g.s).welfare
    w_best = max(best, sym)
    payload = {
        "welfare_equilibrium": w_eq,
        "welfare_best_found": w_best,
        "best_is_lower_bound_on_opt": True,
        "ratio": w_best / w_eq,
        "seed": args.seed,
        "br_converged": eq.converged,
    }
    _emit(args, {"poa": payload}, inputs)
    return EXIT_OK if eq.converged else EXIT_NO_CONVERGENCE


def _random_profile(rng, k: int, n: int, ranking: Ranking) -> StrategyProfile:
    cols = []
    for _ in range(n):
        p = np.sort(rng.random(k))[::-1]
        p /= p.sum()
        ordered = np.empty(k)
        ordered[ranking.idx] = p
        cols.append(Strategy(ordered))
    return StrategyProfile(cols)


def _cmd_dynamics(args: argparse.Namespace) -> int:
    try:
        g, inputs = _validated(args)
    except ValueError as exc:
        return _fail_validation(exc.args[0] if exc.args else str(exc))
    rng = np.random.default_rng(args.seed)
    d = np.asarray(g.d, dtype=float)
    ranking = g.tools()[0]
    runs = []
    all_converged = True
    for start in range(args.starts):
        rep = br_dynamics(
            _random_profile(rng, d.size, g.n, ranking),
            d,
            g.s,
            eps=args.eps,
            max_rounds=args.max_rounds,
            rankings=ranking,
        )
        check = check_equilibrium(rep.profile, d, g.s, eps=args.eps, rankings=ranking)
        all_converged &= rep.converged
        runs.append(
            {
                "start": start,
                "converged": rep.converged,
                "rounds": rep.rounds,
                "epsilon": rep.epsilon,
                "potential_trace": list(rep.potential_trace),
                "profile": [list(c.probs) for c in rep.profile.columns],
                "welfare": welfare_of(rep.profile, d, g.s),
                "equilibrium_check": {
                    "is_equilibrium": check.is_equilibrium,
                    "max_gain": check.max_gain,
                    "worst_player": check.worst_player,
                },
            }
        )
    _emit(args, {"seed": args.seed, "runs": runs}, inputs)
    return EXIT_OK if all_converged else EXIT_NO_CONVERGENCE


def _cmd_market(args: argparse.Namespace) -> int:
    try:
        g, inputs = _validated(args)
        tools = g.tools()
        if len(tools) != 2:
            raise ValueError("market analysis needs an instance with 2 rankings")
    except ValueError as exc:
        return _fail_validation(exc.args[0] if exc.args else str(exc))
    eqs = find_partial_sym_equilibria(g.n, tools, g.d, g.s, eps=args.eps)
    report = market_share_bounds(eqs, len(tools))
    payload = {
        "equilibria": [
            {
                "counts": list(e.counts),
                "strategies": [
                    list(s_.probs) if s_ is not None else None for s_ in e.strategies
                ],
                "utilities": list(e.utilities),
                "max_gain": e.max_gain,
            }
            for e in eqs
        ],
        "market_share": {
            "sets": [sorted(s_) for s_ in report.share_sets],
            "min": list(report.share_min),
            "max": list(report.share_max),
            "complete": report.complete,
        },
    }
    _emit(args, {"market": payload}, inputs)
    return EXIT_OK


def _grid_cache_key(cells, n: int, score_label: str) -> str:
    h = hashlib.sha256()
    for c in sorted(cells, key=lambda c: c.cell):
        h.update(repr((c.cell, sorted(c.counts.items()), sorted(c.validity.items()))).encode())
    h.update(f"|n={n}|s={score_label}".encode())
    return h.hexdigest()


def _cache_dir(args) -> Path | None:
    env = os.environ.get("GENCO_CACHE_DIR")
    path = getattr(args, "cache_dir", None) or env
    return Path(path) if path else None


def cache_lookup(cache_dir: Path, key: str) -> dict | None:
    """Load a cached payload, recomputing (None) on checksum mismatch."""
    path = cache_dir / f"grid-{key}.json"
    if not path.exists():
        return None
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
        payload_text = json.dumps(doc["payload"], sort_keys=True)
        digest = hashlib.sha256(payload_text.encode()).hexdigest()
        if digest != doc["checksum"]:
            raise ValueError("checksum mismatch")
        return doc["payload"]
    except (ValueError, KeyError, json.JSONDecodeError):
        warnings.warn(f"corrupted cache entry {path}; recomputing", stacklevel=2)
        return None


def cache_store(cache_dir: Path, key: str, payload: dict) -> None:
    payload_text = json.dumps(payload, sort_keys=True)
    doc = {
        "checksum": hashlib.sha256(payload_text.encode()).hexdigest(),
        "payload": payload,
    }
    _atomic_write(cache_dir / f"grid-{key}.json", json.dumps(doc, sort_keys=True))


def _cmd_estimate(args: argparse.Namespace) -> int:
    try:
        cells = load_samples(args.samples)
        if args.tool:
            cells = [c for c in cells if c.tool == args.tool]
        if not cells:
            raise ValueError(f"no cells for tool {args.tool!r} in {args.samples}")
        s = ScoreFunction.power(_parse_gamma(args.gamma))
    except ValueError as exc:
        return _fail_validation(str(exc))

    key = _grid_cache_key(cells, args.n, s.label())
    cache = _cache_dir(args)
    payload = cache_lookup(cache, key) if cache else None
    cached = payload is not None
    if payload is None:
        sol = grid_solution(cells, args.n, s, eps=args.eps)
        payload = _round12(
            {
                "grid": list(sol.grid.grid),
                "U": sol.grid.U.tolist(),
                "W": sol.grid.W.tolist(),
                "se": sol.grid.se.tolist(),
                "n": sol.grid.n,
                "tau_eq": list(sol.tau_eq),
                "tau_opt": sol.tau_opt,
                "epsilon": sol.epsilon,
                "grid_metadata": sol.grid.metadata,
            }
        )
        if cache:
            cache_store(cache, key, payload)
    if args.out_grid:
        grid = payload["grid"]
        header = ["tau_dev"] + [f"U_vs_{t}" for t in grid] + ["W", "se"]
        rows = [
            [grid[a]]
            + [payload["U"][a][b] for b in range(len(grid))]
            + [payload["W"][a], payload["se"][a]]
            for a in range(len(grid))
        ]
        _emit_csv(args.out_grid, header, rows)
    _emit(args, {"estimate": payload, "cache_hit": cached}, [args.samples])
    return EXIT_OK


def _cmd_pairwise(args: argparse.Namespace) -> int:
    try:
        cells = load_samples(args.samples)
        tool_a, tool_b = [t.strip() for t in args.tools.split(",")]
        cells_a = [c for c in cells if c.tool == tool_a]
        cells_b = [c for c in cells if c.tool == tool_b]
        if not cells_a or not cells_b:
            raise ValueError(f"missing cells for tools {tool_a!r}/{tool_b!r}")
        s = ScoreFunction.power(_parse_gamma(args.gamma))
        results = pairwise_market_empirical(cells_a, cells_b, args.n, s, eps=args.eps)
    except ValueError as exc:
        return _fail_validation(str(exc))
    rows = [
        [m1, tau1 if tau1 is not None else "", m2, tau2 if tau2 is not None else ""]
        for (m1, tau1, m2, tau2) in results
    ]
    if args.out:
        _emit_csv(args.out, ["m1", "tau1", "m2", "tau2"], rows)
    payload = {
        "pairwise": [
            {"m1": m1, "tau1": t1, "m2": m2, "tau2": t2}
            for (m1, t1, m2, t2) in results
        ]
    }
    print(
        json.dumps(
            {"metadata": _metadata(args, [args.samples]), **_round12(payload)},
            indent=2,
        )
    )
    return EXIT_OK


def _cmd_distance(args: argparse.Namespace) -> int:
    try:
        cells = load_samples(args.samples)
        dists = distributions_from_samples(cells, min_count=args.min_count)
        dm = distance_matrix(dists)
    except ValueError as exc:
        return _fail_validation(str(exc))
    labels = [f"{t}|{v}" for (t, v) in dm.labels]
    rows = [
        [labels[i]] + [dm.D[i, j] for j in range(len(labels))]
        for i in range(len(labels))
    ]
    if args.out:
        _emit_csv(args.out, ["label"] + labels, rows)
    payload = {
        "distance": {
            "labels": labels,
            "D": dm.D.tolist(),
            "instances": dm.n_instances,
            "metadata": dm.metadata,
        }
    }
    print(
        json.dumps(
            {"metadata": _metadata(args, [args.samples]), **_round12(payload)},
            indent=2,
        )
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# Property-check suite (the `check` subcommand).


def run_property_checks(seed: int = 0, rounds: int = 20) -> dict[str, dict]:
    """Seeded re-run of the core invariants; returns per-suite reports."""
    rng = np.random.default_rng(seed)
    gammas = [0.5, 1.0, 2.0, math.inf]
    report: dict[str, dict] = {}

    def random_instance():
        k = int(rng.integers(2, 7))
        d = np.sort(rng.uniform(0.2, 4.0, k))[::-1]
        n = int(rng.integers(2, 6))
        s = ScoreFunction.power(gammas[rng.integers(0, len(gammas))])
        return n, d, s

    worst = 0.0
    for _ in range(rounds):
        n, d, s = random_instance()
        sol = solve_eq(n, d, s)
        p = np.asarray(sol.strategy.probs)
        support = p > 0
        gaps = np.abs(d[support] * share(s, n - 1, p[support]) - sol.level)
        worst = max(worst, float(gaps.max()))
        for _ in range(5):
            k_dev = int(rng.integers(0, d.size))
            dev = np.zeros(d.size)
            dev[: k_dev + 1] = 1.0 / (k_dev + 1)
            gain = eval_utility(dev, p, n, d, s) - sol.level
            worst = max(worst, float(gain))
    report["equilibrium_kkt_and_deviations"] = {"passed": worst <= 1e-7, "worst": worst}

    worst = 0.0
    for _ in range(rounds):
        n, d, s = random_instance()
        d_raw = rng.uniform(0.0, 4.0, d.size)
        if not np.any(d_raw > 0):
            d_raw[0] = 1.0
        a = solve_eq(n, d_raw, s)
        b = solve_eq(n, pava_reduce(d_raw).reduced, s)
        worst = max(
            worst,
            float(np.abs(np.subtract(a.strategy.probs, b.strategy.probs)).max()),
            abs(a.per_player_utility - b.per_player_utility),
        )
    report["pava_equivalence"] = {"passed": worst <= 1e-7, "worst": worst}

    worst_gap = 0.0
    for _ in range(rounds):
        n, d, s = random_instance()
        p_eq = solve_eq(n, d, s).strategy
        verdicts = [
            majorizes(p_eq, solve_eq(n + 1, d, s).strategy),
            majorizes(p_eq, solve_opt(n, d, s).strategy),
            majorizes(p_eq, solve_eq(n, d, ScoreFunction.power(math.inf)).strategy),
        ]
        worst_gap = min([worst_gap] + [v.worst_prefix_gap for v in verdicts])
    report["diversity_majorization"] = {
        "passed": worst_gap >= -1e-7,
        "worst_prefix_gap": worst_gap,
    }

    worst = 0.0
    for _ in range(rounds):
        n, d, s = random_instance()
        k = d.size
        cols = []
        for _ in range(n):
            p = np.sort(rng.random(k))[::-1]
            cols.append(Strategy(p / p.sum()))
        prof = StrategyProfile(cols)
        i = int(rng.integers(0, n))
        q = np.sort(rng.random(k))[::-1]
        prof2 = prof.replace(i, Strategy(q / q.sum()))
        d_phi = potential(prof2, d, s) - potential(prof, d, s)
        d_u = utility_of(prof2, i, d, s) - utility_of(prof, i, d, s)
        worst = max(worst, abs(d_phi - d_u))
    report["potential_identity"] = {"passed": worst <= 1e-9, "worst": worst}

    return report


def _cmd_check(args: argparse.Namespace) -> int:
    report = run_property_checks(seed=args.seed, rounds=args.rounds)
    ok = all(r["passed"] for r in report.values())
    for name, r in report.items():
        print(f"{'PASS' if r['passed'] else 'FAIL'} {name}", file=sys.stderr)
    _emit(args, {"seed": args.seed, "checks": report, "ok": ok}, [])
    return EXIT_OK if ok else 1


# ---------------------------------------------------------------------------
# Parser.


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genco",
        description="Equilibrium solvers and sample-based estimators for "
        "ranked-tool congestion games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_instance_flags(p):
        p.add_argument("--instance", help="instance JSON file")
        p.add_argument("--n", type=int, help="player count")
        p.add_argument("--d", help="comma-separated type values, e.g. 3,2")
        p.add_argument("--gamma", help="power-score exponent (or 'inf')")
        p.add_argument("--out", help="write the JSON artifact here too")

    p = sub.add_parser("solve-eq", help="symmetric equilibrium")
    add_instance_flags(p)
    p.set_defaults(func=lambda a: _cmd_solve(a, "eq"))

    p = sub.add_parser("solve-opt", help="symmetric social optimum")
    add_instance_flags(p)
    p.set_defaults(func=lambda a: _cmd_solve(a, "opt"))

    p = sub.add_parser("limits", help="large-n limiting distributions")
    p.add_argument("--d", required=True)
    p.add_argument("--gammas", required=True, help="comma-separated gammas")
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=_cmd_limits)

    p = sub.add_parser("poa", help="price-of-anarchy report")
    add_instance_flags(p)
    p.add_argument("--tight", type=int, help="use the tight family at this n")
    p.add_argument("--starts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_poa)

    p = sub.add_parser("dynamics", help="best-response dynamics")
    add_instance_flags(p)
    p.add_argument("--starts", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=1e-8)
    p.add_argument("--max-rounds", type=int, default=200)
    p.set_defaults(func=_cmd_dynamics)

    p = sub.add_parser("market", help="two-tool market equilibria")
    add_instance_flags(p)
    p.add_argument("--eps", type=float, default=1e-7)
    p.set_defaults(func=_cmd_market)

    p = sub.add_parser("estimate", help="temperature-grid utility estimation")
    p.add_argument("--samples", required=True, help="sample CSV")
    p.add_argument("--tool", help="restrict to one tool")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--eps", type=float)
    p.add_argument("--out", help="JSON artifact path")
    p.add_argument("--out-grid", help="CSV grid path")
    p.add_argument("--cache-dir", help="cache directory (or GENCO_CACHE_DIR)")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("pairwise", help="pairwise empirical market shares")
    p.add_argument("--samples", required=True)
    p.add_argument("--tools", required=True, help="two tool names, comma-separated")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--eps", type=float)
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=_cmd_pairwise)

    p = sub.add_parser("distance", help="ranking-stability distance matrix")
    p.add_argument("--samples", required=True)
    p.add_argument("--min-count", type=int, default=10)
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("check", help="run the seeded property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rounds", type=int, default=20)
    p.add_argument("--out", help="JSON artifact path")
    p.set_defaults(func=_cmd_check)

    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    eps = getattr(args, "eps", None)
    if eps is not None and eps < 0:
        return _fail_validation("tolerance --eps must be nonnegative")
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        return _fail_validation(str(exc))


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
