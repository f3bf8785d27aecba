"""Evaluation harness: filter ratio, brute-force oracle, and FR curves.

The filter ratio FR(A) = F(A) / F(V) measures how much of the removable
redundancy a filter set removes; 1 means all of it.  Ratios are kept as
exact fractions until formatting, since the underlying counts can exceed
machine words.
"""

import hashlib
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .graph import CGraph
from .placement import (
    FilterSet,
    as_ctree,
    eligible_nodes,
    greedy_1,
    greedy_all,
    greedy_l,
    greedy_max,
    optimal_unbounded,
    randomized_baseline,
    tree_dp,
)
from .propagation import objective_f


class BudgetExceededError(Exception):
    """Exhaustive search would evaluate more subsets than the budget allows."""


DETERMINISTIC_ALGORITHMS = (
    "greedy-1",
    "greedy-all",
    "greedy-max",
    "greedy-l",
    "tree-dp",
    "optimal-unbounded",
)
RANDOMIZED_ALGORITHMS = ("rand-k", "rand-i", "rand-w")
ALGORITHMS = DETERMINISTIC_ALGORITHMS + RANDOMIZED_ALGORITHMS


def run_algorithm(g: CGraph, name: str, k: int, seed: int = 0) -> FilterSet:
    """Run one placement algorithm by CLI name."""
    if name == "greedy-1":
        return greedy_1(g, k)
    if name == "greedy-all":
        return greedy_all(g, k)
    if name == "greedy-max":
        return greedy_max(g, k)
    if name == "greedy-l":
        return greedy_l(g, k)
    if name == "tree-dp":
        return tree_dp(as_ctree(g), k)
    if name == "optimal-unbounded":
        return optimal_unbounded(g)
    if name in RANDOMIZED_ALGORITHMS:
        return randomized_baseline(g, k, name.replace("-", "_"), seed)
    raise ValueError(f"unknown algorithm {name!r}")


def max_objective(g: CGraph) -> int:
    """F(V): the objective with filters everywhere, i.e. all removable redundancy."""
    return objective_f(g, eligible_nodes(g))


def filter_ratio(g: CGraph, filters) -> Fraction:
    """F(A) / F(V) as an exact fraction; 1 when the graph has no redundancy."""
    fv = max_objective(g)
    if fv == 0:
        return Fraction(1)
    return Fraction(objective_f(g, filters), fv)


def oracle(g: CGraph, k: int, budget: int = 10**6) -> tuple[FilterSet, int]:
    """Exhaustively maximize the objective over all filter sets of size <= k.

    Among maximizers, the smallest set wins, then the lexicographically
    smallest index tuple.  Raises BudgetExceededError before starting if
    the subset count is out of reach.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    eligible = eligible_nodes(g)
    k_eff = min(k, len(eligible))
    total = sum(comb(len(eligible), j) for j in range(k_eff + 1))
    if total > budget:
        raise BudgetExceededError(
            f"{total} candidate subsets exceed the budget of {budget}"
        )
    best_members: tuple[int, ...] = ()
    best_f = 0  # F(empty set) = 0
    for size in range(1, k_eff + 1):
        for candidate in combinations(eligible, size):
            f = objective_f(g, candidate)
            if f > best_f:
                best_f = f
                best_members = candidate
    return FilterSet(frozenset(best_members), "oracle", k), best_f


@dataclass(frozen=True)
class PlacementResult:
    """One algorithm run: who was picked and what it achieved."""

    algorithm: str
    k: int
    seed: int | None
    filters: tuple[str, ...]
    f: int
    fr: Fraction
    wall_ms: float


@dataclass(frozen=True)
class FRRow:
    """One FR-curve cell: an (algorithm, k) pair, averaged over runs."""

    algorithm: str
    k: int
    fr: Fraction
    runs: int
    wall_ms: float
    results: tuple[PlacementResult, ...]


@dataclass(frozen=True)
class FRCurve:
    rows: tuple[FRRow, ...]


def _cell_seed(master: int, algorithm: str, k: int, trial: int) -> int:
    digest = hashlib.sha256(f"{master}:{algorithm}:{k}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _run_cell(g: CGraph, name: str, k: int, runs: int, master_seed: int) -> FRRow:
    fv = max_objective(g)

    def fr_of(f: int) -> Fraction:
        return Fraction(1) if fv == 0 else Fraction(f, fv)

    results = []
    if name in RANDOMIZED_ALGORITHMS:
        for trial in range(runs):
            seed = _cell_seed(master_seed, name, k, trial)
            t0 = time.perf_counter()
            fs = run_algorithm(g, name, k, seed)
            ms = (time.perf_counter() - t0) * 1000.0
            f = objective_f(g, fs)
            results.append(
                PlacementResult(name, k, seed, tuple(fs.labels(g)), f, fr_of(f), ms)
            )
        mean_f = Fraction(sum(r.f for r in results), len(results))
        fr = Fraction(1) if fv == 0 else mean_f / fv
        wall = statistics.fmean(r.wall_ms for r in results)
        return FRRow(name, k, fr, runs, wall, tuple(results))

    times = []
    for _ in range(3):  # deterministic: report the median of 3 timings
        t0 = time.perf_counter()
        fs = run_algorithm(g, name, k)
        times.append((time.perf_counter() - t0) * 1000.0)
    f = objective_f(g, fs)
    wall = statistics.median(times)
    result = PlacementResult(name, k, None, tuple(fs.labels(g)), f, fr_of(f), wall)
    return FRRow(name, k, fr_of(f), 1, wall, (result,))


def fr_curve(
    g: CGraph,
    algorithms: list[str],
    k_max: int,
    runs: int = 25,
    seed: int = 0,
    jobs: int = 1,
) -> FRCurve:
    """FR per (algorithm, k) for k = 1..k_max.

    Randomized algorithms are averaged over ``runs`` seeded trials (the F
    values are averaged first, then divided by F(V)); deterministic ones
    run once, timed as the median of three repetitions.  Cells are
    independent; with jobs > 1 they are computed by a worker pool and
    merged back in deterministic order.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    for name in algorithms:
        if name not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {name!r}")
    cells = [(name, k) for name in algorithms for k in range(1, k_max + 1)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(
                pool.map(lambda c: _run_cell(g, c[0], c[1], runs, seed), cells)
            )
    else:
        rows = [_run_cell(g, name, k, runs, seed) for name, k in cells]
    return FRCurve(tuple(rows))


def format_fraction(x: Fraction, digits: int = 6) -> str:
    """Exact decimal rendering of a ratio with fixed fractional digits."""
    scaled = x * 10**digits
    q = scaled.numerator // scaled.denominator
    rem = scaled.numerator % scaled.denominator
    if 2 * rem >= scaled.denominator:
        q += 1
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def curve_to_csv(curve: FRCurve) -> str:
    lines = ["algorithm,k,fr,runs,wall_ms"]
    for row in curve.rows:
        lines.append(
            f"{row.algorithm},{row.k},{format_fraction(row.fr)},"
            f"{row.runs},{row.wall_ms:.3f}"
        )
    return "\n".join(lines) + "\n"


def curve_to_json_obj(curve: FRCurve) -> list[dict]:
    """Full per-cell results in JSON-ready form."""
    out = []
    for row in curve.rows:
        out.append(
            {
                "algorithm": row.algorithm,
                "k": row.k,
                "fr": float(row.fr),
                "runs": row.runs,
                "wall_ms": round(row.wall_ms, 3),
                "results": [
                    {
                        "seed": r.seed,
                        "filters": list(r.filters),
                        "f": r.f,
                        "fr": float(r.fr),
                        "wall_ms": round(r.wall_ms, 3),
                    }
                    for r in row.results
                ],
            }
        )
    return out
