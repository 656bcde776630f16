"""
Genetic search over reduction masks.

Each generation is evaluated, individuals whose fitness is below a threshold
survive unchanged, and the population is refilled to its nominal size with
single-point crossover of random survivor pairs followed by mutation. The
best individual always survives, so the best-so-far fitness never increases.

Randomness comes from numpy's PCG64. Streams are derived from the seed with
``SeedSequence(seed, spawn_key=...)``: key ``(0,)`` drives initialization and
key ``(1, g)`` drives the operators that build generation ``g + 1``. Given
the same seed, configs and table, runs are identical on every platform.
"""
from __future__ import annotations

import json
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .coding import DisjunctiveTable
from .errors import MaskError
from .metric import DistanceConfig, EvaluationResult, subset_fitness
from .model import ReductionMask


@dataclass(frozen=True)
class GaConfig:
    pop_size: int = 20
    generations: int = 100
    limit: float | str = "median0"  # fixed threshold, or median of generation 0
    mutation_rate: float = 0.05
    paper_compat_mutation: bool = False
    crossover_points: tuple[int, int] | None = None  # inclusive range, default 1..p-1
    stagnation: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.pop_size < 2:
            raise ValueError("pop_size must be >= 2")
        if self.generations < 1:
            raise ValueError("generations must be >= 1")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must lie in [0, 1]")
        if self.stagnation < 1:
            raise ValueError("stagnation must be >= 1")
        if isinstance(self.limit, str):
            if self.limit != "median0":
                raise ValueError(f"limit must be a positive number or 'median0', got {self.limit!r}")
        elif not self.limit > 0:
            raise ValueError("selection limit must be > 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def describe(self) -> dict:
        d = asdict(self)
        d["crossover_points"] = list(self.crossover_points) if self.crossover_points else None
        return d


def init_stream(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(0,))))


def generation_stream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(1, index))))


def repair(bits: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Set one uniformly chosen bit if ``bits`` is all zero."""
    if not bits.any():
        bits = bits.copy()
        bits[rng.integers(len(bits))] = 1
    return bits


def init_population(p: int, pop_size: int, rng: np.random.Generator) -> list[ReductionMask]:
    out = []
    for _ in range(pop_size):
        bits = rng.integers(0, 2, size=p, dtype=np.int8)
        out.append(ReductionMask.from_array(repair(bits, rng), generation=0))
    return out


def evaluate_population(
    cdt: DisjunctiveTable, masks: Sequence[ReductionMask], config: DistanceConfig, workers: int = 1
) -> list[EvaluationResult]:
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(lambda m: subset_fitness(cdt, m, config), masks))
    return [subset_fitness(cdt, m, config) for m in masks]


def select_survivors(results: Sequence[EvaluationResult], limit: float) -> list[ReductionMask]:
    """Masks whose fitness is strictly below ``limit``.

    If nobody qualifies, the single best individual (first in population
    order among ties) survives alone.
    """
    return [results[i].mask for i in _survivor_indices(results, limit)]


def _survivor_indices(results, limit) -> list[int]:
    if not limit > 0:
        raise ValueError("selection limit must be > 0")
    kept = [i for i, r in enumerate(results) if r.fitness < limit]
    if not kept:
        kept = [min(range(len(results)), key=lambda i: results[i].fitness)]
    return kept


def crossover_pair(
    a: ReductionMask,
    b: ReductionMask,
    rng: np.random.Generator,
    point: int | None = None,
    points: tuple[int, int] | None = None,
) -> tuple[ReductionMask, ReductionMask]:
    """Single-point crossover: children swap the suffixes after ``point``.

    ``point`` is drawn uniformly from ``points`` (default ``1..p-1``) when
    not given. All-zero children are repaired.
    """
    if a.p != b.p:
        raise MaskError(f"crossover parents differ in length: {a.p} vs {b.p}")
    p = a.p
    if p < 2:
        raise MaskError("crossover needs p >= 2")
    lo, hi = points or (1, p - 1)
    if not 1 <= lo <= hi <= p - 1:
        raise MaskError(f"crossover point range {lo}..{hi} outside 1..{p - 1}")
    if point is None:
        point = int(rng.integers(lo, hi + 1))
    x, y = a.as_array().astype(np.int8), b.as_array().astype(np.int8)
    c1 = np.concatenate([x[:point], y[point:]])
    c2 = np.concatenate([y[:point], x[point:]])
    return (
        ReductionMask.from_array(repair(c1, rng)),
        ReductionMask.from_array(repair(c2, rng)),
    )


def flip(mask: ReductionMask, positions, rng: np.random.Generator) -> ReductionMask:
    """Flip the given 0-based positions, repairing an all-zero result."""
    bits = mask.as_array().astype(np.int8)
    for j in positions:
        bits[j] ^= 1
    return ReductionMask.from_array(repair(bits, rng), mask.generation)


def mutate(mask: ReductionMask, config: GaConfig, rng: np.random.Generator) -> ReductionMask:
    """Bit-flip mutation.

    Default: every gene flips independently with probability
    ``mutation_rate``. Count mode (``paper_compat_mutation``): with probability
    ``mutation_rate`` the child is mutated by drawing ``nb_mut`` uniformly
    from ``1..p`` and flipping that many distinct positions.
    """
    p = mask.p
    if config.paper_compat_mutation:
        if rng.random() >= config.mutation_rate:
            return mask
        nb_mut = int(rng.integers(1, p + 1))
        positions = rng.choice(p, size=nb_mut, replace=False)
        return flip(mask, sorted(int(j) for j in positions), rng)
    hits = rng.random(p) < config.mutation_rate
    if not hits.any():
        return mask
    return flip(mask, np.flatnonzero(hits), rng)


@dataclass(frozen=True)
class Generation:
    index: int
    individuals: tuple[tuple[ReductionMask, EvaluationResult], ...]
    best_mask: ReductionMask
    best_fitness: float
    survivors: int

    @property
    def mean_fitness(self) -> float:
        return statistics.fmean(r.fitness for _, r in self.individuals)

    @property
    def distinct(self) -> int:
        return len({str(m) for m, _ in self.individuals})

    def record(self) -> dict:
        return {
            "generation": self.index,
            "best_mask": str(self.best_mask),
            "best_fitness": self.best_fitness,
            "mean_fitness": self.mean_fitness,
            "survivors": self.survivors,
            "distinct": self.distinct,
        }


@dataclass
class GaResult:
    best_mask: ReductionMask
    best: EvaluationResult
    generations: list[Generation] = field(default_factory=list)
    limit: float = 0.0

    def log_lines(self) -> list[str]:
        return [json.dumps(g.record(), sort_keys=True) for g in self.generations]

    def evaluated_masks(self) -> set[str]:
        return {str(m) for g in self.generations for m, _ in g.individuals}


def _refill(survivors, pop_size, config: GaConfig, rng) -> list[ReductionMask]:
    nxt = list(survivors)
    while len(nxt) < pop_size:
        i, j = rng.integers(len(survivors), size=2)
        a, b = survivors[i], survivors[j]
        if a.p >= 2:
            a, b = crossover_pair(a, b, rng, points=config.crossover_points)
        for child in (mutate(a, config, rng), mutate(b, config, rng)):
            if len(nxt) < pop_size:
                nxt.append(child)
    return nxt


def run_ga(
    cdt: DisjunctiveTable,
    config: GaConfig | None = None,
    distance: DistanceConfig | None = None,
    workers: int = 1,
) -> GaResult:
    """Evolve reduction masks and return the best one ever evaluated.

    Stops after ``config.generations`` generations or once the best fitness
    has not improved for ``config.stagnation`` consecutive generations.
    At most half the population is carried over as survivors (best first),
    so a threshold that admits everyone cannot freeze the search.
    """
    config = config or GaConfig()
    distance = distance or DistanceConfig()
    cache: dict[ReductionMask, EvaluationResult] = {}

    def evaluate(masks):
        todo = [m for m in dict.fromkeys(masks) if m not in cache]
        for m, r in zip(todo, evaluate_population(cdt, todo, distance, workers)):
            cache[m] = r
        return [cache[m] for m in masks]

    population = init_population(cdt.p, config.pop_size, init_stream(config.seed))
    limit = None if config.limit == "median0" else float(config.limit)
    best: EvaluationResult | None = None
    stagnant = 0
    log: list[Generation] = []
    for g in range(config.generations):
        results = evaluate(population)
        if limit is None:
            limit = statistics.median(r.fitness for r in results)
            # an all-zero generation 0 would give a non-positive threshold
            if not limit > 0:
                limit = np.nextafter(0.0, 1.0)
        gen_best = min(results, key=lambda r: r.fitness)
        if best is None or gen_best.fitness < best.fitness:
            best, stagnant = gen_best, 0
        else:
            stagnant += 1
        ranked = sorted(range(len(results)), key=lambda i: (results[i].fitness, i))
        selected = set(_survivor_indices(results, limit))
        carried = [population[i] for i in ranked if i in selected][: max(1, config.pop_size // 2)]
        log.append(
            Generation(
                g,
                tuple(zip(population, results)),
                best.mask,
                best.fitness,
                len(carried),
            )
        )
        if stagnant >= config.stagnation or g == config.generations - 1:
            break
        rng = generation_stream(config.seed, g)
        population = [
            m if m.generation is not None else ReductionMask(m.bits, g + 1)
            for m in _refill(carried, config.pop_size, config, rng)
        ]
    return GaResult(best.mask, best, log, float(limit))
