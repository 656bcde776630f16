"""
Exhaustive baseline: evaluate every non-empty reduction mask, and fit the
scale constant of the distance against target values.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .coding import DisjunctiveTable
from .errors import OracleError
from .metric import DistanceConfig, EvaluationResult, subset_fitness, unscaled_sums
from .model import ReductionMask

MAX_SWEEP_DIMENSIONS = 24


def tie_break_key(mask: ReductionMask, fitness: float):
    """Lower fitness first, then fewer kept dimensions, then smallest bit string."""
    return (fitness, mask.popcount, str(mask))


@dataclass(frozen=True)
class SweepResult:
    entries: tuple[tuple[ReductionMask, EvaluationResult], ...]

    @property
    def optimum(self) -> tuple[ReductionMask, EvaluationResult]:
        return min(self.entries, key=lambda e: tie_break_key(e[0], e[1].fitness))

    def by_mask(self) -> dict[str, EvaluationResult]:
        return {str(m): r for m, r in self.entries}

    def __len__(self):
        return len(self.entries)


def all_masks(p: int):
    """Every non-empty mask of length ``p`` in ascending bit-string order."""
    for bits in itertools.product((0, 1), repeat=p):
        if any(bits):
            yield ReductionMask(bits)


def sweep_all_masks(
    cdt: DisjunctiveTable,
    config: DistanceConfig | None = None,
    max_dimensions: int = MAX_SWEEP_DIMENSIONS,
    workers: int = 1,
) -> SweepResult:
    """Evaluate all ``2**p - 1`` non-empty masks.

    The empty mask is left out: no distance is defined without a kept
    dimension.
    """
    config = config or DistanceConfig()
    if cdt.p > max_dimensions:
        raise OracleError(f"p={cdt.p} exceeds the sweep ceiling of {max_dimensions} dimensions")
    masks = list(all_masks(cdt.p))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda m: subset_fitness(cdt, m, config), masks))
    else:
        results = [subset_fitness(cdt, m, config) for m in masks]
    return SweepResult(tuple(zip(masks, results)))


def best_mask(sweep: SweepResult, k: int | None = None) -> tuple[ReductionMask, EvaluationResult]:
    if not sweep.entries:
        raise OracleError("empty sweep")
    if k is None:
        return sweep.optimum
    p = sweep.entries[0][0].p
    if not 1 <= k <= p:
        raise OracleError(f"retained count k={k} outside 1..{p}")
    pool = [e for e in sweep.entries if e[0].popcount == k]
    return min(pool, key=lambda e: tie_break_key(e[0], e[1].fitness))


@dataclass(frozen=True)
class Calibration:
    lam: float
    residual: float  # root-mean-square error of lam * unit vs targets
    unit: tuple[float, ...]


def calibrate_scale(
    cdt: DisjunctiveTable, mask: ReductionMask, variant: str, targets: Sequence[float]
) -> Calibration:
    """Least-squares multiplier mapping unit-scale distances onto ``targets``."""
    t = np.asarray(targets, dtype=np.float64)
    if t.shape != (cdt.n,):
        raise OracleError(f"expected {cdt.n} target distances, got {t.size}")
    u = unscaled_sums(cdt, mask, variant)
    uu = float(u @ u)
    if uu == 0.0:
        raise OracleError("all unit-scale distances are zero; no scale can be fitted")
    lam = float(u @ t) / uu
    residual = math.sqrt(float(np.mean((lam * u - t) ** 2)))
    return Calibration(lam, residual, tuple(float(x) for x in u))
