"""
Chi-squared profile distance between the reference and each sampled fact,
restricted to the dimensions a reduction mask keeps.

For one fact ``i`` the distance is::

    scale * sum_mu (ref_mu - y_i,mu) ** 2 / m_mu

where ``m_mu`` is the sample occurrence count of modality ``mu``. Two ways of
discarding the dimensions a mask drops are supported:

``remove``
    the sum runs only over modality columns of kept dimensions.
``zero-facts``
    the sum runs over all columns, but the fact's cells on dropped
    dimensions are set to 0 while the reference keeps its ones there. Every
    fact then pays the same constant ``sum 1/m(ref modality)`` over dropped
    dimensions.

Columns with ``m_mu = 0`` (declared but absent from the sample) are skipped.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .coding import DisjunctiveTable
from .errors import MetricError
from .model import ReductionMask

VARIANTS = ("remove", "zero-facts")
SCALES = ("total", "retained", "fixed", "unit")

TIE_RTOL = 1e-9


@dataclass(frozen=True)
class DistanceConfig:
    """Masking variant and multiplicative scale.

    ``scale`` is one of ``"total"`` (n / p), ``"retained"`` (n / kept
    dimensions), ``"fixed"`` (``lam``) or ``"unit"`` (1).
    """

    variant: str = "remove"
    scale: str = "retained"
    lam: float | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise MetricError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if self.scale not in SCALES:
            raise MetricError(f"unknown scale mode {self.scale!r}; expected one of {SCALES}")
        if self.scale == "fixed":
            if self.lam is None or not (self.lam > 0 and math.isfinite(self.lam)):
                raise MetricError(f"fixed scale needs a positive finite lambda, got {self.lam!r}")
        elif self.lam is not None:
            raise MetricError("lam is only meaningful with scale='fixed'")

    @classmethod
    def parse(cls, variant: str = "remove", scale: str = "retained") -> "DistanceConfig":
        """Build from CLI-style strings, e.g. ``scale="fixed:1.6"``."""
        if scale.startswith("fixed:"):
            try:
                lam = float(scale.split(":", 1)[1])
            except ValueError:
                raise MetricError(f"bad fixed scale {scale!r}") from None
            return cls(variant, "fixed", lam)
        return cls(variant, scale)

    def factor(self, n: int, p: int, retained: int) -> float:
        if self.scale == "total":
            return n / p
        if self.scale == "retained":
            return n / retained
        if self.scale == "fixed":
            return float(self.lam)
        return 1.0

    def describe(self) -> dict:
        scale = f"fixed:{self.lam!r}" if self.scale == "fixed" else self.scale
        return {"variant": self.variant, "scale": scale}


@dataclass(frozen=True)
class EvaluationResult:
    mask: ReductionMask
    distances: tuple[float, ...]
    fitness: float
    argmin: tuple[int, ...]  # 0-based fact indices

    def argmin_labels(self, cdt: DisjunctiveTable) -> list[str]:
        return [cdt.fact_labels[i] for i in self.argmin]


def _check_mask(cdt: DisjunctiveTable, mask: ReductionMask):
    if not isinstance(mask, ReductionMask):
        raise MetricError(f"expected a ReductionMask, got {type(mask).__name__}")
    if mask.p != cdt.p:
        raise MetricError(f"mask length {mask.p} does not match p={cdt.p}")


def unscaled_sums(cdt: DisjunctiveTable, mask: ReductionMask, variant: str) -> np.ndarray:
    """Raw chi-squared sums for every fact, before the scale factor."""
    _check_mask(cdt, mask)
    if variant not in VARIANTS:
        raise MetricError(f"unknown variant {variant!r}")
    keep = mask.as_array()[cdt.schema.block_ids()]
    m = cdt.occurrence
    ref = cdt.reference.astype(np.float64)
    facts = cdt.matrix.astype(np.float64)
    if variant == "remove":
        cols = keep
    else:
        facts = facts * keep
        cols = np.ones_like(keep)
    empty = cols & (m == 0)
    if np.any(empty & (ref == 1)):
        warnings.warn(
            "reference modality absent from the sample (m=0); its column is skipped",
            stacklevel=3,
        )
    acc = np.zeros(cdt.n)
    # left to right over columns so results never depend on evaluation order
    for j in np.flatnonzero(cols & (m > 0)):
        acc += (ref[j] - facts[:, j]) ** 2 / m[j]
    return acc


def distance_vector(cdt: DisjunctiveTable, mask: ReductionMask, config: DistanceConfig) -> np.ndarray:
    sums = unscaled_sums(cdt, mask, config.variant)
    return config.factor(cdt.n, cdt.p, mask.popcount) * sums


def chi2_distance(cdt: DisjunctiveTable, fact: int, mask: ReductionMask, config: DistanceConfig) -> float:
    """Distance from the reference to fact ``fact`` (0-based row)."""
    if not 0 <= fact < cdt.n:
        raise MetricError(f"fact index {fact} out of range 0..{cdt.n - 1}")
    return float(distance_vector(cdt, mask, config)[fact])


def tie_group(values, target: float) -> tuple[int, ...]:
    return tuple(i for i, v in enumerate(values) if math.isclose(v, target, rel_tol=TIE_RTOL, abs_tol=0.0))


def subset_fitness(cdt: DisjunctiveTable, mask: ReductionMask, config: DistanceConfig) -> EvaluationResult:
    """Fitness of a mask: the smallest distance to any fact, with its witnesses."""
    d = distance_vector(cdt, mask, config)
    best = float(d.min())
    return EvaluationResult(mask, tuple(float(x) for x in d), best, tie_group(d, best))
