"""Select reduced subsets of dimensions of a qualitative fact table.

A genetic search over dimension bitmasks is scored by a chi-squared profile
distance between a reference fact and a sample, computed on the complete
disjunctive coding of the sample. An exhaustive sweep serves as an oracle.
"""
from .coding import (
    CondensedTable,
    DisjunctiveTable,
    IntegrityReport,
    build_cdt,
    build_tcc,
    occurrence_counts,
    validate_cdt,
)
from .errors import ReductionError
from .ga import GaConfig, GaResult, run_ga
from .metric import DistanceConfig, EvaluationResult, chi2_distance, distance_vector, subset_fitness
from .model import (
    DimensionSchema,
    FactRecord,
    ReductionMask,
    ReferenceProfile,
    build_reference,
    parse_mask,
    validate_schema,
)
from .oracle import SweepResult, best_mask, calibrate_scale, sweep_all_masks
from .report import build_curve, emit_report, pareto_front

__version__ = "0.1.0"
