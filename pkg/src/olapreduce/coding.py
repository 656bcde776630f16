"""
Condensed (TCC) and complete disjunctive (CDT) coding of a fact sample.

The CDT is the n x K indicator matrix: ``k_ij = 1`` iff fact ``i`` carries
modality ``j``. Occurrence counts are column sums over the sample rows; the
reference row is encoded with the same layout but kept out of the counts.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CodingError
from .model import DimensionSchema, FactRecord, ReferenceProfile


@dataclass(frozen=True)
class CondensedTable:
    """Per-dimension one-hot blocks, one row per fact (bit strings)."""

    schema: DimensionSchema
    rows: tuple[tuple[str, ...], ...]
    labels: tuple[str, ...] = ()

    def as_strings(self) -> list[str]:
        return [" ".join(r) for r in self.rows]


def _one_hot(code: int, size: int) -> str:
    return "".join("1" if i == code else "0" for i in range(size))


def build_tcc(facts: Sequence[FactRecord], schema: DimensionSchema) -> CondensedTable:
    if len(facts) == 0:
        raise CodingError("empty sample: no facts to encode")
    rows = []
    for fact in facts:
        FactRecord.build(fact.values, schema, fact.label)
        rows.append(tuple(_one_hot(c, d.size) for c, d in zip(fact.codes(schema), schema.dimensions)))
    return CondensedTable(schema, tuple(rows), tuple(f.label for f in facts))


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=np.int8)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DisjunctiveTable:
    """n x K binary matrix, its reference row and the schema fixing its layout.

    Construction checks shape and binarity only. Integrity (row sums equal
    to p, per-dimension column sums equal to n) is reported separately by
    :func:`validate_cdt` so that corrupted tables can still be inspected.
    """

    schema: DimensionSchema
    matrix: np.ndarray
    reference: np.ndarray
    fact_labels: tuple[str, ...] = ()

    def __post_init__(self):
        matrix = _frozen(self.matrix)
        reference = _frozen(self.reference)
        if matrix.ndim != 2 or matrix.shape[0] == 0:
            raise CodingError("empty sample: CDT needs at least one fact row")
        if matrix.shape[1] != self.schema.K:
            raise CodingError(f"CDT has {matrix.shape[1]} columns, schema declares K={self.schema.K}")
        if reference.shape != (self.schema.K,):
            raise CodingError(f"reference row must have {self.schema.K} entries, got {reference.shape}")
        if not (np.isin(matrix, (0, 1)).all() and np.isin(reference, (0, 1)).all()):
            raise CodingError("CDT entries must be 0 or 1")
        labels = tuple(self.fact_labels) or tuple(f"IND{i + 1}" for i in range(matrix.shape[0]))
        if len(labels) != matrix.shape[0]:
            raise CodingError("one fact label per CDT row required")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "reference", reference)
        object.__setattr__(self, "fact_labels", labels)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def p(self) -> int:
        return self.schema.p

    @property
    def K(self) -> int:
        return self.schema.K

    @property
    def occurrence(self) -> np.ndarray:
        return occurrence_counts(self)

    @property
    def frequency(self) -> np.ndarray:
        return self.occurrence / self.n

    def with_matrix(self, matrix) -> "DisjunctiveTable":
        return DisjunctiveTable(self.schema, matrix, self.reference, self.fact_labels)

    def __eq__(self, other):
        if not isinstance(other, DisjunctiveTable):
            return NotImplemented
        return (
            self.schema == other.schema
            and self.fact_labels == other.fact_labels
            and np.array_equal(self.matrix, other.matrix)
            and np.array_equal(self.reference, other.reference)
        )

    __hash__ = None


def _encode_row(fact: FactRecord, schema: DimensionSchema) -> np.ndarray:
    row = np.zeros(schema.K, dtype=np.int8)
    for off, code in zip(schema.offsets, fact.codes(schema)):
        row[off + code] = 1
    return row


def build_cdt(
    facts: Sequence[FactRecord], reference: ReferenceProfile, schema: DimensionSchema
) -> DisjunctiveTable:
    if len(facts) == 0:
        raise CodingError("empty sample: no facts to encode")
    if len(reference.values) != schema.p:
        raise CodingError(f"reference arity {len(reference.values)} does not match p={schema.p}")
    rows = [_encode_row(FactRecord.build(f.values, schema, f.label), schema) for f in facts]
    ref = _encode_row(ReferenceProfile.build(reference.values, schema, "ref"), schema)
    labels = tuple(f.label or f"IND{i + 1}" for i, f in enumerate(facts))
    cdt = DisjunctiveTable(schema, np.vstack(rows), ref, labels)
    absent = [schema.column_labels()[j] for j in np.flatnonzero(cdt.occurrence == 0)]
    if absent:
        warnings.warn(
            f"modalities absent from the sample (m=0, excluded from distances): {absent}",
            stacklevel=2,
        )
    return cdt


def occurrence_counts(cdt: DisjunctiveTable) -> np.ndarray:
    """Per-modality counts over the sample rows (reference excluded)."""
    return cdt.matrix.sum(axis=0, dtype=np.int64)


@dataclass(frozen=True)
class Violation:
    kind: str  # "row_sum" or "block_sum"
    where: str
    expected: int
    actual: int

    def __str__(self):
        return f"{self.kind} at {self.where}: expected {self.expected}, got {self.actual}"


@dataclass(frozen=True)
class IntegrityReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else "\n".join(map(str, self.violations))


def validate_cdt(cdt: DisjunctiveTable, schema: DimensionSchema | None = None) -> IntegrityReport:
    """Check that every row holds p ones and every dimension block sums to n.

    Returns an :class:`IntegrityReport`; an empty report is an explicit ok.
    """
    schema = schema or cdt.schema
    out = []
    for i, s in enumerate(cdt.matrix.sum(axis=1)):
        if s != schema.p:
            out.append(Violation("row_sum", f"row {i + 1} ({cdt.fact_labels[i]})", schema.p, int(s)))
    m = occurrence_counts(cdt)
    for j, dim in enumerate(schema.dimensions):
        s = int(m[schema.block(j)].sum())
        if s != cdt.n:
            out.append(Violation("block_sum", f"dimension {j + 1} ({dim.name})", cdt.n, s))
    ref_blocks = [int(cdt.reference[schema.block(j)].sum()) for j in range(schema.p)]
    for j, s in enumerate(ref_blocks):
        if s != 1:
            out.append(Violation("row_sum", f"reference, dimension {j + 1}", 1, s))
    return IntegrityReport(tuple(out))
