"""
Domain types: dimension schemas, fact records, reference profiles and
reduction masks.

Everything here is immutable once built. Dimension order and modality order
come from the schema and fix the column layout of every disjunctive table
derived from it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import FactError, MaskError, SchemaError


@dataclass(frozen=True)
class Dimension:
    name: str
    modalities: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "modalities", tuple(self.modalities))

    @property
    def size(self) -> int:
        return len(self.modalities)

    def index(self, label: str) -> int:
        return self.modalities.index(label)


def _schema_errors(dimensions: Sequence[Dimension]) -> list[str]:
    errors = []
    if len(dimensions) == 0:
        errors.append("schema has no dimensions")
    seen = set()
    for dim in dimensions:
        if dim.name in seen:
            errors.append(f"duplicate dimension name {dim.name!r}")
        seen.add(dim.name)
        if len(dim.modalities) < 2:
            errors.append(f"dimension with fewer than 2 modalities: {dim.name!r}")
        dupes = sorted({m for m in dim.modalities if dim.modalities.count(m) > 1})
        for m in dupes:
            errors.append(f"duplicate modality {m!r} in dimension {dim.name!r}")
    return errors


@dataclass(frozen=True)
class DimensionSchema:
    """Ordered dimensions, each with an ordered list of modalities.

    Construction validates; an invalid schema raises :class:`SchemaError`
    carrying every problem found, not just the first.
    """

    dimensions: tuple[Dimension, ...]

    def __post_init__(self):
        dims = tuple(
            d if isinstance(d, Dimension) else Dimension(d[0], tuple(d[1]))
            for d in self.dimensions
        )
        object.__setattr__(self, "dimensions", dims)
        errors = _schema_errors(dims)
        if errors:
            raise SchemaError(errors)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, Sequence[str]]]) -> "DimensionSchema":
        return cls(tuple(Dimension(name, tuple(mods)) for name, mods in pairs))

    @property
    def p(self) -> int:
        return len(self.dimensions)

    @property
    def sizes(self) -> tuple[int, ...]:
        """Modality count of each dimension block."""
        return tuple(d.size for d in self.dimensions)

    @property
    def K(self) -> int:
        return sum(self.sizes)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.dimensions)

    @property
    def offsets(self) -> tuple[int, ...]:
        """First CDT column of each dimension block."""
        out, acc = [], 0
        for k in self.sizes:
            out.append(acc)
            acc += k
        return tuple(out)

    def block(self, j: int) -> slice:
        start = self.offsets[j]
        return slice(start, start + self.dimensions[j].size)

    def block_ids(self) -> np.ndarray:
        """Length-K array mapping each CDT column to its dimension index."""
        return np.repeat(np.arange(self.p), self.sizes)

    def column_labels(self) -> list[str]:
        return [f"{d.name}:{m}" for d in self.dimensions for m in d.modalities]

    def to_pairs(self) -> list[tuple[str, list[str]]]:
        return [(d.name, list(d.modalities)) for d in self.dimensions]


def validate_schema(schema: Union[DimensionSchema, Iterable]) -> DimensionSchema:
    """Return a validated schema.

    Accepts a :class:`DimensionSchema` (re-checked, returned unchanged) or
    an iterable of ``(name, modalities)`` pairs. Raises :class:`SchemaError`
    with an itemized error list otherwise.
    """
    if isinstance(schema, DimensionSchema):
        errors = _schema_errors(schema.dimensions)
        if errors:
            raise SchemaError(errors)
        return schema
    return DimensionSchema.from_pairs(schema)


def _check_values(values, schema: DimensionSchema, what: str) -> tuple[str, ...]:
    if isinstance(values, Mapping):
        unknown = set(values) - set(schema.names)
        if unknown:
            raise FactError(f"{what}: unknown dimension(s) {sorted(unknown)}")
        missing = [n for n in schema.names if n not in values]
        if missing:
            raise FactError(f"{what}: wrong arity, missing dimension(s) {missing}")
        values = [values[n] for n in schema.names]
    values = tuple(values)
    if len(values) != schema.p:
        raise FactError(f"{what}: wrong arity, expected {schema.p} values, got {len(values)}")
    for dim, v in zip(schema.dimensions, values):
        if v not in dim.modalities:
            raise FactError(f"{what}: unknown modality {v!r} for dimension {dim.name!r}")
    return values


@dataclass(frozen=True)
class FactRecord:
    """One sampled fact: a modality label per dimension, in schema order."""

    values: tuple[str, ...]
    label: str = ""

    @classmethod
    def build(cls, values, schema: DimensionSchema, label: str = "") -> "FactRecord":
        return cls(_check_values(values, schema, label or "fact"), label)

    def codes(self, schema: DimensionSchema) -> list[int]:
        return [d.index(v) for d, v in zip(schema.dimensions, self.values)]


@dataclass(frozen=True)
class ReferenceProfile(FactRecord):
    """The profile every distance is measured against.

    Held apart from the sample: it never contributes to occurrence counts.
    """


def build_reference(row, schema: DimensionSchema) -> ReferenceProfile:
    return ReferenceProfile(_check_values(row, schema, "reference"), "ref")


@dataclass(frozen=True)
class ReductionMask:
    """Chromosome over dimensions; bit ``j`` set means dimension ``j`` is kept.

    The all-zero mask is rejected here because the distance is undefined
    without any retained dimension.
    """

    bits: tuple[int, ...]
    generation: int | None = field(default=None, compare=False)

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise MaskError(f"mask bits must be 0/1, got {bits}")
        if len(bits) == 0:
            raise MaskError("mask has zero length")
        if not any(bits):
            raise MaskError("empty reduction: mask retains no dimension")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def full(cls, p: int) -> "ReductionMask":
        return cls((1,) * p)

    @classmethod
    def from_array(cls, arr, generation=None) -> "ReductionMask":
        return cls(tuple(int(b) for b in np.asarray(arr).ravel()), generation)

    @property
    def p(self) -> int:
        return len(self.bits)

    @property
    def popcount(self) -> int:
        return sum(self.bits)

    @property
    def retained(self) -> tuple[int, ...]:
        """0-based indices of kept dimensions."""
        return tuple(j for j, b in enumerate(self.bits) if b)

    def as_array(self) -> np.ndarray:
        return np.array(self.bits, dtype=bool)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def parse_mask(text: str, p: int) -> ReductionMask:
    """Parse a bit string; the leftmost character is dimension 1.

    >>> parse_mask("011010", 6).retained
    (1, 2, 4)
    """
    text = text.strip()
    bad = sorted(set(text) - {"0", "1"})
    if bad:
        raise MaskError(f"non-binary character(s) {bad} in mask {text!r}")
    if len(text) != p:
        raise MaskError(f"mask length mismatch: expected {p}, got {len(text)}")
    return ReductionMask(tuple(int(c) for c in text))
