"""
Text formats.

Schema file
    One dimension per line, modalities in braces, order authoritative::

        # comment
        TRAVELLER { Foreign, Citizen }
        DESTINATION { Asia, Africa, Western Europe }

Facts file
    CSV (comma delimited, UTF-8). The header names every schema dimension in
    schema order, optionally preceded by a ``fact`` label column. A reference
    file has the same layout and exactly one data row.

CDT file
    JSON document with ``n``, ``p``, ``K``, the embedded schema, fact labels,
    the matrix as one bit string per row, occurrence counts and the reference
    row. Loading checks that the stored counts match the matrix.
"""
from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path

import numpy as np

from .coding import DisjunctiveTable
from .errors import CodingError, FactError, SchemaError
from .model import DimensionSchema, FactRecord, ReferenceProfile, build_reference

CDT_FORMAT = "olapreduce-cdt"
CDT_VERSION = 1

_LINE = re.compile(r"^\s*([^{},]+?)\s*\{(.*)\}\s*$")


def parse_schema(text: str) -> DimensionSchema:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _LINE.match(line)
        if not match:
            raise SchemaError(f"line {lineno}: syntax error, expected 'NAME {{ mod1, mod2, ... }}'")
        mods = [m.strip() for m in match.group(2).split(",")]
        if any(not m for m in mods):
            raise SchemaError(f"line {lineno}: empty modality name")
        pairs.append((match.group(1), mods))
    if not pairs:
        raise SchemaError("schema document is empty")
    return DimensionSchema.from_pairs(pairs)


def format_schema(schema: DimensionSchema) -> str:
    return "".join(f"{d.name} {{ {', '.join(d.modalities)} }}\n" for d in schema.dimensions)


def parse_facts_table(text: str, schema: DimensionSchema) -> list[FactRecord]:
    """Read a facts CSV; labels default to ``IND1``, ``IND2``..."""
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if any(c.strip() for c in r)]
    if not rows:
        raise FactError("facts table has no header")
    header = [h.strip() for h in rows[0]]
    labelled = bool(header) and header[0] == "fact"
    dims = header[1:] if labelled else header
    if dims != list(schema.names):
        unknown = [h for h in dims if h not in schema.names]
        detail = f"unknown header(s) {unknown}" if unknown else f"header {dims} is not schema order {list(schema.names)}"
        raise FactError(detail)
    facts = []
    for i, row in enumerate(rows[1:], 1):
        if len(row) != len(header):
            raise FactError(f"row {i}: ragged row, expected {len(header)} cells, got {len(row)}")
        cells = [c.strip() for c in row]
        label = cells[0] if labelled else f"IND{i}"
        values = cells[1:] if labelled else cells
        for dim, v in zip(schema.dimensions, values):
            if v not in dim.modalities:
                raise FactError(f"row {i}, column {dim.name}: unknown modality {v!r}")
        facts.append(FactRecord(tuple(values), label))
    return facts


def parse_reference(text: str, schema: DimensionSchema) -> ReferenceProfile:
    rows = parse_facts_table(text, schema)
    if len(rows) != 1:
        raise FactError(f"reference file must hold exactly one data row, found {len(rows)}")
    return build_reference(rows[0].values, schema)


def format_facts(facts, schema: DimensionSchema) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["fact", *schema.names])
    for f in facts:
        w.writerow([f.label, *f.values])
    return buf.getvalue()


def _bits(row) -> str:
    return "".join(str(int(b)) for b in row)


def dump_cdt(cdt: DisjunctiveTable) -> str:
    doc = {
        "format": CDT_FORMAT,
        "version": CDT_VERSION,
        "n": cdt.n,
        "p": cdt.p,
        "K": cdt.K,
        "schema": [{"name": n, "modalities": m} for n, m in cdt.schema.to_pairs()],
        "facts": list(cdt.fact_labels),
        "matrix": [_bits(r) for r in cdt.matrix],
        "occurrence": [int(x) for x in cdt.occurrence],
        "reference": _bits(cdt.reference),
    }
    return json.dumps(doc, indent=2) + "\n"


def load_cdt(text: str) -> DisjunctiveTable:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodingError(f"CDT file is not valid JSON: {exc}") from None
    if doc.get("format") != CDT_FORMAT:
        raise CodingError(f"not a CDT document (format={doc.get('format')!r})")
    schema = DimensionSchema.from_pairs((d["name"], d["modalities"]) for d in doc["schema"])
    rows = doc["matrix"]
    if any(set(r) - {"0", "1"} for r in rows + [doc["reference"]]):
        raise CodingError("CDT bit strings may only contain 0 and 1")
    matrix = np.array([[int(c) for c in r] for r in rows], dtype=np.int8).reshape(len(rows), -1)
    reference = np.array([int(c) for c in doc["reference"]], dtype=np.int8)
    cdt = DisjunctiveTable(schema, matrix, reference, tuple(doc.get("facts") or ()))
    for key, actual in (("n", cdt.n), ("p", cdt.p), ("K", cdt.K)):
        if doc.get(key, actual) != actual:
            raise CodingError(f"CDT header {key}={doc[key]} disagrees with content ({actual})")
    if "occurrence" in doc and list(doc["occurrence"]) != [int(x) for x in cdt.occurrence]:
        raise CodingError("stored occurrence counts disagree with the matrix")
    return cdt


def read_text(path) -> str:
    return Path(path).read_text(encoding="utf-8")
