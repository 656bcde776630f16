"""
Analyst-facing summaries of evaluated masks.

* :func:`build_curve` - minimum and maximum fitness per kept-dimension count.
* :func:`pareto_front` - best mask per count, flagged when a smaller count
  does at least as well.
* :func:`emit_report` - JSON or CSV rendering of evaluations, sweeps,
  curves and fronts.

Displayed distances are rounded half away from zero to 3 decimals; JSON
output always carries the full-precision values as well.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

from .errors import ReportError
from .metric import EvaluationResult
from .model import ReductionMask, parse_mask
from .oracle import SweepResult, tie_break_key

FORMATS = ("json", "csv")


def round3(x: float) -> str:
    """``3.5733333 -> '3.573'``, ``0.0005 -> '0.001'`` (half away from zero)."""
    return str(Decimal(repr(float(x))).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class CurvePoint:
    k: int
    min_fitness: float
    max_fitness: float
    argmin_mask: ReductionMask
    argmax_mask: ReductionMask


@dataclass(frozen=True)
class ParetoPoint:
    k: int
    mask: ReductionMask
    fitness: float
    dominated: bool


def _entries(obj) -> list[tuple[ReductionMask, EvaluationResult]]:
    if isinstance(obj, SweepResult):
        return list(obj.entries)
    return list(obj)


def _group(entries):
    groups: dict[int, list] = {}
    for mask, res in entries:
        groups.setdefault(mask.popcount, []).append((mask, res))
    return dict(sorted(groups.items()))


def build_curve(entries) -> list[CurvePoint]:
    entries = _entries(entries)
    if not entries:
        raise ReportError("nothing to report")
    out = []
    for k, group in _group(entries).items():
        lo = min(group, key=lambda e: tie_break_key(e[0], e[1].fitness))
        # max witness: highest fitness, then smallest bit string
        hi = min(group, key=lambda e: (-e[1].fitness, str(e[0])))
        out.append(CurvePoint(k, lo[1].fitness, hi[1].fitness, lo[0], hi[0]))
    return out


def pareto_front(entries) -> list[ParetoPoint]:
    """Per-k minima. A point is dominated when some smaller k reaches a
    fitness at least as low."""
    pts = build_curve(entries)
    out = []
    best_so_far = float("inf")
    for pt in pts:
        out.append(ParetoPoint(pt.k, pt.argmin_mask, pt.min_fitness, best_so_far <= pt.min_fitness))
        best_so_far = min(best_so_far, pt.min_fitness)
    return out


def _labels(n, labels):
    return list(labels) if labels else [f"IND{i + 1}" for i in range(n)]


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _eval_doc(res: EvaluationResult, labels):
    return {
        "mask": str(res.mask),
        "popcount": res.mask.popcount,
        "distances": list(res.distances),
        "rendered": [round3(d) for d in res.distances],
        "fitness": res.fitness,
        "argmin": [labels[i] for i in res.argmin],
    }


def emit_report(obj, fmt: str = "csv", labels: Sequence[str] | None = None) -> str:
    """Render an evaluation, sweep, curve or Pareto front.

    ``obj`` may be an :class:`EvaluationResult`, a :class:`SweepResult` (or a
    list of ``(mask, result)`` entries), a list of :class:`CurvePoint` or a
    list of :class:`ParetoPoint`. ``labels`` names the facts (``IND1``...
    by default).
    """
    if fmt not in FORMATS:
        raise ReportError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if isinstance(obj, EvaluationResult):
        labels = _labels(len(obj.distances), labels)
        doc = _eval_doc(obj, labels)
        if fmt == "json":
            return json.dumps({"kind": "evaluation", "facts": labels, **doc}, indent=2) + "\n"
        row = [doc["mask"], *doc["rendered"], round3(obj.fitness), ";".join(doc["argmin"])]
        return _csv(["mask", *labels, "fitness", "argmin"], [row])

    items = _entries(obj)
    if not items:
        raise ReportError("nothing to report")
    first = items[0]
    if isinstance(first, CurvePoint):
        if fmt == "json":
            recs = [
                {"k": c.k, "min_fitness": c.min_fitness, "max_fitness": c.max_fitness,
                 "argmin_mask": str(c.argmin_mask), "argmax_mask": str(c.argmax_mask)}
                for c in items
            ]
            return json.dumps({"kind": "curve", "points": recs}, indent=2) + "\n"
        rows = [[c.k, round3(c.min_fitness), round3(c.max_fitness), c.argmin_mask, c.argmax_mask] for c in items]
        return _csv(["k", "min_fitness", "max_fitness", "argmin_mask", "argmax_mask"], rows)
    if isinstance(first, ParetoPoint):
        if fmt == "json":
            recs = [{"k": q.k, "mask": str(q.mask), "fitness": q.fitness, "dominated": q.dominated} for q in items]
            return json.dumps({"kind": "pareto", "points": recs}, indent=2) + "\n"
        rows = [[q.k, q.mask, round3(q.fitness), int(q.dominated)] for q in items]
        return _csv(["k", "mask", "fitness", "dominated"], rows)

    labels = _labels(len(first[1].distances), labels)
    if fmt == "json":
        docs = [_eval_doc(res, labels) for _, res in items]
        return json.dumps({"kind": "sweep", "facts": labels, "entries": docs}, indent=2) + "\n"
    rows = [
        [str(m), m.popcount, round3(r.fitness), repr(r.fitness), ";".join(labels[i] for i in r.argmin)]
        for m, r in items
    ]
    return _csv(["mask", "popcount", "fitness", "fitness_full", "argmin"], rows)


def load_report(text: str):
    """Rebuild the object behind a JSON report; returns ``(obj, labels)``."""
    doc = json.loads(text)
    kind = doc.get("kind")

    def result(d, labels):
        mask = parse_mask(d["mask"], len(d["mask"]))
        return EvaluationResult(mask, tuple(d["distances"]), d["fitness"],
                                tuple(labels.index(a) for a in d["argmin"]))

    if kind == "evaluation":
        return result(doc, doc["facts"]), doc["facts"]
    if kind == "sweep":
        rs = [result(d, doc["facts"]) for d in doc["entries"]]
        return SweepResult(tuple((r.mask, r) for r in rs)), doc["facts"]
    if kind == "curve":
        pts = [CurvePoint(d["k"], d["min_fitness"], d["max_fitness"],
                          parse_mask(d["argmin_mask"], len(d["argmin_mask"])),
                          parse_mask(d["argmax_mask"], len(d["argmax_mask"])))
               for d in doc["points"]]
        return pts, None
    if kind == "pareto":
        pts = [ParetoPoint(d["k"], parse_mask(d["mask"], len(d["mask"])), d["fitness"], d["dominated"])
               for d in doc["points"]]
        return pts, None
    raise ReportError(f"unknown report kind {kind!r}")
