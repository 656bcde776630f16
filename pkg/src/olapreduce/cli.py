"""
Command-line entry point.

Subcommands: ``encode``, ``evaluate``, ``sweep``, ``search``, ``calibrate``.
Input is either ``--cdt FILE`` (a CDT JSON file, or ``builtin:traveler``) or
the triple ``--facts --schema --ref``. Every run echoes its resolved
configuration on stderr as one JSON line prefixed with ``# config:``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
Failures print ``olapreduce: <category>: <detail>`` on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .coding import build_cdt, validate_cdt
from .errors import ReductionError
from .ga import GaConfig, run_ga
from .io import dump_cdt, load_cdt, parse_facts_table, parse_reference, parse_schema, read_text
from .metric import DistanceConfig, subset_fitness
from .model import parse_mask
from .oracle import calibrate_scale, sweep_all_masks
from .report import build_curve, emit_report, pareto_front

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_input(p):
    g = p.add_argument_group("input")
    g.add_argument("--cdt", help="CDT JSON file, or builtin:traveler")
    g.add_argument("--facts", help="facts CSV")
    g.add_argument("--schema", help="schema file")
    g.add_argument("--ref", help="reference CSV (one row)")


def _add_distance(p):
    p.add_argument("--variant", choices=["remove", "zero-facts"], default="remove")
    p.add_argument("--scale", default="retained", help="total | retained | unit | fixed:<lambda>")


def _add_out(p):
    p.add_argument("--out", help="directory for output files (stdout otherwise)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="olapreduce", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("encode", help="facts + schema + reference -> CDT JSON")
    p.add_argument("--facts", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--ref", required=True)
    _add_out(p)

    p = sub.add_parser("evaluate", help="distance table for one mask")
    _add_input(p)
    _add_distance(p)
    p.add_argument("--mask", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_out(p)

    p = sub.add_parser("sweep", help="evaluate every non-empty mask")
    _add_input(p)
    _add_distance(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_out(p)

    p = sub.add_parser("search", help="genetic search for the best mask")
    _add_input(p)
    _add_distance(p)
    d = GaConfig()
    p.add_argument("--pop", type=int, default=d.pop_size)
    p.add_argument("--gens", type=int, default=d.generations)
    p.add_argument("--limit", default="median0", help="positive number or median0")
    p.add_argument("--pm", type=float, default=d.mutation_rate)
    p.add_argument("--paper-compat-mutation", action="store_true")
    p.add_argument("--stagnation", type=int, default=d.stagnation)
    p.add_argument("--seed", type=int, default=d.seed)
    _add_out(p)

    p = sub.add_parser("calibrate", help="fit the scale constant against target distances")
    _add_input(p)
    p.add_argument("--variant", choices=["remove", "zero-facts"], default="zero-facts")
    p.add_argument("--mask", required=True)
    p.add_argument("--targets", required=True,
                   help="comma-separated distances, a file holding them, or builtin:published")
    _add_out(p)
    return parser


def _load_input(args):
    triple = [args.facts, args.schema, args.ref]
    if args.cdt and any(triple):
        raise UsageError("give either --cdt or --facts/--schema/--ref, not both")
    if args.cdt:
        if args.cdt.startswith("builtin:"):
            name = args.cdt.split(":", 1)[1]
            if name not in fixtures.BUILTIN_CDTS:
                raise UsageError(f"unknown builtin CDT {name!r}")
            return fixtures.BUILTIN_CDTS[name]()
        return load_cdt(read_text(args.cdt))
    if not all(triple):
        raise UsageError("input needs --cdt, or all of --facts, --schema and --ref")
    schema = parse_schema(read_text(args.schema))
    facts = parse_facts_table(read_text(args.facts), schema)
    ref = parse_reference(read_text(args.ref), schema)
    return build_cdt(facts, ref, schema)


def _distance(args) -> DistanceConfig:
    return DistanceConfig.parse(args.variant, args.scale)


def _targets(spec: str) -> list[float]:
    if spec == "builtin:published":
        return list(fixtures.PUBLISHED_DISTANCES)
    text = read_text(spec) if Path(spec).is_file() else spec
    try:
        return [float(x) for x in text.replace("\n", ",").split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--targets must be numbers, got {spec!r}") from None


def _emit(out_dir, files: dict[str, str], stdout_order: list[str]):
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name, text in files.items():
            (out / name).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write("\n".join(files[k] for k in stdout_order))


def _echo(config: dict, out_dir):
    line = json.dumps(config, sort_keys=True)
    print(f"# config: {line}", file=sys.stderr)
    if out_dir:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        (Path(out_dir) / "config.json").write_text(line + "\n", encoding="utf-8")


def _inputs(args) -> dict:
    return {k: getattr(args, k, None) for k in ("cdt", "facts", "schema", "ref")}


def run_command(args) -> int:
    cmd = args.command
    if cmd == "encode":
        _echo({"command": cmd, **_inputs(args)}, args.out)
        cdt = _load_input(argparse.Namespace(cdt=None, facts=args.facts, schema=args.schema, ref=args.ref))
        _emit(args.out, {"cdt.json": dump_cdt(cdt)}, ["cdt.json"])
        return EXIT_OK

    cdt = _load_input(args)
    integrity = validate_cdt(cdt)
    if not integrity.ok:
        raise ReductionError(f"CDT integrity violated: {integrity}")

    if cmd == "evaluate":
        dist = _distance(args)
        mask = parse_mask(args.mask, cdt.p)
        _echo({"command": cmd, **_inputs(args), "mask": str(mask), **dist.describe()}, args.out)
        res = subset_fitness(cdt, mask, dist)
        files = {
            "evaluation.csv": emit_report(res, "csv", cdt.fact_labels),
            "evaluation.json": emit_report(res, "json", cdt.fact_labels),
        }
        _emit(args.out, files, [f"evaluation.{args.format}"])
    elif cmd == "sweep":
        dist = _distance(args)
        _echo({"command": cmd, **_inputs(args), **dist.describe()}, args.out)
        sweep = sweep_all_masks(cdt, dist)
        ext = args.format
        files = {
            f"sweep.{ext}": emit_report(sweep, ext, cdt.fact_labels),
            f"curve.{ext}": emit_report(build_curve(sweep), ext),
            f"pareto.{ext}": emit_report(pareto_front(sweep), ext),
        }
        _emit(args.out, files, list(files))
    elif cmd == "search":
        dist = _distance(args)
        try:
            limit = args.limit if args.limit == "median0" else float(args.limit)
            ga = GaConfig(
                pop_size=args.pop, generations=args.gens, limit=limit, mutation_rate=args.pm,
                paper_compat_mutation=args.paper_compat_mutation, stagnation=args.stagnation,
                seed=args.seed,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        _echo({"command": cmd, **_inputs(args), **dist.describe(), "ga": ga.describe()}, args.out)
        result = run_ga(cdt, ga, dist)
        best = {
            "best_mask": str(result.best_mask),
            "best_fitness": result.best.fitness,
            "argmin": list(result.best.argmin_labels(cdt)),
            "generations": len(result.generations),
            "limit": result.limit,
        }
        files = {
            "generations.jsonl": "".join(line + "\n" for line in result.log_lines()),
            "best.json": json.dumps(best, sort_keys=True) + "\n",
        }
        _emit(args.out, files, ["generations.jsonl", "best.json"])
    elif cmd == "calibrate":
        mask = parse_mask(args.mask, cdt.p)
        targets = _targets(args.targets)
        _echo({"command": cmd, **_inputs(args), "mask": str(mask), "variant": args.variant,
               "targets": targets}, args.out)
        cal = calibrate_scale(cdt, mask, args.variant, targets)
        doc = {"lambda": cal.lam, "residual": cal.residual, "unit_distances": list(cal.unit)}
        _emit(args.out, {"calibration.json": json.dumps(doc, sort_keys=True) + "\n"}, ["calibration.json"])
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return run_command(args)
    except UsageError as exc:
        print(f"olapreduce: usage-error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ReductionError, OSError) as exc:
        print(f"olapreduce: data-error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        print(f"olapreduce: internal-error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
