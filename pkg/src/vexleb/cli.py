"""Command-line runner: load a scenario file, evaluate its conditions and
refinement study, and emit machine-readable reports.

    vexleb run scenario.json --resolutions 64,256,1024 --seed 0 \
        --out-dir out --format both

Exit codes: 0 on completion, 2 on validation or precondition failures,
1 on internal errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import traceback
from pathlib import Path

from . import __version__
from .errors import DomainError, PreconditionError, ValidationError
from .report import write_csv, write_json
from .scenario import Scenario
from .verify import refinement_study

__all__ = ["load_scenario", "run", "emit_report", "main"]


def load_scenario(path) -> Scenario:
    """Parse and validate a scenario file; error messages carry the failing
    field."""
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"scenario file not found: {path}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"scenario parse error at line {exc.lineno}: {exc.msg}") from None
    sc = Scenario.from_dict(data)
    if sc.name == "scenario":
        sc.name = path.stem
    return sc


def run(scenario: Scenario, out_dir, fmt: str = "both", resolutions=None, seed=None) -> int:
    """Execute one scenario and write its reports.  Returns the exit code."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if resolutions:
        scenario.resolutions = [int(r) for r in resolutions]
    if seed is not None:
        scenario.seed = int(seed)
    try:
        mat = scenario.materialize(scenario.resolutions[-1])
        geometry = mat.geometry_summary()
        reports = mat.evaluate_conditions()
        study = None
        if len(scenario.resolutions) >= 3 and (scenario.conditions or scenario.operator):
            study = refinement_study(scenario, scenario.resolutions)
    except (ValidationError, PreconditionError, DomainError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except Exception:
        traceback.print_exc()
        return 1
    results = {
        "meta": {"name": scenario.name, "seed": scenario.seed,
                 "version": __version__, "scenario": scenario.to_dict()},
        "geometry": geometry,
        "conditions": [
            {"name": name, "value": rep.value, "argmax_t": rep.argmax_t,
             "resolution": rep.resolution, "curve_ref": f"{scenario.name}_{name}.csv"}
            for name, rep in reports.items()
        ],
        "study": None if study is None else study.to_dict(),
    }
    emit_report(results, fmt, out, curves={name: rep for name, rep in reports.items()},
                study=study)
    return 0


def emit_report(results: dict, fmt: str, out_dir, curves=None, study=None):
    """Write the JSON report and/or CSV curves with deterministic bytes."""
    if not results:
        raise DomainError("nothing to report")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    name = results.get("meta", {}).get("name", "report")
    if fmt in ("json", "both"):
        write_json(out / f"{name}.json", results)
    if fmt in ("csv", "both"):
        for cname, rep in (curves or {}).items():
            write_csv(out / f"{name}_{cname}.csv", ["t", "value"],
                      zip(rep.ts.tolist(), rep.curve.tolist()))
        if study is not None:
            rows = []
            for i, n in enumerate(study.resolutions):
                for metric, series in study.condition_values.items():
                    rows.append((n, f"condition:{metric}", series[i]))
                if study.ratios[i] is not None:
                    rows.append((n, "ratio", study.ratios[i]))
            write_csv(out / f"{name}_study.csv", ["resolution", "metric", "value"], rows)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="vexleb", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="run a scenario file")
    runp.add_argument("scenario", help="path to the scenario JSON file")
    runp.add_argument("--resolutions", default=None,
                      help="comma-separated resolutions, e.g. 64,256,1024")
    runp.add_argument("--seed", type=int, default=None)
    runp.add_argument("--out-dir", default="out")
    runp.add_argument("--format", choices=("json", "csv", "both"), default="both")
    args = parser.parse_args(argv)
    if args.command == "run":
        try:
            scenario = load_scenario(args.scenario)
        except ValidationError as exc:
            sys.stderr.write(f"error: {exc}\n")
            return 2
        res = None
        if args.resolutions:
            try:
                res = [int(r) for r in args.resolutions.split(",")]
            except ValueError:
                sys.stderr.write("error: --resolutions expects comma-separated integers\n")
                return 2
        return run(scenario, args.out_dir, fmt=args.format, resolutions=res, seed=args.seed)
    return 1


if __name__ == "__main__":
    sys.exit(main())
