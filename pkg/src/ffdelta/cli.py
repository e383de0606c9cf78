"""Command-line front end.

All science lives in JSON experiment specs for provenance; flags cover
only the spec path, output paths, verbosity, and parallelism degree.

Subcommands:

* ``run <spec.json>``: build the sets, run the listed checks in order,
  write one JSON line per check (and an optional CSV summary).
* ``sweep <template.json> --q ... --seeds ...``: cross-product execution
  over field sizes and seeds, one CSV row per (q, seed, check).
* ``build-set <descriptor.json> -o points.json``: materialize a set
  descriptor into the point-literal file format.
* ``spectrum <points.json> -o spectrum.csv``: transform a point literal
  and dump (m, re, im, modulus) rows.

Exit status is 0 exactly when no applicable theorem-grade check fails
(not-applicable checks are marked but exit zero); spec and usage errors
exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .field import Field, parse_prime_power
from .pointspace import PointSet, Space
from .spectral import dft_fast
from .varieties import BivarPoly, LineSpec, line_set, paraboloid, sphere, subspace, product_set, variety_points
from .verify import REPORT_FIELDS, SINGLE_SET_CHECKS, VerificationReport, run_named_check

#: Seed derivation for sweep cells: descriptor seeds are shifted by a fixed
#: multiple of the cell seed so replays are reproducible from the CSV alone.
SWEEP_SEED_STRIDE = 1_000_003

CSV_COLUMNS = tuple(c for c in REPORT_FIELDS if c != "measured")

RANDOM_KINDS = {"random", "subset"}


class SpecError(ValueError):
    """A malformed experiment spec or descriptor."""


# ---------------------------------------------------------------------------
# Set descriptors
# ---------------------------------------------------------------------------


def build_described_set(space: Space, desc: dict) -> PointSet:
    if not isinstance(desc, dict) or "kind" not in desc:
        raise SpecError(f"set descriptor must be an object with a 'kind': {desc!r}")
    kind = desc["kind"]
    try:
        if kind == "full":
            return space.full_space()
        if kind == "random":
            _require_keys(desc, "size", "seed")
            return space.random_set(int(desc["size"]), int(desc["seed"]))
        if kind == "sphere":
            _require_keys(desc, "radius")
            return sphere(space, int(desc["radius"]))
        if kind == "paraboloid":
            return paraboloid(space)
        if kind == "variety":
            _require_keys(desc, "poly")
            return variety_points(BivarPoly.from_text(space.field, desc["poly"]), space)
        if kind == "line":
            if "vertical" in desc:
                return line_set(space, LineSpec(None, int(desc["vertical"])))
            _require_keys(desc, "slope", "intercept")
            return line_set(space, LineSpec(int(desc["slope"]), int(desc["intercept"])))
        if kind == "subspace":
            _require_keys(desc, "basis")
            return subspace(space, [tuple(int(c) for c in b) for b in desc["basis"]])
        if kind == "product":
            _require_keys(desc, "s1", "s2")
            return product_set(space, desc["s1"], desc["s2"])
        if kind == "literal":
            if "points" in desc:
                return space.set_from_points([tuple(p) for p in desc["points"]])
            if "file" in desc:
                with open(desc["file"]) as fh:
                    doc = json.load(fh)
                ps = PointSet.from_literal(doc)
                if ps.space != space:
                    raise SpecError(f"literal file {desc['file']} is over {ps.space}, spec wants {space}")
                return ps
            raise SpecError("literal descriptor needs 'points' or 'file'")
        if kind == "subset":
            _require_keys(desc, "of", "size", "seed")
            parent = build_described_set(space, desc["of"])
            size = int(desc["size"])
            if size > parent.card:
                raise SpecError(f"subset size {size} exceeds parent cardinality {parent.card}")
            import numpy as np

            rng = np.random.default_rng(int(desc["seed"]))
            return space.set_from_indices(rng.permutation(parent.points)[:size])
    except (ValueError, KeyError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"bad {kind!r} descriptor: {exc}") from exc
    raise SpecError(f"unknown set kind {kind!r}")


def _require_keys(desc: dict, *keys: str) -> None:
    for k in keys:
        if k not in desc:
            raise SpecError(f"descriptor kind {desc.get('kind')!r} requires {k!r}")


def _descriptor_seeds(desc: dict | None) -> list[int]:
    if not isinstance(desc, dict):
        return []
    out = []
    if desc.get("kind") in RANDOM_KINDS and "seed" in desc:
        out.append(int(desc["seed"]))
    if "of" in desc:
        out.extend(_descriptor_seeds(desc["of"]))
    return out


def _reseed(desc: dict, cell_seed: int) -> dict:
    """Shift every random seed in a descriptor tree by the sweep cell seed."""
    out = dict(desc)
    if out.get("kind") in RANDOM_KINDS and "seed" in out:
        out["seed"] = int(out["seed"]) + SWEEP_SEED_STRIDE * cell_seed
    if "of" in out:
        out["of"] = _reseed(out["of"], cell_seed)
    return out


# ---------------------------------------------------------------------------
# Experiment specs
# ---------------------------------------------------------------------------


@dataclass
class ExperimentSpec:
    field: str
    d: int
    set_a: dict
    set_b: dict | None
    checks: list[dict]
    output: str | None = None
    csv: str | None = None

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentSpec":
        if not isinstance(doc, dict):
            raise SpecError("spec must be a JSON object")
        for key in ("field", "d", "setA", "checks"):
            if key not in doc:
                raise SpecError(f"spec is missing required key {key!r}")
        checks = []
        for entry in doc["checks"]:
            if isinstance(entry, str):
                entry = {"name": entry}
            if not isinstance(entry, dict) or "name" not in entry:
                raise SpecError(f"check entry must be a name or an object with 'name': {entry!r}")
            checks.append(dict(entry))
        if not isinstance(doc["setA"], dict):
            raise SpecError("setA must be a set descriptor object")
        set_b = doc.get("setB")
        needs_b = any(c["name"] not in SINGLE_SET_CHECKS for c in checks)
        if needs_b and set_b is None:
            raise SpecError("spec lists two-set checks but has no setB")
        _validate_random_seeds(doc["setA"], "setA")
        if set_b is not None:
            _validate_random_seeds(set_b, "setB")
        return cls(
            field=str(doc["field"]),
            d=int(doc["d"]),
            set_a=doc["setA"],
            set_b=set_b,
            checks=checks,
            output=doc.get("output"),
            csv=doc.get("csv"),
        )


def _validate_random_seeds(desc: dict, label: str) -> None:
    """Every random descriptor carries an explicit seed: replayability."""
    if not isinstance(desc, dict):
        raise SpecError(f"{label} must be a set descriptor object")
    if desc.get("kind") in RANDOM_KINDS and "seed" not in desc:
        raise SpecError(f"{label}: {desc.get('kind')!r} descriptors must carry an explicit seed")
    if "of" in desc:
        _validate_random_seeds(desc["of"], label + ".of")


def execute_spec(spec: ExperimentSpec, seed_label: str = "") -> list[VerificationReport]:
    field = Field.from_string(spec.field)
    space = Space(field, spec.d)
    A = build_described_set(space, spec.set_a)
    B = build_described_set(space, spec.set_b) if spec.set_b is not None else None
    seeds_a = _descriptor_seeds(spec.set_a)
    seeds_b = _descriptor_seeds(spec.set_b)
    parts = []
    if seeds_a:
        parts.append("A=" + "/".join(map(str, seeds_a)))
    if seeds_b:
        parts.append("B=" + "/".join(map(str, seeds_b)))
    seed_str = seed_label or ";".join(parts)
    reports = []
    for entry in spec.checks:
        params = {k: v for k, v in entry.items() if k != "name"}
        report = run_named_check(entry["name"], A, B, **params)
        report.seed = seed_str
        reports.append(report)
    return reports


# ---------------------------------------------------------------------------
# Output writers
# ---------------------------------------------------------------------------


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def reports_to_csv(reports: list[VerificationReport]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for r in reports:
        row = r.to_row()
        lines.append(",".join(_csv_cell(row[c]) for c in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def reports_to_jsonl(reports: list[VerificationReport]) -> str:
    return "".join(r.to_json_line() + "\n" for r in reports)


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_run(args) -> int:
    with open(args.spec) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            print(f"error: {args.spec}: invalid JSON: {exc}", file=sys.stderr)
            return 2
    spec = ExperimentSpec.from_dict(doc)
    reports = execute_spec(spec)
    _emit(reports_to_jsonl(reports), args.output or spec.output)
    if spec.csv:
        _emit(reports_to_csv(reports), spec.csv)
    if args.verbose:
        for r in reports:
            mark = "PASS" if r.passed else ("N/A " if not r.applicable else "FAIL")
            print(f"{mark} {r.check_name} constant={r.empirical_constant:.4g}", file=sys.stderr)
    return 1 if any(r.failed_theorem for r in reports) else 0


def _sweep_cell(payload) -> list[VerificationReport]:
    """One sweep cell; failures come back as marked error rows so the
    sweep keeps going."""
    doc, q_token, cell_seed = payload
    try:
        cell = dict(doc)
        p, n = parse_prime_power(q_token)
        cell["field"] = f"{p}^{n}"
        cell["setA"] = _reseed(doc["setA"], cell_seed)
        if doc.get("setB") is not None:
            cell["setB"] = _reseed(doc["setB"], cell_seed)
        spec = ExperimentSpec.from_dict(cell)
        return execute_spec(spec, seed_label=str(cell_seed))
    except Exception as exc:
        return [
            VerificationReport(
                check_name="error",
                inputs_digest={"field": q_token, "d": doc.get("d")},
                measured={},
                bound_lhs=0.0,
                bound_rhs=0.0,
                threshold=0.0,
                empirical_constant=0.0,
                passed=False,
                applicable=False,
                seed=str(cell_seed),
                notes=f"error: {exc}",
            )
        ]


def _cmd_sweep(args) -> int:
    with open(args.template) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            print(f"error: {args.template}: invalid JSON: {exc}", file=sys.stderr)
            return 2
    ExperimentSpec.from_dict(doc)  # validate the template up front
    q_list = [t for t in args.q.split(",") if t] if args.q else []
    seeds = [int(s) for s in args.seeds.split(",") if s] if args.seeds else [0]
    cells = [(doc, q, s) for q in q_list for s in seeds]
    if args.jobs > 1 and cells:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_cell, cells))
    else:
        results = []
        for payload in cells:
            results.append(_sweep_cell(payload))
            if args.verbose:
                print(f"cell q={payload[1]} seed={payload[2]} done", file=sys.stderr)
    all_reports = [r for cell_reports in results for r in cell_reports]
    _emit(reports_to_csv(all_reports), args.output)
    if args.jsonl:
        _emit(reports_to_jsonl(all_reports), args.jsonl)
    had_error = any(r.check_name == "error" for r in all_reports)
    return 1 if had_error or any(r.failed_theorem for r in all_reports) else 0


def _cmd_build_set(args) -> int:
    with open(args.descriptor) as fh:
        doc = json.load(fh)
    for key in ("field", "d", "set"):
        if key not in doc:
            raise SpecError(f"descriptor file is missing required key {key!r}")
    _validate_random_seeds(doc["set"], "set")
    field = Field.from_string(str(doc["field"]))
    space = Space(field, int(doc["d"]))
    ps = build_described_set(space, doc["set"])
    _emit(json.dumps(ps.to_literal(), separators=(",", ":")) + "\n", args.output)
    return 0


def _cmd_spectrum(args) -> int:
    with open(args.points) as fh:
        doc = json.load(fh)
    ps = PointSet.from_literal(doc)
    spec = dft_fast(ps)
    if args.output is None or args.output == "-":
        spec.to_csv(sys.stdout)
    else:
        spec.to_csv(args.output)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ffdelta",
        description="difference/distance-set experiments over F_q^d",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the checks of one experiment spec")
    p_run.add_argument("spec")
    p_run.add_argument("-o", "--output", default=None, help="JSON-lines output path (default: spec's 'output' or stdout)")
    p_run.add_argument("-v", "--verbose", action="store_true")
    p_run.add_argument("--jobs", type=int, default=1)

    p_sweep = sub.add_parser("sweep", help="cross-product a template over field sizes and seeds")
    p_sweep.add_argument("template")
    p_sweep.add_argument("--q", required=True, help="comma-separated prime powers, e.g. 3,5,7 or 3^2")
    p_sweep.add_argument("--seeds", default="0", help="comma-separated cell seeds")
    p_sweep.add_argument("-o", "--output", default=None, help="CSV output path (default stdout)")
    p_sweep.add_argument("--jsonl", default=None, help="also write the JSON-lines stream here")
    p_sweep.add_argument("-v", "--verbose", action="store_true")
    p_sweep.add_argument("--jobs", type=int, default=1)

    p_build = sub.add_parser("build-set", help="materialize a set descriptor into a point literal")
    p_build.add_argument("descriptor")
    p_build.add_argument("-o", "--output", default=None)

    p_spec = sub.add_parser("spectrum", help="transform a point literal to a spectrum CSV")
    p_spec.add_argument("points")
    p_spec.add_argument("-o", "--output", default=None)

    args = parser.parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "sweep": _cmd_sweep,
        "build-set": _cmd_build_set,
        "spectrum": _cmd_spectrum,
    }
    try:
        return handlers[args.command](args)
    except (SpecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
