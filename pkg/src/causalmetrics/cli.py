"""Command-line frontend over JSON documents.

One subcommand per library operation; a single JSON result on stdout, a
human summary on stderr with --verbose.  Exit codes: 0 on success (a failed
verification verdict is still a valid result), 1 on usage/parse errors, 2 on
domain errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from . import _jsonfmt
from .errors import CausalMetricsError, SchemaError, ShapeError
from .extreal import to_json as ext_to_json
from .finspace import (
    CostMatrix,
    SpaceKind,
    check_lipschitz,
    dualize,
    metric_closure,
    preorders,
    validate,
    verify,
)
from .lorentz import LorentzFrame, ScalarProduct, antinorm, classify, orthonormal_basis
from .pathval import PolylinePath, delta_line, gain_line, refine_valuation, rho_line
from .spacetime import (
    MetricField,
    Quadrature,
    RhoGConfig,
    causally_precedes,
    event_metric,
    proper_time,
    rho_g_estimate,
)

SEED_ENV = "CAUSAL_METRICS_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_doc(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc


def _vector(text: str) -> list:
    parts = [p for p in text.split(",") if p.strip() != ""]
    if not parts:
        raise ValueError("empty vector")
    return [float(p) for p in parts]


def _field_flag(text: str) -> tuple:
    text = text.strip().lower()
    if text == "minkowski":
        return ("minkowski", None)
    head, _, tail = text.partition(":")
    if head == "power" and tail:
        return ("power", float(tail))
    raise ValueError(f"unknown field {text!r} (expected minkowski or power:p)")


def _build_field(spec, dim: int) -> MetricField:
    if isinstance(spec, tuple):
        return (
            MetricField.minkowski(dim)
            if spec[0] == "minkowski"
            else MetricField.diagonal_power(dim, spec[1])
        )
    return MetricField.from_json(spec, dim)


def _parse_path(doc) -> PolylinePath:
    try:
        return PolylinePath.from_json(doc)
    except (TypeError, ValueError) as exc:
        raise SchemaError(str(exc)) from exc


def _parse_event(value, label: str) -> list:
    try:
        return [float(v) for v in value]
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad event {label}: {exc}") from exc


def _matrix_json(matrix: CostMatrix) -> dict:
    return matrix.to_json()


def cmd_verify(args) -> dict:
    matrix = CostMatrix.from_json(_load_doc(args.input))
    report = verify(matrix, SpaceKind(args.kind))
    if args.verbose:
        verdict = "pass" if report.passed else f"{len(report.violations)} violations"
        print(f"verify {args.kind}: {verdict}", file=sys.stderr)
    return report.to_json()


def cmd_closure(args) -> dict:
    matrix = CostMatrix.from_json(_load_doc(args.input))
    result = metric_closure(matrix)
    doc = _matrix_json(result.space.matrix)
    doc["lowered"] = [list(row) for row in result.lowered]
    if args.verbose:
        changed = sum(sum(row) for row in result.lowered)
        print(f"closure: {changed} entries lowered", file=sys.stderr)
    return doc


def cmd_dualize(args) -> dict:
    space = validate(CostMatrix.from_json(_load_doc(args.input)), SpaceKind(args.kind))
    dual = dualize(space)
    doc = {"kind": dual.kind.value}
    doc.update(_matrix_json(dual.matrix))
    if args.verbose:
        print(f"dualize: {space.kind.value} -> {dual.kind.value}", file=sys.stderr)
    return doc


def cmd_preorders(args) -> dict:
    space = validate(CostMatrix.from_json(_load_doc(args.input)), SpaceKind.RHO)
    pre = preorders(space)
    return {
        "reflective": [list(row) for row in pre.reflective],
        "coreflective": [list(row) for row in pre.coreflective],
    }


def cmd_lipschitz(args) -> dict:
    doc = _load_doc(args.input)
    if not isinstance(doc, dict) or not {"X", "Y", "f", "lambda"} <= doc.keys():
        raise SchemaError('lipschitz document needs "X", "Y", "f" and "lambda"')
    X = validate(CostMatrix.from_json(doc["X"]), SpaceKind.GAMMA)
    Y = validate(CostMatrix.from_json(doc["Y"]), SpaceKind.GAMMA)
    if not isinstance(doc["f"], list) or not all(isinstance(i, int) for i in doc["f"]):
        raise SchemaError('"f" must be a list of target indices')
    if isinstance(doc["lambda"], bool) or not isinstance(doc["lambda"], (int, float)):
        raise SchemaError('"lambda" must be a number')
    result = check_lipschitz(doc["f"], X, Y, doc["lambda"])
    return {"ok": result.ok, "witness": list(result.witness) if result.witness else None}


def _frame_from(args) -> LorentzFrame:
    if args.input:
        return LorentzFrame.from_json(_load_doc(args.input))
    if args.dim:
        return LorentzFrame.standard(args.dim)
    raise SchemaError("provide a frame document or --dim for the standard frame")


def cmd_classify(args) -> dict:
    frame = _frame_from(args)
    return {"class": classify(frame, args.x).value}


def cmd_antinorm(args) -> dict:
    frame = _frame_from(args)
    return {"antinorm": ext_to_json(antinorm(frame, args.x))}


def cmd_basis(args) -> dict:
    doc = _load_doc(args.input)
    if isinstance(doc, dict) and "g" in doc:
        product = ScalarProduct(doc["g"])
    else:
        product = LorentzFrame.from_json(doc).product
    basis = orthonormal_basis(product)
    return {
        "basis": [[float(x) for x in basis.vectors[:, j]] for j in range(product.dim)],
        "signature": list(basis.signature),
        "index": basis.index,
    }


def cmd_causal(args) -> dict:
    dim = args.dim or len(args.x)
    if len(args.x) != dim or len(args.y) != dim:
        raise SchemaError("event dimensions disagree with --dim")
    field = _build_field(args.field, dim)
    return {"precedes": causally_precedes(field, args.x, args.y)}


def cmd_propertime(args) -> dict:
    path = _parse_path(_load_doc(args.input))
    dim = path.point_array().shape[1]
    field = _build_field(args.field, dim)
    if args.quadrature is not None:
        quad = args.quadrature
    else:
        quad = Quadrature.exact() if field.is_flat else Quadrature.midpoint(8)
    value = proper_time(field, path, quad)
    if args.verbose:
        print(f"proper time ({quad}): {value}", file=sys.stderr)
    return {"proper_time": ext_to_json(value)}


def cmd_rhog(args) -> dict:
    doc = _load_doc(args.input) if args.input else {}
    if not isinstance(doc, dict):
        raise SchemaError("scenario must be an object")
    x = args.x if args.x is not None else doc.get("x")
    y = args.y if args.y is not None else doc.get("y")
    if x is None or y is None:
        raise SchemaError("rhog needs both endpoints (--x/--y or scenario)")
    x = _parse_event(x, "x")
    y = _parse_event(y, "y")
    dim = args.dim or doc.get("dim") or len(x)
    field_spec = args.field if args.field is not None else doc.get("field", "minkowski")
    field = _build_field(field_spec, int(dim))

    cfg = RhoGConfig.from_json(doc.get("config", {}))
    overrides = {}
    if args.controls is not None:
        overrides["controls"] = args.controls
    if args.iters is not None:
        overrides["iters"] = args.iters
    if args.restarts is not None:
        overrides["restarts"] = args.restarts
    if args.quadrature is not None:
        overrides["quadrature"] = args.quadrature
    if args.seed is not None:
        overrides["seed"] = args.seed
    elif "config" not in doc or "seed" not in doc["config"]:
        try:
            overrides["seed"] = int(os.environ.get(SEED_ENV, "0"))
        except ValueError as exc:
            raise SchemaError(f"bad {SEED_ENV}: {exc}") from exc
    cfg = dataclasses.replace(cfg, **overrides)

    result = rho_g_estimate(field, x, y, cfg)
    if args.verbose:
        print(
            f"rho_g estimate: {result.rho} ({cfg.restarts} restarts, seed {cfg.seed})",
            file=sys.stderr,
        )
    return {
        "rho": ext_to_json(result.rho),
        "path": result.path.to_json() if result.path is not None else None,
        "trace": [ext_to_json(v) for v in result.trace],
    }


def cmd_valuate(args) -> dict:
    path = _parse_path(_load_doc(args.input))
    if args.field is not None:
        dim = path.point_array().shape[1]
        metric = event_metric(_build_field(args.field, dim))
    elif args.kind is not None:
        pts = path.point_array()
        if pts.shape[1] != 1:
            raise SchemaError("line metrics need one-dimensional path points")
        path = PolylinePath.of(path.params, [float(p) for p in pts[:, 0]])
        metric = {"delta": delta_line, "rho": rho_line, "gamma": gain_line}[args.kind]()
    else:
        raise SchemaError("valuate needs --kind (line metric) or --field (event metric)")
    trace = refine_valuation(metric, path.at, args.levels)
    if args.verbose:
        print(f"valuation ({metric.name}, L={args.levels}): {trace.estimate}", file=sys.stderr)
    return {"estimate": ext_to_json(trace.estimate), "trace": trace.to_json()}


def build_parser() -> _Parser:
    parser = _Parser(prog="causalmetrics", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, handler, help_text, *, input_arg=True, input_optional=False):
        p = sub.add_parser(name, help=help_text)
        if input_arg:
            if input_optional:
                p.add_argument("input", nargs="?", default=None, help="JSON file or - for stdin")
            else:
                p.add_argument("input", nargs="?", default="-", help="JSON file or - for stdin")
        p.add_argument("--verbose", action="store_true")
        p.set_defaults(handler=handler)
        return p

    p = add("verify", cmd_verify, "check the axioms of a matrix")
    p.add_argument("--kind", required=True, choices=["delta", "rho", "gamma"])

    add("closure", cmd_closure, "least rho-metric below a cost table")

    p = add("dualize", cmd_dualize, "negate entries, flipping rho <-> gamma")
    p.add_argument("--kind", required=True, choices=["delta", "rho", "gamma"])

    add("preorders", cmd_preorders, "reflective and coreflective preorders")

    add("lipschitz", cmd_lipschitz, "check a Lipschitz constant between gamma spaces")

    p = add("classify", cmd_classify, "timelike / lightlike / spacelike", input_optional=True)
    p.add_argument("--x", type=_vector, required=True, help="vector, comma separated")
    p.add_argument("--dim", type=int, help="standard frame dimension (no input file)")

    p = add("antinorm", cmd_antinorm, "Lorentz antinorm of a vector", input_optional=True)
    p.add_argument("--x", type=_vector, required=True)
    p.add_argument("--dim", type=int)

    add("basis", cmd_basis, "orthonormal basis, signature and index")

    p = add("causal", cmd_causal, "causality order between events", input_arg=False)
    p.add_argument("--field", type=_field_flag, default=("minkowski", None))
    p.add_argument("--dim", type=int)
    p.add_argument("--x", type=_vector, required=True)
    p.add_argument("--y", type=_vector, required=True)

    p = add("propertime", cmd_propertime, "proper time of a polyline path")
    p.add_argument("--field", type=_field_flag, default=("minkowski", None))
    p.add_argument("--quadrature", type=Quadrature.parse, default=None)

    p = add("rhog", cmd_rhog, "variational geodesic rho-metric estimate", input_optional=True)
    p.add_argument("--field", type=_field_flag, default=None)
    p.add_argument("--dim", type=int)
    p.add_argument("--x", type=_vector)
    p.add_argument("--y", type=_vector)
    p.add_argument("--quadrature", type=Quadrature.parse, default=None)
    p.add_argument("--controls", type=int, default=None)
    p.add_argument("--iters", type=int, default=None)
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help=f"falls back to ${SEED_ENV}")

    p = add("valuate", cmd_valuate, "dyadic refinement valuation of a path")
    p.add_argument("--kind", choices=["delta", "rho", "gamma"], default=None)
    p.add_argument("--field", type=_field_flag, default=None)
    p.add_argument("--levels", type=int, default=6)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        doc = args.handler(args)
    except (SchemaError, ShapeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CausalMetricsError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(_jsonfmt.dumps(doc) + "\n")
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
