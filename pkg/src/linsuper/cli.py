"""Command-line surface: instance files in, verdicts and certificates out.

Machine-readable reports are deterministic JSON documents (sorted keys, all
rationals as exact "p/q" strings); identical inputs and options produce
byte-identical reports. Exit codes carry the verdict: 0/1 per command, 2 for
usage or parse errors, 3 for an internal invariant violation (a certificate
that failed its own re-verification, which should never happen).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .errors import (
    ConstraintError,
    ContractViolationError,
    InputValidationError,
    InternalInvariantError,
)
from .model import (
    FunctionFamily,
    IncidenceMatrix,
    Point,
    PointSet,
    QuantizeMerge,
    build_incidence,
    quantize_family,
)
from .paths import (
    ClosedPathCertificate,
    detect,
    enumerate_minimal,
    verify_certificate,
)
from .rationals import format_rational, parse_rational
from .represent import is_representable, make_witness, make_witness
from .ridge import (
    Direction,
    ParallelLinesParams,
    RidgeInstance,
    StaircaseParams,
    TransversalCurveParams,
    ZigzagParams,
    classify_ni,
    direction,
    generate_pathfree_example,
    hypercube_path,
    ridge_instance,
)

FORMAT_VERSION = 1


@dataclass(frozen=True)
class Options:
    mode: str = "fundamental"
    max_support: int = 8
    quantize_eps: Fraction | None = None
    seed: int = 0


@dataclass(frozen=True)
class InstanceDocument:
    """Parsed instance file: the point set, the function family, and extras."""

    points: PointSet
    family: FunctionFamily
    directions: tuple[Direction, ...] | None
    target: dict[int, Fraction] | None
    options: Options
    quantize_merges: tuple[QuantizeMerge, ...] = ()

    def incidence(self) -> IncidenceMatrix:
        return build_incidence(self.points, self.family)

    def ridge(self) -> RidgeInstance:
        if self.directions is None:
            raise InputValidationError("this command needs ridge directions in the instance file")
        return ridge_instance(self.directions, self.points)


def _reject_float(literal: str) -> None:
    raise InputValidationError(
        f"non-integer numeric literal {literal!r}: write exact values as strings, "
        'e.g. "1/3" or "0.25"'
    )


def parse_instance_text(text: str) -> InstanceDocument:
    doc = json.loads(text, parse_float=_reject_float)
    if not isinstance(doc, dict):
        raise InputValidationError("instance document must be a JSON object")
    version = doc.get("format", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise InputValidationError(f"unsupported format version {version!r}")

    raw_points = doc.get("points")
    if not isinstance(raw_points, list):
        raise InputValidationError('instance needs a "points" list')
    points = []
    for k, entry in enumerate(raw_points):
        if not isinstance(entry, dict) or "id" not in entry:
            raise InputValidationError(f'points[{k}] must be an object with an "id"')
        pid = entry["id"]
        if not isinstance(pid, int) or isinstance(pid, bool):
            raise InputValidationError(f"points[{k}].id must be an integer, got {pid!r}")
        coords = None
        if entry.get("coords") is not None:
            coords = tuple(parse_rational(c) for c in entry["coords"])
        points.append(Point(pid, coords))
    point_set = PointSet(tuple(points))

    functions = doc.get("functions")
    if not isinstance(functions, dict) or "kind" not in functions:
        raise InputValidationError('instance needs a "functions" object with a "kind"')
    directions: tuple[Direction, ...] | None = None
    if functions["kind"] == "tabulated":
        tables_raw = functions.get("tables")
        if not isinstance(tables_raw, list) or not tables_raw:
            raise InputValidationError('tabulated functions need a nonempty "tables" list')
        tables = []
        for i, table_raw in enumerate(tables_raw):
            if not isinstance(table_raw, dict):
                raise InputValidationError(f"functions.tables[{i}] must be an object")
            table = {}
            for key, value in table_raw.items():
                try:
                    pid = int(key)
                except ValueError:
                    raise InputValidationError(
                        f"functions.tables[{i}] key {key!r} is not a point id"
                    ) from None
                table[pid] = parse_rational(value)
            missing = [pid for pid in point_set.ids if pid not in table]
            if missing:
                raise InputValidationError(f"function {i} misses values for point ids {missing}")
            tables.append(table)
        family = FunctionFamily(tuple(tables))
    elif functions["kind"] == "ridge":
        dirs_raw = functions.get("directions")
        if not isinstance(dirs_raw, list) or not dirs_raw:
            raise InputValidationError('ridge functions need a nonempty "directions" list')
        directions = tuple(direction([parse_rational(c) for c in vec]) for vec in dirs_raw)
        family = ridge_instance(directions, point_set).family
    else:
        raise InputValidationError(f"unknown functions kind {functions['kind']!r}")

    target = None
    if doc.get("target") is not None:
        if not isinstance(doc["target"], dict):
            raise InputValidationError('"target" must be an object mapping point ids to values')
        target = {}
        for key, value in doc["target"].items():
            try:
                pid = int(key)
            except ValueError:
                raise InputValidationError(f"target key {key!r} is not a point id") from None
            if pid not in point_set.ids:
                raise InputValidationError(f"target mentions unknown point id {pid}")
            target[pid] = parse_rational(value)

    options = _parse_options(doc.get("options"))
    merges: tuple[QuantizeMerge, ...] = ()
    if options.quantize_eps is not None and options.quantize_eps > 0:
        family, merges = quantize_family(family, options.quantize_eps)
    return InstanceDocument(point_set, family, directions, target, options, merges)


def _parse_options(raw: Any) -> Options:
    if raw is None:
        return Options()
    if not isinstance(raw, dict):
        raise InputValidationError('"options" must be an object')
    known = {"mode", "max_support", "quantize_eps", "seed"}
    unknown = set(raw) - known
    if unknown:
        raise InputValidationError(f"unknown options {sorted(unknown)}")
    mode = raw.get("mode", "fundamental")
    if mode not in ("fundamental", "exhaustive"):
        raise InputValidationError(f"options.mode must be fundamental or exhaustive, got {mode!r}")
    max_support = raw.get("max_support", 8)
    if not isinstance(max_support, int) or isinstance(max_support, bool) or max_support < 2:
        raise InputValidationError("options.max_support must be an integer >= 2")
    eps = raw.get("quantize_eps")
    quantize_eps = parse_rational(eps) if eps is not None else None
    seed = raw.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise InputValidationError("options.seed must be an integer")
    return Options(mode, max_support, quantize_eps, seed)


def load_instance(path: str | Path) -> InstanceDocument:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputValidationError(f"cannot read instance file {path}: {exc}") from None
    try:
        return parse_instance_text(text)
    except json.JSONDecodeError as exc:
        raise InputValidationError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None


def instance_to_jsonable(
    points: PointSet,
    *,
    directions: Sequence[Direction] | None = None,
    family: FunctionFamily | None = None,
    target: dict[int, Fraction] | None = None,
    options: Options | None = None,
) -> dict:
    doc: dict[str, Any] = {"format": FORMAT_VERSION}
    doc["points"] = [
        {"id": p.id}
        if p.coords is None
        else {"id": p.id, "coords": [format_rational(c) for c in p.coords]}
        for p in points.points
    ]
    if directions is not None:
        doc["functions"] = {
            "kind": "ridge",
            "directions": [[format_rational(c) for c in d.vector] for d in directions],
        }
    elif family is not None:
        doc["functions"] = {
            "kind": "tabulated",
            "tables": [
                {str(pid): format_rational(table[pid]) for pid in points.ids}
                for table in family.tables
            ],
        }
    else:
        raise ValueError("either directions or family is required")
    if target is not None:
        doc["target"] = {str(pid): format_rational(v) for pid, v in target.items()}
    if options is not None:
        doc["options"] = _options_jsonable(options)
    return doc


def _options_jsonable(options: Options) -> dict:
    return {
        "mode": options.mode,
        "max_support": options.max_support,
        "quantize_eps": None
        if options.quantize_eps is None
        else format_rational(options.quantize_eps),
        "seed": options.seed,
    }


def _certificate_jsonable(cert: ClosedPathCertificate) -> dict:
    return {
        "support": list(cert.support),
        "lambda": [format_rational(x) for x in cert.integer_lambda()],
        "lambda_normalized": [format_rational(x) for x in cert.normalized_lambda()],
        "minimal": cert.minimal,
    }


def _merges_jsonable(merges: Sequence[QuantizeMerge]) -> list[dict]:
    return [
        {
            "function": m.function_index,
            "original": format_rational(m.original),
            "replacement": format_rational(m.replacement),
        }
        for m in merges
    ]


def render_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _emit(report: dict, human: list[str], args: argparse.Namespace, elapsed: float) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(render_report(report))
    if getattr(args, "json", False):
        sys.stdout.write(render_report(report))
    else:
        for line in human:
            print(line)
        print(f"elapsed: {elapsed * 1000:.1f} ms")


def _merge_cli_options(doc: InstanceDocument, args: argparse.Namespace) -> Options:
    opts = doc.options
    mode = getattr(args, "mode", None)
    if mode is None:
        mode = opts.mode
    max_support = getattr(args, "max_support", None)
    if max_support is None:
        max_support = opts.max_support
    if max_support < 2:
        raise InputValidationError("--max-support must be at least 2")
    seed = args.seed if getattr(args, "seed", None) is not None else opts.seed
    return Options(mode, max_support, opts.quantize_eps, seed)


def _apply_cli_quantize(doc: InstanceDocument, args: argparse.Namespace) -> InstanceDocument:
    eps_text = getattr(args, "quantize_eps", None)
    if eps_text is None:
        return doc
    eps = parse_rational(eps_text)
    if eps <= 0:
        return doc
    family, merges = quantize_family(doc.family, eps)
    options = Options(doc.options.mode, doc.options.max_support, eps, doc.options.seed)
    return InstanceDocument(
        doc.points, family, doc.directions, doc.target, options, doc.quantize_merges + merges
    )


def _cmd_detect(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    doc = _apply_cli_quantize(load_instance(args.instance), args)
    options = _merge_cli_options(doc, args)
    inc = doc.incidence()
    cert = detect(inc)
    if cert is not None:
        verify_certificate(inc, cert)
    report = {
        "format": FORMAT_VERSION,
        "command": "detect",
        "options": _options_jsonable(options),
        "points": len(doc.points),
        "closed_path": cert is not None,
        "certificate": None if cert is None else _certificate_jsonable(cert),
        "quantize_merges": _merges_jsonable(doc.quantize_merges),
    }
    human = _human_quantize(doc)
    if cert is None:
        human.append("no closed path: every function on these points is a superposition")
    else:
        human.append(f"closed path on point ids {list(cert.support)}")
        human.append(
            "lambda = (" + ", ".join(format_rational(x) for x in cert.integer_lambda()) + ")"
        )
    _emit(report, human, args, time.perf_counter() - start)
    return 1 if cert is not None else 0


def _cmd_circuits(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    doc = _apply_cli_quantize(load_instance(args.instance), args)
    options = _merge_cli_options(doc, args)
    inc = doc.incidence()
    certs = enumerate_minimal(inc, options.max_support, options.mode)
    for cert in certs:
        verify_certificate(inc, cert)
    truncated = options.mode == "exhaustive" and options.max_support < len(doc.points)
    report = {
        "format": FORMAT_VERSION,
        "command": "circuits",
        "options": _options_jsonable(options),
        "points": len(doc.points),
        "count": len(certs),
        "circuits": [_certificate_jsonable(c) for c in certs],
        "truncated": truncated,
        "quantize_merges": _merges_jsonable(doc.quantize_merges),
    }
    human = _human_quantize(doc)
    human.append(f"{len(certs)} minimal closed path(s) ({options.mode} mode)")
    for cert in certs:
        human.append(
            f"  support {list(cert.support)}: lambda = ("
            + ", ".join(format_rational(x) for x in cert.integer_lambda())
            + ")"
        )
    if truncated:
        human.append(f"note: enumeration capped at support size {options.max_support}")
    _emit(report, human, args, time.perf_counter() - start)
    return 1 if certs else 0


def _cmd_represent(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    doc = _apply_cli_quantize(load_instance(args.instance), args)
    options = _merge_cli_options(doc, args)
    if doc.target is None:
        raise InputValidationError('represent needs a "target" table in the instance file')
    inc = doc.incidence()
    result = is_representable(inc, doc.target)
    human = _human_quantize(doc)
    if result.representable:
        dec = result.decomposition
        g_tables = [
            {
                "function": i,
                "values": {format_rational(v): format_rational(g) for v, g in table.items()},
            }
            for i, table in enumerate(dec.tables)
        ]
        report = {
            "format": FORMAT_VERSION,
            "command": "represent",
            "options": _options_jsonable(options),
            "representable": True,
            "g_tables": g_tables,
            "freedom": dec.freedom,
            "quantize_merges": _merges_jsonable(doc.quantize_merges),
        }
        human.append("representable: target = sum of univariate tables (reconstruction exact)")
        human.append(f"solution affine space dimension: {dec.freedom}")
        _emit(report, human, args, time.perf_counter() - start)
        return 0
    verify_certificate(inc, result.violation)
    witness = make_witness(result.violation, doc.points)
    report = {
        "format": FORMAT_VERSION,
        "command": "represent",
        "options": _options_jsonable(options),
        "representable": False,
        "violation": _certificate_jsonable(result.violation),
        "inner_product": format_rational(result.violation_value),
        "witness_f0": {str(pid): format_rational(v) for pid, v in witness.f0.items()},
        "witness_value": format_rational(witness.value),
        "quantize_merges": _merges_jsonable(doc.quantize_merges),
    }
    human.append("not representable: a closed-path functional does not vanish on the target")
    human.append(
        f"violated support {list(result.violation.support)}, "
        f"inner product {format_rational(result.violation_value)}"
    )
    _emit(report, human, args, time.perf_counter() - start)
    return 1


def _cmd_ridge(args: argparse.Namespace) -> int:
    if args.action == "classify":
        return _ridge_classify(args)
    if args.action == "hypercube":
        return _ridge_hypercube(args)
    return _run_generate(args)


def _ridge_classify(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    doc = _apply_cli_quantize(load_instance(args.instance), args)
    options = _merge_cli_options(doc, args)
    instance = doc.ridge()
    verdict = classify_ni(instance)
    inc = build_incidence(instance.points, instance.family)
    if verdict.certificate is not None:
        verify_certificate(inc, verdict.certificate)
    report = {
        "format": FORMAT_VERSION,
        "command": "ridge-classify",
        "options": _options_jsonable(options),
        "classification": verdict.kind,
        "m": None if verdict.m is None else [format_rational(x) for x in verdict.m],
        "certificate": None
        if verdict.certificate is None
        else _certificate_jsonable(verdict.certificate),
        "quantize_merges": _merges_jsonable(doc.quantize_merges),
    }
    human = _human_quantize(doc)
    human.append(f"classification: {verdict.kind}")
    if verdict.m is not None:
        human.append("m = (" + ", ".join(format_rational(x) for x in verdict.m) + ")")
    _emit(report, human, args, time.perf_counter() - start)
    return 0 if verdict.kind == "interpolable" else 1


def _ridge_hypercube(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    doc = load_instance(args.instance)
    options = _merge_cli_options(doc, args)
    if doc.directions is None:
        raise InputValidationError("hypercube needs ridge directions in the instance file")
    d = doc.directions[0].dimension
    center = (
        [parse_rational(c) for c in args.center.split(",")]
        if args.center
        else [Fraction(0)] * d
    )
    scale = parse_rational(args.scale)
    path = hypercube_path(doc.directions, center, scale)
    instance_doc = instance_to_jsonable(path.instance.points, directions=path.instance.directions)
    if getattr(args, "emit_instance", None):
        Path(args.emit_instance).write_text(render_report(instance_doc))
    report = {
        "format": FORMAT_VERSION,
        "command": "ridge-hypercube",
        "options": _options_jsonable(options),
        "center": [format_rational(c) for c in path.center],
        "offsets": [[format_rational(c) for c in off] for off in path.offsets],
        "points": [
            [format_rational(c) for c in p.coords] for p in path.instance.points.points
        ],
        "lambda": [format_rational(x) for x in path.lam],
        "verified": True,
        "instance": instance_doc,
    }
    human = [
        f"hypercube closed path with {len(path.lam)} points (verified exactly)",
        "lambda = (" + ", ".join(format_rational(x) for x in path.lam) + ")",
    ]
    _emit(report, human, args, time.perf_counter() - start)
    return 0


_GENERATOR_DEFAULT_DIRECTIONS = {
    "parallel-lines": "1,0;0,1",
    "zigzag": "1,1;1,-1",
    "transversal-curve": "1,0;0,1",
}


def _parse_vectors(text: str) -> list[tuple[Fraction, ...]]:
    vectors = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        vectors.append(tuple(parse_rational(c) for c in chunk.split(",")))
    if not vectors:
        raise InputValidationError(f"no vectors in {text!r}")
    return vectors


def _run_generate(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    kind = args.kind
    dirs_text = args.directions or _GENERATOR_DEFAULT_DIRECTIONS.get(kind)
    if kind == "staircase" and dirs_text is None:
        d = args.dimension
        directions = tuple(
            direction([1 if i == k else 0 for i in range(d)]) for k in range(d)
        )
    elif dirs_text is None:
        raise InputValidationError(f"--directions is required for kind {kind}")
    else:
        directions = tuple(direction(v) for v in _parse_vectors(dirs_text))

    params: Any
    if kind == "parallel-lines":
        params = ParallelLinesParams(
            directions=directions,
            line_direction=tuple(parse_rational(c) for c in args.line_direction.split(",")),
            base_first=tuple(parse_rational(c) for c in args.base1.split(",")),
            base_second=tuple(parse_rational(c) for c in args.base2.split(",")),
            samples_per_line=args.samples,
            start=parse_rational(args.start),
            step=parse_rational(args.step),
        )
    elif kind == "zigzag":
        params = ZigzagParams(
            count=args.samples, start=parse_rational(args.start), step=parse_rational(args.step)
        )
    elif kind == "staircase":
        params = StaircaseParams(directions=directions)
    elif kind == "transversal-curve":
        params = TransversalCurveParams(
            directions=directions,
            coefficients=tuple(_parse_vectors(args.coefficients)),
            count=args.samples,
            start=parse_rational(args.start),
            step=parse_rational(args.step),
        )
    else:  # pragma: no cover - argparse choices forbid this
        raise InputValidationError(f"unknown kind {kind!r}")

    example = generate_pathfree_example(kind, params)
    instance_doc = instance_to_jsonable(
        example.instance.points, directions=example.instance.directions
    )
    if getattr(args, "emit_instance", None):
        Path(args.emit_instance).write_text(render_report(instance_doc))
    report = {
        "format": FORMAT_VERSION,
        "command": "generate",
        "kind": kind,
        "note": example.note,
        "closed_path": not example.path_free,
        "points": len(example.instance.points),
        "instance": instance_doc,
    }
    human = [
        f"generated {kind} sample with {len(example.instance.points)} points",
        f"detect: no closed path ({example.note})",
    ]
    _emit(report, human, args, time.perf_counter() - start)
    return 0


def _human_quantize(doc: InstanceDocument) -> list[str]:
    lines = []
    for merge in doc.quantize_merges:
        lines.append(
            f"QUANTIZE: function {merge.function_index} value "
            f"{format_rational(merge.original)} merged into {format_rational(merge.replacement)}"
        )
    return lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linsuper",
        description="Exact closed-path analysis of linear superpositions on finite point sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="print the machine report to stdout")
        p.add_argument("--output", metavar="PATH", help="write the machine report to a file")
        p.add_argument("--seed", type=int, default=None, help="seed recorded in the report")
        p.add_argument(
            "--quantize-eps",
            metavar="Q",
            default=None,
            help="cluster function values closer than Q (exact rational) before analysis",
        )

    p_detect = sub.add_parser("detect", help="find one closed path or prove there is none")
    p_detect.add_argument("instance")
    common(p_detect)
    p_detect.set_defaults(func=_cmd_detect)

    p_circ = sub.add_parser("circuits", help="enumerate minimal closed paths")
    p_circ.add_argument("instance")
    p_circ.add_argument("--mode", choices=["fundamental", "exhaustive"], default=None)
    p_circ.add_argument("--max-support", type=int, default=None, dest="max_support")
    common(p_circ)
    p_circ.set_defaults(func=_cmd_circuits)

    p_rep = sub.add_parser("represent", help="decide representability of the target table")
    p_rep.add_argument("instance")
    common(p_rep)
    p_rep.set_defaults(func=_cmd_represent)

    p_ridge = sub.add_parser("ridge", help="ridge-direction analyses")
    ridge_sub = p_ridge.add_subparsers(dest="action", required=True)

    p_cls = ridge_sub.add_parser("classify", help="interpolable / NI / MNI verdict")
    p_cls.add_argument("instance")
    common(p_cls)
    p_cls.set_defaults(func=_cmd_ridge, action="classify")

    p_hyp = ridge_sub.add_parser("hypercube", help="build the hypercube closed path")
    p_hyp.add_argument("instance", help="instance file providing the ridge directions")
    p_hyp.add_argument("--center", default=None, help='center coordinates, e.g. "0,0"')
    p_hyp.add_argument("--scale", default="1", help="offset scale (exact rational)")
    p_hyp.add_argument(
        "--emit-instance", dest="emit_instance", metavar="PATH",
        help="write the generated points as an instance file",
    )
    common(p_hyp)
    p_hyp.set_defaults(func=_cmd_ridge, action="hypercube")

    def add_generate(parent, name):
        p_gen = parent.add_parser(name, help="emit a provably path-free sample configuration")
        p_gen.add_argument(
            "--kind",
            required=True,
            choices=["parallel-lines", "zigzag", "staircase", "transversal-curve"],
        )
        p_gen.add_argument("--directions", default=None, help='e.g. "1,0;0,1"')
        p_gen.add_argument("--dimension", type=int, default=3, help="staircase: use basis directions of this dimension")
        p_gen.add_argument("--line-direction", default="1,1", dest="line_direction")
        p_gen.add_argument("--base1", default="0,0")
        p_gen.add_argument("--base2", default="0,1")
        p_gen.add_argument("--coefficients", default="0,1;1,2", help='curve polynomials, e.g. "0,1;1,2"')
        p_gen.add_argument("--samples", type=int, default=8)
        p_gen.add_argument("--start", default="0")
        p_gen.add_argument("--step", default="1")
        p_gen.add_argument(
            "--emit-instance", dest="emit_instance", metavar="PATH",
            help="write the generated sample as an instance file",
        )
        common(p_gen)
        return p_gen

    add_generate(sub, "generate").set_defaults(func=_run_generate)
    add_generate(ridge_sub, "generate").set_defaults(func=_cmd_ridge, action="generate")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputValidationError, ConstraintError, ContractViolationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
