"""Command-line interface.  Exit codes: 0 accept/valid, 1 reject/invalid, 2 error, 3 unknown."""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .corpus import format_table, run_corpus
from .drawing import GridDrawing, Model, validate
from .general import VARIANTS, recognize
from .graph import GraphError, RotationSystem
from .io import dumps_drawing, emit_instance, read_drawing, read_instance, write_corpus
from .oracle import EnumerationBudget, brute_recognize, enumerate_drawings, gen_instance
from .outcome import ACCEPT, REJECT, Constraints, RecognitionOutcome
from .svg import render_svg

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2, 3
JOBS_ENV = "UERRF_JOBS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        # raise instead of exiting so main() owns the exit code
        raise UsageError(message)


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{JOBS_ENV} must be an integer, got {raw!r}") from None


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _verdict_exit(out: RecognitionOutcome) -> int:
    return {ACCEPT: EXIT_OK, REJECT: EXIT_NO}.get(out.verdict, EXIT_UNKNOWN)


def _constraints(args, base: Constraints, n: int) -> Constraints:
    external = tuple(args.external) if args.external else base.external_cycle
    corners = tuple(args.corners) if args.corners else base.corners
    rotation = base.rotation
    if args.rotation:
        order = {row[0]: tuple(row[1:]) for row in args.rotation}
        rotation = RotationSystem(tuple(order.get(v, ()) for v in range(n)))
    angles = dict(base.angles) if base.angles else None
    if args.angle:
        angles = {v: (min(a, b), max(a, b)) for v, a, b in args.angle}
    return Constraints(external, rotation, corners, angles)


def _report(out: RecognitionOutcome) -> None:
    if out.accepted:
        d = out.drawing
        print(f"accept: {d.width}x{d.height} drawing ({out.stats.get('variant', '')})", file=sys.stderr)
    else:
        tail = f" ({out.detail})" if out.detail else ""
        print(f"{out.verdict}: {out.reason}{tail}", file=sys.stderr)


def cmd_recognize(args) -> int:
    inst = read_instance(args.instance)
    model = Model.parse(args.model) if args.model else (inst.model or Model.RF)
    cons = _constraints(args, inst.constraints, inst.graph.n)
    out = recognize(inst.graph, model, args.variant, cons)
    _report(out)
    if out.accepted:
        assert validate(out.drawing).valid
        _write(dumps_drawing(out.drawing), args.out)
        if args.svg:
            _write(render_svg(out.drawing), args.svg)
    return _verdict_exit(out)


def cmd_validate(args) -> int:
    d = read_drawing(args.drawing)
    if args.model:
        d = GridDrawing(d.graph, d.positions, Model.parse(args.model))
    report = validate(d)
    if report.valid:
        print(f"valid {d.model.value} drawing, {d.width}x{d.height}")
        return EXIT_OK
    for v in report.violations:
        at = " at " + " ".join(f"({x},{y})" for x, y in v.witness) if v.witness else ""
        text = v.description if v.description.startswith(v.code) else f"{v.code}: {v.description}"
        print(text + at)
    return EXIT_NO


def cmd_render(args) -> int:
    d = read_drawing(args.drawing)
    report = validate(d)
    if not report.valid:
        print("cannot render an invalid drawing: " + ", ".join(report.codes), file=sys.stderr)
        return EXIT_ERROR
    _write(render_svg(d, args.scale, not args.no_crossings, args.labels), args.out)
    return EXIT_OK


def _budget(args) -> EnumerationBudget:
    return EnumerationBudget(args.max_width, args.max_height, args.max_vertices, args.time_limit)


def cmd_oracle(args) -> int:
    budget = _budget(args)
    model = Model.parse(args.model or "rf")
    if args.dump:
        enum = enumerate_drawings(budget, model)
        with open(args.dump, "w", encoding="utf-8") as fh:
            count = write_corpus(enum.drawings, fh)
        print(f"{count} {model.value} drawings" + ("" if enum.complete else " (incomplete: time limit)"), file=sys.stderr)
        if args.instance is None:
            return EXIT_OK if enum.complete else EXIT_UNKNOWN
    if args.instance is None:
        raise UsageError("oracle needs an instance file or --dump")
    inst = read_instance(args.instance)
    if args.model is None and inst.model is not None:
        model = inst.model
    out = brute_recognize(inst.graph, budget, model, inst.constraints)
    _report(out)
    if out.accepted and args.out:
        _write(dumps_drawing(out.drawing), args.out)
    return _verdict_exit(out)


def cmd_gen(args) -> int:
    params = [int(p) for p in args.params]
    budget = EnumerationBudget(args.max_width, args.max_height) if args.kind == "sampled" else None
    inst = gen_instance(args.kind, *params, seed=args.seed, budget=budget, model=Model.parse(args.model or "rf"))
    if args.format == "drawing":
        if inst.drawing is None:
            raise UsageError(f"{args.kind} instances carry no drawing")
        _write(dumps_drawing(inst.drawing), args.out)
    else:
        _write(emit_instance(inst.graph), args.out)
    return EXIT_OK


def cmd_corpus(args) -> int:
    models = [Model.parse(m) for m in (["usf", "rf"] if args.model in (None, "both") else [args.model])]
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    reports = run_corpus(args.max_width, args.max_height, models, jobs)
    _write(format_table(reports) + "\n", args.out)
    failures = [f for r in reports for f in r.failures]
    for f in failures:
        print(f, file=sys.stderr)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="uerrf", description="Recognize and draw unit-edge rectangular-face grid drawings.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    r = sub.add_parser("recognize", help="decide whether an instance has a drawing")
    r.add_argument("instance")
    r.add_argument("--model", choices=["rf", "usf"])
    r.add_argument("--variant", choices=VARIANTS, default="auto")
    r.add_argument("--external", type=int, nargs="+", metavar="V", help="external cycle in order")
    r.add_argument("--corners", type=int, nargs=4, metavar="V")
    r.add_argument("--rotation", type=int, nargs="+", action="append", metavar="V", help="V then its clockwise neighbors; repeat per vertex")
    r.add_argument("--angle", type=int, nargs=3, action="append", metavar=("V", "A", "B"))
    r.add_argument("--out", help="drawing file (default: stdout)")
    r.add_argument("--svg", help="also render the drawing to this file")
    r.set_defaults(func=cmd_recognize)

    v = sub.add_parser("validate", help="check a drawing document")
    v.add_argument("drawing")
    v.add_argument("--model", choices=["rf", "usf"], help="override the document's model")
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("render", help="render a drawing document as SVG")
    s.add_argument("drawing")
    s.add_argument("--scale", type=int, default=40)
    s.add_argument("--no-crossings", action="store_true")
    s.add_argument("--labels", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_render)

    o = sub.add_parser("oracle", help="brute-force recognition or corpus dump")
    o.add_argument("instance", nargs="?")
    o.add_argument("--model", choices=["rf", "usf"])
    o.add_argument("--max-width", type=int, default=3)
    o.add_argument("--max-height", type=int, default=3)
    o.add_argument("--max-vertices", type=int)
    o.add_argument("--time-limit", type=float)
    o.add_argument("--dump", help="write every enumerated drawing, one JSON document per line")
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("kind", choices=["grid", "cycle", "ladder", "crossing", "sampled"])
    g.add_argument("params", nargs="*")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--model", choices=["rf", "usf"])
    g.add_argument("--max-width", type=int, default=3)
    g.add_argument("--max-height", type=int, default=3)
    g.add_argument("--format", choices=["instance", "drawing"], default="instance")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("corpus", help="run the round-trip corpus and print a report")
    c.add_argument("--model", choices=["rf", "usf", "both"])
    c.add_argument("--max-width", type=int, default=3)
    c.add_argument("--max-height", type=int, default=3)
    c.add_argument("--jobs", type=int, help=f"worker processes (default: ${JOBS_ENV} or 1)")
    c.add_argument("--out")
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing command")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (GraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
