"""Command-line orchestration: figures, explosion fits, verification.

Complex values on the command line are RE,IM pairs; the named constant
e-inv (= exp(-1)) is accepted wherever a complex is expected.  Every
subcommand accepts --report PATH to emit a machine-readable JSON document
with the stable schema {schema, command, inputs, outputs, tolerances, pass}.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import acceptance, applications, boettcher, families, hyperbolic, motion
from .motion import decompose_explosion, load_csv, load_json
from .render import (LABEL_IN, RenderSpec, bounding_radius, default_workers,
                     emit_image, render, write_label_dump)

REPORT_SCHEMA = "holomove-report/1"

_NAMED_CONSTANTS = {"e-inv": complex(math.exp(-1)), "e": complex(math.e)}


def parse_complex(text: str) -> complex:
    """RE,IM pair or a named constant."""
    if text in _NAMED_CONSTANTS:
        return _NAMED_CONSTANTS[text]
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected RE,IM or a named constant: {text!r}")


def parse_targets(text: str):
    parts = text.split(";")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("targets are RE,IM;RE,IM")
    return tuple(parse_complex(p) for p in parts)


def parse_window(text: str):
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("window is x_min,x_max,y_min,y_max")
    return tuple(parts)


def parse_resolution(text: str):
    parts = [int(p) for p in text.split(",")]
    if len(parts) == 1:
        return parts[0], parts[0]
    if len(parts) == 2:
        return tuple(parts)
    raise argparse.ArgumentTypeError("resolution is W or W,H")


def _read_config(path):
    values = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, _, val = line.partition("=")
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def _emit_report(args, command, inputs, outputs, tolerances=None, passed=True):
    if not getattr(args, "report", None):
        return
    doc = {
        "schema": REPORT_SCHEMA,
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "tolerances": tolerances or {},
        "pass": bool(passed),
    }
    text = json.dumps(doc, indent=2, default=_json_default)
    if args.report == "-":
        print(text)
    else:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")


def _json_default(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.complexfloating):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _add_render_common(p, window, resolution, max_iter):
    p.add_argument("--window", type=parse_window, default=window,
                   help="x_min,x_max,y_min,y_max")
    p.add_argument("--resolution", type=parse_resolution, default=resolution,
                   help="pixels: W or W,H")
    p.add_argument("--max-iter", type=int, default=max_iter)
    p.add_argument("--out", default=None, help="output image path")
    p.add_argument("--format", choices=("ppm", "png"), default="ppm")
    p.add_argument("--labels-out", default=None,
                   help="also dump raw labels (binary W,H header + bytes)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="holomove",
        description="Holomorphic motion/explosion laboratory: figures, fits, checks.")
    parser.add_argument("--config", default=None,
                        help="key=value file supplying flag defaults")
    parser.add_argument("--workers", type=int, default=None,
                        help="worker threads (default: HOLOMOVE_WORKERS or cpu count)")
    parser.add_argument("--report", default=None,
                        help="write a JSON report here ('-' for stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render-param", help="parameter plane of the entire family")
    _add_render_common(p, (-10, 10, -10, 10), (512, 512), 2000)

    p = sub.add_parser("render-dyn", help="dynamical plane of the entire family")
    p.add_argument("--a", type=parse_complex, required=True)
    _add_render_common(p, (-10, 10, -10, 10), (512, 512), 2000)

    p = sub.add_parser("render-locus", help="connectedness locus of the rational family")
    p.add_argument("--lambda", dest="lam", type=parse_complex, required=True)
    _add_render_common(p, (1, 5, -2, 2), (512, 512), 2000)

    p = sub.add_parser("render-mandelbrot", help="the quadratic connectedness locus")
    _add_render_common(p, (-2.25, 0.75, -1.5, 1.5), (512, 512), 1000)

    p = sub.add_parser("centers", help="print preimage-component centers")
    p.add_argument("--count", type=int, default=0)

    p = sub.add_parser("fit-explosion", help="decompose a sampled motion at its puncture")
    p.add_argument("--source", default="app1",
                   help="app1 | app1-preimage:I | file:PATH (.json or .csv)")
    p.add_argument("--radius", type=float, default=100.0,
                   help="sampling circle radius (in a for app1 sources)")
    p.add_argument("--samples", type=int, default=128)

    p = sub.add_parser("classify", help="classify trajectories of a saved motion")
    p.add_argument("--file", required=True, help=".json or .csv motion sample")
    p.add_argument("--targets", type=parse_targets, default=(5.0 + 0j, -3j),
                   help="two avoided values, semicolon separated: RE,IM;RE,IM")

    p = sub.add_parser("kbound", help="dilatation upper bound for one parameter")
    p.add_argument("--a", type=parse_complex, required=True)
    p.add_argument("--r0", type=float, default=None,
                   help="component radius; rendered at --resolution if omitted")
    p.add_argument("--resolution", type=parse_resolution, default=(512, 512))

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--suite", choices=("fast", "full"), default="fast")
    p.add_argument("--criteria", type=int, nargs="*", default=None)

    return parser


def _run_render(args, kind, param=0j):
    w = args.window
    spec = RenderSpec(w[0], w[1], w[2], w[3], args.resolution[0],
                      args.resolution[1], kind, param=param,
                      max_iter=args.max_iter)
    raster = render(spec, workers=args.workers)
    out = args.out or f"{kind}.{args.format}"
    emit_image(raster, out, fmt=args.format)
    if args.labels_out:
        write_label_dump(raster, args.labels_out)
    fractions = {str(label): raster.fraction(label)
                 for label in np.unique(raster.labels)}
    print(f"wrote {out} ({spec.width}x{spec.height}, backend {raster.backend})")
    _emit_report(args, args.command,
                 inputs={"window": list(w), "resolution": list(args.resolution),
                         "max_iter": args.max_iter, "param": param},
                 outputs={"image": str(out), "label_fractions": fractions,
                          "undecided_fraction": raster.undecided_fraction()})
    return 0


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


def cmd_centers(args):
    centers = families.basin_centers(args.count)
    for i in range(-centers.count, centers.count + 1):
        print(_fmt_complex(centers.point(i)))
    _emit_report(args, "centers", inputs={"count": args.count},
                 outputs={"centers": list(centers.points)})
    return 0


def _load_motion_file(path):
    if path.endswith(".json"):
        return load_json(path)
    return load_csv(path)


def cmd_fit_explosion(args):
    source = args.source
    if source == "app1":
        m, contour = applications.basin_motion_sample(radius=args.radius,
                                                      samples=args.samples)
    elif source.startswith("app1-preimage:"):
        i = int(source.split(":", 1)[1])
        m, contour = applications.preimage_motion_sample(i, radius=args.radius,
                                                         samples=args.samples)
    elif source.startswith("file:"):
        m = _load_motion_file(source[5:])
        from .contour import CircleContour
        radius = abs(m.param_points[0] - m.marked_param)
        orientation = "negative" if len(m.param_points) > 1 and np.angle(
            (m.param_points[1] - m.marked_param)
            / (m.param_points[0] - m.marked_param)) < 0 else "positive"
        contour = CircleContour(center=complex(m.marked_param), radius=radius,
                                samples=len(m.param_points),
                                orientation=orientation)
    else:
        print(f"unknown source {source!r}", file=sys.stderr)
        return 2
    decomp = decompose_explosion(m, contour)
    print(f"order n = {decomp.order}")
    print(f"P coefficients (ascending): "
          f"{[_fmt_complex(c) for c in decomp.poly.coefficients]}")
    print(f"reconstruction residual = {decomp.residual:.3e}")
    _emit_report(args, "fit-explosion",
                 inputs={"source": source, "radius": args.radius,
                         "samples": args.samples},
                 outputs={"order": decomp.order,
                          "poly": list(decomp.poly.coefficients),
                          "residual": decomp.residual,
                          "pivots": list(decomp.pivots)})
    return 0


def cmd_classify(args):
    m = _load_motion_file(args.file)
    from .contour import CircleContour
    radius = abs(m.param_points[0] - m.marked_param)
    contour = CircleContour(center=complex(m.marked_param), radius=radius,
                            samples=len(m.param_points), orientation="negative")
    rows = []
    limits = []
    for i in range(len(m.e_points)):
        verdict = motion.classify_extension(m.values[:, i], contour,
                                            targets=tuple(args.targets))
        rows.append({"index": i, "kind": verdict.kind, "order": verdict.order,
                     "limit": verdict.limit})
        limits.append(verdict.limit)
        desc = verdict.kind
        if verdict.kind == "pole":
            desc += f"({verdict.order})"
        elif verdict.kind == "holomorphic":
            desc += f", limit {_fmt_complex(verdict.limit)}"
        elif verdict.kind == "essential":
            desc += f" (window {verdict.n_max})"
        print(f"trajectory {i}: {desc}")
    overall = None
    if all(l is not None for l in limits):
        try:
            overall = motion.corollary_classify(limits)
            label = overall.kind
            if overall.point is not None:
                label += f" -> {_fmt_complex(overall.point)}"
            print(f"fiber at puncture: {label}")
        except motion.MotionError as exc:
            print(f"fiber at puncture: {exc}")
    _emit_report(args, "classify", inputs={"file": args.file},
                 outputs={"trajectories": rows,
                          "dichotomy": None if overall is None else
                          {"kind": overall.kind, "point": overall.point}})
    return 0


def cmd_kbound(args):
    r0 = args.r0
    if r0 is None:
        spec = RenderSpec(-10, 10, -10, 10, args.resolution[0],
                          args.resolution[1], "param_plane_fa", max_iter=2000)
        raster = render(spec, workers=args.workers)
        r0 = bounding_radius(raster, LABEL_IN) * 1.1
        print(f"measured component radius (with margin): {r0:.4f}")
    estimate = hyperbolic.K_upper_bound(args.a, r0)
    print(f"d_upper(infinity, a) <= {estimate.d_upper:.6f}")
    print(f"K_upper = {estimate.k_upper:.6f}")
    _emit_report(args, "kbound",
                 inputs={"a": args.a, "r0": r0},
                 outputs={"d_upper": estimate.d_upper,
                          "k_upper": estimate.k_upper})
    return 0


def cmd_verify(args):
    report = acceptance.run_suite(suite=args.suite, ids=args.criteria)
    print(f"suite {args.suite}: {'PASS' if report.passed else 'FAIL'}")
    doc = report.as_dict()
    _emit_report(args, "verify",
                 inputs={"suite": args.suite, "criteria": args.criteria},
                 outputs={"criteria": doc["criteria"]},
                 tolerances={c["id"]: c["tolerances"] for c in doc["criteria"]},
                 passed=report.passed)
    return 0 if report.passed else 1


def _inject_config(argv, commands):
    """Expand --config key=value pairs into flags just after the subcommand.

    Explicit flags come later on the line, so they win (argparse keeps the
    last occurrence of a store action).
    """
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        return argv
    entries = _read_config(argv[i + 1])
    sub_at = next((j for j, tok in enumerate(argv) if tok in commands), None)
    if sub_at is None:
        return argv
    inject = []
    for key, val in entries.items():
        inject += [f"--{key.replace('_', '-')}", val]
    return argv[:sub_at + 1] + inject + argv[sub_at + 1:]


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    commands = ("render-param", "render-dyn", "render-locus",
                "render-mandelbrot", "centers", "fit-explosion", "classify",
                "kbound", "verify")
    args = parser.parse_args(_inject_config(argv, commands))
    try:
        if args.command == "render-param":
            return _run_render(args, "param_plane_fa")
        if args.command == "render-dyn":
            return _run_render(args, "dyn_plane_fa", param=args.a)
        if args.command == "render-locus":
            return _run_render(args, "locus_g", param=args.lam)
        if args.command == "render-mandelbrot":
            return _run_render(args, "mandelbrot")
        if args.command == "centers":
            return cmd_centers(args)
        if args.command == "fit-explosion":
            return cmd_fit_explosion(args)
        if args.command == "classify":
            return cmd_classify(args)
        if args.command == "kbound":
            return cmd_kbound(args)
        if args.command == "verify":
            return cmd_verify(args)
    except (motion.MotionError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    parser.error(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
