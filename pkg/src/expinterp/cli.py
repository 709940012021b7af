"""Command line interface.

Verbs:
  reproduce    build a preset and report its deviation from the analytic shape
  refine-demo  run the circle refinement cascade and report per-depth errors
  export       write a preset (optionally refined) as OBJ or JSON
  lambda       print interpolation weights and frame bounds for a root vector
  serve        run the HTTP editing service
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .core import RootVector
from .interpolator import estimate_riesz_bounds, make_interpolator
from .modelio import document_json, write_obj
from .presets import PRESET_NAMES, preset_domain, preset_reference, preset_shape
from .shapes import eval_curve, eval_surface, refine_model

DEFAULT_PORT = 8720


def _load_params(raw: str | None) -> dict:
    if not raw:
        return {}
    params = json.loads(raw)
    if not isinstance(params, dict):
        raise SystemExit("--params must be a JSON object")
    return params


def _cmd_reproduce(args) -> int:
    params = _load_params(args.params)
    model = preset_shape(args.preset, **params)
    reference = preset_reference(args.preset, **params)
    rng = np.random.default_rng(args.seed)
    dom = preset_domain(model)
    if model.dims == 1:
        (lo, hi), = dom
        ts = lo + (hi - lo) * rng.random(args.samples)
        err = np.max(np.abs(eval_curve(model, ts) - reference(ts)))
    else:
        (lo1, hi1), (lo2, hi2) = dom
        us = lo1 + (hi1 - lo1) * rng.random(args.samples)
        vs = lo2 + (hi2 - lo2) * rng.random(args.samples)
        err = np.max(np.abs(eval_surface(model, us, vs) - reference(us, vs)))
    ok = err < args.tol
    print(f"{args.preset}: max deviation {err:.3e} over {args.samples} parameters "
          f"({'PASS' if ok else 'FAIL'} at {args.tol:g})")
    return 0 if ok else 1


def _cmd_refine_demo(args) -> int:
    if args.preset != "circle":
        raise SystemExit("refine-demo currently supports the circle preset")
    model = preset_shape("circle", density=args.density, radius=args.radius)
    center = np.asarray(model.preset["params"]["center"])
    model = refine_model(model, args.initial_factor)
    errors = []
    for depth in range(args.depth + 1):
        if depth > 0:
            model = refine_model(model, args.factor)
        radii = np.linalg.norm(model.net.points - center, axis=1)
        err = float(np.max(np.abs(radii - args.radius)))
        errors.append(err)
        scale = model.axes[0].scale
        print(f"depth {depth}: scale {scale:3d}, {len(model.net.points):4d} weights, "
              f"max radius deviation {err:.3e}")
    decreasing = all(b < a for a, b in zip(errors, errors[1:]))
    ok = decreasing and errors[-1] < args.tol
    print(f"strictly decreasing: {'yes' if decreasing else 'NO'}; "
          f"final error {errors[-1]:.3e} ({'PASS' if ok else 'FAIL'} at {args.tol:g})")
    return 0 if ok else 1


def _cmd_export(args) -> int:
    params = _load_params(args.params)
    model = preset_shape(args.preset, **params)
    for factor in args.refine or []:
        model = refine_model(model, factor)
    if args.obj:
        write_obj(model, args.obj, samples_per_span=args.samples)
        print(f"wrote {args.obj}")
    if args.json:
        with open(args.json, "w") as f:
            f.write(document_json(model))
        print(f"wrote {args.json}")
    if not args.obj and not args.json:
        print(document_json(model))
    return 0


def _parse_roots(tokens: list[str]) -> RootVector:
    parts: list[str] = []
    for tok in tokens:
        parts.extend(p for p in tok.replace(",", " ").split() if p)
    try:
        return RootVector([complex(p) for p in parts])
    except ValueError as exc:
        raise SystemExit(f"bad root literal: {exc}")


def _cmd_lambda(args) -> int:
    roots = _parse_roots(args.roots)
    interp = make_interpolator(roots)
    lam = interp.lam.one_sided()
    print("roots:", " ".join(str(z) for z in roots.roots))
    for n, value in enumerate(lam):
        print(f"lambda[{n}] = {value!r}")
    print(f"condition number = {interp.condition_number:.6g}")
    bounds = estimate_riesz_bounds(interp)
    print(f"riesz bounds = [{bounds.lower:.6g}, {bounds.upper:.6g}]")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(args.snapshot_dir), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="expinterp", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reproduce", help="compare a preset against its analytic shape")
    p.add_argument("preset", choices=PRESET_NAMES)
    p.add_argument("--params", help="preset parameters as a JSON object")
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(fn=_cmd_reproduce)

    p = sub.add_parser("refine-demo", help="circle refinement cascade error report")
    p.add_argument("preset", nargs="?", default="circle")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--density", type=int, default=8)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--initial-factor", type=int, default=2)
    p.add_argument("--factor", type=int, default=2)
    p.add_argument("--tol", type=float, default=1e-3)
    p.set_defaults(fn=_cmd_refine_demo)

    p = sub.add_parser("export", help="write a preset as OBJ or a JSON document")
    p.add_argument("preset", choices=PRESET_NAMES)
    p.add_argument("--params", help="preset parameters as a JSON object")
    p.add_argument("--refine", type=int, action="append", metavar="FACTOR",
                   help="refine by FACTOR before export (repeatable)")
    p.add_argument("--samples", type=int, default=8, help="tessellation samples per span")
    p.add_argument("--obj", help="output OBJ path")
    p.add_argument("--json", help="output JSON document path")
    p.set_defaults(fn=_cmd_export)

    p = sub.add_parser("lambda", help="interpolation weights for a root vector")
    p.add_argument("roots", nargs="+",
                   help="complex literals; quote the whole vector or put -- first "
                        "when a root starts with a minus, e.g. lambda -- 0 0.785j -0.785j")
    p.set_defaults(fn=_cmd_lambda)

    p = sub.add_parser("serve", help="run the HTTP editing service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("EXPINTERP_PORT", DEFAULT_PORT)))
    p.add_argument("--snapshot-dir", help="persist session snapshots to this directory")
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
