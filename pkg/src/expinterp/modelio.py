"""Serialization of shape models: canonical JSON documents and OBJ meshes.

JSON documents carry everything needed to rebuild a model exactly: root
vectors, densities, periodicity, domains, refinement scale, origins, and
the raw net.  Floats are emitted with Python's shortest round-trip
representation, so load(dump(model)) reproduces the net bit for bit.
Derived quantities (interpolation weights, condition number) are included
for consumers but ignored on load and recomputed instead.
"""

from __future__ import annotations

import json

import numpy as np

from .core import RootVector
from .interpolator import make_interpolator
from .shapes import AxisSpec, ControlNet, RefinementRecord, ShapeModel, tessellate

DOCUMENT_VERSION = 1


def _axis_document(axis: AxisSpec) -> dict:
    return {
        "roots": [[z.real, z.imag] for z in axis.roots.roots],
        "density": axis.density,
        "periodic": axis.periodic,
        "domain": [axis.domain[0], axis.domain[1]],
        "scale": axis.scale,
        "lambda": np.asarray(axis.interp.lam.one_sided(), dtype=float).tolist(),
        "condition_number": float(axis.interp.condition_number),
    }


def to_document(model: ShapeModel) -> dict:
    """JSON-safe dictionary fully describing the model."""
    return {
        "kind": "shape",
        "version": DOCUMENT_VERSION,
        "dims": model.dims,
        "point_dim": model.point_dim,
        "shape": list(model.net.points.shape[:-1]),
        "points": model.net.points.tolist(),
        "origins": list(model.net.origins),
        "axes": [_axis_document(ax) for ax in model.axes],
        "resolution_history": [
            {"factor": rec.factor, "kind": rec.kind} for rec in model.resolution_history
        ],
        "preset": model.preset,
    }


def from_document(doc: dict) -> ShapeModel:
    """Rebuild a model from ``to_document`` output."""
    if doc.get("kind") != "shape":
        raise ValueError("not a shape document")
    if doc.get("version") != DOCUMENT_VERSION:
        raise ValueError(f"unsupported document version {doc.get('version')!r}")
    axes = []
    for ax in doc["axes"]:
        roots = RootVector([complex(re, im) for re, im in ax["roots"]])
        axes.append(
            AxisSpec(
                interp=make_interpolator(roots),
                density=int(ax["density"]),
                periodic=bool(ax["periodic"]),
                domain=(float(ax["domain"][0]), float(ax["domain"][1])),
                scale=int(ax["scale"]),
            )
        )
    points = np.asarray(doc["points"], dtype=float)
    expected = tuple(doc["shape"]) + (doc["point_dim"],)
    if points.shape != expected:
        raise ValueError(f"point array shape {points.shape} does not match {expected}")
    net = ControlNet(
        points=points,
        periodic=tuple(ax.periodic for ax in axes),
        origins=tuple(int(o) for o in doc["origins"]),
    )
    history = tuple(
        RefinementRecord(factor=int(r["factor"]), kind=str(r["kind"]))
        for r in doc.get("resolution_history", ())
    )
    return ShapeModel(net=net, axes=tuple(axes), resolution_history=history, preset=doc.get("preset"))


def document_json(model: ShapeModel) -> str:
    """Canonical JSON text: sorted keys, compact separators."""
    return json.dumps(to_document(model), sort_keys=True, separators=(",", ":"))


def model_from_json(text: str) -> ShapeModel:
    return from_document(json.loads(text))


def obj_string(model: ShapeModel, samples_per_span: int = 8) -> str:
    """Wavefront OBJ text for the tessellated model.

    Surfaces emit quad faces; curves emit a polyline element.  Planar
    curves get a zero z coordinate.
    """
    mesh = tessellate(model, samples_per_span)
    verts = np.asarray(mesh["vertices"], dtype=float)
    if verts.shape[1] == 2:
        verts = np.hstack([verts, np.zeros((len(verts), 1))])
    lines = [f"v {float(x)!r} {float(y)!r} {float(z)!r}" for x, y, z in verts]
    if "faces" in mesh:
        for face in mesh["faces"]:
            lines.append("f " + " ".join(str(i + 1) for i in face))
    else:
        order = list(range(1, len(verts) + 1))
        if mesh["closed"]:
            order.append(1)
        lines.append("l " + " ".join(str(i) for i in order))
    return "\n".join(lines) + "\n"


def write_obj(model: ShapeModel, path, samples_per_span: int = 8) -> None:
    with open(path, "w") as f:
        f.write(obj_string(model, samples_per_span))
