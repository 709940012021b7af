"""Parametric curve and surface models on interpolating spline bases.

A shape model pairs a control net with one interpolator per parameter
axis.  Before any refinement the net holds points the shape passes
through; refining re-expresses the same shape on a denser net of B-spline
weights, so edits stay local at every stage and the geometry never jumps.
Surfaces are tensor products of two axis bases evaluated on normalized
parameters (index divided by the axis density).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import PiecewiseExpPoly, RootVector, make_causal_bspline
from .errors import IndexOutOfRange
from .interpolator import Interpolator
from .refinement import _convolve_cols, _upsample, pre_filter, refinement_filter

_scaled_bspline_cache: dict[tuple[RootVector, int], PiecewiseExpPoly] = {}


def _scaled_bspline(roots: RootVector, scale: int) -> PiecewiseExpPoly:
    key = (roots, scale)
    if key not in _scaled_bspline_cache:
        _scaled_bspline_cache[key] = make_causal_bspline(roots.scaled(scale))
    return _scaled_bspline_cache[key]


@dataclass(frozen=True)
class AxisSpec:
    """Basis state of one parameter axis.

    ``density`` is the number of index-space spans per unit of normalized
    parameter; ``domain`` is the evaluable parameter window in index space.
    ``scale`` is 1 while the axis still carries interpolator samples and
    grows with each refinement.
    """

    interp: Interpolator
    density: int
    periodic: bool
    domain: tuple[float, float]
    scale: int = 1

    @property
    def roots(self) -> RootVector:
        return self.interp.roots

    @property
    def support_halfwidth(self) -> int:
        return self.interp.support_halfwidth

    def weight_matrix(self, xs: np.ndarray, origin: int, size: int) -> np.ndarray:
        """Basis weights at index-space parameters ``xs`` for every net column."""
        xs = np.asarray(xs, dtype=float)
        w = np.zeros((xs.size, size))
        if self.scale == 1:
            r = self.support_halfwidth
            base = np.floor(xs).astype(int)
            for j in range(-r, r + 1):
                k = base + j
                vals = self.interp.eval_many(xs - k)
                self._scatter(w, k, vals, origin, size)
        else:
            n0 = self.roots.n0
            bs = _scaled_bspline(self.roots, self.scale)
            y = self.scale * xs + self.scale * (n0 - 1)
            base = np.floor(y).astype(int)
            for j in range(n0 + 1):
                k = base - j
                vals = bs.eval_many(y - k)
                self._scatter(w, k, vals, origin, size)
        return w

    def _scatter(self, w, k, vals, origin, size) -> None:
        rows = np.arange(len(vals))
        if self.periodic:
            w[rows, (k - origin) % size] += vals
        else:
            idx = k - origin
            ok = (idx >= 0) & (idx < size)
            if np.any(ok):
                w[rows[ok], idx[ok]] += vals[ok]

    def coefficient_window(self, index: int) -> tuple[float, float]:
        """Normalized parameter interval influenced by coefficient ``index``
        (grid index, not array offset)."""
        if self.scale == 1:
            lo = (index - self.support_halfwidth) / self.density
            hi = (index + self.support_halfwidth) / self.density
        else:
            n0 = self.roots.n0
            s = self.scale
            lo = (index - s * (n0 - 1)) / s / self.density
            hi = (index - s * (n0 - 1) + n0) / s / self.density
        return (lo, hi)


@dataclass(frozen=True)
class ControlNet:
    """Control points with per-axis periodicity and grid origins."""

    points: np.ndarray
    periodic: tuple[bool, ...]
    origins: tuple[int, ...]

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        if pts.ndim - 1 != len(self.periodic) or len(self.periodic) != len(self.origins):
            raise ValueError("net shape does not match axis metadata")

    @property
    def dims(self) -> int:
        return self.points.ndim - 1

    @property
    def periodic_u(self) -> bool:
        return self.periodic[0]

    @property
    def periodic_v(self) -> bool:
        return self.periodic[1] if self.dims == 2 else False


@dataclass(frozen=True)
class RefinementRecord:
    factor: int
    kind: str  # "pre" or "mask"


@dataclass(frozen=True)
class ShapeModel:
    """Immutable curve or surface model; mutators return new models."""

    net: ControlNet
    axes: tuple[AxisSpec, ...]
    resolution_history: tuple[RefinementRecord, ...] = ()
    preset: dict | None = None

    def __post_init__(self):
        if self.net.dims != len(self.axes):
            raise ValueError("net dimensionality does not match axis count")

    @property
    def dims(self) -> int:
        return self.net.dims

    @property
    def point_dim(self) -> int:
        return self.net.points.shape[-1]


def eval_curve(model: ShapeModel, t) -> np.ndarray:
    """Evaluate a curve model at normalized parameters ``t``."""
    if model.dims != 1:
        raise ValueError("eval_curve needs a one-axis model")
    ts = np.asarray(t, dtype=float)
    axis = model.axes[0]
    xs = axis.density * ts.ravel()
    w = axis.weight_matrix(xs, model.net.origins[0], len(model.net.points))
    out = w @ model.net.points
    if ts.ndim == 0:
        return out[0]
    return out.reshape(ts.shape + (model.point_dim,))


def eval_surface(model: ShapeModel, u, v) -> np.ndarray:
    """Evaluate a surface model at paired normalized parameters."""
    if model.dims != 2:
        raise ValueError("eval_surface needs a two-axis model")
    us = np.asarray(u, dtype=float)
    vs = np.asarray(v, dtype=float)
    shape = np.broadcast_shapes(us.shape, vs.shape)
    us_b = np.broadcast_to(us, shape).ravel()
    vs_b = np.broadcast_to(vs, shape).ravel()
    ax_u, ax_v = model.axes
    n1, n2 = model.net.points.shape[:2]
    wu = ax_u.weight_matrix(ax_u.density * us_b, model.net.origins[0], n1)
    wv = ax_v.weight_matrix(ax_v.density * vs_b, model.net.origins[1], n2)
    out = np.einsum("pk,pl,kld->pd", wu, wv, model.net.points)
    if shape == ():
        return out[0]
    return out.reshape(shape + (model.point_dim,))


def surface_grid(model: ShapeModel, us, vs) -> np.ndarray:
    """Evaluate a surface on the tensor grid of two parameter vectors."""
    ax_u, ax_v = model.axes
    n1, n2 = model.net.points.shape[:2]
    wu = ax_u.weight_matrix(ax_u.density * np.asarray(us, float), model.net.origins[0], n1)
    wv = ax_v.weight_matrix(ax_v.density * np.asarray(vs, float), model.net.origins[1], n2)
    return np.einsum("ik,jl,kld->ijd", wu, wv, model.net.points)


def _check_index(model: ShapeModel, index) -> tuple[int, ...]:
    if model.dims == 1:
        if not isinstance(index, (int, np.integer)):
            try:
                (index,) = index
            except (TypeError, ValueError):
                raise IndexOutOfRange(f"curve index must be a single integer: {index!r}")
        idx = (int(index),)
    else:
        try:
            i, j = index
        except (TypeError, ValueError):
            raise IndexOutOfRange(f"surface index must be a pair: {index!r}")
        idx = (int(i), int(j))
    for ax, i in enumerate(idx):
        if not 0 <= i < model.net.points.shape[ax]:
            raise IndexOutOfRange(
                f"index {idx} outside net of shape {model.net.points.shape[:-1]}"
            )
    return idx


def move_control_point(model: ShapeModel, index, new_position) -> ShapeModel:
    """Return a copy of the model with one net point replaced."""
    idx = _check_index(model, index)
    pos = np.asarray(new_position, dtype=float)
    if pos.shape != (model.point_dim,):
        raise ValueError(f"position must have {model.point_dim} components")
    pts = model.net.points.copy()
    pts[idx] = pos
    net = ControlNet(points=pts, periodic=model.net.periodic, origins=model.net.origins)
    return ShapeModel(
        net=net,
        axes=model.axes,
        resolution_history=model.resolution_history,
        preset=model.preset,
    )


def dirty_window(model: ShapeModel, index) -> tuple[tuple[float, float], ...]:
    """Normalized parameter window affected by moving the given net point."""
    idx = _check_index(model, index)
    out = []
    for ax_i, i in enumerate(idx):
        axis = model.axes[ax_i]
        grid_index = model.net.origins[ax_i] + i
        out.append(axis.coefficient_window(grid_index))
    return tuple(out)


def refine_model(model: ShapeModel, factor: int) -> ShapeModel:
    """Re-express the model on a ``factor`` times denser net per axis.

    The first refinement converts interpolator samples to B-spline weights
    (even factors only); later refinements apply the two-scale mask.  The
    represented shape is unchanged up to floating point.
    """
    factor = int(factor)
    pts = model.net.points
    new_axes = []
    new_origins = []
    records = list(model.resolution_history)
    kind = None
    for ax_i, axis in enumerate(model.axes):
        if axis.scale == 1:
            taps = pre_filter(axis.interp, factor).taps
            kind = "pre"
        else:
            if factor < 2:
                raise ValueError(f"refinement factor must be at least 2, got {factor}")
            mask = refinement_filter(axis.roots.scaled(axis.scale * factor), factor)
            taps = mask.taps
            kind = "mask"
        moved = np.moveaxis(pts, ax_i, 0)
        lead_shape = moved.shape[1:]
        flat = moved.reshape(moved.shape[0], -1)
        up = _upsample(flat, factor, axis.periodic)
        out = _convolve_cols(up, taps, axis.periodic)
        pts = np.moveaxis(out.reshape((len(out),) + lead_shape), 0, ax_i)
        new_axes.append(
            AxisSpec(
                interp=axis.interp,
                density=axis.density,
                periodic=axis.periodic,
                domain=axis.domain,
                scale=axis.scale * factor,
            )
        )
        new_origins.append(factor * model.net.origins[ax_i])
    records.append(RefinementRecord(factor=factor, kind=kind))
    net = ControlNet(points=pts, periodic=model.net.periodic, origins=tuple(new_origins))
    return ShapeModel(
        net=net,
        axes=tuple(new_axes),
        resolution_history=tuple(records),
        preset=model.preset,
    )


def _axis_samples(axis: AxisSpec, samples_per_span: int) -> np.ndarray:
    lo, hi = axis.domain
    if axis.periodic:
        count = int(round((hi - lo) * samples_per_span))
        xs = lo + np.arange(count) / samples_per_span
    else:
        count = int(round((hi - lo) * samples_per_span)) + 1
        xs = lo + np.arange(count) / samples_per_span
    return xs / axis.density


def tessellate(model: ShapeModel, samples_per_span: int) -> dict:
    """Sample the model on a uniform parameter grid.

    Curves return vertices plus a closed flag; surfaces return vertices and
    quad faces (indices into the vertex list, wrapping on periodic axes).
    """
    if samples_per_span < 1:
        raise ValueError("samples_per_span must be at least 1")
    if model.dims == 1:
        ts = _axis_samples(model.axes[0], samples_per_span)
        verts = eval_curve(model, ts)
        return {
            "vertices": verts,
            "closed": model.axes[0].periodic,
        }
    us = _axis_samples(model.axes[0], samples_per_span)
    vs = _axis_samples(model.axes[1], samples_per_span)
    grid = surface_grid(model, us, vs)
    p1, p2 = grid.shape[:2]
    verts = grid.reshape(-1, model.point_dim)
    faces = []
    rows = p1 if model.axes[0].periodic else p1 - 1
    cols = p2 if model.axes[1].periodic else p2 - 1
    for i in range(rows):
        i2 = (i + 1) % p1
        for j in range(cols):
            j2 = (j + 1) % p2
            faces.append((i * p2 + j, i2 * p2 + j, i2 * p2 + j2, i * p2 + j2))
    return {
        "vertices": verts,
        "faces": np.array(faces, dtype=int),
        "grid_shape": (p1, p2),
    }
