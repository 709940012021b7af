"""Built-in shapes with exactly representable geometry.

Every preset picks root vectors whose reproduction space contains the
coordinate functions of a classical parameterization, so the model
reproduces the analytic surface exactly (up to round-off) at any density
above the stated minimum.  ``preset_reference`` exposes the analytic
parameterization for comparison against the spline model.
"""

from __future__ import annotations

import math

import numpy as np

from .core import RootVector
from .errors import UnknownShape
from .interpolator import Interpolator, make_interpolator
from .shapes import AxisSpec, ControlNet, ShapeModel

_TWO_PI = 2.0 * math.pi

_interp_cache: dict[RootVector, Interpolator] = {}


def _interp(roots: tuple) -> Interpolator:
    rv = RootVector(roots)
    if rv not in _interp_cache:
        if not rv.riesz_admissible():
            raise ValueError(
                "density too low: imaginary root pairs collide modulo the sampling rate"
            )
        _interp_cache[rv] = make_interpolator(rv)
    return _interp_cache[rv]


def _imag_pairs(m: int, freqs) -> tuple:
    """Roots for trigonometric frequencies on a density-``m`` axis."""
    roots = []
    for f in freqs:
        if f == 0:
            roots.append(0.0)
        else:
            w = _TWO_PI * f / m
            roots.extend([1j * w, -1j * w])
    return tuple(roots)


def _curve_model(roots, m, periodic, domain, sample, meta) -> ShapeModel:
    interp = _interp(roots)
    if periodic:
        origin = 0
        ks = np.arange(m)
    else:
        pad = interp.support_halfwidth + 1
        origin = math.floor(domain[0]) - pad
        ks = np.arange(origin, math.ceil(domain[1]) + pad + 1)
    pts = np.stack(sample(ks / m), axis=-1)
    net = ControlNet(points=pts, periodic=(periodic,), origins=(origin,))
    axis = AxisSpec(interp=interp, density=m, periodic=periodic, domain=domain)
    return ShapeModel(net=net, axes=(axis,), preset=meta)


def _surface_model(roots_u, roots_v, m1, m2, per_u, per_v, dom_u, dom_v, sample, meta):
    iu, iv = _interp(roots_u), _interp(roots_v)
    if per_u:
        o1, ks = 0, np.arange(m1)
    else:
        pad = iu.support_halfwidth + 1
        o1 = math.floor(dom_u[0]) - pad
        ks = np.arange(o1, math.ceil(dom_u[1]) + pad + 1)
    if per_v:
        o2, ls = 0, np.arange(m2)
    else:
        pad = iv.support_halfwidth + 1
        o2 = math.floor(dom_v[0]) - pad
        ls = np.arange(o2, math.ceil(dom_v[1]) + pad + 1)
    uu, vv = np.meshgrid(ks / m1, ls / m2, indexing="ij")
    pts = np.stack(sample(uu, vv), axis=-1)
    net = ControlNet(points=pts, periodic=(per_u, per_v), origins=(o1, o2))
    axes = (
        AxisSpec(interp=iu, density=m1, periodic=per_u, domain=dom_u),
        AxisSpec(interp=iv, density=m2, periodic=per_v, domain=dom_v),
    )
    return ShapeModel(net=net, axes=axes, preset=meta)


def _circle_sample(radius, center):
    def sample(t):
        return (
            center[0] + radius * np.cos(_TWO_PI * t),
            center[1] + radius * np.sin(_TWO_PI * t),
        )

    return sample


def _ellipse_sample(a, b, center, angle):
    ca, sa = math.cos(angle), math.sin(angle)

    def sample(t):
        x = a * np.cos(_TWO_PI * t)
        y = b * np.sin(_TWO_PI * t)
        return (center[0] + ca * x - sa * y, center[1] + sa * x + ca * y)

    return sample


def _roman_sample(r):
    def sample(u, v):
        cu, su = np.cos(_TWO_PI * u), np.sin(_TWO_PI * u)
        s2v = np.sin(2 * _TWO_PI * v)
        cv = np.cos(_TWO_PI * v)
        return (
            0.5 * r * r * cu * s2v,
            0.5 * r * r * su * s2v,
            r * r * cu * su * cv * cv,
        )

    return sample


def _paraboloid_sample(a, b, h):
    def sample(u, v):
        return (a * u * np.cosh(v), b * u * np.sinh(v), h * u * u)

    return sample


def _torus_sample(big_r, rho):
    def sample(u, v):
        ring = big_r + rho * np.cos(_TWO_PI * v)
        return (
            ring * np.cos(_TWO_PI * u),
            ring * np.sin(_TWO_PI * u),
            rho * np.sin(_TWO_PI * v) * np.ones_like(u),
        )

    return sample


def _figure8_sample(big_r):
    def sample(u, v):
        th = _TWO_PI * u
        sv, s2v = np.sin(_TWO_PI * v), np.sin(2 * _TWO_PI * v)
        lobe = np.cos(th) * sv - np.sin(th) * s2v
        return (
            (big_r + lobe) * np.cos(2 * th),
            (big_r + lobe) * np.sin(2 * th),
            np.sin(th) * sv + np.cos(th) * s2v,
        )

    return sample


def _helicoid_sample(pitch):
    def sample(u, v):
        return (
            v * np.cos(_TWO_PI * u),
            v * np.sin(_TWO_PI * u),
            pitch * u * np.ones_like(v),
        )

    return sample


def _pinched_torus_sample(big_r, rho):
    def sample(u, v):
        w = 0.5 * rho * (1.0 - np.cos(_TWO_PI * u))
        return (
            (big_r + w * np.cos(_TWO_PI * v)) * np.cos(_TWO_PI * u),
            (big_r + w * np.cos(_TWO_PI * v)) * np.sin(_TWO_PI * u),
            w * np.sin(_TWO_PI * v),
        )

    return sample


def _build_circle(density=8, radius=1.0, center=(0.0, 0.0)):
    m = int(density)
    meta = {"name": "circle", "params": {"density": m, "radius": radius, "center": list(center)}}
    return _curve_model(
        _imag_pairs(m, (0, 1)), m, True, (0.0, float(m)), _circle_sample(radius, center), meta
    )


def _build_ellipse(density=8, a=2.0, b=1.0, center=(0.0, 0.0), angle=0.0):
    m = int(density)
    meta = {
        "name": "ellipse",
        "params": {"density": m, "a": a, "b": b, "center": list(center), "angle": angle},
    }
    return _curve_model(
        _imag_pairs(m, (0, 1)), m, True, (0.0, float(m)), _ellipse_sample(a, b, center, angle), meta
    )


def _build_roman(density_u=5, density_v=5, r=3.0):
    m1, m2 = int(density_u), int(density_v)
    meta = {"name": "roman", "params": {"density_u": m1, "density_v": m2, "r": r}}
    return _surface_model(
        _imag_pairs(m1, (1, 2)),
        _imag_pairs(m2, (0, 2)),
        m1,
        m2,
        False,
        False,
        (0.0, float(m1)),
        (0.0, float(m2)),
        _roman_sample(r),
        meta,
    )


def _build_hyperbolic_paraboloid(density_u=3, density_v=3, a=4.0, b=4.0, h=8.0):
    m1, m2 = int(density_u), int(density_v)
    meta = {
        "name": "hyperbolic_paraboloid",
        "params": {"density_u": m1, "density_v": m2, "a": a, "b": b, "h": h},
    }
    return _surface_model(
        (0.0, 0.0, 0.0),
        (0.0, 1.0 / m2, -1.0 / m2),
        m1,
        m2,
        False,
        False,
        (-float(m1), float(m1)),
        (-float(m2), float(m2)),
        _paraboloid_sample(a, b, h),
        meta,
    )


def _build_torus(density_u=8, density_v=6, ring_radius=2.0, tube_radius=0.8):
    m1, m2 = int(density_u), int(density_v)
    meta = {
        "name": "torus",
        "params": {
            "density_u": m1,
            "density_v": m2,
            "ring_radius": ring_radius,
            "tube_radius": tube_radius,
        },
    }
    return _surface_model(
        _imag_pairs(m1, (0, 1)),
        _imag_pairs(m2, (0, 1)),
        m1,
        m2,
        True,
        True,
        (0.0, float(m1)),
        (0.0, float(m2)),
        _torus_sample(ring_radius, tube_radius),
        meta,
    )


def _build_figure8(density_u=8, density_v=6, ring_radius=2.0):
    m1, m2 = int(density_u), int(density_v)
    meta = {
        "name": "figure8",
        "params": {"density_u": m1, "density_v": m2, "ring_radius": ring_radius},
    }
    return _surface_model(
        _imag_pairs(m1, (1, 2, 3)),
        _imag_pairs(m2, (0, 1, 2)),
        m1,
        m2,
        True,
        True,
        (0.0, float(m1)),
        (0.0, float(m2)),
        _figure8_sample(ring_radius),
        meta,
    )


def _build_helicoid(density_u=6, density_v=3, pitch=1.0):
    m1, m2 = int(density_u), int(density_v)
    meta = {"name": "helicoid", "params": {"density_u": m1, "density_v": m2, "pitch": pitch}}
    return _surface_model(
        (0.0, 0.0) + _imag_pairs(m1, (1,)),
        (0.0, 0.0, 0.0),
        m1,
        m2,
        False,
        False,
        (0.0, float(m1)),
        (-float(m2), float(m2)),
        _helicoid_sample(pitch),
        meta,
    )


def _build_pinched_torus(density_u=6, density_v=4, ring_radius=2.0, tube_radius=1.0):
    m1, m2 = int(density_u), int(density_v)
    meta = {
        "name": "pinched_torus",
        "params": {
            "density_u": m1,
            "density_v": m2,
            "ring_radius": ring_radius,
            "tube_radius": tube_radius,
        },
    }
    return _surface_model(
        _imag_pairs(m1, (0, 1, 2)),
        _imag_pairs(m2, (0, 1)),
        m1,
        m2,
        True,
        True,
        (0.0, float(m1)),
        (0.0, float(m2)),
        _pinched_torus_sample(ring_radius, tube_radius),
        meta,
    )


_BUILDERS = {
    "circle": _build_circle,
    "ellipse": _build_ellipse,
    "roman": _build_roman,
    "hyperbolic_paraboloid": _build_hyperbolic_paraboloid,
    "torus": _build_torus,
    "figure8": _build_figure8,
    "helicoid": _build_helicoid,
    "pinched_torus": _build_pinched_torus,
}

PRESET_NAMES = tuple(sorted(_BUILDERS))


def preset_shape(name: str, **params) -> ShapeModel:
    """Build a named preset model; unknown names raise UnknownShape."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownShape(f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}")
    return builder(**params)


def preset_reference(name: str, **params):
    """Analytic parameterization matching ``preset_shape(name, **params)``.

    Returns a callable of the normalized parameters (one for curves, two
    for surfaces) producing coordinate arrays stacked on the last axis.
    """
    if name not in _BUILDERS:
        raise UnknownShape(f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}")
    model = preset_shape(name, **params)
    p = model.preset["params"]
    if name == "circle":
        fn = _circle_sample(p["radius"], p["center"])
    elif name == "ellipse":
        fn = _ellipse_sample(p["a"], p["b"], p["center"], p["angle"])
    elif name == "roman":
        fn = _roman_sample(p["r"])
    elif name == "hyperbolic_paraboloid":
        fn = _paraboloid_sample(p["a"], p["b"], p["h"])
    elif name == "torus":
        fn = _torus_sample(p["ring_radius"], p["tube_radius"])
    elif name == "figure8":
        fn = _figure8_sample(p["ring_radius"])
    elif name == "helicoid":
        fn = _helicoid_sample(p["pitch"])
    else:
        fn = _pinched_torus_sample(p["ring_radius"], p["tube_radius"])

    if model.dims == 1:

        def curve(t):
            t = np.asarray(t, dtype=float)
            return np.stack(np.broadcast_arrays(*fn(t)), axis=-1)

        return curve

    def surface(u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return np.stack(np.broadcast_arrays(*fn(u, v)), axis=-1)

    return surface


def preset_domain(model: ShapeModel) -> tuple[tuple[float, float], ...]:
    """Normalized parameter domain per axis."""
    return tuple(
        (ax.domain[0] / ax.density, ax.domain[1] / ax.density) for ax in model.axes
    )
