"""Compactly supported interpolators built from half-shifted B-splines.

The interpolator is a finite, symmetric combination of copies of the
centered exponential B-spline shifted by half-integers.  Its coefficients
come from a small linear system enforcing the cardinal interpolation
conditions at the integers, so the resulting function interpolates data
placed on the integer grid while inheriting the B-spline's smoothness,
compact support and reproduction properties.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .core import (
    REAL_TOL,
    PiecewiseExpPoly,
    RootVector,
    center,
    fourier_bspline,
    make_causal_bspline,
    reproduction_space,
)
from .errors import (
    DegenerateFrame,
    NotSymmetric,
    OrderTooLow,
    ReproductionConditionViolated,
    SingularSystem,
)

CONDITION_LIMIT = 1e12
_RESIDUAL_LIMIT = 1e-10
_FRAME_FLOOR = 1e-12


class CoefficientSequence:
    """Finitely supported real tap sequence over half-integer shift indices.

    ``seq[n]`` weights the B-spline copy shifted by ``n/2``.  Symmetric
    sequences store one side and mirror exactly.
    """

    __slots__ = ("_values", "symmetric")

    def __init__(self, values: Mapping[int, float], symmetric: bool = True) -> None:
        vals: dict[int, float] = {}
        for n, v in values.items():
            v = float(v)
            if v != 0.0:
                vals[int(n)] = v
        if symmetric:
            for n in list(vals):
                if -n in vals and vals[-n] != vals[n]:
                    raise ValueError("asymmetric values in symmetric sequence")
            for n in list(vals):
                vals[-n] = vals[n]
        self._values = vals
        self.symmetric = symmetric

    def __getitem__(self, n: int) -> float:
        return self._values.get(int(n), 0.0)

    @property
    def indices(self) -> list[int]:
        return sorted(self._values)

    @property
    def max_index(self) -> int:
        return max((abs(n) for n in self._values), default=0)

    def one_sided(self) -> list[float]:
        """Values at indices 0..max_index."""
        return [self[n] for n in range(self.max_index + 1)]

    def transfer(self, omega: float) -> complex:
        """Half-integer frequency response: sum of seq[n]*exp(-i*w*n/2)."""
        return sum(v * cmath.exp(-0.5j * omega * n) for n, v in self._values.items())

    def __iter__(self):
        return iter(sorted(self._values.items()))

    def __len__(self) -> int:
        return len(self._values)

    def __repr__(self) -> str:
        return f"CoefficientSequence({dict(sorted(self._values.items()))!r})"


@dataclass(frozen=True)
class InterpolationSystem:
    """Linear system whose solution gives the interpolator coefficients."""

    matrix: np.ndarray
    rhs: np.ndarray
    condition_number: float


@dataclass(frozen=True)
class RieszBounds:
    """Frame bounds estimated for the integer shifts of an interpolator."""

    lower: float
    upper: float
    grid_size: int


class Interpolator:
    """Cardinal interpolator on the integer grid with compact support.

    Callable; evaluation is exact up to floating point since the underlying
    representation is symbolic.
    """

    __slots__ = ("roots", "lam", "phi", "support_halfwidth", "condition_number")

    def __init__(
        self,
        roots: RootVector,
        lam: CoefficientSequence,
        phi: PiecewiseExpPoly,
        condition_number: float,
    ) -> None:
        self.roots = roots
        self.lam = lam
        self.phi = phi
        self.support_halfwidth = roots.n0 - 1
        self.condition_number = float(condition_number)

    def __call__(self, t: float) -> float:
        return self.phi(t)

    def eval_many(self, ts) -> np.ndarray:
        return self.phi.eval_many(ts)

    def __repr__(self) -> str:
        return (
            f"<Interpolator n0={self.roots.n0} "
            f"halfwidth={self.support_halfwidth} cond={self.condition_number:.3g}>"
        )


def _centered_bspline(roots: RootVector) -> PiecewiseExpPoly:
    return center(make_causal_bspline(roots), roots.n0)


def _real(value: complex, what: str) -> float:
    assert abs(value.imag) < REAL_TOL, f"imaginary residue in {what}: {value.imag!r}"
    return value.real


def build_system(roots: RootVector) -> InterpolationSystem:
    """Assemble the cardinal interpolation system for ``roots``.

    Row ``k`` states the value of the interpolator at integer ``k``; column
    0 carries the unshifted B-spline and column ``l`` the symmetric pair of
    copies shifted by ``l/2``.  The condition number is reported so callers
    can log how far each instance sits from singularity.
    """
    if not roots.is_conjugate_symmetric:
        raise NotSymmetric(f"roots {list(roots.roots)} are not closed under negation")
    if roots.n0 < 3:
        raise OrderTooLow(f"need at least 3 roots, got {roots.n0}")
    n0 = roots.n0
    beta = _centered_bspline(roots)
    size = n0 - 1
    a = np.empty((size, size), dtype=float)
    for k in range(size):
        a[k, 0] = _real(beta.eval_complex(float(k)), "system matrix")
        for l in range(1, size):
            val = beta.eval_complex(k - l / 2.0) + beta.eval_complex(k + l / 2.0)
            a[k, l] = _real(val, "system matrix")
    rhs = np.zeros(size)
    rhs[0] = 1.0
    cond = float(np.linalg.cond(a))
    return InterpolationSystem(matrix=a, rhs=rhs, condition_number=cond)


def solve_lambda(system: InterpolationSystem) -> CoefficientSequence:
    """Solve the interpolation system for the symmetric tap sequence."""
    if not np.isfinite(system.condition_number) or system.condition_number >= CONDITION_LIMIT:
        raise SingularSystem(
            f"condition number {system.condition_number:.3e} exceeds {CONDITION_LIMIT:.0e}"
        )
    sol = np.linalg.solve(system.matrix, system.rhs)
    residual = float(np.max(np.abs(system.matrix @ sol - system.rhs)))
    if residual >= _RESIDUAL_LIMIT:
        raise SingularSystem(f"solution residual {residual:.3e} too large")
    return CoefficientSequence({n: sol[n] for n in range(len(sol))}, symmetric=True)


def make_interpolator(roots: RootVector) -> Interpolator:
    """Build the interpolator for ``roots`` (requires symmetry and n0 >= 3)."""
    system = build_system(roots)
    lam = solve_lambda(system)
    n0 = roots.n0
    beta = _centered_bspline(roots).with_step(Fraction(1, 2))
    phi = lam[0] * beta
    for n in range(1, n0 - 1):
        if lam[n] == 0.0:
            continue
        pair = beta.shifted(Fraction(n, 2)) + beta.shifted(Fraction(-n, 2))
        phi = phi + lam[n] * pair
    return Interpolator(roots, lam, phi, system.condition_number)


def lambda_closed_form_ellipse(m: int) -> CoefficientSequence:
    """Closed-form interpolator coefficients for roots ``(0, 2i*pi/M, -2i*pi/M)``.

    Matches :func:`solve_lambda` on the same roots; ``m`` is the number of
    control points of the periodic curve and must be at least 3.
    """
    if m < 3:
        raise ValueError(f"need at least 3 control points, got {m}")
    s = math.pi / (2.0 * m)
    lam0 = math.pi**2 / (2.0 * m**2 * math.sin(s) ** 2 * math.cos(2.0 * s))
    lam1 = -(math.pi**2) / (m**2 * math.sin(2.0 * s) * math.sin(4.0 * s))
    return CoefficientSequence({0: lam0, 1: lam1}, symmetric=True)


def verify_reproduction(interp: Interpolator, t_grid) -> float:
    """Reconstruct every generator of the reproduction space from its
    integer samples and return the largest pointwise error on ``t_grid``.

    Raises ReproductionConditionViolated when the tap sequence annihilates
    one of the exponential rates, which makes reconstruction impossible.
    """
    ts = np.asarray(t_grid, dtype=float)
    lam = interp.lam
    for a, _ in interp.roots.distinct():
        gate = sum(lam[n] * cmath.exp(-a * n / 2.0) for n in lam.indices)
        if abs(gate) <= 1e-9:
            raise ReproductionConditionViolated(
                f"coefficient sequence annihilates rate {a!r}"
            )
    pad = interp.support_halfwidth + 1
    k_lo = math.floor(float(ts.min())) - pad
    k_hi = math.ceil(float(ts.max())) + pad
    ks = np.arange(k_lo, k_hi + 1)
    # basis values phi(t - k), shared across generators
    basis = np.empty((ts.size, ks.size))
    for i, k in enumerate(ks):
        basis[:, i] = interp.eval_many(ts - k)
    worst = 0.0
    for a, max_power in reproduction_space(interp.roots):
        for p in range(max_power + 1):
            fk = ks.astype(complex) ** p * np.exp(a * ks)
            ft = ts.astype(complex) ** p * np.exp(a * ts)
            recon = basis @ fk
            worst = max(worst, float(np.max(np.abs(recon - ft))))
    return worst


def bspline_frame_extrema(roots: RootVector, grid_size: int = 1024) -> tuple[float, float]:
    """Extrema over frequency of the B-spline's shifted-basis frame function.

    The frame function (the periodized squared magnitude of the frequency
    response) is computed exactly from integer samples of the B-spline
    autocorrelation, then extremized on a uniform grid of ``grid_size``
    frequencies spanning one period.
    """
    if not roots.is_conjugate_symmetric:
        raise NotSymmetric("frame function needs a negation-closed root vector")
    n0 = roots.n0
    doubled = RootVector(tuple(roots.roots) + tuple(roots.roots))
    auto = center(make_causal_bspline(doubled), 2 * n0)
    c = np.array(
        [_real(auto.eval_complex(float(n)), "autocorrelation") for n in range(n0 + 1)]
    )
    omega = np.linspace(0.0, 2.0 * np.pi, int(grid_size), endpoint=False)
    frame = np.full(omega.shape, c[0])
    for n in range(1, n0 + 1):
        frame += 2.0 * c[n] * np.cos(n * omega)
    return float(frame.min()), float(frame.max())


def estimate_riesz_bounds(interp: Interpolator, grid_size: int = 1024) -> RieszBounds:
    """Estimate Riesz bounds for the integer shifts of the interpolator.

    Combines the B-spline frame extrema with the extrema of the tap
    sequence's frequency response over its full period.  Raises
    DegenerateFrame when the lower bound vanishes numerically.
    """
    if grid_size < 256:
        raise ValueError(f"grid_size must be at least 256, got {grid_size}")
    frame_min, frame_max = bspline_frame_extrema(interp.roots, grid_size)
    omega = np.linspace(0.0, 4.0 * np.pi, int(grid_size), endpoint=False)
    lam = interp.lam
    resp = np.zeros(omega.shape, dtype=complex)
    for n, v in lam:
        resp += v * np.exp(-0.5j * omega * n)
    mag = np.abs(resp)
    lower = math.sqrt(max(frame_min, 0.0)) * float(mag.min())
    upper = math.sqrt(frame_max) * float(mag.max())
    if lower < _FRAME_FLOOR:
        raise DegenerateFrame(f"estimated lower bound {lower:.3e} is numerically zero")
    return RieszBounds(lower=lower, upper=upper, grid_size=int(grid_size))


def fourier_interpolator(interp: Interpolator, omega: float) -> complex:
    """Frequency response of the centered interpolator."""
    phase = cmath.exp(1j * omega * interp.roots.n0 / 2.0)
    return interp.lam.transfer(omega) * phase * fourier_bspline(interp.roots, omega)
