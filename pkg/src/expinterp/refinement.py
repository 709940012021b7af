"""Grid refinement of spline coefficient sequences.

A coefficient sequence on a coarse grid can be re-expressed on a finer
grid without changing the continuous function it represents: B-splines
obey a two-scale relation whose mask depends on the roots divided by the
target grid density, and interpolator expansions enter the scheme through
a one-time pre-filter that converts samples into B-spline coefficients on
an evenly refined grid.  Iterating the mask drives the coefficients toward
samples of the represented function, which is what makes the scheme useful
as a subdivision-style preview.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import REAL_TOL, RootVector, make_causal_bspline
from .errors import OddFactor
from .interpolator import Interpolator


@dataclass(frozen=True)
class RefinementFilter:
    """Two-scale mask re-expressing a B-spline on a grid ``factor`` finer.

    ``taps[k]`` weights the copy shifted by ``k`` fine-grid steps; the tap
    count is ``n0*(factor-1) + 1``.
    """

    taps: np.ndarray
    factor: int
    roots: RootVector

    def transfer(self, omega: float) -> complex:
        ks = np.arange(len(self.taps))
        return complex(np.sum(self.taps * np.exp(-1j * omega * ks)))


@dataclass(frozen=True)
class PreFilter:
    """Filter turning interpolator samples into fine-grid B-spline weights.

    Taps are indexed from 0; ``shift`` records the integer re-centering
    baked into them.
    """

    taps: np.ndarray
    factor: int
    shift: int

    def transfer(self, omega: float) -> complex:
        ks = np.arange(len(self.taps))
        return complex(np.sum(self.taps * np.exp(-1j * omega * ks)))


@dataclass(frozen=True)
class SampleSequence:
    """Coefficient sequence on a uniform grid of density ``scale``.

    ``values`` has shape (N,) for scalar data or (N, d) for points;
    ``origin`` is the grid index of ``values[0]``.  Periodic sequences
    store exactly one period and ``period == N``.
    """

    values: np.ndarray
    origin: int
    scale: int
    periodic: bool
    period: int | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if vals.ndim not in (1, 2):
            raise ValueError("values must be a vector or a list of points")
        if self.periodic:
            if self.period is None or self.period != len(vals):
                raise ValueError("periodic sequences must store exactly one period")
        elif self.period is not None:
            raise ValueError("period only applies to periodic sequences")
        if self.scale < 1:
            raise ValueError("scale must be a positive integer")

    def __len__(self) -> int:
        return len(self.values)


def refinement_filter(roots: RootVector, m: int) -> RefinementFilter:
    """Mask of the two-scale relation for ``roots`` at grid factor ``m``.

    The relation expands the B-spline with roots ``m * roots`` dilated by
    ``m`` in copies of the B-spline with the given roots, so callers pass
    the roots already divided by the target density.
    """
    if m < 2:
        raise ValueError(f"refinement factor must be at least 2, got {m}")
    taps = np.array([1.0 + 0.0j])
    for a in roots.merged:
        factor_taps = np.exp(a * np.arange(m))
        taps = np.convolve(taps, factor_taps)
    taps *= float(m) ** (-(roots.n0 - 1))
    if roots.is_conjugate_symmetric:
        resid = float(np.max(np.abs(taps.imag)))
        assert resid < REAL_TOL, f"imaginary residue {resid!r} in mask"
        taps = taps.real.copy()
    return RefinementFilter(taps=taps, factor=int(m), roots=roots)


def pre_filter(interp: Interpolator, m0: int) -> PreFilter:
    """Sample-to-coefficient filter for an even initial grid factor.

    Combines the interpolator's tap sequence (upsampled onto the fine grid)
    with the two-scale mask of the scaled B-spline and re-centers so the
    first tap sits at index 0.  Odd factors would put taps on half-grid
    positions, hence the evenness requirement.
    """
    m0 = int(m0)
    if m0 < 2 or m0 % 2 != 0:
        raise OddFactor(f"initial refinement factor must be even and >= 2, got {m0}")
    n0 = interp.roots.n0
    mask = refinement_filter(interp.roots.scaled(m0), m0)
    lam = interp.lam
    half = m0 // 2
    width = (n0 - 2) * half
    lam_up = np.zeros(2 * width + 1)
    for n, v in lam:
        lam_up[width + n * half] = v
    taps = np.convolve(lam_up, mask.taps)
    # first index of the product is -width; re-centering shifts by m0*(n0/2 - 1)
    shift = (m0 * n0) // 2 - m0
    lead = -width + shift
    if lead != 0:
        raise AssertionError(f"pre-filter alignment is off by {lead}")
    return PreFilter(taps=taps, factor=m0, shift=shift)


def _upsample(values: np.ndarray, m: int, periodic: bool) -> np.ndarray:
    vals = values if values.ndim == 2 else values[:, None]
    n = len(vals)
    length = m * n if periodic else m * (n - 1) + 1
    up = np.zeros((length, vals.shape[1]))
    up[:: m if n > 1 else 1][:n] = vals
    return up


def _convolve_cols(up: np.ndarray, taps: np.ndarray, periodic: bool) -> np.ndarray:
    cols = [np.convolve(up[:, j], taps) for j in range(up.shape[1])]
    full = np.stack(cols, axis=1)
    if not periodic:
        return full
    period = len(up)
    out = np.zeros((period, up.shape[1]))
    for i in range(len(full)):
        out[i % period] += full[i]
    return out


def _apply(seq: SampleSequence, taps: np.ndarray, factor: int) -> SampleSequence:
    """Upsample by ``factor`` and convolve with ``taps`` (first index 0)."""
    squeeze = seq.values.ndim == 1
    up = _upsample(seq.values, factor, seq.periodic)
    out = _convolve_cols(up, taps, seq.periodic)
    if squeeze:
        out = out[:, 0]
    return SampleSequence(
        values=out,
        origin=factor * seq.origin,
        scale=factor * seq.scale,
        periodic=seq.periodic,
        period=factor * seq.period if seq.periodic else None,
    )


def change_of_basis(c: SampleSequence, pre: PreFilter) -> SampleSequence:
    """Convert integer-grid samples into B-spline coefficients on the
    ``pre.factor`` times finer grid; the represented curve is unchanged."""
    if c.scale != 1:
        raise ValueError("change of basis applies to unit-scale sample sequences")
    return _apply(c, pre.taps, pre.factor)


def refine_step(
    c_prev: SampleSequence, roots: RootVector, m: int, n: int, m0: int
) -> SampleSequence:
    """Single mask application taking step ``n`` of the refinement scheme.

    ``roots`` are the unscaled interpolator roots; the mask uses them
    divided by the target density ``m0 * m**n``.
    """
    if n < 1:
        raise ValueError("refinement steps are numbered from 1")
    target = m0 * m**n
    if c_prev.scale * m != target:
        raise ValueError(
            f"sequence at scale {c_prev.scale} cannot take step {n} to scale {target}"
        )
    mask = refinement_filter(roots.scaled(target), m)
    return _apply(c_prev, mask.taps, m)


def refine_to_depth(
    c: SampleSequence, interp: Interpolator, m0: int, m: int, depth: int
) -> SampleSequence:
    """Pre-filter then apply ``depth`` mask steps; result lives on the grid
    of density ``m0 * m**depth``."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    seq = change_of_basis(c, pre_filter(interp, m0))
    for n in range(1, depth + 1):
        seq = refine_step(seq, interp.roots, m, n, m0)
    return seq


def reconstruct(seq: SampleSequence, roots: RootVector, ts) -> np.ndarray:
    """Evaluate the continuous function represented by ``seq``.

    ``seq.values`` are causal B-spline weights on the fine grid; weight k
    multiplies the copy at ``scale*t + scale*(n0-1) - k``, the recentering
    under which sequences produced by :func:`change_of_basis` represent the
    interpolating curve of the original samples with the same parameterization.
    """
    ts = np.asarray(ts, dtype=float)
    bs = make_causal_bspline(roots.scaled(seq.scale))
    n0 = roots.n0
    vals = seq.values if seq.values.ndim == 2 else seq.values[:, None]
    out = np.zeros((ts.size,) + (vals.shape[1],))
    x = seq.scale * ts.ravel() + seq.scale * (n0 - 1)
    base = np.floor(x).astype(int)
    for j in range(n0 + 1):
        k = base - j
        w = bs.eval_many(x - k)
        if seq.periodic:
            idx = (k - seq.origin) % seq.period
            out += w[:, None] * vals[idx]
        else:
            idx = k - seq.origin
            ok = (idx >= 0) & (idx < len(vals))
            if np.any(ok):
                out[ok] += w[ok, None] * vals[idx[ok]]
    if seq.values.ndim == 1:
        out = out[:, 0]
        return out.reshape(ts.shape)
    return out.reshape(ts.shape + (vals.shape[1],))
