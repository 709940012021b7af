"""Exact construction and evaluation of exponential B-splines.

An exponential B-spline of order ``n0`` is the convolution of ``n0``
first-order exponential kernels ``t -> exp(a*t)`` restricted to ``[0, 1)``,
one per root ``a``.  The convolution is carried out symbolically, so the
result is an exact piecewise function whose pieces are finite sums of
terms ``c * t**p * exp(rho*t)`` on unit knot intervals.  Everything
downstream (interpolators, filters, frame bounds) evaluates this
representation directly instead of sampling an approximation.

Arithmetic is complex throughout; for root vectors closed under negation
the represented function is real and evaluation returns the real part
after checking that the imaginary residue is negligible.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotSymmetric

# Roots closer than this are treated as one repeated root, which keeps the
# symbolic convolution away from catastrophic 1/(rho - a) cancellations.
MERGE_TOL = 1e-9

# Largest imaginary part tolerated when a real value is expected.
REAL_TOL = 1e-9

_FOURIER_SERIES_RADIUS = 1e-6


def _cluster_roots(roots: tuple[complex, ...]) -> tuple[complex, ...]:
    """Replace near-coincident roots by the mean of their cluster."""
    groups: list[list[int]] = []
    for i, a in enumerate(roots):
        for g in groups:
            if abs(roots[g[0]] - a) <= MERGE_TOL:
                g.append(i)
                break
        else:
            groups.append([i])
    out = list(roots)
    for g in groups:
        rep = sum(roots[i] for i in g) / len(g)
        if abs(rep.real) <= MERGE_TOL / 2 and any(roots[i].real == 0 for i in g):
            rep = complex(0.0, rep.imag)
        if abs(rep.imag) <= MERGE_TOL / 2 and any(roots[i].imag == 0 for i in g):
            rep = complex(rep.real, 0.0)
        for i in g:
            out[i] = rep
    return tuple(out)


class RootVector:
    """Ordered vector of poles defining an exponential B-spline.

    The order of the spline equals the number of roots; repeated roots
    raise the polynomial degree attached to that exponential rate.
    """

    __slots__ = ("_roots", "_merged")

    def __init__(self, roots) -> None:
        vals = tuple(complex(a) for a in roots)
        if not vals:
            raise ValueError("root vector must contain at least one root")
        self._roots = vals
        self._merged = _cluster_roots(vals)

    @property
    def roots(self) -> tuple[complex, ...]:
        return self._roots

    @property
    def merged(self) -> tuple[complex, ...]:
        """Roots with near-coincident values collapsed to a shared rate."""
        return self._merged

    @property
    def n0(self) -> int:
        return len(self._roots)

    def distinct(self) -> list[tuple[complex, int]]:
        """Distinct rates with multiplicities, in first-seen order."""
        out: list[tuple[complex, int]] = []
        for a in self._merged:
            for i, (b, m) in enumerate(out):
                if b == a:
                    out[i] = (b, m + 1)
                    break
            else:
                out.append((a, 1))
        return out

    @property
    def is_conjugate_symmetric(self) -> bool:
        """True when the multiset of roots is closed under negation."""
        pool = list(self._merged)
        while pool:
            a = pool.pop()
            if abs(a) <= MERGE_TOL:
                continue
            for i, b in enumerate(pool):
                if abs(b + a) <= MERGE_TOL:
                    del pool[i]
                    break
            else:
                return False
        return True

    def riesz_admissible(self, tol: float = 1e-9) -> bool:
        """Check that no two distinct purely imaginary roots differ by a
        nonzero multiple of 2*pi*i, which would collapse the Riesz basis."""
        imag = [a for a, _ in self.distinct() if abs(a.real) <= tol]
        for i, a in enumerate(imag):
            for b in imag[i + 1 :]:
                k = round((a - b).imag / (2.0 * np.pi))
                if k != 0 and abs((a - b) - 2j * np.pi * k) <= tol:
                    return False
        return True

    def scaled(self, factor: float) -> "RootVector":
        """Roots divided by ``factor`` (grid refinement by ``factor``)."""
        return RootVector(tuple(a / factor for a in self._roots))

    def __len__(self) -> int:
        return len(self._roots)

    def __iter__(self):
        return iter(self._roots)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootVector) and self._roots == other._roots

    def __hash__(self) -> int:
        return hash(self._roots)

    def __repr__(self) -> str:
        return f"RootVector({list(self._roots)!r})"


# A piece term is (coefficient, power, rate): c * u**p * exp(rate*u) with u
# the local coordinate inside the knot interval.
_TermMap = dict[tuple[int, complex], complex]


def _antiderivative_coeffs(p: int, gamma: complex) -> list[complex]:
    """Coefficients q_j with  d/dw [exp(gamma*w) * sum_j q_j w**(p-j)] = w**p exp(gamma*w).

    Requires gamma != 0.
    """
    coeffs = [1.0 / gamma]
    for j in range(1, p + 1):
        coeffs.append(-coeffs[-1] * (p - j + 1) / gamma)
    return coeffs


class PiecewiseExpPoly:
    """Compactly supported piecewise exponential polynomial.

    The function lives on a uniform knot grid ``start + j*step`` with
    rational ``start`` and ``step``; piece ``j`` covers the half-open
    interval ``[start + j*step, start + (j+1)*step)`` and is evaluated in
    the local coordinate relative to its left knot.  Values at knots follow
    the right-continuous convention, and evaluation outside the support is
    exactly zero.
    """

    __slots__ = ("start", "step", "pieces", "real_valued", "_compiled")

    def __init__(
        self,
        start: Fraction,
        step: Fraction,
        pieces: list[_TermMap],
        real_valued: bool = False,
    ) -> None:
        self.start = Fraction(start)
        self.step = Fraction(step)
        if self.step <= 0:
            raise ValueError("knot step must be positive")
        self.pieces = [dict(p) for p in pieces]
        self.real_valued = real_valued
        self._compiled = None

    # -- structure ---------------------------------------------------------

    @property
    def end(self) -> Fraction:
        return self.start + len(self.pieces) * self.step

    @property
    def support(self) -> tuple[float, float]:
        return (float(self.start), float(self.end))

    def knots(self) -> list[Fraction]:
        return [self.start + j * self.step for j in range(len(self.pieces) + 1)]

    def _compile(self):
        if self._compiled is None:
            comp = []
            for piece in self.pieces:
                if piece:
                    keys = sorted(piece, key=lambda k: (k[0], k[1].real, k[1].imag))
                    powers = np.array([k[0] for k in keys], dtype=float)
                    rates = np.array([k[1] for k in keys], dtype=complex)
                    coefs = np.array([piece[k] for k in keys], dtype=complex)
                else:
                    powers = np.zeros(0)
                    rates = np.zeros(0, dtype=complex)
                    coefs = np.zeros(0, dtype=complex)
                comp.append((coefs, powers, rates))
            self._compiled = comp
        return self._compiled

    # -- evaluation --------------------------------------------------------

    def eval_complex(self, t: float) -> complex:
        start = float(self.start)
        step = float(self.step)
        idx = int(np.floor((t - start) / step))
        if idx < 0 or idx >= len(self.pieces):
            return 0.0 + 0.0j
        u = t - (start + idx * step)
        total = 0.0 + 0.0j
        for (p, rho), c in self.pieces[idx].items():
            total += c * (u**p) * cmath.exp(rho * u)
        return total

    def __call__(self, t: float):
        val = self.eval_complex(float(t))
        if self.real_valued:
            assert abs(val.imag) < REAL_TOL, f"imaginary residue {val.imag!r} at t={t}"
            return val.real
        return val

    def eval_many(self, ts) -> np.ndarray:
        """Vectorized evaluation; returns a float array when the function
        is known to be real valued."""
        ts = np.asarray(ts, dtype=float)
        flat = ts.ravel()
        out = np.zeros(flat.shape, dtype=complex)
        start = float(self.start)
        step = float(self.step)
        idx = np.floor((flat - start) / step).astype(int)
        comp = self._compile()
        inside = (idx >= 0) & (idx < len(self.pieces))
        for j in np.unique(idx[inside]):
            coefs, powers, rates = comp[j]
            if coefs.size == 0:
                continue
            sel = inside & (idx == j)
            u = flat[sel] - (start + j * step)
            vals = (u[:, None] ** powers[None, :]) * np.exp(u[:, None] * rates[None, :])
            out[sel] = vals @ coefs
        if self.real_valued:
            resid = float(np.max(np.abs(out.imag))) if out.size else 0.0
            assert resid < REAL_TOL, f"imaginary residue {resid!r}"
            return out.real.reshape(ts.shape)
        return out.reshape(ts.shape)

    # -- algebra -----------------------------------------------------------

    def shifted(self, delta: Fraction) -> "PiecewiseExpPoly":
        """Translate the function right by ``delta`` (a rational number)."""
        return PiecewiseExpPoly(
            self.start + Fraction(delta), self.step, self.pieces, self.real_valued
        )

    def with_step(self, new_step: Fraction) -> "PiecewiseExpPoly":
        """Re-express the same function on a finer knot grid.

        ``step`` must be an integer multiple of ``new_step`` and ``start``
        must lie on the new grid.
        """
        new_step = Fraction(new_step)
        ratio = self.step / new_step
        if ratio.denominator != 1 or ratio < 1:
            raise ValueError(f"step {self.step} is not a multiple of {new_step}")
        r = int(ratio)
        if r == 1:
            return PiecewiseExpPoly(self.start, self.step, self.pieces, self.real_valued)
        pieces: list[_TermMap] = []
        for piece in self.pieces:
            for i in range(r):
                d = float(i * new_step)
                sub: _TermMap = {}
                for (p, rho), c in piece.items():
                    base = c * cmath.exp(rho * d)
                    # (v + d)**p expanded binomially in the new local coordinate v
                    binom = 1.0
                    for q in range(p, -1, -1):
                        key = (q, rho)
                        sub[key] = sub.get(key, 0.0) + base * binom * d ** (p - q)
                        binom = binom * q / (p - q + 1)
                pieces.append({k: v for k, v in sub.items() if v != 0})
        return PiecewiseExpPoly(self.start, new_step, pieces, self.real_valued)

    def __add__(self, other: "PiecewiseExpPoly") -> "PiecewiseExpPoly":
        if not isinstance(other, PiecewiseExpPoly):
            return NotImplemented
        if self.step != other.step:
            raise ValueError("knot steps differ; call with_step first")
        offset = (other.start - self.start) / self.step
        if offset.denominator != 1:
            raise ValueError("knot grids are not aligned")
        off = int(offset)
        lo = min(0, off)
        hi = max(len(self.pieces), off + len(other.pieces))
        pieces: list[_TermMap] = [dict() for _ in range(hi - lo)]
        for j, piece in enumerate(self.pieces):
            for key, c in piece.items():
                tgt = pieces[j - lo]
                tgt[key] = tgt.get(key, 0.0) + c
        for j, piece in enumerate(other.pieces):
            for key, c in piece.items():
                tgt = pieces[j + off - lo]
                tgt[key] = tgt.get(key, 0.0) + c
        pieces = [{k: v for k, v in p.items() if v != 0} for p in pieces]
        return PiecewiseExpPoly(
            self.start + lo * self.step,
            self.step,
            pieces,
            self.real_valued and other.real_valued,
        )

    def __mul__(self, scalar) -> "PiecewiseExpPoly":
        s = complex(scalar)
        pieces = [{k: c * s for k, c in p.items()} for p in self.pieces]
        real = self.real_valued and abs(s.imag) == 0.0
        return PiecewiseExpPoly(self.start, self.step, pieces, real)

    __rmul__ = __mul__

    def derivative(self) -> "PiecewiseExpPoly":
        """Exact piecewise derivative (defined piecewise; one-sided at knots)."""
        pieces: list[_TermMap] = []
        for piece in self.pieces:
            d: _TermMap = {}
            for (p, rho), c in piece.items():
                if p > 0:
                    key = (p - 1, rho)
                    d[key] = d.get(key, 0.0) + c * p
                if rho != 0:
                    key = (p, rho)
                    d[key] = d.get(key, 0.0) + c * rho
            pieces.append({k: v for k, v in d.items() if v != 0})
        return PiecewiseExpPoly(self.start, self.step, pieces, self.real_valued)

    def boundary_values(self, j: int) -> tuple[complex, complex]:
        """Left and right limits at interior knot ``j`` (between pieces j-1 and j)."""
        if j <= 0 or j >= len(self.pieces) + 1:
            raise ValueError("interior knots only")
        step = float(self.step)
        left = 0.0 + 0.0j
        if j - 1 < len(self.pieces):
            for (p, rho), c in self.pieces[j - 1].items():
                left += c * step**p * cmath.exp(rho * step)
        right = 0.0 + 0.0j
        if j < len(self.pieces):
            for (p, rho), c in self.pieces[j].items():
                if p == 0:
                    right += c
        return left, right

    # -- construction ------------------------------------------------------

    def convolve_first_order(self, a: complex) -> "PiecewiseExpPoly":
        """Convolve with ``t -> exp(a*t)`` on ``[0, 1)``; requires unit step."""
        if self.step != 1:
            raise ValueError("first-order convolution requires a unit knot step")
        a = complex(a)
        n = len(self.pieces)
        out: list[_TermMap] = [dict() for _ in range(n + 1)]

        def add(piece: _TermMap, key: tuple[int, complex], val: complex) -> None:
            piece[key] = piece.get(key, 0.0) + val

        ea = cmath.exp(a)
        for j, piece in enumerate(self.pieces):
            for (p, rho), c in piece.items():
                gamma = rho - a
                if gamma == 0:
                    # both contributions integrate w**p exactly
                    add(out[j], (p + 1, a), c / (p + 1))
                    add(out[j + 1], (0, a), c * ea / (p + 1))
                    add(out[j + 1], (p + 1, a), -c * ea / (p + 1))
                else:
                    q = _antiderivative_coeffs(p, gamma)
                    for k, qk in enumerate(q):
                        add(out[j], (p - k, rho), c * qk)
                    add(out[j], (0, a), -c * q[p])
                    add(out[j + 1], (0, a), c * cmath.exp(rho) * sum(q))
                    for k, qk in enumerate(q):
                        add(out[j + 1], (p - k, rho), -c * ea * qk)
        out = [{k: v for k, v in p.items() if v != 0} for p in out]
        return PiecewiseExpPoly(self.start, Fraction(1), out, False)

    def __repr__(self) -> str:
        return (
            f"<PiecewiseExpPoly support=[{self.start}, {self.end}] "
            f"step={self.step} pieces={len(self.pieces)}>"
        )


def make_causal_bspline(roots: RootVector) -> PiecewiseExpPoly:
    """Build the causal exponential B-spline for ``roots``.

    The result is supported on ``[0, n0]`` and is the exact n0-fold
    convolution of the first-order exponential kernels, one per root.
    """
    rates = roots.merged
    poly = PiecewiseExpPoly(Fraction(0), Fraction(1), [{(0, rates[0]): 1.0 + 0.0j}])
    for a in rates[1:]:
        poly = poly.convolve_first_order(a)
    poly.real_valued = roots.is_conjugate_symmetric
    return poly


def center(bspline: PiecewiseExpPoly, n0: int) -> PiecewiseExpPoly:
    """Shift a causal B-spline of order ``n0`` to symmetric support."""
    return bspline.shifted(-Fraction(n0, 2))


def fourier_bspline(roots: RootVector, omega: float) -> complex:
    """Frequency response of the causal exponential B-spline.

    Product of ``(1 - exp(a - i*w)) / (i*w - a)`` over the roots; factors
    with ``|i*w - a|`` below 1e-6 are evaluated by series expansion of the
    removable singularity.
    """
    val = 1.0 + 0.0j
    for a in roots.merged:
        z = 1j * omega - a
        if abs(z) < _FOURIER_SERIES_RADIUS:
            val *= 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0
        else:
            val *= (1.0 - cmath.exp(-z)) / z
    return val


def reproduction_space(roots: RootVector) -> list[tuple[complex, int]]:
    """Generators reproduced by the B-spline span.

    Returns one ``(rate, max_power)`` pair per distinct root: the span
    contains ``t**p * exp(rate*t)`` for ``0 <= p <= max_power``.
    """
    return [(a, m - 1) for a, m in roots.distinct()]


def require_conjugate_symmetric(roots: RootVector) -> None:
    if not roots.is_conjugate_symmetric:
        raise NotSymmetric(f"roots {list(roots.roots)} are not closed under negation")
