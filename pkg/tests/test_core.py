"""B-spline construction: clustering, symmetry, evaluation, calculus.

Frozen values below were computed from independent oracles: closed-form
piecewise polynomials for the repeated-zero cases, and a discrete-grid
convolution of exponential segments for the mixed cases (see
test_matches_numeric_convolution_oracle).
"""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expinterp import (
    NotSymmetric,
    PiecewiseExpPoly,
    RootVector,
    center,
    fourier_bspline,
    make_causal_bspline,
    reproduction_space,
)
from expinterp.core import _cluster_roots, require_conjugate_symmetric

from conftest import TEST_VECTORS

TWO_PI = 2.0 * math.pi


class TestRootVector:
    def test_merges_near_duplicates_to_cluster_mean(self):
        rv = RootVector([1.0, 1.0 + 4e-10, 2.0])
        assert rv.merged[0] == rv.merged[1]
        (r1, m1), (r2, m2) = rv.distinct()
        assert (m1, m2) == (2, 1)
        assert r1 == pytest.approx(1.0 + 2e-10, abs=1e-16)
        assert r2 == 2.0

    def test_merging_preserves_exact_zero(self):
        rv = RootVector([0.0, 3e-10, 1.0])
        # cluster contains 0, so the merged rate snaps to 0 exactly
        assert rv.merged[0] == 0.0
        assert rv.distinct()[0] == (0.0, 2)

    def test_original_order_is_kept(self):
        roots = (1j, -1j, 0.0)
        assert RootVector(roots).roots == roots

    def test_distant_roots_stay_distinct(self):
        rv = RootVector([0.0, 1e-6])
        assert len(rv.distinct()) == 2

    def test_conjugate_symmetry_detection(self):
        assert RootVector([0.0, 2j, -2j]).is_conjugate_symmetric
        assert RootVector([0.5, -0.5]).is_conjugate_symmetric
        assert not RootVector([0.0, 2j]).is_conjugate_symmetric
        assert not RootVector([1.0, 2.0]).is_conjugate_symmetric

    def test_require_conjugate_symmetric_raises(self):
        with pytest.raises(NotSymmetric):
            require_conjugate_symmetric(RootVector([0.0, 1j]))

    def test_admissibility_rejects_aliased_pairs(self):
        assert RootVector([0.0, 1j * TWO_PI / 3, -1j * TWO_PI / 3]).riesz_admissible()
        # e^{i*pi} == e^{-i*pi}: the two exponentials coincide on the grid
        assert not RootVector([0.0, 1j * math.pi, -1j * math.pi]).riesz_admissible()
        assert not RootVector([0.0, 1j * TWO_PI, -1j * TWO_PI]).riesz_admissible()

    def test_all_standard_vectors_admissible_and_symmetric(self, vector_name):
        rv = RootVector(TEST_VECTORS[vector_name])
        assert rv.is_conjugate_symmetric
        assert rv.riesz_admissible()

    def test_scaled_divides_rates(self):
        rv = RootVector([0.0, 1j, -1j]).scaled(2)
        assert rv.roots == (0.0, 0.5j, -0.5j)

    def test_equality_and_hash_track_the_given_roots(self):
        a = RootVector([0.0, 1.0])
        assert a == RootVector((0.0, 1.0))
        assert hash(a) == hash(RootVector((0.0, 1.0)))
        assert a != RootVector([0.0, 1.0 + 1e-12])

    @given(st.lists(st.integers(-3, 3), min_size=1, max_size=5), st.permutations(range(5)))
    def test_clustering_is_idempotent(self, ints, perm):
        roots = tuple(complex(i) for i in ints)
        once = _cluster_roots(roots)
        assert _cluster_roots(once) == once


class TestCausalBspline:
    def test_quadratic_frozen_values(self):
        bs = make_causal_bspline(RootVector((0.0, 0.0, 0.0)))
        # piecewise-polynomial closed form: t^2/2, then -t^2+3t-3/2, then (3-t)^2/2
        assert bs(0.5) == pytest.approx(0.125, abs=1e-14)
        assert bs(1.0) == pytest.approx(0.5, abs=1e-14)
        assert bs(1.5) == pytest.approx(0.75, abs=1e-14)
        assert bs(2.5) == pytest.approx(0.125, abs=1e-14)

    def test_support_and_knots(self, vector_name):
        rv = RootVector(TEST_VECTORS[vector_name])
        bs = make_causal_bspline(rv)
        assert bs.support == (0.0, rv.n0)
        assert bs.knots() == [Fraction(k) for k in range(rv.n0 + 1)]
        # vanishes outside the support
        assert bs(-0.25) == 0.0
        assert bs(rv.n0 + 0.25) == 0.0

    def test_centered_quadratic_values(self):
        bs = center(make_causal_bspline(RootVector((0.0, 0.0, 0.0))), 3)
        assert bs(0.0) == pytest.approx(0.75, abs=1e-14)
        assert bs(0.5) == pytest.approx(0.5, abs=1e-14)
        assert bs(1.0) == pytest.approx(0.125, abs=1e-14)

    def test_centered_cubic_value(self):
        bs = center(make_causal_bspline(RootVector((0.0,) * 4)), 4)
        assert bs(0.0) == pytest.approx(2.0 / 3.0, abs=1e-14)
        assert bs(1.0) == pytest.approx(1.0 / 6.0, abs=1e-14)

    def test_real_output_for_symmetric_vectors(self, vector_name):
        bs = make_causal_bspline(RootVector(TEST_VECTORS[vector_name]))
        vals = bs.eval_many(np.linspace(0.1, 2.9, 17))
        assert vals.dtype == np.float64

    def test_matches_numeric_convolution_oracle(self):
        # independent oracle: iterated midpoint-rule convolution of the
        # exponential segments; three midpoint grids sum to an offset of 1.5h
        h = 1e-3
        grid = (np.arange(round(1 / h)) + 0.5) * h
        for roots in [(0.0, 0.0, 0.0), (0.0, 1j * 2.0, -1j * 2.0), (0.0, 0.5, -0.5)]:
            factors = [np.exp(np.asarray(r) * grid) for r in roots]
            acc = factors[0]
            for f in factors[1:]:
                acc = np.convolve(acc, f) * h
            bs = make_causal_bspline(RootVector(roots))
            ts = h * (np.arange(len(acc)) + 1.5)
            exact = bs.eval_many(ts)
            assert np.max(np.abs(acc.real - exact)) < 5e-6

    def test_partition_of_unity_for_repeated_zero(self):
        for n0 in (3, 4, 5):
            bs = make_causal_bspline(RootVector((0.0,) * n0))
            ts = np.linspace(5.0, 6.0, 23, endpoint=False)
            total = sum(bs.eval_many(ts - k) for k in range(6 - n0, 6))
            assert np.max(np.abs(total - 1.0)) < 1e-12

    def test_continuity_at_interior_knots(self, vector_name):
        rv = RootVector(TEST_VECTORS[vector_name])
        bs = make_causal_bspline(rv)
        # C^{n0-2}: the function and n0-2 derivatives match across knots
        for order in range(rv.n0 - 1):
            for j in range(1, rv.n0):
                left, right = bs.boundary_values(j)
                assert abs(left - right) < 1e-10 * max(1.0, abs(right))
            bs = bs.derivative()

    def test_top_derivative_jumps(self):
        bs = make_causal_bspline(RootVector((0.0, 0.0, 0.0)))
        dd = bs.derivative().derivative()
        left, right = dd.boundary_values(1)
        assert abs(left - right) > 1.0


class TestPiecewiseCalculus:
    def test_derivative_matches_finite_differences(self, vector_name):
        bs = make_causal_bspline(RootVector(TEST_VECTORS[vector_name]))
        d = bs.derivative()
        eps = 1e-6
        for t in np.linspace(0.3, 2.7, 9):
            fd = (bs(t + eps) - bs(t - eps)) / (2 * eps)
            assert d(t) == pytest.approx(fd, abs=5e-6)

    def test_with_step_is_an_exact_regridding(self, vector_name):
        bs = make_causal_bspline(RootVector(TEST_VECTORS[vector_name]))
        half = bs.with_step(Fraction(1, 2))
        ts = np.linspace(-0.5, float(bs.support[1]) + 0.5, 41)
        assert np.max(np.abs(half.eval_many(ts) - bs.eval_many(ts))) < 1e-12

    def test_shift_moves_support(self):
        bs = make_causal_bspline(RootVector((0.0, 0.0, 0.0)))
        sh = bs.shifted(Fraction(-3, 2))
        assert sh.support == (-1.5, 1.5)
        assert sh(0.0) == pytest.approx(bs(1.5), abs=1e-14)

    @given(
        st.sampled_from(sorted(TEST_VECTORS)),
        st.floats(0.1, 2.9),
        st.floats(-2.0, 2.0),
        st.floats(-2.0, 2.0),
    )
    @settings(max_examples=40, deadline=None)
    def test_add_and_scale_are_pointwise(self, name, t, c1, c2):
        bs = make_causal_bspline(RootVector(TEST_VECTORS[name]))
        other = bs.shifted(Fraction(1))
        combo = bs * c1 + other * c2
        expected = c1 * bs(t) + c2 * other(t)
        assert combo(t) == pytest.approx(expected, abs=1e-10)

    def test_eval_many_matches_scalar_calls(self):
        bs = make_causal_bspline(RootVector((0.0, 1j, -1j)))
        ts = np.linspace(-1.0, 4.0, 57)
        many = bs.eval_many(ts)
        for t, v in zip(ts, many):
            assert v == pytest.approx(bs(float(t)), abs=1e-14)

    def test_convolution_requires_unit_step(self):
        bs = make_causal_bspline(RootVector((0.0, 0.0, 0.0))).with_step(Fraction(1, 2))
        with pytest.raises(ValueError):
            bs.convolve_first_order(0.0)


class TestFourier:
    def test_matches_quadrature(self):
        from scipy.integrate import quad

        for roots in [(0.0, 0.0, 0.0), (0.0, 1j * 2.0, -1j * 2.0), (0.0, 0.5, -0.5)]:
            rv = RootVector(roots)
            bs = make_causal_bspline(rv)
            for omega in (0.0, 0.7, 2.0, 5.3):
                re = quad(lambda t: (bs(t) * np.exp(-1j * omega * t)).real, 0, rv.n0, limit=200)[0]
                im = quad(lambda t: (bs(t) * np.exp(-1j * omega * t)).imag, 0, rv.n0, limit=200)[0]
                assert fourier_bspline(rv, omega) == pytest.approx(re + 1j * im, abs=5e-8)

    def test_small_frequency_expansion_is_smooth(self):
        # crossing the series-expansion switchover must be seamless
        for roots in [(0.0, 0.0, 0.0), (0.0, 1j, -1j)]:
            rv = RootVector(roots)
            assert abs(fourier_bspline(rv, 1e-9) - fourier_bspline(rv, 0.0)) < 1e-8
            below = fourier_bspline(rv, 0.999e-6)
            above = fourier_bspline(rv, 1.001e-6)
            # genuine variation is ~first moment * 2e-9; a switchover bug
            # would show up orders of magnitude larger
            assert abs(below - above) < 2e-8


def test_reproduction_space_lists_rate_and_max_power():
    space = reproduction_space(RootVector((0.0, 0.0, 1j, -1j)))
    assert (0.0, 1) in space
    assert (1j, 0) in space and (-1j, 0) in space
