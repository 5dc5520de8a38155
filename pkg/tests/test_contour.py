"""Contour sampling, Laurent extraction, winding counts, Newton."""

import cmath
import math

import numpy as np
import pytest

from holomove.contour import (CircleContour, ContourError, NewtonError,
                              Polynomial, WindingError, contour_points,
                              laurent_coefficients, newton_root,
                              spectral_derivative, winding_count)

# First root of e^z(z-1)+1 above the real axis, frozen from an independent
# oracle: modulus-minimum scan of the grid [-5,5]x[0,10] at step 0.01,
# refined by a shrinking local grid search (see test_newton_matches_oracle).
Z1 = -2.088843015613044 + 7.461489285654254j


def _entire(z):
    return cmath.exp(z) * (z - 1) + 1


def _entire_prime(z):
    return z * cmath.exp(z)


class TestCircleContour:
    def test_fourth_roots_of_unity(self):
        c = CircleContour(0j, 1.0, 16, "positive")
        pts = contour_points(c)
        assert pts[0] == pytest.approx(1)
        assert pts[4] == pytest.approx(1j)
        assert pts[8] == pytest.approx(-1)
        assert pts[12] == pytest.approx(-1j)

    def test_negative_orientation_reverses(self):
        c = CircleContour(0j, 1.0, 16, "negative")
        pts = contour_points(c)
        assert pts[4] == pytest.approx(-1j)
        assert pts[12] == pytest.approx(1j)

    def test_translation_and_scaling(self):
        c = CircleContour(2 + 0j, 0.5, 16, "positive")
        pts = contour_points(c)
        assert pts[0] == pytest.approx(2.5)
        assert pts[4] == pytest.approx(2 + 0.5j)
        assert pts[8] == pytest.approx(1.5)
        assert pts[12] == pytest.approx(2 - 0.5j)

    def test_validation(self):
        with pytest.raises(ContourError):
            CircleContour(0j, -1.0, 64)
        with pytest.raises(ContourError):
            CircleContour(0j, 1.0, 8)
        with pytest.raises(ContourError):
            CircleContour(0j, 1.0, 64, "clockwise")


class TestLaurent:
    def test_monomial(self):
        c = CircleContour(0j, 1.0, 64)
        window = laurent_coefficients(contour_points(c) ** 2, c, 8)
        assert abs(window[2] - 1) < 1e-12
        assert all(abs(window[k]) < 1e-10 for k in range(-8, 9) if k != 2)

    def test_residue(self):
        c = CircleContour(0j, 1.0, 64)
        window = laurent_coefficients(1.0 / contour_points(c), c, 8)
        assert abs(window[-1] - 1) < 1e-12

    def test_exp_inverse_series(self):
        # e^{1/l} has a_{-k} = 1/k!
        c = CircleContour(0j, 1.0, 128)
        window = laurent_coefficients(np.exp(1.0 / contour_points(c)), c, 8)
        assert abs(window[-5] - 1.0 / 120.0) < 1e-12

    def test_negative_orientation_same_coefficients(self):
        pos = CircleContour(0j, 0.7, 64, "positive")
        neg = CircleContour(0j, 0.7, 64, "negative")
        f = lambda z: 1.0 / z + 3.0 + 2.0 * z**2
        wp = laurent_coefficients(f(contour_points(pos)), pos, 4)
        wn = laurent_coefficients(f(contour_points(neg)), neg, 4)
        for k in range(-4, 5):
            assert wp[k] == pytest.approx(wn[k], abs=1e-12)

    def test_polynomial_reproduction(self):
        coef = [0.3 - 1j, 2.0, 0.0, -0.5j, 1.25]
        poly = Polynomial(tuple(coef))
        c = CircleContour(0.4 + 0.2j, 1.3, 128)
        window = laurent_coefficients(
            np.array([poly(z - c.center) for z in contour_points(c)]), c, 10)
        for k, want in enumerate(coef):
            assert abs(window[k] - want) <= 1e-10 * max(1.0, window.scale)

    def test_spectral_convergence(self):
        # doubling samples reduces the coefficient error at least tenfold
        errs = []
        for m in (64, 128):
            c = CircleContour(0j, 1.0, m)
            window = laurent_coefficients(np.exp(contour_points(c)), c, 20)
            errs.append(max(abs(window[k] - 1.0 / math.factorial(k))
                            for k in range(0, 12)))
        assert errs[1] * 10 <= errs[0] or errs[1] < 1e-15

    def test_analytic_negative_mass_bound(self):
        c = CircleContour(0j, 1.0, 256)
        for f in (np.exp, lambda z: np.cos(z) + z**3, lambda z: 1.0 / (z - 2)):
            window = laurent_coefficients(f(contour_points(c)), c, 32)
            worst = max(abs(window[k]) for k in range(-32, 0))
            assert worst <= 1e-8 * max(1.0, window.scale)

    def test_sample_count_mismatch(self):
        c = CircleContour(0j, 1.0, 64)
        with pytest.raises(ContourError):
            laurent_coefficients(np.ones(32), c, 4)


class TestWinding:
    def test_simple_zero_negative_orientation(self):
        c = CircleContour(0j, 1.0, 64, "negative")
        pts = contour_points(c)
        n, resid = winding_count(pts, np.ones_like(pts), c, 0j)
        assert n == -1 and resid < 1e-12

    def test_simple_pole_negative_orientation(self):
        c = CircleContour(0j, 1.0, 64, "negative")
        pts = contour_points(c)
        n, _ = winding_count(1 / pts, -1 / pts**2, c, 0j)
        assert n == 1

    def test_constant_no_winding(self):
        c = CircleContour(0j, 1.0, 64, "negative")
        pts = contour_points(c)
        n, _ = winding_count(np.full(64, 5.0 + 0j), np.zeros(64), c, 0j)
        assert n == 0

    @pytest.mark.parametrize("fn,dfn,target,expect", [
        (lambda z: z, lambda z: np.ones_like(z), 0j, -1),
        (lambda z: z**3, lambda z: 3 * z**2, 0j, -3),
        (lambda z: 1 / z**2, lambda z: -2 / z**3, 0j, 2),
        (lambda z: z - 0.3, lambda z: np.ones_like(z), 0j, -1),
    ])
    def test_orientation_antisymmetry(self, fn, dfn, target, expect):
        for orientation, sign in (("negative", 1), ("positive", -1)):
            c = CircleContour(0j, 1.0, 64, orientation)
            pts = contour_points(c)
            n, _ = winding_count(fn(pts), dfn(pts), c, target)
            assert n == sign * expect

    def test_spectral_derivative_agrees(self):
        c = CircleContour(0.2j, 0.8, 128, "negative")
        pts = contour_points(c)
        vals = np.exp(pts) * (pts - 2)
        exact = np.exp(pts) * (pts - 1)
        approx = spectral_derivative(vals, c)
        assert np.max(np.abs(approx - exact)) < 1e-9

    def test_snap_failure_raises(self):
        c = CircleContour(0j, 1.0, 16, "negative")
        pts = contour_points(c)
        # target essentially on the curve: raw integral far from an integer
        with pytest.raises(WindingError):
            winding_count(pts, np.ones_like(pts), c, 1.0000001 + 0j)


class TestPolynomial:
    def test_horner_matches_direct(self):
        poly = Polynomial((1, -2, 0.5j))
        z = 0.7 - 0.3j
        assert poly(z) == pytest.approx(1 - 2 * z + 0.5j * z * z)
        assert poly.degree == 2

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Polynomial(())


class TestNewton:
    def test_square_root(self):
        root = newton_root(lambda z: z * z - 1, lambda z: 2 * z, 0.9)
        assert abs(root - 1) < 1e-10

    def test_entire_origin(self):
        root = newton_root(_entire, _entire_prime, 0.01 + 0j, tol=1e-13)
        assert abs(root) < 1e-6

    def test_newton_matches_oracle(self):
        # oracle: coarse modulus scan + shrinking grid refinement, no Newton
        xs = np.linspace(-5, 5, 501)
        ys = np.linspace(0.5, 10, 476)
        X, Y = np.meshgrid(xs, ys)
        Z = X + 1j * Y
        V = np.abs(np.exp(Z) * (Z - 1) + 1)
        seed = Z[np.unravel_index(np.argmin(V), V.shape)]
        z, h = complex(seed), 0.02
        for _ in range(60):
            grid = z + (np.arange(-5, 6)[:, None] * h
                        + 1j * np.arange(-5, 6)[None, :] * h).ravel()
            z = complex(grid[np.argmin(np.abs(np.exp(grid) * (grid - 1) + 1))])
            h *= 0.55
        assert abs(z - Z1) < 1e-9
        newton = newton_root(_entire, _entire_prime, 2 + 7j, tol=1e-13)
        assert abs(newton - Z1) < 1e-9

    def test_divergence_raises(self):
        with pytest.raises(NewtonError):
            newton_root(lambda z: z * z + 1, lambda z: 2 * z, 1e8, max_iter=5)
