"""Map families, fixed-point algebra, centers, bounded orbits."""

import cmath
import math

import numpy as np
import pytest

from holomove.families import (BasinCenters, EntireParam, RationalParam,
                               A_of_mu, basin_centers, entire_core,
                               entire_core_np, eval_blaschke, eval_entire,
                               eval_G, eval_Q, eval_R, fixed_points_G, g_step,
                               mu_of_A, orbit_bounded, q_step, quadratic_roots,
                               sigma_of_A, sigma_quadratic)

RNG = np.random.default_rng(42)


def draws(n, radius):
    r = radius * np.sqrt(RNG.uniform(0, 1, n))
    return r * np.exp(1j * RNG.uniform(0, 2 * math.pi, n))


class TestEntire:
    def test_fixed_point_at_origin(self):
        assert eval_entire(EntireParam(1.0), 0j) == 0

    def test_quadratic_leading_term(self):
        # f_a = (a/2) z^2 + O(z^3): at a=2 the value at 1e-4 is 1e-8
        val = eval_entire(EntireParam(2.0), 1e-4)
        assert abs(val - 1e-8) < 1e-11

    def test_series_matches_direct_form(self):
        # across the series/closed-form cutoff
        for z in (0.499, 0.501, 0.3 + 0.39j, -0.45j):
            direct = cmath.exp(z) * (z - 1) + 1
            assert abs(entire_core(z) - direct) < 1e-14

    def test_vectorized_core_matches_scalar(self):
        zs = np.array([0.01, 0.4 + 0.2j, 2.0 - 1j, -3.0 + 0.5j])
        vec = entire_core_np(zs)
        for z, v in zip(zs, vec):
            assert abs(v - entire_core(complex(z))) < 1e-13

    def test_centers_are_zeros_for_any_a(self):
        centers = basin_centers(1)
        for a in (1.0, 5 + 5j, 100.0):
            for i in (-1, 0, 1):
                assert abs(eval_entire(EntireParam(a), centers.point(i))) \
                    <= 1e-9 * abs(a)

    def test_zero_parameter_rejected(self):
        with pytest.raises(ValueError):
            EntireParam(0)


class TestRationalEvaluation:
    def test_g_simple_values(self):
        assert eval_G(RationalParam(1.0, 0.0), 1.0) == pytest.approx(2)
        assert eval_G(RationalParam(0.5, 4.0), 1.0) == pytest.approx(8)

    def test_g_critical_points(self):
        # derivative (1 - 1/z^2)/lam vanishes at +-1
        p = RationalParam(0.7, 2 - 1j)
        h = 1e-6
        for crit in (1.0, -1.0):
            d = (eval_G(p, crit + h) - eval_G(p, crit - h)) / (2 * h)
            assert abs(d) < 1e-5

    def test_r_fixes_origin(self):
        for lam, mu in zip(draws(20, 0.9), draws(20, 3)):
            assert eval_R(lam, mu, 0j) == 0

    def test_q_and_blaschke(self):
        assert eval_Q(0j, 2.0) == 4
        for z in draws(10, 0.9):
            assert eval_blaschke(0j, z) == pytest.approx(z * z)


class TestQuadraticRoots:
    def test_cancellation_safe(self):
        # b >> a*c: the naive formula loses the small root entirely
        r1, r2 = quadratic_roots(1.0, 1e8, 1.0)
        small = min((r1, r2), key=abs)
        assert abs(small + 1e-8) < 1e-20
        assert abs(r1 * r2 - 1.0) < 1e-12
        assert abs(r1 + r2 + 1e8) < 1e-4

    def test_linear_degenerate(self):
        r1, r2 = quadratic_roots(0.0, 2.0, -4.0)
        assert r1 == r2 == 2.0


class TestFixedPointAlgebra:
    def test_sigma3_identity_random(self):
        worst = 0.0
        for lam, A in zip(draws(1000, 1.0), draws(1000, 10.0)):
            if lam == 0:
                continue
            fp = fixed_points_G(RationalParam(lam, A))
            worst = max(worst, abs(fp.sigma3 - (fp.sigma1 - 2)))
        assert worst < 1e-9

    def test_sigma3_identity_specific(self):
        fp = fixed_points_G(RationalParam(0.5, 1 + 1j))
        assert abs(fp.sigma3 - (fp.sigma1 - 2)) < 1e-9

    def test_product_matches_closed_form(self):
        for lam, A in zip(draws(300, 1.0), draws(300, 10.0)):
            if lam == 0:
                continue
            fp = fixed_points_G(RationalParam(lam, A))
            assert abs(fp.multipliers[1] * fp.multipliers[2]
                       - sigma_of_A(lam, A)) < 1e-8

    def test_vanishing_product_at_critical_A(self):
        lam = 0.3 - 0.2j
        fp = fixed_points_G(RationalParam(lam, (lam - 2) ** 2))
        assert abs(fp.multipliers[1] * fp.multipliers[2]) < 1e-10

    def test_degenerate_lambda_one(self):
        fp = fixed_points_G(RationalParam(1.0, 2.0))
        assert fp.degenerate
        assert fp.multipliers[0] == 1

    def test_branch_independence(self):
        for lam, A in zip(draws(50, 0.9), draws(50, 8.0)):
            if lam == 0:
                continue
            fa = fixed_points_G(RationalParam(lam, A, "principal"))
            fb = fixed_points_G(RationalParam(lam, A, "negated"))
            assert abs(fa.sigma1 - fb.sigma1) < 1e-12 * max(1, abs(fa.sigma1))
            assert abs(fa.sigma2 - fb.sigma2) < 1e-12 * max(1, abs(fa.sigma2))


class TestSigmaRelations:
    def test_sigma_of_A_values(self):
        assert sigma_of_A(1.0, 1.0) == 0
        assert sigma_of_A(0.5, 2.0) == pytest.approx(1.0)
        lam = math.exp(-1)
        want = ((lam - 2) ** 2 - 1) / lam**2
        assert sigma_of_A(lam, 1.0) == pytest.approx(want)

    def test_sigma_affine_in_A(self):
        # slope is -1/lam^2 by finite differences
        for lam in draws(20, 0.9):
            if lam == 0:
                continue
            slope = (sigma_of_A(lam, 1.0) - sigma_of_A(lam, 0.0))
            assert abs(slope + 1 / lam**2) < 1e-9 * max(1, abs(1 / lam**2))

    def test_A_of_mu_collapses(self):
        for lam in draws(50, 0.9):
            if lam == 0:
                continue
            assert abs(A_of_mu(lam, 0.0) - (lam - 2) ** 2) < 1e-12
            assert abs(A_of_mu(lam, 1.0) - (4 - 4 * lam)) < 1e-12

    def test_A_of_mu_is_sigma_substitution(self):
        for lam, mu in zip(draws(50, 0.9), draws(50, 2.5)):
            if lam == 0 or abs(1 - lam * mu) < 1e-2:
                continue
            sigma = mu * (2 - lam - mu) / (1 - lam * mu)
            assert abs(A_of_mu(lam, mu)
                       - ((lam - 2) ** 2 - lam**2 * sigma)) < 1e-10

    def test_mu_roundtrip(self):
        for lam, mu in zip(draws(200, 0.9), draws(200, 3.0)):
            if lam == 0 or abs(1 - lam * mu) < 1e-3:
                continue
            back = mu_of_A(lam, A_of_mu(lam, mu))
            assert min(abs(back[0] - mu), abs(back[1] - mu)) < 1e-10

    def test_mu_ordering_lexicographic(self):
        a, b = mu_of_A(0.4, 1 + 2j)
        assert (a.real, a.imag) <= (b.real, b.imag)

    def test_sigma_quadratic(self):
        assert sigma_quadratic(0j) == 0
        assert sigma_quadratic(0.25) == 1
        # cross-check against the actual fixed points of z^2 + c
        c = -1.0
        z1, z2 = quadratic_roots(1.0, -1.0, c)
        assert abs((2 * z1) * (2 * z2) - sigma_quadratic(c)) < 1e-12


class TestBasinCenters:
    def test_center_zero(self):
        centers = basin_centers(0)
        assert centers.point(0) == 0

    def test_residuals(self):
        centers = basin_centers(2)
        for i in range(-2, 3):
            z = centers.point(i)
            assert abs(cmath.exp(z) * (z - 1) + 1) < 1e-10

    def test_ordering_and_symmetry(self):
        centers = basin_centers(2)
        imags = [centers.point(i).imag for i in range(-2, 3)]
        assert imags == sorted(imags)
        assert centers.point(-1) == pytest.approx(centers.point(1).conjugate())

    def test_known_first_center(self):
        centers = basin_centers(1)
        assert centers.point(1) == pytest.approx(
            -2.088843015613044 + 7.461489285654254j, abs=1e-9)


class TestOrbitBounded:
    def test_quadratic_origin_bounded(self):
        res = orbit_bounded(q_step(0j), 0j, max_iter=500, escape_radius=2.0)
        assert res.bounded and res.undecided

    def test_quadratic_escapes(self):
        res = orbit_bounded(q_step(1.0), 0j, max_iter=500, escape_radius=2.0)
        assert res.kind == "escaped" and res.step <= 5

    def test_g_critical_orbits_escape_at_zero_A(self):
        lam = math.exp(-1)
        for crit in (1.0, -1.0):
            res = orbit_bounded(g_step(lam, 0.0), crit)
            assert res.kind == "escaped"

    def test_g_superattracting_parameter(self):
        # with the principal branch, -1 is itself a superattracting fixed
        # point at A = (lam-2)^2; the other critical orbit escapes
        lam = math.exp(-1)
        A = (lam - 2) ** 2
        assert orbit_bounded(g_step(lam, A), -1.0).bounded
        assert orbit_bounded(g_step(lam, A), 1.0).kind == "escaped"

    def test_g_parabolic_parameter_bounded(self):
        # at A = 4 - 4*lam the remaining fixed points merge with multiplier 1
        lam = math.exp(-1)
        A = 4 - 4 * lam
        assert orbit_bounded(g_step(lam, A), 1.0).bounded \
            or orbit_bounded(g_step(lam, A), -1.0).bounded

    def test_pole_visit_escapes(self):
        res = orbit_bounded(g_step(0.5, 1.0), 0.0)
        assert res.kind == "escaped"
