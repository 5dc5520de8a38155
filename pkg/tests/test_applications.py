"""End-to-end motion samplers: basin explosion, preimage components, galleries."""

import math

import numpy as np
import pytest

from holomove.applications import (DEFAULT_W_POINTS, basin_motion_sample,
                                   essential_gallery, gallery_collapsing,
                                   gallery_meromorphic, preimage_motion_sample,
                                   sigma_line_motion_sample)
from holomove.contour import laurent_coefficients
from holomove.families import basin_centers
from holomove.motion import (classify_extension, corollary_classify,
                             decompose_explosion, validate_motion)


@pytest.fixture(scope="module")
def basin_sample():
    return basin_motion_sample(radius=100.0, samples=64)


class TestBasinMotion:
    def test_is_valid_motion(self, basin_sample):
        m, _ = basin_sample
        assert validate_motion(m).clean

    def test_order_one_and_collapse(self, basin_sample):
        m, contour = basin_sample
        d = decompose_explosion(m, contour)
        assert d.order == 1
        assert abs(d.poly.coefficients[0]) < 1e-8   # collapses to the origin
        assert d.residual < 1e-9

    def test_leading_coefficients(self, basin_sample):
        m, contour = basin_sample
        for w in (0.1, 0.3j):
            idx = DEFAULT_W_POINTS.index(w)
            window = laurent_coefficients(m.values[:, idx], contour, 6)
            assert abs(window[1] - 2 * w) / abs(2 * w) < 1e-3

    def test_dichotomy_explosion(self, basin_sample):
        m, contour = basin_sample
        limits = [classify_extension(m.values[:, i], contour,
                                     targets=(5.0, -3j)).limit
                  for i in range(len(m.e_points))]
        verdict = corollary_classify(limits)
        assert verdict.kind == "explosion_to"
        assert abs(verdict.point) < 1e-8


@pytest.fixture(scope="module")
def sample():
    return preimage_motion_sample(1, radius=100.0, samples=64)


class TestPreimageMotion:
    def test_order_two(self, sample):
        m, contour = sample
        d = decompose_explosion(m, contour)
        assert d.order == 2
        z1 = basin_centers(1).point(1)
        assert abs(d.poly.coefficients[0] - z1) < 1e-8
        assert abs(d.poly.coefficients[1]) < 1e-6

    def test_quadratic_coefficient(self, sample):
        m, contour = sample
        z1 = basin_centers(1).point(1)
        for w in (0.1, 0.3j):
            idx = DEFAULT_W_POINTS.index(w)
            window = laurent_coefficients(m.values[:, idx], contour, 6)
            expected = 2 * w / (np.exp(z1) * z1)
            assert abs(window[1]) < 1e-6 * max(1.0, window.scale)
            assert abs(window[2] - expected) / abs(expected) < 1e-2

    def test_unmeasured_cubic_term_reported(self, sample):
        # the remainder is of fourth order in theory; the cubic coefficient
        # is measured and reported, nothing asserted about its value
        m, contour = sample
        idx = DEFAULT_W_POINTS.index(0.1)
        window = laurent_coefficients(m.values[:, idx], contour, 6)
        assert np.isfinite(abs(window[3]))


class TestSigmaLineMotion:
    def test_constant_trajectories_extend(self):
        m, contour = sigma_line_motion_sample()
        limits = []
        for i in range(2):
            verdict = classify_extension(m.values[:, i], contour,
                                         targets=(5.0, -3j))
            assert verdict.holomorphic
            limits.append(verdict.limit)
        assert corollary_classify(limits).kind == "motion_extension"
        assert abs(limits[0]) < 1e-12 and abs(limits[1] - 1) < 1e-12


class TestGalleries:
    def test_meromorphic_gallery(self):
        m, contour = gallery_meromorphic()
        assert not m.e_connected
        verdict = classify_extension(m.values[:, 2], contour,
                                     targets=(0j, 1 / math.e))
        assert verdict.kind == "pole" and verdict.order == 1
        for i in (0, 1):
            assert classify_extension(m.values[:, i], contour,
                                      targets=(math.e, -1.0)).holomorphic

    def test_collapsing_gallery_non_injective_limits(self):
        m, contour = gallery_collapsing()
        limits = [classify_extension(m.values[:, i], contour,
                                     targets=(0.5, 1.0)).limit
                  for i in range(3)]
        assert max(abs(l) for l in limits) < 1e-10
        verdict = corollary_classify(limits)
        assert verdict.kind == "explosion_to"  # collapse detected at the fiber

    def test_essential_gallery_additive(self):
        m, contour = essential_gallery()
        verdict = classify_extension(m.values[:, 0], contour, targets=(-5.0, 7j))
        assert verdict.kind == "essential" and verdict.n_max == 32

    def test_essential_gallery_multiplicative(self):
        m, contour = essential_gallery(multiplicative=True)
        verdict = classify_extension(m.values[:, 1], contour, targets=(-9.0, 11j))
        assert verdict.kind == "essential"
