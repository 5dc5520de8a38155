"""Raster classification: kernels, tiling determinism, measurements, images."""

import math

import numpy as np
import pytest

from holomove.render import (LABEL_IN, LABEL_OTHER, LABEL_OUT,
                             LABEL_UNDECIDED, RenderSpec, bounding_radius,
                             component_count, emit_image, hausdorff_pixels,
                             load_label_dump, render, write_label_dump)
from holomove.render import backend
from holomove.render import _kernels_py


def small_spec(kind, param=0j, res=64, window=(-2, 2, -2, 2), max_iter=300):
    return RenderSpec(window[0], window[1], window[2], window[3], res, res,
                      kind, param=param, max_iter=max_iter)


class TestKernels:
    def test_mandelbrot_known_points(self):
        spec = small_spec("mandelbrot", window=(-2.2, 0.8, -1.5, 1.5))
        r = render(spec)
        assert r.labels[spec.pixel_of(0j)] == LABEL_IN
        assert r.labels[spec.pixel_of(-1.0)] == LABEL_IN
        assert r.labels[spec.pixel_of(0.5 + 0.5j)] == LABEL_OUT

    def test_locus_reference_points(self):
        lam = math.exp(-1)
        spec = small_spec("locus_g", param=complex(lam), res=96,
                          window=(1.5, 3.5, -1, 1), max_iter=1500)
        r = render(spec)
        assert r.labels[spec.pixel_of((lam - 2) ** 2)] == LABEL_IN
        assert r.labels[spec.pixel_of(4 - 4 * lam)] == LABEL_IN

    def test_locus_origin_excluded(self):
        lam = math.exp(-1)
        spec = small_spec("locus_g", param=complex(lam), res=16,
                          window=(-0.1, 0.1, -0.1, 0.1), max_iter=800)
        r = render(spec)
        assert (r.labels == LABEL_OUT).all()

    def test_locus_branch_symmetry(self):
        # sqrt branch flip conjugates by z -> -z, swapping the two critical
        # orbits: the in-locus predicate is identical either way
        from holomove.families import g_step, orbit_bounded

        lam = 0.4 - 0.35j
        rng = np.random.default_rng(3)
        for _ in range(40):
            A = complex(rng.uniform(1, 5), rng.uniform(-2, 2))
            verdicts = []
            for branch in ("principal", "negated"):
                step = g_step(lam, A, sqrt_branch=branch)
                verdicts.append(orbit_bounded(step, 1.0).bounded
                                or orbit_bounded(step, -1.0).bounded)
            assert verdicts[0] == verdicts[1]

    def test_param_plane_anchored_component(self):
        spec = small_spec("param_plane_fa", res=128,
                          window=(-10, 10, -10, 10), max_iter=800)
        r = render(spec)
        assert component_count(r, LABEL_IN) == 1
        assert r.fraction(LABEL_IN) > 0

    def test_dyn_plane_immediate_component(self):
        spec = small_spec("dyn_plane_fa", param=3.7 + 0.5j, res=128,
                          window=(-10, 10, -10, 10), max_iter=600)
        r = render(spec)
        assert r.labels[spec.pixel_of(0j)] == LABEL_IN
        assert component_count(r, LABEL_IN) == 1

    def test_backends_agree(self):
        # identical classification up to a sliver of chaotic boundary pixels
        if backend.backend_name() != "compiled":
            pytest.skip("compiled backend unavailable")
        xs = np.linspace(-10, 10, 96)
        ys = np.linspace(-10, 10, 96)
        from holomove.render import _kernels
        la, _ = _kernels.param_fa(xs, ys, 500)
        lb, _ = _kernels_py.param_fa(xs, ys, 500)
        assert np.mean(la != lb) < 0.005


class TestDeterminism:
    @pytest.mark.parametrize("kind,param", [("mandelbrot", 0j),
                                            ("param_plane_fa", 0j)])
    def test_worker_count_invariance(self, kind, param):
        window = (-2.2, 0.8, -1.5, 1.5) if kind == "mandelbrot" else (-10, 10, -10, 10)
        spec = small_spec(kind, param=param, res=160, window=window)
        ref = render(spec, workers=1)
        for workers in (4, 8):
            again = render(spec, workers=workers)
            assert again.labels.tobytes() == ref.labels.tobytes()
            assert again.steps.tobytes() == ref.steps.tobytes()

    def test_resolution_stability(self):
        # a pixel whose coarse neighbourhood is uniform with a 2x iteration
        # margin keeps its class when resolution doubles
        coarse_spec = small_spec("mandelbrot", res=96, window=(-2.2, 0.8, -1.5, 1.5),
                                 max_iter=400)
        fine_spec = small_spec("mandelbrot", res=192, window=(-2.2, 0.8, -1.5, 1.5),
                               max_iter=400)
        coarse, fine = render(coarse_spec), render(fine_spec)
        rng = np.random.default_rng(5)
        checked = 0
        flips = 0
        while checked < 100:
            i = rng.integers(1, 95)
            j = rng.integers(1, 95)
            hood = coarse.labels[i - 1:i + 2, j - 1:j + 2]
            if not (hood == hood[1, 1]).all():
                continue
            margin = coarse.steps[i, j] <= 200 if hood[1, 1] == LABEL_OUT \
                else True  # budget-bounded pixels have no step margin notion
            if not margin:
                continue
            sub = fine.labels[2 * i:2 * i + 2, 2 * j:2 * j + 2]
            checked += 1
            if not (sub == hood[1, 1]).all():
                flips += 1
        assert flips == 0


class TestMeasurements:
    def test_bounding_radius_single_pixel(self):
        spec = small_spec("mandelbrot", res=64, window=(-2.2, 0.8, -1.5, 1.5))
        r = render(spec)
        r.labels[:] = LABEL_OUT
        row, col = spec.pixel_of(complex(-0.5, 0.75))
        r.labels[row, col] = LABEL_IN
        center = spec.xs()[col] + 1j * spec.ys()[row]
        half_diag = 0.5 * math.hypot(spec.pixel_width, spec.pixel_height)
        assert bounding_radius(r, LABEL_IN) == pytest.approx(
            abs(center) + half_diag)

    def test_bounding_radius_empty_raises(self):
        spec = small_spec("mandelbrot", res=64)
        r = render(spec)
        with pytest.raises(ValueError):
            bounding_radius(r, 77)

    def test_hausdorff_identity(self):
        spec = small_spec("mandelbrot", res=96, window=(-2.2, 0.8, -1.5, 1.5))
        r = render(spec)
        assert hausdorff_pixels(r, r) == 0

    def test_hausdorff_one_pixel_shift(self):
        spec = small_spec("mandelbrot", res=96, window=(-2.2, 0.8, -1.5, 1.5))
        r = render(spec)
        shift = spec.pixel_width
        d = hausdorff_pixels(r, r, transform=(1.0, shift))
        assert d == pytest.approx(shift, rel=1e-9)

    def test_hausdorff_empty_raises(self):
        spec = small_spec("mandelbrot", res=96)
        r = render(spec)
        with pytest.raises(ValueError):
            hausdorff_pixels(r, r, label_a=77)


class TestImages:
    def test_ppm_header_and_size(self, tmp_path):
        spec = small_spec("mandelbrot", res=16, window=(-2.2, 0.8, -1.5, 1.5),
                          max_iter=50)
        r = render(spec)
        path = tmp_path / "out.ppm"
        emit_image(r, path, fmt="ppm")
        data = path.read_bytes()
        assert data.startswith(b"P6\n16 16\n255\n")
        assert len(data) == len(b"P6\n16 16\n255\n") + 16 * 16 * 3

    def test_ppm_deterministic_bytes(self, tmp_path):
        spec = small_spec("mandelbrot", res=32, window=(-2.2, 0.8, -1.5, 1.5),
                          max_iter=60)
        p1, p2 = tmp_path / "a.ppm", tmp_path / "b.ppm"
        emit_image(render(spec, workers=1), p1)
        emit_image(render(spec, workers=4), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_png_round_trip(self, tmp_path):
        pytest.importorskip("PIL")
        from PIL import Image

        spec = small_spec("mandelbrot", res=32, window=(-2.2, 0.8, -1.5, 1.5),
                          max_iter=60)
        r = render(spec)
        path = tmp_path / "out.png"
        emit_image(r, path, fmt="png")
        img = np.asarray(Image.open(path))
        assert np.array_equal(img, r.to_rgb())

    def test_label_dump_round_trip(self, tmp_path):
        spec = small_spec("mandelbrot", res=24, window=(-2.2, 0.8, -1.5, 1.5),
                          max_iter=60)
        r = render(spec)
        path = tmp_path / "labels.bin"
        write_label_dump(r, path)
        back = load_label_dump(path)
        assert np.array_equal(back, r.labels)


class TestBudgets:
    def test_undecided_fraction_reference_windows(self):
        spec = small_spec("param_plane_fa", res=160, window=(-10, 10, -10, 10),
                          max_iter=2000)
        assert render(spec).undecided_fraction() < 0.05
        lam = math.exp(-1)
        spec2 = small_spec("locus_g", param=complex(lam), res=160,
                           window=(1, 5, -2, 2), max_iter=2000)
        assert render(spec2).undecided_fraction() < 0.05
