"""Tile-parallel raster classification.

Tiles are 64x64, statically assigned, merged row-major into a preallocated
array: the output is byte-identical for any worker count.  Parameter- and
dynamical-plane rasters get a connected-component pass that separates the
anchor component (the one the figures call "the blue component in the
center") from satellite attracted regions.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from . import backend
from .spec import LABEL_IN, LABEL_OTHER, LABEL_OUT, RasterClass, RenderSpec

__all__ = [
    "bounding_radius",
    "component_count",
    "default_workers",
    "hausdorff_pixels",
    "render",
]

TILE = 64


def default_workers() -> int:
    env = os.environ.get("HOLOMOVE_WORKERS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def _tile_jobs(spec: RenderSpec):
    for iy in range(0, spec.height, TILE):
        for ix in range(0, spec.width, TILE):
            yield iy, ix, min(TILE, spec.height - iy), min(TILE, spec.width - ix)


def render(spec: RenderSpec, workers: int = None) -> RasterClass:
    """Classify every pixel of the window; deterministic by construction."""
    if workers is None:
        workers = default_workers()
    kern = backend.kernels()
    xs, ys = spec.xs(), spec.ys()
    labels = np.zeros((spec.height, spec.width), dtype=np.uint8)
    steps = np.zeros((spec.height, spec.width), dtype=np.int32)

    if spec.kind == "mandelbrot":
        fn = lambda x, y: kern.mandelbrot(x, y, spec.max_iter, 2.0)
    elif spec.kind == "locus_g":
        fn = lambda x, y: kern.locus_g(spec.param, x, y, spec.max_iter,
                                       spec.escape_radius)
    elif spec.kind == "param_plane_fa":
        fn = lambda x, y: kern.param_fa(x, y, spec.max_iter)
    else:
        fn = lambda x, y: kern.dyn_fa(spec.param, x, y, spec.max_iter)

    def run_tile(job):
        iy, ix, th, tw = job
        lab, st = fn(xs[ix:ix + tw], ys[iy:iy + th])
        labels[iy:iy + th, ix:ix + tw] = lab
        steps[iy:iy + th, ix:ix + tw] = st

    jobs = list(_tile_jobs(spec))
    if workers <= 1:
        for job in jobs:
            run_tile(job)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run_tile, jobs))

    raster = RasterClass(spec=spec, labels=labels, steps=steps,
                         backend=backend.backend_name())
    if spec.kind in ("param_plane_fa", "dyn_plane_fa"):
        _split_anchor_component(raster)
    return raster


def _split_anchor_component(raster: RasterClass):
    """Keep LABEL_IN for the anchor's component, LABEL_OTHER elsewhere.

    Dynamical planes anchor at the fixed point 0 (immediate basin);
    parameter planes anchor at the attracted pixel nearest the origin,
    where the main component accumulates.
    """
    attracted = raster.labels == LABEL_IN
    if not attracted.any():
        return
    comp, _ = ndimage.label(attracted)
    spec = raster.spec
    if spec.kind == "dyn_plane_fa":
        row, col = spec.pixel_of(0j)
        if not attracted[row, col]:
            return
    else:
        pts = np.argwhere(attracted)
        cx = spec.xs()[pts[:, 1]]
        cy = spec.ys()[pts[:, 0]]
        row, col = pts[np.argmin(np.hypot(cx, cy))]
    keep = comp[row, col]
    raster.labels[attracted & (comp != keep)] = LABEL_OTHER


def component_count(raster: RasterClass, label: int = LABEL_IN) -> int:
    _, n = ndimage.label(raster.labels == label)
    return int(n)


def bounding_radius(raster: RasterClass, label: int = LABEL_IN) -> float:
    """Radius of the smallest origin-centered circle covering the labeled pixels.

    Measured over pixel centers plus half a pixel diagonal, so the full
    pixel squares are inside.
    """
    pts = raster.label_points(label)
    if pts.size == 0:
        raise ValueError(f"no pixel carries label {label}")
    half_diag = 0.5 * np.hypot(raster.spec.pixel_width, raster.spec.pixel_height)
    return float(np.max(np.abs(pts)) + half_diag)


def hausdorff_pixels(raster_a: RasterClass, raster_b: RasterClass,
                     label_a: int = LABEL_IN, label_b: int = LABEL_IN,
                     transform=(1.0, 0.0), transform_b=(1.0, 0.0)) -> float:
    """Symmetric Hausdorff distance between transform(set A) and set B.

    transform is an affine map z -> scale*z + offset applied to A's pixel
    centers (transform_b likewise to B's).  Distances are exact
    nearest-neighbour queries between the two pixel-center point sets.
    """
    scale, offset = transform
    pa = raster_a.label_points(label_a) * scale + offset
    scale_b, offset_b = transform_b
    pb = raster_b.label_points(label_b) * scale_b + offset_b
    if pa.size == 0 or pb.size == 0:
        raise ValueError("empty labeled set")
    ta = cKDTree(np.column_stack([pa.real, pa.imag]))
    tb = cKDTree(np.column_stack([pb.real, pb.imag]))
    d_ab = ta.query(np.column_stack([pb.real, pb.imag]))[0].max()
    d_ba = tb.query(np.column_stack([pa.real, pa.imag]))[0].max()
    return float(max(d_ab, d_ba))
