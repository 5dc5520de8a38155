"""Ready-made motion samples from the two application families.

The basin motion of the entire family explodes from (infinity, 0) with
order 1, its preimage-component relatives from (infinity, z_i) with order 2.
The puncture at infinity is handled by the substitution lambda = 1/a before
any contour work, so the finite-puncture pipeline serves both: sampling a on
a positively oriented circle of radius R is exactly sampling lambda on a
negatively oriented circle of radius 1/R about 0.

Also here: the multiplier-product line motion's two computable constant
trajectories, and the disconnected-set / essential-singularity counterexample
galleries.
"""

import cmath
import math

import numpy as np

from .boettcher import get_chart, preimage_motion
from .contour import CircleContour, contour_points
from .families import basin_centers
from .motion import MotionSample

__all__ = [
    "DEFAULT_W_POINTS",
    "basin_motion_sample",
    "essential_gallery",
    "gallery_collapsing",
    "gallery_meromorphic",
    "plane_affinity_samples",
    "preimage_motion_sample",
    "sigma_line_motion_sample",
]

# disk coordinates of the sampled trajectories; spread out for a
# well-conditioned pivot pair
DEFAULT_W_POINTS = (0.1, 0.3j, 0.45, -0.38j)


def _inverted_contour(radius: float, samples: int) -> CircleContour:
    """lambda = 1/a contour: negatively oriented circle of radius 1/R."""
    return CircleContour(center=0j, radius=1.0 / radius, samples=samples,
                         orientation="negative")


def basin_motion_sample(radius: float = 100.0,
                        w_points=DEFAULT_W_POINTS,
                        samples: int = 128):
    """The basin motion sampled over |a| = radius, in lambda = 1/a coordinates.

    Moving points are psi_{a0}(w) for the given disk coordinates (a0 the
    real-positive point of the circle), so the identity column sits at
    lambda0 = 1/a0 exactly.
    """
    contour = _inverted_contour(radius, samples)
    lam_pts = contour_points(contour)
    a_pts = 1.0 / lam_pts
    base_chart = get_chart(complex(a_pts[0]))
    e_points = np.array([base_chart.parameter(w) for w in w_points])
    values = np.empty((samples, len(w_points)), dtype=complex)
    for j, a in enumerate(a_pts):
        chart = get_chart(complex(a))
        for i, w in enumerate(w_points):
            values[j, i] = chart.parameter(w)
    m = MotionSample(
        base_param=complex(lam_pts[0]),
        marked_param=0j,
        param_points=lam_pts,
        e_points=e_points,
        values=values,
        e_connected=True,
    )
    return m, contour


def preimage_motion_sample(i: int, radius: float = 100.0,
                           w_points=DEFAULT_W_POINTS,
                           samples: int = 128):
    """Motion of the i-th preimage component over |a| = radius (lambda = 1/a)."""
    centers = basin_centers(abs(i))
    contour = _inverted_contour(radius, samples)
    lam_pts = contour_points(contour)
    a_pts = 1.0 / lam_pts
    values = np.empty((samples, len(w_points)), dtype=complex)
    for j, a in enumerate(a_pts):
        for k, w in enumerate(w_points):
            values[j, k] = preimage_motion(complex(a), i, w, centers=centers)
    m = MotionSample(
        base_param=complex(lam_pts[0]),
        marked_param=0j,
        param_points=lam_pts,
        e_points=values[0].copy(),
        values=values,
        e_connected=True,
    )
    return m, contour


def sigma_line_motion_sample(radius: float = 0.5, samples: int = 256):
    """The two exactly-known trajectories of the multiplier-product motion.

    Along the line of maps with a fixed point of multiplier lambda, the
    center keeps a superattracting fixed point (product 0) and the root
    keeps a parabolic one (product 1): both trajectories are constant in
    lambda.  Sampled over a circle inside the punctured disk around 0.
    """
    contour = CircleContour(center=0j, radius=radius, samples=samples,
                            orientation="negative")
    lam_pts = contour_points(contour)
    values = np.empty((samples, 2), dtype=complex)
    values[:, 0] = 0.0
    values[:, 1] = 1.0
    m = MotionSample(
        base_param=complex(lam_pts[0]),
        marked_param=0j,
        param_points=lam_pts,
        e_points=np.array([0j, 1 + 0j]),
        values=values,
        e_connected=True,
    )
    return m, contour


def gallery_meromorphic(samples: int = 256):
    """Disconnected moving set {0, 1/e, e} with trajectories {0, l, 1/l}.

    The third trajectory has a pole at the puncture: the motion extends
    horizontally meromorphically but not holomorphically.  Base point 1/e
    sits on the contour so the identity column is exact.
    """
    contour = CircleContour(center=0j, radius=1.0 / math.e, samples=samples,
                            orientation="negative")
    lam = contour_points(contour)
    e_points = np.array([0j, 1.0 / math.e, math.e], dtype=complex)
    values = np.column_stack([np.zeros_like(lam), lam, 1.0 / lam])
    m = MotionSample(
        base_param=complex(lam[0]),
        marked_param=0j,
        param_points=lam,
        e_points=e_points,
        values=values,
        e_connected=False,
    )
    return m, contour


def gallery_collapsing(samples: int = 256):
    """Disconnected moving set {0, 1/e, 1/e^2} with trajectories {0, l, l^2}.

    Every trajectory extends holomorphically, but the limit fiber collapses
    to 0 without the motion being an explosion of a connected set: the
    injectivity conclusion fails, not the extendability.
    """
    contour = CircleContour(center=0j, radius=1.0 / math.e, samples=samples,
                            orientation="negative")
    lam = contour_points(contour)
    e_points = np.array([0j, 1.0 / math.e, 1.0 / math.e**2], dtype=complex)
    values = np.column_stack([np.zeros_like(lam), lam, lam * lam])
    m = MotionSample(
        base_param=complex(lam[0]),
        marked_param=0j,
        param_points=lam,
        e_points=e_points,
        values=values,
        e_connected=False,
    )
    return m, contour


def essential_gallery(offsets=(0.3, 1.0, -0.7 + 0.2j), samples: int = 256,
                      multiplicative: bool = False):
    """Trajectories with an essential singularity at the puncture.

    Additive form z + (e^{1/l} - e^{1/l0}); the multiplicative variant
    z * e^{1/l - 1/l0} is included for completeness.  Both are genuine
    motions away from the puncture yet fail every extension conclusion.
    """
    contour = CircleContour(center=0j, radius=1.0 / math.e, samples=samples,
                            orientation="negative")
    lam = contour_points(contour)
    lam0 = complex(lam[0])
    e_points = np.asarray(offsets, dtype=complex)
    if multiplicative:
        factor = np.exp(1.0 / lam - 1.0 / lam0)
        values = factor[:, None] * e_points[None, :]
    else:
        bump = np.exp(1.0 / lam) - cmath.exp(1.0 / lam0)
        values = bump[:, None] + e_points[None, :]
    m = MotionSample(
        base_param=lam0,
        marked_param=0j,
        param_points=lam,
        e_points=e_points,
        values=values,
        e_connected=True,
    )
    return m, contour


def plane_affinity_samples(radii=(1.0, 10.0, 100.0), samples: int = 64,
                           epsilon: float = 0.0):
    """Motions sampled on growing circles for the whole-plane affinity probe.

    epsilon = 0 builds a genuinely affine motion (deviation must vanish); a
    nonzero epsilon adds a cubic fiber distortion vanishing at the pivots and
    at the base parameter, a valid motion only on a bounded disk, whose
    deviation grows with the radius.
    """
    e_points = np.array([0.4, 1.1, 2.0 + 0.5j], dtype=complex)
    z0, z1 = e_points[0], e_points[1]
    out = {}
    for radius in radii:
        contour = CircleContour(center=0j, radius=radius, samples=samples,
                                orientation="positive")
        lam = contour_points(contour)
        base = complex(lam[0])
        # gentle coefficients keep |H| of order one across the radius ladder,
        # so float noise stays far below the deviation tolerance
        f = 0.01 * (lam - base)
        g = np.exp(0.002 * (lam - base))
        values = f[:, None] + g[:, None] * e_points[None, :]
        if epsilon:
            values = values + epsilon * (lam - base)[:, None] * (
                e_points[None, :] * (e_points[None, :] - z0) * (e_points[None, :] - z1))
        out[radius] = MotionSample(
            base_param=base,
            marked_param=0j,
            param_points=lam,
            e_points=e_points,
            values=values,
            e_connected=True,
        )
    return out
