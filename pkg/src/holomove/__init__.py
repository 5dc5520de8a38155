"""holomove: a numerical laboratory for holomorphic motions and explosions.

Fits the decomposition H = P + (lambda - lambda*)^n * hat_H from sampled
trajectories, detects extension obstructions at punctured parameters via
contour integrals, and reproduces the superattracting-basin and
quadratic-rational-moduli applications including their figures.
"""

__version__ = "0.1.0"

from .contour import (CircleContour, LaurentWindow, Polynomial,
                      contour_points, laurent_coefficients, newton_root,
                      spectral_derivative, winding_count)
from .families import (BasinCenters, EntireParam, FixedPointData, OrbitResult,
                       RationalParam, A_of_mu, basin_centers, eval_blaschke,
                       eval_entire, eval_G, eval_Q, eval_R, fixed_points_G,
                       mu_of_A, orbit_bounded, sigma_of_A, sigma_quadratic)
from .hyperbolic import HyperbolicEstimate, K_upper_bound, hyp_dist_disk
from .motion import (ExplosionDecomposition, ExtendabilityVerdict,
                     MotionSample, classify_extension, corollary_classify,
                     decompose_explosion, extract_fg, normalize_tilde,
                     validate_motion)
