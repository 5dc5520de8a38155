"""Hyperbolic distance in the unit disk and the quasidisk dilatation bound.

Domain monotonicity only ever yields an upper bound here: the true hyperbolic
metric of the unbounded complement component is unknown, but mapping
{|l| > R0} into the disk by l -> R0/l bounds the distance from infinity to a,
and that is the direction the dilatation estimate consumes.
"""

import math
from dataclasses import dataclass

__all__ = ["HyperbolicEstimate", "K_upper_bound", "hyp_dist_disk"]


def hyp_dist_disk(z1: complex, z2: complex) -> float:
    """Poincare distance log((1+rho)/(1-rho)) with pseudo-hyperbolic rho."""
    z1, z2 = complex(z1), complex(z2)
    if abs(z1) >= 1 or abs(z2) >= 1:
        raise ValueError("arguments must lie strictly inside the unit disk")
    rho = abs(z1 - z2) / abs(1 - z1.conjugate() * z2)
    return math.log((1 + rho) / (1 - rho))


@dataclass(frozen=True)
class HyperbolicEstimate:
    """Upper bounds for d(infinity, a) and the dilatation K at one parameter."""

    a: complex
    r0: float
    d_upper: float
    k_upper: float


def K_upper_bound(a: complex, r0: float) -> HyperbolicEstimate:
    """Dilatation bound K = exp(d(infinity, a)) <= (1 + R0/|a|)/(1 - R0/|a|).

    Valid for |a| > R0 where R0 is a radius whose disk contains the bounded
    component closure; decreasing in |a| and tending to 1 at infinity.
    """
    a = complex(a)
    if r0 <= 0:
        raise ValueError("R0 must be positive")
    if abs(a) <= r0:
        raise ValueError("outside validated region; no bound emitted")
    d_upper = hyp_dist_disk(0j, r0 / a)
    ratio = r0 / abs(a)
    k_upper = (1 + ratio) / (1 - ratio)
    return HyperbolicEstimate(a=a, r0=float(r0), d_upper=d_upper, k_upper=k_upper)
