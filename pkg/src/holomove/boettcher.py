"""Boettcher charts for the superattracting fixed point 0 of a*(e^z*(z-1)+1).

The coordinate phi_a conjugates the map to w -> w^2 near 0 and is normalized
by phi_a(z) = (a/2)*z + O(z^2); its inverse psi_a (the Boettcher parameter)
extends to the whole immediate basin when the asymptotic value a is not
attracted there.  On top of the charts sit the dynamically defined motion
H(a, z) = psi_a(phi_a0(z)), its rescaling hat_H(a, w) = (a/2)*psi_a(w), and
the preimage-component motions through the inverse branches at the centers.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .families import EntireParam, basin_centers, entire_core, eval_entire

__all__ = [
    "BasinEscape",
    "BoettcherChart",
    "ChartError",
    "C0Result",
    "boettcher_coordinate",
    "boettcher_parameter",
    "classify_orbit",
    "contraction_radius",
    "g_a_defect",
    "g_a_error_bound",
    "get_chart",
    "hat_H",
    "in_C0",
    "in_unbounded_complement",
    "motion_H",
    "preimage_motion",
]

# Orbit-terminal thresholds shared with the raster kernels: real parts above
# OVERFLOW_RE make the next explicit exp unreliable, moduli above ESCAPE_MOD
# leave the regime where sin/cos of the imaginary part mean anything.
OVERFLOW_RE = 345.0
ESCAPE_MOD = 1e15
CYCLE_TOL = 1e-12


class BasinEscape(RuntimeError):
    """Orbit does not enter the contraction disk: not in validated basin region."""


class ChartError(RuntimeError):
    """Newton failure in the parameter map: outside validated chart."""


def contraction_radius(a: complex) -> float:
    """Radius rho with |f_a(z)| <= |z|/2 on |z| <= rho.

    With f_a(z) = (a/2) z^2 (1 + 2z/3 + ...), rho = 1/(2+2|a|) suffices for
    every a; the chart constructor re-verifies this numerically.
    """
    return 1.0 / (2.0 + 2.0 * abs(a))


def classify_orbit(a: complex, z0: complex, max_iter: int = 2000):
    """Fate of an orbit under f_a: attracted to 0, blown up, cycling, or unresolved.

    Returns (kind, step) with kind in {"attracted", "blown", "cycle",
    "budget"}.  Cycle detection is Brent's algorithm with a relative
    tolerance; a detected cycle stays outside the contraction disk, so it
    certifies non-attraction to 0 within working precision.
    """
    z = complex(z0)
    rho = contraction_radius(a)
    check = z
    power = 1
    lam = 0
    for k in range(max_iter):
        if abs(z) < rho:
            return "attracted", k
        if z.real > OVERFLOW_RE or abs(z) > ESCAPE_MOD:
            return "blown", k
        z = a * entire_core(z)
        lam += 1
        if abs(z - check) < CYCLE_TOL * max(1.0, abs(z)):
            return "cycle", k
        if lam == power:
            check = z
            power *= 2
            lam = 0
    return "budget", max_iter


@dataclass
class BoettcherChart:
    """Boettcher coordinate/parameter pair for one parameter a.

    inner_radius is the validated radius in the unit disk for the parameter
    map; Newton basins shrink toward the unit circle, so values |w| beyond
    it are refused rather than continued blindly.
    """

    a: complex
    inner_radius: float = 0.8
    orbit_budget: int = 2000
    newton_tol: float = 1e-13
    continuation_step: float = 0.05
    _psi_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.a = complex(self.a)
        if self.a == 0:
            raise ValueError("parameter a must be nonzero")
        if not 0 < self.inner_radius < 1:
            raise ValueError("inner_radius must lie in (0, 1)")
        self._verify_contraction()

    @property
    def rho(self) -> float:
        return contraction_radius(self.a)

    def _f(self, z: complex) -> complex:
        return self.a * entire_core(z)

    def _verify_contraction(self):
        # spot-check |f(z)| <= |z|/2 on the contraction circle
        r = self.rho
        for k in range(16):
            z = r * cmath.exp(2j * math.pi * k / 16)
            if abs(self._f(z)) > 0.5 * abs(z) + 1e-15:
                raise ValueError(f"contraction radius check failed for a={self.a}")

    def coordinate(self, z: complex) -> complex:
        """phi_a(z) = lim ((a/2) f_a^n(z))^(1/2^n), branch tracked.

        The orbit is first run into the contraction disk (raising
        BasinEscape if it leaves the validated region or exhausts the
        budget); inside the disk the limit product converges geometrically
        with principal logarithms, and the square roots are pulled back
        through the recorded pre-orbit by continuity against the
        (a/2)z-dominant estimate.
        """
        z = complex(z)
        a = self.a
        orbit = [z]
        zz = z
        steps = 0
        while abs(zz) >= self.rho:
            if zz.real > OVERFLOW_RE or abs(zz) > ESCAPE_MOD \
                    or steps >= self.orbit_budget:
                raise BasinEscape("not in validated basin region")
            zz = self._f(zz)
            orbit.append(zz)
            steps += 1
        if zz == 0:
            val = 0j
        else:
            u = zz
            log_acc = cmath.log(0.5 * a * u)
            w_prev = 0.5 * a * u
            weight = 0.5
            for _ in range(80):
                u = self._f(u)
                if abs(u) < 1e-140:
                    break
                w_n = 0.5 * a * u
                log_acc += weight * cmath.log(w_n / (w_prev * w_prev))
                weight *= 0.5
                w_prev = w_n
            val = cmath.exp(log_acc)
        for j in range(steps - 1, -1, -1):
            root = cmath.sqrt(val)
            estimate = 0.5 * a * orbit[j]
            if abs(-root - estimate) < abs(root - estimate):
                root = -root
            val = root
        return val

    def coordinate_derivative(self, z: complex, h: float = None) -> complex:
        if h is None:
            h = 1e-7 * max(abs(z), 1e-3)
        return (self.coordinate(z + h) - self.coordinate(z - h)) / (2 * h)

    def parameter(self, w: complex) -> complex:
        """psi_a(w): Newton inverse of the coordinate, seeded by (2/a)w.

        Radial continuation walks |w| outward in continuation_step
        increments so each Newton solve starts inside its basin.
        """
        w = complex(w)
        if w == 0:
            return 0j
        r_target = abs(w)
        if r_target > self.inner_radius + 1e-12:
            raise ChartError(
                f"|w|={r_target:.3f} beyond validated radius {self.inner_radius}")
        key = w
        if key in self._psi_cache:
            return self._psi_cache[key]
        radii = list(np.arange(0.1, r_target, self.continuation_step))
        radii.append(r_target)
        z = None
        for r in radii:
            wt = w * (r / r_target)
            if z is None:
                z = 2.0 / self.a * wt
            z = self._newton_parameter(wt, z)
        self._psi_cache[key] = z
        return z

    def _newton_parameter(self, w: complex, z0: complex) -> complex:
        z = z0
        for _ in range(80):
            try:
                residual = self.coordinate(z) - w
            except BasinEscape as exc:
                raise ChartError("outside validated chart") from exc
            if abs(residual) < self.newton_tol:
                return z
            z = z - residual / self.coordinate_derivative(z)
        raise ChartError("outside validated chart")


_CHART_CACHE = {}


def get_chart(a: complex, **kwargs) -> BoettcherChart:
    """Per-parameter chart cache; charts are immutable once constructed."""
    key = (complex(a), tuple(sorted(kwargs.items())))
    chart = _CHART_CACHE.get(key)
    if chart is None:
        chart = BoettcherChart(a, **kwargs)
        _CHART_CACHE[key] = chart
    return chart


def boettcher_coordinate(a: complex, z: complex) -> complex:
    return get_chart(a).coordinate(z)


def boettcher_parameter(a: complex, w: complex) -> complex:
    return get_chart(a).parameter(w)


@dataclass(frozen=True)
class C0Result:
    """Verdict of the main-hyperbolic-component membership test."""

    verdict: str            # "inside" | "outside" | "undecided"
    orbit_kind: str
    orbit_step: int
    grid_used: int = 0


def in_C0(a: complex, max_iter: int = 2000, grid: int = 192) -> C0Result:
    """Is the asymptotic value a attracted to 0 inside the immediate basin?

    The orbit of a decides attraction; grid-scale 4-connectivity between the
    pixels of a and of 0 through attracted pixels decides the immediate
    component (retried once on a finer grid when disconnected).
    """
    a = complex(a)
    if a == 0:
        raise ValueError("parameter a must be nonzero")
    kind, step = classify_orbit(a, a, max_iter)
    if kind in ("blown", "cycle"):
        return C0Result("outside", kind, step)
    if kind == "budget":
        return C0Result("undecided", kind, step)
    for res in (grid, 2 * grid):
        if _connected_to_origin(a, res, max_iter):
            return C0Result("inside", kind, step, grid_used=res)
    return C0Result("outside", kind, step, grid_used=2 * grid)


def _connected_to_origin(a: complex, res: int, max_iter: int) -> bool:
    from .render import backend

    center = a / 2.0
    half = 0.75 * abs(a) + 1.0
    xs = center.real - half + (np.arange(res) + 0.5) * (2 * half / res)
    ys = center.imag - half + (np.arange(res) + 0.5) * (2 * half / res)
    labels, _ = backend.kernels().dyn_fa(a, xs, ys, max_iter)
    attracted = labels == 1
    ix0 = int(np.clip((0 - xs[0]) / (xs[1] - xs[0]) + 0.5, 0, res - 1))
    iy0 = int(np.clip((0 - ys[0]) / (ys[1] - ys[0]) + 0.5, 0, res - 1))
    ixa = int(np.clip((a.real - xs[0]) / (xs[1] - xs[0]) + 0.5, 0, res - 1))
    iya = int(np.clip((a.imag - ys[0]) / (ys[1] - ys[0]) + 0.5, 0, res - 1))
    # the direct orbit already certified these two; pixel centers may straddle
    attracted[iy0, ix0] = True
    attracted[iya, ixa] = True
    comp, _ = ndimage.label(attracted)
    return comp[iy0, ix0] == comp[iya, ixa]


def in_unbounded_complement(a: complex, r0: float, c0_raster=None) -> bool:
    """Membership test for the unbounded complement component of closure(C0).

    Outside the inflated bounding disk of the rendered component the answer
    is immediate; inside it a path to the window edge through non-attracted
    pixels is required, checked at render resolution.
    """
    a = complex(a)
    if abs(a) > 1.1 * r0:
        return True
    if c0_raster is None:
        return False
    labels = c0_raster.labels
    free = labels != 1
    comp, _ = ndimage.label(free)
    edge = np.zeros_like(free)
    edge[0, :] = edge[-1, :] = True
    edge[:, 0] = edge[:, -1] = True
    edge_comps = set(np.unique(comp[edge & free]))
    iy, ix = c0_raster.spec.pixel_of(a)
    return bool(comp[iy, ix] in edge_comps and free[iy, ix])


def motion_H(a0: complex, a: complex, z: complex) -> complex:
    """The basin motion psi_a(phi_a0(z)); identity at the base parameter.

    Caller contract: a0 and a lie outside closure(C0) in its unbounded
    complement component, and z is in the validated chart of a0.
    """
    w = get_chart(a0).coordinate(z)
    return get_chart(a).parameter(w)


def hat_H(a: complex, w: complex) -> complex:
    """Normalized explosion motion (a/2)*psi_a(w): fixes 0, derivative 1 at 0."""
    return 0.5 * a * get_chart(a).parameter(w)


# inverse-branch guard: the preimage components shrink toward their centers
# for large |a|, and neighbouring centers are >2*pi apart
_BRANCH_RADIUS = 2.5


def preimage_motion(a: complex, i: int, w: complex, centers=None) -> complex:
    """Motion of the i-th preimage component: k_a^i((2/a)*hat_H(a, w)).

    k_a^i is the inverse branch of f_a fixing f(z_i)=0 picked by Newton from
    the center z_i.  Leaving the branch neighbourhood raises ChartError
    ("branch escape").
    """
    if i == 0:
        raise ValueError("i = 0 is the superattracting component itself")
    if centers is None:
        centers = basin_centers(abs(i))
    z_i = centers.point(i)
    target = get_chart(a).parameter(w)
    x = z_i
    for _ in range(60):
        fx = a * entire_core(x) - target
        if abs(fx) < 1e-12 * max(1.0, abs(a)):
            return x
        x = x - fx / (a * x * cmath.exp(x))
        if abs(x - z_i) > _BRANCH_RADIUS:
            raise ChartError("branch escape")
    raise ChartError("branch escape")


def g_a_error_bound(a: complex, z: complex) -> float:
    """|4 z^3 / (3a)| * e^{|2z/a|}, the quadratic-approximation error bound."""
    return abs(4 * z**3 / (3 * a)) * math.exp(abs(2 * z / a))


def g_a_defect(a: complex, z: complex) -> float:
    """|g_a(z) - z^2| with g_a(z) = (a/2) f_a(2z/a); bounded by g_a_error_bound."""
    g = 0.5 * a * eval_entire(EntireParam(a), 2 * z / a)
    return abs(g - z * z)
