"""The map families under study and their fixed-point algebra.

Covers the entire family a*(e^z*(z-1)+1), the quadratic rational family
(z + sqrt(A) + 1/z)/lambda and its relatives z*(z+mu)/(1+lambda*z),
z^2 + c and the Blaschke products z*(z+conj(lambda))/(1+lambda*z), plus
fixed-point multipliers, their symmetric functions, the multiplier-product
line coordinate and bounded-orbit testing.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .contour import newton_root

__all__ = [
    "BasinCenters",
    "EntireParam",
    "FixedPointData",
    "INF",
    "OrbitResult",
    "RationalParam",
    "A_of_mu",
    "basin_centers",
    "entire_core",
    "entire_core_np",
    "eval_blaschke",
    "eval_entire",
    "eval_G",
    "eval_Q",
    "eval_R",
    "fixed_points_G",
    "g_step",
    "entire_step",
    "mu_of_A",
    "orbit_bounded",
    "q_step",
    "quadratic_roots",
    "sigma_of_A",
    "sigma_quadratic",
]

INF = complex(math.inf, 0.0)

# Taylor coefficients of e^z(z-1)+1 = sum_{k>=2} (k-1)/k! z^k.  Direct
# evaluation of the closed form loses all relative accuracy near z=0
# (catastrophic cancellation), so small arguments go through the series.
_CORE_COEF = tuple((k - 1) / math.factorial(k) for k in range(2, 26))
_CORE_CUTOFF = 0.5


def entire_core(z: complex) -> complex:
    """e^z*(z-1)+1, accurate for all z including the double zero at 0."""
    z = complex(z)
    if abs(z) <= _CORE_CUTOFF:
        acc = 0j
        for coef in reversed(_CORE_COEF):
            acc = acc * z + coef
        return acc * z * z
    return cmath.exp(z) * (z - 1) + 1


def entire_core_np(z: np.ndarray) -> np.ndarray:
    """Vectorized entire_core for the numpy iteration kernels."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) <= _CORE_CUTOFF
    zs = z[small]
    acc = np.zeros_like(zs)
    for coef in reversed(_CORE_COEF):
        acc = acc * zs + coef
    out[small] = acc * zs * zs
    zb = z[~small]
    out[~small] = np.exp(zb) * (zb - 1) + 1
    return out


@dataclass(frozen=True)
class EntireParam:
    """Parameter of the entire family z -> a*(e^z*(z-1)+1), a != 0."""

    a: complex

    def __post_init__(self):
        if self.a == 0:
            raise ValueError("parameter a must be nonzero")


@dataclass(frozen=True)
class RationalParam:
    """Parameter of the family z -> (z + sqrt(A) + 1/z)/lambda.

    The two square-root branches give maps conjugate by z -> -z, so every
    class-level quantity (multiplier products, connectedness) is branch
    independent.
    """

    lam: complex
    A: complex
    sqrt_branch: str = "principal"

    def __post_init__(self):
        if self.lam == 0:
            raise ValueError("lambda must be nonzero")
        if self.sqrt_branch not in ("principal", "negated"):
            raise ValueError(f"unknown branch {self.sqrt_branch!r}")

    @property
    def sqrt_A(self) -> complex:
        root = cmath.sqrt(self.A)
        return -root if self.sqrt_branch == "negated" else root


def eval_entire(p: EntireParam, z: complex) -> complex:
    """a*(e^z*(z-1)+1); overflow maps to the infinity sentinel."""
    try:
        return p.a * entire_core(z)
    except OverflowError:
        return INF


def eval_G(p: RationalParam, z: complex) -> complex:
    if z == 0 or not cmath.isfinite(z):
        return INF
    return (z + p.sqrt_A + 1.0 / z) / p.lam


def eval_R(lam: complex, mu: complex, z: complex) -> complex:
    denom = 1 + lam * z
    if denom == 0:
        return INF
    return z * (z + mu) / denom


def eval_Q(c: complex, z: complex) -> complex:
    return z * z + c


def eval_blaschke(lam: complex, z: complex) -> complex:
    denom = 1 + lam * z
    if denom == 0:
        return INF
    return z * (z + lam.conjugate()) / denom


def quadratic_roots(a: complex, b: complex, c: complex):
    """Both roots of a*z^2 + b*z + c = 0, cancellation-safe.

    Uses the companion (citardauq) form for the root that would otherwise
    cancel.  With a == 0 the single linear root is returned twice.
    """
    if a == 0:
        if b == 0:
            raise ZeroDivisionError("degenerate quadratic: a = b = 0")
        r = -c / b
        return r, r
    disc = cmath.sqrt(b * b - 4 * a * c)
    if (b.conjugate() * disc).real >= 0:
        q = -0.5 * (b + disc)
    else:
        q = -0.5 * (b - disc)
    if q == 0:
        return 0j, 0j
    return q / a, c / q


@dataclass(frozen=True)
class FixedPointData:
    """Multipliers of the three fixed points and their symmetric functions."""

    multipliers: tuple
    sigma1: complex
    sigma2: complex
    sigma3: complex
    degenerate: bool = False

    @classmethod
    def from_multipliers(cls, lam, mu, gamma, degenerate=False):
        return cls(
            multipliers=(complex(lam), complex(mu), complex(gamma)),
            sigma1=lam + mu + gamma,
            sigma2=lam * mu + lam * gamma + mu * gamma,
            sigma3=lam * mu * gamma,
            degenerate=degenerate,
        )


def _g_multiplier(p: RationalParam, z: complex) -> complex:
    return (1 - 1 / (z * z)) / p.lam


def fixed_points_G(p: RationalParam) -> FixedPointData:
    """Multipliers of the three fixed points of (z+sqrt(A)+1/z)/lambda.

    Infinity is fixed with multiplier lambda; the finite fixed points solve
    (1-lambda)*z^2 + sqrt(A)*z + 1 = 0.  For lambda = 1 the quadratic
    degenerates to a linear equation: one finite fixed point remains and the
    collision at infinity is reported via the degenerate flag (a multiple
    fixed point has multiplier 1).
    """
    lam = p.lam
    if lam == 1:
        # one finite fixed point; infinity has multiplicity two
        if p.sqrt_A == 0:
            raise ZeroDivisionError("wholly degenerate fixed-point equation")
        z = -1.0 / p.sqrt_A
        return FixedPointData.from_multipliers(
            lam, 1.0, _g_multiplier(p, z), degenerate=True)
    z1, z2 = quadratic_roots(1 - lam, p.sqrt_A, 1.0)
    return FixedPointData.from_multipliers(
        lam, _g_multiplier(p, z1), _g_multiplier(p, z2))


def sigma_of_A(lam: complex, A: complex) -> complex:
    """Product of the two non-infinity fixed-point multipliers: ((lam-2)^2 - A)/lam^2."""
    if lam == 0:
        raise ZeroDivisionError("lambda must be nonzero")
    return ((lam - 2) ** 2 - A) / (lam * lam)


def A_of_mu(lam: complex, mu: complex) -> complex:
    """A with the same multiplier data as z*(z+mu)/(1+lam*z)."""
    denom = 1 - lam * mu
    if denom == 0:
        raise ZeroDivisionError("1 - lambda*mu vanishes")
    return (lam - 2) ** 2 - lam * lam * mu * (2 - lam - mu) / denom


def mu_of_A(lam: complex, A: complex):
    """Both mu solving A_of_mu(lam, mu) = A, ordered lexicographically.

    The two solutions are the non-infinity fixed-point multipliers; they
    solve mu^2 - (2 - lam + s*lam)*mu + s = 0 with s = sigma_of_A(lam, A).
    A degenerate (double) solution is returned twice.
    """
    s = sigma_of_A(lam, A)
    r1, r2 = quadratic_roots(1.0, -(2 - lam + s * lam), s)
    return tuple(sorted((r1, r2), key=lambda z: (z.real, z.imag)))


def sigma_quadratic(c: complex) -> complex:
    """Multiplier product of the finite fixed points of z^2 + c: exactly 4c."""
    return 4 * c


@dataclass(frozen=True)
class BasinCenters:
    """Roots z_i of e^z(z-1)+1, indexed i in [-count, count] by imaginary part.

    z_0 = 0; the roots do not depend on the family parameter a.
    """

    points: tuple

    @property
    def count(self) -> int:
        return len(self.points) // 2

    def point(self, i: int) -> complex:
        n = self.count
        if not -n <= i <= n:
            raise IndexError(f"center index {i} outside [-{n}, {n}]")
        return self.points[i + n]


def basin_centers(count: int) -> BasinCenters:
    """z_0 = 0 plus the `count` nearest roots above and below the real axis.

    Initial guesses come from a coarse modulus-minimum scan in the upper
    half plane; each guess is Newton-polished and deduplicated, lower-half
    roots follow by conjugation symmetry.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    if count == 0:
        return BasinCenters(points=(0j,))
    upper = _upper_roots(count)
    lower = [z.conjugate() for z in reversed(upper)]
    return BasinCenters(points=tuple(lower) + (0j,) + tuple(upper))


def _upper_roots(count: int):
    # roots sit near -log(2*pi*k) + i*(2*pi*k + pi/2); scan a box that
    # covers `count` of them comfortably
    top = 2 * math.pi * (count + 1.5)
    xs = np.linspace(-max(6.0, math.log(top) + 3), 4.0, 420)
    ys = np.linspace(0.5, top, max(60, int(top * 12)))
    X, Y = np.meshgrid(xs, ys)
    Z = X + 1j * Y
    V = np.abs(np.exp(Z) * (Z - 1) + 1)
    cand = []
    for i in range(1, V.shape[0] - 1):
        for j in range(1, V.shape[1] - 1):
            v = V[i, j]
            if v < 0.25 and v <= V[i - 1, j] and v <= V[i + 1, j] \
                    and v <= V[i, j - 1] and v <= V[i, j + 1]:
                cand.append(complex(Z[i, j]))
    roots = []
    for guess in cand:
        z = newton_root(entire_core, lambda u: u * cmath.exp(u), guess,
                        tol=1e-13, max_iter=80)
        if z.imag <= 1e-6:
            continue
        if all(abs(z - r) > 1e-6 for r in roots):
            roots.append(z)
    roots.sort(key=lambda z: z.imag)
    if len(roots) < count:
        raise RuntimeError(f"found only {len(roots)} of {count} requested centers")
    return roots[:count]


@dataclass(frozen=True)
class OrbitResult:
    """Outcome of a bounded-orbit test.

    kind is "escaped" or "bounded"; a bounded verdict at budget exhaustion
    carries undecided=True, since no finite iteration count proves
    boundedness.
    """

    kind: str
    step: int
    undecided: bool = False

    @property
    def bounded(self) -> bool:
        return self.kind == "bounded"


def g_step(lam: complex, A: complex, sqrt_branch: str = "principal",
           pole_cutoff: float = 1e-14):
    """One-step iterator for the rational family, pole-aware.

    A visit within pole_cutoff of the pole at 0 is a visit to a preimage of
    infinity: the next value is reported as the sentinel and the orbit test
    counts it as escaped.
    """
    p = RationalParam(lam, A, sqrt_branch)
    b = p.sqrt_A

    def step(z):
        if not cmath.isfinite(z) or abs(z) < pole_cutoff:
            return INF
        return (z + b + 1.0 / z) / lam

    return step


def q_step(c: complex):
    def step(z):
        return z * z + c

    return step


def entire_step(a: complex):
    p = EntireParam(a)

    def step(z):
        return eval_entire(p, z)

    return step


def orbit_bounded(step, z0: complex, max_iter: int = 2000,
                  escape_radius: float = 1e6) -> OrbitResult:
    """Iterate `step` from z0; escaped once |z| > escape_radius."""
    z = complex(z0)
    for k in range(max_iter):
        if not cmath.isfinite(z) or abs(z) > escape_radius:
            return OrbitResult(kind="escaped", step=k)
        z = step(z)
    if not cmath.isfinite(z) or abs(z) > escape_radius:
        return OrbitResult(kind="escaped", step=max_iter)
    return OrbitResult(kind="bounded", step=max_iter, undecided=True)
