"""Complex-analytic numerics on sampled circular contours.

Provides equispaced contour sampling, Cauchy/Laurent coefficient extraction
by the trapezoid rule (spectrally accurate for analytic periodic integrands),
argument-principle winding counts, spectral differentiation of contour
samples, Horner polynomial evaluation and a plain complex Newton solver.
"""

import cmath
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CircleContour",
    "ContourError",
    "LaurentWindow",
    "NewtonError",
    "Polynomial",
    "WindingError",
    "contour_points",
    "laurent_coefficients",
    "newton_root",
    "spectral_derivative",
    "winding_count",
]

# Snapping threshold for winding counts: below it the rounded value is
# trusted, above it we refuse to guess.
WINDING_SNAP_TOL = 1e-3


class ContourError(ValueError):
    """Input does not match the contour (wrong sample count, bad radius...)."""


class WindingError(RuntimeError):
    """Contour too coarse or target on curve."""


class NewtonError(RuntimeError):
    """No convergence from guess."""


@dataclass(frozen=True)
class CircleContour:
    """Equispaced samples of a circle, with orientation.

    Sample k sits at center + radius*exp(2*pi*i*k/samples * sign), where
    sign is +1 for "positive" (counterclockwise) and -1 for "negative".
    """

    center: complex
    radius: float
    samples: int = 256
    orientation: str = "positive"

    def __post_init__(self):
        if self.radius <= 0:
            raise ContourError(f"radius must be positive, got {self.radius}")
        if self.samples < 16:
            raise ContourError(f"need at least 16 samples, got {self.samples}")
        if self.orientation not in ("positive", "negative"):
            raise ContourError(f"unknown orientation {self.orientation!r}")

    @property
    def sign(self) -> int:
        return 1 if self.orientation == "positive" else -1

    def reversed(self) -> "CircleContour":
        flip = "negative" if self.orientation == "positive" else "positive"
        return CircleContour(self.center, self.radius, self.samples, flip)

    def points(self) -> np.ndarray:
        return contour_points(self)


def contour_points(c: CircleContour) -> np.ndarray:
    """The m equispaced sample points of the contour, in traversal order."""
    k = np.arange(c.samples)
    return c.center + c.radius * np.exp(2j * np.pi * k / c.samples * c.sign)


@dataclass
class LaurentWindow:
    """Laurent coefficients a_k, k in [-n_max, n_max], from one contour.

    `scale` is the max sampled modulus; coefficient significance is always
    judged relative to max(1, scale).
    """

    coefficients: dict = field(repr=False)
    scale: float = 0.0
    contour: CircleContour = None

    def __getitem__(self, k: int) -> complex:
        return self.coefficients[k]

    @property
    def n_max(self) -> int:
        return max(self.coefficients)

    def significant(self, rel_tol: float = 1e-8):
        """Indices whose coefficient modulus exceeds rel_tol*max(1, scale)."""
        thr = rel_tol * max(1.0, self.scale)
        return sorted(k for k, v in self.coefficients.items() if abs(v) > thr)

    def significant_negative(self, rel_tol: float = 1e-8):
        return [k for k in self.significant(rel_tol) if k < 0]


def laurent_coefficients(values, c: CircleContour, n_max: int) -> LaurentWindow:
    """Standard Laurent coefficients of a function sampled on the contour.

    a_k = (1/2*pi*i) * integral of F(l)/(l-center)^(k+1) dl over the
    positively oriented circle, approximated by the trapezoid rule on the
    m samples.  The contour's own orientation is folded into the transform
    sign, so the returned coefficients are standard either way.  Indices
    must satisfy 2*n_max < samples to stay clear of aliasing.
    """
    vals = np.asarray(values, dtype=complex)
    if vals.shape != (c.samples,):
        raise ContourError(
            f"expected {c.samples} samples matching the contour, got {vals.shape}"
        )
    if 2 * n_max >= c.samples:
        raise ContourError(f"n_max={n_max} too large for {c.samples} samples")
    if c.sign > 0:
        spec = np.fft.fft(vals) / c.samples
    else:
        spec = np.fft.ifft(vals)
    coeff = {}
    for k in range(-n_max, n_max + 1):
        coeff[k] = complex(spec[k % c.samples] / c.radius**k)
    scale = float(np.max(np.abs(vals)))
    return LaurentWindow(coefficients=coeff, scale=scale, contour=c)


def spectral_derivative(values, c: CircleContour) -> np.ndarray:
    """d/dlambda of a trajectory given by its contour samples.

    Differentiates the Fourier series in the contour angle and divides by
    dlambda/dtheta; accurate to spectral order for functions analytic in a
    neighbourhood of the contour.
    """
    vals = np.asarray(values, dtype=complex)
    if vals.shape != (c.samples,):
        raise ContourError(
            f"expected {c.samples} samples matching the contour, got {vals.shape}"
        )
    freq = np.fft.fftfreq(c.samples, d=1.0 / c.samples)
    dtheta = np.fft.ifft(np.fft.fft(vals) * (1j * freq))
    pts = contour_points(c)
    dlam = 1j * c.sign * (pts - c.center)
    return dtheta / dlam


def winding_count(f_values, fprime_values, c: CircleContour, target: complex,
                  snap_tol: float = WINDING_SNAP_TOL):
    """Integer (1/2*pi*i) * contour integral of f'/(f - target), with residual.

    Respects the contour orientation: on a negatively oriented circle a pole
    of order p at an interior point yields +p, a zero of order p yields -p.
    Returns (count, residual).  Raises WindingError when the raw integral is
    farther than snap_tol from any integer.
    """
    fv = np.asarray(f_values, dtype=complex)
    fp = np.asarray(fprime_values, dtype=complex)
    if fv.shape != (c.samples,) or fp.shape != (c.samples,):
        raise ContourError("sample arrays must match the contour sample count")
    denom = fv - target
    if np.any(denom == 0):
        raise WindingError("target lies on the sampled curve")
    integrand = fp / denom
    k = np.arange(c.samples)
    phase = np.exp(2j * np.pi * k / c.samples * c.sign)
    raw = (c.sign * c.radius / c.samples) * np.sum(integrand * phase)
    count = int(np.round(raw.real))
    residual = abs(raw - count)
    if residual > snap_tol:
        raise WindingError(
            f"contour too coarse or target on curve (residual {residual:.3g})"
        )
    return count, float(residual)


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with coefficients in ascending degree; Horner evaluation."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients",
                           tuple(complex(v) for v in self.coefficients))
        if not self.coefficients:
            raise ValueError("polynomial needs at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for coef in reversed(self.coefficients):
            acc = acc * z + coef
        return acc


def newton_root(f, fprime, guess: complex, tol: float = 1e-12,
                max_iter: int = 100) -> complex:
    """Newton iteration for a simple root of an analytic function.

    Converges when the guess lies in the root's Newton basin; raises
    NewtonError on derivative blow-up or budget exhaustion.
    """
    z = complex(guess)
    for _ in range(max_iter):
        fz = f(z)
        if abs(fz) < tol:
            return z
        dz = fprime(z)
        if dz == 0 or not cmath.isfinite(dz):
            raise NewtonError(f"no convergence from guess {guess}")
        step = fz / dz
        if not cmath.isfinite(step):
            raise NewtonError(f"no convergence from guess {guess}")
        z = z - step
    raise NewtonError(f"no convergence from guess {guess}")
