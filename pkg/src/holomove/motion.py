"""Motion samples and their analysis at a punctured parameter.

A MotionSample is the discrete stand-in for a holomorphic motion: a finite
set of marked points with their trajectories over a finite parameter set,
the identity at the base parameter.  On top of it sit the pivot
normalization fixing two trajectories, the f/g extraction with
H = f + g*tilde_H, per-trajectory extendability classification at the
puncture (holomorphic / pole / essential within the window), the explosion
decomposition H = P + (lambda - marked)^n * hat_H, the motion-vs-explosion
dichotomy and the entire-parameter-plane affinity probe.
"""

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .contour import (CircleContour, LaurentWindow, Polynomial, WindingError,
                      contour_points, laurent_coefficients,
                      spectral_derivative, winding_count)

__all__ = [
    "CorollaryVerdict",
    "ExplosionDecomposition",
    "ExtendabilityVerdict",
    "MotionError",
    "MotionReport",
    "MotionSample",
    "check_affine_over_plane",
    "classify_extension",
    "corollary_classify",
    "decompose_explosion",
    "extract_fg",
    "load_csv",
    "load_json",
    "normalize_tilde",
    "save_csv",
    "save_json",
    "spot_check_holomorphic",
    "validate_motion",
]

# coefficient significance threshold, relative to max(1, scale)
SIGNIFICANCE_REL = 1e-8
DEFAULT_N_MAX = 32


class MotionError(ValueError):
    """Structural problem with a motion sample or its analysis inputs."""


@dataclass(frozen=True)
class MotionSample:
    """Trajectories H(param_points[j], e_points[i]) = values[j, i].

    base_param must appear among param_points with an identity column;
    marked_param is the puncture under study.  e_connected is a declared
    flag: connectedness of the moving set cannot be verified from finitely
    many points, but the decomposition theorem requires it.
    """

    base_param: complex
    marked_param: complex
    param_points: np.ndarray
    e_points: np.ndarray
    values: np.ndarray
    e_connected: bool = False

    def __post_init__(self):
        object.__setattr__(self, "param_points",
                           np.asarray(self.param_points, dtype=complex))
        object.__setattr__(self, "e_points",
                           np.asarray(self.e_points, dtype=complex))
        object.__setattr__(self, "values",
                           np.asarray(self.values, dtype=complex))
        if self.values.shape != (len(self.param_points), len(self.e_points)):
            raise MotionError(
                f"values shape {self.values.shape} does not match "
                f"{len(self.param_points)} parameters x {len(self.e_points)} points")
        if len(self.e_points) < 2:
            raise MotionError("need at least two moving points")
        if len(set(self.e_points.tolist())) != len(self.e_points):
            raise MotionError("moving points must be distinct")

    @property
    def base_index(self) -> int:
        hits = np.where(self.param_points == complex(self.base_param))[0]
        if hits.size == 0:
            raise MotionError("base parameter not among the parameter points")
        return int(hits[0])

    def trajectory(self, i: int) -> np.ndarray:
        return self.values[:, i]


@dataclass
class MotionReport:
    violations: list

    @property
    def clean(self) -> bool:
        return not self.violations


def validate_motion(m: MotionSample) -> MotionReport:
    """Check the base-identity and vertical-injectivity conditions on samples."""
    violations = []
    try:
        j0 = m.base_index
    except MotionError as exc:
        return MotionReport([("base", str(exc))])
    if not np.array_equal(m.values[j0], m.e_points):
        bad = np.where(m.values[j0] != m.e_points)[0]
        violations.append(("identity_at_base",
                           f"column at base differs at indices {bad.tolist()}"))
    for j, lam in enumerate(m.param_points):
        row = m.values[j]
        if len(set(row.tolist())) != len(row):
            violations.append(("injectivity",
                               f"duplicate values at parameter {lam}"))
    return MotionReport(violations)


def spot_check_holomorphic(provider, lam: complex, z: complex,
                           h: float = 1e-5) -> float:
    """Relative conjugate-derivative of lambda -> provider(lambda, z).

    Finite-difference Cauchy-Riemann probe for trajectory providers: the
    returned ratio |dH/d(conj lambda)| / |dH/d(lambda)| is ~0 for a
    horizontally holomorphic provider and ~1 for an anti-holomorphic one.
    """
    fx = (provider(lam + h, z) - provider(lam - h, z)) / (2 * h)
    fy = (provider(lam + 1j * h, z) - provider(lam - 1j * h, z)) / (2 * h)
    d_bar = 0.5 * (fx + 1j * fy)
    d = 0.5 * (fx - 1j * fy)
    return abs(d_bar) / max(abs(d), 1e-300)


def _pivot_values(m: MotionSample, i0: int, i1: int):
    if i0 == i1:
        raise MotionError("pivot indices must differ")
    z0, z1 = m.e_points[i0], m.e_points[i1]
    h0, h1 = m.values[:, i0], m.values[:, i1]
    denom = h1 - h0
    if np.any(denom == 0):
        raise MotionError("pivot trajectories collide at a sampled parameter")
    return z0, z1, h0, h1, denom


def normalize_tilde(m: MotionSample, i0: int, i1: int) -> MotionSample:
    """Post-compose each fiber with the affine map pinning pivots i0, i1.

    The result fixes the trajectories of z0 and z1 at the constants z0 and
    z1, and agrees with the original motion at the base parameter.
    """
    z0, z1, h0, h1, denom = _pivot_values(m, i0, i1)
    tilde = z0 + (z1 - z0) * (m.values - h0[:, None]) / denom[:, None]
    return replace(m, values=tilde)


def extract_fg(m: MotionSample, i0: int, i1: int):
    """The affine-fiber data (f, g) with H = f + g * tilde_H.

    f = H^{z0} - z0*(H^{z1}-H^{z0})/(z1-z0), g = (H^{z1}-H^{z0})/(z1-z0);
    when the base identity holds, f(base) = 0 and g(base) = 1 exactly.
    """
    z0, z1, h0, h1, denom = _pivot_values(m, i0, i1)
    g = denom / (z1 - z0)
    f = h0 - z0 * g
    return f, g


@dataclass
class ExtendabilityVerdict:
    """Per-trajectory behaviour at the puncture, as far as the window sees.

    kind "holomorphic" carries the limit value; "pole" carries the order;
    "essential" is explicitly only "up to n_max": deeper structure is
    invisible in a finite Laurent window.
    """

    kind: str
    limit: complex = None
    order: int = None
    n_max: int = None
    evidence: LaurentWindow = None
    winding: int = None

    @property
    def holomorphic(self) -> bool:
        return self.kind == "holomorphic"


def classify_extension(values, contour: CircleContour, targets,
                       n_max: int = DEFAULT_N_MAX) -> ExtendabilityVerdict:
    """Classify one trajectory sampled on a contour around the puncture.

    No significant negative Laurent coefficient: holomorphic with the
    constant term as limit.  Otherwise the winding count of the trajectory
    around each target (values the trajectory provably avoids) must be a
    clean integer: when it matches the deepest significant index the
    singularity is a pole of that order; a self-consistent mismatch means
    the data cannot be meromorphic, reported as essential up to the window.
    A non-integer winding signals under-sampling and raises instead.
    """
    n_max = min(n_max, (contour.samples - 1) // 2)
    window = laurent_coefficients(values, contour, n_max)
    negative = window.significant_negative(SIGNIFICANCE_REL)
    if not negative:
        return ExtendabilityVerdict(kind="holomorphic", limit=window[0],
                                    evidence=window, n_max=n_max)
    depth = -min(negative)
    derivative = spectral_derivative(values, contour)
    winds = []
    for t in targets:
        try:
            n, _ = winding_count(values, derivative, contour, t)
        except WindingError as exc:
            raise MotionError(f"inconsistent evidence: {exc}") from exc
        winds.append(n)
    # a pole dominates every avoided target identically, so clean integer
    # windings that depend on the target certify non-meromorphic data
    if len(set(winds)) != 1:
        return ExtendabilityVerdict(kind="essential", n_max=n_max,
                                    evidence=window, winding=winds[0])
    wind = winds[0]
    if wind == depth and wind > 0:
        return ExtendabilityVerdict(kind="pole", order=depth, evidence=window,
                                    winding=wind, n_max=n_max)
    if wind > depth:
        raise MotionError(
            f"inconsistent evidence: winding {wind} exceeds Laurent depth {depth}")
    return ExtendabilityVerdict(kind="essential", n_max=n_max, evidence=window,
                                winding=wind)


@dataclass
class ExplosionDecomposition:
    """Fitted local form H = P(l - l*) + (l - l*)^n * hat_H(l, z).

    hat_motion is the underlying motion re-based at the puncture, moving the
    set hat_H(l*, E); reparam_psi samples (hat_H at the puncture)^{-1} as a
    value table over E for the alternative formulation report.
    """

    order: int
    poly: Polynomial
    f_taylor: LaurentWindow
    g_taylor: LaurentWindow
    hat_motion: MotionSample
    residual: float
    pivots: tuple
    trajectory_limits: np.ndarray
    reparam_psi: dict = field(default_factory=dict)


def _choose_pivots(m: MotionSample):
    """Pivot pair maximizing separation; ties resolved by index order."""
    n = len(m.e_points)
    best = None
    best_sep = -1.0
    for i in range(n):
        for j in range(i + 1, n):
            sep = abs(m.e_points[i] - m.e_points[j])
            if sep > best_sep + 1e-15:
                best, best_sep = (i, j), sep
    return best


def decompose_explosion(m: MotionSample, contour: CircleContour,
                        n_max: int = DEFAULT_N_MAX,
                        pivots: tuple = None) -> ExplosionDecomposition:
    """Fit order, polynomial part and normalized motion at the puncture.

    Requires the declared connectedness flag and per-trajectory holomorphic
    extendability (checked; anything else raises).  The order n is the
    winding-counted zero order of g at the puncture, cross-checked against
    g's leading Taylor index; P collects the first n Taylor coefficients of
    f.  hat_H = (H - P)/(l - l*)^n is re-based at the puncture using the
    extracted constant terms.
    """
    if not m.e_connected:
        raise MotionError(
            "decomposition requires the moving-set connectedness flag")
    pts = contour_points(contour)
    atol = 1e-12 * (abs(contour.center) + contour.radius)
    if pts.shape != m.param_points.shape \
            or not np.allclose(pts, m.param_points, rtol=0, atol=atol):
        raise MotionError("motion sample is not aligned with the contour")
    if contour.center != complex(m.marked_param):
        raise MotionError("contour must be centered at the marked parameter")
    n_max = min(n_max, (contour.samples - 1) // 2)

    if pivots is None:
        pivots = _choose_pivots(m)
    i0, i1 = pivots
    z0, z1 = m.e_points[i0], m.e_points[i1]

    tilde = normalize_tilde(m, i0, i1)
    limits = np.empty(len(m.e_points), dtype=complex)
    for i in range(len(m.e_points)):
        if i == i0:
            limits[i] = z0
            continue
        if i == i1:
            limits[i] = z1
            continue
        verdict = classify_extension(tilde.values[:, i], contour, (z0, z1), n_max)
        if not verdict.holomorphic:
            raise MotionError(
                f"not horizontally extendable: trajectory {i} is {verdict.kind}")
        limits[i] = verdict.limit

    f_samples, g_samples = extract_fg(m, i0, i1)
    for name, samples in (("f", f_samples), ("g", g_samples)):
        pivot_window = laurent_coefficients(samples, contour, n_max)
        if pivot_window.significant_negative(SIGNIFICANCE_REL):
            raise MotionError(
                f"not horizontally extendable: {name} has negative Laurent mass")

    g_window = laurent_coefficients(g_samples, contour, n_max)
    g_sig = g_window.significant(SIGNIFICANCE_REL)
    if not g_sig:
        raise MotionError("degenerate input: g vanishes identically on samples")
    g_deriv = spectral_derivative(g_samples, contour)
    wind, _ = winding_count(g_samples, g_deriv, contour, 0.0)
    order = -wind if contour.orientation == "negative" else wind
    if order < 0:
        raise MotionError(f"g winds as a pole (order {order}); bad input")
    leading = min(k for k in g_sig if k >= 0)
    if leading != order:
        raise MotionError(
            f"inconsistent evidence: g zero order {order} vs leading Taylor index {leading}")

    f_window = laurent_coefficients(f_samples, contour, n_max)
    poly = Polynomial(tuple(f_window[k] for k in range(order))) if order > 0 \
        else Polynomial((0j,))

    rel = m.param_points - complex(m.marked_param)
    p_vals = np.array([poly(r) for r in rel]) if order > 0 else np.zeros_like(rel)
    hat_values = (m.values - p_vals[:, None]) / (rel**order)[:, None]

    f_hat_star = f_window[order]
    g_hat_star = g_window[order]
    hat_base = f_hat_star + g_hat_star * limits
    hat_motion = MotionSample(
        base_param=complex(m.marked_param),
        marked_param=complex(m.marked_param),
        param_points=np.concatenate([[complex(m.marked_param)], m.param_points]),
        e_points=hat_base,
        values=np.vstack([hat_base[None, :], hat_values]),
        e_connected=m.e_connected,
    )

    recon = p_vals[:, None] + (rel**order)[:, None] * hat_values
    residual = float(np.max(np.abs(m.values - recon)))

    # sampled (hat_H at the puncture)^{-1}: maps exploded coordinates back to E
    reparam = {complex(hat_base[i]): complex(m.e_points[i])
               for i in range(len(m.e_points))}

    return ExplosionDecomposition(
        order=order, poly=poly, f_taylor=f_window, g_taylor=g_window,
        hat_motion=hat_motion, residual=residual, pivots=(i0, i1),
        trajectory_limits=limits, reparam_psi=reparam,
    )


@dataclass(frozen=True)
class CorollaryVerdict:
    """motion_extension (limits stay injective) or explosion_to (collapse)."""

    kind: str
    point: complex = None


def corollary_classify(limits, f_limit: complex = None,
                       tol: float = 1e-9) -> CorollaryVerdict:
    """Dichotomy at the puncture from the trajectory limit values.

    All limits distinct: the extension is again a motion.  All limits equal:
    everything collapses to that point (and f's limit must agree when
    supplied).  A partial collapse is inconsistent with the theory and
    raises.
    """
    limits = np.asarray(limits, dtype=complex)
    if len(limits) < 2:
        raise MotionError("need at least two trajectory limits")
    scale = max(1.0, float(np.max(np.abs(limits))))
    n = len(limits)
    equal_pairs = sum(
        1 for i in range(n) for j in range(i + 1, n)
        if abs(limits[i] - limits[j]) <= tol * scale)
    total_pairs = n * (n - 1) // 2
    if equal_pairs == 0:
        return CorollaryVerdict(kind="motion_extension")
    if equal_pairs == total_pairs:
        z_star = complex(np.mean(limits))
        if f_limit is not None and abs(f_limit - z_star) > tol * scale:
            raise MotionError(
                f"inconsistent evidence: f limit {f_limit} vs collapse point {z_star}")
        return CorollaryVerdict(kind="explosion_to", point=z_star)
    raise MotionError("inconsistent evidence: limits neither injective nor collapsed")


def check_affine_over_plane(samples_by_radius, pivots=(0, 1)):
    """Deviation of the normalized motion from the identity over a radius ladder.

    For a motion genuinely defined over the whole plane the normalized form
    must be the identity, so dev(R) stays at zero; growth of dev with R
    exposes a motion that only lives on a bounded disk.  Input: mapping of
    radius -> MotionSample on parameters filling |lambda| <= R.
    """
    devs = {}
    for radius, m in sorted(samples_by_radius.items()):
        tilde = normalize_tilde(m, *pivots)
        devs[radius] = float(np.max(np.abs(tilde.values - m.e_points[None, :])))
    return devs


# ---------------------------------------------------------------------------
# serialization

def _cpx(z: complex):
    return [z.real, z.imag]


def _uncpx(pair) -> complex:
    return complex(pair[0], pair[1])


def save_json(m: MotionSample, path):
    doc = {
        "format": "holomove-motion/1",
        "base_param": _cpx(complex(m.base_param)),
        "marked_param": _cpx(complex(m.marked_param)),
        "e_connected": bool(m.e_connected),
        "param_points": [_cpx(z) for z in m.param_points.tolist()],
        "e_points": [_cpx(z) for z in m.e_points.tolist()],
        "values": [[_cpx(v) for v in row] for row in m.values.tolist()],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)
    return path


def load_json(path) -> MotionSample:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("format") != "holomove-motion/1":
        raise MotionError(f"not a motion-sample document: {path}")
    return MotionSample(
        base_param=_uncpx(doc["base_param"]),
        marked_param=_uncpx(doc["marked_param"]),
        e_connected=doc["e_connected"],
        param_points=[_uncpx(p) for p in doc["param_points"]],
        e_points=[_uncpx(p) for p in doc["e_points"]],
        values=[[_uncpx(v) for v in row] for row in doc["values"]],
    )


def save_csv(m: MotionSample, path):
    """Column-oriented table: lambda pair then one value pair per moving point.

    The base parameter's row is written first so the moving set can be
    recovered from the table alone; puncture and connectedness flag travel
    separately (use the JSON format for full fidelity).
    """
    order = [m.base_index] + [j for j in range(len(m.param_points))
                              if j != m.base_index]
    cols = ["lambda_re", "lambda_im"]
    for i in range(len(m.e_points)):
        cols += [f"h{i}_re", f"h{i}_im"]
    lines = [",".join(cols)]
    for j in order:
        row = [repr(float(m.param_points[j].real)),
               repr(float(m.param_points[j].imag))]
        for v in m.values[j]:
            row += [repr(float(v.real)), repr(float(v.imag))]
        lines.append(",".join(row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def load_csv(path, marked_param: complex = 0j,
             e_connected: bool = False) -> MotionSample:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    header = lines[0].split(",")
    n_points = (len(header) - 2) // 2
    params, rows = [], []
    for ln in lines[1:]:
        cells = [float(c) for c in ln.split(",")]
        params.append(complex(cells[0], cells[1]))
        rows.append([complex(cells[2 + 2 * i], cells[3 + 2 * i])
                     for i in range(n_points)])
    return MotionSample(
        base_param=params[0],
        marked_param=marked_param,
        param_points=params,
        e_points=rows[0],
        values=rows,
        e_connected=e_connected,
    )
