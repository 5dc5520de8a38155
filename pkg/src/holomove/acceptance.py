"""The verification suite: one callable per acceptance criterion.

Each criterion function takes a profile ("full" runs the stated parameters
and tolerances, "fast" shrinks resolutions and sample counts for a quick
smoke run) and returns a CriterionResult.  The CLI `verify` subcommand and
tests/test_acceptance.py both run these; tolerances live here, pinned, and
nowhere else.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import applications, boettcher, families, hyperbolic, motion, render
from .contour import laurent_coefficients
from .render import (LABEL_IN, LABEL_OUT, RenderSpec, bounding_radius,
                     component_count, hausdorff_pixels)

__all__ = ["CriterionResult", "SuiteReport", "criteria_ids", "run_criterion",
           "run_suite"]


@dataclass
class CriterionResult:
    cid: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    runtime: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.cid:2d} {self.name} ({self.runtime:.1f}s)"

    def as_dict(self) -> dict:
        return {
            "id": self.cid,
            "name": self.name,
            "pass": self.passed,
            "runtime_s": round(self.runtime, 3),
            "tolerances": _jsonable(self.tolerances),
            "details": _jsonable(self.details),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.complexfloating):
        return [obj.real.item(), obj.imag.item()]
    return obj


@dataclass
class SuiteReport:
    suite: str
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "pass": self.passed,
            "criteria": [r.as_dict() for r in self.results],
        }


# shared raster cache: criteria 12 and 14 reuse the same component render
_RASTER_CACHE = {}


def _render_cached(spec: RenderSpec, workers=None):
    key = spec.key()
    if key not in _RASTER_CACHE:
        _RASTER_CACHE[key] = render.render(spec, workers=workers)
    return _RASTER_CACHE[key]


_DECOMP_CACHE = {}


def _app1_decomposition(samples: int):
    if samples not in _DECOMP_CACHE:
        m, contour = applications.basin_motion_sample(radius=100.0, samples=samples)
        _DECOMP_CACHE[samples] = (m, contour,
                                  motion.decompose_explosion(m, contour))
    return _DECOMP_CACHE[samples]


def _rng():
    return np.random.default_rng(20260809)


def _disk_draws(rng, n, radius):
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    th = rng.uniform(0, 2 * math.pi, n)
    return r * np.exp(1j * th)


# ---------------------------------------------------------------------------
# criteria

def crit_01_symmetric_identity(profile):
    """sigma3 = sigma1 - 2 across random multiplier data."""
    tol, budget = 1e-9, 1.0
    rng = _rng()
    n = 1000
    lams = _disk_draws(rng, n, 1.0)
    As = _disk_draws(rng, n, 10.0)
    worst = 0.0
    for lam, A in zip(lams, As):
        if lam == 0:
            continue
        fp = families.fixed_points_G(families.RationalParam(lam, A))
        worst = max(worst, abs(fp.sigma3 - (fp.sigma1 - 2)))
    return worst < tol, {"max_error": worst, "draws": n}, \
        {"max_error": tol, "runtime_s": budget}


def crit_02_multiplier_product(profile):
    """Finite multiplier product equals ((lam-2)^2 - A)/lam^2."""
    tol, budget = 1e-8, 1.0
    rng = _rng()
    n = 1000
    lams = _disk_draws(rng, n, 1.0)
    As = _disk_draws(rng, n, 10.0)
    worst = 0.0
    for lam, A in zip(lams, As):
        if lam == 0:
            continue
        fp = families.fixed_points_G(families.RationalParam(lam, A))
        product = fp.multipliers[1] * fp.multipliers[2]
        worst = max(worst, abs(product - families.sigma_of_A(lam, A)))
    return worst < tol, {"max_error": worst, "draws": n}, \
        {"max_error": tol, "runtime_s": budget}


def crit_03_mu_A_consistency(profile):
    """Known collapses of the mu<->A change of coordinates plus round trips."""
    tol_exact, tol_round = 1e-12, 1e-10
    rng = _rng()
    worst_exact = 0.0
    for lam in _disk_draws(rng, 50, 0.95):
        if lam == 0:
            continue
        worst_exact = max(worst_exact,
                          abs(families.A_of_mu(lam, 0.0) - (lam - 2) ** 2),
                          abs(families.A_of_mu(lam, 1.0) - (4 - 4 * lam)))
    worst_round = 0.0
    for lam, mu in zip(_disk_draws(rng, 200, 0.95), _disk_draws(rng, 200, 3.0)):
        if lam == 0 or abs(1 - lam * mu) < 1e-3:
            continue
        A = families.A_of_mu(lam, mu)
        back = families.mu_of_A(lam, A)
        worst_round = max(worst_round, min(abs(back[0] - mu), abs(back[1] - mu)))
    ok = worst_exact < tol_exact and worst_round < tol_round
    return ok, {"max_exact_error": worst_exact, "max_roundtrip_error": worst_round}, \
        {"exact": tol_exact, "roundtrip": tol_round}


def _chart_points(chart, count):
    # two rings of disk coordinates inside the validated radius
    ws = []
    for k in range(count):
        r = 0.35 if k % 2 == 0 else 0.65
        ws.append(r * np.exp(2j * math.pi * k / count))
    return [chart.parameter(w) for w in ws]


def crit_04_chart_normalization(profile):
    """Coordinate derivative a/2 at 0 and the conjugacy residual on chart points."""
    tol_deriv, tol_feq, budget = 1e-6, 1e-8, 5.0
    n_points = 50 if profile == "full" else 12
    params = (6, 10 + 4j, 40)
    worst_d, worst_f = 0.0, 0.0
    for a in params:
        chart = boettcher.get_chart(complex(a))
        h = 1e-5
        deriv = (chart.coordinate(h) - chart.coordinate(-h)) / (2 * h)
        worst_d = max(worst_d, abs(deriv - a / 2))
        for z in _chart_points(chart, n_points):
            fz = a * families.entire_core(z)
            worst_f = max(worst_f, abs(chart.coordinate(fz) - chart.coordinate(z) ** 2))
    ok = worst_d < tol_deriv and worst_f < tol_feq
    return ok, {"max_derivative_error": worst_d, "max_conjugacy_residual": worst_f,
                "params": list(params), "points_per_param": n_points}, \
        {"derivative": tol_deriv, "conjugacy": tol_feq, "runtime_s": budget}


def crit_05_motion_leading_term(profile):
    """d/dz of the basin motion at 0 equals a0/a."""
    tol = 1e-6
    a0 = 6.0
    worst = 0.0
    for a in (8.0, 20j, 50.0):
        h = 1e-6
        d = (boettcher.motion_H(a0, a, h) - boettcher.motion_H(a0, a, -h)) / (2 * h)
        worst = max(worst, abs(d - a0 / a) / abs(a0 / a))
    return worst < tol, {"max_rel_error": worst, "a0": a0}, {"rel_error": tol}


def crit_06_distortion_bound(profile):
    """|hat_H(a,w)| <= |w|/(1-|w|)^2 with zero violations."""
    n = 500 if profile == "full" else 60
    rng = _rng()
    violations = 0
    worst_margin = -math.inf
    for a in (20.0, 100.0):
        ws = 0.8 * np.sqrt(rng.uniform(0, 1, n)) * np.exp(1j * rng.uniform(0, 2 * math.pi, n))
        for w in ws:
            val = abs(boettcher.hat_H(a, complex(w)))
            bound = abs(w) / (1 - abs(w)) ** 2
            worst_margin = max(worst_margin, val - bound)
            if val > bound:
                violations += 1
    return violations == 0, {"violations": violations, "samples_per_param": n,
                             "worst_margin": worst_margin}, {"violations": 0}


def crit_07_order1_explosion(profile):
    """Basin motion decomposes with order 1 and leading coefficients 2w."""
    tol_rel, budget = 1e-3, 30.0
    samples = 128 if profile == "full" else 64
    m, contour, decomp = _app1_decomposition(samples)
    checks = {"order": decomp.order}
    worst = 0.0
    for w in (0.1, 0.3j):
        idx = applications.DEFAULT_W_POINTS.index(w)
        window = laurent_coefficients(m.values[:, idx], contour, 8)
        worst = max(worst, abs(window[1] - 2 * w) / abs(2 * w))
    checks["max_rel_coeff_error"] = worst
    ok = decomp.order == 1 and worst < tol_rel
    return ok, checks, {"order": 1, "rel_coeff": tol_rel, "runtime_s": budget}


def crit_08_order2_explosion(profile):
    """Preimage-component motions: order 2, no linear term, quadratic coefficient."""
    tol_c1_rel, tol_c2_rel, budget = 1e-6, 1e-2, 60.0
    samples = 128 if profile == "full" else 64
    centers = families.basin_centers(1)
    details = {}
    ok = True
    for i in (1, -1):
        m, contour = applications.preimage_motion_sample(i, radius=100.0,
                                                         samples=samples)
        decomp = motion.decompose_explosion(m, contour)
        z_i = centers.point(i)
        entry = {"order": decomp.order,
                 "P0_error": abs(decomp.poly.coefficients[0] - z_i)}
        worst_c1, worst_c2 = 0.0, 0.0
        for w in (0.1, 0.3j):
            idx = applications.DEFAULT_W_POINTS.index(w)
            window = laurent_coefficients(m.values[:, idx], contour, 8)
            scale = max(1.0, window.scale)
            expected = 2 * w / (np.exp(z_i) * z_i)
            worst_c1 = max(worst_c1, abs(window[1]) / scale)
            worst_c2 = max(worst_c2, abs(window[2] - expected) / abs(expected))
        entry["max_c1_over_scale"] = worst_c1
        entry["max_c2_rel_error"] = worst_c2
        details[f"i={i}"] = entry
        ok = ok and decomp.order == 2 and worst_c1 < tol_c1_rel \
            and worst_c2 < tol_c2_rel
    return ok, details, {"order": 2, "c1_over_scale": tol_c1_rel,
                         "c2_rel": tol_c2_rel, "runtime_s": budget}


def crit_09_gallery(profile):
    """Counterexample gallery: pole, collapsed limits, essential window."""
    budget = 5.0
    details = {}
    m_h, contour_h = applications.gallery_meromorphic()
    verdict_pole = motion.classify_extension(m_h.values[:, 2], contour_h,
                                             targets=(0j, 1 / math.e))
    details["third_trajectory"] = {"kind": verdict_pole.kind,
                                   "order": verdict_pole.order}

    m_g, contour_g = applications.gallery_collapsing()
    limits = []
    for i in range(3):
        v = motion.classify_extension(m_g.values[:, i], contour_g,
                                      targets=(0.5, 1.0))
        if not v.holomorphic:
            limits = None
            break
        limits.append(v.limit)
    collapsed = limits is not None and \
        max(abs(l) for l in limits) < 1e-9 and \
        len({round(l.real, 6) for l in limits}) == 1
    details["collapsing_limits"] = limits

    m_e, contour_e = applications.essential_gallery()
    verdict_ess = motion.classify_extension(m_e.values[:, 0], contour_e,
                                            targets=(-5.0, 7j))
    details["essential"] = {"kind": verdict_ess.kind, "n_max": verdict_ess.n_max}

    ok = verdict_pole.kind == "pole" and verdict_pole.order == 1 \
        and collapsed and verdict_ess.kind == "essential" \
        and verdict_ess.n_max == 32
    return ok, details, {"pole_order": 1, "essential_window": 32,
                         "runtime_s": budget}


def _synthetic_explosion(lam_star=0.3 + 0.1j, radius=0.25, samples=128):
    from .contour import CircleContour, contour_points

    contour = CircleContour(center=lam_star, radius=radius, samples=samples,
                            orientation="negative")
    lam = contour_points(contour)
    lam0 = complex(lam[0])
    e_points = np.array([0.2, 1.3, -0.6 + 0.8j, 2.1 - 0.4j], dtype=complex)
    f_star = lam - lam0
    g_star = ((lam - lam_star) / (lam0 - lam_star)) ** 2
    values = f_star[:, None] + g_star[:, None] * e_points[None, :]
    m = motion.MotionSample(
        base_param=lam0, marked_param=complex(lam_star), param_points=lam,
        e_points=e_points, values=values, e_connected=True)
    expected_poly = (lam_star - lam0, 1.0 + 0j)
    return m, contour, expected_poly


def crit_10_decomposition_uniqueness(profile):
    """Synthetic round trip recovers order and polynomial; pivot independence."""
    tol_p, tol_pivot = 1e-8, 1e-6
    m, contour, expected = _synthetic_explosion()
    decomp = motion.decompose_explosion(m, contour)
    p_err = max(abs(a - b) for a, b in zip(decomp.poly.coefficients, expected))
    pivot_errs = []
    orders = {decomp.order}
    for pivots in ((0, 1), (0, 2), (1, 2)):
        d2 = motion.decompose_explosion(m, contour, pivots=pivots)
        orders.add(d2.order)
        pivot_errs.append(max(abs(a - b) for a, b in
                              zip(d2.poly.coefficients, decomp.poly.coefficients)))
    ok = decomp.order == 2 and p_err < tol_p and orders == {2} \
        and max(pivot_errs) < tol_pivot
    return ok, {"order": decomp.order, "poly_error": p_err,
                "pivot_errors": pivot_errs}, \
        {"poly": tol_p, "pivot_independence": tol_pivot}


def crit_11_dichotomy(profile):
    """Basin data collapses to 0; the multiplier-product line stays a motion."""
    tol = 1e-6
    samples = 128 if profile == "full" else 64
    m, contour, decomp = _app1_decomposition(samples)
    limits = []
    for i in range(len(m.e_points)):
        v = motion.classify_extension(m.values[:, i], contour,
                                      targets=(5.0, -3j))
        limits.append(v.limit)
    verdict1 = motion.corollary_classify(limits, f_limit=decomp.poly(0j))
    ok1 = verdict1.kind == "explosion_to" and abs(verdict1.point) < tol

    m2, contour2 = applications.sigma_line_motion_sample()
    limits2 = []
    for i in range(2):
        v = motion.classify_extension(m2.values[:, i], contour2,
                                      targets=(5.0, -3j))
        limits2.append(v.limit)
    verdict2 = motion.corollary_classify(limits2)
    ok2 = verdict2.kind == "motion_extension"
    return ok1 and ok2, {"basin": {"kind": verdict1.kind, "point": verdict1.point},
                         "sigma_line": {"kind": verdict2.kind}}, \
        {"collapse_point": tol}


def crit_12_figures(profile):
    """Component raster bounded off the frame and single; locus window pixels."""
    budget = 180.0
    res = 512 if profile == "full" else 192
    spec_c0 = RenderSpec(-10, 10, -10, 10, res, res, "param_plane_fa",
                         max_iter=2000)
    raster = _render_cached(spec_c0)
    in_mask = raster.labels == LABEL_IN
    nonempty = bool(in_mask.any())
    boundary_free = not (in_mask[0, :].any() or in_mask[-1, :].any()
                         or in_mask[:, 0].any() or in_mask[:, -1].any())
    single = component_count(raster, LABEL_IN) == 1

    lam = math.exp(-1)
    spec_locus = RenderSpec(1, 5, -2, 2, res, res, "locus_g",
                            param=complex(lam), max_iter=2000)
    locus = _render_cached(spec_locus)
    center_pix = locus.labels[locus.spec.pixel_of((lam - 2) ** 2)]
    root_pix = locus.labels[locus.spec.pixel_of(4 - 4 * lam)]
    spec_zero = RenderSpec(-0.2, 0.2, -0.2, 0.2, 16, 16, "locus_g",
                           param=complex(lam), max_iter=2000)
    zero_win = render.render(spec_zero)
    zero_pix = zero_win.labels[zero_win.spec.pixel_of(0j)]

    ok = nonempty and boundary_free and single \
        and center_pix == LABEL_IN and root_pix == LABEL_IN \
        and zero_pix == LABEL_OUT
    return ok, {"component_nonempty": nonempty, "boundary_free": boundary_free,
                "single_component": single,
                "center_in_locus": int(center_pix), "root_in_locus": int(root_pix),
                "origin_in_locus": int(zero_pix), "resolution": res}, \
        {"runtime_s": budget}


def crit_13_locus_convergence(profile):
    """Rescaled loci approach the four-times-scaled quadratic locus."""
    budget = 300.0
    res = 512 if profile == "full" else 192
    max_iter = 1000
    # sigma-plane window comfortably containing the scaled quadratic locus
    sx0, sx1, sy0, sy1 = -9.0, 1.8, -5.6, 5.6
    spec_m = RenderSpec(sx0 / 4, sx1 / 4, sy0 / 4, sy1 / 4, res, res,
                        "mandelbrot", max_iter=max_iter)
    mandel = _render_cached(spec_m)
    dists = []
    for lam in (0.2, 0.1, 0.05):
        c0 = (lam - 2) ** 2
        corners = c0 - lam * lam * np.array(
            [complex(sx0, sy0), complex(sx0, sy1), complex(sx1, sy0), complex(sx1, sy1)])
        spec_l = RenderSpec(corners.real.min(), corners.real.max(),
                            corners.imag.min(), corners.imag.max(),
                            res, res, "locus_g", param=complex(lam),
                            max_iter=max_iter)
        locus = _render_cached(spec_l)
        d = hausdorff_pixels(locus, mandel,
                             transform=(-1.0 / lam**2, c0 / lam**2),
                             transform_b=(4.0, 0.0))
        dists.append(d)
    decreasing = dists[0] > dists[1] > dists[2]
    return decreasing, {"hausdorff": dists, "lambdas": [0.2, 0.1, 0.05],
                        "resolution": res}, \
        {"strictly_decreasing": True, "runtime_s": budget}


def crit_14_dilatation_pipeline(profile):
    """Dilatation bounds from the measured component radius, monotone in |a|."""
    res = 512 if profile == "full" else 192
    spec_c0 = RenderSpec(-10, 10, -10, 10, res, res, "param_plane_fa",
                         max_iter=2000)
    raster = _render_cached(spec_c0)
    r0 = bounding_radius(raster, LABEL_IN) * 1.1
    estimates = [hyperbolic.K_upper_bound(a, r0) for a in (15.0, 30.0, 60.0)]
    ks = [e.k_upper for e in estimates]
    monotone = ks[0] > ks[1] > ks[2]
    exp_log = max(abs(math.exp(e.d_upper) - e.k_upper) for e in estimates)
    ok = monotone and exp_log < 1e-12 and all(k > 1 for k in ks)
    return ok, {"r0": r0, "k_upper": ks, "exp_log_gap": exp_log}, \
        {"monotone": True, "exp_log": 1e-12}


def crit_15_determinism(profile):
    """Byte-identical rasters across worker counts."""
    res = 256 if profile == "full" else 128
    spec = RenderSpec(-10, 10, -10, 10, res, res, "param_plane_fa",
                      max_iter=800)
    blobs = []
    for workers in (1, 4, 8):
        r = render.render(spec, workers=workers)
        blobs.append(r.labels.tobytes() + r.steps.tobytes())
    identical = blobs[0] == blobs[1] == blobs[2]
    return identical, {"worker_counts": [1, 4, 8], "resolution": res},  \
        {"identical": True}


_CRITERIA = [
    (1, "symmetric-function identity", crit_01_symmetric_identity),
    (2, "multiplier-product closed form", crit_02_multiplier_product),
    (3, "mu/A coordinate consistency", crit_03_mu_A_consistency),
    (4, "chart normalization and conjugacy", crit_04_chart_normalization),
    (5, "motion leading term", crit_05_motion_leading_term),
    (6, "distortion bound", crit_06_distortion_bound),
    (7, "order-1 explosion fit", crit_07_order1_explosion),
    (8, "order-2 explosion fit", crit_08_order2_explosion),
    (9, "counterexample gallery", crit_09_gallery),
    (10, "decomposition uniqueness", crit_10_decomposition_uniqueness),
    (11, "extension dichotomy", crit_11_dichotomy),
    (12, "figure reproduction", crit_12_figures),
    (13, "locus convergence", crit_13_locus_convergence),
    (14, "dilatation bound pipeline", crit_14_dilatation_pipeline),
    (15, "render determinism", crit_15_determinism),
]


def criteria_ids():
    return [cid for cid, _, _ in _CRITERIA]


def run_criterion(cid: int, profile: str = "full") -> CriterionResult:
    for c, name, fn in _CRITERIA:
        if c == cid:
            start = time.perf_counter()
            passed, details, tolerances = fn(profile)
            elapsed = time.perf_counter() - start
            budget = tolerances.get("runtime_s")
            if budget is not None and profile == "full" and elapsed > budget:
                passed = False
                details["runtime_exceeded"] = elapsed
            return CriterionResult(cid=c, name=name, passed=bool(passed),
                                   details=details, tolerances=tolerances,
                                   runtime=elapsed)
    raise KeyError(f"no criterion {cid}")


def run_suite(suite: str = "full", ids=None, echo=print) -> SuiteReport:
    profile = "full" if suite == "full" else "fast"
    results = []
    for cid in (ids or criteria_ids()):
        result = run_criterion(cid, profile)
        if echo:
            echo(result.line())
        results.append(result)
    return SuiteReport(suite=suite, results=results)
