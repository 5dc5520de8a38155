"""Pure-numpy iteration kernels: the fallback backend.

Same contracts as the compiled extension; vectorized over the pixel block
with active-set compaction.  Labels: 0 escaped/out, 1 attracted/in,
2 undecided-at-budget.  Steps record the deciding iteration (max_iter when
none).
"""

import numpy as np

from ..families import entire_core_np

BACKEND = "python"

# shared with holomove.boettcher.classify_orbit
_OVERFLOW_RE = 345.0
_ESCAPE_MOD = 1e15
_CYCLE_TOL = 1e-12


def mandelbrot(xs, ys, max_iter, escape_radius=2.0):
    """Escape-time classification of z^2 + c over the pixel block."""
    c = (np.asarray(xs)[None, :] + 1j * np.asarray(ys)[:, None]).ravel()
    z = np.zeros_like(c)
    labels = np.ones(c.shape, dtype=np.uint8)
    steps = np.full(c.shape, max_iter, dtype=np.int32)
    idx = np.arange(c.size)
    for k in range(max_iter):
        if idx.size == 0:
            break
        az2 = z.real * z.real + z.imag * z.imag
        esc = az2 > escape_radius * escape_radius
        if esc.any():
            labels[idx[esc]] = 0
            steps[idx[esc]] = k
            keep = ~esc
            idx, z, c = idx[keep], z[keep], c[keep]
        z = z * z + c
    h, w = len(ys), len(xs)
    return labels.reshape(h, w), steps.reshape(h, w)


def locus_g(lam, xs, ys, max_iter, escape_radius=1e6, pole_cutoff=1e-14):
    """Bounded-orbit test of both critical points of (z+sqrt(A)+1/z)/lam.

    A pixel is in the locus when either critical orbit survives the budget
    below the escape radius; a visit within pole_cutoff of the pole counts
    as escape to the attracting fixed point at infinity.
    """
    A = (np.asarray(xs)[None, :] + 1j * np.asarray(ys)[:, None]).ravel()
    B = np.sqrt(A.astype(complex))
    labels = np.zeros(A.shape, dtype=np.uint8)
    steps = np.zeros(A.shape, dtype=np.int32)
    for crit in (1.0, -1.0):
        todo = labels == 0
        z = np.full(A.shape, crit, dtype=complex)
        idx = np.where(todo)[0]
        z_act = z[idx]
        for k in range(max_iter):
            if idx.size == 0:
                break
            mod = np.abs(z_act)
            # negated two-sided test so NaN terminates as escaped
            out = ~((mod <= escape_radius) & (mod >= pole_cutoff))
            if out.any():
                steps[idx[out]] = np.maximum(steps[idx[out]], k)
                keep = ~out
                idx, z_act = idx[keep], z_act[keep]
            if idx.size == 0:
                break
            z_act = (z_act + B[idx] + 1.0 / z_act) / lam
        labels[idx] = 1
        steps[idx] = max_iter
    h, w = len(ys), len(xs)
    return labels.reshape(h, w), steps.reshape(h, w)


def _fa_orbit_block(a, z, max_iter):
    """Shared orbit classifier for the entire family: a, z are flat arrays.

    Terminal events: entry into the contraction disk (attracted, label 1),
    real part or modulus beyond the reliable range (label 0), a Brent cycle
    revisit outside the disk (label 0), or budget exhaustion (label 2).
    """
    n = z.size
    labels = np.full(n, 2, dtype=np.uint8)
    steps = np.full(n, max_iter, dtype=np.int32)
    rho = 1.0 / (2.0 + 2.0 * np.abs(a))
    idx = np.arange(n)
    check = z.copy()
    power = np.ones(n, dtype=np.int64)
    lam = np.zeros(n, dtype=np.int64)
    a_act, rho_act = a.copy(), rho.copy()
    check_act, power_act, lam_act = check, power, lam
    for k in range(max_iter):
        if idx.size == 0:
            break
        mod = np.abs(z)
        att = mod < rho_act
        blow = (~att) & ((z.real > _OVERFLOW_RE) | (mod > _ESCAPE_MOD))
        done = att | blow
        if done.any():
            labels[idx[att]] = 1
            labels[idx[blow]] = 0
            steps[idx[done]] = k
            keep = ~done
            idx, z, a_act, rho_act = idx[keep], z[keep], a_act[keep], rho_act[keep]
            check_act, power_act, lam_act = check_act[keep], power_act[keep], lam_act[keep]
        if idx.size == 0:
            break
        z = a_act * entire_core_np(z)
        lam_act = lam_act + 1
        cyc = np.abs(z - check_act) < _CYCLE_TOL * np.maximum(1.0, np.abs(z))
        if cyc.any():
            labels[idx[cyc]] = 0
            steps[idx[cyc]] = k
            keep = ~cyc
            idx, z, a_act, rho_act = idx[keep], z[keep], a_act[keep], rho_act[keep]
            check_act, power_act, lam_act = check_act[keep], power_act[keep], lam_act[keep]
        if idx.size == 0:
            break
        reset = lam_act == power_act
        if reset.any():
            check_act = np.where(reset, z, check_act)
            power_act = np.where(reset, power_act * 2, power_act)
            lam_act = np.where(reset, 0, lam_act)
    return labels, steps


def param_fa(xs, ys, max_iter):
    """Orbit of the asymptotic value a under f_a, per parameter pixel."""
    a = (np.asarray(xs)[None, :] + 1j * np.asarray(ys)[:, None]).ravel()
    z = a.copy()
    zero = a == 0
    labels, steps = _fa_orbit_block(np.where(zero, 1.0, a), np.where(zero, 1.0, z),
                                    max_iter)
    labels[zero] = 0
    steps[zero] = 0
    h, w = len(ys), len(xs)
    return labels.reshape(h, w), steps.reshape(h, w)


def dyn_fa(a, xs, ys, max_iter):
    """Orbit of each pixel z under f_a at fixed parameter a."""
    z = (np.asarray(xs)[None, :] + 1j * np.asarray(ys)[:, None]).ravel()
    a_arr = np.full(z.shape, complex(a))
    labels, steps = _fa_orbit_block(a_arr, z, max_iter)
    h, w = len(ys), len(xs)
    return labels.reshape(h, w), steps.reshape(h, w)
