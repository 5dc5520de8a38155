# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled iteration kernels: the hot per-pixel escape-time loops.

Scalar twins of the numpy fallback in _kernels_py; same labels (0 out,
1 in/attracted, 2 undecided) and step provenance.  All loops run without
the GIL so the tile scheduler can use plain threads.
"""

import numpy as np

cimport cython
from libc.math cimport atan2, cos, exp, hypot, log, sin

BACKEND = "compiled"

cdef double OVERFLOW_RE = 345.0
cdef double ESCAPE_MOD = 1e15
cdef double CYCLE_TOL = 1e-12

# Taylor coefficients of e^z(z-1)+1 around 0 (degree 2..25); the closed form
# cancels catastrophically for small |z|
cdef double[24] CORE_COEF
cdef double _fact = 1.0
cdef int _i
for _i in range(2, 26):
    _fact *= _i
    CORE_COEF[_i - 2] = (_i - 1.0) / _fact


cdef inline double complex entire_core_c(double complex z) noexcept nogil:
    cdef double complex acc
    cdef double complex ez
    cdef int i
    if z.real * z.real + z.imag * z.imag <= 0.25:
        acc = 0
        for i in range(23, -1, -1):
            acc = acc * z + CORE_COEF[i]
        return acc * z * z
    ez = exp(z.real) * (cos(z.imag) + 1j * sin(z.imag))
    return ez * (z - 1.0) + 1.0


def mandelbrot(xs, ys, int max_iter, double escape_radius=2.0):
    cdef double[:] xv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[:] yv = np.ascontiguousarray(ys, dtype=np.float64)
    cdef int w = xv.shape[0], h = yv.shape[0]
    labels_arr = np.zeros((h, w), dtype=np.uint8)
    steps_arr = np.zeros((h, w), dtype=np.int32)
    cdef unsigned char[:, :] labels = labels_arr
    cdef int[:, :] steps = steps_arr
    cdef double esc2 = escape_radius * escape_radius
    cdef int i, j, k
    cdef double complex c, z
    with nogil:
        for i in range(h):
            for j in range(w):
                c = xv[j] + 1j * yv[i]
                z = 0
                labels[i, j] = 1
                steps[i, j] = max_iter
                for k in range(max_iter):
                    if z.real * z.real + z.imag * z.imag > esc2:
                        labels[i, j] = 0
                        steps[i, j] = k
                        break
                    z = z * z + c
    return labels_arr, steps_arr


def locus_g(double complex lam, xs, ys, int max_iter,
            double escape_radius=1e6, double pole_cutoff=1e-14):
    cdef double[:] xv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[:] yv = np.ascontiguousarray(ys, dtype=np.float64)
    cdef int w = xv.shape[0], h = yv.shape[0]
    labels_arr = np.zeros((h, w), dtype=np.uint8)
    steps_arr = np.zeros((h, w), dtype=np.int32)
    cdef unsigned char[:, :] labels = labels_arr
    cdef int[:, :] steps = steps_arr
    cdef int i, j, k, ci
    cdef double complex A, B
    cdef double esc2 = escape_radius * escape_radius
    cdef double pole2 = pole_cutoff * pole_cutoff
    cdef double ilr = (lam.real / (lam.real * lam.real + lam.imag * lam.imag))
    cdef double ili = (-lam.imag / (lam.real * lam.real + lam.imag * lam.imag))
    cdef double zr, zi, m2, wr, wi
    cdef bint survived
    with nogil:
        for i in range(h):
            for j in range(w):
                A = xv[j] + 1j * yv[i]
                B = _csqrt(A)
                labels[i, j] = 0
                steps[i, j] = 0
                for ci in range(2):
                    zr = 1.0 if ci == 0 else -1.0
                    zi = 0.0
                    survived = True
                    for k in range(max_iter):
                        m2 = zr * zr + zi * zi
                        if not (m2 <= esc2 and m2 >= pole2):
                            survived = False
                            if k > steps[i, j]:
                                steps[i, j] = k
                            break
                        # (z + B + 1/z) * (1/lam), all in real parts
                        wr = zr + B.real + zr / m2
                        wi = zi + B.imag - zi / m2
                        zr = wr * ilr - wi * ili
                        zi = wr * ili + wi * ilr
                    if survived:
                        labels[i, j] = 1
                        steps[i, j] = max_iter
                        break
    return labels_arr, steps_arr


cdef inline double complex _csqrt(double complex z) noexcept nogil:
    # principal square root
    cdef double m = hypot(z.real, z.imag)
    cdef double a = atan2(z.imag, z.real) * 0.5
    cdef double r = m ** 0.5
    return r * cos(a) + 1j * (r * sin(a))


cdef inline int _fa_orbit(double complex a, double complex z, int max_iter,
                          unsigned char * label, int * step) noexcept nogil:
    """Orbit of z under f_a; writes label/step, mirrors _fa_orbit_block."""
    cdef double rho = 1.0 / (2.0 + 2.0 * hypot(a.real, a.imag))
    cdef double rho2 = rho * rho
    cdef double esc2 = ESCAPE_MOD * ESCAPE_MOD
    cdef double tol2 = CYCLE_TOL * CYCLE_TOL
    cdef double complex check = z
    cdef long power = 1, lam_cnt = 0
    cdef double m2, ref2, dr, di
    cdef int k
    for k in range(max_iter):
        m2 = z.real * z.real + z.imag * z.imag
        if m2 < rho2:
            label[0] = 1
            step[0] = k
            return 0
        if z.real > OVERFLOW_RE or m2 > esc2:
            label[0] = 0
            step[0] = k
            return 0
        z = a * entire_core_c(z)
        lam_cnt += 1
        ref2 = z.real * z.real + z.imag * z.imag
        if ref2 < 1.0:
            ref2 = 1.0
        dr = z.real - check.real
        di = z.imag - check.imag
        if dr * dr + di * di < tol2 * ref2:
            label[0] = 0
            step[0] = k
            return 0
        if lam_cnt == power:
            check = z
            power *= 2
            lam_cnt = 0
    label[0] = 2
    step[0] = max_iter
    return 0


def param_fa(xs, ys, int max_iter):
    cdef double[:] xv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[:] yv = np.ascontiguousarray(ys, dtype=np.float64)
    cdef int w = xv.shape[0], h = yv.shape[0]
    labels_arr = np.zeros((h, w), dtype=np.uint8)
    steps_arr = np.zeros((h, w), dtype=np.int32)
    cdef unsigned char[:, :] labels = labels_arr
    cdef int[:, :] steps = steps_arr
    cdef int i, j
    cdef double complex a
    cdef unsigned char lab
    cdef int st
    with nogil:
        for i in range(h):
            for j in range(w):
                a = xv[j] + 1j * yv[i]
                if a.real == 0 and a.imag == 0:
                    labels[i, j] = 0
                    steps[i, j] = 0
                    continue
                _fa_orbit(a, a, max_iter, &lab, &st)
                labels[i, j] = lab
                steps[i, j] = st
    return labels_arr, steps_arr


def dyn_fa(double complex a, xs, ys, int max_iter):
    cdef double[:] xv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[:] yv = np.ascontiguousarray(ys, dtype=np.float64)
    cdef int w = xv.shape[0], h = yv.shape[0]
    labels_arr = np.zeros((h, w), dtype=np.uint8)
    steps_arr = np.zeros((h, w), dtype=np.int32)
    cdef unsigned char[:, :] labels = labels_arr
    cdef int[:, :] steps = steps_arr
    cdef int i, j
    cdef unsigned char lab
    cdef int st
    with nogil:
        for i in range(h):
            for j in range(w):
                _fa_orbit(a, xv[j] + 1j * yv[i], max_iter, &lab, &st)
                labels[i, j] = lab
                steps[i, j] = st
    return labels_arr, steps_arr
