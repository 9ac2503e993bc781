# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled classification kernel.

Statement-for-statement port of _kernel_py.py; see that module for the region
code table and border precedence.  Kept free of third-party C APIs: inputs
arrive as Python sequences of floats, outputs are array('d') / array('q')
buffers filled through typed memoryviews.
"""
from cpython cimport array
import array

from libc.math cimport fabs, sqrt

DEF R1_SADDLE = 0
DEF R2_SOURCE_REAL_STRADDLE = 1
DEF R3_SADDLE_NEG = 2
DEF R4_1_SINK_REAL = 3
DEF R4_2_SINK_COMPLEX = 4
DEF R4_3_SOURCE_COMPLEX = 5
DEF R4_4_SOURCE_REAL = 6
DEF R4_5_BOTH_BELOW_MINUS1 = 7
DEF BORDER_SADDLE_NODE = 8
DEF BORDER_FLIP = 9
DEF BORDER_HOPF = 10
DEF BORDER_DISCRIMINANT = 11


cdef inline (int, int) _classify(double t, double d, double border_tol) noexcept nogil:
    cdef double p1 = 1.0 - t + d
    cdef double pm1 = 1.0 + t + d
    cdef double disc = t * t - 4.0 * d
    cdef double s, m1, m2, thresh
    cdef int stable, code

    if disc >= 0.0:
        s = sqrt(disc)
        m1 = fabs((t - s) / 2.0)
        m2 = fabs((t + s) / 2.0)
    else:
        m1 = m2 = sqrt(d)
    thresh = 1.0 - border_tol
    stable = (1 if m1 < thresh else 0) + (1 if m2 < thresh else 0)

    if fabs(p1) <= border_tol:
        return BORDER_SADDLE_NODE, stable
    if fabs(pm1) <= border_tol:
        return BORDER_FLIP, stable
    if fabs(d - 1.0) <= border_tol and disc < 0.0:
        return BORDER_HOPF, stable
    if fabs(disc) <= border_tol:
        return BORDER_DISCRIMINANT, stable

    if p1 < 0.0:
        code = R1_SADDLE if pm1 > 0.0 else R2_SOURCE_REAL_STRADDLE
    elif pm1 < 0.0:
        code = R3_SADDLE_NEG
    elif disc < 0.0:
        code = R4_2_SINK_COMPLEX if d < 1.0 else R4_3_SOURCE_COMPLEX
    elif d < 1.0:
        code = R4_1_SINK_REAL
    elif t > 0.0:
        code = R4_4_SOURCE_REAL
    else:
        code = R4_5_BOTH_BELOW_MINUS1
    return code, stable


def classify_point(double t, double d, double border_tol):
    """Return (region code, stable eigenvalue count) for trace t, determinant d."""
    cdef int code, stable
    code, stable = _classify(t, d, border_tol)
    return code, stable


def classify_grid(double t_open, double d_open, double gamma,
                  double g_over_beta, double gk_over_beta,
                  f_pi_values, f_x_values, double border_tol):
    """Classify the full cartesian grid, f_pi outer, f_x inner, row-major."""
    cdef array.array fpis = array.array("d", f_pi_values)
    cdef array.array fxs = array.array("d", f_x_values)
    cdef Py_ssize_t npi = len(fpis), nx = len(fxs), n = npi * nx

    cdef array.array codes = array.array("q", bytes(8 * n))
    cdef array.array stable = array.array("q", bytes(8 * n))
    cdef array.array tr = array.array("d", bytes(8 * n))
    cdef array.array de = array.array("d", bytes(8 * n))
    cdef array.array re1 = array.array("d", bytes(8 * n))
    cdef array.array im1 = array.array("d", bytes(8 * n))
    cdef array.array re2 = array.array("d", bytes(8 * n))
    cdef array.array im2 = array.array("d", bytes(8 * n))
    cdef array.array mo1 = array.array("d", bytes(8 * n))
    cdef array.array mo2 = array.array("d", bytes(8 * n))

    cdef double[::1] vpi = fpis, vx = fxs
    cdef long long[::1] vcode = codes, vstab = stable
    cdef double[::1] vtr = tr, vde = de
    cdef double[::1] vre1 = re1, vim1 = im1, vre2 = re2, vim2 = im2
    cdef double[::1] vmo1 = mo1, vmo2 = mo2

    cdef Py_ssize_t i = 0, a, b
    cdef double f_pi, f_x, d_base, t, d, disc, s, lo, hi, im, re, mod
    cdef int code, ns
    with nogil:
        for a in range(npi):
            f_pi = vpi[a]
            d_base = d_open + gk_over_beta * f_pi
            for b in range(nx):
                f_x = vx[b]
                t = t_open + gamma * f_x
                d = d_base + g_over_beta * f_x
                code, ns = _classify(t, d, border_tol)
                disc = t * t - 4.0 * d
                if disc >= 0.0:
                    s = sqrt(disc)
                    lo = (t - s) / 2.0
                    hi = (t + s) / 2.0
                    vre1[i] = lo
                    vim1[i] = 0.0
                    vre2[i] = hi
                    vim2[i] = 0.0
                    vmo1[i] = fabs(lo)
                    vmo2[i] = fabs(hi)
                else:
                    im = sqrt(-disc) / 2.0
                    re = t / 2.0
                    mod = sqrt(d)
                    vre1[i] = re
                    vre2[i] = re
                    vim1[i] = -im
                    vim2[i] = im
                    vmo1[i] = mod
                    vmo2[i] = mod
                vcode[i] = code
                vstab[i] = ns
                vtr[i] = t
                vde[i] = d
                i += 1
    return codes, stable, tr, de, re1, im1, re2, im2, mo1, mo2
