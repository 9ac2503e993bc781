"""Interpreted classification kernel.

Classifies points of the rule plane by the signs of p(1), p(-1), D - 1 and
the discriminant of the closed-loop characteristic polynomial.  The compiled
kernel in _kernel_cy.pyx mirrors this logic statement for statement; parity is
enforced by tests, so any change here must be ported there.

Region codes (stable across backends):
    0 R1_saddle                p(1)<0, p(-1)>0, -1 < l1 < 1 < l2
    1 R2_source_real_straddle  p(1)<0, p(-1)<0, l1 < -1, 1 < l2
    2 R3_saddle_neg            p(1)>0, p(-1)<0, l1 < -1 < l2 < 1
    3 R4_1_sink_real           real, both inside the unit interval
    4 R4_2_sink_complex        complex pair, modulus < 1
    5 R4_3_source_complex      complex pair, modulus > 1
    6 R4_4_source_real         real, both above +1
    7 R4_5_both_below_minus1   real, both below -1
    8 Border_SaddleNode        |p(1)| <= tol
    9 Border_Flip              |p(-1)| <= tol
   10 Border_Hopf              |D - 1| <= tol with discriminant < 0
   11 Border_Discriminant      |discriminant| <= tol

Border checks run in the order above; the first hit wins.
"""
from __future__ import annotations

import math

R1_SADDLE = 0
R2_SOURCE_REAL_STRADDLE = 1
R3_SADDLE_NEG = 2
R4_1_SINK_REAL = 3
R4_2_SINK_COMPLEX = 4
R4_3_SOURCE_COMPLEX = 5
R4_4_SOURCE_REAL = 6
R4_5_BOTH_BELOW_MINUS1 = 7
BORDER_SADDLE_NODE = 8
BORDER_FLIP = 9
BORDER_HOPF = 10
BORDER_DISCRIMINANT = 11


def classify_point(t: float, d: float, border_tol: float) -> tuple[int, int]:
    """Return (region code, stable eigenvalue count) for trace t, determinant d."""
    p1 = 1.0 - t + d
    pm1 = 1.0 + t + d
    disc = t * t - 4.0 * d

    if disc >= 0.0:
        s = math.sqrt(disc)
        m1 = abs((t - s) / 2.0)
        m2 = abs((t + s) / 2.0)
    else:
        m1 = m2 = math.sqrt(d)
    thresh = 1.0 - border_tol
    stable = (1 if m1 < thresh else 0) + (1 if m2 < thresh else 0)

    if abs(p1) <= border_tol:
        return BORDER_SADDLE_NODE, stable
    if abs(pm1) <= border_tol:
        return BORDER_FLIP, stable
    if abs(d - 1.0) <= border_tol and disc < 0.0:
        return BORDER_HOPF, stable
    if abs(disc) <= border_tol:
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


def classify_grid(t_open: float, d_open: float, gamma: float,
                  g_over_beta: float, gk_over_beta: float,
                  f_pi_values, f_x_values, border_tol: float):
    """Classify the full cartesian grid, f_pi outer, f_x inner, row-major.

    Returns columnar sequences:
    (codes, stable, trace, det, re1, im1, re2, im2, mod1, mod2).
    """
    n = len(f_pi_values) * len(f_x_values)
    codes = [0] * n
    stable = [0] * n
    tr = [0.0] * n
    de = [0.0] * n
    re1 = [0.0] * n
    im1 = [0.0] * n
    re2 = [0.0] * n
    im2 = [0.0] * n
    mo1 = [0.0] * n
    mo2 = [0.0] * n
    sqrt = math.sqrt
    i = 0
    for f_pi in f_pi_values:
        d_base = d_open + gk_over_beta * f_pi
        for f_x in f_x_values:
            t = t_open + gamma * f_x
            d = d_base + g_over_beta * f_x
            code, ns = classify_point(t, d, border_tol)
            disc = t * t - 4.0 * d
            if disc >= 0.0:
                s = sqrt(disc)
                lo = (t - s) / 2.0
                hi = (t + s) / 2.0
                re1[i] = lo
                re2[i] = hi
                mo1[i] = abs(lo)
                mo2[i] = abs(hi)
            else:
                im = sqrt(-disc) / 2.0
                re = t / 2.0
                mod = sqrt(d)
                re1[i] = re
                re2[i] = re
                im1[i] = -im
                im2[i] = im
                mo1[i] = mod
                mo2[i] = mod
            codes[i] = code
            stable[i] = ns
            tr[i] = t
            de[i] = d
            i += 1
    return codes, stable, tr, de, re1, im1, re2, im2, mo1, mo2
