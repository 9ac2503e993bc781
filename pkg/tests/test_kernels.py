"""Backend parity: the compiled kernel must agree with the interpreted one."""
import random

import pytest

from nkpolicy import ModelParams, kernels
from nkpolicy import _kernel_py as kpy
from nkpolicy.stability import plane_coefficients, grid_axis

try:
    from nkpolicy import _kernel_cy as kcy
except ImportError:
    kcy = None

needs_compiled = pytest.mark.skipif(kcy is None, reason="extension not built")


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "interpreted")
    if kcy is not None:
        assert kernels.BACKEND == "compiled"


@needs_compiled
class TestParity:
    def test_classify_point_random(self):
        rng = random.Random(101)
        for _ in range(20000):
            t = rng.uniform(-6, 6)
            d = rng.uniform(-6, 6)
            assert kcy.classify_point(t, d, 1e-9) == kpy.classify_point(t, d, 1e-9)

    def test_classify_point_exact_borders(self):
        # points constructed to sit exactly on each reference line
        cases = []
        rng = random.Random(33)
        for _ in range(500):
            t = rng.uniform(-4, 4)
            cases.append((t, t - 1.0))        # p(1) = 0
            cases.append((t, -1.0 - t))       # p(-1) = 0
            cases.append((t, 1.0))            # D = 1
            cases.append((t, t * t / 4.0))    # discriminant = 0
        for t, d in cases:
            assert kcy.classify_point(t, d, 1e-9) == kpy.classify_point(t, d, 1e-9)

    def test_classify_grid_columns_match(self):
        p = ModelParams()
        t_a, d_a, g, g_ob, gk_ob = plane_coefficients(p)
        fpi = grid_axis((-2.0, 85.0), 60)
        fx = grid_axis((-9.0, 2.0), 40)
        a = kcy.classify_grid(t_a, d_a, g, g_ob, gk_ob, fpi, fx, 1e-9)
        b = kpy.classify_grid(t_a, d_a, g, g_ob, gk_ob, fpi, fx, 1e-9)
        for col_a, col_b in zip(a, b):
            assert list(col_a) == pytest.approx(list(col_b), rel=0, abs=0)

    def test_grid_matches_pointwise(self):
        p = ModelParams()
        t_a, d_a, g, g_ob, gk_ob = plane_coefficients(p)
        fpi = grid_axis((0.0, 3.0), 7)
        fx = grid_axis((-1.0, 1.0), 5)
        codes, stable, tr, de, *_ = kcy.classify_grid(
            t_a, d_a, g, g_ob, gk_ob, fpi, fx, 1e-9)
        i = 0
        for f_pi in fpi:
            d_base = d_a + gk_ob * f_pi  # kernels hoist this per row
            for f_x in fx:
                t = t_a + g * f_x
                d = d_base + g_ob * f_x
                assert (codes[i], stable[i]) == kcy.classify_point(t, d, 1e-9)
                assert tr[i] == t and de[i] == d
                i += 1
