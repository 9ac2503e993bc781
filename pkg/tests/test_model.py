import random

import numpy as np
import pytest

from nkpolicy import (
    MatrixVariant,
    ModelParams,
    PoleError,
    TaylorRule,
    build_matrices,
    closed_loop,
    kalman_controllability_rank,
    open_loop_trace_det,
    transfer_function,
)


class TestModelParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            ModelParams(beta=0.0)
        with pytest.raises(ValueError):
            ModelParams(beta=1.2)
        with pytest.raises(ValueError):
            ModelParams(rho_z=1.0)
        with pytest.raises(ValueError):
            ModelParams(rho_u=-1.5)

    def test_sigma_inverse_of_gamma(self):
        p = ModelParams(gamma=0.5)
        assert p.sigma * p.gamma == pytest.approx(1.0, abs=1e-15)
        with pytest.raises(ValueError):
            _ = ModelParams(gamma=0.0).sigma


class TestBuildMatrices:
    def test_text_top_left(self, text_params):
        m = build_matrices(text_params)
        assert m.a_yy.a11 == pytest.approx(1.0505, abs=1e-4)

    def test_appendix_top_left(self, appa_params):
        m = build_matrices(appa_params)
        assert m.a_yy.a11 == pytest.approx(0.9495, abs=1e-4)

    def test_instrument_loading(self):
        rng = random.Random(3)
        for _ in range(100):
            p = ModelParams(gamma=rng.uniform(-2, 2), kappa=rng.uniform(-1, 1),
                            beta=rng.uniform(0.5, 1.0))
            m = build_matrices(p)
            assert m.b_y == (p.gamma, 0.0)

    def test_shared_blocks(self, text_params, appa_params):
        mt, ma = build_matrices(text_params), build_matrices(appa_params)
        g, b = 0.5, 0.99
        assert mt.a_yz.entries() == (-1.0, g / b, 0.0, -1.0 / b)
        assert mt.a_yz == ma.a_yz
        assert mt.a_zz.entries() == (0.9, 0.0, 0.0, 0.9)

    def test_variant_difference_is_only_top_left(self):
        rng = random.Random(17)
        for _ in range(200):
            g, k = rng.uniform(-2, 2), rng.uniform(-1, 1)
            b = rng.uniform(0.5, 1.0)
            mt = build_matrices(ModelParams(gamma=g, kappa=k, beta=b))
            ma = build_matrices(ModelParams(gamma=g, kappa=k, beta=b,
                                            variant=MatrixVariant.APPENDIX_A))
            diff = mt.a_yy - ma.a_yy
            assert diff.a11 == pytest.approx(2 * g * k / b, rel=1e-13)
            assert diff.a12 == diff.a21 == diff.a22 == 0.0


class TestControllability:
    def test_baseline_rank_two(self, text_params):
        m = build_matrices(text_params)
        assert kalman_controllability_rank(m.a_yy, m.b_y) == 2

    def test_gamma_zero_rank_zero(self):
        m = build_matrices(ModelParams(gamma=0.0))
        assert kalman_controllability_rank(m.a_yy, m.b_y) == 0

    def test_kappa_zero_rank_one(self):
        m = build_matrices(ModelParams(kappa=0.0))
        assert kalman_controllability_rank(m.a_yy, m.b_y) == 1

    def test_rank_of_random_params(self):
        rng = random.Random(41)
        for _ in range(1000):
            g = rng.choice([-1, 1]) * rng.uniform(0.05, 2.0)
            k = rng.choice([-1, 1]) * rng.uniform(0.05, 1.0)
            b = rng.uniform(0.5, 1.0)
            m = build_matrices(ModelParams(gamma=g, kappa=k, beta=b))
            assert kalman_controllability_rank(m.a_yy, m.b_y) == 2


class TestClosedLoop:
    def test_zero_rule_is_open_loop(self, text_params):
        m = build_matrices(text_params)
        assert closed_loop(m, TaylorRule(0.0, 0.0)) == m.a_yy

    def test_first_row_shift(self, text_params):
        m = build_matrices(text_params)
        rule = TaylorRule(f_x=0.7, f_pi=-0.3)
        cl = closed_loop(m, rule)
        assert cl.a11 == pytest.approx(m.a_yy.a11 + 0.5 * 0.7, rel=1e-15)
        assert cl.a12 == pytest.approx(m.a_yy.a12 - 0.5 * 0.3, rel=1e-15)

    def test_second_row_bit_identical(self):
        rng = random.Random(29)
        for _ in range(200):
            p = ModelParams(gamma=rng.uniform(-2, 2), kappa=rng.uniform(-1, 1))
            m = build_matrices(p)
            cl = closed_loop(m, TaylorRule(rng.uniform(-9, 9), rng.uniform(-9, 9)))
            assert cl.a21 == m.a_yy.a21 and cl.a22 == m.a_yy.a22


class TestTransferFunction:
    def test_value_at_zero(self, text_params):
        tf = transfer_function(text_params)
        # -(gamma + gamma*kappa)/beta divided by D(A) = -(gamma + gamma*kappa)
        assert tf.evaluate(0.0) == pytest.approx(-0.550, abs=1e-3)

    def test_numerator_root(self, text_params):
        tf = transfer_function(text_params)
        root = (1.0 + 0.1) / 0.99
        num = tf.numerator[0] * root + tf.numerator[1]
        assert abs(num) < 1e-14

    def test_denominator_coefficients(self, text_params):
        tf = transfer_function(text_params)
        t_a, d_a = open_loop_trace_det(text_params)
        assert tf.denominator == (1.0, -t_a, d_a)
        assert -tf.denominator[1] == pytest.approx(2.0606, abs=1e-4)
        assert tf.denominator[2] == pytest.approx(1.0101, abs=1e-4)

    def test_matches_resolvent(self, text_params):
        # oracle follows the defining display: -(1,1) (A - sI)^{-1} B
        tf = transfer_function(text_params)
        m = build_matrices(text_params)
        a = np.array([[m.a_yy.a11, m.a_yy.a12], [m.a_yy.a21, m.a_yy.a22]])
        b = np.array([m.b_y[0], m.b_y[1]])
        c = np.array([-1.0, -1.0])
        rng = random.Random(6)
        checked = 0
        while checked < 100:
            s = rng.uniform(-10, 10)
            den = s * s + tf.denominator[1] * s + tf.denominator[2]
            if abs(den) < 1e-3:
                continue
            direct = c @ np.linalg.solve(a - s * np.eye(2), b)
            assert tf.evaluate(s) == pytest.approx(direct, abs=1e-10)
            checked += 1

    def test_pole_raises(self, text_params):
        tf = transfer_function(text_params)
        rep_roots = np.roots(tf.denominator)
        with pytest.raises(PoleError):
            tf.evaluate(float(rep_roots[0].real))

    def test_requires_text_variant(self, appa_params):
        with pytest.raises(ValueError):
            transfer_function(appa_params)
