import random

import pytest

from nkpolicy import (
    DeterminacyClass,
    InterestRateTiming,
    MatrixVariant,
    ModelParams,
    NoAnchorError,
    PolePlacementMethod,
    RegionLabel,
    TaylorRule,
    UncontrollableError,
    anchor_from_rates,
    build_matrices,
    classify_determinacy,
    classify_region,
    closed_loop,
    discriminant_border,
    eig2,
    flip_border,
    hopf_border,
    is_negative_feedback_scalar,
    open_loop_trace_det,
    pole_place,
    rule_from_trace_det,
    saddle_node_border,
    scalar_accelerationist_bounds,
    sweep_grid,
    taylor_principle_holds,
    trace_det_from_rule,
    triangle_vertices,
)


def random_params(rng: random.Random, signs=(1, 1)) -> ModelParams:
    return ModelParams(gamma=signs[0] * rng.uniform(0.05, 2.0),
                       kappa=signs[1] * rng.uniform(0.05, 1.0),
                       beta=rng.uniform(0.5, 1.0))


class TestTraceDetMap:
    def test_open_loop_point(self, text_params):
        t, d = trace_det_from_rule(text_params, 0.0, 0.0)
        assert t == pytest.approx(2.0606, abs=1e-4)
        assert d == pytest.approx(1.0101, abs=1e-4)

    def test_point_a(self, text_params):
        t, d = trace_det_from_rule(text_params, -0.12, 1.01)
        assert t == pytest.approx(2.0, abs=1e-2)
        assert d == pytest.approx(1.0, abs=1e-2)

    def test_interior_point(self, text_params):
        t, d = trace_det_from_rule(text_params, 0.5, 1.5)
        assert t == pytest.approx(2.3106, abs=1e-4)
        assert d == pytest.approx(1.3384, abs=1e-4)

    def test_inverse_values(self, text_params):
        f_x, f_pi = rule_from_trace_det(text_params, 0.0, 0.0)
        assert f_x == pytest.approx(-4.12, abs=5e-3)
        assert f_pi == pytest.approx(21.21, abs=5e-3)
        f_x, f_pi = rule_from_trace_det(text_params, 2.0, 1.0)
        assert (f_x, f_pi) == (pytest.approx(-0.12, abs=5e-3),
                               pytest.approx(1.01, abs=5e-3))
        f_x, f_pi = rule_from_trace_det(text_params, -2.0, 1.0)
        assert (f_x, f_pi) == (pytest.approx(-8.12, abs=5e-3),
                               pytest.approx(81.0, abs=2e-2))

    def test_round_trip_both_variants(self):
        rng = random.Random(313)
        for variant in MatrixVariant:
            for _ in range(5000):
                p = ModelParams(gamma=rng.uniform(0.05, 2.0),
                                kappa=rng.uniform(0.05, 1.0),
                                beta=rng.uniform(0.5, 1.0), variant=variant)
                f_x = rng.uniform(-10, 10)
                f_pi = rng.uniform(-10, 90)
                t, d = trace_det_from_rule(p, f_x, f_pi)
                back = rule_from_trace_det(p, t, d)
                assert abs(back[0] - f_x) < 1e-12 * max(1.0, abs(f_x))
                assert abs(back[1] - f_pi) < 1e-11 * max(1.0, abs(f_pi))

    def test_uncontrollable(self):
        with pytest.raises(UncontrollableError):
            rule_from_trace_det(ModelParams(gamma=0.0), 1.0, 1.0)
        with pytest.raises(UncontrollableError):
            rule_from_trace_det(ModelParams(kappa=0.0), 1.0, 1.0)


class TestBorders:
    def test_hopf_examples(self, text_params):
        assert hopf_border(text_params, 1.01) == pytest.approx(-0.121, abs=2e-3)
        assert hopf_border(text_params, 81.0) == pytest.approx(-8.12, abs=2e-3)

    def test_hopf_through_origin_at_beta_one(self):
        p = ModelParams(beta=1.0)
        assert hopf_border(p, 0.0) == 0.0

    def test_saddle_node_examples(self, text_params):
        assert saddle_node_border(text_params, 0.0) == 1.0
        assert saddle_node_border(text_params, -0.12) == pytest.approx(1.012, abs=1e-3)
        assert saddle_node_border(text_params, -4.12) == pytest.approx(1.412, abs=1e-3)

    def test_flip_examples(self, text_params):
        assert flip_border(text_params, 81.0) == pytest.approx(-8.1211, abs=2e-3)
        assert flip_border(text_params, 1.41) == pytest.approx(-4.1211, abs=2e-3)

    def test_flip_degenerate_kappa_zero(self):
        p = ModelParams(gamma=2.0, kappa=0.0)
        assert flip_border(p, 0.0) == -1.0
        assert flip_border(p, 57.0) == -1.0

    def test_borders_satisfy_defining_equations(self):
        rng = random.Random(88)
        for variant in MatrixVariant:
            for _ in range(300):
                p = ModelParams(gamma=rng.uniform(0.05, 2.0),
                                kappa=rng.uniform(0.05, 1.0),
                                beta=rng.uniform(0.5, 1.0), variant=variant)
                f_pi = rng.uniform(-5, 50)
                f_x = hopf_border(p, f_pi)
                _, d = trace_det_from_rule(p, f_x, f_pi)
                assert abs(d - 1.0) < 1e-10
                f_x = rng.uniform(-10, 2)
                f_pi = saddle_node_border(p, f_x)
                t, d = trace_det_from_rule(p, f_x, f_pi)
                assert abs(1.0 - t + d) < 1e-10
                f_pi = rng.uniform(-5, 50)
                f_x = flip_border(p, f_pi)
                t, d = trace_det_from_rule(p, f_x, f_pi)
                assert abs(1.0 + t + d) < 1e-10

    def test_discriminant_border_examples(self, text_params):
        (f_pi,) = discriminant_border(text_params, -0.1212121212121211)
        assert f_pi == pytest.approx(1.0121, abs=1e-3)
        (f_pi,) = discriminant_border(text_params, -4.1212121212121211)
        assert f_pi == pytest.approx(21.2121, abs=1e-3)

    def test_discriminant_border_is_exact(self):
        rng = random.Random(14)
        for variant in MatrixVariant:
            for _ in range(200):
                p = ModelParams(gamma=rng.uniform(0.05, 2.0),
                                kappa=rng.uniform(0.05, 1.0),
                                beta=rng.uniform(0.5, 1.0), variant=variant)
                f_x = rng.uniform(-10, 10)
                sols = discriminant_border(p, f_x)
                assert len(sols) == 1
                t, d = trace_det_from_rule(p, f_x, sols[0])
                assert abs(t * t - 4.0 * d) < 1e-9

    def test_hopf_border_points_have_unit_modulus(self):
        # on D = 1 with complex roots both moduli are exactly one
        rng = random.Random(55)
        p = ModelParams()
        for _ in range(500):
            f_pi = rng.uniform(1.2, 75.0)
            f_x = hopf_border(p, f_pi)
            t, d = trace_det_from_rule(p, f_x, f_pi)
            if t * t - 4.0 * d < 0:
                rep = eig2(closed_loop(build_matrices(p),
                                       TaylorRule(f_x, f_pi)))
                assert abs(rep.modulus1 - 1.0) < 1e-9
                assert abs(rep.modulus2 - 1.0) < 1e-9


class TestTriangle:
    def test_table_values(self, text_params):
        v = triangle_vertices(text_params)
        assert v.a.f_pi == pytest.approx(1.01, abs=0.01)
        assert v.a.f_x == pytest.approx(-0.12, abs=0.01)
        assert v.b.f_pi == pytest.approx(81.0, abs=0.02)
        assert v.b.f_x == pytest.approx(-8.12, abs=0.01)
        assert v.c.f_pi == pytest.approx(1.41, abs=0.01)
        assert v.c.f_x == pytest.approx(-4.12, abs=0.01)
        assert v.omega.f_pi == pytest.approx(21.21, abs=0.01)
        assert v.omega.f_x == pytest.approx(-4.12, abs=0.01)
        assert v.origin.f_pi == 0.0 and v.origin.f_x == 0.0

    def test_vertices_on_defining_borders(self):
        rng = random.Random(4)
        for _ in range(200):
            p = random_params(rng)
            v = triangle_vertices(p)
            for vert, checks in (
                (v.a, ("p1", "d1")), (v.b, ("pm1", "d1")),
                (v.c, ("p1", "pm1")), (v.omega, ("t0", "d0")),
            ):
                t, d = trace_det_from_rule(p, vert.f_x, vert.f_pi)
                for check in checks:
                    if check == "p1":
                        assert abs(1.0 - t + d) < 1e-10
                    elif check == "pm1":
                        assert abs(1.0 + t + d) < 1e-10
                    elif check == "d1":
                        assert abs(d - 1.0) < 1e-10
                    elif check == "t0":
                        assert abs(t) < 1e-10
                    else:
                        assert abs(d) < 1e-10

    def test_origin_eigenvalues(self, text_params):
        o = triangle_vertices(text_params).origin
        assert o.eigen.lambda1.real == pytest.approx(0.8035, abs=5e-5)
        assert o.eigen.lambda2.real == pytest.approx(1.2571, abs=5e-5)

    def test_mirror_property(self):
        # flipping the signs of gamma and kappa negates F_x, keeps F_pi
        rng = random.Random(23)
        for _ in range(200):
            p = random_params(rng)
            q = ModelParams(gamma=-p.gamma, kappa=-p.kappa, beta=p.beta)
            vp, vq = triangle_vertices(p), triangle_vertices(q)
            for a, b in zip(vp, vq):
                assert a.f_pi == pytest.approx(b.f_pi, abs=1e-9)
                assert a.f_x == pytest.approx(-b.f_x, abs=1e-9)


class TestClassifyRegion:
    def test_origin_is_saddle(self, text_params):
        rc = classify_region(text_params, 0.0, 0.0)
        assert rc.label is RegionLabel.R1_SADDLE
        assert rc.stable_count == 1

    def test_plausible_rule_is_complex_source(self, text_params):
        rc = classify_region(text_params, 0.5, 1.5)
        assert rc.label is RegionLabel.R4_3_SOURCE_COMPLEX
        assert rc.eigen.modulus1 == pytest.approx(1.157, abs=1e-3)

    def test_optimal_gains_are_sink(self, appa_params):
        rc = classify_region(appa_params, -2.10, 3.03)
        assert rc.label in (RegionLabel.R4_1_SINK_REAL,
                            RegionLabel.R4_2_SINK_COMPLEX)
        assert rc.stable_count == 2

    def test_exact_border_hits(self, text_params):
        f_x = -1.0
        f_pi = saddle_node_border(text_params, f_x)
        assert classify_region(text_params, f_x, f_pi).label is \
            RegionLabel.BORDER_SADDLE_NODE
        f_pi = 30.0
        f_x = flip_border(text_params, f_pi)
        assert classify_region(text_params, f_x, f_pi).label is \
            RegionLabel.BORDER_FLIP
        f_pi = 40.0
        f_x = hopf_border(text_params, f_pi)
        assert classify_region(text_params, f_x, f_pi).label is \
            RegionLabel.BORDER_HOPF

    def test_brute_force_oracle(self):
        # labels recomputed from raw closed-loop eigenvalues must agree
        from helpers import eigen_oracle_label

        rng = random.Random(1234)
        for variant in MatrixVariant:
            for _ in range(5000):
                p = ModelParams(gamma=rng.uniform(0.05, 2.0),
                                kappa=rng.uniform(0.05, 1.0),
                                beta=rng.uniform(0.5, 1.0), variant=variant)
                f_x = rng.uniform(-10, 2)
                f_pi = rng.uniform(-2, 90)
                rc = classify_region(p, f_x, f_pi)
                if rc.label.is_border:
                    continue
                rep = eig2(closed_loop(build_matrices(p), TaylorRule(f_x, f_pi)))
                assert rc.label is eigen_oracle_label(rep)
                expected_stable = sum(
                    1 for m in rep.moduli() if m < 1.0 - 1e-9)
                assert rc.stable_count == expected_stable


class TestTaylorPrinciple:
    def test_examples(self, text_params):
        assert taylor_principle_holds(text_params, 0.0, 1.5)
        assert not taylor_principle_holds(text_params, 0.0, 0.5)

    def test_point_a_is_border_case(self, text_params):
        v = triangle_vertices(text_params)
        assert not taylor_principle_holds(text_params, v.a.f_x, v.a.f_pi)


class TestScalarFeedback:
    def test_negative_feedback_window(self):
        assert is_negative_feedback_scalar(1.2, 0.5, -2.0)
        assert not is_negative_feedback_scalar(1.2, 0.5, 0.5)
        assert not is_negative_feedback_scalar(1.2, 0.5, -5.0)

    def test_requires_positive_a(self):
        with pytest.raises(ValueError):
            is_negative_feedback_scalar(-1.0, 0.5, -0.5)

    def test_accelerationist_bounds(self):
        assert scalar_accelerationist_bounds(1.0, 1.0) == (1.0, 3.0)
        assert scalar_accelerationist_bounds(2.0, 1.0) == (1.0, 2.0)
        lo, hi = scalar_accelerationist_bounds(1e9, 1e9)
        assert lo == 1.0 and hi == pytest.approx(1.0, abs=1e-12)
        with pytest.raises(ValueError):
            scalar_accelerationist_bounds(-1.0, 1.0)


class TestDeterminacy:
    def test_plausible_rule_forward_looking(self, text_params):
        rule = TaylorRule(0.5, 1.5)
        assert classify_determinacy(
            text_params, rule, InterestRateTiming.FORWARD_LOOKING
        ) is DeterminacyClass.DETERMINATE

    def test_table_gains_predetermined(self, appa_params):
        rule = TaylorRule(-2.10, 3.03)
        assert classify_determinacy(
            appa_params, rule, InterestRateTiming.PREDETERMINED
        ) is DeterminacyClass.DETERMINATE

    def test_origin_forward_looking_indeterminate(self, text_params):
        rule = TaylorRule(0.0, 0.0)
        assert classify_determinacy(
            text_params, rule, InterestRateTiming.FORWARD_LOOKING
        ) is DeterminacyClass.INDETERMINATE

    def test_origin_predetermined_explosive(self, text_params):
        rule = TaylorRule(0.0, 0.0)
        assert classify_determinacy(
            text_params, rule, InterestRateTiming.PREDETERMINED
        ) is DeterminacyClass.EXPLOSIVE

    def test_hopf_line_is_boundary(self, text_params):
        f_pi = 40.0
        f_x = hopf_border(text_params, f_pi)
        assert classify_determinacy(
            text_params, TaylorRule(f_x, f_pi),
            InterestRateTiming.PREDETERMINED) is DeterminacyClass.BOUNDARY


class TestAnchorFromRates:
    def test_homogeneous(self, text_params):
        rule = TaylorRule(0.5, 1.5)
        assert anchor_from_rates(text_params, rule, 0.0, 0.0) == (0.0, 0.0)

    def test_round_trip(self, text_params):
        rng = random.Random(9)
        m = build_matrices(text_params)
        for _ in range(300):
            rule = TaylorRule(rng.uniform(-3, 3), rng.uniform(0.5, 3))
            x0, pi0 = rng.uniform(-1, 1), rng.uniform(-1, 1)
            i0 = rule.f_x * x0 + rule.f_pi * pi0
            y1 = closed_loop(m, rule).apply((x0, pi0))
            i1 = rule.f_x * y1[0] + rule.f_pi * y1[1]
            try:
                got = anchor_from_rates(text_params, rule, i0, i1)
            except NoAnchorError:
                continue
            assert got[0] == pytest.approx(x0, abs=1e-10)
            assert got[1] == pytest.approx(pi0, abs=1e-10)

    def test_zero_output_response_closed_form(self):
        p = ModelParams(kappa=0.1, beta=0.99)
        rule = TaylorRule(f_x=0.0, f_pi=1.5)
        x0, pi0 = anchor_from_rates(p, rule, 0.01, 0.005)
        assert x0 == pytest.approx((0.01 - 0.99 * 0.005) / (0.1 * 1.5), abs=1e-12)
        assert pi0 == pytest.approx(0.01 / 1.5, abs=1e-12)

    def test_singular_anchor(self, text_params):
        with pytest.raises(NoAnchorError):
            anchor_from_rates(text_params, TaylorRule(0.0, 0.0), 0.01, 0.01)


class TestPolePlacement:
    def test_center_target(self, text_params):
        f_x, f_pi = pole_place(text_params, 0.0, 0.0)
        assert f_x == pytest.approx(-4.12, abs=5e-3)
        assert f_pi == pytest.approx(21.21, abs=5e-3)

    def test_open_loop_fixed_point(self, text_params):
        t_a, d_a = open_loop_trace_det(text_params)
        for method in PolePlacementMethod:
            f_x, f_pi = pole_place(text_params, t_a, d_a, method)
            assert abs(f_x) < 1e-12 and abs(f_pi) < 1e-11

    def test_point_a_target(self, text_params):
        for method in PolePlacementMethod:
            f_x, f_pi = pole_place(text_params, 2.0, 1.0, method)
            assert f_x == pytest.approx(-0.1212, abs=1e-4)
            assert f_pi == pytest.approx(1.0121, abs=1e-4)

    def test_three_methods_agree_and_hit_targets(self):
        rng = random.Random(60)
        for _ in range(40):
            p = random_params(rng)
            for _ in range(25):
                t_t = rng.uniform(-3, 3)
                d_t = rng.uniform(-3, 3)
                gains = [pole_place(p, t_t, d_t, m) for m in PolePlacementMethod]
                for g in gains[1:]:
                    assert abs(g[0] - gains[0][0]) < 1e-10 * max(1, abs(gains[0][0]))
                    assert abs(g[1] - gains[0][1]) < 1e-10 * max(1, abs(gains[0][1]))
                t, d = trace_det_from_rule(p, *gains[0])
                assert abs(t - t_t) < 1e-9 and abs(d - d_t) < 1e-9

    def test_uncontrollable_raises(self):
        with pytest.raises(UncontrollableError):
            pole_place(ModelParams(gamma=0.0), 0.0, 0.0)
        with pytest.raises(UncontrollableError):
            pole_place(ModelParams(kappa=0.0), 0.0, 0.0,
                       PolePlacementMethod.ACKERMANN)


class TestStabilityPropositions:
    def test_two_stable_implies_taylor_principle_and_negative_fx(self):
        # sample (T, D) inside the stability region and map back to gains
        rng = random.Random(777)
        p = ModelParams()  # gamma > 0, kappa > 0, TEXT
        t_a, d_a = open_loop_trace_det(p)
        count = 0
        while count < 5000:
            t = rng.uniform(-2, 2)
            d = rng.uniform(-1, 1)
            if 1 - t + d <= 1e-9 or 1 + t + d <= 1e-9 or d >= 1 - 1e-9:
                continue
            f_x, f_pi = rule_from_trace_det(p, t, d)
            rc = classify_region(p, f_x, f_pi)
            assert rc.stable_count == 2
            assert f_x < 0.0                      # necessary condition
            assert taylor_principle_holds(p, f_x, f_pi)
            assert t < t_a and d < 1.0 <= d_a    # trace/det both shrink
            count += 1


class TestSweepGrid:
    def test_grid_shape_and_point(self, text_params):
        rows = sweep_grid(text_params, (0.0, 3.0), (-1.0, 1.0), (7, 5))
        assert len(rows) == 35
        hit = [r for r in rows if r[0] == 1.5 and r[1] == 0.5]
        assert len(hit) == 1
        assert hit[0][2].label is RegionLabel.R4_3_SOURCE_COMPLEX

    def test_grid_contains_origin_saddle(self, text_params):
        rows = sweep_grid(text_params, (-1.0, 1.0), (-1.0, 1.0), (3, 3))
        origin = [r for r in rows if r[0] == 0.0 and r[1] == 0.0]
        assert origin[0][2].label is RegionLabel.R1_SADDLE

    def test_degenerate_corner_grid(self, text_params):
        rows = sweep_grid(text_params, (0.0, 1.0), (0.0, 1.0), (2, 2))
        assert len(rows) == 4
        assert [r[:2] for r in rows] == [(0.0, 0.0), (0.0, 1.0),
                                         (1.0, 0.0), (1.0, 1.0)]

    def test_validation(self, text_params):
        with pytest.raises(ValueError):
            sweep_grid(text_params, (0.0, 0.0), (0.0, 1.0), (3, 3))
        with pytest.raises(ValueError):
            sweep_grid(text_params, (0.0, 1.0), (0.0, 1.0), (1, 3))

    def test_matches_pointwise_classification(self, appa_params):
        rows = sweep_grid(appa_params, (-2.0, 5.0), (-8.0, 2.0), (12, 9))
        for f_pi, f_x, rc in rows:
            direct = classify_region(appa_params, f_x, f_pi)
            assert rc.label is direct.label
            assert rc.stable_count == direct.stable_count
