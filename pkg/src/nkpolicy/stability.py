"""Geometry of the Taylor-rule parameter plane.

The closed-loop trace and determinant are affine in the rule coefficients:

    T = T(A) + gamma F_x
    D = D(A) + (gamma/beta) F_x + (gamma kappa / beta) F_pi

so the unit-circle conditions p(1) = 0 (saddle-node), p(-1) = 0 (flip),
D = 1 with complex roots (Hopf) and discriminant = 0 map to straight lines
and a parabola in the (F_pi, F_x) plane.  They bound a stability triangle
whose interior has both eigenvalues inside the unit circle.  This module
classifies points against those borders, places poles three different ways,
counts stable roots for the two determinacy conventions, and sweeps grids.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from . import kernels
from .linalg2 import EigenReport, Mat2, SingularSystemError, eig_from_trace_det, solve_linear_2x2
from .model import (
    MatrixVariant,
    ModelParams,
    StructuralMatrices,
    TaylorRule,
    UncontrollableError,
    build_matrices,
    closed_loop,
    kalman_controllability_rank,
    open_loop_trace_det,
)

DEFAULT_BORDER_TOL = 1e-9


class NoAnchorError(SingularSystemError):
    """The matrix mapping initial interest rates to (x0, pi0) is singular."""


class RegionLabel(enum.Enum):
    R1_SADDLE = "R1_saddle"
    R2_SOURCE_REAL_STRADDLE = "R2_source_real_straddle"
    R3_SADDLE_NEG = "R3_saddle_neg"
    R4_1_SINK_REAL = "R4_1_sink_real"
    R4_2_SINK_COMPLEX = "R4_2_sink_complex"
    R4_3_SOURCE_COMPLEX = "R4_3_source_complex"
    R4_4_SOURCE_REAL = "R4_4_source_real"
    R4_5_BOTH_BELOW_MINUS1 = "R4_5_both_below_minus1"
    BORDER_SADDLE_NODE = "Border_SaddleNode"
    BORDER_FLIP = "Border_Flip"
    BORDER_HOPF = "Border_Hopf"
    BORDER_DISCRIMINANT = "Border_Discriminant"

    @property
    def is_border(self) -> bool:
        return self.name.startswith("BORDER")


# index = kernel region code
_CODE_TO_LABEL = (
    RegionLabel.R1_SADDLE,
    RegionLabel.R2_SOURCE_REAL_STRADDLE,
    RegionLabel.R3_SADDLE_NEG,
    RegionLabel.R4_1_SINK_REAL,
    RegionLabel.R4_2_SINK_COMPLEX,
    RegionLabel.R4_3_SOURCE_COMPLEX,
    RegionLabel.R4_4_SOURCE_REAL,
    RegionLabel.R4_5_BOTH_BELOW_MINUS1,
    RegionLabel.BORDER_SADDLE_NODE,
    RegionLabel.BORDER_FLIP,
    RegionLabel.BORDER_HOPF,
    RegionLabel.BORDER_DISCRIMINANT,
)


@dataclass(frozen=True)
class RegionClass:
    label: RegionLabel
    stable_count: int
    eigen: EigenReport


class InterestRateTiming(enum.Enum):
    FORWARD_LOOKING = "forward-looking"
    PREDETERMINED = "predetermined"


class DeterminacyClass(enum.Enum):
    DETERMINATE = "determinate"
    INDETERMINATE = "indeterminate"
    EXPLOSIVE = "explosive"
    BOUNDARY = "boundary"


class PolePlacementMethod(enum.Enum):
    AFFINE_MAP = "affine-map"
    CANONICAL_FORM = "canonical-form"
    ACKERMANN = "ackermann"


def plane_coefficients(params: ModelParams) -> tuple[float, float, float, float, float]:
    """(T_A, D_A, gamma, gamma/beta, gamma kappa/beta) for the rule-plane affine map."""
    t_a, d_a = open_loop_trace_det(params)
    g, k, b = params.gamma, params.kappa, params.beta
    return (t_a, d_a, g, g / b, g * k / b)


def trace_det_from_rule(params: ModelParams, f_x: float, f_pi: float
                        ) -> tuple[float, float]:
    """Closed-loop (trace, determinant) at a rule point."""
    t_a, d_a, g, g_ob, gk_ob = plane_coefficients(params)
    # same evaluation order as the sweep kernels, for bit-identical borders
    return (t_a + g * f_x, (d_a + gk_ob * f_pi) + g_ob * f_x)


def rule_from_trace_det(params: ModelParams, trace: float, det: float
                        ) -> tuple[float, float]:
    """Invert the affine map; exact round trip with trace_det_from_rule."""
    g, k, b = params.gamma, params.kappa, params.beta
    if g == 0.0 or k == 0.0:
        raise UncontrollableError("pole placement needs gamma != 0 and kappa != 0")
    t_a, d_a = open_loop_trace_det(params)
    f_x = (trace - t_a) / g
    f_pi = (b * (det - d_a) - (trace - t_a)) / (g * k)
    return (f_x, f_pi)


def hopf_border(params: ModelParams, f_pi: float) -> float:
    """F_x on the D = 1 line at the given F_pi."""
    g, k, b = params.gamma, params.kappa, params.beta
    if g == 0.0:
        raise UncontrollableError("Hopf border needs gamma != 0")
    if params.variant is MatrixVariant.TEXT:
        return (b - 1.0) / g - k * f_pi
    return (b - 1.0) / g + 2.0 * k / b - k * f_pi


def saddle_node_border(params: ModelParams, f_x: float) -> float:
    """F_pi on the p(1) = 0 line at the given F_x."""
    k, b = params.kappa, params.beta
    if k == 0.0:
        raise UncontrollableError("saddle-node border needs kappa != 0")
    intercept = 1.0 if params.variant is MatrixVariant.TEXT else 2.0 / b - 1.0
    return intercept - ((1.0 - b) / k) * f_x


def flip_border(params: ModelParams, f_pi: float) -> float:
    """F_x on the p(-1) = 0 line at the given F_pi."""
    g, k, b = params.gamma, params.kappa, params.beta
    if g == 0.0:
        raise UncontrollableError("flip border needs gamma != 0")
    if params.variant is MatrixVariant.TEXT:
        return -2.0 / g - k / (1.0 + b) - (k / (1.0 + b)) * f_pi
    return -2.0 / g + k * (1.0 + 2.0 / b) / (1.0 + b) - (k / (1.0 + b)) * f_pi


def discriminant_border(params: ModelParams, f_x: float) -> tuple[float, ...]:
    """F_pi values putting (f_pi, f_x) on the discriminant-zero parabola.

    The closed-loop trace depends on F_x alone, so D = T^2/4 is linear in
    F_pi: for gamma*kappa != 0 there is exactly one solution at each F_x.
    """
    g, k, b = params.gamma, params.kappa, params.beta
    if g == 0.0 or k == 0.0:
        raise UncontrollableError("discriminant border needs gamma*kappa != 0")
    t_a, d_a = open_loop_trace_det(params)
    t = t_a + g * f_x
    f_pi = (b * (t * t / 4.0 - d_a) - g * f_x) / (g * k)
    return (f_pi,)


@dataclass(frozen=True)
class Vertex:
    name: str
    f_pi: float
    f_x: float
    trace: float
    det: float
    eigen: EigenReport


@dataclass(frozen=True)
class TriangleVertices:
    """The stability triangle corners A, B, C, its center, and laissez-faire."""

    a: Vertex        # (T, D) = (2, 1): double root at +1
    b: Vertex        # (T, D) = (-2, 1): double root at -1
    c: Vertex        # (T, D) = (0, -1): roots -1 and +1
    omega: Vertex    # (T, D) = (0, 0): double root at 0, fastest stabilization
    origin: Vertex   # F = 0: the open-loop point

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.omega, self.origin))


def _vertex(params: ModelParams, name: str, trace: float, det: float) -> Vertex:
    f_x, f_pi = rule_from_trace_det(params, trace, det)
    return Vertex(name, f_pi, f_x, trace, det, eig_from_trace_det(trace, det))


def triangle_vertices(params: ModelParams) -> TriangleVertices:
    """Rule-plane coordinates and eigenvalues for the five reference points."""
    t_a, d_a = open_loop_trace_det(params)
    return TriangleVertices(
        a=_vertex(params, "A", 2.0, 1.0),
        b=_vertex(params, "B", -2.0, 1.0),
        c=_vertex(params, "C", 0.0, -1.0),
        omega=_vertex(params, "Omega", 0.0, 0.0),
        origin=Vertex("O", 0.0, 0.0, t_a, d_a, eig_from_trace_det(t_a, d_a)),
    )


def classify_trace_det(trace: float, det: float,
                       border_tol: float = DEFAULT_BORDER_TOL) -> RegionClass:
    code, stable = kernels.classify_point(trace, det, border_tol)
    return RegionClass(_CODE_TO_LABEL[code], stable, eig_from_trace_det(trace, det))


def classify_region(params: ModelParams, f_x: float, f_pi: float,
                    border_tol: float = DEFAULT_BORDER_TOL) -> RegionClass:
    """Classify a rule point against the four reference borders.

    Points within border_tol of a border get the border label; otherwise the
    signs of p(1), p(-1), D - 1 and the discriminant select the region.
    """
    t, d = trace_det_from_rule(params, f_x, f_pi)
    return classify_trace_det(t, d, border_tol)


def taylor_principle_holds(params: ModelParams, f_x: float, f_pi: float) -> bool:
    """Strict p(1) > 0: the rate reacts more than one-for-one in the long run."""
    t, d = trace_det_from_rule(params, f_x, f_pi)
    return 1.0 - t + d > 0.0


def is_negative_feedback_scalar(a: float, b: float, f: float) -> bool:
    """Scalar negative-feedback test: -2A < BF < 0 shrinks the eigenvalue.

    Stated for positive open-loop autocorrelation only.
    """
    if not a > 0.0:
        raise ValueError("scalar negative-feedback test is stated for A > 0")
    return -2.0 * a < b * f < 0.0


def scalar_accelerationist_bounds(a: float, b: float) -> tuple[float, float]:
    """Negative-feedback window (1, 1 + 2/(ab)) of the one-dimensional model."""
    if not (a > 0.0 and b > 0.0):
        raise ValueError("bounds require a > 0 and b > 0")
    return (1.0, 1.0 + 2.0 / (a * b))


def classify_determinacy(params: ModelParams, rule: TaylorRule,
                         timing: InterestRateTiming,
                         border_tol: float = DEFAULT_BORDER_TOL) -> DeterminacyClass:
    """Count stable closed-loop roots against the predetermined-variable count.

    With a forward-looking rate only the two shocks are predetermined, so the
    endogenous block must have zero stable roots; with a predetermined rate
    (and its lag) four variables are predetermined and the endogenous block
    must be fully stable.  Roots within border_tol of the unit circle give the
    BOUNDARY outcome since they sit on a bifurcation border.
    """
    m = build_matrices(params)
    rep = eig_from_trace_det(*_closed_loop_trace_det(m, rule))
    if (abs(rep.modulus1 - 1.0) <= border_tol
            or abs(rep.modulus2 - 1.0) <= border_tol):
        return DeterminacyClass.BOUNDARY
    thresh = 1.0 - border_tol
    stable = (1 if rep.modulus1 < thresh else 0) + (1 if rep.modulus2 < thresh else 0)
    if timing is InterestRateTiming.FORWARD_LOOKING:
        return (DeterminacyClass.DETERMINATE if stable == 0
                else DeterminacyClass.INDETERMINATE)
    return (DeterminacyClass.DETERMINATE if stable == 2
            else DeterminacyClass.EXPLOSIVE)


def _closed_loop_trace_det(m: StructuralMatrices, rule: TaylorRule
                           ) -> tuple[float, float]:
    cl = closed_loop(m, rule)
    return (cl.trace(), cl.det())


def anchor_from_rates(params: ModelParams, rule: TaylorRule,
                      i0: float, i1: float) -> tuple[float, float]:
    """Back out (x0, pi0) from given initial rates i0 and i1 = E0[i1].

    i0 = F y0 and i1 = F (A + BF) y0 stack into a 2x2 system for y0; a
    predetermined rate path therefore pins the forward-looking variables.
    """
    m = build_matrices(params)
    cl = closed_loop(m, rule)
    f = (rule.f_x, rule.f_pi)
    row1 = (f[0] * cl.a11 + f[1] * cl.a21, f[0] * cl.a12 + f[1] * cl.a22)
    anchor = Mat2(row1[0], row1[1], f[0], f[1])
    try:
        return solve_linear_2x2(anchor, (i1, i0))
    except SingularSystemError as exc:
        raise NoAnchorError(f"anchor matrix is singular: {exc}") from exc


def pole_place(params: ModelParams, t_target: float, d_target: float,
               method: PolePlacementMethod = PolePlacementMethod.AFFINE_MAP,
               ) -> tuple[float, float]:
    """Feedback (F_x, F_pi) achieving the target closed-loop trace/determinant.

    Three routes: the affine map inversion, the controllable canonical form
    with a similarity transform, and the classic last-row formula
    F = -(0,1) [B, AB]^{-1} (A^2 - T A + D I).  All agree to 1e-10.
    """
    m = build_matrices(params)
    if kalman_controllability_rank(m.a_yy, m.b_y) != 2:
        raise UncontrollableError(
            "pole placement requires Kalman controllability rank 2")
    if method is PolePlacementMethod.AFFINE_MAP:
        return rule_from_trace_det(params, t_target, d_target)

    a, b = m.a_yy, m.b_y
    ab = a.apply(b)
    ctrl = Mat2(b[0], ab[0], b[1], ab[1])
    if method is PolePlacementMethod.CANONICAL_FORM:
        t_a, d_a = a.trace(), a.det()
        # canonical-form gain, then similarity back through the
        # controllability matrices of the canonical and original pairs
        f_hat = (t_target - t_a, -(d_target - d_a))
        ctrl_hat = Mat2(1.0, t_a, 0.0, 1.0)
        lhs = (f_hat[0] * ctrl_hat.a11 + f_hat[1] * ctrl_hat.a21,
               f_hat[0] * ctrl_hat.a12 + f_hat[1] * ctrl_hat.a22)
        sol = solve_linear_2x2(ctrl.transpose(), lhs)
        return (sol[0], sol[1])

    # Ackermann: F = -(0, 1) ctrl^{-1} p(A) with p the target polynomial
    w = solve_linear_2x2(ctrl.transpose(), (0.0, 1.0))
    pa = (a @ a) - a.scale(t_target) + Mat2.diag(d_target, d_target)
    return (-(w[0] * pa.a11 + w[1] * pa.a21),
            -(w[0] * pa.a12 + w[1] * pa.a22))


def sweep_grid(params: ModelParams,
               f_pi_range: tuple[float, float],
               f_x_range: tuple[float, float],
               resolution: tuple[int, int],
               border_tol: float = DEFAULT_BORDER_TOL,
               ) -> list[tuple[float, float, RegionClass]]:
    """Classify an inclusive cartesian grid, f_pi outer, f_x inner, row-major."""
    f_pi_values = grid_axis(f_pi_range, resolution[0])
    f_x_values = grid_axis(f_x_range, resolution[1])
    t_a, d_a, g, g_ob, gk_ob = plane_coefficients(params)
    cols = kernels.classify_grid(t_a, d_a, g, g_ob, gk_ob,
                                 f_pi_values, f_x_values, border_tol)
    codes, stable, tr, de = cols[0], cols[1], cols[2], cols[3]
    out = []
    i = 0
    for f_pi in f_pi_values:
        for f_x in f_x_values:
            rc = RegionClass(_CODE_TO_LABEL[codes[i]], stable[i],
                             eig_from_trace_det(tr[i], de[i]))
            out.append((f_pi, f_x, rc))
            i += 1
    return out


def grid_axis(bounds: tuple[float, float], count: int) -> list[float]:
    """Inclusive linspace; validates the range and resolution."""
    lo, hi = bounds
    if count < 2:
        raise ValueError(f"resolution must be >= 2 per axis, got {count}")
    if not hi > lo:
        raise ValueError(f"empty range: [{lo}, {hi}]")
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]
