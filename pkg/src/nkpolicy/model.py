"""Structural matrices of the four-equation New-Keynesian model.

The endogenous block stacks the output gap and inflation, y = (x, pi); the
exogenous block stacks the demand and cost-push AR(1) states, z = (z, u); the
single instrument is the nominal interest rate:

    E_t y_{t+1} = A_yy y_t + B_y i_t + A_yz z_t
    z_{t+1}     = A_zz z_t + eps_{t+1}
    i_t         = F_x x_t + F_pi pi_t + F_z z_t + F_u u_t

Two sign conventions for the (1,1) entry of A_yy circulate for this model:
1 + gamma*kappa/beta (the algebra of the structural equations) and
1 - gamma*kappa/beta (the convention used to generate the optimal-policy
benchmark tables).  Both are first-class here as TEXT and APPENDIX_A variants;
results are only comparable within one variant.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .linalg2 import Mat2, _require_finite


class UncontrollableError(ValueError):
    """The (A, B) pair cannot place poles: Kalman rank below 2."""


class PoleError(ValueError):
    """Transfer function evaluated at (or too close to) a pole."""


class MatrixVariant(enum.Enum):
    TEXT = "text"
    APPENDIX_A = "appendix-a"


@dataclass(frozen=True)
class ModelParams:
    """Structural parameters.

    gamma is the intertemporal elasticity of substitution (negative values
    model a delayed cost-of-capital transmission channel), kappa the Phillips
    curve slope, beta the discount factor, rho_z / rho_u the AR(1)
    coefficients of the demand and cost-push shocks.
    """

    gamma: float = 0.5
    kappa: float = 0.1
    beta: float = 0.99
    rho_z: float = 0.9
    rho_u: float = 0.9
    variant: MatrixVariant = MatrixVariant.TEXT

    def __post_init__(self):
        _require_finite("ModelParams", self.gamma, self.kappa, self.beta,
                        self.rho_z, self.rho_u)
        if not 0.0 < self.beta <= 1.0:
            raise ValueError(f"beta must be in (0, 1], got {self.beta}")
        if not abs(self.rho_z) < 1.0:
            raise ValueError(f"|rho_z| must be < 1, got {self.rho_z}")
        if not abs(self.rho_u) < 1.0:
            raise ValueError(f"|rho_u| must be < 1, got {self.rho_u}")

    @property
    def sigma(self) -> float:
        """Relative fluctuation aversion, the inverse of gamma."""
        if self.gamma == 0.0:
            raise ValueError("sigma undefined for gamma = 0")
        return 1.0 / self.gamma


@dataclass(frozen=True)
class TaylorRule:
    """Linear feedback i = F_x x + F_pi pi + F_z z + F_u u."""

    f_x: float
    f_pi: float
    f_z: float = 0.0
    f_u: float = 0.0

    def __post_init__(self):
        _require_finite("TaylorRule", self.f_x, self.f_pi, self.f_z, self.f_u)


@dataclass(frozen=True)
class StructuralMatrices:
    a_yy: Mat2
    b_y: tuple[float, float]
    a_yz: Mat2
    a_zz: Mat2


def build_matrices(params: ModelParams) -> StructuralMatrices:
    """Assemble the block matrices for the chosen sign variant."""
    g, k, b = params.gamma, params.kappa, params.beta
    if params.variant is MatrixVariant.TEXT:
        top_left = 1.0 + g * k / b
    else:
        top_left = 1.0 - g * k / b
    a_yy = Mat2(top_left, -g / b, -k / b, 1.0 / b)
    a_yz = Mat2(-1.0, g / b, 0.0, -1.0 / b)
    a_zz = Mat2.diag(params.rho_z, params.rho_u)
    return StructuralMatrices(a_yy, (g, 0.0), a_yz, a_zz)


def kalman_controllability_rank(a: Mat2, b: tuple[float, float],
                                tol: float = 1e-12) -> int:
    """Rank of [B, AB] with singularity tolerance."""
    ab = a.apply(b)
    c = Mat2(b[0], ab[0], b[1], ab[1])
    if c.max_abs() <= tol:
        return 0
    if abs(c.det()) <= tol * max(1.0, c.max_abs() ** 2):
        return 1
    return 2


def closed_loop(m: StructuralMatrices, rule: TaylorRule) -> Mat2:
    """A_yy + B_y (F_x, F_pi).  Only the first row moves since B_y = (gamma, 0)."""
    g = m.b_y[0]
    return Mat2(m.a_yy.a11 + g * rule.f_x, m.a_yy.a12 + g * rule.f_pi,
                m.a_yy.a21, m.a_yy.a22)


def open_loop_trace_det(params: ModelParams) -> tuple[float, float]:
    """Trace and determinant of A_yy for the chosen variant."""
    a = build_matrices(params).a_yy
    return (a.trace(), a.det())


@dataclass(frozen=True)
class TransferFunction:
    """Rational map i -> -(x + pi), coefficients highest power first."""

    numerator: tuple[float, float]
    denominator: tuple[float, float, float]

    def evaluate(self, s: float) -> float:
        num = self.numerator[0] * s + self.numerator[1]
        den = (self.denominator[0] * s * s + self.denominator[1] * s
               + self.denominator[2])
        if abs(den) <= 1e-12 * max(1.0, s * s):
            raise PoleError(f"transfer function evaluated at a pole: s={s!r}")
        return num / den


def transfer_function(params: ModelParams) -> TransferFunction:
    """Scalar transfer function C (sI - A_yy)^-1 B_y with C = -(1, 1).

    Defined for the TEXT sign convention; the closed form is
    (gamma s - gamma (1 + kappa)/beta) / (s^2 - T s + D).
    """
    if params.variant is not MatrixVariant.TEXT:
        raise ValueError("transfer_function is defined for the TEXT variant")
    g, k, b = params.gamma, params.kappa, params.beta
    t_a, d_a = open_loop_trace_det(params)
    if not math.isfinite(t_a):
        raise ValueError("non-finite open-loop matrix")
    return TransferFunction((g, -(g + g * k) / b), (1.0, -t_a, d_a))
