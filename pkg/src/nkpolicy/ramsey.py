"""Optimal policy as a discounted linear-quadratic regulator.

The planner minimizes  sum_t beta^t (mu_pi pi^2 + mu_x x^2 + mu_i i^2)/2
subject to the model's expectational block.  Discounting is folded in by
scaling the endogenous transition by sqrt(beta); a Riccati solve then yields
the feedback on (x, pi), a discrete Sylvester solve the response to the AR(1)
shock states, and the zero initial multiplier condition the unique optimal
starting point y_0 = N z_0 for the forward-looking variables.

Two conventions are provided for the shock-response step:

* REFERENCE reproduces the benchmark tables shipped with this package
  (`nkpolicy tables`).  It feeds the Sylvester equation with the unscaled
  shock transition and uses a positive-sign gain formula.  Its shock gains
  are NOT loss-minimizing; they are kept because the benchmark tables were
  generated this way.
* CONSISTENT applies the sqrt(beta) scaling to the full augmented system.  It
  matches the joint four-state regulator to machine precision, satisfies the
  costate first-order conditions along simulated paths, and beats every
  perturbed feedback in realized loss.

Endogenous gains, closed-loop eigenvalues and the Riccati matrix are
identical across conventions; only the shock gains and the anchor differ.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from .linalg2 import (
    ConvergenceError,
    Mat2,
    EigenReport,
    SingularSystemError,
    eig2,
    solve_dare_with_stats,
    solve_discrete_sylvester,
    solve_mat_eq_2x2,
    _require_finite,
)
from .model import (
    ModelParams,
    TaylorRule,
    UncontrollableError,
    build_matrices,
    kalman_controllability_rank,
)

if TYPE_CHECKING:
    from .simulate import Trajectory


class AnchorUnavailableError(ValueError):
    """The Riccati matrix is singular, so no unique optimal anchor exists."""


class ShockGainConvention(enum.Enum):
    REFERENCE = "reference"
    CONSISTENT = "consistent"


@dataclass(frozen=True)
class Preferences:
    """Loss-function weights on inflation, output-gap and instrument variance."""

    mu_pi: float
    mu_x: float
    mu_i: float

    def __post_init__(self):
        _require_finite("Preferences", self.mu_pi, self.mu_x, self.mu_i)
        if self.mu_pi < 0.0 or self.mu_x < 0.0:
            raise ValueError("mu_pi and mu_x must be non-negative")
        if not self.mu_i > 0.0:
            raise ValueError("mu_i must be strictly positive")


# the twelve weight rows of the benchmark sweep written by `nkpolicy tables`
TABLE2_WEIGHTS: tuple[tuple[str, float, float, float], ...] = (
    ("Inflation", 1.0, 0.0, 1e-7),
    ("Inflation output gap", 4.0, 1.0, 1e-7),
    ("Inflation output gap", 1.0, 1.0, 1e-7),
    ("Inflation output gap", 0.25, 1.0, 1e-7),
    ("Output gap", 0.0, 1.0, 1e-7),
    ("Output gap interest", 0.0, 4.0, 1.0),
    ("Output gap interest", 0.0, 1.0, 1.0),
    ("Output gap interest", 0.0, 0.25, 1.0),
    ("Interest rate", 0.0, 0.0, 1.0),
    ("Inflation interest", 0.25, 0.0, 1.0),
    ("Inflation interest", 1.0, 0.0, 1.0),
    ("Inflation interest", 4.0, 0.0, 1.0),
)


@dataclass(frozen=True)
class RamseySolution:
    """Riccati/Sylvester output bundle for one preference setting."""

    params: ModelParams
    prefs: Preferences
    convention: ShockGainConvention
    p_y: Mat2                    # Riccati matrix of the scaled problem
    p_z: Mat2                    # shock cross matrix (convention-specific)
    f_y: tuple[float, float]     # (F_x, F_pi)
    f_z: tuple[float, float]     # (F_z, F_u)
    n: Mat2 | None               # anchor y_0 = N z_0; None when P_y is singular
    eigen: EigenReport           # eigenvalues of the sqrt(beta)-scaled closed loop
    riccati_iterations: int
    riccati_residual: float
    sylvester_residual: float

    def rule(self) -> TaylorRule:
        return TaylorRule(self.f_y[0], self.f_y[1], self.f_z[0], self.f_z[1])


def _row_times(b: tuple[float, float], m: Mat2) -> tuple[float, float]:
    """Row vector b' M."""
    return (b[0] * m.a11 + b[1] * m.a21, b[0] * m.a12 + b[1] * m.a22)


def solve_ramsey(params: ModelParams, prefs: Preferences,
                 convention: ShockGainConvention = ShockGainConvention.REFERENCE,
                 dare_tol: float = 1e-8, max_iter: int = 1_000_000,
                 ) -> RamseySolution:
    """Full optimal-policy pipeline for one preference setting.

    Raises UncontrollableError when the (A_yy, B_y) pair has Kalman rank
    below 2 and ConvergenceError when the Riccati iteration fails.  A
    singular Riccati matrix (possible when both target weights vanish) is not
    an error: the solution is returned with n=None.
    """
    m = build_matrices(params)
    if kalman_controllability_rank(m.a_yy, m.b_y) != 2:
        raise UncontrollableError(
            "optimal policy requires Kalman controllability rank 2 "
            "(gamma != 0 and kappa != 0)")
    sqb = math.sqrt(params.beta)
    a_s = m.a_yy.scale(sqb)
    b_s = (sqb * m.b_y[0], sqb * m.b_y[1])
    q = Mat2.diag(prefs.mu_x, prefs.mu_pi)
    p_y, iters, resid_r = solve_dare_with_stats(a_s, b_s, q, prefs.mu_i,
                                                tol=dare_tol, max_iter=max_iter)
    pb = p_y.apply(b_s)
    bpb = prefs.mu_i + b_s[0] * pb[0] + b_s[1] * pb[1]
    pa = p_y @ a_s
    bpa = _row_times(b_s, pa)
    f_y = (-bpa[0] / bpb, -bpa[1] / bpb)
    a_cl = Mat2(a_s.a11 + b_s[0] * f_y[0], a_s.a12 + b_s[0] * f_y[1],
                a_s.a21 + b_s[1] * f_y[0], a_s.a22 + b_s[1] * f_y[1])

    a_t = a_cl.transpose()
    if convention is ShockGainConvention.REFERENCE:
        shock_load, shock_tr = m.a_yz, m.a_zz
        sign = 1.0
    else:
        shock_load, shock_tr = m.a_yz.scale(sqb), m.a_zz.scale(sqb)
        sign = -1.0
    b_syl = shock_tr.scale(-1.0)
    c_syl = (a_t @ p_y) @ shock_load
    p_z = solve_discrete_sylvester(a_t, b_syl, c_syl)
    resid_s = ((a_t @ p_z) @ b_syl + p_z - c_syl).max_abs()
    target = (p_y @ shock_load) + (p_z @ shock_tr)
    bt = _row_times(b_s, target)
    f_z = (sign * bt[0] / bpb, sign * bt[1] / bpb)

    try:
        n = solve_mat_eq_2x2(p_y, p_z.scale(-1.0))
    except SingularSystemError:
        n = None

    return RamseySolution(params, prefs, convention, p_y, p_z, f_y, f_z, n,
                          eig2(a_cl), iters, resid_r, resid_s)


def initial_anchor(sol: RamseySolution, z0: float, u0: float
                   ) -> tuple[float, float]:
    """Optimal starting point (x0, pi0) = N (z0, u0) for given shock states."""
    if sol.n is None:
        raise AnchorUnavailableError(
            "Riccati matrix is singular; the optimal anchor is not unique "
            "(both target weights are zero)")
    return sol.n.apply((z0, u0))


def loss_value(traj: "Trajectory", prefs: Preferences, beta: float) -> float:
    """Discounted quadratic loss sum_t beta^t (mu_pi pi^2 + mu_x x^2 + mu_i i^2)/2."""
    horizon = len(traj.x) - 1
    if horizon < 3:
        raise ValueError(f"loss needs horizon >= 3, got {horizon}")
    total = 0.0
    disc = 1.0
    for t in range(horizon + 1):
        total += disc * (prefs.mu_pi * traj.pi[t] ** 2
                         + prefs.mu_x * traj.x[t] ** 2
                         + prefs.mu_i * traj.i[t] ** 2) / 2.0
        disc *= beta
    return total


@dataclass(frozen=True)
class FocReport:
    """Residuals of the optimality conditions along a simulated path."""

    max_residual: float            # worst costate or instrument residual
    state_residual: float          # worst two-equation costate residual
    instrument_residual: float     # worst instrument-condition residual
    transversality_residual: float  # max |phi_0|


def foc_residuals(params: ModelParams, prefs: Preferences,
                  traj: "Trajectory") -> FocReport:
    """Check the costate first-order conditions along a path with multipliers.

    With the discount folded into the multipliers, an optimal path satisfies

        phi_t = Q y_t + beta A_yy' phi_{t+1}
        mu_i i_t + beta B_y' phi_{t+1} = 0
        phi_0 = 0

    where Q = diag(mu_x, mu_pi) and phi stacks (phi_x, phi_pi).  The report
    carries the worst absolute residual over t = 0..T-1.
    """
    if traj.phi_x is None or traj.phi_pi is None:
        raise ValueError("trajectory carries no multiplier sequences")
    m = build_matrices(params)
    at_scaled = m.a_yy.transpose().scale(params.beta)
    b = m.b_y
    horizon = len(traj.x) - 1
    worst_state = 0.0
    worst_inst = 0.0
    for t in range(horizon):
        phi_next = (traj.phi_x[t + 1], traj.phi_pi[t + 1])
        back = at_scaled.apply(phi_next)
        r_x = prefs.mu_x * traj.x[t] + back[0] - traj.phi_x[t]
        r_pi = prefs.mu_pi * traj.pi[t] + back[1] - traj.phi_pi[t]
        r_i = (prefs.mu_i * traj.i[t]
               + params.beta * (b[0] * phi_next[0] + b[1] * phi_next[1]))
        worst_state = max(worst_state, abs(r_x), abs(r_pi))
        worst_inst = max(worst_inst, abs(r_i))
    trans = max(abs(traj.phi_x[0]), abs(traj.phi_pi[0]))
    return FocReport(max(worst_state, worst_inst), worst_state, worst_inst, trans)


@dataclass(frozen=True)
class LqrSweepRow:
    """One weight setting of a preference sweep; error records solver failure."""

    label: str
    mu_pi: float
    mu_x: float
    mu_i: float
    modulus1: float
    modulus2: float
    f_pi: float
    f_x: float
    f_z: float
    f_u: float
    anchor: Mat2 | None
    error: str | None = None


def lqr_triangle_sweep(params: ModelParams,
                       weights: Iterable[Sequence] = TABLE2_WEIGHTS,
                       convention: ShockGainConvention = ShockGainConvention.REFERENCE,
                       ) -> list[LqrSweepRow]:
    """Solve the regulator across a weight grid; failures recorded per row."""
    rows = []
    for entry in weights:
        if len(entry) == 4:
            label, mu_pi, mu_x, mu_i = entry
        else:
            mu_pi, mu_x, mu_i = entry
            label = f"({mu_pi:g}, {mu_x:g}, {mu_i:g})"
        try:
            prefs = Preferences(mu_pi=float(mu_pi), mu_x=float(mu_x),
                                mu_i=float(mu_i))
            sol = solve_ramsey(params, prefs, convention)
        except (ValueError, ConvergenceError) as exc:
            rows.append(LqrSweepRow(label, mu_pi, mu_x, mu_i,
                                    math.nan, math.nan, math.nan, math.nan,
                                    math.nan, math.nan, None, str(exc)))
            continue
        rows.append(LqrSweepRow(label, mu_pi, mu_x, mu_i,
                                sol.eigen.modulus1, sol.eigen.modulus2,
                                sol.f_y[1], sol.f_y[0],
                                sol.f_z[0], sol.f_z[1], sol.n))
    return rows
