"""Trajectories, minimal-state-variable solutions, and the regime comparison.

Deterministic runs iterate the realized closed loop, which coincides with the
expectational dynamics under certainty equivalence.  In the determinate
Taylor-rule regime the closed loop is a source and is never iterated forward;
paths come from the minimal-state-variable representation y_t = N z_t, which
anchors the forward-looking variables on the shock states.  Stochastic runs
add seeded Gaussian innovations to the shock block only.
"""
from __future__ import annotations

import dataclasses
import enum
import math
import random
from dataclasses import dataclass, field

from .linalg2 import (
    EigenReport,
    Mat2,
    SingularSystemError,
    gauss_solve,
    _require_finite,
)
from .model import (
    MatrixVariant,
    ModelParams,
    StructuralMatrices,
    TaylorRule,
    build_matrices,
    closed_loop,
)
from .ramsey import Preferences, RamseySolution, initial_anchor, solve_ramsey
from .stability import RegionClass, classify_region, trace_det_from_rule


class Regime(enum.Enum):
    RAMSEY_ANCHORED = "ramsey-anchored"
    TAYLOR_MSV = "taylor-msv"


@dataclass(frozen=True)
class Trajectory:
    """Aligned per-period series; multipliers present only on optimal paths."""

    x: tuple[float, ...]
    pi: tuple[float, ...]
    i: tuple[float, ...]
    z: tuple[float, ...]
    u: tuple[float, ...]
    phi_x: tuple[float, ...] | None = None
    phi_pi: tuple[float, ...] | None = None

    def __post_init__(self):
        n = len(self.x)
        for name in ("pi", "i", "z", "u"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"series {name} has length != {n}")
        for name in ("phi_x", "phi_pi"):
            seq = getattr(self, name)
            if seq is not None and len(seq) != n:
                raise ValueError(f"series {name} has length != {n}")
        for name in ("x", "pi", "i", "z", "u"):
            for v in getattr(self, name):
                if not math.isfinite(v):
                    raise ValueError(f"series {name} has non-finite entry {v!r}")

    @property
    def horizon(self) -> int:
        return len(self.x) - 1


@dataclass(frozen=True)
class ShockSpec:
    """Initial shock states plus innovations.

    Explicit innovation sequences apply to periods 1, 2, ...; short sequences
    are padded with zeros.  When a seed is given, mean-zero Gaussian draws
    with the stated standard deviations are generated instead (both series
    from one seeded generator, z before u each period, so runs repeat).
    """

    z0: float = 0.0
    u0: float = 0.0
    eps_z: tuple[float, ...] = field(default_factory=tuple)
    eps_u: tuple[float, ...] = field(default_factory=tuple)
    seed: int | None = None
    sigma_z: float = 0.0
    sigma_u: float = 0.0

    def innovations(self, horizon: int) -> tuple[list[float], list[float]]:
        if self.seed is not None:
            rng = random.Random(self.seed)
            ez, eu = [], []
            for _ in range(horizon):
                ez.append(rng.gauss(0.0, self.sigma_z) if self.sigma_z else 0.0)
                eu.append(rng.gauss(0.0, self.sigma_u) if self.sigma_u else 0.0)
            return ez, eu
        ez = list(self.eps_z[:horizon]) + [0.0] * max(0, horizon - len(self.eps_z))
        eu = list(self.eps_u[:horizon]) + [0.0] * max(0, horizon - len(self.eps_u))
        return ez, eu


def simulate_closed_loop(m: StructuralMatrices, rule: TaylorRule,
                         y0: tuple[float, float], shocks: ShockSpec,
                         horizon: int) -> Trajectory:
    """Iterate y_{t+1} = (A_yy + B F_y) y_t + (A_yz + B F_z) z_t forward."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    _require_finite("y0", y0[0], y0[1])
    a_cl = closed_loop(m, rule)
    g1, g2 = m.b_y
    c = Mat2(m.a_yz.a11 + g1 * rule.f_z, m.a_yz.a12 + g1 * rule.f_u,
             m.a_yz.a21 + g2 * rule.f_z, m.a_yz.a22 + g2 * rule.f_u)
    ez, eu = shocks.innovations(horizon)
    xs, pis, iis, zs, us = [y0[0]], [y0[1]], [], [shocks.z0], [shocks.u0]
    for t in range(horizon):
        x_t, pi_t, z_t, u_t = xs[t], pis[t], zs[t], us[t]
        iis.append(rule.f_x * x_t + rule.f_pi * pi_t
                   + rule.f_z * z_t + rule.f_u * u_t)
        nxt = a_cl.apply((x_t, pi_t))
        drift = c.apply((z_t, u_t))
        xs.append(nxt[0] + drift[0])
        pis.append(nxt[1] + drift[1])
        zs.append(m.a_zz.a11 * z_t + ez[t])
        us.append(m.a_zz.a22 * u_t + eu[t])
    iis.append(rule.f_x * xs[-1] + rule.f_pi * pis[-1]
               + rule.f_z * zs[-1] + rule.f_u * us[-1])
    return Trajectory(tuple(xs), tuple(pis), tuple(iis), tuple(zs), tuple(us))


def attach_multipliers(sol: RamseySolution, traj: Trajectory) -> Trajectory:
    """Recover phi_t = P_y y_t + P_z z_t along a path."""
    phi_x, phi_pi = [], []
    for t in range(len(traj.x)):
        py = sol.p_y.apply((traj.x[t], traj.pi[t]))
        pz = sol.p_z.apply((traj.z[t], traj.u[t]))
        phi_x.append(py[0] + pz[0])
        phi_pi.append(py[1] + pz[1])
    return dataclasses.replace(traj, phi_x=tuple(phi_x), phi_pi=tuple(phi_pi))


def ramsey_path(sol: RamseySolution, shocks: ShockSpec, horizon: int
                ) -> Trajectory:
    """Optimal path: anchored start, optimal feedback, multipliers attached."""
    y0 = initial_anchor(sol, shocks.z0, shocks.u0)
    m = build_matrices(sol.params)
    traj = simulate_closed_loop(m, sol.rule(), y0, shocks, horizon)
    return attach_multipliers(sol, traj)


def solve_msv(m: StructuralMatrices, rule: TaylorRule) -> Mat2:
    """Minimal-state-variable map N with y_t = N z_t in the Taylor regime.

    N solves N A_zz = (A_yy + B F_y) N + (A_yz + B F_z); a unique solution
    needs the spectra of A_zz and of the closed loop to be disjoint, which
    the determinate regime guarantees (shock roots inside the unit circle,
    closed-loop roots outside).
    """
    a_cl = closed_loop(m, rule)
    g1, g2 = m.b_y
    c = Mat2(m.a_yz.a11 + g1 * rule.f_z, m.a_yz.a12 + g1 * rule.f_u,
             m.a_yz.a21 + g2 * rule.f_z, m.a_yz.a22 + g2 * rule.f_u)
    # vec (column-major): (Azz' (x) I - I (x) Acl) vec(N) = vec(C)
    z11, z12, z21, z22 = m.a_zz.entries()
    a11, a12, a21, a22 = a_cl.entries()
    mat = [
        [z11 - a11, -a12, z21, 0.0],
        [-a21, z11 - a22, 0.0, z21],
        [z12, 0.0, z22 - a11, -a12],
        [0.0, z12, -a21, z22 - a22],
    ]
    rhs = [c.a11, c.a21, c.a12, c.a22]
    try:
        v = gauss_solve(mat, rhs)
    except SingularSystemError as exc:
        raise SingularSystemError(
            "no unique bounded solution: shock and closed-loop spectra collide"
        ) from exc
    n = Mat2(v[0], v[2], v[1], v[3])
    resid = ((n @ m.a_zz) - (a_cl @ n) - c).max_abs()
    if not resid < 1e-10:
        raise SingularSystemError(
            f"minimal-state-variable solve unreliable: residual {resid:.3e}")
    return n


def msv_path(m: StructuralMatrices, rule: TaylorRule, n_msv: Mat2,
             shocks: ShockSpec, horizon: int) -> Trajectory:
    """Path with y_t = N z_t every period; shocks decay deterministically."""
    ez, eu = shocks.innovations(horizon)
    xs, pis, iis, zs, us = [], [], [], [shocks.z0], [shocks.u0]
    for t in range(horizon + 1):
        z_t, u_t = zs[t], us[t]
        y = n_msv.apply((z_t, u_t))
        xs.append(y[0])
        pis.append(y[1])
        iis.append(rule.f_x * y[0] + rule.f_pi * y[1]
                   + rule.f_z * z_t + rule.f_u * u_t)
        if t < horizon:
            zs.append(m.a_zz.a11 * z_t + ez[t])
            us.append(m.a_zz.a22 * u_t + eu[t])
    return Trajectory(tuple(xs), tuple(pis), tuple(iis), tuple(zs), tuple(us))


def impulse_response(m: StructuralMatrices, rule: TaylorRule, regime: Regime,
                     shock: str, magnitude: float, horizon: int,
                     solution: RamseySolution | None = None) -> Trajectory:
    """Deterministic response to a one-off impulse in the chosen shock state.

    The anchored regime needs the solution bundle that produced the rule (for
    the anchor and the multipliers); the Taylor regime computes its own
    minimal-state-variable map.
    """
    if shock not in ("z", "u"):
        raise ValueError(f"shock must be 'z' or 'u', got {shock!r}")
    spec = ShockSpec(z0=magnitude if shock == "z" else 0.0,
                     u0=magnitude if shock == "u" else 0.0)
    if regime is Regime.RAMSEY_ANCHORED:
        if solution is None:
            raise ValueError("anchored regime requires the solution bundle")
        return ramsey_path(solution, spec, horizon)
    n_msv = solve_msv(m, rule)
    return msv_path(m, rule, n_msv, spec, horizon)


@dataclass(frozen=True)
class RegimeComparison:
    """Hopf-bifurcation evidence: optimal sink vs determinate Taylor source."""

    ramsey_gains: tuple[float, float]      # (F_x, F_pi)
    nk_gains: tuple[float, float]
    ramsey_moduli: tuple[float, float]     # scaled closed loop, both < 1
    nk_eigen: EigenReport                  # rule-plane closed loop
    nk_region: RegionClass
    d_ramsey: float                        # determinant at the optimal gains
    d_nk: float                            # determinant at the Taylor gains
    crossing_fraction: float | None        # where D = 1 on the segment
    crossing_gains: tuple[float, float] | None
    warning: str | None


PLAUSIBLE_BOX = ((1.0, 2.0), (0.0, 1.0))  # (F_pi range, F_x range)


def hopf_demo(params: ModelParams, prefs: Preferences, nk_rule: TaylorRule,
              border_tol: float = 1e-9) -> RegimeComparison:
    """Compare the optimal-policy regime with a Taylor rule in one plane.

    The optimal side is solved under the benchmark matrix convention (the one
    the reference tables use); the Taylor side and the determinant line are
    evaluated under the caller's variant.  Crossing D = 1 along the segment
    between the two gain points is the regime-change bifurcation.
    """
    warning = None
    (pi_lo, pi_hi), (x_lo, x_hi) = PLAUSIBLE_BOX
    if not (pi_lo < nk_rule.f_pi < pi_hi and x_lo < nk_rule.f_x < x_hi):
        warning = (f"rule (F_pi={nk_rule.f_pi}, F_x={nk_rule.f_x}) is outside "
                   f"the plausible box F_pi in ({pi_lo}, {pi_hi}), "
                   f"F_x in ({x_lo}, {x_hi})")

    ramsey_params = dataclasses.replace(params, variant=MatrixVariant.APPENDIX_A)
    sol = solve_ramsey(ramsey_params, prefs)
    rf_x, rf_pi = sol.f_y

    _, d_r = trace_det_from_rule(params, rf_x, rf_pi)
    _, d_nk = trace_det_from_rule(params, nk_rule.f_x, nk_rule.f_pi)
    nk_region = classify_region(params, nk_rule.f_x, nk_rule.f_pi, border_tol)

    crossing = None
    crossing_gains = None
    if d_nk != d_r:
        s = (1.0 - d_r) / (d_nk - d_r)
        if 0.0 <= s <= 1.0:
            crossing = s
            crossing_gains = (rf_x + s * (nk_rule.f_x - rf_x),
                              rf_pi + s * (nk_rule.f_pi - rf_pi))

    return RegimeComparison(
        ramsey_gains=sol.f_y,
        nk_gains=(nk_rule.f_x, nk_rule.f_pi),
        ramsey_moduli=sol.eigen.moduli(),
        nk_eigen=nk_region.eigen,
        nk_region=nk_region,
        d_ramsey=d_r,
        d_nk=d_nk,
        crossing_fraction=crossing,
        crossing_gains=crossing_gains,
        warning=warning,
    )
