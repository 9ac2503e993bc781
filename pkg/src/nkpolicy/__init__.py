"""Taylor-rule stability geometry and optimal monetary policy, on 2x2 blocks.

The package maps the bifurcation borders of the small New-Keynesian model in
the plane of interest-rate rule coefficients, solves the discounted
linear-quadratic optimal-policy problem, and simulates both regimes.  See the
README for the command-line front end.
"""
from .linalg2 import (
    ConvergenceError,
    EigenReport,
    Mat2,
    SingularSystemError,
    char_poly_eval,
    eig2,
    eig_from_trace_det,
    solve_dare,
    solve_discrete_sylvester,
    solve_linear_2x2,
)
from .model import (
    MatrixVariant,
    ModelParams,
    PoleError,
    StructuralMatrices,
    TaylorRule,
    TransferFunction,
    UncontrollableError,
    build_matrices,
    closed_loop,
    kalman_controllability_rank,
    open_loop_trace_det,
    transfer_function,
)
from .stability import (
    DeterminacyClass,
    InterestRateTiming,
    NoAnchorError,
    PolePlacementMethod,
    RegionClass,
    RegionLabel,
    TriangleVertices,
    anchor_from_rates,
    classify_determinacy,
    classify_region,
    discriminant_border,
    flip_border,
    hopf_border,
    is_negative_feedback_scalar,
    pole_place,
    rule_from_trace_det,
    saddle_node_border,
    scalar_accelerationist_bounds,
    sweep_grid,
    taylor_principle_holds,
    trace_det_from_rule,
    triangle_vertices,
)
from .ramsey import (
    AnchorUnavailableError,
    FocReport,
    LqrSweepRow,
    Preferences,
    RamseySolution,
    ShockGainConvention,
    TABLE2_WEIGHTS,
    foc_residuals,
    initial_anchor,
    loss_value,
    lqr_triangle_sweep,
    solve_ramsey,
)
from .simulate import (
    Regime,
    RegimeComparison,
    ShockSpec,
    Trajectory,
    attach_multipliers,
    hopf_demo,
    impulse_response,
    msv_path,
    ramsey_path,
    simulate_closed_loop,
    solve_msv,
)
from . import kernels

__version__ = "0.1.0"
