"""Closed-form dense linear algebra on 2x2 matrices.

Everything in this package runs on 2x2 blocks, so eigenvalues come from the
quadratic formula, Sylvester equations from a 4x4 Kronecker system, and the
Riccati equation from a plain fixed-point iteration.  No general-purpose
eigensolver or external linear-algebra library is involved, which keeps every
result exactly reproducible and easy to test against independent oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


class ConvergenceError(RuntimeError):
    """An iterative solver ran out of iterations; carries the last residual."""

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class SingularSystemError(ValueError):
    """A linear system has no unique solution at the working tolerance."""


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} entries must be finite, got {v!r}")


@dataclass(frozen=True)
class Mat2:
    """Immutable 2x2 real matrix, row-major entries."""

    a11: float
    a12: float
    a21: float
    a22: float

    def __post_init__(self):
        _require_finite("Mat2", self.a11, self.a12, self.a21, self.a22)

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(1.0, 0.0, 0.0, 1.0)

    @staticmethod
    def zero() -> "Mat2":
        return Mat2(0.0, 0.0, 0.0, 0.0)

    @staticmethod
    def diag(d1: float, d2: float) -> "Mat2":
        return Mat2(d1, 0.0, 0.0, d2)

    def entries(self) -> tuple[float, float, float, float]:
        return (self.a11, self.a12, self.a21, self.a22)

    def rows(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return ((self.a11, self.a12), (self.a21, self.a22))

    def trace(self) -> float:
        return self.a11 + self.a22

    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21

    def transpose(self) -> "Mat2":
        return Mat2(self.a11, self.a21, self.a12, self.a22)

    def apply(self, v: tuple[float, float]) -> tuple[float, float]:
        """Matrix-vector product M @ v."""
        return (self.a11 * v[0] + self.a12 * v[1],
                self.a21 * v[0] + self.a22 * v[1])

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a11 + other.a11, self.a12 + other.a12,
                    self.a21 + other.a21, self.a22 + other.a22)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a11 - other.a11, self.a12 - other.a12,
                    self.a21 - other.a21, self.a22 - other.a22)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def scale(self, c: float) -> "Mat2":
        return Mat2(c * self.a11, c * self.a12, c * self.a21, c * self.a22)

    def norm_inf(self) -> float:
        return max(abs(self.a11) + abs(self.a12), abs(self.a21) + abs(self.a22))

    def max_abs(self) -> float:
        return max(abs(self.a11), abs(self.a12), abs(self.a21), abs(self.a22))


@dataclass(frozen=True)
class EigenReport:
    """Eigenvalue summary of a 2x2 matrix.

    Real pairs are ordered lambda1 <= lambda2; complex pairs are conjugate with
    lambda1 carrying the negative imaginary part, and both moduli then equal
    sqrt(det) exactly.
    """

    trace: float
    det: float
    discriminant: float
    lambda1: complex
    lambda2: complex
    modulus1: float
    modulus2: float

    @property
    def is_complex_pair(self) -> bool:
        return self.discriminant < 0.0

    def moduli(self) -> tuple[float, float]:
        return (self.modulus1, self.modulus2)


def eig_from_trace_det(trace: float, det: float) -> EigenReport:
    """Eigenvalues of any 2x2 matrix with the given trace and determinant."""
    _require_finite("eig_from_trace_det", trace, det)
    disc = trace * trace - 4.0 * det
    if disc >= 0.0:
        s = math.sqrt(disc)
        lo = (trace - s) / 2.0
        hi = (trace + s) / 2.0
        return EigenReport(trace, det, disc, complex(lo, 0.0), complex(hi, 0.0),
                           abs(lo), abs(hi))
    im = math.sqrt(-disc) / 2.0
    re = trace / 2.0
    mod = math.sqrt(det)  # |lambda|^2 = re^2 + im^2 = det when disc < 0
    return EigenReport(trace, det, disc, complex(re, -im), complex(re, im),
                       mod, mod)


def eig2(m: Mat2) -> EigenReport:
    """Closed-form eigenvalues of a 2x2 matrix."""
    return eig_from_trace_det(m.trace(), m.det())


def char_poly_eval(m: Mat2, a: float) -> float:
    """Evaluate p(a) = a^2 - trace(M) a + det(M).

    For real eigenvalues, p(a) > 0 iff both lie on the same side of a, and
    p(a) < 0 iff they straddle a.
    """
    _require_finite("char_poly_eval", a)
    return a * a - m.trace() * a + m.det()


def gauss_solve(matrix: list[list[float]], rhs: list[float],
                pivot_tol: float = 1e-13) -> list[float]:
    """Solve a small dense system by Gaussian elimination with partial pivoting.

    Raises SingularSystemError when the best available pivot is negligible
    relative to the row scale.
    """
    n = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    scale = max(abs(v) for row in matrix for v in row)
    scale = max(scale, 1.0)
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if abs(a[piv][col]) <= pivot_tol * scale:
            raise SingularSystemError(
                f"pivot {a[piv][col]!r} below tolerance in column {col}")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
        inv = 1.0 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f != 0.0:
                for c in range(col, n + 1):
                    a[r][c] -= f * a[col][c]
    x = [0.0] * n
    for r in range(n - 1, -1, -1):
        acc = a[r][n]
        for c in range(r + 1, n):
            acc -= a[r][c] * x[c]
        x[r] = acc / a[r][r]
    return x


def solve_linear_2x2(m: Mat2, rhs: tuple[float, float],
                     det_tol: float = 1e-12) -> tuple[float, float]:
    """Solve M v = rhs for a 2x2 system.

    Raises SingularSystemError when |det(M)| is below det_tol relative to the
    size of the determinant's terms.
    """
    _require_finite("solve_linear_2x2 rhs", rhs[0], rhs[1])
    d = m.det()
    scale = max(1.0, abs(m.a11 * m.a22) + abs(m.a12 * m.a21))
    if abs(d) <= det_tol * scale:
        raise SingularSystemError(f"matrix is singular: det={d!r}")
    x = gauss_solve([[m.a11, m.a12], [m.a21, m.a22]], [rhs[0], rhs[1]])
    return (x[0], x[1])


def solve_mat_eq_2x2(m: Mat2, rhs: Mat2) -> Mat2:
    """Solve M X = rhs column by column."""
    c1 = solve_linear_2x2(m, (rhs.a11, rhs.a21))
    c2 = solve_linear_2x2(m, (rhs.a12, rhs.a22))
    return Mat2(c1[0], c2[0], c1[1], c2[1])


def _dare_step(a: Mat2, b: tuple[float, float], q: Mat2, r: float,
               p: Mat2) -> Mat2:
    """One Riccati backup: Q + A'PA - A'PB (R + B'PB)^-1 B'PA, symmetrized."""
    pb = p.apply(b)                       # P b
    bpb = r + b[0] * pb[0] + b[1] * pb[1]
    at = a.transpose()
    apb = at.apply(pb)                    # A' P b
    apa = (at @ p) @ a
    k = 1.0 / bpb
    nxt = Mat2(
        q.a11 + apa.a11 - apb[0] * apb[0] * k,
        q.a12 + apa.a12 - apb[0] * apb[1] * k,
        q.a21 + apa.a21 - apb[1] * apb[0] * k,
        q.a22 + apa.a22 - apb[1] * apb[1] * k,
    )
    off = 0.5 * (nxt.a12 + nxt.a21)
    return Mat2(nxt.a11, off, off, nxt.a22)


def dare_residual(a: Mat2, b: tuple[float, float], q: Mat2, r: float,
                  p: Mat2) -> float:
    """Max-abs fixed-point residual of the discrete algebraic Riccati equation."""
    return (_dare_step(a, b, q, r, p) - p).max_abs()


def solve_dare_with_stats(a: Mat2, b: tuple[float, float], q: Mat2, r: float,
                          tol: float = 1e-8, max_iter: int = 1_000_000,
                          ) -> tuple[Mat2, int, float]:
    """Fixed-point solve of P = Q + A'PA - A'PB (R + B'PB)^-1 B'PA.

    Returns (P, iterations, residual).  Iterates from P0 = Q + I; a strictly
    positive start makes the iteration converge to the stabilizing solution
    even when Q is singular (undetectable cost), which the table pipelines
    require.  The step rule stops at ||P_{k+1} - P_k||_inf < 1e-12 max(1,||P_k||).
    """
    _require_finite("solve_dare B", b[0], b[1])
    if not (r > 0.0 and math.isfinite(r)):
        raise ValueError(f"R must be strictly positive, got {r!r}")
    if abs(q.a12 - q.a21) > 1e-12 * max(1.0, q.max_abs()):
        raise ValueError("Q must be symmetric")
    q_eigs = eig2(q)
    if min(q_eigs.lambda1.real, q_eigs.lambda2.real) < -1e-12 * max(1.0, q.max_abs()):
        raise ValueError("Q must be positive semidefinite")

    p = q + Mat2.identity()
    step_tol = 1e-12
    for k in range(1, max_iter + 1):
        nxt = _dare_step(a, b, q, r, p)
        if (nxt - p).max_abs() < step_tol * max(1.0, p.max_abs()):
            resid = dare_residual(a, b, q, r, nxt)
            if resid < tol:
                return nxt, k, resid
            raise ConvergenceError(
                f"Riccati iteration stalled after {k} steps at residual "
                f"{resid:.3e} (tol {tol:.1e})", resid, k)
        p = nxt
    resid = dare_residual(a, b, q, r, p)
    raise ConvergenceError(
        f"Riccati iteration did not converge in {max_iter} steps "
        f"(residual {resid:.3e})", resid, max_iter)


def solve_dare(a: Mat2, b: tuple[float, float], q: Mat2, r: float,
               tol: float = 1e-8, max_iter: int = 1_000_000) -> Mat2:
    """Stabilizing solution of the discrete algebraic Riccati equation."""
    p, _, _ = solve_dare_with_stats(a, b, q, r, tol, max_iter)
    return p


def solve_discrete_sylvester(a_s: Mat2, b_s: Mat2, c_s: Mat2) -> Mat2:
    """Solve As X Bs + X = Cs by 4x4 Kronecker vectorization.

    Unique solvability requires I + Bs' (x) As to be nonsingular, which holds
    whenever no product of eigenvalues of As and Bs equals -1.  The result is
    checked to satisfy ||As X Bs + X - Cs||_inf < 1e-10 max(1, ||Cs||_inf);
    at unit scale that is the absolute 1e-10 contract.
    """
    # column-major vec: (Bs' (x) As + I) vec(X) = vec(Cs)
    (a11, a12, a21, a22) = a_s.entries()
    (b11, b12, b21, b22) = b_s.entries()
    m = [
        [b11 * a11 + 1.0, b11 * a12, b21 * a11, b21 * a12],
        [b11 * a21, b11 * a22 + 1.0, b21 * a21, b21 * a22],
        [b12 * a11, b12 * a12, b22 * a11 + 1.0, b22 * a12],
        [b12 * a21, b12 * a22, b22 * a21, b22 * a22 + 1.0],
    ]
    rhs = [c_s.a11, c_s.a21, c_s.a12, c_s.a22]
    try:
        v = gauss_solve(m, rhs)
    except SingularSystemError as exc:
        raise SingularSystemError(
            "no unique Sylvester solution: spectra condition violated") from exc
    x = Mat2(v[0], v[2], v[1], v[3])
    resid = ((a_s @ x) @ b_s + x - c_s).max_abs()
    if not resid < 1e-10 * max(1.0, c_s.max_abs()):
        raise SingularSystemError(
            f"Sylvester solve is unreliable here: residual {resid:.3e}")
    return x
