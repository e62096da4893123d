"""Solvers for the constant systems.

Three routes are deliberately independent of each other:

* ``solve_q_system`` runs Newton's method with backtracking in logit
  coordinates on the weighted Gram-product equations
  ``(1 - Q_i)^nu_i = prod_j Q_j^{a'_ij}`` with ``0 < Q_i < 1``.
* ``solve_y_form`` runs a damped log-space fixed point on the equivalent
  Y-variable form ``Y_i^2 = prod_j (1 + Y_j)^{2 d_ij - c_ij}`` (and its
  flat variant with an extra ``1 + 1/Y_i`` denominator).
* ``solve_constant_y`` runs the same damped scheme on the level-l grid
  system with hard-wall boundary (the edge denominator factors are 1).

Agreement of the routes under ``change_vars`` is a tested invariant, so do
not collapse one into another.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rootsys import RootSystem, weight_gram


class SolveError(RuntimeError):
    """A solver failed to reach the requested residual."""


@dataclass(frozen=True)
class SolverConfig:
    """Tolerance on the max log-form defect, iteration cap, and damping."""

    tol: float = 1e-12
    max_iter: int = 100
    theta: float = 0.5


NEWTON_DEFAULTS = SolverConfig(tol=1e-12, max_iter=100)
FIXED_POINT_DEFAULTS = SolverConfig(tol=1e-13, max_iter=1_000_000, theta=0.5)


@dataclass(frozen=True)
class QSolution:
    """Solution of the Q-equations with its final residual and step count."""

    q: tuple[float, ...]
    residual: float
    iterations: int


@dataclass(frozen=True)
class YSolution:
    """Positive solution of a single-level Y-form."""

    y: tuple[float, ...]
    residual: float
    iterations: int


@dataclass(frozen=True)
class YGrid:
    """Positive solution of the level-l system; ``y[i][m]`` is node i+1,
    level index m+1, so the grid has shape (rank, level - 1)."""

    y: tuple[tuple[float, ...], ...]
    level: int
    residual: float
    iterations: int


def change_vars(value: float, direction: str) -> float:
    """Mutually inverse maps Y -> Q = Y/(1+Y) and Q -> Y = Q/(1-Q)."""
    if direction == "y_to_q":
        if not value > 0.0:
            raise ValueError(f"y_to_q needs a positive value, got {value!r}")
        return value / (1.0 + value)
    if direction == "q_to_y":
        if not 0.0 < value < 1.0:
            raise ValueError(f"q_to_y needs a value in (0, 1), got {value!r}")
        return value / (1.0 - value)
    raise ValueError(f"unknown direction {direction!r}; expected 'y_to_q' or 'q_to_y'")


def _gram_float(rs: RootSystem, variant: str) -> np.ndarray:
    gram = weight_gram(rs, variant)
    return np.array([[float(x) for x in row] for row in gram], dtype=float)


def exponent_matrix(rs: RootSystem) -> np.ndarray:
    """The Y-form exponents ``2 d_ij - c_ij`` as a float matrix."""
    n = rs.rank
    out = -np.array(rs.cartan, dtype=float)
    out[np.arange(n), np.arange(n)] += 2.0
    return out


def q_residual(rs: RootSystem, variant: str, q: np.ndarray) -> np.ndarray:
    """Log-form defect ``nu_i log(1-Q_i) - sum_j a'_ij log Q_j``."""
    gram = _gram_float(rs, variant)
    nu = np.array(rs.nu, dtype=float)
    return nu * np.log1p(-q) - gram @ np.log(q)


def solve_q_system(rs: RootSystem, variant: str, config: SolverConfig | None = None) -> QSolution:
    """Newton with backtracking in logit coordinates, started at Q = 1/2.

    The logit chart keeps every iterate inside (0, 1); the Jacobian
    ``-(diag(nu Q) + A' diag(1 - Q))`` is nonsingular there because the
    Gram matrix is positive definite.
    """
    cfg = config or NEWTON_DEFAULTS
    gram = _gram_float(rs, variant)
    nu = np.array(rs.nu, dtype=float)
    n = rs.rank
    x = np.zeros(n)

    def residual(xv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        qv = 1.0 / (1.0 + np.exp(-xv))
        return qv, nu * np.log1p(-qv) - gram @ np.log(qv)

    q, f = residual(x)
    for iteration in range(cfg.max_iter + 1):
        res = float(np.max(np.abs(f)))
        if res <= cfg.tol:
            return QSolution(q=tuple(float(v) for v in q), residual=res, iterations=iteration)
        if iteration == cfg.max_iter:
            break
        jac = -(np.diag(nu * q) + gram * (1.0 - q)[np.newaxis, :])
        dx = np.linalg.solve(jac, -f)
        fnorm = float(np.linalg.norm(f))
        step = 1.0
        while True:
            q_new, f_new = residual(x + step * dx)
            if float(np.linalg.norm(f_new)) < fnorm:
                x = x + step * dx
                q, f = q_new, f_new
                break
            step *= 0.5
            if step < 1e-12:
                raise SolveError(
                    f"line search stalled for {rs.label}[{variant}] at residual {res:.3e}"
                )
    raise SolveError(
        f"Q-system solve for {rs.label}[{variant}] did not reach tol={cfg.tol:.1e} "
        f"within {cfg.max_iter} iterations (residual {res:.3e})"
    )


def y_form_residual(rs: RootSystem, variant: str, y: np.ndarray) -> float:
    """Max log defect of the Y-form at ``y`` (flat variant adds the
    ``1 + 1/Y_i`` denominator)."""
    logy = np.log(np.asarray(y, dtype=float))
    rhs = exponent_matrix(rs) @ np.logaddexp(0.0, logy)
    if variant.lower().replace("_", "") == "aflat":
        rhs = rhs - np.logaddexp(0.0, -logy)
    return float(np.max(np.abs(2.0 * logy - rhs)))


def solve_y_form(rs: RootSystem, variant: str, config: SolverConfig | None = None) -> YSolution:
    """Damped log-space fixed point for the Y-form, started at Y = 1."""
    cfg = config or FIXED_POINT_DEFAULTS
    expo = exponent_matrix(rs)
    flat = variant.lower().replace("_", "") == "aflat"
    if not flat and variant.lower() != "a":
        raise ValueError(f"unknown variant {variant!r}; expected 'a' or 'aflat'")
    logy = np.zeros(rs.rank)
    for iteration in range(cfg.max_iter + 1):
        rhs = expo @ np.logaddexp(0.0, logy)
        if flat:
            rhs = rhs - np.logaddexp(0.0, -logy)
        defect = float(np.max(np.abs(2.0 * logy - rhs)))
        if defect <= cfg.tol:
            y = np.exp(logy)
            return YSolution(y=tuple(float(v) for v in y), residual=defect, iterations=iteration)
        logy = (1.0 - cfg.theta) * logy + cfg.theta * 0.5 * rhs
    raise SolveError(
        f"Y-form solve for {rs.label}[{variant}] did not reach tol={cfg.tol:.1e} "
        f"within {cfg.max_iter} iterations (defect {defect:.3e})"
    )


def _grid_log_rhs(expo: np.ndarray, log_y: np.ndarray) -> np.ndarray:
    # log of the level-l right hand side; boundary factors at m=0 and m=l are 1.
    numerator = expo @ np.logaddexp(0.0, log_y)
    inv = np.logaddexp(0.0, -log_y)
    denominator = np.zeros_like(log_y)
    denominator[:, 1:] += inv[:, :-1]
    denominator[:, :-1] += inv[:, 1:]
    return numerator - denominator


def grid_residual(rs: RootSystem, y: np.ndarray) -> float:
    """Max log defect of the level-l system at a positive grid ``y``."""
    log_y = np.log(np.asarray(y, dtype=float))
    return float(np.max(np.abs(2.0 * log_y - _grid_log_rhs(exponent_matrix(rs), log_y))))


def solve_constant_y(rs: RootSystem, level: int, config: SolverConfig | None = None) -> YGrid:
    """Damped log-space fixed point for the level-l grid system.

    Requires a simply-laced type and level >= 2; starts from Y = 1
    everywhere, which preserves both the diagram symmetry and the
    m <-> level - m reflection symmetry of the equations.
    """
    if not rs.is_simply_laced:
        raise ValueError(f"level solver needs a simply-laced type, got {rs.label}")
    if level < 2:
        raise ValueError(f"level must be >= 2, got {level}")
    cfg = config or FIXED_POINT_DEFAULTS
    expo = exponent_matrix(rs)
    log_y = np.zeros((rs.rank, level - 1))
    for iteration in range(cfg.max_iter + 1):
        rhs = _grid_log_rhs(expo, log_y)
        defect = float(np.max(np.abs(2.0 * log_y - rhs)))
        if defect <= cfg.tol:
            y = np.exp(log_y)
            return YGrid(
                y=tuple(tuple(float(v) for v in row) for row in y),
                level=level,
                residual=defect,
                iterations=iteration,
            )
        log_y = (1.0 - cfg.theta) * log_y + cfg.theta * 0.5 * rhs
    raise SolveError(
        f"level-{level} solve for {rs.label} did not reach tol={cfg.tol:.1e} "
        f"within {cfg.max_iter} iterations (defect {defect:.3e})"
    )
