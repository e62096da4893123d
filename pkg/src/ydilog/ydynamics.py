"""Evolution of the non-constant level-l recursion in the spectral
parameter, periodicity measurement, and the periodic dilogarithm sum.

A trajectory is determined by two consecutive positive slices; the step
``Y(u+1) = RHS(Y(u)) / Y(u-1)`` is evaluated in log space throughout, so
generic orbits cannot overflow no matter how widely they swing.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .dilog import PI2_OVER_6, rogers_dilog
from .qsolve import exponent_matrix
from .rootsys import RootSystem


@dataclass(frozen=True)
class Trajectory:
    """Slices ``values[u][i][m]`` for u = 0..U; immutable after creation."""

    rs: RootSystem
    level: int
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values.flags.writeable = False

    @property
    def steps(self) -> int:
        return self.values.shape[0] - 1

    def full_period(self) -> int:
        """The guaranteed recurrence period ``2 (h + level)``."""
        h = self.rs.coxeter
        assert h is not None
        return 2 * (h + self.level)


def _as_slice(rs: RootSystem, level: int, data, name: str) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.shape != (rs.rank, level - 1):
        raise ValueError(
            f"{name} must have shape ({rs.rank}, {level - 1}), got {arr.shape}"
        )
    if not np.all(arr > 0.0):
        raise ValueError(f"{name} must be strictly positive")
    return arr


def _log_rhs(expo: np.ndarray, log_y: np.ndarray) -> np.ndarray:
    numerator = expo @ np.logaddexp(0.0, log_y)
    inv = np.logaddexp(0.0, -log_y)
    denominator = np.zeros_like(log_y)
    denominator[:, 1:] += inv[:, :-1]
    denominator[:, :-1] += inv[:, 1:]
    return numerator - denominator


def evolve(rs: RootSystem, level: int, slice0, slice1, steps: int) -> Trajectory:
    """Iterate the recursion from slices u = 0, 1 for ``steps - 1`` steps,
    returning slices u = 0..steps."""
    if not rs.is_simply_laced:
        raise ValueError(f"evolution needs a simply-laced type, got {rs.label}")
    if level < 2:
        raise ValueError(f"level must be >= 2, got {level}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    y0 = _as_slice(rs, level, slice0, "slice0")
    y1 = _as_slice(rs, level, slice1, "slice1")
    expo = exponent_matrix(rs)
    values = np.empty((steps + 1, rs.rank, level - 1))
    values[0], values[1] = y0, y1
    log_prev, log_cur = np.log(y0), np.log(y1)
    for u in range(1, steps):
        log_next = _log_rhs(expo, log_cur) - log_prev
        values[u + 1] = np.exp(log_next)
        log_prev, log_cur = log_cur, log_next
    return Trajectory(rs=rs, level=level, values=values)


def check_periodicity(traj: Trajectory, shift: int | None = None) -> float:
    """Max relative deviation ``|Y(u + shift) - Y(u)| / Y(u)`` over all
    available u; the default shift is the full period ``2 (h + level)``."""
    period = traj.full_period() if shift is None else shift
    if period < 1:
        raise ValueError(f"shift must be >= 1, got {period}")
    if traj.steps + 1 < period + 2:
        raise ValueError(
            f"trajectory too short: need at least {period + 2} slices, have {traj.steps + 1}"
        )
    base = traj.values[: traj.steps + 1 - period]
    shifted = traj.values[period:]
    return float(np.max(np.abs(shifted - base) / base))


def periodic_dilog_sum(traj: Trajectory) -> float:
    """Normalized dilogarithm sum over one full period of slices.

    For any positive trajectory this equals ``2 (level - 1) n h``.
    """
    period = traj.full_period()
    if traj.steps + 1 < period:
        raise ValueError(
            f"trajectory too short: need at least {period} slices, have {traj.steps + 1}"
        )
    total = 0.0
    for u in range(period):
        for y in traj.values[u].flat:
            y = float(y)
            total += rogers_dilog(y / (1.0 + y))
    return total / PI2_OVER_6


def trajectory_records(traj: Trajectory) -> list[tuple[int, int, int, float]]:
    """Flatten a trajectory to ``(u, i, m, value)`` records, 1-based in i, m."""
    out = []
    for u in range(traj.steps + 1):
        for i in range(traj.rs.rank):
            for m in range(traj.level - 1):
                out.append((u, i + 1, m + 1, float(traj.values[u, i, m])))
    return out


def random_slices(rs: RootSystem, level: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Two seeded random positive slices, entries log-uniform in [1/e, e]."""
    rng = random.Random(seed)

    def draw() -> np.ndarray:
        return np.array(
            [[math.exp(rng.uniform(-1.0, 1.0)) for _ in range(level - 1)] for _ in range(rs.rank)]
        )

    return draw(), draw()
