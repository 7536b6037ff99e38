"""Fixed-step RK4 integration of the driven orbit, used as ground truth.

Two systems are integrated in scaled units, both starting from the circular
state at the moment the light switches on:

* the full equation ``r'' = -r/|r|^3 - eps (cos(alpha t + delta), sin(alpha t + delta))``;
* its linearization about the circular orbit ``r0(t)``,
  ``r1'' = -(r1 - 3 (r0 . r1) r0) - eps (...)`` with ``r1(0) = r1'(0) = 0``.

The step loop is plain Python on floats. For four-component states this is
faster than numpy and bit-reproducible across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import InvalidConfig, SingularRadius, WindowMismatch
from .model import ScaledConfig
from .orbit import OrbitSolution, positions, velocities

__all__ = [
    "MAX_DT",
    "SINGULAR_RADIUS",
    "IntegratorSettings",
    "Trajectory",
    "ErrorReport",
    "integrate_full",
    "integrate_linearized",
    "sample_analytic",
    "compare",
    "richardson_ratio",
]

MAX_DT = 1e-2
SINGULAR_RADIUS = 1e-6

State = tuple[float, float, float, float]


@dataclass(frozen=True)
class IntegratorSettings:
    """Step size and horizon for the fixed-step integrator.

    The requested ``dt`` is shrunk slightly so that a whole number of steps
    lands exactly on ``t_end``.
    """

    dt: float
    t_end: float
    method: str = "rk4"

    def __post_init__(self) -> None:
        if not (0.0 < self.dt <= MAX_DT):
            raise InvalidConfig(f"dt must be in (0, {MAX_DT}], got {self.dt!r}")
        if not (self.t_end > 0.0 and math.isfinite(self.t_end)):
            raise InvalidConfig(f"t_end must be positive and finite, got {self.t_end!r}")
        if self.method != "rk4":
            raise InvalidConfig(f"only 'rk4' is supported, got {self.method!r}")

    @property
    def n_steps(self) -> int:
        return max(1, math.ceil(self.t_end / self.dt * (1.0 - 1e-12)))

    @property
    def step(self) -> float:
        return self.t_end / self.n_steps


@dataclass(frozen=True)
class Trajectory:
    """Sampled orbit: ``times`` of shape (N,), ``positions`` and ``velocities`` of shape (N, 2)."""

    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.times)
        if self.positions.shape != (n, 2) or self.velocities.shape != (n, 2):
            raise ValueError("times, positions and velocities must have matching lengths")
        if n > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")
        if not (np.all(np.isfinite(self.positions)) and np.all(np.isfinite(self.velocities))):
            raise ValueError("trajectory contains non-finite values")

    def __len__(self) -> int:
        return len(self.times)


def _rk4(deriv: Callable[[float, State], State], y0: State, s: IntegratorSettings) -> tuple[np.ndarray, np.ndarray]:
    n = s.n_steps
    h = s.step
    out = np.empty((n + 1, 4))
    out[0] = y0
    y = y0
    for i in range(n):
        t = i * h
        k1 = deriv(t, y)
        y2 = tuple(a + 0.5 * h * b for a, b in zip(y, k1))
        k2 = deriv(t + 0.5 * h, y2)
        y3 = tuple(a + 0.5 * h * b for a, b in zip(y, k2))
        k3 = deriv(t + 0.5 * h, y3)
        y4 = tuple(a + h * b for a, b in zip(y, k3))
        k4 = deriv(t + h, y4)
        y = tuple(
            a + h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
            for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4)
        )
        out[i + 1] = y
    times = np.arange(n + 1) * h
    return times, out


def integrate_full(cfg: ScaledConfig, s: IntegratorSettings) -> Trajectory:
    """Integrate the nonlinear driven equation of motion.

    Raises
    ------
    SingularRadius
        If the electron comes within ``SINGULAR_RADIUS`` of the nucleus.
    """
    eps, alpha, delta = cfg.eps, cfg.alpha, cfg.delta

    def deriv(t: float, y: State) -> State:
        x, yy, vx, vy = y
        r2 = x * x + yy * yy
        r = math.sqrt(r2)
        if r < SINGULAR_RADIUS:
            raise SingularRadius(
                f"|r| = {r:.3e} at t = {t:.6g}: the orbit collapsed onto the nucleus; "
                "near-resonant driving is the usual cause"
            )
        inv_r3 = 1.0 / (r2 * r)
        phase = alpha * t + delta
        return (
            vx,
            vy,
            -x * inv_r3 - eps * math.cos(phase),
            -yy * inv_r3 - eps * math.sin(phase),
        )

    y0 = (math.cos(cfg.phi0), math.sin(cfg.phi0), -math.sin(cfg.phi0), math.cos(cfg.phi0))
    times, out = _rk4(deriv, y0, s)
    return Trajectory(times, out[:, :2].copy(), out[:, 2:].copy())


def integrate_linearized(cfg: ScaledConfig, s: IntegratorSettings) -> Trajectory:
    """Integrate the first-order perturbation and return ``r0 + r1``."""
    eps, alpha, delta, phi0 = cfg.eps, cfg.alpha, cfg.delta, cfg.phi0

    def deriv(t: float, y: State) -> State:
        x, yy, vx, vy = y
        c = math.cos(t + phi0)
        sn = math.sin(t + phi0)
        radial = 3.0 * (c * x + sn * yy)
        phase = alpha * t + delta
        return (
            vx,
            vy,
            -(x - radial * c) - eps * math.cos(phase),
            -(yy - radial * sn) - eps * math.sin(phase),
        )

    times, out = _rk4(deriv, (0.0, 0.0, 0.0, 0.0), s)
    angle = times + phi0
    r0 = np.stack([np.cos(angle), np.sin(angle)], axis=-1)
    v0 = np.stack([-np.sin(angle), np.cos(angle)], axis=-1)
    return Trajectory(times, r0 + out[:, :2], v0 + out[:, 2:])


def sample_analytic(sol: OrbitSolution, times) -> Trajectory:
    times = np.asarray(times, dtype=float)
    return Trajectory(times, positions(sol, times), velocities(sol, times))


@dataclass(frozen=True)
class ErrorReport:
    """Position deviation between the analytic orbit and a numeric trajectory.

    The normalized fields are ``None`` when ``eps`` is zero.
    """

    max_dev: float
    rms_dev: float
    dev_over_eps: Optional[float]
    dev_over_eps2: Optional[float]
    n_samples: int
    t_start: float
    t_end: float

    def as_dict(self) -> dict:
        return {
            "max_dev": self.max_dev,
            "rms_dev": self.rms_dev,
            "dev_over_eps": self.dev_over_eps,
            "dev_over_eps2": self.dev_over_eps2,
            "n_samples": self.n_samples,
            "t_start": self.t_start,
            "t_end": self.t_end,
        }


def compare(
    analytic: OrbitSolution,
    numeric: Trajectory,
    window: Optional[tuple[float, float]] = None,
) -> ErrorReport:
    """Deviation of ``numeric`` from ``analytic`` over ``window`` (default: the whole trajectory).

    Raises
    ------
    WindowMismatch
        If the trajectory is empty, starts before switch-on, or does not
        cover the requested window.
    """
    times = numeric.times
    if len(times) == 0:
        raise WindowMismatch("numeric trajectory is empty")
    if times[0] < 0.0:
        raise WindowMismatch(f"trajectory starts at t = {times[0]!r}, before the field switches on")
    t0, t1 = (float(times[0]), float(times[-1])) if window is None else window
    if t0 > t1 or t0 < times[0] or t1 > times[-1]:
        raise WindowMismatch(
            f"window [{t0}, {t1}] is not covered by trajectory [{times[0]}, {times[-1]}]"
        )
    mask = (times >= t0) & (times <= t1)
    t = times[mask]
    dev = np.linalg.norm(positions(analytic, t) - numeric.positions[mask], axis=-1)
    max_dev = float(np.max(dev))
    rms = float(np.sqrt(np.mean(dev * dev)))
    eps = analytic.eps
    return ErrorReport(
        max_dev=max_dev,
        rms_dev=rms,
        dev_over_eps=max_dev / eps if eps else None,
        dev_over_eps2=max_dev / (eps * eps) if eps else None,
        n_samples=int(t.size),
        t_start=t0,
        t_end=t1,
    )


def richardson_ratio(
    integrate: Callable[[ScaledConfig, IntegratorSettings], Trajectory],
    cfg: ScaledConfig,
    dt: float,
    t_end: float,
) -> float:
    """Self-convergence ratio ``max|y_h - y_{h/2}| / max|y_{h/2} - y_{h/4}|``.

    The three runs use exactly nested grids and the maxima are taken over the
    shared sample times. About 16 for a fourth-order method in its asymptotic
    regime; once the step-to-step differences approach the rounding floor the
    ratio becomes noise.
    """
    n = IntegratorSettings(dt, t_end).n_steps
    runs = [integrate(cfg, IntegratorSettings(t_end / (n * f), t_end)).positions for f in (1, 2, 4)]
    coarse = np.max(np.linalg.norm(runs[0] - runs[1][::2], axis=1))
    fine = np.max(np.linalg.norm(runs[1] - runs[2][::2], axis=1))
    return float(coarse / fine)
