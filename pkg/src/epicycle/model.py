"""Problem configuration, nondimensionalization and the unperturbed orbit.

Everything downstream of this module works in scaled units: lengths in units
of the orbit radius, time in units of ``1/omega0`` where ``omega0`` is the
Kepler frequency of the circular orbit. The forcing strength

    eps = q * a / (m * omega0**2 * r0)

is the field-induced acceleration measured against the centripetal one.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .clifford import Vec2
from .errors import InvalidConfig, NonPositiveParameter, PerturbationRegimeWarning

__all__ = [
    "AtomConfig",
    "LightConfig",
    "ScaledConfig",
    "EPS_REGIME_LIMIT",
    "kepler_frequency",
    "scale",
    "unperturbed_position",
    "unperturbed_velocity",
    "alpha_k",
    "conjugate",
]

EPS_REGIME_LIMIT = 0.1


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise InvalidConfig(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class AtomConfig:
    """Electron on a circular orbit about a fixed nucleus.

    Parameters
    ----------
    k : float
        Electrostatic constant.
    q : float
        Magnitude of the electron charge.
    m : float
        Electron mass.
    r0 : float
        Radius of the unperturbed orbit.
    phi0 : float
        Angular position of the electron at switch-on, in radians.
    """

    k: float
    q: float
    m: float
    r0: float
    phi0: float = 0.0

    def __post_init__(self) -> None:
        for name in ("k", "q", "m", "r0"):
            value = getattr(self, name)
            _require_finite(name, value)
            if value <= 0:
                raise NonPositiveParameter(f"{name} must be > 0, got {value!r}")
        _require_finite("phi0", self.phi0)


@dataclass(frozen=True)
class LightConfig:
    """Circularly polarized field ``a * (cos(omega t + delta), sin(omega t + delta))``."""

    a: float
    omega: float
    delta: float = 0.0

    def __post_init__(self) -> None:
        for name in ("a", "omega", "delta"):
            _require_finite(name, getattr(self, name))
        if self.a < 0:
            raise InvalidConfig(f"field amplitude must be >= 0, got {self.a!r}")


@dataclass(frozen=True)
class ScaledConfig:
    """Dimensionless statement of the driven problem.

    ``alpha`` is the light frequency over the Kepler frequency and ``eps`` the
    forcing strength. First-order theory is only meaningful for ``eps << 1``;
    values above ``EPS_REGIME_LIMIT`` are accepted with a
    ``PerturbationRegimeWarning``. Phases are stored as given, not wrapped.
    """

    alpha: float
    eps: float
    phi0: float = 0.0
    delta: float = 0.0

    def __post_init__(self) -> None:
        for name in ("alpha", "eps", "phi0", "delta"):
            _require_finite(name, getattr(self, name))
        if self.eps < 0:
            raise InvalidConfig(f"eps must be >= 0, got {self.eps!r}")
        if self.eps > EPS_REGIME_LIMIT:
            warnings.warn(
                f"eps = {self.eps!r} exceeds {EPS_REGIME_LIMIT}; first-order results are unreliable",
                PerturbationRegimeWarning,
                stacklevel=3,
            )


def kepler_frequency(cfg: AtomConfig) -> float:
    """Angular frequency ``sqrt(k q^2 / (m r0^3))`` of the circular orbit."""
    for name in ("k", "q", "m", "r0"):
        if getattr(cfg, name) <= 0:
            raise NonPositiveParameter(f"{name} must be > 0")
    # Grouped to keep SI-scale intermediates (q^2 ~ 1e-38, r0^3 ~ 1e-31) in range.
    return math.sqrt(cfg.k / cfg.m) * cfg.q / (cfg.r0 * math.sqrt(cfg.r0))


def scale(atom: AtomConfig, light: LightConfig) -> ScaledConfig:
    """Convert physical parameters to the scaled problem."""
    omega0 = kepler_frequency(atom)
    eps = (atom.q * light.a / atom.m) / (omega0 * omega0 * atom.r0)
    return ScaledConfig(alpha=light.omega / omega0, eps=eps, phi0=atom.phi0, delta=light.delta)


def unperturbed_position(cfg: ScaledConfig, t: float) -> Vec2:
    return Vec2(math.cos(t + cfg.phi0), math.sin(t + cfg.phi0))


def unperturbed_velocity(cfg: ScaledConfig, t: float) -> Vec2:
    return Vec2(-math.sin(t + cfg.phi0), math.cos(t + cfg.phi0))


def alpha_k(alpha: float, k: int) -> float:
    """Frequency ratio relative to the ``k``-th Kepler harmonic, ``alpha - k``."""
    return alpha - k


def conjugate(alpha: float) -> float:
    """Partner ratio ``2 - alpha`` that produces the same set of harmonics."""
    return 2 - alpha
