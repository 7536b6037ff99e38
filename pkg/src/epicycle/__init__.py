"""First-order epicyclic orbits of a hydrogen electron driven by circularly polarized light.

The analytic orbit is a sum of five rotating harmonics (see ``epicycle.orbit``);
``epicycle.oracle`` integrates the equations of motion numerically to check it.
"""

__version__ = "0.1.0"

from .clifford import ComplexAmp, Multivector, Vec2, dot, gp, inverse, rotate, rotor, wedge
from .coefficients import CoeffSet, classify, residuals, solve_coefficients
from .errors import (
    NearResonanceError,
    NearResonanceWarning,
    PerturbationRegimeWarning,
    ResonantDivergence,
    SingularRadius,
    TranscriptionError,
    WindowMismatch,
    ZeroNorm,
)
from .model import AtomConfig, LightConfig, ScaledConfig, kepler_frequency, scale
from .orbit import OrbitSolution, period, position, positions, solve, velocity
from .oracle import IntegratorSettings, Trajectory, compare, integrate_full, integrate_linearized
