"""The five-harmonic first-order orbit and its periodicity.

In scaled units the orbit is a sum of five rotating phasors

    z(t) = c_m1 + (exp(i phi0) + c_0) e^{it} + c_p1 e^{2it}
           + b_m1 e^{-i(alpha-2)t} + b_p1 e^{i alpha t}

read as eccentric, deferent, second-harmonic epicycle and the two
light-driven epicycles. Scalar evaluation goes through the Clifford types;
``positions``/``velocities`` are the vectorized numpy equivalents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .clifford import ComplexAmp, Vec2, rotor, vec_of
from .coefficients import DEFAULT_GUARD, CoeffSet, solve_coefficients
from .model import ScaledConfig, alpha_k

__all__ = [
    "TERM_NAMES",
    "HarmonicTerm",
    "OrbitSolution",
    "solve",
    "position",
    "velocity",
    "positions",
    "velocities",
    "components",
    "perturbation",
    "linearized_residual",
    "PeriodResult",
    "period",
    "early_closure_candidates",
    "recurrence_error",
    "limit_check",
    "SAMPLES_PER_TAU0",
]

TAU0 = 2.0 * math.pi
SAMPLES_PER_TAU0 = 2048
TERM_NAMES = ("eccentric", "deferent", "epicycle2", "epicycleB", "epicycleA")


@dataclass(frozen=True)
class HarmonicTerm:
    """One rotating phasor ``coeff * exp(i freq_mult t)``."""

    name: str
    coeff: ComplexAmp
    freq_mult: float


@dataclass(frozen=True)
class OrbitSolution:
    terms: tuple[HarmonicTerm, ...]
    alpha: float
    eps: float
    phi0: float
    delta: float
    coeffs: CoeffSet

    def __post_init__(self) -> None:
        if tuple(t.name for t in self.terms) != TERM_NAMES:
            raise ValueError(f"terms must be {TERM_NAMES}")

    def term(self, name: str) -> HarmonicTerm:
        return self.terms[TERM_NAMES.index(name)]

    @property
    def config(self) -> ScaledConfig:
        return ScaledConfig(self.alpha, self.eps, self.phi0, self.delta)

    def freq_mults(self) -> tuple[float, ...]:
        return tuple(t.freq_mult for t in self.terms)

    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        coeff = np.array([complex(t.coeff) for t in self.terms])
        freq = np.array([t.freq_mult for t in self.terms], dtype=float)
        return coeff, freq


def solve(
    cfg: ScaledConfig, guard: float = DEFAULT_GUARD, allow_near_resonant: bool = False
) -> OrbitSolution:
    """Build the analytic orbit for ``cfg``.

    Raises ``ResonantDivergence`` on a resonant ratio, ``NearResonanceError``
    inside the guard band unless overridden, and ``TranscriptionError`` if
    the coefficient cross-check fails.
    """
    c = solve_coefficients(cfg, guard, allow_near_resonant)
    terms = (
        HarmonicTerm("eccentric", c.c_m1, 0.0),
        HarmonicTerm("deferent", rotor(cfg.phi0) + c.c_0, 1.0),
        HarmonicTerm("epicycle2", c.c_p1, 2.0),
        HarmonicTerm("epicycleB", c.b_m1, -alpha_k(cfg.alpha, 2)),
        HarmonicTerm("epicycleA", c.b_p1, cfg.alpha),
    )
    return OrbitSolution(terms, cfg.alpha, cfg.eps, cfg.phi0, cfg.delta, c)


def _phasor_sum(sol: OrbitSolution, t: float, derivative: int) -> ComplexAmp:
    total = ComplexAmp()
    for term in sol.terms:
        value = term.coeff * rotor(term.freq_mult * t)
        for _ in range(derivative):
            value = value * ComplexAmp(0.0, term.freq_mult)
        total = total + value
    return total


def position(sol: OrbitSolution, t: float) -> Vec2:
    return vec_of(_phasor_sum(sol, t, 0))


def velocity(sol: OrbitSolution, t: float) -> Vec2:
    return vec_of(_phasor_sum(sol, t, 1))


def acceleration(sol: OrbitSolution, t: float) -> Vec2:
    return vec_of(_phasor_sum(sol, t, 2))


def _evaluate(sol: OrbitSolution, t, derivative: int) -> np.ndarray:
    coeff, freq = sol._arrays()
    t = np.asarray(t, dtype=float)
    phase = np.exp(1j * np.multiply.outer(t, freq))
    z = phase @ (coeff * (1j * freq) ** derivative)
    return np.stack([z.real, z.imag], axis=-1)


def positions(sol: OrbitSolution, t) -> np.ndarray:
    """Positions at an array of times, shape ``t.shape + (2,)``."""
    return _evaluate(sol, t, 0)


def velocities(sol: OrbitSolution, t) -> np.ndarray:
    return _evaluate(sol, t, 1)


def components(sol: OrbitSolution, t: float) -> dict[str, Vec2]:
    """Per-harmonic contributions at time ``t``, keyed by term name."""
    return {term.name: vec_of(term.coeff * rotor(term.freq_mult * t)) for term in sol.terms}


def perturbation(sol: OrbitSolution, t, derivative: int = 0) -> np.ndarray:
    """Co-rotating first-order displacement ``z(t) exp(-it) - exp(i phi0)`` and its derivatives.

    Returned as complex numbers; derivatives are exact.
    """
    coeff, freq = sol._arrays()
    coeff = coeff.copy()
    coeff[TERM_NAMES.index("deferent")] -= complex(rotor(sol.phi0))
    shifted = freq - 1.0
    t = np.asarray(t, dtype=float)
    phase = np.exp(1j * np.multiply.outer(t, shifted))
    return phase @ (coeff * (1j * shifted) ** derivative)


def linearized_residual(sol: OrbitSolution, t) -> np.ndarray:
    """Residual of the co-rotating first-order equation at times ``t`` (complex).

    Zero would mean the analytic orbit solves the linearized equation of
    motion exactly. Because the constant free term is fixed by the initial
    conditions rather than by the equation, the residual is the constant
    ``-3/2 (c_0 + E conj(c_0))``.
    """
    r = perturbation(sol, t, 0)
    dr = perturbation(sol, t, 1)
    ddr = perturbation(sol, t, 2)
    e2 = complex(rotor(2.0 * sol.phi0))
    forcing = sol.eps * complex(rotor(sol.delta)) * np.exp(1j * alpha_k(sol.alpha, 1) * np.asarray(t, dtype=float))
    return ddr + 2j * dr - 1.5 * (r + e2 * np.conj(r)) + forcing


@dataclass(frozen=True)
class PeriodResult:
    """Orbit period as a multiple of the Kepler period, or ``None`` if not found.

    ``multiple`` is ``n/2`` for a positive integer ``n``.
    """

    multiple: Optional[Fraction]
    max_den: int
    alpha_rational: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.multiple is not None:
            n = self.multiple * 2
            if n.denominator != 1 or n <= 0:
                raise ValueError(f"period multiple must be a positive n/2, got {self.multiple}")

    @property
    def periodic(self) -> bool:
        return self.multiple is not None

    @property
    def n(self) -> Optional[int]:
        return None if self.multiple is None else int(self.multiple * 2)

    @property
    def tau(self) -> Optional[float]:
        """Period in scaled time units."""
        return None if self.multiple is None else float(self.multiple) * TAU0


def _rationalize(x: float, max_den: int) -> Optional[Fraction]:
    approx = Fraction(x).limit_denominator(max_den)
    if abs(float(approx) - x) > 1e-9 * max(1.0, abs(x)):
        return None
    return approx


def period(alpha: float, max_den: int = 64) -> PeriodResult:
    """Least common period of the nonconstant harmonics, in units of the Kepler period.

    ``alpha`` is rationalized with denominator at most ``max_den``; if no such
    rational is within ``1e-9`` (relative) the orbit is reported aperiodic.
    """
    if max_den < 1:
        raise ValueError(f"max_den must be >= 1, got {max_den}")
    a = _rationalize(alpha, max_den)
    if a is None:
        return PeriodResult(None, max_den)
    freqs = [Fraction(1), Fraction(2), abs(a - 2), abs(a)]
    periods = [1 / f for f in freqs if f != 0]
    num = 1
    den = 0
    for p in periods:
        num = math.lcm(num, p.numerator)
        den = math.gcd(den, p.denominator)
    return PeriodResult(Fraction(num, den), max_den, a)


def _prime_factors(n: int) -> list[int]:
    primes = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    return primes


def early_closure_candidates(result: PeriodResult) -> list[Fraction]:
    """Proper divisors ``tau/p`` (``p`` prime, ``p | n``) to test for early closure."""
    if result.multiple is None:
        return []
    return [result.multiple / p for p in _prime_factors(result.n)]


def recurrence_error(
    sol: OrbitSolution, multiple: float, samples_per_tau0: int = SAMPLES_PER_TAU0
) -> float:
    """``max |r(t + T) - r(t)|`` over ``t`` in ``[0, T]`` with ``T = multiple * tau0``."""
    shift = float(multiple) * TAU0
    n = max(2, int(math.ceil(float(multiple) * samples_per_tau0)))
    t = np.linspace(0.0, shift, n)
    return float(np.max(np.linalg.norm(positions(sol, t + shift) - positions(sol, t), axis=-1)))


def limit_check(alpha_large: float, eps: float, phi0: float = 0.0, delta: float = 0.0) -> float:
    """Largest first-order coefficient magnitude at a high frequency ratio."""
    if abs(alpha_large) < 10:
        raise ValueError(f"limit_check needs |alpha| >= 10, got {alpha_large!r}")
    return solve_coefficients(ScaledConfig(alpha_large, eps, phi0, delta)).max_abs()
