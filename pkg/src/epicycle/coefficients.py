"""First-order Fourier coefficients of the driven orbit.

The perturbation, viewed in the frame co-rotating with the unperturbed
electron, obeys

    r1'' + 2i r1' - 3/2 (r1 + E conj(r1)) = -eps A exp(i (alpha - 1) t)

with ``E = exp(2i phi0)`` and ``A = exp(i delta)``. Its solution is two
forced terms at ``+-(alpha - 1)`` (the ``b`` coefficients) and three free
terms at ``-1, 0, +1`` (the ``c`` coefficients) fixed by requiring position
and velocity to be continuous when the light switches on. The constant
forced term is identically zero.

Two routes to the ``c`` coefficients are implemented: a compact one built
from the ``b`` coefficients, and the fully expanded form in terms of the
field amplitude. ``solve_coefficients`` evaluates both and refuses to return
if they disagree.
"""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass, fields
from typing import Union

from .clifford import ComplexAmp, rotor
from .errors import (
    NearResonanceError,
    NearResonanceWarning,
    ResonantDivergence,
    TranscriptionError,
)
from .model import ScaledConfig, alpha_k

__all__ = [
    "DEFAULT_GUARD",
    "RESONANT_RATIOS",
    "Resonant",
    "NearResonant",
    "NonResonant",
    "classify",
    "check_resonance",
    "particular",
    "homogeneous_from_b",
    "homogeneous_direct",
    "c1_determinant_solve",
    "CoeffSet",
    "solve_coefficients",
    "ResidualReport",
    "residuals",
]

DEFAULT_GUARD = 1e-6
RESONANT_RATIOS = (0, 1, 2)
CROSS_CHECK_TOL = 1e-10


@dataclass(frozen=True)
class Resonant:
    which: int


@dataclass(frozen=True)
class NearResonant:
    which: int
    distance: float


@dataclass(frozen=True)
class NonResonant:
    pass


Classification = Union[Resonant, NearResonant, NonResonant]


def classify(alpha: float, guard: float = DEFAULT_GUARD) -> Classification:
    """Place ``alpha`` relative to the poles at 0, 1 and 2."""
    if not guard > 0:
        raise ValueError(f"guard must be > 0, got {guard!r}")
    for which in RESONANT_RATIOS:
        if alpha == which:
            return Resonant(which)
    which = min(RESONANT_RATIOS, key=lambda w: abs(alpha - w))
    distance = abs(alpha - which)
    if distance <= guard:
        return NearResonant(which, distance)
    return NonResonant()


def check_resonance(
    alpha: float, guard: float = DEFAULT_GUARD, allow_near_resonant: bool = False
) -> Classification:
    """Apply the resonance policy; raise or warn as appropriate and return the classification."""
    cls = classify(alpha, guard)
    if isinstance(cls, Resonant):
        raise ResonantDivergence(cls.which, alpha)
    if isinstance(cls, NearResonant):
        if not allow_near_resonant:
            raise NearResonanceError(cls.which, alpha, cls.distance, guard)
        warnings.warn(
            f"alpha = {alpha!r} is {cls.distance:.3g} from resonant ratio {cls.which}; "
            "coefficients are very large",
            NearResonanceWarning,
            stacklevel=3,
        )
    return cls


def _denominator(alpha: float) -> float:
    return alpha * alpha_k(alpha, 1) ** 2 * alpha_k(alpha, 2)


def _particular_unit(alpha: float, phi0: float, delta: float) -> tuple[ComplexAmp, ComplexAmp]:
    a1 = alpha_k(alpha, 1)
    a3 = alpha_k(alpha, 3)
    k = 1.0 / _denominator(alpha)
    e2 = rotor(2.0 * phi0)
    amp = rotor(delta)
    return e2 * amp.conj() * (-1.5 * k), amp * ((a1 * a3 + 1.5) * k)


def particular(
    cfg: ScaledConfig, guard: float = DEFAULT_GUARD, allow_near_resonant: bool = False
) -> tuple[ComplexAmp, ComplexAmp]:
    """Forced coefficients ``(b_m1, b_p1)`` at frequencies ``-(alpha-1)`` and ``alpha-1``.

    Raises
    ------
    ResonantDivergence
        If ``alpha`` is exactly 0, 1 or 2.
    NearResonanceError
        If ``alpha`` lies inside the guard band and no override was given.
    """
    check_resonance(cfg.alpha, guard, allow_near_resonant)
    b_m1, b_p1 = _particular_unit(cfg.alpha, cfg.phi0, cfg.delta)
    return b_m1 * cfg.eps, b_p1 * cfg.eps


def homogeneous_from_b(
    b_m1: ComplexAmp, b_p1: ComplexAmp, alpha: float, phi0: float
) -> tuple[ComplexAmp, ComplexAmp, ComplexAmp]:
    """Free coefficients ``(c_m1, c_0, c_p1)`` that make the orbit continuous at switch-on."""
    a1 = alpha_k(alpha, 1)
    e2 = rotor(2.0 * phi0)
    diff = b_m1 - b_p1
    mixed = e2 * diff.conj()
    c_m1 = diff * (-9 / 8 * a1) + mixed * (3 / 8 * a1)
    c_0 = diff * (10 / 8 * a1) - mixed * (6 / 8 * a1) - (b_m1 + b_p1)
    c_p1 = diff * (-1 / 8 * a1) + mixed * (3 / 8 * a1)
    return c_m1, c_0, c_p1


def _direct_unit(alpha: float, phi0: float, delta: float) -> tuple[ComplexAmp, ComplexAmp, ComplexAmp]:
    # Kept term-by-term in unsimplified form so that it stays an independent
    # transcription of the composed route; do not collect terms here.
    a1 = alpha_k(alpha, 1)
    a3 = alpha_k(alpha, 3)
    k = 1.0 / _denominator(alpha)
    e2 = rotor(2.0 * phi0)
    amp = rotor(delta)
    amp_c = amp.conj()
    a11 = a1 * a1

    c_m1 = (
        e2 * amp_c * (27 / 16 * a1 - 3 / 8 * a11 * a3 - 9 / 16 * a1)
        + amp * (9 / 8 * a11 * a3 + 27 / 16 * a1 - 9 / 16 * a1)
    ) * k
    c_0 = (
        e2 * amp_c * (-15 / 8 * a1 + 3 / 4 * a11 * a3 + 9 / 8 * a1 + 3 / 2)
        + amp * (-5 / 4 * a11 * a3 - 15 / 8 * a1 + 9 / 8 * a1 - a1 * a3 - 3 / 2)
    ) * k
    c_p1 = (
        e2 * amp_c * (-3 / 8 * a11 * a3 - 9 / 16 * a1 + 3 / 16 * a1)
        + amp * (-9 / 16 * a1 + 1 / 8 * a11 * a3 + 3 / 16 * a1)
    ) * k
    return c_m1, c_0, c_p1


def homogeneous_direct(
    cfg: ScaledConfig, guard: float = DEFAULT_GUARD, allow_near_resonant: bool = False
) -> tuple[ComplexAmp, ComplexAmp, ComplexAmp]:
    """Free coefficients from the expanded field-amplitude forms."""
    check_resonance(cfg.alpha, guard, allow_near_resonant)
    return tuple(c * cfg.eps for c in _direct_unit(cfg.alpha, cfg.phi0, cfg.delta))


def c1_determinant_solve(
    b_m1: ComplexAmp, b_p1: ComplexAmp, alpha: float, phi0: float
) -> ComplexAmp:
    """Solve ``c_p1 + 3 E conj(c_p1) = (alpha-1)(b_m1 - b_p1)`` as a real 2x2 system."""
    rhs = (b_m1 - b_p1) * alpha_k(alpha, 1)
    e2 = rotor(2.0 * phi0)
    m11, m12 = 1.0 + 3.0 * e2.re, 3.0 * e2.im
    m21, m22 = 3.0 * e2.im, 1.0 - 3.0 * e2.re
    det = m11 * m22 - m12 * m21
    # 1 - 9 (cos^2 + sin^2) is -8 for every phase; anything else means a broken rotor.
    if abs(det + 8.0) > 1e-12:
        raise ArithmeticError(f"determinant is {det!r}, expected -8")
    cx = (rhs.re * m22 - m12 * rhs.im) / det
    cy = (m11 * rhs.im - m21 * rhs.re) / det
    return ComplexAmp(cx, cy)


@dataclass(frozen=True)
class CoeffSet:
    """The five nonzero first-order coefficients, in units of the orbit radius."""

    b_m1: ComplexAmp
    b_p1: ComplexAmp
    c_m1: ComplexAmp
    c_0: ComplexAmp
    c_p1: ComplexAmp

    def items(self) -> list[tuple[str, ComplexAmp]]:
        return [(f.name, getattr(self, f.name)) for f in fields(self)]

    def max_abs(self) -> float:
        return max(abs(c) for _, c in self.items())


def _rel_gap(a: tuple[ComplexAmp, ...], b: tuple[ComplexAmp, ...]) -> float:
    scale = max(max(abs(x) for x in a), max(abs(x) for x in b))
    if scale == 0.0:
        return 0.0
    return max(abs(x - y) for x, y in zip(a, b)) / scale


def solve_coefficients(
    cfg: ScaledConfig,
    guard: float = DEFAULT_GUARD,
    allow_near_resonant: bool = False,
    cross_check_tol: float = CROSS_CHECK_TOL,
) -> CoeffSet:
    """All five coefficients, with the compact and expanded routes cross-checked.

    Raises
    ------
    TranscriptionError
        If the two routes, or the determinant solve, disagree by more than
        ``cross_check_tol`` relative to the largest coefficient.
    """
    # The problem is linear in eps: cross-check at unit forcing so that tiny
    # (even subnormal) eps cannot wreck the relative comparison, then scale.
    check_resonance(cfg.alpha, guard, allow_near_resonant)
    b_unit = _particular_unit(cfg.alpha, cfg.phi0, cfg.delta)
    composed = homogeneous_from_b(*b_unit, cfg.alpha, cfg.phi0)
    direct = _direct_unit(cfg.alpha, cfg.phi0, cfg.delta)
    gap = _rel_gap(composed, direct)
    if gap > cross_check_tol:
        raise TranscriptionError(
            f"expanded and composed free coefficients differ by {gap:.3e} (relative) at {cfg}"
        )
    c_p1_det = c1_determinant_solve(*b_unit, cfg.alpha, cfg.phi0)
    gap = _rel_gap(composed, (composed[0], composed[1], c_p1_det))
    if gap > cross_check_tol:
        raise TranscriptionError(f"determinant solve disagrees with closed form by {gap:.3e}")
    eps = cfg.eps
    return CoeffSet(*(c * eps for c in (*b_unit, *composed)))


@dataclass(frozen=True)
class ResidualReport:
    """Relative residuals of every defining relation.

    Each entry is ``|sum of terms| / max |term|`` (zero when all terms vanish).
    ``homogeneous_k0`` is informational: the boundary-fixed constant term does
    not in general satisfy the zero-frequency homogeneous relation, so it is
    excluded from ``max_residual``.
    """

    particular_m1: float
    particular_p1: float
    homogeneous_m1: float
    homogeneous_p1: float
    boundary_position: float
    boundary_velocity: float
    alpha_identity: float
    homogeneous_k0: float

    ASSERTED = (
        "particular_m1",
        "particular_p1",
        "homogeneous_m1",
        "homogeneous_p1",
        "boundary_position",
        "boundary_velocity",
        "alpha_identity",
    )

    def max_residual(self) -> float:
        return max(getattr(self, name) for name in self.ASSERTED)

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def _relative(*terms) -> float:
    scale = max(abs(t) for t in terms)
    if scale == 0.0:
        return 0.0
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return abs(total) / scale


def residuals(coeffs: CoeffSet, cfg: ScaledConfig) -> ResidualReport:
    """Substitute ``coeffs`` back into every relation they are supposed to satisfy."""
    alpha = cfg.alpha
    a1 = alpha_k(alpha, 1)
    e2 = rotor(2.0 * cfg.phi0)
    forcing = rotor(cfg.delta) * cfg.eps
    b_m1, b_p1 = coeffs.b_m1, coeffs.b_p1
    c_m1, c_0, c_p1 = coeffs.c_m1, coeffs.c_0, coeffs.c_p1

    # Forced terms: coefficients of exp(+-i (alpha-1) t) in the co-rotating equation.
    part_p1 = _relative(b_p1 * -(a1 * a1 + 2 * a1 + 1.5), e2 * b_m1.conj() * -1.5, forcing)
    part_m1 = _relative(b_m1 * -(a1 * a1 - 2 * a1 + 1.5), e2 * b_p1.conj() * -1.5)

    # Free terms: (k^2 + 2k + 3/2) c_k + 3/2 E conj(c_-k) = 0.
    hom_p1 = _relative(c_p1 * 4.5, e2 * c_m1.conj() * 1.5)
    hom_m1 = _relative(c_m1 * 0.5, e2 * c_p1.conj() * 1.5)
    hom_0 = _relative(c_0 * 1.5, e2 * c_0.conj() * 1.5)

    pos = _relative(c_m1, c_0, c_p1, b_m1, b_p1)
    vel = _relative(c_0, c_p1 * 2.0, b_m1 * -(alpha - 2.0), b_p1 * alpha)

    p_plus = a1 * a1 + 2 * a1 + 1.5
    p_minus = a1 * a1 - 2 * a1 + 1.5
    ident = _relative(ComplexAmp(p_plus * p_minus), ComplexAmp(-2.25), ComplexAmp(-_denominator(alpha)))

    return ResidualReport(
        particular_m1=part_m1,
        particular_p1=part_p1,
        homogeneous_m1=hom_m1,
        homogeneous_p1=hom_p1,
        boundary_position=pos,
        boundary_velocity=vel,
        alpha_identity=ident,
        homogeneous_k0=hom_0,
    )
