"""Minimal Cl(2,0) kernel.

Three value types cover everything the orbit code needs:

* ``Multivector`` -- the general element ``s + x e1 + y e2 + b I`` with ``I = e1 e2``.
* ``Vec2`` -- a grade-1 element ``x e1 + y e2``.
* ``ComplexAmp`` -- an even element ``re + im I``; the even subalgebra is the
  complex numbers, with ``I`` playing the imaginary unit.

Vectors and even elements are bridged through ``e1``: the vector ``a`` and the
complex amplitude ``a_hat`` satisfy ``a = e1 a_hat``, so ``complex_of`` and
``vec_of`` are exact component copies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import GradeError, ZeroNorm

__all__ = [
    "Multivector",
    "Vec2",
    "ComplexAmp",
    "E1",
    "E2",
    "I",
    "ONE",
    "gp",
    "dot",
    "wedge",
    "rotor",
    "rotate",
    "inverse",
    "complex_of",
    "vec_of",
]

Scalar = Union[int, float]


@dataclass(frozen=True, slots=True)
class Multivector:
    """General element ``s + x e1 + y e2 + b I`` of Cl(2,0)."""

    s: float = 0.0
    x: float = 0.0
    y: float = 0.0
    b: float = 0.0

    def __add__(self, other: Multivector) -> Multivector:
        other = as_multivector(other)
        return Multivector(self.s + other.s, self.x + other.x, self.y + other.y, self.b + other.b)

    def __sub__(self, other: Multivector) -> Multivector:
        other = as_multivector(other)
        return Multivector(self.s - other.s, self.x - other.x, self.y - other.y, self.b - other.b)

    def __neg__(self) -> Multivector:
        return Multivector(-self.s, -self.x, -self.y, -self.b)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Multivector(self.s * other, self.x * other, self.y * other, self.b * other)
        return gp(self, other)

    def __rmul__(self, other: Scalar) -> Multivector:
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def grade(self, k: int) -> Multivector:
        """Projection onto grade ``k`` (0, 1 or 2)."""
        if k == 0:
            return Multivector(s=self.s)
        if k == 1:
            return Multivector(x=self.x, y=self.y)
        if k == 2:
            return Multivector(b=self.b)
        return Multivector()

    @property
    def is_vector(self) -> bool:
        return self.s == 0.0 and self.b == 0.0

    @property
    def is_even(self) -> bool:
        return self.x == 0.0 and self.y == 0.0

    def reverse(self) -> Multivector:
        return Multivector(self.s, self.x, self.y, -self.b)

    def norm2(self) -> float:
        """Scalar part of ``A ~A`` (sum of squared components)."""
        return self.s * self.s + self.x * self.x + self.y * self.y + self.b * self.b

    def inverse(self) -> Multivector:
        """Inverse of a pure vector or a pure even element.

        Mixed-grade elements are rejected with ``GradeError`` instead of being
        silently projected.
        """
        if self.is_even:
            return inverse(self.to_complex()).to_multivector()
        if self.is_vector:
            return inverse(self.to_vec()).to_multivector()
        raise GradeError("inverse is only defined here for pure vectors or even elements")

    def to_vec(self) -> Vec2:
        if not self.is_vector:
            raise GradeError(f"{self!r} is not a pure vector")
        return Vec2(self.x, self.y)

    def to_complex(self) -> ComplexAmp:
        if not self.is_even:
            raise GradeError(f"{self!r} is not an even (scalar + bivector) element")
        return ComplexAmp(self.s, self.b)


@dataclass(frozen=True, slots=True)
class Vec2:
    """Vector ``x e1 + y e2``."""

    x: float
    y: float

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Vec2:
        return Vec2(-self.x, -self.y)

    def __mul__(self, other):
        # v * scalar, or v * z for an even element z (right action rotates/scales).
        if isinstance(other, (int, float)):
            return Vec2(self.x * other, self.y * other)
        if isinstance(other, ComplexAmp):
            return vec_of(complex_of(self) * other)
        if isinstance(other, (Vec2, Multivector)):
            return gp(self, other)
        return NotImplemented

    def __rmul__(self, other: Scalar) -> Vec2:
        if isinstance(other, (int, float)):
            return Vec2(self.x * other, self.y * other)
        return NotImplemented

    def __truediv__(self, other: Scalar) -> Vec2:
        return Vec2(self.x / other, self.y / other)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def norm2(self) -> float:
        return self.x * self.x + self.y * self.y

    def to_multivector(self) -> Multivector:
        return Multivector(x=self.x, y=self.y)

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True, slots=True)
class ComplexAmp:
    """Even element ``re + im I``; multiplication is the complex product."""

    re: float = 0.0
    im: float = 0.0

    @classmethod
    def from_complex(cls, z: complex) -> ComplexAmp:
        return cls(z.real, z.imag)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __add__(self, other):
        if isinstance(other, (int, float)):
            return ComplexAmp(self.re + other, self.im)
        if isinstance(other, ComplexAmp):
            return ComplexAmp(self.re + other.re, self.im + other.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            return ComplexAmp(self.re - other, self.im)
        if isinstance(other, ComplexAmp):
            return ComplexAmp(self.re - other.re, self.im - other.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self) -> ComplexAmp:
        return ComplexAmp(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return ComplexAmp(self.re * other, self.im * other)
        if isinstance(other, ComplexAmp):
            return ComplexAmp(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (Vec2, Multivector)):
            return gp(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return ComplexAmp(self.re * other, self.im * other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return ComplexAmp(self.re / other, self.im / other)
        if isinstance(other, ComplexAmp):
            return self * inverse(other)
        return NotImplemented

    def conj(self) -> ComplexAmp:
        return ComplexAmp(self.re, -self.im)

    def abs2(self) -> float:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def arg(self) -> float:
        return math.atan2(self.im + 0.0, self.re)  # + 0.0 folds -0.0

    def to_multivector(self) -> Multivector:
        return Multivector(s=self.re, b=self.im)


E1 = Multivector(x=1.0)
E2 = Multivector(y=1.0)
I = Multivector(b=1.0)
ONE = Multivector(s=1.0)


def as_multivector(a) -> Multivector:
    if isinstance(a, Multivector):
        return a
    if isinstance(a, (Vec2, ComplexAmp)):
        return a.to_multivector()
    if isinstance(a, (int, float)):
        return Multivector(s=float(a))
    raise TypeError(f"cannot interpret {type(a).__name__} as a Cl(2,0) element")


def gp(a, b) -> Multivector:
    """Geometric product with ``e1^2 = e2^2 = 1`` and ``e1 e2 = -e2 e1 = I``."""
    a = as_multivector(a)
    b = as_multivector(b)
    return Multivector(
        s=a.s * b.s + a.x * b.x + a.y * b.y - a.b * b.b,
        x=a.s * b.x + a.x * b.s - a.y * b.b + a.b * b.y,
        y=a.s * b.y + a.y * b.s + a.x * b.b - a.b * b.x,
        b=a.s * b.b + a.b * b.s + a.x * b.y - a.y * b.x,
    )


def dot(a: Vec2, b: Vec2) -> float:
    return a.x * b.x + a.y * b.y


def wedge(a: Vec2, b: Vec2) -> float:
    """Coefficient of ``I`` in ``a ^ b``."""
    return a.x * b.y - a.y * b.x


def rotor(phi: float) -> ComplexAmp:
    """``exp(I phi) = cos(phi) + I sin(phi)``."""
    return ComplexAmp(math.cos(phi), math.sin(phi))


def rotate(v: Vec2, phi: float) -> Vec2:
    """Rotate ``v`` counterclockwise by ``phi``: ``v exp(I phi)``."""
    return v * rotor(phi)


def inverse(a):
    """Multiplicative inverse of a vector (``a / |a|^2``) or complex amplitude (``a* / |a|^2``)."""
    if isinstance(a, Vec2):
        n2 = a.norm2()
        if n2 == 0.0:
            raise ZeroNorm("vector has zero length")
        return Vec2(a.x / n2, a.y / n2)
    if isinstance(a, ComplexAmp):
        n2 = a.abs2()
        if n2 == 0.0:
            raise ZeroNorm("complex amplitude has zero modulus")
        return ComplexAmp(a.re / n2, -a.im / n2)
    if isinstance(a, Multivector):
        return a.inverse()
    raise TypeError(f"no inverse for {type(a).__name__}")


def complex_of(v: Vec2) -> ComplexAmp:
    """``a_hat`` such that ``v = e1 a_hat``."""
    return ComplexAmp(v.x, v.y)


def vec_of(z: ComplexAmp) -> Vec2:
    """The vector ``e1 z``."""
    return Vec2(z.re, z.im)
