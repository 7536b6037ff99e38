import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from epicycle.clifford import (
    E1,
    E2,
    I,
    ONE,
    ComplexAmp,
    Multivector,
    Vec2,
    complex_of,
    dot,
    gp,
    inverse,
    rotate,
    rotor,
    vec_of,
    wedge,
)
from epicycle.errors import GradeError, ZeroNorm

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
nonzero = finite.filter(lambda v: abs(v) > 1e-3)
vectors = st.builds(Vec2, finite, finite)
amps = st.builds(ComplexAmp, finite, finite)
multivectors = st.builds(Multivector, finite, finite, finite, finite)
angles = st.floats(min_value=-10 * math.pi, max_value=10 * math.pi)


def close(a: Multivector, b: Multivector, tol: float = 1e-14) -> bool:
    diff = a - b
    scale = max(1.0, math.sqrt(a.norm2()), math.sqrt(b.norm2()))
    return math.sqrt(diff.norm2()) <= tol * scale


def test_basis_products():
    assert gp(E1, E2) == I
    assert gp(E1, E1) == ONE
    assert gp(E2, E2) == ONE
    assert gp(I, I) == -ONE
    assert gp(E1, I) == E2
    assert gp(I, E1) == -E2
    assert gp(E2, I) == -E1
    assert gp(I, E2) == E1


def test_anticommutation_is_exact():
    assert gp(E1, E2) + gp(E2, E1) == Multivector()


@given(multivectors, multivectors, multivectors)
def test_geometric_product_is_associative(a, b, c):
    scale = math.sqrt(a.norm2() * b.norm2() * c.norm2())
    diff = gp(gp(a, b), c) - gp(a, gp(b, c))
    assert math.sqrt(diff.norm2()) <= 1e-14 * max(scale, 1e-300) * 8


@given(multivectors)
def test_grade_projections_partition(a):
    parts = [a.grade(k) for k in (0, 1, 2)]
    assert parts[0] + parts[1] + parts[2] == a
    for k, p in enumerate(parts):
        assert p.grade(k) == p


@given(vectors, vectors)
def test_vector_product_splits_into_dot_and_wedge(a, b):
    ab = gp(a, b)
    scale = max(a.norm() * b.norm(), 1e-300)
    assert ab.x == 0.0 and ab.y == 0.0
    assert abs(ab.s - dot(a, b)) <= 1e-14 * scale
    assert abs(ab.b - wedge(a, b)) <= 1e-14 * scale
    sym = (gp(a, b) + gp(b, a)) * 0.5
    assert abs(sym.s - dot(a, b)) <= 1e-14 * scale


def test_dot_and_wedge_examples():
    assert dot(Vec2(1, 0), Vec2(0, 1)) == 0
    assert wedge(Vec2(1, 0), Vec2(0, 1)) == 1
    assert dot(Vec2(3, 4), Vec2(3, 4)) == 25


@given(amps, amps)
def test_complex_product_commutes(a, b):
    assert a * b == b * a


@given(amps, amps, amps)
def test_complex_product_matches_python_complex(a, b, c):
    got = complex(a * b * c)
    want = complex(a) * complex(b) * complex(c)
    assert abs(got - want) <= 1e-14 * max(abs(want), abs(a) * abs(b) * abs(c), 1e-300) * 4


@given(amps)
def test_modulus_squared_is_nonnegative_scalar(c):
    prod = gp(c.conj(), c)
    assert prod.b == 0.0 or abs(prod.b) <= 1e-16 * c.abs2()
    assert prod.s >= 0.0
    assert prod.x == 0.0 and prod.y == 0.0


@given(amps)
def test_complex_amp_embeds_exactly(c):
    assert c.to_multivector().to_complex() == c


@given(vectors)
def test_vector_complex_bridge_round_trips(v):
    assert vec_of(complex_of(v)) == v
    # a = e1 a_hat
    assert gp(E1, complex_of(v)) == v.to_multivector()


def test_rotor_examples():
    v = rotate(Vec2(1.0, 0.0), math.pi / 2)
    np.testing.assert_allclose(tuple(v), (0.0, 1.0), atol=1e-16)
    w = Vec2(0.3, -2.0)
    assert rotate(w, 0.0) == w


@given(vectors, angles)
def test_rotation_round_trip_and_norm(v, phi):
    back = rotate(rotate(v, phi), -phi)
    scale = max(v.norm(), 1e-300)
    assert (back - v).norm() <= 1e-14 * scale
    assert abs(rotate(v, phi).norm() - v.norm()) <= 4e-16 * scale


@given(angles, angles)
def test_rotor_composition(p1, p2):
    got = rotor(p1) * rotor(p2)
    want = rotor(p1 + p2)
    assert abs(got - want) <= 1e-13


def test_rotation_is_right_action_of_rotor():
    v = Vec2(0.6, 0.8)
    r = rotor(0.7)
    assert close(gp(v, r), rotate(v, 0.7).to_multivector())


def test_inverse_examples():
    assert inverse(Vec2(2.0, 0.0)) == Vec2(0.5, 0.0)
    assert inverse(ComplexAmp(0.0, 1.0)) == ComplexAmp(0.0, -1.0)


@given(st.builds(Vec2, nonzero, nonzero))
def test_vector_inverse(v):
    assert close(gp(v, inverse(v)), ONE)


@given(st.builds(ComplexAmp, nonzero, nonzero))
def test_complex_inverse(c):
    assert close(gp(c, inverse(c)), ONE)


@given(angles)
def test_inverse_of_unit_is_conjugate(phi):
    u = rotor(phi)
    assert abs(inverse(u) - u.conj()) <= 1e-14


def test_zero_inverse_raises():
    with pytest.raises(ZeroNorm):
        inverse(Vec2(0.0, 0.0))
    with pytest.raises(ZeroNorm):
        inverse(ComplexAmp())


def test_mixed_grade_inverse_is_rejected():
    with pytest.raises(GradeError):
        Multivector(1.0, 1.0, 0.0, 0.0).inverse()
    with pytest.raises(GradeError):
        Multivector(1.0, 1.0, 0.0, 0.0).to_vec()


def test_multivector_inverse_for_pure_grades():
    assert close(gp(Multivector(x=3.0, y=4.0), Multivector(x=3.0, y=4.0).inverse()), ONE)
    assert close(gp(Multivector(s=1.0, b=2.0), Multivector(s=1.0, b=2.0).inverse()), ONE)


def test_phase_of_negative_real_ignores_signed_zero():
    assert ComplexAmp(-1.0, -0.0).arg() == math.pi
