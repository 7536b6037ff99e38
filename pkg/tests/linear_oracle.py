"""Brute-force oracle: solve for all five coefficients as one real 10x10 linear system.

The unknowns are the real and imaginary parts of (b_m1, b_p1, c_m1, c_0, c_p1).
The equations are the forced-term balances of the co-rotating equation, the
k = 1 free-term relation and the two switch-on continuity conditions. Nothing
here shares code with the closed forms under test.
"""

import cmath

import numpy as np


def _equations(z, alpha, phi0, delta, eps):
    b_m1, b_p1, c_m1, c_0, c_p1 = z
    a1 = alpha - 1
    e2 = cmath.exp(2j * phi0)
    forcing = eps * cmath.exp(1j * delta)
    return [
        b_p1 * (-(a1**2) - 2 * a1 - 1.5) - 1.5 * e2 * b_m1.conjugate() + forcing,
        b_m1 * (-(a1**2) + 2 * a1 - 1.5) - 1.5 * e2 * b_p1.conjugate(),
        4.5 * c_p1 + 1.5 * e2 * c_m1.conjugate(),
        c_m1 + c_0 + c_p1 + b_m1 + b_p1,
        c_0 + 2 * c_p1 - (alpha - 2) * b_m1 + alpha * b_p1,
    ]


def _realify(values):
    out = []
    for v in values:
        out += [v.real, v.imag]
    return np.array(out)


def solve_linear_system(alpha, phi0, delta, eps):
    """Return (b_m1, b_p1, c_m1, c_0, c_p1) as Python complex numbers."""
    zero = [0j] * 5
    offset = _realify(_equations(zero, alpha, phi0, delta, eps))
    cols = []
    for i in range(10):
        z = list(zero)
        z[i // 2] = 1.0 if i % 2 == 0 else 1j
        cols.append(_realify(_equations(z, alpha, phi0, delta, eps)) - offset)
    x = np.linalg.solve(np.array(cols).T, -offset)
    return [complex(x[2 * i], x[2 * i + 1]) for i in range(5)]


def _affine_solve(residual, n_unknowns):
    """Solve residual(x) = 0 for a residual that is affine in the real vector x."""
    zero = np.zeros(n_unknowns)
    offset = residual(zero)
    cols = [residual(np.eye(n_unknowns)[i]) - offset for i in range(n_unknowns)]
    return np.linalg.solve(np.array(cols).T, -offset)


def exact_linearized_positions(sol, t):
    """Exact solution of the linearized equation of motion, as (N, 2) positions.

    The five-harmonic orbit leaves a constant residual because its constant
    free term is set by the initial conditions. Adding the correction ``w``
    with ``L[w] = -residual`` and ``w(0) = w'(0) = 0`` gives the exact
    solution. ``w`` consists of the constant ``-c_0``, the k = +-1 free modes,
    and the zero-frequency pair: a phase shift plus a secular drift
    ``i beta exp(i phi0) t``.
    """
    t = np.asarray(t, dtype=float)
    c0 = complex(sol.coeffs.c_0)
    e2 = cmath.exp(2j * sol.phi0)
    u = cmath.exp(1j * sol.phi0)

    def modes(x):
        d1 = complex(x[0], x[1])
        beta, eta = x[2], x[3]
        dm1 = -3 * e2 * d1.conjugate()
        gamma = u * complex(-2 / 3 * beta, eta)
        return d1, dm1, gamma, beta

    def conditions(x):
        d1, dm1, gamma, beta = modes(x)
        pos = dm1 + d1 + gamma - c0
        vel = -1j * dm1 + 1j * d1 + 1j * beta * u
        return _realify([pos, vel])

    d1, dm1, gamma, beta = modes(_affine_solve(conditions, 4))
    w = -c0 + dm1 * np.exp(-1j * t) + d1 * np.exp(1j * t) + gamma + 1j * beta * u * t
    coeff = np.array([complex(term.coeff) for term in sol.terms])
    freq = np.array([term.freq_mult for term in sol.terms])
    z = np.exp(1j * np.multiply.outer(t, freq)) @ coeff + w * np.exp(1j * t)
    return np.stack([z.real, z.imag], axis=-1)
