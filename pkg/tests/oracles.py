"""Independent reference implementations used only by the tests."""

from __future__ import annotations

import math

import numpy as np


def transfer_matrix_reflection(xi, k, layers, substrate, polarization):
    """Reflection coefficient from a characteristic-matrix product.

    ``layers`` is a list of ``(eps, mu, thickness)`` from the vacuum side,
    ``substrate`` is ``(eps, mu)``. Uses the real-frequency 2x2 matrices
    ``[[cos d, -i sin d / p], [-i p sin d, cos d]]`` continued to w = i xi with
    complex arithmetic, independent of the Airy-type recursion in the package.
    """
    omega = 1j * xi

    def beta(eps, mu):
        return 1j * math.sqrt(eps * mu * xi * xi + k * k)

    def admittance(eps, mu):
        b = beta(eps, mu)
        return b / (mu * omega) if polarization == "TE" else b / (eps * omega)

    m = np.eye(2, dtype=complex)
    for eps, mu, t in layers:
        delta = beta(eps, mu) * t
        p = admittance(eps, mu)
        layer = np.array([[np.cos(delta), -1j * np.sin(delta) / p],
                          [-1j * p * np.sin(delta), np.cos(delta)]])
        m = m @ layer
    p1 = admittance(1.0, 1.0)
    pl = admittance(*substrate)
    top = (m[0, 0] + m[0, 1] * pl) * p1
    bottom = m[1, 0] + m[1, 1] * pl
    r = (top - bottom) / (top + bottom)
    assert abs(r.imag) < 1e-10 * max(1.0, abs(r.real))
    return r.real


def ideal_radial_integral() -> float:
    """int_0^inf x^3 e^-x / (1 - e^-x) dx = 6 zeta(4) = pi^4 / 15."""
    return math.pi ** 4 / 15.0


def brute_force_lifshitz(r_left, r_right, d, xi_max, k_max):
    """f/f0 from scipy's dblquad over (xi, k); ``r_*(xi, k) -> (r_p, r_s)`` scalars."""
    from scipy.integrate import dblquad

    def integrand(k, xi):
        kap = math.hypot(xi, k)
        e = math.exp(-2 * kap * d)
        total = 0.0
        for a in (r_left(xi, k)[0] * r_right(xi, k)[0], r_left(xi, k)[1] * r_right(xi, k)[1]):
            total += a * e / (1 - a * e)
        return k * kap * total

    val, _ = dblquad(integrand, 0.0, xi_max, 0.0, k_max, epsabs=1e-14, epsrel=1e-10)
    return 120.0 / math.pi ** 4 * val
