"""Trilogarithm on the real interval [-1, 1].

Only ``Li_3`` is needed: the zero-frequency Matsubara k-integral for
half-spaces is ``int_0^inf k^2 R e^{-2kd} / (1 - R e^{-2kd}) dk = Li_3(R) / (4 d^3)``.
"""

from __future__ import annotations

import math

from scipy.special import bernoulli

ZETA3 = 1.2020569031595942853997381615114499907649862923405
ZETA2 = math.pi ** 2 / 6

_SERIES_LIMIT = 0.5
_MAX_TERMS = 200

# zeta(3 - n) for n >= 3 via zeta(-j) = (-1)^j B_{j+1} / (j + 1)
_B = bernoulli(40)
_ZETA_NEG = [(-1) ** j * _B[j + 1] / (j + 1) for j in range(0, 38)]


def _series(z: float) -> float:
    total = 0.0
    term = z
    for n in range(1, _MAX_TERMS + 1):
        contrib = term / n ** 3
        total += contrib
        if abs(contrib) < 1e-17 * abs(total):
            break
        term *= z
    return total


def _near_one(z: float) -> float:
    # Li_3(e^u) = zeta(3) + zeta(2) u + u^2/2 (3/2 - ln(-u)) + sum_{n>=3} zeta(3-n) u^n / n!
    u = math.log(z)
    total = ZETA3 + ZETA2 * u + 0.5 * u * u * (1.5 - math.log(-u))
    power = u * u / 2.0
    for n in range(3, 38):
        power *= u / n
        contrib = _ZETA_NEG[n - 3] * power
        total += contrib
        if contrib != 0.0 and abs(contrib) < 1e-18:
            break
    return total


def li3(z: float) -> float:
    """Real trilogarithm ``sum_n z^n / n^3`` for ``-1 <= z <= 1``."""
    z = float(z)
    if not -1.0 <= z <= 1.0:
        raise ValueError(f"li3 is implemented for -1 <= z <= 1, got {z!r}")
    if z == 1.0:
        return ZETA3
    if z == 0.0:
        return 0.0
    if abs(z) <= _SERIES_LIMIT:
        return _series(z)
    if z > 0:
        return _near_one(z)
    # duplication: Li_3(z) + Li_3(-z) = Li_3(z^2) / 4
    return 0.25 * li3(z * z) - li3(-z)
