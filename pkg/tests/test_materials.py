import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from casimir_md.materials import (DRUDE_GOLD_T0, ConstantResponse, MaterialModel, OscillatorParams,
                                  response_at_imag_freq, static_value)


def test_static_from_ratio():
    osc = OscillatorParams.from_relative(3.0, 0.2)
    assert response_at_imag_freq(osc, 0.0) == pytest.approx(10.0, rel=1e-14)
    assert static_value(osc) == pytest.approx(10.0, rel=1e-14)
    assert static_value(OscillatorParams.from_relative(0.5, 0.3)) == pytest.approx(1.25)


def test_vacuum():
    osc = OscillatorParams(0.0, 0.4, 0.1)
    assert response_at_imag_freq(osc, 0.0) == 1.0
    assert response_at_imag_freq(osc, 3.0) == 1.0
    assert static_value(osc) == 1.0


def test_hand_evaluations():
    assert response_at_imag_freq(OscillatorParams(1.0, 0.5, 0.0), 0.5) == pytest.approx(3.0, rel=1e-15)
    eps = response_at_imag_freq(DRUDE_GOLD_T0.electric, 1.0)
    assert eps == pytest.approx(2.0 - 3.9e-9, rel=1e-15)
    assert eps < 2.0


def test_drude_static_is_infinite():
    assert static_value(DRUDE_GOLD_T0.electric) == math.inf
    assert response_at_imag_freq(DRUDE_GOLD_T0.electric, 0.0) == math.inf
    arr = response_at_imag_freq(DRUDE_GOLD_T0.electric, np.array([0.0, 1.0]))
    assert arr[0] == math.inf and arr[1] == pytest.approx(2.0)


def test_negative_frequency_rejected():
    with pytest.raises(ValueError):
        response_at_imag_freq(DRUDE_GOLD_T0.electric, -1e-3)
    with pytest.raises(ValueError):
        response_at_imag_freq(DRUDE_GOLD_T0.electric, np.array([0.1, -0.1]))


@pytest.mark.parametrize("kwargs", [dict(omega_p=-1.0), dict(omega_p=1.0, omega_t=-0.1),
                                    dict(omega_p=1.0, gamma=math.nan)])
def test_invalid_oscillator(kwargs):
    with pytest.raises(ValueError):
        OscillatorParams(**kwargs)


def test_constant_response():
    with pytest.raises(ValueError):
        ConstantResponse(0.9)
    c = ConstantResponse(4.0)
    assert c(0.0) == 4.0
    assert np.all(c(np.array([0.0, 2.0])) == 4.0)
    with pytest.raises(ValueError):
        MaterialModel(ConstantResponse(math.inf), ConstantResponse(math.inf))


def test_relative_constructor_matches_absolute():
    osc = OscillatorParams.from_relative(3.0, 1e-4, 1e-2)
    assert osc.omega_p == pytest.approx(3e-4)
    assert osc.omega_t == pytest.approx(1e-4)
    assert osc.gamma == pytest.approx(1e-6)
    assert osc.P == pytest.approx(3.0) and osc.Q == 1e-4


def test_dual_swaps_responses():
    m = MaterialModel(OscillatorParams(1.0, 0.2, 0.01), ConstantResponse(3.0))
    assert m.dual().electric == m.magnetic and m.dual().magnetic == m.electric
    assert m.dual().dual() == m


positive = st.floats(min_value=1e-4, max_value=10.0)


@given(positive, positive, st.floats(min_value=0.0, max_value=1.0), positive, positive)
def test_monotone_and_bounded(wp, wt, g, xi1, dxi):
    osc = OscillatorParams(wp, wt, g)
    lo, hi = response_at_imag_freq(osc, xi1), response_at_imag_freq(osc, xi1 + dxi)
    assert hi <= lo
    assert hi >= 1.0
    assert response_at_imag_freq(osc, 1e-7 * wt * wt) == pytest.approx(static_value(osc), rel=1e-6)


@given(st.floats(min_value=0.0, max_value=10.0), positive, st.floats(min_value=0.0, max_value=0.5),
       st.floats(min_value=0.0, max_value=5.0))
def test_relative_and_absolute_forms_agree(P, Q, g, xi):
    rel = OscillatorParams.from_relative(P, Q, g)
    ab = OscillatorParams(P * Q, Q, g * Q)
    assert response_at_imag_freq(rel, xi) == pytest.approx(response_at_imag_freq(ab, xi), rel=1e-14)


@given(st.floats(min_value=0.0, max_value=10.0), positive, st.floats(min_value=0.0, max_value=0.5),
       st.floats(min_value=0.01, max_value=80.0), st.floats(min_value=0.0, max_value=1.0),
       st.floats(min_value=0.1, max_value=100.0))
def test_reduced_distance_form(P, Q, g, x, cosphi, d):
    # with x cos(phi) = 2 xi d the response reads
    # 1 + P^2 (2Qd)^2 / ((2Qd)^2 + x cos(phi) (x cos(phi) + 2 Q d gamma/omega_t))
    osc = OscillatorParams.from_relative(P, Q, g)
    u = x * cosphi
    two_qd = 2 * Q * d
    expected = 1 + P * P * two_qd ** 2 / (two_qd ** 2 + u * (u + two_qd * g))
    assert response_at_imag_freq(osc, u / (2 * d)) == pytest.approx(expected, rel=1e-12)
