import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from casimir_md.materials import DRUDE_GOLD_T0, PERFECT_CONDUCTOR, VACUUM, dielectric, magnetodielectric
from casimir_md.optics import (Layer, LayerStack, Polarization, TransverseMode, half_space_reflection,
                               interface_reflection, kappa, stack_reflection,
                               stack_reflection_coefficients, static_reflection)
from oracles import transfer_matrix_reflection

TM, TE = Polarization.TM, Polarization.TE


def test_kappa():
    assert kappa(2.0, 3.0, 1.0, 1.0) == pytest.approx(math.sqrt(7.0), rel=1e-15)
    assert kappa(1.0, 1.0, 0.0, 2.5) == 2.5
    for bad in [(0.5, 1.0, 1.0, 1.0), (1.0, 1.0, -1.0, 1.0), (1.0, 1.0, 0.0, 0.0)]:
        with pytest.raises(ValueError):
            kappa(*bad)


def test_dielectric_normal_incidence():
    assert half_space_reflection(TransverseMode(1.0, 0.0, TM), 4.0, 1.0) == pytest.approx(1 / 3, rel=1e-15)
    assert half_space_reflection(TransverseMode(1.0, 0.0, TE), 4.0, 1.0) == pytest.approx(-1 / 3, rel=1e-15)


def test_vacuum_half_space():
    for pol in Polarization:
        assert half_space_reflection(TransverseMode(0.7, 1.3, pol), 1.0, 1.0) == 0.0


def test_perfect_conductor_limits():
    assert half_space_reflection(TransverseMode(1.0, 0.5, TM), math.inf, 1.0) == 1.0
    assert half_space_reflection(TransverseMode(1.0, 0.5, TE), math.inf, 1.0) == -1.0
    rp, rs = stack_reflection_coefficients(LayerStack(PERFECT_CONDUCTOR), [0.0, 0.3], [1.0, 2.0])
    assert np.all(rp == 1.0) and np.all(rs == -1.0)


def test_static_drude_and_magnetodielectric():
    assert static_reflection(TM, DRUDE_GOLD_T0) == 1.0
    assert static_reflection(TE, DRUDE_GOLD_T0) == 0.0
    md = magnetodielectric(0.5, 0.3, 3.0, 0.2)
    assert static_reflection(TM, md) == pytest.approx(1 / 9, rel=1e-14)
    assert static_reflection(TE, md) == pytest.approx(9 / 11, rel=1e-14)
    # ideal conductor stays a mirror in TE at xi = 0
    assert static_reflection(TE, PERFECT_CONDUCTOR) == -1.0


def test_infinite_eps_at_zero_frequency_is_drude_limit():
    assert half_space_reflection(TransverseMode(0.0, 1.0, TM), math.inf, 1.0) == 1.0
    assert half_space_reflection(TransverseMode(0.0, 1.0, TE), math.inf, 1.0) == 0.0


def test_interface_symmetry():
    mode = TransverseMode(0.8, 0.4, TM)
    r_ij = interface_reflection(mode, 2.0, 1.5, 5.0, 1.2)
    assert interface_reflection(mode, 5.0, 1.2, 2.0, 1.5) == pytest.approx(-r_ij, rel=1e-15)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        TransverseMode(0.0, 0.0)
    with pytest.raises(ValueError):
        TransverseMode(-1.0, 1.0)
    with pytest.raises(ValueError):
        half_space_reflection(TransverseMode(1.0, 1.0), 0.5, 1.0)
    with pytest.raises(ValueError):
        Layer(VACUUM, 0.0)


def test_coated_stack_against_transfer_matrix():
    stack = LayerStack(dielectric(9.0), (Layer(dielectric(4.0), 0.3),))
    for pol, name in [(TM, "TM"), (TE, "TE")]:
        r = stack_reflection(stack, TransverseMode(1.0, 0.0, pol))
        assert r == pytest.approx(transfer_matrix_reflection(1.0, 0.0, [(4.0, 1.0, 0.3)], (9.0, 1.0), name),
                                  rel=1e-12)


def test_vacuum_layer_shifts_phase():
    # a vacuum spacer of thickness t multiplies r by exp(-2 kappa t)
    base = LayerStack(dielectric(3.0, 2.0))
    spaced = LayerStack(dielectric(3.0, 2.0), (Layer(VACUUM, 0.4),))
    xi, k = 0.6, 0.9
    for a, b in zip(stack_reflection_coefficients(spaced, xi, k), stack_reflection_coefficients(base, xi, k)):
        assert float(a) == pytest.approx(float(b) * math.exp(-0.8 * math.hypot(xi, k)), rel=1e-14)


def test_vectorized_matches_scalar():
    stack = LayerStack(magnetodielectric(0.5, 0.7, 3.0, 0.5), (Layer(dielectric(2.0, 1.5), 0.2),))
    xi = np.array([0.0, 0.1, 1.0, 7.0])
    k = np.array([0.5, 0.0, 2.0, 1.0])
    rp, rs = stack_reflection_coefficients(stack, xi, k)
    for i in range(len(xi)):
        assert rp[i] == stack_reflection(stack, TransverseMode(xi[i], k[i], TM))
        assert rs[i] == stack_reflection(stack, TransverseMode(xi[i], k[i], TE))


response = st.floats(min_value=1.0, max_value=50.0)
freq = st.floats(min_value=1e-3, max_value=10.0)
thick = st.floats(min_value=1e-3, max_value=3.0)


@given(response, response, response, response, thick, st.floats(min_value=1e-3, max_value=3.0),
       st.floats(min_value=0.0, max_value=10.0))
def test_transfer_matrix_oracle(e1, m1, e2, m2, t, xi, k):
    stack = LayerStack(dielectric(e2, m2), (Layer(dielectric(e1, m1), t),))
    for pol, name in [(TM, "TM"), (TE, "TE")]:
        ours = stack_reflection(stack, TransverseMode(xi, k, pol))
        ref = transfer_matrix_reflection(xi, k, [(e1, m1, t)], (e2, m2), name)
        assert ours == pytest.approx(ref, rel=1e-9, abs=1e-12)


@given(response, response, freq, st.floats(min_value=0.0, max_value=10.0))
def test_duality_swaps_polarizations(e, m, xi, k):
    stack = LayerStack(dielectric(e, m), (Layer(dielectric(m + 1.0, e), 0.3),))
    rp, rs = stack_reflection_coefficients(stack, xi, k)
    rp_d, rs_d = stack_reflection_coefficients(stack.dual(), xi, k)
    assert float(rp) == pytest.approx(float(rs_d), rel=1e-14, abs=1e-15)
    assert float(rs) == pytest.approx(float(rp_d), rel=1e-14, abs=1e-15)


@given(st.floats(min_value=0.0, max_value=10.0), st.floats(min_value=1e-3, max_value=3.0),
       st.floats(min_value=0.0, max_value=0.5), st.floats(min_value=0.0, max_value=10.0),
       st.floats(min_value=1e-3, max_value=3.0), thick, st.floats(min_value=0.0, max_value=20.0),
       st.floats(min_value=0.0, max_value=20.0))
def test_passivity(pe, qe, g, pm, qm, t, xi, k):
    assume(xi + k > 0)
    md = magnetodielectric(pe, qe, pm, qm, g)
    for stack in (LayerStack(md), LayerStack(DRUDE_GOLD_T0, (Layer(md, t),)),
                  LayerStack(md, (Layer(DRUDE_GOLD_T0, t),))):
        rp, rs = stack_reflection_coefficients(stack, xi, k)
        assert abs(float(rp)) <= 1.0 and abs(float(rs)) <= 1.0


@given(st.floats(min_value=0.0, max_value=10.0), st.floats(min_value=1e-2, max_value=3.0),
       st.floats(min_value=0.0, max_value=10.0), st.floats(min_value=1e-2, max_value=3.0),
       st.floats(min_value=0.1, max_value=5.0))
def test_static_continuity_for_finite_media(pe, qe, pm, qm, k):
    md = magnetodielectric(pe, qe, pm, qm)
    stack = LayerStack(md, (Layer(dielectric(3.0, 2.0), 0.5),))
    at_zero = stack_reflection_coefficients(stack, 0.0, k)
    near = stack_reflection_coefficients(stack, 1e-9, k)
    for a, b in zip(at_zero, near):
        assert float(a) == pytest.approx(float(b), abs=1e-7)


@settings(max_examples=30)
@given(response, response, response, freq, st.floats(min_value=0.0, max_value=5.0))
def test_thin_layer_limit(e1, e2, m2, xi, k):
    sub = dielectric(e2, m2)
    bare = stack_reflection_coefficients(LayerStack(sub), xi, k)
    thin = stack_reflection_coefficients(LayerStack(sub, (Layer(dielectric(e1, 2.0), 1e-9),)), xi, k)
    for a, b in zip(bare, thin):
        assert float(a) == pytest.approx(float(b), abs=1e-6)


@given(response, response, freq, st.floats(min_value=0.0, max_value=5.0))
def test_thick_layer_limit(e1, m1, xi, k):
    layer = dielectric(e1, m1)
    thick_stack = LayerStack(DRUDE_GOLD_T0, (Layer(layer, 60.0 / xi),))
    for a, b in zip(stack_reflection_coefficients(thick_stack, xi, k),
                    stack_reflection_coefficients(LayerStack(layer), xi, k)):
        assert float(a) == pytest.approx(float(b), abs=1e-12)
