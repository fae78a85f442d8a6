"""Hermitian-counterpart coefficients and the constraint-residual diagnostics."""

import math

import numpy as np
import pytest

from pseudoherm import (AlgebraKind, GaussState, HamiltonianProfile,
                        IntegratorConfig, SingularRhsError, counterpart,
                        counterpart_raw, dyson_ode_rhs, hermiticity_residual,
                        integrate_dyson, validity)
from conftest import MODERATE_SU11, MODERATE_SU2

SU11 = AlgebraKind.SU11
SU2 = AlgebraKind.SU2

FROZEN_H = HamiltonianProfile(omega_R=1.0, omega_I=0.3,
                              alpha_abs=0.2, alpha_phase=0.4,
                              beta_abs=0.1, beta_phase=-0.2)


def constrained_raw(h, g, t, kind):
    """Raw coefficients along the constraint flow direction."""
    return counterpart_raw(h, g, dyson_ode_rhs(g, h, t, kind), t, kind)


def test_counterpart_frozen_value():
    g = GaussState.from_signed(2.0, 0.1, 1.5)
    c = counterpart(FROZEN_H, g, 0.0, SU11)
    assert c.W == pytest.approx(1.2441783501261830, rel=1e-13)
    assert c.U.real == pytest.approx(0.080469663765220188, rel=1e-12)
    assert c.U.imag == pytest.approx(-0.41681255661985350, rel=1e-12)


@pytest.mark.parametrize("kind,states", [
    (SU11, [GaussState.from_signed(2.0, 0.1, 1.5), MODERATE_SU11,
            GaussState.from_signed(-3.2, -0.7, 0.8)]),
    (SU2, [GaussState.from_signed(2.0, 0.1, 1.5), MODERATE_SU2,
           GaussState(1.4, 2.2, 3.0)]),
])
def test_raw_route_matches_constrained_route(kind, states):
    for g in states:
        raw = constrained_raw(FROZEN_H, g, 0.0, kind)
        im_w, v_mismatch = hermiticity_residual(raw)
        assert im_w < 1e-12
        assert v_mismatch < 1e-12
        c = counterpart(FROZEN_H, g, 0.0, kind)
        assert raw.W.real == pytest.approx(c.W, rel=1e-11, abs=1e-13)
        assert abs(raw.U - c.U) < 1e-12 * max(1.0, abs(c.U))


def test_k0_only_counterpart_is_real_frequency():
    h = HamiltonianProfile.gain_loss(0.5, omega_R=0.8)
    c = counterpart(h, GaussState(100.0, 0.0, 0.01, flip=True), 1.3, SU11)
    assert c.W == pytest.approx(0.8, rel=1e-14)


def test_off_constraint_motion_leaves_residual():
    # same state, velocity scaled by 1.01 in Lambda only: residual reappears
    g = GaussState.from_signed(2.0, 0.1, 1.5)
    d = dyson_ode_rhs(g, FROZEN_H, 0.0, SU11)
    bad = (d[0], d[1], 1.01 * d[2])
    im_w, v_mismatch = hermiticity_residual(
        counterpart_raw(FROZEN_H, g, bad, 0.0, SU11))
    assert im_w > 1e-3 or v_mismatch > 1e-3


def test_residual_vanishes_along_integrated_flow(rng):
    # random smooth profiles with all couplings on, integrated from moderate
    # starts: the raw coefficients must stay Hermitian along the whole run
    config = IntegratorConfig(rtol=1e-11, atol=1e-14)
    for kind, g0 in ((SU11, MODERATE_SU11), (SU2, MODERATE_SU2)):
        for _ in range(3):
            h = HamiltonianProfile(
                omega_R=float(rng.uniform(0.2, 1.0)),
                omega_I=[0.0, float(rng.uniform(0.05, 0.2))],
                alpha_abs=float(rng.uniform(0.02, 0.1)),
                alpha_phase=float(rng.uniform(-1.0, 1.0)),
                beta_abs=float(rng.uniform(0.02, 0.1)),
                beta_phase=float(rng.uniform(-1.0, 1.0)))
            traj = integrate_dyson(g0, h, np.linspace(0.0, 1.0, 9), kind, config)
            assert traj.breakdown is None
            for t, g in zip(traj.times, traj.states):
                assert validity(g, kind).ok
                im_w, v_mismatch = hermiticity_residual(
                    constrained_raw(h, g, float(t), kind))
                assert im_w < 1e-8
                assert v_mismatch < 1e-8


def test_counterpart_singular_at_unit_chi():
    g = GaussState.from_signed(math.sqrt(2.0), 0.0, 1.0)  # chi = 1 in su(1,1)
    with pytest.raises(SingularRhsError):
        counterpart(FROZEN_H, g, 0.0, SU11)
