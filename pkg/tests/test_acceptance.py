"""Acceptance gate: one test per release criterion, all legs asserted.

Run with -v to get one pass/fail line per criterion.
"""

import math
import time

import numpy as np
import pytest

from pseudoherm import (AlgebraKind, CoeffVector, GaussState,
                        HamiltonianProfile, IntegratorConfig, SqueezeState,
                        adjoint_transfer, build_workspace, critical_times,
                        dyson_ode_rhs, entropy_closed, evolution_ops,
                        evolved_state_closed, expectation_consistency,
                        gauss_decompose, hermiticity_residual,
                        counterpart_raw, integrate_dyson, integrate_squeeze,
                        k0_closed_form, k0_closed_form_squeeze, linear_entropy,
                        pair_cutoff, partial_trace_mode2,
                        quasi_hermiticity_residual, recompose, validity)
from pseudoherm.cli import PRESETS, render_csv, run_scenario
from pseudoherm.lie_core import rep2_generators, rep2_matrix
from conftest import (Bundle, GAIN_LOSS, GAMMA, MODERATE_SU11, MODERATE_SU2,
                      PRESET_SU11, PRESET_SU2, gauss_flow)

SU11 = AlgebraKind.SU11
SU2 = AlgebraKind.SU2
TIGHT = IntegratorConfig(rtol=1e-11, atol=1e-14)
SQRT_LN_100 = math.sqrt(math.log(100.0))


def test_criterion_1_critical_times_match_estimate():
    start = time.perf_counter()
    ct11 = critical_times(100.0, 0.01, GAMMA, SU11)
    ct2 = critical_times(100.0, 0.01, GAMMA, SU2)
    for gamma_t in (GAMMA * ct11.t_minus, GAMMA * ct11.t_plus,
                    GAMMA * ct11.t_star, GAMMA * ct2.t_star):
        assert 2.13 <= gamma_t <= 2.16
        assert abs(gamma_t - SQRT_LN_100) / SQRT_LN_100 < 0.01
    assert GAMMA * ct11.t_minus == pytest.approx(2.145965790940427, rel=1e-12)
    assert GAMMA * ct11.t_plus == pytest.approx(2.1459657956008039, rel=1e-12)
    assert GAMMA * ct2.t_star == pytest.approx(2.1459662592612218, rel=1e-12)
    assert abs(ct11.z_at_t_star - 1.0) < 1e-12
    assert time.perf_counter() - start < 1.0


def test_criterion_2_parameter_maps_bidirectional():
    p11 = recompose(PRESET_SU11, SU11)
    p2 = recompose(PRESET_SU2, SU2)
    # stated tolerance bands
    assert p11.eps == pytest.approx(11.52, abs=0.12)
    assert p11.mu_abs == pytest.approx(0.12, abs=0.01)
    assert p2.eps == pytest.approx(11.51, abs=0.12)
    # two-decimal reference values for the deep-squeezing start
    assert p11.eps == pytest.approx(11.52, abs=0.01)
    assert p2.eps == pytest.approx(11.51, abs=0.01)
    assert 2 * p11.mu_abs / p11.eps == pytest.approx(0.02, rel=0.01)
    assert 2 * p2.mu_abs / p2.eps == pytest.approx(0.02, rel=0.01)
    # exact frozen values
    assert p11.eps == pytest.approx(11.515127259547354, rel=1e-12)
    assert p2.eps == pytest.approx(11.510724089319466, rel=1e-12)
    # round trips in both directions, within 1 percent everywhere
    for kind, g0, p0 in ((SU11, PRESET_SU11, p11), (SU2, PRESET_SU2, p2)):
        g_back = gauss_decompose(p0, kind)
        assert g_back.signed_phi == pytest.approx(g0.signed_phi, rel=0.01)
        assert g_back.Lambda == pytest.approx(g0.Lambda, rel=0.01)
        p_back = recompose(gauss_decompose(p0, kind), kind)
        assert p_back.eps == pytest.approx(p0.eps, rel=0.01)
        assert p_back.mu_abs == pytest.approx(p0.mu_abs, rel=0.01)


def test_criterion_3_constraint_ode_matches_closed_form():
    start = time.perf_counter()
    for kind, g0 in ((SU11, PRESET_SU11), (SU2, PRESET_SU2)):
        grid = np.linspace(0.0, 2.1 / GAMMA, 22)
        traj = integrate_dyson(g0, GAIN_LOSS, grid, kind, TIGHT)
        assert traj.breakdown is None
        for t, g in zip(traj.times[1:], traj.states[1:]):
            ref = k0_closed_form(g0, GAIN_LOSS, float(t), kind)
            assert abs(g.signed_phi - ref.signed_phi) / abs(ref.signed_phi) < 1e-6
            assert abs(g.Lambda - ref.Lambda) / ref.Lambda < 1e-6
    assert time.perf_counter() - start < 1.0


def test_criterion_4_pair_entanglement_dynamics():
    # leg 1: closed entropy vs exact Fock partial trace
    for r in (0.25, 0.65848, 1.5):
        st = evolved_state_closed(SqueezeState(r, math.pi), pair_cutoff(r), SU11)
        s_num = linear_entropy(partial_trace_mode2(st))
        assert abs(s_num - entropy_closed(SU11, r)) < 1e-8

    # leg 2: the S = 0.99 crossing sits below the window edge at gamma*t 2.14
    at = gauss_flow(PRESET_SU11, GAIN_LOSS, SU11)

    def entropy_at(gamma_t):
        times = np.array([0.0, gamma_t / GAMMA])
        sq = k0_closed_form_squeeze(Bundle(times, [at(t) for t in times]),
                                    GAIN_LOSS, SU11, l=1)[-1]
        return entropy_closed(SU11, sq.r)

    lo, hi = 2.0, 2.145
    assert entropy_at(lo) < 0.99 < entropy_at(hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if entropy_at(mid) < 0.99:
            lo = mid
        else:
            hi = mid
    crossing = 0.5 * (lo + hi)
    assert crossing < 2.145
    assert crossing == pytest.approx(2.1436806880317063, abs=2e-3)

    # leg 3: numeric squeeze blows past r = 8 within 1% of the upper boundary
    ct = critical_times(100.0, 0.01, GAMMA, SU11)
    grid = np.linspace(0.0, (1.0 - 1e-9) * ct.t_minus, 2001)
    traj = integrate_squeeze(GAIN_LOSS, at, SqueezeState(0.0, math.pi),
                             grid, SU11, TIGHT)
    r = np.array([sq.r for sq in traj.states])
    assert r[-1] > 8.0
    t_cross = traj.times[int(np.argmax(r > 8.0))]
    assert abs(t_cross - ct.t_plus) / ct.t_plus < 0.01


def test_criterion_5_su2_entropy_and_boundary_squeeze():
    # maxima against the independent limit formula, 1e-10
    for n, ref in ((1, 0.5), (10, 0.823802947998046875),
                   (100, 0.94365152099074358)):
        assert abs(entropy_closed(SU2, math.pi / 4, n) - ref) < 1e-10
    # n = 10 maximum against an exact partial trace
    st = evolved_state_closed(SqueezeState(math.pi / 4, 0.3), 10, SU2)
    s_num = linear_entropy(partial_trace_mode2(st))
    assert abs(s_num - entropy_closed(SU2, math.pi / 4, 10)) < 1e-10
    # squeeze magnitude at the exact boundary time is within 1.5% of pi/4
    t_star = critical_times(100.0, 0.01, GAMMA, SU2).t_star
    times = np.array([0.0, t_star])
    states = [PRESET_SU2, k0_closed_form(PRESET_SU2, GAIN_LOSS, t_star, SU2)]
    r_star = k0_closed_form_squeeze(Bundle(times, states), GAIN_LOSS, SU2,
                                    l=1)[-1].r
    assert r_star == pytest.approx(0.77539850171027812, rel=1e-12)
    assert abs(r_star - math.pi / 4) / (math.pi / 4) < 0.015


def test_criterion_6_counterpart_hermitian_along_flow(rng):
    for kind, g0 in ((SU11, MODERATE_SU11), (SU2, MODERATE_SU2)):
        for _ in range(3):
            h = HamiltonianProfile(
                omega_R=float(rng.uniform(0.2, 1.0)),
                omega_I=[0.0, float(rng.uniform(0.05, 0.2))],
                alpha_abs=float(rng.uniform(0.02, 0.1)),
                alpha_phase=float(rng.uniform(-1.0, 1.0)),
                beta_abs=float(rng.uniform(0.02, 0.1)),
                beta_phase=float(rng.uniform(-1.0, 1.0)))
            traj = integrate_dyson(g0, h, np.linspace(0.0, 1.0, 9), kind,
                                   TIGHT)
            assert traj.breakdown is None
            for t, g in zip(traj.times, traj.states):
                assert validity(g, kind).ok
                raw = counterpart_raw(h, g, dyson_ode_rhs(g, h, float(t), kind),
                                      float(t), kind)
                im_w, v_mismatch = hermiticity_residual(raw)
                assert im_w < 1e-8
                assert v_mismatch < 1e-8
    # control: a 1% off-constraint velocity leaves a visible residual
    h0 = HamiltonianProfile(omega_R=1.0, omega_I=0.3, alpha_abs=0.2,
                            alpha_phase=0.4, beta_abs=0.1, beta_phase=-0.2)
    g = GaussState.from_signed(2.0, 0.1, 1.5)
    d = dyson_ode_rhs(g, h0, 0.0, SU11)
    im_w, v_mismatch = hermiticity_residual(
        counterpart_raw(h0, g, (d[0], d[1], 1.01 * d[2]), 0.0, SU11))
    assert max(im_w, v_mismatch) > 1e-3


def test_criterion_7_fock_space_consistency(rng):
    # leg 1: the evolved-state propagator is unitary on the truncation
    for kind, n in ((SU11, 12), (SU2, 9)):
        ws = build_workspace(kind, n)
        _, _, u = evolution_ops(SqueezeState(0.7, 1.1, 0.4),
                                SqueezeState(0.0, math.pi, 0.0), ws)
        assert np.linalg.norm(u.conj().T @ u - np.eye(ws.dim)) < 1e-10

    # leg 2: quasi-hermiticity of the metric along constraint flows
    # (su(1,1) uses an unflipped start: the deep-squeezing branch metric has
    # no finite matrix representation, see the decisions ledger)
    ws11 = build_workspace(SU11, 14)
    at11 = gauss_flow(GaussState(0.3, 0.0, 2.5), GAIN_LOSS, SU11)
    assert quasi_hermiticity_residual(GAIN_LOSS, at11, 1.0, 2e-5, ws11) < 1e-6
    ws2 = build_workspace(SU2, 10)
    at2 = gauss_flow(PRESET_SU2, GAIN_LOSS, SU2)
    assert quasi_hermiticity_residual(GAIN_LOSS, at2, 1.0, 1e-4, ws2) < 1e-6

    # leg 3: metric and conjugated routes agree for expectation values
    for obs in (CoeffVector(1.0, 0.0, 0.0), CoeffVector(0.0, 1.0, 1.0)):
        for kind, g, n in ((SU11, GaussState(0.3, 0.2, 2.5), 14),
                           (SU2, GaussState(0.5, 0.2, 1.2), 9)):
            ws = build_workspace(kind, n)
            psi = rng.normal(size=ws.dim) + 1j * rng.normal(size=ws.dim)
            psi /= np.linalg.norm(psi)
            assert expectation_consistency(obs, g, psi, ws) < 1e-7


def test_criterion_8_oracles_and_determinism(rng):
    # leg 1: 2x2 conjugation oracle for the coefficient transfer, 100 draws
    for kind in (SU11, SU2):
        gens = rep2_generators(kind)
        basis = [gens.k0, gens.km, gens.kp]
        for _ in range(100):
            g = GaussState(Phi=float(rng.uniform(0.0, 3.0)),
                           phi=float(rng.uniform(-math.pi, math.pi)),
                           Lambda=float(rng.uniform(0.1, 10.0)),
                           flip=bool(rng.integers(0, 2)) and kind is SU11)
            s = kind.s
            d = math.sqrt(g.Lambda)
            lam = g.lam
            m = np.array([[d + s * abs(lam) ** 2 / d, lam / d],
                          [s * np.conj(lam) / d, 1.0 / d]], dtype=complex)
            m_inv = np.linalg.inv(m)
            a = adjoint_transfer(g, kind)
            for j, gen in enumerate(basis):
                e = np.zeros(3, dtype=complex)
                e[j] = 1.0
                c = a @ e
                lhs = m @ gen @ m_inv
                rhs = rep2_matrix(CoeffVector(c[0], c[1], c[2]), kind)
                assert np.max(np.abs(lhs - rhs)) < 1e-9 * max(
                    1.0, np.max(np.abs(rhs)))

    # leg 2: numeric evolution preserves the phase lock
    grid = np.linspace(0.0, 2.0 / GAMMA, 21)
    at = gauss_flow(PRESET_SU11, GAIN_LOSS, SU11)
    traj = integrate_squeeze(GAIN_LOSS, at, SqueezeState(0.0, math.pi),
                             grid, SU11, TIGHT)
    assert all(abs(sq.phase - math.pi) < 1e-12 for sq in traj.states)

    # leg 3: entanglement is independent of the squeeze angle
    for phase in (0.0, 0.7, -2.1):
        st = evolved_state_closed(SqueezeState(0.8, phase), 40, SU11)
        s = linear_entropy(partial_trace_mode2(st))
        assert s == pytest.approx(entropy_closed(SU11, 0.8), abs=1e-12)

    # leg 4: scenario output is byte-deterministic
    from dataclasses import replace
    sc = replace(PRESETS["fig3"], samples=60)
    assert render_csv(run_scenario(sc)) == render_csv(run_scenario(sc))
