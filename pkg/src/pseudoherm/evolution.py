"""Squeeze-parameter evolution generated by the Hermitian counterpart.

For counterpart coefficients (W, U) the evolved state of a lowest-weight
seed is a generalized squeeze transform with magnitude r, angle ``phase``,
and accumulated dynamical angle ``omega_tilde`` (the integral of the
effective frequency).  The pair (r, phase) obeys

    dr/dt     = -2 |U| sin(phase + arg U)
    dphase/dt = -2 W - 4 g(r) |U| cos(phase + arg U)

with g the algebra-unified cotangent ratio, while the effective frequency is
W + 2 f(r) |U| cos(phase + arg U).  On phase-locked motion
(phase + phi = l*pi) the cosine term drops and everything integrates in
closed form along a known Gauss trajectory.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .dyson_map import (BreakdownReport, GaussState, HamiltonianProfile,
                        as_profile)
from .errors import (BranchCrossingError, CoordinateSingularityError,
                     DomainError, SingularRhsError)
from .hermitian_map import HermCoeffs, counterpart
from .lie_core import AlgebraKind, unified_trig
from .numerics import IntegratorConfig, rk45

R_SINGULAR_TOL = 1e-9


@dataclass
class SqueezeState:
    """Squeeze magnitude r >= 0, angle, and accumulated effective phase."""

    r: float
    phase: float
    omega_tilde: float = 0.0

    def __post_init__(self):
        if not (self.r >= 0):
            raise DomainError(f"r must be >= 0, got {self.r}")


def squeeze_ode_rhs(sq: SqueezeState, c: HermCoeffs,
                    kind: AlgebraKind) -> tuple[float, float]:
    """(dr/dt, dphase/dt) for counterpart coefficients c at the given state.

    The angle equation carries a 1/r-type singularity at r = 0; it is only
    removable when the cosine term vanishes (phase-locked approach), so a
    non-locked state inside the r window raises CoordinateSingularityError.
    """
    u_abs = abs(c.U)
    u_arg = cmath.phase(c.U)
    theta = sq.phase + u_arg
    dr = -2.0 * u_abs * math.sin(theta)
    cos_term = u_abs * math.cos(theta)
    if sq.r < R_SINGULAR_TOL:
        if abs(cos_term) <= 1e-9 * max(1.0, u_abs):
            dphase = -2.0 * c.W
        else:
            raise CoordinateSingularityError(
                f"angle equation singular at r={sq.r:.3e} with un-locked phase")
    else:
        _, g = unified_trig(kind, sq.r)
        dphase = -2.0 * c.W - 4.0 * g * cos_term
    if not (math.isfinite(dr) and math.isfinite(dphase)):
        raise SingularRhsError("non-finite squeeze rhs")
    return dr, dphase


def omega_eff(sq: SqueezeState, c: HermCoeffs, kind: AlgebraKind) -> float:
    """Effective frequency W + 2 f(r) |U| cos(phase + arg U)."""
    f, _ = unified_trig(kind, sq.r)
    return c.W + 2.0 * f * abs(c.U) * math.cos(sq.phase + cmath.phase(c.U))


def phase_integral(omega_R, t: float) -> float:
    """Integral of a real frequency profile from 0 to t."""
    return as_profile(omega_R).integral(t)


def _wrap_pi(x: float) -> float:
    return (x + math.pi) % (2.0 * math.pi) - math.pi


def k0_closed_form_squeeze(traj, h: HamiltonianProfile, kind: AlgebraKind,
                           r0: float = 0.0, l: int = 1, auto_l: bool = False,
                           phase0: float | None = None) -> list[SqueezeState]:
    """Phase-locked closed-form squeeze states along a K0-driven trajectory.

    ``traj`` provides .times and .states (e.g. a DysonTrajectory or a bundle
    of closed-form Gauss states).  The lock fixes phase(t) = l*pi - phi(t);
    the magnitude integrates to

        su(1,1): r = r0 + (-1)^l * (1/2) ln(w(t)/w(0)), w = (1+Phi)/(1-Phi)
        su(2):   r = r0 + (-1)^l * (atan Phi(t) - atan Phi(0))

    with Phi the signed magnitude.  A sign change of w marks a branch
    crossing (r diverges there); with auto_l the parity in {l, l+1} keeping
    r >= 0 is selected.
    """
    times = np.asarray(traj.times, dtype=float)
    states = traj.states
    g0 = states[0]
    if phase0 is not None and abs(_wrap_pi(phase0 - (l * math.pi - g0.phi))) > 1e-9:
        raise DomainError("initial phase is not phase-locked for this l")
    p = np.array([st.signed_phi for st in states])
    if kind is AlgebraKind.SU11:
        with np.errstate(divide="ignore", invalid="ignore"):
            w = (1.0 + p) / (1.0 - p)
            ratio = w / w[0]
        if w[0] == 0.0 or not math.isfinite(w[0]):
            raise DomainError("initial state sits on the r-divergence boundary")
        bad = ~np.isfinite(ratio) | (ratio <= 0.0)
        if bad.any():
            k = int(np.argmax(bad))
            if k == 0:
                raise DomainError("invalid branch ratio at the initial time")
            target = -1.0 if (p[k - 1] + 1.0) * (p[k] + 1.0) <= 0.0 else 1.0
            frac = (target - p[k - 1]) / (p[k] - p[k - 1])
            tc = times[k - 1] + frac * (times[k] - times[k - 1])
            raise BranchCrossingError(
                f"squeeze magnitude diverges: Phi crosses {target:+.0f} "
                f"near t={tc:.6g}", crossing_time=float(tc))
        delta = 0.5 * np.log(ratio)
    else:
        delta = np.arctan(p) - math.atan(p[0])
    if auto_l:
        for cand in (l, l + 1):
            r = r0 + (-1.0) ** cand * delta
            if r.min() >= -1e-9:
                l = cand
                break
        else:
            raise DomainError("no parity keeps r >= 0 over this window")
    else:
        r = r0 + (-1.0) ** l * delta
        if r.min() < -1e-9:
            raise DomainError(
                f"parity l={l} drives r negative; use l+1 or auto_l")
    r = np.maximum(r, 0.0)
    om = np.array([h.omega_R.integral(t) for t in times])
    phase = l * math.pi - g0.phi - 2.0 * om
    return [SqueezeState(float(rv), float(pv), float(ov))
            for rv, pv, ov in zip(r, phase, om)]


class SqueezeTrajectory:
    """Squeeze-state trajectory on a grid, with dense interpolation."""

    def __init__(self, times, states, breakdown, kind, rk_result):
        self.times = np.asarray(times, dtype=float)
        self.states = states
        self.breakdown = breakdown
        self.kind = kind
        self._rk = rk_result

    def state_at(self, t: float) -> SqueezeState:
        y = self._rk.sample(t)
        return SqueezeState(max(float(y[0]), 0.0), float(y[1]), float(y[2]))


def integrate_squeeze(h: HamiltonianProfile, gauss_at, sq0: SqueezeState,
                      t_grid, kind: AlgebraKind,
                      config: IntegratorConfig | None = None) -> SqueezeTrajectory:
    """Integrate (r, phase, omega_tilde) along a Gauss trajectory.

    ``gauss_at`` maps t to the GaussState used for the counterpart
    coefficients (dense-sampled trajectory or closed form).  Singular points
    of the angle equation stop the run with a breakdown report.
    """

    def rhs(t, y):
        g = gauss_at(t)
        c = counterpart(h, g, t, kind)
        sq = SqueezeState(max(float(y[0]), 0.0), float(y[1]), float(y[2]))
        try:
            dr, dphase = squeeze_ode_rhs(sq, c, kind)
        except CoordinateSingularityError as e:
            raise SingularRhsError(str(e)) from e
        return np.array([dr, dphase, omega_eff(sq, c, kind)])

    def ok(t, y):
        return bool(np.all(np.isfinite(y)))

    y0 = np.array([sq0.r, sq0.phase, sq0.omega_tilde])
    res = rk45(rhs, y0, t_grid, config, accept_check=ok)
    states = [SqueezeState(max(float(row[0]), 0.0), float(row[1]), float(row[2]))
              for row in res.y]
    breakdown = None
    if not res.complete:
        last = SqueezeState(max(float(res.stop_state[0]), 0.0),
                            float(res.stop_state[1]), float(res.stop_state[2]))
        reason = ("non-finite squeeze state" if res.stop_reason == "validity"
                  else "singular squeeze equation (step underflow)")
        breakdown = BreakdownReport(time=res.stop_time, state=last, reason=reason)
    return SqueezeTrajectory(res.t, states, breakdown, kind, res)
