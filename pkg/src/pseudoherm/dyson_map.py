"""Hermitizing maps in Gauss-factorized form and their equations of motion.

A time-dependent non-Hermitian generator

    H(t) = 2*omega(t) K0 + 2*alpha(t) K- + 2*beta(t) K+

admits a Hermitian counterpart when conjugated by a Hermitian, positive map

    eta = exp(2 eps K0 + 2 mu K- + 2 mu* K+)
        = exp(lam K+) * Lambda^{K0} * exp(lam* K-),

parametrized either by exponential parameters (eps, |mu|, arg mu) or by the
Gauss triple (Phi, phi, Lambda) with lam = Phi * exp(-i phi).  This module
converts between the two pictures, evolves the Gauss triple under the
hermiticity-constraint ODEs, and evaluates closed forms and critical times
for the purely K0-driven (gain/loss) family.

Sign convention: states on the second su(1,1) branch carry ``flip=True`` and
all formulas receive the signed value ``signed_phi = -Phi``; the stored
magnitude ``Phi`` stays non-negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (BreakdownError, DivergentZError, DomainError,
                     HermitizationError, SingularRhsError)
from .lie_core import AlgebraKind
from .numerics import (IntegratorConfig, mat_log_principal, quad_adaptive,
                       rk45, sech)

RHS_DENOM_TOL = 1e-10
PHI_SINGULAR_TOL = 1e-12


def _polyval(coeffs, t):
    out = 0.0
    for c in reversed(coeffs):
        out = out * t + c
    return out


class TimeProfile:
    """Piecewise-polynomial real function of t >= 0 with an analytic integral.

    ``pieces`` is a list of (t_start, coeffs) with ascending start times
    beginning at 0; each coefficient list is ascending in powers of t.
    """

    def __init__(self, pieces: Sequence[tuple[float, Sequence[float]]]):
        if not pieces:
            raise DomainError("TimeProfile needs at least one piece")
        starts = [float(p[0]) for p in pieces]
        if starts[0] != 0.0 or any(b <= a for a, b in zip(starts, starts[1:])):
            raise DomainError("piece start times must begin at 0 and increase")
        self._starts = starts
        self._coeffs = [list(map(float, p[1])) for p in pieces]
        # antiderivative coefficients and cumulative integral at piece starts
        self._anti = [[0.0] + [c / (k + 1) for k, c in enumerate(cs)]
                      for cs in self._coeffs]
        self._cum = [0.0]
        for i in range(len(pieces) - 1):
            a, b = self._starts[i], self._starts[i + 1]
            self._cum.append(self._cum[-1]
                             + _polyval(self._anti[i], b) - _polyval(self._anti[i], a))

    @classmethod
    def constant(cls, value: float) -> "TimeProfile":
        return cls([(0.0, [value])])

    @classmethod
    def linear(cls, c0: float, c1: float) -> "TimeProfile":
        return cls([(0.0, [c0, c1])])

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[float]) -> "TimeProfile":
        return cls([(0.0, list(coeffs))])

    def _piece(self, t: float) -> int:
        i = len(self._starts) - 1
        while i > 0 and t < self._starts[i]:
            i -= 1
        return i

    def __call__(self, t: float) -> float:
        i = self._piece(t)
        return _polyval(self._coeffs[i], t)

    def integral(self, t: float) -> float:
        """Exact integral from 0 to t."""
        i = self._piece(t)
        return (self._cum[i]
                + _polyval(self._anti[i], t) - _polyval(self._anti[i], self._starts[i]))

    @property
    def is_zero(self) -> bool:
        return all(all(c == 0.0 for c in cs) for cs in self._coeffs)


class _CallableProfile:
    """Adapter giving arbitrary callables the TimeProfile interface."""

    def __init__(self, fn: Callable[[float], float]):
        self._fn = fn
        self.is_zero = False

    def __call__(self, t: float) -> float:
        return float(self._fn(t))

    def integral(self, t: float) -> float:
        return quad_adaptive(self._fn, 0.0, t)


def as_profile(x) -> TimeProfile | _CallableProfile:
    """Normalize a float, coefficient profile, or callable to the profile API."""
    if isinstance(x, (TimeProfile, _CallableProfile)):
        return x
    if isinstance(x, (int, float)):
        return TimeProfile.constant(float(x))
    if isinstance(x, (list, tuple)):
        return TimeProfile.from_coeffs([float(c) for c in x])
    if callable(x):
        return _CallableProfile(x)
    raise DomainError(f"cannot interpret {x!r} as a time profile")


@dataclass
class HamiltonianProfile:
    """The six real profiles defining H(t); omega = omega_R + i*omega_I,
    alpha = alpha_abs * exp(i*alpha_phase), beta = beta_abs * exp(i*beta_phase)."""

    omega_R: object = 0.0
    omega_I: object = 0.0
    alpha_abs: object = 0.0
    alpha_phase: object = 0.0
    beta_abs: object = 0.0
    beta_phase: object = 0.0

    def __post_init__(self):
        for name in ("omega_R", "omega_I", "alpha_abs", "alpha_phase",
                     "beta_abs", "beta_phase"):
            setattr(self, name, as_profile(getattr(self, name)))

    @classmethod
    def k0_only(cls, omega_R=0.0, omega_I=0.0) -> "HamiltonianProfile":
        return cls(omega_R=omega_R, omega_I=omega_I)

    @classmethod
    def gain_loss(cls, gamma: float, omega_R=0.0) -> "HamiltonianProfile":
        """The linear-ramp imaginary-frequency family omega_I(t) = gamma^2 t."""
        return cls(omega_R=omega_R, omega_I=TimeProfile.linear(0.0, gamma ** 2))

    def omega(self, t: float) -> complex:
        return complex(self.omega_R(t), self.omega_I(t))

    def alpha(self, t: float) -> complex:
        return self.alpha_abs(t) * np.exp(1j * self.alpha_phase(t))

    def beta(self, t: float) -> complex:
        return self.beta_abs(t) * np.exp(1j * self.beta_phase(t))

    @property
    def is_k0_only(self) -> bool:
        return self.alpha_abs.is_zero and self.beta_abs.is_zero


@dataclass
class GaussState:
    """Gauss parameters of the map: magnitude Phi >= 0, phase phi, Lambda > 0.

    ``flip`` marks the second su(1,1) branch; formulas receive ``signed_phi``.
    """

    Phi: float
    phi: float
    Lambda: float
    flip: bool = False

    def __post_init__(self):
        if not (self.Phi >= 0):
            raise DomainError(f"Phi must be >= 0, got {self.Phi}")
        if not (self.Lambda > 0):
            raise DomainError(f"Lambda must be > 0, got {self.Lambda}")

    @property
    def signed_phi(self) -> float:
        return -self.Phi if self.flip else self.Phi

    @property
    def lam(self) -> complex:
        """Gauss off-diagonal parameter lam = signed_phi * exp(-i phi)."""
        return self.signed_phi * np.exp(-1j * self.phi)

    @classmethod
    def from_signed(cls, phi_signed: float, phi: float, Lambda: float) -> "GaussState":
        return cls(Phi=abs(phi_signed), phi=phi, Lambda=Lambda, flip=phi_signed < 0)


@dataclass
class ExpParams:
    """Exponential parameters of the map: eps >= 0 and mu = mu_abs e^{i mu_phase}."""

    eps: float
    mu_abs: float
    mu_phase: float

    def __post_init__(self):
        if not (self.eps >= 0):
            raise DomainError(f"eps must be >= 0, got {self.eps}")
        if not (self.mu_abs >= 0):
            raise DomainError(f"mu_abs must be >= 0, got {self.mu_abs}")


@dataclass
class ValidityReport:
    ok: bool
    status: str  # "ok", "z_exceeds_one", "z_divergent", "z_negative", "eps_negative"
    z_value: float
    trace: float


@dataclass
class CriticalTimes:
    """Hermitization-window boundary times in seconds (None where undefined)."""

    t_minus: float | None
    t_plus: float | None
    t_star: float | None
    t_prime: float | None
    z_at_t_star: float | None


def chi(g: GaussState, kind: AlgebraKind) -> float:
    """chi = -s*Phi^2 - Lambda (equals -2*Phi/|z| - 1 on valid states)."""
    return -kind.s * g.signed_phi ** 2 - g.Lambda


def z_value(g: GaussState, kind: AlgebraKind) -> float:
    """Signed coupling ratio 2*Phi/(Lambda + s*Phi^2 - 1).

    On valid states this equals |z| = 2|mu|/eps; a negative or >1 value (or
    infinity at the divergence surface) marks the failure mode, see validity().
    """
    p = g.signed_phi
    if p == 0.0:
        return 0.0
    den = g.Lambda + kind.s * p * p - 1.0
    if den == 0.0:
        return math.copysign(math.inf, p)
    return 2.0 * p / den


def _trace(g: GaussState, kind: AlgebraKind) -> float:
    return (g.Lambda + kind.s * g.signed_phi ** 2 + 1.0) / math.sqrt(g.Lambda)


def validity(g: GaussState, kind: AlgebraKind) -> ValidityReport:
    """Classify whether (Phi, Lambda) admits exponential parameters with
    eps >= 0 and mu_phase = phi.

    The su(1,1) conditions are evaluated in the cancellation-free form
    Phi <= sqrt(Lambda) - 1 (first branch) / Phi >= sqrt(Lambda) + 1 (flipped
    branch), equivalent to |z| <= 1 but stable near the tangential boundary.
    """
    p = g.signed_phi
    a = abs(p)
    u = math.sqrt(g.Lambda)
    z = z_value(g, kind)
    tr = _trace(g, kind)
    if kind is AlgebraKind.SU11:
        if g.Lambda >= 1.0 and a <= u - 1.0:
            status = "ok" if p >= 0 else "z_negative"
        elif a >= u + 1.0:
            status = "ok" if p <= 0 else "z_negative"
        elif g.Lambda < 1.0 and a <= 1.0 - u:
            status = "eps_negative"
        else:
            status = "z_exceeds_one"
    else:
        zden = g.Lambda + p * p - 1.0
        if zden == 0.0:
            status = "z_divergent"
        elif zden < 0.0:
            status = "eps_negative"
        elif p < 0.0:
            status = "z_negative"
        else:
            status = "ok"
    return ValidityReport(ok=status == "ok", status=status, z_value=z, trace=tr)


def _tanhc(x: float) -> float:
    """tanh(x)/x, series near zero."""
    if abs(x) < 1e-6:
        x2 = x * x
        return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0
    return math.tanh(x) / x


def gauss_decompose(p: ExpParams, kind: AlgebraKind) -> GaussState:
    """Gauss parameters (Phi, phi, Lambda) of eta = exp(2 eps K0 + 2 mu K- + 2 mu* K+).

    Uses the cancellation-free denominator
        1 - eps*tanh(Xi)/Xi = [4 s mu^2/(Xi+eps) + 2 eps/(e^{2 Xi}+1)] / Xi,
    so both branches (including the sign flip at eps*tanh(Xi)/Xi > 1) come out
    at full precision.
    """
    s = kind.s
    eps, mu = p.eps, p.mu_abs
    if eps == 0.0 and mu == 0.0:
        return GaussState(Phi=0.0, phi=p.mu_phase, Lambda=1.0)
    xi2 = eps * eps + 4.0 * s * mu * mu
    if xi2 < 0.0:
        if xi2 > -1e-15 * eps * eps:
            xi2 = 0.0
        else:
            raise HermitizationError(
                f"imaginary Xi for eps={eps}, |mu|={mu} (|z| > 1 with s=-1)")
    xi = math.sqrt(xi2)
    t_c = _tanhc(xi)
    if xi < 1e-6 or xi < 1e-6 * eps:
        d = 1.0 - eps * t_c
    else:
        term2 = 0.0 if xi > 350.0 else 2.0 * eps / (math.exp(2.0 * xi) + 1.0)
        d = (4.0 * s * mu * mu / (xi + eps) + term2) / xi
    if d == 0.0:
        raise DomainError("Gauss factorization singular: eps*tanh(Xi)/Xi = 1")
    lam_out = (sech(xi) / d) ** 2
    phi_signed = 2.0 * mu * t_c / d
    if not (math.isfinite(lam_out) and math.isfinite(phi_signed) and lam_out > 0):
        raise DomainError("Gauss parameters left the floating range")
    return GaussState.from_signed(phi_signed, p.mu_phase, lam_out)


def _gauss_matrix(g: GaussState, kind: AlgebraKind) -> np.ndarray:
    """2x2 transfer matrix exp(lam kp) Lambda^{k0} exp(lam* km)."""
    s = kind.s
    d = math.sqrt(g.Lambda)
    lam = g.lam
    return np.array([[d + s * abs(lam) ** 2 / d, lam / d],
                     [s * np.conj(lam) / d, 1.0 / d]], dtype=complex)


def recompose(g: GaussState, kind: AlgebraKind) -> ExpParams:
    """Exponential parameters (eps, |mu|, arg mu) of a Gauss state.

    Primary algorithm: assemble the 2x2 transfer matrix of the factorized map
    and take its principal logarithm (negating first when the trace is
    negative, which is the flipped branch where the factorized product equals
    minus the exponential).  The explicit logarithmic formula for eps is kept
    in the tests as a cross-check away from its cancellation region.
    """
    rep = validity(g, kind)
    if not rep.ok:
        if rep.status == "z_exceeds_one":
            raise HermitizationError(
                f"no hermitizing map: |z|={abs(rep.z_value):.6g} > 1 (s=-1)")
        if rep.status == "z_divergent":
            raise DivergentZError("z diverges: Lambda + s*Phi^2 - 1 = 0")
        raise DomainError(f"state admits no eps >= 0 map (status: {rep.status})")
    m = _gauss_matrix(g, kind)
    tr = _trace(g, kind)
    if abs(tr) < 2.0 * (1.0 - 1e-12):
        raise DomainError("transfer matrix is elliptic; no real exponential parameters")
    a = mat_log_principal(-m if tr < 0 else m)
    eps = float(a[0, 0].real)
    mu = kind.s * a[1, 0] / 2.0
    mu_abs = abs(mu)
    mu_phase = float(np.angle(mu)) if mu_abs > 1e-300 else g.phi
    if eps < 0.0:
        if eps > -1e-10 * (1.0 + mu_abs):
            eps = 0.0
        else:
            raise DomainError(f"recovered eps={eps} is negative")
    return ExpParams(eps=eps, mu_abs=mu_abs, mu_phase=mu_phase)


def dyson_ode_rhs(g: GaussState, h: HamiltonianProfile, t: float,
                  kind: AlgebraKind) -> np.ndarray:
    """Right-hand side (dPhi, dphi, dLambda) of the hermiticity-constraint ODEs.

    dPhi is the derivative of the signed value.  Raises SingularRhsError when
    the denominator chi - 1 falls below 1e-10 in magnitude, or at Phi = 0 with
    nonzero ladder couplings (where dphi is singular).
    """
    s = kind.s
    p = g.signed_phi
    lam = g.Lambda
    chi_v = -s * p * p - lam
    den = chi_v - 1.0
    if abs(den) < RHS_DENOM_TOL:
        raise SingularRhsError(f"chi - 1 = {den:.3e} below tolerance at t={t}")
    w_r, w_i = h.omega_R(t), h.omega_I(t)
    a_abs, b_abs = h.alpha_abs(t), h.beta_abs(t)
    if abs(p) < PHI_SINGULAR_TOL:
        if abs(a_abs) < 1e-15 and abs(b_abs) < 1e-15:
            d_phi = 2.0 * p * (1.0 + s * p * p) * w_i / den
            d_lam = 2.0 * lam * (2.0 * s * p * p / den - 1.0) * w_i
            return np.array([d_phi, 2.0 * w_r, d_lam])
        raise SingularRhsError("phase equation singular at Phi = 0 with couplings on")
    sin_a = math.sin(g.phi - h.alpha_phase(t))
    cos_a = math.cos(g.phi - h.alpha_phase(t))
    sin_b = math.sin(g.phi + h.beta_phase(t))
    cos_b = math.cos(g.phi + h.beta_phase(t))
    one_sp2 = 1.0 + s * p * p
    d_phi = (2.0 / den) * ((p * w_i - a_abs * sin_a) * one_sp2
                           + b_abs * sin_b * (s * (2.0 * chi_v - 1.0) * p * p + chi_v ** 2))
    d_ang = 2.0 * w_r - (2.0 / (den * p)) * (a_abs * cos_a * one_sp2
                                             - b_abs * cos_b * (s * p * p + chi_v ** 2))
    d_lam = 2.0 * lam * ((2.0 * s * p * p / den - 1.0) * w_i
                         - (2.0 * s * p / den) * (a_abs * sin_a
                                                  - b_abs * (2.0 * chi_v - 1.0) * sin_b))
    out = np.array([d_phi, d_ang, d_lam])
    if not np.all(np.isfinite(out)):
        raise SingularRhsError(f"non-finite rhs at t={t}")
    return out


@dataclass
class BreakdownReport:
    """Where and why a trajectory stopped before its requested end."""

    time: float
    state: GaussState
    reason: str


class DysonTrajectory:
    """Gauss-state trajectory on a grid, with dense interpolation."""

    def __init__(self, times, states, breakdown, kind, rk_result):
        self.times = np.asarray(times, dtype=float)
        self.states = states
        self.breakdown = breakdown
        self.kind = kind
        self._rk = rk_result

    def state_at(self, t: float) -> GaussState:
        y = self._rk.sample(t)
        return GaussState.from_signed(y[0], y[1], y[2])


def integrate_dyson(g0: GaussState, h: HamiltonianProfile, t_grid,
                    kind: AlgebraKind,
                    config: IntegratorConfig | None = None) -> DysonTrajectory:
    """Integrate the constraint ODEs over the grid, stopping at breakdown.

    The run halts (with a report, not an exception) at the first validity
    violation, refined by bisection, or when the step size underflows near a
    singular right-hand side.  The initial state must be valid.
    """
    rep = validity(g0, kind)
    if not rep.ok:
        raise DomainError(f"initial state invalid (status: {rep.status})")

    def rhs(t, y):
        if y[2] <= 0.0:
            # trial stage left the chart; reject the step rather than crash
            raise SingularRhsError(f"Lambda <= 0 in a trial stage at t={t}")
        return dyson_ode_rhs(GaussState.from_signed(y[0], y[1], y[2]), h, t, kind)

    def ok(t, y):
        if not np.all(np.isfinite(y)) or y[2] <= 0:
            return False
        return validity(GaussState.from_signed(y[0], y[1], y[2]), kind).ok

    y0 = np.array([g0.signed_phi, g0.phi, g0.Lambda])
    res = rk45(rhs, y0, t_grid, config, accept_check=ok)
    states = [GaussState.from_signed(*row) for row in res.y]
    breakdown = None
    if not res.complete:
        last = GaussState.from_signed(*res.stop_state)
        reason = ("hermitization boundary" if res.stop_reason == "validity"
                  else "singular right-hand side (step underflow)")
        breakdown = BreakdownReport(time=res.stop_time, state=last, reason=reason)
    return DysonTrajectory(res.t, states, breakdown, kind, res)


def k0_closed_form(g0: GaussState, h: HamiltonianProfile, t: float,
                   kind: AlgebraKind) -> GaussState:
    """Exact Gauss state at time t for a purely K0-driven Hamiltonian.

    With E(t) = exp(2 * integral of omega_I) the magnitude and Lambda follow
    the rational flow below while the phase advances by 2 * integral of
    omega_R.  Valid while the state stays inside its hermitization window.
    """
    s = kind.s
    p0 = g0.signed_phi
    lam0 = g0.Lambda
    e_fac = math.exp(2.0 * h.omega_I.integral(t))
    head = s * p0 * p0 + 1.0
    if head == 0.0:
        raise DomainError("closed form degenerate at |Phi| = 1; integrate instead")
    den = lam0 + head * e_fac
    if den == 0.0:
        raise DomainError("closed form leaves the chart (denominator vanished)")
    p_t = p0 * (lam0 + head) / den
    lam_t = lam0 * (s * p_t * p_t + 1.0) / (head * e_fac)
    if lam_t <= 0.0:
        raise DomainError(f"closed form gives Lambda <= 0 at t={t}: past breakdown")
    phi_t = g0.phi + 2.0 * h.omega_R.integral(t)
    return GaussState.from_signed(p_t, phi_t, lam_t)


def _sqrt_log_over(x: float, gamma: float) -> float | None:
    return math.sqrt(math.log(x)) / gamma if x > 1.0 else None


def critical_times(phi0: float, lambda0: float, gamma: float,
                   kind: AlgebraKind) -> CriticalTimes:
    """Hermitization-window boundary times for the gain/loss family
    omega_I = gamma^2 t, starting from magnitude phi0 (> 1) and lambda0.

    su(1,1): t_minus/t_plus bracket the |z| = 1 touch, t_star is their rms
    combination and z_at_t_star the closed-form value there.  su(2): t_star is
    the exact boundary time, t_prime the r = pi/4 estimate.
    """
    if phi0 <= 1.0 or lambda0 <= 0.0 or gamma <= 0.0:
        raise DomainError("critical_times requires phi0 > 1, lambda0 > 0, gamma > 0")
    if kind is AlgebraKind.SU11:
        t_minus = _sqrt_log_over(phi0 - lambda0 / (phi0 - 1.0), gamma)
        t_plus = _sqrt_log_over(phi0 - lambda0 / (phi0 + 1.0), gamma)
        t_star = None
        z_star = None
        if t_minus is not None and t_plus is not None:
            t_star = math.sqrt((t_minus ** 2 + t_plus ** 2) / 2.0)
            r2 = 1.0 / phi0 ** 2
            num = 1.0 - lambda0 * r2 - r2
            den = math.sqrt(((1.0 - lambda0 * r2) ** 2 - r2) * (1.0 - r2))
            z_star = num / den
        return CriticalTimes(t_minus=t_minus, t_plus=t_plus, t_star=t_star,
                             t_prime=None, z_at_t_star=z_star)
    r2 = 1.0 / phi0 ** 2
    arg = phi0 ** 2 * ((1.0 + lambda0 * r2) ** 2 + r2) / (1.0 + r2)
    t_star = math.sqrt(0.5 * math.log(arg)) / gamma if arg > 1.0 else None
    argp = phi0 * (1.0 + 1.0 / phi0 + lambda0 * r2) / (1.0 - r2)
    t_prime = _sqrt_log_over(argp, gamma)
    return CriticalTimes(t_minus=None, t_plus=None, t_star=t_star,
                         t_prime=t_prime, z_at_t_star=None)
