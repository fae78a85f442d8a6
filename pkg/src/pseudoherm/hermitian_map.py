"""Coefficients of the Hermitian counterpart generator.

Conjugating H(t) by the map and adding the gauge term i (d eta/dt) eta^{-1}
produces h(t) = 2 W K0 + 2 U K- + 2 V K+.  The raw route keeps (W, U, V)
unconstrained, so deviations of Im W and V - U* from zero measure how far a
given Gauss-state motion is from the hermiticity constraint; the constrained
route substitutes the constraint ODEs and returns the manifestly Hermitian
pair (W real, U complex) with V = U*.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dyson_map import GaussState, HamiltonianProfile, RHS_DENOM_TOL, chi
from .errors import SingularRhsError
from .lie_core import AlgebraKind


@dataclass
class RawCoeffs:
    """Unconstrained counterpart coefficients; Hermitian iff Im W = 0, V = U*."""

    W: complex
    U: complex
    V: complex


@dataclass
class HermCoeffs:
    """Constrained counterpart coefficients h = 2W K0 + 2U K- + 2U* K+."""

    W: float
    U: complex


def counterpart_raw(h: HamiltonianProfile, g: GaussState, g_dot, t: float,
                    kind: AlgebraKind) -> RawCoeffs:
    """Raw (W, U, V) from the map state and an arbitrary state velocity.

    ``g_dot`` is the (dPhi_signed, dphi, dLambda) triple; it does not need to
    satisfy the constraint ODEs - that is the point of the raw route.
    """
    s = kind.s
    lam = g.lam
    lam_c = np.conj(lam)
    big_l = g.Lambda
    chi_v = chi(g, kind)
    phi2 = g.signed_phi ** 2
    d_phi, d_ang, d_lam = float(g_dot[0]), float(g_dot[1]), float(g_dot[2])
    lam_dot = (d_phi - 1j * g.signed_phi * d_ang) * np.exp(-1j * g.phi)
    lam_dot_c = np.conj(lam_dot)
    w = h.omega(t)
    al = h.alpha(t)
    be = h.beta(t)
    w_raw = (w * (s * phi2 - chi_v) + 2 * s * (al * lam + be * lam_c * chi_v)
             + 0.5j * (d_lam + 2 * s * lam_dot_c * lam)) / big_l
    u_raw = (w * lam_c + al - s * be * lam_c ** 2 + 0.5j * lam_dot_c) / big_l
    v_raw = (w * lam * chi_v - s * al * lam ** 2 + be * chi_v ** 2
             + 0.5j * (lam_dot * big_l - d_lam * lam - s * lam_dot_c * lam ** 2)) / big_l
    return RawCoeffs(W=w_raw, U=u_raw, V=v_raw)


def counterpart(h: HamiltonianProfile, g: GaussState, t: float,
                kind: AlgebraKind) -> HermCoeffs:
    """Constrained counterpart coefficients (the constraint ODEs substituted)."""
    s = kind.s
    p = g.signed_phi
    chi_v = chi(g, kind)
    den = chi_v - 1.0
    if abs(den) < RHS_DENOM_TOL:
        raise SingularRhsError(f"chi - 1 = {den:.3e} below tolerance at t={t}")
    a_abs, b_abs = h.alpha_abs(t), h.beta_abs(t)
    cos_a = math.cos(g.phi - h.alpha_phase(t))
    cos_b = math.cos(g.phi + h.beta_phase(t))
    w = h.omega_R(t) - (2.0 * s * p / den) * (a_abs * cos_a - b_abs * cos_b)
    u = (h.alpha(t) - chi_v * np.conj(h.beta(t))
         + 1j * np.exp(1j * g.phi) * p * h.omega_I(t)) / (1.0 - chi_v)
    return HermCoeffs(W=float(w), U=complex(u))


def hermiticity_residual(raw: RawCoeffs) -> tuple[float, float]:
    """(|Im W|, |V - U*|): both vanish exactly on constraint-satisfying motion."""
    return abs(raw.W.imag), abs(raw.V - np.conj(raw.U))
