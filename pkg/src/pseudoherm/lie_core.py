"""Unified su(1,1)/su(2) structure constants and the faithful 2x2 picture.

Both algebras share the bracket
    [K0, K+-] = +-K+-,      [K+, K-] = 2 s K0,
with the structure sign s = -1 selecting su(1,1) and s = +1 selecting su(2).
Every generator combination in this package is a coefficient triple
(c0, cm, cp) multiplying (K0, K-, K+), and the faithful 2x2 picture

    K0 = diag(1/2, -1/2),   K+ = [[0, 1], [0, 0]],   K- = [[0, 0], [s, 0]]

serves as an independent oracle for every algebraic identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np

from .errors import PoleError

if TYPE_CHECKING:  # pragma: no cover
    from .dyson_map import GaussState


class AlgebraKind(Enum):
    """The two real forms handled by the unified coefficient formalism."""

    SU11 = "su11"
    SU2 = "su2"

    @property
    def s(self) -> int:
        """Structure sign: -1 for su(1,1), +1 for su(2)."""
        return -1 if self is AlgebraKind.SU11 else 1

    @classmethod
    def from_string(cls, name: str) -> "AlgebraKind":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(f"unknown algebra kind {name!r}; expected 'su11' or 'su2'")


@dataclass
class CoeffVector:
    """Coefficients (c0, cm, cp) of a generator c0*K0 + cm*K- + cp*K+."""

    c0: complex
    cm: complex
    cp: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.c0, self.cm, self.cp], dtype=complex)


@dataclass
class Rep2:
    """Faithful 2x2 matrices of (K0, K+, K-) for one algebra kind."""

    k0: np.ndarray
    kp: np.ndarray
    km: np.ndarray


def rep2_generators(kind: AlgebraKind) -> Rep2:
    s = kind.s
    k0 = np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex)
    kp = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    km = np.array([[0.0, 0.0], [s, 0.0]], dtype=complex)
    return Rep2(k0=k0, kp=kp, km=km)


def rep2_matrix(v: CoeffVector, kind: AlgebraKind) -> np.ndarray:
    """2x2 matrix of c0*K0 + cm*K- + cp*K+."""
    s = kind.s
    return np.array([[0.5 * v.c0, v.cp], [s * v.cm, -0.5 * v.c0]], dtype=complex)


def rep2_coeffs(m: np.ndarray, kind: AlgebraKind) -> CoeffVector:
    """Coefficient triple of a traceless 2x2 matrix in this algebra."""
    s = kind.s
    return CoeffVector(c0=m[0, 0] - m[1, 1], cm=s * m[1, 0], cp=m[0, 1])


def commutator(a: CoeffVector, b: CoeffVector, kind: AlgebraKind) -> CoeffVector:
    """Coefficients of [A, B] for generators given by coefficient triples."""
    s = kind.s
    return CoeffVector(
        c0=2 * s * (a.cp * b.cm - a.cm * b.cp),
        cm=a.cm * b.c0 - a.c0 * b.cm,
        cp=a.c0 * b.cp - a.cp * b.c0,
    )


def adjoint_transfer(g: "GaussState", kind: AlgebraKind) -> np.ndarray:
    """3x3 matrix of the similarity action of the hermitizing map.

    Column i holds the coefficients of eta K_i eta^{-1} in the (K0, K-, K+)
    basis, so coefficient triples transform as ``new = M @ (c0, cm, cp)``.
    """
    s = kind.s
    lam = g.lam
    lam_c = np.conj(lam)
    big_l = g.Lambda
    phi2 = g.signed_phi ** 2
    chi = -s * phi2 - big_l
    return np.array([
        [(s * phi2 - chi) / big_l, 2 * s * lam / big_l, 2 * s * lam_c * chi / big_l],
        [lam_c / big_l, 1.0 / big_l, -s * lam_c ** 2 / big_l],
        [lam * chi / big_l, -s * lam ** 2 / big_l, chi ** 2 / big_l],
    ], dtype=complex)


_POLE_TOL = 1e-12


def unified_trig(kind: AlgebraKind, x: float) -> tuple[float, float]:
    """The squeeze-evolution function pair (f, g) for either algebra.

    su(1,1):  f = tanh(x),  g = coth(2x)
    su(2):    f = -tan(x),  g = cot(2x)

    g diverges at x = 0 for both algebras; since the approach is one-sided
    and monotone the value stays meaningful, so an exact zero denominator
    returns a signed infinity and nearby values are served as-is.  The su(2)
    pair is additionally singular where cos(x) vanishes (the edge of the
    squeeze window); within 1e-12 of that pole the value would be numerically
    meaningless, so PoleError is raised instead.
    """
    if kind is AlgebraKind.SU11:
        f = math.tanh(x)
        den = math.tanh(2 * x)
        if den == 0.0:
            return f, math.inf
        return f, 1.0 / den
    cos_x = math.cos(x)
    if abs(cos_x) < _POLE_TOL:
        raise PoleError(f"tan pole proximity at x={x}")
    f = -math.tan(x)
    sin2 = math.sin(2 * x)
    if sin2 == 0.0:
        return f, math.inf if cos_x > 0 else -math.inf
    return f, math.cos(2 * x) / sin2
