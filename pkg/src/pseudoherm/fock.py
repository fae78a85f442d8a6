"""Two-mode Fock-space realization and exact finite-dimensional oracles.

Realizations:

    su(1,1): K+ = a1+ a2+, K- = a1 a2, K0 = (n1 + n2 + 1)/2 on the product
             of two (N+1)-level truncations;
    su(2):   K+ = a1+ a2,  K- = a2+ a1, K0 = (n1 - n2)/2 on the (n+1)-dim
             sector with n1 + n2 = n fixed.

ladder matrix elements are exact, so truncation error lives only in the
amplitude tail that leaks past the cutoff (see pair_cutoff).  The map and
the metric are built entrywise from their Gauss factorization rather than
by multiplying truncated matrices; the metric of exp(X) is exp(2X), i.e.
the map with doubled exponential parameters, which stays entrywise exact
even where the operator itself is unbounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .dyson_map import ExpParams, GaussState, gauss_decompose, recompose
from .errors import DomainError, MapOverflowError
from .evolution import SqueezeState
from .lie_core import AlgebraKind, CoeffVector
from .numerics import log_gamma

EXP_OVERFLOW = 700.0


@dataclass
class FockWorkspace:
    """Dense generator matrices and index bookkeeping for one realization."""

    kind: AlgebraKind
    cutoff: int
    dim: int
    k0_diag: np.ndarray
    k0: np.ndarray
    kp: np.ndarray
    km: np.ndarray
    occ1: np.ndarray
    occ2: np.ndarray
    mode_dims: tuple[int, ...]
    sectors: list
    interior: np.ndarray


def build_workspace(kind: AlgebraKind, cutoff: int) -> FockWorkspace:
    """Generators on the truncated (su(1,1), per-mode cutoff) or exact
    (su(2), total number n = cutoff) two-mode space."""
    if cutoff < 1:
        raise DomainError("cutoff must be >= 1")
    if kind is AlgebraKind.SU11:
        n_lvl = cutoff + 1
        occ1 = np.repeat(np.arange(n_lvl), n_lvl)
        occ2 = np.tile(np.arange(n_lvl), n_lvl)
        dim = n_lvl * n_lvl
        k0_diag = (occ1 + occ2 + 1) / 2.0
        kp = np.zeros((dim, dim))
        src = np.flatnonzero((occ1 < cutoff) & (occ2 < cutoff))
        dst = src + n_lvl + 1
        kp[dst, src] = np.sqrt((occ1[src] + 1.0) * (occ2[src] + 1.0))
        charge = occ1 - occ2
        sectors = [np.flatnonzero(charge == q)
                   for q in range(-cutoff, cutoff + 1)]
        interior = (occ1 < cutoff) & (occ2 < cutoff)
        mode_dims = (n_lvl, n_lvl)
    else:
        n = cutoff
        dim = n + 1
        occ1 = np.arange(dim)
        occ2 = n - occ1
        k0_diag = occ1 - n / 2.0
        kp = np.zeros((dim, dim))
        k = np.arange(n)
        kp[k + 1, k] = np.sqrt((k + 1.0) * (n - k))
        sectors = [np.arange(dim)]
        interior = np.ones(dim, dtype=bool)
        mode_dims = (dim,)
    return FockWorkspace(kind=kind, cutoff=cutoff, dim=dim, k0_diag=k0_diag,
                         k0=np.diag(k0_diag), kp=kp, km=kp.T.copy(),
                         occ1=occ1, occ2=occ2, mode_dims=mode_dims,
                         sectors=sectors, interior=interior)


def _upper_exp(lam: complex, ws: FockWorkspace) -> np.ndarray:
    """exp(lam * K+), entrywise exact on the truncated space.

    K+ only raises, so each entry is a single finite ladder product; the
    magnitudes are assembled in log space to dodge factorial overflow.
    """
    u = np.eye(ws.dim, dtype=complex)
    mag = abs(lam)
    if mag == 0.0:
        return u
    ph = lam / mag
    lg = gammaln(np.arange(ws.dim + 2, dtype=float) + 1.0)
    log_mag = math.log(mag)
    if ws.kind is AlgebraKind.SU11:
        for j in range(1, ws.cutoff + 1):
            src = np.flatnonzero((ws.occ1 >= j) & (ws.occ2 >= j))
            dst_occ1 = ws.occ1[src]
            dst_occ2 = ws.occ2[src]
            col = src - j * (ws.cutoff + 2)  # index of (occ1-j, occ2-j)
            log_amp = (j * log_mag - lg[j]
                       + 0.5 * (lg[dst_occ1] - lg[dst_occ1 - j]
                                + lg[dst_occ2] - lg[dst_occ2 - j]))
            u[src, col] = np.exp(log_amp) * ph ** j
    else:
        n = ws.cutoff
        for j in range(1, n + 1):
            k = np.arange(n + 1 - j)
            log_amp = (j * log_mag - lg[j]
                       + 0.5 * (lg[k + j] - lg[k] + lg[n - k] - lg[n - k - j]))
            u[k + j, k] = np.exp(log_amp) * ph ** j
    return u


def eta_matrix(g: GaussState, ws: FockWorkspace) -> np.ndarray:
    """Hermitizing map in the Fock realization, from its Gauss factorization."""
    exponents = ws.k0_diag * math.log(g.Lambda)
    if exponents.max() > EXP_OVERFLOW:
        raise MapOverflowError(
            f"Lambda^K0 overflows at cutoff {ws.cutoff} (Lambda={g.Lambda:.3e})")
    # underflowed weights drop to exact zeros, which is the right limit
    u = _upper_exp(g.lam, ws)
    eta = (u * np.exp(exponents)) @ u.conj().T
    if not np.all(np.isfinite(eta)):
        raise MapOverflowError("map entries overflow at this cutoff")
    return eta


def theta_matrix(g: GaussState, ws: FockWorkspace) -> np.ndarray:
    """Metric eta^2, computed as the map with doubled exponential parameters
    so every entry is exact (the matrix square of a truncated map is not).

    For su(1,1) the metric's matrix elements are infinite sums over the pair
    ladder that converge only for |lam| < 1; outside that disc the metric
    exists at most as a quadratic form and no finite matrix represents it,
    so the request is refused.
    """
    if ws.kind is AlgebraKind.SU11 and abs(g.lam) >= 1.0:
        raise DomainError(
            f"metric matrix elements diverge for |lam| = {abs(g.lam):.6g} >= 1 "
            "in the su(1,1) pair realization")
    p = recompose(g, ws.kind)
    g2 = gauss_decompose(ExpParams(2.0 * p.eps, 2.0 * p.mu_abs, p.mu_phase),
                         ws.kind)
    return eta_matrix(g2, ws)


def _squeeze_matrix(r: float, phase: float, ws: FockWorkspace) -> np.ndarray:
    """exp(xi K+ - xi* K-) with xi = r e^{i phase}, unitary on the truncation.

    The generator conserves the mode-occupation charge, so the exponential
    is assembled sector by sector from Hermitian eigendecompositions.
    """
    xi = r * np.exp(1j * phase)
    x = xi * ws.kp - np.conj(xi) * ws.km
    out = np.zeros((ws.dim, ws.dim), dtype=complex)
    for sec in ws.sectors:
        block = 1j * x[np.ix_(sec, sec)]
        w, v = np.linalg.eigh(block)
        out[np.ix_(sec, sec)] = (v * np.exp(-1j * w)) @ v.conj().T
    return out


def evolution_ops(sq_t: SqueezeState, sq0: SqueezeState,
                  ws: FockWorkspace) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Factors of the unitary propagator u(t) = S(t) R(t) S(0)+.

    Returns (S_t, R_t, u_t) where S is the squeeze factor and R the
    diagonal rotation exp(-2i (omega_tilde_t - omega_tilde_0) K0).
    """
    s_t = _squeeze_matrix(sq_t.r, sq_t.phase, ws)
    s_0 = _squeeze_matrix(sq0.r, sq0.phase, ws)
    rot = np.exp(-2j * (sq_t.omega_tilde - sq0.omega_tilde) * ws.k0_diag)
    u = (s_t * rot) @ s_0.conj().T
    return s_t, np.diag(rot), u


def ground_state(ws: FockWorkspace) -> np.ndarray:
    """Lowest-weight seed: |0,0> for su(1,1), |0,n> for su(2)."""
    psi = np.zeros(ws.dim, dtype=complex)
    psi[0] = 1.0
    return psi


@dataclass
class PureState:
    """Flat two-mode state vector with its mode factorization."""

    amps: np.ndarray
    kind: AlgebraKind
    mode_dims: tuple[int, ...]


def evolved_state_closed(sq: SqueezeState, n: int,
                         kind: AlgebraKind) -> PureState:
    """Closed-form evolved seed state for squeeze parameters sq.

    su(1,1): n is the per-mode cutoff N; amplitudes live on the pair ladder
    |m,m> with weight tanh^m(r)/cosh(r).  su(2): n labels the representation
    (total occupation); amplitudes are the binomial ladder in tan(r).
    """
    if kind is AlgebraKind.SU11:
        n_lvl = n + 1
        amps = np.zeros((n_lvl, n_lvl), dtype=complex)
        t = math.tanh(sq.r)
        base = np.exp(-1j * sq.omega_tilde) / math.cosh(sq.r)
        step = t * np.exp(1j * sq.phase)
        m = np.arange(n_lvl)
        amps[m, m] = base * step ** m
        return PureState(amps=amps.ravel(), kind=kind, mode_dims=(n_lvl, n_lvl))
    cs, sn = math.cos(sq.r), math.sin(sq.r)
    amps = np.zeros(n + 1, dtype=complex)
    if sn == 0.0:
        amps[0] = 1.0
    elif cs == 0.0:
        amps[n] = np.exp(1j * n * sq.phase)
    else:
        k = np.arange(n + 1)
        lg = gammaln(k + 1.0)
        log_mag = (0.5 * (lg[-1] - lg - lg[::-1])
                   + (n - k) * math.log(abs(cs)) + k * math.log(abs(sn)))
        sign = np.sign(cs) ** (n - k) * np.sign(sn) ** k
        amps = sign * np.exp(log_mag) * np.exp(1j * k * sq.phase)
    amps = amps * np.exp(1j * n * sq.omega_tilde)
    return PureState(amps=amps, kind=kind, mode_dims=(n + 1,))


def partial_trace_mode2(state: PureState) -> np.ndarray:
    """Reduced density matrix of mode 1."""
    if state.kind is AlgebraKind.SU11:
        a = state.amps.reshape(state.mode_dims)
        return a @ a.conj().T
    # |k, n-k>: mode-2 occupations are all distinct, so the reduction is
    # diagonal in the mode-1 number basis
    return np.diag(np.abs(state.amps) ** 2).astype(complex)


def linear_entropy(rho: np.ndarray) -> float:
    """1 - Tr(rho^2) for a unit-trace density matrix."""
    return float(1.0 - np.sum(np.abs(rho) ** 2))


def entropy_closed(kind: AlgebraKind, r: float, n: int | None = None) -> float:
    """Closed-form linear entropy of mode 1 for the evolved seed state.

    su(1,1): 1 - sech(2r).  su(2): 1 - c^n P_n((1+c^2)/(2c)) with c = cos(2r),
    evaluated through a scaled Legendre recurrence that is regular at c = 0;
    inside |c| < 1e-6 the analytic c -> 0 limit is used.
    """
    if kind is AlgebraKind.SU11:
        return 1.0 - 1.0 / math.cosh(2.0 * r)
    if n is None:
        raise DomainError("su(2) entropy needs the representation label n")
    if n < 0:
        raise DomainError("n must be >= 0")
    c = math.cos(2.0 * r)
    if abs(c) < 1e-6:
        return 1.0 - math.exp(log_gamma(n + 0.5) - log_gamma(n + 1.0)) / math.sqrt(math.pi)
    a = (1.0 + c * c) / 2.0
    q_prev, q = 1.0, a
    if n == 0:
        return 0.0
    for k in range(1, n):
        q_prev, q = q, ((2 * k + 1) * a * q - k * c * c * q_prev) / (k + 1)
    return 1.0 - q


def pair_cutoff(r: float, tol: float = 1e-12) -> int:
    """Smallest per-mode cutoff N with pair-amplitude tail tanh^{2N}(r) < tol."""
    if r <= 0.0:
        return 1
    t = math.tanh(r)
    return max(1, math.ceil(math.log(tol) / (2.0 * math.log(t))))


def quasi_hermiticity_residual(h, gauss_at, t: float, dt: float,
                               ws: FockWorkspace) -> float:
    """Relative Frobenius residual of H+ Theta - Theta H = i dTheta/dt.

    dTheta/dt is a centered finite difference of the exact metric along the
    trajectory ``gauss_at``; rows and columns touching the truncation
    boundary are dropped before taking norms.
    """
    th0 = theta_matrix(gauss_at(t), ws)
    thp = theta_matrix(gauss_at(t + dt), ws)
    thm = theta_matrix(gauss_at(t - dt), ws)
    ham = (2.0 * h.omega(t) * ws.k0 + 2.0 * h.alpha(t) * ws.km
           + 2.0 * h.beta(t) * ws.kp)
    resid = ham.conj().T @ th0 - th0 @ ham - 1j * (thp - thm) / (2.0 * dt)
    idx = np.flatnonzero(ws.interior)
    sub = resid[np.ix_(idx, idx)]
    ref = th0[np.ix_(idx, idx)]
    return float(np.linalg.norm(sub) / np.linalg.norm(ref))


def expectation_consistency(obs: CoeffVector, g: GaussState, psi: np.ndarray,
                            ws: FockWorkspace) -> float:
    """|<O>_metric - <o>_conjugated| for one observable coefficient vector.

    Route one evaluates the metric form <Psi, Theta O Psi> on Psi = eta^{-1}
    psi with Theta = eta eta; route two evaluates the conjugated observable
    <psi, eta O eta^{-1} psi>.  They agree identically in exact arithmetic,
    so the discrepancy measures how well the map's conditioning supports
    round-tripping expectation values at this cutoff.
    """
    eta = eta_matrix(g, ws)
    op = obs.c0 * ws.k0 + obs.cm * ws.km + obs.cp * ws.kp
    big = np.linalg.solve(eta, psi)
    lhs = np.vdot(big, eta @ (eta @ (op @ big)))
    rhs = np.vdot(psi, eta @ (op @ big))
    return float(abs(lhs - rhs))
