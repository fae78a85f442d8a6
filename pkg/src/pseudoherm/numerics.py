"""Shared numerical kernels: an embedded Runge-Kutta 4(5) integrator with
dense output, closed-form 2x2 matrix exponential/logarithm, Legendre
polynomials, log-gamma, sech, and adaptive quadrature.

The integrator is deliberately self-contained so that step control, dense
output and halt-and-report semantics are under package control; generic
matrix functions fall back to scipy for sizes above 2x2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.integrate
import scipy.linalg

from .errors import BreakdownError, DomainError, SingularRhsError


@dataclass
class IntegratorConfig:
    """Adaptive step-control settings for :func:`rk45`."""

    rtol: float = 1e-9
    atol: float = 1e-12
    max_step: float = math.inf
    min_step: float = 1e-13


# Dormand-Prince 5(4) tableau.  The 5th-order solution is advanced (first
# same as last), the embedded 4th-order difference drives step control.
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
# y5 - y4 weights
_DP_E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920,
                  -17253 / 339200, 22 / 525, -1 / 40])

_MAX_STEPS = 1_000_000


def _hermite(t, t0, t1, y0, y1, f0, f1):
    """Cubic Hermite interpolant on one accepted step."""
    h = t1 - t0
    th = (t - t0) / h
    h00 = (1 + 2 * th) * (1 - th) ** 2
    h10 = th * (1 - th) ** 2
    h01 = th * th * (3 - 2 * th)
    h11 = th * th * (th - 1)
    return h00 * y0 + h10 * h * f0 + h01 * y1 + h11 * h * f1


class RkResult:
    """Dense trajectory produced by :func:`rk45`.

    ``t``/``y`` hold the requested grid points actually reached.  When the
    integration halted early, ``complete`` is False and ``stop_time``,
    ``stop_state`` and ``stop_reason`` describe the last valid point.
    """

    def __init__(self, t, y, complete, stop_time, stop_state, stop_reason, segments):
        self.t = np.asarray(t, dtype=float)
        self.y = np.asarray(y, dtype=float)
        self.complete = complete
        self.stop_time = stop_time
        self.stop_state = stop_state
        self.stop_reason = stop_reason
        self._segments = segments

    def sample(self, t):
        """Evaluate the dense interpolant at time ``t`` inside the covered span."""
        if not self._segments:
            raise DomainError("empty trajectory has no dense output")
        t0_all = self._segments[0][0]
        t1_all = self._segments[-1][1]
        if t < t0_all - 1e-12 or t > t1_all + 1e-12:
            raise DomainError(f"t={t} outside covered span [{t0_all}, {t1_all}]")
        # binary search over segments
        lo, hi = 0, len(self._segments) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self._segments[mid][1] < t:
                lo = mid + 1
            else:
                hi = mid
        t0, t1, y0, y1, f0, f1 = self._segments[lo]
        return _hermite(min(max(t, t0), t1), t0, t1, y0, y1, f0, f1)


def _try_rhs(rhs, t, y):
    """Evaluate the rhs, converting structured failures into None."""
    try:
        f = np.asarray(rhs(t, y), dtype=float)
    except (SingularRhsError, FloatingPointError, ZeroDivisionError, OverflowError):
        return None
    if not np.all(np.isfinite(f)):
        return None
    return f


def _initial_step(rhs, t0, y0, f0, scale, t_end):
    d0 = math.sqrt(float(np.mean((y0 / scale) ** 2)))
    d1 = math.sqrt(float(np.mean((f0 / scale) ** 2)))
    h = 1e-6 if d1 < 1e-10 else 0.01 * d0 / d1
    if h <= 0 or not math.isfinite(h):
        h = 1e-6
    return min(h, abs(t_end - t0))


def rk45(rhs: Callable, y0, t_grid, config: IntegratorConfig | None = None,
         accept_check: Callable | None = None) -> RkResult:
    """Integrate ``y' = rhs(t, y)`` over an ascending grid of output times.

    Adaptive Dormand-Prince 4(5) with cubic-Hermite dense output.  A failing
    rhs evaluation (structured error or non-finite result) rejects the step;
    if the step size underflows the run stops with the last valid point.

    ``accept_check(t, y) -> bool`` is evaluated on every accepted step; on the
    first failure the boundary is refined by bisection on the dense output and
    the trajectory is truncated there with reason ``"validity"``.
    """
    cfg = config or IntegratorConfig()
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) < 1:
        raise DomainError("t_grid must be a non-empty 1-D array")
    if np.any(np.diff(t_grid) <= 0):
        raise DomainError("t_grid must be strictly increasing")

    t = float(t_grid[0])
    y = np.asarray(y0, dtype=float).copy()
    t_end = float(t_grid[-1])

    out_t = [t]
    out_y = [y.copy()]
    grid_pos = 1
    segments = []

    if accept_check is not None and not accept_check(t, y):
        raise BreakdownError("initial state fails the validity check", time=t, state=y)

    f = _try_rhs(rhs, t, y)
    if f is None:
        raise BreakdownError("rhs not evaluable at the initial state", time=t, state=y)

    if len(t_grid) == 1:
        return RkResult(out_t, out_y, True, None, None, None, segments)

    scale = cfg.atol + cfg.rtol * np.abs(y)
    h = min(_initial_step(rhs, t, y, f, scale, t_end), cfg.max_step)

    def finish_early(reason, t_stop, y_stop):
        return RkResult(out_t, out_y, False, t_stop, y_stop, reason, segments)

    for _ in range(_MAX_STEPS):
        if t >= t_end:
            return RkResult(out_t, out_y, True, None, None, None, segments)
        h = min(h, t_end - t, cfg.max_step)
        min_h = max(cfg.min_step, 16 * np.finfo(float).eps * max(abs(t), 1.0))
        if h < min_h:
            return finish_early("step-underflow", t, y.copy())

        k = [f]
        failed = False
        for i in range(1, 7):
            yi = y + h * sum(a * ki for a, ki in zip(_DP_A[i], k))
            fi = _try_rhs(rhs, t + _DP_C[i] * h, yi)
            if fi is None:
                failed = True
                break
            k.append(fi)
        if failed:
            h *= 0.5
            continue

        y_new = yi  # stage 7 argument equals the 5th-order solution (FSAL)
        f_new = k[6]
        err_vec = h * sum(e * ki for e, ki in zip(_DP_E, k))
        scale = cfg.atol + cfg.rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = math.sqrt(float(np.mean((err_vec / scale) ** 2)))

        if err <= 1.0:
            t_new = t + h
            if accept_check is not None and not accept_check(t_new, y_new):
                # bisect the validity boundary on the dense interpolant
                lo, hi = t, t_new
                y_lo = y.copy()
                while hi - lo > max(1e-13, 4 * np.finfo(float).eps * max(abs(hi), 1.0)):
                    mid = 0.5 * (lo + hi)
                    y_mid = _hermite(mid, t, t_new, y, y_new, f, f_new)
                    if accept_check(mid, y_mid):
                        lo, y_lo = mid, y_mid
                    else:
                        hi = mid
                segments.append((t, t_new, y.copy(), y_new.copy(), f, f_new))
                while grid_pos < len(t_grid) and t_grid[grid_pos] <= lo:
                    out_t.append(float(t_grid[grid_pos]))
                    out_y.append(_hermite(t_grid[grid_pos], t, t_new, y, y_new, f, f_new))
                    grid_pos += 1
                return finish_early("validity", lo, y_lo)

            segments.append((t, t_new, y.copy(), y_new.copy(), f, f_new))
            while grid_pos < len(t_grid) and t_grid[grid_pos] <= t_new + 1e-14 * max(abs(t_new), 1.0):
                tg = float(t_grid[grid_pos])
                out_t.append(tg)
                out_y.append(_hermite(min(tg, t_new), t, t_new, y, y_new, f, f_new))
                grid_pos += 1
            t, y, f = t_new, y_new, f_new
            factor = 0.9 * err ** -0.2 if err > 1e-12 else 5.0
            h *= min(5.0, max(0.2, factor))
        else:
            h *= min(1.0, max(0.2, 0.9 * err ** -0.2))

    raise BreakdownError("step budget exhausted", time=t, state=y.copy())


def _sinhc(z):
    """sinh(z)/z with a series near zero (works for complex z)."""
    if abs(z) < 1e-4:
        z2 = z * z
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0
    return cmath.sinh(z) / z


def mat_exp(a: np.ndarray) -> np.ndarray:
    """Matrix exponential; closed form for 2x2, scipy (scaling/squaring) above."""
    a = np.asarray(a)
    if a.shape == (2, 2):
        real_in = np.isrealobj(a)
        a = a.astype(complex)
        c = 0.5 * (a[0, 0] + a[1, 1])
        b = a - c * np.eye(2)
        theta = cmath.sqrt(b[0, 0] * b[0, 0] + b[0, 1] * b[1, 0])
        out = cmath.exp(c) * (cmath.cosh(theta) * np.eye(2) + _sinhc(theta) * b)
        if real_in:
            return out.real
        return out
    return scipy.linalg.expm(a)


def mat_log_principal(a: np.ndarray) -> np.ndarray:
    """Principal matrix logarithm; raises DomainError on spectrum touching
    the closed negative real axis (no principal branch there)."""
    a = np.asarray(a, dtype=complex)
    if a.shape == (2, 2):
        c = 0.5 * (a[0, 0] + a[1, 1])
        det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
        delta = cmath.sqrt(c * c - det)
        # the larger eigenvalue is well conditioned; recover the smaller from
        # the determinant instead of the cancellation-prone c -+ delta
        sign = 1.0 if abs(c + delta) >= abs(c - delta) else -1.0
        lam_big = c + sign * delta
        if lam_big == 0:
            raise DomainError("singular matrix has no logarithm")
        lam_small = det / lam_big
        for lam in (lam_big, lam_small):
            if lam == 0:
                raise DomainError("singular matrix has no logarithm")
            if lam.real <= 0 and abs(lam.imag) <= 1e-14 * abs(lam):
                raise DomainError("eigenvalue on the closed negative real axis; "
                                  "principal logarithm undefined")
        b = a - c * np.eye(2)
        if abs(delta) < 1e-12 * max(abs(c), 1e-300):
            # coincident eigenvalues: log(cI + B) = log(c) I + B/c (B nilpotent)
            return cmath.log(c) * np.eye(2) + b / c
        p = 0.5 * (cmath.log(lam_big) + cmath.log(lam_small))
        q = sign * (cmath.log(lam_big) - cmath.log(lam_small)) / (2 * delta)
        return p * np.eye(2) + q * b
    w = np.linalg.eigvals(a)
    if np.any((w.real <= 0) & (np.abs(w.imag) <= 1e-14 * np.abs(w))):
        raise DomainError("eigenvalue on the closed negative real axis; "
                          "principal logarithm undefined")
    return scipy.linalg.logm(a)


def legendre_p(n: int, x: float) -> float:
    """Legendre polynomial P_n(x) by the three-term recurrence."""
    if n < 0 or n != int(n):
        raise DomainError("legendre_p requires integer n >= 0")
    p_prev, p = 1.0, x
    if n == 0:
        return 1.0
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p


def log_gamma(x: float) -> float:
    """log(Gamma(x)) for x > 0 (Lanczos-class accuracy via the C library)."""
    if x <= 0:
        raise DomainError("log_gamma requires x > 0")
    return math.lgamma(x)


def sech(x: float) -> float:
    """Hyperbolic secant, exact zero in the underflow regime |x| > 710."""
    if abs(x) > 710.0:
        return 0.0
    return 2.0 / (math.exp(x) + math.exp(-x))


def quad_adaptive(fn: Callable, a: float, b: float, tol: float = 1e-11) -> float:
    """Adaptive quadrature of ``fn`` over [a, b]."""
    val, _ = scipy.integrate.quad(fn, a, b, epsabs=tol, epsrel=tol, limit=200)
    return val
