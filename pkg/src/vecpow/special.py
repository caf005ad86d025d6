"""Real special functions: Gamma, Pochhammer, Gegenbauer, hypergeometric
series, Bessel J and Macdonald K, and the Legendre-Q ratio series.

Functions taking ``z`` or ``x`` accept numpy arrays and broadcast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceDomain,
    DomainError,
    LowerParamPole,
    NonConvergence,
    PoleAtNonpositiveInteger,
)
from .numerics import QuadSpec, integrate_finite

__all__ = [
    "HypSeriesParams",
    "ln_gamma",
    "gamma_ratio",
    "pochhammer",
    "gegenbauer",
    "gegenbauer_all",
    "hyp_terminating",
    "hyp_series",
    "bessel_j",
    "bessel_k",
    "legendre_q_ratio",
]


def _is_nonpositive_int(x) -> bool:
    return float(x) <= 0 and float(x) == math.floor(x)


def ln_gamma(x: float):
    """Return ``(ln|Γ(x)|, sign Γ(x))``."""
    x = float(x)
    if _is_nonpositive_int(x):
        raise PoleAtNonpositiveInteger(f"Gamma has a pole at {x}")
    sign = 1
    if x < 0 and math.floor(x) % 2 == 1:
        sign = -1
    return math.lgamma(x), sign


def gamma_ratio(num, den):
    """Π Γ(num_i) / Π Γ(den_j), evaluated in log space with the sign tracked."""
    log, sign = 0.0, 1
    for a in num:
        v, s = ln_gamma(a)
        log += v
        sign *= s
    for b in den:
        v, s = ln_gamma(b)
        log -= v
        sign *= s
    return sign * math.exp(log)


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k as an exact left-to-right product."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    out = 1.0
    for j in range(k):
        out *= a + j
        if out == 0.0:
            return 0.0
    return out


def gegenbauer_all(n_max: int, alpha: float, z):
    """Rows C_0^α(z), ..., C_{n_max}^α(z) from the three-term recurrence."""
    if alpha <= 0:
        raise DomainError("gegenbauer requires alpha > 0")
    z = np.asarray(z, dtype=float)
    out = np.empty((n_max + 1,) + z.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2.0 * alpha * z
    for k in range(1, n_max):
        out[k + 1] = (2.0 * (k + alpha) * z * out[k] - (k + 2.0 * alpha - 1.0) * out[k - 1]) / (k + 1)
    return out


def gegenbauer(n: int, alpha: float, z):
    """C_n^α(z)."""
    val = gegenbauer_all(n, alpha, z)[n]
    return float(val) if np.ndim(val) == 0 else val


@dataclass(frozen=True)
class HypSeriesParams:
    upper: tuple = ()
    lower: tuple = ()
    tol: float = 1e-16
    max_terms: int = 10_000

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(float(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in self.lower))
        if self.tol <= 0 or self.max_terms < 1:
            raise ValueError("tol must be positive and max_terms >= 1")
        stop = _termination_index(self.upper)
        for b in self.lower:
            if _is_nonpositive_int(b) and (stop is None or -b < stop):
                raise LowerParamPole(f"lower parameter {b} hits a pole at a live term")


def _termination_index(upper):
    """Index of the first identically vanishing term, or None for an infinite series."""
    stops = [int(-a) + 1 for a in upper if _is_nonpositive_int(a)]
    return min(stops) if stops else None


def _series_terms(upper, lower, z, count):
    """Yield the first ``count`` terms of pFq(upper; lower; z)."""
    term = np.ones_like(np.asarray(z, dtype=float))
    for k in range(count):
        yield term
        num = 1.0
        for a in upper:
            num *= a + k
        den = float(k + 1)
        for b in lower:
            den *= b + k
        if den == 0.0:
            if num == 0.0:
                term = term * 0.0
                continue
            raise LowerParamPole(f"lower parameter pole at term {k + 1}")
        term = term * (num / den) * z


def hyp_terminating(n: int, params: HypSeriesParams, z):
    """Finite sum of the n+1 terms of pFq with first upper parameter −n."""
    if not params.upper or params.upper[0] != -n:
        raise DomainError("first upper parameter must equal -n")
    z = np.asarray(z, dtype=float)
    total = np.zeros_like(z)
    for term in _series_terms(params.upper, params.lower, z, n + 1):
        total = total + term
    return float(total) if total.ndim == 0 else total


def hyp_series(params: HypSeriesParams, z: float):
    """Sum pFq(upper; lower; z) and return ``(value, terms_used)``."""
    p, q = len(params.upper), len(params.lower)
    stop = _termination_index(params.upper)
    z = float(z)
    if stop is None:
        if p > q + 1:
            raise DomainError("series with p > q+1 diverges")
        if p == q + 1 and abs(z) >= 1:
            raise DomainError("p = q+1 requires |z| < 1")
    count = stop if stop is not None else params.max_terms
    total = 0.0
    small = 0
    used = 0
    for term in _series_terms(params.upper, params.lower, z, count):
        term = float(term)
        total += term
        used += 1
        if stop is None:
            small = small + 1 if abs(term) <= params.tol * abs(total) else 0
            if small >= 3:
                return total, used
    if stop is None:
        raise NonConvergence(f"pFq not converged after {used} terms", estimate=total)
    return total, used


def _j_series(order, x):
    half = x / 2.0
    lg = math.lgamma(order + 1.0)
    with np.errstate(divide="ignore"):
        term = np.power(half, order) * math.exp(-lg)
    total = term.copy()
    q = half * half
    for k in range(200):
        term = -term * q / ((k + 1.0) * (k + 1.0 + order))
        total += term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)) or np.all(term == 0):
            break
    return total


def _j_asymptotic(order, x):
    mu = 4.0 * order * order
    p = np.ones_like(x)
    q = np.zeros_like(x)
    a = np.ones_like(x)
    live = np.ones(x.shape, dtype=bool)
    for k in range(1, 60):
        new = a * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        live &= np.abs(new) < np.abs(a)
        a = np.where(live, new, 0.0)
        sgn = (-1) ** (k // 2)
        if k % 2:
            q = q + sgn * a
        else:
            p = p + sgn * a
        if not np.any(live & (np.abs(a) > 1e-17)):
            break
    chi = x - (0.5 * order + 0.25) * math.pi
    return np.sqrt(2.0 / (math.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def _j_large(order, x):
    """J for x > 12: low-order asymptotics plus a stable recurrence."""
    base = order - math.floor(order)
    steps = int(round(order - base))
    j0 = _j_asymptotic(base, x)
    j1 = _j_asymptotic(base + 1.0, x)
    if steps == 0:
        return j0
    out = np.empty_like(x)
    up = order <= x
    if np.any(up):
        xs = x[up]
        a, b = j0[up], j1[up]
        for k in range(1, steps):
            a, b = b, 2.0 * (base + k) / xs * b - a
        out[up] = b
    down = ~up
    if np.any(down):
        xs = x[down]
        top = steps + 60 + int(np.max(xs))
        hi = np.zeros_like(xs)
        cur = np.full_like(xs, 1e-30)
        at_order = np.zeros_like(xs)
        for k in range(top, 0, -1):
            # cur holds the order base+k, hi the order base+k+1
            if k == steps:
                at_order = cur.copy()
            nxt = 2.0 * (base + k) / xs * cur - hi
            hi, cur = cur, nxt
            big = np.abs(cur) > 1e250
            if np.any(big):
                s = np.where(big, 1e-250, 1.0)
                cur, hi, at_order = cur * s, hi * s, at_order * s
        # cur ~ order base, hi ~ order base+1: fit one scale to both anchors
        scale = (cur * j0[down] + hi * j1[down]) / (cur * cur + hi * hi)
        out[down] = at_order * scale
    return out


def bessel_j(order: float, x):
    """Bessel function J_order(x) for order ≥ 0 and x ≥ 0.

    The ascending series is used for x ≤ 12.  Beyond, J at the two lowest
    orders congruent to ``order`` comes from the Hankel asymptotic expansion
    and is carried to ``order`` by upward recurrence when order ≤ x, or by
    normalized downward recurrence otherwise.
    """
    if order < 0:
        raise DomainError("bessel_j requires order >= 0")
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0):
        raise DomainError("bessel_j requires x >= 0")
    flat = np.atleast_1d(xa).ravel()
    out = np.empty_like(flat)
    small = flat <= 12.0
    if np.any(small):
        out[small] = _j_series(order, flat[small])
    if np.any(~small):
        out[~small] = _j_large(order, flat[~small])
    out = out.reshape(xa.shape)
    return float(out) if out.ndim == 0 else out


_K_QUAD = QuadSpec(abs_tol=0.0, rel_tol=1e-13, max_subdivisions=2000)


def bessel_k(order: float, x, spec: QuadSpec = _K_QUAD):
    """Macdonald function K_order(x) for x > 0.

    Starting from 2(x/2)^μ K_μ(x) = ∫₀^∞ exp(−t − x²/(4t)) t^{μ−1} dt, the
    substitution t = (x/2)e^τ gives K_μ(x) = ∫₀^∞ exp(−x cosh τ) cosh(μτ) dτ,
    which is smooth and decays doubly exponentially.  The τ range is cut where
    the integrand has fallen by e^{-60} relative to its value at τ = 0.
    """
    mu = abs(float(order))
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0):
        raise DomainError("bessel_k requires x > 0")
    flat = np.atleast_1d(xa).ravel()
    # x(cosh τ − 1) − μτ ≥ 60 defines the cut-off τ_max per component.
    tmax = np.arccosh(1.0 + 60.0 / flat)
    for _ in range(50):
        tmax = np.arccosh(1.0 + (60.0 + mu * tmax) / flat)

    def f(s):
        tau = np.outer(s, tmax)
        return np.exp(-flat * (np.cosh(tau) - 1.0)) * np.cosh(mu * tau) * tmax

    val, _ = integrate_finite(f, 0.0, 1.0, spec)
    out = (np.atleast_1d(val) * np.exp(-flat)).reshape(xa.shape)
    return float(out) if out.ndim == 0 else out


def legendre_q_ratio(v: float, mu: float, z: float, tol: float = 1e-16, max_terms: int = 1_000_000):
    """Real ratio e^{−iπμ} Q_v^μ(z) / (z²−1)^{μ/2} for z > 1.

    Sums √π 2^μ Σ_n Γ(v+μ+1+2n) / (Γ(v+n+3/2) n!) (2z)^{−(v+μ+1+2n)}.
    Term ratios are eventually monotone with limit 1/z², so the tail after a
    term t is bounded by t·ρ/(1−ρ) with ρ the larger of the next ratio and 1/z².
    """
    if z <= 1:
        raise ConvergenceDomain("legendre_q_ratio requires z > 1")
    a = v + mu + 1.0
    if _is_nonpositive_int(a):
        raise DomainError("v + mu + 1 must not be a nonpositive integer")
    b = v + 1.5
    if _is_nonpositive_int(b):
        raise DomainError("v + 3/2 must not be a nonpositive integer")
    lg_a, s_a = ln_gamma(a)
    lg_b, s_b = ln_gamma(b)
    log_t = 0.5 * math.log(math.pi) + mu * math.log(2.0) + lg_a - lg_b - a * math.log(2.0 * z)
    term = s_a * s_b * math.exp(log_t)
    inv = 1.0 / (4.0 * z * z)
    total, comp = term, 0.0
    for n in range(max_terms):
        rho = (a + 2 * n) * (a + 2 * n + 1) / ((b + n) * (n + 1.0)) * inv
        term = term * rho
        # Neumaier compensated summation
        t = total + term
        comp += (total - t) + term if abs(total) >= abs(term) else (term - t) + total
        total = t
        rho_next = (a + 2 * n + 2) * (a + 2 * n + 3) / ((b + n + 1) * (n + 2.0)) * inv
        bound = max(rho_next, 1.0 / (z * z))
        if 0 <= rho_next and bound < 1 and n >= 2:
            tail = abs(term) * bound / (1.0 - bound)
            if tail <= tol * abs(total + comp):
                return total + comp
    raise NonConvergence("legendre_q_ratio series did not converge", estimate=total + comp)
