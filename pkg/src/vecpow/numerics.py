"""Quadrature and Monte-Carlo primitives.

Integrands may be vector valued: ``f(x)`` receives a 1-d array of nodes and
returns either an array of the same length or an array of shape
``(len(x), k)``.  Every component must meet the tolerance separately.
"""

from __future__ import annotations

import heapq
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from .errors import NonConvergence, NonFinite

__all__ = [
    "QuadSpec",
    "McSpec",
    "integrate_finite",
    "integrate_semi_infinite",
    "integrate_oscillatory",
    "sample_unit_sphere",
    "mc_sphere_expectation",
]

TRANSFORMS = ("exp_substitution", "rational_substitution")


@dataclass(frozen=True)
class QuadSpec:
    abs_tol: float = 1e-13
    rel_tol: float = 1e-11
    max_subdivisions: int = 4000
    semi_infinite_transform: str = "rational_substitution"

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise ValueError("tolerances must be nonnegative")
        if self.abs_tol == 0 and self.rel_tol == 0:
            raise ValueError("at least one of abs_tol, rel_tol must be positive")
        if int(self.max_subdivisions) < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.semi_infinite_transform not in TRANSFORMS:
            raise ValueError(f"unknown transform {self.semi_infinite_transform!r}")


@dataclass(frozen=True)
class McSpec:
    samples: int = 1_000_000
    seed: int = 42
    batches: int = 20

    def __post_init__(self):
        if self.samples < 1 or self.batches < 1:
            raise ValueError("samples and batches must be positive")
        if self.samples < self.batches:
            raise ValueError("samples must be >= batches")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


# 21-point Gauss-Kronrod rule (QUADPACK qk21), nonnegative half of the nodes.
_XGK = np.array([
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0,
])
_WGK = np.array([
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600362917820, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_WK = np.concatenate([_WGK[:-1], _WGK[::-1]])
_WG_FULL = np.zeros(21)
# Gauss nodes are the odd-indexed Kronrod nodes of the positive half.
for _i, _w in zip(range(1, 10, 2), _WG):
    _WG_FULL[_i] = _w
    _WG_FULL[20 - _i] = _w
_EPS = np.finfo(float).eps


def _eval(f, x):
    y = np.asarray(f(x), dtype=float)
    if y.shape[0] != x.shape[0]:
        raise ValueError("integrand must return one value (or row) per node")
    if not np.all(np.isfinite(y)):
        raise NonFinite("integrand returned a non-finite value")
    return y


def _gk21(f, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    y = _eval(f, c + h * _NODES)
    wk = _WK.reshape((-1,) + (1,) * (y.ndim - 1))
    wg = _WG_FULL.reshape(wk.shape)
    rk = h * np.sum(wk * y, axis=0)
    rg = h * np.sum(wg * y, axis=0)
    resabs = abs(h) * np.sum(wk * np.abs(y), axis=0)
    resasc = abs(h) * np.sum(wk * np.abs(y - rk / (2 * h)), axis=0)
    diff = np.abs(rk - rg)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = np.where(resasc > 0, resasc * np.minimum(1.0, (200.0 * diff / resasc) ** 1.5), diff)
    err = np.maximum(scaled, 50.0 * _EPS * resabs)
    return rk, err


def integrate_finite(f, a, b, spec: QuadSpec = QuadSpec(), points=None):
    """Adaptive Gauss-Kronrod quadrature of ``f`` over ``[a, b]``.

    ``points`` optionally seeds the initial partition with interior breakpoints.
    Returns ``(value, err_est)``; both are arrays when ``f`` is vector valued.
    """
    if not a < b:
        raise ValueError("require a < b")
    edges = [a]
    if points is not None:
        edges += sorted(p for p in points if a < p < b)
    edges.append(b)

    heap = []
    total = None
    total_err = None
    counter = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = _gk21(f, lo, hi)
        total = val if total is None else total + val
        total_err = err if total_err is None else total_err + err
        heap.append((0.0, counter, lo, hi, val, err))
        counter += 1

    def tol_of(tot):
        return np.maximum(np.maximum(spec.abs_tol, spec.rel_tol * np.abs(tot)), 1e-300)

    def key(err, tot):
        return -float(np.max(err / tol_of(tot)))

    heap = [(key(e[5], total), e[1], e[2], e[3], e[4], e[5]) for e in heap]
    heapq.heapify(heap)
    n_sub = len(heap)
    while np.any(total_err > tol_of(total)):
        if n_sub >= spec.max_subdivisions:
            raise NonConvergence(
                f"quadrature budget of {spec.max_subdivisions} subdivisions exhausted "
                f"(err {np.max(total_err):.3g})",
                estimate=total,
            )
        _, _, lo, hi, val, err = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi or hi - lo <= 8 * _EPS * max(abs(lo), abs(hi)):
            # Interval cannot be split further; accept its error as final.
            heapq.heappush(heap, (math.inf, counter, lo, hi, val, err))
            counter += 1
            if heap[0][0] == math.inf:
                raise NonConvergence("quadrature hit the floating-point resolution limit", estimate=total)
            continue
        v1, e1 = _gk21(f, lo, mid)
        v2, e2 = _gk21(f, mid, hi)
        total = total + (v1 + v2 - val)
        total_err = total_err + (e1 + e2 - err)
        for lo_, hi_, v, e in ((lo, mid, v1, e1), (mid, hi, v2, e2)):
            heapq.heappush(heap, (key(e, total), counter, lo_, hi_, v, e))
            counter += 1
        n_sub += 1

    # Re-sum from the stored pieces to drop the drift of incremental updates.
    vals = np.array([item[4] for item in heap])
    errs = np.array([item[5] for item in heap])
    value = np.sum(vals, axis=0)
    err = np.sum(errs, axis=0)
    if np.ndim(value) == 0:
        return float(value), float(err)
    return value, err


def integrate_semi_infinite(f, spec: QuadSpec = QuadSpec(), lower=0.0, scale=1.0, points=None):
    """Integrate ``f`` over ``(lower, inf)`` after mapping onto a finite interval.

    ``rational_substitution`` uses x = lower + scale·t/(1−t), t ∈ (0, 1);
    ``exp_substitution`` uses x = lower − scale·ln t, t ∈ (0, 1).
    ``points`` are breakpoints in the original variable.
    """
    if scale <= 0:
        raise ValueError("scale must be positive")
    if spec.semi_infinite_transform == "rational_substitution":
        def g(t):
            x = lower + scale * t / (1.0 - t)
            jac = scale / (1.0 - t) ** 2
            return _weighted(f(x), jac)

        tp = None if points is None else [(p - lower) / (scale + p - lower) for p in points if p > lower]
    else:
        def g(t):
            x = lower - scale * np.log(t)
            jac = scale / t
            return _weighted(f(x), jac)

        tp = None if points is None else [math.exp(-(p - lower) / scale) for p in points if p > lower]
    return integrate_finite(g, 0.0, 1.0, spec, points=tp)


def _weighted(y, jac):
    y = np.asarray(y, dtype=float)
    if y.ndim == 1:
        return y * jac
    return y * jac.reshape((-1,) + (1,) * (y.ndim - 1))


def integrate_oscillatory(f, omega, spec: QuadSpec = QuadSpec(), cutoff=0.0, lower=0.0):
    """Integral over (lower, inf) of an integrand oscillating like cos(omega·x).

    The integrand is multiplied by the smooth taper ½·erfc((x − U)/L) with
    L = 13/omega.  Because the taper is smooth on the oscillation scale its
    effect on an asymptotically oscillating tail is of order exp(−(ωL)²/4),
    about 1e−18.  ``cutoff`` is a lower bound for U: it should lie in the
    regime where the integrand has settled into its asymptotic oscillation.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    L = 13.0 / omega
    U = max(cutoff, lower + 40.0 / omega) + 6.5 * L
    b = U + 7.0 * L
    period = 2 * math.pi / omega
    n_panels = min(int((b - lower) / (4 * period)) + 1, spec.max_subdivisions // 4)
    points = list(np.linspace(lower, b, n_panels + 1)[1:-1])

    def g(x):
        y = np.asarray(f(x), dtype=float)
        w = 0.5 * erfc((x - U) / L)
        return _weighted(y, w)

    return integrate_finite(g, lower, b, spec, points=points)


def _batch_sizes(mc: McSpec):
    base, extra = divmod(mc.samples, mc.batches)
    return [base + (1 if i < extra else 0) for i in range(mc.batches)]


def _batch_generators(mc: McSpec):
    children = np.random.SeedSequence(mc.seed).spawn(mc.batches)
    return [np.random.Generator(np.random.Philox(c)) for c in children]


def _sphere_batch(M, rng, size):
    z = rng.standard_normal((size, M))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def sample_unit_sphere(M: int, mc: McSpec):
    """Yield batches of uniform unit vectors in R^M, shape ``(batch, M)``.

    Every batch owns an independent Philox stream spawned from ``mc.seed``,
    so the stream is identical however the batches are scheduled.
    """
    if M < 3:
        raise ValueError("M must be >= 3")
    for rng, size in zip(_batch_generators(mc), _batch_sizes(mc)):
        yield _sphere_batch(M, rng, size)


def mc_sphere_expectation(g, M: int, mc: McSpec = McSpec(), workers: int = 1):
    """Monte-Carlo estimate of the normalized sphere average of ``g``.

    ``g`` maps an array of unit vectors of shape ``(B, M)`` to values of shape
    ``(B,)`` or ``(B, k)``.  Returns ``(mean, stderr)`` with the pooled sample
    standard deviation divided by √samples.  Batch statistics are merged in
    batch order, so the result does not depend on ``workers``.
    """
    if M < 3:
        raise ValueError("M must be >= 3")
    gens = _batch_generators(mc)
    sizes = _batch_sizes(mc)

    def run(i):
        zeta = _sphere_batch(M, gens[i], sizes[i])
        y = np.asarray(g(zeta), dtype=float)
        if not np.all(np.isfinite(y)):
            raise NonFinite("integrand returned a non-finite value")
        m = y.mean(axis=0)
        return y.shape[0], m, np.sum((y - m) ** 2, axis=0)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            stats = list(ex.map(run, range(mc.batches)))
    else:
        stats = [run(i) for i in range(mc.batches)]

    n, mean, m2 = stats[0]
    for nb, mb, m2b in stats[1:]:
        tot = n + nb
        delta = mb - mean
        mean = mean + delta * (nb / tot)
        m2 = m2 + m2b + delta**2 * (n * nb / tot)
        n = tot
    var = m2 / (n - 1) if n > 1 else np.zeros_like(m2)
    stderr = np.sqrt(var / n)
    if np.ndim(mean) == 0:
        return float(mean), float(stderr)
    return mean, stderr
