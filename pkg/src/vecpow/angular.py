"""Angular coefficient V(l_1..l_N; ζ_1..ζ_N) in Gegenbauer-kernel form.

    V = ∫ dΩ_ζ / S_M  Π_i K_{l_i}(ζ_i·ζ),   K_l(c) = (l+M/2−1)/(M/2−1) C_l^{M/2−1}(c).

Exact facts used before any sampling:

* V = 0 when Σ l_i is odd (the integrand is odd under ζ → −ζ).
* V = 0 when some l_i exceeds the sum of the others: the product of the other
  kernels is a polynomial in ζ of lower degree, orthogonal to the degree-l_i
  harmonic.
* K_0 = 1, so axes with l_i = 0 drop out.  With one active axis V = δ_{l,0};
  with two active axes V = δ_{l_a,l_b} K_{l_a}(ζ_a·ζ_b) by the reproducing
  property of the zonal kernel.

Only configurations with three or more active axes are estimated by
Monte Carlo.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .numerics import McSpec, mc_sphere_expectation
from .special import gegenbauer_all

__all__ = [
    "AngularConfig",
    "kernel",
    "kernel_table",
    "v_pair_closed",
    "v_exact",
    "v_coefficient_mc",
    "index_reduction_check",
    "weighted_v_sum",
]


def kernel_table(l_max: int, M: int, c):
    """K_l(c) for l = 0..l_max, shape ``(l_max + 1,) + c.shape``."""
    if M < 3:
        raise DomainError("the Gegenbauer kernel needs M >= 3")
    alpha = M / 2 - 1
    c = np.asarray(c, dtype=float)
    g = gegenbauer_all(l_max, alpha, c)
    w = (np.arange(l_max + 1) + alpha) / alpha
    return w.reshape((-1,) + (1,) * c.ndim) * g


def kernel(l: int, M: int, c):
    """Normalized zonal kernel (l+M/2−1)/(M/2−1)·C_l^{M/2−1}(c)."""
    val = kernel_table(l, M, c)[l]
    return float(val) if np.ndim(val) == 0 else val


def v_pair_closed(l1: int, l2: int, M: int, c: float) -> float:
    """V for two axes: δ_{l1,l2} K_{l1}(c)."""
    if M < 3:
        raise DomainError("the Gegenbauer kernel needs M >= 3")
    return kernel(l1, M, c) if l1 == l2 else 0.0


@dataclass(frozen=True)
class AngularConfig:
    l_vec: tuple
    directions: tuple
    M: int

    def __post_init__(self):
        l_vec = tuple(int(l) for l in self.l_vec)
        dirs = tuple(tuple(float(x) for x in d) for d in self.directions)
        object.__setattr__(self, "l_vec", l_vec)
        object.__setattr__(self, "directions", dirs)
        if self.M < 3:
            raise DomainError("M must be >= 3")
        if len(l_vec) != len(dirs) or len(l_vec) < 1:
            raise DomainError("l_vec and directions must have equal positive length")
        if any(l < 0 for l in l_vec):
            raise DomainError("l entries must be nonnegative")
        for d in dirs:
            if len(d) != self.M:
                raise DomainError("direction has wrong dimension")
            if abs(np.linalg.norm(d) - 1.0) > 1e-12:
                raise DomainError("directions must be unit vectors")

    @property
    def even(self) -> bool:
        return sum(self.l_vec) % 2 == 0

    def reduced(self) -> "AngularConfig":
        """The configuration with all l = 0 axes removed (at least one axis kept)."""
        keep = [i for i, l in enumerate(self.l_vec) if l > 0] or [0]
        return AngularConfig(
            tuple(self.l_vec[i] for i in keep), tuple(self.directions[i] for i in keep), self.M
        )


def _polygon_zero(l_vec) -> bool:
    total = sum(l_vec)
    return any(2 * l > total for l in l_vec)


def v_exact(l_vec, directions, M: int):
    """V when it is known without sampling, else ``None``."""
    l_vec = tuple(l_vec)
    if sum(l_vec) % 2 or _polygon_zero(l_vec):
        return 0.0
    active = [i for i, l in enumerate(l_vec) if l > 0]
    if not active:
        return 1.0
    if len(active) == 2:
        a, b = active
        c = float(np.clip(np.dot(directions[a], directions[b]), -1.0, 1.0))
        return v_pair_closed(l_vec[a], l_vec[b], M, c)
    return None


def _product_integrand(l_vecs, dirs, M, coefs):
    """Integrand ζ ↦ Σ_t coefs[t] Π_i K_{l_{t,i}}(ζ_i·ζ) with vector-valued coefficients."""
    dirs = np.asarray(dirs, dtype=float)
    l_max = max(max(lv) for lv in l_vecs)
    coefs = np.asarray(coefs, dtype=float)

    def g(zeta):
        cos = np.clip(zeta @ dirs.T, -1.0, 1.0)  # (B, N)
        tabs = [kernel_table(l_max, M, cos[:, i]) for i in range(dirs.shape[0])]
        out = np.zeros((zeta.shape[0], coefs.shape[1]))
        for lv, cf in zip(l_vecs, coefs):
            prod = np.ones(zeta.shape[0])
            for i, l in enumerate(lv):
                if l:
                    prod = prod * tabs[i][l]
            out += prod[:, None] * cf[None, :]
        return out

    return g


_cache: dict = {}
_cache_lock = threading.Lock()


def v_coefficient_mc(cfg: AngularConfig, mc: McSpec = McSpec(), workers: int = 1):
    """Monte-Carlo estimate of V with its standard error.

    Odd Σl returns an exact (0, 0) without sampling.  Estimates are memoized
    per (configuration, McSpec).
    """
    if not cfg.even:
        return 0.0, 0.0
    if not any(cfg.l_vec):
        return 1.0, 0.0
    key = (cfg, mc)
    with _cache_lock:
        if key in _cache:
            return _cache[key]
    g = _product_integrand([cfg.l_vec], cfg.directions, cfg.M, [[1.0]])
    mean, err = mc_sphere_expectation(g, cfg.M, mc, workers)
    res = (float(mean[0]), float(err[0]))
    with _cache_lock:
        _cache[key] = res
    return res


def index_reduction_check(cfg: AngularConfig, mc: McSpec = McSpec()) -> bool:
    """Compare V with its l = 0 axes removed; independent streams, 3σ agreement."""
    if all(cfg.l_vec):
        raise DomainError("index reduction needs at least one zero entry")
    full, s1 = v_coefficient_mc(cfg, mc)
    other = McSpec(mc.samples, (mc.seed + 1) % 2**64, mc.batches)
    red, s2 = v_coefficient_mc(cfg.reduced(), other)
    comb = float(np.hypot(s1, s2))
    return abs(full - red) <= 3.0 * comb if comb > 0 else full == red


def weighted_v_sum(terms, directions, M: int, mc: McSpec = McSpec(), workers: int = 1):
    """Σ_t coef_t · V(l_t) for a batch of terms sharing the same directions.

    ``terms`` maps l-vectors to coefficient arrays of a common length k.
    Exactly known V values are applied directly; the rest are folded into a
    single Monte-Carlo integrand so one sample stream serves every term.
    Returns ``(exact_part, mc_part, mc_stderr)`` as length-k arrays.
    """
    items = list(terms.items())
    if not items:
        raise DomainError("no terms given")
    k = len(np.atleast_1d(items[0][1]))
    exact = np.zeros(k)
    sampled_l, sampled_c = [], []
    for lv, cf in items:
        cf = np.atleast_1d(np.asarray(cf, dtype=float))
        v = v_exact(lv, directions, M)
        if v is None:
            sampled_l.append(tuple(lv))
            sampled_c.append(cf)
        elif v != 0.0:
            exact += v * cf
    if not sampled_l:
        return exact, np.zeros(k), np.zeros(k)
    g = _product_integrand(sampled_l, directions, M, sampled_c)
    mean, err = mc_sphere_expectation(g, M, mc, workers)
    return exact, np.atleast_1d(mean), np.atleast_1d(err)
