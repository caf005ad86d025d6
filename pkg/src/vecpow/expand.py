"""Series evaluators for |r_1 + ... + r_N|^(-ν).

* ``direct_eval``: the kernel itself, used as the oracle.
* ``theorem1_series``: the rational lattice series in the ratios r_p/r_N,
  valid for any real ν when Σ_{p<N} r_p < r_N.  The vector of largest
  norm is moved to the last slot.
* ``theorem1_radial`` / ``lauricella_fc``: the same radial factor for one
  l-vector, resummed over μ as a Lauricella F_C function.
* ``theorem2_pair`` / ``theorem2_series``: the orthogonal-basis series in
  η_{n,l}(r) and ξ_{n,l}(u), valid for 0 < ν < M.

Angle convention: the expansions are of the sum r_1 + r_2 + ..., so for
N = 2 and M = 3, ν = 1 the l-th shell is r_<^l / r_>^{l+1} P_l(−ζ_1·ζ_2).
The minus sign appears because |r_1 + r_2| is the distance between r_1
and −r_2.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .angular import kernel_table, weighted_v_sum
from .errors import ConvergenceDomain, DomainError, NonConvergence, SingularPoint
from .numerics import McSpec, QuadSpec, integrate_semi_infinite
from .radial import eta_table, sphere_area, xi_table

__all__ = [
    "MVector",
    "ExpansionParams",
    "Truncation",
    "SeriesEval",
    "direct_eval",
    "theorem1_series",
    "lauricella_fc",
    "theorem1_radial",
    "theorem2_pair",
    "theorem2_series",
    "a_coefficient",
]

# Beyond this n the finite Macdonald sum for ξ loses more than ~1e-8 relative accuracy.
XI_KSUM_RELIABLE_N = 10


@dataclass(frozen=True)
class MVector:
    components: tuple

    def __post_init__(self):
        comps = tuple(float(x) for x in np.asarray(self.components, dtype=float).ravel())
        if len(comps) < 3:
            raise DomainError("vectors need M >= 3 components")
        if not all(math.isfinite(x) for x in comps):
            raise DomainError("vector components must be finite")
        object.__setattr__(self, "components", comps)

    @property
    def M(self) -> int:
        return len(self.components)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.components)

    @cached_property
    def norm(self) -> float:
        return math.hypot(*self.components)

    @cached_property
    def direction(self) -> np.ndarray:
        if self.norm == 0:
            raise DomainError("the zero vector has no direction")
        return self.array / self.norm


def _as_vectors(vectors):
    out = [v if isinstance(v, MVector) else MVector(v) for v in vectors]
    if not out:
        raise DomainError("need at least one vector")
    if len({v.M for v in out}) != 1:
        raise DomainError("all vectors must share the same dimension")
    return out


@dataclass(frozen=True)
class ExpansionParams:
    M: int
    N: int
    nu: float

    def __post_init__(self):
        if self.M < 3:
            raise DomainError("M must be >= 3")
        if self.N < 1:
            raise DomainError("N must be >= 1")
        if not math.isfinite(self.nu):
            raise DomainError("nu must be finite")

    @property
    def theorem1_valid(self) -> bool:
        return True

    @property
    def theorem2_valid(self) -> bool:
        return 0 < self.nu < self.M

    @property
    def polynomial_degree(self):
        """q when ν = −2q for an integer q ≥ 0, else None."""
        q = -self.nu / 2
        return int(q) if q >= 0 and q == math.floor(q) else None


@dataclass(frozen=True)
class Truncation:
    l_max: int = 12
    mu_max: int = 12
    n_max: int = 20

    def __post_init__(self):
        if min(self.l_max, self.mu_max, self.n_max) < 0:
            raise DomainError("cutoffs must be nonnegative")

    def lattice_size(self, N: int, series: str = "theorem1") -> int:
        """Number of lattice points before parity and polygon pruning."""
        if series == "theorem1":
            return (self.l_max + 1) ** N * (self.mu_max + 1) ** (N - 1)
        return (self.l_max + 1) ** N * (self.n_max + 1) ** N


@dataclass(frozen=True)
class SeriesEval:
    value: float
    terms_used: int
    tail_estimate: float
    mc_stderr: float | None = None
    shells: tuple = field(default=(), compare=False)


def direct_eval(vectors, nu: float) -> float:
    """|r_1 + ... + r_N|^(−ν)."""
    vs = _as_vectors(vectors)
    total = np.sum([v.array for v in vs], axis=0)
    norm = math.hypot(*total)
    if norm == 0:
        if nu > 0:
            raise SingularPoint("the vectors sum to zero")
        return 1.0 if nu == 0 else 0.0
    return norm ** (-nu)


def _log_pochhammer_table(a: float, k_max: int):
    """(log|(a)_k|, sign) for k = 0..k_max, sign 0 marking an exact zero."""
    logs = np.zeros(k_max + 1)
    signs = np.ones(k_max + 1)
    for k in range(1, k_max + 1):
        f = a + k - 1
        if f == 0 or signs[k - 1] == 0:
            logs[k], signs[k] = -np.inf, 0.0
        else:
            logs[k] = logs[k - 1] + math.log(abs(f))
            signs[k] = signs[k - 1] * (1.0 if f > 0 else -1.0)
    return logs, signs


def _order_vectors(vs):
    """Move the vector of largest norm (lowest index on ties) to the end."""
    norms = [v.norm for v in vs]
    top = int(np.argmax(norms))
    order = [i for i in range(len(vs)) if i != top] + [top]
    return [vs[i] for i in order]


def _unit(v: MVector, M: int):
    if v.norm == 0:
        e = np.zeros(M)
        e[0] = 1.0
        return e
    return v.direction


def _shell_eval(contribs, shells_used, exact, mc_mean, mc_err, scale, tail_shell, n_terms, has_mc):
    shell_vals = exact[:-1] + mc_mean[:-1]
    total = scale * (exact[-1] + mc_mean[-1])
    shells = tuple((int(s), float(scale * shell_vals[i])) for i, s in enumerate(shells_used))
    lookup = dict(shells)
    tail = abs(lookup.get(tail_shell, shells[-1][1] if shells else 0.0))
    err = float(abs(scale) * mc_err[-1]) if has_mc else None
    return SeriesEval(float(total), n_terms, float(tail), err, shells)


def theorem1_series(vectors, params: ExpansionParams, trunc: Truncation = Truncation(),
                    mc: McSpec = McSpec(), workers: int = 1) -> SeriesEval:
    """Rational lattice series for |Σ r_p|^(−ν).

    value = r_N^{−ν} Σ_{l, μ} (−1)^{l_N} V(l) (ν/2)_{|μ|+l} ((ν−M+2)/2)_{|μ|+l−l_N}
            / Π_p[(M/2)_{l_p+μ_p} μ_p!] · Π_p (r_p/r_N)^{l_p+2μ_p},

    with l = ½Σ_p l_p over all N axes and μ over the first N−1 axes.  For
    ν = −2q the lattice is cut at l_N + Σ(l_p+2μ_p) ≤ 2q and the sum is exact.
    Shells are indexed by l; ``tail_estimate`` is the magnitude of shell l_max.
    """
    vs = _as_vectors(vectors)
    N, M, nu = len(vs), vs[0].M, float(params.nu)
    if params.M != M or params.N != N:
        raise DomainError("params do not match the vectors")
    vs = _order_vectors(vs)
    rN = vs[-1].norm
    if rN == 0:
        return SeriesEval(direct_eval(vs, nu), 1, 0.0)
    q = params.polynomial_degree
    radii = np.array([v.norm for v in vs[:-1]])
    if q is None and radii.sum() >= rN:
        raise ConvergenceDomain("need Σ_{p<N} r_p < r_N (largest norm)")
    x = radii / rN
    if q is not None:
        l_max, mu_max = 2 * q, q
    else:
        l_max, mu_max = trunc.l_max, trunc.mu_max

    k_top = (N * l_max) // 2 + (N - 1) * mu_max + 1
    lp1, sp1 = _log_pochhammer_table(nu / 2, k_top)
    lp2, sp2 = _log_pochhammer_table((nu - M + 2) / 2, k_top)
    lpm, _ = _log_pochhammer_table(M / 2, l_max + mu_max + 1)
    lfact = np.array([math.lgamma(k + 1) for k in range(mu_max + 1)])
    with np.errstate(divide="ignore"):
        logx = np.log(x) if N > 1 else np.zeros(0)

    mu_grid = np.array(list(itertools.product(range(mu_max + 1), repeat=N - 1)), dtype=int).reshape(-1, N - 1)
    mu_sum = mu_grid.sum(axis=1)

    directions = [_unit(v, M) for v in vs]
    coeffs = {}
    shell_of = {}
    n_terms = 0
    for l_vec in itertools.product(range(l_max + 1), repeat=N):
        total_l = sum(l_vec)
        if total_l % 2 or any(2 * li > total_l for li in l_vec):
            continue  # V vanishes identically
        l = total_l // 2
        lN = l_vec[-1]
        lp = np.array(l_vec[:-1], dtype=int)
        mask = np.ones(len(mu_grid), dtype=bool)
        if q is not None:
            mask = lN + (lp + 2 * mu_grid).sum(axis=1) <= 2 * q
        if not mask.any():
            continue
        mus = mu_grid[mask]
        ks = mu_sum[mask]
        exps = lp + 2 * mus  # powers of x_p
        # zero radii contribute only when their exponent is zero
        with np.errstate(invalid="ignore"):
            logpow = np.where(exps > 0, exps * logx, 0.0).sum(axis=1)
        log_den = (lpm[lp + mus] + lfact[mus]).sum(axis=1)
        sign = sp1[ks + l] * sp2[ks + l - lN] * (-1.0) ** lN
        logmag = lp1[ks + l] + lp2[ks + l - lN] + logpow - log_den
        with np.errstate(invalid="ignore", over="ignore"):
            terms = np.where(sign != 0, sign * np.exp(logmag), 0.0)
        n_terms += int(mask.sum())
        coeffs[l_vec] = math.fsum(terms.tolist())
        shell_of[l_vec] = l

    shells_used = sorted(set(shell_of.values()))
    pos = {s: i for i, s in enumerate(shells_used)}
    k = len(shells_used) + 1
    terms = {}
    for l_vec, cf in coeffs.items():
        vec = np.zeros(k)
        vec[pos[shell_of[l_vec]]] = cf
        vec[-1] = cf
        terms[l_vec] = vec
    exact, mc_mean, mc_err = weighted_v_sum(terms, directions, M, mc, workers)
    has_mc = bool(np.any(mc_err > 0)) or any(sum(1 for li in lv if li) >= 3 for lv in terms)
    tail_shell = min(l_max, shells_used[-1])
    return _shell_eval(coeffs, shells_used, exact, mc_mean, mc_err, rN ** (-nu), tail_shell, n_terms, has_mc)


def lauricella_fc(a: float, b: float, c_vec, x_vec, tol: float = 1e-16, max_terms: int = 2000,
                  per_axis_max: int | None = None) -> float:
    """Lauricella F_C(a, b; c_1..c_n; x_1..x_n) = Σ_m (a)_{|m|}(b)_{|m|} Π x_i^{m_i}/((c_i)_{m_i} m_i!).

    Summed by total degree |m|; the degree-k shell of Π x^m/((c)_m m!) is an
    n-fold convolution of one-variable sequences, formed in log space.
    ``per_axis_max`` caps every m_i and sums the finite box exactly.
    """
    c_vec = [float(c) for c in c_vec]
    x_vec = [float(x) for x in x_vec]
    if len(c_vec) != len(x_vec) or not c_vec:
        raise DomainError("c_vec and x_vec must have equal positive length")
    if any(x < 0 for x in x_vec):
        raise DomainError("x_vec entries must be nonnegative")
    if any(c <= 0 and c == math.floor(c) for c in c_vec):
        raise DomainError("lower parameters must not be nonpositive integers")
    terminating = any(p <= 0 and p == math.floor(p) for p in (a, b))
    if per_axis_max is None and not terminating and sum(math.sqrt(x) for x in x_vec) >= 1:
        raise ConvergenceDomain("F_C converges only for Σ√x_i < 1")
    m_cap = per_axis_max if per_axis_max is not None else max_terms
    K = min(max_terms, len(c_vec) * m_cap) if per_axis_max is not None else max_terms

    def one_axis(c, x):
        g = np.full(K + 1, -np.inf)
        g[0] = 0.0
        if x > 0:
            m = np.arange(1, min(m_cap, K) + 1)
            lc, _ = _log_pochhammer_table(c, int(m[-1]) if len(m) else 0)
            g[1:len(m) + 1] = m * math.log(x) - lc[1:] - np.cumsum(np.log(m))
        return g

    h = one_axis(c_vec[0], x_vec[0])
    for c, x in zip(c_vec[1:], x_vec[1:]):
        g = one_axis(c, x)
        new = np.full(K + 1, -np.inf)
        for kk in range(K + 1):
            new[kk] = np.logaddexp.reduce(h[: kk + 1] + g[kk::-1])
        h = new
    la, sa = _log_pochhammer_table(a, K)
    lb, sb = _log_pochhammer_table(b, K)
    total, small = 0.0, 0
    terms = []
    for kk in range(K + 1):
        s = sa[kk] * sb[kk]
        t = 0.0 if s == 0 or h[kk] == -np.inf else s * math.exp(la[kk] + lb[kk] + h[kk])
        terms.append(t)
        if per_axis_max is None and not terminating:
            total = math.fsum(terms) if kk % 16 == 15 else total + t
            small = small + 1 if abs(t) <= tol * abs(total) else 0
            if small >= 3:
                return math.fsum(terms)
        if terminating and s == 0:
            break
    if per_axis_max is None and not terminating:
        raise NonConvergence("F_C series did not converge", estimate=math.fsum(terms))
    return math.fsum(terms)


def theorem1_radial(l_vec, r_vec, params: ExpansionParams, trunc: Truncation = Truncation()) -> float:
    """Radial factor of the rational lattice series for one l-vector, via F_C.

    R = (−1)^{l_N} r_N^{−ν} (ν/2)_l ((ν−M+2)/2)_{l−l_N} / Π(M/2)_{l_p} Π(r_p/r_N)^{l_p}
        · F_C[l+ν/2, (ν−M+2)/2+l−l_N; l_p+M/2; (r_p/r_N)²],
    with each F_C index capped at ``trunc.mu_max`` (``None`` cap for ν = −2q,
    where the series terminates).
    """
    l_vec = [int(l) for l in l_vec]
    r_vec = [float(r) for r in r_vec]
    N, M, nu = len(l_vec), params.M, float(params.nu)
    if len(r_vec) != N:
        raise DomainError("l_vec and r_vec lengths differ")
    rN = r_vec[-1]
    if rN <= 0 or any(r > rN for r in r_vec[:-1]):
        raise DomainError("r_vec must end with its largest, positive entry")
    q = params.polynomial_degree
    if q is None and sum(r_vec[:-1]) >= rN:
        raise ConvergenceDomain("need Σ_{p<N} r_p < r_N")
    total_l = sum(l_vec)
    if total_l % 2:
        return 0.0
    l, lN = total_l // 2, l_vec[-1]
    if l - lN < 0:
        return 0.0
    b0 = (nu - M + 2) / 2
    log, sign = 0.0, (-1.0) ** lN
    for a, kk in ((nu / 2, l), (b0, l - lN)):
        lt, st = _log_pochhammer_table(a, kk)
        if st[kk] == 0:
            return 0.0
        log += lt[kk]
        sign *= st[kk]
    for lp_, rp in zip(l_vec[:-1], r_vec[:-1]):
        if rp == 0 and lp_ > 0:
            return 0.0
        lt, _ = _log_pochhammer_table(M / 2, lp_)
        log += (lp_ * math.log(rp / rN) if lp_ else 0.0) - lt[lp_]
    pref = sign * math.exp(log) * rN ** (-nu)
    if N == 1:
        return pref
    cap = trunc.mu_max if q is None else q
    fc = lauricella_fc(l + nu / 2, b0 + l - lN, [lp_ + M / 2 for lp_ in l_vec[:-1]],
                       [(rp / rN) ** 2 for rp in r_vec[:-1]], per_axis_max=cap)
    return pref * fc


def _check_t2(params: ExpansionParams):
    if not params.theorem2_valid:
        raise ConvergenceDomain("the orthogonal-basis series needs 0 < nu < M")


def theorem2_pair(r1, r2, params: ExpansionParams, trunc: Truncation = Truncation()) -> SeriesEval:
    """N = 2 orthogonal-basis series with closed-form radial coefficients.

    value = Γ((M−ν)/2)Γ(M/2)/(2Γ(ν/2)) ((r_1²+1)(r_2²+1))^{(M−ν)/2}
            Σ_{l,n} (−1)^l Γ(l+n+ν/2)/Γ(l+n+M−ν/2) η_{n,l}(r_1) η_{n,l}(r_2) K_l(ζ_1·ζ_2).
    """
    v1, v2 = _as_vectors([r1, r2])
    M, nu = v1.M, float(params.nu)
    _check_t2(params)
    if params.M != M:
        raise DomainError("params do not match the vectors")
    direct_eval([v1, v2], nu)  # raises SingularPoint when r_1 + r_2 = 0
    a, b = v1.norm, v2.norm
    c = float(np.clip(np.dot(_unit(v1, M), _unit(v2, M)), -1.0, 1.0)) if a > 0 and b > 0 else 1.0
    s = (M - nu) / 2
    pref = math.exp(math.lgamma(s) + math.lgamma(M / 2) - math.lgamma(nu / 2)) / 2 * ((a * a + 1) * (b * b + 1)) ** s
    kern = kernel_table(trunc.l_max, M, c)
    n = np.arange(trunc.n_max + 1)
    shells = []
    for l in range(trunc.l_max + 1):
        g = np.exp([math.lgamma(l + k + nu / 2) - math.lgamma(l + k + M - nu / 2) for k in n])
        e1 = eta_table(trunc.n_max, l, M, a)
        e2 = eta_table(trunc.n_max, l, M, b)
        shells.append((l, pref * (-1) ** l * float(kern[l]) * math.fsum((g * e1 * e2).tolist())))
    value = math.fsum(v for _, v in shells)
    terms = (trunc.l_max + 1) * (trunc.n_max + 1)
    return SeriesEval(value, terms, abs(shells[-1][1]), None, tuple(shells))


def _t2_prefactor(M, N, nu):
    s = (M - nu) / 2
    return 2.0 * math.exp(math.lgamma(s) - math.lgamma(nu / 2) - math.lgamma(M / 2)) / sphere_area(M) ** N


_U_QUAD = QuadSpec(abs_tol=1e-12, rel_tol=1e-9, max_subdivisions=3000)


def a_coefficient(n_vec, l_vec, M: int, nu: float, quad: QuadSpec = _U_QUAD) -> float:
    """A_{n,l} = 2Γ((M−ν)/2)/(S_M^N Γ(ν/2)Γ(M/2)) (−1)^{Σl/2} ∫₀^∞ u^{ν−1} Π_k ξ_real(n_k, l_k)(u) du.

    Zero when Σ l_k is odd.
    """
    n_vec, l_vec = list(n_vec), list(l_vec)
    if len(n_vec) != len(l_vec):
        raise DomainError("n_vec and l_vec lengths differ")
    if not 0 < nu < M:
        raise ConvergenceDomain("the orthogonal-basis series needs 0 < nu < M")
    if sum(l_vec) % 2:
        return 0.0
    n_max, l_max = max(n_vec), max(l_vec)

    def f(u):
        tab = xi_table(n_max, l_max, M, nu, u)
        prod = u ** (nu - 1)
        for n, l in zip(n_vec, l_vec):
            prod = prod * tab[l, n]
        return prod

    val, _ = integrate_semi_infinite(f, quad)
    return _t2_prefactor(M, len(n_vec), nu) * (-1) ** (sum(l_vec) // 2) * val


def theorem2_series(vectors, params: ExpansionParams, trunc: Truncation = Truncation(),
                    quad: QuadSpec = _U_QUAD, mc: McSpec = McSpec(), workers: int = 1,
                    pair_closed_form: bool = True) -> SeriesEval:
    """General-N orthogonal-basis series.

    With F_l(r, u) = Σ_{n≤n_max} (r²+1)^{(M−ν)/2} η_{n,l}(r) ξ_real(n,l)(u), the
    truncated series is evaluated as

        value = P_N Σ_l (−1)^{Σl/2} V(l) ∫₀^∞ u^{ν−1} Π_k F_{l_k}(r_k, u) du,

    which equals Σ_{n,l} V A_{n,l} Π (r_k²+1)^{(M−ν)/2} η_{n_k,l_k}(r_k) with the
    n-sums moved inside the u-integral.  For N = 2 the closed Γ-ratio path of
    ``theorem2_pair`` is used unless ``pair_closed_form`` is False.
    """
    vs = _as_vectors(vectors)
    N, M, nu = len(vs), vs[0].M, float(params.nu)
    _check_t2(params)
    if params.M != M or params.N != N:
        raise DomainError("params do not match the vectors")
    direct_eval(vs, nu)
    if N == 2 and pair_closed_form:
        return theorem2_pair(vs[0], vs[1], params, trunc)
    if trunc.n_max > XI_KSUM_RELIABLE_N:
        warnings.warn(
            f"n_max={trunc.n_max} exceeds {XI_KSUM_RELIABLE_N}; the Macdonald-sum route for xi "
            "loses relative accuracy at large n", RuntimeWarning, stacklevel=2)
    s = (M - nu) / 2
    l_max, n_max = trunc.l_max, trunc.n_max
    # weights[k][l, n] = (r_k²+1)^s η_{n,l}(r_k)
    weights = []
    for v in vs:
        r = v.norm
        w = np.stack([eta_table(n_max, l, M, r) for l in range(l_max + 1)]) * (r * r + 1) ** s
        weights.append(w)
    l_vecs = [lv for lv in itertools.product(range(l_max + 1), repeat=N)
              if sum(lv) % 2 == 0 and not any(2 * li > sum(lv) for li in lv)]
    if not l_vecs:
        raise DomainError("empty lattice")

    def f(u):
        tab = xi_table(n_max, l_max, M, nu, u)  # (L, n, U)
        F = [np.einsum("ln,lnu->lu", w, tab) for w in weights]
        cols = []
        for lv in l_vecs:
            prod = u ** (nu - 1)
            for k, l in enumerate(lv):
                prod = prod * F[k][l]
            cols.append(prod)
        return np.stack(cols, axis=1)

    W, _ = integrate_semi_infinite(f, quad)
    W = np.atleast_1d(W)
    pref = _t2_prefactor(M, N, nu)
    shells_used = sorted({sum(lv) // 2 for lv in l_vecs})
    pos = {sh: i for i, sh in enumerate(shells_used)}
    terms = {}
    for lv, w in zip(l_vecs, W):
        vec = np.zeros(len(shells_used) + 1)
        cf = (-1) ** (sum(lv) // 2) * w
        vec[pos[sum(lv) // 2]] = cf
        vec[-1] = cf
        terms[lv] = vec
    directions = [_unit(v, M) for v in vs]
    exact, mc_mean, mc_err = weighted_v_sum(terms, directions, M, mc, workers)
    has_mc = any(sum(1 for li in lv if li) >= 3 for lv in l_vecs)
    n_terms = len(l_vecs) * (n_max + 1) ** N
    return _shell_eval(None, shells_used, exact, mc_mean, mc_err, pref, min(l_max, shells_used[-1]),
                       n_terms, has_mc)
