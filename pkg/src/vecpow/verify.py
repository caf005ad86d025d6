"""Identity checks, each comparing two independently computed sides.

Every check returns a ``CheckReport``.  Deterministic checks use a fixed
absolute tolerance (relative tolerances are converted using the scale of the
right-hand side).  Monte-Carlo checks widen the tolerance to 4·stderr.
``run_suite`` runs the canonical grid and returns reports sorted by name.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .angular import kernel_table
from .errors import ConvergenceDomain, DomainError
from .expand import (
    ExpansionParams,
    MVector,
    Truncation,
    direct_eval,
    theorem2_pair,
    theorem2_series,
)
from .numerics import McSpec, QuadSpec, integrate_oscillatory, integrate_semi_infinite, mc_sphere_expectation
from .radial import (
    RadialIndex,
    completeness_partial_sum,
    eta_orthogonality,
    eta_table,
    hankel_xi_table,
    sphere_area,
    xi_gram,
    xi_moment,
    xi_moment_closed,
    xi_norm,
    xi_real,
    xi_table,
)
from .special import (
    HypSeriesParams,
    bessel_j,
    gegenbauer,
    gegenbauer_all,
    hyp_series,
    hyp_terminating,
    legendre_q_ratio,
    pochhammer,
)

__all__ = [
    "CheckReport",
    "SuiteConfig",
    "check_lemma1",
    "check_lemma1_closed",
    "check_monomial",
    "check_saalschutz",
    "check_pair_integral",
    "pair_integral_routes",
    "check_qcc",
    "check_qcc_pair_route",
    "check_completeness",
    "check_limit_reduction",
    "check_addition_theorem_c33",
    "check_eta_orthonormality",
    "check_xi_orthogonality",
    "check_xi_representations",
    "check_xi_moment",
    "run_suite",
    "format_reports",
]

REPORT_FIELDS = ("name", "lhs", "rhs", "abs_diff", "tolerance", "passed", "stderr")


@dataclass(frozen=True)
class CheckReport:
    name: str
    lhs: float
    rhs: float
    abs_diff: float
    tolerance: float
    passed: bool
    stderr: float | None = None

    def to_json(self) -> str:
        rec = {k: getattr(self, k) for k in REPORT_FIELDS}
        return json.dumps(rec, allow_nan=True)


def _report(name, lhs, rhs, tol, stderr=None, rel=False):
    """Build a report; ``rel`` scales ``tol`` by |rhs| unless rhs is zero."""
    lhs, rhs = float(lhs), float(rhs)
    tol = float(tol) * abs(rhs) if rel and rhs != 0 else float(tol)
    if stderr is not None:
        stderr = float(stderr)
        tol = max(tol, 4.0 * stderr)
    diff = abs(lhs - rhs)
    return CheckReport(name, lhs, rhs, diff, tol, bool(diff <= tol), stderr)


def _fmt(x):
    return repr(float(x)) if isinstance(x, float) else str(x)


def _name(kind, **kw):
    return kind + "[" + ",".join(f"{k}={_fmt(v)}" for k, v in kw.items()) + "]"


def _unit_pair(M, c):
    """Two unit vectors in R^M with inner product c."""
    z1 = np.zeros(M)
    z1[0] = 1.0
    z2 = np.zeros(M)
    z2[0] = c
    z2[1] = math.sqrt(max(0.0, 1.0 - c * c))
    return z1, z2


# ---------------------------------------------------------------- lemma 1

def _lemma1_coefs(rho, l, sigma, M):
    out = []
    for m in range(l + 1):
        log = (
            math.lgamma(rho + 2 * l + sigma + 1)
            + math.lgamma(M / 2 + l + m + sigma)
            - math.lgamma(l - m + 1)
            - math.lgamma(rho)
            - math.lgamma(M / 2)
        )
        out.append((-1) ** (m + l) * math.exp(log) / (rho + l + m + sigma))
    return np.array(out)


def check_lemma1(rho, l, sigma, M, zeta1, zeta2, mc: McSpec = McSpec(), tol=1e-12):
    """C^ρ_{2l+σ}(ζ_1·ζ_2) against the m-sum of sphere averages of monomial products.

    The right side is Σ_m coef_m E[(2ζ_1·ζ)^{2l+σ}/(2l+σ)! (2ζ_2·ζ)^{2m+σ}/(2m+σ)!],
    estimated as a single Monte-Carlo average.
    """
    if sigma not in (0, 1) or rho <= 0:
        raise DomainError("need sigma in {0, 1} and rho > 0")
    z1, z2 = np.asarray(zeta1, float), np.asarray(zeta2, float)
    c = float(np.dot(z1, z2))
    lhs = gegenbauer(2 * l + sigma, rho, c)
    coefs = _lemma1_coefs(rho, l, sigma, M)
    p = 2 * l + sigma

    def g(zeta):
        a = 2.0 * (zeta @ z1)
        b = 2.0 * (zeta @ z2)
        left = a**p / math.factorial(p)
        right = sum(cf * b ** (2 * m + sigma) / math.factorial(2 * m + sigma) for m, cf in enumerate(coefs))
        return left * right

    mean, err = mc_sphere_expectation(g, M, mc)
    name = _name("lemma1", rho=float(rho), l=l, sigma=sigma, M=M, c=round(c, 12))
    return _report(name, lhs, float(mean), tol, stderr=float(err))


def _monomial_moment_closed(l, m, sigma, M, c):
    """E[(2ζ_1·ζ)^{2l+σ}/(2l+σ)! (2ζ_2·ζ)^{2m+σ}/(2m+σ)!] in closed form."""
    f, _ = hyp_series(HypSeriesParams((-m, -l), (sigma + 0.5,)), c * c)
    log = math.lgamma(M / 2) - math.lgamma(M / 2 + l + m + sigma) - math.lgamma(l + 1) - math.lgamma(m + 1)
    return math.exp(log) * (2 * c) ** sigma * f


def check_lemma1_closed(rho, l, sigma, M, c, tol=1e-10):
    """The Gegenbauer m-sum identity with the sphere averages taken from their ₂F₁ closed form."""
    lhs = gegenbauer(2 * l + sigma, rho, c)
    coefs = _lemma1_coefs(rho, l, sigma, M)
    rhs = math.fsum(cf * _monomial_moment_closed(l, m, sigma, M, c) for m, cf in enumerate(coefs))
    name = _name("lemma1_closed", rho=float(rho), l=l, sigma=sigma, M=M, c=float(c))
    return _report(name, lhs, rhs, tol, rel=abs(lhs) > 1)


def check_monomial(n, M, z, tol=1e-10):
    """Σ_k (n−2k+M/2−1)/((M/2−1)(M/2)_{n−k} k!) C^{M/2−1}_{n−2k}(z) = (2z)^n/n!."""
    alpha = M / 2 - 1
    g = gegenbauer_all(n, alpha, z)
    lhs = math.fsum(
        (n - 2 * k + alpha) / (alpha * pochhammer(M / 2, n - k) * math.factorial(k)) * float(g[n - 2 * k])
        for k in range(n // 2 + 1)
    )
    rhs = (2 * z) ** n / math.factorial(n)
    return _report(_name("monomial", n=n, M=M, z=float(z)), lhs, rhs, tol, rel=True)


def check_saalschutz(mu, rho, n_tilde, M, tol=1e-10):
    """Balanced terminating ₃F₂ at unit argument against its Pochhammer closed form."""
    params = HypSeriesParams((-mu, rho + n_tilde - mu, M / 2 + n_tilde - mu),
                             (rho + n_tilde - mu + 1, M / 2 + n_tilde - 2 * mu))
    lhs = hyp_terminating(mu, params, 1.0)
    rhs = (math.factorial(mu) * pochhammer(rho + 1 - M / 2, mu)
           / (pochhammer(rho + n_tilde - mu + 1, mu) * pochhammer(1 - M / 2 - n_tilde + mu, mu)))
    name = _name("saalschutz", mu=mu, rho=float(rho), n=n_tilde, M=M)
    return _report(name, lhs, rhs, tol, rel=True)


# ---------------------------------------------------------------- radial pair integral

def _pair_integral_numeric(l, M, nu, r1, r2, quad):
    lam = l + M / 2 - 1

    def f(u):
        w = (r1 * u) * (r2 * u)
        return u ** (nu - 1) * bessel_j(lam, 2 * r1 * u) * bessel_j(lam, 2 * r2 * u) / w ** (M / 2 - 1)

    cutoff = (lam * lam + 1) / (2 * r1)
    val, _ = integrate_oscillatory(f, 2.0 * (r2 - r1), quad, cutoff=cutoff)
    return float(val)


def _pair_integral_2f1(l, M, nu, r1, r2):
    x = (r1 / r2) ** 2
    f, _ = hyp_series(HypSeriesParams((l + nu / 2, (nu - M + 2) / 2), (l + M / 2,)), x)
    log = math.lgamma(l + nu / 2) - math.log(2.0) - math.lgamma((M - nu) / 2) - math.lgamma(l + M / 2)
    return math.exp(log) * r2 ** (-nu) * (r1 / r2) ** l * f


def _pair_integral_q(l, M, nu, r1, r2):
    z = (r1 * r1 + r2 * r2) / (2 * r1 * r2)
    q = legendre_q_ratio(l + (M - 3) / 2, (nu - M + 1) / 2, z)
    log = (M - nu - 3) / 2 * math.log(2.0) - 0.5 * math.log(math.pi) - math.lgamma((M - nu) / 2)
    return math.exp(log) * (r1 * r2) ** (-nu / 2) * q


def pair_integral_routes(l, M, nu, r1, r2, quad: QuadSpec = QuadSpec()):
    """(numeric, ₂F₁, Legendre-Q) values of ∫u^{ν−1} J_λ(2r_1u) J_λ(2r_2u)/(r_1r_2u²)^{M/2−1} du."""
    if not 0 < r1 < r2:
        raise ConvergenceDomain("need 0 < r1 < r2")
    if not 0 < nu < M:
        raise ConvergenceDomain("need 0 < nu < M")
    return (_pair_integral_numeric(l, M, nu, r1, r2, quad),
            _pair_integral_2f1(l, M, nu, r1, r2),
            _pair_integral_q(l, M, nu, r1, r2))


def check_pair_integral(l, M, nu, r1, r2, quad: QuadSpec = QuadSpec(), tol=1e-6):
    """Three-way check of the Bessel-product integral.

    lhs is the quadrature value, rhs the ₂F₁ closed form; ``abs_diff`` is the
    largest pairwise difference among quadrature, ₂F₁ and Legendre-Q values.
    """
    vals = pair_integral_routes(l, M, nu, r1, r2, quad)
    diff = max(abs(a - b) for i, a in enumerate(vals) for b in vals[i + 1:])
    name = _name("pair_integral", l=l, M=M, nu=float(nu), r1=float(r1), r2=float(r2))
    return CheckReport(name, vals[0], vals[1], diff, tol, bool(diff <= tol), None)


# ---------------------------------------------------------------- Q ratio series

def qcc_series(v, mu, r1, r2, n_max):
    """Gegenbauer-pair series for the Legendre-Q ratio at z = (r_1²+r_2²)/(2r_1r_2)."""
    if mu >= 0.5:
        raise DomainError("the series needs mu < 1/2")
    x1 = (r1 * r1 - 1) / (r1 * r1 + 1)
    x2 = (r2 * r2 - 1) / (r2 * r2 + 1)
    g1 = gegenbauer_all(n_max, v + 1, x1)
    g2 = gegenbauer_all(n_max, v + 1, x2)
    n = np.arange(n_max + 1)
    logw = np.array([
        math.lgamma(k + 1) + math.log(k + v + 1) + math.lgamma(k + v + mu + 1)
        - math.lgamma(k + v - mu + 2) - math.lgamma(k + 2 * v + 2)
        for k in n
    ])
    terms = np.exp(logw) * g1 * g2
    a = v + mu + 1
    log = ((4 * v + mu + 3) * math.log(2.0) + math.lgamma(0.5 - mu) + 2 * math.lgamma(v + 1)
           - 0.5 * math.log(math.pi) + a * math.log(r1 * r2) - a * math.log((r1 * r1 + 1) * (r2 * r2 + 1)))
    return math.exp(log) * math.fsum(terms.tolist())


def check_qcc(v, mu, r1, r2, n_max, tol=1e-8):
    """Legendre-Q ratio (direct series in 1/z) vs the truncated Gegenbauer-pair series; relative."""
    if not 0 < r1 < r2:
        raise ConvergenceDomain("need 0 < r1 < r2")
    z = (r1 * r1 + r2 * r2) / (2 * r1 * r2)
    lhs = legendre_q_ratio(v, mu, z)
    rhs = qcc_series(v, mu, r1, r2, n_max)
    name = _name("qcc", v=float(v), mu=float(mu), r1=float(r1), r2=float(r2), n_max=n_max)
    return _report(name, lhs, rhs, tol, rel=True)


def check_qcc_pair_route(r1, r2, n_max, tol=1e-6):
    """μ = 0, v = 1/2: the Gegenbauer-pair series against the ₂F₁ form of the pair integral.

    These parameters are the Legendre-Q route of the pair integral at M = 4,
    ν = 3, l = 0.
    """
    M, nu = 4, 3.0
    lhs = _pair_integral_2f1(0, M, nu, r1, r2)
    log = (M - nu - 3) / 2 * math.log(2.0) - 0.5 * math.log(math.pi) - math.lgamma((M - nu) / 2)
    rhs = math.exp(log) * (r1 * r2) ** (-nu / 2) * qcc_series(0.5, 0.0, r1, r2, n_max)
    return _report(_name("qcc_pair_route", r1=float(r1), r2=float(r2), n_max=n_max), rhs, lhs, tol, rel=True)


# ---------------------------------------------------------------- completeness and limits

def check_completeness(M, nu, u, n_max, quad: QuadSpec = QuadSpec(), tol=1e-3):
    """(1/S_M) Σ_{n≤n_max} η_{n,0}(0) ξ_{n,0}(u) against 1."""
    lhs = completeness_partial_sum(n_max, M, nu, u, quad)
    return _report(_name("completeness", M=M, nu=float(nu), u=float(u), n_max=n_max), lhs, 1.0, tol)


def check_limit_reduction(vectors, params: ExpansionParams, trunc: Truncation = Truncation(6, 6, 6),
                          mc: McSpec = McSpec(), tol=1e-4):
    """Orthogonal-basis series with a tiny last vector against the exact value without it.

    For N = 2 the closed-form pair series is used; for N ≥ 3 the general
    series.  The right side is direct_eval of the remaining N−1 vectors.
    """
    vs = [v if isinstance(v, MVector) else MVector(v) for v in vectors]
    if len(vs) < 2:
        raise DomainError("need at least two vectors")
    if len(vs) == 2:
        ev = theorem2_pair(vs[0], vs[1], params, trunc)
    else:
        ev = theorem2_series(vs, params, trunc, mc=mc)
    rhs = direct_eval(vs[:-1], params.nu)
    name = _name("limit_reduction", N=len(vs), M=params.M, nu=float(params.nu), r_last=vs[-1].norm,
                 l_max=trunc.l_max, n_max=trunc.n_max)
    return _report(name, ev.value, rhs, tol, stderr=ev.mc_stderr)


def check_addition_theorem_c33(n_prime, l_prime, r_vecs, params: ExpansionParams,
                               trunc: Truncation = Truncation(10, 10, 10), quad: QuadSpec = QuadSpec(1e-12, 1e-9, 3000),
                               tol=1e-2):
    """(|R|²+1)^{(M−ν)/2} η_{n',0}(|R|), R = r_1 + r_2, expanded in products of per-vector η.

    rhs = Γ(M−ν/2+n')/(π^M Γ(ν/2+n')) S_M^{−1}
          ∫ u^{ν−1} ξ_{n',0}(u) Σ_l (−1)^l K_l(ζ_1·ζ_2) F_l(r_1,u) F_l(r_2,u) du,
    F_l(r,u) = Σ_{n≤n_max} (r²+1)^{(M−ν)/2} η_{n,l}(r) ξ_{n,l}(u).
    """
    if l_prime != 0 or len(r_vecs) != 2:
        raise DomainError("implemented for N = 2 and l' = 0 only")
    v1, v2 = [v if isinstance(v, MVector) else MVector(v) for v in r_vecs]
    M, nu = v1.M, float(params.nu)
    if not 0 < nu < M:
        raise ConvergenceDomain("need 0 < nu < M")
    s = (M - nu) / 2
    R = float(np.linalg.norm(v1.array + v2.array))
    lhs = (R * R + 1) ** s * float(eta_table(n_prime, 0, M, R)[n_prime])
    a, b = v1.norm, v2.norm
    c = float(np.dot(v1.array, v2.array) / (a * b)) if a > 0 and b > 0 else 1.0
    L, Nn = trunc.l_max, max(trunc.n_max, n_prime)
    kern = kernel_table(L, M, c)[:, None] * (-1.0) ** np.arange(L + 1)[:, None]
    w1 = np.stack([eta_table(Nn, l, M, a) for l in range(L + 1)]) * (a * a + 1) ** s
    w2 = np.stack([eta_table(Nn, l, M, b) for l in range(L + 1)]) * (b * b + 1) ** s
    w1[:, trunc.n_max + 1:] = 0.0
    w2[:, trunc.n_max + 1:] = 0.0

    def f(u):
        tab = xi_table(Nn, L, M, nu, u)
        F1 = np.einsum("ln,lnu->lu", w1, tab)
        F2 = np.einsum("ln,lnu->lu", w2, tab)
        return u ** (nu - 1) * tab[0, n_prime] * np.sum(kern * F1 * F2, axis=0)

    val, _ = integrate_semi_infinite(f, quad)
    coef = math.exp(math.lgamma(M - nu / 2 + n_prime) - math.lgamma(nu / 2 + n_prime)) / math.pi**M
    rhs = coef * val / sphere_area(M)
    name = _name("addition_c33", n_prime=n_prime, M=M, nu=nu, r1=a, r2=b, c=round(c, 12),
                 l_max=L, n_max=trunc.n_max)
    return _report(name, lhs, rhs, tol)


# ---------------------------------------------------------------- basis functions

def check_eta_orthonormality(n1, n2, l, M, quad: QuadSpec = QuadSpec(), tol=1e-7):
    lhs = eta_orthogonality(RadialIndex(n1, l, M), RadialIndex(n2, l, M), quad)
    return _report(_name("eta_orthonormality", n1=n1, n2=n2, l=l, M=M), lhs, float(n1 == n2), tol)


def check_xi_orthogonality(n_max, l, M, nu, rel_tol=1e-5, off_tol=1e-6):
    """Gram matrix of ξ_{n,l} against the diagonal Γ-ratio norm; one report per matrix.

    lhs is the worst normalized deviation, rhs is 0.  Diagonal entries are
    compared relatively, off-diagonal ones against √(norm_i norm_j).
    """
    g = xi_gram(n_max, l, M, nu)
    norms = np.array([xi_norm(n, l, M, nu) for n in range(n_max + 1)])
    worst = 0.0
    ok = True
    for i in range(n_max + 1):
        for j in range(n_max + 1):
            if i == j:
                d = abs(g[i, i] / norms[i] - 1)
                ok &= d <= rel_tol
            else:
                d = abs(g[i, j]) / math.sqrt(norms[i] * norms[j])
                ok &= d <= off_tol
            worst = max(worst, d)
    name = _name("xi_orthogonality", n_max=n_max, l=l, M=M, nu=float(nu))
    return CheckReport(name, worst, 0.0, worst, min(rel_tol, off_tol), bool(ok), None)


def check_xi_representations(n, l, M, nu, u, quad: QuadSpec = QuadSpec(), tol=1e-6):
    """ξ_real from the ₂F₂ integral, the Macdonald sum and the Hankel transform of η.

    lhs is the ₂F₂ integral value, rhs the Macdonald sum; ``abs_diff`` is the
    largest pairwise relative difference and ``tolerance`` is relative.
    """
    idx = RadialIndex(n, l, M, nu)
    a = float(np.atleast_1d(xi_real(idx, u, quad))[0])
    b = float(xi_table(n, l, M, nu, u)[l, n])
    c = float(hankel_xi_table(n, l, M, nu, float(u), quad)[n])
    scale = max(abs(a), abs(b), abs(c), 1e-300)
    diff = max(abs(a - b), abs(a - c), abs(b - c)) / scale
    name = _name("xi_representations", n=n, l=l, M=M, nu=float(nu), u=float(u))
    return CheckReport(name, a, b, diff, tol, bool(diff <= tol), None)


def check_xi_moment(n, M, nu, tol=1e-8):
    """∫u^{ν−1} ξ_{n,0} du by quadrature against its Γ-ratio closed form; relative."""
    return _report(_name("xi_moment", n=n, M=M, nu=float(nu)), xi_moment(n, M, nu), xi_moment_closed(n, M, nu),
                   tol, rel=True)


# ---------------------------------------------------------------- suite

@dataclass(frozen=True)
class SuiteConfig:
    mc: McSpec = McSpec()
    quad: QuadSpec = QuadSpec()
    tolerances: dict = field(default_factory=dict)
    workers: int = 1
    include_slow: bool = False


def _default_jobs(cfg: SuiteConfig):
    tol = cfg.tolerances
    q = cfg.quad

    def t(kind, default):
        return tol.get(kind, default)

    jobs = []
    for M in (3, 4):
        for rho in (0.5, 1.5):
            for l in range(4):
                for sigma in (0, 1):
                    z1, z2 = _unit_pair(M, 0.5)
                    jobs.append(lambda rho=rho, l=l, sigma=sigma, M=M, z1=z1, z2=z2:
                                check_lemma1(rho, l, sigma, M, z1, z2, cfg.mc, t("lemma1", 1e-12)))
                    jobs.append(lambda rho=rho, l=l, sigma=sigma, M=M:
                                check_lemma1_closed(rho, l, sigma, M, 0.5, t("lemma1_closed", 1e-10)))
    for M in (3, 4, 5):
        for n in range(13):
            for z in (-0.8, 0.3, 0.9):
                jobs.append(lambda n=n, M=M, z=z: check_monomial(n, M, z, t("monomial", 1e-10)))
    for mu in range(5):
        for rho, nt, M in ((0.75, 7, 3), (1.5, 9, 4), (2.25, 8, 5)):
            jobs.append(lambda mu=mu, rho=rho, nt=nt, M=M: check_saalschutz(mu, rho, nt, M, t("saalschutz", 1e-10)))
    for args in ((0, 3, 1.0, 0.5, 1.0), (2, 4, 2.0, 0.5, 1.0), (1, 3, 1.5, 0.3, 0.8), (0, 5, 2.5, 0.4, 0.7)):
        jobs.append(lambda a=args: check_pair_integral(*a, quad=q, tol=t("pair_integral", 1e-6)))
    # The Gegenbauer-pair series converges algebraically, so the grid uses a
    # long truncation and a tolerance matched to the observed tail.
    jobs.append(lambda: check_qcc(1.5, -0.5, 0.6, 0.9, 400, t("qcc", 1e-4)))
    jobs.append(lambda: check_qcc(0.5, -0.5, 0.5, 1.5, 400, t("qcc", 1e-4)))
    for M in (3, 4, 5):
        for l in range(3):
            for n1 in range(4):
                for n2 in range(n1, 4):
                    jobs.append(lambda n1=n1, n2=n2, l=l, M=M:
                                check_eta_orthonormality(n1, n2, l, M, q, t("eta_orthonormality", 1e-7)))
    for M in (3, 4):
        for nu in (1.0, 1.5):
            for l in range(3):
                jobs.append(lambda l=l, M=M, nu=nu: check_xi_orthogonality(3, l, M, nu))
            for n in range(6):
                jobs.append(lambda n=n, M=M, nu=nu: check_xi_moment(n, M, nu, t("xi_moment", 1e-8)))
    for n, l in ((0, 0), (1, 0), (1, 1), (2, 1)):
        for u in (0.25, 1.0, 3.0):
            jobs.append(lambda n=n, l=l, u=u: check_xi_representations(n, l, 3, 1.0, u, q, t("xi_representations", 1e-6)))
    if cfg.include_slow:
        for u in (0.25, 1.0, 3.0):
            jobs.append(lambda u=u: check_completeness(3, 1.0, u, 40, q, t("completeness", 1e-3)))
        p3 = ExpansionParams(3, 3, 1.0)
        jobs.append(lambda: check_limit_reduction([[0.2, 0, 0], [0, 0.25, 0], [1e-6, 0, 0]], p3,
                                                  mc=cfg.mc, tol=t("limit_reduction", 1e-4)))
        jobs.append(lambda: check_qcc(1.5, -0.5, 0.6, 0.9, 60, t("qcc_strict", 1e-8)))
        jobs.append(lambda: check_qcc_pair_route(0.6, 0.9, 60, t("qcc_pair_route", 1e-6)))
        jobs.append(lambda: check_addition_theorem_c33(0, 0, [[0.3, 0, 0], [0, 0.4, 0]], ExpansionParams(3, 2, 1.0),
                                                       tol=t("addition_c33", 1e-2)))
    return jobs


def run_suite(config: SuiteConfig = SuiteConfig()):
    """Run the canonical grid; reports are sorted by name."""
    jobs = _default_jobs(config)
    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as ex:
            reports = list(ex.map(lambda j: j(), jobs))
    else:
        reports = [j() for j in jobs]
    return sorted(reports, key=lambda r: r.name)


def format_reports(reports) -> str:
    return "".join(r.to_json() + "\n" for r in reports)
