"""Weighted Bergman spaces on the bidisk with the |z1-z2|^{2 theta}
|1 - conj(z2) z1|^{2 vartheta} weight: sigma constants, kernels on and off
the diagonal, per-degree kernel Taylor blocks, the a/b coefficient families,
diagonal restriction transforms, and the norm expansions (Bergman and Hardy
flavors).

Series organization: the subspace kernels are double series whose inner sum
is bounded term by term by (rz rw)^n where rz = max |z_i|, rw = max |w_i|,
so a clean geometric tail bound is available; the outer sum over vanishing
order N is bounded by |z1-z2|^N |w1-w2|^N sigma_N / (1 - rz rw).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .config import Point2, SeriesResult, TruncationConfig, default_config
from .errors import DomainError
from .poly2 import BiPoly, UniPoly
from .specfun import hyp3f2_unit, log_gamma, pochhammer


@dataclass(frozen=True)
class BidiskParams:
    """Weight exponents (alpha, beta, vartheta) plus the diagonal-vanishing
    exponent theta."""

    alpha: float
    beta: float
    theta: float
    vartheta: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "theta", "vartheta"):
            if getattr(self, name) <= -1:
                raise DomainError(f"{name} must exceed -1")
        if self.alpha + self.beta + 2 * self.theta + 2 * self.vartheta + 3 <= 0:
            raise DomainError(
                "alpha + beta + 2 theta + 2 vartheta + 3 must be positive")

    @property
    def a(self) -> float:
        return self.alpha + self.theta + self.vartheta + 2.0

    @property
    def b(self) -> float:
        return self.beta + self.theta + self.vartheta + 2.0

    @property
    def s(self) -> float:
        """Index of the diagonal restriction space; note a + b = s + 2."""
        return self.alpha + self.beta + 2 * self.theta + 2 * self.vartheta + 2.0

    def shifted(self, dN: int) -> "BidiskParams":
        """Same weight with theta raised by dN (indexes the order-N subspace)."""
        return replace(self, theta=self.theta + dN)


def _require_bidisk(*points: Point2) -> None:
    for p in points:
        if not p.in_bidisk():
            raise DomainError(f"point ({p.z1}, {p.z2}) is not inside the bidisk")


def inv_sigma(params: BidiskParams,
              cfg: TruncationConfig | None = None) -> SeriesResult:
    """1/sigma as the hypergeometric expression: (beta+1) Gamma(alpha+2)
    Gamma(theta+1) / [(a+b-1) Gamma(alpha+theta+2)] times
    3F2(theta+1, a, a; alpha+theta+2, a+b; 1)."""
    cfg = cfg or default_config()
    al, be, th, vt = params.alpha, params.beta, params.theta, params.vartheta
    r = hyp3f2_unit(th + 1.0, params.a, params.a,
                    al + th + 2.0, params.a + params.b, cfg)
    pref = ((be + 1.0)
            * math.exp(log_gamma(al + 2.0) + log_gamma(th + 1.0)
                       - log_gamma(al + th + 2.0))
            / (al + be + 2 * th + 2 * vt + 3.0))
    return SeriesResult(pref * r.value, r.terms_used, pref * r.tail_bound)


@lru_cache(maxsize=4096)
def _sigma_cached(params: BidiskParams, cfg: TruncationConfig) -> SeriesResult:
    inv = inv_sigma(params, cfg)
    val = 1.0 / inv.value.real
    return SeriesResult(complex(val), inv.terms_used,
                        val * val * inv.tail_bound)


def sigma(params: BidiskParams, cfg: TruncationConfig | None = None) -> float:
    """The kernel value at the origin, i.e. the reciprocal total mass of the
    weight."""
    return _sigma_cached(params, cfg or default_config()).value.real


def sigma_gamma_form(params: BidiskParams) -> float:
    """Closed Gamma-quotient form of sigma, valid only at vartheta = 0."""
    if params.vartheta != 0.0:
        raise DomainError("the closed Gamma form requires vartheta = 0")
    al, be, th = params.alpha, params.beta, params.theta
    log_inv = (log_gamma(al + 2.0) + log_gamma(be + 2.0) + log_gamma(th + 1.0)
               + log_gamma(al + be + 2 * th + 3.0)
               - log_gamma(al + th + 2.0) - log_gamma(be + th + 2.0)
               - log_gamma(al + be + th + 3.0))
    return math.exp(-log_inv)


def diag_kernel(params: BidiskParams, z: Point2, w1: complex,
                cfg: TruncationConfig | None = None) -> complex:
    """Kernel against a diagonal point: P(z, (w1, w1)) =
    sigma / [(1 - conj(w1) z1)^a (1 - conj(w1) z2)^b]."""
    _require_bidisk(z, Point2(w1, w1))
    wc = complex(w1).conjugate()
    return (sigma(params, cfg)
            * (1.0 - wc * z.z1) ** (-params.a)
            * (1.0 - wc * z.z2) ** (-params.b))


@lru_cache(maxsize=65536)
def _c_coeffs(params: BidiskParams, N: int, n: int) -> tuple:
    """Coefficients (a+N)_j / j! * (b+N)_{n-j} / (n-j)! for j = 0..n."""
    a, b = params.a + N, params.b + N
    left = [1.0] * (n + 1)
    for j in range(1, n + 1):
        left[j] = left[j - 1] * (a + j - 1.0) / j
    right = [1.0] * (n + 1)
    for j in range(1, n + 1):
        right[j] = right[j - 1] * (b + j - 1.0) / j
    return tuple(left[j] * right[n - j] for j in range(n + 1))


def _c_value(params: BidiskParams, N: int, n: int, z: Point2) -> complex:
    coef = _c_coeffs(params, N, n)
    return sum(c * z.z1 ** j * z.z2 ** (n - j) for j, c in enumerate(coef))


class _PowerTable:
    """Incrementally grown powers of a pair of complex numbers."""

    def __init__(self, z1: complex, z2: complex):
        self.p1 = [1.0 + 0.0j]
        self.p2 = [1.0 + 0.0j]
        self.z1 = complex(z1)
        self.z2 = complex(z2)

    def grow(self, n: int) -> None:
        while len(self.p1) <= n:
            self.p1.append(self.p1[-1] * self.z1)
            self.p2.append(self.p2[-1] * self.z2)

    def c_value(self, params: BidiskParams, N: int, n: int) -> complex:
        self.grow(n)
        coef = _c_coeffs(params, N, n)
        p1, p2 = self.p1, self.p2
        return sum(coef[j] * p1[j] * p2[n - j] for j in range(n + 1))


def q_kernel(params: BidiskParams, N: int, z: Point2, w: Point2,
             cfg: TruncationConfig | None = None) -> SeriesResult:
    """Kernel of the order-N subspace as the double series
    (z1-z2)^N (conj(w1)-conj(w2))^N sigma_N sum_n [n!/(s+2N+2)_n]
    c_n(z) conj(c_n(w))."""
    cfg = cfg or default_config()
    if N < 0:
        raise DomainError("N must be >= 0")
    _require_bidisk(z, w)
    sN = _sigma_cached(params.shifted(N), cfg)
    pref = ((z.z1 - z.z2) ** N
            * (complex(w.z1).conjugate() - complex(w.z2).conjugate()) ** N
            * sN.value.real)
    s2 = params.s + 2.0 * N + 2.0
    rz = max(abs(z.z1), abs(z.z2))
    rw = max(abs(w.z1), abs(w.z2))
    q = rz * rw
    total = 0.0 + 0.0j
    mu = 1.0
    small_streak = 0
    tail = math.inf
    done = False
    terms = 0
    tz = _PowerTable(z.z1, z.z2)
    tw = _PowerTable(w.z1, w.z2)
    for n in range(cfg.max_terms):
        terms = n + 1
        total += mu * tz.c_value(params, N, n) * tw.c_value(params, N, n).conjugate()
        # |mu_n c_n(z) conj(c_n(w))| <= (rz rw)^n since sum_j of the c
        # coefficients is (s+2N+2)_n / n! = 1/mu_n
        tail = cfg.safety_factor * q ** (n + 1) / (1.0 - q)
        if tail <= cfg.tolerance * max(1.0, abs(total)):
            small_streak += 1
            if small_streak >= cfg.consecutive_small:
                done = True
                break
        else:
            small_streak = 0
        mu *= (n + 1.0) / (s2 + n)
    if not done:
        from .errors import ConvergenceError
        raise ConvergenceError(
            f"q_kernel inner series did not converge in {cfg.max_terms} terms",
            terms_used=terms, tail_estimate=abs(pref) * tail)
    return SeriesResult(pref * total, terms,
                        abs(pref) * tail + abs(sN.tail_bound) * abs(total))


def full_kernel(params: BidiskParams, z: Point2, w: Point2,
                cfg: TruncationConfig | None = None) -> SeriesResult:
    """Reproducing kernel as the sum over vanishing orders N of q_kernel."""
    cfg = cfg or default_config()
    _require_bidisk(z, w)
    dz = z.z1 - z.z2
    dw = complex(w.z1).conjugate() - complex(w.z2).conjugate()
    rz = max(abs(z.z1), abs(z.z2))
    rw = max(abs(w.z1), abs(w.z2))
    inner_bound = 1.0 / (1.0 - rz * rw)
    total = 0.0 + 0.0j
    terms = 0
    tail = math.inf
    small_streak = 0
    for N in range(cfg.max_outer_terms):
        part = q_kernel(params, N, z, w, cfg)
        total += part.value
        terms += part.terms_used
        sig_next = sigma(params.shifted(N + 1), cfg)
        head = abs(dz * dw) ** (N + 1) * sig_next * inner_bound
        # the outer terms decay at the asymptotic ratio |dz dw|/4 < 1
        ratio = min(abs(dz * dw) * sigma(params.shifted(N + 2), cfg) / sig_next, 0.999)
        tail = cfg.safety_factor * head / (1.0 - ratio)
        if tail <= cfg.tolerance * max(1.0, abs(total)):
            small_streak += 1
            if small_streak >= cfg.consecutive_small:
                return SeriesResult(total, terms, tail)
        else:
            small_streak = 0
    from .errors import ConvergenceError
    raise ConvergenceError(
        f"full_kernel did not converge in {cfg.max_outer_terms} outer terms",
        terms_used=terms, tail_estimate=tail)


def taylor_blocks(params: BidiskParams, max_degree: int,
                  cfg: TruncationConfig | None = None) -> list:
    """Per-degree Taylor coefficient matrices K_d of the full kernel:
    K_d = sum_{N <= d} sigma_N [(d-N)!/(s+2N+2)_{d-N}] v_N v_N^T with v_N the
    monomial coefficient vector of (z1-z2)^N c_{d-N}(z).  Finite and exact
    apart from sigma evaluation; positive semidefinite by construction."""
    cfg = cfg or default_config()
    if max_degree < 0:
        raise DomainError("max_degree must be >= 0")
    blocks = []
    for d in range(max_degree + 1):
        block = np.zeros((d + 1, d + 1))
        for N in range(d + 1):
            n = d - N
            sig = sigma(params.shifted(N), cfg)
            mu = math.factorial(n) / pochhammer(params.s + 2.0 * N + 2.0, n)
            cpoly = BiPoly({(j, n - j): c
                            for j, c in enumerate(_c_coeffs(params, N, n))})
            diag = BiPoly({(1, 0): 1.0, (0, 1): -1.0})
            prod = cpoly
            for _ in range(N):
                prod = prod * diag
            v = np.zeros(d + 1)
            for (m, k), c in prod.coeffs.items():
                v[m] = c.real
            block += sig * mu * np.outer(v, v)
        blocks.append(block)
    return blocks


def coeff_a(params: BidiskParams, k: int, N: int) -> float:
    """a_{k,N} = (-1)^{N-k}/(k!(N-k)!) (a+k)_{N-k} / (s+N+k+2)_{N-k}
    written with the underlying weight exponents."""
    if not 0 <= k <= N:
        raise DomainError(f"need 0 <= k <= N, got k={k}, N={N}")
    al, be, th, vt = params.alpha, params.beta, params.theta, params.vartheta
    sign = -1.0 if (N - k) % 2 else 1.0
    return (sign / (math.factorial(k) * math.factorial(N - k))
            * pochhammer(al + th + vt + k + 2.0, N - k)
            / pochhammer(al + be + 2 * th + 2 * vt + N + k + 3.0, N - k))


def coeff_b(theta: float, k: int, N: int) -> float:
    """Hardy-limit coefficients b_{k,N}; the alpha = beta = -1, vartheta = 0
    degeneration of a_{k,N}."""
    if not 0 <= k <= N:
        raise DomainError(f"need 0 <= k <= N, got k={k}, N={N}")
    sign = -1.0 if (N - k) % 2 else 1.0
    return (sign / (math.factorial(k) * math.factorial(N - k))
            * pochhammer(theta + k + 1.0, N - k)
            / pochhammer(2 * theta + N + k + 1.0, N - k))


def _transform(f: BiPoly, N: int, coeff) -> UniPoly:
    """sum_k coeff(k) d^{N-k} of the diagonal restriction of d^k f / dz1^k."""
    out = UniPoly()
    for k in range(N + 1):
        restricted = f.differentiate(1, k).restrict_diagonal()
        out = out + restricted.differentiate(N - k).scale(coeff(k))
    return out


def restriction_transform(params: BidiskParams, f: BiPoly, N: int) -> UniPoly:
    """The 1D polynomial sum_k a_{k,N} d^{N-k} [d^k f restricted to the
    diagonal]; inverts the order-N projection followed by division by
    (z1-z2)^N and diagonal restriction."""
    return _transform(f, N, lambda k: coeff_a(params, k, N))


def disk_norm_sq(p: UniPoly, s: float) -> float:
    """Norm in the probability-normalized 1D space of index s, via monomial
    norms m!/(s+2)_m."""
    total = 0.0
    for m, c in p.coeffs.items():
        total += abs(c) ** 2 * math.factorial(m) / pochhammer(s + 2.0, m)
    return total


@dataclass(frozen=True)
class NormExpansion:
    """Per-vanishing-order contributions to ||f||^2 and their sum."""

    terms: tuple
    total: float


def norm_expansion(params: BidiskParams, f: BiPoly,
                   cfg: TruncationConfig | None = None) -> NormExpansion:
    """||f||^2 = sum_N (1/sigma_N) || transform_N f ||^2 in the 1D space of
    index s + 2N; finite for polynomials since transforms of order beyond
    deg f vanish."""
    cfg = cfg or default_config()
    terms = []
    for N in range(max(f.total_degree, 0) + 1):
        t = restriction_transform(params, f, N)
        if t.is_zero():
            terms.append((N, 0.0))
            continue
        inv_sig = 1.0 / sigma(params.shifted(N), cfg)
        terms.append((N, inv_sig * disk_norm_sq(t, params.s + 2.0 * N)))
    return NormExpansion(tuple(terms), sum(v for _, v in terms))


def hardy_norm_expansion(theta: float, f: BiPoly) -> NormExpansion:
    """Weighted Hardy norm expansion: weights
    Gamma(2 theta + 2N + 2) / [(2 theta + 2N + 1) Gamma(theta + N + 1)^2],
    1D indices 2 theta + 2N, coefficients b_{k,N}."""
    if theta <= -0.5:
        raise DomainError("hardy_norm_expansion requires theta > -1/2")
    terms = []
    for N in range(max(f.total_degree, 0) + 1):
        t = _transform(f, N, lambda k: coeff_b(theta, k, N))
        if t.is_zero():
            terms.append((N, 0.0))
            continue
        w = math.exp(log_gamma(2 * theta + 2 * N + 2.0)
                     - 2.0 * log_gamma(theta + N + 1.0)) / (2 * theta + 2 * N + 1.0)
        terms.append((N, w * disk_norm_sq(t, 2 * theta + 2.0 * N)))
    return NormExpansion(tuple(terms), sum(v for _, v in terms))
