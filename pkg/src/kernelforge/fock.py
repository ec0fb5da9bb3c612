"""Gaussian-weighted entire function spaces over C^2 with the extra
|z1-z2|^{2 theta} factor: sigma constant, kernels, coefficient family c_{k,N},
restriction transform, norm expansion, and a change-of-variables kernel used
purely for differential testing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import Point2, SeriesResult, TruncationConfig, default_config
from .errors import ConvergenceError, DomainError
from .poly2 import BiPoly, UniPoly
from .specfun import log_gamma, mittag_e

from .bidisk import NormExpansion


@dataclass(frozen=True)
class FockParams:
    alpha: float
    beta: float
    theta: float = 0.0

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0:
            raise DomainError("alpha and beta must be positive")
        if self.theta <= -1:
            raise DomainError("theta must exceed -1")

    @property
    def gamma(self) -> float:
        """Index of the 1D restriction space (Gaussian weight e^{-gamma |z|^2})."""
        return self.alpha + self.beta


def fock_sigma(params: FockParams) -> float:
    """sigma = (alpha beta)^{theta+1} / [(alpha+beta)^theta Gamma(theta+1)]."""
    al, be, th = params.alpha, params.beta, params.theta
    return math.exp((th + 1.0) * math.log(al * be)
                    - th * math.log(al + be) - log_gamma(th + 1.0))


def fock_diag_kernel(params: FockParams, z: Point2, w1: complex) -> complex:
    """P(z, (w1, w1)) = sigma e^{conj(w1)(alpha z1 + beta z2)}."""
    wc = complex(w1).conjugate()
    return fock_sigma(params) * complex(
        *_cexp(wc * (params.alpha * z.z1 + params.beta * z.z2)))


def _cexp(x: complex):
    v = complex(x)
    r = math.exp(v.real)
    return r * math.cos(v.imag), r * math.sin(v.imag)


def fock_q0_kernel(params: FockParams, z: Point2, w: Point2) -> complex:
    """Kernel of the subspace of diagonal-vanishing order 0:
    sigma e^{(alpha conj(w1) + beta conj(w2))(alpha z1 + beta z2)/(alpha+beta)}."""
    al, be = params.alpha, params.beta
    expo = ((al * complex(w.z1).conjugate() + be * complex(w.z2).conjugate())
            * (al * z.z1 + be * z.z2) / (al + be))
    return fock_sigma(params) * complex(*_cexp(expo))


def fock_full_kernel(params: FockParams, z: Point2, w: Point2,
                     cfg: TruncationConfig | None = None) -> SeriesResult:
    """Full kernel sigma Gamma(theta+1) e^{...} E_theta(alpha beta
    (z1-z2)(conj(w1)-conj(w2))/(alpha+beta)) with E_theta evaluated by its
    entire series."""
    cfg = cfg or default_config()
    al, be, th = params.alpha, params.beta, params.theta
    wc1 = complex(w.z1).conjugate()
    wc2 = complex(w.z2).conjugate()
    expo = (al * wc1 + be * wc2) * (al * z.z1 + be * z.z2) / (al + be)
    arg = al * be * (z.z1 - z.z2) * (wc1 - wc2) / (al + be)
    e = mittag_e(th, arg, cfg)
    pref = (math.exp((th + 1.0) * math.log(al * be) - th * math.log(al + be))
            * complex(*_cexp(expo)))
    return SeriesResult(pref * e.value, e.terms_used, abs(pref) * e.tail_bound)


def fock_cov_kernel(params: FockParams, z: Point2, w: Point2,
                    cfg: TruncationConfig | None = None) -> SeriesResult:
    """Differential-test path: in the coordinates u1 = (alpha z1 + beta z2) /
    (alpha+beta), u2 = (z1 - z2)/(alpha+beta) the space separates into a 1D
    Gaussian space of index alpha+beta and a radially weighted one with
    monomial norms Gamma(theta+n+1)/delta^{theta+n+1}, delta =
    alpha beta (alpha+beta).  The kernel is the product of the two 1D kernels,
    summed here with its own loop and tail bound."""
    cfg = cfg or default_config()
    al, be, th = params.alpha, params.beta, params.theta
    ab = al + be
    u1 = (al * z.z1 + be * z.z2) / ab
    u2 = (z.z1 - z.z2) / ab
    v1 = (al * w.z1 + be * w.z2) / ab
    v2 = (w.z1 - w.z2) / ab
    delta = al * be * ab
    first = ab * complex(*_cexp(ab * u1 * complex(v1).conjugate()))
    x = u2 * complex(v2).conjugate()
    # second factor: sum_n delta^{theta+n+1}/Gamma(theta+n+1) x^n
    term = complex(math.exp((th + 1.0) * math.log(delta) - log_gamma(th + 1.0)))
    total = term
    small_streak = 0
    tail = math.inf
    terms = 1
    for n in range(cfg.max_terms):
        term = term * delta * x / (th + n + 1.0)
        total += term
        terms = n + 2
        q = abs(delta * x) / (th + n + 2.0)
        if q < 1.0:
            tail = cfg.safety_factor * abs(term) * q / (1.0 - q)
            if tail <= cfg.tolerance * max(1.0, abs(total)):
                small_streak += 1
                if small_streak >= cfg.consecutive_small:
                    value = first * total / ab ** (2.0 * th + 2.0)
                    return SeriesResult(value, terms,
                                        abs(first) * tail / ab ** (2.0 * th + 2.0))
            else:
                small_streak = 0
    raise ConvergenceError(
        f"fock_cov_kernel series did not converge in {cfg.max_terms} terms",
        terms_used=terms, tail_estimate=tail)


def coeff_c(params: FockParams, k: int, N: int) -> float:
    """c_{k,N} = (-1)^{N-k} C(N,k) (alpha/(alpha+beta))^{N-k}."""
    if not 0 <= k <= N:
        raise DomainError(f"need 0 <= k <= N, got k={k}, N={N}")
    sign = -1.0 if (N - k) % 2 else 1.0
    return sign * math.comb(N, k) * (params.alpha / params.gamma) ** (N - k)


def fock_restriction_transform(params: FockParams, f: BiPoly, N: int) -> UniPoly:
    """(1/N!) sum_k c_{k,N} d^{N-k} of the diagonal restriction of the k-th
    z1-derivative of f; inverts projection, division by (z1-z2)^N, and
    diagonal restriction."""
    if N < 0:
        raise DomainError("N must be >= 0")
    out = UniPoly()
    for k in range(N + 1):
        restricted = f.differentiate(1, k).restrict_diagonal()
        out = out + restricted.differentiate(N - k).scale(
            coeff_c(params, k, N) / math.factorial(N))
    return out


def fock_disk_norm_sq(p: UniPoly, gamma: float) -> float:
    """1D Gaussian-space norm via monomial norms n!/gamma^{n+1}."""
    total = 0.0
    for n, c in p.coeffs.items():
        total += abs(c) ** 2 * math.exp(log_gamma(n + 1.0)
                                        - (n + 1.0) * math.log(gamma))
    return total


def fock_norm_expansion(params: FockParams, f: BiPoly) -> NormExpansion:
    """||f||^2 = sum_N [(alpha+beta)^{theta+N+1} Gamma(theta+N+1) /
    (alpha beta)^{theta+N+1}] ||N! transform_N f||^2_{alpha+beta} / (N!)^2,
    i.e. with the transform already carrying the 1/N!."""
    al, be, th = params.alpha, params.beta, params.theta
    terms = []
    for N in range(max(f.total_degree, 0) + 1):
        t = fock_restriction_transform(params, f, N)
        if t.is_zero():
            terms.append((N, 0.0))
            continue
        w = math.exp((th + N + 1.0) * math.log((al + be) / (al * be))
                     + log_gamma(th + N + 1.0))
        terms.append((N, w * fock_disk_norm_sq(t, params.gamma)))
    return NormExpansion(tuple(terms), sum(v for _, v in terms))
