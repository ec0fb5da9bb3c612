"""Weighted Bergman spaces on the unit ball in C^2 with weight
|z2|^{2 theta} (1-|z|^2)^alpha (1-|z1|^2)^beta, expanded along the variety
z2 = 0.

Convention fixed here and verified in tests: the 2D norm integrates against
the UN-normalized area element, while the 1D restriction norms use the
probability-normalized measure of index alpha+beta+theta+N+1.  That makes
the embedding identity ||z2^N g(z1)||^2 = embed_const(N) ||g||^2 literal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import Point2, SeriesResult, TruncationConfig, default_config
from .errors import DomainError
from .poly2 import BiPoly
from .specfun import hyp2f1, log_gamma

from .bidisk import NormExpansion, disk_norm_sq


@dataclass(frozen=True)
class BallParams:
    alpha: float
    beta: float
    theta: float

    def __post_init__(self):
        for name in ("alpha", "beta", "theta"):
            if getattr(self, name) <= -1:
                raise DomainError(f"{name} must exceed -1")


def _require_ball(*points: Point2) -> None:
    for p in points:
        if not p.in_ball():
            raise DomainError(f"point ({p.z1}, {p.z2}) is not inside the ball")


def embed_const(params: BallParams, N: int) -> float:
    """||z2^N g(z1)||^2 / ||g||^2_{1D, index alpha+beta+theta+N+1} =
    Gamma(alpha+1) Gamma(theta+N+1) /
    [(alpha+beta+theta+N+2) Gamma(alpha+theta+N+2)]."""
    if N < 0:
        raise DomainError("N must be >= 0")
    al, be, th = params.alpha, params.beta, params.theta
    return math.exp(log_gamma(al + 1.0) + log_gamma(th + N + 1.0)
                    - log_gamma(al + th + N + 2.0)) / (al + be + th + N + 2.0)


def ball_norm_expansion(params: BallParams, f: BiPoly) -> NormExpansion:
    """||f||^2 = sum_N [embed_const(N)/(N!)^2] ||d^N f/dz2^N at z2=0||^2
    in the 1D space of index alpha+beta+theta+N+1."""
    terms = []
    s_base = params.alpha + params.beta + params.theta + 1.0
    for N in range(f.degree_in(2) + 1 if not f.is_zero() else 0):
        g = f.differentiate(2, N).restrict_z2_zero()
        if g.is_zero():
            terms.append((N, 0.0))
            continue
        weight = embed_const(params, N) / math.factorial(N) ** 2
        terms.append((N, weight * disk_norm_sq(g, s_base + N)))
    return NormExpansion(tuple(terms), sum(v for _, v in terms))


def ball_qN_kernel(params: BallParams, N: int, z: Point2, w: Point2) -> complex:
    """Kernel of the subspace of order N along z2 = 0:
    (z2 conj(w2))^N / [embed_const(N) (1 - z1 conj(w1))^{alpha+beta+theta+N+3}]."""
    if N < 0:
        raise DomainError("N must be >= 0")
    _require_ball(z, w)
    al, be, th = params.alpha, params.beta, params.theta
    x = z.z1 * complex(w.z1).conjugate()
    return ((z.z2 * complex(w.z2).conjugate()) ** N / embed_const(params, N)
            * (1.0 - x) ** (-(al + be + th + N + 3.0)))


def ball_full_kernel(params: BallParams, z: Point2, w: Point2,
                     cfg: TruncationConfig | None = None) -> SeriesResult:
    """Closed-form reproducing kernel: Gamma(alpha+theta+2) /
    [Gamma(alpha+1) Gamma(theta+1) (1-z1 conj(w1))^{alpha+beta+theta+3}] times
    [(alpha+theta+2) 2F1(alpha+theta+3, 1; theta+1; x)
      + beta 2F1(alpha+theta+2, 1; theta+1; x)],
    x = z2 conj(w2) / (1 - z1 conj(w1))."""
    cfg = cfg or default_config()
    _require_ball(z, w)
    al, be, th = params.alpha, params.beta, params.theta
    u = 1.0 - z.z1 * complex(w.z1).conjugate()
    x = z.z2 * complex(w.z2).conjugate() / u
    if abs(x) >= 1.0:
        raise DomainError(
            f"kernel argument |x| = {abs(x):.6f} >= 1; distance to the "
            f"boundary sphere is too small for the series form")
    f1 = hyp2f1(al + th + 3.0, 1.0, th + 1.0, x, cfg)
    f2 = hyp2f1(al + th + 2.0, 1.0, th + 1.0, x, cfg)
    pref = math.exp(log_gamma(al + th + 2.0) - log_gamma(al + 1.0)
                    - log_gamma(th + 1.0)) * u ** (-(al + be + th + 3.0))
    value = pref * ((al + th + 2.0) * f1.value + be * f2.value)
    tail = abs(pref) * ((al + th + 2.0) * f1.tail_bound + abs(be) * f2.tail_bound)
    return SeriesResult(value, f1.terms_used + f2.terms_used, tail)


def ball_full_kernel_series(params: BallParams, z: Point2, w: Point2,
                            cfg: TruncationConfig | None = None) -> SeriesResult:
    """Cross-check path: direct summation of ball_qN_kernel over N with a
    geometric tail bound."""
    cfg = cfg or default_config()
    _require_ball(z, w)
    u = 1.0 - z.z1 * complex(w.z1).conjugate()
    x = z.z2 * complex(w.z2).conjugate() / u
    q = abs(x)
    if q >= 1.0:
        raise DomainError(f"series ratio |x| = {q:.6f} >= 1 at these points")
    total = 0.0 + 0.0j
    tail = math.inf
    small_streak = 0
    for N in range(cfg.max_outer_terms):
        term = ball_qN_kernel(params, N, z, w)
        total += term
        # term ratio tends to |x| as the embed constants vary slowly in N
        tail = cfg.safety_factor * abs(term) * q / (1.0 - q) if q > 0 else 0.0
        if tail <= cfg.tolerance * max(1.0, abs(total)):
            small_streak += 1
            if small_streak >= cfg.consecutive_small:
                return SeriesResult(total, N + 1, tail)
        else:
            small_streak = 0
    from .errors import ConvergenceError
    raise ConvergenceError(
        f"ball kernel series did not converge in {cfg.max_outer_terms} terms",
        terms_used=cfg.max_outer_terms, tail_estimate=tail)


def ball_hardy_norm_expansion(beta: float, theta: float,
                              f: BiPoly) -> NormExpansion:
    """Surface-measure norm expansion: weights 1/[(beta+theta+N+1) (N!)^2],
    1D indices beta+theta+N; the alpha -> -1 limit with the (alpha+1)(alpha+2)
    normalization."""
    if beta + theta <= -1:
        raise DomainError("ball_hardy_norm_expansion requires beta + theta > -1")
    terms = []
    for N in range(f.degree_in(2) + 1 if not f.is_zero() else 0):
        g = f.differentiate(2, N).restrict_z2_zero()
        if g.is_zero():
            terms.append((N, 0.0))
            continue
        weight = 1.0 / ((beta + theta + N + 1.0) * math.factorial(N) ** 2)
        terms.append((N, weight * disk_norm_sq(g, beta + theta + N)))
    return NormExpansion(tuple(terms), sum(v for _, v in terms))
