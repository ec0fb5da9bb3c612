"""Independent ground truth: Gram matrices of monomials, block-diagonal by
total degree (rotation invariance of every weight makes cross-degree inner
products vanish).

Exact blocks exist for integer theta (binomial expansion of |z1-z2|^{2theta}
against 1D radial moments); everything else goes through dimension-reduced
adaptive quadrature.  Kernel Taylor blocks are the exact inverses of the Gram
blocks, and orthogonal projections onto the vanishing-order subspaces are
solved per degree block.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.special import roots_genlaguerre, roots_jacobi, roots_legendre

from .errors import ConditioningError, DomainError, QuadratureError
from .poly2 import BiPoly
from .specfun import log_gamma

COND_LIMIT = 1e12


def disk_moment(alpha: float, p: int) -> float:
    """int |z|^{2p} dA_alpha over the unit disk = p! / (alpha+2)_p."""
    return math.exp(log_gamma(p + 1.0) + log_gamma(alpha + 2.0)
                    - log_gamma(alpha + 2.0 + p))


def fock_moment(gamma: float, p: int) -> float:
    """int |z|^{2p} e^{-gamma |z|^2} dA over C = p! / gamma^{p+1}."""
    return math.exp(log_gamma(p + 1.0) - (p + 1.0) * math.log(gamma))


def monomials(degree: int) -> list[tuple[int, int]]:
    """Index convention for degree-d blocks: row m holds monomial z1^m z2^(d-m)."""
    return [(m, degree - m) for m in range(degree + 1)]


@dataclass
class GramBlocks:
    """Per-degree Hermitian Gram matrices of monomials plus provenance."""

    space: str
    params: dict
    blocks: list = field(default_factory=list)
    exact: bool = True
    quad_error: float | None = None

    @property
    def max_degree(self) -> int:
        return len(self.blocks) - 1

    def block(self, degree: int) -> np.ndarray:
        if degree < 0 or degree > self.max_degree:
            raise DomainError(f"no Gram block for degree {degree}")
        return self.blocks[degree]

    def variety_exponent(self, key: tuple[int, int], order: int) -> bool:
        """Whether monomial z1^m z2^n lies in N_order for this space's variety."""
        if self.space == "ball":
            return key[1] >= order
        raise DomainError("variety membership by monomial only defined for ball")

    def inner_product(self, f: BiPoly, g: BiPoly) -> complex:
        """<f, g> in the space; requires deg <= max_degree."""
        deg = max(f.total_degree, g.total_degree)
        if deg > self.max_degree:
            raise DomainError(
                f"degree {deg} exceeds Gram table max degree {self.max_degree}")
        total = 0.0 + 0.0j
        for d in range(deg + 1):
            fv = _degree_vector(f, d)
            gv = _degree_vector(g, d)
            if fv is None or gv is None:
                continue
            total += fv @ (self.blocks[d] @ np.conj(gv))
        return total

    def norm_sq(self, f: BiPoly) -> float:
        return self.inner_product(f, f).real

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "params": self.params,
            "exact": self.exact,
            "quad_error": self.quad_error,
            "blocks": [b.tolist() for b in self.blocks],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GramBlocks":
        return cls(space=data["space"], params=data["params"],
                   blocks=[np.asarray(b, dtype=float) for b in data["blocks"]],
                   exact=data["exact"], quad_error=data.get("quad_error"))

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)

    @classmethod
    def load(cls, path) -> "GramBlocks":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def _degree_vector(f: BiPoly, degree: int):
    vec = np.zeros(degree + 1, dtype=complex)
    hit = False
    for (m, n), c in f.coeffs.items():
        if m + n == degree:
            vec[m] = c
            hit = True
    return vec if hit else None


def _require_integer_theta(theta: float) -> int:
    if abs(theta - round(theta)) > 1e-12 or theta < 0:
        raise DomainError(f"exact Gram blocks need integer theta >= 0, got {theta}")
    return int(round(theta))


def _binomial_gram_block(degree: int, theta: int, moment1, moment2) -> np.ndarray:
    """Shared expansion of |z1-z2|^{2 theta} against per-variable radial
    moments; moment_i(p) is the p-th absolute moment of variable i."""
    size = degree + 1
    block = np.zeros((size, size))
    binom = [math.comb(theta, i) for i in range(theta + 1)]
    for m1 in range(size):
        n1 = degree - m1
        for m2 in range(m1, size):
            shift = m1 - m2
            total = 0.0
            for i in range(theta + 1):
                j = i + shift
                if 0 <= j <= theta:
                    sign = -1.0 if (i + j) % 2 else 1.0
                    total += (sign * binom[i] * binom[j]
                              * moment1(m1 + i) * moment2(n1 + theta - i))
            block[m1, m2] = total
            block[m2, m1] = total
    return block


def gram_bidisk_exact(alpha: float, beta: float, theta: float,
                      max_degree: int) -> GramBlocks:
    """Exact bidisk Gram blocks for integer theta, vartheta = 0."""
    th = _require_integer_theta(theta)
    if alpha <= -1 or beta <= -1:
        raise DomainError("alpha, beta must exceed -1")
    blocks = [
        _binomial_gram_block(d, th,
                             lambda p: disk_moment(alpha, p),
                             lambda p: disk_moment(beta, p))
        for d in range(max_degree + 1)
    ]
    return GramBlocks("bidisk", {"alpha": alpha, "beta": beta,
                                 "theta": float(th), "vartheta": 0.0}, blocks)


def gram_fock_exact(alpha: float, beta: float, theta: float,
                    max_degree: int) -> GramBlocks:
    """Exact Fock Gram blocks for integer theta."""
    th = _require_integer_theta(theta)
    if alpha <= 0 or beta <= 0:
        raise DomainError("alpha, beta must be positive")
    blocks = [
        _binomial_gram_block(d, th,
                             lambda p: fock_moment(alpha, p),
                             lambda p: fock_moment(beta, p))
        for d in range(max_degree + 1)
    ]
    return GramBlocks("fock", {"alpha": alpha, "beta": beta, "theta": float(th)},
                      blocks)


def gram_hardy_torus_exact(theta: float, max_degree: int) -> GramBlocks:
    """Torus Gram blocks for the weighted Hardy norm, integer theta.

    All torus moments equal 1, so entries are pure binomial sums."""
    th = _require_integer_theta(theta)
    blocks = [
        _binomial_gram_block(d, th, lambda p: 1.0, lambda p: 1.0)
        for d in range(max_degree + 1)
    ]
    return GramBlocks("hardy_bidisk", {"theta": float(th)}, blocks)


def ball_monomial_norm(alpha: float, beta: float, theta: float,
                       m: int, n: int) -> float:
    """||z1^m z2^n||^2 in the weighted ball space (2D norm unnormalized)."""
    return math.exp(
        log_gamma(m + 1.0) + log_gamma(n + theta + alpha + beta + 2.0)
        - log_gamma(m + n + theta + alpha + beta + 3.0)
        + log_gamma(n + theta + 1.0) + log_gamma(alpha + 1.0)
        - log_gamma(n + theta + alpha + 2.0))


def ball_monomial_norms(alpha: float, beta: float, theta: float,
                        max_degree: int) -> GramBlocks:
    """Diagonal Gram blocks of the ball space (radial weights make monomials
    orthogonal)."""
    if alpha <= -1 or beta <= -1 or theta <= -1:
        raise DomainError("ball parameters must exceed -1")
    blocks = []
    for d in range(max_degree + 1):
        diag = [ball_monomial_norm(alpha, beta, theta, m, d - m)
                for m in range(d + 1)]
        blocks.append(np.diag(diag))
    return GramBlocks("ball", {"alpha": alpha, "beta": beta, "theta": theta},
                      blocks)


def ball_hardy_monomial_norm(beta: float, theta: float, m: int, n: int) -> float:
    """Surface-measure norm of z1^m z2^n: the alpha -> -1 limit of
    (alpha+1)(alpha+2) times the ball norm."""
    return math.exp(log_gamma(m + 1.0) + log_gamma(n + theta + beta + 1.0)
                    - log_gamma(m + n + theta + beta + 2.0))


# ---------------------------------------------------------------------------
# numeric Gram blocks (non-integer parameters)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureConfig:
    """Adaptive order-doubling control.

    Integer theta integrands are polynomial after the angular reduction and
    converge at the first doubling; non-integer vartheta weights converge
    spectrally.  Non-integer theta puts an algebraic kink along t1 = t2 that
    tensor Gauss rules resolve only at an algebraic rate, so such calls may
    need a relaxed tolerance or a larger max_order."""

    tolerance: float = 1e-10
    start_order: int = 32
    max_order: int = 256


def _angular_nodes(n: int, theta: float):
    """Nodes/weights on (0, pi); graded toward 0 when the angular factor has
    an integrable singularity there (theta < 0)."""
    x, w = roots_legendre(n)
    u = 0.5 * (x + 1.0)
    wu = 0.5 * w
    if theta < 0:
        psi = math.pi * u ** 3
        wpsi = wu * 3.0 * math.pi * u ** 2
    else:
        psi = math.pi * u
        wpsi = wu * math.pi
    return psi, wpsi


def _angular_reduce(t1, t2, psi, wpsi, max_delta, theta, vartheta):
    """cang[delta, i, j] = int_0^pi cos(delta psi) W(t1_i, t2_j, psi) dpsi,
    accumulated in angular chunks to bound memory."""
    cross = np.sqrt(np.outer(t1, t2))
    mix = 1.0 + np.outer(t1, t2)
    deltas = np.arange(max_delta + 1)
    cang = np.zeros((max_delta + 1, t1.size, t2.size))
    chunk = max(1, (1 << 22) // (t1.size * t2.size))
    for k0 in range(0, psi.size, chunk):
        cosv = np.cos(psi[k0:k0 + chunk])
        g_diff = (t1[:, None, None] + t2[None, :, None]
                  - 2.0 * cross[:, :, None] * cosv)
        wgt = g_diff ** theta
        if vartheta != 0.0:
            wgt = wgt * (mix[:, :, None] - 2.0 * cross[:, :, None] * cosv) ** vartheta
        cosmat = np.cos(np.outer(deltas, psi[k0:k0 + chunk])) * wpsi[k0:k0 + chunk]
        cang += np.einsum("dk,ijk->dij", cosmat, wgt)
    return cang


def _bidisk_blocks_at_order(alpha, beta, theta, vartheta, max_degree, n):
    xj1, wj1 = roots_jacobi(n, alpha, 0.0)
    xj2, wj2 = roots_jacobi(n, beta, 0.0)
    s1 = 0.5 * (xj1 + 1.0)
    s2 = 0.5 * (xj2 + 1.0)
    wr1 = wj1 * 2.0 ** (-alpha - 1.0)
    wr2 = wj2 * 2.0 ** (-beta - 1.0)
    psi, wpsi = _angular_nodes(2 * n, theta)
    cang = _angular_reduce(s1 ** 2, s2 ** 2, psi, wpsi, max_degree,
                           theta, vartheta)

    powers = np.arange(2 * max_degree + 1)
    r1 = (wr1 * (1.0 + s1) ** alpha) * s1 ** (powers[:, None] + 1.0)
    r2 = (wr2 * (1.0 + s2) ** beta) * s2 ** (powers[:, None] + 1.0)
    integrals = 4.0 * np.einsum("ai,bj,dij->abd", r1, r2, cang)

    pref = (alpha + 1.0) * (beta + 1.0) / math.pi
    blocks = []
    for d in range(max_degree + 1):
        size = d + 1
        block = np.zeros((size, size))
        for m1 in range(size):
            for m2 in range(size):
                block[m1, m2] = pref * integrals[m1 + m2, 2 * d - m1 - m2,
                                                 abs(m1 - m2)]
        blocks.append(block)
    return blocks


def _fock_blocks_at_order(alpha, beta, theta, max_degree, n):
    u1, w1 = roots_genlaguerre(n, 0.0)
    u2, w2 = roots_genlaguerre(n, 0.0)
    t1, wt1 = u1 / alpha, w1 / alpha
    t2, wt2 = u2 / beta, w2 / beta
    psi, wpsi = _angular_nodes(2 * n, theta)
    cang = _angular_reduce(t1, t2, psi, wpsi, max_degree, theta, 0.0)
    # cos(delta psi) pairs only with powers (sqrt(t1 t2))^{delta + even} of the
    # angular weight, so t^{a/2} cang[delta] has integral powers of t (a and
    # delta share parity) and plain Laguerre nodes integrate it exactly for
    # integer theta.
    blocks = []
    for d in range(max_degree + 1):
        size = d + 1
        block = np.zeros((size, size))
        for m1 in range(size):
            for m2 in range(size):
                a = m1 + m2
                b = 2 * d - a
                r1 = wt1 * t1 ** (a / 2.0)
                r2 = wt2 * t2 ** (b / 2.0)
                block[m1, m2] = (r1 @ cang[abs(m1 - m2)] @ r2) / math.pi
        blocks.append(block)
    return blocks


def gram_numeric(space: str, params: dict, max_degree: int,
                 quad: QuadratureConfig | None = None) -> GramBlocks:
    """Gram blocks by adaptive tensor quadrature for arbitrary valid
    parameters; the attached quad_error is the last inter-order change."""
    quad = quad or QuadratureConfig()
    if space == "bidisk":
        alpha, beta = params["alpha"], params["beta"]
        theta, vartheta = params["theta"], params.get("vartheta", 0.0)
        if min(alpha, beta, theta, vartheta) <= -1:
            raise DomainError("bidisk parameters must exceed -1")

        def compute(n):
            return _bidisk_blocks_at_order(alpha, beta, theta, vartheta,
                                           max_degree, n)
    elif space == "fock":
        alpha, beta, theta = params["alpha"], params["beta"], params["theta"]
        if alpha <= 0 or beta <= 0 or theta <= -1:
            raise DomainError("fock parameters require alpha, beta > 0, theta > -1")

        def compute(n):
            return _fock_blocks_at_order(alpha, beta, theta, max_degree, n)
    else:
        raise DomainError(f"gram_numeric does not support space {space!r}")

    n = quad.start_order
    prev = compute(n)
    err = math.inf
    while n <= quad.max_order:
        n *= 2
        cur = compute(n)
        scale = max(max(np.max(np.abs(b)) for b in cur), 1.0)
        err = max(np.max(np.abs(c - p)) for c, p in zip(cur, prev))
        if err <= quad.tolerance * scale:
            return GramBlocks(space, dict(params), cur, exact=False,
                              quad_error=float(err))
        prev = cur
    worst = _worst_entry_change(cur, prev)
    raise QuadratureError(
        f"gram_numeric({space}) did not converge: worst entry {worst} "
        f"changed by {err:.3e} at order {n}")


def _worst_entry_change(cur, prev):
    worst = (0, 0, 0)
    best = -1.0
    for d, (c, p) in enumerate(zip(cur, prev)):
        diff = np.abs(c - p)
        idx = np.unravel_index(np.argmax(diff), diff.shape)
        if diff[idx] > best:
            best = diff[idx]
            worst = (d, int(idx[0]), int(idx[1]))
    return worst


# ---------------------------------------------------------------------------
# kernel reconstruction and projections
# ---------------------------------------------------------------------------

def gram_kernel_blocks(gram: GramBlocks) -> list:
    """Per-degree kernel Taylor blocks K_d = G_d^{-1}.

    Because the Gram table is block-diagonal by total degree, these inverses
    are the exact Taylor blocks of the true kernel, not truncation artifacts."""
    out = []
    for d, g in enumerate(gram.blocks):
        if np.linalg.cond(g) > COND_LIMIT:
            raise ConditioningError(
                f"Gram block degree {d} has condition number above {COND_LIMIT:.0e}")
        try:
            factor = cho_factor(g)
        except np.linalg.LinAlgError as exc:
            raise ConditioningError(f"Gram block degree {d} is not positive "
                                    f"definite: {exc}") from exc
        out.append(cho_solve(factor, np.eye(d + 1)))
    return out


def kernel_from_blocks(kernel_blocks: list, z1, z2, w1, w2) -> complex:
    """Evaluate sum_d sum_{i,j} K_d[i,j] mono_i(z) conj(mono_j(w))."""
    total = 0.0 + 0.0j
    for d, kd in enumerate(kernel_blocks):
        mz = np.array([z1 ** m * z2 ** (d - m) for m in range(d + 1)])
        mw = np.array([w1 ** m * w2 ** (d - m) for m in range(d + 1)])
        total += mz @ kd @ np.conj(mw)
    return total


def kernel_section(kernel_blocks: list, w1, w2) -> BiPoly:
    """The function z -> K(z, w) as a polynomial in z (degree-truncated)."""
    coeffs: dict = {}
    for d, kd in enumerate(kernel_blocks):
        mw = np.conj(np.array([w1 ** m * w2 ** (d - m) for m in range(d + 1)]))
        vec = kd @ mw
        for m in range(d + 1):
            coeffs[(m, d - m)] = coeffs.get((m, d - m), 0) + vec[m]
    return BiPoly(coeffs)


def _variety_basis(space: str, degree: int, order: int) -> np.ndarray | None:
    """Monomial-coordinate basis of N_order within total degree `degree`."""
    if degree < order:
        return None
    cols = degree - order + 1
    basis = np.zeros((degree + 1, cols))
    if space == "ball":
        for j in range(cols):
            basis[j, j] = 1.0  # z1^j z2^{degree-j} with degree-j >= order
        # columns are monomials z1^j z2^{d-j} for d-j >= order, i.e. j <= d-order
        return basis
    # diagonal variety: columns are (z1-z2)^order * z1^j z2^{degree-order-j}
    diag_pow = [math.comb(order, i) * (-1.0) ** (order - i) for i in range(order + 1)]
    for j in range(cols):
        for i, c in enumerate(diag_pow):
            basis[i + j, j] += c
    return basis


def project(gram: GramBlocks, f: BiPoly, order: int) -> tuple[BiPoly, BiPoly]:
    """Orthogonal projections (P_order f, Q_order f) onto the subspace of
    functions vanishing to the given order along the space's variety."""
    p_lo = _project_nullspace(gram, f, order)
    p_hi = _project_nullspace(gram, f, order + 1)
    return p_lo, p_lo - p_hi


def _project_nullspace(gram: GramBlocks, f: BiPoly, order: int) -> BiPoly:
    if f.total_degree > gram.max_degree:
        raise DomainError("polynomial degree exceeds the Gram table")
    space = "ball" if gram.space == "ball" else "diag"
    coeffs: dict = {}
    for d in range(max(f.total_degree, -1) + 1):
        fv = _degree_vector(f, d)
        if fv is None:
            continue
        basis = _variety_basis(space, d, order)
        if basis is None:
            continue
        g = gram.blocks[d]
        normal = basis.T @ g @ basis
        if np.linalg.cond(normal) > COND_LIMIT:
            raise ConditioningError(
                f"projection normal matrix at degree {d} is ill-conditioned")
        sol = np.linalg.solve(normal, basis.T @ (g @ fv))
        pv = basis @ sol
        for m in range(d + 1):
            if pv[m] != 0:
                coeffs[(m, d - m)] = coeffs.get((m, d - m), 0) + pv[m]
    return BiPoly(coeffs)


# ---------------------------------------------------------------------------
# seeded Monte Carlo cross-check (secondary; never an acceptance arbiter)
# ---------------------------------------------------------------------------

def mc_gram_entry(space: str, params: dict, key1: tuple[int, int],
                  key2: tuple[int, int], n_samples: int = 200_000,
                  seed: int = 0) -> tuple[float, float]:
    """Monte Carlo estimate (mean, standard error) of one Gram entry, with
    conjugation-antithetic pairs."""
    rng = np.random.default_rng(seed)
    m1, n1 = key1
    m2, n2 = key2
    if space == "bidisk":
        alpha, beta = params["alpha"], params["beta"]
        theta, vartheta = params["theta"], params.get("vartheta", 0.0)
        t1 = rng.beta(1.0, alpha + 1.0, n_samples)
        t2 = rng.beta(1.0, beta + 1.0, n_samples)
        z1 = np.sqrt(t1) * np.exp(1j * rng.uniform(0, 2 * np.pi, n_samples))
        z2 = np.sqrt(t2) * np.exp(1j * rng.uniform(0, 2 * np.pi, n_samples))
        scale = 1.0

        def extra(a, b):
            w = np.abs(a - b) ** (2 * theta)
            if vartheta != 0.0:
                w = w * np.abs(1 - np.conj(b) * a) ** (2 * vartheta)
            return w
    elif space == "fock":
        alpha, beta, theta = params["alpha"], params["beta"], params["theta"]
        t1 = rng.exponential(1.0 / alpha, n_samples)
        t2 = rng.exponential(1.0 / beta, n_samples)
        z1 = np.sqrt(t1) * np.exp(1j * rng.uniform(0, 2 * np.pi, n_samples))
        z2 = np.sqrt(t2) * np.exp(1j * rng.uniform(0, 2 * np.pi, n_samples))
        scale = 1.0 / (alpha * beta)

        def extra(a, b):
            return np.abs(a - b) ** (2 * theta)
    else:
        raise DomainError(f"mc_gram_entry does not support space {space!r}")

    def integrand(a, b):
        return (a ** m1 * np.conj(a) ** m2 * b ** n1 * np.conj(b) ** n2
                * extra(a, b))

    vals = scale * 0.5 * (integrand(z1, z2) + integrand(np.conj(z1), np.conj(z2)))
    vals = vals.real
    mean = float(np.mean(vals))
    stderr = float(np.std(vals, ddof=1) / math.sqrt(n_samples))
    return mean, stderr
