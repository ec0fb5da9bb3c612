import math

import numpy as np
import pytest

from kernelforge import oracle
from kernelforge.config import Point2
from kernelforge.errors import DomainError
from kernelforge.fock import (FockParams, coeff_c, fock_cov_kernel,
                              fock_diag_kernel, fock_full_kernel,
                              fock_norm_expansion, fock_q0_kernel,
                              fock_restriction_transform, fock_sigma)
from kernelforge.poly2 import BiPoly


def test_params_validation():
    with pytest.raises(DomainError):
        FockParams(0.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        FockParams(1.0, 1.0, -1.0)
    assert FockParams(1.0, 2.0).gamma == pytest.approx(3.0)


def test_sigma_values():
    assert fock_sigma(FockParams(1, 1, 0)) == pytest.approx(1.0)
    assert fock_sigma(FockParams(2, 3, 0)) == pytest.approx(6.0)
    assert fock_sigma(FockParams(1, 1, 1)) == pytest.approx(0.5)


def test_diag_kernel():
    p = FockParams(1, 1, 0)
    z, w1 = Point2(0.4, -0.3j), 0.5 + 0.2j
    got = fock_diag_kernel(p, z, w1)
    expect = np.exp(np.conj(w1) * (z.z1 + z.z2))
    assert abs(got - expect) < 1e-12
    assert fock_diag_kernel(FockParams(2, 1, 1.5), Point2(0, 0), 0.7) == \
        pytest.approx(fock_sigma(FockParams(2, 1, 1.5)))


def test_q0_kernel_values():
    p = FockParams(1, 1, 1)
    assert fock_q0_kernel(p, Point2(1, 0), Point2(0, 1)) == \
        pytest.approx(math.exp(0.5) / 2)
    assert fock_q0_kernel(p, Point2(0, 0), Point2(0, 0)) == \
        pytest.approx(fock_sigma(p))
    # diagonal w reduces to the diagonal kernel
    z = Point2(0.3, -0.2)
    assert abs(fock_q0_kernel(p, z, Point2(0.4, 0.4))
               - fock_diag_kernel(p, z, 0.4)) < 1e-13


def test_full_kernel_theta_zero_product():
    p = FockParams(1.5, 0.5, 0)
    z, w = Point2(0.7 + 0.1j, -0.4), Point2(0.2, 1.1j)
    got = fock_full_kernel(p, z, w).value
    expect = (1.5 * 0.5 * np.exp(1.5 * z.z1 * np.conj(w.z1)
                                 + 0.5 * z.z2 * np.conj(w.z2)))
    assert abs(got - expect) < 1e-11 * abs(expect)


def test_full_kernel_diagonal_z():
    p = FockParams(1, 2, 0.7)
    got = fock_full_kernel(p, Point2(0.5, 0.5), Point2(0.3, -0.1)).value
    # Hermitian symmetry links it to the diagonal kernel at conjugate points
    expect = np.conj(fock_diag_kernel(p, Point2(0.3, -0.1), 0.5))
    assert abs(got - expect) < 1e-12 * abs(expect)


def test_full_vs_cov_kernel():
    rng = np.random.default_rng(8)
    for th in (0.0, 0.5, 1.0, 2.5):
        p = FockParams(1.3, 0.7, th)
        for _ in range(5):
            pts = rng.uniform(-2, 2, 8)
            z = Point2(complex(pts[0], pts[1]), complex(pts[2], pts[3]))
            w = Point2(complex(pts[4], pts[5]), complex(pts[6], pts[7]))
            a = fock_full_kernel(p, z, w).value
            b = fock_cov_kernel(p, z, w).value
            assert abs(a - b) <= 1e-10 * abs(a)


def test_full_kernel_against_oracle_blocks():
    p = FockParams(1, 1, 1)
    kb = oracle.gram_kernel_blocks(oracle.gram_fock_exact(1, 1, 1, 25))
    z, w = Point2(0.5, -0.5), Point2(1.0, 0.0)
    ref = oracle.kernel_from_blocks(kb, z.z1, z.z2, w.z1, w.z2)
    assert abs(fock_full_kernel(p, z, w).value - ref) < 1e-9


def test_coeff_c():
    p = FockParams(1, 1, 0)
    assert coeff_c(p, 2, 2) == 1.0
    assert coeff_c(p, 0, 1) == pytest.approx(-0.5)
    with pytest.raises(DomainError):
        coeff_c(p, 3, 2)


def test_restriction_transform():
    p = FockParams(1, 1, 0)
    assert fock_restriction_transform(p, BiPoly.parse("1"), 0).coeffs == \
        {0: 1.0 + 0j}
    assert fock_restriction_transform(p, BiPoly.parse("z1"), 0).coeffs == \
        {1: 1.0 + 0j}
    t = fock_restriction_transform(p, BiPoly.parse("z1 - z2"), 1)
    assert t.coeffs == {0: pytest.approx(1.0 + 0j)}


def test_restriction_transform_matches_oracle_projection():
    p = FockParams(1.0, 2.0, 1.0)
    g = oracle.gram_fock_exact(1.0, 2.0, 1.0, 4)
    f = BiPoly.parse("z1^2 + z2")
    pn, _ = oracle.project(g, f, 1)
    ref = pn.divide_diag_power(1).restrict_diagonal()
    t = fock_restriction_transform(p, f, 1)
    for m in set(ref.coeffs) | set(t.coeffs):
        assert t.coeffs.get(m, 0) == pytest.approx(ref.coeffs.get(m, 0),
                                                   abs=1e-12)


def test_norm_expansion_examples():
    assert fock_norm_expansion(FockParams(1, 1, 0), BiPoly.parse("1")).total \
        == pytest.approx(1.0)
    assert fock_norm_expansion(FockParams(1, 1, 0),
                               BiPoly.parse("z1 - z2")).total \
        == pytest.approx(2.0)


def test_norm_expansion_against_oracle():
    rng = np.random.default_rng(12)
    for th in (0, 1, 2):
        p = FockParams(1.0, 2.0, float(th))
        g = oracle.gram_fock_exact(1.0, 2.0, float(th), 6)
        for _ in range(3):
            f = BiPoly({(m, n): complex(*rng.standard_normal(2))
                        for m in range(3) for n in range(3)})
            assert fock_norm_expansion(p, f).total == pytest.approx(
                g.norm_sq(f), rel=1e-11)


def test_restriction_inequality():
    # the N=0 term alone is a lower bound for the norm
    from kernelforge.fock import fock_disk_norm_sq
    rng = np.random.default_rng(13)
    p = FockParams(1.0, 1.0, 1.0)
    g = oracle.gram_fock_exact(1.0, 1.0, 1.0, 4)
    for _ in range(5):
        f = BiPoly({(m, n): complex(*rng.standard_normal(2))
                    for m in range(3) for n in range(2)})
        # weight of the N=0 expansion term
        w0 = ((p.gamma / (p.alpha * p.beta)) ** (p.theta + 1)
              * math.gamma(p.theta + 1))
        lhs = w0 * fock_disk_norm_sq(f.restrict_diagonal(), p.gamma)
        assert lhs <= g.norm_sq(f) * (1 + 1e-9)
