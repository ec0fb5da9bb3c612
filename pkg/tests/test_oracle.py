import math

import numpy as np
import pytest

from kernelforge import oracle
from kernelforge.errors import ConditioningError, DomainError
from kernelforge.poly2 import BiPoly


def test_disk_and_fock_moments():
    assert oracle.disk_moment(0.0, 0) == pytest.approx(1.0)
    assert oracle.disk_moment(0.0, 1) == pytest.approx(0.5)
    assert oracle.fock_moment(1.0, 3) == pytest.approx(6.0)
    assert oracle.fock_moment(2.0, 1) == pytest.approx(0.25)


def test_bidisk_theta_zero_diagonal():
    g = oracle.gram_bidisk_exact(0.5, 1.0, 0.0, 4)
    for d in range(5):
        blk = g.blocks[d]
        assert np.allclose(blk, np.diag(np.diag(blk)))
        for m in range(d + 1):
            expect = oracle.disk_moment(0.5, m) * oracle.disk_moment(1.0, d - m)
            assert blk[m, m] == pytest.approx(expect, rel=1e-14)


def test_bidisk_theta_one_entries():
    g = oracle.gram_bidisk_exact(0.0, 0.0, 1.0, 2)
    assert g.blocks[0][0, 0] == pytest.approx(1.0)        # total weight mass
    assert g.blocks[1][0, 1] == pytest.approx(-0.25)      # <z1, z2>


def test_exact_grams_need_integer_theta():
    with pytest.raises(DomainError):
        oracle.gram_bidisk_exact(0.0, 0.0, 0.5, 2)
    with pytest.raises(DomainError):
        oracle.gram_fock_exact(1.0, 1.0, 1.5, 2)


def test_fock_exact_values():
    g = oracle.gram_fock_exact(1.0, 1.0, 0.0, 3)
    for d in range(4):
        for m in range(d + 1):
            assert g.blocks[d][m, m] == pytest.approx(
                math.factorial(m) * math.factorial(d - m))
    g1 = oracle.gram_fock_exact(1.0, 1.0, 1.0, 0)
    assert g1.blocks[0][0, 0] == pytest.approx(2.0)


def test_hardy_torus_values():
    g0 = oracle.gram_hardy_torus_exact(0.0, 2)
    assert g0.norm_sq(BiPoly.parse("z1-z2")) == pytest.approx(2.0)
    g1 = oracle.gram_hardy_torus_exact(1.0, 3)
    assert g1.norm_sq(BiPoly.parse("z1*z2")) == pytest.approx(2.0)


def test_ball_monomial_norms():
    assert oracle.ball_monomial_norm(0, 0, 0, 0, 0) == pytest.approx(0.5)
    assert oracle.ball_monomial_norm(0, 0, 0, 0, 1) == pytest.approx(1 / 6)
    g = oracle.ball_monomial_norms(0.5, 1.0, 0.25, 3)
    assert np.allclose(g.blocks[2], np.diag(np.diag(g.blocks[2])))


def test_blocks_hermitian_positive():
    for g in (oracle.gram_bidisk_exact(0.3, 0.9, 2.0, 6),
              oracle.gram_fock_exact(1.5, 0.5, 1.0, 6)):
        for blk in g.blocks:
            assert np.max(np.abs(blk - blk.T)) < 1e-14 * max(np.max(np.abs(blk)), 1)
            assert np.linalg.eigvalsh(blk).min() > 0


def test_gram_numeric_matches_exact_bidisk():
    ge = oracle.gram_bidisk_exact(0.4, 0.7, 1.0, 3)
    gn = oracle.gram_numeric("bidisk", {"alpha": 0.4, "beta": 0.7,
                                        "theta": 1.0, "vartheta": 0.0}, 3)
    assert not gn.exact and gn.quad_error is not None
    for a, b in zip(gn.blocks, ge.blocks):
        assert np.max(np.abs(a - b)) < 1e-8


def test_gram_numeric_matches_exact_fock():
    ge = oracle.gram_fock_exact(1.0, 2.0, 2.0, 3)
    gn = oracle.gram_numeric("fock", {"alpha": 1.0, "beta": 2.0, "theta": 2.0}, 3)
    for a, b in zip(gn.blocks, ge.blocks):
        assert np.max(np.abs(a - b)) < 1e-8


def test_mc_cross_check_bidisk_entry():
    params = {"alpha": 0.0, "beta": 0.0, "theta": 1.0, "vartheta": 0.0}
    exact = oracle.gram_bidisk_exact(0.0, 0.0, 1.0, 1).blocks[1][0, 1]
    mc, se = oracle.mc_gram_entry("bidisk", params, (1, 0), (0, 1),
                                  n_samples=100_000, seed=5)
    assert abs(mc - exact) < 3 * se


def test_mc_cross_check_fock_entry():
    params = {"alpha": 1.0, "beta": 1.0, "theta": 1.0}
    exact = oracle.gram_fock_exact(1.0, 1.0, 1.0, 0).blocks[0][0, 0]
    mc, se = oracle.mc_gram_entry("fock", params, (0, 0), (0, 0),
                                  n_samples=100_000, seed=5)
    assert abs(mc - exact) < 3 * se


def test_kernel_blocks_product_case():
    kb = oracle.gram_kernel_blocks(oracle.gram_bidisk_exact(0.0, 0.5, 0.0, 4))
    for d, blk in enumerate(kb):
        for m in range(d + 1):
            expect = 1.0 / (oracle.disk_moment(0.0, m)
                            * oracle.disk_moment(0.5, d - m))
            assert blk[m, m] == pytest.approx(expect, rel=1e-12)


def test_kernel_blocks_reject_ill_conditioned():
    g = oracle.gram_bidisk_exact(0.0, 0.0, 0.0, 1)
    g.blocks[1][:] = [[1.0, 1.0], [1.0, 1.0 + 1e-15]]
    with pytest.raises(ConditioningError):
        oracle.gram_kernel_blocks(g)


def test_reproducing_property_via_gram_pairing():
    # <f, K(., w)> = f(w) when paired through the same Gram blocks
    g = oracle.gram_bidisk_exact(0.0, 0.0, 1.0, 6)
    kb = oracle.gram_kernel_blocks(g)
    f = BiPoly.parse("z1^2*z2 - 3*z1 + (0,1)*z2^2")
    w1, w2 = 0.3 - 0.2j, 0.1 + 0.4j
    section = oracle.kernel_section(kb, w1, w2)
    assert abs(g.inner_product(f, section) - f.evaluate(w1, w2)) < 1e-9


def test_project_basic():
    g = oracle.gram_bidisk_exact(0.0, 0.0, 0.0, 4)
    f = BiPoly.parse("z1")
    p1, q1 = oracle.project(g, f, 1)
    # P_1[z1] = (1/2)(z1 - z2)
    assert p1.coeffs[(1, 0)] == pytest.approx(0.5)
    assert p1.coeffs[(0, 1)] == pytest.approx(-0.5)
    # member of the subspace projects to itself
    h = BiPoly.parse("z1^2 - z2^2")
    ph, _ = oracle.project(g, h, 1)
    assert (ph - h).max_abs_coeff() < 1e-12


def test_project_residual_orthogonality():
    rng = np.random.default_rng(0)
    g = oracle.gram_bidisk_exact(0.5, 0.0, 1.0, 5)
    f = BiPoly({(m, n): complex(*rng.standard_normal(2))
                for m in range(3) for n in range(3)})
    for N in range(1, 4):
        pN, _ = oracle.project(g, f, N)
        d = BiPoly.parse("z1-z2")
        basis_elt = d
        for _ in range(N - 1):
            basis_elt = basis_elt * d
        for extra in (BiPoly.parse("1"), BiPoly.parse("z1"), BiPoly.parse("z2^2")):
            gvec = basis_elt * extra
            assert abs(g.inner_product(f - pN, gvec)) < 1e-10


def test_project_qn_norms_sum_to_total():
    g = oracle.gram_fock_exact(1.0, 2.0, 1.0, 5)
    f = BiPoly.parse("z1^2*z2 + z2 - 2")
    total = sum(g.norm_sq(oracle.project(g, f, N)[1])
                for N in range(f.total_degree + 1))
    assert total == pytest.approx(g.norm_sq(f), rel=1e-12)


def test_gram_json_roundtrip(tmp_path):
    g = oracle.gram_bidisk_exact(0.0, 0.0, 1.0, 3)
    path = tmp_path / "gram.json"
    g.save(path)
    g2 = oracle.GramBlocks.load(path)
    assert g2.space == g.space and g2.exact
    for a, b in zip(g.blocks, g2.blocks):
        assert np.array_equal(a, b)
