import math

import numpy as np
import pytest

from tracemink.functionals import (
    PExponent,
    bks_sides,
    bks_subadditivity_sides,
    entropy,
    minkowski2_sides,
    minkowski3_sides,
    phi_p,
    psi_p,
    ssa_deficit,
)
from tracemink.matcore import DomainError, ShapeError, random_density, random_unitary
from tracemink.probes.identities import block_diag
from tracemink.tensor import kron

from .conftest import rand_psd
from .oracles import diag_phi, shannon


@pytest.mark.parametrize(
    "p, regime",
    [(0.3, "concave"), (1, "boundary"), (1.5, "conjecture"), (2, "convex_known"), (2.5, "failure")],
)
def test_exponent_regimes(p, regime):
    assert PExponent(p).regime == regime


def test_exponent_conjugate():
    e = PExponent(3.0)
    assert 1 / e.p + 1 / e.conjugate == pytest.approx(1)
    assert PExponent(0.5).conjugate is None
    with pytest.raises(ValueError):
        PExponent(0)


# --- phi_p ----------------------------------------------------------------------------------


@pytest.mark.parametrize("p", [0.25, 0.5, 1, 1.5, 2, 3])
def test_phi_single_argument(rng, p):
    A = rand_psd(rng, 3)
    assert phi_p([A], p) == pytest.approx(np.trace(A).real, rel=1e-12)


@pytest.mark.parametrize("p, d", [(0.5, 2), (2, 3), (3, 4)])
def test_phi_identities(p, d):
    assert phi_p([np.eye(d), np.eye(d)], p) == pytest.approx(d * 2 ** (1 / p), rel=1e-14)


def test_phi_p_one_is_trace(rng):
    A1, A2 = rand_psd(rng, 3), rand_psd(rng, 3)
    assert phi_p([A1, A2], 1) == pytest.approx(np.trace(A1 + A2).real, abs=1e-12)


@pytest.mark.parametrize("p", [0.25, 0.5, 2, 3.5])
def test_phi_diagonal_oracle(rng, p):
    a = rng.random((3, 4))
    got = phi_p([np.diag(r) for r in a], p)
    assert abs(got - diag_phi(a, p)) <= 1e-11


def test_phi_errors():
    with pytest.raises(ValueError):
        phi_p([], 2)
    with pytest.raises(ShapeError):
        phi_p([np.eye(2), np.eye(3)], 2)


@pytest.mark.parametrize("t", [0.1, 1, 7])
def test_phi_homogeneous(rng, t):
    As = [rand_psd(rng, 3) for _ in range(3)]
    assert phi_p([t * A for A in As], 0.7) == pytest.approx(t * phi_p(As, 0.7), rel=1e-10)


def test_phi_unitary_invariant_and_symmetric(rng):
    As = [rand_psd(rng, 4) for _ in range(3)]
    U = random_unitary(4, rng)
    base = phi_p(As, 1.3)
    assert phi_p([U @ A @ U.conj().T for A in As], 1.3) == pytest.approx(base, rel=1e-10)
    assert phi_p(As[::-1], 1.3) == pytest.approx(base, rel=1e-12)


# --- psi_p ----------------------------------------------------------------------------------


def test_psi_product_with_identity(rng):
    B = rand_psd(rng, 3)
    for p in (0.5, 2, 3):
        assert psi_p(kron(B, np.eye(2)), (3, 2), p) == pytest.approx(2 ** (1 / p) * np.trace(B).real, rel=1e-12)


def test_psi_p_one_is_trace(rng):
    A = rand_psd(rng, 6)
    assert psi_p(A, (2, 3), 1) == pytest.approx(np.trace(A).real, rel=1e-12)


def test_psi_block_diagonal_reduces_to_phi(rng):
    A1, A2 = rand_psd(rng, 3), rand_psd(rng, 3)
    # block index is the slow factor, so the partial trace runs over factor 0
    got = psi_p(block_diag(A1, A2), (2, 3), 0.5, traced=0)
    assert got == pytest.approx(phi_p([A1, A2], 0.5), rel=1e-9)


def test_psi_diagonal_oracle(rng):
    a = rng.random((2, 3))
    p = 0.6
    expected = sum(np.sum(a[i] ** p) ** (1 / p) for i in range(2))
    assert abs(psi_p(np.diag(a.ravel()), (2, 3), p) - expected) <= 1e-11


# --- entropy --------------------------------------------------------------------------------


def test_entropy_pure_and_maximally_mixed(rng):
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    v /= np.linalg.norm(v)
    assert abs(entropy(np.outer(v, v.conj()))) <= 1e-12
    for d in (2, 3, 8):
        assert entropy(np.eye(d) / d) == pytest.approx(math.log(d), rel=1e-14)


def test_entropy_classical():
    q = [1 / 2, 1 / 3, 1 / 6]
    assert entropy(np.diag(q)) == pytest.approx(shannon(q), abs=1e-15)


def test_entropy_bounds_and_trace_check(rng):
    rho = random_density(5, rng)
    assert 0 <= entropy(rho) <= math.log(5)
    with pytest.raises(DomainError):
        entropy(2 * rho)


# --- SSA deficit ----------------------------------------------------------------------------


def test_ssa_product_state_is_zero(rng):
    # entropy is additive on products, so all four terms cancel
    rhos = [random_density(2, rng) for _ in range(3)]
    assert abs(ssa_deficit(kron(*rhos), (2, 2, 2))) <= 1e-12


def test_ssa_maximally_mixed_is_zero():
    # 2 ln 4 - ln 8 - ln 2 = 0
    assert abs(ssa_deficit(np.eye(8) / 8, (2, 2, 2))) <= 1e-14


def test_ssa_bell_pair_times_mixed():
    # Bell pair on factors 1,2; factor 3 maximally mixed:
    # S13 = S23 = 2 ln 2, S123 = S3 = ln 2  ->  deficit 2 ln 2
    phi = np.array([1, 0, 0, 1]) / math.sqrt(2)
    rho = kron(np.outer(phi, phi), np.eye(2) / 2)
    assert ssa_deficit(rho, (2, 2, 2)) == pytest.approx(2 * math.log(2), abs=1e-12)


def test_ssa_classical_copy():
    # x = y a fair bit, z an independent fair bit: deficit ln 2
    f = np.zeros((2, 2, 2))
    for b in range(2):
        f[b, b, :] = 1 / 4
    assert ssa_deficit(np.diag(f.ravel()), (2, 2, 2)) == pytest.approx(math.log(2), abs=1e-14)


def test_ssa_diagonal_oracle(rng):
    f = rng.random((2, 3, 2))
    f /= f.sum()
    expected = shannon(f.sum(axis=1)) + shannon(f.sum(axis=0)) - shannon(f) - shannon(f.sum(axis=(0, 1)))
    assert abs(ssa_deficit(np.diag(f.ravel()), f.shape) - expected) <= 1e-11


def test_ssa_nonnegative_on_random(rng):
    for _ in range(50):
        assert ssa_deficit(random_density(12, rng), (2, 3, 2)) >= -1e-9


# --- Minkowski sides ------------------------------------------------------------------------


def test_minkowski2_p1_equal(rng):
    A = rand_psd(rng, 6)
    lhs, rhs = minkowski2_sides(A, (2, 3), 1)
    tr = np.trace(A).real
    assert lhs == pytest.approx(tr, rel=1e-12) and rhs == pytest.approx(tr, rel=1e-12)


@pytest.mark.parametrize("p", [0.5, 2, 4])
def test_minkowski2_product_equality(rng, p):
    A1, A2 = rand_psd(rng, 2), rand_psd(rng, 3)
    lhs, rhs = minkowski2_sides(kron(A1, A2), (2, 3), p)
    # both sides equal Tr A1 * (Tr A2^p)^(1/p)
    expected = np.trace(A1).real * np.sum(np.linalg.eigvalsh(A2) ** p) ** (1 / p)
    assert lhs == pytest.approx(expected, rel=1e-10)
    assert rhs == pytest.approx(expected, rel=1e-10)


def test_minkowski2_random_p2(rng):
    for _ in range(20):
        lhs, rhs = minkowski2_sides(rand_psd(rng, 9), (3, 3), 2)
        assert lhs <= rhs + 1e-9


@pytest.mark.parametrize("p", [0.5, 2, 3])
def test_minkowski2_diagonal_oracle(rng, p):
    a = rng.random((3, 2))  # a[x1, x2]
    lhs, rhs = minkowski2_sides(np.diag(a.ravel()), (3, 2), p)
    assert abs(lhs - np.sum(a.sum(axis=0) ** p) ** (1 / p)) <= 1e-11
    assert abs(rhs - np.sum(np.sum(a**p, axis=1) ** (1 / p))) <= 1e-11


def test_minkowski3_p1_and_degenerate(rng):
    A = rand_psd(rng, 8)
    lhs, rhs = minkowski3_sides(A, (2, 2, 2), 1)
    assert lhs == pytest.approx(rhs, rel=1e-10)
    B = rand_psd(rng, 6)
    for p in (0.5, 2, 3):
        assert minkowski3_sides(B, (2, 3, 1), p) == pytest.approx(minkowski2_sides(B, (2, 3), p), rel=1e-12)


def test_minkowski3_random_p2(rng):
    for _ in range(20):
        lhs, rhs = minkowski3_sides(rand_psd(rng, 8), (2, 2, 2), 2)
        assert lhs <= rhs + 1e-9


def test_minkowski_shape_errors(rng):
    with pytest.raises(ShapeError):
        minkowski2_sides(np.eye(8), (2, 2, 2), 2)
    with pytest.raises(ShapeError):
        minkowski3_sides(np.eye(4), (2, 2), 2)


# --- BKS ------------------------------------------------------------------------------------


def test_bks_trivial_cases(rng):
    B = rand_psd(rng, 3)
    lhs, rhs = bks_sides(np.zeros((3, 3)), B, 2.5)
    assert lhs == pytest.approx(np.trace(B).real, rel=1e-12) and rhs == pytest.approx(lhs, rel=1e-12)
    lhs, rhs = bks_sides(B, B, 2.5)
    assert lhs == 0.0 and abs(rhs) <= 1e-12


@pytest.mark.parametrize("p", [1.5, 3])
def test_bks_diagonal_oracle(rng, p):
    a, b = rng.random(4), rng.random(4)
    lhs, rhs = bks_sides(np.diag(a), np.diag(b), p)
    assert abs(lhs - np.sum(np.maximum(b**p - a**p, 0) ** (1 / p))) <= 1e-11
    assert abs(rhs - np.sum(np.maximum(b - a, 0))) <= 1e-11
    assert lhs >= rhs


def test_bks_subadditivity(rng):
    A = rand_psd(rng, 4)
    lhs, rhs = bks_subadditivity_sides(A, np.zeros((4, 4)), 2)
    assert lhs == pytest.approx(np.trace(A).real) and rhs == pytest.approx(lhs, rel=1e-12)
    a, c = rng.random(4), rng.random(4)
    lhs, rhs = bks_subadditivity_sides(np.diag(a), np.diag(c), 3)
    assert abs(lhs - np.sum(a + c)) <= 1e-11 and abs(rhs - np.sum((a**3 + c**3) ** (1 / 3))) <= 1e-11
    for _ in range(20):
        lhs, rhs = bks_subadditivity_sides(rand_psd(rng, 4), rand_psd(rng, 4), 3)
        assert lhs >= rhs - 1e-9


def test_bks_requires_p_above_one(rng):
    with pytest.raises(ValueError):
        bks_sides(np.eye(2), np.eye(2), 1.0)
