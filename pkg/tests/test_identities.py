import math

import numpy as np
import pytest

from tracemink import probes
from tracemink.functionals import phi_p, psi_p
from tracemink.matcore import DomainError
from tracemink.probes.identities import block_identity_sides

from .conftest import rand_psd


def test_block_identity_identity_inputs():
    d, p = 3, 0.5
    lhs, rhs = block_identity_sides(np.eye(d), np.eye(d), p)
    assert lhs == pytest.approx(2 * d * 2 ** (1 / p))
    assert probes.verify_block_identity(np.eye(d), np.eye(d), p) <= 1e-10


def test_block_identity_degenerate(rng):
    A = rand_psd(rng, 3)
    assert probes.verify_block_identity(A, np.zeros((3, 3)), 0.4) <= 1e-10


@pytest.mark.parametrize("p", [0.25, 0.5, 0.9])
def test_block_identity_random(rng, p):
    for _ in range(10):
        assert probes.verify_block_identity(rand_psd(rng, 3), rand_psd(rng, 3), p) <= 1e-9


def test_sahi_single_and_diagonal(rng):
    A = rand_psd(rng, 3)
    assert abs(phi_p([A], 2) - np.trace(A).real) <= 1e-10
    assert probes.verify_sahi([A]) <= 1e-10
    a, b = rng.random(4), rng.random(4)
    assert phi_p([np.diag(a), np.diag(b)], 2) == pytest.approx(np.sum(np.hypot(a, b)), abs=1e-12)
    assert probes.verify_sahi([np.diag(a), np.diag(b)]) <= 1e-12


def test_sahi_random(rng):
    for _ in range(10):
        assert probes.verify_sahi([rand_psd(rng, 3) for _ in range(3)]) <= 1e-9


def test_dual_witness_identity():
    w = probes.dual_witness_minkowski2(np.eye(6), (2, 3), 2)
    assert np.allclose(w.B, w.B[0, 0] * np.eye(3))
    assert w.residual <= 1e-12


def test_dual_witness_diagonal_holder():
    a = np.array([[0.2, 0.5, 0.1], [0.3, 0.4, 0.9]])  # a[x1, x2]
    p = 3.0
    m = a.sum(axis=0)
    w = probes.dual_witness_minkowski2(np.diag(a.ravel()), (2, 3), p)
    assert w.lhs == pytest.approx(np.sum(m**p) ** (1 / p), rel=1e-13)
    q = p / (p - 1)
    assert np.sum(np.diag(w.B).real ** q) == pytest.approx(1, rel=1e-12)
    assert w.residual <= 1e-12


def test_dual_witness_random(rng):
    for _ in range(10):
        w = probes.dual_witness_minkowski2(rand_psd(rng, 6), (2, 3), 2)
        assert w.residual <= 1e-9


def test_dual_witness_zero_marginal():
    with pytest.raises(DomainError):
        probes.dual_witness_minkowski2(np.zeros((4, 4)), (2, 2), 2)


def test_mpm_zero_c(rng):
    A = rand_psd(rng, 3)
    rep = probes.verify_mpm_spectra(A, np.zeros((3, 3)), 2.5)
    assert rep.spectrum_residual <= 1e-12
    assert rep.trace_residual <= 1e-10
    assert abs(rep.concavity_slack) <= 1e-10


def test_mpm_diagonal(rng):
    a, c = rng.random(3), rng.random(3)
    p = 2.5
    rep = probes.verify_mpm_spectra(np.diag(a), np.diag(c), p)
    assert rep.spectrum_residual <= 1e-12 and rep.trace_residual <= 1e-12 and rep.average_residual <= 1e-12
    assert rep.concavity_slack == pytest.approx(np.sum(a + c) - np.sum((a**p + c**p) ** (1 / p)), abs=1e-12)


def test_mpm_random(rng):
    for _ in range(10):
        rep = probes.verify_mpm_spectra(rand_psd(rng, 3), rand_psd(rng, 3), 2.5)
        assert rep.spectrum_residual <= 1e-9 and rep.trace_residual <= 1e-9
        assert rep.concavity_slack >= -1e-9


def test_block_diag_reduction(rng):
    A = rand_psd(rng, 3)
    assert probes.block_diag_reduction([A], 0.7) <= 1e-12
    # identical blocks: both sides n^(1/p) Tr A
    p, n = 0.5, 3
    assert phi_p([A] * n, p) == pytest.approx(n ** (1 / p) * np.trace(A).real, rel=1e-12)
    assert probes.block_diag_reduction([A] * n, p) <= 1e-12
    for _ in range(10):
        assert probes.block_diag_reduction([rand_psd(rng, 3), rand_psd(rng, 3)], 0.5) <= 1e-9


def test_block_diag_needs_block_factor_traced(rng):
    # tracing the other factor gives sum_j (Tr A_j^p)^(1/p), not phi_p
    A1, A2 = rand_psd(rng, 3), rand_psd(rng, 3)
    wrong = psi_p(probes.block_diag(A1, A2), (2, 3), 0.5, traced=1)
    expected_wrong = sum(np.sum(np.linalg.eigvalsh(A) ** 0.5) ** 2 for A in (A1, A2))
    assert wrong == pytest.approx(expected_wrong, rel=1e-10)
    assert abs(wrong - phi_p([A1, A2], 0.5)) > 1e-3


@pytest.mark.parametrize("N", [2, 3])
def test_group_average_residual(rng, N):
    for d1 in (2, 3):
        assert probes.group_average_residual(rand_psd(rng, d1 * N), (d1, N)) <= 1e-12
