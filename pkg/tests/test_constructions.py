import numpy as np
import pytest

from tracemink import probes
from tracemink.functionals import phi_p
from tracemink.matcore import SingularMatrixError
from tracemink.probes.constructions import fit_exponent, noise_floor, operator_convexity_gap_matrix

from .conftest import rand_psd
from .oracles import scalar_expansion_remainder


def test_operator_convexity_witness_p3():
    w = probes.operator_convexity_witness(3, 2, seed=0, max_attempts=10_000)
    assert w.gap > 1e-10
    assert abs(np.linalg.norm(w.v) - 1) <= 1e-12
    D = operator_convexity_gap_matrix(w.A1, w.A2, 3)
    assert (w.v.conj() @ D @ w.v).real == pytest.approx(w.gap, rel=1e-10)


def test_square_is_operator_convex():
    with pytest.raises(probes.SearchFailure) as err:
        probes.operator_convexity_witness(2, 2, seed=0, max_attempts=2_000)
    assert err.value.best_gap <= 1e-10


@pytest.mark.parametrize("p", [2.5, 3, 4])
def test_counterexample_margin(p):
    w = probes.counterexample_p_gt_2(p, 2, seed=1)
    assert w.margin > 1e-8
    # margin is exactly the midpoint excess of phi_p at the reported (t, B)
    mid = phi_p([w.t * (w.A1 + w.A2) / 2, w.B], p)
    avg = 0.5 * phi_p([w.t * w.A1, w.B], p) + 0.5 * phi_p([w.t * w.A2, w.B], p)
    assert mid - avg == pytest.approx(w.margin, rel=1e-12)
    assert w.margin > noise_floor(w.B, p)
    # B = P_v + lambda (I - P_v)
    assert (w.v.conj() @ w.B @ w.v).real == pytest.approx(1.0, rel=1e-12)
    assert np.trace(w.B).real == pytest.approx(1 + w.lam, rel=1e-12)


def test_counterexample_scaled_excess_tends_to_limit():
    p = 3.0
    w = probes.operator_convexity_witness(p, 2, seed=1)
    P = np.outer(w.v, w.v.conj())
    # limit = <v, D v> + c lam^(1-p): the rescaled correction is lam independent
    corr = []
    for lam in (1e2, 1e3):
        B = P + lam * (np.eye(2) - P)
        corr.append((probes.limit_value(w.A1, w.A2, B, p) - w.gap) * lam ** (p - 1))
    assert corr[0] == pytest.approx(corr[1], rel=1e-6)
    B = P + 100.0 * (np.eye(2) - P)
    limit = probes.limit_value(w.A1, w.A2, B, p)
    for t in (1e-1, 1e-2):
        scaled = p * t**-p * probes.midpoint_excess(w.A1, w.A2, B, t, p)
        assert abs(scaled - limit) <= 1e-2 * t * abs(limit)


def test_counterexample_rejects_small_p():
    with pytest.raises(ValueError):
        probes.counterexample_p_gt_2(2, 2, seed=0)


def test_counterexample_grid_failure_reports_table():
    # a single, far too small t cannot certify anything above the floor
    with pytest.raises(probes.ConstructionFailure) as err:
        probes.counterexample_p_gt_2(3, 2, seed=0, lambdas=(10.0,), ts=(1e-6,))
    assert len(err.value.table) == 1


def test_small_t_zero_perturbation(rng):
    B = rand_psd(rng, 3) + 0.5 * np.eye(3)
    rep = probes.small_t_expansion(np.zeros((3, 3)), B, 3)
    assert rep.residuals == [0.0, 0.0, 0.0]


@pytest.mark.parametrize("a, b, p", [(2.0, 1.5, 2.5), (0.7, 3.0, 3.0)])
def test_small_t_scalar_oracle(a, b, p):
    ts = [1e-1, 1e-2, 1e-3]
    rep = probes.small_t_expansion([[a]], [[b]], p, ts)
    for t, r in zip(ts, rep.residuals):
        assert r == pytest.approx(scalar_expansion_remainder(a, b, p, t), rel=1e-10)
    assert abs(rep.exponent - 2 * p) < 0.01


def test_small_t_random_exponent(rng):
    A = rand_psd(rng, 3)
    B = rand_psd(rng, 3) + 0.1 * np.eye(3)
    rep = probes.small_t_expansion(A, B, 3, [1e-1, 1e-2, 1e-3])
    assert rep.exponent >= 2 * 3 - 0.2
    assert rep.exponent <= 2 * 3 + 0.2


def test_small_t_singular_b(rng):
    with pytest.raises(SingularMatrixError):
        probes.small_t_expansion(rand_psd(rng, 2), np.diag([1.0, 0.0]), 3)


def test_fit_exponent_exact_power():
    ts = [1e-1, 1e-2, 1e-3]
    assert fit_exponent(ts, [3 * t**4.5 for t in ts]) == pytest.approx(4.5)
