"""Seeded random campaigns for the concavity/convexity and Minkowski-type claims."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..functionals import (
    bks_sides,
    bks_subadditivity_sides,
    minkowski2_sides,
    minkowski3_sides,
    phi_p,
    ssa_deficit,
)
from ..matcore import random_density, random_psd
from ..tensor import as_space
from .limits import ssa_from_limit
from .report import DEFAULT_TOL, ProbeReport, aggregate, run_trials, slack_rule

FD_TOL = 1e-6


def midpoint_gap(first: Sequence, second: Sequence, p: float) -> float:
    """``Phi_p((X+Y)/2) - Phi_p(X)/2 - Phi_p(Y)/2`` for tuples ``X``, ``Y``."""
    if len(first) != len(second):
        raise ValueError("tuples must have equal length")
    mid = [(a + b) / 2 for a, b in zip(first, second)]
    return phi_p(mid, p) - 0.5 * phi_p(first, p) - 0.5 * phi_p(second, p)


def midpoint_probe(
    p: float,
    n: int,
    dim: int,
    trials: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    threads: int = 1,
    exploratory: bool = False,
) -> ProbeReport:
    """Midpoint test of joint concavity (p <= 1) / convexity (p = 2) of ``phi_p``."""
    sign, contract = slack_rule("phi_midpoint", p)

    def trial(rng):
        first = [random_psd(dim, 1.0, rng) for _ in range(n)]
        second = [random_psd(dim, 1.0, rng) for _ in range(n)]
        d = midpoint_gap(first, second, p)
        mats = {f"X{j}": a for j, a in enumerate(first)} | {f"Y{j}": b for j, b in enumerate(second)}
        return sign * d, mats

    results = run_trials(trial, trials, seed, threads)
    return aggregate(
        f"midpoint_phi_n{n}",
        results,
        seed=seed,
        p=p,
        dims=[dim],
        tol=tol,
        contract=contract and not exploratory,
        details={"n": n, "sign": sign},
    )


def _minkowski_campaign(family, sides_fn, trials, dims, p, seed, tol, threads, exploratory):
    space = as_space(dims)
    sign, contract = slack_rule(family, p)

    def trial(rng):
        A = random_psd(space.total, 1.0, rng)
        lhs, rhs = sides_fn(A, space, p)
        return sign * (rhs - lhs), {"A": A}

    results = run_trials(trial, trials, seed, threads)
    return aggregate(
        family,
        results,
        seed=seed,
        p=p,
        dims=space.dims,
        tol=tol,
        contract=contract and not exploratory,
        details={"sign": sign},
    )


def verify_minkowski2(
    trials: int, dims, p: float, seed: int, tol: float = DEFAULT_TOL, threads: int = 1, exploratory: bool = False
) -> ProbeReport:
    """Two-space Minkowski trace inequality; slack is ``rhs - lhs`` for p >= 1, reversed below."""
    return _minkowski_campaign("minkowski2", minkowski2_sides, trials, dims, p, seed, tol, threads, exploratory)


def verify_minkowski3(
    trials: int, dims, p: float, seed: int, tol: float = DEFAULT_TOL, threads: int = 1, exploratory: bool = False
) -> ProbeReport:
    """Three-space version.  Only p in (0, 1] and p = 2 are contract regimes."""
    return _minkowski_campaign("minkowski3", minkowski3_sides, trials, dims, p, seed, tol, threads, exploratory)


def verify_bks(trials: int, dim: int, p: float, seed: int, tol: float = DEFAULT_TOL, threads: int = 1) -> ProbeReport:
    """Both BKS forms on random pairs; a trial's slack is the smaller of the two."""
    if p <= 1:
        raise ValueError(f"BKS needs p > 1, got {p}")

    def trial(rng):
        A = random_psd(dim, 1.0, rng)
        B = random_psd(dim, 1.0, rng)
        C = random_psd(dim, 1.0, rng)
        l1, r1 = bks_sides(A, B, p)
        l2, r2 = bks_subadditivity_sides(A, C, p)
        return min(l1 - r1, l2 - r2), {"A": A, "B": B, "C": C, "slack_bks": l1 - r1, "slack_subadd": l2 - r2}

    results = run_trials(trial, trials, seed, threads)
    s1 = [m["slack_bks"] for _, m in results]
    s2 = [m["slack_subadd"] for _, m in results]
    details = {
        "worst_slack_bks": float(min(s1)),
        "worst_slack_subadditivity": float(min(s2)),
        "violations_bks": sum(s < -tol for s in s1),
        "violations_subadditivity": sum(s < -tol for s in s2),
    }
    return aggregate("bks", results, seed=seed, p=p, dims=[dim], tol=tol, contract=True, details=details)


def verify_ssa(
    trials: int, dims=(2, 2, 2), seed: int = 0, h: float | None = None, tol: float = DEFAULT_TOL, threads: int = 1
) -> ProbeReport:
    """Strong subadditivity on random densities.

    With ``h`` set, each trial also takes the left finite-difference
    derivative of the three-space Minkowski gap at p = 1; a derivative
    below ``-FD_TOL`` counts as a violation too.
    """
    space = as_space(dims)

    def trial(rng):
        rho = random_density(space.total, rng)
        deficit = ssa_deficit(rho, space)
        mats = {"rho": rho, "deficit": deficit}
        if h is not None:
            mats["fd_derivative"] = ssa_from_limit(rho, space, h).fd_derivative
        return deficit, mats

    results = run_trials(trial, trials, seed, threads)
    report = aggregate("ssa", results, seed=seed, p=1.0, dims=space.dims, tol=tol, contract=True)
    if h is not None:
        fd = np.array([m["fd_derivative"] for _, m in results])
        dd = np.array([m["deficit"] for _, m in results])
        fd_violations = int(np.sum(fd < -FD_TOL))
        report.details = {
            "h": h,
            "fd_tol": FD_TOL,
            "fd_violations": fd_violations,
            "worst_fd_derivative": float(fd.min()),
            "max_abs_fd_minus_deficit": float(np.max(np.abs(fd - dd))),
        }
        report.violations += fd_violations
    return report
