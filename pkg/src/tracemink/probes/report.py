"""Campaign bookkeeping shared by every probe."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ..functionals import PExponent

DEFAULT_TOL = 1e-9

# (sign, contract) per inequality family and exponent regime.  The slack of a
# trial is sign * raw, where raw is
#   phi_midpoint: Phi_p(midpoint) - (Phi_p(X) + Phi_p(Y))/2
#   minkowski2/3: rhs - lhs
# A contract regime is one where the inequality is a theorem, so any
# slack < -tol is a violation; other regimes are recorded only.
SLACK_TABLE: dict[str, dict[str, tuple[int, bool]]] = {
    "phi_midpoint": {
        "concave": (+1, True),
        "boundary": (+1, True),
        "conjecture": (-1, False),
        "convex_known": (-1, True),
        "failure": (+1, False),
    },
    "minkowski2": {
        "concave": (-1, True),
        "boundary": (+1, True),
        "conjecture": (+1, True),
        "convex_known": (+1, True),
        "failure": (+1, True),
    },
    "minkowski3": {
        "concave": (-1, True),
        "boundary": (+1, True),
        "conjecture": (+1, False),
        "convex_known": (+1, True),
        "failure": (+1, False),
    },
}


def slack_rule(family: str, p: float) -> tuple[int, bool]:
    return SLACK_TABLE[family][PExponent(p).regime]


@dataclass
class ProbeReport:
    name: str
    trials: int
    worst_slack: float
    mean_slack: float
    violations: int
    seed: int
    p: float
    dims: list
    tol: float
    contract: bool
    slacks: list = field(default_factory=list)
    worst_trial: int = 0
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0 or not self.contract

    def trial_seed(self, i: int) -> int:
        return self.seed + i

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "worst_slack": self.worst_slack,
            "mean_slack": self.mean_slack,
            "violations": self.violations,
            "tol_report": self.tol,
            "contract": self.contract,
            "seed": self.seed,
            "p": self.p,
            "dims": list(self.dims),
            "worst_trial": self.worst_trial,
            "slacks": list(self.slacks),
            "details": self.details,
            "witness": self.witness,
        }

    def summary(self) -> str:
        mode = "contract" if self.contract else "exploratory"
        return (
            f"{self.name} p={self.p:g} dims={list(self.dims)} trials={self.trials} "
            f"worst={self.worst_slack:.3e} violations={self.violations} [{mode}]"
        )


TrialFn = Callable[[np.random.Generator], tuple[float, dict]]


def run_trials(trial: TrialFn, trials: int, seed: int, threads: int = 1) -> list[tuple[float, dict]]:
    """Run ``trial`` once per index with its own generator seeded ``seed + i``.

    Results come back in trial order whatever the thread count.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")

    def one(i):
        return trial(np.random.default_rng(seed + i))

    if threads <= 1:
        return [one(i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, range(trials)))


def aggregate(
    name: str,
    results: list[tuple[float, dict]],
    *,
    seed: int,
    p: float,
    dims,
    tol: float,
    contract: bool,
    details: Optional[dict] = None,
    constructive: bool = False,
) -> ProbeReport:
    from ..io import matrices_to_json

    slacks = [float(s) for s, _ in results]
    worst_trial = int(np.argmin(slacks))
    violations = sum(1 for s in slacks if s < -tol or math.isnan(s))
    witness = None
    if violations or constructive:
        witness = matrices_to_json(results[worst_trial][1])
        witness["trial"] = worst_trial
        witness["trial_seed"] = seed + worst_trial
    return ProbeReport(
        name=name,
        trials=len(slacks),
        worst_slack=slacks[worst_trial],
        mean_slack=float(np.mean(slacks)),
        violations=violations,
        seed=seed,
        p=float(p),
        dims=list(dims),
        tol=tol,
        contract=contract,
        slacks=slacks,
        worst_trial=worst_trial,
        witness=witness,
        details=details or {},
    )
