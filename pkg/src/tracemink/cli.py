"""Command-line driver for the seeded campaigns.

Exit status: 0 when the campaign has no violations (or runs in exploratory
mode), 1 on a contract violation (the report is still written), 2 on bad
arguments.
"""

from __future__ import annotations

import argparse
import datetime
import sys
from typing import Optional, Sequence

import numpy as np

from . import probes
from .functionals import minkowski3_sides, ssa_deficit
from .io import matrices_to_json, report_to_csv, report_to_json, save_report
from .matcore import random_psd
from .probes.report import DEFAULT_TOL, ProbeReport, aggregate, run_trials
from .tensor import as_space

COMMANDS = ("probe", "verify2", "verify3", "ssa", "bks", "counterexample", "identities", "oracle")

# per-identity residual bounds
IDENTITY_TOLS = {
    "group_average": 1e-12,
    "block_identity": 1e-9,
    "sahi": 1e-9,
    "block_diag": 1e-9,
    "dual_witness": 1e-9,
    "mpm_spectra": 1e-9,
    "mpm_trace": 1e-9,
}
ORACLE_TOL = 1e-10


def _dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--dims expects comma-separated integers, got {text!r}")
    if not dims or any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError(f"invalid dims {text!r}")
    return dims


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tracemink", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, p=None, dims=None, dim=None, trials=200):
        sp.add_argument("--p", type=float, default=p, required=p is None)
        sp.add_argument("--dims", type=_dims, default=dims)
        sp.add_argument("--dim", type=int, default=dim)
        sp.add_argument("--n", type=int, default=2)
        sp.add_argument("--trials", type=int, default=trials)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
        sp.add_argument("--out", default=None, help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--exploratory", action="store_true", help="record only; never fail")
        return sp

    common(sub.add_parser("probe", help="midpoint concavity/convexity of phi_p"), dim=3)
    common(sub.add_parser("verify2", help="two-space Minkowski trace inequality"), dims=(2, 2))
    common(sub.add_parser("verify3", help="three-space Minkowski trace inequality"), dims=(2, 2, 2))
    sp = common(sub.add_parser("ssa", help="strong subadditivity and the p -> 1 derivative"), p=1.0, dims=(2, 2, 2))
    sp.add_argument("--h", type=float, default=None, help="finite-difference step for the p -> 1 derivative")
    common(sub.add_parser("bks", help="Birman-Koplienko-Solomyak inequality"), dim=4)
    sp = common(sub.add_parser("counterexample", help="convexity failure of phi_p for p > 2"), dim=2, trials=1)
    sp.add_argument("--max-attempts", type=int, default=10_000)
    common(sub.add_parser("identities", help="exact identities on random inputs"), p=0.5, dim=3, trials=100)
    common(sub.add_parser("oracle", help="classical (commutative) cross-check"), p=2.0, dims=(2, 2, 2), trials=100)
    return parser


def _validate(parser, args):
    if not args.p > 0:
        parser.error("--p must be positive")
    if args.trials < 1:
        parser.error("--trials must be >= 1")
    if not args.tol > 0:
        parser.error("--tol must be positive")
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    if args.dim is not None and args.dim < 1:
        parser.error("--dim must be >= 1")
    if args.dims is not None and not 1 <= len(args.dims) <= 3:
        parser.error("--dims takes one to three factors")
    if args.command == "verify2" and len(args.dims) != 2:
        parser.error("verify2 needs two factors")
    if args.command in ("verify3", "ssa", "oracle") and len(args.dims) != 3:
        parser.error(f"{args.command} needs three factors")
    if args.command == "bks" and args.p <= 1:
        parser.error("bks needs --p > 1")
    if args.command == "counterexample" and args.p <= 2:
        parser.error("counterexample needs --p > 2")
    if args.command == "ssa" and args.h is not None and not 0 < args.h <= 0.1:
        parser.error("--h must lie in (0, 0.1]")


# --- commands -------------------------------------------------------------------------------


def _counterexample(args) -> ProbeReport:
    try:
        w = probes.counterexample_p_gt_2(args.p, args.dim, args.seed, max_attempts=args.max_attempts)
    except (probes.ConstructionFailure, probes.SearchFailure) as exc:
        table = getattr(exc, "table", [])
        return ProbeReport("counterexample", 1, float("nan"), float("nan"), 1, args.seed, args.p, [args.dim],
                           args.tol, True, [float("nan")], details={"error": str(exc), "table": table})
    return ProbeReport(
        "counterexample", 1, w.margin, w.margin, 0, args.seed, args.p, [args.dim], args.tol, True, [w.margin],
        witness=matrices_to_json(w.matrices()),
        details={"operator_gap": w.operator_gap, "limit_value": w.limit_value, "attempts": w.attempts, "table": w.table},
    )


def identity_residuals(rng, p: float, dim: int) -> dict[str, float]:
    """One random instance of every identity check."""
    A1, A2, A3 = (random_psd(dim, 1.0, rng) for _ in range(3))
    N = 2 + int(rng.integers(0, 2))
    A = random_psd(2 * N, 1.0, rng)
    mpm = probes.verify_mpm_spectra(A1, A2, 1 + p if p <= 1 else p)
    return {
        "group_average": probes.group_average_residual(A, (2, N), 1),
        "block_identity": probes.verify_block_identity(A1, A2, p),
        "sahi": probes.verify_sahi([A1, A2, A3]),
        "block_diag": probes.block_diag_reduction([A1, A2], p),
        "dual_witness": probes.dual_witness_minkowski2(A, (2, N), 1 + p if p <= 1 else p).residual,
        "mpm_spectra": mpm.spectrum_residual,
        "mpm_trace": max(mpm.trace_residual, mpm.average_residual),
    }


def _identities(args) -> ProbeReport:
    def trial(rng):
        res = identity_residuals(rng, args.p, args.dim)
        # slack in units of tol: -tol exactly at an identity's bound
        worst = max(res[k] / IDENTITY_TOLS[k] for k in res)
        return -worst * args.tol, res

    results = run_trials(trial, args.trials, args.seed, args.threads)
    details = {k: max(r[k] for _, r in results) for k in IDENTITY_TOLS}
    details["bounds"] = IDENTITY_TOLS
    rep = aggregate("identities", results, seed=args.seed, p=args.p, dims=[args.dim], tol=args.tol,
                    contract=not args.exploratory, details=details)
    rep.witness = None if rep.violations == 0 else rep.witness
    return rep


def oracle_discrepancy(rng, dims, p: float) -> float:
    f = rng.random(dims)
    cl = probes.classical_oracle(f, p)
    M, sdims = probes.minkowski_embedding(f)
    lhs, rhs = minkowski3_sides(M, sdims, p)
    R, rdims = probes.ssa_embedding(f)
    return max(abs(lhs - cl.minkowski_lhs), abs(rhs - cl.minkowski_rhs), abs(ssa_deficit(R, rdims) - cl.entropy_combination))


def _oracle(args) -> ProbeReport:
    def trial(rng):
        d = oracle_discrepancy(rng, args.dims, args.p)
        return -d * args.tol / ORACLE_TOL, {"discrepancy": d}

    results = run_trials(trial, args.trials, args.seed, args.threads)
    rep = aggregate("oracle", results, seed=args.seed, p=args.p, dims=args.dims, tol=args.tol,
                    contract=not args.exploratory)
    rep.details = {"max_discrepancy": max(r["discrepancy"] for _, r in results), "bound": ORACLE_TOL}
    return rep


def run(args) -> ProbeReport:
    kw = dict(tol=args.tol, threads=args.threads)
    c = args.command
    if c == "probe":
        return probes.midpoint_probe(args.p, args.n, args.dim, args.trials, args.seed, exploratory=args.exploratory, **kw)
    if c == "verify2":
        return probes.verify_minkowski2(args.trials, args.dims, args.p, args.seed, exploratory=args.exploratory, **kw)
    if c == "verify3":
        return probes.verify_minkowski3(args.trials, args.dims, args.p, args.seed, exploratory=args.exploratory, **kw)
    if c == "ssa":
        return probes.verify_ssa(args.trials, args.dims, args.seed, h=args.h, **kw)
    if c == "bks":
        return probes.verify_bks(args.trials, args.dim, args.p, args.seed, **kw)
    if c == "counterexample":
        return _counterexample(args)
    if c == "identities":
        return _identities(args)
    if c == "oracle":
        return _oracle(args)
    raise AssertionError(c)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    report = run(args)
    if args.exploratory:
        report.contract = False
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
    if args.out:
        save_report(report, args.out, args.format, timestamp=stamp)
    else:
        text = report_to_json(report, stamp) if args.format == "json" else report_to_csv(report)
        sys.stdout.write(text + ("\n" if not text.endswith("\n") else ""))
    print(report.summary(), file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
