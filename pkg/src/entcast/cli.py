"""Command-line front end: ``entcast {broadcast,sweep,teleclone,verify}``.

Exit codes: 0 success, 1 failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass

from . import broadcasting, criteria, runner, telecloning, verify
from .errors import EntcastError
from .states import pair_vector

DEFAULT_SEED = 20060101
SYMMETRIC_TOL = 1e-8

SWEEP_HEADER = [
    "R", "alpha_abs", "alpha_phase", "F_a1b1", "F_cd", "lambda_d",
    "M_a1b1", "M_cd", "N_a1b1", "N_cd", "sep_a1b1", "sep_cd", "sep_a1c",
]


def fmt(x: float) -> str:
    return f"{x:.12g}"


def default_seed() -> int:
    env = os.environ.get("ENTCAST_SEED")
    return int(env) if env else DEFAULT_SEED


@dataclass
class SweepSpec:
    R_grid: list[float]
    alpha_grid: list[float]
    phase_grid: list[float]

    def __post_init__(self):
        if not (self.R_grid and self.alpha_grid and self.phase_grid):
            raise ValueError("sweep grids must be nonempty")
        if any(not 0.0 <= R <= 0.5 for R in self.R_grid):
            raise ValueError("R values must lie in [0, 0.5]")
        if any(not 0.0 <= a <= 1.0 for a in self.alpha_grid):
            raise ValueError("|alpha| values must lie in [0, 1]")

    def points(self):
        for R in self.R_grid:
            for a in self.alpha_grid:
                for ph in self.phase_grid:
                    yield R, a, ph


def _coefficients(alpha_abs: float, phase: float) -> tuple[complex, float]:
    return verify.coefficients(alpha_abs, phase)


def broadcast_report(R: float, alpha_abs: float, phase: float = 0.0) -> dict:
    """Everything known about one broadcast run; ``invariants_ok`` flags closed-form agreement."""
    alpha, beta = _coefficients(alpha_abs, phase)
    res = broadcasting.run_broadcast(alpha, beta, R)
    psi = pair_vector(alpha, beta)
    f_closed = broadcasting.broadcast_fidelities(alpha, beta, R)
    f_numeric = (res.rho_a1b1.fidelity(psi), res.rho_cd.fidelity(psi))
    closed = {
        "a1b1": broadcasting.closed_form_rho_a1b1(alpha, beta, R),
        "cd": broadcasting.closed_form_rho_cd(alpha, beta, R),
        "a1c": broadcasting.closed_form_rho_a1c(alpha, beta, R),
        "b1d": broadcasting.closed_form_rho_a1c(alpha, beta, R),
    }
    invariants_ok = all(res.pairs[k].allclose(closed[k]) for k in closed) and all(
        abs(x - y) < 1e-10 for x, y in zip(f_closed, f_numeric)
    )
    ppt = {k: criteria.ppt_verdict(rho) for k, rho in res.pairs.items()}
    M = {k: criteria.chsh_M(res.pairs[k]) for k in ("a1b1", "cd")}
    NF = {k: criteria.teleportation_N(res.pairs[k]) for k in ("a1b1", "cd")}
    alpha_sq = alpha_abs**2
    windows = {
        "a1b1_inseparable": criteria.window_a1b1(R),
        "cd_inseparable": criteria.window_cd(R),
        "a1c_separable": criteria.window_a1c(R),
        "broadcast": criteria.broadcast_condition(R),
    }
    return {
        "R": R,
        "alpha": alpha_abs,
        "alpha_phase": phase,
        "lambda_d": res.lambda_d,
        "lambda_s": res.lambda_s,
        "success_probability": res.success_probability,
        "fidelity": {
            "a1b1": {"closed_form": f_closed[0], "numeric": f_numeric[0]},
            "cd": {"closed_form": f_closed[1], "numeric": f_numeric[1]},
        },
        "M": M,
        "N": {k: v[0] for k, v in NF.items()},
        "F_max": {k: v[1] for k, v in NF.items()},
        "ppt": ppt,
        "windows": {k: (list(v) if v else None) for k, v in windows.items()},
        "alpha_sq_in_broadcast_window": criteria.in_window(alpha_sq, windows["broadcast"]),
        "invariants_ok": invariants_ok,
        "verdict": _verdict(R, res, ppt),
    }


def _verdict(R: float, res, ppt: dict) -> str:
    import numpy as np

    if abs(R - 0.5) < SYMMETRIC_TOL and np.allclose(res.rho_a1b1.matrix, np.eye(4) / 4, atol=1e-10):
        return "entanglement swapping limit"
    kept = ppt["a1b1"] == "inseparable" and ppt["cd"] == "inseparable"
    cross = ppt["a1c"] != "inseparable" and ppt["b1d"] != "inseparable"
    if kept and cross:
        kind = "symmetric" if abs(R - 1 / 3) < SYMMETRIC_TOL else "asymmetric"
        return f"broadcast: {kind}, both pairs inseparable"
    if not kept:
        return "no broadcast: an output pair is not inseparable"
    return "no broadcast: a cross pair is entangled"


def _print_broadcast(rep: dict, out) -> None:
    print(f"R                     {fmt(rep['R'])}", file=out)
    print(f"|alpha|, phase        {fmt(rep['alpha'])}, {fmt(rep['alpha_phase'])}", file=out)
    print(f"lambda_d              {fmt(rep['lambda_d'])}", file=out)
    print(f"lambda_s              {fmt(rep['lambda_s'])}", file=out)
    print(f"success probability   {fmt(rep['success_probability'])}", file=out)
    for pair in ("a1b1", "cd"):
        f = rep["fidelity"][pair]
        print(f"F_{pair:<5} closed/num   {fmt(f['closed_form'])} / {fmt(f['numeric'])}", file=out)
    for pair in ("a1b1", "cd"):
        print(f"M_{pair:<5} N_{pair:<5} F_max  {fmt(rep['M'][pair])}  {fmt(rep['N'][pair])}  "
              f"{fmt(rep['F_max'][pair])}", file=out)
    for pair, verdict in rep["ppt"].items():
        print(f"PPT {pair:<5}             {verdict}", file=out)
    for key in ("a1b1", "cd"):
        if "mc" in rep and key in rep["mc"]:
            mc = rep["mc"][key]
            print(f"MC teleport {key:<5}     {fmt(mc['F_mc'])} +- {fmt(mc['stderr'])} "
                  f"(formula {fmt(mc['F_max_formula'])})", file=out)
    print(f"verdict: {rep['verdict']}", file=out)


def cmd_broadcast(args, out=None) -> int:
    out = out or sys.stdout
    rep = broadcast_report(args.R, args.alpha, args.phase)
    if args.mc_samples:
        seed = args.seed if args.seed is not None else default_seed()
        alpha, beta = _coefficients(args.alpha, args.phase)
        res = broadcasting.run_broadcast(alpha, beta, args.R)
        rep["mc"] = {}
        for key, rho in (("a1b1", res.rho_a1b1), ("cd", res.rho_cd)):
            N, F = criteria.teleportation_N(rho)
            mc = runner.monte_carlo_teleportation_fidelity(rho, args.mc_samples, seed)
            rep["mc"][key] = {
                "channel": f"rho_{key}(R={fmt(args.R)}, alpha={fmt(args.alpha)}, phase={fmt(args.phase)})",
                "N": N, "F_max_formula": F, "F_mc": mc.mean, "stderr": mc.stderr,
                "samples": mc.n_samples, "seed": seed,
            }
    if args.json:
        print(json.dumps(rep, indent=2, sort_keys=True), file=out)
    else:
        _print_broadcast(rep, out)
    return 0 if rep["invariants_ok"] else 1


def sweep_rows(spec: SweepSpec):
    for R, a_abs, ph in spec.points():
        alpha, beta = _coefficients(a_abs, ph)
        res = broadcasting.run_broadcast(alpha, beta, R)
        psi = pair_vector(alpha, beta)
        yield [
            fmt(R), fmt(a_abs), fmt(ph),
            fmt(res.rho_a1b1.fidelity(psi)), fmt(res.rho_cd.fidelity(psi)), fmt(res.lambda_d),
            fmt(criteria.chsh_M(res.rho_a1b1)), fmt(criteria.chsh_M(res.rho_cd)),
            fmt(criteria.teleportation_N(res.rho_a1b1)[0]), fmt(criteria.teleportation_N(res.rho_cd)[0]),
            str(criteria.ppt_separable(res.rho_a1b1)[0]).lower(),
            str(criteria.ppt_separable(res.rho_cd)[0]).lower(),
            str(criteria.ppt_separable(res.rho_a1c)[0]).lower(),
        ]


def cmd_sweep(args, out=None) -> int:
    out = out or sys.stdout
    spec = SweepSpec(args.R_grid, args.alpha_grid, args.phase_grid)
    rows = list(sweep_rows(spec))
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}", file=out)
    return 0


def cmd_teleclone(args, out=None) -> int:
    out = out or sys.stdout
    alpha, beta = _coefficients(args.alpha, args.phase)
    seed = args.seed if args.seed is not None else default_seed()
    source = "enumerate" if args.enumerate else "random"
    outcomes = telecloning.run_telecloning(alpha, beta, args.p, source, seed)
    clones = telecloning.clone_report(alpha, beta, args.p)
    resources = telecloning.resource_report()
    ok = clones["closed_form_match"] and all(abs(o.fidelity - 1) < 1e-10 for o in outcomes)
    if args.json:
        doc = {
            "outcomes": [{
                "outcome": [str(o.outcome[0]), str(o.outcome[1])],
                "probability": o.probability,
                "recovery": list(o.plan.operators),
                "fidelity_to_target": o.fidelity,
                "transcript": o.transcript.to_dict(),
            } for o in outcomes],
            "clones": clones,
            "resources": resources,
        }
        print(json.dumps(doc, indent=2, sort_keys=True), file=out)
        return 0 if ok else 1
    for o in outcomes:
        print(f"outcome {o.outcome[0]} {o.outcome[1]}  probability {fmt(o.probability)}  "
              f"recovery {o.plan.describe()}  fidelity {fmt(o.fidelity)}", file=out)
    if not args.enumerate:
        print(f"transcript {outcomes[0].transcript.to_json()}", file=out)
    print(f"clone fidelity B1B2   {fmt(clones['fidelity_B1B2'])}", file=out)
    print(f"clone fidelity B3B4   {fmt(clones['fidelity_B3B4'])}", file=out)
    print(f"closed form match     {str(clones['closed_form_match']).lower()}", file=out)
    print(f"resources naive       {resources['naive']['ebits']} ebits, {resources['naive']['cbits']} cbits", file=out)
    print(f"resources telecloning {resources['telecloning']['ebits']} ebits, "
          f"{resources['telecloning']['cbits']} cbits", file=out)
    return 0 if ok else 1


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    results = verify.run_all()
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.seconds:7.3f}s  {r.detail}", file=out)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed", file=out)
    return 0 if failed == 0 else 1


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entcast", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("broadcast", help="run the beam-splitter broadcasting protocol once")
    p.add_argument("--R", type=float, required=True, help="beam-splitter reflectivity in [0, 0.5]")
    p.add_argument("--alpha", type=float, required=True, help="|alpha| in [0, 1]")
    p.add_argument("--phase", type=float, default=0.0, help="phase of alpha in radians")
    p.add_argument("--mc-samples", type=int, default=0, help="Monte Carlo teleportation samples (0 = skip)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true", help="emit the verdict report as JSON")
    p.set_defaults(func=cmd_broadcast)

    p = sub.add_parser("sweep", help="tabulate broadcast outputs over a parameter grid")
    p.add_argument("--R-grid", dest="R_grid", type=_float_list,
                   default=list(verify.GRID_R))
    p.add_argument("--alpha-grid", dest="alpha_grid", type=_float_list,
                   default=list(verify.GRID_ALPHA))
    p.add_argument("--phase-grid", dest="phase_grid", type=_float_list, default=[0.0])
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("teleclone", help="run the telecloning protocol")
    p.add_argument("--p", type=float, required=True, help="cloner asymmetry in [0, 1]")
    p.add_argument("--alpha", type=float, required=True, help="|alpha| in [0, 1]")
    p.add_argument("--phase", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=None, help="overrides ENTCAST_SEED")
    p.add_argument("--enumerate", action="store_true", help="run all eight outcome pairs")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_teleclone)

    p = sub.add_parser("verify", help="run the closed-form vs numeric acceptance battery")
    p.set_defaults(func=cmd_verify)
    return parser


def _validate(parser: argparse.ArgumentParser, args) -> None:
    if args.command in ("broadcast", "teleclone"):
        if not 0.0 <= args.alpha <= 1.0:
            parser.error(f"--alpha must lie in [0, 1], got {args.alpha}")
    if args.command == "broadcast":
        if not 0.0 <= args.R <= 0.5:
            parser.error(f"--R must lie in [0, 0.5], got {args.R}")
        if args.mc_samples and args.mc_samples < 100:
            parser.error("--mc-samples must be 0 or at least 100")
    if args.command == "teleclone" and not 0.0 <= args.p <= 1.0:
        parser.error(f"--p must lie in [0, 1], got {args.p}")
    if args.command == "sweep":
        try:
            SweepSpec(args.R_grid, args.alpha_grid, args.phase_grid)
        except ValueError as exc:
            parser.error(str(exc))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        return args.func(args)
    except EntcastError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
