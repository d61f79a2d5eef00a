"""Closed-form versus numeric verification battery behind ``entcast verify``."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import broadcasting, cloning, criteria, runner, telecloning
from .states import BellKind, bell_state, pair_vector, to_density

SQRT1_2 = 1.0 / math.sqrt(2.0)
MC_FLOAT_FLOOR = 1e-12

GRID_R = tuple(round(0.05 * k, 2) for k in range(1, 10))
GRID_ALPHA = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99)
GRID_PHASE = (0.0, math.pi / 2, math.pi, 3 * math.pi / 2)
# R values strictly inside the broadcasting range (R_CD_LO, x)
BROADCAST_R = (0.31, 0.32, 1.0 / 3.0, 0.34, 0.35, 0.36)


def coefficients(alpha_abs: float, phase: float = 0.0) -> tuple[complex, float]:
    return alpha_abs * complex(math.cos(phase), math.sin(phase)), math.sqrt(1.0 - alpha_abs**2)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def check_cloner_bridge() -> tuple[bool, str]:
    fa, fb = cloning.filip_fidelities(1 / 3)
    ok = abs(fa - 5 / 6) < 1e-12 and abs(fb - 5 / 6) < 1e-12
    fa, fb = cloning.filip_fidelities(0.5)
    ok &= abs(fa - 0.5) < 1e-12 and abs(fb - 1.0) < 1e-12
    worst = 0.0
    start = time.perf_counter()
    for R in np.linspace(0.0, 0.5, 50):
        lhs = cloning.asym_cloner_fidelities(cloning.p_from_R(R))
        rhs = cloning.filip_fidelities(R)
        worst = max(worst, abs(lhs[0] - rhs[0]), abs(lhs[1] - rhs[1]))
    elapsed = time.perf_counter() - start
    ok &= worst < 1e-12 and elapsed < 1e-3
    return ok, f"max bridge error {worst:.2e}, {elapsed * 1e3:.3f} ms"


def check_broadcast_states() -> tuple[bool, str]:
    worst = 0.0
    start = time.perf_counter()
    for R in GRID_R:
        for a_abs in GRID_ALPHA:
            for ph in GRID_PHASE:
                a, b = coefficients(a_abs, ph)
                res = broadcasting.run_broadcast(a, b, R)
                closed = (
                    (res.rho_a1b1, broadcasting.closed_form_rho_a1b1(a, b, R)),
                    (res.rho_cd, broadcasting.closed_form_rho_cd(a, b, R)),
                    (res.rho_a1c, broadcasting.closed_form_rho_a1c(a, b, R)),
                    (res.rho_b1d, broadcasting.closed_form_rho_a1c(a, b, R)),
                )
                for num, cf in closed:
                    worst = max(worst, float(np.max(np.abs(num.matrix - cf.matrix))))
                explicit = broadcasting.phi_d_explicit(a, b, R).amplitudes
                aligned = broadcasting.align_global_phase(res.phi_d.amplitudes, explicit)
                worst = max(worst, float(np.max(np.abs(aligned - res.phi_d.amplitudes))))
    elapsed = time.perf_counter() - start
    return worst < 1e-10 and elapsed < 1.0, f"max entry error {worst:.2e}, {elapsed:.3f} s"


def check_symmetric_point() -> tuple[bool, str]:
    worst = 0.0
    for a_abs in GRID_ALPHA:
        a, b = coefficients(a_abs, 0.4)
        psi = pair_vector(a, b)
        expected = 4 / 9 * np.outer(psi, psi.conj()) + np.diag([
            (8 * abs(a) ** 2 + 1) / 36, 5 / 36, 5 / 36, (8 * abs(b) ** 2 + 1) / 36,
        ])
        for rho in (broadcasting.closed_form_rho_a1b1(a, b, 1 / 3), broadcasting.closed_form_rho_cd(a, b, 1 / 3)):
            worst = max(worst, float(np.max(np.abs(rho.matrix - expected))))
    res = broadcasting.run_broadcast(SQRT1_2, SQRT1_2, 1 / 3)
    lam_err = max(abs(res.lambda_d - 4 / 9), abs(res.lambda_s - 5 / 9))
    return worst < 1e-12 and lam_err < 1e-12, f"state error {worst:.2e}, lambda error {lam_err:.2e}"


def check_swap_limit() -> tuple[bool, str]:
    res = broadcasting.run_broadcast(SQRT1_2, SQRT1_2, 0.5)
    f_cd = res.rho_cd.fidelity(pair_vector(SQRT1_2, SQRT1_2))
    err = float(np.max(np.abs(res.rho_a1b1.matrix - np.eye(4) / 4)))
    return abs(f_cd - 1) < 1e-12 and err < 1e-12, f"F_cd = {f_cd:.12g}, |rho_a1b1 - I/4| = {err:.2e}"


def _pair_rho(pair: str, R: float):
    fn = {
        "a1b1": broadcasting.closed_form_rho_a1b1,
        "cd": broadcasting.closed_form_rho_cd,
        "a1c": broadcasting.closed_form_rho_a1c,
    }[pair]

    def make(alpha_sq: float):
        return fn(math.sqrt(alpha_sq), math.sqrt(1 - alpha_sq), R)

    return make


def _separable(rho) -> bool:
    return criteria.ppt_separable(rho)[0]


def broadcast_ok(alpha_sq: float, R: float) -> bool:
    a, b = math.sqrt(alpha_sq), math.sqrt(1 - alpha_sq)
    return (
        not _separable(broadcasting.closed_form_rho_a1b1(a, b, R))
        and not _separable(broadcasting.closed_form_rho_cd(a, b, R))
        and _separable(broadcasting.closed_form_rho_a1c(a, b, R))
    )


def check_windows() -> tuple[bool, str]:
    ok = True
    worst_eig = 0.0
    cases = [
        (criteria.window_a1b1, "a1b1", (0.05, 0.15, 0.25, 1 / 3, 0.35)),
        (criteria.window_cd, "cd", (0.31, 1 / 3, 0.4, 0.45)),
        (criteria.window_a1c, "a1c", (0.1, 0.2, 0.3, 0.4, 0.45)),
    ]
    for window, pair, Rs in cases:
        for R in Rs:
            lo, hi = window(R)
            for bound, sign in ((lo, 1), (hi, -1)):
                make = _pair_rho(pair, R)
                if not 1e-4 < bound < 1 - 1e-4:
                    continue
                flipped = _separable(make(bound + sign * 1e-4)) != _separable(make(bound - sign * 1e-4))
                eig = abs(criteria.min_pt_eigenvalue(make(bound)))
                ok &= flipped and eig < 1e-6
                worst_eig = max(worst_eig, eig)
    for R in (0.31, 0.32, 1 / 3, 0.34, 0.355):
        lo, hi = criteria.broadcast_condition(R)
        ok &= broadcast_ok(lo + 1e-4, R) and not broadcast_ok(lo - 1e-4, R)
        ok &= broadcast_ok(hi - 1e-4, R) and not broadcast_ok(hi + 1e-4, R)
    x = criteria.root_x()
    res = criteria.poly_x_residual(x)
    ok &= abs(x - 0.3608506129) < 1e-9 and res < 1e-10
    return ok, f"max |min PT eig| at bounds {worst_eig:.2e}, x = {x:.10f}, residual {res:.1e}"


def check_chsh() -> tuple[bool, str]:
    worst_M, worst_B = 0.0, 0.0
    for R in BROADCAST_R:
        for a_abs in GRID_ALPHA:
            a, b = coefficients(a_abs, 1.1)
            for rho in (broadcasting.closed_form_rho_a1b1(a, b, R), broadcasting.closed_form_rho_cd(a, b, R)):
                worst_M = max(worst_M, criteria.chsh_M(rho))
    for R in (0.31, 1 / 3, 0.36):
        a, b = coefficients(SQRT1_2)
        for rho in (broadcasting.closed_form_rho_a1b1(a, b, R), broadcasting.closed_form_rho_cd(a, b, R)):
            worst_B = max(worst_B, criteria.chsh_bruteforce_oracle(rho, n_directions=400))
    singlet = criteria.chsh_bruteforce_oracle(to_density(bell_state(BellKind.PSI_MINUS)))
    ok = worst_M < 1 and worst_B < 2 and abs(singlet - 2 * math.sqrt(2)) < 1e-2
    return ok, f"max M {worst_M:.4f}, max <B> {worst_B:.4f}, singlet <B> {singlet:.6f}"


def check_teleportation() -> tuple[bool, str]:
    worst = 0.0
    for R in GRID_R:
        for a_abs in GRID_ALPHA:
            a, b = coefficients(a_abs, 2.3)
            n_ab, _ = criteria.teleportation_N(broadcasting.closed_form_rho_a1b1(a, b, R))
            n_cd, _ = criteria.teleportation_N(broadcasting.closed_form_rho_cd(a, b, R))
            worst = max(worst, abs(n_ab - criteria.N_closed_a1b1(a, b, R)),
                        abs(n_cd - criteria.N_closed_cd(a, b, R)))
    rho = broadcasting.run_broadcast(SQRT1_2, SQRT1_2, 1 / 3).rho_a1b1
    N, F = criteria.teleportation_N(rho)
    ok = worst < 1e-10 and abs(N - 4 / 3) < 1e-12 and abs(F - 13 / 18) < 1e-12
    start = time.perf_counter()
    mc = runner.monte_carlo_teleportation_fidelity(rho, 100_000, seed=2024)
    ok &= abs(mc.mean - F) <= 3 * mc.stderr + MC_FLOAT_FLOOR
    a, b = coefficients(0.8)
    rho_cd = broadcasting.run_broadcast(a, b, 0.25).rho_cd
    _, F_cd = criteria.teleportation_N(rho_cd)
    mc_cd = runner.monte_carlo_teleportation_fidelity(rho_cd, 100_000, seed=2025)
    ok &= abs(mc_cd.mean - F_cd) <= 3 * mc_cd.stderr + MC_FLOAT_FLOOR
    elapsed = time.perf_counter() - start
    ok &= elapsed < 10
    return ok, (f"N error {worst:.1e}; N={N:.12g}, F_max={F:.12g}, MC {mc.mean:.6f}; "
                f"cd(0.25, 0.8) F_max={F_cd:.6f} MC {mc_cd.mean:.6f}±{mc_cd.stderr:.1e}")


def check_telecloning() -> tuple[bool, str]:
    start = time.perf_counter()
    prob_err, fid_err, rho_err = 0.0, 0.0, 0.0
    for p in (0.0, 0.25, 0.5, 0.75, 1.0):
        for a_abs, ph in ((0.6, 0.0), (SQRT1_2, 1.0), (0.95, 2.5)):
            a, b = coefficients(a_abs, ph)
            outcomes = telecloning.run_telecloning(a, b, p)
            if len(outcomes) != 8:
                return False, f"{len(outcomes)} outcomes"
            for o in outcomes:
                prob_err = max(prob_err, abs(o.probability - 1 / 8))
                fid_err = max(fid_err, abs(o.fidelity - 1))
            for num, cf in zip(telecloning.output_clones(a, b, p), telecloning.closed_form_clones(a, b, p)):
                rho_err = max(rho_err, float(np.max(np.abs(num.matrix - cf.matrix))))
    a, b = coefficients(0.6, 0.3)
    sym = telecloning.output_clones(a, b, 0.5)[0].fidelity(pair_vector(a, b))
    elapsed = time.perf_counter() - start
    ok = prob_err < 1e-12 and fid_err < 1e-10 and rho_err < 1e-10 and abs(sym - 0.7) < 1e-12 and elapsed < 2
    return ok, (f"prob err {prob_err:.1e}, fidelity err {fid_err:.1e}, clone err {rho_err:.1e}, "
                f"F_sym {sym:.12g}, {elapsed:.2f} s")


def check_resources() -> tuple[bool, str]:
    rep = telecloning.resource_report()
    ok = rep == {"naive": {"ebits": 5, "cbits": 10}, "telecloning": {"ebits": 1, "cbits": 4}}
    return ok, str(rep)


CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("1 cloner/beam-splitter bridge", check_cloner_bridge),
    ("2 broadcast state equivalence", check_broadcast_states),
    ("3 symmetric point R=1/3", check_symmetric_point),
    ("4 swap limit R=1/2", check_swap_limit),
    ("5 separability windows", check_windows),
    ("6 CHSH non-violation", check_chsh),
    ("7 teleportation usefulness", check_teleportation),
    ("8 telecloning correctness", check_telecloning),
    ("9 resource report", check_resources),
]


def run_all() -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        start = time.perf_counter()
        try:
            passed, detail = fn()
        except Exception as exc:  # a crash is a failed check, not an aborted battery
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), detail, time.perf_counter() - start))
    return results
