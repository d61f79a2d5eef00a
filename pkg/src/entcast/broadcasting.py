"""Conditional broadcasting of entanglement through two unbalanced beam splitters.

Alice holds ``a1, a2``, Bob ``b1, b2``; singlets are shared on ``(a2, c)`` and
``(b2, d)``. Each sender mixes her two photons on a beam splitter of
reflectivity ``R``; conditioning on one photon per output port applies the
operator ``Pi = (1-2R) I + 2R |Psi-><Psi-|`` to the pair.

The normalisation ``lambda_d`` follows the closed-form convention in which the
two singlet factors ``1/sqrt(2)`` are left out of the unnormalised state, so
``lambda_d = 4 (1 - 3R + 3R^2)^2``. The physical probability that both beam
splitters emit one photon per port is ``lambda_d / 4`` and is reported as
``success_probability``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .cloning import Reflectivity, as_reflectivity
from .errors import EntcastError
from .states import (
    BellKind,
    DensityOperator,
    PureState,
    bell_state,
    bell_vector,
    check_pair,
    initial_pair,
    pair_vector,
    reorder,
    tensor,
)

LABELS = ("a1", "a2", "c", "b1", "b2", "d")
_SINGLET_NORM = 4.0  # (sqrt 2)^2 for each of the two singlets
_MIN_LAMBDA = 1e-14


@dataclass(frozen=True, eq=False)
class BroadcastResult:
    R: Reflectivity
    alpha: complex
    beta: complex
    lambda_d: float
    lambda_s: float
    success_probability: float
    phi_d: PureState
    rho_a1b1: DensityOperator
    rho_cd: DensityOperator
    rho_a1c: DensityOperator
    rho_b1d: DensityOperator

    @property
    def pairs(self) -> dict[str, DensityOperator]:
        return {"a1b1": self.rho_a1b1, "cd": self.rho_cd, "a1c": self.rho_a1c, "b1d": self.rho_b1d}


def _norm_d(R: float) -> float:
    return 1.0 - 3.0 * R + 3.0 * R * R


def pi_operator(R) -> np.ndarray:
    R = as_reflectivity(R).R
    return (1.0 - 2.0 * R) * np.eye(4, dtype=complex) + 2.0 * R * linalg.projector(
        bell_vector(BellKind.PSI_MINUS)
    )


def lambda_d_closed(R) -> float:
    R = as_reflectivity(R).R
    return 4.0 * _norm_d(R) ** 2


def build_input_state(alpha: complex, beta: complex) -> PureState:
    """Initial pair with both singlets attached, in label order ``a1 a2 c b1 b2 d``."""
    full = tensor([
        initial_pair(alpha, beta, ("a1", "b1")),
        bell_state(BellKind.PSI_MINUS, ("a2", "c")),
        bell_state(BellKind.PSI_MINUS, ("b2", "d")),
    ])
    return reorder(full, LABELS)


def run_broadcast(alpha: complex, beta: complex, R) -> BroadcastResult:
    refl = as_reflectivity(R)
    alpha, beta = check_pair(alpha, beta)
    xi_in = build_input_state(alpha, beta)
    pi = pi_operator(refl)
    op = linalg.kron_all([pi, linalg.I2, pi, linalg.I2])
    v = op @ xi_in.amplitudes
    prob = float(np.vdot(v, v).real)
    lambda_d = _SINGLET_NORM * prob
    if lambda_d < _MIN_LAMBDA:
        raise EntcastError(f"conditional branch has vanishing weight {lambda_d:.3g}")
    phi_d = PureState(v / np.sqrt(prob), LABELS)
    return BroadcastResult(
        R=refl,
        alpha=alpha,
        beta=beta,
        lambda_d=lambda_d,
        lambda_s=1.0 - lambda_d,
        success_probability=prob,
        phi_d=phi_d,
        rho_a1b1=phi_d.reduced(("a1", "b1")),
        rho_cd=phi_d.reduced(("c", "d")),
        rho_a1c=phi_d.reduced(("a1", "c")),
        rho_b1d=phi_d.reduced(("b1", "d")),
    )


def _alpha_terms(R: float):
    """Terms (coefficient, a1a2, b1b2, cd) of the alpha branch, before normalisation."""
    s, t, u = 1.0 - 2.0 * R, 1.0 - R, R
    return (
        (s * s, "00", "00", "11"),
        (t * t, "01", "01", "00"),
        (u * u, "10", "10", "00"),
        (-s * t, "00", "01", "10"),
        (-s * t, "01", "00", "01"),
        (u * s, "00", "10", "10"),
        (u * s, "10", "00", "01"),
        (-u * t, "01", "10", "00"),
        (-u * t, "10", "01", "00"),
    )


def _beta_terms(R: float):
    s, t, u = 1.0 - 2.0 * R, 1.0 - R, R
    return (
        (s * s, "11", "11", "00"),
        (t * t, "10", "10", "11"),
        (u * u, "01", "01", "11"),
        (-s * t, "11", "10", "01"),
        (-s * t, "10", "11", "10"),
        (u * s, "11", "01", "01"),
        (u * s, "01", "11", "10"),
        (-u * t, "10", "01", "11"),
        (-u * t, "01", "10", "11"),
    )


def phi_d_explicit(alpha: complex, beta: complex, R) -> PureState:
    """The normalised conditional state written out term by term (18 terms)."""
    R = as_reflectivity(R).R
    alpha, beta = check_pair(alpha, beta)
    lam = 4.0 * _norm_d(R) ** 2
    amps = np.zeros(64, dtype=complex)
    for amp, terms in ((alpha, _alpha_terms(R)), (beta, _beta_terms(R))):
        for coef, a, b, cd in terms:
            amps[int(a + b + cd, 2)] += amp * coef
    # written as |a1 a2>|b1 b2>|c d>
    state = PureState(amps / np.sqrt(lam), ("a1", "a2", "b1", "b2", "c", "d"))
    return reorder(state, LABELS)


def _closed(R: float, alpha: complex, beta: complex, coherent: float, diag00: float,
            diag11: float, diag_odd: float) -> np.ndarray:
    psi = pair_vector(alpha, beta)
    m = coherent * linalg.projector(psi) + np.diag([diag00, diag_odd, diag_odd, diag11]).astype(complex)
    return m / (4.0 * _norm_d(R) ** 2)


def closed_form_rho_a1b1(alpha: complex, beta: complex, R) -> DensityOperator:
    R = as_reflectivity(R).R
    alpha, beta = check_pair(alpha, beta)
    cross = 4.0 * (1 - 2 * R) * (1 - R) * R * R
    m = _closed(
        R, alpha, beta,
        coherent=4.0 * (1 - 2 * R) ** 2 * (1 - R) ** 2,
        diag00=R**4 + cross * abs(alpha) ** 2,
        diag11=R**4 + cross * abs(beta) ** 2,
        diag_odd=R * R * (2 - 6 * R + 5 * R * R),
    )
    return DensityOperator(m, (2, 2), ("a1", "b1"))


def closed_form_rho_cd(alpha: complex, beta: complex, R) -> DensityOperator:
    R = as_reflectivity(R).R
    alpha, beta = check_pair(alpha, beta)
    cross = 4.0 * R * (1 - R) * (1 - 2 * R) ** 2
    m = _closed(
        R, alpha, beta,
        coherent=4.0 * R * R * (1 - R) ** 2,
        diag00=(1 - 2 * R) ** 4 + cross * abs(alpha) ** 2,
        diag11=(1 - 2 * R) ** 4 + cross * abs(beta) ** 2,
        diag_odd=(1 - 2 * R) ** 2 * (1 - 2 * R + 2 * R * R),
    )
    return DensityOperator(m, (2, 2), ("c", "d"))


def closed_form_rho_a1c(alpha: complex, beta: complex, R) -> DensityOperator:
    """Cross pair ``(a1, c)``; identical to ``(b1, d)``."""
    R = as_reflectivity(R).R
    alpha, beta = check_pair(alpha, beta)
    a2, b2 = abs(alpha) ** 2, abs(beta) ** 2
    odd = 1 - 4 * R + 3 * R * R
    m = np.diag([
        (1 - R) ** 2 * a2,
        odd * a2 + R * (3 * R - 1),
        odd * b2 + R * (3 * R - 1),
        (1 - R) ** 2 * b2,
    ]).astype(complex)
    m += 2 * R * (1 - 2 * R) * linalg.projector(bell_vector(BellKind.PSI_PLUS))
    return DensityOperator(m / (2.0 * _norm_d(R)), (2, 2), ("a1", "c"))


def broadcast_fidelities(alpha: complex, beta: complex, R) -> tuple[float, float]:
    """Closed-form fidelities ``(F_a1b1, F_cd)`` of both output pairs to the input pair."""
    R = as_reflectivity(R).R
    alpha, beta = check_pair(alpha, beta)
    quart = abs(alpha) ** 4 + abs(beta) ** 4
    den = 4.0 * _norm_d(R) ** 2
    f_ab = (4 * (1 - 2 * R) ** 2 * (1 - R) ** 2 + R**4 + 4 * (1 - 2 * R) * (1 - R) * R * R * quart) / den
    f_cd = (4 * R * R * (1 - R) ** 2 + (1 - 2 * R) ** 4 + 4 * R * (1 - R) * (1 - 2 * R) ** 2 * quart) / den
    return f_ab, f_cd


def align_global_phase(target: np.ndarray, other: np.ndarray) -> np.ndarray:
    """Rotate ``other`` by a global phase so its largest amplitude matches ``target``'s."""
    k = int(np.argmax(np.abs(target)))
    if abs(other[k]) < 1e-300:
        return other
    phase = (target[k] / abs(target[k])) / (other[k] / abs(other[k]))
    return other * phase
