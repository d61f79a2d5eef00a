"""Telecloning of an entangled pair through an eight-qubit channel.

Senders ``A1``/``A2`` hold the unknown pair ``alpha|00> + beta|11>`` and channel
qubits ``A'1``/``A'2``; receivers ``B1..B6`` hold the rest of the channel
(``B5``, ``B6`` carry the ancillas). Each sender Bell-measures her two qubits
and broadcasts two bits; the receivers correct locally and end up sharing
``alpha*eta0 + beta*eta1``, whose ``(B1, B2)`` and ``(B3, B4)`` marginals are
the two asymmetric clones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Literal

import numpy as np

from . import linalg
from .cloning import CloneParams, apply_cloner_d4, as_params, eta_vectors
from .errors import ZeroProbabilityError
from .states import (
    BELL_BASIS,
    BELL_ORDER,
    BellKind,
    DensityOperator,
    PureState,
    apply_local,
    check_pair,
    initial_pair,
    measure_in_basis,
    pair_vector,
    reorder,
    tensor,
)
from .transcript import ProtocolTranscript

SENDER_QUBITS = ("A'1", "A'2")
RECEIVERS = ("B1", "B2", "B3", "B4", "B5", "B6")
CHANNEL_LABELS = SENDER_QUBITS + RECEIVERS

PHI_P, PHI_M, PSI_P, PSI_M = BELL_ORDER

# Two classical bits per Bell outcome: (parity flip, phase flip).
OUTCOME_BITS = {PHI_P: "00", PHI_M: "01", PSI_P: "10", PSI_M: "11"}

OPERATORS = {
    "I": linalg.I2,
    "Z": linalg.SIGMA_Z,
    "X": linalg.SIGMA_X,
    "XZ": linalg.SIGMA_X @ linalg.SIGMA_Z,
}

_IDENT = ("I",) * 6
_Z_ODD = ("Z", "I", "Z", "I", "Z", "I")
_X_ALL = ("X",) * 6
_XZ_X = ("XZ", "X", "XZ", "X", "XZ", "X")

RECOVERY_TABLE: dict[tuple[BellKind, BellKind], tuple[str, ...]] = {
    (PHI_P, PHI_P): _IDENT,
    (PHI_P, PHI_M): _Z_ODD,
    (PHI_M, PHI_P): _Z_ODD,
    (PHI_M, PHI_M): _IDENT,
    (PSI_P, PSI_P): _X_ALL,
    (PSI_P, PSI_M): _XZ_X,
    (PSI_M, PSI_P): _XZ_X,
    (PSI_M, PSI_M): _X_ALL,
}


@dataclass(frozen=True)
class TelecloningChannel:
    params: CloneParams
    state: PureState


@dataclass(frozen=True)
class RecoveryPlan:
    outcome_pair: tuple[BellKind, BellKind]
    operators: tuple[str, ...]
    possible: bool = True

    def unitaries(self) -> list[np.ndarray]:
        return [OPERATORS[name] for name in self.operators]

    def describe(self) -> str:
        return " ⊗ ".join(self.operators)


@dataclass
class TelecloningOutcome:
    outcome: tuple[BellKind, BellKind]
    probability: float
    pre_recovery: PureState
    receiver_state: PureState
    fidelity: float
    plan: RecoveryPlan
    transcript: ProtocolTranscript = field(repr=False)


def build_channel(params) -> TelecloningChannel:
    params = as_params(params)
    eta0, eta1 = eta_vectors(params)
    amps = (np.kron([1, 0, 0, 0], eta0) + np.kron([0, 0, 0, 1], eta1)) / np.sqrt(2.0)
    return TelecloningChannel(params, PureState(amps, CHANNEL_LABELS))


def recovery_plan(outcome: tuple[BellKind, BellKind]) -> RecoveryPlan:
    """Receiver corrections for a pair of sender outcomes (A1's first).

    Mixed Phi/Psi pairs never occur; they map to an identity plan flagged
    ``possible=False``.
    """
    outcome = (BellKind(outcome[0]), BellKind(outcome[1]))
    if outcome in RECOVERY_TABLE:
        return RecoveryPlan(outcome, RECOVERY_TABLE[outcome])
    return RecoveryPlan(outcome, _IDENT, possible=False)


def target_state(alpha: complex, beta: complex, params) -> PureState:
    """The six-receiver state ``alpha*eta0 + beta*eta1``."""
    return apply_cloner_d4(params, alpha, beta, RECEIVERS)


def joint_state(alpha: complex, beta: complex, channel: TelecloningChannel) -> PureState:
    return tensor([initial_pair(alpha, beta, ("A1", "A2")), channel.state])


def _apply_plan(state: PureState, plan: RecoveryPlan) -> PureState:
    amps = state.amplitudes
    for label, U in zip(RECEIVERS, plan.unitaries()):
        amps = apply_local(PureState(amps, state.labels), U, [label])
    return PureState(amps, state.labels)


def _run_branch(joint: PureState, k1: int, k2: int, target: PureState,
                transcript: ProtocolTranscript) -> TelecloningOutcome:
    o1, p1, after1 = measure_in_basis(joint, ("A1", "A'1"), BELL_BASIS, outcome=k1)
    transcript.measurement("A1", ("A1", "A'1"), str(BELL_ORDER[o1]), p1)
    o2, p2, after2 = measure_in_basis(after1, ("A2", "A'2"), BELL_BASIS, outcome=k2)
    transcript.measurement("A2", ("A2", "A'2"), str(BELL_ORDER[o2]), p2)
    outcome = (BELL_ORDER[o1], BELL_ORDER[o2])
    bits = (OUTCOME_BITS[outcome[0]], OUTCOME_BITS[outcome[1]])
    for sender, msg in zip(("A1", "A2"), bits):
        transcript.send(sender, RECEIVERS, msg)
    for receiver in RECEIVERS:
        for sender, msg in zip(("A1", "A2"), bits):
            transcript.receive(receiver, sender, msg)
    plan = recovery_plan(outcome)
    pre = reorder(after2, RECEIVERS)
    post = _apply_plan(pre, plan)
    for receiver, op in zip(RECEIVERS, plan.operators):
        transcript.local_op(receiver, op)
    return TelecloningOutcome(
        outcome=outcome,
        probability=p1 * p2,
        pre_recovery=pre,
        receiver_state=post,
        fidelity=post.fidelity(target),
        plan=plan,
        transcript=transcript,
    )


def run_telecloning(
    alpha: complex,
    beta: complex,
    params,
    outcome_source: Literal["enumerate", "random"] = "enumerate",
    seed: int | None = None,
) -> list[TelecloningOutcome]:
    """Run the protocol for every possible outcome pair, or for one sampled pair."""
    alpha, beta = check_pair(alpha, beta)
    params = as_params(params)
    channel = build_channel(params)
    joint = joint_state(alpha, beta, channel)
    target = target_state(alpha, beta, params)
    if outcome_source == "enumerate":
        results = []
        for k1, k2 in product(range(4), repeat=2):
            if (BELL_ORDER[k1], BELL_ORDER[k2]) not in RECOVERY_TABLE:
                continue
            results.append(_run_branch(joint, k1, k2, target, ProtocolTranscript(seed)))
        return results
    if outcome_source != "random":
        raise ValueError(f"unknown outcome source {outcome_source!r}")
    rng = np.random.default_rng(seed)
    transcript = ProtocolTranscript(seed)
    k1, _, after1 = measure_in_basis(joint, ("A1", "A'1"), BELL_BASIS, rng=rng)
    k2, _, _ = measure_in_basis(after1, ("A2", "A'2"), BELL_BASIS, rng=rng)
    return [_run_branch(joint, k1, k2, target, transcript)]


def run_outcome(alpha, beta, params, outcome: tuple[BellKind, BellKind]) -> TelecloningOutcome:
    """Force a specific pair of sender outcomes."""
    k1, k2 = (BELL_ORDER.index(BellKind(o)) for o in outcome)
    alpha, beta = check_pair(alpha, beta)
    params = as_params(params)
    joint = joint_state(alpha, beta, build_channel(params))
    try:
        return _run_branch(joint, k1, k2, target_state(alpha, beta, params), ProtocolTranscript())
    except ZeroProbabilityError:
        raise ZeroProbabilityError(f"outcome {outcome[0]}, {outcome[1]} cannot occur") from None


def output_clones(alpha: complex, beta: complex, params) -> tuple[DensityOperator, DensityOperator]:
    """Clone pairs ``(B1, B2)`` and ``(B3, B4)`` obtained from the receivers' state."""
    state = target_state(alpha, beta, params)
    return state.reduced(("B1", "B2")), state.reduced(("B3", "B4"))


def closed_form_clones(alpha: complex, beta: complex, params) -> tuple[DensityOperator, DensityOperator]:
    params = as_params(params)
    p, q = params.p, params.q
    proj = linalg.projector(pair_vector(alpha, beta))
    den = 1 + 3 * (p * p + q * q)
    rho12 = ((1 - q * q + 3 * p * p) * proj + q * q * np.eye(4)) / den
    rho34 = ((1 - p * p + 3 * q * q) * proj + p * p * np.eye(4)) / den
    return (DensityOperator(rho12, (2, 2), ("B1", "B2")), DensityOperator(rho34, (2, 2), ("B3", "B4")))


def clone_fidelities(params) -> tuple[float, float]:
    """Input-independent fidelities of the ``(B1, B2)`` and ``(B3, B4)`` clones."""
    params = as_params(params)
    p, q = params.p, params.q
    den = 1 + 3 * (p * p + q * q)
    return (1 + 3 * p * p) / den, (1 + 3 * q * q) / den


def clone_report(alpha: complex, beta: complex, params) -> dict:
    params = as_params(params)
    numeric = output_clones(alpha, beta, params)
    closed = closed_form_clones(alpha, beta, params)
    psi = pair_vector(alpha, beta)
    return {
        "p": params.p,
        "fidelity_B1B2": numeric[0].fidelity(psi),
        "fidelity_B3B4": numeric[1].fidelity(psi),
        "closed_form_match": all(n.allclose(c, atol=1e-10) for n, c in zip(numeric, closed)),
    }


def resource_report() -> dict:
    """Entanglement and classical-communication cost of both distribution schemes.

    Naive: teleport A2's qubit to A1 (1 ebit, 2 bits), clone locally, teleport
    four qubits to the receivers (4 ebits, 8 bits).
    """
    return {
        "naive": {"ebits": 1 + 4, "cbits": 2 + 8},
        "telecloning": {"ebits": 1, "cbits": 2 * 2},
    }
