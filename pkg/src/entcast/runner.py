"""Standard teleportation through a mixed two-qubit channel, exact and Monte Carlo.

The sender Bell-measures (input, channel qubit 1) and the receiver applies one
of ``I, Z, X, XZ`` to channel qubit 2. Which Pauli answers which outcome is
fixed by the Bell state the channel is closest to: the correction table is the
one that teleports perfectly through that Bell state.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import DimensionError, ParameterError
from .states import BELL_BASIS, BELL_ORDER, BellKind, DensityOperator, PureState

CORRECTIONS = {
    "I": linalg.I2,
    "Z": linalg.SIGMA_Z,
    "X": linalg.SIGMA_X,
    "XZ": linalg.SIGMA_X @ linalg.SIGMA_Z,
}


def _channel_matrix(channel) -> np.ndarray:
    m = channel.matrix if isinstance(channel, DensityOperator) else linalg.as_matrix(channel)
    if m.shape != (4, 4):
        raise DimensionError(f"channel must be a 2-qubit state, got shape {m.shape}")
    return m


def _branches(channel: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Unnormalised receiver states, one per Bell outcome; ``phi`` is (batch, 2)."""
    rho = channel.reshape(2, 2, 2, 2)
    # basis ket k has amplitude M[k, i, a] on |i>_input |a>_channel1
    M = BELL_BASIS.reshape(4, 2, 2)
    v = np.einsum("kia,ni->nka", M.conj(), phi)
    return np.einsum("nka,abcd,nkc->nkbd", v, rho, v.conj())


@lru_cache(maxsize=None)
def correction_table(reference: BellKind) -> tuple[str, ...]:
    """Pauli correction names for outcomes Phi+, Phi-, Psi+, Psi- given a Bell-state channel."""
    ref = BELL_BASIS[BELL_ORDER.index(reference)]
    probe = np.array([[0.6, 0.8j], [0.8, -0.6], [1.0, 0.0]], dtype=complex)
    br = _branches(linalg.projector(ref), probe)
    table = []
    for k in range(4):
        for name, U in CORRECTIONS.items():
            out = U @ br[:, k] @ U.conj().T
            fid = np.einsum("ni,nij,nj->n", probe.conj(), out, probe).real * 4
            if np.allclose(fid, 1.0, atol=1e-12):
                table.append(name)
                break
        else:  # pragma: no cover - the four Paulis always suffice
            raise RuntimeError(f"no Pauli correction for outcome {BELL_ORDER[k]}")
    return tuple(table)


def closest_bell_state(channel) -> BellKind:
    m = _channel_matrix(channel)
    overlaps = [np.real(np.vdot(b, m @ b)) for b in BELL_BASIS]
    return BELL_ORDER[int(np.argmax(overlaps))]


def teleportation_outputs(channel, input_state, reference: BellKind | None = None):
    """Per-outcome ``(probability, corrected receiver state)`` pairs."""
    m = _channel_matrix(channel)
    phi = _qubit_vector(input_state)[None]
    reference = reference or closest_bell_state(m)
    table = correction_table(reference)
    out = []
    for k, name in enumerate(table):
        U = CORRECTIONS[name]
        raw = U @ _branches(m, phi)[0, k] @ U.conj().T
        p = float(np.trace(raw).real)
        out.append((p, raw / p if p > 1e-15 else raw))
    return out


def _qubit_vector(state) -> np.ndarray:
    vec = state.amplitudes if isinstance(state, PureState) else np.asarray(state, dtype=complex).reshape(-1)
    if vec.size != 2:
        raise DimensionError("input must be a single qubit")
    if abs(np.linalg.norm(vec) - 1.0) > 1e-10:
        raise DimensionError("input state is not unit norm")
    return vec


def _fidelities(m: np.ndarray, phi: np.ndarray, table) -> np.ndarray:
    br = _branches(m, phi)
    total = np.zeros(phi.shape[0])
    for k, name in enumerate(table):
        U = CORRECTIONS[name]
        out = np.einsum("ij,njk,lk->nil", U, br[:, k], U.conj())
        total += np.einsum("ni,nij,nj->n", phi.conj(), out, phi).real
    return total


def simulate_standard_teleportation(channel, input_state, reference: BellKind | None = None) -> float:
    """Outcome-averaged fidelity ``sum_k p_k <phi|rho_k|phi>`` for one input qubit."""
    m = _channel_matrix(channel)
    phi = _qubit_vector(input_state)[None]
    table = correction_table(reference or closest_bell_state(m))
    return float(_fidelities(m, phi, table)[0])


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def haar_random_qubits(n: int, seed=None) -> np.ndarray:
    """``n`` Haar-uniform qubit kets as rows: two complex Gaussians, normalised."""
    rng = _rng(seed)
    z = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def haar_random_qubit(seed=None, label: str = "in") -> PureState:
    return PureState(haar_random_qubits(1, seed)[0], (label,))


def bloch_vectors(kets: np.ndarray) -> np.ndarray:
    a, b = kets[:, 0], kets[:, 1]
    cross = 2 * np.conj(a) * b
    return np.stack([cross.real, cross.imag, np.abs(a) ** 2 - np.abs(b) ** 2], axis=1)


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    stderr: float
    n_samples: int
    seed: int | None


def monte_carlo_teleportation_fidelity(channel, n_samples: int = 100_000, seed=0,
                                       reference: BellKind | None = None) -> MonteCarloResult:
    """Average teleportation fidelity over Haar-random inputs."""
    if n_samples < 100:
        raise ParameterError("n_samples must be at least 100")
    m = _channel_matrix(channel)
    table = correction_table(reference or closest_bell_state(m))
    fids = _fidelities(m, haar_random_qubits(n_samples, seed), table)
    return MonteCarloResult(
        mean=float(fids.mean()),
        stderr=float(fids.std(ddof=1) / np.sqrt(n_samples)),
        n_samples=n_samples,
        seed=seed if isinstance(seed, (int, type(None))) else None,
    )


def werner_state() -> DensityOperator:
    singlet = BELL_BASIS[BELL_ORDER.index(BellKind.PSI_MINUS)]
    return DensityOperator(np.eye(4) / 8 + 0.5 * linalg.projector(singlet), (2, 2), ("x", "y"))
