"""Labelled multi-qubit pure states and density operators.

Qubits are always addressed by party label (``"a1"``, ``"B3"``, ...). The
amplitude vector is big-endian in label order: the first label is the most
significant bit.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .errors import DimensionError, LabelError, NormalizationError, ZeroProbabilityError

NORM_TOL = 1e-10
_SQRT1_2 = 1.0 / np.sqrt(2.0)


class BellKind(enum.Enum):
    PHI_PLUS = "Phi+"
    PHI_MINUS = "Phi-"
    PSI_PLUS = "Psi+"
    PSI_MINUS = "Psi-"

    def __str__(self) -> str:
        return self.value


_BELL_VECTORS = {
    BellKind.PHI_PLUS: np.array([1, 0, 0, 1]) * _SQRT1_2,
    BellKind.PHI_MINUS: np.array([1, 0, 0, -1]) * _SQRT1_2,
    BellKind.PSI_PLUS: np.array([0, 1, 1, 0]) * _SQRT1_2,
    BellKind.PSI_MINUS: np.array([0, 1, -1, 0]) * _SQRT1_2,
}

BELL_ORDER = (BellKind.PHI_PLUS, BellKind.PHI_MINUS, BellKind.PSI_PLUS, BellKind.PSI_MINUS)
# rows are <Phi+|, <Phi-|, <Psi+|, <Psi-| conjugated back to kets
BELL_BASIS = np.array([_BELL_VECTORS[k] for k in BELL_ORDER], dtype=complex)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        labels = tuple(str(lab) for lab in self.labels)
        if len(set(labels)) != len(labels):
            raise LabelError(f"duplicate labels in {labels}")
        if amps.size != 2 ** len(labels):
            raise DimensionError(f"{amps.size} amplitudes for {len(labels)} qubits")
        if not np.all(np.isfinite(amps)):
            raise ValueError("non-finite amplitudes")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"state norm is {norm!r}, expected 1")
        object.__setattr__(self, "amplitudes", _frozen(amps))
        object.__setattr__(self, "labels", labels)

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LabelError(f"unknown label {label!r}; have {self.labels}") from None

    def amplitude(self, bits: str) -> complex:
        return complex(self.amplitudes[int(bits, 2)])

    def reduced(self, labels: Sequence[str]) -> "DensityOperator":
        """Reduced density operator on ``labels``, in the order given."""
        idx = [self.index_of(lab) for lab in labels]
        if len(set(idx)) != len(idx):
            raise LabelError(f"duplicate labels in {list(labels)}")
        rest = [i for i in range(self.n_qubits) if i not in idx]
        t = self.amplitudes.reshape([2] * self.n_qubits).transpose(idx + rest)
        t = t.reshape(2 ** len(idx), -1)
        return DensityOperator(t @ t.conj().T, (2,) * len(idx), tuple(labels))

    def overlap(self, other: "PureState") -> complex:
        if self.labels != other.labels:
            other = reorder(other, self.labels)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "PureState") -> float:
        """Global-phase-insensitive fidelity ``|<self|other>|^2``."""
        return abs(self.overlap(other)) ** 2

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "amplitudes": [[float(z.real), float(z.imag)] for z in self.amplitudes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "PureState":
        amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
        return cls(amps, tuple(data["labels"]))

    @classmethod
    def from_json(cls, text: str) -> "PureState":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"PureState(labels={self.labels})"


@dataclass(frozen=True, eq=False)
class DensityOperator:
    matrix: np.ndarray
    dims: tuple[int, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        dims = tuple(int(d) for d in self.dims)
        labels = tuple(self.labels) or tuple(f"q{i}" for i in range(len(dims)))
        if int(np.prod(dims)) != m.shape[0] or m.shape[0] != m.shape[1]:
            raise DimensionError(f"dims {dims} do not match matrix shape {m.shape}")
        if len(labels) != len(dims) or len(set(labels)) != len(labels):
            raise LabelError(f"labels {labels} do not match dims {dims}")
        if not linalg.is_hermitian(m):
            raise linalg.NotHermitianError("density operator is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > NORM_TOL:
            raise NormalizationError(f"trace is {tr!r}, expected 1")
        if np.linalg.eigvalsh((m + m.conj().T) / 2)[0] < -NORM_TOL:
            raise ValueError("density operator has a negative eigenvalue")
        object.__setattr__(self, "matrix", _frozen(m))
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def fidelity(self, psi) -> float:
        """``<psi|rho|psi>`` for a pure reference (PureState or amplitude vector)."""
        vec = psi.amplitudes if isinstance(psi, PureState) else psi
        return linalg.pure_fidelity(self.matrix, vec)

    def allclose(self, other, atol: float = 1e-10) -> bool:
        m = other.matrix if isinstance(other, DensityOperator) else np.asarray(other)
        return bool(np.allclose(self.matrix, m, rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        return f"DensityOperator(labels={self.labels}, dims={self.dims})"


def basis_state(n: int, index: str, labels: Sequence[str] | None = None) -> PureState:
    if len(index) != n or set(index) - {"0", "1"}:
        raise DimensionError(f"index {index!r} is not a {n}-bit string")
    amps = np.zeros(2**n, dtype=complex)
    amps[int(index, 2)] = 1.0
    return PureState(amps, tuple(labels) if labels else tuple(f"q{i}" for i in range(n)))


def bell_vector(kind: BellKind) -> np.ndarray:
    return _BELL_VECTORS[BellKind(kind)].astype(complex)


def bell_state(kind: BellKind, labels: Sequence[str] = ("x", "y")) -> PureState:
    return PureState(bell_vector(kind), tuple(labels))


def check_pair(alpha: complex, beta: complex) -> tuple[complex, complex]:
    alpha, beta = complex(alpha), complex(beta)
    total = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(total - 1.0) > NORM_TOL:
        raise NormalizationError(f"|alpha|^2 + |beta|^2 = {total!r}, expected 1")
    return alpha, beta


def pair_vector(alpha: complex, beta: complex) -> np.ndarray:
    alpha, beta = check_pair(alpha, beta)
    return np.array([alpha, 0, 0, beta], dtype=complex)


def initial_pair(alpha: complex, beta: complex, labels: Sequence[str] = ("a1", "b1")) -> PureState:
    """The shared pair ``alpha|00> + beta|11>`` (0 = H, 1 = V)."""
    return PureState(pair_vector(alpha, beta), tuple(labels))


def tensor(states: Sequence[PureState]) -> PureState:
    labels: list[str] = []
    for st in states:
        labels.extend(st.labels)
    if len(set(labels)) != len(labels):
        raise LabelError(f"label sets overlap: {labels}")
    amps = linalg.kron_all([st.amplitudes for st in states])
    return PureState(amps, tuple(labels))


def reorder(state: PureState, new_label_order: Sequence[str]) -> PureState:
    new_label_order = tuple(new_label_order)
    if sorted(new_label_order) != sorted(state.labels) or len(set(new_label_order)) != len(new_label_order):
        raise LabelError(f"{new_label_order} is not a permutation of {state.labels}")
    perm = [state.labels.index(lab) for lab in new_label_order]
    t = state.amplitudes.reshape([2] * state.n_qubits).transpose(perm)
    return PureState(t.reshape(-1), new_label_order)


def apply_local(state: PureState, op, on_labels: Sequence[str]) -> np.ndarray:
    """Apply ``op`` to the listed qubits; returns the (possibly unnormalized) amplitudes.

    Qubit order of the result is that of ``state``.
    """
    idx = [state.index_of(lab) for lab in on_labels]
    k = len(idx)
    op = np.asarray(op, dtype=complex)
    if op.shape != (2**k, 2**k):
        raise DimensionError(f"operator {op.shape} does not act on {k} qubits")
    n = state.n_qubits
    t = np.moveaxis(state.amplitudes.reshape([2] * n), idx, range(k))
    t = (op @ t.reshape(2**k, -1)).reshape([2] * n)
    return np.moveaxis(t, range(k), idx).reshape(-1)


def measure_in_basis(
    state: PureState,
    on_labels: Sequence[str],
    basis=BELL_BASIS,
    outcome: int | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[int, float, PureState]:
    """Projective measurement of two qubits onto an orthonormal basis.

    ``basis`` holds the four basis kets as rows. With ``outcome=None`` an
    outcome is sampled from ``rng``. Returns ``(outcome, probability,
    post_state)``; the post-measurement state lives on the unmeasured labels in
    their original order.
    """
    basis = np.asarray(basis, dtype=complex)
    if basis.shape != (4, 4):
        raise DimensionError("basis must be four 2-qubit kets")
    if not np.allclose(basis.conj() @ basis.T, np.eye(4), atol=1e-10):
        raise ValueError("measurement basis is not orthonormal")
    on_labels = tuple(on_labels)
    if len(on_labels) != 2:
        raise LabelError("exactly two labels must be measured")
    rest = tuple(lab for lab in state.labels if lab not in on_labels)
    ordered = reorder(state, on_labels + rest)
    branches = basis.conj() @ ordered.amplitudes.reshape(4, -1)
    probs = np.sum(np.abs(branches) ** 2, axis=1)
    if outcome is None:
        rng = rng if rng is not None else np.random.default_rng()
        outcome = int(rng.choice(4, p=probs / probs.sum()))
    prob = float(probs[outcome])
    if prob < 1e-14:
        raise ZeroProbabilityError(f"outcome {outcome} has probability {prob:.3g}")
    return outcome, prob, PureState(branches[outcome] / np.sqrt(prob), rest)


def outcome_probabilities(state: PureState, on_labels: Sequence[str], basis=BELL_BASIS) -> np.ndarray:
    on_labels = tuple(on_labels)
    rest = tuple(lab for lab in state.labels if lab not in on_labels)
    ordered = reorder(state, on_labels + rest)
    branches = np.asarray(basis, dtype=complex).conj() @ ordered.amplitudes.reshape(4, -1)
    return np.sum(np.abs(branches) ** 2, axis=1)


def to_density(state: PureState) -> DensityOperator:
    return DensityOperator(linalg.projector(state.amplitudes), (2,) * state.n_qubits, state.labels)
