"""Universal asymmetric cloners and the beam-splitter fidelity correspondence."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .states import PureState, check_pair


@dataclass(frozen=True)
class CloneParams:
    """Cloner asymmetry ``p``; the complementary weight ``q = 1 - p`` is derived."""

    p: float

    def __post_init__(self):
        p = float(self.p)
        if not 0.0 <= p <= 1.0:
            raise ParameterError(f"p must lie in [0, 1], got {p}")
        object.__setattr__(self, "p", p)

    @property
    def q(self) -> float:
        return 1.0 - self.p


@dataclass(frozen=True)
class Reflectivity:
    """Beam-splitter reflectivity ``R`` in ``[0, 1/2]``; ``T = 1 - R``."""

    R: float

    def __post_init__(self):
        R = float(self.R)
        if not 0.0 <= R <= 0.5:
            raise ParameterError(f"reflectivity must lie in [0, 1/2], got {R}")
        object.__setattr__(self, "R", R)

    @property
    def T(self) -> float:
        return 1.0 - self.R


def as_reflectivity(R) -> Reflectivity:
    return R if isinstance(R, Reflectivity) else Reflectivity(R)


def as_params(params) -> CloneParams:
    return params if isinstance(params, CloneParams) else CloneParams(params)


def filip_fidelities(R) -> tuple[float, float]:
    """Fidelities ``(F_A, F_B)`` of partial teleportation through a beam splitter."""
    R = as_reflectivity(R).R
    den = 2.0 * (1.0 - 3.0 * R + 3.0 * R * R)
    return (2.0 - 6.0 * R + 5.0 * R * R) / den, (1.0 - 2.0 * R + 2.0 * R * R) / den


def asym_cloner_fidelities(params) -> tuple[float, float]:
    """Closed-form fidelities of the qubit cloner ``U(p)``.

    ``F_A`` belongs to the second output register, ``F_B`` to the first.
    """
    p = as_params(params).p
    den = 2.0 * (1.0 - p + p * p)
    return (2.0 - 2.0 * p + p * p) / den, (1.0 + p * p) / den


def p_from_R(R) -> CloneParams:
    R = as_reflectivity(R).R
    return CloneParams(R / (1.0 - R))


def cloner_isometry(params, d: int = 2) -> np.ndarray:
    """Matrix of the asymmetric Heisenberg cloner, shape ``(d**3, d)``.

    Column ``j`` is the image of ``|j>|0>|0>``; output registers are ordered
    (clone 1, clone 2, ancilla) and indices are taken mod ``d``.
    """
    if d < 2:
        raise ParameterError(f"dimension must be at least 2, got {d}")
    params = as_params(params)
    p, q = params.p, params.q
    norm = 1.0 / np.sqrt(1.0 + (d - 1) * (p * p + q * q))
    u = np.zeros((d**3, d), dtype=complex)

    def idx(a, b, c):
        return (a * d + b) * d + c

    for j in range(d):
        u[idx(j, j, j), j] += 1.0
        for r in range(1, d):
            k = (j + r) % d
            u[idx(j, k, k), j] += p
            u[idx(k, j, k), j] += q
    return u * norm


# Two-qubit encoding |0>->|00>, |1>->|01>, |2>->|10>, |3>->|11> of the d=4 cloner.
_ETA0_TERMS = (
    ("000000", "1"), ("000101", "p"), ("001010", "p"), ("001111", "p"),
    ("010001", "q"), ("100010", "q"), ("110011", "q"),
)
_ETA1_TERMS = (
    ("111111", "1"), ("110000", "p"), ("110101", "p"), ("111010", "p"),
    ("001100", "q"), ("011101", "q"), ("101110", "q"),
)


def _eta(terms, p: float, q: float) -> np.ndarray:
    weight = {"1": 1.0, "p": p, "q": q}
    v = np.zeros(64, dtype=complex)
    for bits, w in terms:
        v[int(bits, 2)] = weight[w]
    return v / np.sqrt(1.0 + 3.0 * (p * p + q * q))


def eta_vectors(params) -> tuple[np.ndarray, np.ndarray]:
    params = as_params(params)
    return _eta(_ETA0_TERMS, params.p, params.q), _eta(_ETA1_TERMS, params.p, params.q)


def apply_cloner_d4(params, alpha: complex, beta: complex, labels=("B1", "B2", "B3", "B4", "B5", "B6")) -> PureState:
    """Cloner output ``alpha*eta0 + beta*eta1`` for the pair ``alpha|00> + beta|11>``."""
    alpha, beta = check_pair(alpha, beta)
    eta0, eta1 = eta_vectors(params)
    return PureState(alpha * eta0 + beta * eta1, tuple(labels))
