"""Simulation of broadcasting and telecloning of two-qubit entanglement."""

from .broadcasting import BroadcastResult, run_broadcast
from .cloning import CloneParams, Reflectivity
from .criteria import broadcast_condition, chsh_M, ppt_separable, teleportation_N
from .errors import EntcastError
from .runner import monte_carlo_teleportation_fidelity
from .states import BellKind, DensityOperator, PureState
from .telecloning import run_telecloning

__version__ = "0.1.0"

__all__ = [
    "BellKind",
    "BroadcastResult",
    "CloneParams",
    "DensityOperator",
    "EntcastError",
    "PureState",
    "Reflectivity",
    "broadcast_condition",
    "chsh_M",
    "monte_carlo_teleportation_fidelity",
    "ppt_separable",
    "run_broadcast",
    "run_telecloning",
    "teleportation_N",
]
