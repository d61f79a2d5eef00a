"""Two-qubit entanglement and nonlocality diagnostics.

Covers the partial-transpose separability test, the Bloch/correlation-matrix
decomposition, the Horodecki CHSH quantity ``M`` and teleportation quantity
``N``, and the closed-form |alpha|^2 windows for the broadcast output pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import linalg
from .cloning import as_reflectivity
from .errors import DimensionError
from .states import DensityOperator

PPT_TOL = 1e-10
BOUNDARY_BAND = 1e-6


def _two_qubit(rho) -> np.ndarray:
    if isinstance(rho, DensityOperator):
        if rho.dims != (2, 2):
            raise DimensionError(f"expected a 2-qubit state, got dims {rho.dims}")
        return rho.matrix
    m = linalg.as_matrix(rho)
    if m.shape != (4, 4):
        raise DimensionError(f"expected a 4x4 matrix, got {m.shape}")
    return m


def min_pt_eigenvalue(rho) -> float:
    pt = linalg.partial_transpose(_two_qubit(rho), (2, 2), on=1)
    return float(linalg.hermitian_eigenvalues(pt)[0])


def ppt_separable(rho) -> tuple[bool, float]:
    """Peres-Horodecki test; exact for two qubits.

    Returns ``(separable, min_eigenvalue_of_partial_transpose)``.
    """
    lam = min_pt_eigenvalue(rho)
    return lam >= -PPT_TOL, lam


def ppt_verdict(rho, band: float = BOUNDARY_BAND) -> str:
    """Three-valued verdict: ``"separable"``, ``"boundary"`` or ``"inseparable"``."""
    lam = min_pt_eigenvalue(rho)
    if abs(lam) < band:
        return "boundary"
    return "separable" if lam > 0 else "inseparable"


@dataclass(frozen=True, eq=False)
class BlochDecomposition:
    r: np.ndarray
    s: np.ndarray
    T: np.ndarray

    def reconstruct(self) -> np.ndarray:
        m = linalg.kron(linalg.I2, linalg.I2)
        for k, sig in enumerate(linalg.PAULIS):
            m = m + self.r[k] * linalg.kron(sig, linalg.I2) + self.s[k] * linalg.kron(linalg.I2, sig)
            for n, sig_n in enumerate(linalg.PAULIS):
                m = m + self.T[k, n] * linalg.kron(sig, sig_n)
        return m / 4.0


def bloch_decompose(rho) -> BlochDecomposition:
    m = _two_qubit(rho)

    def expect(op):
        return float(np.real(np.trace(m @ op)))

    r = np.array([expect(linalg.kron(sig, linalg.I2)) for sig in linalg.PAULIS])
    s = np.array([expect(linalg.kron(linalg.I2, sig)) for sig in linalg.PAULIS])
    T = np.array([[expect(linalg.kron(a, b)) for b in linalg.PAULIS] for a in linalg.PAULIS])
    return BlochDecomposition(r, s, T)


def correlation_matrix(rho) -> np.ndarray:
    return bloch_decompose(rho).T


def chsh_M(rho) -> float:
    """Sum of the two largest eigenvalues of ``T^T T``; CHSH is violated iff ``M > 1``."""
    T = correlation_matrix(rho)
    lam = linalg.hermitian_eigenvalues(T.T @ T)
    return float(lam[1] + lam[2])


def teleportation_N(rho) -> tuple[float, float]:
    """Trace norm of the correlation matrix and the optimal teleportation fidelity."""
    N = float(np.sum(linalg.singular_values(correlation_matrix(rho))))
    return N, 0.5 * (1.0 + N / 3.0)


def _k_a1b1(R: float) -> float:
    return (1 - 2 * R) ** 2 * (1 - R) ** 2 / (1 - 3 * R + 3 * R * R) ** 2


def _k_cd(R: float) -> float:
    return R * R * (1 - R) ** 2 / (1 - 3 * R + 3 * R * R) ** 2


def N_closed_a1b1(alpha: complex, beta: complex, R) -> float:
    R = as_reflectivity(R).R
    return _k_a1b1(R) * (4 * abs(alpha) * abs(beta) + 1)


def N_closed_cd(alpha: complex, beta: complex, R) -> float:
    R = as_reflectivity(R).R
    return _k_cd(R) * (4 * abs(alpha) * abs(beta) + 1)


def U_eigenvalues_a1b1(alpha: complex, beta: complex, R) -> np.ndarray:
    """Spectrum of ``T^T T`` for the kept pair, ascending."""
    k = _k_a1b1(as_reflectivity(R).R)
    return np.sort([4 * k * k * abs(alpha * beta) ** 2] * 2 + [k * k])


def U_eigenvalues_cd(alpha: complex, beta: complex, R) -> np.ndarray:
    k = _k_cd(as_reflectivity(R).R)
    return np.sort([4 * k * k * abs(alpha * beta) ** 2] * 2 + [k * k])


# --- closed-form windows ---------------------------------------------------

def _poly_x(R: float) -> float:
    return 3 * R**4 - 18 * R**3 + 24 * R**2 - 12 * R + 2


@lru_cache(maxsize=None)
def root_x(tol: float = 1e-13) -> float:
    """Root of ``3R^4 - 18R^3 + 24R^2 - 12R + 2`` in ``(1/3, 1/2)``, by bisection."""
    lo, hi = 1.0 / 3.0, 0.5
    flo = _poly_x(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = _poly_x(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def poly_x_residual(R: float) -> float:
    return abs(_poly_x(R))


CD_R_HALFWIDTH = math.sqrt(-9 + 6 * math.sqrt(3)) / 6
R_CD_LO = 0.5 - CD_R_HALFWIDTH
R_CD_HI = 0.5 + CD_R_HALFWIDTH


def _g_a1b1(R: float) -> float:
    return R**4 * (2 - 6 * R + 5 * R * R) ** 2 / (4 * (1 - 2 * R) ** 4 * (1 - R) ** 4)


def _g_cd(R: float) -> float:
    return (1 - 2 * R) ** 4 * (1 - 2 * R + 2 * R * R) ** 2 / (4 * R**4 * (1 - R) ** 4)


def _g_a1c(R: float) -> float:
    return 4 * R * R * (1 - 2 * R) ** 2 / (1 - R) ** 4


@dataclass(frozen=True)
class SeparabilityWindow:
    """|alpha|^2 interval ``1/2 (1 -+ sqrt(1 - g(R)))`` on which ``holds`` is true.

    ``holds`` is ``"inseparable"`` or ``"separable"``. Outside ``R_range`` (open
    ends flagged by ``closed``) the window is empty.
    """

    pair: str
    holds: str
    R_range: tuple[float, float]
    closed: tuple[bool, bool]
    g: Callable[[float], float]

    def contains_R(self, R: float) -> bool:
        lo, hi = self.R_range
        above = R >= lo if self.closed[0] else R > lo
        below = R <= hi if self.closed[1] else R < hi
        return above and below

    def alpha_sq_bounds(self, R) -> tuple[float, float] | None:
        R = as_reflectivity(R).R
        if not self.contains_R(R):
            return None
        g = self.g(R)
        if g > 1.0:
            return None
        half = 0.5 * math.sqrt(1.0 - g)
        return 0.5 - half, 0.5 + half


WINDOW_A1B1 = SeparabilityWindow("a1b1", "inseparable", (0.0, root_x()), (True, False), _g_a1b1)
WINDOW_CD = SeparabilityWindow("cd", "inseparable", (R_CD_LO, R_CD_HI), (False, False), _g_cd)
# The printed range [0, 1/sqrt 3] exceeds the physical R <= 1/2; Reflectivity enforces the latter.
WINDOW_A1C = SeparabilityWindow("a1c", "separable", (0.0, 1.0 / math.sqrt(3.0)), (True, True), _g_a1c)


def window_a1b1(R) -> tuple[float, float] | None:
    return WINDOW_A1B1.alpha_sq_bounds(R)


def window_cd(R) -> tuple[float, float] | None:
    return WINDOW_CD.alpha_sq_bounds(R)


def window_a1c(R) -> tuple[float, float] | None:
    return WINDOW_A1C.alpha_sq_bounds(R)


def broadcast_branch(R) -> str | None:
    """``"i"`` for ``R in (R_CD_LO, 1/3]``, ``"ii"`` for ``R in (1/3, x)``, else ``None``."""
    R = as_reflectivity(R).R
    if R_CD_LO < R <= 1.0 / 3.0:
        return "i"
    if 1.0 / 3.0 < R < root_x():
        return "ii"
    return None


def broadcast_condition(R) -> tuple[float, float] | None:
    """|alpha|^2 interval on which both kept/sent pairs are inseparable and cross pairs separable."""
    branch = broadcast_branch(R)
    if branch is None:
        return None
    g = _g_cd if branch == "i" else _g_a1b1
    R = as_reflectivity(R).R
    val = g(R)
    if val > 1.0:
        return None
    half = 0.5 * math.sqrt(1.0 - val)
    return 0.5 - half, 0.5 + half


def in_window(x: float, bounds: tuple[float, float] | None) -> bool:
    return bounds is not None and bounds[0] <= x <= bounds[1]


# --- brute-force CHSH ----------------------------------------------------

def fibonacci_sphere(n: int) -> np.ndarray:
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    rad = np.sqrt(1.0 - z * z)
    phi = np.pi * (3.0 - np.sqrt(5.0)) * i
    return np.stack([rad * np.cos(phi), rad * np.sin(phi), z], axis=1)


def _unit(theta: float, phi: float) -> np.ndarray:
    return np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])


def chsh_bruteforce_oracle(rho, n_directions: int = 2000, refine: bool = True) -> float:
    """Grid search for ``max |<B>|`` over the CHSH settings.

    Validation oracle only. For fixed ``b, b'`` the best ``a, a'`` are found
    exactly (``|T(b+b')| + |T(b-b')|``); ``b, b'`` range over a Fibonacci
    sphere grid, followed by a local Nelder-Mead polish.
    """
    T = correlation_matrix(rho)
    dirs = fibonacci_sphere(n_directions)
    tb = dirs @ T.T
    best, best_pair = -1.0, (0, 0)
    chunk = 250
    for start in range(0, n_directions, chunk):
        block = tb[start:start + chunk, None, :]
        vals = np.linalg.norm(block + tb[None], axis=2) + np.linalg.norm(block - tb[None], axis=2)
        k = int(np.argmax(vals))
        if vals.flat[k] > best:
            best = float(vals.flat[k])
            best_pair = (start + k // n_directions, k % n_directions)
    if not refine:
        return best
    from scipy.optimize import minimize

    def neg(x):
        b, bp = _unit(x[0], x[1]), _unit(x[2], x[3])
        return -(np.linalg.norm(T @ (b + bp)) + np.linalg.norm(T @ (b - bp)))

    def angles(v):
        return [math.acos(max(-1.0, min(1.0, v[2]))), math.atan2(v[1], v[0])]

    x0 = angles(dirs[best_pair[0]]) + angles(dirs[best_pair[1]])
    res = minimize(neg, x0, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 4000})
    return max(best, float(-res.fun))
