"""Dense complex linear algebra for small multi-qubit problems.

Matrices are plain ``numpy`` complex arrays. Tensor factors are ordered
big-endian: factor 0 is the leftmost ket label and the most significant index.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, NotHermitianError

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-12
_MAX_SWEEPS = 100

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b``."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(factors: Iterable) -> np.ndarray:
    return reduce(kron, factors)


def _check_dims(rho: np.ndarray, dims: Sequence[int]) -> None:
    if rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"matrix is not square: {rho.shape}")
    if int(np.prod(dims)) != rho.shape[0]:
        raise DimensionError(
            f"factor dims {list(dims)} do not match matrix dimension {rho.shape[0]}"
        )


def partial_trace(rho, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every factor not in ``keep``.

    Kept factors appear in ascending index order in the result.
    """
    rho = as_matrix(rho)
    dims = [int(d) for d in dims]
    _check_dims(rho, dims)
    keep = sorted(set(keep))
    if not keep:
        raise DimensionError("keep must name at least one factor")
    n = len(dims)
    if keep[0] < 0 or keep[-1] >= n:
        raise DimensionError(f"keep indices {keep} out of range for {n} factors")
    drop = [i for i in range(n) if i not in keep]
    t = rho.reshape(dims + dims)
    perm = keep + drop + [n + i for i in keep] + [n + i for i in drop]
    dk = int(np.prod([dims[i] for i in keep]))
    dd = int(np.prod([dims[i] for i in drop])) if drop else 1
    t = t.transpose(perm).reshape(dk, dd, dk, dd)
    return np.einsum("ajbj->ab", t)


def partial_transpose(rho, dims: Sequence[int], on: int) -> np.ndarray:
    """Transpose the indices of factor ``on`` of a bipartite operator."""
    rho = as_matrix(rho)
    dims = [int(d) for d in dims]
    if len(dims) != 2:
        raise DimensionError(f"partial_transpose needs two factors, got {dims}")
    _check_dims(rho, dims)
    if on not in (0, 1):
        raise DimensionError(f"factor index must be 0 or 1, got {on}")
    t = rho.reshape(dims + dims)
    if on == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return t.reshape(rho.shape)


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(m, tol: float = JACOBI_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalisation of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` sorted ascending; eigenvectors are
    the columns of the second array. Each rotation first removes the phase of
    the pivot, then applies a real plane rotation.
    """
    a = as_matrix(m).copy()
    if not is_hermitian(a):
        raise NotHermitianError("matrix is not Hermitian within 1e-10")
    a = (a + a.conj().T) / 2
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(_MAX_SWEEPS):
        if _offdiag_norm(a) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # g = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
    else:
        raise ArithmeticError("Jacobi iteration did not converge")
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(m) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix."""
    return jacobi_eigh(m)[0]


def singular_values(m) -> np.ndarray:
    """Singular values in descending order (LAPACK SVD)."""
    return np.linalg.svd(as_matrix(m), compute_uv=False)


def pure_fidelity(rho, psi) -> float:
    """Overlap ``<psi|rho|psi>`` of an operator with a pure reference state."""
    rho = as_matrix(rho)
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if rho.shape != (psi.size, psi.size):
        raise DimensionError(f"state of length {psi.size} vs operator {rho.shape}")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise DimensionError("reference state is not unit norm")
    return float(np.real(np.vdot(psi, rho @ psi)))


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())
