"""Dense complex linear algebra for truncated quantum systems.

Matrices are plain numpy arrays with complex128 entries.  Nothing in this
module knows about physics, only about shapes: Hermitian eigenproblems,
matrix exponentials, Kronecker products, partial traces and transposes, and
Schmidt decompositions of bipartite vectors.

Storage is dense throughout; the systems handled by this package stay at a
few thousand dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.linalg

HERMITICITY_RTOL = 1e-10


class NonHermitianError(ValueError):
    """Raised when a matrix violates the Hermiticity tolerance."""

    def __init__(self, max_asymmetry: float, tolerance: float):
        self.max_asymmetry = float(max_asymmetry)
        self.tolerance = float(tolerance)
        super().__init__(
            f"matrix is not Hermitian: max |H - H^dag| = {self.max_asymmetry:.3e} "
            f"exceeds tolerance {self.tolerance:.3e}"
        )


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in ascending order, orthonormal eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def function_of(self, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """Return V f(Lambda) V^dag with f applied entrywise to the spectrum."""
        v = self.eigenvectors
        return (v * f(self.eigenvalues)) @ v.conj().T


def _square(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def max_asymmetry(h: np.ndarray) -> float:
    """Largest entrywise deviation of a matrix from its own adjoint."""
    h = _square(h)
    return float(np.abs(h - h.conj().T).max())


def herm_eig(h, rtol: float = HERMITICITY_RTOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    The input must be Hermitian within ``rtol`` relative to its largest
    entry; otherwise a :class:`NonHermitianError` reports the asymmetry.
    """
    h = _square(h)
    scale = max(1.0, float(np.abs(h).max()))
    asym = max_asymmetry(h)
    if asym > rtol * scale:
        raise NonHermitianError(asym, rtol * scale)
    w, v = np.linalg.eigh((h + h.conj().T) / 2)
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def mat_exp(a) -> np.ndarray:
    """Matrix exponential exp(A).

    (Anti-)Hermitian inputs, which cover every generator used here, go
    through an exact eigendecomposition; anything else falls back to
    scipy's Pade scaling-and-squaring.
    """
    a = _square(a)
    scale = float(np.abs(a).max())
    if scale == 0.0:
        return np.eye(a.shape[0], dtype=complex)
    tol = 1e-12 * max(1.0, scale)
    if np.abs(a - a.conj().T).max() <= tol:
        ed = herm_eig(a)
        return ed.function_of(np.exp)
    if np.abs(a + a.conj().T).max() <= tol:
        # a = iH with H Hermitian, so exp(a) = V exp(i lambda) V^dag
        ed = herm_eig(-1j * a)
        return ed.function_of(lambda w: np.exp(1j * w))
    return scipy.linalg.expm(a)


def kron(a, b) -> np.ndarray:
    """Kronecker product; dimensions multiply."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(mats: Sequence[np.ndarray]) -> np.ndarray:
    out = np.array([[1.0 + 0.0j]])
    for m in mats:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def _check_dims(m: np.ndarray, dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    total = int(np.prod(dims))
    if m.shape != (total, total):
        raise ValueError(f"dims {dims} give total {total}, matrix has shape {m.shape}")
    return dims


def partial_trace(m, dims: Sequence[int], keep) -> np.ndarray:
    """Trace out all tensor factors except those in ``keep`` (indices).

    The kept factors stay in their original relative order and the trace is
    preserved: Tr(result) = Tr(m).
    """
    m = _square(m)
    dims = _check_dims(m, dims)
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {n} factors")
    traced = [i for i in range(n) if i not in keep]
    t = m.reshape(dims + dims)
    perm = keep + traced
    t = np.transpose(t, axes=perm + [i + n for i in perm])
    d_keep = int(np.prod([dims[i] for i in keep])) if keep else 1
    d_tr = int(np.prod([dims[i] for i in traced])) if traced else 1
    t = t.reshape(d_keep, d_tr, d_keep, d_tr)
    return np.einsum("aibi->ab", t)


def partial_transpose(m, dims: Sequence[int], subsystem: int) -> np.ndarray:
    """Transpose a single tensor factor, leaving the others untouched.

    Pure index permutation: applying it twice restores the input exactly.
    """
    m = _square(m)
    dims = _check_dims(m, dims)
    n = len(dims)
    subsystem = int(subsystem)
    if subsystem < 0 or subsystem >= n:
        raise ValueError(f"subsystem {subsystem} out of range for {n} factors")
    t = m.reshape(dims + dims)
    t = np.swapaxes(t, subsystem, subsystem + n)
    return t.reshape(m.shape)


def schmidt(v, dims: Sequence[int]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Schmidt decomposition of a vector on a d1 x d2 product space.

    Returns (coefficients, left, right): coefficients are nonnegative and
    descending (ties keep first-occurrence order from the SVD), left[:, j]
    and right[:, j] are the orthonormal Schmidt vectors, and
    v = sum_j coefficients[j] * kron(left[:, j], right[:, j]).
    """
    v = np.asarray(v, dtype=complex).ravel()
    d1, d2 = (int(d) for d in dims)
    if v.size != d1 * d2:
        raise ValueError(f"vector of length {v.size} does not fit dims ({d1}, {d2})")
    if np.linalg.norm(v) == 0.0:
        raise ValueError("cannot Schmidt-decompose the zero vector")
    u, s, vh = np.linalg.svd(v.reshape(d1, d2), full_matrices=False)
    return s, u, vh.T
