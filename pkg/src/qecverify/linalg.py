"""Dense complex linear-algebra primitives shared by the verification modules.

Tolerance policy lives here: numerical rank uses a relative singular-value
cutoff, Hermitian inputs are symmetrized before diagonalization, and every
randomized helper takes an explicit Generator -- there is no hidden global
RNG anywhere in the package.
"""

from __future__ import annotations

import numpy as np

RANK_EPS = 1e-10        # relative singular-value cutoff for rank decisions
HERMITIAN_RTOL = 1e-10  # accepted relative deviation from m == m^dagger
STATE_ATOL = 1e-9       # normalization slack for states fed to fidelity


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def numerical_rank(m: np.ndarray, eps: float = RANK_EPS) -> int:
    """Count singular values above max(rows, cols) * sigma_max * eps."""
    m = np.asarray(m, dtype=complex)
    if m.size == 0:
        raise ValueError("empty matrix has no rank")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    sv = np.linalg.svd(m, compute_uv=False)
    smax = float(sv[0])
    if smax == 0.0:
        return 0
    return int(np.count_nonzero(sv > max(m.shape) * smax * eps))


def eigh(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    The input must satisfy ||m - m^dagger||_F <= HERMITIAN_RTOL * ||m||_F;
    it is then symmetrized to strip roundoff drift before calling LAPACK.
    Returns (eigenvalues, eigenvectors) with eigenvectors as columns.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    if np.linalg.norm(m - dagger(m)) > HERMITIAN_RTOL * np.linalg.norm(m):
        raise ValueError("matrix is not Hermitian within tolerance")
    sym = (m + dagger(m)) / 2
    evals, evecs = np.linalg.eigh(sym)
    return evals[::-1].copy(), evecs[:, ::-1].copy()


def partial_trace(m: np.ndarray, dims, keep) -> np.ndarray:
    """Trace-preserving reduction onto the kept subsystems, original order."""
    m = np.asarray(m, dtype=complex)
    dims = [int(d) for d in dims]
    total = int(np.prod(dims))
    if m.shape != (total, total):
        raise ValueError(f"matrix shape {m.shape} does not match subsystem dims {dims}")
    keep = sorted({int(i) for i in keep})
    if any(i < 0 or i >= len(dims) for i in keep):
        raise ValueError("keep indices out of range")
    ns = len(dims)
    tensor = m.reshape(dims + dims)
    row = list(range(ns))
    col = [ns + i if i in keep else i for i in range(ns)]
    out = keep + [ns + i for i in keep]
    reduced = np.einsum(tensor, row + col, out)
    d_keep = int(np.prod([dims[i] for i in keep])) if keep else 1
    return reduced.reshape(d_keep, d_keep)


def fidelity(psi: np.ndarray, rho: np.ndarray) -> float:
    """Overlap <psi|rho|psi> of a pure state with a density matrix, in [0, 1]."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    rho = np.asarray(rho, dtype=complex)
    if abs(np.linalg.norm(psi) - 1.0) > STATE_ATOL:
        raise ValueError("state vector is not normalized")
    if rho.shape != (psi.size, psi.size):
        raise ValueError("dimension mismatch between state and density matrix")
    if abs(np.trace(rho) - 1.0) > STATE_ATOL:
        raise ValueError("density matrix trace differs from 1")
    if float(np.linalg.eigvalsh((rho + dagger(rho)) / 2)[0]) < -STATE_ATOL:
        raise ValueError("density matrix is not positive semidefinite")
    val = complex(np.vdot(psi, rho @ psi))
    if abs(val.imag) > 1e-12:
        raise ValueError("fidelity has a non-negligible imaginary part")
    return min(max(val.real, 0.0), 1.0)


def trace_norm(m: np.ndarray) -> float:
    """Sum of singular values."""
    return float(np.linalg.svd(np.asarray(m, dtype=complex), compute_uv=False).sum())


def haar_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random pure state from a normalized complex Gaussian vector."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)
