"""Knill-Laflamme correctability and degeneracy verdicts.

Three equivalent views of correctability are implemented:

* the overlap matrix M with V^dagger K_i^dagger K_j V = M_ij * identity
  (``kl_matrix`` / ``is_correctable``);
* the complementary channel to the noise environment is constant on code
  inputs, with value M^T (``complementary_state`` / ``deletion_check``);
* after purifying the maximally mixed code state, the reference and the
  environment end up in a product state
  (``reference_environment_product_check``).

Degeneracy means M is singular relative to a minimal Kraus set: distinct
errors act identically on the code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import as_kraus, working_kraus
from .codes import CodeSpace
from .linalg import haar_state, numerical_rank, partial_trace, trace_norm

DEFAULT_TOL = 1e-8   # residual threshold for the correctability verdict
PRODUCT_TOL = 1e-8   # trace-norm threshold for the product-state test
SUPPORT_ATOL = 1e-10


@dataclass(frozen=True)
class KLReport:
    """Correctability/degeneracy verdict for a (code, noise) pair."""

    m_matrix: np.ndarray
    residual: float
    correctable: bool
    degenerate: bool
    rank_m: int
    rank_choi: int
    tolerance: float
    kraus_minimized: bool

    def __post_init__(self):
        arr = np.array(self.m_matrix, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "m_matrix", arr)

    def to_json(self, include_matrix: bool = True) -> dict:
        out = {
            "correctable": bool(self.correctable),
            "degenerate": bool(self.degenerate),
            "residual": float(self.residual),
            "rank_m": int(self.rank_m),
            "rank_choi": int(self.rank_choi),
            "tolerance": float(self.tolerance),
            "kraus_minimized": bool(self.kraus_minimized),
        }
        if include_matrix:
            out["m_matrix"] = [
                [[float(v.real), float(v.imag)] for v in row] for row in self.m_matrix
            ]
        return out


def kl_matrix(code: CodeSpace, kraus) -> tuple[np.ndarray, float]:
    """Overlap matrix M_ij = Tr[V^dagger K_i^dagger K_j V] / 2^k and the
    worst-case Frobenius deviation of V^dagger K_i^dagger K_j V from
    M_ij * identity (zero iff the pair is exactly correctable)."""
    kraus = as_kraus(kraus)
    dim = 1 << code.n
    if kraus.input_dim != dim or kraus.output_dim != dim:
        raise ValueError("channel dimension does not match the code")
    dim_l = 1 << code.k
    comp = np.einsum("iab,bc->iac", np.stack(kraus.ops), code.isometry)  # K_i V
    block = np.einsum("iab,jac->ijbc", comp.conj(), comp)                # V+ K_i+ K_j V
    m = np.einsum("ijbb->ij", block) / dim_l
    dev = block - m[:, :, None, None] * np.eye(dim_l)
    residual = float(np.sqrt((np.abs(dev) ** 2).sum(axis=(2, 3))).max())
    return m, residual


def is_correctable(code: CodeSpace, channel, tol: float = DEFAULT_TOL) -> KLReport:
    """Full verdict: correctable iff the residual of ``kl_matrix`` is within
    ``tol``; degenerate iff rank(M) falls below the minimal Kraus cardinality.

    Over-complete Kraus sets are reduced to a minimal set first (flagged in
    the report) so that the degeneracy comparison is meaningful.
    """
    kraus, rank_choi, minimized = working_kraus(channel)
    m, residual = kl_matrix(code, kraus)
    rank_m = numerical_rank(m)
    return KLReport(
        m_matrix=m,
        residual=residual,
        correctable=bool(residual <= tol),
        degenerate=bool(rank_m < rank_choi),
        rank_m=rank_m,
        rank_choi=rank_choi,
        tolerance=float(tol),
        kraus_minimized=minimized,
    )


def complementary_state(code: CodeSpace, kraus, rho: np.ndarray) -> np.ndarray:
    """Environment state produced by the complementary channel on a code
    input; entry (i, j) is Tr[K_i rho K_j^dagger].

    For a correctable pair the output is the same for every code input and
    equals M^T from ``kl_matrix``.
    """
    kraus = as_kraus(kraus)
    rho = np.asarray(rho, dtype=complex)
    dim = 1 << code.n
    if rho.shape != (dim, dim):
        raise ValueError(f"input has shape {rho.shape}, expected ({dim}, {dim})")
    if abs(np.trace(rho) - 1.0) > 1e-9:
        raise ValueError("input state trace differs from 1")
    if np.linalg.norm((np.eye(dim) - code.projector) @ rho) > SUPPORT_ATOL:
        raise ValueError("input state is not supported on the code")
    stack = np.stack(kraus.ops)
    applied = np.einsum("iab,bc->iac", stack, rho)  # K_i rho
    return np.einsum("iab,jab->ij", applied, stack.conj())


def deletion_check(
    code: CodeSpace, kraus, trials: int = 20, seed: int = 0, tol: float = DEFAULT_TOL
) -> tuple[bool, float]:
    """Probe whether the complementary channel is constant on the code.

    Compares the environment output on ``trials`` Haar-random code states
    against the output on the maximally mixed code state and returns
    (constant within tol, worst Frobenius deviation).
    """
    kraus = as_kraus(kraus)
    reference = complementary_state(code, kraus, code.projector / (1 << code.k))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(int(trials)):
        state = code.encode(haar_state(1 << code.k, rng))
        out = complementary_state(code, kraus, np.outer(state, state.conj()))
        worst = max(worst, float(np.linalg.norm(out - reference)))
    return worst <= tol, worst


def reference_environment_product_check(code: CodeSpace, kraus) -> tuple[bool, float]:
    """Purify the maximally mixed code state with a 2^k reference, dilate the
    noise into an environment with one basis vector per Kraus operator, trace
    out the system, and measure how far the joint reference/environment state
    is from a product:

        deviation = || rho_RE - rho_R (x) rho_E ||_1

    The pair is correctable exactly when the deviation vanishes.
    """
    kraus = as_kraus(kraus)
    dim = 1 << code.n
    if kraus.input_dim != dim or kraus.output_dim != dim:
        raise ValueError("channel dimension does not match the code")
    dim_l = 1 << code.k
    n_env = len(kraus.ops)
    comp = np.einsum("eab,bc->eac", np.stack(kraus.ops), code.isometry)  # K_e V
    psi = comp.transpose(1, 2, 0) / np.sqrt(dim_l)                       # (S, R, E)
    joint = np.tensordot(psi, psi.conj(), axes=([0], [0]))               # (R, E, R', E')
    rho_re = joint.reshape(dim_l * n_env, dim_l * n_env)
    rho_r = partial_trace(rho_re, [dim_l, n_env], keep=[0])
    rho_e = partial_trace(rho_re, [dim_l, n_env], keep=[1])
    deviation = trace_norm(rho_re - np.kron(rho_r, rho_e))
    return bool(deviation <= PRODUCT_TOL), float(deviation)
