"""Exact algebra of phase-tracked n-qubit Pauli operators.

A Pauli operator is stored as

    i**phase_exp * prod_q X_q**x_q * Z_q**z_q

where ``phase_exp`` is an integer mod 4 and the X/Z exponent vectors are
packed into the bits of two Python integers (bit q belongs to qubit q).
Qubit 0 is the leftmost tensor factor of dense renderings, so
``single("Z", 1, 2)`` renders as I (x) Z.

Y is encoded as x = z = 1 with one extra factor of i (Y = iXZ).  Under this
normal form multiplication is a pure bit/phase computation:

    (i**a X^u Z^v) (i**b X^s Z^t) = i**(a+b+2*|v&s|) X^(u^s) Z^(v^t)

because commuting each Z of the left factor past an X of the right factor
on the same qubit costs one sign.

The text form is a phase prefix followed by one letter per qubit, e.g.
"+XIZ" or "-iYYI".  Printing always emits one of "+", "+i", "-", "-i";
parsing also accepts the unsigned variants.  Parse and print round-trip
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .guards import check_dense_qubits

PHASE_PREFIXES = ("+", "+i", "-", "-i")

# Per-qubit dense factors of the X^x Z^z normal form (no Y: it is XZ plus
# a phase tracked in phase_exp).
_DENSE_XZ = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 1): np.array([[0, -1], [1, 0]], dtype=complex),
}
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {bits: letter for letter, bits in _LETTER_BITS.items()}


@dataclass(frozen=True, slots=True)
class PauliString:
    """Phase-tracked Pauli operator on ``n`` qubits in X/Z normal form."""

    n: int
    phase_exp: int
    x_bits: int
    z_bits: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("qubit count must be positive")
        mask = (1 << self.n) - 1
        if not 0 <= self.x_bits <= mask or not 0 <= self.z_bits <= mask:
            raise ValueError("bit vectors do not fit the qubit count")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __str__(self) -> str:
        return to_label(self)

    def dagger(self) -> "PauliString":
        """Adjoint: same X/Z pattern, phase conjugated through the XZ order."""
        overlap = (self.x_bits & self.z_bits).bit_count()
        return PauliString(self.n, -self.phase_exp + 2 * overlap, self.x_bits, self.z_bits)

    def is_hermitian(self) -> bool:
        return (self.phase_exp - (self.x_bits & self.z_bits).bit_count()) % 2 == 0

    def apply_to_state(self, state: np.ndarray) -> np.ndarray:
        """Apply to a dense state vector without forming the matrix.

        Basis indices use qubit 0 as the most significant bit, matching
        ``to_dense``.
        """
        dim = 1 << self.n
        state = np.asarray(state, dtype=complex)
        if state.shape != (dim,):
            raise ValueError(f"state has shape {state.shape}, expected ({dim},)")
        xm = _index_mask(self.x_bits, self.n)
        zm = _index_mask(self.z_bits, self.n)
        idx = np.arange(dim)
        signs = 1.0 - 2.0 * _parity(idx & zm)
        out = np.empty(dim, dtype=complex)
        out[idx ^ xm] = (1j ** self.phase_exp) * signs * state
        return out


def identity(n: int) -> PauliString:
    return PauliString(n, 0, 0, 0)


def single(kind: str, position: int, n: int) -> PauliString:
    """Weight-1 Pauli ``kind`` in {X, Y, Z} at ``position`` on ``n`` qubits."""
    if kind not in ("X", "Y", "Z"):
        raise ValueError(f"kind must be X, Y or Z, got {kind!r}")
    if not 0 <= position < n:
        raise ValueError(f"position {position} out of range for {n} qubits")
    x, z = _LETTER_BITS[kind]
    phase = 1 if kind == "Y" else 0
    return PauliString(n, phase, x << position, z << position)


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Exact operator product; to_dense(multiply(a, b)) == to_dense(a) @ to_dense(b)."""
    if a.n != b.n:
        raise ValueError("qubit counts differ")
    phase = a.phase_exp + b.phase_exp + 2 * (a.z_bits & b.x_bits).bit_count()
    return PauliString(a.n, phase, a.x_bits ^ b.x_bits, a.z_bits ^ b.z_bits)


def commutes(a: PauliString, b: PauliString) -> bool:
    """True iff the symplectic form |a.x & b.z| + |a.z & b.x| is even."""
    if a.n != b.n:
        raise ValueError("qubit counts differ")
    form = (a.x_bits & b.z_bits).bit_count() + (a.z_bits & b.x_bits).bit_count()
    return form % 2 == 0


def weight(a: PauliString) -> int:
    """Number of qubits acted on non-trivially."""
    return (a.x_bits | a.z_bits).bit_count()


def to_dense(a: PauliString) -> np.ndarray:
    """Dense unitary matrix, qubit 0 leftmost in the tensor product."""
    check_dense_qubits(a.n)
    factors = [_DENSE_XZ[a.x_bits >> q & 1, a.z_bits >> q & 1] for q in range(a.n)]
    return (1j ** a.phase_exp) * reduce(np.kron, factors)


def conjugate(a: PauliString, rho: np.ndarray) -> np.ndarray:
    """Return ``a rho a.dagger()`` as a signed permutation, without the matrix."""
    dim = 1 << a.n
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise ValueError(f"density matrix has shape {rho.shape}, expected ({dim}, {dim})")
    xm = _index_mask(a.x_bits, a.n)
    zm = _index_mask(a.z_bits, a.n)
    idx = np.arange(dim)
    signs = 1.0 - 2.0 * _parity(idx & zm)
    scaled = signs[:, None] * rho * signs[None, :]
    perm = idx ^ xm
    out = np.empty_like(scaled)
    out[np.ix_(perm, perm)] = scaled
    return out


def from_label(label: str) -> PauliString:
    """Parse a text form like "+XIZ", "-iYYI" or bare "XZ"."""
    s = label.strip()
    phase = 0
    for prefix, p in (("+i", 1), ("-i", 3), ("+", 0), ("-", 2), ("i", 1)):
        if s.startswith(prefix):
            phase = p
            s = s[len(prefix):]
            break
    if not s:
        raise ValueError(f"no Pauli letters in {label!r}")
    x = z = 0
    for q, letter in enumerate(s):
        if letter not in _LETTER_BITS:
            raise ValueError(f"invalid Pauli letter {letter!r} in {label!r}")
        xq, zq = _LETTER_BITS[letter]
        x |= xq << q
        z |= zq << q
        if letter == "Y":
            phase += 1
    return PauliString(len(s), phase, x, z)


def to_label(a: PauliString) -> str:
    letters = []
    n_y = 0
    for q in range(a.n):
        bits = (a.x_bits >> q & 1, a.z_bits >> q & 1)
        letters.append(_BITS_LETTER[bits])
        n_y += bits == (1, 1)
    return PHASE_PREFIXES[(a.phase_exp - n_y) % 4] + "".join(letters)


def _index_mask(bits: int, n: int) -> int:
    """Map qubit-indexed bits (bit q = qubit q) to basis-index bits (MSB = qubit 0)."""
    out = 0
    for q in range(n):
        if bits >> q & 1:
            out |= 1 << (n - 1 - q)
    return out


def _parity(values: np.ndarray) -> np.ndarray:
    v = values.astype(np.uint64)
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> np.uint64(shift)
    return (v & np.uint64(1)).astype(np.float64)
