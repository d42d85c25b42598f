"""[[n, k]] code subspaces represented as isometries from logical to physical space."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .linalg import dagger

ISOMETRY_ATOL = 1e-10
DEPENDENCE_TOL = 1e-10


@dataclass(frozen=True)
class CodeSpace:
    """Code subspace given by an isometry whose columns are the codewords of
    a logical basis, in computational order (qubit 0 leftmost)."""

    n: int
    k: int
    isometry: np.ndarray

    def __post_init__(self):
        arr = np.array(self.isometry, dtype=complex)
        if arr.shape != (1 << self.n, 1 << self.k):
            raise ValueError(
                f"isometry shape {arr.shape} does not match [[{self.n}, {self.k}]]"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("non-finite isometry entries")
        if not np.allclose(dagger(arr) @ arr, np.eye(1 << self.k), atol=ISOMETRY_ATOL):
            raise ValueError("isometry columns are not orthonormal")
        arr.setflags(write=False)
        object.__setattr__(self, "isometry", arr)

    @cached_property
    def projector(self) -> np.ndarray:
        p = self.isometry @ dagger(self.isometry)
        p.setflags(write=False)
        return p

    def encode(self, logical: np.ndarray) -> np.ndarray:
        """Map a logical state vector into the physical space."""
        logical = np.asarray(logical, dtype=complex).reshape(-1)
        if logical.size != 1 << self.k:
            raise ValueError(f"logical state has dimension {logical.size}, expected {1 << self.k}")
        return self.isometry @ logical


def repetition_code(m: int) -> CodeSpace:
    """Length-(2m+1) repetition code with codewords |0...0> and |1...1>."""
    if m < 1:
        raise ValueError("need m >= 1")
    n = 2 * m + 1
    iso = np.zeros((1 << n, 2), dtype=complex)
    iso[0, 0] = 1.0
    iso[(1 << n) - 1, 1] = 1.0
    return CodeSpace(n, 1, iso)


def ancilla_code(n: int) -> CodeSpace:
    """Product encoding |psi> -> |psi> (x) |0> (x) |+> with the two ancillas
    as the last qubits; encodes k = n - 2 logical qubits without any
    entanglement across the data/ancilla cut."""
    if n < 3:
        raise ValueError("need n >= 3")
    k = n - 2
    anc = np.array([1.0, 1.0, 0.0, 0.0], dtype=complex) / np.sqrt(2.0)
    iso = np.kron(np.eye(1 << k, dtype=complex), anc.reshape(4, 1))
    return CodeSpace(n, k, iso)


def from_codewords(vectors) -> CodeSpace:
    """Orthonormalize codeword vectors (modified Gram-Schmidt) into a code.

    The vector count must be a power of two; linearly dependent inputs are
    rejected."""
    vecs = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
    if not vecs:
        raise ValueError("no codewords given")
    dim = vecs[0].size
    n = dim.bit_length() - 1
    if 1 << n != dim or n < 1:
        raise ValueError(f"codeword length {dim} is not a power of two")
    count = len(vecs)
    k = count.bit_length() - 1
    if 1 << k != count:
        raise ValueError(f"codeword count {count} is not a power of two")
    cols: list[np.ndarray] = []
    for v in vecs:
        if v.size != dim:
            raise ValueError("codeword lengths differ")
        orig = np.linalg.norm(v)
        w = v.astype(complex)
        for _ in range(2):  # second pass removes roundoff leakage
            for u in cols:
                w = w - u * np.vdot(u, w)
        norm = np.linalg.norm(w)
        if norm <= DEPENDENCE_TOL * max(float(orig), 1.0):
            raise ValueError("codewords are linearly dependent")
        cols.append(w / norm)
    return CodeSpace(n, k, np.stack(cols, axis=1))


def code_to_json(code: CodeSpace) -> dict:
    return {
        "n": code.n,
        "k": code.k,
        "codewords": [
            [[float(v.real), float(v.imag)] for v in code.isometry[:, col]]
            for col in range(1 << code.k)
        ],
    }


def code_from_json(spec: dict) -> CodeSpace:
    """Build a code from {"family", "n"} or {"n", "k", "codewords"} with
    amplitudes given as [re, im] pairs."""
    if "family" in spec:
        family = spec["family"]
        n = int(spec["n"])
        if family == "repetition":
            if n % 2 == 0:
                raise ValueError("repetition code length must be odd")
            return repetition_code((n - 1) // 2)
        if family == "ancilla":
            return ancilla_code(n)
        raise ValueError(f"unknown code family {family!r}")
    vectors = [np.array([complex(re, im) for re, im in word]) for word in spec["codewords"]]
    code = from_codewords(vectors)
    if code.n != int(spec["n"]) or code.k != int(spec["k"]):
        raise ValueError("codeword list does not match the declared (n, k)")
    return code
