"""Correlated Pauli noise families, Kraus sets, and Choi-rank machinery.

The noise families are probabilistic mixtures of multi-qubit Pauli strings:

* ``pairwise_correlated``   -- W_i W_j on every pair, W in {X, Y, Z};
* ``even_weight_correlated`` -- W^(x)w on every w-subset, w even up to 2m,
  acting on n = 2m + 1 qubits;
* ``triple_correlated``     -- W_i W_j W_k on every triple;
* ``fully_correlated``      -- the four strings {I, X^n, Y^n, Z^n};
* ``weight_bounded``        -- every string supported on at most t qubits.

Each constructor takes an optional probability assignment.  By default the
identity keeps mass 1/2 and the error strings split the rest equally; the
verdicts computed elsewhere (rank, correctability, degeneracy) depend only
on which terms have positive probability, not on the values.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from . import pauli
from .guards import check_choi_dim
from .linalg import RANK_EPS, dagger, eigh, numerical_rank

PROB_ATOL = 1e-12  # normalization slack; also the zero-probability drop threshold
TP_ATOL = 1e-10    # trace-preservation slack for Kraus sets


@dataclass(frozen=True)
class PauliChannel:
    """Probabilistic mixture of Pauli strings acting by conjugation.

    Terms are normalized at construction: operators are reduced to their
    phase-free letters form (conjugation ignores global phase), duplicate
    operators are merged, terms with probability <= PROB_ATOL are dropped,
    and the surviving probabilities must sum to 1 within PROB_ATOL.
    """

    n: int
    terms: tuple[tuple[float, pauli.PauliString], ...]

    def __post_init__(self):
        merged: dict[tuple[int, int], float] = {}
        ops: dict[tuple[int, int], pauli.PauliString] = {}
        for prob, op in self.terms:
            if op.n != self.n:
                raise ValueError("operator qubit count differs from the channel")
            prob = float(prob)
            if prob < -PROB_ATOL:
                raise ValueError("negative probability")
            key = (op.x_bits, op.z_bits)
            merged[key] = merged.get(key, 0.0) + prob
            ops.setdefault(key, _letters_form(op))
        total = sum(merged.values())
        if abs(total - 1.0) > PROB_ATOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        kept = tuple((merged[key], ops[key]) for key in merged if merged[key] > PROB_ATOL)
        object.__setattr__(self, "terms", kept)

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def kraus_set(self) -> "KrausSet":
        """Dense Kraus operators {sqrt(p) P}; minimal by Pauli orthogonality."""
        ops = tuple(np.sqrt(p) * pauli.to_dense(op) for p, op in self.terms)
        dim = 1 << self.n
        return KrausSet(dim, dim, ops)


@dataclass(frozen=True)
class KrausSet:
    """Kraus decomposition of a completely positive trace-preserving map."""

    input_dim: int
    output_dim: int
    ops: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.ops:
            raise ValueError("at least one Kraus operator required")
        frozen = []
        for op in self.ops:
            arr = np.array(op, dtype=complex)
            if arr.shape != (self.output_dim, self.input_dim):
                raise ValueError(
                    f"Kraus operator shape {arr.shape} does not match "
                    f"({self.output_dim}, {self.input_dim})"
                )
            if not np.all(np.isfinite(arr)):
                raise ValueError("non-finite Kraus entries")
            arr.setflags(write=False)
            frozen.append(arr)
        total = sum(dagger(k) @ k for k in frozen)
        if not np.allclose(total, np.eye(self.input_dim), atol=TP_ATOL):
            raise ValueError("Kraus operators are not trace-preserving")
        object.__setattr__(self, "ops", tuple(frozen))

    def __len__(self) -> int:
        return len(self.ops)


def _letters_form(op: pauli.PauliString) -> pauli.PauliString:
    """Canonical phase: the product of plain letters (one i per Y)."""
    return pauli.PauliString(op.n, (op.x_bits & op.z_bits).bit_count(), op.x_bits, op.z_bits)


def _assign_probs(keys, probs, family):
    """Split probability mass over the family's error terms.

    ``probs=None`` gives the uniform default (identity 1/2, the rest split
    equally); otherwise ``probs`` maps term keys to masses and the identity
    absorbs the remainder.
    """
    if probs is None:
        if not keys:
            return 1.0, {}
        share = 0.5 / len(keys)
        return 0.5, {key: share for key in keys}
    probs = dict(probs)
    unknown = set(probs) - set(keys)
    if unknown:
        raise ValueError(f"unknown {family} term keys: {sorted(unknown)!r}")
    masses = {key: float(probs.get(key, 0.0)) for key in keys}
    if any(p < 0 for p in masses.values()):
        raise ValueError("negative probability")
    total = sum(masses.values())
    if total > 1.0 + PROB_ATOL:
        raise ValueError(f"error probabilities sum to {total} > 1")
    return 1.0 - min(total, 1.0), masses


def _string_on(letter: str, qubits, n: int) -> pauli.PauliString:
    op = pauli.identity(n)
    for q in qubits:
        op = pauli.multiply(op, pauli.single(letter, q, n))
    return op


def pairwise_correlated(n: int, probs=None) -> PauliChannel:
    """Identity plus W_i W_j for every pair i < j and W in {X, Y, Z}.

    ``probs`` maps keys (W, i, j) with i < j to probabilities; omitted keys
    get zero.  With everything positive the channel has 1 + 3 C(n, 2) terms.
    """
    if n < 2:
        raise ValueError("pairwise noise needs at least 2 qubits")
    keys = [(w, i, j) for i, j in combinations(range(n), 2) for w in "XYZ"]
    p_id, masses = _assign_probs(keys, probs, "pairwise")
    terms = [(p_id, pauli.identity(n))]
    terms += [(masses[w, i, j], _string_on(w, (i, j), n)) for w, i, j in keys]
    return PauliChannel(n, tuple(terms))


def even_weight_correlated(m: int, probs=None, weights=None) -> PauliChannel:
    """Identity plus W^(x)w on every w-subset of n = 2m+1 qubits, w even.

    ``weights`` restricts which even weights appear (default 2, 4, ..., 2m);
    ``probs`` maps keys (W, qubit_tuple) to probabilities.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    n = 2 * m + 1
    allowed = tuple(range(2, 2 * m + 1, 2))
    weights = allowed if weights is None else tuple(sorted({int(w) for w in weights}))
    if any(w not in allowed for w in weights):
        raise ValueError(f"weights must be even and at most {2 * m}, got {list(weights)}")
    keys = [
        (letter, subset)
        for w in weights
        for subset in combinations(range(n), w)
        for letter in "XYZ"
    ]
    p_id, masses = _assign_probs(keys, probs, "even-weight")
    terms = [(p_id, pauli.identity(n))]
    terms += [(masses[letter, subset], _string_on(letter, subset, n)) for letter, subset in keys]
    return PauliChannel(n, tuple(terms))


def triple_correlated(n: int, probs=None) -> PauliChannel:
    """Identity plus W_i W_j W_k for every triple i < j < k and W in {X, Y, Z}."""
    if n < 3:
        raise ValueError("triple noise needs at least 3 qubits")
    keys = [(w, i, j, k) for i, j, k in combinations(range(n), 3) for w in "XYZ"]
    p_id, masses = _assign_probs(keys, probs, "triple")
    terms = [(p_id, pauli.identity(n))]
    terms += [(masses[key], _string_on(key[0], key[1:], n)) for key in keys]
    return PauliChannel(n, tuple(terms))


def fully_correlated(n: int, probs=None) -> PauliChannel:
    """The four strings {I, X^n, Y^n, Z^n}: rank-4 noise for any n.

    ``probs`` maps "X"/"Y"/"Z" to probabilities.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    keys = ["X", "Y", "Z"]
    p_id, masses = _assign_probs(keys, probs, "fully-correlated")
    terms = [(p_id, pauli.identity(n))]
    terms += [(masses[w], _string_on(w, range(n), n)) for w in keys]
    return PauliChannel(n, tuple(terms))


def weight_bounded(n: int, t: int) -> PauliChannel:
    """Every Pauli string of weight at most t: sum_i 3^i C(n, i) terms."""
    if not 0 <= t <= n:
        raise ValueError(f"need 0 <= t <= n, got t={t}, n={n}")
    ops = [
        _string_on_letters(letters, subset, n)
        for w in range(1, t + 1)
        for subset in combinations(range(n), w)
        for letters in product("XYZ", repeat=w)
    ]
    if not ops:
        return PauliChannel(n, ((1.0, pauli.identity(n)),))
    share = 0.5 / len(ops)
    terms = [(0.5, pauli.identity(n))] + [(share, op) for op in ops]
    return PauliChannel(n, tuple(terms))


def _string_on_letters(letters, qubits, n: int) -> pauli.PauliString:
    op = pauli.identity(n)
    for letter, q in zip(letters, qubits):
        op = pauli.multiply(op, pauli.single(letter, q, n))
    return op


def as_kraus(channel) -> KrausSet:
    if isinstance(channel, KrausSet):
        return channel
    if isinstance(channel, PauliChannel):
        return channel.kraus_set()
    raise TypeError(f"not a channel: {channel!r}")


def gram_matrix(kraus: KrausSet) -> np.ndarray:
    """Hilbert-Schmidt Gram matrix G_ij = Tr[K_i^dagger K_j]."""
    stack = np.stack(kraus.ops)
    return np.einsum("iab,jab->ij", stack.conj(), stack)


def choi_rank(channel) -> int:
    """Minimal Kraus cardinality, i.e. the rank of the Choi operator."""
    if isinstance(channel, PauliChannel):
        # Distinct Pauli strings are Hilbert-Schmidt orthogonal, so the Gram
        # matrix is diagonal with one positive entry per surviving term.
        return channel.term_count
    return numerical_rank(gram_matrix(as_kraus(channel)))


def choi_matrix(channel) -> np.ndarray:
    """Explicit Choi operator: the channel applied to one half of the
    (unnormalized) maximally entangled pair.  Positive semidefinite with
    trace equal to the input dimension."""
    kraus = as_kraus(channel)
    check_choi_dim(kraus.input_dim)
    vecs = np.stack([op.reshape(-1) for op in kraus.ops])
    return vecs.T @ vecs.conj()


def minimal_kraus(channel) -> KrausSet:
    """Equivalent Kraus set of cardinality choi_rank(channel).

    Pauli channels are already minimal and come back as {sqrt(p) P}; general
    sets are remixed through the eigenvectors of their Gram matrix, keeping
    eigenvalues above the rank cutoff.
    """
    if isinstance(channel, PauliChannel):
        return channel.kraus_set()
    gram = gram_matrix(channel)
    evals, evecs = eigh(gram)
    cutoff = len(gram) * max(float(evals[0]), 0.0) * RANK_EPS
    stack = np.stack(channel.ops)
    ops = []
    for idx in range(len(evals)):
        if evals[idx] <= cutoff:
            break
        ops.append(np.einsum("a,axy->xy", evecs[:, idx], stack))
    reduced = KrausSet(channel.input_dim, channel.output_dim, tuple(ops))
    if reduced.input_dim <= 1 << 6:
        if not np.allclose(choi_matrix(reduced), choi_matrix(channel), atol=1e-9):
            raise RuntimeError("minimal Kraus set does not reproduce the channel")
    return reduced


def working_kraus(channel) -> tuple[KrausSet, int, bool]:
    """Kraus set of minimal cardinality plus (rank, whether it was reduced)."""
    rank = choi_rank(channel)
    if isinstance(channel, KrausSet) and len(channel.ops) > rank:
        return minimal_kraus(channel), rank, True
    return as_kraus(channel), rank, False


_JSON_FAMILIES = ("pairwise", "even_weight", "triple", "fully_correlated", "weight_bounded")


def channel_to_json(channel: PauliChannel) -> dict:
    return {
        "n": channel.n,
        "terms": [{"p": float(p), "op": pauli.to_label(op)} for p, op in channel.terms],
    }


def channel_from_json(spec: dict) -> PauliChannel:
    """Build a channel from {"n", "terms"} or the named-family shorthand
    {"family", "n", "params"}."""
    if "family" in spec:
        family = spec["family"]
        n = int(spec["n"])
        params = dict(spec.get("params") or {})
        if family == "pairwise":
            return pairwise_correlated(n)
        if family == "even_weight":
            m = int(params.get("m", (n - 1) // 2))
            if 2 * m + 1 != n:
                raise ValueError(f"even_weight needs n = 2m+1, got n={n}, m={m}")
            weights = params.get("weights")
            return even_weight_correlated(m, weights=tuple(weights) if weights else None)
        if family == "triple":
            return triple_correlated(n)
        if family == "fully_correlated":
            return fully_correlated(n)
        if family == "weight_bounded":
            return weight_bounded(n, int(params.get("t", 1)))
        raise ValueError(f"unknown channel family {family!r}; known: {_JSON_FAMILIES}")
    terms = tuple((float(t["p"]), pauli.from_label(t["op"])) for t in spec["terms"])
    return PauliChannel(int(spec["n"]), terms)
