"""Recovery channels and dense certification of perfect correction.

Two constructions are provided: the explicit syndrome-measurement tables for
the repetition and ancilla codes, and the generic recovery obtained by
diagonalizing the Knill-Laflamme matrix of any correctable pair.  Both are
certified by simulating encode -> noise -> recover on random logical states
and by comparing the induced channels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import pauli
from .channels import KrausSet, PauliChannel, as_kraus, choi_matrix, working_kraus
from .codes import CodeSpace
from .kl import DEFAULT_TOL, kl_matrix
from .linalg import RANK_EPS, dagger, eigh, fidelity, haar_state


@dataclass(frozen=True)
class SyndromeOutcome:
    """One measurement branch: project, then apply the Pauli correction."""

    label: str
    projector: np.ndarray
    correction: pauli.PauliString

    def __post_init__(self):
        arr = np.array(self.projector, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "projector", arr)


@dataclass(frozen=True)
class SyndromeTable:
    """Projective syndrome measurement with a correction per outcome."""

    n: int
    outcomes: tuple[SyndromeOutcome, ...]

    def as_channel(self, code: CodeSpace) -> "RecoveryChannel":
        """Induced channel: measure, correct, and (if the projectors do not
        resolve the identity) collapse the unreachable remainder onto the
        first codeword so the channel is trace-preserving."""
        ops = [pauli.to_dense(o.correction) @ o.projector for o in self.outcomes]
        reach = sum(o.projector for o in self.outcomes)
        ops.extend(_completion_ops(code, reach))
        dim = 1 << self.n
        return RecoveryChannel(KrausSet(dim, dim, tuple(ops)))


@dataclass(frozen=True)
class RecoveryChannel:
    """Trace-preserving channel undoing a correctable noise process."""

    kraus: KrausSet


@dataclass(frozen=True)
class MonteCarloResult:
    success_fraction: float
    shots: int
    seed: int
    outcome_counts: dict[str, int] = field(default_factory=dict)
    warning: str | None = None

    def to_json(self) -> dict:
        out = {
            "success_fraction": float(self.success_fraction),
            "shots": int(self.shots),
            "seed": int(self.seed),
            "outcome_counts": {k: int(v) for k, v in self.outcome_counts.items()},
        }
        if self.warning:
            out["warning"] = self.warning
        return out


def _completion_ops(code: CodeSpace, reachable: np.ndarray) -> list[np.ndarray]:
    """Collapse every basis vector of the unreachable complement onto the
    first codeword.  In-model noise never leaves the reachable space, so the
    choice only matters for trace preservation."""
    dim = reachable.shape[0]
    comp = np.eye(dim) - reachable
    evals, evecs = eigh(comp)
    anchor = code.isometry[:, 0]
    ops = []
    for idx in range(dim):
        if evals[idx] < 0.5:
            break
        ops.append(np.outer(anchor, evecs[:, idx].conj()))
    return ops


def canonical_recovery(code: CodeSpace, channel, tol: float = DEFAULT_TOL) -> RecoveryChannel:
    """Generic recovery for any correctable pair.

    Diagonalize M, rotate the Kraus set into J_i satisfying
    P J_i^dagger J_j P = D_ii delta_ij P, and emit one recovery element
    P J_i^dagger / sqrt(D_ii) per positive eigenvalue, plus the
    trace-preservation completion on the unreachable complement.
    """
    kraus, _, _ = working_kraus(channel)
    m, residual = kl_matrix(code, kraus)
    if residual > tol:
        raise ValueError(f"pair is not correctable (residual {residual:.3e} > {tol:.1e})")
    evals, evecs = eigh(m)
    cutoff = len(m) * float(evals[0]) * RANK_EPS
    ambiguous = [float(v) for v in evals if cutoff * 1e-2 < v <= cutoff * 1e2]
    if ambiguous:
        raise ValueError(
            f"eigenvalues {ambiguous} sit too close to the rank cutoff {cutoff:.3e} "
            "to classify as kept or dropped"
        )
    stack = np.stack(kraus.ops)
    proj = code.projector
    ops = []
    reach = np.zeros_like(proj)
    for idx in range(len(evals)):
        if evals[idx] <= cutoff:
            break
        j_op = np.einsum("a,axy->xy", evecs[:, idx], stack)
        r_op = proj @ dagger(j_op) / np.sqrt(float(evals[idx]))
        ops.append(r_op)
        reach = reach + dagger(r_op) @ r_op
    ops.extend(_completion_ops(code, reach))
    dim = 1 << code.n
    return RecoveryChannel(KrausSet(dim, dim, tuple(ops)))


def repetition_syndrome_table(m: int, weights=None) -> SyndromeTable:
    """Syndrome table for the length-(2m+1) repetition code under even-weight
    correlated noise.

    One outcome per X-flip pattern: the trivial pattern first, then the
    patterns of each requested even weight in ascending binary order
    (qubit 0 most significant); labels are the outcome index in binary.
    Products of Z leave both codewords unchanged and a Y string lands in the
    same subspace as the X string of its support, so the X corrections
    handle all three letters.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    n = 2 * m + 1
    allowed = tuple(range(2, 2 * m + 1, 2))
    weights = allowed if weights is None else tuple(sorted({int(w) for w in weights}))
    if any(w not in allowed for w in weights):
        raise ValueError(f"weights must be even and at most {2 * m}, got {list(weights)}")
    patterns = [0]
    for w in weights:
        patterns.extend(
            sum(1 << (n - 1 - q) for q in subset) for subset in combinations(range(n), w)
        )
    patterns.sort()
    dim = 1 << n
    width = max(1, (len(patterns) - 1).bit_length())
    outcomes = []
    for idx, pattern in enumerate(patterns):
        projector = np.zeros((dim, dim), dtype=complex)
        projector[pattern, pattern] = 1.0
        projector[dim - 1 - pattern, dim - 1 - pattern] = 1.0
        x_bits = sum(1 << q for q in range(n) if pattern >> (n - 1 - q) & 1)
        correction = pauli.PauliString(n, 0, x_bits, 0)
        outcomes.append(SyndromeOutcome(format(idx, f"0{width}b"), projector, correction))
    return SyndromeTable(n, tuple(outcomes))


def ancilla_recovery(n: int) -> SyndromeTable:
    """Ancilla measurement table for the product encoding.

    The first ancilla is read in the computational basis, the second in the
    |+>/|-> basis; the four outcomes identify which of {I, X^n, Y^n, Z^n}
    acted.  The correction repeats the detected letter on every qubit: on the
    data it undoes the error, on the measured ancillas it resets them to
    |0>|+> (the letter is an involution up to a global phase).
    """
    if n < 3:
        raise ValueError("need n >= 3")
    k = n - 2
    sq = 1.0 / np.sqrt(2.0)
    anc_states = (
        ("0+", np.array([sq, sq, 0.0, 0.0], dtype=complex), None),
        ("1+", np.array([0.0, 0.0, sq, sq], dtype=complex), "X"),
        ("1-", np.array([0.0, 0.0, sq, -sq], dtype=complex), "Y"),
        ("0-", np.array([sq, -sq, 0.0, 0.0], dtype=complex), "Z"),
    )
    eye_data = np.eye(1 << k, dtype=complex)
    outcomes = []
    for label, anc, letter in anc_states:
        projector = np.kron(eye_data, np.outer(anc, anc.conj()))
        if letter is None:
            correction = pauli.identity(n)
        else:
            correction = pauli.identity(n)
            for q in range(n):
                correction = pauli.multiply(correction, pauli.single(letter, q, n))
        outcomes.append(SyndromeOutcome(label, projector, correction))
    return SyndromeTable(n, tuple(outcomes))


def apply_channel(rho: np.ndarray, channel) -> np.ndarray:
    """Apply a channel to a density matrix: sum_i K_i rho K_i^dagger.

    Pauli channels act by symbolic conjugation (signed permutations);
    everything else goes through its dense Kraus operators.
    """
    rho = np.asarray(rho, dtype=complex)
    if isinstance(channel, PauliChannel):
        if rho.shape != (1 << channel.n, 1 << channel.n):
            raise ValueError("state dimension does not match the channel")
        out = np.zeros_like(rho)
        for p, op in channel.terms:
            out += p * pauli.conjugate(op, rho)
        return out
    if isinstance(channel, RecoveryChannel):
        channel = channel.kraus
    if isinstance(channel, KrausSet):
        if rho.shape != (channel.input_dim, channel.input_dim):
            raise ValueError("state dimension does not match the channel")
        out = np.zeros((channel.output_dim, channel.output_dim), dtype=complex)
        for k in channel.ops:
            out += k @ rho @ dagger(k)
        return out
    raise TypeError(f"not a channel: {channel!r}")


def roundtrip_check(code: CodeSpace, channel, recovery, trials: int = 100, seed: int = 0) -> float:
    """Worst 1 - fidelity over Haar-random logical states pushed through
    encode -> noise -> recovery.  Deterministic for a given seed."""
    rec = recovery.as_channel(code) if isinstance(recovery, SyndromeTable) else recovery
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(int(trials)):
        encoded = code.encode(haar_state(1 << code.k, rng))
        rho = np.outer(encoded, encoded.conj())
        rho = apply_channel(rho, channel)
        rho = apply_channel(rho, rec)
        worst = max(worst, 1.0 - fidelity(encoded, rho))
    return worst


def monte_carlo_run(
    code: CodeSpace,
    channel: PauliChannel,
    table: SyndromeTable,
    shots: int,
    seed: int = 0,
) -> MonteCarloResult:
    """Trajectory view of the same correction: draw one Pauli term per shot,
    measure the syndrome, correct, and count exact logical recovery.

    Each shot derives its own generator from (seed, shot index), so results
    are independent of execution order and could be split across workers
    without changing the outcome.
    """
    if shots == 0:
        return MonteCarloResult(1.0, 0, seed, {}, warning="no shots sampled")
    probs = np.array([p for p, _ in channel.terms])
    ops = [op for _, op in channel.terms]
    counts: dict[str, int] = {o.label: 0 for o in table.outcomes}
    successes = 0
    for shot in range(int(shots)):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed, shot)))
        state = code.encode(haar_state(1 << code.k, rng))
        term = int(rng.choice(len(ops), p=probs))
        errored = ops[term].apply_to_state(state)
        draw = rng.random()
        cumulative = 0.0
        chosen = None
        for outcome in table.outcomes:
            branch = outcome.projector @ errored
            cumulative += float(np.vdot(branch, branch).real)
            if draw < cumulative:
                chosen = (outcome, branch)
                break
        if chosen is None:  # error left the measured subspaces entirely
            continue
        outcome, branch = chosen
        counts[outcome.label] += 1
        corrected = outcome.correction.apply_to_state(branch / np.linalg.norm(branch))
        if abs(np.vdot(state, corrected)) ** 2 >= 1.0 - 1e-9:
            successes += 1
    return MonteCarloResult(successes / shots, int(shots), seed, counts)


def composite_choi(code: CodeSpace, channel, recovery) -> np.ndarray:
    """Choi operator of recover(noise(encode(.))) as a channel from the
    logical space into the physical space; equal Choi operators mean two
    recoveries act identically on the code."""
    rec = recovery.as_channel(code) if isinstance(recovery, SyndromeTable) else recovery
    noise = as_kraus(channel)
    encoded = [k @ code.isometry for k in noise.ops]
    ops = tuple(r @ kv for r in rec.kraus.ops for kv in encoded)
    return choi_matrix(KrausSet(1 << code.k, 1 << code.n, ops))
