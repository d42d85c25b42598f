"""Packing and Hamming bound arithmetic, in exact integers.

The packing bound says a nondegenerate code must satisfy
dim(S) >= dim(Q) * rank(R), where rank(R) is the minimal Kraus cardinality
of the noise.  The Hamming bound is its specialization to all errors of
weight at most t:  q^n >= q^k * sum_i (q^2-1)^i C(n, i).

Degenerate codes may violate the packing bound; a correctable nondegenerate
violator would be an internal inconsistency and is reported as such.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .channels import KrausSet, PauliChannel, choi_rank
from .codes import CodeSpace
from .kl import DEFAULT_TOL, KLReport, is_correctable

_SCAN_LIMIT = 10_000

# Minimal Kraus cardinality of each named family as a function of n.  The
# floors mark the smallest n at which the family's largest error exists.
_FAMILY_FLOORS = {
    "pairwise": 2,
    "pairwise+quadruple": 4,
    "triple": 3,
    "fully_correlated": 1,
    "even_weight": None,  # floor is 2m
}


@dataclass(frozen=True)
class BoundReport:
    """One bound evaluation: satisfied iff dim_s >= rhs."""

    kind: str
    n: int
    k: int
    rank: int
    dim_s: int
    dim_q: int
    rhs: int
    satisfied: bool

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": int(self.n),
            "k": int(self.k),
            "rank": int(self.rank),
            "dim_s": int(self.dim_s),
            "dim_q": int(self.dim_q),
            "rhs": int(self.rhs),
            "satisfied": bool(self.satisfied),
            "verdict": "satisfied" if self.satisfied else "violated",
        }


@dataclass(frozen=True)
class ViolationReport:
    """Combined correctability and packing verdict for a (code, noise) pair."""

    kl: KLReport
    bound: BoundReport
    violation: bool
    consistency_error: bool
    verdict: str

    def to_json(self, include_matrix: bool = True) -> dict:
        return {
            "kl": self.kl.to_json(include_matrix=include_matrix),
            "bound": self.bound.to_json(),
            "violation": bool(self.violation),
            "consistency_error": bool(self.consistency_error),
            "verdict": self.verdict,
        }


def packing_check(n: int, k: int, channel) -> BoundReport:
    """Evaluate dim(S) >= dim(Q) * rank for a concrete channel."""
    if isinstance(channel, PauliChannel) and channel.n != n:
        raise ValueError(f"channel acts on {channel.n} qubits, expected {n}")
    if isinstance(channel, KrausSet) and channel.input_dim != 1 << n:
        raise ValueError("channel dimension does not match n")
    rank = choi_rank(channel)
    rhs = (1 << k) * rank
    return BoundReport(
        kind="packing",
        n=n,
        k=k,
        rank=rank,
        dim_s=1 << n,
        dim_q=1 << k,
        rhs=rhs,
        satisfied=(1 << n) >= rhs,
    )


def hamming_rhs(n: int, k: int, t: int, q: int = 2) -> int:
    """q^k * sum_{i<=t} (q^2-1)^i C(n, i); the bound holds iff q^n >= this."""
    if not 0 <= t <= n:
        raise ValueError(f"need 0 <= t <= n, got t={t}, n={n}")
    if q < 2:
        raise ValueError("local dimension must be at least 2")
    return q**k * sum((q * q - 1) ** i * comb(n, i) for i in range(t + 1))


def hamming_check(n: int, k: int, t: int, q: int = 2) -> BoundReport:
    rhs = hamming_rhs(n, k, t, q)
    rank = sum((q * q - 1) ** i * comb(n, i) for i in range(t + 1))
    return BoundReport(
        kind="hamming",
        n=n,
        k=k,
        rank=rank,
        dim_s=q**n,
        dim_q=q**k,
        rhs=rhs,
        satisfied=q**n >= rhs,
    )


def family_rank(family: str, n: int, m: int | None = None) -> int:
    """Minimal Kraus cardinality of a named family at length n."""
    if family == "pairwise":
        return 1 + 3 * comb(n, 2)
    if family == "pairwise+quadruple":
        return 1 + 3 * comb(n, 2) + 3 * comb(n, 4)
    if family == "triple":
        return 1 + 3 * comb(n, 3)
    if family == "fully_correlated":
        return 4
    if family == "even_weight":
        if m is None:
            raise ValueError("even_weight needs m")
        return 1 + sum(3 * comb(n, 2 * i) for i in range(1, m + 1))
    raise ValueError(f"unknown family {family!r}")


def _family_floor(family: str, m: int | None) -> int:
    if family == "even_weight":
        if m is None:
            raise ValueError("even_weight needs m")
        return 2 * m
    floor = _FAMILY_FLOORS.get(family)
    if floor is None:
        raise ValueError(f"unknown family {family!r}")
    return floor


def min_n_packing(k: int, family: str, m: int | None = None) -> int:
    """Smallest n with 2^n >= 2^k * rank(n), scanning upward from the
    smallest length at which the family's errors exist."""
    n = max(k, _family_floor(family, m))
    while n <= _SCAN_LIMIT:
        if 1 << n >= (1 << k) * family_rank(family, n, m):
            return n
        n += 1
    raise RuntimeError("scan limit exceeded")  # 2^n dominates every family rank


def packing_scan(k: int, family: str, m: int | None = None, n_max: int | None = None) -> list[dict]:
    """Row-by-row evaluation of the packing inequality for a named family."""
    if n_max is None:
        n_max = min_n_packing(k, family, m) + 4
    rows = []
    for n in range(max(k, _family_floor(family, m)), n_max + 1):
        rank = family_rank(family, n, m)
        rhs = (1 << k) * rank
        rows.append(
            {"n": n, "rank": rank, "dim_s": 1 << n, "rhs": rhs, "satisfied": (1 << n) >= rhs}
        )
    return rows


def min_n_hamming(k: int, t: int, q: int = 2) -> int:
    """Smallest n with q^n >= hamming_rhs(n, k, t, q)."""
    n = max(k, t, 1)
    while n <= _SCAN_LIMIT:
        if q**n >= hamming_rhs(n, k, t, q):
            return n
        n += 1
    raise RuntimeError("scan limit exceeded")


def violation_report(code: CodeSpace, channel, tol: float = DEFAULT_TOL) -> ViolationReport:
    """Combine the correctability verdict with the packing bound.

    A correctable degenerate pair below the bound is the interesting case
    (compression past the nondegenerate limit); a correctable nondegenerate
    pair below the bound would contradict the bound itself and is flagged as
    a consistency error.
    """
    kl = is_correctable(code, channel, tol=tol)
    bound = packing_check(code.n, code.k, channel)
    violation = kl.correctable and kl.degenerate and not bound.satisfied
    consistency_error = kl.correctable and not kl.degenerate and not bound.satisfied
    if not kl.correctable:
        verdict = "not-correctable"
    elif violation:
        verdict = "degenerate-violation"
    elif consistency_error:
        verdict = "consistency-error"
    else:
        verdict = "correctable-within-bound"
    return ViolationReport(
        kl=kl,
        bound=bound,
        violation=violation,
        consistency_error=consistency_error,
        verdict=verdict,
    )
