"""Resource arithmetic: minimal code lengths from the packing bound.

For a nondegenerate code, dim(S) >= dim(Q) * rank(Choi).  Scanning n for
each noise family gives the smallest admissible length; the weight-bounded
family reproduces the usual Hamming-bound numbers, and the pairwise+quadruple
family is a case where a direct scan (n = 12) disagrees with the commonly
stated value (n = 14), so the whole table is printed for inspection.
"""

from qecverify import (
    choi_rank,
    hamming_rhs,
    min_n_hamming,
    min_n_packing,
    packing_scan,
    weight_bounded,
)


def main():
    print("minimal n from the packing bound (k = 1):")
    for family in ("pairwise", "pairwise+quadruple", "triple", "fully_correlated"):
        print(f"  {family:20s} -> n = {min_n_packing(1, family)}")

    print("\npairwise+quadruple scan (k = 1):")
    print(f"  {'n':>3} {'rank':>6} {'2^n':>7} {'2*rank':>7}  satisfied")
    for row in packing_scan(1, "pairwise+quadruple", n_max=16):
        print(f"  {row['n']:>3} {row['rank']:>6} {row['dim_s']:>7} {row['rhs']:>7}  {row['satisfied']}")
    print("  note: the commonly stated minimum for this family is n = 14;"
          " the inequality itself is first satisfied at n = 12.")

    print("\nHamming-bound minimal lengths (q = 2, k = 1):")
    for t in (1, 2):
        print(f"  t = {t} -> n = {min_n_hamming(1, t, 2)}")
    print(f"  (t = 1, n = 5 saturates: 2^5 = {hamming_rhs(5, 1, 1, 2)})")

    print("\ncross-check: Hamming rhs vs the weight-bounded channel rank")
    for n in (3, 5, 7):
        for t in (1, 2):
            lhs = hamming_rhs(n, 1, t, 2)
            rhs = 2 * choi_rank(weight_bounded(n, t))
            print(f"  n={n} t={t}: {lhs} == {rhs}  ({lhs == rhs})")


if __name__ == "__main__":
    main()
