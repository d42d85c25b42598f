"""Three faces of correctability, checked numerically on the same pairs.

A noise process is correctable on a code exactly when

  1. the overlap matrix test holds: V+ K_i+ K_j V = M_ij * identity;
  2. the complementary channel to the environment deletes its input --
     its output is the constant M^T for every code state;
  3. after purifying the maximally mixed code state, the reference and the
     noise environment end up uncorrelated (a product state).

This script runs all three on a correctable pair and an uncorrectable one
and prints the agreeing verdicts.
"""

import numpy as np

from qecverify import (
    complementary_state,
    deletion_check,
    is_correctable,
    kl_matrix,
    pairwise_correlated,
    reference_environment_product_check,
    repetition_code,
    weight_bounded,
)
from qecverify.linalg import haar_state


def characterize(name, code, channel):
    kraus = channel.kraus_set()
    report = is_correctable(code, channel)
    constant, spread = deletion_check(code, kraus, trials=20, seed=0)
    is_product, deviation = reference_environment_product_check(code, kraus)

    print(f"{name}:")
    print(f"  overlap-matrix residual:  {report.residual:.3e}  -> correctable {report.correctable}")
    print(f"  deletion-channel spread:  {spread:.3e}  -> constant    {constant}")
    print(f"  reference x environment:  {deviation:.3e}  -> product     {is_product}")

    if report.correctable:
        m, _ = kl_matrix(code, kraus)
        out = complementary_state(code, kraus, code.projector / (1 << code.k))
        print(f"  environment state equals M^T within {np.abs(out - m.T).max():.3e}")
    else:
        zero = code.isometry[:, 0]
        plus = code.encode(np.ones(1 << code.k) / np.sqrt(1 << code.k))
        out0 = complementary_state(code, kraus, np.outer(zero, zero.conj()))
        out1 = complementary_state(code, kraus, np.outer(plus, plus.conj()))
        print(f"  environment outputs for |0..0> vs |+..+> differ by {np.abs(out0 - out1).max():.3e}")
    print()


def main():
    code = repetition_code(1)
    characterize("repetition m=1 + pairwise noise (correctable)", code, pairwise_correlated(3))
    characterize("repetition m=1 + all weight-1 errors (uncorrectable)", code, weight_bounded(3, 1))

    # sanity: the verdict is a property of the pair, not of the sampled states
    rng = np.random.default_rng(42)
    kraus = pairwise_correlated(3).kraus_set()
    outs = []
    for _ in range(5):
        state = code.encode(haar_state(2, rng))
        outs.append(complementary_state(code, kraus, np.outer(state, state.conj())))
    worst = max(np.abs(o - outs[0]).max() for o in outs)
    print(f"five more random code states: environment output spread {worst:.3e}")


if __name__ == "__main__":
    main()
