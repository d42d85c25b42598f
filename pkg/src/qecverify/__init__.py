"""Verification toolkit for quantum error-correcting codes under arbitrary
(especially correlated) Pauli noise.

Capabilities: Knill-Laflamme correctability and degeneracy verdicts, the
complementary-channel and reference/environment product characterizations,
Choi-rank packing and Hamming bounds with exact-integer arithmetic, the
degenerate repetition and entanglement-free ancilla code constructions,
recovery-channel synthesis (explicit syndrome tables and the generic
M-diagonalization recovery), and dense-simulation certification of perfect
correction.
"""

from .bounds import (
    BoundReport,
    ViolationReport,
    family_rank,
    hamming_check,
    hamming_rhs,
    min_n_hamming,
    min_n_packing,
    packing_check,
    packing_scan,
    violation_report,
)
from .channels import (
    KrausSet,
    PauliChannel,
    channel_from_json,
    channel_to_json,
    choi_matrix,
    choi_rank,
    even_weight_correlated,
    fully_correlated,
    gram_matrix,
    minimal_kraus,
    pairwise_correlated,
    triple_correlated,
    weight_bounded,
)
from .codes import (
    CodeSpace,
    ancilla_code,
    code_from_json,
    code_to_json,
    from_codewords,
    repetition_code,
)
from .guards import ResourceLimitError
from .kl import (
    KLReport,
    complementary_state,
    deletion_check,
    is_correctable,
    kl_matrix,
    reference_environment_product_check,
)
from .linalg import eigh, fidelity, haar_state, numerical_rank, partial_trace, trace_norm
from .pauli import (
    PauliString,
    commutes,
    from_label,
    identity,
    multiply,
    single,
    to_dense,
    to_label,
    weight,
)
from .recovery import (
    MonteCarloResult,
    RecoveryChannel,
    SyndromeTable,
    ancilla_recovery,
    apply_channel,
    canonical_recovery,
    composite_choi,
    monte_carlo_run,
    repetition_syndrome_table,
    roundtrip_check,
)

__all__ = [
    "BoundReport",
    "CodeSpace",
    "KLReport",
    "KrausSet",
    "MonteCarloResult",
    "PauliChannel",
    "PauliString",
    "RecoveryChannel",
    "ResourceLimitError",
    "SyndromeTable",
    "ViolationReport",
    "ancilla_code",
    "ancilla_recovery",
    "apply_channel",
    "canonical_recovery",
    "channel_from_json",
    "channel_to_json",
    "choi_matrix",
    "choi_rank",
    "code_from_json",
    "code_to_json",
    "commutes",
    "complementary_state",
    "composite_choi",
    "deletion_check",
    "eigh",
    "even_weight_correlated",
    "family_rank",
    "fidelity",
    "from_codewords",
    "from_label",
    "fully_correlated",
    "gram_matrix",
    "haar_state",
    "hamming_check",
    "hamming_rhs",
    "identity",
    "is_correctable",
    "kl_matrix",
    "min_n_hamming",
    "min_n_packing",
    "minimal_kraus",
    "monte_carlo_run",
    "multiply",
    "numerical_rank",
    "packing_check",
    "packing_scan",
    "pairwise_correlated",
    "partial_trace",
    "repetition_code",
    "repetition_syndrome_table",
    "roundtrip_check",
    "single",
    "to_dense",
    "to_label",
    "trace_norm",
    "triple_correlated",
    "violation_report",
    "weight",
    "weight_bounded",
]

__version__ = "0.1.0"
