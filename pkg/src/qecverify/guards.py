"""Size guards for dense-matrix construction.

Dense operator rendering is capped at DENSE_QUBIT_LIMIT qubits (4096 x 4096
matrices) and explicit Choi matrices at input dimension 2**CHOI_QUBIT_LIMIT.
Both caps can be raised through environment variables, which trades the
predictable refusal for potential memory exhaustion -- use at your own risk.
"""

import os

DENSE_QUBIT_LIMIT = 12
CHOI_QUBIT_LIMIT = 6

DENSE_LIMIT_ENV = "QECVERIFY_MAX_DENSE_QUBITS"
CHOI_LIMIT_ENV = "QECVERIFY_MAX_CHOI_QUBITS"


class ResourceLimitError(Exception):
    """A requested dense object exceeds the configured size guards."""


def dense_qubit_limit() -> int:
    return int(os.environ.get(DENSE_LIMIT_ENV, DENSE_QUBIT_LIMIT))


def choi_qubit_limit() -> int:
    return int(os.environ.get(CHOI_LIMIT_ENV, CHOI_QUBIT_LIMIT))


def check_dense_qubits(n: int) -> None:
    limit = dense_qubit_limit()
    if n > limit:
        raise ResourceLimitError(
            f"dense rendering of {n} qubits exceeds the {limit}-qubit guard "
            f"(unsafe override: {DENSE_LIMIT_ENV})"
        )


def check_choi_dim(input_dim: int) -> None:
    limit = 1 << choi_qubit_limit()
    if input_dim > limit:
        raise ResourceLimitError(
            f"explicit Choi matrix for input dimension {input_dim} exceeds the "
            f"guard of {limit} (unsafe override: {CHOI_LIMIT_ENV})"
        )
