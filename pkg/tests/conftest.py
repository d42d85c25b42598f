import numpy as np
import pytest

from qecverify import (
    ancilla_code,
    even_weight_correlated,
    from_codewords,
    fully_correlated,
    pairwise_correlated,
    repetition_code,
    triple_correlated,
    weight_bounded,
)


@pytest.fixture(scope="session")
def battery():
    """Seven (code, channel) pairs spanning correctable/uncorrectable and
    degenerate/nondegenerate, used by the cross-characterization tests."""
    full_1q = from_codewords([np.array([1.0, 0.0]), np.array([0.0, 1.0])])
    return [
        ("rep1+pairwise3", repetition_code(1), pairwise_correlated(3), True),
        ("rep2+evenweight2", repetition_code(2), even_weight_correlated(2), True),
        ("ancilla3+triple3", ancilla_code(3), triple_correlated(3), True),
        ("ancilla5+fully5", ancilla_code(5), fully_correlated(5), True),
        ("ancilla5+triple5", ancilla_code(5), triple_correlated(5), False),
        ("full1+weight1", full_1q, weight_bounded(1, 1), False),
        ("rep1+weight1", repetition_code(1), weight_bounded(3, 1), False),
    ]
