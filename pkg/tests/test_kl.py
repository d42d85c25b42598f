"""Correctability verdicts: the overlap matrix, the complementary channel,
and the reference/environment product test."""

import numpy as np
import pytest
from _oracles import random_unitary

from qecverify import (
    KrausSet,
    ancilla_code,
    complementary_state,
    deletion_check,
    from_codewords,
    is_correctable,
    kl_matrix,
    pairwise_correlated,
    reference_environment_product_check,
    repetition_code,
    to_label,
    triple_correlated,
    weight_bounded,
)
from qecverify.linalg import haar_state


def _term_index(channel, label):
    return [to_label(op) for _, op in channel.terms].index(label)


class TestKlMatrix:
    def test_identity_channel(self):
        code = repetition_code(1)
        ks = KrausSet(8, 8, (np.eye(8),))
        m, residual = kl_matrix(code, ks)
        assert np.allclose(m, [[1.0]])
        assert residual == 0.0

    def test_repetition_pairwise_structure(self):
        code = repetition_code(1)
        ch = pairwise_correlated(3)
        m, residual = kl_matrix(code, ch.kraus_set())
        assert residual < 1e-12
        # identity couples to every Z pair: sqrt(p * p_zij) = sqrt(1/2 * 1/18) = 1/6
        for pair in ((0, 1), (0, 2), (1, 2)):
            label = "+" + "".join("Z" if q in pair else "I" for q in range(3))
            assert np.isclose(m[0, _term_index(ch, label)], 1 / 6)
        assert np.isclose(m[0, 0], 0.5)
        # X and Y on the same pair act identically up to sign
        assert np.isclose(m[_term_index(ch, "+XXI"), _term_index(ch, "+YYI")], -1 / 18)

    def test_ancilla_triple_is_diagonal(self):
        code = ancilla_code(3)
        ch = triple_correlated(3)
        m, residual = kl_matrix(code, ch.kraus_set())
        assert residual < 1e-12
        assert np.allclose(np.diag(m).real, [0.5, 1 / 6, 1 / 6, 1 / 6])
        assert np.abs(m - np.diag(np.diag(m))).max() < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            kl_matrix(repetition_code(1), KrausSet(4, 4, (np.eye(4),)))


class TestVerdicts:
    def test_repetition_pairwise(self):
        report = is_correctable(repetition_code(1), pairwise_correlated(3))
        assert report.correctable and report.degenerate
        assert (report.rank_m, report.rank_choi) == (4, 10)
        assert not report.kraus_minimized

    def test_highly_degenerate_five_qubit(self):
        from qecverify import even_weight_correlated

        report = is_correctable(repetition_code(2), even_weight_correlated(2))
        assert report.correctable and report.degenerate
        assert (report.rank_m, report.rank_choi) == (16, 46)

    def test_trivial_code_fails(self):
        full = from_codewords([np.array([1.0, 0.0]), np.array([0.0, 1.0])])
        report = is_correctable(full, weight_bounded(1, 1))
        assert not report.correctable

    def test_correctable_reports_density_matrix_m(self, battery):
        for name, code, channel, correctable in battery:
            report = is_correctable(code, channel)
            assert report.correctable == correctable, name
            if correctable:
                evals = np.linalg.eigvalsh((report.m_matrix + report.m_matrix.conj().T) / 2)
                assert evals.min() > -1e-10, name
                assert np.isclose(np.trace(report.m_matrix).real, 1.0, atol=1e-9), name

    def test_over_complete_kraus_is_minimized_first(self):
        ch = pairwise_correlated(3)
        base = ch.kraus_set()
        # split one Kraus operator into two identical halves
        doubled = KrausSet(
            8, 8, base.ops[:-1] + (base.ops[-1] / np.sqrt(2), base.ops[-1] / np.sqrt(2))
        )
        report = is_correctable(repetition_code(1), doubled)
        assert report.kraus_minimized
        assert report.rank_choi == 10
        assert report.correctable and report.degenerate
        assert report.rank_m == 4

    def test_rank_m_invariant_under_remixing(self):
        rng = np.random.default_rng(13)
        base = pairwise_correlated(3).kraus_set()
        w = random_unitary(len(base.ops), rng)
        mixed = KrausSet(
            8, 8,
            tuple(sum(w[i, j] * base.ops[j] for j in range(len(base.ops))) for i in range(len(base.ops))),
        )
        r0 = is_correctable(repetition_code(1), base)
        r1 = is_correctable(repetition_code(1), mixed)
        assert r0.rank_m == r1.rank_m == 4
        assert r1.correctable and r1.degenerate
        # remixing K -> W K conjugates the overlap matrix: M' = conj(W) M W^T
        m0, _ = kl_matrix(repetition_code(1), base)
        m1, _ = kl_matrix(repetition_code(1), mixed)
        assert np.abs(m1 - w.conj() @ m0 @ w.T).max() < 1e-12


class TestComplementaryChannel:
    def test_equals_m_transpose_and_constant(self):
        code = repetition_code(1)
        ch = pairwise_correlated(3)
        ks = ch.kraus_set()
        m, _ = kl_matrix(code, ks)
        rng = np.random.default_rng(14)
        outputs = []
        for _ in range(20):
            state = code.encode(haar_state(2, rng))
            out = complementary_state(code, ks, np.outer(state, state.conj()))
            outputs.append(out)
            assert np.abs(out - m.T).max() < 1e-9
        spread = max(np.abs(o - outputs[0]).max() for o in outputs)
        assert spread < 1e-12

    def test_identity_channel(self):
        code = repetition_code(1)
        out = complementary_state(code, KrausSet(8, 8, (np.eye(8),)), code.projector / 2)
        assert np.allclose(out, [[1.0]])

    def test_uncorrectable_outputs_differ(self):
        code = repetition_code(1)
        ks = weight_bounded(3, 1).kraus_set()
        zero = code.isometry[:, 0]
        plus = code.encode(np.array([1.0, 1.0]) / np.sqrt(2))
        out0 = complementary_state(code, ks, np.outer(zero, zero.conj()))
        out1 = complementary_state(code, ks, np.outer(plus, plus.conj()))
        assert np.abs(out0 - out1).max() > 1e-3

    def test_support_validation(self):
        code = repetition_code(1)
        ks = pairwise_correlated(3).kraus_set()
        off_code = np.zeros((8, 8), dtype=complex)
        off_code[1, 1] = 1.0
        with pytest.raises(ValueError):
            complementary_state(code, ks, off_code)

    def test_deletion_check_verdicts(self):
        assert deletion_check(repetition_code(1), pairwise_correlated(3))[0]
        ok, dev = deletion_check(repetition_code(1), weight_bounded(3, 1))
        assert not ok and dev > 1e-3


class TestProductCheck:
    def test_correctable_pair_is_product(self):
        ok, dev = reference_environment_product_check(
            repetition_code(1), pairwise_correlated(3).kraus_set()
        )
        assert ok and dev < 1e-10

    def test_identity_channel_deviation_zero(self):
        code = repetition_code(1)
        ok, dev = reference_environment_product_check(code, KrausSet(8, 8, (np.eye(8),)))
        assert ok and dev < 1e-12

    def test_uncorrectable_pair_is_correlated(self):
        full = from_codewords([np.array([1.0, 0.0]), np.array([0.0, 1.0])])
        ok, dev = reference_environment_product_check(full, weight_bounded(1, 1).kraus_set())
        assert not ok and dev > 1e-2
