"""Syndrome tables, the generic M-diagonalization recovery, and the
dense roundtrip/Monte Carlo certification."""

from math import comb

import numpy as np
import pytest
from _oracles import dense_from_letters

from qecverify import (
    KrausSet,
    PauliChannel,
    ancilla_code,
    ancilla_recovery,
    apply_channel,
    canonical_recovery,
    composite_choi,
    even_weight_correlated,
    from_label,
    fully_correlated,
    monte_carlo_run,
    pairwise_correlated,
    repetition_code,
    repetition_syndrome_table,
    roundtrip_check,
    to_label,
    triple_correlated,
    weight_bounded,
)


class TestRepetitionTable:
    def test_m1_outcomes(self):
        table = repetition_syndrome_table(1)
        assert [o.label for o in table.outcomes] == ["00", "01", "10", "11"]
        assert [to_label(o.correction) for o in table.outcomes] == ["+III", "+IXX", "+XIX", "+XXI"]

    def test_m1_subspaces(self):
        table = repetition_syndrome_table(1)
        spans = {
            "00": (0b000, 0b111),
            "01": (0b100, 0b011),
            "10": (0b010, 0b101),
            "11": (0b001, 0b110),
        }
        for outcome in table.outcomes:
            a, b = spans[outcome.label]
            expected = np.zeros((8, 8), dtype=complex)
            expected[a, a] = expected[b, b] = 1.0
            assert np.allclose(outcome.projector, expected)

    def test_m2_count(self):
        table = repetition_syndrome_table(2)
        assert len(table.outcomes) == 1 + comb(5, 2) + comb(5, 4) == 16

    def test_orthogonal_complete(self):
        table = repetition_syndrome_table(2)
        total = sum(o.projector for o in table.outcomes)
        assert np.allclose(total, np.eye(32), atol=1e-12)
        for i, a in enumerate(table.outcomes):
            assert np.allclose(a.projector @ a.projector, a.projector, atol=1e-12)
            for b in table.outcomes[i + 1 :]:
                assert np.abs(a.projector @ b.projector).max() < 1e-12

    def test_each_correction_returns_to_code(self):
        m = 2
        code = repetition_code(m)
        table = repetition_syndrome_table(m)
        channel = even_weight_correlated(m)
        proj = code.projector
        for _, err in channel.terms:
            for col in range(2):
                word = code.isometry[:, col]
                hit = err.apply_to_state(word)
                for outcome in table.outcomes:
                    branch = outcome.projector @ hit
                    norm = np.linalg.norm(branch)
                    if norm < 1e-12:
                        continue
                    fixed = outcome.correction.apply_to_state(branch / norm)
                    assert np.linalg.norm(proj @ fixed - fixed) < 1e-12
                    assert abs(np.vdot(word, fixed)) > 1 - 1e-12  # up to phase

    def test_invalid_weights(self):
        with pytest.raises(ValueError):
            repetition_syndrome_table(1, weights=(4,))
        with pytest.raises(ValueError):
            repetition_syndrome_table(2, weights=(3,))


class TestAncillaTable:
    def test_outcome_labels_and_corrections(self):
        table = ancilla_recovery(3)
        assert [o.label for o in table.outcomes] == ["0+", "1+", "1-", "0-"]
        assert [to_label(o.correction) for o in table.outcomes] == ["+III", "+XXX", "+YYY", "+ZZZ"]

    def test_ancilla_states_distinguish_errors(self):
        # applying WW to |0>|+> lands in the advertised ancilla state
        start = (np.array([1, 1, 0, 0]) / np.sqrt(2)).astype(complex)
        refs = {
            "0+": np.array([1, 1, 0, 0]) / np.sqrt(2),
            "1+": np.array([0, 0, 1, 1]) / np.sqrt(2),
            "1-": np.array([0, 0, 1, -1]) / np.sqrt(2),
            "0-": np.array([1, -1, 0, 0]) / np.sqrt(2),
        }
        expected = {"XX": "1+", "YY": "1-", "ZZ": "0-"}
        for letters, label in expected.items():
            out = dense_from_letters(letters) @ start
            assert abs(np.vdot(refs[label], out)) > 1 - 1e-12
            for other, ref in refs.items():
                if other != label:
                    assert abs(np.vdot(ref, out)) < 1e-12

    def test_projectors_resolve_identity(self):
        table = ancilla_recovery(5)
        assert np.allclose(sum(o.projector for o in table.outcomes), np.eye(32), atol=1e-12)


class TestCanonicalRecovery:
    def test_identity_channel(self):
        code = repetition_code(1)
        ident = KrausSet(8, 8, (np.eye(8),))
        rec = canonical_recovery(code, ident)
        worst = roundtrip_check(code, ident, rec, trials=10, seed=0)
        assert worst < 1e-12

    def test_repetition_pairwise_cardinality(self):
        code = repetition_code(1)
        rec = canonical_recovery(code, pairwise_correlated(3))
        # one element per positive eigenvalue of the rank-4 overlap matrix;
        # the four rotated subspaces fill the space, so no completion
        assert len(rec.kraus.ops) == 4
        assert roundtrip_check(code, pairwise_correlated(3), rec, trials=20, seed=1) < 1e-10

    def test_matches_ancilla_table_as_channel(self):
        code = ancilla_code(3)
        ch = triple_correlated(3)
        gap = np.abs(
            composite_choi(code, ch, canonical_recovery(code, ch))
            - composite_choi(code, ch, ancilla_recovery(3))
        ).max()
        assert gap < 1e-10

    def test_refuses_uncorrectable(self):
        with pytest.raises(ValueError):
            canonical_recovery(repetition_code(1), weight_bounded(3, 1))
        with pytest.raises(ValueError):
            canonical_recovery(ancilla_code(5), triple_correlated(5))


class TestApplyChannel:
    def test_identity(self):
        rho = np.diag([0.5, 0.5]).astype(complex)
        out = apply_channel(rho, KrausSet(2, 2, (np.eye(2),)))
        assert np.allclose(out, rho)

    def test_z_pair_on_plus_plus(self):
        # half-probability ZZ on |++> gives an equal mixture with |-->
        ch = pairwise_correlated(2, probs={("Z", 0, 1): 0.5})
        plus = np.array([1, 1]) / np.sqrt(2)
        minus = np.array([1, -1]) / np.sqrt(2)
        pp = np.kron(plus, plus)
        mm = np.kron(minus, minus)
        expected = (np.outer(pp, pp) + np.outer(mm, mm)) / 2
        assert np.allclose(apply_channel(np.outer(pp, pp), ch), expected, atol=1e-12)

    def test_trace_preserved(self):
        rng = np.random.default_rng(21)
        g = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        rho = g @ g.conj().T
        rho /= np.trace(rho)
        out = apply_channel(rho, pairwise_correlated(3))
        assert np.isclose(np.trace(out), 1.0, atol=1e-12)


class TestRoundtrip:
    def test_repetition_pairwise_table(self):
        worst = roundtrip_check(
            repetition_code(1), pairwise_correlated(3), repetition_syndrome_table(1),
            trials=50, seed=3,
        )
        assert worst < 1e-10

    def test_five_qubit_even_weight(self):
        worst = roundtrip_check(
            repetition_code(2), even_weight_correlated(2), repetition_syndrome_table(2),
            trials=50, seed=4,
        )
        assert worst < 1e-10

    def test_extra_even_z_strings_change_nothing(self):
        # appending even-weight Z-type terms to the noise keeps the same
        # table perfectly correcting (they act as the identity on the code)
        table = repetition_syndrome_table(2)
        code = repetition_code(2)
        terms = (
            (0.5, from_label("+IIIII")),
            (0.2, from_label("+XXIII")),
            (0.15, from_label("+ZIZII")),
            (0.15, from_label("+ZZZZI")),
        )
        channel = PauliChannel(5, terms)
        assert roundtrip_check(code, channel, table, trials=30, seed=5) < 1e-10

    def test_deterministic_given_seed(self):
        args = (repetition_code(1), pairwise_correlated(3), repetition_syndrome_table(1))
        assert roundtrip_check(*args, trials=10, seed=9) == roundtrip_check(*args, trials=10, seed=9)


class TestMonteCarlo:
    def test_perfect_correction(self):
        result = monte_carlo_run(
            repetition_code(1), pairwise_correlated(3), repetition_syndrome_table(1),
            shots=300, seed=7,
        )
        assert result.success_fraction == 1.0
        assert sum(result.outcome_counts.values()) == 300

    def test_untabled_error_fails_sometimes(self):
        channel = PauliChannel(3, ((0.5, from_label("+III")), (0.5, from_label("+XII"))))
        result = monte_carlo_run(
            repetition_code(1), channel, repetition_syndrome_table(1), shots=200, seed=8
        )
        assert result.success_fraction < 1.0

    def test_zero_shots_convention(self):
        result = monte_carlo_run(
            repetition_code(1), pairwise_correlated(3), repetition_syndrome_table(1),
            shots=0, seed=0,
        )
        assert result.success_fraction == 1.0
        assert result.warning

    def test_deterministic_given_seed(self):
        args = (repetition_code(1), pairwise_correlated(3), repetition_syndrome_table(1))
        a = monte_carlo_run(*args, shots=100, seed=11)
        b = monte_carlo_run(*args, shots=100, seed=11)
        assert a.success_fraction == b.success_fraction
        assert a.outcome_counts == b.outcome_counts


class TestRecoveryEquivalence:
    @pytest.mark.parametrize(
        "code,channel,table",
        [
            (repetition_code(1), pairwise_correlated(3), repetition_syndrome_table(1)),
            (repetition_code(2), even_weight_correlated(2), repetition_syndrome_table(2)),
            (ancilla_code(3), triple_correlated(3), ancilla_recovery(3)),
            (ancilla_code(5), fully_correlated(5), ancilla_recovery(5)),
        ],
    )
    def test_table_and_canonical_agree(self, code, channel, table):
        canon = canonical_recovery(code, channel)
        gap = np.abs(
            composite_choi(code, channel, table) - composite_choi(code, channel, canon)
        ).max()
        assert gap < 1e-8
