"""Exact-integer bound arithmetic and the combined violation verdicts."""

from math import comb

import pytest

from qecverify import (
    ancilla_code,
    choi_rank,
    even_weight_correlated,
    family_rank,
    fully_correlated,
    hamming_check,
    hamming_rhs,
    is_correctable,
    min_n_hamming,
    min_n_packing,
    packing_check,
    packing_scan,
    pairwise_correlated,
    repetition_code,
    triple_correlated,
    violation_report,
    weight_bounded,
)
from qecverify.channels import KrausSet
import numpy as np


class TestPackingCheck:
    def test_pairwise_violated_at_n3(self):
        report = packing_check(3, 1, pairwise_correlated(3))
        assert (report.rank, report.rhs, report.dim_s) == (10, 20, 8)
        assert not report.satisfied

    def test_triple_saturated_at_n3(self):
        report = packing_check(3, 1, triple_correlated(3))
        assert (report.rank, report.rhs, report.dim_s) == (4, 8, 8)
        assert report.satisfied

    def test_identity_channel(self):
        ident = KrausSet(8, 8, (np.eye(8),))
        report = packing_check(3, 1, ident)
        assert report.rhs == 2 and report.satisfied

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            packing_check(4, 1, pairwise_correlated(3))


class TestHamming:
    def test_minimal_length_t1(self):
        # independent scan of q^n >= q^k sum_i (q^2-1)^i C(n,i)
        expected = next(
            n for n in range(1, 20) if 2**n >= 2 * sum(3**i * comb(n, i) for i in range(2))
        )
        assert expected == 5
        assert min_n_hamming(1, 1, 2) == 5
        at5 = hamming_check(5, 1, 1, 2)
        assert at5.dim_s == at5.rhs == 32  # saturation

    def test_t0_reduces_to_qk(self):
        for n in range(1, 6):
            assert hamming_rhs(n, 2, 0, 3) == 9

    def test_n7_value(self):
        assert hamming_rhs(7, 1, 1, 2) == 44
        assert hamming_check(7, 1, 1, 2).satisfied

    def test_qary_generalization(self):
        assert hamming_rhs(4, 1, 1, 3) == 3 * (1 + 8 * 4)

    def test_validation(self):
        with pytest.raises(ValueError):
            hamming_rhs(3, 1, 4, 2)
        with pytest.raises(ValueError):
            hamming_rhs(3, 1, 1, 1)

    def test_matches_weight_bounded_packing(self):
        # same arithmetic through the channel constructor, n <= 7, t <= 2
        for n in range(1, 8):
            for t in range(0, min(n, 2) + 1):
                rank = choi_rank(weight_bounded(n, t))
                for k in (1, 2):
                    assert hamming_rhs(n, k, t, 2) == (1 << k) * rank


class TestMinN:
    def test_pairwise_k1(self):
        assert min_n_packing(1, "pairwise") == 7

    def test_pairwise_quadruple_k1_directly(self):
        expected = next(
            n
            for n in range(4, 20)
            if 2**n >= 2 * (1 + 3 * comb(n, 2) + 3 * comb(n, 4))
        )
        assert expected == 12
        assert min_n_packing(1, "pairwise+quadruple") == 12

    def test_even_weight_matches_quadruple_formula(self):
        assert min_n_packing(1, "even_weight", m=2) == 12

    def test_fully_correlated(self):
        for k in (1, 2, 3, 5):
            assert min_n_packing(k, "fully_correlated") == k + 2

    def test_triple(self):
        assert min_n_packing(1, "triple") == 3

    def test_monotone_in_k(self):
        values = [min_n_packing(k, "pairwise") for k in range(1, 5)]
        assert values == sorted(values)
        assert values[0] < values[-1]

    def test_scan_rows(self):
        rows = packing_scan(1, "pairwise+quadruple", n_max=16)
        assert rows[0]["n"] == 4 and rows[-1]["n"] == 16
        first_ok = next(r["n"] for r in rows if r["satisfied"])
        assert first_ok == 12
        for r in rows:
            assert r["rhs"] == 2 * r["rank"]
            assert r["satisfied"] == (r["dim_s"] >= r["rhs"])

    def test_family_rank_matches_constructed_channels(self):
        assert family_rank("pairwise", 3) == pairwise_correlated(3).term_count
        assert family_rank("even_weight", 5, m=2) == even_weight_correlated(2).term_count
        assert family_rank("triple", 4) == triple_correlated(4).term_count
        assert family_rank("fully_correlated", 6) == fully_correlated(6).term_count


class TestViolationReport:
    def test_degenerate_violation(self):
        report = violation_report(repetition_code(1), pairwise_correlated(3))
        assert report.violation and not report.consistency_error
        assert report.verdict == "degenerate-violation"

    def test_saturating_nondegenerate(self):
        report = violation_report(ancilla_code(3), triple_correlated(3))
        assert not report.violation and not report.consistency_error
        assert report.verdict == "correctable-within-bound"
        assert report.bound.dim_s == report.bound.rhs

    def test_five_qubit_violation(self):
        report = violation_report(repetition_code(2), even_weight_correlated(2))
        assert report.violation
        assert (report.bound.dim_s, report.bound.rhs) == (32, 92)

    def test_uncorrectable_verdict(self):
        report = violation_report(ancilla_code(5), triple_correlated(5))
        assert report.verdict == "not-correctable"

    def test_no_consistency_errors_across_battery(self, battery):
        for name, code, channel, _ in battery:
            report = violation_report(code, channel)
            assert not report.consistency_error, name
            kl = is_correctable(code, channel)
            if kl.correctable and not kl.degenerate:
                assert report.bound.satisfied, name

    def test_json_fields(self):
        report = violation_report(repetition_code(1), pairwise_correlated(3))
        data = report.to_json()
        assert data["bound"]["verdict"] == "violated"
        assert set(data["bound"]) >= {"kind", "n", "k", "rank", "rhs", "satisfied"}
        assert data["kl"]["correctable"] is True
