from fractions import Fraction

import pytest

from partlab import (
    ValidationError,
    classify,
    cnt_quasipolynomial,
    count_table,
    envelope_cubic_coprime,
    envelope_leading_term,
    fit_quasipolynomial,
    minimal_logconcave_start,
    scan_bo,
    scan_logconcavity,
    verify_envelope,
    verify_quasipolynomial,
)
from partlab.exact import system_of
from partlab.scanner import reverify


class TestLogconcavityScan:
    def test_five_consecutive(self):
        s = system_of(1, 2, 3, 4, 5)
        assert scan_logconcavity(s, 2, 5000).minimal_start == 38
        assert scan_logconcavity(s, 2, 5000, u=1, e=1).minimal_start == 62

    def test_six_consecutive(self):
        assert minimal_logconcave_start(system_of(1, 2, 3, 4, 5, 6), 5000) == 80

    def test_binary_odd_violations(self):
        report = scan_logconcavity(system_of(1, 2, 4), 2, 500)
        assert [v.n for v in report.violations] == list(range(3, 501, 2))
        # a plain scan is horizon bounded: the last violation is at 499
        assert report.minimal_start == 500
        assert report.horizon_bounded
        assert minimal_logconcave_start(system_of(1, 2, 4), 500) is None

    @pytest.mark.parametrize("k", [3, 4])
    def test_every_minus_one_residue_violates(self, k):
        s = system_of(*range(1, k + 1))
        bad = {v.n for v in scan_logconcavity(s, 2, 1000).violations}
        assert {n for n in range(2, 1001) if n % s.D == s.D - 1} <= bad

    def test_consecutive_violation_pattern(self):
        # frozen from the DP oracle: the -1 class is not the only failing class
        three = [v.n for v in scan_logconcavity(system_of(1, 2, 3), 2, 1000).violations]
        assert three == [n for n in range(5, 1001) if n % 6 in (1, 5)]
        four = [v.n for v in scan_logconcavity(system_of(1, 2, 3, 4), 2, 1000).violations]
        assert four == list(range(3, 1001, 2))

    def test_recurring_violations_report_absent(self):
        assert minimal_logconcave_start(system_of(1, 2, 3), 1000) is None

    def test_clean_range_starts_at_lo(self):
        assert minimal_logconcave_start(system_of(1, 1), 100) == 2

    def test_strengthened_dominates_plain(self):
        s = system_of(1, 2, 3, 4, 5, 6)
        plain = {v.n for v in scan_logconcavity(s, 2, 400).violations}
        for u, e in [(1, 1), (Fraction(1, 3), 1), (2, 3)]:
            strong = {v.n for v in scan_logconcavity(s, 2, 400, u=u, e=e).violations}
            assert plain <= strong

    def test_witnesses_reverify(self):
        for parts in [(1, 2, 3), (1, 2, 3, 4, 5)]:
            s = system_of(*parts)
            assert reverify(scan_logconcavity(s, 2, 300))
            assert reverify(scan_logconcavity(s, 2, 300, u=Fraction(1, 2), e=2))

    def test_tampered_witness_rejected(self):
        report = scan_logconcavity(system_of(1, 2, 3), 2, 50)
        v = report.violations[0]
        fake = type(report)(report.system, report.property, report.lo, report.hi,
                            (type(v)(v.n, v.lhs + 1, v.rhs),), report.minimal_start)
        assert not reverify(fake)

    def test_parallel_matches_serial(self):
        s = system_of(1, 2, 3, 4)
        serial = scan_logconcavity(s, 2, 3000)
        parallel = scan_logconcavity(s, 2, 3000, workers=3, chunk=400)
        assert serial == parallel

    def test_validation(self):
        s = system_of(1, 2)
        with pytest.raises(ValidationError):
            scan_logconcavity(s, 0, 10)
        with pytest.raises(ValidationError):
            scan_logconcavity(s, 5, 5)
        with pytest.raises(ValidationError):
            scan_logconcavity(s, 2, 10, u=-1)
        with pytest.raises(ValidationError):
            minimal_logconcave_start(s, 2)

    def test_not_eventually_logconcave_never_starts(self, corpus_system):
        if classify(corpus_system).logconcave_eventually:
            return
        assert minimal_logconcave_start(corpus_system, max(4 * corpus_system.D, 3)) is None

    @pytest.mark.parametrize("k", [2, 3, 4, 6])
    def test_all_ones_start_present(self, k):
        assert minimal_logconcave_start(system_of(*[1] * k), 1000) == 2


class TestBoScan:
    def test_pair_violations(self):
        report = scan_bo(system_of(1, 2), 50)
        pairs = {(v.n, v.b) for v in report.violations}
        assert pairs == {(a, 1) for a in range(1, 51)} | {(3, 3)}
        assert report.minimal_start == 4
        assert reverify(report)

    def test_even_parts(self):
        report = scan_bo(system_of(2, 4, 6), 30)
        pairs = {(v.n, v.b) for v in report.violations}
        for a in range(1, 31, 2):
            for b in range(1, a + 1):
                assert (a, b) in pairs

    def test_three_consecutive_clean_above_threshold(self):
        report = scan_bo(system_of(1, 2, 3), 60)
        assert not [v for v in report.violations if v.b >= 26]
        assert report.minimal_start <= 26


class TestVerifiers:
    @pytest.mark.parametrize("parts", [(2, 3), (1, 2, 2, 3, 3), (1, 1, 1)])
    def test_quasipolynomial(self, parts):
        assert verify_quasipolynomial(fit_quasipolynomial(system_of(*parts)), 0, 600).ok

    def test_quasipolynomial_detects_corruption(self):
        qp = cnt_quasipolynomial(system_of(2, 3))
        bad = type(qp)(qp.system, qp.period, (qp.polys[1],) + qp.polys[1:])
        report = verify_quasipolynomial(bad, 0, 60)
        assert {v.n % 6 for v in report.violations} == {0}

    def test_envelopes(self):
        assert verify_envelope(envelope_cubic_coprime(system_of(1, 2, 3, 5)), 1, 2000).ok
        assert verify_envelope(envelope_leading_term(system_of(1, 2, 3)), 1, 2000).ok

    def test_envelope_range_guard(self):
        env = envelope_leading_term(system_of(1, 2, 3))
        with pytest.raises(ValidationError):
            verify_envelope(env, 0, 10)

    def test_shared_table(self):
        s = system_of(1, 2, 3)
        table = count_table(s, 1001)
        assert scan_logconcavity(s, 2, 1000, table=table) == scan_logconcavity(s, 2, 1000)
