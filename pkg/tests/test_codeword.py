from fractions import Fraction

import pytest

from goursat.codeword import (
    Chart,
    ChartPoint,
    GoursatWord,
    canonical_chart_point,
    enumerate_goursat_words,
    enumerate_rvt_words,
    goursat_normalize,
    is_goursat,
    lift,
    lift_chain,
    parse_word,
    rvt_of_chart_point,
)
from goursat.errors import (
    BadSymbol,
    EmptyWord,
    LeadingCritical,
    OrphanT,
    TooShort,
    Unsupported,
    WordError,
)


class TestParse:
    def test_worked_word(self):
        w = parse_word("RRVTVV")
        assert w.symbols == "RRVTVV"
        assert w.k == 6

    def test_shortest_word(self):
        assert parse_word("R").symbols == "R"

    def test_case_insensitive(self):
        assert parse_word("rrVtvv").symbols == "RRVTVV"

    def test_empty(self):
        with pytest.raises(EmptyWord):
            parse_word("")

    def test_orphan_t(self):
        with pytest.raises(OrphanT) as err:
            parse_word("RTV")
        assert err.value.position == 2

    def test_bad_symbol_reported_before_orphan_t(self):
        with pytest.raises(BadSymbol) as err:
            parse_word("RTX")
        assert err.value.position == 3
        assert "BadSymbol at 3" in str(err.value)

    def test_leading_critical(self):
        with pytest.raises(LeadingCritical):
            parse_word("VRV")
        with pytest.raises(LeadingCritical):
            parse_word("TRR")

    def test_t_after_t_is_fine(self):
        parse_word("RVTTT")

    def test_letter_is_one_indexed(self):
        w = parse_word("RRVTVV")
        assert w.letter(1) == "R"
        assert w.letter(3) == "V"
        with pytest.raises(IndexError):
            w.letter(0)


class TestGoursat:
    def test_worked_examples(self):
        assert is_goursat("RRVTVV")
        assert not is_goursat("RVVVRVT")
        assert is_goursat("R")

    def test_goursat_word_type_rejects(self):
        with pytest.raises(WordError):
            GoursatWord("RVV")

    def test_normalize_worked_example(self):
        assert str(goursat_normalize("RVTRV")) == "RRRRV"

    def test_normalize_identity_on_goursat(self):
        assert str(goursat_normalize("RRVTVV")) == "RRVTVV"

    def test_normalize_rvv(self):
        assert str(goursat_normalize("RVV")) == "RRV"

    def test_normalize_idempotent(self):
        for k in range(1, 7):
            for w in enumerate_rvt_words(k):
                n = goursat_normalize(w)
                assert goursat_normalize(n) == n
                assert n.k == w.k


class TestLift:
    def test_figure_example(self):
        assert str(lift("RRVTVVR")) == "RRRVVR"

    def test_worked_tables_pair(self):
        assert str(lift("RRVTVV")) == "RRRVV"

    def test_trivial(self):
        assert str(lift("RR")) == "R"

    def test_too_short(self):
        with pytest.raises(TooShort):
            lift("R")

    def test_length_grammar_and_chain(self):
        for k in range(1, 9):
            for w in enumerate_goursat_words(k):
                chain = lift_chain(w)
                assert len(chain) == k
                assert str(chain[0]) == "R"
                for shorter, longer in zip(chain, chain[1:]):
                    assert lift(longer) == shorter
                    assert longer.k == shorter.k + 1


class TestCanonicalPoints:
    def test_rrvtvv_origin(self):
        p = canonical_chart_point("RRVTVV")
        assert p.chart.choices == "ooioii"
        assert all(c == 0 for c in p.coords)

    def test_rrvrvv_point(self):
        p = canonical_chart_point("RRVRVV")
        assert p.chart.choices == "ooioii"
        assert p.coords == (Fraction(0),) * 5 + (Fraction(1),) + (Fraction(0),) * 2

    def test_all_regular(self):
        p = canonical_chart_point("RRR")
        assert p.chart.choices == "ooo"
        assert all(c == 0 for c in p.coords)

    def test_roundtrip_worked_points(self):
        for w in ("RRVTVV", "RRVRVV", "R", "RVVVRVT", "RVTRV"):
            assert str(rvt_of_chart_point(canonical_chart_point(w))) == w

    def test_roundtrip_exhaustive(self):
        for k in range(1, 9):
            for w in enumerate_rvt_words(k):
                assert rvt_of_chart_point(canonical_chart_point(w)) == w

    def test_ip_is_v_positions(self):
        for k in range(1, 8):
            for w in enumerate_rvt_words(k):
                p = canonical_chart_point(w)
                assert p.ip == {j for j in range(1, k + 1) if w.letter(j) == "V"}

    def test_unsupported_configuration(self):
        chart = Chart("oi")
        p = ChartPoint(chart, (Fraction(0), Fraction(0), Fraction(0), Fraction(1)))
        with pytest.raises(Unsupported):
            rvt_of_chart_point(p)


class TestChartBookkeeping:
    def test_alt_names_ooioii(self):
        chart = Chart("ooioii")
        assert chart.alt_names == ("x", "y", "y'", "y''", "x'", "x''", "y^(3)", "x^(3)")

    def test_retained_and_deactivated(self):
        chart = Chart("ooioii")
        # level 3 inverts: retains n_2, deactivates r_0's lineage coordinate
        assert chart.retained_var(2) == 0
        assert chart.retained_var(3) == Chart.n_var(2)
        assert chart.deactivated_var(3) == 0
        assert chart.deactivated_var(6) == Chart.n_var(4)

    def test_ip(self):
        assert Chart("ooioii").ip == {3, 5, 6}


def test_enumeration_counts():
    assert [len(list(enumerate_rvt_words(k))) for k in range(1, 7)] == [
        1, 2, 5, 13, 34, 89,
    ]
    assert [len(list(enumerate_goursat_words(k))) for k in range(1, 7)] == [
        1, 1, 2, 5, 13, 34,
    ]
