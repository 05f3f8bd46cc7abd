"""Parsing, encoding and serialization of the core domain types."""

import csv
import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gainprophet import (
    FactorVector,
    GainSeries,
    ParseError,
    SizeError,
    ValidationError,
    encode_sequence,
    gain_series_to_csv,
    parse_gain_series,
    parse_observation_table,
)


class TestParseGainSeries:
    def test_transcribes_rows_in_order(self):
        series = parse_gain_series("year,gain\ny1,10.0\ny2,12.5")
        assert series.entries == (("y1", 10.0), ("y2", 12.5))

    def test_duplicate_year_rejected(self):
        with pytest.raises(ValidationError, match="duplicate year"):
            parse_gain_series("year,gain\ny1,10.0\ny1,11.0")

    def test_malformed_gain_names_line(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_gain_series("year,gain\ny1,abc")

    def test_non_finite_gain_rejected(self):
        with pytest.raises(ParseError, match="not finite"):
            parse_gain_series("year,gain\ny1,nan")

    def test_wrong_field_count_names_line(self):
        with pytest.raises(ParseError, match="line 3"):
            parse_gain_series("year,gain\ny1,1.0\ny2,2.0,extra")

    def test_empty_input_rejected(self):
        with pytest.raises(SizeError):
            parse_gain_series("year,gain\n")

    def test_missing_header_rejected(self):
        with pytest.raises(ParseError, match="header"):
            parse_gain_series("y1,10.0\ny2,12.5")

    def test_blank_lines_skipped(self):
        series = parse_gain_series("year,gain\n\ny1,1.0\n\ny2,2.0\n")
        assert series.years == ("y1", "y2")


class TestParseObservationTable:
    def test_two_letter_codes(self):
        table = parse_observation_table(
            "year,gain,P,Q,M,R,C\ny1,1.0,PL,QB,MH,RL,CH"
        )
        assert table.rows[0].factors == FactorVector("L", "B", "H", "L", "H")

    def test_second_row_codes(self):
        table = parse_observation_table(
            "year,gain,P,Q,M,R,C\ny2,1.0,PH,QM,ML,RL,CL"
        )
        assert table.rows[0].factors == FactorVector("H", "M", "L", "L", "L")

    def test_bare_letters_and_case(self):
        table = parse_observation_table(
            "year,gain,P,Q,M,R,C\ny1,1.0,l,b,h,L,ch"
        )
        assert table.rows[0].factors.codes == ("PL", "QB", "MH", "RL", "CH")

    def test_unknown_code_names_factor(self):
        with pytest.raises(ValidationError, match="'PX' for factor P"):
            parse_observation_table("year,gain,P,Q,M,R,C\ny5,1.0,PX,QB,MH,RL,CH")

    def test_duplicate_year_rejected(self):
        text = "year,gain,P,Q,M,R,C\ny1,1.0,PL,QB,MH,RL,CH\ny1,2.0,PH,QM,ML,RL,CL"
        with pytest.raises(ValidationError, match="duplicate year"):
            parse_observation_table(text)


class TestEncodeSequence:
    def test_four_row_table_bits(self, read_fixture):
        matrix = encode_sequence(parse_observation_table(read_fixture("observations.csv")))
        assert [row.label for row in matrix.rows] == ["g1", "g2", "g3", "g4"]
        assert [row.bits for row in matrix.rows] == [
            (0, 1, 1, 0, 1),
            (1, 0, 0, 0, 0),
            (1, 1, 1, 1, 1),
            (0, 0, 1, 1, 1),
        ]

    def test_all_low_row(self):
        table = parse_observation_table("year,gain,P,Q,M,R,C\ny1,1.0,PL,QM,ML,RL,CL")
        assert encode_sequence(table).rows[0].bits == (0, 0, 0, 0, 0)

    def test_json_shapes(self, read_fixture):
        table = parse_observation_table(read_fixture("observations.csv"))
        matrix = encode_sequence(table)
        assert matrix.to_json_obj()[0] == {"label": "g1", "bits": [0, 1, 1, 0, 1]}
        assert table.rows[0].factors.to_json_obj() == {
            "P": "L", "Q": "B", "M": "H", "R": "L", "C": "H",
        }


class TestFactorVector:
    def test_bit_encoding_is_injective(self):
        # All 32 vectors, checked exhaustively.
        vectors = [FactorVector.from_bits(_bits(i)) for i in range(32)]
        assert len({v.bits for v in vectors}) == 32
        for i, vector in enumerate(vectors):
            assert vector.bits == _bits(i)
            assert all(b in (0, 1) for b in vector.bits)

    def test_invalid_level_rejected(self):
        with pytest.raises(ValidationError):
            FactorVector("X", "B", "H", "L", "H")

    def test_quality_uses_medium_best(self):
        with pytest.raises(ValidationError):
            FactorVector("L", "L", "H", "L", "H")


def _bits(value: int) -> tuple:
    return tuple((value >> (4 - j)) & 1 for j in range(5))


class TestGainSeries:
    def test_needs_an_entry(self):
        with pytest.raises(SizeError):
            GainSeries(())

    def test_rejects_non_finite(self):
        with pytest.raises(ValidationError):
            GainSeries((("y1", float("inf")),))

    def test_from_gains_labels(self):
        series = GainSeries.from_gains([5.0, 6.0])
        assert series.years == ("y1", "y2")

    def test_json_shape(self):
        series = GainSeries.from_gains([5.0])
        assert series.to_json_obj() == [{"year": "y1", "gain": 5.0}]


# 12-significant-digit decimals round-trip through parse and serialize.
_twelve_digit = st.floats(
    min_value=-1e9, max_value=1e9, allow_nan=False, allow_infinity=False
).map(lambda x: float(f"{x:.12g}"))


@given(gains=st.lists(_twelve_digit, min_size=1, max_size=20))
def test_serialize_round_trip(gains):
    series = GainSeries.from_gains(gains)
    again = parse_gain_series(gain_series_to_csv(series))
    assert again.gains == series.gains
    assert again.years == series.years


@given(
    rows=st.lists(
        st.tuples(st.integers(0, 10**6), _twelve_digit),
        min_size=1,
        max_size=30,
        unique_by=lambda r: r[0],
    )
)
def test_parsing_preserves_row_order(rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["year", "gain"])
    for n, gain in rows:
        writer.writerow([f"y{n}", f"{gain:.12g}"])
    series = parse_gain_series(buffer.getvalue())
    assert series.years == tuple(f"y{n}" for n, _ in rows)
