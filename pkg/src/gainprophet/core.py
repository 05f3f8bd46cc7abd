"""Core domain types and CSV ingestion for yearly gain data.

Gain observations arrive as small CSV files: a plain ``year,gain`` series,
or an observation table that adds the five business-factor status columns
P, Q, M, R, C.  All types here are immutable, validated on construction and
safe to share across threads.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .errors import ParseError, SizeError, ValidationError

FACTORS = ("P", "Q", "M", "R", "C")

FACTOR_NAMES = {
    "P": "production",
    "Q": "quality",
    "M": "market competition",
    "R": "risk involvement",
    "C": "cost",
}

# Per factor: the level letter that encodes to bit 0, then the one for bit 1.
FACTOR_LEVELS = {
    "P": ("L", "H"),
    "Q": ("M", "B"),
    "M": ("L", "H"),
    "R": ("L", "H"),
    "C": ("L", "H"),
}

# The ten two-letter status codes, low-side level first within each factor.
LEVEL_CODES = tuple(
    factor + level for factor in FACTORS for level in FACTOR_LEVELS[factor]
)


def format_number(value: float) -> str:
    """Format with up to 12 significant digits, trailing zeros trimmed."""
    text = f"{value:.12g}"
    return "0" if text in ("-0", "-0.0") else text


def _canonical_level(factor: str, token: str) -> str:
    """Map a status cell like ``PH``, ``h`` or ``B`` to its level letter."""
    cleaned = token.strip().upper()
    if len(cleaned) == 2 and cleaned[0] == factor:
        cleaned = cleaned[1:]
    if cleaned in FACTOR_LEVELS[factor]:
        return cleaned
    raise ValidationError(f"unknown status code {token!r} for factor {factor}")


@dataclass(frozen=True)
class FactorVector:
    """Crisp status of the five business factors for one year."""

    production: str
    quality: str
    market: str
    risk: str
    cost: str

    def __post_init__(self):
        for factor, level in zip(FACTORS, self.levels):
            if level not in FACTOR_LEVELS[factor]:
                raise ValidationError(
                    f"factor {factor} level must be one of "
                    f"{FACTOR_LEVELS[factor]}, got {level!r}"
                )

    @property
    def levels(self) -> tuple[str, str, str, str, str]:
        return (self.production, self.quality, self.market, self.risk, self.cost)

    @property
    def bits(self) -> tuple[int, int, int, int, int]:
        """0/1 encoding in factor order; low-side levels map to 0."""
        return tuple(
            FACTOR_LEVELS[factor].index(level)
            for factor, level in zip(FACTORS, self.levels)
        )

    @property
    def codes(self) -> tuple[str, str, str, str, str]:
        """Two-letter status codes, e.g. ``('PL', 'QB', 'MH', 'RL', 'CH')``."""
        return tuple(factor + level for factor, level in zip(FACTORS, self.levels))

    @classmethod
    def from_codes(cls, tokens) -> "FactorVector":
        tokens = tuple(tokens)
        if len(tokens) != len(FACTORS):
            raise ValidationError(
                f"expected {len(FACTORS)} status codes, got {len(tokens)}"
            )
        return cls(*(_canonical_level(f, tok) for f, tok in zip(FACTORS, tokens)))

    @classmethod
    def from_bits(cls, bits) -> "FactorVector":
        bits = tuple(bits)
        if len(bits) != len(FACTORS) or any(b not in (0, 1) for b in bits):
            raise ValidationError(f"bits must be five values in {{0, 1}}, got {bits!r}")
        return cls(*(FACTOR_LEVELS[f][b] for f, b in zip(FACTORS, bits)))

    def to_json_obj(self) -> dict[str, str]:
        return dict(zip(FACTORS, self.levels))


@dataclass(frozen=True)
class GainSeries:
    """Ordered yearly gain observations; the universal input."""

    entries: tuple[tuple[str, float], ...]

    def __post_init__(self):
        normalized = tuple((str(year), float(gain)) for year, gain in self.entries)
        object.__setattr__(self, "entries", normalized)
        if not normalized:
            raise SizeError("a gain series needs at least one entry")
        seen = set()
        for year, gain in normalized:
            if year in seen:
                raise ValidationError(f"duplicate year label {year!r}")
            seen.add(year)
            if not math.isfinite(gain):
                raise ValidationError(f"gain for {year!r} is not finite")

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def years(self) -> tuple[str, ...]:
        return tuple(year for year, _ in self.entries)

    @property
    def gains(self) -> tuple[float, ...]:
        return tuple(gain for _, gain in self.entries)

    @classmethod
    def from_gains(cls, gains, prefix: str = "y") -> "GainSeries":
        """Build a series with synthetic year labels y1, y2, ..."""
        return cls(
            tuple((f"{prefix}{i}", float(g)) for i, g in enumerate(gains, start=1))
        )

    def to_json_obj(self) -> list[dict]:
        return [{"year": year, "gain": gain} for year, gain in self.entries]


@dataclass(frozen=True)
class Observation:
    """One table row: a year, its gain and the factor status."""

    year: str
    gain: float
    factors: FactorVector


@dataclass(frozen=True)
class ObservationTable:
    """Rows of (year, gain, factor status), in file order."""

    rows: tuple[Observation, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise SizeError("an observation table needs at least one row")
        seen = set()
        for row in rows:
            if row.year in seen:
                raise ValidationError(f"duplicate year label {row.year!r}")
            seen.add(row.year)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def years(self) -> tuple[str, ...]:
        return tuple(row.year for row in self.rows)


@dataclass(frozen=True)
class SequenceRow:
    """A labelled 5-bit row of the boolean status matrix."""

    label: str
    bits: tuple[int, int, int, int, int]

    def __post_init__(self):
        bits = tuple(self.bits)
        object.__setattr__(self, "bits", bits)
        if len(bits) != len(FACTORS) or any(b not in (0, 1) for b in bits):
            raise ValidationError(
                f"row {self.label!r}: bits must be five values in {{0, 1}}"
            )


@dataclass(frozen=True)
class SequenceMatrix:
    """Boolean factor-status rows derived from an observation table."""

    rows: tuple[SequenceRow, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise SizeError("a sequence matrix needs at least one row")

    def __len__(self) -> int:
        return len(self.rows)

    def to_json_obj(self) -> list[dict]:
        return [{"label": row.label, "bits": list(row.bits)} for row in self.rows]


def iter_csv_rows(text: str):
    """Yield (line_number, stripped_cells) for each non-blank CSV row."""
    reader = csv.reader(io.StringIO(text))
    for row in reader:
        if not row or all(not cell.strip() for cell in row):
            continue
        yield reader.line_num, [cell.strip() for cell in row]


def check_header(row, expected) -> None:
    if [cell.lower() for cell in row] != list(expected):
        raise ParseError(
            f"expected header {','.join(expected)!r}, got {','.join(row)!r}"
        )


def _parse_gain(token: str, line_num: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"line {line_num}: invalid gain value {token!r}") from None
    if not math.isfinite(value):
        raise ParseError(f"line {line_num}: gain value {token!r} is not finite")
    return value


def parse_gain_series(text: str) -> GainSeries:
    """Parse ``year,gain`` CSV text into a GainSeries.

    Rows keep their file order.  Raises ParseError for malformed rows (with
    the offending line number), ValidationError for duplicate year labels
    and SizeError when no data rows are present.
    """
    entries = []
    header_seen = False
    for line_num, row in iter_csv_rows(text):
        if not header_seen:
            check_header(row, ("year", "gain"))
            header_seen = True
            continue
        if len(row) != 2:
            raise ParseError(f"line {line_num}: expected 2 fields, got {len(row)}")
        year, gain_text = row
        entries.append((year, _parse_gain(gain_text, line_num)))
    if not header_seen:
        raise ParseError("missing 'year,gain' header")
    if not entries:
        raise SizeError("no data rows")
    return GainSeries(tuple(entries))


def gain_series_to_csv(series: GainSeries) -> str:
    """Render a series back to ``year,gain`` CSV.

    Gains are written with up to 12 significant digits, so any input whose
    gain column carried at most that many digits round-trips to the same
    numeric values.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["year", "gain"])
    for year, gain in series.entries:
        writer.writerow([year, format_number(gain)])
    return buffer.getvalue()


_TABLE_HEADER = ("year", "gain") + tuple(f.lower() for f in FACTORS)


def parse_observation_table(text: str) -> ObservationTable:
    """Parse ``year,gain,P,Q,M,R,C`` CSV text into an ObservationTable.

    Factor cells accept the two-letter status codes (PL, PH, QM, ...) or
    bare level letters (L/H, and M/B for quality), case-insensitively.
    """
    rows = []
    header_seen = False
    for line_num, row in iter_csv_rows(text):
        if not header_seen:
            check_header(row, _TABLE_HEADER)
            header_seen = True
            continue
        if len(row) != len(_TABLE_HEADER):
            raise ParseError(
                f"line {line_num}: expected {len(_TABLE_HEADER)} fields, got {len(row)}"
            )
        gain = _parse_gain(row[1], line_num)
        try:
            factors = FactorVector.from_codes(row[2:])
        except ValidationError as exc:
            raise ValidationError(f"line {line_num}: {exc}") from None
        rows.append(Observation(row[0], gain, factors))
    if not header_seen:
        raise ParseError("missing 'year,gain,P,Q,M,R,C' header")
    if not rows:
        raise SizeError("no data rows")
    return ObservationTable(tuple(rows))


def encode_sequence(table: ObservationTable) -> SequenceMatrix:
    """Encode each row's factor status as a 5-bit row, order preserved.

    Rows are labelled g1, g2, ... by position, one gain per source row.
    """
    rows = tuple(
        SequenceRow(f"g{i}", obs.factors.bits)
        for i, obs in enumerate(table.rows, start=1)
    )
    return SequenceMatrix(rows)
