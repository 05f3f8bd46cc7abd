"""Fuzzy gain sets over the five-factor universe and the optimum combinator.

Each gain outcome is a fuzzy set assigning a membership in [0, 1] to the
universe elements x1..x5, which stand for the factors P, Q, M, R, C in that
order.  Combining the sets element-wise, max on the union side and min on
the intersection side, yields the optimum gain set; each element's optimum
is attributed to the year of the set attaining it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .core import check_header, iter_csv_rows
from .errors import ParseError, SizeError, ValidationError

UNIVERSE = ("x1", "x2", "x3", "x4", "x5")

# Universe elements double as the five business factors, in order.
ELEMENT_TO_FACTOR = {"x1": "P", "x2": "Q", "x3": "M", "x4": "R", "x5": "C"}
_FACTOR_TO_ELEMENT = {factor: element for element, factor in ELEMENT_TO_FACTOR.items()}

# Risk and cost aggregate pessimistically by default; the rest optimistically.
DEFAULT_UNION = ("x1", "x2", "x3")
DEFAULT_INTERSECTION = ("x4", "x5")


def canonical_element(name: str) -> str:
    """Accept x1..x5 or the factor aliases P, Q, M, R, C."""
    cleaned = name.strip()
    if cleaned.lower() in UNIVERSE:
        return cleaned.lower()
    if cleaned.upper() in _FACTOR_TO_ELEMENT:
        return _FACTOR_TO_ELEMENT[cleaned.upper()]
    raise ValidationError(f"unknown universe element {name!r}")


@dataclass(frozen=True)
class FuzzyGainSet:
    """Membership of one gain outcome over the five-factor universe."""

    label: str
    memberships: Mapping[str, float]
    # Optional scalar tag carried through from input files; no operation
    # consumes it.
    code: Union[float, None] = None

    def __post_init__(self):
        normalized: dict[str, float] = {}
        for name, value in self.memberships.items():
            element = canonical_element(name)
            if element in normalized:
                raise ValidationError(
                    f"set {self.label!r}: duplicate element {name!r}"
                )
            normalized[element] = float(value)
        missing = [e for e in UNIVERSE if e not in normalized]
        if missing:
            raise ValidationError(
                f"set {self.label!r}: missing elements {', '.join(missing)}"
            )
        for element in UNIVERSE:
            value = normalized[element]
            if not 0.0 <= value <= 1.0:
                raise ValidationError(
                    f"set {self.label!r}: membership at {element} must be "
                    f"in [0, 1], got {value}"
                )
        object.__setattr__(
            self, "memberships", {e: normalized[e] for e in UNIVERSE}
        )

    def membership(self, element: str) -> float:
        return self.memberships[canonical_element(element)]

    def to_json_obj(self) -> dict:
        return {"label": self.label, "memberships": dict(self.memberships)}


@dataclass(frozen=True)
class OptimumGainResult:
    """Element-wise optimum memberships and the attaining year per factor."""

    memberships: Mapping[str, float]
    realization: Mapping[str, tuple[str, str]]  # factor -> (year, set label)


def fuzzy_union_membership(sets: Sequence[FuzzyGainSet], element: str) -> float:
    """Maximum membership at the element across the sets."""
    if not sets:
        raise SizeError("need at least one fuzzy set")
    key = canonical_element(element)
    return max(s.memberships[key] for s in sets)


def fuzzy_intersection_membership(sets: Sequence[FuzzyGainSet], element: str) -> float:
    """Minimum membership at the element across the sets."""
    if not sets:
        raise SizeError("need at least one fuzzy set")
    key = canonical_element(element)
    return min(s.memberships[key] for s in sets)


def _resolve_partition(union_factors, intersection_factors):
    if union_factors is None and intersection_factors is None:
        return set(DEFAULT_UNION), set(DEFAULT_INTERSECTION)
    if union_factors is None:
        inter = {canonical_element(e) for e in intersection_factors}
        union = set(UNIVERSE) - inter
    elif intersection_factors is None:
        union = {canonical_element(e) for e in union_factors}
        inter = set(UNIVERSE) - union
    else:
        union = {canonical_element(e) for e in union_factors}
        inter = {canonical_element(e) for e in intersection_factors}
    if union & inter or union | inter != set(UNIVERSE):
        raise ValidationError(
            "union and intersection factors must partition x1..x5"
        )
    return union, inter


def optimum_gain(
    sets: Sequence[FuzzyGainSet],
    years: Mapping[str, str],
    union_factors: Union[Iterable[str], None] = None,
    intersection_factors: Union[Iterable[str], None] = None,
) -> OptimumGainResult:
    """Element-wise optimum of the sets with year attribution.

    Union elements take the max membership, intersection elements the min;
    the default split puts x1..x3 on the union side and x4, x5 on the
    intersection side.  When only one side is given the other defaults to
    its complement.  Each optimum is attributed to the first set (in input
    order) attaining it.
    """
    sets = tuple(sets)
    if not sets:
        raise SizeError("need at least one fuzzy set")
    union_side, _ = _resolve_partition(union_factors, intersection_factors)
    years = dict(years)
    missing = [s.label for s in sets if s.label not in years]
    if missing:
        raise ValidationError(f"no year given for set(s) {', '.join(missing)}")
    memberships: dict[str, float] = {}
    realization: dict[str, tuple[str, str]] = {}
    for element in UNIVERSE:
        values = [s.memberships[element] for s in sets]
        optimum = max(values) if element in union_side else min(values)
        attaining = next(s for s, v in zip(sets, values) if v == optimum)
        memberships[element] = optimum
        realization[ELEMENT_TO_FACTOR[element]] = (
            years[attaining.label],
            attaining.label,
        )
    return OptimumGainResult(memberships=memberships, realization=realization)


_SETS_HEADER = ("label",) + UNIVERSE


def parse_fuzzy_sets(text: str) -> tuple[FuzzyGainSet, ...]:
    """Parse ``label,x1,x2,x3,x4,x5`` CSV text (optional trailing ``code``).

    Memberships must parse as numbers in [0, 1]; duplicate labels are
    rejected.
    """
    sets = []
    seen = set()
    header_seen = False
    with_code = False
    for line_num, row in iter_csv_rows(text):
        if not header_seen:
            lowered = [cell.lower() for cell in row]
            if lowered == list(_SETS_HEADER) + ["code"]:
                with_code = True
            else:
                check_header(row, _SETS_HEADER)
            header_seen = True
            continue
        expected = len(_SETS_HEADER) + (1 if with_code else 0)
        if len(row) != expected:
            raise ParseError(
                f"line {line_num}: expected {expected} fields, got {len(row)}"
            )
        label = row[0]
        if label in seen:
            raise ValidationError(f"duplicate set label {label!r}")
        seen.add(label)
        values = [_parse_membership(cell, line_num) for cell in row[1:6]]
        code = _parse_membership(row[6], line_num) if with_code else None
        sets.append(
            FuzzyGainSet(label, dict(zip(UNIVERSE, values)), code=code)
        )
    if not header_seen:
        raise ParseError("missing 'label,x1,x2,x3,x4,x5' header")
    if not sets:
        raise SizeError("no data rows")
    return tuple(sets)


def _parse_membership(token: str, line_num: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(
            f"line {line_num}: invalid membership value {token!r}"
        ) from None


def parse_set_years(text: str) -> dict[str, str]:
    """Parse the ``label,year`` mapping CSV."""
    years: dict[str, str] = {}
    header_seen = False
    for line_num, row in iter_csv_rows(text):
        if not header_seen:
            check_header(row, ("label", "year"))
            header_seen = True
            continue
        if len(row) != 2:
            raise ParseError(f"line {line_num}: expected 2 fields, got {len(row)}")
        label, year = row
        if label in years:
            raise ValidationError(f"duplicate set label {label!r}")
        years[label] = year
    if not header_seen:
        raise ParseError("missing 'label,year' header")
    if not years:
        raise SizeError("no data rows")
    return years
