"""Command-line front end: CSV files in, deterministic JSON or flat tables out.

Every number renders with at most 12 significant digits and every mapping
keeps a fixed key order, so repeated runs on identical inputs are byte
identical.  Exit codes: 0 success, 2 input or validation error, 1 internal
error.
"""

from __future__ import annotations

import functools
import json
import statistics
import sys

import click

from . import __version__, core, fuzzy, mining, predictors, stats
from .errors import GainProphetError, ParseError, ValidationError


# ---------------------------------------------------------------------------
# Rendering


def _json_scalar(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return core.format_number(value)
    raise TypeError(f"cannot render {type(value).__name__}")


def render_json(value, indent: int = 0, pretty: bool = True) -> str:
    """Serialize to JSON with insertion-ordered keys and 12-digit floats."""
    pad = "  " * indent
    child_pad = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{json.dumps(str(key))}: {render_json(item, indent + 1, pretty)}"
            for key, item in value.items()
        ]
        if not pretty:
            return "{" + ", ".join(items) + "}"
        return "{\n" + child_pad + (",\n" + child_pad).join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        rendered = [render_json(item, indent + 1, pretty) for item in value]
        nested = any(isinstance(item, (dict, list, tuple)) for item in value)
        if not pretty or not nested:
            return "[" + ", ".join(rendered) + "]"
        return "[\n" + child_pad + (",\n" + child_pad).join(rendered) + "\n" + pad + "]"
    return _json_scalar(value)


def _table_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return core.format_number(value)
    return str(value)


def _flatten(value, path: str, lines: list) -> None:
    if isinstance(value, dict):
        for key, item in value.items():
            _flatten(item, f"{path}.{key}" if path else str(key), lines)
    elif isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            _flatten(item, f"{path}[{i}]", lines)
    else:
        lines.append(f"{path}: {_table_scalar(value)}")


def _emit(payload: dict, output: str) -> None:
    if output == "table":
        lines: list = []
        _flatten(payload, "", lines)
        click.echo("\n".join(lines))
    else:
        click.echo(render_json(payload))


# ---------------------------------------------------------------------------
# Shared plumbing


def guarded(fn):
    """Turn package errors into a one-line diagnostic and exit status 2."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except GainProphetError as exc:
            click.echo(f"gainprophet: error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None


def _parse_floats(spec: str, option: str) -> tuple:
    values = []
    for token in spec.split(","):
        token = token.strip()
        try:
            values.append(float(token))
        except ValueError:
            raise ValidationError(f"{option}: invalid number {token!r}") from None
    return tuple(values)


def _values_from(series_path, inline_spec, inline_flag: str) -> tuple:
    if (series_path is None) == (inline_spec is None):
        raise ValidationError(f"give exactly one of --series or {inline_flag}")
    if series_path is not None:
        return core.parse_gain_series(_read_text(series_path)).gains
    return _parse_floats(inline_spec, inline_flag)


def _parse_distribution(text: str) -> stats.DiscreteDistribution:
    outcomes = []
    probabilities = []
    header_seen = False
    for line_num, row in core.iter_csv_rows(text):
        if not header_seen:
            core.check_header(row, ("gain", "probability"))
            header_seen = True
            continue
        if len(row) != 2:
            raise ParseError(f"line {line_num}: expected 2 fields, got {len(row)}")
        outcomes.append(_parse_cell(row[0], "gain", line_num))
        probabilities.append(_parse_cell(row[1], "probability", line_num))
    if not header_seen:
        raise ParseError("missing 'gain,probability' header")
    if not outcomes:
        raise ParseError("no data rows")
    return stats.DiscreteDistribution(tuple(outcomes), tuple(probabilities))


def _parse_joint(text: str) -> stats.JointDistribution:
    """Long-form ``g,q,p`` rows; outcomes keep first-appearance order and
    missing pairs default to mass 0."""
    g_order: list = []
    q_order: list = []
    mass: dict = {}
    header_seen = False
    for line_num, row in core.iter_csv_rows(text):
        if not header_seen:
            core.check_header(row, ("g", "q", "p"))
            header_seen = True
            continue
        if len(row) != 3:
            raise ParseError(f"line {line_num}: expected 3 fields, got {len(row)}")
        g = _parse_cell(row[0], "g", line_num)
        q = _parse_cell(row[1], "q", line_num)
        p = _parse_cell(row[2], "p", line_num)
        if g not in g_order:
            g_order.append(g)
        if q not in q_order:
            q_order.append(q)
        if (g, q) in mass:
            raise ValidationError(f"line {line_num}: duplicate outcome pair ({g}, {q})")
        mass[(g, q)] = p
    if not header_seen:
        raise ParseError("missing 'g,q,p' header")
    if not mass:
        raise ParseError("no data rows")
    pmf = tuple(
        tuple(mass.get((g, q), 0.0) for q in q_order) for g in g_order
    )
    return stats.JointDistribution(tuple(g_order), tuple(q_order), pmf)


def _parse_cell(token: str, name: str, line_num: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(
            f"line {line_num}: invalid {name} value {token!r}"
        ) from None


output_option = click.option(
    "-o",
    "--output",
    type=click.Choice(["json", "table"]),
    default="json",
    show_default=True,
    help="Rendering mode.",
)


# ---------------------------------------------------------------------------
# Commands


@click.group(name="gainprophet")
@click.version_option(version=__version__, prog_name="gainprophet")
def cli():
    """Deterministic gain-analysis toolkit."""


@cli.command("predict")
@click.option("--series", "series_path", required=True, metavar="FILE",
              help="year,gain CSV file.")
@click.option("--policy", type=click.Choice([p.value for p in predictors.Policy]),
              default=predictors.Policy.THRESHOLD.value, show_default=True,
              help="Step direction rule.")
@output_option
@guarded
def predict_cmd(series_path, policy, output):
    """Predict the next gain by one average-gap step."""
    series = core.parse_gain_series(_read_text(series_path))
    report = predictors.predict_next(series, policy)
    _emit(
        {
            "policy": policy,
            "gaps": list(report.gaps),
            "delta_avg": report.delta_avg,
            "predicted_gain": report.predicted_gain,
            "optimum_gain": report.optimum_gain,
            "optimum_index": report.optimum_index,
            "normalization_factor": report.normalization_factor,
        },
        output,
    )


@cli.command("mle")
@click.option("--series", "series_path", required=True, metavar="FILE",
              help="year,gain CSV file.")
@click.option("--family", type=click.Choice(["normal-location", "exponential-mean"]),
              default="normal-location", show_default=True)
@click.option("--sigma", type=float, default=1.0, show_default=True,
              help="Scale of the normal-location family.")
@click.option("--lo", type=float, default=None,
              help="Bracket lower end (default derived from the gains).")
@click.option("--hi", type=float, default=None,
              help="Bracket upper end (default derived from the gains).")
@click.option("--tol", type=float, default=None,
              help="Bracket width target (default 1e-12 of the width).")
@output_option
@guarded
def mle_cmd(series_path, family, sigma, lo, hi, tol, output):
    """Estimate the expected gain as the root of the summed score."""
    gains = core.parse_gain_series(_read_text(series_path)).gains
    if family == "normal-location":
        fam = predictors.NormalLocation(sigma=sigma)
        lo = min(gains) - 1.0 if lo is None else lo
        hi = max(gains) + 1.0 if hi is None else hi
    else:
        fam = predictors.ExponentialMean()
        if lo is None or hi is None:
            if min(gains) <= 0:
                raise ValidationError(
                    "exponential-mean needs positive gains or an explicit "
                    "--lo/--hi bracket"
                )
            lo = 0.5 * min(gains) if lo is None else lo
            hi = 2.0 * max(gains) if hi is None else hi
    problem = predictors.ScoreProblem(observations=gains, family=fam, bracket=(lo, hi))
    estimate = predictors.mle_expected_gain(problem, tol=tol)
    _emit(
        {
            "family": family,
            "estimate": estimate,
            "score_residual": predictors.score(problem, estimate),
        },
        output,
    )


@cli.command("support")
@click.option("--table", "table_path", required=True, metavar="FILE",
              help="year,gain,P,Q,M,R,C CSV file.")
@output_option
@guarded
def support_cmd(table_path, output):
    """Support fraction of each factor level, plus the favorable condition."""
    table = core.parse_observation_table(_read_text(table_path))
    report = mining.support_counts(table)
    condition = mining.optimum_condition(report)
    _emit(
        {
            "rows": report.rows,
            "support": {code: str(frac) for code, frac in report.support.items()},
            "support_decimal": {
                code: float(frac) for code, frac in report.support.items()
            },
            "favorable": {
                "factors": condition.factors.to_json_obj(),
                "codes": list(condition.factors.codes),
                "support": {
                    code: str(frac) for code, frac in condition.supports.items()
                },
            },
        },
        output,
    )


@cli.command("sequence")
@click.option("--table", "table_path", required=True, metavar="FILE",
              help="year,gain,P,Q,M,R,C CSV file.")
@output_option
@guarded
def sequence_cmd(table_path, output):
    """Boolean factor-status matrix and its column majorities."""
    table = core.parse_observation_table(_read_text(table_path))
    matrix = core.encode_sequence(table)
    summary = mining.dominant_pattern(matrix)
    _emit(
        {
            "matrix": matrix.to_json_obj(),
            "dominant": dict(summary.dominant),
            "recommendation": summary.recommendation,
        },
        output,
    )


@cli.command("states")
@output_option
@guarded
def states_cmd(output):
    """All 32 crisp factor states, one per line."""
    for index, state in enumerate(mining.enumerate_states()):
        if output == "table":
            bit_string = "".join(str(b) for b in state.bits)
            click.echo(f"{index:2d} {bit_string} {' '.join(state.codes)}")
        else:
            line = {
                "index": index,
                "bits": list(state.bits),
                "factors": state.to_json_obj(),
            }
            click.echo(render_json(line, pretty=False))


@cli.command("flags")
@click.option("--series", "series_path", required=True, metavar="FILE",
              help="year,gain CSV file.")
@click.option("--multiplier", type=float, default=2.0, show_default=True,
              help="Gap threshold as a multiple of the average gap.")
@output_option
@guarded
def flags_cmd(series_path, multiplier, output):
    """Flag years whose gap exceeds a multiple of the average gap."""
    series = core.parse_gain_series(_read_text(series_path))
    flags = mining.deviation_flags(series, multiplier)
    _emit(
        {
            "multiplier": multiplier,
            "delta_avg": predictors.delta_avg(series),
            "flags": [{"year": year, "flagged": flagged} for year, flagged in flags],
        },
        output,
    )


@cli.command("fuzzy-opt")
@click.option("--sets", "sets_path", required=True, metavar="FILE",
              help="label,x1,x2,x3,x4,x5 CSV file.")
@click.option("--years", "years_path", required=True, metavar="FILE",
              help="label,year CSV file.")
@click.option("--union", "union_spec", default=None, metavar="LIST",
              help="Union elements, comma separated (default x1,x2,x3).")
@click.option("--intersect", "intersect_spec", default=None, metavar="LIST",
              help="Intersection elements, comma separated (default x4,x5).")
@output_option
@guarded
def fuzzy_opt_cmd(sets_path, years_path, union_spec, intersect_spec, output):
    """Element-wise optimum of the fuzzy gain sets with year attribution."""
    sets = fuzzy.parse_fuzzy_sets(_read_text(sets_path))
    years = fuzzy.parse_set_years(_read_text(years_path))
    result = fuzzy.optimum_gain(
        sets,
        years,
        union_factors=union_spec.split(",") if union_spec else None,
        intersection_factors=intersect_spec.split(",") if intersect_spec else None,
    )
    _emit(
        {
            "memberships": dict(result.memberships),
            "realization": {
                factor: {"year": year, "set": label}
                for factor, (year, label) in result.realization.items()
            },
        },
        output,
    )


@cli.command("expect")
@click.option("--dist", "dist_path", required=True, metavar="FILE",
              help="gain,probability CSV file.")
@output_option
@guarded
def expect_cmd(dist_path, output):
    """Expected gain of a discrete distribution."""
    dist = _parse_distribution(_read_text(dist_path))
    _emit({"expectation": stats.expectation(dist)}, output)


@cli.command("joint")
@click.option("--joint", "joint_path", required=True, metavar="FILE",
              help="g,q,p CSV file (one mass per row).")
@output_option
@guarded
def joint_cmd(joint_path, output):
    """Additivity of expectation over a joint distribution."""
    joint_dist = _parse_joint(_read_text(joint_path))
    e_sum, e_g, e_q = stats.joint_expectation_sum(joint_dist)
    _emit({"e_sum": e_sum, "e_g": e_g, "e_q": e_q}, output)


@cli.command("ar")
@click.option("--series", "series_path", default=None, metavar="FILE",
              help="History from a year,gain CSV file.")
@click.option("--history", "history_spec", default=None, metavar="LIST",
              help="Inline history, most recent last.")
@click.option("--intercept", type=float, default=0.0, show_default=True)
@click.option("--coeffs", "coeffs_spec", required=True, metavar="LIST",
              help="Lag coefficients, most recent lag first.")
@click.option("--shock", type=float, default=0.0, show_default=True)
@output_option
@guarded
def ar_cmd(series_path, history_spec, intercept, coeffs_spec, shock, output):
    """One-step autoregressive forecast."""
    history = _values_from(series_path, history_spec, "--history")
    model = predictors.ARModel(
        intercept=intercept, coefficients=_parse_floats(coeffs_spec, "--coeffs")
    )
    _emit({"forecast": predictors.ar_forecast(model, history, shock)}, output)


@cli.command("ma")
@click.option("--shocks", "shocks_spec", required=True, metavar="LIST",
              help="Past shocks, most recent last.")
@click.option("--coeffs", "coeffs_spec", required=True, metavar="LIST",
              help="Shock weights, most recent shock first.")
@click.option("--q", "q_value", type=int, default=None,
              help="Count of past shocks used (default: one less than the weights).")
@click.option("--next-shock", type=float, default=0.0, show_default=True)
@output_option
@guarded
def ma_cmd(shocks_spec, coeffs_spec, q_value, next_shock, output):
    """One-step moving-average forecast."""
    coeffs = _parse_floats(coeffs_spec, "--coeffs")
    q = len(coeffs) - 1 if q_value is None else q_value
    model = predictors.MAModel(coefficients=coeffs, q=q)
    shocks = _parse_floats(shocks_spec, "--shocks")
    _emit({"forecast": predictors.ma_forecast(model, shocks, next_shock)}, output)


@cli.command("fit-ar")
@click.option("--series", "series_path", required=True, metavar="FILE",
              help="year,gain CSV file.")
@click.option("--order", type=int, default=1, show_default=True)
@output_option
@guarded
def fit_ar_cmd(series_path, order, output):
    """Least-squares AR coefficients for a gain series."""
    series = core.parse_gain_series(_read_text(series_path))
    model = predictors.fit_ar_least_squares(series, order)
    _emit(
        {
            "intercept": model.intercept,
            "coefficients": list(model.coefficients),
            "degenerate": model.degenerate,
        },
        output,
    )


@cli.command("gm-check")
@click.option("--m", "m_value", type=float, required=True,
              help="Growth scale, positive.")
@click.option("--n", "n_value", type=float, required=True,
              help="Growth base, positive.")
@click.option("--a1", type=float, required=True)
@click.option("--a2", type=float, required=True)
@output_option
@guarded
def gm_check_cmd(m_value, n_value, a1, a2, output):
    """Midpoint vs geometric-mean identity for exponential growth."""
    check = stats.exponential_midpoint_check(m_value, n_value, a1, a2)
    _emit({"lhs": check.lhs, "rhs": check.rhs, "holds": check.holds}, output)


@cli.command("hm")
@click.option("--series", "series_path", default=None, metavar="FILE",
              help="year,gain CSV file.")
@click.option("--values", "values_spec", default=None, metavar="LIST",
              help="Inline values, comma separated.")
@output_option
@guarded
def hm_cmd(series_path, values_spec, output):
    """Harmonic mean of the gains or of inline values."""
    values = _values_from(series_path, values_spec, "--values")
    _emit({"harmonic_mean": stats.harmonic_mean(values)}, output)


@cli.command("md")
@click.option("--series", "series_path", default=None, metavar="FILE",
              help="year,gain CSV file.")
@click.option("--values", "values_spec", default=None, metavar="LIST",
              help="Inline values, comma separated.")
@click.option("--center", type=float, default=None,
              help="Deviation center (default: the mean of the values).")
@output_option
@guarded
def md_cmd(series_path, values_spec, center, output):
    """Mean absolute deviation about a center or about the mean."""
    values = _values_from(series_path, values_spec, "--values")
    if center is None:
        deviation = stats.mean_deviation_about_mean(values)
        center = statistics.mean(values)
    else:
        deviation = stats.mean_deviation(values, center)
    _emit({"center": center, "mean_deviation": deviation}, output)


def main(argv=None):
    cli(args=argv, prog_name="gainprophet")


if __name__ == "__main__":
    main()
