"""Command-line behavior: JSON output, rendering modes and exit codes."""

import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from gainprophet.cli import cli, render_json


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, list(args))


class TestRenderJson:
    def test_trims_to_twelve_significant_digits(self):
        assert render_json({"x": 0.1 + 0.2}, pretty=False) == '{"x": 0.3}'

    def test_integers_stay_integers(self):
        assert render_json([1, 2.0, True, None], pretty=False) == "[1, 2, true, null]"

    def test_insertion_order_kept(self):
        assert render_json({"b": 1, "a": 2}, pretty=False) == '{"b": 1, "a": 2}'


class TestSupportCommand:
    def test_golden_fraction_strings(self, runner, data_dir):
        result = invoke(runner, "support", "--table", str(data_dir / "observations.csv"))
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["support"]["MH"] == "3/4"
        assert payload["support"]["CL"] == "1/4"
        assert payload["support_decimal"]["MH"] == 0.75
        assert payload["favorable"]["codes"] == ["PH", "QB", "MH", "RL", "CL"]

    def test_table_mode(self, runner, data_dir):
        result = invoke(
            runner, "support", "--table", str(data_dir / "observations.csv"),
            "--output", "table",
        )
        assert result.exit_code == 0
        assert "support.MH: 3/4" in result.output


class TestSequenceCommand:
    def test_matrix_and_majorities(self, runner, data_dir):
        result = invoke(runner, "sequence", "--table", str(data_dir / "observations.csv"))
        payload = json.loads(result.output)
        assert payload["matrix"][0] == {"label": "g1", "bits": [0, 1, 1, 0, 1]}
        assert payload["matrix"][2] == {"label": "g3", "bits": [1, 1, 1, 1, 1]}
        assert payload["dominant"] == {
            "P": "tie", "Q": "tie", "M": "1", "R": "tie", "C": "1",
        }


class TestStatesCommand:
    def test_thirty_two_lines_of_json(self, runner):
        result = invoke(runner, "states")
        lines = result.output.strip().splitlines()
        assert len(lines) == 32
        first = json.loads(lines[0])
        assert first == {
            "index": 0,
            "bits": [0, 0, 0, 0, 0],
            "factors": {"P": "L", "Q": "M", "M": "L", "R": "L", "C": "L"},
        }
        thirteenth = json.loads(lines[13])
        assert thirteenth["bits"] == [0, 1, 1, 0, 1]


class TestPredictCommand:
    def test_threshold_report(self, runner, tmp_path):
        path = tmp_path / "series.csv"
        path.write_text("year,gain\ny1,10\ny2,12\ny3,9\n")
        result = invoke(runner, "predict", "--series", str(path))
        payload = json.loads(result.output)
        assert payload["delta_avg"] == 2.5
        assert payload["predicted_gain"] == 6.5
        assert payload["optimum_gain"] == 12
        assert payload["optimum_index"] == 1
        assert payload["normalization_factor"] == -5.5

    def test_trend_policy(self, runner, tmp_path):
        path = tmp_path / "series.csv"
        path.write_text("year,gain\ny1,1\ny2,2\ny3,3\n")
        result = invoke(runner, "predict", "--series", str(path), "--policy", "trend")
        assert json.loads(result.output)["predicted_gain"] == 4


class TestMleCommand:
    def test_normal_location_default_bracket(self, runner, data_dir):
        result = invoke(runner, "mle", "--series", str(data_dir / "gains.csv"))
        payload = json.loads(result.output)
        assert payload["estimate"] == pytest.approx(12.833333333333334, abs=1e-9)
        assert abs(payload["score_residual"]) < 1e-6

    def test_exponential_mean(self, runner, tmp_path):
        path = tmp_path / "series.csv"
        path.write_text("year,gain\ny1,1\ny2,3\n")
        result = invoke(runner, "mle", "--series", str(path), "--family", "exponential-mean")
        assert json.loads(result.output)["estimate"] == pytest.approx(2.0, abs=1e-9)


class TestFuzzyOptCommand:
    def test_golden_output(self, runner, data_dir):
        result = invoke(
            runner, "fuzzy-opt",
            "--sets", str(data_dir / "fuzzy_sets.csv"),
            "--years", str(data_dir / "set_years.csv"),
        )
        payload = json.loads(result.output)
        assert payload["memberships"] == {
            "x1": 0.8, "x2": 0.8, "x3": 0.9, "x4": 0.2, "x5": 0.2,
        }
        assert payload["realization"]["C"] == {"year": "y2", "set": "G2"}
        assert payload["realization"]["P"] == {"year": "y3", "set": "G3"}

    def test_custom_partition(self, runner, data_dir):
        result = invoke(
            runner, "fuzzy-opt",
            "--sets", str(data_dir / "fuzzy_sets.csv"),
            "--years", str(data_dir / "set_years.csv"),
            "--union", "x1", "--intersect", "x2,x3,x4,x5",
        )
        assert json.loads(result.output)["memberships"]["x3"] == 0.5


class TestFlagsCommand:
    def test_flags_attach_to_later_years(self, runner, tmp_path):
        path = tmp_path / "series.csv"
        path.write_text("year,gain\ny1,10\ny2,10\ny3,10\ny4,100\n")
        result = invoke(runner, "flags", "--series", str(path), "--multiplier", "2")
        payload = json.loads(result.output)
        assert payload["flags"] == [
            {"year": "y2", "flagged": False},
            {"year": "y3", "flagged": False},
            {"year": "y4", "flagged": True},
        ]


class TestStatsCommands:
    def test_expect(self, runner, data_dir):
        result = invoke(runner, "expect", "--dist", str(data_dir / "distribution.csv"))
        assert json.loads(result.output)["expectation"] == 2.3

    def test_joint(self, runner, data_dir):
        result = invoke(runner, "joint", "--joint", str(data_dir / "joint.csv"))
        payload = json.loads(result.output)
        assert payload["e_sum"] == pytest.approx(17.7, abs=1e-9)
        assert payload["e_g"] == pytest.approx(1.7, abs=1e-9)
        assert payload["e_q"] == pytest.approx(16.0, abs=1e-9)

    def test_gm_check(self, runner):
        result = invoke(runner, "gm-check", "--m", "2", "--n", "3", "--a1", "0", "--a2", "2")
        payload = json.loads(result.output)
        assert payload["holds"] is True
        assert payload["lhs"] == 6

    def test_hm_inline_values(self, runner):
        result = invoke(runner, "hm", "--values", "1,2,4")
        assert json.loads(result.output)["harmonic_mean"] == pytest.approx(12 / 7, rel=1e-12)

    def test_md_about_mean(self, runner):
        result = invoke(runner, "md", "--values", "2,4,9")
        payload = json.loads(result.output)
        assert payload["center"] == 5
        assert payload["mean_deviation"] == pytest.approx(8 / 3, rel=1e-12)

    def test_md_explicit_center(self, runner):
        result = invoke(runner, "md", "--values", "1,3", "--center", "2")
        assert json.loads(result.output)["mean_deviation"] == 1


class TestForecastCommands:
    def test_ar_inline_history(self, runner):
        result = invoke(
            runner, "ar", "--history", "4,8", "--intercept", "1", "--coeffs", "0.5,0.25",
        )
        assert json.loads(result.output)["forecast"] == 6

    def test_ar_from_series(self, runner, data_dir):
        result = invoke(
            runner, "ar", "--series", str(data_dir / "gains.csv"), "--coeffs", "1",
        )
        assert json.loads(result.output)["forecast"] == 16

    def test_ma(self, runner):
        result = invoke(
            runner, "ma", "--shocks", "2,4", "--coeffs", "0.5,-0.25", "--next-shock", "1",
        )
        assert json.loads(result.output)["forecast"] == 2.5

    def test_fit_ar(self, runner, tmp_path):
        gains = [10.0]
        while len(gains) < 10:
            gains.append(2.0 + 0.5 * gains[-1])
        path = tmp_path / "series.csv"
        path.write_text("year,gain\n" + "".join(
            f"y{i},{g!r}\n" for i, g in enumerate(gains, start=1)
        ))
        result = invoke(runner, "fit-ar", "--series", str(path), "--order", "1")
        payload = json.loads(result.output)
        assert payload["intercept"] == pytest.approx(2.0, abs=1e-6)
        assert payload["coefficients"][0] == pytest.approx(0.5, abs=1e-6)
        assert payload["degenerate"] is False


class TestErrorHandling:
    def test_missing_file_names_path(self, runner):
        result = invoke(runner, "support", "--table", "no-such-file.csv")
        assert result.exit_code == 2
        assert "no-such-file.csv" in result.stderr
        assert result.output == ""

    def test_duplicate_year_is_exit_two(self, runner, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("year,gain\ny1,1\ny1,2\n")
        result = invoke(runner, "predict", "--series", str(path))
        assert result.exit_code == 2
        assert "duplicate" in result.stderr
        assert result.output == ""

    def test_malformed_number_is_exit_two(self, runner, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("year,gain\ny1,abc\n")
        result = invoke(runner, "predict", "--series", str(path))
        assert result.exit_code == 2
        assert "line 2" in result.stderr

    def test_unknown_subcommand(self, runner):
        result = invoke(runner, "no-such-command")
        assert result.exit_code == 2

    def test_both_history_sources_rejected(self, runner, data_dir):
        result = invoke(
            runner, "ar", "--series", str(data_dir / "gains.csv"),
            "--history", "1,2", "--coeffs", "1",
        )
        assert result.exit_code == 2
        assert "exactly one" in result.stderr


def test_module_entry_point_runs():
    completed = subprocess.run(
        [sys.executable, "-m", "gainprophet", "states"],
        capture_output=True,
        text=True,
    )
    assert completed.returncode == 0
    assert len(completed.stdout.strip().splitlines()) == 32
