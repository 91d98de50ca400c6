"""CLI subcommands, config validation, CSV/JSON output, exit codes."""

import csv
import io
import json
import math

import pytest

from finsler.cli import build_parser, cmd_classify, cmd_report, cmd_table, main
from finsler.cli import RunConfig
from finsler.errors import ConfigError, UnknownQuantity


def _cfg(name, per_axis=3, directions=8, **params):
    return RunConfig({"schema": 1,
                      "metric": {"name": name, "params": params},
                      "grid": {"per_axis": per_axis},
                      "directions": directions})


class TestConfig:
    def test_schema_required(self):
        with pytest.raises(ConfigError):
            RunConfig({"metric": {"name": "euclid"}})

    def test_unknown_field_rejected(self):
        with pytest.raises(ConfigError):
            RunConfig({"schema": 1, "metric": {"name": "euclid"},
                       "tolerence": {}})

    def test_unknown_metric_is_config_error(self):
        with pytest.raises(ConfigError):
            RunConfig({"schema": 1, "metric": {"name": "nope"}})

    def test_direction_minimum(self):
        with pytest.raises(ConfigError):
            RunConfig({"schema": 1, "metric": {"name": "euclid"},
                       "directions": 2})

    def test_custom_inline_metric(self):
        cfg = RunConfig({"schema": 1, "metric": {"custom": {
            "n": 2,
            "a": [["1", "0"], ["0", "1 + x1^2"]],
            "b": ["0.3", "0"],
            "phi": {"variant": "randers"},
            "lo": [-1, -1], "hi": [1, 1]}}})
        a = cfg.metric.a_at([0.5, 0.0])
        assert a[1, 1] == pytest.approx(1.25)
        assert cfg.phi.variant == "randers"

    def test_custom_bad_expression(self):
        with pytest.raises(ConfigError):
            RunConfig({"schema": 1, "metric": {"custom": {
                "n": 2, "a": [["1", "0"], ["0", "1 +"]], "b": ["0", "0"],
                "lo": [-1, -1], "hi": [1, 1]}}})


class TestTable:
    def test_s_table_on_lie_group(self):
        out = cmd_table(_cfg("lie_group"), "s")
        rows = list(csv.reader(io.StringIO(out)))
        header = rows[0]
        assert header[:2] == ["x1", "x2"]
        assert "s_12" in header
        j = header.index("s_12")
        for row in rows[1:]:
            y = float(row[1])
            assert float(row[j]) == pytest.approx(-1.0 / (2 * y * y), rel=1e-8)

    def test_bnorm_table_on_fish_tank(self):
        out = cmd_table(_cfg("fish_tank"), "bnorm")
        rows = list(csv.reader(io.StringIO(out)))
        j = rows[0].index("bnorm")
        for row in rows[1:]:
            x, y = float(row[0]), float(row[1])
            assert float(row[j]) == pytest.approx(math.hypot(x, y), abs=1e-10)

    def test_sigma_table_on_euclid(self):
        out = cmd_table(_cfg("euclid", per_axis=2), "sigma")
        rows = list(csv.reader(io.StringIO(out)))
        j = rows[0].index("sigma")
        for row in rows[1:]:
            assert float(row[j]) == pytest.approx(1.0, abs=1e-9)

    def test_directional_quantity_has_y_columns(self):
        out = cmd_table(_cfg("euclid_randers", per_axis=2, directions=4,
                             eps=0.5), "G")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0][:4] == ["x1", "x2", "y1", "y2"]
        assert rows[0][4:] == ["G^1", "G^2"]
        # 4 grid points x 4 directions
        assert len(rows) - 1 == 4 * 4

    def test_unknown_quantity(self):
        with pytest.raises(UnknownQuantity):
            cmd_table(_cfg("euclid"), "bogus")

    def test_crlf_line_endings(self):
        out = cmd_table(_cfg("euclid", per_axis=2), "bnorm")
        assert "\r\n" in out


class TestReport:
    def test_lie_group_report(self):
        doc = json.loads(cmd_report(_cfg("lie_group", per_axis=2,
                                         directions=4)))
        assert doc["metric"] == "lie_group"
        assert doc["classification"]["predicates"]["gb"]["verdict"] is True
        assert doc["classification"]["predicates"]["s_zero"]["verdict"] is False
        rec = doc["records"][0]
        for key in ("F", "g", "C_norm", "G", "B_norm", "L_norm", "D_norm",
                    "S_def", "S_formula", "K"):
            assert key in rec

    def test_fish_tank_report(self):
        doc = json.loads(cmd_report(_cfg("fish_tank", per_axis=2,
                                         directions=4)))
        cls = doc["classification"]
        assert cls["predicates"]["gb"]["verdict"] is False
        assert cls["predicates"]["s_zero"]["verdict"] is True
        assert all(abs(r.get("K", 0.0)) < 1e-5 for r in doc["records"])

    def test_deterministic(self):
        cfg = _cfg("euclid_randers", per_axis=2, directions=4, eps=0.5)
        assert cmd_report(cfg) == cmd_report(
            _cfg("euclid_randers", per_axis=2, directions=4, eps=0.5))


class TestMain:
    def test_classify_to_file(self, tmp_path, capsys):
        out = tmp_path / "c.json"
        rc = main(["classify", "--metric", "euclid_randers",
                   "--param", "eps=0.5", "--per-axis", "2",
                   "--directions", "4", "--out", str(out)])
        assert rc == 0
        doc = json.loads(out.read_text())
        assert doc["verdict"] == "LocallyMinkowskiLike"

    def test_bad_quantity_exit_2(self):
        assert main(["table", "--metric", "euclid", "--quantity", "zzz"]) == 2

    def test_missing_metric_exit_2(self):
        assert main(["report"]) == 2

    def test_parser_subcommands(self):
        p = build_parser()
        for cmd in ("report", "table", "classify", "check"):
            assert cmd in p.format_help()
