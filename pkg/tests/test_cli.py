"""Configuration parsing, run commands, emission formats, exit codes."""

import json

import pytest

from chebquark import cli


class TestParseConfig:
    def test_minimal_linear_run(self):
        cfg = cli.parse_config("potential = linear\ns = 1\nell = 0\n")
        assert cfg.command == "solve"
        assert cfg.sigma == 1.0
        assert cfg.N == (100,)
        assert cfg.mapping == "rational"
        assert cfg.format == "pretty"

    def test_sections_are_merged(self):
        text = "[run]\ncommand = scan\nN = 50 100\n[potential]\npotential = linear\nell = 0 1\n"
        cfg = cli.parse_config(text)
        assert cfg.command == "scan"
        assert cfg.N == (50, 100)
        assert cfg.ell == (0, 1)

    def test_charm_physical_conversion(self):
        cfg = cli.parse_config(
            "potential = cornell\nalpha = 0.50667\nbeta = 0.1694\nmass = 1.37\n")
        # s = sqrt(beta)/m for equal-mass quarkonium, a = 1/sqrt(beta)
        assert abs(cfg.s - 0.1694**0.5 / 1.37) < 1e-15
        assert cfg.physical

    def test_unknown_keys_listed(self):
        with pytest.raises(cli.ConfigError, match="bogus"):
            cli.parse_config("bogus = 3\npotential = linear\n")

    def test_invalid_order(self):
        with pytest.raises(cli.ConfigError, match="'N'"):
            cli.parse_config("potential = linear\nN = 1\n")

    def test_invalid_value_names_field(self):
        with pytest.raises(cli.ConfigError, match="'sigma'"):
            cli.parse_config("potential = linear\nsigma = wide\n")

    def test_physical_requires_positive_beta(self):
        with pytest.raises(cli.ConfigError, match="beta"):
            cli.parse_config("potential = cornell\nalpha = 0.5\nbeta = -1\nmass = 1.37\n")

    def test_reproduce_requires_table(self):
        with pytest.raises(cli.ConfigError, match="table"):
            cli.parse_config("command = reproduce\n")


class TestReports:
    def setup_method(self):
        cfg = cli.parse_config(
            "command = solve\npotential = linear\ns = 1\nell = 1\nlevels = 2\nN = 60\n")
        self.report = cli.run(cfg)

    def test_solve_rows(self):
        assert self.report.status == cli.EXIT_OK
        assert [r["n"] for r in self.report.rows] == [0, 1]
        assert abs(self.report.rows[0]["epsilon"] - 3.361254) < 1e-4

    def test_csv_schema(self):
        text = cli.emit_csv(self.report)
        header = text.splitlines()[0]
        assert header == "ell,n,N,sigma,epsilon,mass_gev,residual,imag"
        # dimensionless run leaves the mass column empty
        assert text.splitlines()[1].split(",")[5] == ""

    def test_json_round_trip_bit_exact(self):
        text = cli.report_to_json(self.report)
        back = cli.report_from_json(text)
        for a, b in zip(self.report.rows, back.rows):
            assert a["epsilon"] == b["epsilon"]
            assert a["residual"] == b["residual"]
        assert cli.report_to_json(back) == text

    def test_pretty_contains_status(self):
        assert "status: 0" in cli.emit_pretty(self.report)


class TestCommands:
    def test_compare_small(self):
        cfg = cli.parse_config(
            "command = compare\npotential = linear\ns = 1\nell = 2\nlevels = 1\nN = 80\n")
        report = cli.run(cfg)
        assert report.status == cli.EXIT_OK
        pair = report.extra["compare"][0]
        assert abs(pair["delta"]) < 1e-5
        assert abs(pair["momentum"] - 4.248182) < 1e-4

    def test_scan_diffs_recorded(self):
        cfg = cli.parse_config(
            "command = scan\npotential = linear\ns = 1\nell = 0\nlevels = 1\nN = 40 80\n")
        report = cli.run(cfg)
        assert report.status == cli.EXIT_OK
        assert "0" in report.extra["successive_differences"]

    def test_deterministic_rerun(self):
        cfg = cli.parse_config(
            "command = solve\npotential = linear\ns = 1\nell = 0\nlevels = 2\nN = 60\n")
        a = cli.run(cfg)
        b = cli.run(cfg)
        assert cli.report_to_json(a) == cli.report_to_json(b)


class TestMain:
    def test_config_error_exit_code(self, tmp_path, capsys):
        path = tmp_path / "bad.cfg"
        path.write_text("nonsense = 1\n")
        assert cli.main(["--config", str(path)]) == cli.EXIT_CONFIG
        assert "configuration error" in capsys.readouterr().err

    def test_missing_file_exit_code(self, capsys):
        assert cli.main(["--config", "/no/such/file.cfg"]) == cli.EXIT_CONFIG
        capsys.readouterr()

    def test_solve_to_file(self, tmp_path, capsys):
        cfgfile = tmp_path / "run.cfg"
        cfgfile.write_text("potential = linear\ns = 1\nell = 0\nlevels = 1\nN = 60\n")
        out = tmp_path / "rows.csv"
        code = cli.main(["--config", str(cfgfile), "--format", "csv",
                         "--out", str(out)])
        capsys.readouterr()
        assert code == cli.EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0].startswith("ell,n,N")
        assert len(lines) == 2

    def test_flag_overrides(self, tmp_path, capsys):
        cfgfile = tmp_path / "run.cfg"
        cfgfile.write_text("potential = linear\ns = 1\nell = 0\nlevels = 3\nN = 60\n")
        code = cli.main(["--config", str(cfgfile), "--levels", "1",
                         "--format", "json"])
        captured = capsys.readouterr()
        assert code == cli.EXIT_OK
        data = json.loads(captured.out)
        assert len(data["rows"]) == 1
