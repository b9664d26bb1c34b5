"""Command-line interface: targets, reports, config files, exit codes."""

import json

import pytest

from csgroups.cli import (
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_USAGE,
    main,
    read_config_file,
    resolve_target,
)
from csgroups.construct import dump_fixture, symmetric


class TestTargets:
    def test_builtin_target(self):
        name, source, G = resolve_target("builtin:sym(3)", 5000)
        assert (name, source, G.order) == ("sym(3)", "builtin", 6)

    def test_fixture_target(self):
        name, source, G = resolve_target("fixture:g480_166", 5000)
        assert source == "fixture"
        assert G.order == 480

    def test_path_target(self, tmp_path):
        path = tmp_path / "s4.txt"
        dump_fixture(symmetric(4), path)
        _, source, G = resolve_target(str(path), 5000)
        assert (source, G.order) == ("fixture", 24)

    def test_element_cap_enforced(self):
        with pytest.raises(Exception):
            resolve_target("builtin:sym(5)", 100)


class TestAnalyze:
    def test_analyze_prints_class_sizes(self, capsys):
        assert main(["analyze", "builtin:sym(3)"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "class sizes: [1, 2, 3]" in out

    def test_analyze_report_file(self, tmp_path, capsys):
        report = tmp_path / "out.json"
        assert main(["analyze", "fixture:g480_166",
                     "--report", str(report)]) == EXIT_OK
        capsys.readouterr()
        data = json.loads(report.read_text())
        entry = data["entries"][0]
        assert entry["cs"] == [1, 2, 4, 60]
        assert entry["theorems"]["C"]["status"] == "pass"
        assert entry["timings_ms"] is None

    def test_unknown_target_is_usage_error(self, capsys):
        assert main(["analyze", "builtin:nope(3)"]) == EXIT_USAGE
        assert "error" in capsys.readouterr().err


class TestVerify:
    def test_verify_pass(self, capsys):
        assert main(["verify", "A", "builtin:q8xF21"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["verdict"]["status"] == "pass"
        assert data["verdict"]["witnesses"]["m"] == 6

    def test_verify_not_applicable_is_ok(self, capsys):
        assert main(["verify", "C", "builtin:cyclic(12)"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["verdict"]["status"] == "not-applicable"

    def test_verify_inconclusive_exit_code(self, capsys):
        code = main(["verify", "A", "builtin:q8xF21",
                     "--max-normal-subgroups", "1"])
        capsys.readouterr()
        assert code == EXIT_INCONCLUSIVE

    def test_verify_requires_target_for_theorems(self, capsys):
        assert main(["verify", "A"]) == EXIT_USAGE
        capsys.readouterr()

    def test_verify_psl(self, capsys):
        assert main(["verify", "psl", "2"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["verdict"]["2"]["status"] == "pass"

    def test_verify_lemmas_single_group(self, capsys):
        assert main(["verify", "lemmas", "builtin:sym(3)"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["verdict"]["failures"] == []
        assert data["verdict"]["instances"]["2.6"] >= 1


class TestSweep:
    def test_small_sweep_csv(self, tmp_path, capsys):
        report = tmp_path / "out.csv"
        assert main(["sweep", "--max-elements", "30", "--format", "csv",
                     "--report", str(report)]) == EXIT_OK
        capsys.readouterr()
        lines = report.read_text().strip().splitlines()
        assert lines[0].startswith("name,source,order,cs")
        assert len(lines) > 5

    def test_sweep_entries_sorted(self, tmp_path, capsys):
        report = tmp_path / "out.json"
        assert main(["sweep", "--max-elements", "30",
                     "--report", str(report)]) == EXIT_OK
        capsys.readouterr()
        data = json.loads(report.read_text())
        keys = [(e.get("order", 0), e["name"]) for e in data["entries"]]
        assert keys == sorted(keys)
        assert data["findings"] == []

    def test_oversized_entries_are_errored_not_fatal(self, tmp_path, capsys):
        report = tmp_path / "out.json"
        assert main(["sweep", "--max-elements", "30",
                     "--report", str(report)]) == EXIT_OK
        capsys.readouterr()
        data = json.loads(report.read_text())
        errored = [e for e in data["entries"] if "error" in e]
        assert errored  # the larger fixtures cannot load under the cap


class TestConfig:
    def test_config_file_round_trip(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# sweep settings\nmax_elements = 30\njobs = 1\n")
        report = tmp_path / "out.json"
        assert main(["sweep", "--config", str(cfg),
                     "--report", str(report)]) == EXIT_OK
        capsys.readouterr()
        data = json.loads(report.read_text())
        assert data["config"]["max_elements"] == 30

    def test_flags_override_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("max_elements = 30\n")
        report = tmp_path / "out.json"
        assert main(["sweep", "--config", str(cfg), "--max-elements", "25",
                     "--report", str(report)]) == EXIT_OK
        capsys.readouterr()
        data = json.loads(report.read_text())
        assert data["config"]["max_elements"] == 25
        assert all(e.get("order", 0) <= 25 for e in data["entries"]
                   if "error" not in e)

    def test_unknown_config_key_rejected(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("wibble = 3\n")
        with pytest.raises(Exception):
            read_config_file(str(cfg))
