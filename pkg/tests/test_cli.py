import json

import pytest
from click.testing import CliRunner

from quiverstab.cli import main
from quiverstab.quiver import quiver_from_json


@pytest.fixture
def runner():
    return CliRunner()


class TestCatalogCommand:
    def test_list(self, runner):
        result = runner.invoke(main, ["catalog"])
        assert result.exit_code == 0
        for name in ("p2", "f1", "p1xp1", "p2-helix", "p1xp1-spiral"):
            assert name in result.output

    def test_list_json(self, runner):
        result = runner.invoke(main, ["catalog", "--format", "json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert any(e["name"] == "f1" for e in data["entries"])

    def test_export_round_trip(self, runner):
        result = runner.invoke(main, ["catalog", "f1"])
        assert result.exit_code == 0
        from quiverstab.catalog import get_entry

        assert quiver_from_json(result.output) == get_entry("f1").quiver

    def test_unknown_name(self, runner):
        result = runner.invoke(main, ["catalog", "nope"])
        assert result.exit_code == 2


class TestCheckCommand:
    def test_p2_taut_stable(self, runner):
        result = runner.invoke(
            main,
            ["check", "--example", "p2", "--chi=-1,0,1", "--taut", "1:2:3"],
        )
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == "stable"

    def test_json_format(self, runner):
        result = runner.invoke(
            main,
            [
                "check",
                "--example",
                "p2",
                "--chi=-1,0,1",
                "--taut",
                "1:2:3",
                "--format",
                "json",
            ],
        )
        data = json.loads(result.output)
        assert data["stable"] is True
        assert data["satisfies_relations"] is True

    def test_unstable_with_witness(self, runner):
        result = runner.invoke(
            main,
            ["check", "--example", "p2", "--chi=1,0,-1", "--taut", "1:2:3"],
        )
        assert result.exit_code == 0
        assert "unstable" in result.output
        assert "violating support" in result.output

    def test_point_file(self, runner, tmp_path):
        point = tmp_path / "p.json"
        point.write_text(
            json.dumps(
                {
                    "values": {
                        "a21_1": "1",
                        "a21_2": "0",
                        "a21_3": "0",
                        "a32_1": "1",
                        "a32_2": "0",
                        "a32_3": "0",
                    }
                }
            )
        )
        result = runner.invoke(
            main,
            ["check", "--example", "p2", "--chi=-1,0,1", "--point", str(point)],
        )
        assert result.exit_code == 0
        assert "stable" in result.output

    def test_strict_violating_point_exits_1(self, runner, tmp_path):
        point = tmp_path / "p.json"
        point.write_text(
            json.dumps(
                {
                    "values": {
                        "a21_1": "1",
                        "a21_2": "0",
                        "a21_3": "0",
                        "a32_1": "0",
                        "a32_2": "1",
                        "a32_3": "0",
                    }
                }
            )
        )
        result = runner.invoke(
            main,
            [
                "check",
                "--example",
                "p2",
                "--chi=-1,0,1",
                "--point",
                str(point),
                "--strict",
            ],
        )
        assert result.exit_code == 1

    def test_bad_character_length(self, runner):
        result = runner.invoke(
            main, ["check", "--example", "p2", "--chi=-1,1", "--taut", "1:2:3"]
        )
        assert result.exit_code == 2

    def test_taut_on_irrelevant_locus_exits_1(self, runner):
        result = runner.invoke(
            main, ["check", "--example", "p2", "--chi=-1,0,1", "--taut", "0:0:0"]
        )
        assert result.exit_code == 1

    def test_missing_point_source(self, runner):
        result = runner.invoke(main, ["check", "--example", "p2", "--chi=-1,0,1"])
        assert result.exit_code == 2

    def test_fiber_for_total_space(self, runner):
        result = runner.invoke(
            main,
            [
                "check",
                "--example",
                "p2-helix",
                "--chi=-2,1,1",
                "--taut",
                "1:2:3",
                "--fiber",
                "1",
            ],
        )
        assert result.exit_code == 0


class TestCertifyCommand:
    def test_f1_great(self, runner):
        result = runner.invoke(
            main, ["certify", "--example", "f1", "--m", "1@1,4", "--m", "1@2,3"]
        )
        assert result.exit_code == 0
        assert "chi = [-1, -1, 1, 1]" in result.output
        assert "great (global-generation + connectivity certificate)" in result.output

    def test_f1_bad_weight(self, runner):
        result = runner.invoke(main, ["certify", "--example", "f1", "--m", "1@1,2"])
        assert result.exit_code == 0
        assert "good: not certified" in result.output

    def test_json(self, runner):
        result = runner.invoke(
            main,
            ["certify", "--example", "p2", "--m", "1@1,3", "--format", "json"],
        )
        data = json.loads(result.output)
        assert data == {
            "chi": [-1, 0, 1],
            "good_certified": True,
            "good_witness": None,
            "great_certified": True,
            "great_unreachable_pair": None,
        }

    def test_m_file(self, runner, tmp_path):
        m = tmp_path / "m.json"
        m.write_text(json.dumps({"m": [[0, 0, 1], [0, 0, 0], [0, 0, 0]]}))
        result = runner.invoke(
            main, ["certify", "--example", "p2", "--m-file", str(m)]
        )
        assert result.exit_code == 0
        assert "great" in result.output

    def test_malformed_entry(self, runner):
        result = runner.invoke(main, ["certify", "--example", "p2", "--m", "oops"])
        assert result.exit_code == 2

    def test_gg_free_quiver_rejected(self, runner):
        result = runner.invoke(
            main, ["certify", "--example", "p2-helix", "--m", "1@1,3"]
        )
        assert result.exit_code == 2


class TestCharacterCommand:
    def test_plain(self, runner):
        result = runner.invoke(main, ["character", "--m", "1@1,4", "--m", "1@2,3"])
        assert result.exit_code == 0
        assert "chi = [-1, -1, 1, 1]" in result.output

    def test_spiral_shift(self, runner):
        result = runner.invoke(
            main, ["character", "--m", "1@1,2", "--n", "3", "--spiral"]
        )
        assert "chi = [-2, 1, 1]" in result.output

    def test_spiral_zero_matrix(self, runner):
        result = runner.invoke(main, ["character", "--n", "3", "--spiral"])
        assert "chi = [-1, 0, 1]" in result.output

    def test_needs_size(self, runner):
        result = runner.invoke(main, ["character"])
        assert result.exit_code == 2


class TestSupportsAndCone:
    def test_supports_p2(self, runner):
        result = runner.invoke(
            main, ["supports", "--example", "p2", "--taut", "1:2:3", "--format", "json"]
        )
        data = json.loads(result.output)
        assert data["count"] == 4
        assert [1, 2, 3] in data["supports"]

    def test_cone_p2(self, runner):
        result = runner.invoke(main, ["cone", "--example", "p2", "--taut", "1:2:3"])
        assert result.exit_code == 0
        assert "[1, 0, 0] . chi <= 0" in result.output
        assert "[1, 1, 1] . chi = 0" in result.output


class TestCyclesAndSeparate:
    def test_cycles_on_chain_empty(self, runner):
        result = runner.invoke(main, ["cycles", "--example", "p2", "--format", "json"])
        assert json.loads(result.output)["count"] == 0

    def test_cycles_on_helix(self, runner):
        result = runner.invoke(
            main,
            ["cycles", "--example", "p2-helix", "--max-len", "3", "--format", "json"],
        )
        assert json.loads(result.output)["count"] == 27

    def test_separate_reproducible(self, runner):
        args = [
            "separate",
            "--example",
            "p2-helix",
            "--pairs",
            "10",
            "--max-len",
            "3",
            "--seed",
            "5",
            "--format",
            "json",
        ]
        a = runner.invoke(main, args)
        b = runner.invoke(main, args)
        assert a.exit_code == 0
        assert a.output == b.output
        assert json.loads(a.output)["separated"] == 10

    def test_separate_needs_fiber(self, runner):
        result = runner.invoke(main, ["separate", "--example", "p2"])
        assert result.exit_code == 2


class TestExtendCommand:
    def test_extend_p2(self, runner):
        result = runner.invoke(
            main,
            ["extend", "--example", "p2", "--added-dim", "3", "--labels", "x0,x1,x2"],
        )
        assert result.exit_code == 0
        from quiverstab.catalog import get_entry

        assert quiver_from_json(result.output) == get_entry("p2-helix").quiver

    def test_extend_non_chain_exits_1(self, runner):
        result = runner.invoke(main, ["extend", "--example", "f1", "--added-dim", "1"])
        assert result.exit_code == 1


class TestQuiverFiles:
    def test_quiver_file_round_trip(self, runner, tmp_path):
        export = runner.invoke(main, ["catalog", "p1xp1"])
        path = tmp_path / "q.json"
        path.write_text(export.output)
        result = runner.invoke(
            main, ["cycles", "--quiver", str(path), "--format", "json"]
        )
        assert result.exit_code == 0

    def test_malformed_quiver_file(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        result = runner.invoke(main, ["cycles", "--quiver", str(path)])
        assert result.exit_code == 2

    def test_catalog_env_fallback(self, runner, tmp_path, monkeypatch):
        export = runner.invoke(main, ["catalog", "p2"])
        (tmp_path / "mychain.json").write_text(export.output)
        monkeypatch.setenv("QUIVERSTAB_CATALOG", str(tmp_path))
        result = runner.invoke(
            main, ["cycles", "--example", "mychain", "--format", "json"]
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["count"] == 0
