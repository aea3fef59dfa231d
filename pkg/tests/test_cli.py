import json

import pytest
from click.testing import CliRunner

from psq.cli import main


@pytest.fixture
def runner():
    return CliRunner()


class TestEvalQ:
    def test_scalar_pair(self, runner):
        out = runner.invoke(main, ["eval-q", "-x", "1", "-y", "2"])
        assert out.exit_code == 0
        doc = json.loads(out.output)
        assert doc["value"] == pytest.approx(-1 / 3, abs=1e-15)
        assert doc["exact"] == "-1/3"
        assert (doc["s1"], doc["s2"], doc["s3"]) == (-1.0, 3.0, 9.0)

    def test_comma_and_fraction_entries(self, runner):
        out = runner.invoke(main, ["eval-q", "-x", "3/2,1/2", "-y", "1"])
        assert out.exit_code == 0
        assert json.loads(out.output)["exact"] is not None

    def test_float_entries_have_no_exact(self, runner):
        out = runner.invoke(main, ["eval-q", "-x", "1.5", "-y", "1"])
        assert json.loads(out.output)["exact"] is None

    def test_validation_exit_code(self, runner):
        assert runner.invoke(main, ["eval-q", "-x", "0", "-y", "1"]).exit_code == 2
        assert runner.invoke(main, ["eval-q", "-x", "a", "-y", "1"]).exit_code == 2
        assert runner.invoke(main, ["eval-q", "-x", "1/0", "-y", "1"]).exit_code == 2

    def test_json_file(self, runner, tmp_path):
        path = tmp_path / "q.json"
        out = runner.invoke(main, ["eval-q", "-x", "1", "-y", "2", "--json", str(path)])
        assert out.exit_code == 0
        assert json.loads(path.read_text())["value"] == pytest.approx(-1 / 3)


class TestSupQ:
    def test_values_and_bracket(self, runner):
        out = runner.invoke(main, ["sup-q", "--nx", "3", "--ny", "2"])
        doc = json.loads(out.output)
        assert doc["sup"] == pytest.approx(0.10790884700463473, abs=1e-12)
        assert doc["bracket"] == [0.1079, 0.1080]
        assert doc["attained"] is False
        assert doc["config"]["i"] == 1 and doc["config"]["m"] == 3

    def test_bad_dims(self, runner):
        assert runner.invoke(main, ["sup-q", "--nx", "0", "--ny", "2"]).exit_code == 2


class TestBd:
    def test_report(self, runner):
        out = runner.invoke(main, ["bd", "--d", "4"])
        doc = json.loads(out.output)
        assert doc["b_d"] == pytest.approx(0.9623649861142065, abs=1e-12)
        assert doc["exact"] == pytest.approx(doc["b_d"], abs=1e-9)

    def test_bad_d(self, runner):
        assert runner.invoke(main, ["bd", "--d", "1"]).exit_code == 2


class TestTables:
    def test_table1_text(self, runner):
        out = runner.invoke(main, ["table1"])
        assert out.exit_code == 0
        lines = out.output.strip().splitlines()
        assert len(lines) == 6
        assert lines[1].split() == ["2", "0.946", "1.000"]
        assert lines[-1].split() == ["6", "0.855", "0.902"]

    def test_table2_text_and_json(self, runner, tmp_path):
        path = tmp_path / "t2.json"
        out = runner.invoke(main, ["table2", "--dims", "50,100", "--json", str(path)])
        assert out.exit_code == 0
        rows = json.loads(path.read_text())
        assert rows[0] == {
            "d": 50,
            "lower_bound": 0.415,
            "witness_upper": 0.510,
            "asymptotic": 0.710,
        }

    def test_threads_flag(self, runner):
        out = runner.invoke(main, ["--threads", "3", "table2", "--dims", "50,100,150"])
        assert out.exit_code == 0
        assert len(out.output.strip().splitlines()) == 4

    def test_threads_env(self, runner, monkeypatch):
        monkeypatch.setenv("PSQ_THREADS", "2")
        assert runner.invoke(main, ["table2", "--dims", "50,100"]).exit_code == 0
        monkeypatch.setenv("PSQ_THREADS", "zebra")
        assert runner.invoke(main, ["table2", "--dims", "50"]).exit_code == 2

    def test_bad_dims(self, runner):
        assert runner.invoke(main, ["table2", "--dims", "9"]).exit_code == 2
        assert runner.invoke(main, ["table2", "--dims", "x"]).exit_code == 2


class TestCertify:
    def test_member(self, runner):
        out = runner.invoke(main, ["certify", "--d", "4", "--b", "0.5"])
        assert out.exit_code == 0
        assert json.loads(out.output)["verdict"] == "member_certified"

    def test_nonmember_with_witness(self, runner):
        out = runner.invoke(main, ["certify", "--d", "4", "--b", "0.99"])
        assert out.exit_code == 1
        doc = json.loads(out.output)
        assert doc["witness"]["psi"] < 0

    def test_inconclusive_at_threshold(self, runner):
        bd = json.loads(runner.invoke(main, ["bd", "--d", "5"]).output)["b_d"]
        out = runner.invoke(main, ["certify", "--d", "5", "--b", repr(bd)])
        assert out.exit_code == 3

    def test_matrix_file_equal_offdiag(self, runner, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"d": 3, "b": 0.2}))
        assert runner.invoke(main, ["certify", "--matrix", str(path)]).exit_code == 0

    def test_matrix_file_general(self, runner, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"entries": [[3.0, 0.1], [0.1, 3.0]]}))
        out = runner.invoke(main, ["certify", "--matrix", str(path)])
        assert out.exit_code == 0
        assert json.loads(out.output)["method"] == "diagonal_dominance"

    def test_usage_errors(self, runner, tmp_path):
        assert runner.invoke(main, ["certify"]).exit_code == 2
        assert runner.invoke(main, ["certify", "--d", "4"]).exit_code == 2
        path = tmp_path / "m.json"
        path.write_text("{not json")
        assert (
            runner.invoke(main, ["certify", "--matrix", str(path)]).exit_code == 2
        )
        assert (
            runner.invoke(
                main, ["certify", "--d", "4", "--b", "0.5", "--matrix", str(path)]
            ).exit_code
            == 2
        )


class TestVerify:
    def test_round_trip(self, runner, tmp_path):
        mpath = tmp_path / "m.json"
        wpath = tmp_path / "w.json"
        rpath = tmp_path / "r.json"
        mpath.write_text(json.dumps({"d": 4, "b": 0.99}))
        out = runner.invoke(
            main, ["certify", "--matrix", str(mpath), "--json", str(rpath)]
        )
        assert out.exit_code == 1
        wpath.write_text(json.dumps(json.loads(rpath.read_text())["witness"]))
        out = runner.invoke(
            main, ["verify", "--matrix", str(mpath), "--witness", str(wpath)]
        )
        assert out.exit_code == 0
        assert json.loads(out.output)["confirmed"] is True

    def test_not_confirmed_against_member(self, runner, tmp_path):
        mpath = tmp_path / "m.json"
        wpath = tmp_path / "w.json"
        mpath.write_text(json.dumps({"d": 2, "b": 0.3}))
        wpath.write_text(json.dumps({"z": [1.0, 1.0], "s": [-1, 1]}))
        out = runner.invoke(
            main, ["verify", "--matrix", str(mpath), "--witness", str(wpath)]
        )
        assert out.exit_code == 1
        assert json.loads(out.output)["psi"] == pytest.approx(2 - 0.6)

    def test_malformed_witness(self, runner, tmp_path):
        mpath = tmp_path / "m.json"
        wpath = tmp_path / "w.json"
        mpath.write_text(json.dumps({"d": 2, "b": 0.3}))
        wpath.write_text(json.dumps({"z": [1.0, 1.0]}))
        out = runner.invoke(
            main, ["verify", "--matrix", str(mpath), "--witness", str(wpath)]
        )
        assert out.exit_code == 2


class TestWitness:
    def test_pair_exists(self, runner):
        out = runner.invoke(main, ["witness", "--nx", "5", "--ny", "5"])
        assert out.exit_code == 0
        doc = json.loads(out.output)
        assert doc["exists"] and doc["q"] > 0
        assert len(doc["x"]) == 5 and len(doc["y"]) == 5

    def test_degenerate_pair(self, runner):
        out = runner.invoke(main, ["witness", "--nx", "1", "--ny", "1"])
        assert out.exit_code == 1
        assert json.loads(out.output)["exists"] is False

    def test_growth_pair_signs(self, runner):
        neg = json.loads(runner.invoke(main, ["witness", "--growth-n", "9"]).output)
        pos = json.loads(runner.invoke(main, ["witness", "--growth-n", "10"]).output)
        assert neg["q"] < 0 < pos["q"]

    def test_growth_extra_component(self, runner):
        out = runner.invoke(main, ["witness", "--growth-n", "8", "--extra"])
        doc = json.loads(out.output)
        assert len(doc["x"]) == 9 and len(doc["y"]) == 8

    def test_usage_errors(self, runner):
        assert runner.invoke(main, ["witness"]).exit_code == 2
        assert runner.invoke(main, ["witness", "--nx", "3"]).exit_code == 2
        assert (
            runner.invoke(
                main, ["witness", "--nx", "3", "--ny", "3", "--growth-n", "5"]
            ).exit_code
            == 2
        )
        assert runner.invoke(main, ["witness", "--nx", "5", "--ny", "3"]).exit_code == 2
