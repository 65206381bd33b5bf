import json

import pytest
from click.testing import CliRunner

from ergopart.cli import main, run
from ergopart.config import ConfigSemanticError, ConfigSyntaxError, parse_config
from ergopart.report import Report
from ergopart.sets import UPSet
from ergopart.state_space import FiniteOverride, NatSpace, Shift, TableMap

CUT = """\
space nat
map shift(1)
chain builtin example2 depth 4
points 0
"""

FINITE = """\
space finite(4)
map table[1, 0, 3, 3]
partition A = [finite{0,1,2,3}]
partition B = [finite{0,1}, finite{2,3}]
partition C = [finite{0}, finite{1}, finite{2,3}]
chain A <= B <= C
points 0, 2
"""


class TestParse:
    def test_cut_chain(self):
        cfg = parse_config(CUT)
        assert cfg.space == NatSpace()
        assert cfg.transformation == Shift(1)
        assert cfg.chain.index.linear_order() == [0, 1, 2, 3, 4]
        assert cfg.points == [0]

    def test_semicolons(self):
        cfg = parse_config("space finite(2); map table[1,0]; partition [finite{0}, finite{1}]; points 1")
        assert cfg.transformation == TableMap((1, 0))

    def test_override_and_sets(self):
        cfg = parse_config("space nat\nmap override{0:5, 3:3; shift(2)}\npartition P = [finite{0} ∪ ap(2,2), ap(1,2)]")
        assert cfg.transformation == FiniteOverride({0: 5, 3: 3}, Shift(2))
        assert cfg.partitions["P"].blocks == (UPSet.residue_class(0, 2), UPSet.residue_class(1, 2))

    def test_comments(self):
        cfg = parse_config("# header\nspace nat  # trailing\nmap identity\n")
        assert cfg.points == []

    def test_filter_family(self):
        cfg = parse_config("space nat\nmap shift(1)\nchain builtin filter_family U=ap(0,2) depth 2")
        assert cfg.chain.index.is_directed()

    def test_syntax_error_position(self):
        with pytest.raises(ConfigSyntaxError) as err:
            parse_config("space nat\nmap shift(1 2)\n")
        assert (err.value.line, err.value.column) == (2, 13)

    def test_unknown_statement(self):
        with pytest.raises(ConfigSyntaxError) as err:
            parse_config("space nat\n  frobnicate 3")
        assert (err.value.line, err.value.column) == (2, 3)

    def test_overlap_is_semantic(self):
        with pytest.raises(ConfigSemanticError) as err:
            parse_config("space nat\npartition [ap(0,1), finite{4}]")
        assert err.value.line == 2

    def test_undefined_partition(self):
        with pytest.raises(ConfigSemanticError):
            parse_config("space nat\npartition A = [all]\nchain A <= B")


class TestRun:
    def test_threads(self):
        r = run("threads", CUT)
        assert r.status == 0
        assert r.results

    def test_finite_verify(self):
        r = run("verify", FINITE)
        assert r.status == 0 and r.checks and all(c["passed"] for c in r.checks)

    def test_point_override(self):
        r = run("delta", FINITE, points=[3])
        assert r.options["points"] == [3]

    def test_point_outside_space(self):
        assert run("delta", FINITE, points=[9]).status == 3

    def test_unknown_command(self):
        assert run("frobnicate", CUT).status == 2

    def test_missing_config(self):
        assert run("threads").status == 2

    def test_examples(self):
        r = run("examples")
        assert r.status == 0 and len(r.checks) > 100


@pytest.mark.parametrize("command", ["validate", "delta", "intersect", "threads", "build-thread", "verify"])
def test_machine_round_trip(command):
    r = run(command, CUT)
    assert Report.from_machine(r.to_machine()) == r
    assert json.loads(r.to_machine())["command"] == command


class TestExitCodes:
    def invoke(self, tmp_path, text, *args):
        path = tmp_path / "c.cfg"
        path.write_text(text, encoding="utf-8")
        return CliRunner().invoke(main, [*args, "--config", str(path)])

    def test_ok(self, tmp_path):
        res = self.invoke(tmp_path, CUT, "threads", "--format", "machine")
        assert res.exit_code == 0
        assert json.loads(res.output)["status"] == 0

    def test_check_failure(self, tmp_path):
        # parity placed below the one-block partition: not monotone
        text = "space nat\nmap shift(1)\npartition A = [ap(0,2), ap(1,2)]\npartition B = [all]\nchain A <= B\npoints 0"
        res = self.invoke(tmp_path, text, "validate", "--format", "machine")
        assert res.exit_code == 1
        failed = [c for c in json.loads(res.output)["checks"] if not c["passed"]]
        assert [c["violation"] for c in failed] == [["A", "B", 0]]

    def test_syntax(self, tmp_path):
        assert self.invoke(tmp_path, "space nat\nmap (", "validate").exit_code == 2

    def test_semantic(self, tmp_path):
        res = self.invoke(tmp_path, "space nat\npartition [ap(0,1), finite{4}]", "validate", "--format", "machine")
        assert res.exit_code == 3
        assert "4" in json.loads(res.output)["error"]["message"]

    def test_missing_file(self, tmp_path):
        res = CliRunner().invoke(main, ["validate", "--config", str(tmp_path / "none.cfg")])
        assert res.exit_code == 2

    def test_examples_command(self):
        res = CliRunner().invoke(main, ["examples", "--format", "machine"])
        assert res.exit_code == 0
        out = json.loads(res.output)
        assert all(c["passed"] for c in out["checks"])

    def test_text_output(self, tmp_path):
        res = self.invoke(tmp_path, CUT, "delta")
        assert res.exit_code == 0 and "delta" in res.output
