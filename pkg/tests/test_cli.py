import json
import subprocess
import sys

import pytest

from stt.cli import main, repl_line
from stt.session import Session

A, B, I = "[0..4]", "[5..9]", "[0..9]"
AMBIGUOUS = f"""
multi pick {{
  (x: {A}, y: {I}) : [0..1] {{ 0 }} ;
  (x: {I}, y: {B}) : [0..1] {{ 1 }}
}}
"""
RESOLVED = AMBIGUOUS.replace("{ 1 }\n}", f"{{ 1 }} ;\n  (x: {A}, y: {B}) : [0..1] {{ 1 }}\n}}")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSubtype:
    def test_true(self, capsys):
        code, out, _ = run(capsys, "subtype", "([0..0]->[1..1])&([1..1]->[0..0])", "[0..1]->[0..1]")
        assert code == 0
        assert out.splitlines() == ["[DEBUG:subtype]",
                                    "([0..0] -> [1..1]) & ([1..1] -> [0..0]) <= [0..1] -> [0..1]",
                                    ": true"]

    def test_false_with_witness(self, capsys):
        code, out, _ = run(capsys, "subtype", "[0..9]", "[0..4]", "--witness")
        assert code == 1
        assert out.splitlines()[-2:] == [": false", "witness: 5"]

    def test_empty_recursive(self, capsys):
        code, out, _ = run(capsys, "subtype", "rec X = (Int,X)", "Empty")
        assert code == 0 and out.splitlines()[-1] == ": true"

    def test_syntax_error(self, capsys):
        code, out, err = run(capsys, "subtype", "Int ->", "Int")
        assert code == 2 and out == ""
        assert err.startswith("1:7: error[syntax]")

    def test_contractivity_error(self, capsys):
        code, _, err = run(capsys, "subtype", "rec X = X | X", "Int")
        assert code == 2 and "contractivity" in err

    def test_json_golden(self, capsys):
        code, out, _ = run(capsys, "subtype", "[0..9]", "[0..4]", "--witness", "--json")
        assert code == 1
        assert json.loads(out) == {"command": "subtype", "exit_code": 1, "left": "[0..9]",
                                   "right": "[0..4]", "verdict": False, "witness": "5"}

    @pytest.mark.parametrize("flag", ["--no-memo", "--no-strict-subset-opt", "--early-cutoff"])
    def test_engine_flags(self, capsys, flag):
        code, out, _ = run(capsys, "subtype", "(Int -> Int) & (`a -> `a)", "Int | `a -> Int | `a", flag)
        assert code == 0 and out.endswith(": true\n")


class TestCheck:
    def test_accepted_multi(self, capsys, tmp_path):
        f = tmp_path / "ok.stt"
        f.write_text(RESOLVED)
        code, out, err = run(capsys, "check", str(f))
        assert code == 0 and err == ""
        assert out.strip() == ("pick : (([0..4], [0..9]) -> [0..1]) & (([0..9], [5..9]) -> [0..1])"
                               " & (([0..4], [5..9]) -> [0..1])")

    def test_ambiguous_multi(self, capsys, tmp_path):
        f = tmp_path / "bad.stt"
        f.write_text(AMBIGUOUS)
        code, out, err = run(capsys, "check", str(f))
        assert code == 1 and out == ""
        first, *rest = err.splitlines()
        assert first == (f"{f}:2:1: error[ambiguity]: branches 1 and 2 overlap without a "
                         "unique most specific branch")
        assert rest == ["  witness: (0, 5)"]

    def test_type_error_report(self, capsys, tmp_path):
        f = tmp_path / "t.stt"
        f.write_text("let f = fun (x: [0..3]) { x }\nlet y = f(`a)\nlet z = 1\n")
        code, out, err = run(capsys, "check", str(f))
        assert code == 1
        assert out.splitlines() == ["f : [0..3] -> [0..3]", "z : [1..1]"]
        assert err.splitlines() == [
            f"{f}:2:10: error[argument]: argument of type `a is outside the domain [0..3]",
            "  expected: [0..3]", "  found: `a", "  witness: `a"]

    def test_empty_file(self, capsys, tmp_path):
        f = tmp_path / "empty.stt"
        f.write_text("")
        assert run(capsys, "check", str(f)) == (0, "", "")

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "check", str(tmp_path / "nope.stt"))
        assert code == 2 and "error[io]" in err

    def test_json(self, capsys, tmp_path):
        f = tmp_path / "t.stt"
        f.write_text("let p = (1, `a)\n")
        code, out, _ = run(capsys, "check", str(f), "--json", "--eval")
        assert code == 0
        assert json.loads(out) == {
            "command": "check", "exit_code": 0, "file": str(f), "verdict": True, "errors": [],
            "bindings": [{"name": "p", "type": "([1..1], `a)", "value": "(1, `a)"}]}


class TestOtherCommands:
    def test_type(self, capsys):
        assert run(capsys, "type", "(1, `a)[1]") == (0, "`a : `a\n", "")

    def test_type_error(self, capsys):
        code, out, err = run(capsys, "type", "(1, `a)<a>")
        assert code == 1 and "not-a-record" in err

    def test_empty(self, capsys):
        assert run(capsys, "empty", "rec X = (Int,X)") == (0, "true\n", "")
        assert run(capsys, "empty", "Int")[0] == 1

    def test_sample(self, capsys):
        assert run(capsys, "sample", "[3..5] & not [4..*]") == (0, "3\n", "")
        code, out, _ = run(capsys, "sample", "Empty", "--json")
        assert code == 1
        assert json.loads(out) == {"command": "sample", "exit_code": 1, "type": "Empty",
                                   "verdict": False, "witness": None}

    def test_sweep(self, capsys):
        code, out, _ = run(capsys, "sweep", "{a : Int, ..}", "{a : Int}", "--universe",
                           "tags=3,ints=-3..3,depth=2,labels=2", "--json")
        doc = json.loads(out)
        assert code == 0 and doc["subtype"] is False
        assert doc["witness"] == "{#fresh0=`#fresh0, a=0}"
        assert doc["universe"]["size"] == 12231

    def test_load(self, capsys, tmp_path):
        f = tmp_path / "decl.stt"
        f.write_text("type L = `nil | (Int, L)\n")
        code, out, _ = run(capsys, "subtype", "(Int, L)", "L", "--load", str(f))
        assert code == 0 and out.splitlines()[1] == "(Int, L) <= L"

    def test_bad_flag(self, capsys):
        assert main(["subtype", "--frobnicate"]) == 2

    def test_module_entry_point(self):
        r = subprocess.run([sys.executable, "-m", "stt", "empty", "Empty"],
                           capture_output=True, text=True)
        assert r.returncode == 0 and r.stdout == "true\n"


class TestRepl:
    def lines(self, *inputs):
        s, out = Session(), []
        for line in inputs:
            if not repl_line(s, line, out.append):
                out.append("<quit>")
                break
        return out

    def test_examples(self):
        assert self.lines(":empty rec X = (Int,X)") == ["true"]
        assert self.lines("(1, `a)[1]") == ["`a : `a"]
        assert self.lines(":sample ([3..5] & not [4..*])") == ["3"]

    def test_state_persists(self):
        out = self.lines("type L = `nil | (Int, L)", "let x : L = (1, `nil)",
                         ":subtype (Int, L) <= L", "let y = (1, x)", "y[1]", "x[0]", ":quit", "1")
        assert out[:4] == ["x : L", "true", "y : ([1..1], L)", "(1, `nil) : L"]
        assert out[4].startswith("1:2: error[not-a-pair]: expected a pair, found L")
        assert out[5] == "<quit>"

    def test_errors_do_not_end_the_session(self):
        out = self.lines("y", "(", ":frob", "2")
        assert out[0].startswith("1:1: error[unbound]")
        assert out[1].startswith("1:2: error[syntax]")
        assert out[2].startswith("unknown directive")
        assert out[3] == "2 : [2..2]"

    def test_stdin_loop(self):
        r = subprocess.run([sys.executable, "-m", "stt", "repl"], input="(1, 2)\n:quit\n",
                           capture_output=True, text=True)
        assert r.returncode == 0 and r.stdout == "(1, 2) : ([1..1], [2..2])\n"
