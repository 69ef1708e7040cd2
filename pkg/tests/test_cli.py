import pytest

from mkfuzzy.cli import main
from mkfuzzy.kvalues import conj, disj, format_truth, parse_truth
from mkfuzzy.mkauto import behavior
from mkfuzzy.textfmt import dump_automaton, parse_automaton

from conftest import two_automaton

TWO = dump_automaton(two_automaton())

NONDET = """mkfa 1
kind mk
alphabet a
state p
state q
initial p <1,0,0,0>
trans p a p <1,0,0,0>
trans p a q <1,0,0,0>
final q <1,0,0,0>
"""


@pytest.fixture
def two_file(tmp_path):
    p = tmp_path / "two.mkfa"
    p.write_text(TWO)
    return str(p)


def test_eval(two_file, capsys):
    assert main(["eval", two_file, "aa"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "exact   " + format_truth(behavior(two_automaton(), "aa"))
    assert out[1].startswith("decimal <")


def test_eval_empty_word(two_file, capsys):
    assert main(["eval", two_file, ""]) == 0
    assert "exact   <1,0,0,0>" in capsys.readouterr().out


def test_foreign_letter(two_file, capsys):
    assert main(["eval", two_file, "ab"]) == 3
    assert "b" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(["eval", str(tmp_path / "none.mkfa"), "a"]) == 1


def test_malformed_file(tmp_path, capsys):
    p = tmp_path / "bad.mkfa"
    p.write_text("mkfa 1\nkind mk\nalphabet a\nstate p\ntrans p a p <1,0,0>\n")
    assert main(["eval", str(p), "a"]) == 1
    assert "line 5" in capsys.readouterr().err


def test_invalid_automaton(tmp_path, capsys):
    p = tmp_path / "bad.mkfa"
    p.write_text("mkfa 1\nkind mk\nalphabet a\nstate p\ntrans p a r <1,0,0,0>\n")
    assert main(["eval", str(p), "a"]) == 2
    assert "unknown state 'r'" in capsys.readouterr().err


def test_construct_round_trip(two_file, tmp_path, capsys):
    assert main(["construct", "disjunction", two_file, two_file]) == 0
    out = capsys.readouterr().out
    a = parse_automaton(out)
    for w in ["", "a", "aa", "aaa"]:
        b = behavior(two_automaton(), w)
        assert behavior(a, w) == disj(b, b)


def test_cauchy_requires_determinism(tmp_path, two_file, capsys):
    p = tmp_path / "nd.mkfa"
    p.write_text(NONDET)
    assert main(["construct", "cauchy", str(p), two_file]) == 2
    assert "determin" in capsys.readouterr().err


def test_construct_arity(two_file, capsys):
    assert main(["construct", "normalize", two_file, two_file]) == 1
    assert main(["construct", "frobnicate", two_file]) == 1


def test_scalar_left_note(tmp_path, capsys):
    p = tmp_path / "one.mkfa"
    p.write_text("mkfa 1\nkind mk\nalphabet a\nstate p\ninitial p <1,0,0,0>\n"
                 "final p <1,0,0,0>\n")
    assert main(["construct", "scalar_left", "<1/2,1/4,0,1/4>", str(p)]) == 0
    assert "note:" in capsys.readouterr().err


def test_verify_and_flags_either_side(capsys):
    assert main(["verify", "conj_char", "--trials", "3", "--maxlen", "3"]) == 0
    assert "conj_char: 3 trials (3 match)" in capsys.readouterr().out
    assert main(["--trials", "3", "--maxlen", "3", "verify", "char"]) == 0
    assert "char: 3 trials (3 match)" in capsys.readouterr().out


def test_probe_records(capsys):
    assert main(["probe", "scalar-left", "--seed", "1", "--format", "records",
                 "--maxlen", "3"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert '"counterexample"' in out[-2]
    assert out[-1].startswith('{"counts"')


def test_probe_without_finding(capsys):
    assert main(["probe", "reorder", "--budget", "0"]) == 0
    assert "no counterexample within a budget of 0" in capsys.readouterr().out


def test_logic_compile_agrees_with_eval(tmp_path, capsys):
    f = "sum x . (P_a(x) (*) <3/10,1/5,2/5,1/10>)"
    assert main(["logic", "compile", f]) == 0
    p = tmp_path / "f.mkfa"
    p.write_text(capsys.readouterr().out)
    for w in ["ab", "ba", "b", "aab"]:
        assert main(["eval", str(p), w]) == 0
        via_automaton = capsys.readouterr().out
        assert main(["logic", "eval", f, w]) == 0
        assert capsys.readouterr().out == via_automaton


def test_logic_check_rmso(two_file, capsys, monkeypatch):
    assert main(["logic", "check-rmso", "<1,0,0,0> (*) <0,1,0,0>"]) == 2
    assert "not RMSO at root" in capsys.readouterr().out
    assert main(["logic", "decompile", two_file]) == 0
    text = capsys.readouterr().out
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    assert main(["logic", "check-rmso"]) == 0
    assert capsys.readouterr().out.strip() == "RMSO"


def test_logic_parse_error(capsys):
    assert main(["logic", "parse", "P_a(x"]) == 1
    assert main(["logic", "eval", "P_a(x)", "a"]) == 2


def test_expression_eval(two_file, tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["eval", "--expr", "conj(auto(two.mkfa), const(<1/2,1/4,0,1/4>))", "aa"]) == 0
    want = conj(behavior(two_automaton(), "aa"), parse_truth("<1/2,1/4,0,1/4>"))
    assert f"exact   {format_truth(want)}" in capsys.readouterr().out


def test_expression_errors(two_file, tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["eval", "--expr", "conj(auto(two.mkfa)", "a"]) == 1
    assert main(["eval", "--expr", "disj(const(<1,0,0,0>), const(<1,0,0,0>))", "a"]) == 1
