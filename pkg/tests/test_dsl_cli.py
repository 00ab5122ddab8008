import io

import pytest

from groupsize import cli
from groupsize import subsets as ss
from groupsize.dsl import DSLError, parse, render

PROGRAM = """
# a small program
group Z
set E = residues(2; 0)
set O = compl(E); set S = union(E, squares)
set T = translate(3, finite(1, 2))
set P = periodic(0; 0:101; 10)
"""


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out)
    return code, out.getvalue()


def write(tmp_path, text, name="prog.gs"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_parse_program():
    prog = parse(PROGRAM)
    assert list(prog.sets) == ["E", "O", "S", "T", "P"]
    assert ss.member(prog.sets["O"], 3) and not ss.member(prog.sets["O"], 4)
    assert ss.member(prog.sets["S"], 9) and ss.member(prog.sets["S"], 4)
    assert [x for x in range(10) if ss.member(prog.sets["T"], x)] == [4, 5]
    assert [x for x in range(-3, 6) if ss.member(prog.sets["P"], x)] == [0, 2, 4]
    assert render("E", prog.sets["E"]).startswith("set E = ")


def test_other_groups():
    prog = parse("group Z^2\nset A = finite((1, 0), (0, 1))")
    assert ss.member(prog.sets["A"], (1, 0))
    prog = parse("group F_2\nset A = fp(a, b)")
    assert ss.member(prog.sets["A"], "ab")


@pytest.mark.parametrize("text, line", [
    ("group Z\nset A = residues(0; 0)", 2),
    ("group Z\nset A = nosuch(1)", 2),
    ("group Z\n\nset A = B", 3),
    ("set A = finite(1)\ngroup Z", 2),
    ("group Z\nset A = finite(1\n", 2),
    ("group Z\nset A = finite(1)\nset A = finite(2)", 3),
    ("group Q", 1),
    ("group Z\nfrobnicate", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(DSLError) as exc:
        parse(text)
    assert exc.value.line == line and f"line {line}" in str(exc.value)


def test_cli_parse_error_exit_code(tmp_path, capsys):
    code, _ = run(["classify", write(tmp_path, "group Z\nset A = residues(0; 0)\n")])
    assert code == cli.EXIT_PARSE
    assert "line 2" in capsys.readouterr().err
    assert run(["classify", str(tmp_path / "missing.gs")])[0] == cli.EXIT_PARSE


def test_cli_empty_file(tmp_path):
    code, out = run(["classify", write(tmp_path, "# nothing\n")])
    assert code == cli.EXIT_OK and out.startswith("config:")


def test_records_are_deterministic(tmp_path):
    path = write(tmp_path, PROGRAM)
    argv = ["classify", path, "--format", "records", "--radius", "32"]
    a = run(argv)[1]
    b = run(argv + ["--workers", "4"])[1]
    assert a == b
    lines = a.splitlines()
    assert lines[0] == "# groupsize-records/1" and "budget=w8d4c4096r32" in lines[1]
    rows = [l.split("|") for l in lines[3:]]
    assert len(rows) == 5 * 12 and all(len(r) == 6 for r in rows)
    even_large = next(r for r in rows if r[0] == "E" and r[1] == "Large")
    assert even_large[2:4] == ["True", "Global"]


def test_text_format_and_props(tmp_path):
    code, out = run(["classify", write(tmp_path, PROGRAM), "--props", "large,thick"])
    assert code == 0 and "E:" in out and "Large" in out and "Thin" not in out
    assert "consistency: ok" in out


def test_relations_and_self_test(tmp_path):
    path = write(tmp_path, "group Z\nset E = residues(2; 0)\nset F = finite(0, 4)\nset Q = squares\n")
    code, out = run(["relations", path])
    assert code == cli.EXIT_OK and "0 fail" in out
    code, out = run(["relations", path, "--self-test"])
    assert code == cli.EXIT_INCONSISTENT
    assert "FAIL" in out and "counterexample:" in out


def test_hindman_cli(tmp_path):
    code, out = run(["hindman", "--n", "5", "--all"])
    assert code == 0 and out.startswith("PASS")
    code, out = run(["hindman", "--n", "4", "--all"])
    assert out.startswith("NONE: colouring 0110 ({1, 4} / {2, 3})")
    code, out = run(["hindman", "--n", "1", "--coloring", "0"])
    assert out == "NONE\n"
    path = write(tmp_path, "0\n0\n0\n", "col.txt")
    code, out = run(["hindman", "--n", "3", "--coloring", path])
    assert out.startswith("FOUND colour 0: generators (1, 1)")
    assert run(["hindman", "--n", "4", "--coloring", "01"])[0] == cli.EXIT_PARSE
    assert run(["hindman", "--n", "9", "--all", "--distinct"])[1].startswith("PASS")
