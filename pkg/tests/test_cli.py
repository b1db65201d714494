import io
import json

import pytest

from multiset_metrics.cli import EXIT_DOMAIN, EXIT_OK, EXIT_PARSE, EXIT_VIOLATION, main


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        p = tmp_path / name
        p.write_text(json.dumps(doc))
        return str(p)

    two = write("two.json", {"label": "two", "kind": "table", "elements": ["x", "y"], "dist": [[0, 1], [1, 0]], "M": 1})
    wide = write("wide.json", {"label": "two", "kind": "table", "elements": ["x", "y"], "dist": [[0, 3], [3, 0]], "M": 1})
    line = write("line.json", {"label": "line3", "kind": "table", "elements": ["x", "y", "z"],
                               "dist": [[0, 1, 2], [1, 0, 1], [2, 1, 0]], "M": 1})
    ms = lambda name, label, **kw: write(name, {"space": label, "elements": [{"elem": k, "mult": v} for k, v in kw.items()]})
    return {
        "two": two,
        "wide": wide,
        "line": line,
        "x3": ms("x3.json", "two", x=3),
        "y3": ms("y3.json", "two", y=3),
        "a": ms("a.json", "line3", x=2),
        "c": ms("c.json", "line3", y=1, z=2),
        "e0": ms("e0.json", "line3"),
        "bad": write("bad.json", {"space": "line3"}),
        "dup": write("dup.json", {"space": "line3", "elements": [{"elem": "x", "mult": 1}, {"elem": "x", "mult": 1}]}),
        "split": write("split.json", {"space": "line3", "points": [{"r": 1, "elem": "x"}, {"r": 2, "elem": "x"}]}),
        "garbage": _raw(tmp_path / "garbage.json", "{oops"),
    }


def _raw(path, text):
    path.write_text(text)
    return str(path)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_dist_exact_output(files):
    code, out = run("dist", "--space", files["line"], files["a"], files["c"])
    assert code == EXIT_OK and out.strip() == "4"
    code, out = run("dist", "--space", files["line"], "--metric", "dEm", files["a"], files["c"])
    assert out.strip() == "4/3 (1.3333333333333333)"
    code, out = run("dist", "--space", files["line"], "--metric", "dEm", "--float", files["a"], files["c"])
    assert out.strip() == "1.3333333333333333"


def test_dist_other_metrics(files):
    assert run("dist", "--space", files["two"], "--metric", "dF", files["x3"], files["y3"])[1].strip() == "3"
    assert run("dist", "--space", files["line"], "--metric", "bag", files["a"], files["c"])[1].strip() == "3"
    assert run("dist", "--space", files["line"], "--metric", "mu", files["a"], files["c"])[1].strip() == "5"
    assert run("dist", "--space", files["line"], "--metric", "dFm", files["split"], files["a"])[0] == EXIT_OK


def test_gbound_interval(files):
    code, out = run("gbound", "--space", files["two"], "--hops", "0", files["x3"], files["y3"])
    lines = out.splitlines()
    assert code == EXIT_OK
    assert lines[0] == "interval [1, 2] exact=false"
    assert lines[1] == "  link {1e_0, 2e_0} -> {1e_1, 2e_1}"
    assert run("gbound", "--space", files["two"], "--gbound", "lower", files["x3"], files["y3"])[1].startswith("1\n")


def test_dump_flow(files):
    code, out = run("dist", "--space", files["line"], "--dump-flow", files["a"], files["c"])
    lines = out.splitlines()
    assert lines[0] == "4"
    assert lines[1] == "rows: x M" and lines[2] == "cols: y z"
    flow = [list(map(int, l.split())) for l in lines[3:]]
    assert [sum(r) for r in flow] == [2, 1] and [sum(c) for c in zip(*flow)] == [1, 2]
    code, out = run("dist", "--space", files["line"], "--dump-flow", files["a"], files["a"])
    assert "no transportation" in out


def test_matrix(files):
    code, out = run("matrix", "--space", files["line"], files["a"], files["c"], files["e0"])
    rows = [l.split(",") for l in out.strip().splitlines()]
    assert rows[0] == ["", "a.json", "c.json", "e0.json"]
    body = [r[1:] for r in rows[1:]]
    assert all(body[i][j] == body[j][i] for i in range(3) for j in range(3))
    assert body[0][2] == "2" and body[1][2] == "3" and body[0][0] == "0"


def test_matrix_dG_interval(files):
    code, out = run("matrix", "--space", files["two"], "--metric", "dG", "--hops", "0", files["x3"], files["y3"])
    blocks = out.strip().split("\n\n")
    assert code == EXIT_OK and len(blocks) == 2
    assert blocks[0].splitlines()[0].startswith("lower,") and blocks[1].splitlines()[0].startswith("upper,")
    assert blocks[0].splitlines()[1].split(",")[2] == "1"
    assert blocks[1].splitlines()[1].split(",")[2] == "2"


def test_deterministic(files):
    a = run("check", "--space", files["line"], "--samples", "50", "--seed", "3")
    b = run("check", "--space", files["line"], "--samples", "50", "--seed", "3")
    assert a == b and a[0] == EXIT_OK and a[1].splitlines()[-1] == "PASS"


def test_check_violation_exit(files, capsys):
    code, out = run("check", "--space", files["wide"], "--samples", "20")
    assert code == EXIT_VIOLATION and "FAIL" in out
    assert "warning:" in capsys.readouterr().err


def test_oracle(files):
    code, out = run("oracle", "--space", files["line"], "--samples", "40")
    assert code == EXIT_OK and "mismatches: 0" in out


def test_counterexample(files):
    code, out = run("counterexample", "--space", files["wide"])
    assert code == EXIT_OK and "slack = -1" in out
    code, out = run("counterexample", "--space", files["two"])
    assert out.startswith("none")
    code, out = run("counterexample", "--space", files["wide"], "--metric", "dAm")
    assert "slack = -1/2" in out


def test_exit_codes(files, capsys):
    assert run("dist", "--space", files["line"], files["bad"], files["c"])[0] == EXIT_PARSE
    assert run("dist", "--space", files["line"], files["dup"], files["c"])[0] == EXIT_PARSE
    assert run("dist", "--space", files["garbage"], files["a"], files["c"])[0] == EXIT_PARSE
    assert run("dist", "--space", files["line"], files["a"], files["garbage"])[0] == EXIT_PARSE
    assert run("dist", "--space", files["line"], "--metric", "nope", files["a"], files["c"])[0] == EXIT_DOMAIN
    assert run("dist", "--space", files["line"], files["x3"], files["c"])[0] == EXIT_DOMAIN
    assert run("dist", "--space", files["line"], files["split"], files["c"])[0] == EXIT_DOMAIN
    assert run("dist", "--space", files["line"], "--metric", "matching", files["a"], files["c"])[0] == EXIT_DOMAIN
    assert run("check", "--space", files["line"], "--seed", "-1")[0] == EXIT_PARSE
    assert run("dist", "--space", files["line"], "--M", "0", files["a"], files["c"])[0] == EXIT_DOMAIN


def test_M_override(files):
    code, out = run("dist", "--space", files["line"], "--M", "1/2", files["e0"], files["c"])
    assert out.strip() == "3/2 (1.5)"
