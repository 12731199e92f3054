import io
import json
from pathlib import Path

import pytest

from cotorlab.cli import parse_poset_text, parse_quiver_text, read_reports, run
from cotorlab.combinat import chain, poset_isomorphic
from cotorlab.errors import CycleError, ParseError, UnknownLabel

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"


@pytest.fixture(autouse=True)
def at_root(monkeypatch):
    monkeypatch.chdir(ROOT)


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_poset():
    assert poset_isomorphic(parse_poset_text("0 < 1\n1 < 2"), chain(3))
    P = parse_poset_text("# a comment\n0 < 1  # trailing\n\n")
    assert len(P) == 2
    with pytest.raises(CycleError):
        parse_poset_text("x < y\ny < x")
    with pytest.raises(ParseError) as exc:
        parse_poset_text("0 < 1\nfoo bar")
    assert exc.value.line == 2


def test_parse_quiver():
    Q = parse_quiver_text("vertex x\nvertex y\narrow a: x -> y")
    assert len(Q.vertices) == 2 and len(Q.arrows) == 1
    with pytest.raises(ParseError):
        parse_quiver_text("vertex x\nvertex y\narrow a: x -> y\narrow a: y -> x")
    with pytest.raises(UnknownLabel):
        parse_quiver_text("vertex x\narrow a: x -> z")


@pytest.mark.parametrize(
    "argv,golden",
    [
        (["--no-timings", "cotor", "--coalgebra", "div", "--trunc", "8", "--nmax", "4"], "cotor_div8.json"),
        (["--no-timings", "verify", "suspension", "--quiver", "tests/data/crown.qv", "--nmax", "2"], "verify_suspension_crown.json"),
        (["--no-timings", "series", "mul", "--kind", "dirichlet", "--bound", "8", "tests/data/f.txt", "tests/data/g.txt"], "series_mul_dirichlet.json"),
        (["--no-timings", "hh", "--poset", "tests/data/diamond.poset", "--nmax", "3"], "hh_diamond.json"),
        (["--no-timings", "--tsv", "ext", "--quiver", "tests/data/crown.qv", "--suspend", "--a", "a", "--b", "b", "--nmax", "4"], "ext_crown_suspension.tsv"),
        (["coalgebra", "--coalgebra", "div", "--trunc", "3", "--dump"], "dump_div3.txt"),
        (["coalgebra", "--coalgebra", "dir", "--m", "2", "--trunc", "2", "--dump"], "dump_dir2_2.txt"),
    ],
)
def test_golden(argv, golden):
    code, out, _ = call(*argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")


def test_cotor_output():
    code, out, _ = call("cotor", "--coalgebra", "div", "--trunc", "8", "--nmax", "4")
    (rep,) = read_reports(out)
    assert code == 0 and rep["dims"] == [1, 1, 0, 0, 0]
    assert len(rep["timings_ms"]) == 2


def test_repeated_runs_are_identical():
    argv = ["--no-timings", "verify", "gs", "--poset", "builtin:boolean3", "--nmax", "3"]
    assert call(*argv)[1] == call(*argv)[1]


def test_round_trip_of_reports():
    code, out, _ = call("verify", "gs", "--poset", "builtin:crown", "--nmax", "2")
    from cotorlab.theorems import CheckReport

    (d,) = read_reports(out)
    rep = CheckReport.from_dict(d)
    assert json.loads(rep.to_json()) == d


def test_exit_codes(tmp_path):
    bad = tmp_path / "cycle.poset"
    bad.write_text("x < y\ny < x\n")
    code, _, err = call("poset", str(bad))
    assert code == 2 and "error" in err
    assert call("ext", "--poset", "builtin:chain2", "--a", "0", "--b", "9")[0] == 2
    assert call("poset", str(tmp_path / "missing"))[0] == 2
    nonordered = tmp_path / "tri.qv"
    nonordered.write_text("vertex x\nvertex y\nvertex z\narrow a: x -> y\narrow b: y -> z\narrow c: x -> z\n")
    assert call("quiver", str(nonordered), "--require-ordered")[0] == 1
    assert call("quiver", str(nonordered))[0] == 0


def test_series_verbs():
    code, out, _ = call("series", "inv", "--kind", "dirichlet", "--bound", "8", "tests/data/f.txt")
    assert read_reports(out)[0]["coeffs"] == ["1", "-1", "-1", "0", "-1", "1", "-1", "0"]
    code, out, _ = call("series", "zeta", "--kind", "eulerian", "--bound", "3", "--q", "2")
    assert code == 0 and read_reports(out)[0]["q"] == "2"
    assert call("series", "mul", "--kind", "dirichlet", "--bound", "5", "tests/data/f.txt", "tests/data/g.txt")[0] == 2


def test_tsv_has_header_and_row():
    code, out, _ = call("--tsv", "--no-timings", "cotor", "--coalgebra", "bin", "--trunc", "6", "--nmax", "3")
    header, row = out.splitlines()
    assert header.split("\t")[1] == "dims" and "1,1,0,0" in row.split("\t")


def test_incidence_cotor_and_poset_summary():
    code, out, _ = call("cotor", "--coalgebra", "incidence", "--poset", "builtin:chain2", "--nmax", "2")
    assert read_reports(out)[0]["dims"] == [2, 1, 0]
    code, out, _ = call("poset", "builtin:crown", "--nerve", "--nmax", "2")
    assert read_reports(out)[0]["dims"] == [1, 1, 0]
    assert call("--poset-cap", "3", "poset", "builtin:diamond")[0] == 2


def test_verify_failure_is_exit_one(monkeypatch):
    import cotorlab.theorems as th

    def broken(P, n):
        return th.CheckReport("gs", {}, [1], [0])

    monkeypatch.setattr(th, "check_gs", broken)
    assert call("verify", "gs", "--poset", "builtin:chain2")[0] == 1
