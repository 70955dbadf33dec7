import json

import pytest

from alontarsi.cli import main
from alontarsi.graphs import cyclic_orientation, make_cycle, serialize, serialize_orientation


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_at_torus_text(capsys):
    code, out, _ = run(capsys, "at-torus", "3", "4")
    assert code == 0
    assert out.startswith("AT(T_{3,4}) = 3 (trace certificate, tr M^4 = 36")
    code, out, _ = run(capsys, "at-torus", "3", "3")
    assert code == 0 and out.strip() == "AT(T_{3,3}) = 4 (trace = 0; capped-3 witness attached)"


def test_at_torus_usage_error(capsys):
    code, _, err = run(capsys, "at-torus", "2", "5")
    assert code == 2 and "must be >= 3" in err


def test_at_torus_json(capsys):
    code, rep = run_json(capsys, "at-torus", "3", "4")
    cert = rep["certificate"]
    assert code == 0 and rep["result"] == {"at": 3}
    assert cert["trace"] == {"a": 36, "b": 0} and cert["sigma"] == -1 and cert["antihermitian"] is True
    assert cert["conclusion"] == "AT=3" and cert["dim"] == 6


def test_reports_are_reproducible(capsys):
    _, a = run_json(capsys, "at-torus", "3", "3")
    _, b = run_json(capsys, "at-torus", "3", "3")
    a.pop("wall_time"), b.pop("wall_time")
    assert a == b
    assert json.loads(json.dumps(a)) == a


def test_trace(capsys):
    code, rep = run_json(capsys, "trace", "--m", "3", "--k", "6")
    assert code == 0 and rep["certificate"]["trace"] == {"a": -108, "b": 0}


def test_coeff_and_expand(tmp_path, capsys):
    f = tmp_path / "c4.txt"
    f.write_text(serialize(make_cycle(4)))
    code, out, _ = run(capsys, "coeff", str(f), "--exponents", "1,1,1,1", "--formula")
    assert code == 0 and "= -2" in out and "formula: -2" in out
    code, rep = run_json(capsys, "expand", "cycle:3", "--cap", "1")
    assert code == 0 and rep["result"]["terms"] == 0
    code, out, _ = run(capsys, "expand", "cycle:3")
    lines = [json.loads(x) for x in out.splitlines()]
    assert {"exponents": [2, 1, 0], "coefficient": 1} in lines and len(lines) == 6


def test_coeff_wrong_length(capsys):
    code, _, err = run(capsys, "coeff", "cycle:4", "--exponents", "1,1")
    assert code == 2


def test_missing_graph(capsys):
    code, _, err = run(capsys, "at", "no/such/file")
    assert code == 2 and "no such graph" in err


def test_circ(tmp_path, capsys):
    f = tmp_path / "o.txt"
    f.write_text(serialize_orientation(cyclic_orientation(4)))
    code, rep = run_json(capsys, "circ", str(f))
    assert code == 0
    cert = rep["certificate"]
    assert (cert["even"], cert["odd"], cert["sign"], cert["coefficient"]) == (2, 0, -1, -2)


def test_at(capsys):
    code, rep = run_json(capsys, "at", "torus:3x3")
    cert = rep["certificate"]
    assert code == 0 and cert["at"] == 4
    o = cert["orientation"]
    assert max(o["indegrees"]) == 3 and o["even"] != o["odd"]


def test_choosable(capsys):
    code, rep = run_json(capsys, "choosable", "K:2,4", "--k", "2")
    assert code == 0
    assert rep["certificate"]["choosable"] is False
    assert rep["certificate"]["witness"]["colorable"] is False
    code, rep = run_json(capsys, "choosable", "K:2,4", "--k", "3")
    assert rep["certificate"]["choosable"] is True and rep["certificate"]["complete"] is True


def test_choosable_torus_refused(capsys):
    code, _, err = run(capsys, "choosable", "torus:3x3", "--k", "3")
    assert code == 2 and "guard" in err


def test_selftest_fast(capsys):
    code, out, _ = run(capsys, "selftest", "fast")
    assert code == 0 and out.count("[PASS]") == 10


def test_selftest_unknown_level(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["selftest", "medium"])
    assert exc.value.code == 2
