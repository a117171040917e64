import json

import pytest
from hypothesis import given, strategies as st

from lowering import criteria
from lowering.cli import main
from lowering.records import CSV_COLUMNS, ResultRecord, dumps_csv, dumps_json, loads_csv, loads_json

SMALL = ["--p", "2", "--lambda", "2,1,0", "--mu", "1,1"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_zero(capsys):
    code, out, _ = run(capsys, "classify", *SMALL, "--i", "1", "--j", "3", "--A", "2")
    assert code == 0
    (record,) = loads_json(out)
    assert record.kind == "Zero" and record.A == (2,)


def test_classify_high_weight(capsys):
    code, out, _ = run(capsys, "classify", "--p", "3", "--lambda", "4,2,0", "--mu", "4,1",
                       "--i", "1", "--j", "2", "--A", "")
    (record,) = loads_json(out)
    assert code == 0 and record.kind == "NonzeroHighWeight" and record.nu == (3, 2)


@pytest.mark.parametrize("argv", [
    ["classify", "--p", "2", "--lambda", "2,1,0", "--mu", "3,1", "--i", "1", "--j", "3"],
    ["classify", "--p", "4", "--lambda", "2,1,0", "--mu", "1,1", "--i", "1", "--j", "3"],
    ["classify", *SMALL, "--i", "1", "--j", "4"],
    ["classify", *SMALL, "--i", "1", "--j", "3", "--A", "1"],
    ["classify", *SMALL, "--i", "x", "--j", "3"],
    ["classify", *SMALL, "--i", "1"],
    ["exists", *SMALL, "--i", "3", "--j", "3"],
    ["sweep", "--mode", "nonsense"],
    ["verify", "--n", "1"],
    ["frobnicate"],
    ["classify", *SMALL, "--i", "1", "--j", "3", "--format", "xml"],
])
def test_usage_and_domain_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_enumerate_counts(capsys):
    code, out, _ = run(capsys, "enumerate", *SMALL, "--i", "1", "--j", "3")
    records = loads_json(out)
    assert code == 0 and [(r.A, r.kind) for r in records] == [((), "NonzeroNotHighWeight"), ((2,), "Zero")]
    _, out, _ = run(capsys, "enumerate", "--p", "3", "--lambda", "4,2,0", "--mu", "4,1", "--i", "1", "--j", "2")
    assert len(loads_json(out)) == 1
    _, out, _ = run(capsys, "enumerate", "--p", "2", "--lambda", "3,2,1,1,0", "--mu", "2,2,1,1",
                    "--i", "1", "--j", "5", "--format", "csv")
    assert len(loads_csv(out)) == 8


def test_exists_output(capsys):
    code, out, _ = run(capsys, "exists", "--p", "2", "--lambda", "3,2,1,0", "--mu", "3,2,0",
                       "--i", "1", "--j", "3")
    doc = json.loads(out)
    assert code == 0 and doc["exists"] is True
    assert doc["records"][0]["A"] == [2] and doc["records"][0]["class"] == "NonzeroHighWeight"
    code, out, _ = run(capsys, "exists", *SMALL, "--i", "1", "--j", "3")
    assert code == 0 and json.loads(out) == {"exists": False, "records": []}


def test_csv_columns(capsys):
    _, out, _ = run(capsys, "classify", *SMALL, "--i", "1", "--j", "3", "--format", "csv")
    header = out.splitlines()[0]
    assert header == "p,lambda,mu,i,j,A,class,nu,witness_d,witness_eps,checks"
    assert tuple(header.split(",")) == CSV_COLUMNS


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[lowering]\np = 2\nlambda = 2,1,0\nmu = 1,1\ni = 1\nj = 3\nA = 2\nformat = csv\n")
    code, out, _ = run(capsys, "--config", str(cfg), "classify")
    assert code == 0 and loads_csv(out)[0].kind == "Zero"
    code, out, _ = run(capsys, "--config", str(cfg), "classify", "--A", "", "--format", "json")
    assert code == 0 and loads_json(out)[0].kind == "NonzeroNotHighWeight"
    code, _, _ = run(capsys, "--config", str(tmp_path / "missing.ini"), "classify")
    assert code == 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "enumerate", *SMALL, "--i", "1", "--j", "3", "--out", str(target))
    assert code == 0 and out == ""
    assert len(loads_json(target.read_text())) == 2


def test_sweep_records_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["sweep", "--p", "2", "--n", "3", "--max-first", "2", "--format", "csv"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b), "--workers", "2"]) == 0
    assert a.read_text() == b.read_text()
    records = loads_csv(a.read_text())
    assert records and all(all(r.checks.values()) for r in records)
    assert all(r.checks.get("oracle") for r in records)


def test_verify_reports(capsys):
    code, out, _ = run(capsys, "verify", "--p", "2,3", "--n", "3", "--max-first", "3")
    assert code == 0 and "grid: 0 disagreements" in out
    code, out, _ = run(capsys, "verify", "--mode", "symbolic", "--max-span", "4")
    assert code == 0 and "k_poly_def==k_poly_rec: pass" in out


def test_verify_writes_report(tmp_path, capsys):
    target = tmp_path / "report.csv"
    code, _, _ = run(capsys, "verify", "--mode", "structural", "--n", "3", "--out", str(target),
                     "--format", "csv")
    assert code == 0
    assert target.read_text().splitlines()[0] == "suite,check,checked,failed,skipped"


def test_injected_fault_exits_1(capsys, monkeypatch):
    true_residue = criteria.b_residue

    def flipped(pair, i, t, k=None):
        value = true_residue(pair, i, t, k)
        return (value + 1) % pair.p if (i, t) == (1, 1) else value

    monkeypatch.setattr(criteria, "b_residue", flipped)
    code, out, _ = run(capsys, "verify", "--p", "2", "--n", "3", "--max-first", "2")
    assert code == 1
    assert '"counterexample"' in out
    code, _, err = run(capsys, "sweep", "--p", "2", "--n", "3", "--max-first", "2", "--out", "/dev/null")
    assert code == 1 and "counterexample" in err


records = st.builds(
    ResultRecord,
    p=st.sampled_from([2, 3, 5]),
    lam=st.lists(st.integers(-5, 9), min_size=2, max_size=5).map(tuple),
    mu=st.lists(st.integers(-5, 9), min_size=1, max_size=4).map(tuple),
    i=st.integers(1, 5),
    j=st.integers(2, 6),
    A=st.lists(st.integers(2, 5), max_size=3, unique=True).map(lambda a: tuple(sorted(a))),
    kind=st.sampled_from(["Zero", "NonzeroNotHighWeight", "NonzeroHighWeight"]),
    nu=st.one_of(st.none(), st.lists(st.integers(-5, 9), min_size=1, max_size=4).map(tuple)),
    witness_d=st.one_of(st.none(), st.sampled_from(["{}", "{2->3}", "{2->2,3->4}"])),
    witness_eps=st.one_of(st.none(), st.sampled_from(["{}", "{3->2}"])),
    checks=st.dictionaries(st.sampled_from(["oracle", "closure", "lowered"]), st.booleans()),
)


@given(st.lists(records, max_size=4))
def test_records_round_trip(rs):
    assert loads_json(dumps_json(rs)) == rs
    assert loads_csv(dumps_csv(rs)) == rs
    for r in rs:
        assert ResultRecord.from_json(json.loads(json.dumps(r.to_json()))) == r
