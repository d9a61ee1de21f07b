import csv
import io
import json

import pytest
from hypothesis import given, strategies as st

from bgroups import analysis, cli
from bgroups.catalog import CATALOG, GroupSpecError, build_group, catalog, identify, parse_group_spec
from bgroups.groups import GroupError, are_isomorphic


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "text, order",
    [("C1", 1), ("C2xC2", 4), ("S4", 24), ("D4", 8), ("D1", 2), ("Q8", 8), ("SL(2,3)", 24),
     ("C3:C4", 12), ("A4xC2", 24), ("perm:(0 1),(0 1 2)", 6), ("perm:()", 1), ("C2xS3xC2", 24)],
)
def test_build_orders(text, order):
    assert build_group(text).order == order


def test_perm_spec_is_s3():
    assert are_isomorphic(build_group("perm:(0 1),(0 1 2)"), build_group("S3")) is not None


atoms = st.one_of(
    st.builds(lambda f, n: f"{f}{n}", st.sampled_from("CDSA"), st.integers(1, 9)),
    st.sampled_from(["Q8", "Q12", "SL(2,3)", "PSL(2,7)", "C7:C3", "perm:(0 1)(2 3),(1 2)", "perm:(0 4 1)"]),
)


@given(st.lists(atoms, min_size=1, max_size=4))
def test_parse_print_round_trip(parts):
    text = "x".join(parts)
    spec = parse_group_spec(text)
    assert spec.expression == text
    assert parse_group_spec(spec.expression) == spec


@pytest.mark.parametrize(
    "text, pos",
    [("", 0), ("X3", 0), ("C", 1), ("C0", 1), ("C2x", 3), ("C2*C3", 2), ("perm:", 5), ("perm:(0 0)", 10),
     ("perm:(0 1", 5), ("C2xxC3", 3)],
)
def test_parse_errors_report_position(text, pos):
    with pytest.raises(GroupSpecError) as info:
        parse_group_spec(text) if text != "perm:(0 0)" else build_group(text)
    assert info.value.position == pos
    assert f"position {pos}" in str(info.value)


def test_order_cap(monkeypatch):
    monkeypatch.setenv("BGROUPS_MAX_ORDER", "100")
    with pytest.raises(GroupError):
        build_group("S5")


def test_catalog_contents():
    names = [e.name for e in CATALOG]
    assert len(names) == len(set(names))
    for required in ["C1", "C36", "S5", "A5", "SL(2,5)", "PSL(2,7)", "C6xC6", "C10xC10", "C4xC4", "Q8", "D4"]:
        assert required in names
    assert all(e.order <= 24 for e in catalog(24))
    assert all(build_group(e.name).order == e.order for e in catalog(60))


def test_identify():
    assert identify(build_group("D3")) == "S3"
    assert identify(build_group("C2xC3")) == "C6"
    assert identify(build_group("perm:(0 1)(2 3),(0 2)(1 3)")) == "C2xC2"


def test_cli_beta_text(capsys):
    for spec in ("D8", "D4"):
        code, out, _ = run(capsys, "beta", spec, "--format", "text")
        assert code == 0 and out == f"beta({spec}) ≅ C2xC2\n"


def test_cli_analyze_trivial(capsys):
    code, out, _ = run(capsys, "analyze", "C1")
    assert code == 0
    assert "order: 1" in out and "B-group: yes" in out and "beta ≅ C1" in out
    code, out, _ = run(capsys, "analyze", "S3", "--format", "json")
    data = json.loads(out)
    assert data["order"] == 6 and data["subgroups"] == 6 and data["b_group"] is True
    assert sorted(n["m"] for n in data["normal_subgroups"]) == ["0", "0", "1"]


def test_cli_list(capsys):
    code, out, _ = run(capsys, "list", "--format", "json", "--max-order", "12")
    assert code == 0
    assert [d["name"] for d in json.loads(out)] == [e.name for e in catalog(12)]


def test_cli_marks_and_idempotents(capsys):
    code, out, _ = run(capsys, "marks", "S3", "--format", "json")
    assert json.loads(out)["marks"] == [[6, 3, 2, 1], [0, 1, 0, 1], [0, 0, 2, 1], [0, 0, 0, 1]]
    code, out, _ = run(capsys, "idempotents", "S3")
    assert "e_6:0 = 1/2[1:0] + -1[2:0] + -1/2[3:0] + 1[6:0]" in out
    code, out, _ = run(capsys, "idempotents", "S3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["subgroup", "1:0", "2:0", "3:0", "6:0"]


def test_cli_kernel(capsys):
    code, out, _ = run(capsys, "kernel", "S3", "--format", "json")
    data = json.loads(out)
    assert data["rank"] == 1 and data["basis"] in ([[1, -2, -1, 2]], [[-1, 2, 1, -2]])
    code, out, _ = run(capsys, "kernel", "A5", "--class", "solvable", "--format", "json")
    assert json.loads(out)["rank"] == 1


def test_cli_usage_errors(capsys):
    assert run(capsys, "beta", "X9")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "verify", "bogus")[0] == 1
    assert run(capsys, "beta", "S5", "--max-order", "100")[0] == 1
    code, _, err = run(capsys, "beta", "C2x")
    assert code == 1 and "position 3" in err


def test_cli_verify_nilpotent_beta_catalog(capsys):
    code, out, _ = run(capsys, "verify", "conjecture-a", "--catalog", "--format", "json", "--max-order", "60")
    rows = json.loads(out)
    assert code == 0
    assert sorted(r["group"] for r in rows) == sorted(e.name for e in catalog(60))
    assert all(r["status"] == "pass" and r["check"] == "conjecture-a" for r in rows)


def test_cli_verify_single_group_csv(capsys, tmp_path):
    target = tmp_path / "out.csv"
    code, out, _ = run(capsys, "verify", "all", "--group", "S4", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    rows = list(csv.reader(target.open()))
    assert rows[0] == ["group", "order", "check", "status", "millis"]
    assert sorted(r[2] for r in rows[1:]) == sorted(analysis.CHECKS)


def test_cli_verify_jobs_deterministic(capsys):
    args = ["verify", "all", "--catalog", "--max-order", "16", "--format", "csv", "--no-timing"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args, "--jobs", "3")
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.splitlines()[-1].startswith("catalog,")


def test_cli_exit_code_bug(capsys, monkeypatch):
    trivial = build_group("C1")
    monkeypatch.setattr(analysis, "beta", lambda G, check=False: trivial)
    code, out, _ = run(capsys, "verify", "conjecture-a", "--group", "S3", "--format", "json")
    assert code == 2
    assert json.loads(out)[0]["witness"]["kind"] == "bug"


def test_cli_exit_code_counterexample(capsys, monkeypatch):
    trivial = build_group("C1")
    monkeypatch.setattr(analysis, "beta", lambda G, check=False: trivial)
    code, out, _ = run(capsys, "verify", "conjecture-a", "--group", "A5", "--format", "json")
    assert code == 3
    w = json.loads(out)[0]["witness"]
    assert w["kind"] == "counterexample" and w["group"]["order"] == 60


def test_cli_classification_target(capsys):
    code, out, _ = run(capsys, "verify", "classification", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 1 and rows[0]["check"] == "classification"
