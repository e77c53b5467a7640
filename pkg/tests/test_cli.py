import json

import pytest

from twistcube.claims import CLAIMS, Cell, cells, parse_range, pk_expected, run_cell
from twistcube.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("n, lines", [(1, 1), (2, 4), (4, 32)])
def test_gen_edgelist(capsys, n, lines):
    code, out, _ = run(capsys, "gen", str(n), "edgelist")
    assert code == 0 and len(out.splitlines()) == lines


def test_gen_h1(capsys):
    assert run(capsys, "gen", "--n", "1")[1] == "0 1\n"


def test_gen_dot_and_determinism(capsys):
    a = run(capsys, "gen", "3", "--format", "dot")[1]
    b = run(capsys, "gen", "--n", "3", "--format", "dot")[1]
    c = run(capsys, "gen", "3", "dot")[1]
    assert a == b == c and a.startswith("graph H3 {")


def test_gen_limit(capsys):
    code, out, err = run(capsys, "gen", "6", "--limit", "5")
    assert code == 2 and out == "" and "limit" in err


def test_gen_conflicting_n(capsys):
    assert run(capsys, "gen", "3", "--n", "4")[0] == 2


@pytest.mark.parametrize("chain, out", [("1", "1010"), ("3,1,1*", "1101"), ("4,1*", "1111")])
def test_nbr(capsys, chain, out):
    assert run(capsys, "nbr", "0010", chain)[:2] == (0, out + "\n")


@pytest.mark.parametrize("chain", ["", "1,x", "9"])
def test_nbr_usage_errors(capsys, chain):
    code, _, err = run(capsys, "nbr", "0010", chain)
    assert code == 2 and err


def test_cut_k13(capsys):
    code, out, _ = run(capsys, "cut", "4", "k13", "0000")
    assert code == 0
    assert sum(line.startswith("K1,3 ") for line in out.splitlines()) == 2
    assert "components=2 sizes=1,7" in out


def test_cut_pk(capsys):
    code, out, _ = run(capsys, "cut", "5", "pk", "00000", "3")
    assert code == 0 and sum(line.startswith("P3 ") for line in out.splitlines()) == 3


def test_cut_p2_book_component(capsys):
    code, out, _ = run(capsys, "cut", "4", "p2", "0000")
    assert code == 0 and sum(line.startswith("P2 ") for line in out.splitlines()) == 3
    assert "# smallest 0000 0010" in out


def test_cut_default_anchor_and_flags(capsys):
    a = run(capsys, "cut", "--n", "6", "--shape", "k14")[1]
    b = run(capsys, "cut", "6", "k14", "000000")[1]
    assert a == b


@pytest.mark.parametrize("argv", [
    ["cut", "4", "k15"], ["cut", "4", "pk"], ["cut", "4", "k13", "000"], ["cut", "3", "k13"],
    ["cut", "4", "p2", "0010"], ["cut", "4", "c4"],
])
def test_cut_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_cut_large_n_skips_components(capsys):
    code, out, _ = run(capsys, "cut", "30", "p3")
    assert code == 0 and "components" not in out


def test_verify_thm_k13(capsys):
    code, out, _ = run(capsys, "verify", "thm-k13", "4..6")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3
    assert [line.split()[2] for line in lines] == ["expected=2", "expected=3", "expected=3"]
    assert all("status=pass" in line for line in lines)


def test_verify_kappa2_and_json(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "lem-kappa2", "5", "--json", str(path))
    assert code == 0 and "actual=10" in out
    data = json.loads(path.read_text())
    assert data[0]["claim"] == "lem-kappa2" and data[0]["status"] == "pass"


def test_verify_all_small(capsys):
    code, out, _ = run(capsys, "verify", "all", "4..5", "--jobs", "2")
    assert code == 0
    claims = {line.split()[0] for line in out.splitlines()}
    assert claims == {f"claim={c}" for c in CLAIMS if c != "p2-large"}


def test_verify_out_of_domain(capsys):
    assert run(capsys, "verify", "thm-k13", "3")[0] == 2
    assert run(capsys, "verify", "conn", "7..5")[0] == 2
    with pytest.raises(SystemExit):
        main(["verify", "thm-nope"])


def test_verify_failure_exit(monkeypatch, capsys):
    from twistcube import claims
    spec = claims.CLAIMS["conn"]
    monkeypatch.setitem(claims.CLAIMS, "conn", spec.__class__(**{**spec.__dict__, "expected": lambda n: n + 1}))
    code, out, err = run(capsys, "verify", "conn", "3")
    assert code == 1 and "status=fail" in out and "first failing claim: conn" in err


def test_audit(capsys):
    code, out, _ = run(capsys, "audit", "4")
    assert code == 0 and "claim=audit-K1,3" in out and "claim=book-lemma" in out


def test_audit_large(capsys):
    code, out, _ = run(capsys, "audit", "--n", "100", "--samples", "4", "--seed", "3")
    assert code == 0 and "claim=p2-isolating-family" in out and "mode=sampled" in out


def test_search(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "4", "p2", "--budget", "3", "--json", str(tmp_path / "s.json"))
    assert code == 0 and "value=3" in out
    assert sum(line.startswith("P2 ") for line in out.splitlines()) == 3


def test_search_exceeds_budget(capsys):
    code, out, _ = run(capsys, "search", "--n", "4", "--shape", "p2", "--budget", "2")
    assert code == 1 and "value=exceeds_budget" in out


def test_parse_range():
    assert parse_range("4..6") == (4, 6) and parse_range("5") == (5, 5)
    for bad in ["", "a", "6..4", "4-6"]:
        with pytest.raises(ValueError):
            parse_range(bad)


def test_cells_expand_k():
    got = list(cells("thm-pk", 4, 5))
    assert got[0] == Cell("thm-pk", 4, 3) and len(got) == 2 + 3


def test_expected_values_from_closed_forms():
    assert [CLAIMS["thm-k13"].expected(n) for n in (4, 5, 6)] == [2, 3, 3]
    assert pk_expected(6, 3) == 3 and pk_expected(6, 4) == 3 and pk_expected(6, 6) == 2
    assert CLAIMS["thm-p2"].expected(80) == 79 and CLAIMS["thm-p2"].expected(81) == 81


def test_p2_large_cell():
    r = run_cell(Cell("p2-large", 100))
    assert r.passed and r.details["book"] == "pass"
