import json

import pytest

from kseeker.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ksum_worked_example(capsys):
    code, out, _ = run(capsys, "ksum", "--p", "11", "--m", "4", "--modulus", "2,10,8,0,1",
                       "--a-exp", "2092", "--digits", "10")
    data = json.loads(out)
    assert code == 0
    assert data["digits"] == [0, 0, 4, 0, 4, 0, 5, 0, 9, 0]
    assert data["a"] == {"exp": 2092, "coeffs": [3, 0, 5, 3]}
    assert data["formula_digits"] == [4, 4, 5, 9]


def test_ksum_zero(capsys):
    code, out, _ = run(capsys, "ksum", "--p", "11", "--m", "2", "--a-exp", "0-vector")
    data = json.loads(out)
    assert code == 0 and data["digits"] == [0] * 10 and data["flags"] == ["a=0"]


def test_ksum_gauss_check(capsys):
    code, out, _ = run(capsys, "ksum", "--p", "13", "--m", "2", "--a-exp", "5", "--check", "gauss")
    assert code == 0 and json.loads(out)["checks"] == {"gauss": "ok"}


@pytest.mark.parametrize("args", [
    ["ksum", "--p", "11", "--m", "2", "--a", "1,2,3"],
    ["ksum", "--p", "11", "--m", "2", "--a-exp", "x"],
    ["ksum", "--p", "11", "--m", "2"],
    ["field", "--p", "7", "--m", "2", "--modulus", "6,0,1"],
    ["bent-scan", "--p", "5", "--m", "1", "--t", "3"],
    ["product-check", "--p", "11"],
])
def test_usage_errors(capsys, args):
    code, _, err = run(capsys, *args)
    assert code == 2 and "error" in err


def test_precision_cap(capsys):
    with pytest.raises(SystemExit) as e:
        main(["expand-zeta", "--p", "37", "--N", "11"])
    assert e.value.code == 2


def test_search_p11(capsys):
    code, out, _ = run(capsys, "search", "--p", "11", "--m", "3", "--b", "all")
    data = json.loads(out)
    assert code == 0 and data["hits"] == [] and set(data["census"].values()) == {0}
    assert "seconds" not in data


def test_search_deterministic_across_workers(capsys):
    outs = {run(capsys, "search", "--p", "13", "--m", "2", "--workers", w)[1] for w in ("1", "4")}
    assert len(outs) == 1


def test_bent_scan(capsys):
    code, out, _ = run(capsys, "bent-scan", "--p", "3", "--m", "1", "--t", "1")
    assert code == 0 and json.loads(out)["disagreements"] == []


def test_expand_zeta(capsys):
    code, out, _ = run(capsys, "expand-zeta", "--p", "37", "--N", "9")
    assert code == 0 and json.loads(out)["signed_digits"] == [1, 1, -18, -6, 17, -4, -13, 14, 11]


def test_special_expand_and_product(capsys):
    code, out, _ = run(capsys, "special-expand", "--p", "13", "--b", "1", "--N", "10")
    assert json.loads(out)["digits"] == [0, 0, 7, 0, 9, 0, 7, 0, 12, 0]
    code, out, _ = run(capsys, "product-check", "--p", "17")
    assert code == 0 and json.loads(out)["holds"]


def test_field_roundtrip(capsys, tmp_path):
    path = tmp_path / "f.json"
    run(capsys, "field", "--p", "11", "--m", "4", "--modulus", "2,10,8,0,1", "--save", str(path))
    code, out, _ = run(capsys, "ksum", "--field-file", str(path), "--a-exp", "2092")
    assert code == 0 and json.loads(out)["digits"][8] == 9


def test_csv_output(capsys, tmp_path):
    dest = tmp_path / "o.csv"
    code, _, _ = run(capsys, "subfield-analysis", "--p", "13", "--format", "csv", "--output", str(dest))
    lines = dest.read_text().splitlines()
    assert code == 0 and lines[0] == "key,value" and "r,\"\"\"-108/77\"\"\"" in lines


def test_verify_paper_subset(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "AC1,AC2")
    assert code == 0 and out.count("pass") == 2
    code, _, err = run(capsys, "verify-paper", "--only", "AC99")
    assert code == 2
