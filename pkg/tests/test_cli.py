import json

import pytest

import snfy.smith
from snfy import acceptance
from snfy.cli import compact, main, thread_count
from snfy.polyzx import PolyZx


def run(args):
    lines = []
    code = main(args, out=lines.append)
    return code, "\n".join(lines)


def test_strings_plain():
    code, out = run(["strings", "--n", "6"])
    assert code == 0
    assert out.splitlines()[0] == "6, 51, 41^2, 31^3, 21^4, 1^6; 42, 321, 2^21^2; 3^2; 2^3"
    assert "lambda(6)=(4,2,2,1,1,1), conjugate=(6,3,1,1)" in out


def test_strings_json():
    code, out = run(["strings", "--n", "4", "--format", "json"])
    data = json.loads(out)
    assert code == 0
    assert data["strings"] == [[[4], [3, 1], [2, 1, 1], [1, 1, 1, 1]], [[2, 2]]]
    assert data["conjugate"] == [4, 1]


def test_compact():
    assert compact((2, 2, 1, 1)) == "2^21^2"
    assert compact((12, 1)) == "(12,1)"


def test_matrix_formats():
    code, out = run(["matrix", "--n", "3", "--format", "json"])
    data = json.loads(out)
    assert code == 0 and data["order"] == [[3], [2, 1], [1, 1, 1]]
    assert data["basis"] == "h" and data["k"] == 1
    code, out = run(["matrix", "--n", "3", "--basis", "schur", "--format", "latex"])
    assert code == 0 and out.startswith("\\begin{bmatrix}")


def test_snf_plain_and_out(tmp_path):
    path = tmp_path / "cert.json"
    code, out = run(["snf", "--n", "6", "--out", str(path)])
    assert code == 0
    assert out.splitlines()[0] == (
        "diag: 1^7, (1+x), (1+x), (1+x)(2+x)(3+x), (1+x)(2+x)(3+x)(4+x)(5+x)(7+x)"
    )
    cert = json.loads(path.read_text())
    assert cert["verified"] and cert["n"] == 6
    assert [PolyZx.from_json(d) for d in cert["D"]][-1](0) == 840
    assert cert["D_factors"][:7] == [[]] * 7
    assert cert["D_factors"][-2] == [[1, 1], [2, 1], [3, 1]]


def test_snf_json_is_deterministic():
    a = run(["snf", "--n", "7", "--format", "json"])[1]
    b = run(["snf", "--n", "7", "--format", "json"])[1]
    assert a == b
    assert "time" not in json.loads(a)


def test_snf_no_verify():
    code, out = run(["snf", "--n", "5", "--no-verify"])
    assert code == 0 and "not verified" in out


def test_conjecture_and_specialize_json():
    code, out = run(["conjecture", "--n", "5", "--k", "3", "--format", "json"])
    report = json.loads(out)
    assert code == 0 and report["verdict"] == "confirmed" and report["proposition"] == "agree"
    assert run(["conjecture", "--n", "5", "--k", "3", "--format", "json"])[1] == out
    code, out = run(["specialize", "--n", "6", "--k", "2", "--c", "-3", "--format", "json"])
    assert code == 0 and json.loads(out)["match"]


@pytest.mark.parametrize("args", [
    ["snf", "--n", "0"],
    ["matrix", "--n", "3", "--k", "5"],
    ["matrix", "--n", "3", "--k", "2", "--basis", "schur"],
    ["conjecture", "--n", "4", "--k", "0"],
    ["conjecture", "--n", "4", "--minor-budget", "0"],
    ["bogus"],
    ["snf"],
    ["strings", "--n", "x"],
])
def test_usage_errors(args):
    assert run(args)[0] == 2


def test_threads(monkeypatch):
    monkeypatch.setenv("SNFY_THREADS", "3")
    assert thread_count(6) == 1
    assert thread_count(6, 8) == 1
    assert thread_count(9) == 3
    assert thread_count(9, 2) == 2


def test_selftest_small_budget():
    code, out = run(["selftest", "--minor-budget", "1000"])
    assert code == 0, out
    assert len([l for l in out.splitlines() if l.startswith("[")]) == len(acceptance.criteria())


def test_mutated_substitution_fails_golden(monkeypatch):
    def wrong_fs(n):
        return tuple(PolyZx((i, 1)) for i in range(1, n + 1))

    monkeypatch.setattr(snfy.smith, "default_fs", wrong_fs)
    status, _ = acceptance.check_n6_golden()
    assert status == "fail"
    code, _ = run(["selftest", "--minor-budget", "1000"])
    assert code == 1
