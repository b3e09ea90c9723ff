import json
import subprocess
import sys
from math import factorial

import pytest

from hplane import binomials, cli
from hplane.coeffring import ONE


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def coeff_values(terms):
    """Map (y, x) -> list of (q, h, num, den) from a json document."""
    return {(t["y"], t["x"]): [(c["q"], c["h"], int(c["num"]), int(c["den"])) for c in t["coeff"]] for t in terms}


class TestExpand:
    def test_h_symbolic(self, capsys):
        code, out, _ = run(capsys, "expand", "--n", "2", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["plane"] == {"q": "1", "h": "sym"}
        assert doc["check"] == "h-binomial"
        assert coeff_values(doc["terms"]) == {
            (0, 2): [(0, 0, 1, 1)],
            (1, 1): [(0, 0, 2, 1)],
            (2, 0): [(0, 0, 1, 1), (0, 1, 1, 1)],
        }

    def test_h_one(self, capsys):
        code, out, _ = run(capsys, "expand", "--n", "3", "--h", "1", "--format", "json")
        assert code == 0
        terms = json.loads(out)["terms"]
        assert [int(t["coeff"][0]["num"]) for t in terms] == [1, 3, 6, 6]
        assert [(t["y"], t["x"]) for t in terms] == [(0, 3), (1, 2), (2, 1), (3, 0)]

    def test_manin(self, capsys):
        code, out, _ = run(capsys, "expand", "--n", "2", "--q", "sym", "--h", "0")
        assert code == 0
        assert "q-binomial" in out
        assert "1 + q" in out

    def test_general_plane_has_no_check(self, capsys):
        code, out, _ = run(capsys, "expand", "--n", "2", "--q", "2", "--h", "3", "--format", "json")
        assert code == 0
        assert json.loads(out)["check"] is None

    def test_table_and_latex(self, capsys):
        _, out, _ = run(capsys, "expand", "--n", "2")
        assert "1 + h" in out and "y^2" in out
        _, out, _ = run(capsys, "expand", "--n", "2", "--format", "latex")
        assert out.strip() == r"(x + y)^{2} = x^{2} + 2\, y x + \left(1 + h\right) y^{2}"

    def test_naive_strategy(self, capsys):
        assert run(capsys, "expand", "--n", "5", "--strategy", "naive")[0] == 0

    def test_mismatch_exits_nonzero(self, capsys, monkeypatch):
        real = binomials.h_binomial
        monkeypatch.setattr(binomials, "h_binomial", lambda n, k: real(n, k) + (ONE if k == 2 else 0))
        code, out, err = run(capsys, "expand", "--n", "3")
        assert code == 1
        assert out == ""
        assert "k=2" in err

    def test_negative_n(self, capsys):
        assert run(capsys, "expand", "--n", "-1")[0] == 2


class TestCoeff:
    @pytest.mark.parametrize("h, expected", [("1", "12"), ("0", "6"), ("sym", "6 + 6*h")])
    def test_values(self, capsys, h, expected):
        code, out, _ = run(capsys, "coeff", "--n", "4", "--k", "2", "--h", h)
        assert code == 0
        assert out.splitlines()[0] == f"[4 2] = {expected}"
        assert out.splitlines()[1].startswith("provenance:")

    def test_symbolic(self, capsys):
        _, out, _ = run(capsys, "coeff", "--n", "3", "--k", "2")
        assert out.startswith("[3 2] = 3 + 3*h")

    def test_out_of_range_is_zero(self, capsys):
        code, out, _ = run(capsys, "coeff", "--n", "3", "--k", "5")
        assert code == 0 and out.startswith("[3 5] = 0")

    def test_gaussian(self, capsys):
        _, out, _ = run(capsys, "coeff", "--n", "4", "--k", "2", "--q", "sym", "--h", "0")
        assert out.startswith("[4 2] = 1 + q + 2*q^2 + q^3 + q^4")
        assert "Pochhammer" in out

    def test_general_plane_uses_expansion(self, capsys):
        _, out, _ = run(capsys, "coeff", "--n", "2", "--k", "2", "--q", "2", "--h", "3")
        assert out.startswith("[2 2] = 4")  # y^2 coefficient: 1 + h at q=2 is 1 + 3
        assert "brute-force" in out

    def test_big_integers_are_strings(self, capsys):
        _, out, _ = run(capsys, "coeff", "--n", "30", "--k", "30", "--h", "1", "--format", "json")
        doc = json.loads(out)
        assert doc["coeff"] == [{"q": 0, "h": 0, "num": str(factorial(30)), "den": "1"}]


class TestTable:
    def test_symbolic(self, capsys):
        code, out, _ = run(capsys, "table", "--max-n", "2")
        assert code == 0
        assert out.splitlines()[1:] == ["n=0: 1", "n=1: 1 | 1", "n=2: 1 | 2 | 1 + h"]

    def test_classical(self, capsys):
        _, out, _ = run(capsys, "table", "--max-n", "2", "--h", "0")
        assert out.splitlines()[-1] == "n=2: 1 | 2 | 1"

    def test_h_one_diagonal(self, capsys):
        _, out, _ = run(capsys, "table", "--max-n", "3", "--h", "1", "--format", "json")
        entries = json.loads(out)["entries"]
        diag = [int(e["coeff"][0]["num"]) for e in entries if e["n"] == e["k"]]
        assert diag == [1, 1, 2, 6]
        assert [(e["n"], e["k"]) for e in entries] == sorted((e["n"], e["k"]) for e in entries)

    def test_gaussian(self, capsys):
        _, out, _ = run(capsys, "table", "--max-n", "2", "--q", "sym", "--h", "0")
        assert out.splitlines()[-1] == "n=2: 1 | 1 + q | 1"

    def test_limit(self, capsys):
        assert run(capsys, "table", "--max-n", "65")[0] == 2
        assert run(capsys, "table", "--max-n", "65", "--limit", "70")[0] == 0

    def test_general_plane_rejected(self, capsys):
        assert run(capsys, "table", "--max-n", "2", "--q", "2", "--h", "1")[0] == 2

    def test_validation_failure(self, capsys, monkeypatch):
        monkeypatch.setattr(binomials, "h_binomial", lambda n, k: ONE)
        assert run(capsys, "table", "--max-n", "3")[0] == 1

    def test_latex(self, capsys):
        _, out, _ = run(capsys, "table", "--max-n", "1", "--format", "latex")
        assert out.splitlines()[0] == r"\begin{array}{ll}"


class TestNormalize:
    @pytest.mark.parametrize(
        "expr, extra, expected",
        [
            ("x*y", [], "y*x + h*y^2"),
            ("x*y - y*x", ["--h", "0"], "0"),
            ("x^2*y", [], "y*x^2 + 2*h*y^2*x + 2*h^2*y^3"),
            ("x*y", ["--q", "sym"], "q*y*x + h*y^2"),
        ],
    )
    def test_examples(self, capsys, expr, extra, expected):
        code, out, _ = run(capsys, "normalize", expr, *extra)
        assert code == 0
        assert out.strip() == expected

    def test_parse_error(self, capsys):
        code, out, err = run(capsys, "normalize", "x*(y+")
        assert code == 2 and out == ""
        assert "position 6" in err

    def test_json(self, capsys):
        _, out, _ = run(capsys, "normalize", "x*y", "--format", "json")
        doc = json.loads(out)
        assert list(doc) == ["plane", "input", "terms"]
        assert [(t["y"], t["x"]) for t in doc["terms"]] == [(1, 1), (2, 0)]


class TestVerify:
    def test_trivial(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-n", "0")
        assert code == 0
        assert out.strip().endswith("10/10 checks passed")

    def test_small(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-n", "4")
        assert code == 0 and "FAIL" not in out

    def test_corrupted_coefficient(self, capsys, monkeypatch):
        real = binomials.h_binomial
        monkeypatch.setattr(binomials, "h_binomial", lambda n, k: real(n, k) * 2 if (n, k) == (3, 2) else real(n, k))
        code, out, err = run(capsys, "verify", "--max-n", "4")
        assert code == 1
        assert "FAIL" in out
        assert "n=3 k=2" in err


class TestBench:
    def test_both(self, capsys):
        code, out, _ = run(capsys, "bench", "--max-n", "6")
        assert code == 0
        rows = out.splitlines()[1:]
        assert [r.split()[0] for r in rows] == ["naive", "batched"]

    def test_trivial(self, capsys):
        code, out, _ = run(capsys, "bench", "--max-n", "1", "--format", "json")
        assert code == 0
        assert [r["strategy"] for r in json.loads(out)["rows"]] == ["naive", "batched"]

    def test_empty_strategy_list(self, capsys):
        code, _, err = run(capsys, "bench", "--max-n", "3", "--strategy")
        assert code == 2
        assert "nothing to benchmark" in err


def test_bad_param_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["expand", "--n", "2", "--h", "one"])
    assert info.value.code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["expand", "--n", "4", "--format", "json"],
        ["table", "--max-n", "5", "--format", "latex"],
        ["normalize", "(x+y)^3 - q*h", "--q", "sym"],
    ],
)
def test_deterministic(capsys, argv):
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hplane", "coeff", "--n", "4", "--k", "2", "--h", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("[4 2] = 12")
