import json

import pytest

from crsym.cli import main, parse_grid, parse_params
from crsym.errors import InvalidParams


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", "--poly", "Re(Z1*z2^2)")
    assert code == 0
    assert "dim g = 10" in out and "table row: T1" in out


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "--poly", "z1*Z1 + (z2*Z2)^2", "--json")
    data = json.loads(out)
    assert code == 0 and data["schema_version"] == 1
    assert sum(c["dim"] for c in data["components"]) == 9
    assert data["weights"] == {"mu1": "1/2", "mu2": "1/4"}


def test_json_independent_of_threads(capsys, monkeypatch):
    outs = []
    for n in ("1", "2"):
        monkeypatch.setenv("CRSYM_THREADS", n)
        code, out, _ = run(capsys, "analyze", "--poly", "Re(Z1*z2^2)", "--json")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_strip_pluriharmonic(capsys):
    code, out, _ = run(capsys, "analyze", "--poly", "Re(Z1*z2^2) + Re(z2^3)", "--strip-pluriharmonic")
    assert code == 0 and "stripped pluriharmonic" in out and "dim g = 10" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--poly", "z1*Z2"],  # not real
        ["analyze", "--poly", "z1 +"],  # syntax
        ["analyze", "--poly", "Re(z2^2)"],  # pluriharmonic only
        ["analyze"],  # missing option
        ["nonsense"],
        ["catalog", "--row", "T1", "--params", "alpha=1"],
        ["catalog", "--row", "T99"],
        ["chains", "build", "--params", "p=1,q=1"],
    ],
)
def test_input_errors_exit_1(capsys, argv):
    code = None
    try:
        code = main(argv)
    except SystemExit as e:
        code = e.code
    assert code == 1


def test_catalog_build_and_verify(capsys):
    code, out, _ = run(capsys, "catalog", "--row", "T2", "--params", "k=1,m=2")
    assert code == 0 and out.strip()
    code, out, _ = run(capsys, "catalog", "--row", "T2", "--params", "k=1,m=2", "--verify")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_catalog_verify_mismatch_exit_2(capsys):
    code, out, _ = run(capsys, "catalog", "--row", "T5", "--params", "alpha=2", "--Q", "Re(z2^2*Z2)", "--verify")
    assert code == 2 and json.loads(out)["status"] == "fail"


def test_table_check_with_grid(capsys, tmp_path):
    grid = tmp_path / "grid.txt"
    grid.write_text("# small sweep\nT1 alpha=2..3\nGN9 l=2\n")
    code, out, _ = run(capsys, "table-check", "--grid", str(grid))
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert lines[-1] == {"summary": {"instances": 3, "passed": 3}}


def test_chains_build(capsys):
    code, out, _ = run(capsys, "chains", "build", "--params", "p=1,q=1,alpha=1,beta=0,K=2,N=0,m=1")
    data = json.loads(out)
    assert code == 0
    assert data["U"] == ["z1*z2^2", "z1^2*z2^2"]
    assert data["closed_form_matches"] and data["field_is_symmetry"]


def test_chains_verify(capsys, tmp_path):
    path = tmp_path / "s5.json"
    path.write_text(json.dumps(["z1^4 + z2^2*z1^3", "2*z2*z1^8", "2*z1^13"]))
    poly = "8*(z1*Z1)^3*Re(z1^5*Z2)^2 + 4*(z1*Z1)^4*Re(z1^9)"
    code, out, _ = run(capsys, "chains", "verify", "--poly", poly, "--field", "i*z1^5*d2", "--chains", str(path))
    data = json.loads(out)
    assert code == 0 and data["xpair"] and data["chain_sum_equals_poly"]
    code, _, _ = run(capsys, "chains", "verify", "--poly", "z1*Z1", "--field", "i*z1^5*d2", "--chains", str(path))
    assert code == 1


def test_parse_params_and_grid():
    assert parse_params("k=1, m=2") == {"k": 1, "m": 2}
    assert parse_grid("T2 k=1..2 m=2,3  # c\n\n") == {"T2": {"k": [1, 2], "m": [2, 3]}}
    with pytest.raises(InvalidParams):
        parse_params("k")
    with pytest.raises(InvalidParams):
        parse_grid("T2 k=a..b")
