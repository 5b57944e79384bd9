import json

import pytest
from qplane.cli import main


def test_normalize(capsys) -> None:
    assert main(["normalize", "x*y"]) == 0
    assert capsys.readouterr().out.strip() == "q*y*x"


def test_normalize_float(capsys) -> None:
    assert main(["normalize", "--mode", "float", "--q", "0.5", "x*y"]) == 0
    assert capsys.readouterr().out.strip() == "(0.5)*y*x"


def test_normalize_csv(capsys) -> None:
    assert main(["normalize", "--format", "csv", "x*y"]) == 0
    assert capsys.readouterr().out.splitlines()[:2] == ["k,l,coefficient", "1,1,q"]


def test_convert_to_omega(capsys) -> None:
    assert main(["convert", "--to", "omega", "y^2*x^2"]) == 0
    assert capsys.readouterr().out.strip() == "q^-3*u^2"


def test_convert_to_pairs_json(capsys) -> None:
    assert main(["convert", "--to", "pairs", "--convention", "rphixy", "--format", "json", "u"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["convention"] == "rphixy"
    assert len(data["entries"]) == 2


def test_seminorm(capsys) -> None:
    assert main(["seminorm", "--family", "dosi_prime", "--r", "2", "--index", "3", "y^2*x^3"]) == 0
    assert capsys.readouterr().out.startswith("dosi_prime index=3 r=2.0 value=")


def test_rep_eta(capsys) -> None:
    assert main(["rep", "--what", "eta", "--trunc", "4", "x*u"]) == 0
    assert capsys.readouterr().out.strip() == "1: [0, 0, q^2, 0]"


def test_rep_growth_csv(capsys) -> None:
    code = main(["rep", "--what", "growth", "--mode", "float", "--q", "0.5", "--nmax", "3",
                 "--format", "csv"])
    assert code == 0
    assert capsys.readouterr().out.splitlines()[0] == "n,estimate,reference"


def test_verify(capsys) -> None:
    assert main(["verify", "--suite", "coefficients", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["counts"]["PASS"] == 60


def test_verify_float(capsys) -> None:
    code = main(["verify", "--suite", "representations", "--mode", "float", "--q", "0.5",
                 "--trunc", "8", "--format", "json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["counts"]["PASS"] == 130
    assert data["counts"]["FAIL"] == 0


def test_seminorm_cw_with_weight(capsys) -> None:
    assert main(["seminorm", "--family", "cw", "--r", "2", "--weight-s", "1/2", "x*y"]) == 0
    assert capsys.readouterr().out.startswith("cw index=0 r=2.0 value=")


def test_out_file(tmp_path) -> None:
    path = tmp_path / "report.txt"
    assert main(["normalize", "--out", str(path), "y*x"]) == 0
    assert path.read_text().strip() == "y*x"


@pytest.mark.parametrize('argv', [
    ["normalize", "x*("],
    ["rep", "--q", "0"],
    ["seminorm", "--family", "dosi_prime", "--q", "2", "x"],
    ["rep", "--what", "growth", "u"],
    ["rep", "--what", "truncation", "--q", "1"],
    ["verify", "--suite", "sile", "--trunc", "1"],
    ["seminorm", "--family", "bq12", "x"],
    ["seminorm", "--family", "cw", "--weight-s", "2", "u"],
    ["convert", "--to", "betagamma", "--format", "csv", "u"],
], ids=['syntax', 'zero_q', 'no_contraction', 'growth_needs_float', 'truncation_q_one',
        'small_trunc', 'not_pure_u', 'weight_out_of_range', 'no_csv'])
def test_config_errors(capsys, argv) -> None:
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("[error]")
