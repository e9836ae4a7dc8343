"""End-to-end command line tests through cli.main."""

import json

import pytest

from jordan2 import cli
from jordan2.classify import CanonicalClass, canonical_law
from jordan2.contract import (ContractionFamily, LaurentPoly,
                              family_to_document)
from jordan2.core import JordanLaw, law_to_document
from jordan2.scalars import RATIONAL_MODE


def _write_law(tmp_path, law, name="law.json"):
    path = tmp_path / name
    path.write_text(json.dumps(law_to_document(law)))
    return str(path)


def _write_family(tmp_path, fam, name="family.json"):
    path = tmp_path / name
    path.write_text(json.dumps(family_to_document(fam)))
    return str(path)


# --- check ------------------------------------------------------------------

def test_check_jordan_law(tmp_path, capsys):
    path = _write_law(tmp_path, canonical_law(CanonicalClass.PSI0))
    assert cli.main(["check", path]) == 0
    out = capsys.readouterr().out
    assert "is_jordan: True" in out


def test_check_zero_law_is_jordan(tmp_path, capsys):
    path = _write_law(tmp_path, canonical_law(CanonicalClass.ABELIAN))
    assert cli.main(["check", path]) == 0


def test_check_non_jordan_law(tmp_path, capsys):
    law = JordanLaw.from_matrix2(((0, 1), (1, 0), (0, 0)), RATIONAL_MODE)
    path = _write_law(tmp_path, law)
    assert cli.main(["check", path]) == 1
    assert "is_jordan: False" in capsys.readouterr().out


def test_check_json_output_parses(tmp_path, capsys):
    path = _write_law(tmp_path, canonical_law(CanonicalClass.PSI4))
    assert cli.main(["check", "--json", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["is_jordan"] is True
    assert len(doc["residuals"]) == 12


# --- classify ---------------------------------------------------------------

@pytest.mark.parametrize("cls", list(CanonicalClass))
def test_classify_canonical(tmp_path, capsys, cls):
    path = _write_law(tmp_path, canonical_law(cls))
    assert cli.main(["classify", path]) == 0
    assert "class: %s" % cls.value in capsys.readouterr().out


def test_classify_with_witness_json(tmp_path, capsys):
    from jordan2.core import LinearMap, act
    law = act(canonical_law(CanonicalClass.PSI5),
              LinearMap(((1, 2), (1, 3)), RATIONAL_MODE))
    path = _write_law(tmp_path, law)
    assert cli.main(["classify", "--witness", "--json", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["class"] == "psi5"
    assert doc["witness"] is not None


# --- orbit / gspace ---------------------------------------------------------

def test_orbit_dimension(tmp_path, capsys):
    path = _write_law(tmp_path, canonical_law(CanonicalClass.PSI3))
    assert cli.main(["orbit", path]) == 0
    assert "orbit_dim: 2" in capsys.readouterr().out


def test_gspace_json(tmp_path, capsys):
    path = _write_law(tmp_path, canonical_law(CanonicalClass.PSI4))
    assert cli.main(["gspace", "--json", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["g_dim"] == 2
    assert len(doc["g_basis"]) == 2


# --- rigidity / forbidden ---------------------------------------------------

def test_rigidity_rigid_class(capsys):
    code = cli.main(["rigidity", "--class", "psi0", "--eps", "1e-3",
                     "--samples", "20", "--seed", "9"])
    assert code == 0
    assert "empirically rigid at this radius: True" in capsys.readouterr().out


def test_rigidity_non_rigid_class(capsys):
    code = cli.main(["rigidity", "--class", "psi1", "--eps", "1e-3",
                     "--samples", "40", "--seed", "9"])
    assert code == 1


def test_rigidity_deterministic_output(capsys):
    argv = ["rigidity", "--class", "psi2", "--eps", "1e-3",
            "--samples", "25", "--seed", "12", "--json"]
    cli.main(argv)
    first = capsys.readouterr().out
    cli.main(argv)
    second = capsys.readouterr().out
    assert first == second


def test_rigidity_requires_seed(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["rigidity", "--class", "psi0", "--eps", "1e-3",
                  "--samples", "5"])
    assert exc.value.code == 2


def test_rigidity_unknown_class(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["rigidity", "--class", "psi9", "--eps", "1e-3",
                  "--samples", "5", "--seed", "1"])
    assert exc.value.code == 2


def test_forbidden(capsys):
    code = cli.main(["forbidden", "--eps", "1e-3", "--samples", "30",
                     "--seed", "4"])
    assert code == 0
    out = capsys.readouterr().out
    assert "psi5 count: 0" in out
    assert "verdict: PASS" in out


# --- contract ---------------------------------------------------------------

S = LaurentPoly.term(1, 1)
ONE = LaurentPoly.const(1)


def test_contract_limit(tmp_path, capsys):
    law = _write_law(tmp_path, canonical_law(CanonicalClass.PSI5))
    fam = _write_family(tmp_path, ContractionFamily.diag([ONE, S]))
    assert cli.main(["contract", "--law", law, "--family", fam]) == 0
    out = capsys.readouterr().out
    assert "outcome: limit" in out
    assert "class: psi1" in out


def test_contract_pole_exit_code(tmp_path, capsys):
    law = _write_law(tmp_path, canonical_law(CanonicalClass.PSI3))
    fam = _write_family(tmp_path, ContractionFamily.diag([ONE, S]))
    assert cli.main(["contract", "--law", law, "--family", fam]) == 1
    assert "outcome: pole at s=0" in capsys.readouterr().out


def test_contract_pole_json(tmp_path, capsys):
    law = _write_law(tmp_path, canonical_law(CanonicalClass.PSI3))
    fam = _write_family(tmp_path, ContractionFamily.diag([ONE, S]))
    assert cli.main(["contract", "--law", law, "--family", fam,
                     "--json"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["outcome"] == "pole_at_0"
    assert doc["valuation"] == -1


def test_contract_missing_file(tmp_path, capsys):
    fam = _write_family(tmp_path, ContractionFamily.diag([ONE, S]))
    code = cli.main(["contract", "--law", str(tmp_path / "absent.json"),
                     "--family", fam])
    assert code == 2


# --- graph / catalogue --------------------------------------------------------

def test_graph_text(capsys):
    assert cli.main(["graph"]) == 0
    lines = [ln for ln in capsys.readouterr().out.splitlines() if "->" in ln]
    assert len(lines) == 13


def test_graph_dot(capsys):
    assert cli.main(["graph", "--dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph")
    assert out.count("->") == 13


def test_graph_csv(capsys):
    assert cli.main(["graph", "--csv"]) == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert rows[0] == "source,target"
    assert len(rows) == 14


def test_catalogue_round_trip(tmp_path, capsys):
    assert cli.main(["catalogue", "--json"]) == 0
    docs = json.loads(capsys.readouterr().out)
    assert len(docs) == 7
    from jordan2.core import law_from_document
    for doc in docs:
        cls = CanonicalClass(doc.pop("class"))
        law = law_from_document(doc)
        assert law == canonical_law(cls)


# --- usage errors -------------------------------------------------------------

def test_no_command_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2


def test_bad_law_file_is_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert cli.main(["classify", str(path)]) == 2
