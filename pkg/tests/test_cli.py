import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from equivl import errors
from equivl.catalogue import SHIPPED, load_catalogue
from equivl.catalogue.build import build, dumps, file_name
from equivl.cli import main
from equivl.tables import Table, tables_from_json

FIXTURES = Path(__file__).parent / "fixtures"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run("--format", "json", *argv)
    assert code in (0, 2)
    return code, tables_from_json(out)


def test_lpoly():
    code, tables = run_json("lpoly", "--max-j", "2")
    rows = tables[0].rows
    assert code == 0
    assert rows[0][1] == "L0 = 1"
    assert rows[1][1] == "L1 = 1/3 p1"
    assert "7/45" in rows[2][1] and "-1/45" in rows[2][1].replace("- 1/45", "-1/45")
    assert all(r[2] == "yes" for r in rows)
    _, text, _ = run("lpoly", "--max-j", "3")
    assert "62/945 p3 - 13/945 p1 p2 + 2/945 p1^3" in text


def test_group_orient():
    code, text, _ = run("group", "orient", "O2")
    assert code == 0
    assert "O2: NOT bi-invariantly orientable; witness [[0,1],[1,0]]" in text
    _, text, _ = run("group", "orient", "S1")
    assert "S1: bi-invariantly orientable" in text


def test_tower_commands():
    _, tables = run_json("tower", "dims", "S1", "--k", "4")
    assert tables[0].rows == [["4", "9", "8"]]
    _, tables = run_json("tower", "orient", "Z2")
    assert [r[1] for r in tables[0].rows] == ["yes", "no"] * 4


def test_point_homology():
    _, tables = run_json("point-homology", "S1", "--j-min", "-4", "--j-max", "0")
    rows = {int(r[0]): r for r in tables[0].rows}
    assert rows[0][1:3] == ["1", "2"]
    assert rows[0][-2].startswith("[BS1_2] -> [BS1_3]")
    assert rows[-3][1] == "0"
    assert rows[-4][1:3] == ["1", "5"]
    assert rows[-4][-2].startswith("tau_5^2 -> tau_6^2")
    assert rows[-2][-1] == "yes"


def test_point_homology_stage_table():
    _, tables = run_json("point-homology", "S1", "--j-min", "0", "--stage-table")
    assert len(tables) == 2
    assert tables[1].rows[16][1:] == ["0"] * 7 + ["[BS1_8]*"]


def test_catalogue_depth_is_a_data_error():
    code, _, err = run("point-homology", "S1", "--j-min", "-9")
    assert code == 1 and "CatalogueDepth" in err


def test_equiv_lclass():
    _, tables = run_json("equiv-lclass", "S2_trivial_S1")
    row = tables[0].rows[0]
    assert row[0] == "2" and row[3] == "[pt]_S1 x [S2]" and row[5] == "yes"
    _, tables = run_json("equiv-lclass", "CP2_trivial_group", "--j-min", "0")
    values = {r[0]: r[3] for r in tables[0].rows}
    assert values["4"] == "[pt] x [CP2]" and values["0"] == "[pt] x [pt]" and values["2"] == "0"


@pytest.mark.parametrize("name", ["pt_S1", "pt_trivial", "S2_trivial_S1", "S2_trivial_group",
                                  "CP2_trivial_S1", "CP2_trivial_group", "S3_free_S1"])
def test_check_shipped_actions(name):
    code, tables = run_json("check", name)
    assert code == 0
    assert all(r[1] in ("pass", "skipped") for r in tables[0].rows)
    statuses = {r[0]: r[1] for r in tables[0].rows}
    assert statuses["compatibility"] == statuses["top-degree law"] == "pass"


def test_check_perturbed_fixture_fails():
    code, out, _ = run("--catalogue", str(FIXTURES / "perturbed"), "check", "CP2_explicit_perturbed")
    assert code == 2
    assert "first failure at k=2, equivariant degree 0" in out


def test_check_unperturbed_fixture_passes():
    code, out, _ = run("--catalogue", str(FIXTURES / "explicit_ok"), "check", "CP2_explicit")
    assert code == 0
    assert "| compatibility  | pass" in out


def test_unknown_entries_exit_1():
    code, _, err = run("check", "nosuch")
    assert code == 1 and "CatalogueError" in err
    code, _, _ = run("group", "orient", "nosuch")
    assert code == 1


def test_exit_codes_follow_error_classes():
    data = [c for c in vars(errors).values() if isinstance(c, type) and issubclass(c, errors.DataError)]
    cert = [c for c in vars(errors).values() if isinstance(c, type) and issubclass(c, errors.CertificateError)]
    assert data and cert
    assert {c.exit_code for c in data} == {1}
    assert {c.exit_code for c in cert} == {2}


def test_json_round_trip():
    for argv in (["lpoly", "--max-j", "4"], ["point-homology", "S1", "--stage-table"],
                 ["equiv-lclass", "CP2_trivial_S1"], ["check", "S3_free_S1"], ["catalogue", "validate"]):
        _, text, _ = run("--format", "json", *argv)
        tables = tables_from_json(text)
        _, md, _ = run(*argv)
        assert "".join(t.to_markdown() + "\n" for t in tables).rstrip("\n") == md.rstrip("\n")
        for t in tables:
            assert Table.from_json(t.to_json()) == t


def test_csv_output():
    _, text, _ = run("--format", "csv", "tower", "dims", "S1")
    lines = text.splitlines()
    assert lines[0] == "k,dim EG_k,dim BG_k" and lines[1] == "1,3,2"


def test_catalogue_validate():
    code, tables = run_json("catalogue", "validate")
    rows = tables[0].rows
    assert code == 0
    prov = {(r[0], r[1]): r[2] for r in rows}
    assert prov[("tower", "S1")] == "paper-table"
    assert prov[("space", "CP2")] == "derived"
    assert len(rows) == 24


def test_shipped_data_matches_builder():
    docs = build()
    files = {p.relative_to(SHIPPED) for p in SHIPPED.glob("*/*.json")}
    assert files == {Path(kind) / file_name(name) for kind, name in docs}
    for (kind, name), doc in docs.items():
        assert (SHIPPED / kind / file_name(name)).read_text() == dumps(doc)


def test_shadowing_needs_flag(tmp_path):
    (tmp_path / "spaces").mkdir()
    shutil.copy(SHIPPED / "spaces" / "CP2.json", tmp_path / "spaces" / "CP2.json")
    code, _, err = run("--catalogue", str(tmp_path), "catalogue", "validate")
    assert code == 1 and "--allow-shadow" in err
    code, _, _ = run("--catalogue", str(tmp_path), "--allow-shadow", "catalogue", "validate")
    assert code == 0
    cat = load_catalogue([tmp_path], allow_shadow=True)
    assert cat.sources[("spaces", "CP2")].startswith(str(tmp_path))


def test_environment_root(tmp_path, monkeypatch):
    root = tmp_path / "cat"
    shutil.copytree(SHIPPED, root)
    (root / "actions" / "S3_free_S1.json").unlink()
    monkeypatch.setenv("EQUIVL_CATALOGUE", str(root))
    code, _, err = run("check", "S3_free_S1")
    assert code == 1 and "no action named" in err
    assert run("check", "pt_S1")[0] == 0
    monkeypatch.setenv("EQUIVL_CATALOGUE", str(tmp_path / "missing"))
    assert run("catalogue", "validate")[0] == 1


def test_malformed_user_document(tmp_path):
    (tmp_path / "spaces").mkdir()
    (tmp_path / "spaces" / "bad.json").write_text("{not json")
    code, _, err = run("--catalogue", str(tmp_path), "catalogue", "validate")
    assert code == 1 and "MalformedDocument" in err
    doc = json.loads((SHIPPED / "spaces" / "CP2.json").read_text())
    doc["name"] = "CP2_bad"
    doc["evaluation"] = {"t": "1"}
    (tmp_path / "spaces" / "bad.json").write_text(json.dumps(doc))
    code, _, err = run("--catalogue", str(tmp_path), "catalogue", "validate")
    assert code == 1 and "FailedAxiomCheck" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "equivl", "tower", "dims", "trivial", "--k", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "| 3 | 0        | 0        |" in proc.stdout
