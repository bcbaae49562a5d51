"""End-to-end checks of the command line interface via ``main``."""

import json

import pytest

from hwpreg.cli import main
from hwpreg.solutions import SOLUTION_IDS, parse_solution_dict, verify_solution

TARGET_24_9_2 = {
    "group": "Q24",
    "target": {"r": 9, "s": 2},
    "signature": [
        {"cycle_length": 4, "orbit_length": 1, "subgroup": "G"},
        {"cycle_length": 4, "orbit_length": 1, "subgroup": "G"},
        {"cycle_length": 3, "orbit_length": 3, "subgroup": "L"},
        {"cycle_length": 3, "orbit_length": 6, "subgroup": "H"},
    ],
    "subgroups": {"L": ["a2b", "a3"], "H": ["b"]},
    "budget": {"nodes": 10_000_000},
}


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_list_human(capsys):
    code, out, err = run(capsys, "list")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert len(lines) == len(SOLUTION_IDS) == 9
    assert lines[0].startswith("48-5-18") and "2O" in lines[0]
    assert any("SL23" in line and "r=5" in line for line in lines)


def test_list_canonical_is_byte_deterministic(capsys):
    first = run(capsys, "list", "--format", "canonical")
    second = run(capsys, "list", "--format", "canonical")
    assert first == second
    rows = json.loads(first[1])
    assert [row["id"] for row in rows] == list(SOLUTION_IDS)
    assert rows[0] == {"id": "48-5-18", "group": "2O", "v": 48, "r": 5, "s": 18}


def test_verify_bundled_passes(capsys):
    code, out, _ = run(capsys, "verify", "24-7-4")
    assert code == 0
    assert "PASS" in out and "264/264" in out


def test_verify_canonical_deterministic(capsys):
    first = run(capsys, "verify", "48-9-14", "--format", "canonical")
    second = run(capsys, "verify", "48-9-14", "--format", "canonical")
    assert first == second and first[0] == 0
    doc = json.loads(first[1])
    assert doc["verdict"] == "pass"
    assert (doc["v"], doc["r"], doc["s"]) == (48, 9, 14)


def test_verify_out_writes_canonical_certificate(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "verify", "24-9-2", "--out", str(path))
    assert code == 0 and "PASS" in out  # stdout stays human
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert doc["verdict"] == "pass"
    assert doc["edge_coverage"]["covered_once"] == 264


def test_verify_corrupted_file_fails_with_witness(tmp_path, capsys, doc_copy):
    doc = doc_copy("24-9-2")
    doc["cycles"]["C4"][1] = "a10b"
    doc.pop("annotations", None)
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1
    assert "FAIL" in out and "witness" in out


def test_verify_unknown_token(capsys):
    code, out, err = run(capsys, "verify", "no-such-solution")
    assert code == 2 and out == ""
    assert "neither a bundled solution id nor a file" in err


def test_verify_malformed_file(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text('{"id": "x"}', encoding="utf-8")
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and "bad solution document" in err


def test_omega_human_exact(capsys):
    code, out, _ = run(capsys, "omega", "48-5-18", "C4")
    assert code == 0
    assert out == "{k}^{±1}\n"


def test_omega_canonical(capsys):
    code, out, _ = run(capsys, "omega", "24-9-2", "C3", "--format", "canonical")
    assert code == 0
    doc = json.loads(out)
    assert doc["solution"] == "24-9-2" and doc["cycle"] == "C3"
    assert len(doc["members"]) == 2 * len(doc["representatives"])


def test_omega_unknown_cycle(capsys):
    code, _, err = run(capsys, "omega", "24-9-2", "C9")
    assert code == 2 and "unknown cycle" in err


def test_orbit_human(capsys):
    code, out, _ = run(capsys, "orbit", "24-9-2", "C4", "H")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "Orb[H](C4): 4 cycles of length 3, stabilizer order 1"
    assert len(lines) == 5 and lines[1] == "  (1, a3b, a8b)"


def test_orbit_canonical(capsys):
    code, out, _ = run(capsys, "orbit", "24-9-2", "C4", "H", "--format", "canonical")
    assert code == 0
    doc = json.loads(out)
    assert doc["orbit_length"] == 4 and doc["stabilizer_order"] == 1
    assert len(doc["cycles"]) == 4 and all(len(c) == 3 for c in doc["cycles"])


def test_orbit_whole_group(capsys):
    # C1 spans a subgroup of order 4, so its G-orbit has 6 translates
    code, out, _ = run(capsys, "orbit", "24-9-2", "C1", "G", "--format", "canonical")
    assert code == 0
    doc = json.loads(out)
    assert doc["orbit_length"] == 6 and doc["stabilizer_order"] == 4


def test_orbit_unknown_subgroup(capsys):
    code, _, err = run(capsys, "orbit", "24-9-2", "C1", "Z")
    assert code == 2 and "unknown subgroup" in err


def test_search_cli_finds_and_output_verifies(tmp_path, capsys):
    target = tmp_path / "target.json"
    target.write_text(json.dumps(TARGET_24_9_2), encoding="utf-8")
    found = tmp_path / "found.json"
    code, out, _ = run(capsys, "search", str(target), "--out", str(found))
    assert code == 0
    assert "found" in out
    doc = json.loads(found.read_text(encoding="utf-8"))
    cert = verify_solution(parse_solution_dict(doc))
    assert cert.ok and (cert.v, cert.r, cert.s) == (24, 9, 2)


def test_search_cli_budget_override(tmp_path, capsys):
    target = tmp_path / "target.json"
    target.write_text(json.dumps(TARGET_24_9_2), encoding="utf-8")
    out_file = tmp_path / "found.json"
    code, out, _ = run(
        capsys, "search", str(target), "--budget-nodes", "30", "--out", str(out_file)
    )
    assert code == 1
    assert "budget-exceeded" in out
    assert not out_file.exists()  # nothing found, nothing written


def test_search_cli_canonical(tmp_path, capsys):
    doc = dict(TARGET_24_9_2)
    doc["budget"] = {"nodes": 30}
    target = tmp_path / "target.json"
    target.write_text(json.dumps(doc), encoding="utf-8")
    code, out, _ = run(capsys, "search", str(target), "--format", "canonical")
    assert code == 1
    parsed = json.loads(out)
    assert parsed["verdict"] == "budget-exceeded"
    assert parsed["stats"]["nodes"] == 31


def test_search_cli_bad_target(tmp_path, capsys):
    target = tmp_path / "target.json"
    target.write_text('{"group": "Q24"}', encoding="utf-8")
    code, _, err = run(capsys, "search", str(target))
    assert code == 2 and "bad target document" in err
    code, _, err = run(capsys, "search", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read target" in err


def test_export_roundtrip(capsys):
    code, out, _ = run(capsys, "export", "24-5-6", "--format", "canonical")
    assert code == 0
    doc = json.loads(out)
    assert "annotations" not in doc
    assert verify_solution(parse_solution_dict(doc)).ok


def test_export_pretty_parses(capsys):
    code, out, _ = run(capsys, "export", "48-17-6")
    assert code == 0
    doc = json.loads(out)
    assert doc["id"] == "48-17-6" and doc["expected"] == {"v": 48, "r": 17, "s": 6}


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export", "24-9-2", "--dot")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == 'graph "24-9-2" {' and lines[-1] == "}"
    assert len(lines) == 264 + 2  # one line per edge of K24 minus a 1-factor
    assert all(" -- " in line for line in lines[1:-1])
    labels = {line.split('factor="')[1].rstrip('"];') for line in lines[1:-1]}
    assert labels == {"F1", "F2", "F3", "F4"}


def test_export_out_writes_file_only(tmp_path, capsys):
    path = tmp_path / "doc.json"
    code, out, _ = run(capsys, "export", "24-7-4", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text(encoding="utf-8"))["id"] == "24-7-4"


def test_verify_24_5_6_prints_notes(capsys):
    code, out, _ = run(capsys, "verify", "24-5-6")
    assert code == 0
    assert "(5, 5)" in out  # the parameters it is sometimes quoted with


@pytest.mark.parametrize("sid", SOLUTION_IDS)
def test_verify_every_bundled_solution(capsys, sid):
    code, out, _ = run(capsys, "verify", sid)
    assert code == 0 and "PASS" in out
