"""Command-line behavior: reports, exit codes, determinism."""

import json
from importlib import resources

import pytest

from cotrace.cli import main, parse_space, run_command
from cotrace.graded_ring import CohomologyModel
from cotrace.manifests import dumps_canonical, space_to_dict
from cotrace.zoo import complex_projective, torus


def fixture_path(kind, name):
    return str(resources.files("cotrace") / "data" / kind / name)


IDENTITY_CP2 = fixture_path("maps", "identity-on-cp2.json")
S2_DEGREE_2 = fixture_path("maps", "s2-degree-2.json")
CP2_SPACE = fixture_path("spaces", "cp2.json")


def run(argv):
    report, code = run_command(argv)
    return report, code


# ======================================================================
# exit-code contract
# ======================================================================

def test_lefschetz_identity_cp2_reports_three():
    report, code = run(["lefschetz", "--map", IDENTITY_CP2])
    assert code == 0
    assert report["status"] == "ok"
    assert report["results"]["lambda"] == 3
    assert report["command"] == "lefschetz"
    assert len(report["inputs"]) == 64


def test_missing_orientation_exits_3(tmp_path):
    manifest = space_to_dict(complex_projective(2))
    del manifest["orientation"]
    path = tmp_path / "no-orientation.json"
    path.write_text(json.dumps(manifest), encoding="utf-8")
    report, code = run(["validate", str(path)])
    assert code == 3
    assert report["status"] == "error"
    assert report["error"]["code"] == "invalid-model"
    assert any("orientation" in v for v in report["error"]["violations"])


def test_degree_out_of_range_exits_2(tmp_path):
    manifest = space_to_dict(complex_projective(2))
    manifest["groups"]["5"] = {"free": ["w"], "torsion": []}
    path = tmp_path / "overshoot.json"
    path.write_text(json.dumps(manifest), encoding="utf-8")
    report, code = run(["validate", str(path)])
    assert code == 2
    assert report["error"]["code"] == "bad-input"


def test_unreadable_file_exits_2(tmp_path):
    report, code = run(["lefschetz", "--map", str(tmp_path / "absent.json")])
    assert code == 2
    assert report["error"]["code"] == "bad-input"


def test_malformed_json_exits_2(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    report, code = run(["validate", str(path)])
    assert code == 2


def test_computation_error_exits_1(tmp_path):
    f = {"name": "f", "source": "S2", "target": "S1", "matrices": {}}
    fp = tmp_path / "f.json"
    fp.write_text(json.dumps(f), encoding="utf-8")
    report, code = run(["coincide", "--f", str(fp), "--g", str(fp)])
    assert code == 1
    assert report["error"]["code"] == "computation-error"


def test_unreachable_server_exits_1():
    report, code = run(["--server", "http://127.0.0.1:9",
                        "s1bundle", "--n", "2", "--k", "2"])
    assert code == 1
    assert report["error"]["code"] == "unreachable"


# ======================================================================
# command surface
# ======================================================================

def test_s1bundle_report():
    report, code = run(["s1bundle", "--n", "2", "--k", "2"])
    assert code == 0
    results = report["results"]
    assert results["trace"] == "1 mod 2"
    assert results["nonzero"] is True
    assert results["nielsen_tilde"] == 1
    assert results["H1_hoeq"]["torsion"] == [2]


def test_sphere_report():
    report, code = run(["sphere", "--m", "3", "--n", "2",
                        "--hopf-f", "1", "--hopf-g", "0"])
    assert code == 0
    assert report["results"]["trace_value"] == 1
    assert report["results"]["regime"] == "hopf"


def test_coincide_with_fixture_maps():
    report, code = run(["coincide", "--f", S2_DEGREE_2,
                        "--g", S2_DEGREE_2])
    assert code == 0
    assert report["results"]["primary_class"]["coefficients"] == {"u": 4}


def test_selfcoincide_fixture():
    report, code = run(["selfcoincide", "--f", IDENTITY_CP2])
    assert code == 0
    assert report["results"]["chi_target"] == 3


def test_gysin_builtin_base():
    report, code = run(["gysin", "--base", "CP2", "--euler", "x"])
    assert code == 0
    resolved = [d["resolved"]["free_rank"] for d in report["results"]["degrees"]]
    assert resolved == [1, 0, 0, 0, 0, 1]


def test_gysin_base_from_file():
    report, code = run(["gysin", "--base", CP2_SPACE, "--euler", "3*x"])
    assert code == 0
    assert report["results"]["euler"] == {"x": 3}
    assert report["results"]["degrees"][2]["resolved"]["torsion"] == [3]


def test_snf_command(tmp_path):
    path = tmp_path / "matrix.json"
    path.write_text("[[2, 4], [6, 8]]", encoding="utf-8")
    report, code = run(["snf", "--matrix", str(path)])
    assert code == 0
    assert report["results"]["diagonal"] == [2, 4]
    assert report["results"]["cokernel"]["pretty"] == "Z/2 + Z/4"


def test_validate_good_space():
    report, code = run(["validate", CP2_SPACE])
    assert code == 0
    assert report["results"]["valid"] is True
    assert report["results"]["kind"] == "space"


def test_validate_map_manifest():
    report, code = run(["validate", IDENTITY_CP2])
    assert code == 0
    assert report["results"]["kind"] == "map"


def test_extra_space_flag(tmp_path):
    cp2 = space_to_dict(complex_projective(2))
    cp2["name"] = "mine"
    space_file = tmp_path / "mine.json"
    space_file.write_text(json.dumps(cp2), encoding="utf-8")
    manifest = {"name": "idmine", "source": "mine", "target": "mine",
                "matrices": {"2": [[1]], "4": [[1]]}}
    map_file = tmp_path / "idmine.json"
    map_file.write_text(json.dumps(manifest), encoding="utf-8")
    report, code = run(["lefschetz", "--map", str(map_file),
                        "--space", str(space_file)])
    assert code == 0
    assert report["results"]["lambda"] == 3


# ======================================================================
# determinism and helpers
# ======================================================================

def test_reports_are_byte_identical(capsys):
    assert main(["s1bundle", "--n", "3", "--k", "4"]) == 0
    first = capsys.readouterr().out
    assert main(["s1bundle", "--n", "3", "--k", "4"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert first.endswith("\n")
    json.loads(first)


def test_report_is_canonical_json():
    report, _ = run(["sphere", "--m", "5", "--n", "3"])
    text = dumps_canonical(report)
    assert json.loads(text) == report


def test_parse_space_helper():
    model = parse_space(CP2_SPACE)
    assert isinstance(model, CohomologyModel)
    assert model == complex_projective(2)


def test_parse_space_rejects_invalid(tmp_path):
    from cotrace.errors import ModelInvalid
    manifest = space_to_dict(torus())
    del manifest["orientation"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(manifest), encoding="utf-8")
    with pytest.raises(ModelInvalid):
        parse_space(str(path))
