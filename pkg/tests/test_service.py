"""HTTP endpoint behavior and error-code mapping."""

import pytest
from fastapi.testclient import TestClient

from cotrace.graded_ring import identity_map
from cotrace.manifests import map_to_dict, space_to_dict
from cotrace.service import create_app
from cotrace.zoo import (
    complex_projective,
    sphere,
    sphere_degree_map,
    torus_map,
)


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(), raise_server_exceptions=False)


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"


def test_spaces_lists_builtins(client):
    body = client.get("/spaces").json()
    assert "CP2" in body["spaces"]
    assert body["spaces"] == sorted(body["spaces"])


# ======================================================================
# lefschetz
# ======================================================================

def test_lefschetz_identity_cp2(client):
    payload = {"map": map_to_dict(identity_map(complex_projective(2)))}
    response = client.post("/lefschetz", json=payload)
    assert response.status_code == 200
    body = response.json()
    assert body["lambda"] == 3
    assert body["source"] == "CP2"


def test_lefschetz_torus_frozen(client):
    payload = {"map": map_to_dict(torus_map([[2, 0], [0, 3]]))}
    body = client.post("/lefschetz", json=payload).json()
    assert body["lambda"] == 2


def test_lefschetz_rejects_non_self_map(client):
    manifest = map_to_dict(sphere_degree_map(2, 2))
    manifest["target"] = "S3"
    response = client.post("/lefschetz", json={"map": manifest})
    assert response.status_code == 400
    assert response.json()["code"] == "bad-input"


def test_lefschetz_with_user_space(client):
    cp2 = space_to_dict(complex_projective(2))
    cp2["name"] = "mine"
    manifest = {"name": "idmine", "source": "mine", "target": "mine",
                "matrices": {"2": [[1]], "4": [[1]]}}
    body = client.post("/lefschetz",
                       json={"map": manifest, "spaces": [cp2]}).json()
    assert body["lambda"] == 3


def test_invalid_user_space_is_422(client):
    cp2 = space_to_dict(complex_projective(2))
    del cp2["orientation"]
    manifest = map_to_dict(identity_map(complex_projective(2)))
    response = client.post("/lefschetz",
                           json={"map": manifest, "spaces": [cp2]})
    assert response.status_code == 422
    body = response.json()
    assert body["code"] == "invalid-model"
    assert any("orientation" in v for v in body["violations"])


def test_malformed_body_is_fastapi_422(client):
    response = client.post("/lefschetz", json={"maps": {}})
    assert response.status_code == 422
    assert "detail" in response.json()
    assert "code" not in response.json()


# ======================================================================
# coincidence
# ======================================================================

def test_coincide_even_sphere_degrees(client):
    payload = {"f": map_to_dict(sphere_degree_map(2, 4)),
               "g": map_to_dict(sphere_degree_map(2, 1))}
    body = client.post("/coincide", json=payload).json()
    assert body["primary_class"] == {"degree": 2, "coefficients": {"u": 5}}
    assert body["lambda_N"] == {"degree": 0, "coordinates": [5]}
    assert body["nonzero"] is True


def test_selfcoincide_identity_cp2(client):
    payload = {"f": map_to_dict(identity_map(complex_projective(2)))}
    body = client.post("/selfcoincide", json=payload).json()
    assert body["chi_target"] == 3
    assert body["primary_class"] == {"degree": 4, "coefficients": {"x^2": 3}}
    assert body["nonzero"] is True


def test_coincide_dimension_mismatch_is_409(client):
    # ring maps pulling H*(S2) back to H*(S1): the space-level pair
    # S1 -> S2 has domain dimension below the codomain, no obstruction
    # class exists there
    f = {"name": "f", "source": "S2", "target": "S1", "matrices": {}}
    g = {"name": "g", "source": "S2", "target": "S1", "matrices": {}}
    response = client.post("/coincide", json={"f": f, "g": g})
    assert response.status_code == 409
    assert response.json()["code"] == "computation-error"


# ======================================================================
# bundle, sphere, gysin
# ======================================================================

def test_s1bundle_frozen_2_2(client):
    body = client.post("/s1bundle", json={"n": 2, "k": 2}).json()
    assert body["trace"] == "1 mod 2"
    assert body["residue"] == 1
    assert body["nonzero"] is True
    assert body["nielsen_tilde"] == 1
    assert body["H1_hoeq"] == {"free_rank": 1, "torsion": [2],
                               "pretty": "Z + Z/2"}


def test_s1bundle_trivial_flag(client):
    body = client.post("/s1bundle", json={"n": 3, "k": 0}).json()
    assert body["trace"] == "4"
    assert body["trivial_bundle"] is True
    assert body["H1_hoeq"]["free_rank"] == 2


def test_s1bundle_bad_n_is_400(client):
    response = client.post("/s1bundle", json={"n": 0, "k": 2})
    assert response.status_code == 400
    assert response.json()["code"] == "bad-input"


def test_s1bundle_float_n_is_fastapi_422(client):
    response = client.post("/s1bundle", json={"n": 2.5, "k": 2})
    assert response.status_code == 422
    assert "detail" in response.json()


def test_sphere_hopf_case(client):
    body = client.post("/sphere", json={
        "m": 3, "n": 2, "hopf_f": 1, "hopf_g": 0}).json()
    assert body["trace_value"] == 1
    assert body["regime"] == "hopf"
    assert body["nielsen_tilde"] == 1
    assert body["nielsen"] == 0


def test_sphere_bad_dimensions_is_400(client):
    response = client.post("/sphere", json={"m": 2, "n": 2})
    assert response.status_code == 400


def test_gysin_cp1_unit_euler(client):
    body = client.post("/gysin", json={"base": "CP1", "euler": "x"}).json()
    assert body["base"] == "CP1"
    assert body["euler"] == {"x": 1}
    assert [d["resolved"]["free_rank"] for d in body["degrees"]] == [1, 0, 0, 1]


def test_gysin_scaled_euler_torsion(client):
    body = client.post("/gysin", json={"base": "CP1", "euler": "2*x"}).json()
    assert body["degrees"][2]["resolved"] == {
        "free_rank": 0, "torsion": [2], "pretty": "Z/2"}


def test_gysin_unknown_space_is_400(client):
    response = client.post("/gysin", json={"base": "nowhere", "euler": "x"})
    assert response.status_code == 400


def test_gysin_bad_expression_is_400(client):
    response = client.post("/gysin", json={"base": "CP1", "euler": "q*x"})
    assert response.status_code == 400


def test_gysin_torsion_base_is_409(client):
    lens = {
        "name": "lens3", "dimension": 3,
        "groups": {"0": {"free": ["1"], "torsion": []},
                   "2": {"free": [], "torsion": [{"label": "t", "order": 3}]},
                   "3": {"free": ["v"], "torsion": []}},
        "products": [],
        "orientation": {"class": "v", "value": 1},
    }
    response = client.post("/gysin", json={"base": lens, "euler": "t"})
    assert response.status_code == 409


# ======================================================================
# snf, validate
# ======================================================================

def test_snf_witnesses(client):
    body = client.post("/snf", json={"matrix": [[2, 4], [6, 8]]}).json()
    assert body["diagonal"] == [2, 4]
    assert body["rank"] == 2
    assert body["cokernel"] == {"free_rank": 0, "torsion": [2, 4],
                                "pretty": "Z/2 + Z/4"}


def test_snf_ragged_matrix_is_400(client):
    response = client.post("/snf", json={"matrix": [[1, 2], [3]]})
    assert response.status_code == 400


def test_validate_good_space(client):
    body = client.post("/validate", json={
        "manifest": space_to_dict(sphere(4))}).json()
    assert body == {"kind": "space", "name": "S4", "valid": True,
                    "violations": []}


def test_validate_reports_violations(client):
    manifest = space_to_dict(complex_projective(2))
    del manifest["orientation"]
    response = client.post("/validate", json={"manifest": manifest})
    assert response.status_code == 422
    assert response.json()["violations"]


def test_validate_map_manifest(client):
    body = client.post("/validate", json={
        "manifest": map_to_dict(sphere_degree_map(3, -1))}).json()
    assert body["kind"] == "map"
    assert body["valid"] is True


def test_validate_bad_map_manifest(client):
    manifest = {"name": "bad", "source": "CP2", "target": "CP2",
                "matrices": {"2": [[1]], "4": [[2]]}}
    response = client.post("/validate", json={"manifest": manifest})
    assert response.status_code == 422
    assert response.json()["code"] == "invalid-model"
