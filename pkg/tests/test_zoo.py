import pytest

from cotrace.graded_ring import validate_map, validate_model
from cotrace.zoo import (
    builtin_spaces,
    circle,
    complex_projective,
    sphere,
    sphere_degree_map,
    torus_map,
)


def test_builtin_space_names():
    names = set(builtin_spaces())
    assert names == {"S1", "S2", "S3", "S4", "S5", "S6",
                     "CP1", "CP2", "CP3", "CP4",
                     "T2", "genus2", "genus3", "S2xS2"}


def test_builtins_keyed_by_model_name():
    for key, model in builtin_spaces().items():
        assert key == model.name


def test_circle_is_one_sphere():
    assert circle() == sphere(1)


def test_builder_range_checks():
    with pytest.raises(ValueError):
        sphere(0)
    with pytest.raises(ValueError):
        complex_projective(0)
    with pytest.raises(ValueError):
        torus_map([[1, 0]])


def test_degree_maps_are_ring_maps():
    for degree in (-3, 0, 1, 7):
        for n in (2, 3):
            assert validate_map(sphere_degree_map(n, degree)) == []


def test_cp_ring_structure():
    cp4 = complex_projective(4)
    assert cp4.product("x^2", "x^2") == {"x^4": 1}
    assert cp4.product("x^2", "x^3") == {}
    assert validate_model(cp4) == []
