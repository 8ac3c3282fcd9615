"""JSON manifests for models and ring maps.

Space schema:

    {"name": str,
     "dimension": int,
     "groups": {"<degree>": {"free": [label, ...],
                             "torsion": [{"label": str, "order": int}, ...]}},
     "products": [{"left": label, "right": label,
                   "result": {label: coefficient, ...}}, ...],
     "orientation": {"class": label, "value": int}}

Map schema:

    {"name": str, "source": space-name, "target": space-name,
     "matrices": {"<degree>": [[int, ...], ...]}}

All numbers must be JSON integers. Parsing is strict: unknown fields,
wrong types, out-of-range degrees, duplicate labels, and shape errors
raise InputError (malformed input); a manifest that parses but violates
a ring axiom raises ModelInvalid carrying the violation list.

Serialization is canonical and minimal: products derivable from the
completion rules (unit rows, graded-commutative transposes of an
emitted entry, zero) are omitted, degrees are emitted in increasing
order, and json.dumps with sorted keys yields byte-identical output for
equal models.
"""

from __future__ import annotations

import json
from typing import Mapping, Optional

from .errors import InputError, ModelInvalid
from .graded_ring import (
    CohomologyModel,
    Generator,
    RingMap,
    validate_map,
    validate_model,
)

__all__ = [
    "parse_space_dict",
    "space_to_dict",
    "parse_map_dict",
    "map_to_dict",
    "load_space",
    "load_map",
    "load_json",
    "dumps_canonical",
]


def dumps_canonical(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _require(condition: bool, message: str):
    if not condition:
        raise InputError(message)


def _check_keys(entry: dict, allowed: set, where: str):
    unknown = sorted(set(entry) - allowed)
    if unknown:
        raise InputError("unrecognized field %r in %s" % (unknown[0], where))


def _strict_int(value, where: str) -> int:
    _require(type(value) is int, "%s must be an integer" % where)
    return value


def _parse_degree_key(key, dimension: int, where: str) -> int:
    _require(isinstance(key, str) and key.lstrip("-").isdigit(),
             "%s key %r is not a degree string" % (where, key))
    degree = int(key)
    _require(0 <= degree <= dimension,
             "%s degree %d outside [0, %d]" % (where, degree, dimension))
    return degree


# ======================================================================
# spaces
# ======================================================================

def parse_space_dict(payload: dict, validate: bool = True) -> CohomologyModel:
    """Schema errors raise InputError; ring-axiom violations raise
    ModelInvalid (suppressed with validate=False)."""
    _require(isinstance(payload, dict), "space manifest must be a JSON object")
    _check_keys(payload, {"name", "dimension", "groups", "products", "orientation"},
                "space manifest")
    _require(isinstance(payload.get("name"), str) and payload["name"],
             "space manifest needs a nonempty string name")
    dimension = _strict_int(payload.get("dimension"), "dimension")
    _require(dimension >= 0, "dimension must be nonnegative")
    groups = payload.get("groups")
    _require(isinstance(groups, dict), "groups must be an object keyed by degree")

    generators = []
    for key in sorted(groups, key=lambda k: (len(k), k)):
        degree = _parse_degree_key(key, dimension, "groups")
        entry = groups[key]
        _require(isinstance(entry, dict), "groups[%r] must be an object" % key)
        _check_keys(entry, {"free", "torsion"}, "groups[%r]" % key)
        free = entry.get("free", [])
        torsion = entry.get("torsion", [])
        _require(isinstance(free, list), "groups[%r].free must be a list" % key)
        _require(isinstance(torsion, list), "groups[%r].torsion must be a list" % key)
        for label in free:
            _require(isinstance(label, str) and label,
                     "free labels must be nonempty strings")
            generators.append(("gen", label, degree, 0))
        for item in torsion:
            _require(isinstance(item, dict), "torsion entries must be objects")
            _check_keys(item, {"label", "order"}, "groups[%r].torsion" % key)
            label = item.get("label")
            _require(isinstance(label, str) and label,
                     "torsion labels must be nonempty strings")
            order = _strict_int(item.get("order"), "torsion order")
            _require(order >= 2, "torsion order must be >= 2, got %d" % order)
            generators.append(("gen", label, degree, order))

    products = {}
    raw_products = payload.get("products", [])
    _require(isinstance(raw_products, list), "products must be a list")
    for item in raw_products:
        _require(isinstance(item, dict), "product entries must be objects")
        _check_keys(item, {"left", "right", "result"}, "products")
        left = item.get("left")
        right = item.get("right")
        result = item.get("result")
        _require(isinstance(left, str) and isinstance(right, str),
                 "product entries need string left and right labels")
        _require(isinstance(result, dict), "product result must be an object")
        coefficients = {}
        for label, value in result.items():
            _require(isinstance(label, str), "product result keys must be labels")
            coefficients[label] = _strict_int(value, "product coefficient")
        _require((left, right) not in products,
                 "duplicate product entry for (%s, %s)" % (left, right))
        products[(left, right)] = coefficients

    orientation = {}
    raw_orientation = payload.get("orientation")
    if raw_orientation is not None:
        _require(isinstance(raw_orientation, dict), "orientation must be an object")
        _check_keys(raw_orientation, {"class", "value"}, "orientation")
        label = raw_orientation.get("class")
        _require(isinstance(label, str) and label,
                 "orientation needs a class label")
        orientation[label] = _strict_int(raw_orientation.get("value"), "orientation value")

    try:
        model = CohomologyModel(
            name=payload["name"],
            dimension=dimension,
            generators=[Generator(label, degree, order)
                        for _, label, degree, order in generators],
            products=products,
            orientation=orientation,
        )
    except ValueError as exc:
        raise InputError("space manifest is inconsistent: %s" % exc) from exc
    if validate:
        violations = validate_model(model)
        if violations:
            raise ModelInvalid(violations)
    return model


def space_to_dict(model: CohomologyModel) -> dict:
    """Canonical manifest of a valid model; inverse of parse_space_dict."""
    groups = {}
    for degree in range(model.dimension + 1):
        basis = model.basis(degree)
        if not basis:
            continue
        groups[str(degree)] = {
            "free": [g.label for g in basis if g.is_free],
            "torsion": [{"label": g.label, "order": g.order}
                        for g in basis if not g.is_free],
        }

    unit = model.unit_label
    emitted = {}
    entries = []
    pairs = sorted((g.label, h.label)
                   for g in model.generators for h in model.generators
                   if g.degree + h.degree <= model.dimension)
    for left, right in pairs:
        result = model.product(left, right)
        if not result:
            continue
        if unit is not None and unit in (left, right):
            other = right if left == unit else left
            if result == model._normalize_result({other: 1}):
                continue
        mirror = emitted.get((right, left))
        if mirror is not None:
            dl = model.position(left)[0]
            dr = model.position(right)[0]
            sign = -1 if (dl * dr) % 2 else 1
            derived = model._normalize_result(
                {label: sign * c for label, c in mirror.items()})
            if derived == result:
                continue
        emitted[(left, right)] = result
        entries.append({"left": left, "right": right, "result": dict(result)})

    payload = {
        "name": model.name,
        "dimension": model.dimension,
        "groups": groups,
        "products": entries,
    }
    if model.orientation:
        if len(model.orientation) != 1:
            raise ValueError(
                "manifest orientation holds a single class, %r has %d entries"
                % (model.name, len(model.orientation)))
        ((label, value),) = model.orientation.items()
        payload["orientation"] = {"class": label, "value": value}
    return payload


# ======================================================================
# maps
# ======================================================================

def parse_map_dict(payload: dict, spaces: Mapping[str, CohomologyModel],
                   validate: bool = True) -> RingMap:
    """`spaces` maps names to already-parsed models (sources and targets
    must resolve there)."""
    _require(isinstance(payload, dict), "map manifest must be a JSON object")
    _check_keys(payload, {"name", "source", "target", "matrices"}, "map manifest")
    _require(isinstance(payload.get("name"), str) and payload["name"],
             "map manifest needs a nonempty string name")
    source_name = payload.get("source")
    target_name = payload.get("target")
    _require(isinstance(source_name, str), "map manifest needs a source space name")
    _require(isinstance(target_name, str), "map manifest needs a target space name")
    _require(source_name in spaces, "unknown source space %r" % source_name)
    _require(target_name in spaces, "unknown target space %r" % target_name)
    source = spaces[source_name]
    target = spaces[target_name]

    matrices = {}
    raw = payload.get("matrices", {})
    _require(isinstance(raw, dict), "matrices must be an object keyed by degree")
    for key, rows in raw.items():
        degree = _parse_degree_key(key, source.dimension, "matrices")
        _require(isinstance(rows, list), "matrices[%r] must be a list of rows" % key)
        parsed_rows = []
        for row in rows:
            _require(isinstance(row, list), "matrix rows must be lists")
            parsed_rows.append([_strict_int(x, "matrix entry") for x in row])
        matrices[degree] = parsed_rows

    try:
        ring_map = RingMap(payload["name"], source, target, matrices)
    except ValueError as exc:
        raise InputError("map manifest is inconsistent: %s" % exc) from exc
    if validate:
        violations = validate_map(ring_map)
        if violations:
            raise ModelInvalid(violations)
    return ring_map


def map_to_dict(ring_map: RingMap) -> dict:
    """Canonical manifest: only matrices differing from the defaults
    (identity in degree 0, zero elsewhere) are emitted."""
    matrices = {}
    for degree in range(ring_map.source.dimension + 1):
        matrix = ring_map.matrix(degree)
        if degree == 0 and matrix.rows == 1 and matrix.cols == 1:
            if matrix.data == ((1,),):
                continue
        elif matrix.is_zero():
            continue
        matrices[str(degree)] = [list(row) for row in matrix.data]
    return {
        "name": ring_map.name,
        "source": ring_map.source.name,
        "target": ring_map.target.name,
        "matrices": matrices,
    }


# ======================================================================
# files
# ======================================================================

def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise InputError("malformed JSON in %s: %s" % (path, exc)) from exc


def load_space(path: str, validate: bool = True) -> CohomologyModel:
    return parse_space_dict(load_json(path), validate=validate)


def load_map(path: str, spaces: Mapping[str, CohomologyModel],
             validate: bool = True) -> RingMap:
    return parse_map_dict(load_json(path), spaces, validate=validate)
