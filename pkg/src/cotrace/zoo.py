"""Stock cohomology models (spheres, complex projective spaces,
orientable surfaces, products) and the standard self-maps on them.

Every builder returns a fresh model; models compare structurally, so
two calls to sphere(2) are interchangeable.
"""

from __future__ import annotations

from typing import Dict, Optional, Sequence

from .exact_linalg import IntMatrix
from .graded_ring import CohomologyModel, Generator, RingMap, tensor_model

__all__ = [
    "sphere",
    "circle",
    "complex_projective",
    "torus",
    "orientable_surface",
    "sphere_product",
    "builtin_spaces",
    "sphere_degree_map",
    "cp_scaling_map",
    "torus_map",
]


def sphere(n: int) -> CohomologyModel:
    """S^n: Z in degrees 0 and n, u the oriented top generator."""
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    return CohomologyModel(
        name="S%d" % n,
        dimension=n,
        generators=[Generator("1", 0), Generator("u", n)],
        orientation={"u": 1},
    )


def circle() -> CohomologyModel:
    return sphere(1)


def _cp_label(j: int) -> str:
    return "x" if j == 1 else "x^%d" % j


def complex_projective(n: int) -> CohomologyModel:
    """CP^n: Z[x]/(x^{n+1}) with |x| = 2, oriented by x^n."""
    if n < 1:
        raise ValueError("complex projective space needs n >= 1")
    generators = [Generator("1", 0)]
    generators += [Generator(_cp_label(j), 2 * j) for j in range(1, n + 1)]
    products = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i + j <= n:
                products[(_cp_label(i), _cp_label(j))] = {_cp_label(i + j): 1}
    return CohomologyModel(
        name="CP%d" % n,
        dimension=2 * n,
        generators=generators,
        products=products,
        orientation={_cp_label(n): 1},
    )


def torus() -> CohomologyModel:
    """T^2: exterior algebra on degree-1 classes a, b with ab the volume."""
    return CohomologyModel(
        name="T2",
        dimension=2,
        generators=[Generator("1", 0), Generator("a", 1), Generator("b", 1),
                    Generator("ab", 2)],
        products={("a", "b"): {"ab": 1}},
        orientation={"ab": 1},
    )


def orientable_surface(genus: int) -> CohomologyModel:
    """Closed orientable surface: a_i.b_i = vol, all other degree-1
    products zero."""
    if genus < 1:
        raise ValueError("surface genus must be >= 1")
    generators = [Generator("1", 0)]
    products = {}
    for i in range(1, genus + 1):
        generators.append(Generator("a%d" % i, 1))
        generators.append(Generator("b%d" % i, 1))
        products[("a%d" % i, "b%d" % i)] = {"vol": 1}
    generators.append(Generator("vol", 2))
    return CohomologyModel(
        name="genus%d" % genus,
        dimension=2,
        generators=generators,
        products=products,
        orientation={"vol": 1},
    )


def sphere_product(n: int, m: int) -> CohomologyModel:
    return tensor_model(sphere(n), sphere(m))


def builtin_spaces() -> Dict[str, CohomologyModel]:
    """The named models the command line accepts in place of a manifest
    file."""
    spaces = {}
    for n in range(1, 7):
        model = sphere(n)
        spaces[model.name] = model
    for n in range(1, 5):
        model = complex_projective(n)
        spaces[model.name] = model
    for model in (torus(), orientable_surface(2), orientable_surface(3),
                  sphere_product(2, 2)):
        spaces[model.name] = model
    return spaces


def sphere_degree_map(n: int, degree: int, name: Optional[str] = None) -> RingMap:
    """Self-map of S^n of the given degree: u -> degree * u."""
    model = sphere(n)
    return RingMap(name or "deg%d_S%d" % (degree, n), model, model,
                   {n: [[degree]]})


def cp_scaling_map(n: int, t: int, name: Optional[str] = None) -> RingMap:
    """Self-map of CP^n with x -> t*x, hence x^j -> t^j x^j."""
    model = complex_projective(n)
    matrices = {2 * j: [[t ** j]] for j in range(1, n + 1)}
    return RingMap(name or "scale%d_CP%d" % (t, n), model, model, matrices)


def torus_map(matrix: Sequence[Sequence[int]], name: Optional[str] = None) -> RingMap:
    """Self-map of T^2 acting on H^1 by the given 2x2 matrix in the
    (a, b) basis (column j holds the image of the j-th generator).
    H^2 is forced: ab -> det * ab."""
    m = matrix if isinstance(matrix, IntMatrix) else IntMatrix.from_rows(matrix, cols=2)
    if (m.rows, m.cols) != (2, 2):
        raise ValueError("torus map needs a 2x2 matrix")
    model = torus()
    return RingMap(name or "torus_map", model, model, {1: m, 2: [[m.det()]]})
