"""Trace invariants of self-maps and coincidence pairs.

The central object is the primary obstruction class of a pair of maps
f, g: M -> N between closed oriented manifolds with dim M = m >= n =
dim N: the degree-n class on M

    sum over a homogeneous basis b_i of H*(N) of
        (-1)^{|b_i|}  f*(b^i) . g*(b_i),

with b^i the dual basis. Its Poincare dual in H_{m-n}(M) and the
pushforward of that dual to H_{m-n}(N) are the two homology shadows a
coincidence count can see. For f = g the class collapses to the Euler
form chi(N) f*(u).

Lefschetz numbers are taken on homology input (one square matrix per
degree), so they are usable without a ring model. Linear germ indices
are determinant signs of the displacement map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ComputationError
from .exact_linalg import IntMatrix, det_rational
from .graded_ring import (
    CohomologyClass,
    HomologyClass,
    RingMap,
    cup,
    dual_basis,
    euler_characteristic,
    homology_pushforward,
    poincare_dual,
    pullback,
    unit_volume_class,
)

__all__ = [
    "SelfMapHomology",
    "CoincidenceReport",
    "lefschetz_number",
    "homology_self_map",
    "coincidence_class",
    "self_coincidence_class",
    "coincidence_report",
    "linear_fixed_point_index",
    "linear_coincidence_index",
]


@dataclass(frozen=True)
class SelfMapHomology:
    """Matrices of H_i(f) for i = 0..m on a fixed basis of the free
    homology. Degree 0 must be [[1]] (connected spaces)."""

    matrices: tuple

    def __post_init__(self):
        mats = tuple(m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m)
                     for m in self.matrices)
        if not mats:
            raise ValueError("need at least the degree-0 matrix")
        for i, m in enumerate(mats):
            if m.rows != m.cols:
                raise ValueError("degree-%d matrix is not square" % i)
        if mats[0].data != ((1,),):
            raise ValueError("degree-0 matrix must be [[1]]")
        object.__setattr__(self, "matrices", mats)

    @property
    def dimension(self) -> int:
        return len(self.matrices) - 1

    def matrix(self, degree: int) -> IntMatrix:
        return self.matrices[degree]


def lefschetz_number(f: SelfMapHomology) -> int:
    """Alternating sum of the homology traces."""
    return sum((-1) ** i * m.trace() for i, m in enumerate(f.matrices))


def homology_self_map(f: RingMap) -> SelfMapHomology:
    """Homology matrices of a self-map, read off the ring map.

    Rational homology is dual to the free cohomology, so H_i(f) is the
    transpose of the free block of the degree-i pullback matrix. For a
    valid ring map the free block is closed (free rows of torsion
    columns vanish), so the block is the whole rational action.
    """
    if f.source != f.target:
        raise ComputationError("Lefschetz data needs a self-map, got %s -> %s"
                               % (f.source.name, f.target.name))
    model = f.source
    matrices = []
    for degree in range(model.dimension + 1):
        free = model.free_rank(degree)  # free generators come first
        block = [[f.matrix(degree).data[i][j] for j in range(free)]
                 for i in range(free)]
        matrices.append(IntMatrix.from_rows(block, cols=free).transpose())
    if not matrices or matrices[0].data != ((1,),):
        raise ComputationError("self-map homology needs a connected model "
                               "(degree-0 block [[1]])")
    return SelfMapHomology(tuple(matrices))


@dataclass(frozen=True)
class CoincidenceReport:
    """Primary obstruction class with its two homology shadows.

    rho_image_M: Poincare dual of the primary class, in H_{m-n}(M).
    lambda_N: its pushforward to H_{m-n}(N); pushing by f or by g gives
    the same class (property-tested, not assumed).
    """

    primary_class: CohomologyClass
    rho_image_M: HomologyClass
    lambda_N: HomologyClass
    nonzero: bool


def _check_pair(f: RingMap, g: RingMap):
    if f.source != g.source or f.target != g.target:
        raise ValueError("coincidence pair needs a common source and target")
    source, target = f.source, f.target
    if not source.torsion_free:
        raise ComputationError(
            "coincidence class needs a torsion-free codomain model, "
            "%r has torsion" % source.name)
    if not source.oriented_closed:
        raise ComputationError("coincidence class needs an oriented closed codomain")
    if target.dimension < source.dimension:
        raise ComputationError(
            "codomain dimension %d exceeds domain dimension %d"
            % (source.dimension, target.dimension))


def coincidence_class(f: RingMap, g: RingMap) -> CohomologyClass:
    """sum_i (-1)^{|b_i|} f*(b^i) . g*(b_i) over a basis of the
    downstairs cohomology, landing in degree n on the upstairs model."""
    _check_pair(f, g)
    source, target = f.source, f.target
    n = source.dimension
    total = target.zero(n)
    for degree in range(n + 1):
        duals = dual_basis(source, degree)
        sign = -1 if degree % 2 else 1
        for dual, gen in zip(duals.classes, source.basis(degree)):
            term = cup(pullback(f, dual), pullback(g, source.basis_class(gen.label)))
            total = total + (sign * term)
    return total


def self_coincidence_class(f: RingMap) -> CohomologyClass:
    """chi(N) f*(u) with u the unit-pairing top class of the codomain.
    The domain model may have torsion (the class is reduced there)."""
    chi = euler_characteristic(f.source)
    return chi * pullback(f, unit_volume_class(f.source))


def coincidence_report(f: RingMap, g: RingMap) -> CoincidenceReport:
    primary = coincidence_class(f, g)
    if not f.target.torsion_free:
        raise ComputationError(
            "homology shadows need a torsion-free domain model, %r has torsion"
            % f.target.name)
    rho_image = poincare_dual(primary)
    lam = homology_pushforward(f, rho_image)
    return CoincidenceReport(primary, rho_image, lam, not primary.is_zero)


def _square_rational(rows: Sequence[Sequence["Fraction | int"]]):
    out = [[Fraction(x) for x in row] for row in rows]
    n = len(out)
    if any(len(r) != n for r in out):
        raise ValueError("linear index needs a square matrix")
    return out


def linear_fixed_point_index(matrix: Sequence[Sequence["Fraction | int"]]) -> int:
    """Sign of det(I - A): the local degree of x -> x - Ax at 0."""
    a = _square_rational(matrix)
    n = len(a)
    displacement = [[(1 if i == j else 0) - a[i][j] for j in range(n)]
                    for i in range(n)]
    det = det_rational(displacement)
    if det == 0:
        raise ComputationError("det(I - A) = 0: fixed point is not isolated")
    return 1 if det > 0 else -1


def linear_coincidence_index(phi: Sequence[Sequence["Fraction | int"]],
                             psi: Sequence[Sequence["Fraction | int"]]) -> int:
    """Sign of det(Psi - Phi): the local degree of y -> psi(y) - phi(y)."""
    a = _square_rational(phi)
    b = _square_rational(psi)
    if len(a) != len(b):
        raise ValueError("germ matrices must have equal size")
    n = len(a)
    difference = [[b[i][j] - a[i][j] for j in range(n)] for i in range(n)]
    det = det_rational(difference)
    if det == 0:
        raise ComputationError("det(Psi - Phi) = 0: coincidence is not transverse")
    return 1 if det > 0 else -1
