"""Graded-commutative cohomology rings of closed oriented manifolds, and
the ring homomorphisms induced by maps between them.

A model stores, per degree d in [0, m], an ordered basis of generators
(free ones first, then torsion generators with their orders), a complete
multiplication table of structure constants, and an orientation
functional on the top-degree free part. Evaluation <c, [M]> is the
orientation functional applied to the free coordinates of c.

Maps of spaces are stored contravariantly: a map of spaces M -> N enters
as the induced ring map on cohomology, whose `source` model is H*(N) and
whose `target` model is H*(M). Matrices use the column convention: the
degree-d matrix has one column per source basis element, holding the
coordinates of its image in the target basis.

Sign conventions, fixed once:

  * graded commutativity   c.d = (-1)^{|c||d|} d.c,
  * Koszul sign in tensor products
        (a1 (x) b1).(a2 (x) b2) = (-1)^{|b1||a2|} (a1.a2) (x) (b1.b2),
  * the dual basis b^i of a degree-d basis b_i solves
        <b^i . b_j, [M]> = delta_ij
    via the inverse of the unimodular pairing matrix,
  * homology exists only as dual coordinates: a degree-e homology class
    z has one integer per degree-e basis element, and <c, z> is the
    coordinate dot product. Pushforward is the transpose of pullback
    under this pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ComputationError
from .exact_linalg import IntMatrix, inverse_unimodular

__all__ = [
    "Generator",
    "CohomologyModel",
    "CohomologyClass",
    "HomologyClass",
    "DualBasis",
    "RingMap",
    "validate_model",
    "validate_map",
    "cup",
    "evaluate",
    "pair",
    "dual_basis",
    "pullback",
    "poincare_dual",
    "poincare_dual_inverse",
    "homology_pushforward",
    "tensor_model",
    "tensor_map",
    "euler_characteristic",
    "unit_volume_class",
    "map_degree",
    "identity_map",
    "compose_maps",
]

TENSOR_GLUE = "⊗"  # the (x) glyph used in tensor generator labels


@dataclass(frozen=True)
class Generator:
    """One basis element: order 0 means infinite order (a free generator),
    order >= 2 a torsion generator."""

    label: str
    degree: int
    order: int = 0

    def __post_init__(self):
        if not isinstance(self.label, str) or not self.label:
            raise ValueError("generator label must be a nonempty string")
        if self.degree < 0:
            raise ValueError("generator degree must be nonnegative")
        if self.order == 1 or self.order < 0:
            raise ValueError("generator order must be 0 (free) or >= 2")

    @property
    def is_free(self) -> bool:
        return self.order == 0


# ======================================================================
# models
# ======================================================================

class CohomologyModel:
    """Finitely generated integral cohomology ring with orientation.

    The multiplication table passed in may be partial: omitted pairs are
    completed by the unit law, by graded commutativity from their
    transpose, and by zero otherwise. Explicitly supplied entries are
    kept as given (validation will flag them if they break an axiom).
    """

    def __init__(self, name: str, dimension: int,
                 generators: Iterable[Generator],
                 products: Optional[Mapping[tuple, Mapping[str, int]]] = None,
                 orientation: Optional[Mapping[str, int]] = None,
                 oriented_closed: bool = True):
        if dimension < 0:
            raise ValueError("dimension must be nonnegative")
        self.name = str(name)
        self.dimension = int(dimension)
        self.oriented_closed = bool(oriented_closed)
        self._generators = tuple(generators)

        by_degree: dict = {}
        self._pos = {}
        for gen in self._generators:
            if not isinstance(gen, Generator):
                raise ValueError("generators must be Generator instances")
            if gen.degree > self.dimension:
                raise ValueError(
                    "generator %r has degree %d beyond dimension %d"
                    % (gen.label, gen.degree, self.dimension))
            if gen.label in self._pos:
                raise ValueError("duplicate generator label %r" % gen.label)
            bucket = by_degree.setdefault(gen.degree, [])
            if gen.is_free and any(not g.is_free for g in bucket):
                raise ValueError(
                    "degree %d lists a free generator after a torsion one"
                    % gen.degree)
            self._pos[gen.label] = (gen.degree, len(bucket))
            bucket.append(gen)
        self._by_degree = {d: tuple(v) for d, v in by_degree.items()}

        unit_candidates = self._by_degree.get(0, ())
        self._unit_label = (unit_candidates[0].label
                            if len(unit_candidates) == 1 and unit_candidates[0].is_free
                            else None)

        self._table, self._overflow = self._build_table(products or {})

        self.orientation = {}
        top = {g.label: g for g in self.basis(self.dimension)}
        for label, value in (orientation or {}).items():
            gen = top.get(label)
            if gen is None or not gen.is_free:
                raise ValueError(
                    "orientation must be keyed by top-degree free labels, got %r" % label)
            if type(value) is not int:
                raise ValueError("orientation values must be integers")
            self.orientation[label] = value

        self._signature = (
            self.name, self.dimension, self.oriented_closed, self._generators,
            tuple(sorted((l, r, tuple(sorted(res.items())))
                         for (l, r), res in self._table.items() if res)),
            tuple(sorted((l, r, tuple(sorted(res.items())))
                         for (l, r), res in self._overflow.items())),
            tuple(sorted(self.orientation.items())),
        )

    def _build_table(self, products):
        table = {}
        overflow = {}
        for key, result in products.items():
            left, right = key
            if left not in self._pos or right not in self._pos:
                raise ValueError("product table references unknown label %r"
                                 % (left if left not in self._pos else right))
            res = self._normalize_result(result)
            dl = self._pos[left][0]
            dr = self._pos[right][0]
            if dl + dr > self.dimension:
                if res:
                    overflow[(left, right)] = res
                continue
            table[(left, right)] = res
        pairs = [(g, h) for g in self._generators for h in self._generators
                 if g.degree + h.degree <= self.dimension]
        if self._unit_label is not None:
            for g, h in pairs:
                key = (g.label, h.label)
                if key in table:
                    continue
                if g.label == self._unit_label:
                    table[key] = self._normalize_result({h.label: 1})
                elif h.label == self._unit_label:
                    table[key] = self._normalize_result({g.label: 1})
        for g, h in pairs:
            key = (g.label, h.label)
            if key in table:
                continue
            mirror = table.get((h.label, g.label))
            if mirror is not None:
                sign = -1 if (g.degree * h.degree) % 2 else 1
                table[key] = self._normalize_result(
                    {lbl: sign * c for lbl, c in mirror.items()})
        for g, h in pairs:
            table.setdefault((g.label, h.label), {})
        return table, overflow

    def _normalize_result(self, result) -> dict:
        out = {}
        for label, coeff in result.items():
            if label not in self._pos:
                raise ValueError("product table references unknown label %r" % label)
            if type(coeff) is not int:
                raise ValueError("structure constants must be integers")
            order = self.generator(label).order
            reduced = coeff % order if order else coeff
            if reduced:
                out[label] = reduced
        return out

    # -- basic accessors ------------------------------------------------

    @property
    def generators(self) -> tuple:
        return self._generators

    @property
    def unit_label(self) -> Optional[str]:
        return self._unit_label

    @property
    def torsion_free(self) -> bool:
        return all(g.is_free for g in self._generators)

    def basis(self, degree: int) -> tuple:
        return self._by_degree.get(degree, ())

    def labels(self, degree: int) -> tuple:
        return tuple(g.label for g in self.basis(degree))

    def free_rank(self, degree: int) -> int:
        return sum(1 for g in self.basis(degree) if g.is_free)

    def generator(self, label: str) -> Generator:
        degree, idx = self._pos[label]
        return self._by_degree[degree][idx]

    def position(self, label: str) -> tuple:
        """(degree, index within that degree's basis)."""
        return self._pos[label]

    def product(self, left: str, right: str) -> dict:
        """Structure constants of left.right, complete for in-range pairs."""
        return dict(self._table.get((left, right), {}))

    def overflow_products(self) -> dict:
        """Explicit nonzero entries landing beyond the top dimension
        (kept only so validation can flag them)."""
        return {k: dict(v) for k, v in self._overflow.items()}

    # -- class factories -------------------------------------------------

    def zero(self, degree: int) -> "CohomologyClass":
        return CohomologyClass(self, degree, (0,) * len(self.basis(degree)))

    def unit(self) -> "CohomologyClass":
        if self._unit_label is None:
            raise ComputationError("model %r has no unit generator" % self.name)
        return self.basis_class(self._unit_label)

    def basis_class(self, label: str) -> "CohomologyClass":
        degree, idx = self._pos[label]
        coeffs = [0] * len(self.basis(degree))
        coeffs[idx] = 1
        return CohomologyClass(self, degree, tuple(coeffs))

    def class_from_map(self, degree: int, coefficients: Mapping[str, int]) -> "CohomologyClass":
        coeffs = [0] * len(self.basis(degree))
        for label, value in coefficients.items():
            d, idx = self._pos[label]
            if d != degree:
                raise ValueError("label %r is not in degree %d" % (label, degree))
            coeffs[idx] = value
        return CohomologyClass(self, degree, tuple(coeffs))

    # -- value semantics --------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, CohomologyModel):
            return NotImplemented
        return self._signature == other._signature

    def __hash__(self):
        return hash(self._signature)

    def __repr__(self):
        return "CohomologyModel(%r, dim=%d, %d generators)" % (
            self.name, self.dimension, len(self._generators))


# ======================================================================
# classes
# ======================================================================

@dataclass(frozen=True)
class CohomologyClass:
    """Coefficient vector over a model's degree-d basis. Torsion
    coordinates are kept reduced into [0, order). Degrees beyond the
    model dimension are legal and carry an empty coefficient vector (the
    zero class in a degenerate degree)."""

    model: CohomologyModel
    degree: int
    coeffs: tuple

    def __post_init__(self):
        basis = self.model.basis(self.degree)
        if len(self.coeffs) != len(basis):
            raise ValueError("coefficient vector length %d does not match basis size %d"
                             % (len(self.coeffs), len(basis)))
        reduced = tuple(
            (c % g.order if g.order else c)
            for c, g in zip(self.coeffs, basis))
        object.__setattr__(self, "coeffs", reduced)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def coefficient(self, label: str) -> int:
        degree, idx = self.model.position(label)
        if degree != self.degree:
            raise ValueError("label %r is not in degree %d" % (label, self.degree))
        return self.coeffs[idx]

    def as_map(self) -> dict:
        return {g.label: c for g, c in zip(self.model.basis(self.degree), self.coeffs) if c}

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        _same_model(self.model, other.model)
        if self.degree != other.degree:
            raise ValueError("cannot add classes of different degrees")
        return CohomologyClass(self.model, self.degree,
                               tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self + (-1) * other

    def __neg__(self) -> "CohomologyClass":
        return (-1) * self

    def __rmul__(self, k: int) -> "CohomologyClass":
        return CohomologyClass(self.model, self.degree,
                               tuple(k * c for c in self.coeffs))


@dataclass(frozen=True)
class HomologyClass:
    """Dual-coordinate homology class: one integer per degree-e basis
    element, pairing <c, z> = coordinate dot product. Only meaningful on
    torsion-free models."""

    model: CohomologyModel
    degree: int
    coords: tuple

    def __post_init__(self):
        if not self.model.torsion_free:
            raise ComputationError(
                "homology coordinates need a torsion-free model, %r has torsion"
                % self.model.name)
        if len(self.coords) != len(self.model.basis(self.degree)):
            raise ValueError("coordinate vector length does not match basis size")

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def as_map(self) -> dict:
        return {g.label: c for g, c in zip(self.model.basis(self.degree), self.coords) if c}

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        _same_model(self.model, other.model)
        if self.degree != other.degree:
            raise ValueError("cannot add classes of different degrees")
        return HomologyClass(self.model, self.degree,
                             tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, k: int) -> "HomologyClass":
        return HomologyClass(self.model, self.degree, tuple(k * c for c in self.coords))


@dataclass(frozen=True)
class DualBasis:
    """Degree-(m-d) classes b^i with <b^i . b_j, [M]> = delta_ij."""

    model: CohomologyModel
    degree: int
    classes: tuple


# ======================================================================
# ring maps
# ======================================================================

class RingMap:
    """Induced ring map on cohomology. `source` is the cohomology of the
    space being mapped TO, `target` the cohomology of the space being
    mapped FROM. Missing degree matrices default to zero, except degree 0
    which defaults to the 1x1 identity (unit goes to unit)."""

    def __init__(self, name: str, source: CohomologyModel, target: CohomologyModel,
                 matrices: Optional[Mapping[int, "IntMatrix | Sequence[Sequence[int]]"]] = None):
        self.name = str(name)
        self.source = source
        self.target = target
        given = dict(matrices or {})
        self._matrices = {}
        for degree in list(given):
            if degree < 0 or degree > source.dimension:
                raise ValueError("matrix given for degree %d outside [0, %d]"
                                 % (degree, source.dimension))
        for degree in range(source.dimension + 1):
            rows = len(target.basis(degree))
            cols = len(source.basis(degree))
            entry = given.get(degree)
            if entry is None:
                if degree == 0 and rows == 1 and cols == 1:
                    matrix = IntMatrix.identity(1)
                else:
                    matrix = IntMatrix.zeros(rows, cols)
            else:
                if isinstance(entry, IntMatrix):
                    matrix = entry
                else:
                    entry_rows = [tuple(r) for r in entry]
                    matrix = (IntMatrix.from_rows(entry_rows) if entry_rows
                              else IntMatrix.zeros(0, cols))
                if (matrix.rows, matrix.cols) != (rows, cols):
                    raise ValueError(
                        "degree-%d matrix must be %dx%d, got %dx%d"
                        % (degree, rows, cols, matrix.rows, matrix.cols))
            self._matrices[degree] = matrix

    def matrix(self, degree: int) -> IntMatrix:
        found = self._matrices.get(degree)
        if found is not None:
            return found
        return IntMatrix.zeros(len(self.target.basis(degree)),
                               len(self.source.basis(degree)))

    def _signature(self):
        return (self.name, self.target, self.source,
                tuple(sorted(self._matrices.items(), key=lambda kv: kv[0])))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, RingMap):
            return NotImplemented
        return self._signature() == other._signature()

    def __hash__(self):
        return hash(self._signature())

    def __repr__(self):
        return "RingMap(%r: H*(%s) -> H*(%s))" % (self.name, self.source.name, self.target.name)


# ======================================================================
# operations
# ======================================================================

def _same_model(a: CohomologyModel, b: CohomologyModel):
    if a != b:
        raise ValueError("classes live on different models (%r vs %r)" % (a.name, b.name))


def cup(left: CohomologyClass, right: CohomologyClass) -> CohomologyClass:
    """Cup product by bilinear extension of the structure constants.
    Degree overflow gives the zero class in the (empty) degree |c|+|d|."""
    _same_model(left.model, right.model)
    model = left.model
    degree = left.degree + right.degree
    if degree > model.dimension:
        return model.zero(degree)
    acc = [0] * len(model.basis(degree))
    left_basis = model.basis(left.degree)
    right_basis = model.basis(right.degree)
    for i, a in enumerate(left.coeffs):
        if not a:
            continue
        for j, b in enumerate(right.coeffs):
            if not b:
                continue
            for label, c in model.product(left_basis[i].label, right_basis[j].label).items():
                d, idx = model.position(label)
                if d == degree:  # skip degree-corrupt entries; validation reports them
                    acc[idx] += a * b * c
    return CohomologyClass(model, degree, tuple(acc))


def evaluate(cls: CohomologyClass) -> int:
    """<c, [M]>: the orientation functional on the top-degree free part.
    Torsion coordinates contribute nothing (any homomorphism to Z kills
    them)."""
    model = cls.model
    if cls.degree != model.dimension:
        raise ValueError("evaluation needs a top-degree class (degree %d, dimension %d)"
                         % (cls.degree, model.dimension))
    total = 0
    for gen, coeff in zip(model.basis(cls.degree), cls.coeffs):
        if gen.is_free and coeff:
            total += coeff * model.orientation.get(gen.label, 0)
    return total


def pair(cls: CohomologyClass, z: HomologyClass) -> int:
    """<c, z> in dual coordinates."""
    _same_model(cls.model, z.model)
    if cls.degree != z.degree:
        raise ValueError("pairing needs matching degrees")
    return sum(a * b for a, b in zip(cls.coeffs, z.coords))


def _pairing_matrix(model: CohomologyModel, degree: int) -> IntMatrix:
    """P[k][j] = <c_k . b_j, [M]> with c_k the (m-d)-basis, b_j the d-basis."""
    row_basis = model.basis(model.dimension - degree)
    col_basis = model.basis(degree)
    rows = []
    for ck in row_basis:
        rows.append([evaluate(cup(model.basis_class(ck.label), model.basis_class(bj.label)))
                     for bj in col_basis])
    return IntMatrix.from_rows(rows, cols=len(col_basis))


def dual_basis(model: CohomologyModel, degree: int) -> DualBasis:
    """Solve <b^i . b_j, [M]> = delta_ij through the inverse pairing
    matrix. Needs an oriented, torsion-free model with unimodular
    pairing."""
    if not model.torsion_free:
        raise ComputationError("dual basis needs a torsion-free model, %r has torsion"
                               % model.name)
    b = model.basis(degree)
    c = model.basis(model.dimension - degree)
    if len(b) != len(c):
        raise ComputationError(
            "pairing matrix is not square at degree %d of %r" % (degree, model.name))
    if not b:
        return DualBasis(model, degree, ())
    p = _pairing_matrix(model, degree)
    try:
        y = inverse_unimodular(p)
    except ValueError as exc:
        raise ComputationError(
            "pairing matrix at degree %d of %r is not unimodular: %s"
            % (degree, model.name, exc)) from exc
    classes = tuple(
        CohomologyClass(model, model.dimension - degree, tuple(y.row(i)))
        for i in range(len(b)))
    return DualBasis(model, degree, classes)


def pullback(f: RingMap, cls: CohomologyClass) -> CohomologyClass:
    """Apply the induced ring map to a class in its source model."""
    if cls.model != f.source:
        raise ValueError("class does not live in the ring map's source model")
    image = f.matrix(cls.degree).apply(cls.coeffs)
    return CohomologyClass(f.target, cls.degree, image)


def poincare_dual(cls: CohomologyClass) -> HomologyClass:
    """Homology class z of degree m-d with <c', z> = <c'.c, [M]> for
    every degree-(m-d) class c'."""
    model = cls.model
    if not model.torsion_free:
        raise ComputationError("Poincare duality needs a torsion-free model")
    e = model.dimension - cls.degree
    coords = tuple(evaluate(cup(model.basis_class(g.label), cls))
                   for g in model.basis(e))
    return HomologyClass(model, e, coords)


def poincare_dual_inverse(z: HomologyClass) -> CohomologyClass:
    """The unique degree-(m-e) class c with poincare_dual(c) = z."""
    model = z.model
    degree = model.dimension - z.degree
    p = _pairing_matrix(model, degree)
    try:
        inv = inverse_unimodular(p)
    except ValueError as exc:
        raise ComputationError(
            "pairing matrix at degree %d of %r is not unimodular: %s"
            % (degree, model.name, exc)) from exc
    coeffs = inv.apply(z.coords)
    return CohomologyClass(model, degree, coeffs)


def homology_pushforward(f: RingMap, z: HomologyClass) -> HomologyClass:
    """The unique class with <c, f_* z> = <f* c, z>: transpose of the
    pullback matrix in dual coordinates."""
    if z.model != f.target:
        raise ValueError("homology class does not live on the ring map's target model")
    if not f.source.torsion_free:
        raise ComputationError("pushforward needs a torsion-free source model")
    matrix = f.matrix(z.degree)
    coords = matrix.transpose().apply(z.coords)
    return HomologyClass(f.source, z.degree, coords)


# ======================================================================
# tensor products
# ======================================================================

def _tensor_pairs(a: CohomologyModel, b: CohomologyModel, degree: int):
    out = []
    for da in range(0, min(degree, a.dimension) + 1):
        db = degree - da
        if db < 0 or db > b.dimension:
            continue
        for ga in a.basis(da):
            for gb in b.basis(db):
                out.append((ga, gb))
    return out


def _tensor_label(la: str, lb: str) -> str:
    return la + TENSOR_GLUE + lb


def tensor_model(a: CohomologyModel, b: CohomologyModel,
                 name: Optional[str] = None) -> CohomologyModel:
    """Kuenneth model of a product of torsion-free spaces.

    Products carry the Koszul sign
        (a1 (x) b1).(a2 (x) b2) = (-1)^{|b1||a2|} (a1.a2) (x) (b1.b2)
    and the orientation multiplies: <x (x) y> = <x><y>.
    """
    if not a.torsion_free or not b.torsion_free:
        raise ComputationError("tensor models need torsion-free factors")
    dimension = a.dimension + b.dimension
    generators = []
    split = []
    for degree in range(dimension + 1):
        for ga, gb in _tensor_pairs(a, b, degree):
            generators.append(Generator(_tensor_label(ga.label, gb.label), degree, 0))
            split.append((ga, gb))
    products = {}
    for left_gen, (ga, gb) in zip(generators, split):
        for right_gen, (gc, gd) in zip(generators, split):
            if left_gen.degree + right_gen.degree > dimension:
                continue
            sign = -1 if (gb.degree * gc.degree) % 2 else 1
            left = a.product(ga.label, gc.label) if ga.degree + gc.degree <= a.dimension else {}
            right = b.product(gb.label, gd.label) if gb.degree + gd.degree <= b.dimension else {}
            result = {}
            for la, ca in left.items():
                for lb, cb in right.items():
                    result[_tensor_label(la, lb)] = sign * ca * cb
            products[(left_gen.label, right_gen.label)] = result
    orientation = {}
    for la, va in a.orientation.items():
        for lb, vb in b.orientation.items():
            orientation[_tensor_label(la, lb)] = va * vb
    return CohomologyModel(
        name=name or (a.name + "x" + b.name),
        dimension=dimension,
        generators=generators,
        products=products,
        orientation=orientation,
        oriented_closed=a.oriented_closed and b.oriented_closed,
    )


def tensor_map(f: RingMap, g: RingMap, name: Optional[str] = None) -> RingMap:
    """Degree-wise Kronecker combination of two ring maps on the tensor
    models. No extra sign: the Koszul signs already live in the product
    structure of the models."""
    source = tensor_model(f.source, g.source)
    target = tensor_model(f.target, g.target)
    matrices = {}
    for degree in range(source.dimension + 1):
        src_pairs = _tensor_pairs(f.source, g.source, degree)
        tgt_pairs = _tensor_pairs(f.target, g.target, degree)
        rows = []
        for ta, tb in tgt_pairs:
            row = []
            ta_deg, ta_idx = f.target.position(ta.label)
            tb_deg, tb_idx = g.target.position(tb.label)
            for sa, sb in src_pairs:
                sa_deg, sa_idx = f.source.position(sa.label)
                sb_deg, sb_idx = g.source.position(sb.label)
                if sa_deg == ta_deg and sb_deg == tb_deg:
                    row.append(f.matrix(sa_deg).data[ta_idx][sa_idx]
                               * g.matrix(sb_deg).data[tb_idx][sb_idx])
                else:
                    row.append(0)
            rows.append(tuple(row))
        matrices[degree] = IntMatrix.from_rows(rows, cols=len(src_pairs))
    return RingMap(name or (f.name + "x" + g.name), source, target, matrices)


# ======================================================================
# invariants and validation
# ======================================================================

def euler_characteristic(model: CohomologyModel) -> int:
    """Alternating sum of the free ranks (torsion is rationally invisible)."""
    return sum((-1) ** d * model.free_rank(d) for d in range(model.dimension + 1))


def unit_volume_class(model: CohomologyModel) -> CohomologyClass:
    """A top-degree class u with <u, [M]> = 1, found by an extended-gcd
    combination of the orientation values."""
    top = model.basis(model.dimension)
    frees = [g for g in top if g.is_free]
    values = [model.orientation.get(g.label, 0) for g in frees]
    g, combo = 0, []
    for v in values:
        g, s, t = _ext_gcd(g, v)
        combo = [s * c for c in combo] + [t]
    if g != 1:
        raise ComputationError(
            "orientation values of %r have gcd %d, no unit-pairing class exists"
            % (model.name, g))
    coeffs = [0] * len(top)
    free_slots = [i for i, gen in enumerate(top) if gen.is_free]
    for slot, c in zip(free_slots, combo):
        coeffs[slot] = c
    return CohomologyClass(model, model.dimension, tuple(coeffs))


def _ext_gcd(a: int, b: int):
    """g = s*a + t*b with g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def map_degree(h: RingMap) -> int:
    """Degree of a map between equal-dimensional oriented models:
    <h*(u), [M]> for the unit-pairing class u of the source."""
    if h.source.dimension != h.target.dimension:
        raise ComputationError("map degree needs equal dimensions")
    return evaluate(pullback(h, unit_volume_class(h.source)))


def identity_map(model: CohomologyModel) -> RingMap:
    matrices = {d: IntMatrix.identity(len(model.basis(d)))
                for d in range(model.dimension + 1)}
    return RingMap("id_" + model.name, model, model, matrices)


def compose_maps(outer: RingMap, inner: RingMap) -> RingMap:
    """Induced ring map of the composite SPACE map (outer after inner).

    For spaces P --inner--> M --outer--> N the pullbacks compose
    contravariantly, so the result maps H*(N) to H*(P) with degree-d
    matrix inner_d * outer_d.
    """
    if inner.source != outer.target:
        raise ValueError("composite needs inner.source == outer.target")
    matrices = {d: inner.matrix(d) @ outer.matrix(d)
                for d in range(outer.source.dimension + 1)}
    return RingMap(outer.name + "_o_" + inner.name, outer.source, inner.target, matrices)


def validate_model(model: CohomologyModel) -> list:
    """Check every ring axiom; returns the list of violations (empty when
    the model is valid). Never raises on axiom failures."""
    violations = []
    d0 = model.basis(0)
    if len(d0) != 1 or not d0[0].is_free:
        violations.append("degree 0 must be Z with a single free unit generator")
    unit = model.unit_label
    if unit is not None:
        for g in model.generators:
            expected = model._normalize_result({g.label: 1})
            if model.product(unit, g.label) != expected:
                violations.append("unit law fails on 1.%s" % g.label)
            if model.product(g.label, unit) != expected:
                violations.append("unit law fails on %s.1" % g.label)

    for (l, r), result in model._table.items():
        dl = model.position(l)[0]
        dr = model.position(r)[0]
        for label, coeff in result.items():
            if coeff and model.position(label)[0] != dl + dr:
                violations.append(
                    "product %s.%s has a component %r outside degree %d"
                    % (l, r, label, dl + dr))
    for (l, r) in sorted(model.overflow_products()):
        violations.append("product %s.%s is nonzero beyond the top dimension" % (l, r))

    gens = model.generators
    for i, g in enumerate(gens):
        for h in gens[i:]:
            if g.degree + h.degree > model.dimension:
                continue
            sign = -1 if (g.degree * h.degree) % 2 else 1
            lhs = cup(model.basis_class(g.label), model.basis_class(h.label))
            rhs = sign * cup(model.basis_class(h.label), model.basis_class(g.label))
            if lhs != rhs:
                violations.append(
                    "graded commutativity fails on (%s, %s)" % (g.label, h.label))

    for x in gens:
        for y in gens:
            for z in gens:
                if x.degree + y.degree + z.degree > model.dimension:
                    continue
                bx = model.basis_class(x.label)
                by = model.basis_class(y.label)
                bz = model.basis_class(z.label)
                if cup(cup(bx, by), bz) != cup(bx, cup(by, bz)):
                    violations.append(
                        "associativity fails on (%s, %s, %s)"
                        % (x.label, y.label, z.label))

    for t in model.generators:
        if t.is_free:
            continue
        for g in model.generators:
            if t.degree + g.degree > model.dimension:
                continue
            for lhs, rhs in ((t.label, g.label), (g.label, t.label)):
                product = cup(model.basis_class(lhs), model.basis_class(rhs))
                if not (t.order * product).is_zero:
                    violations.append(
                        "torsion order %d of %s does not kill %s.%s"
                        % (t.order, t.label, lhs, rhs))

    if model.oriented_closed and model.torsion_free:
        if not model.orientation and model.basis(model.dimension):
            violations.append("orientation functional missing on the top degree")
        for degree in range(model.dimension // 2 + 1):
            b = model.basis(degree)
            c = model.basis(model.dimension - degree)
            if len(b) != len(c):
                violations.append(
                    "duality rank mismatch between degrees %d and %d"
                    % (degree, model.dimension - degree))
                continue
            if not b:
                continue
            det = _pairing_matrix(model, degree).det()
            if det not in (1, -1):
                violations.append(
                    "pairing matrix at degree %d is not unimodular (det %d)"
                    % (degree, det))
    return violations


def validate_map(f: RingMap) -> list:
    """Check the ring-homomorphism axioms; returns the violation list."""
    violations = []
    source, target = f.source, f.target
    if source.unit_label is not None and target.unit_label is not None:
        if pullback(f, source.unit()) != target.unit():
            violations.append("unit does not map to unit")
    else:
        violations.append("source or target lacks a unit generator")

    for x in source.generators:
        for y in source.generators:
            if x.degree + y.degree > source.dimension:
                continue
            product = cup(source.basis_class(x.label), source.basis_class(y.label))
            lhs = pullback(f, product)
            rhs = cup(pullback(f, source.basis_class(x.label)),
                      pullback(f, source.basis_class(y.label)))
            if lhs != rhs:
                violations.append(
                    "multiplicativity fails on (%s, %s)" % (x.label, y.label))

    for t in source.generators:
        if t.is_free:
            continue
        image = pullback(f, source.basis_class(t.label))
        if not (t.order * image).is_zero:
            violations.append(
                "image of order-%d generator %s is not killed by %d"
                % (t.order, t.label, t.order))
    return violations
