"""Two-row homology spectral engine and the circle-bundle pipeline.

The engine handles first-quadrant homology spectral sequences whose
fiber homology lives in degrees 0 and 1 only (rank s in degree 1, with
named basis elements). The single possibly nonzero differential is

    d2: (p, 0) -> (p - 2, 1),

a matrix from H_p(base) to H_{p-2}(base) (x) Z^s, stored column-major in
the convention that target coordinate (i, j) = i * s + j pairs base
index i with fiber label j. The sequence therefore collapses at the
third page: the surviving group at (p, 0) is the kernel of the outgoing
differential (free), the surviving group at (p, 1) the cokernel of the
incoming one. Total-degree groups are reported as the two filtration
pieces and resolved into a single group only when one piece vanishes;
a nontrivial extension problem is reported, never guessed.

The circle-bundle pipeline instantiates this for the family of
principal circle bundles over CP^n with Euler class k x: the self
coincidence trace of the projection lands in the fiber-row slot at
column 0 as (n + 1) times the first fiber generator, and its residue in
the cokernel is the invariant. The same residue is recomputed through
an independent cohomological route (Gysin sequence model of the total
space plus the Euler-form class of the projection) and the two must
agree, otherwise the run fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .coincidence import coincidence_report, self_coincidence_class
from .errors import ComputationError, InputError
from .exact_linalg import (
    AbelianGroup,
    IntMatrix,
    cokernel,
    cokernel_coordinates,
    snf,
)
from .graded_ring import (
    CohomologyClass,
    CohomologyModel,
    Generator,
    RingMap,
    cup,
    euler_characteristic,
    identity_map,
    tensor_model,
)
from .zoo import complex_projective, sphere

__all__ = [
    "TwoRowE2",
    "TwoRowResult",
    "TotalDegree",
    "GysinDegree",
    "GysinResult",
    "S1BundleReport",
    "two_row_homology",
    "gysin_cohomology",
    "s1_bundle_e2",
    "s1_bundle_spectral_residue",
    "total_space_model",
    "bundle_projection_map",
    "s1_bundle_gysin_residue",
    "s1_bundle_reidemeister",
    "euler_from_diagonal",
]


_TRIVIAL = AbelianGroup(0)


# ======================================================================
# generic two-row engine
# ======================================================================

@dataclass(frozen=True)
class TwoRowE2:
    """Start page of a two-row homology spectral sequence.

    base_ranks[p] is the free rank of H_p(base); fiber_labels names the
    degree-1 fiber generators (rank s = len(fiber_labels)); d2 maps
    column p >= 2 to the differential matrix of shape
    (base_ranks[p-2] * s) x base_ranks[p].
    """

    base_ranks: tuple
    fiber_labels: tuple
    d2: tuple

    def __init__(self, base_ranks: Sequence[int], fiber_labels: Sequence[str],
                 d2: Optional[Mapping[int, "IntMatrix | Sequence[Sequence[int]]"]] = None):
        ranks = tuple(int(r) for r in base_ranks)
        if not ranks or any(r < 0 for r in ranks):
            raise ValueError("base ranks must be a nonempty list of nonnegative integers")
        labels = tuple(str(x) for x in fiber_labels)
        object.__setattr__(self, "base_ranks", ranks)
        object.__setattr__(self, "fiber_labels", labels)
        s = len(labels)
        top = len(ranks) - 1
        normalized = []
        for p, entry in sorted((d2 or {}).items()):
            p = int(p)
            if p < 2 or p > top:
                raise ValueError("differential column %d outside [2, %d]" % (p, top))
            if isinstance(entry, IntMatrix):
                matrix = entry
            else:
                entry_rows = [tuple(row) for row in entry]
                matrix = (IntMatrix.from_rows(entry_rows) if entry_rows
                          else IntMatrix.zeros(0, ranks[p]))
            want = (ranks[p - 2] * s, ranks[p])
            if (matrix.rows, matrix.cols) != want:
                raise ValueError(
                    "differential at column %d must be %dx%d, got %dx%d"
                    % (p, want[0], want[1], matrix.rows, matrix.cols))
            normalized.append((p, matrix))
        object.__setattr__(self, "d2", tuple(normalized))

    @property
    def top_column(self) -> int:
        return len(self.base_ranks) - 1

    @property
    def fiber_rank(self) -> int:
        return len(self.fiber_labels)

    def rank(self, p: int) -> int:
        return self.base_ranks[p] if 0 <= p <= self.top_column else 0

    def differential(self, p: int) -> IntMatrix:
        """Outgoing d2 at column p; zero when unspecified or out of range."""
        for column, matrix in self.d2:
            if column == p:
                return matrix
        return IntMatrix.zeros(self.rank(p - 2) * self.fiber_rank, self.rank(p))


@dataclass(frozen=True)
class TotalDegree:
    """Associated-graded description of one total-degree homology group:
    the base-row piece (a quotient of the filtration) and the fiber-row
    piece (the sub). resolved is the actual group when one piece
    vanishes, None when the extension is genuinely ambiguous."""

    degree: int
    base_piece: AbelianGroup
    fiber_piece: AbelianGroup
    resolved: Optional[AbelianGroup]


@dataclass(frozen=True)
class TwoRowResult:
    """Limit page and total-degree groups. base_row[p] and fiber_row[p]
    are the surviving groups at (p, 0) and (p, 1)."""

    base_row: tuple
    fiber_row: tuple
    total: tuple

    def surviving(self, p: int, q: int) -> AbelianGroup:
        row = {0: self.base_row, 1: self.fiber_row}[q]
        return row[p] if 0 <= p < len(row) else _TRIVIAL

    def homology(self, degree: int) -> TotalDegree:
        return self.total[degree]


def two_row_homology(e2: TwoRowE2) -> TwoRowResult:
    """Run the collapse: kernels along the base row, cokernels along the
    fiber row, filtration pieces per total degree."""
    top = e2.top_column
    base_row = []
    for p in range(top + 1):
        outgoing = e2.differential(p)
        base_row.append(AbelianGroup(outgoing.cols - snf(outgoing).rank))
    fiber_row = []
    for p in range(top + 1):
        incoming = e2.differential(p + 2)
        if incoming.rows != e2.rank(p) * e2.fiber_rank:
            raise ComputationError("differential bookkeeping out of step at column %d" % p)
        fiber_row.append(cokernel(incoming))
    total = []
    for degree in range(top + 2):
        base_piece = base_row[degree] if degree <= top else _TRIVIAL
        fiber_piece = fiber_row[degree - 1] if 1 <= degree else _TRIVIAL
        if base_piece.is_trivial():
            resolved = fiber_piece
        elif fiber_piece.is_trivial():
            resolved = base_piece
        else:
            resolved = None
        total.append(TotalDegree(degree, base_piece, fiber_piece, resolved))
    return TwoRowResult(tuple(base_row), tuple(fiber_row), tuple(total))


# ======================================================================
# Gysin sequence of a circle bundle
# ======================================================================

@dataclass(frozen=True)
class GysinDegree:
    """H^i of the total space, presented by the exact-sequence pieces
    0 -> coker(e.: H^{i-2} -> H^i) -> H^i(E) -> ker(e.: H^{i-1} -> H^{i+1}) -> 0."""

    degree: int
    coker_piece: AbelianGroup
    ker_piece: AbelianGroup
    resolved: Optional[AbelianGroup]


@dataclass(frozen=True)
class GysinResult:
    base_name: str
    euler_coefficients: tuple
    degrees: tuple

    def group(self, degree: int) -> GysinDegree:
        return self.degrees[degree]


def _euler_multiplication(base: CohomologyModel, e: CohomologyClass,
                          degree: int) -> IntMatrix:
    """Matrix of e-cup: H^degree(base) -> H^{degree+2}(base)."""
    source = base.basis(degree)
    target = base.basis(degree + 2)
    columns = []
    for gen in source:
        columns.append(cup(e, base.basis_class(gen.label)).coeffs)
    rows = [[columns[j][i] for j in range(len(source))] for i in range(len(target))]
    return IntMatrix.from_rows(rows, cols=len(source))


def gysin_cohomology(base: CohomologyModel, e: CohomologyClass) -> GysinResult:
    """Cohomology of the circle bundle with Euler class e, degree by
    degree from the Gysin exact sequence. The total space has dimension
    dim(base) + 1."""
    if e.model != base:
        raise ValueError("Euler class must live on the base model")
    if e.degree != 2:
        raise InputError("Euler class must have degree 2, got %d" % e.degree)
    if not base.torsion_free:
        raise ComputationError(
            "Gysin pipeline needs a torsion-free base, %r has torsion" % base.name)
    m = base.dimension
    degrees = []
    for i in range(m + 2):
        into = _euler_multiplication(base, e, i - 2)   # H^{i-2} -> H^i
        outof = _euler_multiplication(base, e, i - 1)  # H^{i-1} -> H^{i+1}
        coker_piece = cokernel(into)
        ker_piece = AbelianGroup(outof.cols - snf(outof).rank)
        if coker_piece.is_trivial():
            resolved = ker_piece
        elif ker_piece.is_trivial():
            resolved = coker_piece
        else:
            resolved = None
        degrees.append(GysinDegree(i, coker_piece, ker_piece, resolved))
    return GysinResult(base.name, tuple(e.coeffs), tuple(degrees))


# ======================================================================
# the circle-bundle family over CP^n
# ======================================================================

def _check_family(n: int, k: int):
    if n < 1:
        raise InputError("base exponent n must be >= 1, got %d" % n)
    if k < 0:
        raise InputError("Euler number k must be >= 0, got %d" % k)


def s1_bundle_e2(n: int, k: int) -> TwoRowE2:
    """Start page for the homotopy-equalizer fibration of the bundle
    projection: base CP^n (ranks 1,0,1,...,1 up to degree 2n), fiber
    with two degree-1 generators a, b, and the only recorded
    differential d2 at column 2 sending the base generator to k times a.
    Higher columns carry no recorded differential; only total degree 1
    is consumed by the trace pipeline."""
    _check_family(n, k)
    ranks = [1 if p % 2 == 0 else 0 for p in range(2 * n + 1)]
    return TwoRowE2(ranks, ("a", "b"), {2: [[k], [0]]})


def s1_bundle_spectral_residue(n: int, k: int) -> int:
    """Residue of the trace class (n+1) a in the surviving group at
    (0, 1): its torsion coordinate for k >= 2, the free coordinate for
    the trivial bundle k = 0, and 0 for k = 1 (the slot dies)."""
    _check_family(n, k)
    e2 = s1_bundle_e2(n, k)
    torsion, free = cokernel_coordinates(e2.differential(2), (n + 1, 0))
    if torsion:
        return torsion[0]
    if k == 0:
        return free[0]
    return 0


def _expected_bundle_groups(n: int, k: int):
    """H^i(E) for the bundle with Euler number k over CP^n, resolved
    degree by degree from the Gysin pipeline. Raises when any extension
    fails to resolve (never happens in this family)."""
    result = gysin_cohomology(complex_projective(n), _euler_class(n, k))
    groups = []
    for entry in result.degrees:
        if entry.resolved is None:
            raise ComputationError(
                "bundle family produced an unresolved extension in degree %d"
                % entry.degree)
        groups.append(entry.resolved)
    return groups


def _euler_class(n: int, k: int) -> CohomologyClass:
    base = complex_projective(n)
    return k * base.basis_class("x")


def _power_label(j: int) -> str:
    return "y" if j == 1 else "y^%d" % j


def total_space_model(n: int, k: int) -> CohomologyModel:
    """Cohomology ring of the total space of the Euler-number-k circle
    bundle over CP^n.

    k = 0 is the product CP^n x S^1; k = 1 is the sphere S^{2n+1}; for
    k >= 2 the ring is Z in degrees 0 and 2n+1 with Z/k generated by
    y^j in degree 2j. The products among the y^j are forced: y pulls
    back from the base generator x and pullback is surjective onto the
    even-degree part, so y^i . y^j = y^{i+j}. The additive groups are
    asserted against the Gysin pipeline; a mismatch means the two
    constructions fell out of sync.
    """
    _check_family(n, k)
    if k == 0:
        model = tensor_model(complex_projective(n), sphere(1), name="E0_CP%d" % n)
    elif k == 1:
        model = CohomologyModel(
            name="E1_CP%d" % n,
            dimension=2 * n + 1,
            generators=[Generator("1", 0), Generator("z", 2 * n + 1)],
            orientation={"z": 1})
    else:
        generators = [Generator("1", 0)]
        generators += [Generator(_power_label(j), 2 * j, k) for j in range(1, n + 1)]
        generators.append(Generator("z", 2 * n + 1))
        products = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i + j <= n:
                    products[(_power_label(i), _power_label(j))] = {_power_label(i + j): 1}
        model = CohomologyModel(
            name="E%d_CP%d" % (k, n),
            dimension=2 * n + 1,
            generators=generators,
            products=products,
            orientation={"z": 1})
    expected = _expected_bundle_groups(n, k)
    for degree, want in enumerate(expected):
        torsion = tuple(g.order for g in model.basis(degree) if not g.is_free)
        got = AbelianGroup(model.free_rank(degree), torsion)
        if got != want:
            raise ComputationError(
                "total space model disagrees with the Gysin groups in degree %d: "
                "%s vs %s" % (degree, got.describe(), want.describe()))
    return model


def bundle_projection_map(n: int, k: int) -> RingMap:
    """Induced ring map of the bundle projection: the base generator's
    powers go to the even-degree generators upstairs (which are zero for
    k = 1)."""
    base = complex_projective(n)
    total = total_space_model(n, k)
    matrices = {}
    for j in range(1, n + 1):
        if len(total.basis(2 * j)) == 1:
            matrices[2 * j] = [[1]]
    return RingMap("p%d_CP%d" % (k, n), base, total, matrices)


def s1_bundle_gysin_residue(n: int, k: int) -> int:
    """Same residue as the spectral route, but through cohomology: the
    top even coefficient of the self-coincidence class of the bundle
    projection on the Gysin-validated total-space model."""
    _check_family(n, k)
    projection = bundle_projection_map(n, k)
    euler_form = self_coincidence_class(projection)
    if not euler_form.coeffs:
        return 0
    return euler_form.coeffs[0]


@dataclass(frozen=True)
class S1BundleReport:
    """Reidemeister-trace data of the self-coincidence of the bundle
    projection. trace is the residue of (n+1) in Z/k (in Z for the
    trivial bundle k = 0, flagged by trivial_bundle)."""

    n: int
    k: int
    h1_hoeq: AbelianGroup
    trace: int
    nonzero: bool
    nielsen_tilde: int
    nielsen: int
    trivial_bundle: bool


def s1_bundle_reidemeister(n: int, k: int) -> S1BundleReport:
    """Run both pipelines for the family member (n, k) and report the
    trace residue; the two residues must agree or the computation is
    aborted."""
    _check_family(n, k)
    spectral_residue = s1_bundle_spectral_residue(n, k)
    gysin_residue = s1_bundle_gysin_residue(n, k)
    if spectral_residue != gysin_residue:
        raise ComputationError(
            "pipelines disagree at (n=%d, k=%d): spectral residue %d, "
            "cohomological residue %d" % (n, k, spectral_residue, gysin_residue))
    result = two_row_homology(s1_bundle_e2(n, k))
    h1 = result.homology(1).resolved
    if h1 is None:
        raise ComputationError("degree-1 group of the equalizer did not resolve")
    nonzero = spectral_residue != 0
    flag = 1 if nonzero else 0
    return S1BundleReport(
        n=n, k=k, h1_hoeq=h1, trace=spectral_residue, nonzero=nonzero,
        nielsen_tilde=flag, nielsen=flag, trivial_bundle=(k == 0))


def euler_from_diagonal(model: CohomologyModel) -> int:
    """Coefficient of the point class in the Poincare dual of the
    identity-pair obstruction class; checked against the alternating
    rank sum before returning."""
    report = coincidence_report(identity_map(model), identity_map(model))
    value = report.rho_image_M.coords[0]
    chi = euler_characteristic(model)
    if value != chi:
        raise ComputationError(
            "diagonal self-intersection %d disagrees with the rank count %d "
            "on %r" % (value, chi, model.name))
    return value
