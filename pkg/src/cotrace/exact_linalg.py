"""Exact integer linear algebra.

Everything runs over Python's unbounded ints; intermediate values in the
Smith reduction and in Bareiss determinants grow past 64 bits already at
desk scale, so exactness is non-negotiable.

The Smith normal form carries witnesses: snf(A) returns U, D, V with

    U * A * V = D,   |det U| = |det V| = 1,   D diagonal, d1 | d2 | ...

and everything else is read off that decomposition:

  * columns of V at indices >= rank(A) form a basis of the integer
    kernel lattice of A,
  * coker(A) = Z^rows / (column lattice of A) has free rank
    rows - rank(A) and torsion = the diagonal entries > 1,
  * coordinates of a vector in coker(A) are U*v reduced along the
    diagonal.

Pivoting is deterministic: smallest nonzero absolute value in the
trailing block, ties broken by lowest row then column index. Witnesses
are therefore reproducible run to run.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple

__all__ = [
    "IntMatrix",
    "SNFDecomposition",
    "AbelianGroup",
    "GradedAbelianGroup",
    "snf",
    "kernel_basis",
    "cokernel",
    "cokernel_coordinates",
    "exterior_power",
    "inverse_unimodular",
    "det_rational",
]


# ======================================================================
# matrices
# ======================================================================

@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix. `data` is a tuple of row tuples; for a
    matrix with zero rows the column count cannot be recovered from the
    data, hence the explicit `cols` field."""

    rows: int
    cols: int
    data: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.data) != self.rows:
            raise ValueError("row count does not match data")
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged or mismatched row length")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        """Build from an iterable of rows.

        `cols` is only needed when there are zero rows.

        >>> IntMatrix.from_rows([[1, 2], [3, 4]]).data
        ((1, 2), (3, 4))
        """
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if cols is not None and cols != width:
                raise ValueError("explicit cols contradicts row data")
            return cls(len(data), width, data)
        return cls(0, 0 if cols is None else cols, ())

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: Optional[int] = None,
                 cols: Optional[int] = None) -> "IntMatrix":
        entries = [int(x) for x in entries]
        r = len(entries) if rows is None else rows
        c = len(entries) if cols is None else cols
        if len(entries) > min(r, c):
            raise ValueError("too many diagonal entries")
        data = [[0] * c for _ in range(r)]
        for i, x in enumerate(entries):
            data[i][i] = x
        return cls.from_rows(data, cols=c)

    def row(self, i: int) -> Tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(self.data[i][j] for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self.column(j) for j in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        rows = []
        for i in range(self.rows):
            left = self.data[i]
            rows.append(tuple(
                sum(left[t] * other.data[t][j] for t in range(self.cols))
                for j in range(other.cols)))
        return IntMatrix(self.rows, other.cols, tuple(rows))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.data, other.data)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(k * x for x in row) for row in self.data))

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """Matrix times column vector."""
        if len(vector) != self.cols:
            raise ValueError("vector length does not match columns")
        return tuple(sum(row[j] * vector[j] for j in range(self.cols))
                     for row in self.data)

    def trace(self) -> int:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return sum(self.data[i][i] for i in range(self.rows))

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination.

        >>> IntMatrix.from_rows([[1, 2], [3, 4]]).det()
        -2
        """
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(row) for row in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                pivot_row = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if pivot_row is None:
                    return 0
                a[k], a[pivot_row] = a[pivot_row], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def minor(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self.data[i][j] for j in col_idx] for i in row_idx],
            cols=len(col_idx))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def tolist(self) -> List[List[int]]:
        return [list(row) for row in self.data]


# ======================================================================
# Smith normal form
# ======================================================================

@dataclass(frozen=True)
class SNFDecomposition:
    """Witnessed Smith normal form: U * A * V = D."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def divisors(self) -> Tuple[int, ...]:
        """Nonzero diagonal entries of D (the elementary divisors)."""
        out = []
        for i in range(min(self.D.rows, self.D.cols)):
            if self.D.data[i][i] != 0:
                out.append(self.D.data[i][i])
        return tuple(out)

    @property
    def rank(self) -> int:
        return len(self.divisors)


def snf(matrix: IntMatrix) -> SNFDecomposition:
    """Smith normal form with unimodular witnesses.

    Pivot rule: smallest nonzero absolute value in the trailing block,
    lowest (row, column) on ties. Diagonal entries come out nonnegative
    and each divides the next.

    >>> d = snf(IntMatrix.diagonal([2, 3])).D
    >>> d.data
    ((1, 0), (0, 6))
    """
    m, n = matrix.rows, matrix.cols
    a = [list(row) for row in matrix.data]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] -= q * row[src]
        ad, asrc = a[dst], a[src]
        for j in range(n):
            ad[j] -= q * asrc[j]
        ud, usrc = u[dst], u[src]
        for j in range(m):
            ud[j] -= q * usrc[j]

    def add_col(dst, src, q):
        # col[dst] -= q * col[src]
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def pivot_position(t):
        best = None
        best_abs = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best_abs):
                    best = (i, j)
                    best_abs = abs(x)
        return best

    t = 0
    while t < min(m, n):
        pos = pivot_position(t)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            if a[t][t] < 0:
                negate_row(t)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, a[i][t] // p)
                    if a[i][t]:
                        # positive remainder < p becomes the new, smaller pivot
                        swap_rows(t, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
                        break
            if dirty:
                continue
            offender = None
            for i in range(t + 1, m):
                if any(a[i][j] % p for j in range(t + 1, n)):
                    offender = i
                    break
            if offender is None:
                break
            # fold the offending row into row t so the pivot can shrink
            add_row(t, offender, -1)
        t += 1

    return SNFDecomposition(
        U=IntMatrix.from_rows(u, cols=m),
        D=IntMatrix.from_rows(a, cols=n),
        V=IntMatrix.from_rows(v, cols=n),
    )


def kernel_basis(matrix: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel lattice, as matrix columns.

    Columns are the trailing columns of the V witness, sign-normalized so
    the first nonzero entry of each is positive.

    >>> kernel_basis(IntMatrix.from_rows([[1, 1]])).column(0)
    (1, -1)
    """
    dec = snf(matrix)
    cols = []
    for j in range(dec.rank, matrix.cols):
        col = [dec.V.data[i][j] for i in range(matrix.cols)]
        lead = next((x for x in col if x != 0), 0)
        if lead < 0:
            col = [-x for x in col]
        cols.append(col)
    rows = [[col[i] for col in cols] for i in range(matrix.cols)]
    return IntMatrix.from_rows(rows, cols=len(cols))


# ======================================================================
# abelian groups
# ======================================================================

@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group Z^free_rank + sum_i Z/torsion[i],
    torsion orders >= 2 in divisibility order."""

    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        for t in self.torsion:
            if t < 2:
                raise ValueError("torsion orders must be >= 2")
        for s, t in zip(self.torsion, self.torsion[1:]):
            if t % s:
                raise ValueError("torsion orders must form a divisibility chain")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%d" % self.free_rank)
        parts.extend("Z/%d" % t for t in self.torsion)
        return " + ".join(parts) if parts else "0"


class GradedAbelianGroup:
    """Abelian group per degree, trivial outside the stored range."""

    def __init__(self, groups: Mapping[int, AbelianGroup]):
        self._groups = {int(d): g for d, g in groups.items() if not g.is_trivial()}

    def group(self, degree: int) -> AbelianGroup:
        return self._groups.get(degree, AbelianGroup(0))

    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted(self._groups))

    def items(self):
        return [(d, self._groups[d]) for d in self.degrees()]

    def __eq__(self, other):
        if not isinstance(other, GradedAbelianGroup):
            return NotImplemented
        return self._groups == other._groups

    def __hash__(self):
        return hash(tuple(sorted(self._groups.items())))

    def __repr__(self):
        body = ", ".join("%d: %s" % (d, g.describe()) for d, g in self.items())
        return "GradedAbelianGroup({%s})" % body


def cokernel(matrix: IntMatrix) -> AbelianGroup:
    """Cokernel Z^rows / (column lattice of `matrix`).

    >>> cokernel(IntMatrix.diagonal([2, 3])).describe()
    'Z/6'
    """
    dec = snf(matrix)
    torsion = tuple(d for d in dec.divisors if d > 1)
    return AbelianGroup(free_rank=matrix.rows - dec.rank, torsion=torsion)


def cokernel_coordinates(matrix: IntMatrix, vector: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Coordinates of a target vector in coker(matrix).

    Returns (torsion_coords, free_coords): torsion coordinates reduced
    into [0, order), aligned with cokernel(matrix).torsion; free
    coordinates in the order the free lines appear in the diagonal.
    """
    if len(vector) != matrix.rows:
        raise ValueError("vector length does not match target rank")
    dec = snf(matrix)
    w = dec.U.apply(vector)
    torsion = []
    free = []
    diag = min(matrix.rows, matrix.cols)
    for i in range(matrix.rows):
        d = dec.D.data[i][i] if i < diag else 0
        if d == 0:
            free.append(w[i])
        elif d > 1:
            torsion.append(w[i] % d)
        # d == 1 lines carry no coordinate
    return tuple(torsion), tuple(free)


# ======================================================================
# exterior powers, inverses, rational determinants
# ======================================================================

def exterior_power(matrix: IntMatrix, power: int) -> IntMatrix:
    """Matrix of the induced map on the `power`-th exterior power.

    Basis: `power`-element subsets of the standard basis in lexicographic
    order (itertools.combinations order). Entries are the corresponding
    minors; exterior_power(A, 0) = [[1]].
    """
    if matrix.rows != matrix.cols:
        raise ValueError("exterior powers need a square matrix")
    n = matrix.rows
    if power < 0 or power > n:
        raise ValueError("power out of range [0, %d]" % n)
    subsets = list(combinations(range(n), power))
    rows = [[matrix.minor(rs, cs).det() for cs in subsets] for rs in subsets]
    return IntMatrix.from_rows(rows, cols=len(subsets))


def inverse_unimodular(matrix: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix (via the adjugate).

    Raises ValueError when |det| != 1.
    """
    if matrix.rows != matrix.cols:
        raise ValueError("inverse of a non-square matrix")
    n = matrix.rows
    d = matrix.det()
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular (det = %d)" % d)
    if n == 0:
        return matrix
    cof = [[0] * n for _ in range(n)]
    idx = list(range(n))
    for i in range(n):
        for j in range(n):
            rows = idx[:i] + idx[i + 1:]
            cols = idx[:j] + idx[j + 1:]
            sign = -1 if (i + j) % 2 else 1
            cof[j][i] = sign * matrix.minor(rows, cols).det()
    # adjugate / det, with det = +-1
    return IntMatrix.from_rows([[x * d for x in row] for row in cof], cols=n)


def det_rational(rows: Sequence[Sequence["Fraction | int"]]) -> Fraction:
    """Exact determinant of a rational matrix by Gaussian elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            factor = a[i][k] * inv
            if factor:
                a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
    return det
