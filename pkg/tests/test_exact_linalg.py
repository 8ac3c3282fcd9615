import random
from fractions import Fraction

import pytest

from cotrace.exact_linalg import (
    AbelianGroup,
    GradedAbelianGroup,
    IntMatrix,
    cokernel,
    cokernel_coordinates,
    det_rational,
    exterior_power,
    inverse_unimodular,
    kernel_basis,
    snf,
)


def random_matrix(rng, rows, cols, bound=9):
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)],
        cols=cols)


def random_unimodular(rng, n):
    a = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n + 2):
        if n == 0:
            break
        op = rng.randrange(3)
        i = rng.randrange(n)
        if op == 2 or n == 1:
            a[i] = [-x for x in a[i]]
            continue
        j = rng.randrange(n)
        while j == i:
            j = rng.randrange(n)
        if op == 0:
            a[i], a[j] = a[j], a[i]
        else:
            q = rng.randint(-3, 3)
            a[i] = [x + q * y for x, y in zip(a[i], a[j])]
    return IntMatrix.from_rows(a, cols=n)


def check_witnesses(matrix, dec):
    assert dec.U @ matrix @ dec.V == dec.D
    assert dec.U.det() in (1, -1)
    assert dec.V.det() in (1, -1)
    diag = [dec.D.data[i][i] for i in range(min(dec.D.rows, dec.D.cols))]
    for i in range(dec.D.rows):
        for j in range(dec.D.cols):
            if i != j:
                assert dec.D.data[i][j] == 0
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d]
    assert diag[:len(nonzero)] == nonzero  # zeros only at the tail
    for s, t in zip(nonzero, nonzero[1:]):
        assert t % s == 0


# ----------------------------------------------------------------------
# snf
# ----------------------------------------------------------------------

def test_snf_identity():
    m = IntMatrix.identity(2)
    dec = snf(m)
    assert dec.D == IntMatrix.identity(2)
    check_witnesses(m, dec)


def test_snf_zero_rectangular():
    m = IntMatrix.zeros(2, 3)
    dec = snf(m)
    assert dec.D == IntMatrix.zeros(2, 3)
    assert dec.U == IntMatrix.identity(2)
    assert dec.V == IntMatrix.identity(3)


def test_snf_diag_2_3():
    m = IntMatrix.diagonal([2, 3])
    dec = snf(m)
    assert dec.D == IntMatrix.diagonal([1, 6])
    check_witnesses(m, dec)


def test_snf_empty_shapes():
    for rows, cols in [(0, 0), (0, 3), (3, 0)]:
        m = IntMatrix.zeros(rows, cols)
        dec = snf(m)
        assert dec.D.rows == rows and dec.D.cols == cols
        check_witnesses(m, dec)


def test_snf_negative_entries_normalized():
    dec = snf(IntMatrix.from_rows([[-4]]))
    assert dec.D == IntMatrix.from_rows([[4]])
    check_witnesses(IntMatrix.from_rows([[-4]]), dec)


def test_snf_witness_property_200_random():
    rng = random.Random(91)
    for _ in range(200):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = random_matrix(rng, rows, cols)
        check_witnesses(m, snf(m))


def test_rank_plus_kernel_rank_is_cols():
    rng = random.Random(17)
    for _ in range(60):
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), bound=6)
        dec = snf(m)
        ker = kernel_basis(m)
        assert dec.rank + ker.cols == m.cols
        for j in range(ker.cols):
            assert all(x == 0 for x in m.apply(ker.column(j)))


# ----------------------------------------------------------------------
# kernels and cokernels
# ----------------------------------------------------------------------

def test_kernel_identity_empty():
    assert kernel_basis(IntMatrix.identity(3)).cols == 0


def test_kernel_zero_matrix_standard_basis():
    ker = kernel_basis(IntMatrix.zeros(2, 2))
    assert ker == IntMatrix.identity(2)


def test_kernel_row_vector():
    ker = kernel_basis(IntMatrix.from_rows([[1, 1]]))
    assert ker.cols == 1
    assert ker.column(0) == (1, -1)


def test_cokernel_single_relation():
    assert cokernel(IntMatrix.from_rows([[5]])) == AbelianGroup(0, (5,))
    assert cokernel(IntMatrix.from_rows([[0]])) == AbelianGroup(1)
    assert cokernel(IntMatrix.diagonal([2, 3])) == AbelianGroup(0, (6,))


def test_cokernel_unimodular_invariance():
    rng = random.Random(2024)
    for _ in range(40):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = random_matrix(rng, rows, cols, bound=7)
        p = random_unimodular(rng, rows)
        q = random_unimodular(rng, cols)
        assert cokernel(p @ m @ q) == cokernel(m)


def test_cokernel_coordinates_diag():
    m = IntMatrix.diagonal([1, 3])
    torsion, free = cokernel_coordinates(m, (5, 7))
    assert torsion == (1,)  # 7 mod 3
    assert free == ()

    m = IntMatrix.diagonal([2, 0])
    torsion, free = cokernel_coordinates(m, (1, 1))
    assert torsion == (1,)
    assert free == (1,)


def test_cokernel_coordinates_respect_relations():
    # adding a column-lattice vector must not change the coordinates
    rng = random.Random(5)
    for _ in range(30):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), bound=5)
        v = [rng.randint(-9, 9) for _ in range(m.rows)]
        shift = m.apply([rng.randint(-3, 3) for _ in range(m.cols)])
        moved = [a + b for a, b in zip(v, shift)]
        assert cokernel_coordinates(m, v) == cokernel_coordinates(m, moved)


# ----------------------------------------------------------------------
# exterior powers and determinants
# ----------------------------------------------------------------------

def test_exterior_power_small_cases():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert exterior_power(a, 0) == IntMatrix.from_rows([[1]])
    assert exterior_power(a, 1) == a
    assert exterior_power(a, 2) == IntMatrix.from_rows([[-2]])


def test_exterior_power_range_errors():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        exterior_power(a, 3)
    with pytest.raises(ValueError):
        exterior_power(a, -1)
    with pytest.raises(ValueError):
        exterior_power(IntMatrix.zeros(2, 3), 1)


def test_exterior_trace_alternating_sum_is_char_poly_at_one():
    rng = random.Random(8)
    for _ in range(50):
        n = rng.randint(1, 5)
        a = random_matrix(rng, n, n, bound=4)
        lhs = sum((-1) ** i * exterior_power(a, i).trace() for i in range(n + 1))
        assert lhs == (IntMatrix.identity(n) - a).det()


def test_det_frozen_values():
    assert IntMatrix.identity(0).det() == 1
    assert IntMatrix.from_rows([[7]]).det() == 7
    assert IntMatrix.from_rows([[2, 0, 1], [1, 1, 0], [0, 3, 4]]).det() == 11
    assert IntMatrix.from_rows([[1, 2], [2, 4]]).det() == 0


def test_det_matches_rational_path():
    rng = random.Random(13)
    for _ in range(40):
        n = rng.randint(1, 5)
        a = random_matrix(rng, n, n, bound=6)
        assert Fraction(a.det()) == det_rational(a.tolist())


def test_inverse_unimodular():
    p = IntMatrix.from_rows([[0, 1], [-1, 0]])
    assert inverse_unimodular(p) @ p == IntMatrix.identity(2)
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randint(1, 5)
        u = random_unimodular(rng, n)
        assert inverse_unimodular(u) @ u == IntMatrix.identity(n)
    with pytest.raises(ValueError):
        inverse_unimodular(IntMatrix.diagonal([2, 1]))


def test_det_rational_fractions():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(1, 7)]]
    assert det_rational(rows) == Fraction(1, 14) - Fraction(1, 15)


# ----------------------------------------------------------------------
# group records
# ----------------------------------------------------------------------

def test_abelian_group_validation():
    with pytest.raises(ValueError):
        AbelianGroup(0, (2, 3))
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))
    with pytest.raises(ValueError):
        AbelianGroup(-1)
    assert AbelianGroup(1, (2, 6)).describe() == "Z + Z/2 + Z/6"
    assert AbelianGroup(0).describe() == "0"
    assert AbelianGroup(2).describe() == "Z^2"


def test_graded_group_container():
    g = GradedAbelianGroup({0: AbelianGroup(1), 1: AbelianGroup(0), 2: AbelianGroup(0, (2,))})
    assert g.degrees() == (0, 2)
    assert g.group(1).is_trivial()
    assert g == GradedAbelianGroup({0: AbelianGroup(1), 2: AbelianGroup(0, (2,))})


def test_matrix_shape_guards():
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(ValueError):
        IntMatrix.zeros(2, 2) @ IntMatrix.zeros(3, 2)
    with pytest.raises(ValueError):
        IntMatrix.zeros(2, 3).trace()
