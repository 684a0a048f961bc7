import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normtori.intlin import (
    IntMatrix,
    MatrixFormatError,
    hnf,
    invariant_factors,
    kernel_basis,
    lattice_contains,
    lattice_solve,
    rank,
    same_lattice,
    saturation,
    snf,
    unimodular_inverse,
)


def M(rows):
    return IntMatrix.from_rows(rows)


def is_smith_diagonal(D):
    m, n = D.shape
    for i in range(m):
        for j in range(n):
            if i != j and D[i, j]:
                return False
    diag = [D[i, i] for i in range(min(m, n))]
    if any(d < 0 for d in diag):
        return False
    nz = [d for d in diag if d]
    if diag[:len(nz)] != nz:
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))


def check_smith(A):
    f = snf(A)
    assert f.U @ A @ f.V == f.D
    assert abs(f.U.det()) == 1
    assert abs(f.V.det()) == 1
    assert is_smith_diagonal(f.D)
    return f


def check_hermite(A):
    h = hnf(A)
    assert A @ h.U == h.H
    assert abs(h.U.det()) == 1
    for k, r in enumerate(h.pivots):
        assert h.H[r, k] > 0
        assert all(h.H[i, k] == 0 for i in range(r))
        for j in range(k):
            assert 0 <= h.H[r, j] < h.H[r, k]
    for k in range(h.rank, A.cols):
        assert all(v == 0 for v in h.H.column(k))
    assert list(h.pivots) == sorted(set(h.pivots))
    return h


def random_matrix(rng, max_dim=8, lo=-5, hi=5):
    m, n = rng.randint(0, max_dim), rng.randint(0, max_dim)
    return IntMatrix(m, n, [rng.randint(lo, hi) for _ in range(m * n)])


# -- IntMatrix --------------------------------------------------------------------


def test_shape_checks():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, [1, 2, 3])
    with pytest.raises(ValueError):
        IntMatrix(-1, 0)
    assert IntMatrix.zeros(3, 0).shape == (3, 0)
    assert IntMatrix.zeros(0, 4).T.shape == (4, 0)


def test_product_and_empty_shapes():
    A = IntMatrix.zeros(3, 0)
    B = IntMatrix.zeros(0, 2)
    assert A @ B == IntMatrix.zeros(3, 2)
    assert M([[1, 2], [3, 4]]) @ M([[0, 1], [1, 0]]) == M([[2, 1], [4, 3]])


def test_big_integers_survive():
    big = 10 ** 40
    A = M([[big, 1], [0, 1]])
    assert (A @ A)[0, 0] == big * big
    assert A.det() == big


def test_text_round_trip():
    A = M([[1, -2, 3], [0, 10 ** 30, -7]])
    assert IntMatrix.from_text(A.to_text()) == A
    assert IntMatrix.from_text(IntMatrix.zeros(0, 3).to_text()).shape == (0, 3)


@pytest.mark.parametrize("text", ["", "2 2\n1 2\n", "2 x\n", "1 2\n1 a\n", "1 2\n1 2 3\n"])
def test_text_errors(text):
    with pytest.raises(MatrixFormatError):
        IntMatrix.from_text(text)


def test_block_helpers():
    A = IntMatrix.block_diag([M([[1]]), M([[2, 3]])])
    assert A == M([[1, 0, 0], [0, 2, 3]])
    assert IntMatrix.hstack([M([[1], [2]]), M([[3], [4]])]) == M([[1, 3], [2, 4]])
    assert IntMatrix.vstack([M([[1, 2]]), M([[3, 4]])]) == M([[1, 2], [3, 4]])


# -- snf --------------------------------------------------------------------------


def test_snf_identity():
    f = check_smith(IntMatrix.identity(2))
    assert f.D == IntMatrix.identity(2)


def test_snf_2468():
    f = check_smith(M([[2, 4], [6, 8]]))
    assert f.D == IntMatrix.diag([2, 4])


def test_snf_zero():
    f = check_smith(IntMatrix.zeros(2, 2))
    assert f.D == IntMatrix.zeros(2, 2)


def test_snf_empty():
    f = check_smith(IntMatrix.zeros(0, 0))
    assert f.D.shape == (0, 0)
    f = check_smith(IntMatrix.zeros(3, 0))
    assert f.U.shape == (3, 3)


def test_snf_divisibility_fix():
    # diag(2, 3) is diagonal but not in Smith form
    f = check_smith(IntMatrix.diag([2, 3]))
    assert f.diagonal == [1, 6]
    assert invariant_factors(IntMatrix.diag([2, 3])) == [6]


def test_snf_rectangular():
    f = check_smith(M([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert f.diagonal == [2, 6, 12]
    check_smith(M([[1, 2, 3, 4], [2, 4, 6, 8]]))


def test_snf_deterministic():
    A = M([[3, 5, 7], [2, -4, 6], [1, 1, 9]])
    assert snf(A) == snf(A)


def test_snf_idempotent_on_d():
    A = M([[4, 6], [10, 14], [2, 8]])
    D = snf(A).D
    assert snf(D).D == D


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6), st.data())
def test_snf_hypothesis(m, n, data):
    entries = data.draw(st.lists(st.integers(-9, 9), min_size=m * n, max_size=m * n))
    check_smith(IntMatrix(m, n, entries))


# -- hnf --------------------------------------------------------------------------


def test_hnf_identity():
    assert check_hermite(IntMatrix.identity(3)).H == IntMatrix.identity(3)


def test_hnf_single_column():
    assert check_hermite(M([[2], [4]])).H == M([[2], [4]])


def test_hnf_diag():
    assert check_hermite(M([[2, 0], [0, 3]])).H == M([[2, 0], [0, 3]])


def test_hnf_reduces_left_entries():
    h = check_hermite(M([[1, 0], [5, 3]]))
    assert h.H == M([[1, 0], [2, 3]])


def test_hnf_negative_pivot_made_positive():
    assert check_hermite(M([[-3]])).H == M([[3]])


def test_hnf_span_preserved():
    rng = random.Random(7)
    for _ in range(50):
        A = random_matrix(rng, 6)
        h = check_hermite(A)
        assert same_lattice(A, h.basis)
        assert rank(A) == h.rank


# -- kernels and lattices ---------------------------------------------------------


def test_kernel_single_row():
    K = kernel_basis(M([[1, 1]]))
    assert K.shape == (2, 1)
    assert K.column(0) in {(1, -1), (-1, 1)}


def test_kernel_identity_empty():
    assert kernel_basis(IntMatrix.identity(3)).shape == (3, 0)


def test_kernel_zero_full():
    K = kernel_basis(IntMatrix.zeros(1, 2))
    assert K.cols == 2
    assert same_lattice(K, IntMatrix.identity(2))


def test_kernel_is_primitive():
    # the kernel lattice of (2 4) is spanned by (2,-1), never by a multiple
    K = kernel_basis(M([[2, 4]]))
    assert same_lattice(K, M([[2], [-1]]))


def test_lattice_contains_examples():
    L = M([[2], [4]])
    assert lattice_contains(L, (2, 4))
    assert not lattice_contains(L, (1, 2))
    assert lattice_contains(IntMatrix.identity(3), (5, -7, 11))
    with pytest.raises(ValueError):
        lattice_contains(L, (1, 2, 3))


def test_lattice_solve_returns_coordinates():
    L = M([[2, 0], [1, 3]])
    x = lattice_solve(L, (4, 8))
    assert L.apply(x) == (4, 8)
    assert lattice_solve(L, (1, 0)) is None


def test_saturation_examples():
    assert same_lattice(saturation(M([[2], [4]])), M([[1], [2]]))
    U = M([[2, 1], [1, 1]])
    assert same_lattice(saturation(U), IntMatrix.identity(2))
    assert saturation(IntMatrix.zeros(3, 0)).cols == 0


def test_unimodular_inverse():
    U = M([[2, 1], [1, 1]])
    assert U @ unimodular_inverse(U) == IntMatrix.identity(2)


def test_fuzz_kernel_and_membership():
    rng = random.Random(11)
    for _ in range(200):
        A = random_matrix(rng, 6, -4, 4)
        K = kernel_basis(A)
        assert K.cols == A.cols - rank(A)
        assert (A @ K).is_zero()
        if A.cols:
            x = [rng.randint(-3, 3) for _ in range(A.cols)]
            assert lattice_contains(A, A.apply(x))
            # adding a kernel vector leaves the kernel lattice unchanged
            if K.cols:
                extra = K.apply([rng.randint(-2, 2) for _ in range(K.cols)])
                assert same_lattice(K, IntMatrix.hstack([K, IntMatrix.column_vector(extra)]))
