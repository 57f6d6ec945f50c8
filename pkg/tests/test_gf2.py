"""Unit and property tests for the bit-packed GF(2) kernel."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tricell import gf2


def naive_rank(rows, cols):
    """List-based Gaussian elimination, independent of the packed path."""
    m = [[(w >> j) & 1 for j in range(cols)] for w in rows]
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                m[r] = [a ^ b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


matrices = st.integers(1, 8).flatmap(
    lambda cols: st.lists(st.integers(0, 2**cols - 1), min_size=0, max_size=8).map(
        lambda rows: gf2.BitMatrix(len(rows), cols, tuple(rows))
    )
)


def test_rank_identity():
    assert gf2.rank(gf2.BitMatrix.identity(3)) == 3


def test_rank_zero_matrix():
    assert gf2.rank(gf2.BitMatrix.zero(5, 4)) == 0


def test_kernel_of_zero_map():
    basis = gf2.kernel_basis(gf2.BitMatrix.zero(4, 3))
    assert len(basis) == 4
    m = gf2.BitMatrix.from_rows(basis)
    assert gf2.rank(m) == 4


def test_kernel_of_injective_map():
    assert gf2.kernel_basis(gf2.BitMatrix(1, 1, (1,))) == []


def test_image_identity():
    basis = gf2.image_basis(gf2.BitMatrix.identity(2))
    assert len(basis) == 2
    assert gf2.rank(gf2.BitMatrix.from_rows(basis)) == 2


def test_image_zero():
    assert gf2.image_basis(gf2.BitMatrix.zero(3, 2)) == []


def test_solve_in_span_simple():
    e1 = gf2.BitVector.from_indices(2, [0])
    e2 = gf2.BitVector.from_indices(2, [1])
    coeffs = gf2.solve_in_span([e1, e2], e1 + e2)
    assert coeffs == gf2.BitVector(2, 0b11)


def test_solve_in_span_unsolvable():
    e1 = gf2.BitVector.from_indices(2, [0])
    e2 = gf2.BitVector.from_indices(2, [1])
    assert gf2.solve_in_span([e1], e2) is None


def test_multiply_identity():
    m = gf2.BitMatrix(2, 3, (0b101, 0b011))
    assert gf2.multiply(gf2.BitMatrix.identity(2), m) == m


def test_multiply_shape_error():
    a = gf2.BitMatrix.zero(2, 3)
    b = gf2.BitMatrix.zero(2, 2)
    with pytest.raises(ValueError, match="2x3.*2x2"):
        gf2.multiply(a, b)


def test_vector_addition_is_involution():
    v = gf2.BitVector(5, 0b10110)
    assert (v + v).is_zero
    assert v[1] == 1 and v[0] == 0


def test_vector_bounds_checked():
    v = gf2.BitVector(3, 0b101)
    with pytest.raises(IndexError):
        v[3]
    with pytest.raises(ValueError):
        v + gf2.BitVector(4, 0)


@given(matrices)
def test_rank_nullity(m):
    assert gf2.rank(m) + len(gf2.kernel_basis(m)) == m.rows


@given(matrices)
def test_rank_equals_transpose_rank(m):
    assert gf2.rank(m) == gf2.rank(m.transpose())


@given(matrices)
def test_rank_matches_naive_oracle(m):
    assert gf2.rank(m) == naive_rank(m.row_words, m.cols)


@given(matrices)
def test_kernel_vectors_annihilate(m):
    for v in gf2.kernel_basis(m):
        assert gf2.vec_times_matrix(v, m).is_zero


@given(matrices)
def test_image_vectors_have_preimages(m):
    for v, pre in gf2.image_basis_with_preimages(m):
        assert gf2.vec_times_matrix(pre, m) == v


@settings(max_examples=50)
@given(matrices, st.integers(0, 2**8 - 1))
def test_solve_recombines_exactly(m, pick):
    # a target made from a random row combination is always solvable
    vecs = [m.row(i) for i in range(m.rows)]
    target = gf2.BitVector(m.cols)
    for i in range(m.rows):
        if (pick >> i) & 1:
            target = target + vecs[i]
    coeffs = gf2.solve_in_span(vecs, target)
    assert coeffs is not None
    recombined = gf2.BitVector(m.cols)
    for i in coeffs.support():
        recombined = recombined + vecs[i]
    assert recombined == target
