from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF, QQ

from domdim.algebra import linalg


def test_kernel_of_rank_one_matrix():
    a = linalg.matrix([[1, 2, 3], [2, 4, 6]], (2, 3), QQ)
    kernel = linalg.kernel(a)
    assert kernel.shape == (3, 2)
    assert linalg.is_zero(linalg.matmul(a, kernel))
    assert linalg.rank(a) == 1


def test_empty_shapes():
    empty = linalg.zeros(0, 3, QQ)
    assert linalg.rank(empty) == 0
    assert linalg.kernel(empty).shape == (3, 3)
    assert linalg.kernel(linalg.zeros(2, 0, QQ)).shape == (0, 0)
    assert linalg.matmul(linalg.zeros(2, 0, QQ), linalg.zeros(0, 4, QQ)).shape == (2, 4)
    assert linalg.vstack(cols=2, domain=QQ).shape == (0, 2)
    assert linalg.hstack(rows=3, domain=QQ).shape == (3, 0)


def test_chain_applies_first_matrix_first():
    a = linalg.matrix([[1, 1]], (1, 2), QQ)
    b = linalg.matrix([[2], [3]], (2, 1), QQ)
    assert linalg.chain([a, b]).shape == (2, 2)
    assert linalg.chain([b, a]).shape == (1, 1)


def test_quotient_projection_kills_subspace():
    subspace = linalg.matrix([[1], [1], [0]], (3, 1), QQ)
    projection, indices = linalg.quotient(subspace)
    assert projection.shape == (2, 3)
    assert len(indices) == 2
    assert linalg.is_zero(linalg.matmul(projection, subspace))
    section = linalg.unit_columns(3, indices, QQ)
    assert linalg.equal(linalg.matmul(projection, section), linalg.identity(2, QQ))


def test_dual_functionals_are_dual():
    subspace = linalg.matrix([[1, 0], [2, 1], [0, 3]], (3, 2), QQ)
    phi = linalg.dual_functionals(subspace)
    assert linalg.equal(linalg.matmul(phi, subspace), linalg.identity(2, QQ))


def test_prime_field_rank_differs_from_rational():
    a = [[1, 1], [1, -1]]
    assert linalg.rank(linalg.matrix(a, (2, 2), QQ)) == 2
    assert linalg.rank(linalg.matrix(a, (2, 2), GF(2))) == 1


def test_shape_mismatch_raises():
    with pytest.raises(ValueError, match="Rows do not match"):
        linalg.matrix([[1, 2]], (2, 2), QQ)
    with pytest.raises(ValueError, match="Cannot multiply"):
        linalg.matmul(linalg.zeros(2, 3, QQ), linalg.zeros(2, 3, QQ))


small = st.integers(min_value=-3, max_value=3)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_nullity(m, n, data):
    rows = data.draw(st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m))
    a = linalg.matrix(rows, (m, n), QQ)
    kernel = linalg.kernel(a)
    assert linalg.rank(a) + kernel.shape[1] == n
    assert linalg.is_zero(linalg.matmul(a, kernel))
    assert linalg.rank(linalg.column_basis(a)) == linalg.rank(a)


@pytest.mark.parametrize("domain", [QQ, GF(3)])
def test_empty_blocks_stack(domain):
    wide = linalg.matrix([[1, 2]], (1, 2), domain)
    assert linalg.hstack(wide, linalg.zeros(1, 0, domain)).shape == (1, 2)
    assert linalg.vstack(linalg.zeros(0, 2, domain), wide).shape == (1, 2)
    assert linalg.transpose(linalg.zeros(0, 3, domain)).shape == (3, 0)
    assert linalg.identity(0, domain).shape == (0, 0)
    assert linalg.inverse(linalg.identity(0, domain)).shape == (0, 0)
    assert linalg.complement_indices(linalg.zeros(0, 0, domain)) == []


def test_block_diag_places_blocks_on_the_diagonal():
    a = linalg.matrix([[1, 2]], (1, 2), QQ)
    b = linalg.matrix([[3], [4]], (2, 1), QQ)
    total = linalg.block_diag([a, linalg.zeros(0, 1, QQ), b], QQ)
    assert total.shape == (3, 4)
    assert linalg.rows_of(total) == [[1, 2, 0, 0], [0, 0, 0, 3], [0, 0, 0, 4]]
    assert linalg.block_diag([], QQ).shape == (0, 0)


def test_combine_scales_and_adds():
    one = linalg.identity(2, GF(3))
    total = linalg.combine([(1, one), (2, one)], (2, 2), GF(3))
    assert linalg.is_zero(total)
    assert linalg.equal(linalg.combine([(2, one)], (2, 2), GF(3)), linalg.add(one, one))
