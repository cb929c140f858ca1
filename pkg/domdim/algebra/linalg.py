"""Exact linear algebra over ``QQ`` or ``GF(p)`` on top of ``DomainMatrix``.

Matrices are kept in sympy's sparse format; the operators that densify
(``*``, ``+``, ``vstack``) are converted back so every helper sees one format.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Any

from sympy.polys.matrices import DomainMatrix

Domain = Any


def matrix(rows: Sequence[Sequence[Any]], shape: tuple[int, int], domain: Domain) -> DomainMatrix:
    """Build a matrix from nested sequences of integers or domain elements."""
    m, n = shape
    if len(rows) != m or any(len(row) != n for row in rows):
        raise ValueError(f"Rows do not match shape {shape}")
    converted = [[domain.convert(entry) for entry in row] for row in rows]
    return DomainMatrix(converted, (m, n), domain).to_sparse()


def zeros(m: int, n: int, domain: Domain) -> DomainMatrix:
    return DomainMatrix.zeros((m, n), domain)


def identity(n: int, domain: Domain) -> DomainMatrix:
    return DomainMatrix.eye(n, domain)


def unit_columns(m: int, indices: Sequence[int], domain: Domain) -> DomainMatrix:
    """Columns e_i for ``i`` in ``indices`` in an ``m``-dimensional space."""
    return identity(m, domain).extract(list(range(m)), list(indices))


def rows_of(a: DomainMatrix) -> list[list[Any]]:
    return a.to_list()


def transpose(a: DomainMatrix) -> DomainMatrix:
    return a.transpose()


def matmul(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"Cannot multiply shapes {a.shape} and {b.shape}")
    return (a * b).to_sparse()


def chain(matrices: Sequence[DomainMatrix]) -> DomainMatrix:
    """Product ``matrices[-1] @ ... @ matrices[0]``."""
    result = matrices[0]
    for factor in matrices[1:]:
        result = matmul(factor, result)
    return result


def add(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    if a.shape != b.shape:
        raise ValueError(f"Cannot add shapes {a.shape} and {b.shape}")
    return (a + b).to_sparse()


def combine(terms: Iterable[tuple[int, DomainMatrix]], shape: tuple[int, int], domain: Domain) -> DomainMatrix:
    """Linear combination ``sum(c * M)`` with integer coefficients."""
    acc = zeros(*shape, domain)
    for coefficient, term in terms:
        acc = add(acc, term * domain.convert(coefficient))
    return acc


def is_zero(a: DomainMatrix) -> bool:
    return a.is_zero_matrix


def rref(a: DomainMatrix) -> tuple[DomainMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    reduced, pivots = a.rref()
    return reduced, tuple(pivots)


def rank(a: DomainMatrix) -> int:
    return len(rref(a)[1])


def kernel(a: DomainMatrix) -> DomainMatrix:
    """Columns spanning ``{x : a x = 0}``."""
    return a.nullspace().transpose().to_sparse()


def column_basis(a: DomainMatrix) -> DomainMatrix:
    """The pivot columns of ``a``: a basis of its column space."""
    return a.extract(list(range(a.shape[0])), list(rref(a)[1]))


def hstack(*blocks: DomainMatrix, rows: int | None = None, domain: Domain = None) -> DomainMatrix:
    if not blocks:
        if rows is None or domain is None:
            raise ValueError("hstack of nothing needs rows and domain")
        return zeros(rows, 0, domain)
    if len({block.shape[0] for block in blocks}) != 1:
        raise ValueError("hstack blocks disagree on row count")
    first, *rest = blocks
    return first.hstack(*rest).to_sparse()


def vstack(*blocks: DomainMatrix, cols: int | None = None, domain: Domain = None) -> DomainMatrix:
    if not blocks:
        if cols is None or domain is None:
            raise ValueError("vstack of nothing needs cols and domain")
        return zeros(0, cols, domain)
    if len({block.shape[1] for block in blocks}) != 1:
        raise ValueError("vstack blocks disagree on column count")
    first, *rest = blocks
    return first.vstack(*rest).to_sparse()


def block_diag(blocks: Sequence[DomainMatrix], domain: Domain) -> DomainMatrix:
    height = sum(block.shape[0] for block in blocks)
    width = sum(block.shape[1] for block in blocks)
    rows = []
    left = 0
    for block in blocks:
        m, n = block.shape
        rows.append(hstack(zeros(m, left, domain), block, zeros(m, width - left - n, domain)))
        left += n
    return vstack(*rows, cols=width, domain=domain) if height else zeros(0, width, domain)


def select_rows(a: DomainMatrix, indices: Sequence[int]) -> DomainMatrix:
    return a.extract(list(indices), list(range(a.shape[1])))


def inverse(a: DomainMatrix) -> DomainMatrix:
    m, n = a.shape
    if m != n:
        raise ValueError(f"Cannot invert non-square shape {a.shape}")
    if m == 0:
        return a
    return a.inv().to_sparse()


def is_invertible(a: DomainMatrix) -> bool:
    m, n = a.shape
    return m == n and rank(a) == m


def complement_indices(basis: DomainMatrix) -> list[int]:
    """Standard basis indices whose unit vectors extend the columns of ``basis``."""
    m, r = basis.shape
    pivots = rref(hstack(basis, identity(m, basis.domain)))[1]
    return [p - r for p in pivots if p >= r]


def quotient(subspace: DomainMatrix) -> tuple[DomainMatrix, list[int]]:
    """Projection onto ``V / span(subspace)`` and the unit vectors used as its basis.

    ``subspace`` must have independent columns. The projection has shape
    ``(m - r, m)`` and is the identity on the returned complement.
    """
    m, r = subspace.shape
    indices = complement_indices(subspace)
    if not indices:
        return zeros(0, m, subspace.domain), []
    frame = hstack(subspace, unit_columns(m, indices, subspace.domain))
    return select_rows(inverse(frame), range(r, m)), indices


def dual_functionals(subspace: DomainMatrix) -> DomainMatrix:
    """Rows ``phi`` with ``phi @ subspace = I`` vanishing on a fixed complement."""
    m, r = subspace.shape
    if r == 0:
        return zeros(0, m, subspace.domain)
    indices = complement_indices(subspace)
    frame = hstack(subspace, unit_columns(m, indices, subspace.domain))
    return select_rows(inverse(frame), range(r))


def equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    return a.shape == b.shape and rows_of(a) == rows_of(b)
