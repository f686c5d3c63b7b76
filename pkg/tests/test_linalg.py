from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ratsecat.linalg import (
    Echelon,
    RationalMatrix,
    SubspaceBasis,
    image_basis,
    kernel_basis,
    membership,
    quotient_map,
    rank,
    rref,
)
from strategies import matrices


def dense(M):
    return [[Fraction(x) for x in row] for row in M.to_dense()]


def test_rref_identity():
    I = RationalMatrix.identity(3)
    R, pivots = rref(I)
    assert R == I and pivots == [0, 1, 2]


def test_rref_zero():
    R, pivots = rref(RationalMatrix.zero(2, 3))
    assert R == RationalMatrix.zero(2, 3) and pivots == []


def test_rref_hand_example():
    R, pivots = rref(RationalMatrix.from_dense([[2, 4], [1, 2]]))
    assert dense(R) == [[1, 2], [0, 0]] and pivots == [0]


def test_kernel_examples():
    assert kernel_basis(RationalMatrix.identity(3)).dim == 0
    assert kernel_basis(RationalMatrix.zero(2, 3)).dim == 3
    K = kernel_basis(RationalMatrix.from_dense([[1, 1]]))
    assert [dict(v) for v in K.vectors] == [{0: 1, 1: -1}]


def test_image_examples():
    assert image_basis(RationalMatrix.identity(3)) == SubspaceBasis.full(3)
    assert image_basis(RationalMatrix.zero(3, 2)).dim == 0
    img = image_basis(RationalMatrix.from_dense([[1], [2]]))
    assert [dict(v) for v in img.vectors] == [{0: 1, 1: 2}]


def test_quotient_examples():
    V = SubspaceBasis.full(2)
    assert quotient_map(V, SubspaceBasis(2)).dim == 2
    assert quotient_map(V, V).dim == 0
    q = quotient_map(V, SubspaceBasis(2, [{0: 1, 1: -1}]))
    assert q.dim == 1
    assert [dict(r) for r in q.representatives] == [{0: 1}]


def test_quotient_requires_containment():
    with pytest.raises(ValueError):
        quotient_map(SubspaceBasis(2, [{0: 1}]), SubspaceBasis(2, [{1: 1}]))


def test_membership_examples():
    W = SubspaceBasis(2, [{1: 1}])
    assert membership({}, W)
    assert membership({1: 3}, W)
    assert not membership({0: 1}, W)
    with pytest.raises(ValueError):
        membership([1, 0], SubspaceBasis(3, [{2: 1}]))
    with pytest.raises(ValueError):
        membership({3: 1}, SubspaceBasis(3, [{2: 1}]))


def test_echelon_relation_tracks_offer_order():
    e = Echelon(2, track=True)
    assert e.add({0: 1}) and e.add({1: 1})
    assert not e.add({0: 2, 1: 3})
    assert e.relation() == {0: -2, 1: -3, 2: 1}


@given(matrices())
def test_rank_nullity(rows):
    ncols = len(rows[0]) if rows else 0
    M = RationalMatrix.from_dense(rows, ncols)
    assert rank(M) + kernel_basis(M).dim == M.ncols


@given(matrices())
def test_rank_matches_sympy(rows):
    ncols = len(rows[0]) if rows else 0
    M = RationalMatrix.from_dense(rows, ncols)
    expected = sympy.Matrix(rows).rank() if rows and ncols else 0
    assert rank(M) == expected


@given(matrices())
def test_rref_idempotent(rows):
    ncols = len(rows[0]) if rows else 0
    R, p = rref(RationalMatrix.from_dense(rows, ncols))
    R2, p2 = rref(R)
    assert R2 == R and p2 == p


@given(matrices())
def test_rref_matches_sympy(rows):
    if not rows or not rows[0]:
        return
    R, pivots = rref(RationalMatrix.from_dense(rows))
    S, spiv = sympy.Matrix(rows).rref()
    assert pivots == list(spiv)
    assert dense(R) == [[Fraction(int(x.p), int(x.q)) for x in S.row(i)] for i in range(S.rows)]


@given(matrices())
def test_kernel_vectors_map_to_zero(rows):
    ncols = len(rows[0]) if rows else 0
    M = RationalMatrix.from_dense(rows, ncols)
    for v in kernel_basis(M).vectors:
        assert not any(M @ v)


@given(matrices(), st.data())
def test_quotient_kills_subspace(rows, data):
    ncols = len(rows[0]) if rows else 0
    M = RationalMatrix.from_dense(rows, ncols)
    V = SubspaceBasis.full(M.ncols)
    W = image_basis(M.transpose()) if M.nrows else SubspaceBasis(M.ncols)
    q = quotient_map(V, W)
    assert q.dim == M.ncols - W.dim
    for w in W.vectors:
        assert not any(q(w))
    for i, rep in enumerate(q.representatives):
        assert [int(c) for c in q(rep)] == [1 if j == i else 0 for j in range(q.dim)]
