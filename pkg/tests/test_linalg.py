import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import SlowField, rank as slow_rank
from repcheck import linalg as L
from repcheck import poly as P
from repcheck.field import ff_make

fields = st.sampled_from([(5, 1), (3, 2), (2, 1), (7, 1)])


def _mat(F, data, shape):
    return np.array(data.draw(st.lists(st.integers(0, F.q - 1), min_size=shape[0] * shape[1], max_size=shape[0] * shape[1]))).reshape(shape)


def test_identity_and_zero():
    F = ff_make(5)
    r = L.mat_rref(F, np.eye(3, dtype=int))
    assert r.rank == 3 and r.nullspace.shape == (0, 3)
    r = L.mat_rref(F, np.zeros((2, 4), dtype=int))
    assert r.rank == 0 and r.nullspace.shape == (4, 4)


def test_hand_reduction():
    F = ff_make(5)
    r = L.mat_rref(F, [[1, 2], [2, 4]])
    assert r.rank == 1 and r.pivots == [0]
    assert r.nullspace.tolist() == [[3, 1]]


@settings(max_examples=60, deadline=None)
@given(fields, st.integers(1, 6), st.integers(1, 6), st.data())
def test_rank_properties(pk, m, n, data):
    F = ff_make(*pk)
    A = _mat(F, data, (m, n))
    r = L.mat_rref(F, A)
    assert r.rank == L.rank(F, A.T)
    assert r.rank + len(r.nullspace) == n
    assert not np.any(F.matmul(A, r.nullspace.T)) if len(r.nullspace) else True
    R2, _ = L.rref(F, r.reduced)
    assert np.array_equal(R2, r.reduced)
    assert r.rank == slow_rank(SlowField(F.p, F.modulus), A.tolist())


@settings(max_examples=40, deadline=None)
@given(fields, st.data())
def test_kron_multiplicative(pk, data):
    F = ff_make(*pk)
    A, B, C, D = (_mat(F, data, (2, 2)) for _ in range(4))
    lhs = F.matmul(L.kron(F, A, B), L.kron(F, C, D))
    rhs = L.kron(F, F.matmul(A, C), F.matmul(B, D))
    assert np.array_equal(lhs, rhs)


def test_kron_shapes():
    F = ff_make(5)
    assert L.kron(F, np.ones((2, 2), int), np.ones((3, 3), int)).shape == (6, 6)
    assert np.array_equal(L.kron(F, np.eye(2, dtype=int), np.eye(3, dtype=int)), np.eye(6))


def test_minpoly_order_examples():
    F = ff_make(5)
    mp, o = L.mat_minpoly_order(F, [[1, 1], [0, 1]])
    assert mp.tolist() == [1, 3, 1] and o == 5  # (t-1)^2
    assert L.mat_minpoly_order(F, [[2, 0], [0, 3]])[1] == 4
    mp, o = L.mat_minpoly_order(F, np.eye(3, dtype=int))
    assert mp.tolist() == [4, 1] and o == 1
    with pytest.raises(ZeroDivisionError):
        L.mat_minpoly_order(F, [[0, 1], [0, 0]])


@settings(max_examples=40, deadline=None)
@given(fields, st.integers(1, 5), st.data())
def test_minpoly_divides_charpoly(pk, n, data):
    F = ff_make(*pk)
    A = _mat(F, data, (n, n))
    mp = L.minpoly(F, A)
    cp = L.charpoly(F, A)
    assert P.deg(cp) == n
    assert not np.any(P.evaluate_matrix(F, mp, A))
    assert not len(P.rem(F, cp, mp))
    assert not np.any(P.evaluate_matrix(F, cp, A))


@settings(max_examples=40, deadline=None)
@given(fields, st.integers(1, 5), st.data())
def test_inverse(pk, n, data):
    F = ff_make(*pk)
    A = _mat(F, data, (n, n))
    if L.rank(F, A) < n:
        with pytest.raises(ZeroDivisionError):
            L.inverse(F, A)
    else:
        assert np.array_equal(F.matmul(A, L.inverse(F, A)), np.eye(n))


def test_rowspace_incremental_matches_batch():
    F = ff_make(3, 2)
    rng = np.random.default_rng(3)
    X = F.random(rng, (12, 7))
    X[5:] = F.matmul(F.random(rng, (7, 5)), X[:5])  # rank <= 5
    S = L.RowSpace(F, 7)
    for i in range(0, 12, 3):
        S.add(X[i : i + 3])
    R, piv = L.rref(F, X)
    assert S.pivots == piv and np.array_equal(S.basis, R)
    c = S.coordinates(X)
    assert np.array_equal(F.matmul(c, S.basis), X)
