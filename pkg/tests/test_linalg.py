"""Exact mod-p matrix routines against a plain-list oracle."""

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from koszulkit.linalg import Echelon, nullspace, rank, rref, solve
from oracles import rank_mod_p


def test_rref_known():
    a = np.array([[2, 4], [1, 2]], dtype=np.int64)
    r, pivots = rref(a, 5)
    assert pivots == [0]
    assert r.tolist() == [[1, 2]]


def test_rank_and_nullspace():
    p = 7
    a = np.array([[1, 2, 3], [2, 4, 6], [1, 0, 1]], dtype=np.int64)
    assert rank(a, p) == 2
    ns = nullspace(a, p)
    assert ns.shape[0] == 1
    for v in ns:
        assert not np.any((a @ v) % p)


def test_solve():
    p = 5
    a = np.array([[1, 1], [0, 1]], dtype=np.int64)
    b = np.array([3, 2], dtype=np.int64)
    x = solve(a, b, p)
    assert x is not None and np.array_equal((a @ x) % p, b)
    a2 = np.array([[1, 1], [2, 2]], dtype=np.int64)
    assert solve(a2, np.array([0, 1]), p) is None


def test_echelon_incremental():
    p = 5
    e = Echelon(3, p)
    assert e.add([1, 2, 3])
    assert not e.add([2, 4, 6])
    assert e.add([0, 1, 0])
    assert e.rank == 2
    assert e.contains([1, 3, 3])
    assert not e.contains([0, 0, 1])


_matrix = st.lists(
    st.lists(st.integers(0, 6), min_size=4, max_size=4), min_size=1, max_size=5
)


@settings(max_examples=60, deadline=None)
@given(_matrix)
def test_rank_matches_oracle(rows):
    p = 7
    a = np.array(rows, dtype=np.int64)
    assert rank(a, p) == rank_mod_p(rows, p)


@settings(max_examples=60, deadline=None)
@given(_matrix)
def test_nullspace_is_kernel_of_right_dimension(rows):
    p = 7
    a = np.array(rows, dtype=np.int64)
    ns = nullspace(a, p)
    assert ns.shape[0] == a.shape[1] - rank(a, p)
    for v in ns:
        assert not np.any((a @ v) % p)
    assert rank(ns, p) == ns.shape[0] if ns.size else True


def test_large_modulus_is_exact():
    # products near p^2 must not overflow int64
    p = 32003
    a = np.array([[p - 1, p - 2], [p - 3, p - 4]], dtype=np.int64)
    r = rank(a, p)
    det = ((p - 1) * (p - 4) - (p - 2) * (p - 3)) % p
    assert r == (2 if det else 1)
