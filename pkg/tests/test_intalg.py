import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genuscalc.intalg import (
    DimensionError,
    IntMatrix,
    determinant,
    inverse_mod,
    is_identity_mod,
    mat_mod,
    sl_lift,
    smith_normal_form,
    unimodular_inverse,
)


def small_matrix(max_n=4, bound=20):
    return st.integers(1, max_n).flatmap(
        lambda r: st.integers(1, max_n).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


def square(n, bound=9):
    return st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n)


def random_unimodular(n, rng, steps=8):
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        k = rng.randint(-3, 3)
        M[i] = [a + k * b for a, b in zip(M[i], M[j])]
    return IntMatrix.from_rows(M)


def test_determinant_examples():
    assert determinant([[2, 1], [1, 1]]) == 1
    assert determinant(IntMatrix.zeros(0, 0)) == 1
    assert determinant([[2, 4], [6, 8]]) == -8


def test_determinant_needs_square():
    with pytest.raises(DimensionError):
        determinant([[1, 2, 3]])


@given(square(3), square(3))
def test_determinant_multiplicative(a, b):
    A, B = IntMatrix.from_rows(a), IntMatrix.from_rows(b)
    assert determinant(A @ B) == determinant(A) * determinant(B)


def test_snf_examples():
    s = smith_normal_form([[0]])
    assert s.D == [[0]] and s.U == [[1]] and s.V == [[1]]
    assert smith_normal_form(IntMatrix.identity(2)).D == IntMatrix.identity(2)
    M = IntMatrix.from_rows([[2, 4], [6, 8]])
    s = smith_normal_form(M)
    assert s.diagonal == [2, 4]
    assert s.U @ M @ s.V == s.D


def check_snf(M):
    s = smith_normal_form(M)
    assert s.U @ M @ s.V == s.D
    assert s.D.is_diagonal()
    d = s.diagonal
    assert all(x >= 0 for x in d)
    assert all(b % a == 0 if a else b == 0 for a, b in zip(d, d[1:]))
    assert abs(determinant(s.U)) == 1 and abs(determinant(s.V)) == 1
    return d


@given(small_matrix())
def test_snf_contract(rows):
    check_snf(IntMatrix.from_rows(rows))


def test_snf_rectangular_and_empty():
    assert check_snf(IntMatrix.from_rows([[2, 0, 0]])) == [2]
    assert check_snf(IntMatrix.from_rows([[0], [6], [4]])) == [2]
    assert smith_normal_form(IntMatrix.zeros(0, 3)).D.shape == (0, 3)


@settings(max_examples=60)
@given(square(3), st.randoms(use_true_random=False))
def test_snf_invariant_under_unimodular_change(rows, r):
    M = IntMatrix.from_rows(rows)
    P, Q = random_unimodular(3, r), random_unimodular(3, r)
    assert smith_normal_form(P @ M @ Q).diagonal == smith_normal_form(M).diagonal


def test_sl_lift_examples():
    assert sl_lift(IntMatrix.identity(2), 5) == IntMatrix.identity(2)
    R = sl_lift([[2, 1], [1, 1]], 7)
    assert determinant(R) == 1 and mat_mod(R, 7) == [[2, 1], [1, 1]]
    assert sl_lift([[3, 0], [0, 5]], 1) == IntMatrix.identity(2)


def test_sl_lift_rejects_bad_det():
    with pytest.raises(ValueError):
        sl_lift([[2, 0], [0, 1]], 7)


@pytest.mark.parametrize("m", [2, 4, 6, 12, 30, 97, 100])
def test_sl_lift_random(m):
    rng = random.Random(m)
    for n in (1, 2, 3, 4):
        for _ in range(10):
            A = mat_mod(random_unimodular(n, rng, 12) @ IntMatrix.diag([1] * n), m)
            # scramble with a det-1 residue matrix of its own
            A = mat_mod(A @ random_unimodular(n, rng), m)
            R = sl_lift(A, m)
            assert determinant(R) == 1
            assert mat_mod(R, m) == mat_mod(A, m)


def test_inverses():
    G = IntMatrix.from_rows([[2, 1], [1, 1]])
    assert unimodular_inverse(G) == [[1, -1], [-1, 2]]
    inv = inverse_mod([[2, 0], [0, 3]], 5)
    assert is_identity_mod(inv @ IntMatrix.diag([2, 3]), 5)
    with pytest.raises(ValueError):
        unimodular_inverse([[2, 0], [0, 1]])


def test_matrix_is_immutable():
    M = IntMatrix.identity(2)
    with pytest.raises(AttributeError):
        M.rows = 3
    with pytest.raises(DimensionError):
        IntMatrix.identity(2) @ IntMatrix.identity(3)
