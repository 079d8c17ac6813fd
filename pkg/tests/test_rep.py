from fractions import Fraction
from itertools import permutations, product
from math import factorial

import pytest
from hypothesis import given, strategies as st

from hairy.dihedral import HD, factory, hd_decomposition
from hairy.linalg import SparseMatrix
from hairy.rep import (NotARepresentation, character, class_size, conjugate, cycle_type,
                       decompose_action, dims_from_decomposition, format_decomposition,
                       homology_action, parse_decomposition, partitions, schur_dim,
                       specht_dim)
from oracles import perm_parity


def test_schur_dim_examples():
    assert schur_dim((1, 1), 4) == 6
    assert schur_dim((3,), 2) == 4
    assert schur_dim((2, 2), 2) == 1
    assert schur_dim((1, 1, 1, 1), 2) == 0


@given(st.integers(1, 6), st.integers(1, 4))
def test_schur_dims_fill_tensor_power(s, m):
    # V^{(x)s} = sum_lambda P_lambda (x) S_lambda(V)
    assert sum(specht_dim(lam) * schur_dim(lam, m) for lam in partitions(s)) == m ** s


@pytest.mark.parametrize("s", range(1, 8))
def test_character_orthogonality(s):
    parts = partitions(s)
    for lam in parts:
        for nu in parts:
            x = sum(class_size(mu) * character(lam, mu) * character(nu, mu) for mu in parts)
            assert x == (factorial(s) if lam == nu else 0)
        assert character(lam, (1,) * s) == specht_dim(lam)


@pytest.mark.parametrize("s", range(2, 7))
def test_characters_against_brute_force(s):
    # sign and standard characters from permutations directly
    for p in permutations(range(s)):
        mu = cycle_type(p)
        fixed = sum(1 for i in range(s) if p[i] == i)
        assert character((1,) * s, mu) == perm_parity(p)
        assert character((s - 1, 1), mu) == fixed - 1


def _perm_matrix_on(points, act):
    idx = {x: i for i, x in enumerate(points)}
    n = len(points)
    m = [[Fraction(0)] * n for _ in range(n)]
    for x in points:
        m[idx[act(x)]][idx[x]] = Fraction(1)
    return m


def _gens(s):
    sigma = tuple([1, 0] + list(range(2, s)))
    tau = tuple(list(range(1, s)) + [0])
    return sigma, tau


@pytest.mark.parametrize("s", range(2, 6))
def test_regular_representation(s):
    sigma, tau = _gens(s)
    points = list(permutations(range(s)))

    def left(g):
        return lambda x: tuple(g[x[i]] for i in range(s))
    gens = [_perm_matrix_on(points, left(sigma)), _perm_matrix_on(points, left(tau))]
    dec = decompose_action(gens, s)
    assert dec == {lam: specht_dim(lam) for lam in partitions(s)}


@pytest.mark.parametrize("s,m", [(3, 2), (3, 3), (4, 2)])
def test_tensor_power_decomposition(s, m):
    sigma, tau = _gens(s)
    points = list(product(range(m), repeat=s))

    def place(g):
        def f(x):
            out = [None] * s
            for i in range(s):
                out[g[i]] = x[i]
            return tuple(out)
        return f
    gens = [_perm_matrix_on(points, place(sigma)), _perm_matrix_on(points, place(tau))]
    dec = decompose_action(gens, s)
    want = {lam: schur_dim(lam, m) for lam in partitions(s) if schur_dim(lam, m)}
    assert dec == want


def test_trivial_and_sign():
    one = [[Fraction(1)]]
    minus = [[Fraction(-1)]]
    assert decompose_action([one, one], 3) == {(3,): 1}
    assert decompose_action([minus, one], 3) == {(1, 1, 1): 1}


def test_not_a_representation():
    with pytest.raises(NotARepresentation):
        decompose_action([[[Fraction(2)]], [[Fraction(1)]]], 3)
    with pytest.raises(NotARepresentation):
        # the transposition acts trivially but the 3-cycle by -1: order 2 != 3
        decompose_action([[[Fraction(1)]], [[Fraction(-1)]]], 3)


def test_decomposition_text():
    d = parse_decomposition("[4]⊕[3,1]⊕[2,1^2]⊕2[1^4]")
    assert d == {(4,): 1, (3, 1): 1, (2, 1, 1): 1, (1, 1, 1, 1): 2}
    assert format_decomposition(d) == "[4]+[3,1]+[2,1^2]+2[1^4]"
    assert format_decomposition({}) == "0"
    assert parse_decomposition("0") == {}


def test_dims_from_decomposition():
    assert dims_from_decomposition({(1, 1): 1}, 2) == 1
    assert dims_from_decomposition({(1, 1, 1, 1): 1, (2, 2): 1}, 2) == 1
    assert dims_from_decomposition({}, 5) == 0


def test_conjugate():
    assert conjugate((3, 1, 1)) == (3, 1, 1)
    assert conjugate((4, 2)) == (2, 2, 1, 1)


def test_comm_hd3_label_action():
    assert hd_decomposition(factory("comm"), HD, 3, 4) == {(1, 1, 1, 1): 1, (2, 2): 1}


def test_homology_action_on_small_complex():
    # C_1 = span(a, b, c), d_1 = 0, d_2 sends e -> a - b; H_1 = span(a, c)
    d_in = SparseMatrix.from_dense([[1], [-1], [0]])
    d_out = SparseMatrix(0, 3)
    swap = SparseMatrix.from_dense([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    (m,) = homology_action(d_in, d_out, [swap])
    assert len(m) == 2
    # swap fixes the class of a (a = b in homology) and c
    assert m == [[1, 0], [0, 1]]
