from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from hairy.operad import (ASSOC, COMM, LIE, OPERADS, OperadElement, SlotOutOfRange,
                          UnsupportedArity, basis, compose, dimension, lie_normalize,
                          parse, serialize, symmetric_action, unit)


def test_dimensions():
    assert [dimension(COMM, s) for s in range(2, 7)] == [1] * 5
    assert [dimension(ASSOC, s) for s in range(2, 7)] == [1, 2, 6, 24, 120]
    assert [dimension(LIE, s) for s in range(2, 7)] == [1, 1, 2, 6, 24]


def test_small_arity_rejected():
    for op in OPERADS:
        with pytest.raises(UnsupportedArity):
            basis(op, 1)


@pytest.mark.parametrize("op", OPERADS)
def test_serialize_round_trip(op):
    for s in range(2, 7):
        for b in basis(op, s):
            assert parse(serialize(b)) == OperadElement.basis_element(b)


def test_serialized_forms():
    assert serialize(basis(ASSOC, 4)[1]) == "assoc:(0 1 3 2)"
    assert serialize(basis(LIE, 4)[0]) == "lie:[[1,2],3]"
    assert serialize(basis(COMM, 3)[0]) == "comm:{0 1 2}"


def test_comm_composition():
    a = OperadElement.basis_element(basis(COMM, 3)[0])
    c = compose(a, 0, a, 1)
    assert c == OperadElement.basis_element(basis(COMM, 4)[0])


def test_assoc_composition_splices_orders():
    a = OperadElement.basis_element(basis(ASSOC, 3)[0])  # (0 1 2)
    c = compose(a, 0, a, 1)
    # a keeps slots 1, 2 -> 0, 1; b keeps 0, 2 -> 2, 3; around the glued
    # edge the order reads 1 2 | 2 0 of b, i.e. (0 1 3 2)
    assert c == parse("assoc:(0 1 3 2)")


def test_slot_out_of_range():
    a = OperadElement.basis_element(basis(LIE, 3)[0])
    with pytest.raises(SlotOutOfRange):
        compose(a, 3, a, 0)


@pytest.mark.parametrize("op", OPERADS)
def test_unit_composition(op):
    for s in (3, 4):
        for b in basis(op, s):
            e = OperadElement.basis_element(b)
            assert compose(e, s - 1, unit(op), 0) == e
            # gluing the unit at slot 0 moves slot 0 to the end
            perm = tuple([s - 1] + list(range(s - 1)))
            assert compose(e, 0, unit(op), 0) == symmetric_action(perm, e)


def test_comm_trivial_action():
    e = OperadElement.basis_element(basis(COMM, 4)[0])
    for p in permutations(range(4)):
        assert symmetric_action(p, e) == e


def test_lie_antisymmetry():
    e = OperadElement.basis_element(basis(LIE, 3)[0])
    for p in permutations(range(3)):
        sign = 1 if p in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1
        assert symmetric_action(p, e) == e * sign


def test_lie_normalize():
    comb = lie_normalize({((1, 2), 3): 1})
    assert comb == OperadElement.basis_element(basis(LIE, 4)[0])
    assert lie_normalize({((2, 1), 3): 1}) == comb * -1
    jac = lie_normalize({((1, 2), 3): 1, ((2, 3), 1): 1, ((3, 1), 2): 1})
    assert jac.is_zero()


def _random_element(data, op, s):
    coords = {i: Fraction(data.draw(st.integers(-2, 2))) for i in range(dimension(op, s))}
    return OperadElement.from_indices(op, s, coords)


@given(st.sampled_from(OPERADS), st.integers(3, 5), st.data())
def test_action_is_a_homomorphism(op, s, data):
    e = _random_element(data, op, s)
    p = data.draw(st.permutations(range(s)))
    q = data.draw(st.permutations(range(s)))
    pq = tuple(p[q[j]] for j in range(s))
    assert symmetric_action(p, symmetric_action(q, e)) == symmetric_action(pq, e)


@given(st.sampled_from(OPERADS), st.integers(2, 4), st.integers(3, 4), st.integers(2, 3),
       st.data())
def test_composition_is_associative(op, sa, sb, sc, data):
    a = _random_element(data, op, sa)
    b = _random_element(data, op, sb)
    c = _random_element(data, op, sc)
    i = data.draw(st.integers(0, sa - 1))
    j = data.draw(st.integers(0, sb - 1))
    m = data.draw(st.sampled_from([x for x in range(sb) if x != j]))
    k = data.draw(st.integers(0, sc - 1))
    left = compose(compose(a, i, b, j), sa - 1 + (m if m < j else m - 1), c, k)
    right = compose(a, i, compose(b, m, c, k), j if j < m else j - 1)
    assert left == right


@given(st.sampled_from(OPERADS), st.integers(3, 4), st.integers(3, 4), st.data())
def test_composition_is_equivariant(op, sa, sb, data):
    # relabelling the slots of b commutes with composition up to the slot map
    a = _random_element(data, op, sa)
    b = _random_element(data, op, sb)
    i = data.draw(st.integers(0, sa - 1))
    j = data.draw(st.integers(0, sb - 1))
    q = data.draw(st.permutations(range(sb)))
    lhs = compose(a, i, symmetric_action(q, b), q[j])
    # slot x of b (x != j) lands at position rank of q[x] among q[y], y != j
    rest = sorted(q[x] for x in range(sb) if x != j)
    pos_new = {q[x]: rest.index(q[x]) for x in range(sb) if x != j}
    old = [x for x in range(sb) if x != j]
    perm = list(range(sa - 1)) + [sa - 1 + pos_new[q[x]] for x in old]
    rhs = symmetric_action(tuple(perm), compose(a, i, b, j))
    assert lhs == rhs
