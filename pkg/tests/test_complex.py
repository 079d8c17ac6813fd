import json
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from hairy.complex import (UnsupportedOperad, bo_h0_expected, build_BO, build_hairy, hairy_decomposition,
                           build_pg, build_reduced, build_reduced_slice, build_slice,
                           hairy_homology_dims, homology_dims, multiset_count,
                           partitions, report_json)
from hairy.linalg import rank
from hairy.operad import OPERADS
from hairy.symp import SymplecticSpace

V1 = SymplecticSpace(1)


def _nonzero(d):
    return {k: v for k, v in d.items() if v}


def test_degree_zero_is_empty():
    c = build_hairy("lie", 0, 1, V1)
    assert c.degrees() == [] and homology_dims(c) == []


def test_lie_rank_one_degree_one():
    # one vertex with a loop and a hair: H_1 = V
    assert hairy_homology_dims("lie", 1, 1, 2) == {1: 2}
    assert hairy_homology_dims("lie", 1, 1, 4) == {1: 4}


# connected rank one homology at dim V = 2, frozen from direct computation
RANK_ONE = {
    "comm": {1: {}, 2: {2: 1}, 3: {3: 4}},
    "assoc": {1: {1: 2}, 2: {1: 1, 2: 2}, 3: {2: 2, 3: 6}},
    "lie": {1: {1: 2}, 2: {2: 1}, 3: {1: 4}},
}


@pytest.mark.parametrize("op", OPERADS)
@pytest.mark.parametrize("d", [1, 2, 3])
def test_rank_one_dims(op, d):
    assert _nonzero(hairy_homology_dims(op, d, 1, 2)) == RANK_ONE[op][d]


@pytest.mark.parametrize("op", OPERADS)
@pytest.mark.parametrize("d", [1, 2, 3])
def test_reduced_agrees_with_full(op, d):
    full = _nonzero(hairy_homology_dims(op, d, 1, 2))
    red = _nonzero(hairy_homology_dims(op, d, 1, 2, reduced=True))
    assert full == red


def test_reduced_direct_sum_matches_patterns():
    c = build_reduced("assoc", 2, 1, V1)
    assert _nonzero(dict(homology_dims(c))) == RANK_ONE["assoc"][2]
    with pytest.raises(ValueError):
        build_reduced_slice("comm", 2, 0, ("p1", "q1"))


def test_unknown_operad():
    with pytest.raises(ValueError):
        build_reduced("pre-lie", 2, 1, V1)
    assert issubclass(UnsupportedOperad, ValueError)


def test_pattern_sum_equals_label_sum():
    # summing over multiplicity patterns is the same as summing over multisets
    for op in OPERADS:
        direct = {}
        for labels in combinations_with_replacement(V1.basis, 3):
            for k, h in homology_dims(build_slice(op, 3, 1, labels)):
                direct[k] = direct.get(k, 0) + h
        assert _nonzero(direct) == _nonzero(hairy_homology_dims(op, 3, 1, 2))


def test_multiset_count():
    for m in range(1, 5):
        for s in range(1, 5):
            total = sum(multiset_count(p, m) for p in partitions(s))
            assert total == len(list(combinations_with_replacement(range(m), s)))


@pytest.mark.parametrize("op", OPERADS)
@pytest.mark.parametrize("ell", [2, 3])
def test_bo_vanishing_and_h0(op, ell):
    for m in range(0, 4):
        for labels in combinations_with_replacement(("p1", "q1", "p2"), m):
            if ell + m < 3:
                continue
            dims = dict(homology_dims(build_BO(op, ell, labels)))
            assert dims.get(1, 0) == 0 and dims.get(2, 0) == 0
            assert dims.get(0, 0) == bo_h0_expected(op, ell, labels)


def test_bo_small_cases():
    assert dict(homology_dims(build_BO("comm", 2, ("p1",)))) == {0: 1}
    # two different labels between the two numbered slots of a cyclic order
    assert bo_h0_expected("assoc", 2, ("p1", "q1")) == 2
    assert dict(homology_dims(build_BO("assoc", 2, ("p1", "q1"))))[0] == 2
    with pytest.raises(ValueError):
        build_BO("lie", 1, ())


SLICES = [(op, d, r, labels) for op in OPERADS for d, r, labels in
          [(2, 1, ("p1", "q1")), (3, 1, ("p1", "p1", "q1")), (3, 0, ("p1", "p1", "q1", "q1", "p1")),
           (2, 2, ()), (3, 2, ("p1",)), (4, 1, ("p1", "q1", "p1", "q1"))]]


@given(st.sampled_from(SLICES))
def test_boundary_squares_to_zero(spec):
    c = build_slice(*spec, connected=True)
    for k in c.degrees():
        assert (c.d(k) @ c.d(k + 1)).is_zero()


@given(st.sampled_from(SLICES))
def test_euler_characteristic(spec):
    c = build_slice(*spec)
    assert c.euler() == sum((-1) ** k * h for k, h in homology_dims(c))
    for k in c.degrees():
        assert c.dim(k) == c.homology(k) + rank(c.d(k)) + rank(c.d(k + 1))


def test_disconnected_slice():
    # two tripods: six hairs in degree two is only possible disconnected
    labels = ("p1", "p1", "p1", "q1", "q1", "p2")
    c = build_slice("comm", 2, 0, labels, connected=False)
    assert c.dim(2) > 0
    assert build_slice("comm", 2, 0, labels).dim(2) == 0


def test_pg_slice():
    c = build_pg("lie", 2, 2)
    assert c.degrees() and all((c.d(k) @ c.d(k + 1)).is_zero() for k in c.degrees())
    part = build_pg("lie", 6, 4, ks=(2, 3))
    assert part.degrees() == [2, 3]


def test_report_json_is_stable():
    c = build_slice("comm", 2, 1, ("p1", "q1"))
    text = report_json(c)
    assert text == report_json(build_slice("comm", 2, 1, ("q1", "p1")))
    assert json.loads(text)["homology"] == {"1": 0, "2": 1}


@pytest.mark.parametrize("op,d,k,text", [
    ("comm", 3, 3, "[3]"),
    ("assoc", 3, 2, "[2,1]+[1^3]"),
    ("lie", 3, 1, "[3]"),
])
def test_graph_side_decompositions(op, d, k, text):
    from hairy.rep import parse_decomposition
    assert hairy_decomposition(op, d, 1, k) == parse_decomposition(text)


@pytest.mark.slow
def test_comm_degree_five_graph_side():
    from hairy.rep import parse_decomposition
    assert hairy_decomposition("comm", 5, 1, 5) == parse_decomposition("2[3,1^2]")
