from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from ominal.geometry import EQ, LE, LT, AffineForm, LinearConstraint, UnboundedInput
from ominal.semilinear import (
    DefinableFamily,
    DimensionMismatch,
    NonPositiveParameter,
    SemilinearSet,
)

from strategies import points, sets


def box(lo, hi, closed=True):
    return SemilinearSet.box(lo, hi, closed)


SQ = box([0, 0], [1, 1])
OSQ = box([0, 0], [1, 1], False)


def test_membership_of_basic_sets():
    assert SQ.contains((0, 1)) and not OSQ.contains((0, Q(1, 2)))
    assert OSQ.contains((Q(1, 2), Q(1, 3)))
    assert SemilinearSet.interval(0, 1, False, True).contains((1,))
    assert not SemilinearSet.interval(0, 1, False, True).contains((0,))
    assert SemilinearSet.universe(3).contains((5, -7, 1))
    assert SemilinearSet.empty(2).is_empty()


def test_closure_interior_boundary_of_the_open_square():
    assert OSQ.closure().equals(SQ)
    assert SQ.interior().equals(OSQ)
    ring = SQ - OSQ
    assert OSQ.boundary().equals(ring)
    assert SQ.boundary().is_empty()
    assert SQ.topological_boundary().equals(ring)
    assert SQ.is_closed() and not OSQ.is_closed() and OSQ.is_open()


def test_closure_of_a_punctured_interval_fills_the_hole():
    x = SemilinearSet.interval(0, 1) - SemilinearSet.point([Q(1, 2)])
    assert x.closure().equals(SemilinearSet.interval(0, 1))
    assert x.boundary().equals(SemilinearSet.point([Q(1, 2)]))


def test_dimension():
    assert SQ.dimension() == 2
    assert (SQ - OSQ).dimension() == 1
    assert SemilinearSet.point([1, 2]).dimension() == 0
    assert SemilinearSet.empty(2).dimension() == -1


def test_components():
    two = SemilinearSet.interval(0, 1) | SemilinearSet.interval(2, 3)
    assert len(two.components()) == 2
    # (0,1) and [1,2] touch at 1 through the closure
    touching = SemilinearSet.interval(0, 1, False, False) | SemilinearSet.interval(1, 2)
    assert len(touching.components()) == 1
    # (0,1) and (1,2) do not
    apart = SemilinearSet.interval(0, 1, False, False) | SemilinearSet.interval(1, 2, False, False)
    assert len(apart.components()) == 2
    assert len((SQ - OSQ).components()) == 1
    with pytest.raises(UnboundedInput):
        SemilinearSet.universe(1).components()


def test_boundedness_and_compactness():
    assert SQ.is_definably_compact()
    assert not OSQ.is_definably_compact()
    half = SemilinearSet.interval(0, None)
    assert not half.is_bounded()
    assert half.bounding_box() == [(0, None)]


def test_projection_and_embedding():
    tri = SemilinearSet.from_constraints(
        2, LinearConstraint(-AffineForm.variable(0, 2), LE),
        LinearConstraint(-AffineForm.variable(1, 2), LE),
        LinearConstraint(AffineForm.variable(0, 2) + AffineForm.variable(1, 2) - 1, LE))
    assert tri.project(1).equals(SemilinearSet.interval(0, 1))
    assert tri.project_to(1).equals(SemilinearSet.interval(0, 1))
    lifted = SemilinearSet.interval(0, 1).extend(1)
    assert lifted.contains((Q(1, 2), 100))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        SQ | SemilinearSet.interval(0, 1)


def test_reduced_keeps_the_set():
    messy = SQ | box([0, 0], [Q(1, 2), Q(1, 2)]) | SQ | box([5, 5], [4, 4])
    r = messy.reduced()
    assert len(r.pieces) == 1 and r.equals(SQ)


def test_family_slices():
    t = AffineForm.variable(1, 2)
    x = AffineForm.variable(0, 2)
    total = SemilinearSet.from_constraints(2, LinearConstraint(1 - t - x, LE),
                                           LinearConstraint(x - 1, LE))
    fam = DefinableFamily(total)
    assert fam.slice(Q(1, 4)).equals(SemilinearSet.interval(Q(3, 4), 1))
    with pytest.raises(NonPositiveParameter):
        fam.slice(0)
    # parameter first, then normalized to last
    swapped = DefinableFamily(total.pullback([AffineForm.variable(1, 2), AffineForm.variable(0, 2)]), 0)
    assert swapped.with_parameter_last().slice(Q(1, 2)).equals(fam.slice(Q(1, 2)))


@given(sets(2), sets(2), points(2))
def test_boolean_operations_agree_with_membership(a, b, p):
    assert (a | b).contains(p) == (a.contains(p) or b.contains(p))
    assert (a & b).contains(p) == (a.contains(p) and b.contains(p))
    assert (a - b).contains(p) == (a.contains(p) and not b.contains(p))
    assert a.complement().contains(p) == (not a.contains(p))


@given(sets(2), sets(2))
def test_subset_and_difference_are_consistent(a, b):
    assert a.is_subset(b) == (a - b).is_empty()
    w = a.witness_outside(b)
    if w is not None:
        assert a.contains(w) and not b.contains(w)


@given(sets(2), points(2))
def test_closure_contains_the_set_and_is_closed(a, p):
    cl = a.closure()
    if a.contains(p):
        assert cl.contains(p)
    assert cl.is_closed()
    assert a.is_subset(cl)


@given(sets(2))
def test_components_partition_the_set(a):
    comps = a.components()
    union = SemilinearSet.empty(2)
    for c in comps:
        union = union | c
    assert union.equals(a)
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            # separated: neither meets the closure of the other
            assert (comps[i].closure() & comps[j]).is_empty()
            assert (comps[i] & comps[j].closure()).is_empty()


@given(sets(2))
def test_reduced_is_equal(a):
    assert a.reduced().equals(a)


@given(sets(2, max_pieces=2), st.integers(0, 1))
def test_projection_contains_sample_images(a, axis):
    p = a.sample_point()
    if p is not None:
        q = tuple(v for i, v in enumerate(p) if i != axis)
        assert a.project(axis).contains(q)
