from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from ominal.semilinear import SemilinearSet
from ominal.typespace import (
    NamedType1D,
    NotClosed,
    NotDisjoint,
    enumerate_named_types,
    finite_subcover,
    separate_closed,
    specializes,
)

ends = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def intervals(draw, closed=None):
    a, b = sorted([draw(ends), draw(ends)])
    if a == b:
        return SemilinearSet.point([a])
    lc = draw(st.booleans()) if closed is None else closed
    rc = draw(st.booleans()) if closed is None else closed
    lo = None if closed is None and draw(st.integers(0, 5)) == 0 else a
    return SemilinearSet.interval(lo, b, lc, rc)


@st.composite
def line_sets(draw, closed=None):
    parts = draw(st.lists(intervals(closed), min_size=1, max_size=3))
    out = parts[0]
    for p in parts[1:]:
        out = out | p
    return out


def names(x):
    return [str(t) for t in enumerate_named_types(x)]


def test_unit_interval_types():
    unit = SemilinearSet.interval(0, 1)
    assert names(unit) == ["0", "0+", "1/2-", "1/2", "1/2+", "1-", "1"]
    space = enumerate_named_types(unit)
    assert [str(p) for p in space.closed_points()] == ["0", "1/2", "1"]
    assert [str(q) for q in space.closure_of(NamedType1D.right_of(0))] == ["0", "0+"]


def test_unbounded_and_open_sets():
    ray = SemilinearSet.interval(0, None, False, False)
    assert names(ray) == ["0+", "1-", "1", "1+", "+inf"]
    assert "-inf" in names(SemilinearSet.universe(1))
    assert "0-" in names(SemilinearSet.interval(-1, 0, True, False))


@given(line_sets(), line_sets(), line_sets())
def test_types_are_ultrafilters_of_the_set(x, s, t):
    for p in enumerate_named_types(x):
        assert p.contains(x)
        assert p.contains(s) != p.contains(s.complement())
        assert p.contains(s & t) == (p.contains(s) and p.contains(t))
        assert p.contains(s | t) == (p.contains(s) or p.contains(t))


@given(line_sets())
def test_realized_types_and_closed_points(x):
    space = enumerate_named_types(x)
    listed = {str(p) for p in space}
    closed = {str(p) for p in space.closed_points()}
    for p in space:
        if p.kind == "realized":
            assert x.contains((p.a,)) and str(p) in closed
        elif p.kind in ("right_of", "left_of"):
            # a germ is closed exactly when its endpoint is missing from x
            inside = x.contains((p.a,))
            assert (str(p) in closed) != inside
            if inside:
                assert str(NamedType1D.realized(p.a)) in listed


def test_specialization_order():
    unit = SemilinearSet.interval(0, 1)
    assert specializes(NamedType1D.right_of(0), NamedType1D.realized(0), unit)
    assert specializes(NamedType1D.left_of(1), NamedType1D.realized(1), unit)
    assert not specializes(NamedType1D.realized(0), NamedType1D.right_of(0), unit)
    assert not specializes(NamedType1D.right_of(0), NamedType1D.realized(1), unit)
    assert specializes(NamedType1D.realized(0), NamedType1D.realized(0), unit)


def test_subcover_and_uncovered_germ():
    x = SemilinearSet.interval(0, 1, left_closed=False)
    cover = [SemilinearSet.interval(Q(1, 2), 1, False), SemilinearSet.interval(Q(1, 4), 1, False)]
    res = finite_subcover(x, cover)
    assert not res and str(res.counterexample) == "0+"
    assert not any(res.counterexample.contains(u) for u in cover)
    cover.append(SemilinearSet.interval(0, Q(1, 3), False, False))
    res = finite_subcover(x, cover)
    assert res and res.indices == [1, 2]


@given(line_sets(), st.lists(line_sets(), min_size=1, max_size=4))
def test_subcover_is_irredundant_or_witnessed(x, cover):
    res = finite_subcover(x, cover)
    if res:
        chosen = [cover[i] for i in res.indices]
        union = SemilinearSet.empty(1)
        for u in chosen:
            union = union | u
        assert x.is_subset(union)
        for i in range(len(chosen)):
            rest = SemilinearSet.empty(1)
            for j, u in enumerate(chosen):
                if j != i:
                    rest = rest | u
            assert not x.is_subset(rest)
    else:
        p = res.counterexample
        assert p.contains(x) and not any(p.contains(u) for u in cover)


@given(line_sets(closed=True), line_sets(closed=True))
def test_separation_of_closed_sets(a, b):
    if not (a & b).is_empty():
        with pytest.raises(NotDisjoint):
            separate_closed(a, b)
        return
    u, v = separate_closed(a, b)
    assert a.is_subset(u) and b.is_subset(v)
    assert (u & v).is_empty()
    assert u.is_open() and v.is_open()


def test_separation_errors():
    with pytest.raises(NotClosed):
        separate_closed(SemilinearSet.interval(0, 1, False), SemilinearSet.point([3]))
    with pytest.raises(ValueError):
        enumerate_named_types(SemilinearSet.box([0, 0], [1, 1]))
