import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from ominal.cells import (
    Cell,
    DegenerateBand,
    PLFunction,
    UnboundedCell,
    contraction,
    decompose,
    verify_partition,
)
from ominal.corpus import absval, cells, compact_sets, const, fn, form, triangle, unit_interval, unit_square
from ominal.homology import euler_characteristic
from ominal.oracle import oracle_cohomology
from ominal.semilinear import SemilinearSet


@pytest.fixture(scope="module")
def corpus_cells():
    return cells()


def test_closed_triangle_has_seven_cells():
    d = decompose(compact_sets()["closed-triangle"])
    assert d.counts() == {0: 3, 1: 3, 2: 1}
    assert verify_partition(d).ok


@pytest.mark.parametrize("name", ["two-intervals", "closed-square", "square-boundary", "annulus",
                                  "figure-eight", "two-squares", "cube-boundary"])
def test_decomposition_euler_characteristic_matches_oracle(name):
    x = compact_sets()[name]
    d = decompose(x)
    assert verify_partition(d).ok
    assert d.euler_characteristic() == euler_characteristic(oracle_cohomology(x))


def test_decomposition_refines_extra_forms():
    sq = compact_sets()["closed-square"]
    plain = decompose(sq)
    cut = decompose(sq, [form([1, 0], Q(-1, 2))])
    assert len(cut.cells) > len(plain.cells)
    assert cut.euler_characteristic() == plain.euler_characteristic() == 1
    for c in cut.cells:
        x = c.sample_point()[0]
        for _ in range(5):
            p = c.random_point(random.Random(0))
            assert (p[0] < Q(1, 2)) == (x < Q(1, 2)) and (p[0] == Q(1, 2)) == (x == Q(1, 2))


boxes = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 2), st.integers(0, 2)).map(
    lambda b: SemilinearSet.box([b[0], b[1]], [b[0] + b[2], b[1] + b[3]]))


@settings(max_examples=25)
@given(st.lists(boxes, min_size=1, max_size=3))
def test_cells_partition_random_unions_of_boxes(bs):
    x = bs[0]
    for b in bs[1:]:
        x = x | b
    d = decompose(x)
    assert verify_partition(d).ok
    assert d.euler_characteristic() == euler_characteristic(oracle_cohomology(x))


def test_corpus_cells_certify(corpus_cells):
    for name, c in corpus_cells.items():
        cert = c.certify()
        assert cert.dimension == c.dimension and cert.ambient_dim == c.ambient_dim
        assert c.is_bounded()
        assert c.contains(c.sample_point())
        rng = random.Random(name)
        for _ in range(10):
            p = c.random_point(rng)
            assert c.contains(p) and c.set.contains(p) and c.closure().contains(p)
        assert not c.frontier().contains(c.sample_point())


def test_square_closure_and_frontier():
    sq = unit_square()
    assert sq.closure().equals(SemilinearSet.box([0, 0], [1, 1]))
    assert sq.frontier().equals(SemilinearSet.box([0, 0], [1, 1]) - SemilinearSet.box([0, 0], [1, 1], closed=False))


values = st.fractions(min_value=-3, max_value=3, max_denominator=8)
affine2 = st.tuples(values, values, values).map(lambda v: fn([v[0], v[1]], v[2]))


@given(affine2, affine2, affine2, st.tuples(values, values))
def test_min_max_pointwise(f, g, h, p):
    lo, hi = f.minimum(g), f.maximum(g)
    assert lo(p) == min(f(p), g(p)) and hi(p) == max(f(p), g(p))
    mixed = lo.maximum(h) - hi
    assert mixed(p) == max(min(f(p), g(p)), h(p)) - max(f(p), g(p))
    assert (2 * lo + 1)(p) == 2 * min(f(p), g(p)) + 1
    assert absval(f)(p) == abs(f(p))


@given(affine2, affine2)
def test_min_max_are_continuous(f, g):
    dom = SemilinearSet.box([-1, -1], [1, 1])
    assert f.minimum(g).is_continuous_on(dom)
    assert f.maximum(g).maximum(f - 1).is_continuous_on(dom)


def test_discontinuous_function_is_rejected():
    x = fn([1])
    base = Cell.interval(-1, 1)
    half = SemilinearSet.interval(-1, 0, right_closed=False)
    step = PLFunction(1, ((half.pieces[0], const(0, 1).pieces[0][1]),
                          (SemilinearSet.interval(0, 1).pieces[0], const(1, 1).pieces[0][1])))
    assert not step.is_continuous_on(base.set)
    with pytest.raises(ValueError):
        Cell.graph(base, step)
    with pytest.raises(ValueError):
        Cell.graph(base, PLFunction(1, ((half.pieces[0], x.pieces[0][1]),)))


def test_degenerate_cells_are_rejected():
    with pytest.raises(DegenerateBand):
        Cell.interval(1, 0)
    with pytest.raises(DegenerateBand):
        Cell.band(unit_interval(), fn([1]), const(Q(1, 2), 1))
    with pytest.raises(UnboundedCell):
        contraction(Cell.band(unit_interval(), const(0, 1), None))


@pytest.mark.parametrize("name", ["interval", "vee-graph", "square", "triangle", "tent-band", "roof"])
def test_contractions(corpus_cells, name):
    c = corpus_cells[name]
    h = contraction(c)
    assert h.start_is_identity()
    assert h.end_is_constant()
    assert h.is_continuous()
    assert h.sample_check(c, samples=200) == []


def test_triangle_contraction_values():
    h = contraction(triangle())
    p = (Q(1, 2), Q(1, 4))
    assert h(0, p) == p
    end = h(h.end, p)
    assert all(h(h.end, q) == end for q in [(Q(1, 3), Q(1, 5)), (Q(9, 10), Q(1, 2))])
    assert triangle().contains(end)
