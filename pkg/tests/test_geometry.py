import itertools
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from ominal.geometry import (
    EQ,
    INFEASIBLE,
    LE,
    LT,
    OPTIMAL,
    UNBOUNDED,
    AffineForm,
    ConstraintSystem,
    LinearConstraint,
    UnboundedInput,
    affine_dimension,
    bounds,
    find_point,
    fm_feasible,
    fm_project,
    is_feasible,
    lp_optimize,
    rank,
    relative_interior_point,
    solve_linear,
    vertices,
)

from strategies import boxed_systems, forms, points, systems


def x(i, n):
    return AffineForm.variable(i, n)


def le(f):
    return LinearConstraint(f, LE)


def lt(f):
    return LinearConstraint(f, LT)


def unit_square(strict=False):
    rel = LT if strict else LE
    return ConstraintSystem((LinearConstraint(-x(0, 2), rel), LinearConstraint(x(0, 2) - 1, rel),
                             LinearConstraint(-x(1, 2), rel), LinearConstraint(x(1, 2) - 1, rel)), 2)


def test_affine_form_arithmetic():
    f = AffineForm((Q(1), Q(-2)), Q(3))
    g = AffineForm((Q(0), Q(1)), Q(-1))
    assert (f + g)((2, 5)) == f((2, 5)) + g((2, 5))
    assert (f - 1)((0, 0)) == 2
    assert (2 * f)((1, 1)) == 2 * f((1, 1))
    assert (f / 2).const == Q(3, 2)


def test_constraint_normalization_of_greater_relations():
    c = LinearConstraint.make(x(0, 1) - 1, ">")
    assert c.relation == LT and c.holds((2,)) and not c.holds((1,))
    c = LinearConstraint.make(x(0, 1) - 1, ">=")
    assert c.holds((1,)) and not c.holds((0,))


def test_strict_and_weak_feasibility():
    # x < 0 and x > 0 is empty; x <= 0 and x >= 0 is the origin
    assert not is_feasible(ConstraintSystem((lt(x(0, 1)), lt(-x(0, 1))), 1))
    assert is_feasible(ConstraintSystem((le(x(0, 1)), le(-x(0, 1))), 1))
    assert find_point(ConstraintSystem((le(x(0, 1)), le(-x(0, 1))), 1)) == (0,)


def test_lp_on_square():
    st_, val, pt = lp_optimize(unit_square(), x(0, 2) + x(1, 2))
    assert st_ == OPTIMAL and val == 2 and pt == (1, 1)
    # sup over the open square is the same value
    assert lp_optimize(unit_square(True), x(0, 2))[1] == 1
    half = ConstraintSystem((le(-x(0, 2)),), 2)
    assert lp_optimize(half, x(0, 2))[0] == UNBOUNDED
    empty = ConstraintSystem((lt(x(0, 1)), le(-x(0, 1) + 1)), 1)
    assert lp_optimize(empty, x(0, 1))[0] == INFEASIBLE


def test_bounds_and_vertices():
    assert bounds(unit_square(True), 0) == (0, 1)
    assert vertices(unit_square()) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    with pytest.raises(UnboundedInput):
        vertices(ConstraintSystem((le(-x(0, 1)),), 1))


def test_relative_interior_point_avoids_faces():
    tri = ConstraintSystem((le(-x(0, 2)), le(-x(1, 2)), le(x(0, 2) + x(1, 2) - 1)), 2)
    p = relative_interior_point(tri)
    assert p[0] > 0 and p[1] > 0 and p[0] + p[1] < 1
    seg = tri.conjoin([LinearConstraint(x(1, 2), EQ)])
    p = relative_interior_point(seg)
    assert p[1] == 0 and 0 < p[0] < 1


def test_linear_algebra():
    assert solve_linear([[Q(2), Q(1)], [Q(1), Q(3)]], [Q(3), Q(5)]) == (Q(4, 5), Q(7, 5))
    assert solve_linear([[Q(1), Q(2)], [Q(2), Q(4)]], [Q(1), Q(2)]) is None
    assert rank([[1, 2, 3], [2, 4, 6], [0, 1, 0]]) == 2
    assert affine_dimension([(0, 0), (1, 1), (2, 2)]) == 1


@given(systems(2, 5))
def test_simplex_agrees_with_fourier_motzkin(s):
    assert is_feasible(s) == fm_feasible(s)


@given(systems(3, 5))
def test_simplex_agrees_with_fourier_motzkin_3d(s):
    assert is_feasible(s) == fm_feasible(s)


@given(systems(2, 5))
def test_found_points_satisfy_the_system(s):
    p = find_point(s)
    assert (p is None) == (not is_feasible(s))
    if p is not None:
        assert s.contains(p)


@given(boxed_systems(2, 4, (LE,)), forms(2))
def test_lp_optimum_is_attained_at_a_vertex(s, f):
    """Brute force over vertices is the oracle for the simplex optimum."""
    vs = vertices(s)
    status, value, point = lp_optimize(s, f)
    if not vs:
        assert status == INFEASIBLE
        return
    assert status == OPTIMAL
    assert value == max(f(v) for v in vs)
    assert s.contains(point) and f(point) == value


@given(boxed_systems(3, 4), points(3))
def test_projection_contains_images_of_members(s, p):
    proj = fm_project(s, 2)
    if s.contains(p):
        assert proj.contains(p[:2])


@given(boxed_systems(2, 4), points(1))
def test_projection_points_lift(s, p):
    """Every point of the shadow has a preimage (checked by feasibility)."""
    proj = fm_project(s, 1)
    if proj.contains(p):
        fiber = s.conjoin([LinearConstraint(x(0, 2) - p[0], EQ)])
        assert is_feasible(fiber)


@given(systems(2, 4), points(2))
def test_integer_membership_matches_fraction_evaluation(s, p):
    assert s.contains(p) == all(c.holds(p) for c in s.constraints)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_matches_determinant_test(rows):
    """Rank is the size of the largest nonsingular square minor."""
    def det(m):
        if len(m) == 1:
            return m[0][0]
        return sum((-1) ** j * m[0][j] * det([r[:j] + r[j + 1:] for r in m[1:]])
                   for j in range(len(m)))
    best = 0
    for k in range(1, min(len(rows), 3) + 1):
        for rs in itertools.combinations(range(len(rows)), k):
            for cs in itertools.combinations(range(3), k):
                if det([[rows[r][c] for c in cs] for r in rs]) != 0:
                    best = k
    assert rank(rows) == best
