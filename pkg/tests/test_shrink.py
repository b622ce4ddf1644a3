from fractions import Fraction as Q
from math import comb, inf

import pytest

from ominal.cells import Cell, UnboundedCell
from ominal.corpus import EXPECTED_T0, cells, families, form, _family
from ominal.homology import (
    MissingCertificate,
    cech_cover_cohomology,
    good_cover_cohomology,
    same_groups,
    simplicial_cohomology,
    sphere_cohomology,
)
from ominal.oracle import oracle_cohomology
from ominal.semilinear import SemilinearSet
from ominal.shrink import (
    DegenerateSlice,
    IndexedCover,
    NotClosedSlices,
    NotDecreasing,
    acyclicity_certificate,
    check_iso_pair,
    check_shrink_laws,
    cube_face_cover,
    cube_face_nerve,
    large_parameter,
    shrink_family,
    stabilization_t0,
)

T1, T2 = Q(1, 8), Q(1, 4)


@pytest.fixture(scope="module")
def corpus_cells():
    return cells()


@pytest.mark.parametrize("m", [1, 2, 3])
def test_cube_face_nerve_is_a_sphere(m):
    k = cube_face_nerve(m)
    assert k.f_vector() == [comb(m, j) * 2 ** j for j in range(1, m + 1)]
    assert same_groups(simplicial_cohomology(k), sphere_cohomology(m - 1))


@pytest.mark.parametrize("name", ["interval", "vee-graph", "square", "triangle", "wall", "tent-band"])
def test_cover_routes_agree_with_the_sphere(corpus_cells, name):
    c = corpus_cells[name]
    m = len(c.axes())
    cov = cube_face_cover(c, T2)
    assert cov.is_cover()
    assert cov.nerve().f_vector() == cube_face_nerve(m).f_vector()
    certs = {F: acyclicity_certificate(cov, F) for F in map(
        lambda s: tuple(sorted(s, key=cov.index_key)), cov.nerve().simplices)}
    assert all(certs.values())
    sphere = sphere_cohomology(m - 1)
    assert same_groups(good_cover_cohomology(cov, certs), sphere)
    assert same_groups(cech_cover_cohomology(cov), sphere)


def test_cover_matches_oracle_on_the_square(corpus_cells):
    c = corpus_cells["square"]
    fam = shrink_family(c)
    removed = fam.slice(T2) | c.frontier()
    assert same_groups(oracle_cohomology(c.closure(), removed), sphere_cohomology(1))


def test_missing_certificate_is_refused(corpus_cells):
    cov = cube_face_cover(corpus_cells["square"], T2)
    with pytest.raises(MissingCertificate):
        good_cover_cohomology(cov, {})


@pytest.mark.parametrize("name", ["interval", "segment-graph", "square", "triangle", "trapezoid", "roof"])
def test_shrink_laws(corpus_cells, name):
    laws = check_shrink_laws(corpus_cells[name], (T1, T2))
    assert laws.ok, laws.failures()


def test_slices_shrink_and_end_in_a_point(corpus_cells):
    c = corpus_cells["triangle"]
    fam = shrink_family(c)
    small, big = fam.slice(T2), fam.slice(T1)
    assert small.is_subset(big) and big.is_subset(c.set)
    assert small.is_closed() and big.is_closed()
    pt = fam.slice(large_parameter(c))
    lo_hi = pt.bounding_box()
    assert all(lo == hi for lo, hi in lo_hi)


def test_iso_pair_needs_the_right_order(corpus_cells):
    c = corpus_cells["square"]
    fam = shrink_family(c)
    u, v = cube_face_cover(c, T1, fam), cube_face_cover(c, T2, fam)
    assert check_iso_pair(u, v)
    bad = check_iso_pair(v, u)
    assert not bad and bad.condition == "member inclusion"
    other = cube_face_cover(corpus_cells["interval"], T1)
    assert check_iso_pair(u, other).condition == "index sets differ"


def test_acyclicity_certificate_rejects_a_circle():
    sq = SemilinearSet.box([0, 0], [3, 3], closed=False)
    ring = sq - SemilinearSet.box([1, 1], [2, 2])
    cov = IndexedCover(ring, {"a": ring})
    assert acyclicity_certificate(cov, ("a",)) is None


def test_cover_errors(corpus_cells):
    with pytest.raises(UnboundedCell):
        cube_face_cover(Cell.interval(0, None), T1)
    with pytest.raises(ValueError):
        cube_face_cover(corpus_cells["square"], 0)
    with pytest.raises(DegenerateSlice):
        cube_face_cover(Cell.point(1), T1)


@pytest.mark.parametrize("name", sorted(EXPECTED_T0))
def test_stabilization_values(name):
    res = stabilization_t0(families()[name])
    expected = EXPECTED_T0[name]
    assert res.t0 == (inf if expected is None else expected)
    assert res.certified


def test_stabilization_rejects_bad_families():
    with pytest.raises(NotClosedSlices):
        stabilization_t0(families()["open-slices"])
    x, t = form([1, 0]), form([0, 1])
    one = form([0, 0], 1)
    shrinking = _family(2, [(x - t, ">="), (x - one, "<=")])
    with pytest.raises(NotDecreasing):
        stabilization_t0(shrinking)
