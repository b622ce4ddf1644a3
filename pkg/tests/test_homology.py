import itertools
import random
from fractions import Fraction as Q
from math import gcd

import pytest
from hypothesis import given, strategies as st

from ominal.homology import (
    CochainComplex,
    CoefficientGroup,
    CohomologyGroup,
    InvalidComplex,
    SimplicialComplex,
    Z,
    Z2,
    cohomology,
    euler_characteristic,
    invariant_factors,
    same_groups,
    simplicial_cohomology,
    smith_normal_form,
    sphere_cohomology,
)

Z3 = CoefficientGroup.parse("Z/3")
Z4 = CoefficientGroup.parse("Z/4")


def G(rank=0, *torsion):
    return CohomologyGroup(rank, tuple(torsion))


def boundary_of_simplex(k):
    """The k-sphere as the boundary of a (k+1)-simplex."""
    verts = range(k + 2)
    return SimplicialComplex(itertools.combinations(verts, k + 1))


RP2 = SimplicialComplex([(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
                         (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)])


def grid_surface(n=4, twist=False):
    def canon(i, j):
        if i >= n:
            i -= n
            if twist:
                j = -j
        return (i, j % n)
    tris = []
    for i in range(n):
        for j in range(n):
            a, b, c, d = canon(i, j), canon(i + 1, j), canon(i + 1, j + 1), canon(i, j + 1)
            tris += [(a, b, c), (a, c, d)]
    return SimplicialComplex(tris)


def det(m):
    if not m:
        return 1
    return sum((-1) ** j * m[0][j] * det([r[:j] + r[j + 1:] for r in m[1:]])
               for j in range(len(m)) if m[0][j])


def test_invariant_factor_normal_form():
    assert invariant_factors([2, 3]) == (6,)
    assert invariant_factors([2, 4]) == (2, 4)
    assert invariant_factors([1, 1, 6, 4]) == (2, 12)


def test_group_strings_and_parse():
    assert str(G(2, 2)) == "Z^2 + Z/2"
    assert str(G()) == "0"
    assert CoefficientGroup.parse("Z/5").cyclic_orders == (5,)
    with pytest.raises(ValueError):
        CoefficientGroup.parse("Q")
    with pytest.raises(ValueError):
        CoefficientGroup.parse("Z/1")


@pytest.mark.parametrize("k", [0, 1, 2, 3])
@pytest.mark.parametrize("g", [Z, Z2, Z3])
def test_spheres(k, g):
    assert same_groups(simplicial_cohomology(boundary_of_simplex(k), g), sphere_cohomology(k, g))


def test_projective_plane():
    assert RP2.f_vector() == [6, 15, 10]
    assert simplicial_cohomology(RP2) == [G(1), G(0), G(0, 2)]
    assert simplicial_cohomology(RP2, Z2) == [G(0, 2), G(0, 2), G(0, 2)]
    assert simplicial_cohomology(RP2, Z3) == [G(0, 3), G(), G()]


def test_torus_and_klein_bottle():
    assert simplicial_cohomology(grid_surface()) == [G(1), G(2), G(1)]
    assert simplicial_cohomology(grid_surface(twist=True)) == [G(1), G(1), G(0, 2)]
    assert simplicial_cohomology(grid_surface(twist=True), Z2) == [G(0, 2), G(0, 2, 2), G(0, 2)]


def test_collapse_keeps_cohomology_of_a_disc():
    disc = SimplicialComplex([(0, 1, 2), (0, 2, 3), (0, 3, 4)])
    assert len(disc.collapsed()) < len(disc)
    assert simplicial_cohomology(disc) == [G(1), G(), G()]


def test_invalid_complex_is_rejected():
    c = CochainComplex([1, 1, 1], [[[1]], [[1]]])
    with pytest.raises(InvalidComplex):
        cohomology(c)
    with pytest.raises(InvalidComplex):
        cohomology(CochainComplex([1, 2], [[[1]]]))


def test_complex_queries():
    k = boundary_of_simplex(2)
    assert k.f_vector() == [4, 6, 4]
    assert k.dimension == 2
    assert len(k.maximal()) == 4
    sub = k.full_subcomplex([0, 1, 2])
    assert k.is_full(sub)
    assert len(SimplicialComplex([(0, 1), (2, 3)]).components()) == 2


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


@given(matrices)
def test_smith_normal_form_properties(A):
    U, D, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for i in range(len(D)):
        for j in range(len(D[0])):
            if i != j:
                assert D[i][j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(d == 0 for d in diag[len(nz):])


@given(matrices)
def test_invariant_factors_match_determinantal_divisors(A):
    """d_1 ... d_k = gcd of the k x k minors (an independent oracle)."""
    _, D, _ = smith_normal_form(A)
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    prod = 1
    for k in range(1, len(diag) + 1):
        g = 0
        for rs in itertools.combinations(range(len(A)), k):
            for cs in itertools.combinations(range(len(A[0])), k):
                g = gcd(g, det([[A[r][c] for c in cs] for r in rs]))
        prod *= diag[k - 1]
        assert abs(prod) == g


def rank_mod(m, p):
    m = [[v % p for v in row] for row in m]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
    return r


def rank_q(m):
    m = [[Q(v) for v in row] for row in m]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


complexes = st.lists(st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True),
                     min_size=1, max_size=9).map(SimplicialComplex)


@given(complexes)
def test_cohomology_matches_field_ranks(k):
    """Betti numbers over Q and dimensions over F_2, F_3 from plain
    elimination; they pin down the free rank and the 2- and 3-torsion."""
    c = k.cochain_complex()
    integral = cohomology(c)
    for p_idx, p in enumerate(c.ranks):
        def dim_h(rank_fn):
            out_rank = rank_fn(c.differentials[p_idx]) if p_idx < len(c.differentials) and c.ranks[p_idx + 1] else 0
            in_rank = rank_fn(c.differentials[p_idx - 1]) if p_idx > 0 and c.ranks[p_idx] and c.ranks[p_idx - 1] else 0
            return p - out_rank - in_rank
        dense = lambda m: m.to_dense() if hasattr(m, "to_dense") else m
        assert integral[p_idx].rank == dim_h(lambda m: rank_q(dense(m)))
        for prime, g in ((2, Z2), (3, Z3)):
            mod = cohomology(c, g)[p_idx]
            assert sum(1 for d in mod.torsion if d == prime) == dim_h(lambda m: rank_mod(dense(m), prime))


@given(complexes)
def test_direct_and_universal_coefficient_routes_agree(k):
    c = k.cochain_complex()
    for g in (Z2, Z3, Z4):
        assert cohomology(c, g, method="direct") == cohomology(c, g, method="uct")


@given(complexes)
def test_euler_characteristic_is_the_alternating_face_count(k):
    f = k.f_vector()
    assert euler_characteristic(simplicial_cohomology(k)) == sum((-1) ** i * n for i, n in enumerate(f))


@given(complexes)
def test_collapsing_preserves_cohomology(k):
    assert same_groups(simplicial_cohomology(k, collapse=True), simplicial_cohomology(k, collapse=False))


@given(complexes)
def test_components_count_degree_zero(k):
    assert simplicial_cohomology(k)[0].rank == len(k.components())


def test_large_random_complex_uses_both_routes():
    rng = random.Random(3)
    tris = [tuple(rng.sample(range(30), 3)) for _ in range(120)]
    k = SimplicialComplex(tris)
    c = k.cochain_complex()
    assert max(c.ranks) > 80
    assert cohomology(c, Z2, method="direct") == cohomology(c, Z2, method="uct")
