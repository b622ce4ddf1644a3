"""Independent ground truth: rational triangulations of compact semilinear
sets adapted to finitely many subsets, and cohomology of compact
differences ``P \\ Q`` through the full-subcomplex complement retract."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .geometry import (
    EQ,
    LE,
    OPTIMAL,
    AffineForm,
    ConstraintSystem,
    LinearConstraint,
    UnboundedInput,
    affine_dimension,
    is_feasible,
    lp_optimize,
    rank,
    vertices,
)
from .homology import (
    CoefficientGroup,
    CohomologyGroup,
    SimplicialComplex,
    Z,
    simplicial_cohomology,
)
from .semilinear import SemilinearSet


class NotCompact(ValueError):
    pass


class NotNested(ValueError):
    pass


def _barycenter(points: Sequence[tuple]) -> tuple:
    k = len(points)
    return tuple(sum(c) / k for c in zip(*points))


# ---------------------------------------------------------------------------
# arrangement cells


@dataclass
class _Cell:
    """Closed polytope: equality normals, inequality forms ``f <= 0`` and
    vertices with the set of inequality indices tight at each."""

    eqs: list
    ineqs: list
    verts: dict  # point -> frozenset of tight inequality indices


def _start_cell(system: ConstraintSystem) -> _Cell | None:
    weak = system.weakened().simplified()
    pts = vertices(weak)
    if not pts:
        return None
    eqs = [c.form.coeffs for c in weak.constraints if c.relation == EQ]
    ineqs = [c.form for c in weak.constraints if c.relation == LE]
    verts = {p: frozenset(i for i, f in enumerate(ineqs) if f(p) == 0) for p in pts}
    return _Cell(eqs, ineqs, verts)


def _adjacent(cell: _Cell, u: tuple, w: tuple, n: int) -> bool:
    common = cell.verts[u] & cell.verts[w]
    normals = list(cell.eqs) + [cell.ineqs[i].coeffs for i in common]
    return rank(normals) == n - 1


def _cut(cell: _Cell, h: AffineForm, n: int):
    """Split ``cell`` by ``h = 0``; returns the list of resulting cells."""
    signs = {p: h(p) for p in cell.verts}
    neg = [p for p, s in signs.items() if s < 0]
    pos = [p for p, s in signs.items() if s > 0]
    if not neg or not pos:
        return [cell]
    k = len(cell.ineqs)
    new_pts = {}
    for u in neg:
        for w in pos:
            if not _adjacent(cell, u, w, n):
                continue
            su, sw = signs[u], signs[w]
            lam = su / (su - sw)
            x = tuple(a + lam * (b - a) for a, b in zip(u, w))
            new_pts[x] = (cell.verts[u] & cell.verts[w]) | {k}
    halves = []
    for sign, form in ((-1, h), (1, -h)):
        verts = {}
        for p, s in signs.items():
            if s == 0:
                verts[p] = cell.verts[p] | {k}
            elif (s < 0) == (sign < 0):
                verts[p] = cell.verts[p]
        for p, t in new_pts.items():
            verts[p] = frozenset(t)
        halves.append(_Cell(cell.eqs, cell.ineqs + [form], verts))
    return halves


def _hyperplanes(sets: Sequence[SemilinearSet]) -> list[AffineForm]:
    seen = {}
    eq_first = []
    for s in sets:
        for piece in s.pieces:
            for c in piece.constraints:
                if c.form.is_constant():
                    continue
                key = c.form.hyperplane_key()
                if key not in seen:
                    seen[key] = AffineForm(key[0], key[1])
                    if c.relation == EQ:
                        eq_first.append(key)
    order = eq_first + [k for k in seen if k not in set(eq_first)]
    return [seen[k] for k in order]


class _FaceLattice:
    """Faces of the cells as sets of global vertex ids, with facet lists."""

    def __init__(self):
        self.points: list[tuple] = []
        self.index: dict = {}
        self.children: dict = {}

    def vid(self, p: tuple) -> int:
        i = self.index.get(p)
        if i is None:
            i = len(self.points)
            self.points.append(p)
            self.index[p] = i
        return i

    def add_cell(self, cell: _Cell):
        ids = {p: self.vid(p) for p in cell.verts}
        tight = {ids[p]: t for p, t in cell.verts.items()}
        by_index: dict = {}
        for v, t in tight.items():
            for j in t:
                by_index.setdefault(j, set()).add(v)
        self._walk(frozenset(tight), tight, by_index)

    def _walk(self, face: frozenset, tight: dict, by_index: dict):
        if face in self.children:
            return
        if len(face) == 1:
            self.children[face] = []
            return
        common = frozenset.intersection(*(tight[v] for v in face))
        cands = set()
        for j, vs in by_index.items():
            if j in common:
                continue
            sub = face & vs
            if sub and sub != face:
                cands.add(frozenset(sub))
        facets = [c for c in cands if not any(c < d for d in cands)]
        self.children[face] = facets
        for f in facets:
            self._walk(f, tight, by_index)


# ---------------------------------------------------------------------------
# triangulations


@dataclass
class Triangulation:
    """Geometric simplicial complex with rational vertices.

    ``simplices`` lists every simplex (downward closed) as a frozenset of
    vertex indices; ``tags[s][k]`` says whether the relative interior of
    ``s`` lies in the ``k``-th input set.
    """

    points: list
    simplices: list
    sets: list = field(default_factory=list)
    tags: dict = field(default_factory=dict)

    def complex(self) -> SimplicialComplex:
        return SimplicialComplex._raw(self.simplices)

    def barycenter(self, s) -> tuple:
        return _barycenter([self.points[v] for v in s])

    def retag(self):
        self.tags = {s: tuple(x.contains(self.barycenter(s)) for x in self.sets)
                     for s in self.simplices}
        return self

    def carrier(self, k: int) -> SimplicialComplex:
        return SimplicialComplex._raw(s for s in self.simplices if self.tags[s][k])

    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def maximal(self) -> list:
        return self.complex().maximal()

    def volume(self, k: int | None = None) -> Fraction:
        """Sum of volumes of top-dimensional simplices (optionally tagged)."""
        n = len(self.points[0]) if self.points else 0
        total = Fraction(0)
        for s in self.simplices:
            if len(s) != n + 1 or (k is not None and not self.tags[s][k]):
                continue
            pts = [self.points[v] for v in sorted(s)]
            rows = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
            total += abs(_det(rows)) / _factorial(n)
        return total


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _det(rows) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def _closure_simplices(tops) -> list:
    seen = set()
    for s in tops:
        if s in seen:
            continue
        items = tuple(s)
        for k in range(1, len(items) + 1):
            for f in itertools.combinations(items, k):
                seen.add(frozenset(f))
    return list(seen)


def triangulate(sets: Sequence[SemilinearSet], full_in: Sequence[int] = ()) -> Triangulation:
    """Triangulate the closure of the union of ``sets`` so that every open
    simplex lies inside or outside each set.

    The hyperplanes of all constraint forms cut each closed piece into faces
    of the common arrangement; each face is triangulated by coning from its
    barycenter over its facets (simplicial faces are kept as they are).
    Faces whose vertices all lie in the closed set ``sets[k]`` for ``k`` in
    ``full_in`` but which are not contained in it are coned as well, which
    makes that set's carrier a full subcomplex.
    """
    sets = list(sets)
    if not sets:
        return Triangulation([], [], [], {})
    n = sets[0].ambient_dim
    for s in sets:
        if not s.is_bounded():
            raise UnboundedInput("triangulation needs bounded sets")
    planes = _hyperplanes(sets)
    lattice = _FaceLattice()
    for s in sets:
        for piece in s.pieces:
            if not is_feasible(piece):
                continue
            start = _start_cell(piece)
            if start is None:
                continue
            cells = [start]
            for h in planes:
                nxt = []
                for c in cells:
                    nxt.extend(_cut(c, h, n))
                cells = nxt
            for c in cells:
                lattice.add_cell(c)

    points = list(lattice.points)
    faces = sorted(lattice.children, key=len)
    dims = {}
    for f in faces:
        dims[f] = affine_dimension([points[v] for v in f])
    faces.sort(key=lambda f: dims[f])
    watch = [sets[k] for k in full_in]
    in_watch = [{v for v, p in enumerate(points) if w.contains(p)} for w in watch]

    tri: dict = {}
    coned: set = set()
    for f in faces:
        kids = lattice.children[f]
        d = dims[f]
        cone = len(f) != d + 1 or any(k in coned for k in kids)
        if not cone and watch:
            bc = _barycenter([points[v] for v in f])
            for w, vin in zip(watch, in_watch):
                if f <= vin and not w.contains(bc):
                    cone = True
                    break
        if not cone:
            tri[f] = [f]
            continue
        coned.add(f)
        b = len(points)
        points.append(_barycenter([points[v] for v in f]))
        tops = []
        for k in kids:
            if dims[k] == d - 1:
                tops.extend(s | {b} for s in tri[k])
        tri[f] = tops
    below = {k for f in faces for k in lattice.children[f]}
    maximal = [f for f in faces if f not in below]
    tops = [s for f in maximal for s in tri[f]]
    out = Triangulation(points, _closure_simplices(tops), sets)
    return out.retag()


def barycentric_subdivision(t: Triangulation) -> Triangulation:
    points = list(t.points)
    bary = {}
    for s in t.simplices:
        if len(s) == 1:
            bary[s] = next(iter(s))
        else:
            bary[s] = len(points)
            points.append(t.barycenter(s))
    by_size = {}
    for s in t.simplices:
        by_size.setdefault(len(s), []).append(s)
    chains = []

    def extend(chain):
        top = chain[-1]
        if len(top) == 1:
            chains.append(frozenset(bary[s] for s in chain))
            return
        for v in top:
            extend(chain + [top - {v}])

    maximal = t.complex().maximal()
    for s in maximal:
        extend([s])
    out = Triangulation(points, _closure_simplices(chains), t.sets)
    return out.retag()


def is_full(t: Triangulation, k: int) -> bool:
    """Every simplex with all vertices in set ``k`` lies in set ``k``."""
    vin = {next(iter(s)) for s in t.simplices if len(s) == 1 and t.tags[s][k]}
    return all(t.tags[s][k] for s in t.simplices if s <= vin)


def check_adapted(t: Triangulation) -> bool:
    """Each open simplex lies entirely inside or outside each tagged set."""
    for s in t.simplices:
        pts = [t.points[v] for v in s]
        # sample: barycenter plus barycenters of vertex-weighted perturbations
        for v in pts:
            q = tuple((3 * b + a) / 4 for a, b in zip(v, _barycenter(pts)))
            for k, x in enumerate(t.sets):
                if x.contains(q) != t.tags[s][k]:
                    return False
    return True


def check_valid(t: Triangulation) -> list:
    """Exact pairwise check that simplices meet in common faces.

    Returns the offending pairs (empty if the triangulation is valid).
    """
    n = len(t.points[0]) if t.points else 0
    tops = t.complex().maximal()
    bad = []
    for a, b in itertools.combinations(tops, 2):
        pa = [t.points[v] for v in sorted(a)]
        pb = [t.points[v] for v in sorted(b)]
        if any(max(p[i] for p in pa) < min(p[i] for p in pb)
               or max(p[i] for p in pb) < min(p[i] for p in pa) for i in range(n)):
            continue
        if _overlap_beyond_common(pa, pb, a, b, n):
            bad.append((a, b))
    for s in tops:
        if affine_dimension([t.points[v] for v in s]) != len(s) - 1:
            bad.append((s, s))
    return bad


def _overlap_beyond_common(pa, pb, a, b, n) -> bool:
    la, lb = sorted(a), sorted(b)
    common = set(a) & set(b)
    m = len(la) + len(lb)
    cons = []

    def var(i, coef=1):
        c = [0] * m
        c[i] = coef
        return c

    for i in range(m):
        cons.append(LinearConstraint(AffineForm(var(i, -1), 0), LE))
    cons.append(LinearConstraint(AffineForm([1] * len(la) + [0] * len(lb), -1), EQ))
    cons.append(LinearConstraint(AffineForm([0] * len(la) + [1] * len(lb), -1), EQ))
    for d in range(n):
        coeffs = [pa[i][d] for i in range(len(la))] + [-pb[j][d] for j in range(len(lb))]
        cons.append(LinearConstraint(AffineForm(coeffs, 0), EQ))
    system = ConstraintSystem(tuple(cons), m)
    # weight placed on vertices of a outside the common face
    obj = AffineForm([(1 if v not in common else 0) for v in la] + [0] * len(lb), 0)
    status, value, _ = lp_optimize(system, obj)
    if status != OPTIMAL:
        return False
    obj2 = AffineForm([0] * len(la) + [(1 if v not in common else 0) for v in lb], 0)
    _, value2, _ = lp_optimize(system, obj2)
    return value > 0 or value2 > 0


def vertex_components(t: Triangulation) -> int:
    return len(t.complex().components())


# ---------------------------------------------------------------------------
# cohomology of compact differences


def oracle_cohomology(p: SemilinearSet, q: SemilinearSet | None = None,
                      g: CoefficientGroup = Z, max_subdivisions: int = 3) -> list[CohomologyGroup]:
    """``H^*(p \\ q; G)`` for compact ``q`` inside compact ``p``."""
    if q is None:
        q = SemilinearSet.empty(p.ambient_dim)
    if not p.is_bounded() or not p.is_closed():
        raise NotCompact("first argument must be closed and bounded")
    if not q.is_bounded() or not q.is_closed():
        raise NotCompact("removed part must be closed and bounded")
    if not q.is_subset(p):
        raise NotNested("removed part is not contained in the space")
    t = triangulate([p, q], full_in=[1])
    rounds = 0
    while not is_full(t, 1):
        if rounds >= max_subdivisions:
            raise RuntimeError("carrier did not become full")
        t = barycentric_subdivision(t)
        rounds += 1
    return complement_cohomology(t, 1, g)


def complement_cohomology(t: Triangulation, k: int | None, g: CoefficientGroup = Z):
    dim = t.dimension()
    if k is None:
        keep = t.complex()
    else:
        outside = {next(iter(s)) for s in t.simplices if len(s) == 1 and not t.tags[s][k]}
        keep = t.complex().full_subcomplex(outside)
    groups = simplicial_cohomology(keep, g)
    return list(groups) + [CohomologyGroup()] * (dim + 1 - len(groups))
