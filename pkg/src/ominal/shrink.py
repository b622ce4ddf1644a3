"""Compact exhaustions ``C_t`` of bounded cells, the cube-face coverings of
``C \\ C_t``, comparison of cover pairs and stabilization of closed
families."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .cells import (
    BAND,
    GRAPH,
    INTERVAL,
    POINT,
    Cell,
    PLFunction,
    UnboundedCell,
    decompose,
)
from .geometry import (
    EQ,
    LE,
    LT,
    AffineForm,
    ConstraintSystem,
    LinearConstraint,
    as_fraction,
    is_feasible,
)
from .homology import SimplicialComplex
from .semilinear import DefinableFamily, SemilinearSet


class DegenerateSlice(ValueError):
    pass


class NotDecreasing(ValueError):
    pass


class NotClosedSlices(ValueError):
    pass


LOW, HIGH = "low", "high"


def _c(form, rel):
    return LinearConstraint(form, rel)


# ---------------------------------------------------------------------------
# shrink families


@dataclass
class ShrinkFamily:
    """``t -> C_t`` with margin ``min(half-width, t)`` at every open level."""

    cell: Cell
    family: DefinableFamily

    def slice(self, t) -> SemilinearSet:
        return self.family.slice(t).reduced()


def _ge_min(y: AffineForm, lo1: PLFunction, lo2: PLFunction) -> list:
    """Systems whose union is ``y >= min(lo1, lo2)`` (functions lifted)."""
    out = []
    for fn in (lo1, lo2):
        for d, f in fn.pieces:
            out.append(d.conjoin([_c(f - y, LE)]))
    return out


def _le_max(y: AffineForm, hi1: PLFunction, hi2: PLFunction) -> list:
    out = []
    for fn in (hi1, hi2):
        for d, f in fn.pieces:
            out.append(d.conjoin([_c(y - f, LE)]))
    return out


def _slice_space(c: Cell) -> SemilinearSet:
    """``{(x, t) : t > 0, x in C_t}`` in ``ambient_dim + 1`` variables."""
    n = c.ambient_dim
    N = n + 1
    t = AffineForm.variable(N - 1, N)
    y = AffineForm.variable(n - 1, N)
    pos = ConstraintSystem((_c(-t, LT),), N)
    if c.kind == POINT:
        return SemilinearSet(N, (pos.conjoin([_c(y - c.lo, EQ)]),))
    if c.kind == INTERVAL:
        a, b = c.lo, c.hi
        mid = (a + b) / 2
        lows = [_c(t + a - y, LE), _c(-y + mid, LE)]
        highs = [_c(y - b + t, LE), _c(y - mid, LE)]
        pieces = [pos.conjoin([l, h]) for l in lows for h in highs]
        return SemilinearSet(N, tuple(pieces)).reduced()
    base = _slice_space(c.base)
    # base lives in (x, t); insert y before t
    base = base.insert_axes([n - 1])
    xs = [AffineForm.variable(i, N) for i in range(n - 1)]
    tt = PLFunction.affine(t)

    def lift(fn: PLFunction) -> PLFunction:
        return fn.pullback(xs)

    if c.kind == GRAPH:
        rel = [d.conjoin([_c(y - f, EQ)]) for d, f in lift(c.f).pieces]
    else:
        f, g = lift(c.f), lift(c.g)
        h = (f + g) / 2
        lower = _ge_min(y, f + tt, h)
        upper = _le_max(y, g - tt, h)
        rel = [a.conjoin(b) for a in lower for b in upper]
    out = []
    for p in base.pieces:
        for r in rel:
            out.append(p.conjoin(r))
    return SemilinearSet(N, tuple(out)).reduced()


def shrink_family(c: Cell) -> ShrinkFamily:
    """Definably compact slices exhausting the bounded cell ``c``.

    Intervals give ``[a + g, b - g]`` and bands ``[f + g, g_up - g]`` over the
    base slice, where ``g = min(half-width, t)``; points and graphs follow
    their base.
    """
    if not c.is_bounded():
        raise UnboundedCell("shrink family needs a bounded cell")
    return ShrinkFamily(c, DefinableFamily(_slice_space(c)))


# ---------------------------------------------------------------------------
# covers


@dataclass(frozen=True, order=True)
class FaceIndex:
    axis: int
    side: str

    def opposite(self) -> "FaceIndex":
        return FaceIndex(self.axis, HIGH if self.side == LOW else LOW)

    def __str__(self) -> str:
        return f"{self.axis}{'-' if self.side == LOW else '+'}"


def cube_faces(m: int) -> list[FaceIndex]:
    return [FaceIndex(i, s) for i in range(m) for s in (LOW, HIGH)]


def cube_face_nerve(m: int) -> SimplicialComplex:
    """Nerve of the closed facets of the m-cube (opposite facets are disjoint)."""
    faces = cube_faces(m)
    simplices = []
    for k in range(1, m + 1):
        for combo in itertools.combinations(faces, k):
            if len({f.axis for f in combo}) == k:
                simplices.append(combo)
    return SimplicialComplex(simplices, faces)


@dataclass
class IndexedCover:
    """Finite cover of ``space`` by members indexed by a sortable set.

    ``cells`` optionally maps sorted index tuples to a cell whose set is the
    corresponding intersection (a structural acyclicity certificate).
    """

    space: SemilinearSet
    members: Mapping
    cells: dict = field(default_factory=dict)

    def index_order(self) -> list:
        return sorted(self.members, key=self.index_key)

    @staticmethod
    def index_key(i):
        return (str(type(i).__name__), i) if not isinstance(i, FaceIndex) else ("F", i.axis, i.side)

    def intersection(self, F) -> SemilinearSet:
        F = tuple(sorted(F, key=self.index_key))
        if F in self.cells:
            return self.cells[F].set
        out = self.members[F[0]]
        for i in F[1:]:
            out = out & self.members[i]
        return out

    def nerve(self) -> SimplicialComplex:
        return nerve(self)

    def union(self) -> SemilinearSet:
        out = SemilinearSet.empty(self.space.ambient_dim)
        for m in self.members.values():
            out = out | m
        return out

    def is_cover(self) -> bool:
        return self.union().equals(self.space)


def nerve(cov: IndexedCover) -> SimplicialComplex:
    """Simplices are the index sets with nonempty intersection."""
    index = cov.index_order()
    alive = []
    level = [(i,) for i in index if not cov.intersection((i,)).is_empty()]
    while level:
        alive.extend(level)
        present = set(level)
        nxt = []
        for F in level:
            last = index.index(F[-1])
            for j in index[last + 1:]:
                G = F + (j,)
                if all(G[:k] + G[k + 1:] in present for k in range(len(G))):
                    if not cov.intersection(G).is_empty():
                        nxt.append(G)
        level = nxt
    return SimplicialComplex(alive, [F[0] for F in alive if len(F) == 1])


def _margin_pieces(c: Cell, t: Fraction):
    """(lower-side cell bound, upper-side cell bound) at a band level."""
    f, g = c.f, c.g
    h = (f + g) / 2
    top_lo = h.maximum(g - t)
    bottom_hi = h.minimum(f + t)
    return top_lo, bottom_hi


def _face_cell(c: Cell, t: Fraction, choice: dict, axis_of: dict) -> Cell:
    """The cell ``U_F``: at each open level restrict to the chosen side."""
    k = len(c.levels()) - 1
    if c.kind == POINT:
        return c
    if c.kind == INTERVAL:
        side = choice.get(axis_of[k])
        a, b = c.lo, c.hi
        gamma = min((b - a) / 2, t)
        if side == LOW:
            return Cell.interval(a, a + gamma)
        if side == HIGH:
            return Cell.interval(b - gamma, b)
        return c
    base = _face_cell(c.base, t, choice, axis_of)
    if c.kind == GRAPH:
        return Cell.graph(base, c.f.restricted(base.set), check=False)
    side = choice.get(axis_of[k])
    top_lo, bottom_hi = _margin_pieces(c, t)
    dom = base.set
    if side == HIGH:
        return Cell.band(base, top_lo.restricted(dom), c.g.restricted(dom), check=False)
    if side == LOW:
        return Cell.band(base, c.f.restricted(dom), bottom_hi.restricted(dom), check=False)
    return Cell.band(base, c.f.restricted(dom), c.g.restricted(dom), check=False)


def cube_face_cover(c: Cell, t, fam: ShrinkFamily | None = None) -> IndexedCover:
    """Cover of ``C \\ C_t`` by ``2m`` open sets indexed by cube facets.

    At an interval level the two end pieces, at a band level the top and
    bottom margins over the whole base; lower members are lifted through
    every higher level.  Every nonempty intersection is built as a cell.
    """
    t = as_fraction(t)
    if not c.is_bounded():
        raise UnboundedCell("cover needs a bounded cell")
    if t <= 0:
        raise ValueError("parameter must be positive")
    fam = fam or shrink_family(c)
    space = c.set - fam.slice(t)
    if space.is_empty():
        raise DegenerateSlice("C_t equals C")
    axes = c.axes()
    m = len(axes)
    axis_of = {lvl: i for i, lvl in enumerate(axes)}
    members = {}
    cells = {}
    for F in _proper_face_sets(m):
        choice = {f.axis: f.side for f in F}
        cell = _face_cell(c, t, choice, axis_of)
        key = tuple(sorted(F, key=IndexedCover.index_key))
        cells[key] = cell
        if len(F) == 1:
            members[F[0]] = cell.set
    return IndexedCover(space, members, cells)


def _proper_face_sets(m: int):
    faces = cube_faces(m)
    for k in range(1, m + 1):
        for combo in itertools.combinations(faces, k):
            if len({f.axis for f in combo}) == k:
                yield combo


# ---------------------------------------------------------------------------
# cover pairs


@dataclass
class IsoReport:
    """Outcome of comparing ``U`` (inside) with ``V``."""

    ok: bool
    condition: str = ""
    witness: tuple = ()
    certificates: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def acyclicity_certificate(cov: IndexedCover, F: tuple):
    """Cell recognition first, oracle computation second; None if neither."""
    F = tuple(sorted(F, key=cov.index_key))
    cell = cov.cells.get(F)
    if cell is not None:
        try:
            return cell.certify()
        except ValueError:
            pass
    from .oracle import oracle_cohomology
    from .homology import CohomologyGroup

    s = cov.intersection(F)
    if not s.is_bounded() or len(s.components()) != 1:
        return None
    cl = s.closure()
    rest = cl - s
    if not rest.is_closed():
        return None
    groups = oracle_cohomology(cl, rest)
    if groups[0] == CohomologyGroup(1) and all(g.is_zero() for g in groups[1:]):
        return ("oracle", tuple(groups))
    return None


def check_iso_pair(u: IndexedCover, v: IndexedCover) -> IsoReport:
    """Conditions under which the inclusion of ``U``-unions into
    ``V``-unions is a cohomology isomorphism: memberwise inclusion, equal
    nonemptiness patterns, and acyclic nonempty intersections."""
    if set(u.members) != set(v.members):
        return IsoReport(False, "index sets differ")
    index = u.index_order()
    for i in index:
        if not u.members[i].is_subset(v.members[i]):
            return IsoReport(False, "member inclusion", (i,))
    certs = {}
    for k in range(1, len(index) + 1):
        any_alive = False
        for F in itertools.combinations(index, k):
            eu = u.intersection(F).is_empty()
            ev = v.intersection(F).is_empty()
            if eu != ev:
                return IsoReport(False, "nonemptiness pattern", F)
            if eu:
                continue
            any_alive = True
            for name, cov in (("u", u), ("v", v)):
                cert = acyclicity_certificate(cov, F)
                if cert is None:
                    return IsoReport(False, f"acyclicity ({name})", F)
                certs[(name, F)] = cert
        if not any_alive:
            break
    return IsoReport(True, certificates=certs)


@dataclass
class ShrinkLaws:
    """Symbolic checks on a shrink family and its covers."""

    exhausts: bool
    decreasing: bool
    compact_slices: bool
    singleton: bool
    iso: IsoReport | None = None

    @property
    def ok(self) -> bool:
        return (self.exhausts and self.decreasing and self.compact_slices
                and self.singleton and (self.iso is None or bool(self.iso)))

    def failures(self) -> list[str]:
        names = ["exhausts", "decreasing", "compact_slices", "singleton"]
        out = [k for k in names if not getattr(self, k)]
        if self.iso is not None and not self.iso:
            out.append(f"iso: {self.iso.condition}")
        return out


def large_parameter(c: Cell) -> Fraction:
    """A parameter past which ``C_t`` is a single point."""
    box = c.set.bounding_box()
    return max((hi - lo for lo, hi in box), default=Fraction(0)) + 1


def check_shrink_laws(c: Cell, pair: tuple | None = None,
                      fam: ShrinkFamily | None = None) -> ShrinkLaws:
    """``union C_t = C``, ``C_u <= C_t`` for ``t < u``, closed bounded slices,
    a singleton slice for large ``t`` and, given ``pair = (t1, t2)`` with
    ``t1 < t2``, the cover comparison between the two cube-face covers."""
    fam = fam or shrink_family(c)
    total = fam.family.positive_part()
    n = c.ambient_dim
    union = total.project(n)
    exhausts = union.is_subset(c.set) and c.set.is_subset(union)
    N = n + 2
    t = AffineForm.variable(n, N)
    u = AffineForm.variable(n + 1, N)
    at_t = total.extend(1)
    at_u = total.insert_axes([n])
    order = SemilinearSet(N, (ConstraintSystem((_c(t - u, LT), _c(-t, LT)), N),))
    decreasing = ((at_u & order) - at_t).is_empty()
    compact = (DefinableFamily(total).fiber_closure() - total).is_empty()
    big = fam.slice(large_parameter(c))
    box = big.bounding_box()
    singleton = box is not None and all(lo == hi for lo, hi in box)
    iso = None
    if pair is not None:
        t1, t2 = (as_fraction(v) for v in pair)
        iso = check_iso_pair(cube_face_cover(c, t1, fam), cube_face_cover(c, t2, fam))
    return ShrinkLaws(exhausts, decreasing, compact, singleton, iso)


# ---------------------------------------------------------------------------
# stabilization


@dataclass
class Stabilization:
    t0: Fraction | float
    minimum_values: list
    lower_bound: list  # (base cell, PLFunction or None for 0)
    certified: bool


def _check_family(fam: DefinableFamily):
    fam = fam.with_parameter_last()
    total = fam.positive_part()
    n = fam.fiber_dim
    bad = DefinableFamily(total).fiber_closure() - total
    w = bad.sample_point()
    if w is not None:
        raise NotClosedSlices(f"slice at t={w[-1]} is not closed near {w[:-1]}")
    # t < u with (x, t) in Y but (x, u) not in Y
    N = n + 2
    t = AffineForm.variable(n, N)
    u = AffineForm.variable(n + 1, N)
    at_t = total.extend(1)
    at_u = total.insert_axes([n])
    order = SemilinearSet(N, (ConstraintSystem((_c(t - u, LT), _c(-t, LT)), N),))
    viol = (at_t & order) - at_u
    w = viol.sample_point()
    if w is not None:
        raise NotDecreasing(f"Y_{w[n]} not inside Y_{w[n + 1]} at {w[:n]}")
    return fam, total


def stabilization_t0(fam: DefinableFamily) -> Stabilization:
    """Least positive local-minimum value ``t0`` of ``f(x) = inf{t : x in Y_t}``
    for a family of closed sets growing with ``t``, with ``Y_t = Z_t`` for
    ``0 < t < t0`` certified, where ``Z_t = {f <= t}``.  ``t0`` is ``inf``
    when ``f`` has no positive local-minimum value."""
    fam, total = _check_family(fam)
    n = fam.fiber_dim
    N = n + 1
    t = AffineForm.variable(n, N)
    d = decompose(total)
    # lowest cell over each base cell gives f
    lowest: dict = {}
    for cell in d.cells:
        key = id(cell.base)
        lowest.setdefault(key, (cell.base, []))[1].append(cell)
    lower = []
    for base, stack in lowest.values():
        first = min(stack, key=lambda c: c.sample_point()[-1])
        fn = first.f
        lower.append((base, fn))
    # local minima live on cells where f is constant
    values = set()
    for base, fn in lower:
        if fn is None:
            continue
        c = fn(base.sample_point())
        if c <= 0:
            continue
        if not _constant_on(fn, base.set, c):
            continue
        below = (total & SemilinearSet(N, (ConstraintSystem((_c(t - c, LT),), N),))).project(n)
        if not (base.set - below.closure()).is_empty():
            values.add(c)
    t0 = min(values) if values else math.inf
    # certify Y_t = Z_t below t0 in (x, t) space
    zset = []
    for base, fn in lower:
        b = base.set.extend(1)
        cons = [_c(-t, LT)]
        if fn is not None:
            cons.append(_c(fn.pieces[0][1].extend(1) - t, LE))
        for p in b.pieces:
            zset.append(p.conjoin(cons))
    Z = SemilinearSet(N, tuple(zset))
    if t0 != math.inf:
        Z = Z & SemilinearSet(N, (ConstraintSystem((_c(t - t0, LT),), N),))
    certified = (Z - total).is_empty()
    return Stabilization(t0, sorted(values), lower, certified)


def _constant_on(fn: PLFunction, dom: SemilinearSet, c: Fraction) -> bool:
    for d, f in fn.pieces:
        diff = f - c
        for rel in (_c(diff, LT), _c(-diff, LT)):
            if any(is_feasible(p.conjoin(d).conjoin([rel])) for p in dom.pieces):
                return False
    return True
