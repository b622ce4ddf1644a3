"""Cells (graphs and bands over lower cells), cylindrical decomposition of
semilinear sets and explicit piecewise-linear contractions."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .geometry import (
    EQ,
    LE,
    LT,
    AffineForm,
    ConstraintSystem,
    LinearConstraint,
    as_fraction,
    find_point,
    fm_project,
    is_feasible,
)
from .semilinear import SemilinearSet


class UnboundedCell(ValueError):
    pass


class DegenerateBand(ValueError):
    pass


def _is_full(system: ConstraintSystem) -> bool:
    """Whether a closed system has nonempty interior."""
    if any(c.relation == EQ for c in system.constraints):
        return False
    return is_feasible(ConstraintSystem(
        tuple(LinearConstraint(c.form, LT) for c in system.constraints), system.ambient_dim))


def _compact_pieces(pieces, dim: int) -> tuple:
    seen, uniq = set(), []
    for d, f in pieces:
        key = (frozenset(d.constraints), f)
        if key not in seen:
            seen.add(key)
            uniq.append((d, f))
    full = [_is_full(d) for d, _ in uniq]
    if not any(full):
        return tuple(uniq)
    cover = SemilinearSet(dim, tuple(d for (d, _), ok in zip(uniq, full) if ok))
    return tuple(p for p, ok in zip(uniq, full)
                 if ok or not SemilinearSet(dim, (p[0],)).is_subset(cover))


def _le(form: AffineForm) -> LinearConstraint:
    return LinearConstraint(form, LE)


def _lt(form: AffineForm) -> LinearConstraint:
    return LinearConstraint(form, LT)


def _eq(form: AffineForm) -> LinearConstraint:
    return LinearConstraint(form, EQ)


def _universe(dim: int) -> ConstraintSystem:
    return ConstraintSystem((), dim)


# ---------------------------------------------------------------------------
# piecewise-linear maps


@dataclass(frozen=True)
class PLMap:
    """Piecewise-affine map ``R^dim_in -> R^dim_out``.

    ``pieces`` are ``(closed ConstraintSystem, tuple of AffineForm)``; where
    domains overlap the values must agree (see :meth:`is_continuous_on`).
    """

    dim_in: int
    dim_out: int
    pieces: tuple

    @classmethod
    def affine(cls, forms: Sequence[AffineForm], dim_in: int | None = None) -> "PLMap":
        forms = tuple(forms)
        d = dim_in if dim_in is not None else forms[0].dim
        return cls(d, len(forms), ((_universe(d), forms),))

    @classmethod
    def identity(cls, dim: int) -> "PLMap":
        return cls.affine([AffineForm.variable(i, dim) for i in range(dim)], dim)

    def __call__(self, point: Sequence) -> tuple:
        pt = tuple(as_fraction(v) for v in point)
        for dom, forms in self.pieces:
            if dom.contains(pt):
                return tuple(f(pt) for f in forms)
        raise ValueError(f"point {pt} outside every piece")

    def component(self, i: int) -> "PLFunction":
        return PLFunction(self.dim_in, tuple((d, fs[i]) for d, fs in self.pieces))

    def components(self) -> list["PLFunction"]:
        return [self.component(i) for i in range(self.dim_out)]

    def compose(self, inner: "PLMap") -> "PLMap":
        """``self o inner``."""
        if inner.dim_out != self.dim_in:
            raise ValueError("dimension mismatch in composition")
        out = []
        for e, psi in inner.pieces:
            for d, phi in self.pieces:
                dom = e.conjoin(d.pullback(list(psi))).simplified()
                if not is_feasible(dom):
                    continue
                out.append((dom, tuple(f.compose(list(psi)) for f in phi)))
        return PLMap(inner.dim_in, self.dim_out, _compact_pieces(out, inner.dim_in))

    def restricted(self, system: ConstraintSystem) -> "PLMap":
        out = []
        for d, fs in self.pieces:
            dom = d.conjoin(system).simplified()
            if is_feasible(dom):
                out.append((dom, fs))
        return PLMap(self.dim_in, self.dim_out, tuple(out))

    def stack(self, other: "PLMap") -> "PLMap":
        """``x -> (self(x), other(x))`` on the common refinement."""
        out = []
        for d, f in self.pieces:
            for e, g in other.pieces:
                dom = d.conjoin(e).simplified()
                if is_feasible(dom):
                    out.append((dom, tuple(f) + tuple(g)))
        return PLMap(self.dim_in, self.dim_out + other.dim_out, tuple(out))

    def is_continuous_on(self, domain: SemilinearSet) -> bool:
        """Exact check that the map restricted to ``domain`` is continuous.

        Two pieces must agree wherever the closures of their traces on the
        domain meet inside the domain; this also catches jumps between
        pieces that do not overlap (half-open pieces).
        """
        box = domain.bounding_box()
        if box is None:
            return True
        clip = []
        for i, (lo, hi) in enumerate(box):
            x = AffineForm.variable(i, self.dim_in)
            if lo is not None:
                clip.append(_le(lo - x))
            if hi is not None:
                clip.append(_le(x - hi))
        live = []
        for d, f in self.pieces:
            d = d.conjoin(clip)
            traces = [d.conjoin(p) for p in domain.pieces]
            traces = [t.weakened() for t in traces if is_feasible(t)]
            if traces:
                closed = all(c.relation != LT for c in d.constraints)
                live.append((d, closed, traces, f))
        for (d1, c1, t1, f1), (d2, c2, t2, f2) in itertools.combinations(live, 2):
            diffs = [a - b for a, b in zip(f1, f2)]
            diffs = [e for e in diffs if not (e.is_constant() and e.const == 0)]
            if not diffs:
                continue
            # closed pieces: the closures of the traces meet inside d1 n d2
            pairs = [(d1, d2)] if c1 and c2 else [(a, b) for a in t1 for b in t2]
            for a, b in pairs:
                common = a.conjoin(b)
                if not is_feasible(common):
                    continue
                for p in domain.pieces:
                    cp = common.conjoin(p)
                    if not is_feasible(cp):
                        continue
                    for diff in diffs:
                        for rel in (_lt(diff), _lt(-diff)):
                            if is_feasible(cp.conjoin([rel])):
                                return False
        return True

    def covers(self, domain: SemilinearSet) -> bool:
        union = SemilinearSet(self.dim_in, tuple(d for d, _ in self.pieces))
        return domain.is_subset(union)


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-affine function on (a superset of) a cell."""

    dim: int
    pieces: tuple

    @classmethod
    def constant(cls, value, dim: int) -> "PLFunction":
        return cls(dim, ((_universe(dim), AffineForm.constant(value, dim)),))

    @classmethod
    def affine(cls, form: AffineForm) -> "PLFunction":
        return cls(form.dim, ((_universe(form.dim), form),))

    def __call__(self, point: Sequence) -> Fraction:
        pt = tuple(as_fraction(v) for v in point)
        for dom, f in self.pieces:
            if dom.contains(pt):
                return f(pt)
        raise ValueError(f"point {pt} outside every piece")

    def as_map(self) -> PLMap:
        return PLMap(self.dim, 1, tuple((d, (f,)) for d, f in self.pieces))

    def _combine(self, other: "PLFunction", op) -> "PLFunction":
        out = []
        for d, f in self.pieces:
            for e, g in other.pieces:
                dom = d.conjoin(e).simplified()
                if is_feasible(dom):
                    out.append((dom, op(f, g)))
        return PLFunction(self.dim, tuple(out)).compacted()

    def __add__(self, other):
        if not isinstance(other, PLFunction):
            return PLFunction(self.dim, tuple((d, f + other) for d, f in self.pieces))
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        if not isinstance(other, PLFunction):
            return PLFunction(self.dim, tuple((d, f - other) for d, f in self.pieces))
        return self._combine(other, lambda a, b: a - b)

    __radd__ = __add__

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return PLFunction(self.dim, tuple((d, -f) for d, f in self.pieces))

    def __mul__(self, scalar):
        return PLFunction(self.dim, tuple((d, f * scalar) for d, f in self.pieces))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return PLFunction(self.dim, tuple((d, f / scalar) for d, f in self.pieces))

    def minimum(self, other: "PLFunction") -> "PLFunction":
        return self._minmax(other, lower=True)

    def maximum(self, other: "PLFunction") -> "PLFunction":
        return self._minmax(other, lower=False)

    def _minmax(self, other: "PLFunction", lower: bool) -> "PLFunction":
        out = []
        for d, f in self.pieces:
            for e, g in other.pieces:
                base = d.conjoin(e)
                diff = f - g
                first, second = (diff, -diff) if lower else (-diff, diff)
                for cons, val in ((_le(first), f), (_le(second), g)):
                    dom = base.conjoin([cons]).simplified()
                    if is_feasible(dom):
                        out.append((dom, val))
        return PLFunction(self.dim, tuple(out)).compacted()

    def compacted(self) -> "PLFunction":
        """Drop duplicate pieces and thin pieces covered by full ones."""
        return PLFunction(self.dim, _compact_pieces(self.pieces, self.dim))

    def pullback(self, maps: Sequence[AffineForm]) -> "PLFunction":
        maps = list(maps)
        k = maps[0].dim if maps else 0
        return PLFunction(k, tuple((d.pullback(maps), f.compose(maps)) for d, f in self.pieces))

    def extend(self, extra: int) -> "PLFunction":
        return PLFunction(self.dim + extra,
                          tuple((d.extend(extra), f.extend(extra)) for d, f in self.pieces))

    def restricted(self, domain: SemilinearSet) -> "PLFunction":
        """Drop pieces that miss ``domain``."""
        out = []
        for d, f in self.pieces:
            if any(is_feasible(d.conjoin(p)) for p in domain.pieces):
                out.append((d, f))
        return PLFunction(self.dim, tuple(out))

    def is_continuous_on(self, domain: SemilinearSet) -> bool:
        return self.as_map().is_continuous_on(domain)

    def covers(self, domain: SemilinearSet) -> bool:
        return self.as_map().covers(domain)

    def forms(self) -> list[AffineForm]:
        out = []
        for d, f in self.pieces:
            out.extend(c.form for c in d.constraints)
            out.append(f)
        return out

    def __str__(self) -> str:
        if len(self.pieces) == 1 and not self.pieces[0][0].constraints:
            return str(self.pieces[0][1])
        return "; ".join(f"{f} on [{d}]" for d, f in self.pieces)


def _y(dim: int) -> AffineForm:
    return AffineForm.variable(dim - 1, dim)


# ---------------------------------------------------------------------------
# cells


POINT, INTERVAL, GRAPH, BAND = "point", "interval", "graph", "band"


@dataclass(frozen=True, eq=False)
class Cell:
    """A cell: a point or open interval of the line, or the graph of a
    continuous function / the open band between two functions over a base
    cell.  ``lo``/``hi`` hold the point or interval endpoints, ``f``/``g`` the
    bounding functions (``None`` stands for an infinite bound)."""

    kind: str
    base: "Cell | None" = None
    lo: Fraction | None = None
    hi: Fraction | None = None
    f: PLFunction | None = None
    g: PLFunction | None = None
    name: str = ""

    # -- constructors -----------------------------------------------------

    @classmethod
    def point(cls, a, name: str = "") -> "Cell":
        return cls(POINT, None, as_fraction(a), as_fraction(a), name=name)

    @classmethod
    def interval(cls, a=None, b=None, name: str = "") -> "Cell":
        a = None if a is None else as_fraction(a)
        b = None if b is None else as_fraction(b)
        if a is not None and b is not None and not a < b:
            raise DegenerateBand(f"empty interval ({a}, {b})")
        return cls(INTERVAL, None, a, b, name=name)

    @classmethod
    def graph(cls, base: "Cell", f: PLFunction, name: str = "", check: bool = True) -> "Cell":
        cell = cls(GRAPH, base, f=f, name=name)
        if check:
            cell._check_function(f)
        return cell

    @classmethod
    def band(cls, base: "Cell", f: PLFunction | None, g: PLFunction | None,
             name: str = "", check: bool = True) -> "Cell":
        cell = cls(BAND, base, f=f, g=g, name=name)
        if check:
            for h in (f, g):
                if h is not None:
                    cell._check_function(h)
            if f is not None and g is not None and not cell.bounds_ordered():
                raise DegenerateBand("lower bound not below upper bound on the base")
        return cell

    def _check_function(self, h: PLFunction):
        dom = self.base.set
        if h.dim != self.base.ambient_dim:
            raise ValueError("function has wrong number of variables")
        if not h.covers(dom):
            raise ValueError("function pieces do not cover the base cell")
        if not h.is_continuous_on(dom):
            raise ValueError("function is not continuous on the base cell")

    def bounds_ordered(self) -> bool:
        """``f < g`` everywhere on the base (symbolic)."""
        base = self.base.set
        for d, a in self.f.pieces:
            for e, b in self.g.pieces:
                bad = d.conjoin(e).conjoin([_le(b - a)])
                if any(is_feasible(bad.conjoin(p)) for p in base.pieces):
                    return False
        return True

    # -- structure --------------------------------------------------------

    @cached_property
    def ambient_dim(self) -> int:
        return 1 if self.base is None else self.base.ambient_dim + 1

    @cached_property
    def dimension(self) -> int:
        if self.kind == POINT:
            return 0
        if self.kind == INTERVAL:
            return 1
        if self.kind == GRAPH:
            return self.base.dimension
        return self.base.dimension + 1

    def levels(self) -> list["Cell"]:
        chain = []
        c = self
        while c is not None:
            chain.append(c)
            c = c.base
        return chain[::-1]

    def axes(self) -> list[int]:
        """Coordinates along which the cell is open (interval/band levels)."""
        return [i for i, c in enumerate(self.levels()) if c.kind in (INTERVAL, BAND)]

    def is_bounded(self) -> bool:
        for c in self.levels():
            if c.kind == INTERVAL and (c.lo is None or c.hi is None):
                return False
            if c.kind == BAND and (c.f is None or c.g is None):
                return False
        return True

    @cached_property
    def set(self) -> SemilinearSet:
        n = self.ambient_dim
        if self.kind == POINT:
            return SemilinearSet.point([self.lo])
        if self.kind == INTERVAL:
            x = AffineForm.variable(0, 1)
            cons = []
            if self.lo is not None:
                cons.append(_lt(AffineForm.constant(self.lo, 1) - x))
            if self.hi is not None:
                cons.append(_lt(x - AffineForm.constant(self.hi, 1)))
            return SemilinearSet(1, (ConstraintSystem(tuple(cons), 1),))
        base = self.base.set.extend(1)
        y = _y(n)
        if self.kind == GRAPH:
            rel = [ConstraintSystem((_eq(y - f.extend(1)),), n).conjoin(d.extend(1))
                   for d, f in self.f.pieces]
        else:
            lows = [ConstraintSystem((_lt(f.extend(1) - y),), n).conjoin(d.extend(1))
                    for d, f in self.f.pieces] if self.f else [_universe(n)]
            highs = [ConstraintSystem((_lt(y - g.extend(1)),), n).conjoin(d.extend(1))
                     for d, g in self.g.pieces] if self.g else [_universe(n)]
            rel = [a.conjoin(b) for a in lows for b in highs]
        out = []
        for p in base.pieces:
            for r in rel:
                s = p.conjoin(r).simplified()
                if is_feasible(s):
                    out.append(s)
        return SemilinearSet(n, tuple(out))

    def contains(self, point: Sequence) -> bool:
        return self.set.contains(point)

    def closure(self) -> SemilinearSet:
        return self.set.closure()

    def frontier(self) -> SemilinearSet:
        return self.set.boundary()

    def sample_point(self) -> tuple:
        if self.kind == POINT:
            return (self.lo,)
        if self.kind == INTERVAL:
            a, b = self.lo, self.hi
            if a is None and b is None:
                return (Fraction(0),)
            if a is None:
                return (b - 1,)
            if b is None:
                return (a + 1,)
            return ((a + b) / 2,)
        x = self.base.sample_point()
        if self.kind == GRAPH:
            return x + (self.f(x),)
        lo = self.f(x) if self.f else None
        hi = self.g(x) if self.g else None
        if lo is None and hi is None:
            return x + (Fraction(0),)
        if lo is None:
            return x + (hi - 1,)
        if hi is None:
            return x + (lo + 1,)
        return x + ((lo + hi) / 2,)

    def random_point(self, rng: random.Random, denom: int = 64) -> tuple:
        """A random rational point of a bounded cell."""
        if self.kind == POINT:
            return (self.lo,)
        if self.kind == INTERVAL:
            return (_between(self.lo, self.hi, rng, denom),)
        x = self.base.random_point(rng, denom)
        if self.kind == GRAPH:
            return x + (self.f(x),)
        return x + (_between(self.f(x), self.g(x), rng, denom),)

    def certify(self) -> "CellCertificate":
        """Re-check every structural condition; raises on failure."""
        for c in self.levels():
            if c.kind == GRAPH:
                c._check_function(c.f)
            elif c.kind == BAND:
                for h in (c.f, c.g):
                    if h is not None:
                        c._check_function(h)
                if c.f is not None and c.g is not None and not c.bounds_ordered():
                    raise DegenerateBand("band bounds not ordered")
        if self.set.is_empty():
            raise DegenerateBand("cell is empty")
        return CellCertificate(tuple(c.kind for c in self.levels()), self.dimension,
                               self.ambient_dim)

    def describe(self) -> dict:
        return {"kinds": [c.kind for c in self.levels()], "dim": self.dimension,
                "ambient_dim": self.ambient_dim, "sample": [str(v) for v in self.sample_point()]}

    def __repr__(self) -> str:
        label = self.name or "cell"
        return f"<{label} {'/'.join(c.kind for c in self.levels())} dim={self.dimension}>"


def _between(lo: Fraction, hi: Fraction, rng: random.Random, denom: int) -> Fraction:
    u = Fraction(rng.randint(1, denom - 1), denom)
    return lo + u * (hi - lo)


@dataclass(frozen=True)
class CellCertificate:
    """Evidence that a set was recognized as a cell: the level kinds and
    dimensions after all structural checks passed."""

    kinds: tuple
    dimension: int
    ambient_dim: int

    def __bool__(self):
        return True


# ---------------------------------------------------------------------------
# decomposition


@dataclass
class CellDecomposition:
    target: SemilinearSet
    cells: list

    def dimension(self) -> int:
        return max((c.dimension for c in self.cells), default=-1)

    def euler_characteristic(self) -> int:
        """Combinatorial Euler characteristic ``sum (-1)^dim`` of the cells."""
        return sum((-1) ** c.dimension for c in self.cells)

    def counts(self) -> dict:
        out = {}
        for c in self.cells:
            out[c.dimension] = out.get(c.dimension, 0) + 1
        return out


def _root(h: AffineForm) -> AffineForm:
    """``y = root`` solves ``h = 0`` for the last variable (coefficient != 0)."""
    n = h.dim
    c = h.coeffs[-1]
    rest = AffineForm(h.coeffs[:-1], h.const)
    return rest * Fraction(-1) / c if n > 1 else AffineForm((), -h.const / c)


def _dedupe(forms) -> list[AffineForm]:
    seen = {}
    for f in forms:
        if f.is_constant():
            continue
        key = f.hyperplane_key()
        if key not in seen:
            seen[key] = AffineForm(key[0], key[1])
    return list(seen.values())


def _cad(forms: list[AffineForm], n: int, region: SemilinearSet) -> list[Cell]:
    """Sign-invariant cells for ``forms`` covering ``region``."""
    forms = _dedupe(forms)
    if n == 1:
        pts = sorted({_root(h).const for h in forms})
        cells = []
        edges = [None] + pts + [None]
        for k, p in enumerate(pts):
            cells.append(Cell.interval(edges[k], p))
            cells.append(Cell.point(p))
        cells.append(Cell.interval(pts[-1] if pts else None, None))
        return [c for c in cells if region.contains(c.sample_point())]
    flat = [AffineForm(h.coeffs[:-1], h.const) for h in forms if h.coeffs[-1] == 0]
    roots = [_root(h) for h in forms if h.coeffs[-1] != 0]
    diffs = [a - b for a, b in itertools.combinations(roots, 2)]
    shadow = region.project(n - 1)
    base_forms = flat + diffs + [c.form for p in shadow.pieces for c in p.constraints]
    out = []
    for base in _cad(base_forms, n - 1, shadow):
        s = base.sample_point()
        vals = sorted({r(s) for r in roots})
        groups = [[r for r in roots if r(s) == v] for v in vals]
        fns = [PLFunction.affine(g[0]) for g in groups]
        _certify_order(base, groups)
        bounds = [None] + fns + [None]
        for k, fn in enumerate(fns):
            out.append(Cell.band(base, bounds[k], fn, check=False))
            out.append(Cell.graph(base, fn, check=False))
        out.append(Cell.band(base, bounds[-2] if fns else None, None, check=False))
    return [c for c in out if region.contains(c.sample_point())]


def _certify_order(base: Cell, groups: list):
    bset = base.set
    for g in groups:
        for a, b in itertools.combinations(g, 2):
            for rel in (_lt(a - b), _lt(b - a)):
                if any(is_feasible(p.conjoin([rel])) for p in bset.pieces):
                    raise AssertionError("root functions not identical on base cell")
    for g1, g2 in zip(groups, groups[1:]):
        bad = _le(g2[0] - g1[0])
        if any(is_feasible(p.conjoin([bad])) for p in bset.pieces):
            raise AssertionError("root order not constant on base cell")


def decompose(x: SemilinearSet, extra_forms: Sequence[AffineForm] = ()) -> CellDecomposition:
    """Cylindrical decomposition of ``x`` into cells, adapted to every
    constraint form of ``x`` and to ``extra_forms``.

    The projection of a set of forms keeps those free of the last variable
    and adds the pairwise differences of the root functions of the others;
    over each base cell the roots are sorted at a sample point and the order
    is certified by emptiness checks.
    """
    n = x.ambient_dim
    if n == 0:
        raise ValueError("nothing to decompose in dimension 0")
    x = x.nonempty_pieces()
    forms = list(x.forms()) + list(extra_forms)
    cells = _cad(forms, n, x)
    return CellDecomposition(x, cells)


@dataclass
class PartitionReport:
    ok: bool
    problems: list = field(default_factory=list)


def verify_partition(d: CellDecomposition) -> PartitionReport:
    problems = []
    sets = [c.set for c in d.cells]
    for i, j in itertools.combinations(range(len(sets)), 2):
        common = sets[i] & sets[j]
        pt = common.sample_point()
        if pt is not None:
            problems.append(("overlap", i, j, pt))
    union = SemilinearSet.empty(d.target.ambient_dim)
    for s in sets:
        union = union | s
    w = union.witness_outside(d.target)
    if w is not None:
        problems.append(("outside target", None, None, w))
    w = d.target.witness_outside(union)
    if w is not None:
        problems.append(("not covered", None, None, w))
    for i, c in enumerate(d.cells):
        for lvl in c.levels():
            if lvl.kind == BAND and lvl.f is not None and lvl.g is not None:
                if not lvl.bounds_ordered():
                    problems.append(("band bounds", i, None, c.sample_point()))
    return PartitionReport(not problems, problems)


# ---------------------------------------------------------------------------
# contractions


@dataclass
class PLHomotopy:
    """``H : [0, end] x domain -> R^n``; the map takes ``(t, x)``."""

    domain: SemilinearSet
    total_map: PLMap
    interval: tuple

    @property
    def end(self) -> Fraction:
        return self.interval[1]

    def __call__(self, t, point: Sequence) -> tuple:
        return self.total_map((as_fraction(t),) + tuple(as_fraction(v) for v in point))

    def components(self) -> list[PLFunction]:
        return self.total_map.components()

    def at(self, t) -> PLMap:
        """The map ``x -> H(t, x)``."""
        n = self.domain.ambient_dim
        subst = [AffineForm.constant(t, n)] + [AffineForm.variable(i, n) for i in range(n)]
        return PLMap(n, n, tuple((d.pullback(subst), tuple(f.compose(subst) for f in fs))
                                 for d, fs in self.total_map.pieces)).restricted(_universe(n))

    def final_image(self) -> SemilinearSet:
        """Image of ``H(end, .)`` on the domain, computed by projection."""
        return _image(self.at(self.end), self.domain)

    def start_is_identity(self) -> bool:
        return _equals_on(self.at(self.interval[0]), PLMap.identity(self.domain.ambient_dim),
                          self.domain)

    def end_is_constant(self) -> bool:
        img = self.final_image()
        pt = img.sample_point()
        return pt is not None and img.equals(SemilinearSet.point(pt))

    def is_continuous(self) -> bool:
        n = self.domain.ambient_dim
        t = AffineForm.variable(0, n + 1)
        lo, hi = self.interval
        slab = ConstraintSystem((_le(AffineForm.constant(lo, n + 1) - t),
                                 _le(t - AffineForm.constant(hi, n + 1))), n + 1)
        dom = SemilinearSet(n + 1, tuple(p.insert_axes([0]).conjoin(slab)
                                         for p in self.domain.pieces))
        return self.total_map.is_continuous_on(dom)

    def sample_check(self, cell: Cell, samples: int = 2000, seed: int = 0) -> list:
        """Random ``(t, x)`` evaluations; returns the failures."""
        rng = random.Random(seed)
        bad = []
        lo, hi = self.interval
        for _ in range(samples):
            x = cell.random_point(rng)
            t = lo + Fraction(rng.randint(0, 256), 256) * (hi - lo)
            y = self(t, x)
            if not cell.contains(y):
                bad.append((t, x, y))
        return bad


def _image(m: PLMap, domain: SemilinearSet) -> SemilinearSet:
    n, k = m.dim_in, m.dim_out
    out = []
    for d, fs in m.pieces:
        graph = d.extend(k).conjoin(
            [_eq(AffineForm.variable(n + i, n + k) - f.extend(k)) for i, f in enumerate(fs)])
        for p in domain.pieces:
            s = graph.conjoin(p.extend(k))
            if not is_feasible(s):
                continue
            for _ in range(n):
                s = fm_project(s, 0)
            out.append(s)
    return SemilinearSet(k, tuple(out))


def _equals_on(a: PLMap, b: PLMap, domain: SemilinearSet) -> bool:
    for d1, f1 in a.pieces:
        for d2, f2 in b.pieces:
            common = d1.conjoin(d2)
            for u, v in zip(f1, f2):
                diff = u - v
                for rel in (_lt(diff), _lt(-diff)):
                    if any(is_feasible(common.conjoin(p).conjoin([rel])) for p in domain.pieces):
                        return False
    return True


def clamp_map(lo: PLFunction, hi: PLFunction, value: AffineForm) -> PLFunction:
    """``max(lo, min(value, hi))`` as a piecewise function (assumes lo <= hi)."""
    v = PLFunction.affine(value)
    return v.minimum(hi).maximum(lo)


def _interval_homotopy(c: Cell) -> tuple[PLMap, Fraction]:
    a, b = c.lo, c.hi
    T = (b - a) / 2
    t = AffineForm.variable(0, 2)
    x = AffineForm.variable(1, 2)
    slab = ConstraintSystem((_le(-t), _le(t - T)), 2)
    lo = PLFunction(2, ((slab, t + a),))
    hi = PLFunction(2, ((slab, -t + b),))
    h = clamp_map(lo, hi, x)
    return h.as_map(), T


def _homotopy(c: Cell) -> tuple[PLMap, Fraction]:
    """PL map ``(t, x) -> H(t, x)`` contracting ``c`` and its end time."""
    n = c.ambient_dim
    if c.kind == POINT:
        return PLMap.affine([AffineForm.constant(c.lo, 2)], 2), Fraction(0)
    if c.kind == INTERVAL:
        return _interval_homotopy(c)
    base_map, tb = _homotopy(c.base)
    m = n - 1  # base dimension
    # base homotopy acting on (t, x, y), ignoring y
    drop_y = [AffineForm.variable(i, n + 1) for i in range(n)]
    base_lift = base_map.compose(PLMap.affine(drop_y, n + 1))
    if c.kind == GRAPH:
        ids = [AffineForm.variable(i, m) for i in range(m)]
        graph_map = PLMap(m, n, tuple((d, tuple(ids) + (f,)) for d, f in c.f.pieces))
        return graph_map.compose(base_lift), tb
    # band: stage 1 squeezes y onto the midline, stage 2 follows the base
    box = c.set.bounding_box()
    ylo, yhi = box[-1]
    D = (yhi - ylo) / 2
    if D == 0:
        D = Fraction(1)
    s = AffineForm.variable(0, n + 1)
    y = AffineForm.variable(n, n + 1)
    xs = [AffineForm.variable(i + 1, n + 1) for i in range(m)]
    mid = ((c.f + c.g) / 2).pullback(xs)
    stage1 = ConstraintSystem((_le(-s), _le(s - D)), n + 1)
    radius = PLFunction(n + 1, ((stage1, D - s),))
    up = mid + radius
    down = mid - radius
    squeezed = PLFunction.affine(y).minimum(up).maximum(down)
    first = PLMap.affine(xs, n + 1).stack(squeezed.as_map()).restricted(stage1)
    stage2 = ConstraintSystem((_le(AffineForm.constant(D, n + 1) - s), _le(s - (D + tb))), n + 1)
    shifted = [s - D] + xs
    base_shift = base_map.compose(PLMap.affine(shifted, n + 1))
    mid_map = ((c.f + c.g) / 2).as_map().compose(base_shift)
    second = base_shift.stack(mid_map).restricted(stage2)
    return PLMap(n + 1, n, _compact_pieces(first.pieces + second.pieces, n + 1)), D + tb


def contraction(c: Cell) -> PLHomotopy:
    """Deformation of the bounded cell ``c`` onto one of its points:
    intervals shrink by clamping to ``[a+t, b-t]``; bands first collapse onto
    the midline ``(f+g)/2`` and then follow the base contraction."""
    if not c.is_bounded():
        raise UnboundedCell("contraction needs a bounded cell")
    m, end = _homotopy(c)
    return PLHomotopy(c.set, m, (Fraction(0), end))
