"""Definable types over a one-dimensional semilinear set: realized points,
one-sided germs ``a+``/``a-`` and the two infinities, with the spectral
specialization order, quasi-compactness and separation of closed sets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import as_fraction
from .semilinear import SemilinearSet


class NotDisjoint(ValueError):
    pass


class NotClosed(ValueError):
    pass


REALIZED, RIGHT_OF, LEFT_OF, PLUS_INF, MINUS_INF = (
    "realized", "right_of", "left_of", "plus_infinity", "minus_infinity")


def breakpoints(x: SemilinearSet) -> list[Fraction]:
    """Zeros of the constraint forms of a subset of the line, sorted."""
    if x.ambient_dim != 1:
        raise ValueError("type space is implemented for subsets of the line")
    pts = set()
    for f in x.forms():
        if f.coeffs[0] != 0:
            pts.add(-f.const / f.coeffs[0])
    return sorted(pts)


def _next_above(a: Fraction, pts: Sequence[Fraction]) -> Fraction:
    for p in pts:
        if p > a:
            return p
    return a + 1


def _next_below(a: Fraction, pts: Sequence[Fraction]) -> Fraction:
    for p in reversed(pts):
        if p < a:
            return p
    return a - 1


@dataclass(frozen=True, order=True)
class NamedType1D:
    kind: str
    a: Fraction | None = None

    @classmethod
    def realized(cls, a):
        return cls(REALIZED, as_fraction(a))

    @classmethod
    def right_of(cls, a):
        return cls(RIGHT_OF, as_fraction(a))

    @classmethod
    def left_of(cls, a):
        return cls(LEFT_OF, as_fraction(a))

    @classmethod
    def plus_infinity(cls):
        return cls(PLUS_INF)

    @classmethod
    def minus_infinity(cls):
        return cls(MINUS_INF)

    def contains(self, s: SemilinearSet) -> bool:
        """Whether ``s`` belongs to this ultrafilter (``p in s~``)."""
        pts = breakpoints(s)
        if self.kind == REALIZED:
            return s.contains((self.a,))
        if self.kind == RIGHT_OF:
            return s.contains(((self.a + _next_above(self.a, pts)) / 2,))
        if self.kind == LEFT_OF:
            return s.contains(((self.a + _next_below(self.a, pts)) / 2,))
        if self.kind == PLUS_INF:
            return s.contains(((pts[-1] if pts else Fraction(0)) + 1,))
        return s.contains(((pts[0] if pts else Fraction(0)) - 1,))

    def is_closed_point(self) -> bool:
        return self.kind in (REALIZED, PLUS_INF, MINUS_INF)

    def __str__(self) -> str:
        if self.kind == REALIZED:
            return str(self.a)
        if self.kind == RIGHT_OF:
            return f"{self.a}+"
        if self.kind == LEFT_OF:
            return f"{self.a}-"
        return "+inf" if self.kind == PLUS_INF else "-inf"


@dataclass
class TypeSpace1D:
    carrier: SemilinearSet
    types: list

    def __iter__(self):
        return iter(self.types)

    def __len__(self):
        return len(self.types)

    def closure_of(self, p: NamedType1D) -> list[NamedType1D]:
        return [q for q in self.types if specializes(p, q, self.carrier)]

    def closed_points(self) -> list[NamedType1D]:
        return [p for p in self.types if self.closure_of(p) == [p]]


def _maximal_intervals(x: SemilinearSet, pts: list[Fraction]) -> list[tuple]:
    """Maximal open intervals ``(lo, hi)`` (``None`` = infinite) inside ``x``."""
    edges = [None] + pts + [None]
    cells = []
    for lo, hi in zip(edges, edges[1:]):
        if lo is None and hi is None:
            s = Fraction(0)
        elif lo is None:
            s = hi - 1
        elif hi is None:
            s = lo + 1
        else:
            s = (lo + hi) / 2
        cells.append((lo, hi, x.contains((s,))))
    out = []
    cur = None
    for lo, hi, inside in cells:
        if inside:
            if cur is not None and x.contains((lo,)):
                cur = (cur[0], hi)
            else:
                if cur is not None:
                    out.append(cur)
                cur = (lo, hi)
        else:
            if cur is not None:
                out.append(cur)
            cur = None
    if cur is not None:
        out.append(cur)
    return out


def enumerate_named_types(x: SemilinearSet) -> TypeSpace1D:
    pts = breakpoints(x)
    points = [p for p in pts if x.contains((p,))]
    witnesses = []
    for lo, hi in _maximal_intervals(x, pts):
        if lo is None and hi is None:
            w = Fraction(0)
        elif lo is None:
            w = hi - 1
        elif hi is None:
            w = lo + 1
        else:
            w = (lo + hi) / 2
        if w in pts:
            w = (w + _next_above(w, pts)) / 2
        witnesses.append(w)
    types = [NamedType1D.realized(a) for a in sorted(set(points) | set(witnesses))]
    for a in sorted(set(pts) | set(witnesses)):
        for t in (NamedType1D.left_of(a), NamedType1D.right_of(a)):
            if t.contains(x):
                types.append(t)
    for t in (NamedType1D.minus_infinity(), NamedType1D.plus_infinity()):
        if t.contains(x):
            types.append(t)
    return TypeSpace1D(x, sorted(types, key=_type_key))


def _type_key(t: NamedType1D):
    order = {MINUS_INF: 0, LEFT_OF: 1, REALIZED: 2, RIGHT_OF: 3, PLUS_INF: 4}
    if t.kind == MINUS_INF:
        return (-1, Fraction(0), 0)
    if t.kind == PLUS_INF:
        return (1, Fraction(0), 0)
    return (0, t.a, order[t.kind])


def _neighborhood(q: NamedType1D, eps: Fraction, far: Fraction) -> SemilinearSet:
    """The smallest canonical open set containing ``q`` at scale ``eps``."""
    if q.kind == REALIZED:
        return SemilinearSet.interval(q.a - eps, q.a + eps, False, False)
    if q.kind == RIGHT_OF:
        return SemilinearSet.interval(q.a, q.a + eps, False, False)
    if q.kind == LEFT_OF:
        return SemilinearSet.interval(q.a - eps, q.a, False, False)
    if q.kind == PLUS_INF:
        return SemilinearSet.interval(far, None, False, False)
    return SemilinearSet.interval(None, -far, False, False)


def specializes(p: NamedType1D, q: NamedType1D, x: SemilinearSet | None = None) -> bool:
    """``q`` lies in the closure of ``{p}``: every open set whose tilde
    contains ``q`` also contains ``p``.  One neighborhood below all gaps
    between the points involved decides it."""
    pts = {v for v in (p.a, q.a) if v is not None}
    if x is not None:
        pts |= set(breakpoints(x))
    pts = sorted(pts)
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    eps = (min(gaps) if gaps else Fraction(1)) / 4
    far = max((abs(v) for v in pts), default=Fraction(0)) + 1
    return p.contains(_neighborhood(q, eps, far))


@dataclass
class SubcoverResult:
    covered: bool
    indices: list
    counterexample: NamedType1D | None = None

    def __bool__(self):
        return self.covered


def finite_subcover(x: SemilinearSet, cover: Sequence[SemilinearSet]) -> SubcoverResult:
    """Irredundant subfamily covering ``x`` (greedy removal), or a type of
    ``x`` outside every member when the union misses part of ``x``."""
    union = SemilinearSet.empty(1)
    for u in cover:
        union = union | u
    if not x.is_subset(union):
        rest = x - union
        space = enumerate_named_types(rest)
        pts = breakpoints(rest)
        ideal = [t for t in space.types
                 if t.kind in (PLUS_INF, MINUS_INF)
                 or (t.kind in (LEFT_OF, RIGHT_OF) and t.a in pts and not rest.contains((t.a,)))]
        others = [t for t in space.types if not t.is_closed_point() and t not in ideal]
        pick = (ideal or others or space.types)[0]
        return SubcoverResult(False, [], pick)
    keep = list(range(len(cover)))
    for i in range(len(cover)):
        trial = [j for j in keep if j != i]
        u = SemilinearSet.empty(1)
        for j in trial:
            u = u | cover[j]
        if x.is_subset(u):
            keep = trial
    return SubcoverResult(True, keep)


def separate_closed(a: SemilinearSet, b: SemilinearSet) -> tuple[SemilinearSet, SemilinearSet]:
    """Disjoint open ``u >= a`` and ``v >= b`` cut at midpoints of the gaps."""
    for s in (a, b):
        if not s.is_closed():
            raise NotClosed("inputs must be closed")
    if not (a & b).is_empty():
        raise NotDisjoint("inputs meet")
    if a.is_empty() or b.is_empty():
        full, none = SemilinearSet.universe(1), SemilinearSet.empty(1)
        return (none, full) if a.is_empty() else (full, none)
    labelled = sorted([(iv, 0) for iv in _components_any(a)] + [(iv, 1) for iv in _components_any(b)],
                      key=lambda e: (e[0][0] is not None, e[0][0] if e[0][0] is not None else 0))
    cuts = []
    for (prev, lp), (nxt, ln) in zip(labelled, labelled[1:]):
        if lp != ln:
            cuts.append(((prev[1] + nxt[0]) / 2, lp, ln))
    edges = [None] + [c[0] for c in cuts] + [None]
    labels = [labelled[0][1]] + [c[2] for c in cuts]
    u = SemilinearSet.empty(1)
    v = SemilinearSet.empty(1)
    for (lo, hi), lab in zip(zip(edges, edges[1:]), labels):
        region = SemilinearSet.interval(lo, hi, False, False)
        if lab == 0:
            u = u | region
        else:
            v = v | region
    return u, v


def _components_any(x: SemilinearSet) -> list[tuple]:
    """Maximal intervals of a closed subset of the line (possibly unbounded)."""
    pts = breakpoints(x)
    out = [(lo, hi) for lo, hi in _maximal_intervals(x, pts)]
    for p in pts:
        if x.contains((p,)) and not any(_inside(p, iv) for iv in out):
            out.append((p, p))
    # closed set: maximal open intervals extend to their closures
    return sorted(out, key=lambda iv: (iv[0] is not None, iv[0] if iv[0] is not None else 0))


def _inside(p, iv) -> bool:
    lo, hi = iv
    return (lo is None or lo <= p) and (hi is None or p <= hi)
