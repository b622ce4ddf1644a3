"""Semilinear (definable) sets as finite unions of constraint systems."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .geometry import (
    EQ,
    LE,
    LT,
    AffineForm,
    ConstraintSystem,
    LinearConstraint,
    UnboundedInput,
    as_fraction,
    bounds,
    find_point,
    fm_project,
    is_feasible,
    rank,
)


class DimensionMismatch(ValueError):
    pass


class NonPositiveParameter(ValueError):
    pass


@dataclass(frozen=True)
class SemilinearSet:
    """Union of the solution sets of ``pieces`` (disjunctive normal form).

    Equality is semantic only; use :meth:`equals`.  ``==`` on instances
    compares representations.
    """

    ambient_dim: int
    pieces: tuple = ()

    def __post_init__(self):
        pieces = tuple(self.pieces)
        for p in pieces:
            if p.ambient_dim != self.ambient_dim:
                raise DimensionMismatch(
                    f"piece in {p.ambient_dim} variables, set has {self.ambient_dim}")
        object.__setattr__(self, "pieces", pieces)

    # -- constructors -----------------------------------------------------

    @classmethod
    def empty(cls, dim: int) -> "SemilinearSet":
        return cls(dim, ())

    @classmethod
    def universe(cls, dim: int) -> "SemilinearSet":
        return cls(dim, (ConstraintSystem((), dim),))

    @classmethod
    def from_constraints(cls, dim: int, *constraints: LinearConstraint) -> "SemilinearSet":
        return cls(dim, (ConstraintSystem(tuple(constraints), dim),))

    @classmethod
    def point(cls, coords: Sequence) -> "SemilinearSet":
        n = len(coords)
        cons = [LinearConstraint(AffineForm.variable(i, n) - as_fraction(c), EQ)
                for i, c in enumerate(coords)]
        return cls.from_constraints(n, *cons)

    @classmethod
    def box(cls, lows: Sequence, highs: Sequence, closed: bool = True) -> "SemilinearSet":
        n = len(lows)
        rel = LE if closed else LT
        cons = []
        for i, (a, b) in enumerate(zip(lows, highs)):
            x = AffineForm.variable(i, n)
            cons.append(LinearConstraint(as_fraction(a) - x, rel))
            cons.append(LinearConstraint(x - as_fraction(b), rel))
        return cls.from_constraints(n, *cons)

    @classmethod
    def interval(cls, a, b, left_closed=True, right_closed=True) -> "SemilinearSet":
        x = AffineForm.variable(0, 1)
        cons = []
        if a is not None:
            cons.append(LinearConstraint(as_fraction(a) - x, LE if left_closed else LT))
        if b is not None:
            cons.append(LinearConstraint(x - as_fraction(b), LE if right_closed else LT))
        return cls.from_constraints(1, *cons)

    # -- basic queries ----------------------------------------------------

    def contains(self, point: Sequence) -> bool:
        pt = tuple(as_fraction(v) for v in point)
        return any(p.contains(pt) for p in self.pieces)

    __contains__ = contains

    def forms(self) -> list[AffineForm]:
        return [c.form for p in self.pieces for c in p.constraints]

    def nonempty_pieces(self) -> "SemilinearSet":
        return SemilinearSet(self.ambient_dim,
                             tuple(p.simplified() for p in self.pieces if is_feasible(p)))

    def reduced(self) -> "SemilinearSet":
        """Same set with empty pieces, redundant constraints and pieces
        contained in another piece removed."""
        pieces = []
        seen = set()
        for p in self.pieces:
            p = p.simplified()
            if not is_feasible(p):
                continue
            p = _irredundant(p)
            key = frozenset(p.constraints)
            if key not in seen:
                seen.add(key)
                pieces.append(p)
        samples = [find_point(p) for p in pieces]
        keep = []
        for i, p in enumerate(pieces):
            covered = False
            for j, q in enumerate(pieces):
                if j == i or not q.contains(samples[i]) or not _piece_subset(p, q):
                    continue
                if j < i or not _piece_subset(q, p):
                    covered = True
                    break
            if not covered:
                keep.append(p)
        return SemilinearSet(self.ambient_dim, tuple(keep))

    def sample_point(self) -> tuple | None:
        for p in self.pieces:
            pt = find_point(p)
            if pt is not None:
                return pt
        return None

    # -- boolean algebra --------------------------------------------------

    def _check(self, other: "SemilinearSet"):
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch(
                f"sets live in R^{self.ambient_dim} and R^{other.ambient_dim}")

    def union(self, other: "SemilinearSet") -> "SemilinearSet":
        self._check(other)
        return SemilinearSet(self.ambient_dim, self.pieces + other.pieces)

    __or__ = union

    def intersection(self, other: "SemilinearSet") -> "SemilinearSet":
        self._check(other)
        out = []
        for p in self.pieces:
            for q in other.pieces:
                r = p.conjoin(q)
                if is_feasible(r):
                    out.append(r.simplified())
        return SemilinearSet(self.ambient_dim, tuple(out))

    __and__ = intersection

    def difference(self, other: "SemilinearSet") -> "SemilinearSet":
        self._check(other)
        return SemilinearSet(self.ambient_dim, tuple(self._difference_pieces(other)))

    __sub__ = difference

    def _difference_pieces(self, other: "SemilinearSet") -> Iterator[ConstraintSystem]:
        subtrahend = [q for q in other.pieces if is_feasible(q)]
        for p in self.pieces:
            if is_feasible(p):
                yield from _subtract(p.simplified(), subtrahend)

    def complement(self) -> "SemilinearSet":
        return SemilinearSet.universe(self.ambient_dim).difference(self)

    # -- decisions ----------------------------------------------------------

    def is_empty(self) -> bool:
        return not any(is_feasible(p) for p in self.pieces)

    def is_subset(self, other: "SemilinearSet") -> bool:
        self._check(other)
        for _ in self._difference_pieces(other):
            return False
        return True

    def witness_outside(self, other: "SemilinearSet") -> tuple | None:
        """A point of ``self`` not in ``other``, or None."""
        for piece in self._difference_pieces(other):
            pt = find_point(piece)
            if pt is not None:
                return pt
        return None

    def equals(self, other: "SemilinearSet") -> bool:
        return self.is_subset(other) and other.is_subset(self)

    # -- topology -----------------------------------------------------------

    def closure(self) -> "SemilinearSet":
        # For a nonempty convex piece {A=, B<=, C<} the closure is the
        # weakened system: segments from a strict point to any weak point
        # stay strict except at the endpoint.
        out = [p.weakened().simplified() for p in self.pieces if is_feasible(p)]
        return SemilinearSet(self.ambient_dim, tuple(out))

    def interior(self) -> "SemilinearSet":
        return self.complement().closure().complement()

    def boundary(self) -> "SemilinearSet":
        """``closure \\ self`` (the frontier of a cell in the cell sense)."""
        return self.closure().difference(self)

    def topological_boundary(self) -> "SemilinearSet":
        return self.closure().difference(self.interior())

    def is_closed(self) -> bool:
        return self.closure().is_subset(self)

    def is_open(self) -> bool:
        return self.is_subset(self.interior())

    def bounding_box(self):
        """Per-axis ``(lo, hi)`` over the closure, ``None`` entries if unbounded.

        Returns None for the empty set.
        """
        pieces = [p for p in self.pieces if is_feasible(p)]
        if not pieces:
            return None
        box = []
        for i in range(self.ambient_dim):
            lo = hi = None
            lo_inf = hi_inf = False
            for p in pieces:
                b = bounds(p, i)
                if b is None:
                    continue
                plo, phi = b
                if plo is None:
                    lo_inf = True
                elif lo is None or plo < lo:
                    lo = plo
                if phi is None:
                    hi_inf = True
                elif hi is None or phi > hi:
                    hi = phi
            box.append((None if lo_inf else lo, None if hi_inf else hi))
        return box

    def is_bounded(self) -> bool:
        box = self.bounding_box()
        if box is None:
            return True
        return all(lo is not None and hi is not None for lo, hi in box)

    def is_definably_compact(self) -> bool:
        return self.is_bounded() and self.is_closed()

    def dimension(self) -> int:
        """Largest affine-hull dimension of a nonempty piece (-1 if empty)."""
        best = -1
        for p in self.pieces:
            if is_feasible(p):
                best = max(best, piece_dimension(p))
        return best

    def components(self) -> list["SemilinearSet"]:
        """Connected components, as unions of pieces.

        Two convex pieces lie in one component when one meets the closure of
        the other; classes of the generated equivalence are separated from
        each other, hence are exactly the components.
        """
        if not self.is_bounded():
            raise UnboundedInput("components of an unbounded set")
        pieces = [p.simplified() for p in self.pieces if is_feasible(p)]
        closed = [p.weakened() for p in pieces]
        parent = list(range(len(pieces)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(len(pieces)):
            for j in range(i + 1, len(pieces)):
                if find(i) == find(j):
                    continue
                if (is_feasible(closed[i].conjoin(pieces[j]))
                        or is_feasible(pieces[i].conjoin(closed[j]))):
                    parent[find(i)] = find(j)
        groups: dict = {}
        for i, p in enumerate(pieces):
            groups.setdefault(find(i), []).append(p)
        return [SemilinearSet(self.ambient_dim, tuple(g)) for g in groups.values()]

    # -- coordinate manipulation ------------------------------------------

    def project(self, axis: int) -> "SemilinearSet":
        """Coordinate projection forgetting ``x_axis``."""
        out = []
        for p in self.pieces:
            if is_feasible(p):
                out.append(fm_project(p, axis))
        return SemilinearSet(self.ambient_dim - 1, tuple(out))

    def project_to(self, keep: int) -> "SemilinearSet":
        """Projection onto the first ``keep`` coordinates."""
        s = self
        while s.ambient_dim > keep:
            s = s.project(s.ambient_dim - 1)
        return s

    def substitute(self, axis: int, value) -> "SemilinearSet":
        return SemilinearSet(self.ambient_dim - 1,
                             tuple(p.substitute(axis, value) for p in self.pieces))

    def insert_axes(self, positions: Sequence[int]) -> "SemilinearSet":
        positions = tuple(positions)
        return SemilinearSet(self.ambient_dim + len(positions),
                             tuple(p.insert_axes(positions) for p in self.pieces))

    def extend(self, extra: int) -> "SemilinearSet":
        return SemilinearSet(self.ambient_dim + extra,
                             tuple(p.extend(extra) for p in self.pieces))

    def pullback(self, maps: Sequence[AffineForm]) -> "SemilinearSet":
        target = maps[0].dim
        return SemilinearSet(target, tuple(p.pullback(maps) for p in self.pieces))

    def conjoin(self, constraints: Iterable[LinearConstraint]) -> "SemilinearSet":
        cons = tuple(constraints)
        return SemilinearSet(self.ambient_dim, tuple(p.conjoin(cons) for p in self.pieces))

    def __str__(self) -> str:
        if not self.pieces:
            return "empty"
        return " | ".join(f"({p})" for p in self.pieces)


def _subtract(p: ConstraintSystem, others: list) -> Iterator[ConstraintSystem]:
    if not others:
        yield p
        return
    q, rest = others[0], others[1:]
    if not is_feasible(p.conjoin(q)):
        yield from _subtract(p, rest)
        return
    # p \ q = disjoint union over i of p & q_1 & ... & q_{i-1} & not q_i
    prefix = []
    for c in q.constraints:
        for neg in c.negation():
            cand = p.conjoin(prefix + [neg])
            if is_feasible(cand):
                yield from _subtract(cand.simplified(), rest)
        prefix.append(c)


def _piece_subset(p: ConstraintSystem, q: ConstraintSystem) -> bool:
    for c in q.constraints:
        for neg in c.negation():
            if is_feasible(p.conjoin([neg])):
                return False
    return True


def _irredundant(p: ConstraintSystem) -> ConstraintSystem:
    cons = list(p.constraints)
    i = 0
    while i < len(cons):
        c = cons[i]
        if c.relation == EQ:
            i += 1
            continue
        rest = ConstraintSystem(tuple(cons[:i] + cons[i + 1:]), p.ambient_dim)
        if all(not is_feasible(rest.conjoin([neg])) for neg in c.negation()):
            cons.pop(i)
        else:
            i += 1
    return ConstraintSystem(tuple(cons), p.ambient_dim)


def piece_dimension(p: ConstraintSystem) -> int:
    """Dimension of the affine hull of a feasible constraint system."""
    s = p.simplified()
    eqs = []
    for c in s.constraints:
        if c.relation == EQ:
            eqs.append(c.form.coeffs)
        elif c.relation == LE:
            if not is_feasible(s.conjoin([LinearConstraint(c.form, LT)])):
                eqs.append(c.form.coeffs)
    return s.ambient_dim - rank(eqs)


def boolean_op(kind: str, a: SemilinearSet, b: SemilinearSet | None = None) -> SemilinearSet:
    if kind == "complement":
        if b is not None:
            raise ValueError("complement takes one operand")
        return a.complement()
    if b is None:
        raise ValueError(f"{kind} needs two operands")
    if kind == "union":
        return a.union(b)
    if kind == "intersection":
        return a.intersection(b)
    if kind == "difference":
        return a.difference(b)
    raise ValueError(f"unknown boolean operation {kind!r}")


def is_empty(x: SemilinearSet) -> bool:
    return x.is_empty()


def is_subset(a: SemilinearSet, b: SemilinearSet) -> bool:
    return a.is_subset(b)


def closure(x: SemilinearSet) -> SemilinearSet:
    return x.closure()


def interior(x: SemilinearSet) -> SemilinearSet:
    return x.interior()


def boundary(x: SemilinearSet) -> SemilinearSet:
    return x.boundary()


def is_bounded(x: SemilinearSet) -> bool:
    return x.is_bounded()


def dimension(x: SemilinearSet) -> int:
    return x.dimension()


def components(x: SemilinearSet) -> list[SemilinearSet]:
    return x.components()


@dataclass(frozen=True)
class DefinableFamily:
    """``t -> {x : (x, t) in total_space}`` for rational ``t > 0``."""

    total_space: SemilinearSet
    parameter_axis: int = -1

    def __post_init__(self):
        axis = self.parameter_axis
        if axis < 0:
            axis += self.total_space.ambient_dim
        if not 0 <= axis < self.total_space.ambient_dim:
            raise ValueError("parameter axis out of range")
        object.__setattr__(self, "parameter_axis", axis)

    @property
    def fiber_dim(self) -> int:
        return self.total_space.ambient_dim - 1

    def slice(self, t) -> SemilinearSet:
        t = as_fraction(t)
        if t <= 0:
            raise NonPositiveParameter(f"parameter must be positive, got {t}")
        return self.total_space.substitute(self.parameter_axis, t).nonempty_pieces()

    def with_parameter_last(self) -> "DefinableFamily":
        n = self.total_space.ambient_dim
        if self.parameter_axis == n - 1:
            return self
        axis = self.parameter_axis
        # old coordinates expressed in the new order (fiber coords, then t)
        maps = []
        for i in range(n):
            if i < axis:
                maps.append(AffineForm.variable(i, n))
            elif i == axis:
                maps.append(AffineForm.variable(n - 1, n))
            else:
                maps.append(AffineForm.variable(i - 1, n))
        return DefinableFamily(self.total_space.pullback(maps), n - 1)

    def positive_part(self) -> SemilinearSet:
        """Total space restricted to ``t > 0``."""
        n = self.total_space.ambient_dim
        t = AffineForm.variable(self.parameter_axis, n)
        return self.total_space.conjoin([LinearConstraint(-t, LT)])

    def union_of_slices(self) -> SemilinearSet:
        return self.with_parameter_last().positive_part().project(self.fiber_dim)

    def fiber_closure(self) -> SemilinearSet:
        """Total space whose slices are the closures of the slices.

        Slice of a piece at ``t`` is nonempty iff ``t`` lies in the piece's
        projection to the parameter axis; on that range its closure is the
        weakened piece.
        """
        fam = self.with_parameter_last()
        n = fam.total_space.ambient_dim
        out = []
        for p in fam.total_space.pieces:
            if not is_feasible(p):
                continue
            shadow = p
            while shadow.ambient_dim > 1:
                shadow = fm_project(shadow, 0)
            lifted = shadow.insert_axes(range(n - 1))
            out.append(p.weakened().conjoin(lifted).simplified())
        return SemilinearSet(n, tuple(out))


def slice_family(fam: DefinableFamily, t) -> SemilinearSet:
    return fam.slice(t)


def slice(fam: DefinableFamily, t) -> SemilinearSet:  # noqa: A001 - mirrors the operation name
    return fam.slice(t)
