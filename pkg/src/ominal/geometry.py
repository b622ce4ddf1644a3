"""Exact rational linear algebra and polyhedral primitives.

Everything here works over :class:`fractions.Fraction`; there is no
floating point anywhere.  A :class:`ConstraintSystem` is a conjunction of
affine constraints ``form REL 0`` with ``REL`` in ``{'<', '<=', '='}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Sequence

LT, LE, EQ = "<", "<=", "="
RELATIONS = (LT, LE, EQ)


class UnboundedInput(ValueError):
    """Raised when an operation needs a bounded polyhedron or set."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class AffineForm:
    """``sum(coeffs[i] * x_i) + const``."""

    coeffs: tuple
    const: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))
        object.__setattr__(self, "const", as_fraction(self.const))

    @classmethod
    def constant(cls, value, dim: int) -> "AffineForm":
        return cls((0,) * dim, value)

    @classmethod
    def variable(cls, index: int, dim: int, scale=1) -> "AffineForm":
        coeffs = [0] * dim
        coeffs[index] = scale
        return cls(tuple(coeffs), 0)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def is_constant(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, point: Sequence) -> Fraction:
        total = self.const
        for c, x in zip(self.coeffs, point):
            if c:
                total += c * x
        return total

    def __add__(self, other: "AffineForm") -> "AffineForm":
        if isinstance(other, AffineForm):
            if other.dim != self.dim:
                raise ValueError("dimension mismatch")
            return AffineForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
                              self.const + other.const)
        return AffineForm(self.coeffs, self.const + as_fraction(other))

    __radd__ = __add__

    def __neg__(self) -> "AffineForm":
        return AffineForm(tuple(-c for c in self.coeffs), -self.const)

    def __sub__(self, other) -> "AffineForm":
        if isinstance(other, AffineForm):
            return self + (-other)
        return self + (-as_fraction(other))

    def __rsub__(self, other) -> "AffineForm":
        return (-self) + other

    def __mul__(self, scalar) -> "AffineForm":
        s = as_fraction(scalar)
        return AffineForm(tuple(c * s for c in self.coeffs), self.const * s)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "AffineForm":
        return self * (1 / as_fraction(scalar))

    def substitute(self, axis: int, value) -> "AffineForm":
        """Fix ``x_axis = value`` and drop that coordinate."""
        value = as_fraction(value)
        coeffs = list(self.coeffs)
        c = coeffs.pop(axis)
        return AffineForm(tuple(coeffs), self.const + c * value)

    def substitute_form(self, axis: int, repl: "AffineForm") -> "AffineForm":
        """Replace ``x_axis`` by ``repl`` (a form in the remaining coordinates)."""
        coeffs = list(self.coeffs)
        c = coeffs.pop(axis)
        base = AffineForm(tuple(coeffs), self.const)
        return base + repl * c if c else base

    def drop(self, axis: int) -> "AffineForm":
        coeffs = list(self.coeffs)
        coeffs.pop(axis)
        return AffineForm(tuple(coeffs), self.const)

    def insert_axes(self, positions: Iterable[int]) -> "AffineForm":
        """Insert zero coefficients so that the result lives in a larger space.

        ``positions`` are indices in the *new* space.
        """
        coeffs = list(self.coeffs)
        for p in sorted(positions):
            coeffs.insert(p, Fraction(0))
        return AffineForm(tuple(coeffs), self.const)

    def extend(self, extra: int) -> "AffineForm":
        return AffineForm(self.coeffs + (Fraction(0),) * extra, self.const)

    def compose(self, maps: Sequence["AffineForm"]) -> "AffineForm":
        """Precompose with the affine map whose i-th output is ``maps[i]``."""
        if len(maps) != self.dim:
            raise ValueError("need one form per coordinate")
        target = maps[0].dim if maps else 0
        out = AffineForm.constant(self.const, target)
        for c, m in zip(self.coeffs, maps):
            if c:
                out = out + m * c
        return out

    def primitive(self) -> tuple:
        """Positive rescaling to coprime integers; returns ``(coeffs, const)``."""
        vals = self.coeffs + (self.const,)
        den = 1
        for v in vals:
            den = _lcm(den, v.denominator)
        ints = [int(v * den) for v in vals]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        if g == 0:
            return tuple(ints[:-1]), ints[-1]
        ints = [v // g for v in ints]
        return tuple(ints[:-1]), ints[-1]

    def hyperplane_key(self) -> tuple:
        """Canonical key of the hyperplane ``form = 0`` (sign-normalized)."""
        coeffs, const = self.primitive()
        for c in coeffs:
            if c:
                if c < 0:
                    coeffs = tuple(-v for v in coeffs)
                    const = -const
                break
        return coeffs, const

    def __str__(self) -> str:
        return format_form(self)


def format_form(form: AffineForm, names: Sequence[str] | None = None) -> str:
    names = names or [f"x{i + 1}" for i in range(form.dim)]
    parts = []
    for c, name in zip(form.coeffs, names):
        if not c:
            continue
        mag = abs(c)
        term = name if mag == 1 else f"{mag}*{name}"
        parts.append(("- " if c < 0 else "+ ") + term)
    if form.const or not parts:
        parts.append(("- " if form.const < 0 else "+ ") + str(abs(form.const)))
    text = " ".join(parts)
    if text.startswith("+ "):
        text = text[2:]
    elif text.startswith("- "):
        text = "-" + text[2:]
    return text


@dataclass(frozen=True)
class LinearConstraint:
    """``form REL 0``; ``>=`` and ``>`` are normalized away by negation."""

    form: AffineForm
    relation: str

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"bad relation {self.relation!r}")

    @classmethod
    def make(cls, form: AffineForm, relation: str) -> "LinearConstraint":
        if relation == ">":
            return cls(-form, LT)
        if relation == ">=":
            return cls(-form, LE)
        if relation == "==":
            relation = EQ
        return cls(form, relation)

    @property
    def dim(self) -> int:
        return self.form.dim

    @property
    def strict(self) -> bool:
        return self.relation == LT

    def holds(self, point: Sequence) -> bool:
        v = self.form(point)
        if self.relation == LT:
            return v < 0
        if self.relation == LE:
            return v <= 0
        return v == 0

    def weakened(self) -> "LinearConstraint":
        return LinearConstraint(self.form, LE) if self.relation == LT else self

    def negation(self) -> list["LinearConstraint"]:
        """Constraints whose union is the complement of this one."""
        if self.relation == LT:
            return [LinearConstraint(-self.form, LE)]
        if self.relation == LE:
            return [LinearConstraint(-self.form, LT)]
        return [LinearConstraint(self.form, LT), LinearConstraint(-self.form, LT)]

    def constant_truth(self) -> bool | None:
        """Truth value if the form has no variables, else ``None``."""
        if not self.form.is_constant():
            return None
        return self.holds(())

    def map_form(self, fn) -> "LinearConstraint":
        return LinearConstraint(fn(self.form), self.relation)

    def normalized(self) -> "LinearConstraint":
        coeffs, const = self.form.primitive()
        if self.relation == EQ:
            for c in coeffs:
                if c:
                    if c < 0:
                        coeffs = tuple(-v for v in coeffs)
                        const = -const
                    break
        return LinearConstraint(AffineForm(coeffs, const), self.relation)

    def __str__(self) -> str:
        return f"{self.form} {self.relation} 0"


FALSE = "false"


@dataclass(frozen=True)
class ConstraintSystem:
    """A finite conjunction of linear constraints in ``ambient_dim`` variables."""

    constraints: tuple
    ambient_dim: int

    def __post_init__(self):
        cons = tuple(self.constraints)
        for c in cons:
            if c.dim != self.ambient_dim:
                raise ValueError(
                    f"constraint in {c.dim} variables, system has {self.ambient_dim}")
        object.__setattr__(self, "constraints", cons)

    @classmethod
    def of(cls, dim: int, *constraints: LinearConstraint) -> "ConstraintSystem":
        return cls(tuple(constraints), dim)

    @classmethod
    def inconsistent(cls, dim: int) -> "ConstraintSystem":
        return cls((LinearConstraint(AffineForm.constant(0, dim), LT),), dim)

    def __iter__(self):
        return iter(self.constraints)

    def __len__(self):
        return len(self.constraints)

    @cached_property
    def _int_rows(self) -> tuple:
        return tuple(c.form.primitive() + (c.relation,) for c in self.constraints)

    def contains(self, point: Sequence) -> bool:
        # integer arithmetic on primitive forms and a scaled point
        den = 1
        pt = [as_fraction(v) for v in point]
        for v in pt:
            den = _lcm(den, v.denominator)
        ints = [v.numerator * (den // v.denominator) for v in pt]
        for coeffs, const, rel in self._int_rows:
            v = const * den
            for a, x in zip(coeffs, ints):
                if a:
                    v += a * x
            if v > 0 or (v == 0 and rel == LT) or (v != 0 and rel == EQ):
                return False
        return True

    def conjoin(self, other: "ConstraintSystem | Iterable[LinearConstraint]") -> "ConstraintSystem":
        extra = other.constraints if isinstance(other, ConstraintSystem) else tuple(other)
        return ConstraintSystem(self.constraints + tuple(extra), self.ambient_dim)

    def weakened(self) -> "ConstraintSystem":
        return ConstraintSystem(tuple(c.weakened() for c in self.constraints), self.ambient_dim)

    def map_forms(self, fn, dim: int) -> "ConstraintSystem":
        return ConstraintSystem(tuple(c.map_form(fn) for c in self.constraints), dim)

    def substitute(self, axis: int, value) -> "ConstraintSystem":
        return self.map_forms(lambda f: f.substitute(axis, value), self.ambient_dim - 1)

    def insert_axes(self, positions: Sequence[int]) -> "ConstraintSystem":
        positions = tuple(positions)
        return self.map_forms(lambda f: f.insert_axes(positions),
                              self.ambient_dim + len(positions))

    def extend(self, extra: int) -> "ConstraintSystem":
        return self.map_forms(lambda f: f.extend(extra), self.ambient_dim + extra)

    def pullback(self, maps: Sequence[AffineForm]) -> "ConstraintSystem":
        """Preimage under the affine map with coordinate forms ``maps``."""
        target = maps[0].dim if maps else 0
        return self.map_forms(lambda f: f.compose(maps), target)

    def simplified(self) -> "ConstraintSystem":
        """Drop true constant constraints, normalize, and dedupe.

        A false constant constraint collapses the system to
        :meth:`inconsistent`.
        """
        best: dict = {}
        eqs: dict = {}
        for c in self.constraints:
            truth = c.constant_truth()
            if truth is True:
                continue
            if truth is False:
                return ConstraintSystem.inconsistent(self.ambient_dim)
            n = c.normalized()
            coeffs, const = n.form.coeffs, n.form.const
            if n.relation == EQ:
                eqs[(coeffs, const)] = n
                continue
            key = coeffs
            cur = best.get(key)
            if cur is None:
                best[key] = n
                continue
            # larger const is tighter for form <= 0; strict wins ties
            if const > cur.form.const or (const == cur.form.const and n.strict):
                best[key] = n
        cons = tuple(eqs.values()) + tuple(best.values())
        return ConstraintSystem(cons, self.ambient_dim)

    def __str__(self) -> str:
        return " & ".join(str(c) for c in self.constraints) or "true"


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination


def fm_project(system: ConstraintSystem, axis: int) -> ConstraintSystem:
    """Eliminate ``x_axis``; the result describes the coordinate projection.

    Equalities involving the axis are used for substitution; otherwise every
    lower bound is paired with every upper bound, and the combination is
    strict iff either parent is strict.
    """
    n = system.ambient_dim
    if not 0 <= axis < n:
        raise IndexError("axis out of range")
    cons = list(system.simplified().constraints)
    for c in cons:
        if c.relation == EQ and c.form.coeffs[axis]:
            a = c.form.coeffs[axis]
            # x_axis = -(rest)/a
            rest = AffineForm(tuple(v for i, v in enumerate(c.form.coeffs) if i != axis),
                              c.form.const)
            repl = rest * (-1 / a)
            out = [d.map_form(lambda f: f.substitute_form(axis, repl)) for d in cons if d is not c]
            return ConstraintSystem(tuple(out), n - 1).simplified()
    pos, neg, rest = [], [], []
    for c in cons:
        a = c.form.coeffs[axis]
        if a > 0:
            pos.append(c)
        elif a < 0:
            neg.append(c)
        else:
            rest.append(c.map_form(lambda f: f.drop(axis)))
    for p in pos:
        for q in neg:
            ap, aq = p.form.coeffs[axis], -q.form.coeffs[axis]
            form = (p.form * aq + q.form * ap).drop(axis)
            rel = LT if (p.strict or q.strict) else LE
            rest.append(LinearConstraint(form, rel))
    return ConstraintSystem(tuple(rest), n - 1).simplified()


def fm_feasible(system: ConstraintSystem) -> bool:
    """Feasibility by projecting out every variable."""
    s = system.simplified()
    while s.ambient_dim > 0:
        if _is_false(s):
            return False
        s = fm_project(s, s.ambient_dim - 1)
    return all(c.holds(()) for c in s.constraints)


def _is_false(s: ConstraintSystem) -> bool:
    return any(c.constant_truth() is False for c in s.constraints)


# ---------------------------------------------------------------------------
# exact simplex (Bland's rule) used for feasibility and optimization


INFEASIBLE, UNBOUNDED, OPTIMAL = "infeasible", "unbounded", "optimal"


def _simplex(rows, rhs, kinds, cost):
    """Maximize ``cost . z`` over ``z >= 0`` with ``rows[i] . z (kinds[i]) rhs[i]``.

    ``kinds`` entries are ``'<='`` or ``'='``.  Returns ``(status, value, z)``.
    """
    m = len(rows)
    nvar = len(cost)
    n_slack = sum(1 for k in kinds if k == LE)
    # columns: original | slacks | artificials
    tab = []
    basis = []
    art_cols = []
    slack_idx = nvar
    art_start = nvar + n_slack
    total = art_start + m
    for i in range(m):
        row = [Fraction(0)] * (total + 1)
        for j, v in enumerate(rows[i]):
            row[j] = v
        b = rhs[i]
        slack_col = None
        if kinds[i] == LE:
            slack_col = slack_idx
            row[slack_col] = Fraction(1)
            slack_idx += 1
        if b < 0:
            row = [-v for v in row]
            b = -b
        row[total] = b
        if slack_col is not None and row[slack_col] == 1:
            basis.append(slack_col)
        else:
            row[art_start + i] = Fraction(1)
            basis.append(art_start + i)
            art_cols.append(art_start + i)
        tab.append(row)
    allowed = [True] * total
    for i in range(m):
        if art_start + i not in art_cols:
            allowed[art_start + i] = False

    def pivot(r, c):
        pr = tab[r]
        pv = pr[c]
        if pv != 1:
            inv = 1 / pv
            pr = [v * inv if v else v for v in pr]
            tab[r] = pr
        nz = [j for j, v in enumerate(pr) if v]
        for i in range(m):
            if i == r:
                continue
            row = tab[i]
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * pr[j]
        basis[r] = c

    def run(obj):
        # obj: list of length total (maximize)
        while True:
            # reduced costs
            enter = None
            in_basis = set(basis)
            for j in range(total):
                if not allowed[j] or j in in_basis:
                    continue
                rc = obj[j] - sum(obj[basis[i]] * tab[i][j] for i in range(m) if tab[i][j])
                if rc > 0:
                    enter = j
                    break
            if enter is None:
                return OPTIMAL
            leave = None
            best = None
            for i in range(m):
                a = tab[i][enter]
                if a > 0:
                    ratio = tab[i][total] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                return UNBOUNDED
            pivot(leave, enter)

    if art_cols:
        obj1 = [Fraction(0)] * total
        for c in art_cols:
            obj1[c] = Fraction(-1)
        run(obj1)
        infeas = sum(tab[i][total] for i in range(m) if basis[i] in art_cols)
        if infeas > 0:
            return INFEASIBLE, None, None
        # drive artificials out of the basis
        for i in range(m):
            if basis[i] in art_cols:
                for j in range(art_start):
                    if tab[i][j] and allowed[j]:
                        pivot(i, j)
                        break
        for c in art_cols:
            allowed[c] = False
    obj2 = [Fraction(0)] * total
    for j, v in enumerate(cost):
        obj2[j] = v
    status = run(obj2)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    z = [Fraction(0)] * total
    for i in range(m):
        z[basis[i]] = tab[i][total]
    value = sum(cost[j] * z[j] for j in range(nvar))
    return OPTIMAL, value, z[:nvar]


def _lp_setup(system: ConstraintSystem, strict_slack: bool):
    """Rows over z = (u, v[, eps]) with x = u - v."""
    n = system.ambient_dim
    rows, rhs, kinds = [], [], []
    has_strict = False
    for c in system.constraints:
        a = c.form.coeffs
        row = list(a) + [-v for v in a]
        if strict_slack:
            row.append(Fraction(1) if c.strict else Fraction(0))
        has_strict |= c.strict
        rows.append(row)
        rhs.append(-c.form.const)
        kinds.append(EQ if c.relation == EQ else LE)
    if strict_slack:
        cap = [Fraction(0)] * (2 * n) + [Fraction(1)]
        rows.append(cap)
        rhs.append(Fraction(1))
        kinds.append(LE)
    return rows, rhs, kinds, has_strict


@lru_cache(maxsize=200_000)
def _feasible_cached(system: ConstraintSystem) -> bool:
    s = system.simplified()
    if _is_false(s):
        return False
    if not s.constraints:
        return True
    n = s.ambient_dim
    if n == 0:
        return all(c.holds(()) for c in s.constraints)
    rows, rhs, kinds, has_strict = _lp_setup(s, strict_slack=True)
    cost = [Fraction(0)] * (2 * n) + [Fraction(1) if has_strict else Fraction(0)]
    status, value, _ = _simplex(rows, rhs, kinds, cost)
    if status == INFEASIBLE:
        return False
    return (not has_strict) or value > 0


def is_feasible(system: ConstraintSystem) -> bool:
    """True iff the system has a rational solution.

    Decided by an exact simplex on the strict-slack program
    ``max eps`` s.t. strict rows ``a.x + c + eps <= 0``; the
    Fourier-Motzkin route (:func:`fm_feasible`) agrees and is used as a
    cross-check in the tests.
    """
    return _feasible_cached(system)


def lp_optimize(system: ConstraintSystem, objective: AffineForm):
    """``sup objective`` over the closure of the system.

    Returns ``(status, value, point)``; strict relations are weakened, so the
    value is the supremum over the original set whenever it is nonempty.
    """
    s = system.weakened().simplified()
    n = s.ambient_dim
    if _is_false(s):
        return INFEASIBLE, None, None
    if n == 0:
        return OPTIMAL, objective.const, ()
    rows, rhs, kinds, _ = _lp_setup(s, strict_slack=False)
    cost = list(objective.coeffs) + [-v for v in objective.coeffs]
    if not rows:
        if any(objective.coeffs):
            return UNBOUNDED, None, None
        return OPTIMAL, objective.const, tuple(Fraction(0) for _ in range(n))
    status, value, z = _simplex(rows, rhs, kinds, cost)
    if status != OPTIMAL:
        return status, None, None
    point = tuple(z[i] - z[n + i] for i in range(n))
    return OPTIMAL, value + objective.const, point


def find_point(system: ConstraintSystem) -> tuple | None:
    """A rational point satisfying the system (strict rows included), or None."""
    s = system.simplified()
    if _is_false(s):
        return None
    n = s.ambient_dim
    if n == 0:
        return () if all(c.holds(()) for c in s.constraints) else None
    if not s.constraints:
        return tuple(Fraction(0) for _ in range(n))
    rows, rhs, kinds, has_strict = _lp_setup(s, strict_slack=True)
    cost = [Fraction(0)] * (2 * n) + [Fraction(1) if has_strict else Fraction(0)]
    status, value, z = _simplex(rows, rhs, kinds, cost)
    if status != OPTIMAL or (has_strict and value <= 0):
        return None
    point = tuple(z[i] - z[n + i] for i in range(n))
    assert s.contains(point)
    return point


def relative_interior_point(system: ConstraintSystem) -> tuple | None:
    """A point in the relative interior of the solution set (or None if empty).

    Weak rows that are not implicit equalities are made strict before
    solving, so the returned point avoids every proper face.
    """
    s = system.simplified()
    if not is_feasible(s):
        return None
    cons = []
    for c in s.constraints:
        if c.relation == LE:
            tight = not is_feasible(s.conjoin([LinearConstraint(c.form, LT)]))
            cons.append(LinearConstraint(c.form, EQ if tight else LT))
        else:
            cons.append(c)
    return find_point(ConstraintSystem(tuple(cons), s.ambient_dim))


def bounds(system: ConstraintSystem, axis: int):
    """``(inf, sup)`` of coordinate ``axis`` over the system (None = infinite)."""
    n = system.ambient_dim
    e = AffineForm.variable(axis, n)
    st, hi, _ = lp_optimize(system, e)
    if st == INFEASIBLE:
        return None
    st2, lo, _ = lp_optimize(system, -e)
    return (None if st2 == UNBOUNDED else -lo, None if st == UNBOUNDED else hi)


def is_bounded_system(system: ConstraintSystem) -> bool:
    if not is_feasible(system.weakened()):
        return True
    for i in range(system.ambient_dim):
        lo, hi = bounds(system, i)
        if lo is None or hi is None:
            return False
    return True


# ---------------------------------------------------------------------------
# small exact linear algebra


def solve_linear(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Unique solution of a square system, or None if singular."""
    n = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(aug[r][n] for r in range(n))


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    rows = [list(map(Fraction, v)) for v in vectors]
    if not rows:
        return 0
    ncol = len(rows[0])
    r = 0
    for col in range(ncol):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col] / rows[r][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def affine_dimension(points: Sequence[Sequence[Fraction]]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def vertices(system: ConstraintSystem) -> list[tuple]:
    """Vertices of the closed polyhedron obtained by weakening all strict rows.

    Raises :class:`UnboundedInput` if that polyhedron is unbounded.
    """
    weak = system.weakened().simplified()
    n = weak.ambient_dim
    if _is_false(weak) or not is_feasible(weak):
        return []
    if not is_bounded_system(weak):
        raise UnboundedInput("vertices of an unbounded polyhedron")
    if n == 0:
        return [()]
    # equalities become two inequalities for enumeration purposes
    hyper = [c.form for c in weak.constraints]
    found = set()
    for combo in itertools.combinations(range(len(hyper)), n):
        mat = [hyper[i].coeffs for i in combo]
        rhs = [-hyper[i].const for i in combo]
        pt = solve_linear(mat, rhs)
        if pt is None or pt in found:
            continue
        if weak.contains(pt):
            found.add(pt)
    return sorted(found)


def active_rank(system: ConstraintSystem, point: Sequence) -> int:
    """Rank of the normals of constraints tight at ``point``."""
    weak = system.weakened()
    return rank([c.form.coeffs for c in weak.constraints if c.form(point) == 0])
