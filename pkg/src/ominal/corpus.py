"""Fixed test corpus: bounded cells, compact sets, cell-in-set pairs and
families for stabilization."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from .cells import Cell, PLFunction
from .geometry import AffineForm, ConstraintSystem, LinearConstraint
from .semilinear import DefinableFamily, SemilinearSet


def form(coeffs, const=0) -> AffineForm:
    return AffineForm(tuple(Q(c) for c in coeffs), Q(const))


def fn(coeffs, const=0) -> PLFunction:
    return PLFunction.affine(form(coeffs, const))


def const(value, dim) -> PLFunction:
    return PLFunction.constant(value, dim)


def absval(f: PLFunction) -> PLFunction:
    return f.maximum(-f)


def on(f: PLFunction, keep: int, total: int) -> PLFunction:
    """Lift a function of the first ``keep`` of ``total`` variables."""
    return f.pullback([AffineForm.variable(i, total) for i in range(keep)])


def _interval(a, b, name=""):
    return Cell.interval(a, b, name=name)


# ---------------------------------------------------------------------------
# cells


def unit_interval():
    return _interval(0, 1, "I")


def unit_square():
    return Cell.band(unit_interval(), const(0, 1), const(1, 1), name="square")


def unit_cube():
    return Cell.band(unit_square(), const(0, 2), const(1, 2), name="cube")


def triangle():
    return Cell.band(unit_interval(), const(0, 1), fn([1]), name="triangle")


def tent_band():
    base = _interval(-1, 1)
    x = fn([1])
    return Cell.band(base, absval(x) - 1, 1 - absval(x) / 2, name="tent-band")


def strange_cell() -> Cell:
    """Graph of ``g`` over the graph ``D`` of ``f`` over the open square.

    ``f`` has a low central triangle with apex at the top midpoint, two high
    corner triangles and interpolating strips; ``g`` is a signed bump near
    the top midpoint, positive on the left and negative on the right.
    """
    square = unit_square()
    x, y = fn([1, 0]), fn([0, 1])
    dist = absval(x - Q(1, 2))
    f = (dist * 3 + y - 1).maximum(const(0, 2)).minimum(const(1, 2))
    d = Cell.graph(square, f, name="strange-D")
    bump = (1 - (1 - y) * 4 - dist * 4).maximum(const(0, 2))
    slope = (Q(1, 2) - x) * 8
    g = slope.minimum(bump).maximum(-bump)
    return Cell.graph(d, on(g, 2, 3), name="strange-C")


def cells() -> dict[str, Cell]:
    """Named bounded cells of dimension 1..3 in ambient dimension <= 4."""
    out = {}

    def add(name, c):
        object.__setattr__(c, "name", name)
        out[name] = c

    I = unit_interval()
    add("interval", I)
    add("interval-wide", _interval(-2, Q(3, 2)))
    add("segment-graph", Cell.graph(_interval(0, 2), fn([Q(1, 2)], 1)))
    add("vee-graph", Cell.graph(_interval(-1, 1), absval(fn([1]))))
    add("space-segment", Cell.graph(Cell.graph(_interval(0, 1), fn([2])), fn([-1, 0], 1)))
    add("vertical-segment", Cell.band(Cell.point(1), const(0, 1), const(2, 1)))
    p0 = Cell.point(0)
    chain = Cell.band(p0, const(-1, 1), const(1, 1))
    chain = Cell.graph(chain, fn([0, 1]))
    add("vertical-in-4d", Cell.graph(chain, fn([0, 1, 1], 1)))
    # dimension 2
    add("square", unit_square())
    add("triangle", triangle())
    add("tent-band", tent_band())
    add("trapezoid", Cell.band(_interval(0, 2), fn([Q(1, 2)]), const(3, 1)))
    add("tilted-square", Cell.graph(unit_square(), fn([1, 1])))
    add("roof", Cell.graph(triangle(), fn([1, 0]).maximum(fn([0, 1]))))
    diag = Cell.graph(_interval(0, 1), fn([1]))
    add("wall", Cell.band(diag, const(0, 2), fn([1, 0], 1)))
    flat4 = Cell.graph(Cell.graph(unit_square(), fn([1, -1])), const(2, 3))
    add("square-in-4d", flat4)
    # dimension 3
    add("cube", unit_cube())
    chamber = Cell.band(triangle(), const(0, 2), fn([0, 1]))
    add("chamber", chamber)
    sq = unit_square()
    top = fn([1, 0]).maximum(fn([0, 1])) + 1
    add("roof-solid", Cell.band(sq, fn([1, 1], -2), top))
    add("cube-in-4d", Cell.graph(unit_cube(), fn([1, 1, 1])))
    tb = tent_band()
    add("pyramid", Cell.band(tb, const(0, 2), 1 - absval(fn([1, 0])) / 2))
    add("wedge", Cell.band(triangle(), -fn([0, 1]), fn([0, 1])))
    lifted = Cell.band(Cell.band(Cell.point(1), const(0, 1), const(1, 1)),
                       const(0, 2), fn([0, 1], 1))
    add("slab-in-4d", Cell.band(lifted, const(-1, 3), fn([0, 0, 1])))
    return out


def cells_by_dimension(dim: int) -> dict[str, Cell]:
    return {k: c for k, c in cells().items() if c.dimension == dim}


# ---------------------------------------------------------------------------
# compact sets


def _box(lo, hi, closed=True):
    return SemilinearSet.box(lo, hi, closed)


def compact_sets() -> dict[str, SemilinearSet]:
    sq = _box([0, 0], [1, 1])
    osq = _box([0, 0], [1, 1], False)
    cube = _box([0, 0, 0], [1, 1, 1])
    ocube = _box([0, 0, 0], [1, 1, 1], False)
    annulus = _box([0, 0], [3, 3]) - _box([1, 1], [2, 2], False)
    circle = sq - osq
    other = _box([2, 0], [3, 1])
    shifted = _box([1, 1], [2, 2])
    tri = triangle().closure()
    out = {
        "point": SemilinearSet.point([Q(1, 3)]),
        "closed-interval": SemilinearSet.interval(0, 1),
        "two-intervals": SemilinearSet.interval(0, 1) | SemilinearSet.interval(2, 3),
        "closed-square": sq,
        "closed-triangle": tri,
        "square-boundary": circle,
        "annulus": annulus,
        "two-squares": sq | other,
        "figure-eight": circle | (shifted - _box([1, 1], [2, 2], False)),
        "closed-cube": cube,
        "cube-boundary": cube - ocube,
        "thick-annulus": annulus.extend(1) & _box([-1, -1, 0], [4, 4, 1]),
        "pyramid-closure": cells()["pyramid"].closure(),
    }
    return out


@dataclass
class Pair:
    """Compact ``X`` with a bounded cell ``C`` open in ``X``."""

    name: str
    space: SemilinearSet
    cell: Cell


def pairs() -> list[Pair]:
    cs = cells()
    sets = compact_sets()
    sq = cs["square"]
    out = [
        Pair("square in closed square", sets["closed-square"], sq),
        Pair("interval in closed interval", sets["closed-interval"], cs["interval"]),
        Pair("interval in two intervals", sets["two-intervals"], cs["interval"]),
        Pair("square in two squares", sets["two-squares"], sq),
        Pair("triangle in closed triangle", sets["closed-triangle"], cs["triangle"]),
        Pair("cube in closed cube", sets["closed-cube"], cs["cube"]),
        Pair("edge in square boundary", sets["square-boundary"],
             Cell.graph(unit_interval(), const(0, 1))),
        Pair("strip in annulus", sets["annulus"],
             Cell.band(Cell.interval(0, 1), const(0, 1), const(3, 1))),
        Pair("corner in annulus", sets["annulus"],
             Cell.band(Cell.interval(0, 1), const(0, 1), const(1, 1))),
        Pair("edge in figure eight", sets["figure-eight"],
             Cell.graph(Cell.interval(1, 2), const(2, 1))),
        Pair("face in cube boundary", sets["cube-boundary"],
             Cell.graph(unit_square(), const(1, 2))),
        Pair("square in closed triangle region", sets["closed-square"],
             Cell.band(Cell.interval(0, 1), const(0, 1), fn([1]))),
    ]
    return out


# ---------------------------------------------------------------------------
# families for stabilization


def _family(dim: int, *pieces) -> DefinableFamily:
    systems = []
    for cons in pieces:
        systems.append(ConstraintSystem(tuple(LinearConstraint.make(f, r) for f, r in cons), dim))
    return DefinableFamily(SemilinearSet(dim, tuple(systems)))


def families() -> dict[str, DefinableFamily]:
    """Families ``t -> Y_t`` (parameter last) growing with ``t``."""
    x, t = form([1, 0]), form([0, 1])
    one = form([0, 0], 1)
    X, Y, T = form([1, 0, 0]), form([0, 1, 0]), form([0, 0, 1])
    return {
        "constant": _family(2, [(x, ">="), (x - one, "<=")]),
        "growing": _family(2, [(x - one + t, ">="), (x - one, "<=")]),
        "jump": _family(2, [(x, ">="), (x - one, "<=")],
                        [(x - 2 * one, "="), (t - one, ">=")]),
        "capped": _family(2, [(x, ">="), (x - t, "<="), (x - one, "<=")]),
        "plane-jump": _family(3, [(X, ">="), (X - 1, "<="), (Y, ">="), (Y - T, "<="), (Y - 1, "<=")],
                              [(X - 2, "="), (Y, "="), (T * 2 - 1, ">=")]),
        "open-slices": _family(2, [(x, ">"), (x - one, "<=")]),
    }


EXPECTED_T0 = {
    "constant": None,
    "growing": None,
    "jump": Q(1),
    "capped": None,
    "plane-jump": Q(1, 2),
}
