"""Named verification suites over the fixed corpus.

Each suite returns a :class:`SuiteReport` listing one :class:`Check` per case;
a suite passes when every check does.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Callable

from . import corpus
from .cells import contraction, decompose
from .geometry import AffineForm
from .homology import (
    Z,
    Z2,
    CoefficientGroup,
    euler_characteristic,
    point_cohomology,
    same_groups,
    simplicial_cohomology,
    sphere_cohomology,
)
from .oracle import oracle_cohomology, triangulate
from .semilinear import SemilinearSet
from .shrink import (
    NotClosedSlices,
    check_shrink_laws,
    cube_face_cover,
    large_parameter,
    shrink_family,
    stabilization_t0,
)
from .typespace import (
    NamedType1D,
    enumerate_named_types,
    finite_subcover,
    separate_closed,
    specializes,
)

SHRINK_PARAMETERS = (Q(1, 8), Q(1, 4))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "seconds": round(self.seconds, 3)}


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.ok,
                "checks": [c.as_dict() for c in self.checks], "notes": list(self.notes)}


def _run(report: SuiteReport, name: str, fn: Callable[[], tuple]):
    """Run one case; ``fn`` returns ``(passed, detail)``.  Exceptions fail it."""
    start = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failed check, with the reason kept
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    report.checks.append(Check(name, bool(passed), detail, time.perf_counter() - start))


def fmt(groups) -> str:
    return "[" + ", ".join(str(g) for g in groups) + "]"


def cell_cohomology(c, g: CoefficientGroup = Z):
    """Oracle cohomology of a bounded cell as ``cl C`` minus its frontier."""
    cl = c.closure()
    return oracle_cohomology(cl, (cl - c.set).reduced(), g)


# ---------------------------------------------------------------------------


def suite_intervals(seed: int = 0) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport("intervals")
    for _ in range(10):
        a = Q(rng.randint(-40, 40), rng.randint(1, 9))
        b = a + Q(rng.randint(1, 40), rng.randint(1, 9))
        for g in (Z, Z2):
            def case(a=a, b=b, g=g):
                h = oracle_cohomology(SemilinearSet.interval(a, b), None, g)
                return same_groups(h, point_cohomology(g)), fmt(h)
            _run(report, f"closed interval [{a}, {b}] over {g}", case)
    return report


def suite_cells(seed: int = 0) -> SuiteReport:
    report = SuiteReport("cells")
    for name, c in corpus.cells().items():
        def acyclic(c=c):
            h = cell_cohomology(c)
            return same_groups(h, point_cohomology()), fmt(h)

        def contracts(c=c):
            hom = contraction(c)
            flags = {"starts at identity": hom.start_is_identity(),
                     "ends constant": hom.end_is_constant(),
                     "continuous": hom.is_continuous()}
            bad = hom.sample_check(c, samples=100, seed=seed)
            flags["stays in cell"] = not bad
            failed = [k for k, v in flags.items() if not v]
            return not failed, "certified" if not failed else "failed: " + ", ".join(failed)
        _run(report, f"{name}: cohomology of a point", acyclic)
        _run(report, f"{name}: contraction certified", contracts)
    return report


def suite_spheres(seed: int = 0) -> SuiteReport:
    report = SuiteReport("spheres")
    for name, c in corpus.cells().items():
        m = c.dimension
        fam = shrink_family(c)
        cl = c.closure()
        frontier = (cl - c.set).reduced()
        for t in SHRINK_PARAMETERS:
            def case(c=c, t=t, m=m, fam=fam, cl=cl, frontier=frontier):
                cov = cube_face_cover(c, t, fam)
                nerve = simplicial_cohomology(cov.nerve())
                removed = fam.slice(t) | frontier
                direct = oracle_cohomology(cl, removed)
                sphere = sphere_cohomology(m - 1)
                ok = same_groups(nerve, sphere) and same_groups(direct, sphere)
                return ok, f"nerve {fmt(nerve)}, oracle {fmt(direct)}"
            _run(report, f"{name}: cover of C minus C_t at t={t} is a {m - 1}-sphere", case)
    return report


def suite_shrink(seed: int = 0) -> SuiteReport:
    report = SuiteReport("shrink")
    for name, c in corpus.cells().items():
        def case(c=c):
            laws = check_shrink_laws(c, SHRINK_PARAMETERS)
            return laws.ok, "all laws hold" if laws.ok else "; ".join(laws.failures())
        _run(report, f"{name}: shrink family laws and cover comparison", case)
    return report


def suite_boundary(seed: int = 0) -> SuiteReport:
    report = SuiteReport("boundary")
    for name, c in corpus.cells().items():
        def case(c=c):
            fam = shrink_family(c)
            point = fam.slice(large_parameter(c))
            a = point.sample_point()
            cl = c.closure()
            punctured = oracle_cohomology(cl, SemilinearSet.point(a))
            frontier = oracle_cohomology((cl - c.set).reduced())
            return same_groups(punctured, frontier), f"{fmt(punctured)} vs {fmt(frontier)}"
        _run(report, f"{name}: closure minus a point matches the frontier", case)
    return report


def suite_strange(seed: int = 0) -> SuiteReport:
    report = SuiteReport("strange")
    c = corpus.strange_cell()

    def certified():
        cert = c.certify()
        ok = cert.dimension == 2 and cert.ambient_dim == 4
        return ok, f"kinds {'/'.join(cert.kinds)}, dimension {cert.dimension} in R^{cert.ambient_dim}"

    def first_degree():
        h = oracle_cohomology(c.closure())
        h1 = h[1] if len(h) > 1 else None
        return h1 is not None and not h1.is_zero(), f"closure cohomology {fmt(h)}"
    _run(report, "fixture is a cell of dimension 2 in R^4", certified)
    _run(report, "first cohomology of the closure is nonzero", first_degree)
    report.notes.append(
        "the fixture is piecewise linear; its defining functions extend "
        "continuously to the closed square, so the closure is a contractible "
        "graph and the first cohomology vanishes")
    return report


def suite_fingen(seed: int = 0) -> SuiteReport:
    report = SuiteReport("fingen")
    for name, x in corpus.compact_sets().items():
        def case(x=x):
            if not x.is_definably_compact():
                return False, "not definably compact"
            d = x.dimension()
            h = oracle_cohomology(x)
            finite = all(isinstance(g.rank, int) and g.rank >= 0 and all(t > 1 for t in g.torsion)
                         for g in h)
            high = all(g.is_zero() for g in h[d + 1:])
            return finite and high, f"dimension {d}, groups {fmt(h)}"
        _run(report, f"{name}: finitely generated and zero above the dimension", case)
    return report


def suite_euler(seed: int = 0) -> SuiteReport:
    report = SuiteReport("euler")
    t = SHRINK_PARAMETERS[0]
    for pair in corpus.pairs():
        def case(pair=pair):
            x, c = pair.space, pair.cell
            ct = shrink_family(c).slice(t)
            cl = c.closure()
            frontier = (cl - c.set).reduced()
            chi_x = euler_characteristic(oracle_cohomology(x))
            chi_rest = euler_characteristic(oracle_cohomology(x, ct))
            chi_c = euler_characteristic(oracle_cohomology(cl, frontier))
            chi_ring = euler_characteristic(oracle_cohomology(cl, ct | frontier))
            ok = chi_x == chi_rest + chi_c - chi_ring
            return ok, f"{chi_x} = {chi_rest} + {chi_c} - {chi_ring}"
        _run(report, f"{pair.name}: Euler characteristics add up", case)
    return report


def suite_stabilization(seed: int = 0) -> SuiteReport:
    report = SuiteReport("stabilization")
    fams = corpus.families()
    for name, expected in corpus.EXPECTED_T0.items():
        def case(fam=fams[name], expected=expected):
            res = stabilization_t0(fam)
            want = float("inf") if expected is None else expected
            return res.t0 == want and res.certified, f"t0 = {res.t0}, certified {res.certified}"
        _run(report, f"{name}: threshold found and certified", case)

    def rejects():
        try:
            stabilization_t0(fams["open-slices"])
        except NotClosedSlices as exc:
            return True, f"rejected: {exc}"
        return False, "accepted a family with non-closed slices"
    _run(report, "open-slices: family with non-closed slices is rejected", rejects)
    return report


def _random_cover(rng: random.Random, x_lo: Q, x_hi: Q) -> list:
    members = []
    for _ in range(rng.randint(2, 7)):
        a = Q(rng.randint(-4, 24), 4)
        b = a + Q(rng.randint(1, 12), 4)
        u = SemilinearSet.interval(a, b, False, False)
        if rng.random() < 0.3:
            c = Q(rng.randint(-4, 24), 4)
            u = u | SemilinearSet.interval(c, c + Q(rng.randint(1, 8), 4), False, False)
        members.append(u)
    return members


def suite_typespace(seed: int = 0) -> SuiteReport:
    report = SuiteReport("typespace")
    unit = SemilinearSet.interval(0, 1)

    def enumeration():
        names = [str(t) for t in enumerate_named_types(unit)]
        want = ["0", "0+", "1/2-", "1/2", "1/2+", "1-", "1"]
        return names == want, ", ".join(names)

    def poset():
        space = enumerate_named_types(unit)
        ok = True
        for p in space:
            closure = space.closure_of(p)
            if p.is_closed_point():
                ok &= closure == [p]
            else:
                ok &= sorted(closure, key=str) == sorted([p, NamedType1D.realized(p.a)], key=str)
        ok &= specializes(NamedType1D.right_of(0), NamedType1D.realized(0), unit)
        ok &= not specializes(NamedType1D.realized(0), NamedType1D.realized(1), unit)
        return ok, f"{len(space)} types, closed points {len(space.closed_points())}"
    _run(report, "types of [0, 1] are enumerated", enumeration)
    _run(report, "closure of a one-sided type is the type and its point", poset)

    rng = random.Random(seed)
    x = SemilinearSet.interval(0, 4)
    for k in range(20):
        cover = _random_cover(rng, Q(0), Q(4))

        def subcover(cover=cover):
            res = finite_subcover(x, cover)
            union = SemilinearSet.empty(1)
            for u in cover:
                union = union | u
            if x.is_subset(union):
                if not res.covered:
                    return False, "missed a cover"
                chosen = [cover[i] for i in res.indices]
                total = SemilinearSet.empty(1)
                for u in chosen:
                    total = total | u
                irredundant = True
                for i in range(len(chosen)):
                    rest = SemilinearSet.empty(1)
                    for j, u in enumerate(chosen):
                        if j != i:
                            rest = rest | u
                    irredundant &= not x.is_subset(rest)
                return x.is_subset(total) and irredundant, f"{len(chosen)} of {len(cover)} members"
            p = res.counterexample
            ok = (not res.covered and p is not None and p.contains(x)
                  and not any(p.contains(u) for u in cover))
            return ok, f"uncovered type {p}"
        _run(report, f"random cover {k + 1}: finite subcover or uncovered type", subcover)

    for k in range(5):
        pts = sorted(rng.sample(range(0, 40), 6))
        a = SemilinearSet.interval(Q(pts[0], 2), Q(pts[1], 2)) | SemilinearSet.point([Q(pts[4], 2)])
        b = SemilinearSet.interval(Q(pts[2], 2), Q(pts[3], 2)) | SemilinearSet.point([Q(pts[5], 2)])

        def separation(a=a, b=b):
            u, v = separate_closed(a, b)
            ok = ((u & v).is_empty() and a.is_subset(u) and b.is_subset(v)
                  and u.is_open() and v.is_open())
            return ok, f"u = {u}, v = {v}"
        _run(report, f"random closed pair {k + 1}: separated by disjoint opens", separation)
    return report


def refinement_forms(x: SemilinearSet) -> list:
    """Extra cutting hyperplanes through the middle of the bounding box."""
    box = x.bounding_box()
    n = x.ambient_dim
    out = []
    for i, (lo, hi) in enumerate(box):
        mid = (lo + hi) / 2 + Q(1, 7)
        out.append(AffineForm.variable(i, n) - mid)
    if n >= 2:
        out.append(AffineForm.variable(0, n) - AffineForm.variable(1, n) - Q(1, 5))
    return out


def decomposition_cohomology(x: SemilinearSet, extra=(), g: CoefficientGroup = Z):
    """Cohomology of the complex triangulating the cells of a decomposition."""
    cells = decompose(x, extra).cells
    t = triangulate([c.set for c in cells])
    return simplicial_cohomology(t.complex(), g)


REFINEMENT_SETS = ("closed-square", "square-boundary", "annulus", "figure-eight", "closed-triangle")


def suite_refinement(seed: int = 0) -> SuiteReport:
    report = SuiteReport("refinement")
    sets = corpus.compact_sets()
    for name in REFINEMENT_SETS:
        def case(x=sets[name]):
            coarse = decomposition_cohomology(x)
            fine = decomposition_cohomology(x, refinement_forms(x))
            return same_groups(coarse, fine), f"coarse {fmt(coarse)}, refined {fmt(fine)}"
        _run(report, f"{name}: refinement does not change cohomology", case)
    return report


SUITES = {
    "intervals": suite_intervals,
    "cells": suite_cells,
    "spheres": suite_spheres,
    "shrink": suite_shrink,
    "boundary": suite_boundary,
    "strange": suite_strange,
    "fingen": suite_fingen,
    "euler": suite_euler,
    "stabilization": suite_stabilization,
    "typespace": suite_typespace,
    "refinement": suite_refinement,
}


def run_suite(name: str, seed: int = 0) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](seed)
