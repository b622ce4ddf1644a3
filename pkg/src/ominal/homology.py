"""Integer homological algebra: Smith normal form, cochain complexes,
simplicial and Cech cohomology with constant coefficients."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class InvalidComplex(ValueError):
    pass


class MissingCertificate(ValueError):
    pass


class UnboundedIntersection(ValueError):
    pass


# ---------------------------------------------------------------------------
# groups


def _prime_powers(n: int) -> dict:
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 1) * p
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 1) * n
    return out


def invariant_factors(orders: Iterable[int]) -> tuple:
    """Rewrite a direct sum of cyclic groups as a divisibility chain."""
    by_prime = defaultdict(list)
    for m in orders:
        m = abs(int(m))
        if m == 1:
            continue
        if m == 0:
            raise ValueError("zero order is not torsion")
        for p, q in _prime_powers(m).items():
            by_prime[p].append(q)
    if not by_prime:
        return ()
    length = max(len(v) for v in by_prime.values())
    chain = [1] * length
    for p, powers in by_prime.items():
        powers.sort(reverse=True)
        for k, q in enumerate(powers):
            chain[length - 1 - k] *= q
    return tuple(chain)


@dataclass(frozen=True)
class CohomologyGroup:
    """``Z^rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ...``."""

    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", invariant_factors(self.torsion))

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __add__(self, other: "CohomologyGroup") -> "CohomologyGroup":
        return CohomologyGroup(self.rank + other.rank, self.torsion + other.torsion)

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def as_dict(self, degree: int) -> dict:
        return {"degree": degree, "rank": self.rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class CoefficientGroup:
    """A finitely generated abelian group ``Z^free_rank + sum Z/m``."""

    free_rank: int = 1
    cyclic_orders: tuple = ()

    @classmethod
    def parse(cls, text: str) -> "CoefficientGroup":
        t = text.strip().replace(" ", "")
        if t in ("Z", "ZZ"):
            return cls(1, ())
        if t.startswith("Z/"):
            m = int(t[2:])
            if m < 2:
                raise ValueError("cyclic order must be at least 2")
            return cls(0, (m,))
        raise ValueError(f"unknown coefficient group {text!r}")

    def as_group(self) -> CohomologyGroup:
        return CohomologyGroup(self.free_rank, self.cyclic_orders)

    def __str__(self) -> str:
        return str(self.as_group())


Z = CoefficientGroup(1, ())
Z2 = CoefficientGroup(0, (2,))


def euler_characteristic(groups: Sequence[CohomologyGroup]) -> int:
    return sum((-1) ** p * g.rank for p, g in enumerate(groups))


def sphere_cohomology(k: int, g: CoefficientGroup = Z) -> list[CohomologyGroup]:
    """Cohomology of the k-sphere (k = -1 is the empty set)."""
    G = g.as_group()
    if k < 0:
        return [CohomologyGroup()]
    if k == 0:
        return [G + G]
    return [G] + [CohomologyGroup()] * (k - 1) + [G]


def point_cohomology(g: CoefficientGroup = Z) -> list[CohomologyGroup]:
    return [g.as_group()]


def trim(groups: Sequence[CohomologyGroup]) -> list[CohomologyGroup]:
    """Drop trailing zero groups (keeps degree 0)."""
    out = list(groups) or [CohomologyGroup()]
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return out


def same_groups(a: Sequence[CohomologyGroup], b: Sequence[CohomologyGroup]) -> bool:
    return trim(a) == trim(b)


# ---------------------------------------------------------------------------
# Smith normal form


def _identity(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _snf(A: Sequence[Sequence[int]], track: bool = True):
    """Returns ``(U, D, V, Uinv)`` with ``U A V = D``."""
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = _identity(m) if track else None
    Uinv = _identity(m) if track else None
    V = _identity(n) if track else None

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        if track:
            U[i], U[j] = U[j], U[i]
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        # row_dst += f * row_src
        if not f:
            return
        rs, rd = D[src], D[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += f * rs[k]
        if track:
            us, ud = U[src], U[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += f * us[k]
            # inverse: col_src -= f * col_dst
            for row in Uinv:
                if row[dst]:
                    row[src] -= f * row[dst]

    def add_col(src, dst, f):
        if not f:
            return
        for row in D:
            if row[src]:
                row[dst] += f * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] += f * row[src]

    def negate_row(i):
        D[i] = [-v for v in D[i]]
        if track:
            U[i] = [-v for v in U[i]]
            for row in Uinv:
                row[i] = -row[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // p
                    add_row(t, i, -q)
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // p
                    add_col(t, j, -q)
                    if D[t][j]:
                        done = False
            if done:
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if D[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(bad, t, 1)
                continue
            # move the smallest remaining entry of row/col t to the pivot
            cand = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
            cand += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
            _, i, j = min(cand)
            swap_rows(t, i)
            swap_cols(t, j)
        if D[t][t] < 0:
            negate_row(t)
        t += 1
    return U, D, V, Uinv


def smith_normal_form(A: Sequence[Sequence[int]]):
    """``(U, D, V)`` with ``U A V = D`` diagonal, ``U``, ``V`` unimodular and
    the diagonal a divisibility chain (nonnegative)."""
    U, D, V, _ = _snf(A)
    return U, D, V


def diagonal(D) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def _sparse_invariant_factors(rows: dict, ncols: int) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix.

    Unit pivots are eliminated sparsely (each contributes a factor 1); the
    remainder goes through dense SNF.
    """
    rows = {r: dict(v) for r, v in rows.items() if v}
    cols = defaultdict(set)
    for r, row in rows.items():
        for c in row:
            cols[c].add(r)
    units = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(rows, key=lambda k: len(rows[k])):
            row = rows.get(r)
            if row is None:
                continue
            best = None
            for c, v in row.items():
                if v in (1, -1):
                    score = len(cols[c])
                    if best is None or score < best[0]:
                        best = (score, c)
            if best is None:
                continue
            c = best[1]
            u = row[c]
            for i in list(cols[c]):
                if i == r:
                    continue
                ri = rows[i]
                f = ri[c] * u
                for k, v in row.items():
                    nv = ri.get(k, 0) - f * v
                    if nv:
                        if k not in ri:
                            cols[k].add(i)
                        ri[k] = nv
                    elif k in ri:
                        del ri[k]
                        cols[k].discard(i)
                if not ri:
                    del rows[i]
            for k in row:
                cols[k].discard(r)
            del rows[r]
            units += 1
            progress = True
    rest = [r for r in rows.values() if r]
    if not rest:
        return [1] * units
    used = sorted({c for r in rest for c in r})
    index = {c: j for j, c in enumerate(used)}
    dense = [[0] * len(used) for _ in rest]
    for i, r in enumerate(rest):
        for c, v in r.items():
            dense[i][index[c]] = v
    _, D, _, _ = _snf(dense, track=False)
    return [1] * units + diagonal(D)


def _matrix_to_sparse(M) -> dict:
    if isinstance(M, SparseMatrix):
        return M.rows
    return {i: {j: v for j, v in enumerate(row) if v} for i, row in enumerate(M)}


@dataclass
class SparseMatrix:
    nrows: int
    ncols: int
    rows: dict = field(default_factory=dict)

    def to_dense(self) -> list:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, row in self.rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        out = {}
        for i, row in self.rows.items():
            acc = defaultdict(int)
            for k, v in row.items():
                for j, w in other.rows.get(k, {}).items():
                    acc[j] += v * w
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return SparseMatrix(self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return not any(self.rows.values())


# ---------------------------------------------------------------------------
# cochain complexes


@dataclass
class CochainComplex:
    """Free cochain complex ``C^0 -> C^1 -> ...``.

    ``differentials[p]`` maps ``C^p`` to ``C^(p+1)`` and has shape
    ``ranks[p+1] x ranks[p]`` (dense lists or :class:`SparseMatrix`).
    """

    ranks: list
    differentials: list

    def validate(self):
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise InvalidComplex("need one differential between consecutive degrees")
        for p, d in enumerate(self.differentials):
            if isinstance(d, SparseMatrix):
                continue
            if len(d) != self.ranks[p + 1] or any(len(row) != self.ranks[p] for row in d):
                raise InvalidComplex(f"d^{p} has wrong shape")
        mats = [self._sparse(p) for p in range(len(self.differentials))]
        for p, d in enumerate(mats):
            if d.nrows != self.ranks[p + 1] or d.ncols != self.ranks[p]:
                raise InvalidComplex(f"d^{p} has wrong shape")
        for p in range(len(mats) - 1):
            if not (mats[p + 1] @ mats[p]).is_zero():
                raise InvalidComplex(f"d^{p + 1} d^{p} != 0")
        return self

    def _sparse(self, p: int) -> SparseMatrix:
        d = self.differentials[p]
        if isinstance(d, SparseMatrix):
            return d
        return SparseMatrix(self.ranks[p + 1], self.ranks[p], _matrix_to_sparse(d))


def _integer_cohomology(c: CochainComplex) -> list[CohomologyGroup]:
    factors = []
    for p in range(len(c.differentials)):
        d = c._sparse(p)
        factors.append(_sparse_invariant_factors(d.rows, d.ncols))
    out = []
    for p, n in enumerate(c.ranks):
        rk_out = len(factors[p]) if p < len(factors) else 0
        inc = factors[p - 1] if p >= 1 else []
        out.append(CohomologyGroup(n - rk_out - len(inc), tuple(f for f in inc if f > 1)))
    return out


def _kernel_basis(A, ncols: int) -> list[list[int]]:
    """Integer basis (as column vectors) of ``{x : A x = 0}``."""
    if not A:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    _, D, V, _ = _snf(A)
    r = len(diagonal(D))
    return [[V[i][j] for i in range(ncols)] for j in range(r, ncols)]


def _lattice_quotient(gens_K: list, gens_S: list, n: int) -> CohomologyGroup:
    """``K / S`` for lattices ``S <= K <= Z^n`` given by generator lists."""
    if not gens_K:
        return CohomologyGroup()
    G = [[v[i] for v in gens_K] for i in range(n)]
    U, D, _, Uinv = _snf(G)
    diag = diagonal(D)
    r = len(diag)
    if not gens_S:
        return CohomologyGroup(r)
    coords = []
    for s in gens_S:
        us = [sum(U[i][k] * s[k] for k in range(n)) for i in range(n)]
        row = []
        for i in range(r):
            if us[i] % diag[i]:
                raise InvalidComplex("submodule not contained in kernel")
            row.append(us[i] // diag[i])
        coords.append(row)
    rel = [[coords[j][i] for j in range(len(coords))] for i in range(r)]
    _, D2, _, _ = _snf(rel)
    d2 = diagonal(D2)
    return CohomologyGroup(r - len(d2), tuple(x for x in d2 if x > 1))


def _cyclic_cohomology(c: CochainComplex, m: int) -> list[CohomologyGroup]:
    """``H^p(C tensor Z/m)`` by presenting cocycles mod m as a subquotient."""
    out = []
    dense = [c._sparse(p).to_dense() for p in range(len(c.differentials))]
    for p, n in enumerate(c.ranks):
        if n == 0:
            out.append(CohomologyGroup())
            continue
        if p < len(dense) and c.ranks[p + 1]:
            d = dense[p]
            k = c.ranks[p + 1]
            aug = [list(d[i]) + [(-m if j == i else 0) for j in range(k)] for i in range(k)]
            kern = _kernel_basis(aug, n + k)
            gens_K = [v[:n] for v in kern]
        else:
            gens_K = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
        gens_S = [[m if i == j else 0 for i in range(n)] for j in range(n)]
        if p >= 1 and c.ranks[p - 1]:
            prev = dense[p - 1]
            gens_S += [[prev[i][j] for i in range(n)] for j in range(c.ranks[p - 1])]
        out.append(_lattice_quotient(gens_K, gens_S, n))
    return out


def _uct_cyclic(integral: Sequence[CohomologyGroup], m: int) -> list[CohomologyGroup]:
    """Universal coefficients: ``H^p(C;Z/m) = H^p tensor Z/m + Tor(H^(p+1), Z/m)``."""
    from math import gcd

    out = []
    for p, h in enumerate(integral):
        orders = [m] * h.rank
        orders += [gcd(d, m) for d in h.torsion]
        if p + 1 < len(integral):
            orders += [gcd(d, m) for d in integral[p + 1].torsion]
        out.append(CohomologyGroup(0, tuple(o for o in orders if o > 1)))
    return out


DENSE_LIMIT = 80


def cohomology(c: CochainComplex, g: CoefficientGroup = Z, method: str = "auto",
               validate: bool = True) -> list[CohomologyGroup]:
    """``H^p(C; G)`` for every degree of the complex.

    ``method`` selects the route for cyclic summands: ``"direct"`` presents
    ``ker(d mod m) / (im d + m C)`` via SNF, ``"uct"`` goes through the
    integral groups and universal coefficients; ``"auto"`` uses the direct
    route on small complexes.
    """
    if validate:
        c.validate()
    if not c.ranks:
        return [CohomologyGroup()]
    integral = None
    total = [CohomologyGroup() for _ in c.ranks]
    if g.free_rank or method != "direct":
        integral = _integer_cohomology(c)
    if g.free_rank:
        for p, h in enumerate(integral):
            for _ in range(g.free_rank):
                total[p] = total[p] + h
    for m in g.cyclic_orders:
        use_direct = method == "direct" or (method == "auto" and max(c.ranks) <= DENSE_LIMIT)
        part = _cyclic_cohomology(c, m) if use_direct else _uct_cyclic(integral, m)
        total = [a + b for a, b in zip(total, part)]
    return total


# ---------------------------------------------------------------------------
# simplicial complexes


def _label_key(v):
    return (type(v).__name__, v) if isinstance(v, (int, str)) else ("~", repr(v))


class SimplicialComplex:
    """A finite abstract simplicial complex (downward closed)."""

    def __init__(self, simplices: Iterable = (), vertices: Iterable = ()):
        closed = set()
        for s in simplices:
            s = frozenset(s)
            if s in closed or not s:
                continue
            items = tuple(s)
            for k in range(1, len(items) + 1):
                for face in itertools.combinations(items, k):
                    closed.add(frozenset(face))
        for v in vertices:
            closed.add(frozenset([v]))
        self.simplices = frozenset(closed)

    @classmethod
    def full_simplex(cls, vertices: Iterable) -> "SimplicialComplex":
        return cls([tuple(vertices)])

    @classmethod
    def _raw(cls, simplices: Iterable[frozenset]) -> "SimplicialComplex":
        obj = cls.__new__(cls)
        obj.simplices = frozenset(simplices)
        return obj

    @property
    def vertices(self) -> list:
        return sorted((next(iter(s)) for s in self.simplices if len(s) == 1), key=_label_key)

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def of_dim(self, p: int) -> list:
        return sorted((tuple(sorted(s, key=_label_key)) for s in self.simplices if len(s) == p + 1),
                      key=lambda t: [_label_key(v) for v in t])

    def f_vector(self) -> list[int]:
        counts = [0] * (self.dimension + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return counts

    def maximal(self) -> list[frozenset]:
        out = []
        for s in self.simplices:
            if not any(s < t for t in self.simplices if len(t) == len(s) + 1):
                out.append(s)
        return out

    def is_downward_closed(self) -> bool:
        for s in self.simplices:
            if len(s) > 1:
                for v in s:
                    if s - {v} not in self.simplices:
                        return False
        return True

    def full_subcomplex(self, verts: Iterable) -> "SimplicialComplex":
        vs = set(verts)
        return SimplicialComplex._raw(s for s in self.simplices if s <= vs)

    def is_full(self, sub: "SimplicialComplex") -> bool:
        """True iff every simplex spanned by vertices of ``sub`` lies in ``sub``."""
        vs = {next(iter(s)) for s in sub.simplices if len(s) == 1}
        return all(s in sub.simplices for s in self.simplices if s <= vs)

    def components(self) -> list[set]:
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in self.simplices:
            if len(s) == 1:
                v = next(iter(s))
                parent[v] = v
        for s in self.simplices:
            if len(s) == 2:
                a, b = tuple(s)
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        groups = defaultdict(set)
        for v in parent:
            groups[find(v)].add(v)
        return list(groups.values())

    def collapsed(self) -> "SimplicialComplex":
        """Result of elementary collapses until no free face remains."""
        cofaces = defaultdict(set)
        alive = set(self.simplices)
        for s in alive:
            if len(s) > 1:
                for v in s:
                    cofaces[s - {v}].add(s)
        queue = [s for s in alive if len(cofaces[s]) == 1]
        while queue:
            s = queue.pop()
            if s not in alive or len(cofaces[s]) != 1:
                continue
            (t,) = cofaces[s]
            if cofaces[t]:
                continue
            alive.discard(s)
            alive.discard(t)
            for v in t:
                f = t - {v}
                cofaces[f].discard(t)
                if f in alive and len(cofaces[f]) == 1:
                    queue.append(f)
            for v in s:
                f = s - {v}
                if f:
                    cofaces[f].discard(s)
                    if f in alive and len(cofaces[f]) == 1:
                        queue.append(f)
            cofaces.pop(s, None)
            cofaces.pop(t, None)
        return SimplicialComplex._raw(alive)

    def cochain_complex(self) -> CochainComplex:
        by_dim = [self.of_dim(p) for p in range(self.dimension + 1)]
        index = [{s: i for i, s in enumerate(level)} for level in by_dim]
        diffs = []
        for p in range(len(by_dim) - 1):
            rows = {}
            for i, tau in enumerate(by_dim[p + 1]):
                row = {}
                for k in range(len(tau)):
                    face = tau[:k] + tau[k + 1:]
                    row[index[p][face]] = (-1) ** k
                rows[i] = row
            diffs.append(SparseMatrix(len(by_dim[p + 1]), len(by_dim[p]), rows))
        return CochainComplex([len(level) for level in by_dim], diffs)

    def __len__(self):
        return len(self.simplices)


def simplicial_cohomology(k: SimplicialComplex, g: CoefficientGroup = Z,
                          collapse: bool = True) -> list[CohomologyGroup]:
    """``H^p(|K|; G)`` for ``p = 0 .. dim K`` (empty complex gives ``[0]``)."""
    dim = k.dimension
    if dim < 0:
        return [CohomologyGroup()]
    work = k.collapsed() if collapse else k
    groups = cohomology(work.cochain_complex(), g, validate=not collapse)
    groups = list(groups) + [CohomologyGroup()] * (dim + 1 - len(groups))
    return groups[: dim + 1]


# ---------------------------------------------------------------------------
# covers


def cech_cover_cohomology(cov, g: CoefficientGroup = Z) -> list[CohomologyGroup]:
    """Cech cohomology of a finite cover with the constant presheaf ``G``.

    A ``p``-cochain assigns an element of ``G`` to each connected component
    of each nonempty ``(p+1)``-fold intersection.
    """
    index = list(cov.index_order())
    pos = {i: k for k, i in enumerate(index)}
    levels = []  # list of [(F tuple, component set)]
    nonempty = set()
    for size in range(1, len(index) + 1):
        level = []
        for F in itertools.combinations(index, size):
            if size > 1:
                # every facet must be nonempty for F to be
                if not all(F[:k] + F[k + 1:] in nonempty for k in range(size)):
                    continue
            U = cov.intersection(F)
            if U.is_empty():
                continue
            if not U.is_bounded():
                raise UnboundedIntersection(f"intersection {F} is unbounded")
            for comp in U.components():
                level.append((F, comp))
        if not level:
            break
        nonempty.update(F for F, _ in level)
        levels.append(level)
    ranks = [len(level) for level in levels]
    diffs = []
    samples = [[comp.sample_point() for _, comp in level] for level in levels]
    for p in range(len(levels) - 1):
        rows = {}
        lower = levels[p]
        for i, (F, comp) in enumerate(levels[p + 1]):
            pt = samples[p + 1][i]
            row = {}
            for k in range(len(F)):
                face = F[:k] + F[k + 1:]
                for j, (G, c2) in enumerate(lower):
                    if G == face and c2.contains(pt):
                        row[j] = row.get(j, 0) + (-1) ** k
                        break
            rows[i] = {j: v for j, v in row.items() if v}
        diffs.append(SparseMatrix(ranks[p + 1], ranks[p], rows))
    if not ranks:
        return [CohomologyGroup()]
    return cohomology(CochainComplex(ranks, diffs), g)


def good_cover_cohomology(cov, certs: Mapping, g: CoefficientGroup = Z) -> list[CohomologyGroup]:
    """Nerve cohomology of a cover whose nonempty intersections are certified
    connected and acyclic (so it equals the cohomology of the union)."""
    nerve = cov.nerve()
    for s in nerve.simplices:
        key = tuple(sorted(s, key=cov.index_key))
        if not certs.get(key):
            raise MissingCertificate(f"no acyclicity certificate for {key}")
    return simplicial_cohomology(nerve, g)
