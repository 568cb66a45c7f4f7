"""Exact polytope geometry: facets, slack matrices, flags, realizations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactmath import (
    RationalMatrix,
    format_rational,
    in_column_span,
    nullspace,
    rank,
    solve_linear,
    to_rational,
)


class PolytopeError(ValueError):
    """Invalid or degenerate polytope data."""


@dataclass(frozen=True)
class VRepresentation:
    """Labelled vertices ``p_1 .. p_v`` of a ``d``-polytope (rows of ``V``)."""

    vertices: tuple

    def __init__(self, vertices: Iterable[Sequence]):
        vs = tuple(tuple(to_rational(x) for x in p) for p in vertices)
        if not vs:
            raise PolytopeError("no vertices")
        if len({len(p) for p in vs}) != 1:
            raise PolytopeError("vertices of different dimensions")
        object.__setattr__(self, "vertices", vs)

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def matrix(self) -> RationalMatrix:
        return RationalMatrix.from_rows(self.vertices, self.dimension)

    def homogenized(self) -> RationalMatrix:
        """``[1 V]``."""
        return RationalMatrix.from_rows([(1,) + p for p in self.vertices], self.dimension + 1)

    def affine_rank(self) -> int:
        return rank(self.homogenized()) - 1

    def barycenter(self) -> tuple:
        n = self.num_vertices
        return tuple(sum(col) / n for col in zip(*self.vertices))

    def __repr__(self):
        pts = ", ".join("(" + ", ".join(format_rational(x) for x in p) + ")" for p in self.vertices)
        return f"VRepresentation([{pts}])"

    def transform(self, a: RationalMatrix, b: Sequence) -> "VRepresentation":
        """Image under ``x -> a x + b``."""
        b = [to_rational(x) for x in b]
        return VRepresentation([tuple(y + c for y, c in zip(a.apply(p), b)) for p in self.vertices])


@dataclass(frozen=True)
class HRepresentation:
    """Facet inequalities ``W_j x <= w_j``."""

    normals: tuple
    rhs: tuple

    def __init__(self, normals: Iterable[Sequence], rhs: Iterable):
        W = tuple(tuple(to_rational(x) for x in r) for r in normals)
        w = tuple(to_rational(x) for x in rhs)
        if len(W) != len(w):
            raise PolytopeError("normals and right-hand sides differ in count")
        object.__setattr__(self, "normals", W)
        object.__setattr__(self, "rhs", w)

    @property
    def num_facets(self) -> int:
        return len(self.rhs)

    @classmethod
    def from_slack_factor(cls, factor: Sequence[Sequence]) -> "HRepresentation":
        """From the ``(d+1) x f`` matrix ``[w^T; -W^T]`` of the slack factorization."""
        rows = [[to_rational(x) for x in r] for r in factor]
        w = rows[0]
        W = [[-rows[i][j] for i in range(1, len(rows))] for j in range(len(w))]
        return cls(W, w)


class IncidenceStructure:
    """Vertex–facet incidences of a (possibly abstract) ``d``-polytope.

    ``incident[i][j]`` is True when vertex ``i`` lies on facet ``j``, i.e.
    when the slack is zero.
    """

    def __init__(self, d: int, incident: Sequence[Sequence[bool]], validate: bool = True):
        self.d = d
        self.incident = tuple(tuple(bool(x) for x in row) for row in incident)
        if len({len(r) for r in self.incident}) > 1:
            raise PolytopeError("ragged incidence matrix")
        if validate:
            self.validate()

    @classmethod
    def from_facets(cls, d: int, facets: Sequence[Iterable[int]], num_vertices: int,
                    base: int = 0, validate: bool = True) -> "IncidenceStructure":
        """From facet vertex lists; ``base=1`` for 1-based vertex labels."""
        fs = [set(v - base for v in f) for f in facets]
        for f in fs:
            if not all(0 <= v < num_vertices for v in f):
                raise PolytopeError("facet refers to an unknown vertex")
        inc = [[i in f for f in fs] for i in range(num_vertices)]
        return cls(d, inc, validate)

    @classmethod
    def from_support(cls, d: int, matrix: RationalMatrix, validate: bool = True) -> "IncidenceStructure":
        return cls(d, [[matrix[i, j] == 0 for j in range(matrix.cols)] for i in range(matrix.rows)], validate)

    @property
    def num_vertices(self) -> int:
        return len(self.incident)

    @property
    def num_facets(self) -> int:
        return len(self.incident[0]) if self.incident else 0

    @property
    def shape(self) -> tuple[int, int]:
        return (self.num_vertices, self.num_facets)

    def facet_vertices(self, j: int) -> frozenset:
        return frozenset(i for i in range(self.num_vertices) if self.incident[i][j])

    def vertex_facets(self, i: int) -> frozenset:
        return frozenset(j for j in range(self.num_facets) if self.incident[i][j])

    def facets(self) -> list[frozenset]:
        return [self.facet_vertices(j) for j in range(self.num_facets)]

    def nonincident_cells(self) -> list[tuple[int, int]]:
        """Cells with nonzero slack, row-major."""
        return [(i, j) for i in range(self.num_vertices) for j in range(self.num_facets)
                if not self.incident[i][j]]

    def transpose(self) -> "IncidenceStructure":
        """Incidence of the polar: facets become vertices."""
        return IncidenceStructure(
            self.d, [[self.incident[i][j] for i in range(self.num_vertices)] for j in range(self.num_facets)],
            validate=False,
        )

    def validate(self):
        d = self.d
        for j in range(self.num_facets):
            if len(self.facet_vertices(j)) < d:
                raise PolytopeError(f"facet {j} has fewer than {d} vertices")
        for i in range(self.num_vertices):
            if len(self.vertex_facets(i)) < d:
                raise PolytopeError(f"vertex {i} lies on fewer than {d} facets")
        fsets = self.facets()
        for a, b in itertools.permutations(range(len(fsets)), 2):
            if fsets[a] <= fsets[b]:
                raise PolytopeError(f"vertex set of facet {a} is contained in that of facet {b}")
        vsets = [self.vertex_facets(i) for i in range(self.num_vertices)]
        for a, b in itertools.permutations(range(len(vsets)), 2):
            if vsets[a] <= vsets[b]:
                raise PolytopeError(f"facet set of vertex {a} is contained in that of vertex {b}")

    def permuted(self, rows: Sequence[int], cols: Sequence[int]) -> "IncidenceStructure":
        return IncidenceStructure(self.d, [[self.incident[i][j] for j in cols] for i in rows], validate=False)

    def __eq__(self, other):
        if not isinstance(other, IncidenceStructure):
            return NotImplemented
        return self.d == other.d and self.incident == other.incident

    def __hash__(self):
        return hash((self.d, self.incident))

    def __repr__(self):
        return f"IncidenceStructure(d={self.d}, {self.num_vertices}x{self.num_facets})"


def _normalize_facet(a: list[Fraction], b: Fraction) -> tuple:
    lead = next(x for x in a if x)
    s = abs(lead)
    return tuple(x / s for x in a), b / s


def enumerate_facets(vrep: VRepresentation) -> tuple[HRepresentation, IncidenceStructure]:
    """Facets of ``conv(vertices)`` by brute force over ``d``-subsets.

    Each affinely independent ``d``-subset spans a hyperplane; supporting
    ones are kept, oriented so the polytope lies on the ``<=`` side and
    scaled so the first nonzero normal coordinate is ``+-1``.  Facets are
    ordered lexicographically by their sorted incident-vertex tuples.
    """
    d = vrep.dimension
    pts = vrep.vertices
    n = len(pts)
    if vrep.affine_rank() != d:
        raise PolytopeError("not full-dimensional")
    found: dict = {}
    for subset in itertools.combinations(range(n), d):
        # a . p - b = 0 on the subset  <=>  [p, -1] (a, b) = 0
        rows = [list(pts[i]) + [Fraction(-1)] for i in subset]
        ns = nullspace(RationalMatrix.from_rows(rows, d + 1))
        if len(ns) != 1:
            continue
        a, b = list(ns[0][:d]), ns[0][d]
        if not any(a):
            continue
        vals = [sum(x * y for x, y in zip(a, p)) - b for p in pts]
        if all(v <= 0 for v in vals):
            pass
        elif all(v >= 0 for v in vals):
            a = [-x for x in a]
            b = -b
            vals = [-v for v in vals]
        else:
            continue
        tight = tuple(i for i, v in enumerate(vals) if v == 0)
        if tight in found:
            continue
        found[tight] = _normalize_facet(a, b)
    order = sorted(found)
    hrep = HRepresentation([found[t][0] for t in order], [found[t][1] for t in order])
    inc = [[i in set(t) for t in order] for i in range(n)]
    incidence = IncidenceStructure(d, inc, validate=False)
    # every row must be a vertex: its tight normals span R^d and it is unique
    for i in range(n):
        for k in range(i):
            if pts[k] == pts[i]:
                raise PolytopeError(f"row {i} is not a vertex (duplicate of row {k})")
        tight = [hrep.normals[j] for j in range(hrep.num_facets) if inc[i][j]]
        if not tight or rank(RationalMatrix.from_rows(tight, d)) < d:
            raise PolytopeError(f"row {i} is not a vertex")
    return hrep, incidence


def slack_matrix(vrep: VRepresentation, hrep: HRepresentation) -> RationalMatrix:
    """``S = [1 V] [w^T; -W^T]``, entry ``(i, j) = w_j - W_j p_i``."""
    if any(len(r) != vrep.dimension for r in hrep.normals):
        raise PolytopeError("dimension mismatch between V- and H-representation")
    entries = []
    for i, p in enumerate(vrep.vertices):
        for j, (Wj, wj) in enumerate(zip(hrep.normals, hrep.rhs)):
            s = wj - sum(a * x for a, x in zip(Wj, p))
            if s < 0:
                raise PolytopeError(
                    f"H-representation does not contain V-representation (vertex {i}, facet {j})"
                )
            entries.append(s)
    return RationalMatrix(vrep.num_vertices, hrep.num_facets, entries)


def normalize_s1(vrep: VRepresentation, hrep: HRepresentation,
                 interior_point: Sequence | None = None) -> RationalMatrix:
    """Slack matrix after moving ``interior_point`` to 0 and scaling every ``w_j`` to 1.

    The interior point defaults to the vertex barycenter.
    """
    c = vrep.barycenter() if interior_point is None else tuple(to_rational(x) for x in interior_point)
    if len(c) != vrep.dimension:
        raise PolytopeError("interior point has the wrong dimension")
    gaps = [wj - sum(a * x for a, x in zip(Wj, c)) for Wj, wj in zip(hrep.normals, hrep.rhs)]
    if any(g <= 0 for g in gaps):
        raise PolytopeError("point not interior")
    return slack_matrix(vrep, hrep).scale_columns([1 / g for g in gaps])


@dataclass(frozen=True)
class SlackReport:
    support_ok: bool
    rank_ok: bool
    ones_ok: bool
    nonnegative: bool
    support_mismatches: tuple = ()

    @property
    def is_true_slack(self) -> bool:
        return self.support_ok and self.rank_ok and self.ones_ok and self.nonnegative

    @property
    def is_generalized_slack(self) -> bool:
        return self.support_ok and self.rank_ok and self.nonnegative


def check_slack_conditions(s: RationalMatrix, pattern: IncidenceStructure) -> SlackReport:
    """Support, rank ``d+1`` and all-ones-in-column-span tests."""
    if s.shape != pattern.shape:
        raise PolytopeError(f"matrix shape {s.shape} does not match incidence {pattern.shape}")
    mism = tuple(
        (i, j) for i in range(s.rows) for j in range(s.cols)
        if (s[i, j] == 0) != pattern.incident[i][j]
    )
    return SlackReport(
        support_ok=not mism,
        rank_ok=rank(s) == pattern.d + 1,
        ones_ok=in_column_span(s, [1] * s.rows),
        nonnegative=all(e >= 0 for e in s.entries),
        support_mismatches=mism,
    )


def row_scale_to_true(s: RationalMatrix) -> RationalMatrix:
    """Divide each row by its sum, so the columns sum to the all-ones vector."""
    sums = [sum(s.row(i)) for i in range(s.rows)]
    for i, t in enumerate(sums):
        if t == 0:
            raise PolytopeError(f"zero row {i}")
    return s.scale_rows([1 / t for t in sums])


def _closure(inc: IncidenceStructure, vertices: frozenset) -> frozenset:
    """Smallest face (intersection of facets) containing ``vertices``."""
    common = [j for j in range(inc.num_facets) if all(inc.incident[i][j] for i in vertices)]
    out = set(range(inc.num_vertices))
    for j in common:
        out &= inc.facet_vertices(j)
    return frozenset(out)


def flag_submatrix(inc: IncidenceStructure) -> tuple[list[int], list[int]]:
    """Vertices ``v_0..v_d`` and facets ``F_0..F_d`` of a flag.

    The submatrix with these rows and columns of any matrix supported on
    the non-incident cells is lower triangular with nonzero diagonal.
    Found by greedily descending the face lattice: at each step the facet
    (lowest index first) whose intersection with the current face is
    inclusion-maximal.
    """
    d = inc.d
    nf = inc.num_facets
    face = frozenset(range(inc.num_vertices))
    chain = [face]
    facets_desc = []  # F_d, F_{d-1}, .., F_1
    while len(face) > 1:
        cands = []
        for j in range(nf):
            fv = inc.facet_vertices(j)
            if face <= fv:
                continue
            sub = face & fv
            if sub:
                cands.append((j, sub))
        best = None
        for j, sub in cands:
            if any(sub < other for _, other in cands):
                continue
            best = (j, sub)
            break
        if best is None:
            raise PolytopeError("no flag found")
        facets_desc.append(best[0])
        face = best[1]
        chain.append(face)
    if len(facets_desc) != d or len(face) != 1:
        raise PolytopeError("no flag found")
    (v0,) = face
    f0 = next((j for j in range(nf) if not inc.incident[v0][j]), None)
    if f0 is None:
        raise PolytopeError("no flag found")
    facets = [f0] + facets_desc[::-1]  # F_0, F_1, .., F_d
    faces_up = chain[::-1]  # G_0 (vertex), G_1, .., G_d = P
    verts = [v0]
    for k in range(1, d + 1):
        choices = sorted(faces_up[k] - faces_up[k - 1])
        v = next((x for x in choices if not inc.incident[x][facets[k]]), None)
        if v is None:
            raise PolytopeError("no flag found")
        verts.append(v)
    if not _is_lower_triangular(inc, verts, facets):
        raise PolytopeError("no flag found")
    return verts, facets


def _is_lower_triangular(inc: IncidenceStructure, verts: Sequence[int], facets: Sequence[int]) -> bool:
    for a, v in enumerate(verts):
        for b, f in enumerate(facets):
            zero = inc.incident[v][f]
            if b == a and zero:
                return False
            if b > a and not zero:
                return False
    return True


def affine_coordinates(points: Sequence[Sequence]) -> list[tuple]:
    """Coordinates of ``points`` in an affine basis of their affine hull.

    The basis is ``points[0]`` plus the first differences that increase
    the rank, so the result is full-dimensional.
    """
    pts = [tuple(to_rational(x) for x in p) for p in points]
    origin = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, origin)) for p in pts]
    basis: list = []
    for df in diffs:
        if any(df) and rank(RationalMatrix.from_rows(basis + [df], len(df))) > len(basis):
            basis.append(df)
    if not basis:
        return [() for _ in pts]
    bt = RationalMatrix.from_rows(basis, len(basis[0])).transpose()
    return [solve_linear(bt, df) for df in diffs]


def realize_from_slack(s: RationalMatrix, pattern: IncidenceStructure | None = None) -> VRepresentation:
    """Polytope affinely equivalent to the one ``s`` is a slack matrix of.

    The rows of ``s`` are points in ``R^f`` spanning a ``d``-dimensional
    affine space; they are returned in affine coordinates of that space.
    """
    d = rank(s) - 1
    if pattern is None:
        pattern = IncidenceStructure.from_support(d, s, validate=False)
    report = check_slack_conditions(s, pattern)
    if not report.is_true_slack:
        raise PolytopeError(f"not a true slack matrix: {report}")
    rows = [s.row(i) for i in range(s.rows)]
    return VRepresentation(affine_coordinates(rows))


def affinely_equivalent(p: VRepresentation, q: VRepresentation) -> bool:
    """True iff some invertible affine map sends ``p_i`` to ``q_i`` for all i."""
    if p.num_vertices != q.num_vertices or p.dimension != q.dimension:
        return False
    d = p.dimension
    A = p.homogenized()
    if rank(A) != d + 1:
        return False
    cols = []
    for k in range(d):
        try:
            cols.append(solve_linear(A, [v[k] for v in q.vertices]))
        except ValueError:
            return False
    for k in range(d):
        if A.apply(cols[k]) != tuple(v[k] for v in q.vertices):
            return False
    lin = RationalMatrix.from_rows([c[1:] for c in cols], d)
    return rank(lin) == d


def same_up_to_scaling(a: RationalMatrix, b: RationalMatrix, rows: bool = True) -> bool:
    """True iff ``b = D_r a D_c`` for positive diagonal ``D_c`` (and ``D_r`` if ``rows``).

    Ratios are propagated through the bipartite support graph.
    """
    if a.shape != b.shape or a.support() != b.support():
        return False
    m, n = a.shape
    if not rows:
        for j in range(n):
            ratios = {b[i, j] / a[i, j] for i in range(m) if a[i, j]}
            if len(ratios) > 1 or any(r <= 0 for r in ratios):
                return False
        return True
    cells = sorted(a.support())
    by_row: dict = {}
    by_col: dict = {}
    for i, j in cells:
        by_row.setdefault(i, []).append(j)
        by_col.setdefault(j, []).append(i)
    rf: dict = {}
    cf: dict = {}
    for i0 in by_row:
        if i0 in rf:
            continue
        rf[i0] = Fraction(1)
        stack = [("r", i0)]
        while stack:
            kind, x = stack.pop()
            if kind == "r":
                for j in by_row[x]:
                    if j not in cf:
                        cf[j] = b[x, j] / (a[x, j] * rf[x])
                        stack.append(("c", j))
            else:
                for i in by_col[x]:
                    if i not in rf:
                        rf[i] = b[i, x] / (a[i, x] * cf[x])
                        stack.append(("r", i))
    if any(r <= 0 for r in rf.values()) or any(c <= 0 for c in cf.values()):
        return False
    return all(a[i, j] * rf[i] * cf[j] == b[i, j] for i, j in cells)


def match_up_to_permutation_and_scaling(a: RationalMatrix, b: RationalMatrix,
                                        scale_rows: bool = True) -> tuple | None:
    """Find row/column permutations taking ``a`` to ``b`` up to positive scaling.

    Returns ``(row_perm, col_perm)`` with ``b[i, j] ~ a[row_perm[i], col_perm[j]]``,
    or None.  Brute force over permutations consistent with the zero pattern.
    Columns may always be rescaled; rows only when ``scale_rows``.
    """
    if a.shape != b.shape:
        return None
    m, n = a.shape
    for rp in itertools.permutations(range(m)):
        for cp in _column_perms(a, b, rp):
            pa = a.submatrix(rp, cp)
            if same_up_to_scaling(pa, b, rows=scale_rows):
                return list(rp), list(cp)
    return None


def _column_perms(a: RationalMatrix, b: RationalMatrix, rp):
    m, n = a.shape
    sig_a = [tuple(a[rp[i], j] == 0 for i in range(m)) for j in range(n)]
    sig_b = [tuple(b[i, j] == 0 for i in range(m)) for j in range(n)]

    def rec(j, used, acc):
        if j == n:
            yield list(acc)
            return
        for k in range(n):
            if k not in used and sig_a[k] == sig_b[j]:
                used.add(k)
                acc.append(k)
                yield from rec(j + 1, used, acc)
                acc.pop()
                used.discard(k)

    yield from rec(0, set(), [])
