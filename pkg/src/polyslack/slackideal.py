"""Symbolic slack matrices, their minors, and (affine) slack ideals."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactmath import to_rational
from .groebner import Budget, IdealBasis, saturate_all_vars
from .polyring import Polynomial
from .polytope import IncidenceStructure, PolytopeError

PROJECTIVE = "projective"
AFFINE = "affine"


class SymbolicSlackMatrix:
    """Zero pattern of a slack matrix with one variable per nonzero cell.

    Variables are numbered ``1..t`` row-major over the non-incident cells.
    """

    def __init__(self, pattern: IncidenceStructure):
        self.pattern = pattern
        self.cells = pattern.nonincident_cells()
        self.var_of_cell = {c: k + 1 for k, c in enumerate(self.cells)}
        self.t = len(self.cells)

    @property
    def shape(self) -> tuple[int, int]:
        return self.pattern.shape

    def cell_of_var(self, k: int) -> tuple[int, int]:
        return self.cells[k - 1]

    def variable(self, i: int, j: int) -> int | None:
        return self.var_of_cell.get((i, j))

    def layout(self) -> list[list[int]]:
        """Variable index per cell, 0 for incident cells."""
        m, n = self.shape
        return [[self.var_of_cell.get((i, j), 0) for j in range(n)] for i in range(m)]

    def to_strings(self) -> list[list[str]]:
        return [[f"x{k}" if k else "0" for k in row] for row in self.layout()]

    def transpose(self) -> "SymbolicSlackMatrix":
        return SymbolicSlackMatrix(self.pattern.transpose())

    def transposition_renaming(self) -> dict[int, int]:
        """Map variable ``k`` here to the variable on the transposed cell of :meth:`transpose`."""
        other = self.transpose()
        return {k: other.var_of_cell[(j, i)] for (i, j), k in self.var_of_cell.items()}

    def submatrix_variables(self, rows: Iterable[int], cols: Iterable[int]) -> list[int]:
        rows, cols = set(rows), set(cols)
        return sorted(k for (i, j), k in self.var_of_cell.items() if i in rows and j in cols)

    def point_matrix(self, point: Sequence) -> list[list[Fraction]]:
        """``S_P(s)`` for a point ``s`` of length ``t``."""
        if len(point) != self.t:
            raise ValueError(f"point has length {len(point)}, expected {self.t}")
        out = [[Fraction(0)] * self.shape[1] for _ in range(self.shape[0])]
        for (i, j), k in self.var_of_cell.items():
            out[i][j] = to_rational(point[k - 1])
        return out

    def point_of_matrix(self, s) -> tuple:
        """Entry vector of a matrix on the nonzero cells, in variable order."""
        return tuple(to_rational(s[i, j] if not isinstance(s, list) else s[i][j]) for (i, j) in self.cells)

    def __repr__(self):
        return f"SymbolicSlackMatrix({self.shape[0]}x{self.shape[1]}, t={self.t})"


def symbolic_slack_matrix(inc: IncidenceStructure) -> SymbolicSlackMatrix:
    return SymbolicSlackMatrix(inc)


@dataclass(frozen=True)
class ScalingFix:
    """Variables set to 1 to mod out row/column scalings.

    ``mode`` is ``"projective"`` (rows and columns may be scaled) or
    ``"affine"`` (columns only).
    """

    mode: str
    fixed: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.mode not in (PROJECTIVE, AFFINE):
            raise ValueError(f"unknown fix mode {self.mode!r}")
        object.__setattr__(self, "fixed", frozenset(int(k) for k in self.fixed))

    def bindings(self) -> dict[int, int]:
        return {k: 1 for k in self.fixed}

    def to_json(self) -> dict:
        return {"mode": self.mode, "fixed": sorted(self.fixed)}

    @classmethod
    def from_json(cls, data: Mapping) -> "ScalingFix":
        return cls(data["mode"], frozenset(data.get("fixed", ())))

    def validate(self, m: SymbolicSlackMatrix):
        """Check that the fixed cells can be reached by scalings alone."""
        if not all(1 <= k <= m.t for k in self.fixed):
            raise ValueError("fixed variable out of range")
        cells = [m.cell_of_var(k) for k in sorted(self.fixed)]
        if self.mode == AFFINE:
            cols = [j for _, j in cells]
            if len(cols) != len(set(cols)):
                raise ValueError("affine fix must use at most one cell per column")
            return
        uf = _UnionFind(m.shape[0] + m.shape[1])
        for i, j in cells:
            if not uf.union(i, m.shape[0] + j):
                raise ValueError(f"fixed cells contain a cycle (at cell {(i, j)})")


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def fix_variables_by_scaling(inc: IncidenceStructure, mode: str = PROJECTIVE) -> ScalingFix:
    """Deterministic maximal set of cells that scalings can set to 1.

    Projective: a spanning forest of the bipartite row/column graph, built
    by scanning the nonzero cells row-major and keeping a cell whenever it
    joins two components.  Affine: the topmost nonzero cell of each column.
    """
    m = SymbolicSlackMatrix(inc)
    if mode == AFFINE:
        fixed = set()
        for j in range(inc.num_facets):
            i = next((i for i in range(inc.num_vertices) if not inc.incident[i][j]), None)
            if i is not None:
                fixed.add(m.var_of_cell[(i, j)])
        return ScalingFix(AFFINE, frozenset(fixed))
    if mode != PROJECTIVE:
        raise ValueError(f"unknown fix mode {mode!r}")
    uf = _UnionFind(inc.num_vertices + inc.num_facets)
    fixed = set()
    for (i, j), k in m.var_of_cell.items():
        if uf.union(i, inc.num_vertices + j):
            fixed.add(k)
    return ScalingFix(PROJECTIVE, frozenset(fixed))


# ---------------------------------------------------------------------------
# minors


def _has_perfect_matching(rows: Sequence[int], cols: Sequence[int], nonzero) -> bool:
    match: dict = {}

    def augment(r, seen):
        for c in cols:
            if c in seen or not nonzero(r, c):
                continue
            seen.add(c)
            if c not in match or augment(match[c], seen):
                match[c] = r
                return True
        return False

    return all(augment(r, set()) for r in rows)


def _entry_table(m: SymbolicSlackMatrix, bindings: Mapping[int, object], ones_column: bool,
                 nvars: int) -> list[list[Polynomial | None]]:
    rows, cols = m.shape
    table: list[list[Polynomial | None]] = []
    for i in range(rows):
        row: list[Polynomial | None] = []
        for j in range(cols):
            k = m.var_of_cell.get((i, j))
            if k is None:
                row.append(None)
            elif k in bindings:
                c = to_rational(bindings[k])
                row.append(Polynomial.constant(nvars, c) if c else None)
            else:
                row.append(Polynomial.var(nvars, k))
        if ones_column:
            row.append(Polynomial.constant(nvars, 1))
        table.append(row)
    return table


def symbolic_minors(m: SymbolicSlackMatrix, k: int, fix: ScalingFix | None = None,
                    extra_ones_column: bool = False,
                    bindings: Mapping[int, object] | None = None) -> IdealBasis:
    """All ``k x k`` minors of ``S_P(x)`` (optionally with a ones column appended).

    Fixed variables are replaced by 1 (and ``bindings`` by their values).
    Row/column subsets with no perfect matching on the support are skipped;
    the others are expanded by memoized Laplace expansion down the rows.
    Minors equal up to a scalar collapse to one generator.
    """
    subs: dict = {}
    if fix is not None:
        subs.update(fix.bindings())
    if bindings:
        subs.update({int(a): b for a, b in bindings.items()})
    nrows, ncols = m.shape
    ncols_total = ncols + (1 if extra_ones_column else 0)
    if k > min(nrows, ncols_total):
        raise ValueError(f"no {k}-minors in a {nrows}x{ncols_total} matrix")
    n = m.t
    table = _entry_table(m, subs, extra_ones_column, n)

    def nonzero(r, c):
        return table[r][c] is not None

    out = []
    for rows in itertools.combinations(range(nrows), k):
        memo: dict = {}
        for cols in itertools.combinations(range(ncols_total), k):
            if not _has_perfect_matching(rows, cols, nonzero):
                continue
            det = _laplace(table, rows, cols, 0, memo, n)
            if det:
                out.append(det)
    return IdealBasis(out, n)


def _laplace(table, rows, cols: tuple, depth: int, memo: dict, n: int) -> Polynomial:
    """Determinant of ``table[rows[depth:]][cols]``; ``memo`` is keyed by columns."""
    if depth == len(rows):
        return Polynomial.constant(n, 1)
    got = memo.get(cols)
    if got is not None:
        return got
    r = table[rows[depth]]
    acc = Polynomial.zero(n)
    for pos, c in enumerate(cols):
        e = r[c]
        if e is None:
            continue
        rest = cols[:pos] + cols[pos + 1:]
        sub = _laplace(table, rows, rest, depth + 1, memo, n)
        if not sub:
            continue
        term = e * sub
        acc = acc + term if pos % 2 == 0 else acc - term
    memo[cols] = acc
    return acc


def determinant_polynomial(m: SymbolicSlackMatrix, rows: Sequence[int], cols: Sequence[int],
                           extra_ones_column: bool = False) -> Polynomial:
    """One symbolic minor by full expansion (no pruning); used for checks."""
    table = _entry_table(m, {}, extra_ones_column, m.t)
    return _laplace(table, tuple(rows), tuple(cols), 0, {}, m.t)


# ---------------------------------------------------------------------------
# ideals


def _fixed_set(fix: ScalingFix | None, bindings: Mapping | None) -> set:
    s = set(fix.fixed) if fix is not None else set()
    if bindings:
        s |= {int(a) for a in bindings}
    return s


def slack_ideal(inc: IncidenceStructure, fix: ScalingFix | None = None,
                budget: Budget | None = None, bindings: Mapping[int, object] | None = None) -> IdealBasis:
    """``<(d+2)-minors of S_P(x)> : (prod x)^oo``; with a fix, the scaled slack ideal."""
    m = SymbolicSlackMatrix(inc)
    if fix is not None:
        fix.validate(m)
    k = inc.d + 2
    if k > min(m.shape):
        return IdealBasis([], m.t)
    minors = symbolic_minors(m, k, fix, False, bindings)
    free = set(range(1, m.t + 1)) - _fixed_set(fix, bindings)
    return saturate_all_vars(minors, budget, free)


def affine_slack_ideal(inc: IncidenceStructure, fix: ScalingFix | None = None,
                       budget: Budget | None = None,
                       bindings: Mapping[int, object] | None = None) -> IdealBasis:
    """Slack ideal of ``[S_P(x) 1]``; fixes must be affine (columns only)."""
    m = SymbolicSlackMatrix(inc)
    if fix is not None:
        if fix.mode != AFFINE:
            raise ValueError("the affine slack ideal admits only column scalings (affine fix)")
        fix.validate(m)
    k = inc.d + 2
    if k > min(m.shape[0], m.shape[1] + 1):
        return IdealBasis([], m.t)
    minors = symbolic_minors(m, k, fix, True, bindings)
    free = set(range(1, m.t + 1)) - _fixed_set(fix, bindings)
    return saturate_all_vars(minors, budget, free)


def evaluate_on_variety(ideal: IdealBasis, point: Sequence) -> bool:
    """True iff every generator vanishes at ``point``."""
    if len(point) != ideal.nvars:
        raise ValueError(f"point has length {len(point)}, expected {ideal.nvars}")
    pt = [to_rational(x) for x in point]
    return all(g.evaluate(pt) == 0 for g in ideal.generators)


def face_submatrix(inc: IncidenceStructure, facet: int) -> tuple[list[int], list[int]]:
    """Rows and columns of the slack submatrix of a facet ``F``.

    Rows are the vertices of ``F``; columns the other facets meeting ``F``
    in a ridge, i.e. in a face of ``d-1`` dimensions detected as an
    inclusion-maximal proper intersection.
    """
    fv = inc.facet_vertices(facet)
    inter = {}
    for j in range(inc.num_facets):
        if j != facet:
            s = fv & inc.facet_vertices(j)
            if s:
                inter[j] = s
    cols = [j for j, s in inter.items() if not any(s < t for t in inter.values())]
    if not cols:
        raise PolytopeError("facet has no ridges")
    return sorted(fv), sorted(cols)


def face_incidence(inc: IncidenceStructure, rows: Sequence[int], cols: Sequence[int]) -> IncidenceStructure:
    return IncidenceStructure(inc.d - 1, [[inc.incident[i][j] for j in cols] for i in rows], validate=False)


def face_variable_renaming(m: SymbolicSlackMatrix, rows: Sequence[int], cols: Sequence[int]) -> dict[int, int]:
    """Map variables of the face's own symbolic matrix to the ambient variables."""
    face = SymbolicSlackMatrix(face_incidence(m.pattern, rows, cols))
    return {k: m.var_of_cell[(rows[a], cols[b])] for (a, b), k in face.var_of_cell.items()}


def scale_to_fix(m: SymbolicSlackMatrix, fix: ScalingFix, point: Sequence) -> tuple[Fraction, ...]:
    """Rescale a point with nonzero entries so that every fixed cell becomes 1.

    Projective fixes use row and column scalings, propagated along the
    forest of fixed cells from each component root; affine fixes divide
    each column by its fixed entry.
    """
    fix.validate(m)
    s = m.point_matrix(point)
    rows, cols = m.shape
    if any(s[i][j] == 0 for i, j in m.cells):
        raise ValueError("point must be nonzero on the support")
    r = [Fraction(1)] * rows
    c = [Fraction(1)] * cols
    if fix.mode == AFFINE:
        for k in fix.fixed:
            i, j = m.cell_of_var(k)
            c[j] = 1 / s[i][j]
    else:
        adj: dict[int, list[tuple[int, int, int]]] = {}
        for k in fix.fixed:
            i, j = m.cell_of_var(k)
            adj.setdefault(i, []).append((rows + j, i, j))
            adj.setdefault(rows + j, []).append((i, i, j))
        seen: set[int] = set()
        for root in sorted(adj):
            if root in seen:
                continue
            seen.add(root)
            stack = [root]
            while stack:
                u = stack.pop()
                for w, i, j in adj[u]:
                    if w in seen:
                        continue
                    seen.add(w)
                    if w >= rows:
                        c[j] = 1 / (r[i] * s[i][j])
                    else:
                        r[i] = 1 / (s[i][j] * c[j])
                    stack.append(w)
    return tuple(r[i] * s[i][j] * c[j] for i, j in m.cells)
