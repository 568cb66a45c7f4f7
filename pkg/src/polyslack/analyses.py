"""Decision procedures built on slack ideals: realizability, rationality, prescribability.

Every verdict is one of a few fixed strings and carries a certificate that
can be re-checked independently (membership, substitution, positivity).
Budget exhaustion never produces a claim; it yields ``"inconclusive
(budget)"``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, lcm
from typing import Iterable, Mapping, Sequence

from .exactmath import format_rational, to_rational
from .groebner import (
    Budget,
    BudgetExhausted,
    GroebnerBasis,
    IdealBasis,
    buchberger,
    dimension,
    eliminate,
    max_independent_set_size,
)
from .polyring import GREVLEX, LEX, Polynomial
from .polytope import IncidenceStructure
from .slackideal import (
    ScalingFix,
    SymbolicSlackMatrix,
    face_incidence,
    face_variable_renaming,
    slack_ideal,
    symbolic_minors,
)

NON_REALIZABLE = "non-realizable (trivial ideal)"
NO_POSITIVE = "no positive realization (same-sign certificate)"
RATIONAL_WITNESS = "rational witness"
IRRATIONAL = "no rational realization (irrationality obstruction)"
DIMENSION_GAP = "dimension gap (non-prescribability evidence)"
NO_GAP = "no dimension gap"
INCONCLUSIVE = "inconclusive"
INCONCLUSIVE_BUDGET = "inconclusive (budget)"

CONCLUSIVE = {NON_REALIZABLE, NO_POSITIVE, RATIONAL_WITNESS, IRRATIONAL, DIMENSION_GAP, NO_GAP}


@dataclass
class AnalysisReport:
    verdict: str
    certificate: list = field(default_factory=list)
    budget_used: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def conclusive(self) -> bool:
        return self.verdict in CONCLUSIVE

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "certificate": [_jsonable(c) for c in self.certificate],
            "budget_used": dict(self.budget_used),
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }


def _jsonable(x):
    if isinstance(x, Polynomial):
        return str(x)
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return [_jsonable(v) for v in sorted(x)]
    if isinstance(x, IdealBasis):
        return x.strings()
    return x


def _budget(b: Budget | None) -> Budget:
    b = b if b is not None else Budget()
    b.start()
    return b


def _resolve_fix(inc: IncidenceStructure, fix) -> ScalingFix | None:
    if fix == "auto":
        from .slackideal import fix_variables_by_scaling
        return fix_variables_by_scaling(inc)
    return fix


def is_same_sign(p: Polynomial) -> bool:
    """At least two terms, all coefficients of one sign: no zero in the open orthant."""
    return len(p) >= 2 and len(p.coefficient_signs()) == 1


# ---------------------------------------------------------------------------
# realizability


def realizability_probe(inc: IncidenceStructure, fix: ScalingFix | str | None = None,
                        budget: Budget | None = None) -> AnalysisReport:
    """Look for algebraic obstructions to realizing ``inc`` as a polytope.

    Trivial slack ideal: no matrix of rank ``d+1`` has this support at all.
    A same-sign element: the slack variety misses the positive orthant.
    Scaling fixes do not change either conclusion.
    """
    b = _budget(budget)
    fix = _resolve_fix(inc, fix)
    try:
        ideal = slack_ideal(inc, fix, b)
        gb = ideal.groebner(GREVLEX, b)
    except BudgetExhausted:
        return AnalysisReport(INCONCLUSIVE_BUDGET, [], b.usage())
    details = {"fix": fix.to_json() if fix else None, "generators": len(ideal)}
    if gb.is_trivial():
        details["monomial_minor"] = _monomial_minor(inc, fix)
        return AnalysisReport(NON_REALIZABLE, [Polynomial.constant(ideal.nvars, 1)], b.usage(), details)
    for g in gb.elements:
        if is_same_sign(g):
            return AnalysisReport(NO_POSITIVE, [g], b.usage(), details)
    return AnalysisReport(INCONCLUSIVE, [], b.usage(), details)


def _monomial_minor(inc: IncidenceStructure, fix: ScalingFix | None) -> str | None:
    """A ``(d+2)``-minor that is a single term, if any (an independent triviality witness)."""
    m = SymbolicSlackMatrix(inc)
    for g in symbolic_minors(m, inc.d + 2, fix):
        if len(g) == 1:
            return str(g)
    return None


# ---------------------------------------------------------------------------
# rationality


def rational_roots(p: Polynomial, var: int) -> list[Fraction]:
    """Rational roots of a univariate polynomial in ``x_var`` (rational root theorem)."""
    coeffs = _univariate_coefficients(p, var)
    if not any(coeffs):
        return []
    roots = []
    low = 0
    while coeffs[low] == 0:
        low += 1
    if low:
        roots.append(Fraction(0))
    c = coeffs[low:]
    den = 1
    for q in c:
        den = lcm(den, q.denominator)
    ints = [int(q * den) for q in c]
    a0, an = ints[0], ints[-1]
    if len(ints) == 1:
        return roots
    for pn in _divisors(abs(a0)):
        for qd in _divisors(abs(an)):
            for s in (1, -1):
                r = Fraction(s * pn, qd)
                if r not in roots and _horner(ints, r) == 0:
                    roots.append(r)
    return sorted(roots)


def _univariate_coefficients(p: Polynomial, var: int) -> list[Fraction]:
    """Coefficients from the constant term upwards."""
    if not p.variables() <= {var}:
        raise ValueError("polynomial is not univariate in the given variable")
    deg = p.degree_in(var) if p else 0
    out = [Fraction(0)] * (deg + 1)
    for m, c in p.items():
        out[m[var - 1]] += c
    return out


def _horner(ints: list[int], r: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(ints):
        acc = acc * r + c
    return acc


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _univariate_elements(gens: Iterable[Polynomial]) -> list[tuple[int, Polynomial]]:
    out = []
    for g in gens:
        vs = g.variables()
        if len(vs) == 1:
            out.append((next(iter(vs)), g))
    return out


def _obstruction(var: int, p: Polynomial) -> bool:
    return not any(r > 0 for r in rational_roots(p, var))


def rationality_probe(inc: IncidenceStructure, fix: ScalingFix | str | None = None,
                      budget: Budget | None = None, per_variable_seconds: float | None = None,
                      witness_attempts: int = 12, ideal: IdealBasis | None = None) -> AnalysisReport:
    """Search for a positive rational point or a one-variable obstruction.

    A rational point of the positive slack variety is a rational
    realization (after scaling rows to sums of one).  Conversely, if some
    variable satisfies a polynomial with no positive rational root, no
    positive rational point exists.  Sound, not complete.
    """
    b = _budget(budget)
    fix = _resolve_fix(inc, fix)
    fixed = set(fix.fixed) if fix else set()
    try:
        if ideal is None:
            ideal = slack_ideal(inc, fix, b)
        gb = ideal.groebner(GREVLEX, b)
    except BudgetExhausted:
        return AnalysisReport(INCONCLUSIVE_BUDGET, [], b.usage())
    n = ideal.nvars
    free = [v for v in range(1, n + 1) if v not in fixed]
    details = {"fix": fix.to_json() if fix else None}
    if gb.is_trivial():
        return AnalysisReport(IRRATIONAL, [Polynomial.constant(n, 1)], b.usage(),
                              dict(details, reason="trivial ideal"))
    # cheapest evidence first: univariate elements already in the basis
    for v, p in _univariate_elements(gb.elements):
        if _obstruction(v, p):
            return AnalysisReport(IRRATIONAL, [p], b.usage(), dict(details, variable=v))
    try:
        point = _find_positive_rational_point(gb, free, fixed, n, b, witness_attempts)
    except BudgetExhausted:
        point = None
    if point is not None:
        return AnalysisReport(RATIONAL_WITNESS, [point], b.usage(), details)
    # eliminate down to each free variable in turn
    exhausted = False
    for v in free:
        sub = Budget(max_pairs=None, max_seconds=per_variable_seconds)
        others = [u for u in free if u != v]
        try:
            b.charge(0)
            e = eliminate(gb.ideal(), others, sub)
        except BudgetExhausted:
            exhausted = True
            continue
        for w, p in _univariate_elements(e.generators):
            if w == v and _obstruction(v, p):
                return AnalysisReport(IRRATIONAL, [p], b.usage(), dict(details, variable=v))
    return AnalysisReport(INCONCLUSIVE_BUDGET if exhausted else INCONCLUSIVE, [], b.usage(), details)


_SAMPLES = [Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2), Fraction(5), Fraction(3, 2),
            Fraction(7), Fraction(2, 3), Fraction(11), Fraction(5, 3), Fraction(13), Fraction(3, 4)]


def _find_positive_rational_point(gb: GroebnerBasis, free: Sequence[int], fixed: set, n: int,
                                  budget: Budget, attempts: int) -> tuple | None:
    """Specialize a maximal independent set to small positive rationals and solve.

    The specialized ideal is zero-dimensional; its lex basis is solved
    back-substitution style over rational roots only.
    """
    indep = _independent_set(gb, free)
    base = {v: Fraction(1) for v in fixed}
    for a in range(attempts):
        values = dict(base)
        for idx, v in enumerate(indep):
            values[v] = _SAMPLES[(a * 7 + idx * 3) % len(_SAMPLES)] if a else Fraction(1)
        spec = [g.substitute(values) for g in gb.elements]
        if any(g.is_constant() and g for g in spec):
            continue
        spec = [g for g in spec if g]
        point = _solve_zero_dimensional(spec, n, values, budget)
        if point is not None:
            full = tuple(point[v] for v in range(1, n + 1))
            if all(x > 0 for x in full) and all(g.evaluate(full) == 0 for g in gb.elements):
                return full
    return None


def _independent_set(gb: GroebnerBasis, free: Sequence[int]) -> list[int]:
    """A maximum set of free variables supporting no leading monomial (greedy over sizes)."""
    supports = []
    for m in gb.leading_monomials():
        supports.append({i + 1 for i, k in enumerate(m) if k})
    target = max_independent_set_size(gb.leading_monomials(), list(free))
    for combo in itertools.combinations(free, target):
        s = set(combo)
        if not any(sup <= s for sup in supports):
            return list(combo)
    return []


def _solve_zero_dimensional(polys: list[Polynomial], n: int, values: dict,
                            budget: Budget) -> dict | None:
    unknown = sorted(set(range(1, n + 1)) - set(values))
    if not polys:
        return values if not unknown else None
    lex = buchberger(IdealBasis(polys, n), LEX, budget)
    if lex.is_trivial():
        return None
    return _back_substitute(list(lex.elements), unknown[::-1], dict(values))


def _back_substitute(gens, order_vars, values):
    """Solve a lex basis from the smallest variable upwards, branching over rational roots."""
    if not order_vars:
        return values if all(g.substitute(values).is_zero() for g in gens) else None
    v = order_vars[0]
    rest = order_vars[1:]
    cur = [g.substitute(values) for g in gens]
    if any(g.is_constant() and g for g in cur):
        return None
    uni = [g for g in cur if g and g.variables() == {v}]
    if not uni:
        return None  # not zero-dimensional in this variable
    p = min(uni, key=lambda g: g.degree_in(v))
    for r in rational_roots(p, v):
        if r <= 0:
            continue
        if all(g.substitute({v: r}).is_zero() for g in uni):
            out = _back_substitute(gens, rest, {**values, v: r})
            if out is not None:
                return out
    return None


# ---------------------------------------------------------------------------
# prescribability


def prescribability_probe(inc_p: IncidenceStructure, face_rows: Sequence[int], face_cols: Sequence[int],
                          face_dim: int | None = None, budget: Budget | None = None,
                          substitutions: Mapping[int, object] | None = None,
                          chain_eliminate: Iterable[int] = (),
                          compute_dimensions: bool = True) -> AnalysisReport:
    """Compare the face ideal with the elimination ideal of the slack ideal of P.

    ``face_rows``/``face_cols`` select the face submatrix of ``S_P(x)``; its
    variables are ``x_F``.  Reports ``I_F <= I_P cap Q[x_F]`` and both
    dimensions.  A strictly smaller elimination ideal dimension is
    evidence, not proof, of non-prescribability.  With ``substitutions``
    the slack ideal of the substituted matrix is computed, ``chain_eliminate``
    variables are eliminated, and triviality is reported.
    """
    b = _budget(budget)
    m = SymbolicSlackMatrix(inc_p)
    n = m.t
    face_vars = m.submatrix_variables(face_rows, face_cols)
    others = sorted(set(range(1, n + 1)) - set(face_vars))
    fdim = inc_p.d - 1 if face_dim is None else face_dim
    inc_f = face_incidence(inc_p, face_rows, face_cols)
    inc_f = IncidenceStructure(fdim, inc_f.incident, validate=False)
    rename = face_variable_renaming(m, face_rows, face_cols)
    details: dict = {"face_variables": face_vars, "eliminated": others}
    certificate: list = []
    verdict = INCONCLUSIVE
    try:
        if compute_dimensions:
            i_p = slack_ideal(inc_p, None, b)
            e = eliminate(i_p, others, b)
            i_f_local = slack_ideal(inc_f, None, b)
            i_f = IdealBasis([g.rename(rename, n) for g in i_f_local.generators], n)
            e_gb = e.groebner(GREVLEX, b)
            contained = all(e_gb.contains(g) for g in i_f.generators)
            dim_e = dimension(e, b, face_vars)
            dim_f = dimension(i_f, b, face_vars)
            details.update(containment=contained, dim_elimination=dim_e, dim_face=dim_f,
                           elimination_generators=len(e))
            certificate += [{"dim_elimination": dim_e, "dim_face": dim_f, "containment": contained}]
            if dim_e is not None and dim_f is not None and dim_e < dim_f:
                verdict = DIMENSION_GAP
                details["caveat"] = ("a gap between ideals does not by itself separate the positive "
                                     "parts; see the substitution chain")
            elif dim_e == dim_f:
                verdict = NO_GAP
        if substitutions:
            subs = {int(k): to_rational(v) for k, v in substitutions.items()}
            chain = slack_ideal(inc_p, None, b, bindings=subs)
            chain_e = eliminate(chain, list(chain_eliminate), b) if chain_eliminate else chain
            trivial = chain_e.groebner(GREVLEX, b).is_trivial()
            # control: the same values on the face alone must stay consistent
            back = {amb: loc for loc, amb in rename.items()}
            face_subs = {back[v]: q for v, q in subs.items() if v in back}
            face_chain = slack_ideal(inc_f, None, b, bindings=face_subs)
            face_trivial = face_chain.groebner(GREVLEX, b).is_trivial()
            details.update(chain_substitutions=subs, chain_eliminated=sorted(chain_eliminate),
                           chain_trivial=trivial, face_chain_trivial=face_trivial)
            certificate.append({"chain_trivial": trivial, "face_chain_trivial": face_trivial})
    except BudgetExhausted:
        return AnalysisReport(INCONCLUSIVE_BUDGET, certificate, b.usage(), details)
    return AnalysisReport(verdict, certificate, b.usage(), details)


def positivity_samples(p: Polynomial, count: int, rng) -> bool:
    """Evaluate at random strictly positive rationals; True if always strictly nonzero with the sign of p."""
    sign = next(iter(p.coefficient_signs()))
    for _ in range(count):
        pt = [Fraction(rng.randint(1, 50), rng.randint(1, 50)) for _ in range(p.nvars)]
        val = p.evaluate(pt)
        if val == 0 or (val > 0) != (sign > 0):
            return False
    return True
