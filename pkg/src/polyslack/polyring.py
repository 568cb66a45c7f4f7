"""Sparse multivariate polynomials with rational coefficients.

Variables are ``x1 .. xt`` (1-based in every public interface).  A monomial
is a dense exponent tuple of length ``t``; :func:`monomial` builds one from
a ``{variable: exponent}`` map.  Polynomials are immutable and hashable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from operator import add
from typing import Iterable, Mapping, Sequence

from .exactmath import format_rational, to_rational

Monomial = tuple


def monomial(nvars: int, exponents: Mapping[int, int] | None = None) -> Monomial:
    """Exponent tuple from a 1-based ``{variable: exponent}`` map."""
    e = [0] * nvars
    for v, k in (exponents or {}).items():
        if not 1 <= v <= nvars:
            raise ValueError(f"variable x{v} outside ring of {nvars} variables")
        if k < 0:
            raise ValueError("negative exponent")
        e[v - 1] = k
    return tuple(e)


def monomial_map(m: Monomial) -> dict[int, int]:
    return {i + 1: k for i, k in enumerate(m) if k}


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given as a sequence of grevlex blocks.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"elim"``.  ``precedence`` lists
    1-based variables from largest to smallest (default ``x1 > x2 > ...``).
    For ``"elim"`` the variables in ``front`` form the first block, so any
    monomial involving them beats every monomial free of them; both blocks
    are graded reverse lexicographic internally.
    """

    kind: str = "grevlex"
    front: frozenset = frozenset()
    precedence: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        object.__setattr__(self, "front", frozenset(self.front))
        if self.precedence is not None:
            object.__setattr__(self, "precedence", tuple(self.precedence))

    def blocks(self, nvars: int) -> list[list[int]]:
        """0-based variable blocks, most significant first."""
        if self.precedence is None:
            prec = list(range(nvars))
        else:
            prec = [v - 1 for v in self.precedence]
            if sorted(prec) != list(range(nvars)):
                raise ValueError("precedence must be a permutation of the ring variables")
        if self.kind == "grevlex":
            return [prec]
        if self.kind == "lex":
            return [[v] for v in prec]
        fr = {v - 1 for v in self.front}
        if not all(0 <= v < nvars for v in fr):
            raise ValueError("elimination block outside the ring")
        first = [v for v in prec if v in fr]
        rest = [v for v in prec if v not in fr]
        return [b for b in (first, rest) if b]

    def sort_key(self, nvars: int):
        """Key function on exponent tuples; larger key = larger monomial."""
        blocks = self.blocks(nvars)

        def key(m):
            out = []
            for blk in blocks:
                s = 0
                part = []
                for v in blk:
                    s += m[v]
                    part.append(s)
                out.extend(reversed(part))
            return tuple(out)

        return key

    def descriptor(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "elim":
            d["front"] = sorted(self.front)
        if self.precedence is not None:
            d["precedence"] = list(self.precedence)
        return d

    @classmethod
    def from_descriptor(cls, d: Mapping) -> "MonomialOrder":
        return cls(d["kind"], frozenset(d.get("front", ())), d.get("precedence"))

    @classmethod
    def named(cls, name: str) -> "MonomialOrder":
        return cls(name)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(front: Iterable[int]) -> MonomialOrder:
    return MonomialOrder("elim", frozenset(front))


def compare_monomials(order: MonomialOrder, a: Monomial, b: Monomial) -> int:
    """-1, 0 or 1 as ``a`` is smaller than, equal to or larger than ``b``."""
    if len(a) != len(b):
        raise ValueError("monomials from different rings")
    key = order.sort_key(len(a))
    ka, kb = key(a), key(b)
    return (ka > kb) - (ka < kb)


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Polynomial:
    """Element of Q[x1..xt], stored as ``{exponent tuple: coefficient}``.

    Coefficients are ints or Fractions; zero coefficients are never stored.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping | Iterable = ()):
        self.nvars = nvars
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        t = {}
        for m, c in items:
            m = tuple(m)
            if len(m) != nvars:
                raise ValueError(f"monomial {m} does not belong to a ring of {nvars} variables")
            c = t.get(m, 0) + c
            if c:
                t[m] = c
            else:
                t.pop(m, None)
        self._terms = {m: _clean(c) for m, c in t.items()}
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        c = _clean(to_rational(c))
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Polynomial":
        """The variable ``x_i`` (1-based)."""
        return cls._raw(nvars, {monomial(nvars, {i: 1}): 1})

    @classmethod
    def from_monomial(cls, m: Monomial, c=1) -> "Polynomial":
        c = _clean(to_rational(c))
        return cls._raw(len(m), {tuple(m): c} if c else {})

    # basic queries

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, m: Monomial) -> Fraction:
        return Fraction(self._terms.get(tuple(m), 0))

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self) -> Fraction:
        return Fraction(self._terms.get((0,) * self.nvars, 0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i - 1] for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def variables(self) -> frozenset:
        """1-based indices of the variables that occur."""
        seen = set()
        for m in self._terms:
            seen.update(i + 1 for i, k in enumerate(m) if k)
        return frozenset(seen)

    def terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[Fraction, Monomial]]:
        """``(coefficient, monomial)`` pairs, strictly decreasing in ``order``."""
        key = order.sort_key(self.nvars)
        return [(Fraction(self._terms[m]), m) for m in sorted(self._terms, key=key, reverse=True)]

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=order.sort_key(self.nvars))

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> Fraction:
        return Fraction(self._terms[self.leading_monomial(order)])

    # arithmetic

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError(
                f"ring mismatch: {self.nvars} vs {other.nvars} variables"
            )

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self._terms)
        for m, c in other._terms.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = s
            else:
                del t[m]
        return Polynomial._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = _clean(to_rational(c))
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {m: _clean(k * c) for m, k in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        t: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(map(add, m1, m2))
                s = t.get(m, 0) + c1 * c2
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Polynomial._raw(self.nvars, {m: _clean(c) for m, c in t.items()})

    __rmul__ = __mul__

    def mul_monomial(self, m: Monomial, c=1) -> "Polynomial":
        return Polynomial._raw(
            self.nvars, {tuple(map(add, k, m)): _clean(v * c) for k, v in self._terms.items()}
        )

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # evaluation and substitution

    def evaluate(self, point: Sequence) -> Fraction:
        """Value at a full point ``(x1, .., xt)``."""
        if len(point) != self.nvars:
            raise ValueError("point has the wrong length")
        pt = [to_rational(v) for v in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            v = Fraction(c)
            for i, k in enumerate(m):
                if k:
                    v *= pt[i] ** k
            total += v
        return total

    def substitute(self, bindings: Mapping) -> "Polynomial":
        """Replace variables by rationals, other variables or polynomials.

        ``bindings`` maps 1-based variable indices to a rational, to
        ``("x", j)`` (rename to ``x_j``) or to a :class:`Polynomial` of the
        same ring.  The result stays in the same ring.
        """
        if not bindings:
            return self
        vals = {}
        for v, b in bindings.items():
            if not 1 <= v <= self.nvars:
                raise ValueError(f"x{v} is not a ring variable")
            if isinstance(b, Polynomial):
                self._check(b)
                vals[v - 1] = b
            elif isinstance(b, tuple) and len(b) == 2 and b[0] == "x":
                vals[v - 1] = Polynomial.var(self.nvars, b[1])
            else:
                vals[v - 1] = to_rational(b)
        const_only = all(not isinstance(b, Polynomial) for b in vals.values())
        if const_only:
            t: dict = {}
            for m, c in self._terms.items():
                m2 = list(m)
                for i, b in vals.items():
                    k = m2[i]
                    if k:
                        c = c * b ** k
                        m2[i] = 0
                if c:
                    m2 = tuple(m2)
                    s = t.get(m2, 0) + c
                    if s:
                        t[m2] = s
                    else:
                        del t[m2]
            return Polynomial._raw(self.nvars, {m: _clean(c) for m, c in t.items()})
        out = Polynomial.zero(self.nvars)
        pow_cache: dict = {}
        for m, c in self._terms.items():
            m2 = list(m)
            term = None
            for i, b in vals.items():
                k = m2[i]
                if not k:
                    continue
                m2[i] = 0
                if isinstance(b, Polynomial):
                    pk = pow_cache.get((i, k))
                    if pk is None:
                        pk = pow_cache[(i, k)] = b ** k
                    term = pk if term is None else term * pk
                else:
                    c = c * b ** k
            piece = Polynomial.from_monomial(tuple(m2), c)
            out = out + (piece if term is None else piece * term)
        return out

    def rename(self, perm: Mapping[int, int], nvars: int | None = None) -> "Polynomial":
        """Rename variables ``x_i -> x_perm[i]``, possibly into another ring."""
        n = self.nvars if nvars is None else nvars
        t = {}
        for m, c in self._terms.items():
            e = [0] * n
            for i, k in enumerate(m):
                if k:
                    e[perm.get(i + 1, i + 1) - 1] += k
            t[tuple(e)] = c
        return Polynomial._raw(n, t)

    def extend(self, nvars: int) -> "Polynomial":
        """Embed into a ring with more variables (appended at the end)."""
        pad = (0,) * (nvars - self.nvars)
        return Polynomial._raw(nvars, {m + pad: c for m, c in self._terms.items()})

    def restrict(self, nvars: int) -> "Polynomial":
        """Drop trailing variables, which must not occur."""
        t = {}
        for m, c in self._terms.items():
            if any(m[nvars:]):
                raise ValueError("polynomial uses a variable being dropped")
            t[m[:nvars]] = c
        return Polynomial._raw(nvars, t)

    def homogenize(self, h: int) -> "Polynomial":
        """Homogenize with the (1-based) variable ``x_h``, which must not occur."""
        d = self.total_degree()
        t = {}
        for m, c in self._terms.items():
            if m[h - 1]:
                raise ValueError("homogenizing variable already occurs")
            e = list(m)
            e[h - 1] = d - sum(m)
            t[tuple(e)] = c
        return Polynomial._raw(self.nvars, t)

    # normalization

    def content_free(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        """Primitive integer multiple with positive leading coefficient."""
        if not self._terms:
            return self
        coeffs = [Fraction(c) for c in self._terms.values()]
        den = lcm(*(c.denominator for c in coeffs))
        ints = [int(c * den) for c in coeffs]
        g = 0
        for i in ints:
            g = gcd(g, i)
        if self.leading_coefficient(order) < 0:
            g = -g
        return Polynomial._raw(
            self.nvars, {m: int(Fraction(c) * den) // g for m, c in self._terms.items()}
        )

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def coefficient_signs(self) -> set:
        return {1 if c > 0 else -1 for c in self._terms.values()}

    # text form

    def to_string(self, order: MonomialOrder = GREVLEX) -> str:
        return format_polynomial(self, order)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {format_polynomial(self)!r})"


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, k in enumerate(m):
        if k == 1:
            parts.append(f"x{i + 1}")
        elif k:
            parts.append(f"x{i + 1}^{k}")
    return "*".join(parts)


def format_polynomial(p: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Canonical text: terms in decreasing order, e.g. ``x3^2*x7 - 1/2*x1``."""
    if p.is_zero():
        return "0"
    out = []
    for idx, (c, m) in enumerate(p.terms(order)):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(m)
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+)(?:\^(?P<exp>\d+))?)|(?P<op>[-+*]))")


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    """Parse the canonical text grammar (``x`` variables, ``p/q`` coefficients)."""
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 10]!r}")
        pos = mt.end()
        if mt.group("num"):
            tokens.append(("num", mt.group("num")))
        elif mt.group("var"):
            tokens.append(("var", int(mt.group("idx")), int(mt.group("exp") or 1)))
        else:
            tokens.append(("op", mt.group("op")))
    if not tokens:
        raise ValueError("empty polynomial")
    terms = []
    i = 0
    sign = 1
    expect_term = True
    while i < len(tokens):
        tok = tokens[i]
        if expect_term:
            if tok == ("op", "-"):
                sign = -sign
                i += 1
                continue
            if tok == ("op", "+"):
                i += 1
                continue
            coeff = Fraction(1)
            exps: dict = {}
            need_factor = True
            while i < len(tokens):
                tok = tokens[i]
                if need_factor:
                    if tok[0] == "num":
                        coeff *= to_rational(tok[1])
                    elif tok[0] == "var":
                        if not 1 <= tok[1] <= nvars:
                            raise ValueError(f"x{tok[1]} outside ring of {nvars} variables")
                        exps[tok[1]] = exps.get(tok[1], 0) + tok[2]
                    else:
                        raise ValueError("operator where a factor was expected")
                    need_factor = False
                    i += 1
                elif tok == ("op", "*"):
                    need_factor = True
                    i += 1
                else:
                    break
            if need_factor:
                raise ValueError("dangling '*'")
            terms.append((monomial(nvars, exps), sign * coeff))
            sign = 1
            expect_term = False
        else:
            if tok[0] != "op" or tok[1] == "*":
                raise ValueError("expected '+' or '-' between terms")
            sign = -1 if tok[1] == "-" else 1
            expect_term = True
            i += 1
    if expect_term:
        raise ValueError("polynomial ends with an operator")
    if len(terms) == 1 and terms[0][1] == 0:
        return Polynomial.zero(nvars)
    return Polynomial(nvars, terms)


def variables(nvars: int) -> list[Polynomial]:
    """``[x1, .., xt]`` as polynomials."""
    return [Polynomial.var(nvars, i) for i in range(1, nvars + 1)]
