"""Gröbner bases over Q: reduction, Buchberger, elimination, saturation.

Internally every monomial is a packed integer *key*.  For a block order
whose blocks are graded reverse lexicographic, the fields of the key hold
the prefix sums ``e1, e1+e2, ..`` of each block's exponents (block degree in
the top field).  Integer comparison of keys is then exactly the monomial
order, and multiplication of monomials is integer addition.  Exponent
vectors for divisibility tests are recovered by one shift and subtraction.

Coefficients are Python integers; polynomials are kept primitive and
reduction is fraction-free.  Reduced bases are returned monic over Q.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .polyring import GREVLEX, MonomialOrder, Polynomial

FIELD_BITS = 16


class BudgetExhausted(RuntimeError):
    """A computation hit its pair or wall-clock budget before finishing."""


@dataclass
class Budget:
    """Shared resource budget; ``None`` means unlimited.

    One budget may be threaded through many Gröbner computations; the
    counters accumulate and the clock starts at the first charge.
    """

    max_pairs: int | None = None
    max_seconds: float | None = None
    pairs_used: int = 0
    started: float | None = field(default=None, repr=False)

    def start(self):
        if self.started is None:
            self.started = time.monotonic()

    @property
    def seconds_used(self) -> float:
        return 0.0 if self.started is None else time.monotonic() - self.started

    def charge(self, pairs: int = 1):
        self.start()
        self.pairs_used += pairs
        if self.max_pairs is not None and self.pairs_used > self.max_pairs:
            raise BudgetExhausted(f"pair budget of {self.max_pairs} exhausted")
        if self.max_seconds is not None and self.seconds_used > self.max_seconds:
            raise BudgetExhausted(f"time budget of {self.max_seconds}s exhausted")

    def poll(self):
        """Check the clock only; called from inside long reductions."""
        if self.max_seconds is not None and self.seconds_used > self.max_seconds:
            raise BudgetExhausted(f"time budget of {self.max_seconds}s exhausted")

    def usage(self) -> dict:
        return {"pairs": self.pairs_used, "seconds": round(self.seconds_used, 3)}



def _budget(b: Budget | None) -> Budget:
    return b if b is not None else Budget()


class _TrivialIdeal(Exception):
    pass


class _Packing:
    """Key layout for one ring and one block-grevlex order."""

    def __init__(self, nvars: int, order: MonomialOrder, bits: int = FIELD_BITS):
        self.nvars = nvars
        self.order = order
        self.bits = B = bits
        self.fmask = (1 << B) - 1
        self.limit = 1 << (B - 1)
        blocks = order.blocks(nvars)
        self.blocks = blocks
        pos = [0] * nvars
        shiftmask = 0
        self.block_spans = []  # (base field, size), most significant block first
        spans = []
        p = 0
        for blk in reversed(blocks):
            for k, v in enumerate(blk):
                pos[v] = p + k
                if k:
                    shiftmask |= self.fmask << (B * (p + k))
            spans.append((p, len(blk)))
            p += len(blk)
        self.block_spans = list(reversed(spans))
        self.pos = pos
        self.shiftmask = shiftmask
        self.guard = sum(1 << (B * f + B - 1) for f in range(nvars))
        self.low = sum(1 << (B * f) for f in range(nvars))
        self.full = (1 << (B * nvars)) - 1
        self.tops = [B * (base + size - 1) for base, size in self.block_spans]
        self._block_masks = [
            (((1 << (B * size)) - 1) << (B * base), sum(1 << (B * j) for j in range(size)))
            for base, size in self.block_spans
        ]

    def key(self, m: Sequence[int]) -> int:
        B = self.bits
        k = 0
        for base_size, blk in zip(self.block_spans, self.blocks):
            base = base_size[0]
            s = 0
            for j, v in enumerate(blk):
                s += m[v]
                k |= s << (B * (base + j))
            if s >= self.limit:
                raise OverflowError("monomial degree exceeds packing capacity")
        return k

    def expo(self, k: int) -> int:
        return k - ((k << self.bits) & self.shiftmask)

    def key_of_expo(self, e: int) -> int:
        k = 0
        for mask, rep in self._block_masks:
            k |= ((e & mask) * rep) & mask
        return k

    def exponents(self, k: int) -> tuple:
        e = self.expo(k)
        B, fm = self.bits, self.fmask
        return tuple((e >> (B * self.pos[v])) & fm for v in range(self.nvars))

    def degree(self, k: int) -> int:
        fm = self.fmask
        return sum((k >> t) & fm for t in self.tops)

    def lcm_expo(self, a: int, b: int) -> int:
        G = self.guard
        t = ((a | G) - b) & G
        m = t - (t >> (self.bits - 1))
        return (a & m) | (b & ~m & self.full)

    def min_expo(self, a: int, b: int) -> int:
        G = self.guard
        t = ((a | G) - b) & G
        m = t - (t >> (self.bits - 1))
        return (b & m) | (a & ~m & self.full)

    def nonzero(self, e: int) -> int:
        return ((e | self.guard) - self.low) & self.guard

    def divides(self, a: int, b: int) -> bool:
        return not ((b - a) & self.guard)

    def var_mask(self, variables: Iterable[int]) -> int:
        """Expo-field mask (all bits) of 0-based variables."""
        m = 0
        for v in variables:
            m |= self.fmask << (self.bits * self.pos[v])
        return m

    # conversion

    def from_poly(self, p: Polynomial) -> list[tuple[int, int]]:
        coeffs = [Fraction(c) for _, c in p.items()]
        den = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        terms = [(self.key(m), int(Fraction(c) * den)) for m, c in p.items()]
        terms.sort(reverse=True)
        return _primitive(terms)

    def to_poly(self, terms: list[tuple[int, int]], monic: bool = False) -> Polynomial:
        if monic and terms:
            lc = terms[0][1]
            items = [(self.exponents(k), Fraction(c, lc)) for k, c in terms]
        else:
            items = [(self.exponents(k), c) for k, c in terms]
        return Polynomial(self.nvars, items)


def _primitive(terms: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Divide out integer content, making the leading coefficient positive."""
    if not terms:
        return terms
    g = 0
    for _, c in terms:
        g = gcd(g, c)
        if g == 1:
            break
    if terms[0][1] < 0:
        g = -g
    if g == 1:
        return terms
    return [(k, c // g) for k, c in terms]


class _Elt:
    __slots__ = ("lm", "lme", "lmnz", "lc", "tail", "sugar", "terms")

    def __init__(self, pk: _Packing, terms: list[tuple[int, int]], sugar: int):
        self.terms = terms
        self.lm, self.lc = terms[0]
        self.lme = pk.expo(self.lm)
        self.lmnz = pk.nonzero(self.lme)
        self.tail = terms[1:]
        self.sugar = sugar


class _Engine:
    def __init__(self, pk: _Packing, budget: Budget | None):
        self.pk = pk
        self.budget = _budget(budget)

    def reduce(self, terms: Iterable[tuple[int, int]], reducers: list[_Elt],
               full: bool = True, budget: Budget | None = None,
               scaled: bool = True) -> tuple[list[tuple[int, int]], int]:
        """Fraction-free normal form.

        Returns ``(r, s)`` with ``s*f - r`` in the ideal of the reducers; ``r``
        is sorted decreasingly and not primitive-normalized.  With
        ``scaled=False`` the caller only wants ``r`` up to a constant, so
        integer content is divided out along the way and ``s`` is meaningless.
        """
        pk = self.pk
        B = pk.bits
        sh = pk.shiftmask
        G = pk.guard
        lmes = [g.lme for g in reducers]
        f = {}
        for k, c in terms:
            f[k] = c
        heap = [-k for k in f]
        heapq.heapify(heap)
        heappop, heappush = heapq.heappop, heapq.heappush
        rem: list = []
        scale = 1
        nred = len(reducers)
        steps = 0
        rescales = 0
        while heap:
            k = -heappop(heap)
            c = f.pop(k, None)
            if c is None:
                continue
            e = k - ((k << B) & sh)
            idx = 0
            while idx < nred:
                if not (e - lmes[idx]) & G:
                    break
                idx += 1
            else:
                rem.append((k, c))
                if not full:
                    while heap:
                        k2 = -heappop(heap)
                        c2 = f.pop(k2, None)
                        if c2 is not None:
                            rem.append((k2, c2))
                    break
                continue
            steps += 1
            if budget is not None and not steps & 255:
                budget.poll()
            g = reducers[idx]
            lc = g.lc
            if lc == 1:
                b = c
            else:
                q, r = divmod(c, lc)
                if not r:
                    b = q
                else:
                    d = gcd(c, lc)
                    a = lc // d
                    b = c // d
                    for kk in f:
                        f[kk] *= a
                    rem = [(kk, cc * a) for kk, cc in rem]
                    scale *= a
                    rescales += 1
                    if budget is not None:
                        budget.poll()
                    if not scaled and not rescales & 31:
                        cont = 0
                        for cc in f.values():
                            cont = gcd(cont, cc)
                            if cont == 1:
                                break
                        for _, cc in rem:
                            if cont == 1:
                                break
                            cont = gcd(cont, cc)
                        cont = gcd(cont, b)
                        if cont > 1:
                            for kk in f:
                                f[kk] //= cont
                            rem = [(kk, cc // cont) for kk, cc in rem]
                            b //= cont
            shift = k - g.lm
            for tk, tc in g.tail:
                nk = tk + shift
                v = f.get(nk)
                if v is None:
                    f[nk] = -b * tc
                    heappush(heap, -nk)
                else:
                    v -= b * tc
                    if v:
                        f[nk] = v
                    else:
                        del f[nk]
        return rem, scale

    def spoly(self, a: _Elt, b: _Elt, lcm_key: int) -> list[tuple[int, int]]:
        ca, cb = a.lc, b.lc
        d = gcd(ca, cb)
        fa, fb = cb // d, ca // d
        sa = lcm_key - a.lm
        sb = lcm_key - b.lm
        out: dict = {}
        for k, c in a.tail:
            out[k + sa] = c * fa
        for k, c in b.tail:
            nk = k + sb
            v = out.get(nk, 0) - c * fb
            if v:
                out[nk] = v
            else:
                out.pop(nk, None)
        return sorted(out.items(), reverse=True)

    def buchberger(self, polys: list[list[tuple[int, int]]],
                   abort_mask: int | None = None) -> list[_Elt]:
        """Buchberger with Gebauer–Möller criteria and the sugar strategy.

        Returns the reduced basis (primitive integer elements, sorted by
        increasing leading monomial).  With ``abort_mask`` a monomial in the
        masked variables appearing in the basis raises :class:`_TrivialIdeal`
        (used when saturating by those variables).
        """
        pk = self.pk
        budget = self.budget
        elts: list[_Elt] = []
        active: list[int] = []
        pairs: list = []

        inputs = [p for p in polys if p]
        inputs.sort(key=lambda t: t[0][0])
        for p in inputs:
            if p[0][0] == 0:
                raise _TrivialIdeal
        for p in inputs:
            budget.charge(0)
            h, _ = self.reduce(p, [elts[i] for i in active], budget=budget, scaled=False)
            if not h:
                continue
            h = _primitive(h)
            sugar = max(pk.degree(k) for k, _ in p)
            self._update(elts, active, pairs, h, sugar, abort_mask)

        heapq.heapify(pairs)
        while pairs:
            sugar, lk, i, j = heapq.heappop(pairs)
            budget.charge(1)
            s = self.spoly(elts[i], elts[j], lk)
            if not s:
                continue
            h, _ = self.reduce(s, [elts[a] for a in active], budget=budget, scaled=False)
            if not h:
                continue
            h = _primitive(h)
            self._update(elts, active, pairs, h, sugar, abort_mask)
            heapq.heapify(pairs)
        return self._reduced([elts[i] for i in active])

    def _update(self, elts, active, pairs, h, sugar, abort_mask):
        pk = self.pk
        if h[0][0] == 0:
            raise _TrivialIdeal
        if abort_mask is not None and len(h) == 1 and not (pk.nonzero(pk.expo(h[0][0])) & ~abort_mask):
            raise _TrivialIdeal
        he = _Elt(pk, h, sugar)
        hi = len(elts)
        elts.append(he)
        hl = he.lme
        hnz = he.lmnz

        # new pairs {h, g}: Gebauer–Möller chain criterion on the new lcms
        cand = []
        for gi in active:
            g = elts[gi]
            le = pk.lcm_expo(hl, g.lme)
            cand.append((gi, le, not (hnz & g.lmnz)))
        keep = []
        n = len(cand)
        for a in range(n):
            gi, le, disjoint = cand[a]
            if disjoint:
                keep.append(cand[a])
                continue
            dominated = False
            for b in range(a + 1, n):
                if pk.divides(cand[b][1], le):
                    dominated = True
                    break
            if not dominated:
                for kb in keep:
                    if pk.divides(kb[1], le):
                        dominated = True
                        break
            if not dominated:
                keep.append(cand[a])
        newpairs = []
        for gi, le, disjoint in keep:
            if disjoint:
                continue
            g = elts[gi]
            lk = pk.key_of_expo(le)
            dl = pk.degree(lk)
            s = max(sugar - pk.degree(he.lm), g.sugar - pk.degree(g.lm)) + dl
            newpairs.append((s, lk, min(gi, hi), max(gi, hi)))

        # old pairs killed when lm(h) divides their lcm strictly
        survivors = []
        lcm_cache: dict = {}
        for pr in pairs:
            _, lk, i, j = pr
            le = pk.expo(lk)
            if pk.divides(hl, le):
                li = lcm_cache.get(i)
                if li is None:
                    li = lcm_cache[i] = pk.lcm_expo(hl, elts[i].lme)
                lj = lcm_cache.get(j)
                if lj is None:
                    lj = lcm_cache[j] = pk.lcm_expo(hl, elts[j].lme)
                if li != le and lj != le:
                    continue
            survivors.append(pr)
        pairs[:] = survivors + newpairs
        active[:] = [gi for gi in active if not pk.divides(hl, elts[gi].lme)] + [hi]

    def _reduced(self, basis: list[_Elt]) -> list[_Elt]:
        pk = self.pk
        basis = sorted(basis, key=lambda g: g.lm)
        minimal = []
        for g in basis:
            if not any(pk.divides(o.lme, g.lme) for o in minimal):
                minimal.append(g)
        out = []
        for idx, g in enumerate(minimal):
            others = minimal[:idx] + minimal[idx + 1:]
            tail, scale = self.reduce(g.tail, others)
            terms = _primitive([(g.lm, g.lc * scale)] + tail)
            out.append(_Elt(pk, terms, g.sugar))
        return out


# ---------------------------------------------------------------------------
# public containers


class IdealBasis:
    """Generators of an ideal of Q[x1..xt].

    Generators are stored content-free with positive leading coefficient
    (grevlex); zeros and duplicates are dropped, order is preserved.
    """

    def __init__(self, generators: Iterable[Polynomial], nvars: int | None = None):
        gens = []
        seen = set()
        for g in generators:
            if nvars is None:
                nvars = g.nvars
            if g.nvars != nvars:
                raise ValueError("generators from different rings")
            if g.is_zero():
                continue
            g = g.content_free()
            if g in seen:
                continue
            seen.add(g)
            gens.append(g)
        if nvars is None:
            raise ValueError("cannot infer the ring of an empty generator list")
        self.nvars = nvars
        self.generators = tuple(gens)
        self._gb: dict = {}

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def variables(self) -> frozenset:
        out = set()
        for g in self.generators:
            out |= g.variables()
        return frozenset(out)

    def groebner(self, order: MonomialOrder = GREVLEX, budget: Budget | None = None) -> "GroebnerBasis":
        gb = self._gb.get(order)
        if gb is None:
            gb = self._gb[order] = buchberger(self, order, budget)
        return gb

    def remember(self, gb: "GroebnerBasis"):
        self._gb[gb.order] = gb

    def strings(self) -> list[str]:
        return [g.to_string() for g in self.generators]

    def __repr__(self):
        return f"IdealBasis({self.nvars} vars, {self.strings()})"


class GroebnerBasis:
    """Reduced Gröbner basis: monic elements sorted by increasing leading monomial."""

    def __init__(self, order: MonomialOrder, elements: Sequence[Polynomial], nvars: int):
        self.order = order
        self.elements = tuple(elements)
        self.nvars = nvars

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (self.order, self.nvars, self.elements) == (other.order, other.nvars, other.elements)

    def __hash__(self):
        return hash((self.order, self.nvars, self.elements))

    def is_trivial(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.elements]

    def reduce(self, f: Polynomial) -> Polynomial:
        return reduce(f, self.elements, self.order)

    def contains(self, f: Polynomial) -> bool:
        return ideal_membership(f, self)

    def ideal(self) -> IdealBasis:
        ib = IdealBasis(self.elements, self.nvars)
        ib.remember(self)
        return ib

    def strings(self) -> list[str]:
        return [g.to_string(self.order) for g in self.elements]

    def __repr__(self):
        return f"GroebnerBasis({self.order.kind}, {self.strings()})"


def _as_ideal(i) -> IdealBasis:
    if isinstance(i, IdealBasis):
        return i
    if isinstance(i, GroebnerBasis):
        return i.ideal()
    i = list(i)
    return IdealBasis(i)


def _elts_to_gb(pk: _Packing, elts: list[_Elt]) -> GroebnerBasis:
    return GroebnerBasis(pk.order, [pk.to_poly(g.terms, monic=True) for g in elts], pk.nvars)


def _unit_gb(order: MonomialOrder, nvars: int) -> GroebnerBasis:
    return GroebnerBasis(order, [Polynomial.constant(nvars, 1)], nvars)


# ---------------------------------------------------------------------------
# operations


def reduce(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Normal form of ``f`` by multivariate division.

    ``f - r`` lies in the ideal of ``basis`` and no monomial of ``r`` is
    divisible by a leading monomial of ``basis``.  Divisors are tried in
    the given order.
    """
    pk = _Packing(f.nvars, order)
    eng = _Engine(pk, None)
    reducers = []
    for g in basis:
        if g.nvars != f.nvars:
            raise ValueError("ring mismatch")
        if g:
            reducers.append(_Elt(pk, pk.from_poly(g), 0))
    if f.is_zero():
        return f
    fterms = pk.from_poly(f)
    # from_poly divided out content c; restore it afterwards
    ratio = _ratio(f, pk.to_poly(fterms))
    r, scale = eng.reduce(fterms, reducers)
    return pk.to_poly(r).scale(ratio / scale)


def _ratio(p: Polynomial, q: Polynomial) -> Fraction:
    m = next(iter(q.monomials()))
    return p.coefficient(m) / q.coefficient(m)


def buchberger(ideal, order: MonomialOrder = GREVLEX, budget: Budget | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of ``ideal`` with respect to ``order``.

    Raises :class:`BudgetExhausted` instead of returning a partial basis.
    """
    ideal = _as_ideal(ideal)
    pk = _Packing(ideal.nvars, order)
    eng = _Engine(pk, budget)
    try:
        elts = eng.buchberger([pk.from_poly(g) for g in ideal.generators])
    except _TrivialIdeal:
        return _unit_gb(order, ideal.nvars)
    return _elts_to_gb(pk, elts)


def ideal_membership(f: Polynomial, gb: GroebnerBasis) -> bool:
    if f.is_zero():
        return True
    if gb.is_trivial():
        return True
    pk = _Packing(gb.nvars, gb.order)
    eng = _Engine(pk, None)
    reducers = [_Elt(pk, pk.from_poly(g), 0) for g in gb.elements]
    r, _ = eng.reduce(pk.from_poly(f), reducers)
    return not r


def same_ideal(a, b, budget: Budget | None = None) -> bool:
    """Ideal equality by mutual membership."""
    a, b = _as_ideal(a), _as_ideal(b)
    ga, gb = a.groebner(budget=budget), b.groebner(budget=budget)
    return all(ga.contains(g) for g in b.generators) and all(gb.contains(g) for g in a.generators)


def eliminate(ideal, front: Iterable[int], budget: Budget | None = None) -> IdealBasis:
    """Generators of the intersection with the subring free of ``front``.

    Uses a two-block order with ``front`` first; the basis elements free of
    front variables form a grevlex Gröbner basis of the elimination ideal,
    which is attached to the result.
    """
    ideal = _as_ideal(ideal)
    front = frozenset(front)
    if not front:
        return ideal
    order = MonomialOrder("elim", front)
    gb = buchberger(ideal, order, budget)
    keep = [g for g in gb.elements if not (g.variables() & front)]
    out = IdealBasis(keep, ideal.nvars)
    # the kept elements are a Gröbner basis for grevlex on the back block,
    # hence for grevlex on the whole ring too (front variables do not occur)
    out.remember(GroebnerBasis(GREVLEX, sorted(
        (g.monic(GREVLEX) for g in keep), key=lambda p: GREVLEX.sort_key(ideal.nvars)(p.leading_monomial())
    ), ideal.nvars))
    return out


def saturate(ideal, f: Polynomial, budget: Budget | None = None) -> IdealBasis:
    """``I : f^oo`` via ``I + <y f - 1>`` with the fresh variable ``y`` eliminated."""
    ideal = _as_ideal(ideal)
    if f.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    n = ideal.nvars
    y = n + 1
    ext = [g.extend(n + 1) for g in ideal.generators]
    ext.append(Polynomial.var(n + 1, y) * f.extend(n + 1) - 1)
    elim = eliminate(IdealBasis(ext, n + 1), {y}, budget)
    return IdealBasis([g.restrict(n) for g in elim.generators], n)


def _strip(pk: _Packing, terms: list[tuple[int, int]], mask: int) -> list[tuple[int, int]]:
    """Divide by the largest monomial in the ``mask`` variables dividing every term."""
    e = pk.expo(terms[0][0])
    for k, _ in terms[1:]:
        e = pk.min_expo(e, pk.expo(k))
        if not (e & mask):
            return terms
    e &= mask
    if not e:
        return terms
    d = pk.key_of_expo(e)
    return [(k - d, c) for k, c in terms]


def _saturate_homogeneous(gens: list[Polynomial], nvars: int, sat_vars: list[int],
                          budget: Budget, last: int) -> tuple[GroebnerBasis | None, MonomialOrder]:
    """Saturate a homogeneous ideal by every variable in ``sat_vars``.

    Per variable ``v`` the basis for grevlex with ``v`` smallest is
    computed and every element divided by its monomial content in the
    saturating variables (Bayer's criterion makes the ``v`` part exact).
    Stops once a full sweep leaves the ideal unchanged.  Returns the reduced
    basis for grevlex with ``x_last`` smallest (``None`` if trivial).
    """
    if not sat_vars:
        order = _last_order(nvars, last)
        gb = buchberger(IdealBasis(gens, nvars), order, budget)
        return (None if gb.is_trivial() else gb), order
    cycle = list(sat_vars)
    clean: set = set()
    step = 0
    current: list[Polynomial] = list(gens)
    final_order = final_elts = final_pk = None
    while True:
        v = cycle[step % len(cycle)]
        step += 1
        order = _last_order(nvars, v)
        pk = _Packing(nvars, order)
        eng = _Engine(pk, budget)
        mask = pk.var_mask(u - 1 for u in sat_vars)
        try:
            elts = eng.buchberger([pk.from_poly(g) for g in current], abort_mask=mask)
        except _TrivialIdeal:
            return None, order
        changed = False
        stripped = []
        for g in elts:
            t = _strip(pk, g.terms, mask)
            if t is not g.terms:
                changed = True
                if len(t) == 1:
                    return None, order
            stripped.append(t)
        current = [pk.to_poly(t) for t in stripped]
        if changed:
            clean = set()
        else:
            clean.add(v)
            final_order, final_elts, final_pk = order, elts, pk
            if len(clean) == len(cycle):
                break
    if final_order.precedence[-1] != last:
        order = _last_order(nvars, last)
        gb = buchberger(IdealBasis(current, nvars), order, budget)
        return (None if gb.is_trivial() else gb), order
    return _elts_to_gb(final_pk, final_elts), final_order


def _last_order(nvars: int, last: int) -> MonomialOrder:
    prec = [v for v in range(1, nvars + 1) if v != last] + [last]
    return MonomialOrder("grevlex", precedence=tuple(prec))


def saturate_all_vars(ideal, budget: Budget | None = None,
                      variables: Iterable[int] | None = None) -> IdealBasis:
    """``I : (x_1 x_2 ... x_t)^oo`` (or by the product of ``variables``).

    Inhomogeneous input is homogenized with a fresh variable ``h`` which is
    saturated as well and finally set to 1.  The result carries its reduced
    grevlex Gröbner basis.
    """
    ideal = _as_ideal(ideal)
    budget = _budget(budget)
    n = ideal.nvars
    if variables is None:
        sat = sorted(ideal.variables())
    else:
        sat = sorted(set(variables) & ideal.variables())
    if not ideal.generators:
        return ideal
    # monomial factors in saturating variables can be dropped up front
    ideal = IdealBasis([_divide_out_monomial(g, sat) for g in ideal.generators], n)
    if any(g.is_constant() for g in ideal.generators):
        return _unit_ideal(n)
    if ideal.is_homogeneous():
        gb, _ = _saturate_homogeneous(list(ideal.generators), n, sat, budget, last=n)
        if gb is None:
            return _unit_ideal(n)
        if _is_standard_grevlex(gb.order, n):
            std = GroebnerBasis(GREVLEX, gb.elements, n)
        else:
            std = buchberger(gb.ideal(), GREVLEX, budget)
        return std.ideal()
    h = n + 1
    hom = [g.extend(n + 1).homogenize(h) for g in ideal.generators]
    gb, _ = _saturate_homogeneous(hom, n + 1, sat + [h], budget, last=h)
    if gb is None:
        return _unit_ideal(n)
    return dehomogenize(gb, h, budget)


def _divide_out_monomial(p: Polynomial, variables: Sequence[int]) -> Polynomial:
    mins = {v: min(m[v - 1] for m in p.monomials()) for v in variables}
    if not any(mins.values()):
        return p
    return Polynomial(p.nvars, {
        tuple(k - mins.get(i + 1, 0) for i, k in enumerate(m)): c for m, c in p.items()
    })


def _is_standard_grevlex(order: MonomialOrder, n: int) -> bool:
    return order.kind == "grevlex" and (order.precedence is None or list(order.precedence) == list(range(1, n + 1)))


def dehomogenize(gb: GroebnerBasis, h: int, budget: Budget | None = None) -> IdealBasis:
    """Set the last variable ``x_h`` to 1 and drop it from the ring.

    If ``gb`` is a grevlex basis with ``x_h`` smallest, the image is a grevlex
    basis of the dehomogenized ideal; it is re-reduced here.
    """
    n = gb.nvars - 1
    if h != gb.nvars:
        raise ValueError("the homogenizing variable must be the last one")
    polys = [g.substitute({h: 1}).restrict(n) for g in gb.elements]
    ib = IdealBasis(polys, n)
    std = buchberger(ib, GREVLEX, budget)
    return std.ideal()


def _unit_ideal(n: int) -> IdealBasis:
    ib = IdealBasis([Polynomial.constant(n, 1)], n)
    ib.remember(_unit_gb(GREVLEX, n))
    return ib


def is_trivial(ideal, budget: Budget | None = None) -> bool:
    """True iff the reduced Gröbner basis is ``{1}``."""
    ideal = _as_ideal(ideal)
    return ideal.groebner(GREVLEX, budget).is_trivial()


def dimension(ideal, budget: Budget | None = None, variables: Iterable[int] | None = None) -> int | None:
    """Krull dimension of the quotient ring; ``None`` for the unit ideal.

    ``variables`` restricts the ring to a subset (the ideal must be
    generated inside it), e.g. for elimination ideals.  The dimension is the
    largest set of variables containing the support of no leading monomial.
    """
    ideal = _as_ideal(ideal)
    gb = ideal.groebner(GREVLEX, budget)
    if gb.is_trivial():
        return None
    if variables is None:
        vs = list(range(1, ideal.nvars + 1))
    else:
        vs = sorted(set(variables))
        if not ideal.variables() <= set(vs):
            raise ValueError("ideal is not generated in the given subring")
    return max_independent_set_size(gb.leading_monomials(), vs)


def max_independent_set_size(leading: Iterable[Sequence[int]], variables: Sequence[int]) -> int:
    """Largest ``S`` among ``variables`` (1-based) with no leading monomial supported in S."""
    index = {v: i for i, v in enumerate(variables)}
    supports = set()
    for m in leading:
        s = 0
        for i, k in enumerate(m):
            if k:
                if i + 1 not in index:
                    s = None
                    break
                s |= 1 << index[i + 1]
        if s is not None:
            supports.add(s)
    if 0 in supports:
        return -1
    sets = sorted(supports, key=lambda s: bin(s).count("1"))
    minimal = []
    for s in sets:
        if not any((m & s) == m for m in minimal):
            minimal.append(s)
    best = [len(variables)]

    # minimal hitting set of the supports = complement of a maximal independent set
    def search(remaining: list[int], chosen: int, size: int):
        if size >= best[0]:
            return
        open_sets = [s for s in remaining if not (s & chosen)]
        if not open_sets:
            best[0] = size
            return
        if size + 1 >= best[0]:
            return
        pivot = min(open_sets, key=lambda s: bin(s).count("1"))
        bits = pivot
        while bits:
            low = bits & -bits
            bits ^= low
            search(open_sets, chosen | low, size + 1)

    search(minimal, 0, 0)
    return len(variables) - best[0]


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Classical S-polynomial over Q (used by tests and certificates)."""
    mf, mg = f.leading_monomial(order), g.leading_monomial(order)
    l = tuple(max(a, b) for a, b in zip(mf, mg))
    uf = tuple(a - b for a, b in zip(l, mf))
    ug = tuple(a - b for a, b in zip(l, mg))
    return f.mul_monomial(uf, 1 / f.leading_coefficient(order)) - g.mul_monomial(
        ug, 1 / g.leading_coefficient(order)
    )

