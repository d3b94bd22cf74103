"""Groebner bases and the ideal operations built on them.

The engine is Buchberger's algorithm with the Gebauer-Moeller pair criteria
and the sugar selection strategy.  Reduction works directly on the packed
monomial ints of :mod:`veronese_lab.polynomials`, keeping pending terms in a
dict plus a max-heap, so each reduction step only touches the terms it
creates.
"""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass, field as dc_field
from itertools import combinations_with_replacement

from .errors import (
    DegreeCapExceeded,
    ExtensionCapExceeded,
    FieldMismatch,
    NotZeroDimensional,
    OrderUnsuitable,
    PointNotOnScheme,
    RingMismatch,
    ShapePositionFailure,
)
from .fields import (
    Field,
    PrimeField,
    UniPoly,
    extension_field,
    factor_univariate,
    lcm_list,
    make_rng,
    roots_in_extension,
)
from . import linalg
from .polynomials import GREVLEX, MonomialOrder, MultiPoly, PolyRing, evaluate, substitute

DEFAULT_DEGREE_CAP = 12
DEFAULT_EXT_CAP = 24
DEFAULT_RETRIES = 16
_SATURATION_SEED = 0x5A7


# ---------------------------------------------------------------------------
# reduction kernel


class _Reducers:
    """Monic polynomials indexed for fast lead-term division."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.guard = ring._guard
        self.lms: list[int] = []
        self.tails: list[list] = []
        self.active: list[int] = []
        self._cache: dict[int, int] = {}

    def add(self, lm, tail) -> int:
        self.lms.append(lm)
        self.tails.append(tail)
        return len(self.lms) - 1

    def divisor(self, m: int):
        idx = self._cache.get(m)
        if idx is not None:
            return idx
        g = self.guard
        mg = m | g
        lms = self.lms
        for i in self.active:
            if (mg - lms[i]) & g == g:
                self._cache[m] = i
                return i
        return None


def _reduce(K: Field, terms: dict, red: _Reducers) -> dict:
    """Full reduction of ``terms`` (not modified) modulo the active reducers."""
    acc = dict(terms)
    heap = [-m for m in acc]
    heapq.heapify(heap)
    out = {}
    pop, push = heapq.heappop, heapq.heappush
    lms, tails = red.lms, red.tails
    if isinstance(K, PrimeField):
        p = K.p
        while heap:
            m = -pop(heap)
            c = acc.pop(m) % p
            if not c:
                continue
            idx = red.divisor(m)
            if idx is None:
                out[m] = c
                continue
            q = m - lms[idx]
            for mg, cg in tails[idx]:
                mm = mg + q
                if mm in acc:
                    acc[mm] -= c * cg
                else:
                    acc[mm] = -c * cg
                    push(heap, -mm)
        return out
    while heap:
        m = -pop(heap)
        c = acc.pop(m)
        if K.is_zero(c):
            continue
        idx = red.divisor(m)
        if idx is None:
            out[m] = c
            continue
        q = m - lms[idx]
        for mg, cg in tails[idx]:
            mm = mg + q
            prod = K.mul(c, cg)
            if mm in acc:
                acc[mm] = K.sub(acc[mm], prod)
            else:
                acc[mm] = K.neg(prod)
                push(heap, -mm)
    return out


def _monic_split(K: Field, terms: dict):
    lm = max(terms)
    inv = K.inv(terms[lm])
    if isinstance(K, PrimeField):
        p = K.p
        tail = [(m, c * inv % p) for m, c in terms.items() if m != lm]
    else:
        tail = [(m, K.mul(c, inv)) for m, c in terms.items() if m != lm]
    return lm, tail


# ---------------------------------------------------------------------------
# Buchberger


def _buchberger(ring: PolyRing, polys) -> list[dict]:
    K = ring.field
    red = _Reducers(ring)
    sugar: list[int] = []
    exps: list[tuple] = []
    pairs: list[tuple] = []
    deg = ring.mono_degree
    encode = ring.encode
    guard = ring._guard

    def divides(a, b):
        return ((b | guard) - a) & guard == guard

    def insert(terms, sug):
        lm, tail = _monic_split(K, terms)
        if lm == 0:
            return True
        h = red.add(lm, tail)
        sugar.append(sug)
        e_h = ring.decode(lm)
        exps.append(e_h)
        # Gebauer-Moeller update
        cand = []
        for i in red.active:
            e_i = exps[i]
            lcm = encode(tuple(map(max, e_i, e_h)))
            coprime = not any(a and b for a, b in zip(e_i, e_h))
            cand.append((i, lcm, coprime))
        kept = []
        for idx, (i, lcm, coprime) in enumerate(cand):
            if coprime:
                kept.append((i, lcm, coprime))
                continue
            if any(divides(l2, lcm) for _, l2, _ in cand[idx + 1:]):
                continue
            if any(divides(l2, lcm) for _, l2, _ in kept):
                continue
            kept.append((i, lcm, coprime))
        survivors = []
        for entry in pairs:
            _, lcm, i, j = entry
            if (
                divides(lm, lcm)
                and encode(tuple(map(max, exps[i], e_h))) != lcm
                and encode(tuple(map(max, exps[j], e_h))) != lcm
            ):
                continue
            survivors.append(entry)
        for i, lcm, coprime in kept:
            if coprime:
                continue
            d = deg(lcm)
            s = max(sugar[i] + d - deg(red.lms[i]), sug + d - deg(lm))
            survivors.append((s, lcm, i, h))
        heapq.heapify(survivors)
        pairs[:] = survivors
        red.active = [i for i in red.active if not divides(lm, red.lms[i])] + [h]
        return False

    gens = [dict(f) for f in polys if f]
    gens.sort(key=lambda t: (deg(max(t)), max(t)))
    for terms in gens:
        sug = max(deg(m) for m in terms)
        r = _reduce(K, terms, red)
        if r and insert(r, sug):
            return [{0: K.one}]

    while pairs:
        sug, lcm, i, j = heapq.heappop(pairs)
        qi = lcm - red.lms[i]
        qj = lcm - red.lms[j]
        spoly: dict = {}
        for m, c in red.tails[i]:
            spoly[m + qi] = c
        for m, c in red.tails[j]:
            mm = m + qj
            spoly[mm] = K.sub(spoly[mm], c) if mm in spoly else K.neg(c)
        spoly = {m: c for m, c in spoly.items() if not K.is_zero(c)}
        if not spoly:
            continue
        r = _reduce(K, spoly, red)
        if r and insert(r, sug):
            return [{0: K.one}]

    # interreduce the minimal basis
    out = []
    active = sorted(red.active, key=lambda i: red.lms[i])
    for i in active:
        others = [j for j in active if j != i]
        saved = red.active
        red.active = others
        red._cache = {}
        tail = _reduce(K, dict(red.tails[i]), red)
        red.active = saved
        tail[red.lms[i]] = K.one
        out.append(tail)
    return out


def groebner_basis(polys, order=None) -> list[MultiPoly]:
    """Reduced Groebner basis of the ideal generated by ``polys``."""
    polys = list(polys)
    if not polys:
        return []
    ring = polys[0].ring
    if order is not None:
        ring = ring.with_order(order)
    terms = [ring.convert(f).terms for f in polys]
    basis = _buchberger(ring, terms)
    out = [ring._make(t) for t in basis]
    out.sort(key=lambda f: f.lm())
    return out


def normal_form(f: MultiPoly, basis) -> MultiPoly:
    """Remainder of f under full reduction by ``basis`` (any generating set;
    canonical when it is a Groebner basis in f's ring order)."""
    basis = [g for g in basis if g]
    ring = f.ring
    K = ring.field
    red = _Reducers(ring)
    for g in basis:
        g = ring.convert(g)
        lm, tail = _monic_split(K, g.terms)
        red.active.append(red.add(lm, tail))
    return ring._make(_reduce(K, f.terms, red))


def s_polynomial(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    R = f.ring
    K = R.field
    lcm = R.mono_lcm(f.lm(), g.lm())
    a = f.mul_monomial(lcm - f.lm(), K.inv(f.lc()))
    b = g.mul_monomial(lcm - g.lm(), K.inv(g.lc()))
    return a - b


def is_groebner(basis) -> bool:
    """Every S-polynomial of ``basis`` reduces to zero."""
    basis = [g for g in basis if g]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if normal_form(s_polynomial(basis[i], basis[j]), basis):
                return False
    return True


def is_reduced_basis(basis) -> bool:
    for i, g in enumerate(basis):
        if g.lc() != g.ring.field.one:
            return False
        others = [h.lm() for j, h in enumerate(basis) if j != i]
        for m in g.terms:
            if any(g.ring.divides(o, m) for o in others):
                return False
    return True


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """A finitely generated ideal with per-order cached Groebner bases.

    The cache is filled under a lock so concurrent callers trigger at most
    one computation per order and all see the same basis.
    """

    def __init__(self, generators, ring: PolyRing | None = None):
        gens = [g for g in generators if g]
        if ring is None:
            if not gens:
                raise ValueError("an ideal without generators needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring.names != ring.names or g.ring.field != ring.field:
                raise RingMismatch(f"generator in {g.ring}, ideal in {ring}")
        self.ring = ring
        self.generators = tuple(ring.convert(g) for g in gens)
        self.homogeneous = all(g.is_homogeneous() for g in self.generators)
        self._gb: dict[MonomialOrder, tuple] = {}
        self._lock = threading.Lock()
        self._hilbert = None

    @classmethod
    def parse(cls, ring: PolyRing, lines) -> "Ideal":
        if isinstance(lines, str):
            lines = lines.splitlines()
        return cls([ring.parse(s) for s in lines if s.strip()], ring)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators[:6])
        more = ", ..." if len(self.generators) > 6 else ""
        return f"Ideal({gens}{more})"

    def groebner(self, order=None) -> list[MultiPoly]:
        if order is None:
            order = self.ring.order
        elif isinstance(order, str):
            order = MonomialOrder.parse(order)
        cached = self._gb.get(order)
        if cached is None:
            with self._lock:
                cached = self._gb.get(order)
                if cached is None:
                    ring = self.ring.with_order(order)
                    cached = tuple(groebner_basis([ring.convert(g) for g in self.generators]))
                    self._gb[order] = cached
        return list(cached)

    def grevlex_basis(self) -> list[MultiPoly]:
        return self.groebner(GREVLEX)

    def reduce(self, f: MultiPoly) -> MultiPoly:
        ring = self.ring.with_order(GREVLEX)
        return normal_form(ring.convert(f), self.grevlex_basis())

    def contains(self, f: MultiPoly) -> bool:
        return not self.reduce(f)

    def __contains__(self, f):
        return self.contains(f)

    def is_subset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring.names != other.ring.names or self.ring.field != other.ring.field:
            return False
        return [g.terms for g in self.grevlex_basis()] == [g.terms for g in other.grevlex_basis()]

    def __hash__(self):
        return hash(tuple(frozenset(g.terms.items()) for g in self.grevlex_basis()))

    def is_unit(self) -> bool:
        gb = self.grevlex_basis()
        return len(gb) == 1 and gb[0].lm() == 0

    def is_zero(self) -> bool:
        return not self.generators

    def lead_exponents(self) -> list[tuple]:
        R = self.ring.with_order(GREVLEX)
        return [R.decode(g.lm()) for g in self.grevlex_basis()]

    def __add__(self, other):
        return ideal_sum(self, other)

    def map(self, images, target: PolyRing | None = None) -> "Ideal":
        """Image of the generators under a ring map."""
        target = target or (images[0].ring if images else self.ring)
        return Ideal([substitute(g, images, target) for g in self.generators], target)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    if I.ring.names != J.ring.names or I.ring.field != J.ring.field:
        raise RingMismatch(f"{I.ring} vs {J.ring}")
    return Ideal(list(I.generators) + list(J.generators), I.ring)


def irrelevant_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring.gens(), ring)


def unit_ideal(ring: PolyRing) -> Ideal:
    return Ideal([ring.one], ring)


def _fresh_name(names, stem="t"):
    name = f"_{stem}"
    while name in names:
        name += "_"
    return name


def _embed(f: MultiPoly, target: PolyRing, offset: int) -> MultiPoly:
    """Copy f into ``target`` whose variables offset.. are f's variables."""
    src = f.ring
    pad = (0,) * offset
    trailing = (0,) * (target.n - offset - src.n)
    return target._make({target.encode(pad + src.decode(m) + trailing): c for m, c in f.terms.items()})


def eliminate(I: Ideal, k: int, order=None) -> Ideal:
    """I intersected with the subring of the variables after the first k."""
    if order is None:
        order = I.ring.order
    elif isinstance(order, str):
        order = MonomialOrder.parse(order)
    if not order.eliminates(k):
        raise OrderUnsuitable(f"order {order} does not eliminate the first {k} variables")
    gb = I.groebner(order)
    sub = PolyRing(I.ring.names[k:], I.ring.field, GREVLEX)
    out = []
    for g in gb:
        src = g.ring
        keep = True
        terms = {}
        for m, c in g.terms.items():
            e = src.decode(m)
            if any(e[:k]):
                keep = False
                break
            terms[sub.encode(e[k:])] = c
        if keep:
            out.append(sub._make(terms))
    return Ideal(out, sub)


def _with_extra_variable(I_list, ring: PolyRing):
    name = _fresh_name(ring.names)
    T = PolyRing((name,) + ring.names, ring.field, MonomialOrder("block", 1))
    t = T.gens()[0]
    return T, t, [[_embed(g, T, 1) for g in gens] for gens in I_list]


def intersect(I: Ideal, J: Ideal) -> Ideal:
    if I.ring.names != J.ring.names or I.ring.field != J.ring.field:
        raise RingMismatch(f"{I.ring} vs {J.ring}")
    if I.is_zero() or J.is_zero():
        return Ideal([], I.ring)
    T, t, (gi, gj) = _with_extra_variable([I.generators, J.generators], I.ring)
    gens = [t * g for g in gi] + [(T.one - t) * g for g in gj]
    return _restore(eliminate(Ideal(gens, T), 1), I.ring)


def _restore(I: Ideal, ring: PolyRing) -> Ideal:
    return Ideal([ring.convert(g) if g.ring.names == ring.names else g for g in I.generators], ring)


def divide_exact(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """f / g, which must be exact."""
    R = f.ring
    K = R.field
    lm_g, lc_inv = g.lm(), K.inv(g.lc())
    rem = dict(f.terms)
    quot = {}
    while rem:
        m = max(rem)
        if not R.divides(lm_g, m):
            raise ValueError("division is not exact")
        q = m - lm_g
        c = K.mul(rem[m], lc_inv)
        quot[q] = c
        for mg, cg in g.terms.items():
            mm = mg + q
            v = K.sub(rem.get(mm, K.zero), K.mul(c, cg))
            if K.is_zero(v):
                rem.pop(mm, None)
            else:
                rem[mm] = v
    return R._make(quot)


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """The colon ideal I : J."""
    R = I.ring
    gens = [g for g in J.generators if g]
    if not gens:
        return unit_ideal(R)
    result = None
    for g in gens:
        if g.lm() == 0:
            part = I
        else:
            inter = intersect(I, Ideal([g], R))
            part = Ideal([divide_exact(h, g) for h in inter.generators], R)
        result = part if result is None else intersect(result, part)
    return result


def _linear_coefficients(f: MultiPoly):
    R = f.ring
    if not f.is_homogeneous() or f.degree() != 1:
        return None
    coeffs = [R.field.zero] * R.n
    for m, c in f.terms.items():
        coeffs[R.decode(m).index(1)] = c
    return coeffs


def saturate_linear(I: Ideal, coeffs) -> Ideal:
    """I : l^infinity for the linear form l = sum coeffs[i] x_i (I homogeneous).

    Moves l to the last coordinate, where the grevlex basis of the
    saturation is the basis of I with powers of that coordinate divided out.
    """
    R = I.ring
    K = R.field
    n = R.n
    j = max(i for i, c in enumerate(coeffs) if not K.is_zero(c))
    N = [[K.one if c == i else K.zero for c in range(n)] for i in range(n) if i != j]
    N.append([K.convert(c) for c in coeffs])
    Ninv = linalg.inverse(K, N)
    G = R.with_order(GREVLEX)
    forward = [G.linear_form(row) for row in Ninv]  # x in terms of y
    back = [G.linear_form(row) for row in N]  # y in terms of x
    moved = Ideal([substitute(G.convert(g), forward, G) for g in I.generators], G)
    last = n - 1
    stripped = []
    for g in moved.grevlex_basis():
        e = min(G.decode(m)[last] for m in g.terms)
        if e:
            g = _divide_power(g, last, e)
        stripped.append(g)
    return Ideal([R.convert(substitute(g, back, G)) for g in stripped], R)


def _divide_power(g: MultiPoly, var: int, e: int) -> MultiPoly:
    R = g.ring
    shift = R._units[var] * e
    return R._make({m - shift: c for m, c in g.terms.items()})


def saturate_principal(I: Ideal, f: MultiPoly) -> Ideal:
    """I : f^infinity (Bayer's trick for linear f, Rabinowitsch otherwise)."""
    R = I.ring
    if not f:
        return unit_ideal(R)
    if f.lm() == 0:
        return I
    coeffs = _linear_coefficients(f)
    if coeffs is not None and I.homogeneous:
        return saturate_linear(I, coeffs)
    T, t, (gi, (fe,)) = _with_extra_variable([I.generators, [f]], R)
    gens = list(gi) + [T.one - t * fe]
    return _restore(eliminate(Ideal(gens, T), 1), R)


def saturate(I: Ideal, J: Ideal, rng=None) -> Ideal:
    """The saturation I : J^infinity."""
    R = I.ring
    gens = [g for g in J.generators if g]
    if not gens:
        return unit_ideal(R)
    if any(g.lm() == 0 for g in gens):
        return I
    if len(gens) == 1:
        return saturate_principal(I, gens[0])
    K = R.field
    linear = [_linear_coefficients(g) for g in gens]
    if I.homogeneous and all(c is not None for c in linear) and K.order is not None:
        # a generic element of J has the same saturation; two independent
        # draws that agree confirm it
        rng = make_rng(_SATURATION_SEED if rng is None else rng)
        results = []
        for _ in range(2):
            weights = [K.random(rng) for _ in gens]
            comb = [K.zero] * R.n
            for w, cs in zip(weights, linear):
                comb = [K.add(a, K.mul(w, b)) for a, b in zip(comb, cs)]
            if all(K.is_zero(c) for c in comb):
                continue
            results.append(saturate_linear(I, comb))
        if len(results) == 2 and results[0] == results[1]:
            return results[0]
    current = I
    while True:
        nxt = quotient(current, J)
        if nxt == current:
            return current
        current = nxt


def saturate_irrelevant(I: Ideal) -> Ideal:
    return saturate(I, irrelevant_ideal(I.ring))


# ---------------------------------------------------------------------------
# Hilbert functions and series


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _trim(a):
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def hilbert_numerator(gens, n: int) -> list[int]:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^n of k[x]/(gens) for
    monomial generators given as exponent tuples (pivot recursion)."""
    gens = _minimalize([tuple(g) for g in gens])
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    counts = [0] * n
    for s in supports:
        for i in s:
            counts[i] += 1
    if max(counts) <= 1:
        # pairwise coprime generators
        out = [1]
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return out
    # pivot on the variable most common among the mixed generators; its
    # exponents there stay below any pure power of it, so x^e is a new element
    mixed = [g for g, s in zip(gens, supports) if len(s) > 1]
    mixed_counts = [sum(1 for g in mixed if g[i]) for i in range(n)]
    var = max(range(n), key=lambda i: mixed_counts[i])
    powers = sorted(g[var] for g in mixed if g[var])
    e = powers[len(powers) // 2]
    pivot = tuple(e if i == var else 0 for i in range(n))
    with_pivot = hilbert_numerator(gens + [pivot], n)
    colon = [tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens]
    shifted = [0] * e + hilbert_numerator(colon, n)
    return _trim(_poly_add(with_pivot, shifted))


@dataclass(frozen=True)
class HilbertData:
    numerator: tuple  # N(t) with HS = N(t) / (1-t)^n
    n: int
    krull_dimension: int  # -1 for the unit ideal
    h: tuple  # reduced numerator h(t) with HS = h(t) / (1-t)^krull_dimension
    degree: int
    regularity_index: int  # HF(d) = HP(d) for all d >= this

    def value(self, d: int) -> int:
        from math import comb

        if d < 0:
            return 0
        return sum(c * comb(d - i + self.n - 1, self.n - 1) for i, c in enumerate(self.numerator) if d - i >= 0)


def _hilbert_data(I: Ideal) -> HilbertData:
    if I._hilbert is None:
        if not I.homogeneous:
            raise ValueError("Hilbert data needs a homogeneous ideal")
        n = I.ring.n
        num = hilbert_numerator(I.lead_exponents(), n)
        if all(c == 0 for c in num):
            data = HilbertData(tuple(num), n, -1, (0,), 0, 0)
        else:
            h = list(num)
            D = n
            while D > 0 and sum(h) == 0:
                # divide by (1 - t)
                q = []
                acc = 0
                for c in h[:-1]:
                    acc += c
                    q.append(acc)
                h = _trim(q) if q else [0]
                D -= 1
            reg = max(0, len(h) - 1 - D + 1)
            data = HilbertData(tuple(num), n, D, tuple(h), sum(h), reg)
        I._hilbert = data
    return I._hilbert


def hilbert_function(I: Ideal, d: int) -> int:
    """Number of standard monomials of degree d for the grevlex initial ideal."""
    if not I.homogeneous:
        raise ValueError("Hilbert function needs a homogeneous ideal")
    if d < 0:
        return 0
    leads = I.lead_exponents()
    n = I.ring.n
    count = 0
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        if not any(all(a <= b for a, b in zip(lead, e)) for lead in leads):
            count += 1
    return count


def hilbert_series(I: Ideal) -> HilbertData:
    return _hilbert_data(I)


def _check_cap(data: HilbertData, cap: int):
    if data.regularity_index > cap:
        raise DegreeCapExceeded(
            f"Hilbert function only becomes polynomial at degree {data.regularity_index} > cap {cap}"
        )


def dimension(I: Ideal, cap: int = DEFAULT_DEGREE_CAP) -> int:
    """Projective dimension of V(I); -1 when V(I) is empty."""
    data = _hilbert_data(I)
    _check_cap(data, cap)
    return data.krull_dimension - 1 if data.krull_dimension >= 0 else -1


def degree(I: Ideal, cap: int = DEFAULT_DEGREE_CAP) -> int:
    data = _hilbert_data(I)
    _check_cap(data, cap)
    return data.degree


def degree_0dim(I: Ideal, cap: int = DEFAULT_DEGREE_CAP) -> int:
    """Length of the zero-dimensional scheme defined by I."""
    dim = dimension(I, cap)
    if dim != 0:
        raise NotZeroDimensional(f"ideal has projective dimension {dim}")
    return _hilbert_data(I).degree


# ---------------------------------------------------------------------------
# splitting zero-dimensional schemes into points


@dataclass(frozen=True)
class SplitPoint:
    """A point of V(I) over ``field`` with its local length.

    Points sharing ``orbit`` are Frobenius conjugates, listed in the order
    P, F(P), F^2(P), ...
    """

    coordinates: tuple
    multiplicity: int
    field: Field = dc_field(compare=False)
    orbit: int = 0
    orbit_size: int = 1

    def __str__(self):
        coords = " : ".join(self.field.format(c) for c in self.coordinates)
        return f"({coords}) x{self.multiplicity}"


@dataclass
class _Support:
    field: Field
    points: list  # normalized coordinate tuples, grouped by orbit
    orbits: list  # list of (start index, size)
    charpoly_mult: list  # per orbit: multiplicity of its factor in the charpoly
    degree: int


def _components(L: Field, a):
    return a if isinstance(a, tuple) else (a,)


def _affine_algebra(I: Ideal, A, K):
    """Standard basis and normal-form machinery of the chart x_{n-1} = 1 after
    the coordinate change x = A y."""
    R = I.ring
    n = R.n
    G = R.with_order(GREVLEX)
    images = [G.linear_form(row) for row in A]
    moved = Ideal([substitute(G.convert(g), images, G) for g in I.generators], G)
    gb = moved.grevlex_basis()
    aff = PolyRing(R.names[:-1], K, GREVLEX)
    red = _Reducers(aff)
    for g in gb:
        terms: dict = {}
        for m, c in g.terms.items():
            e = G.decode(m)[:-1]
            mm = aff.encode(e)
            terms[mm] = K.add(terms[mm], c) if mm in terms else c
        terms = {m: c for m, c in terms.items() if not K.is_zero(c)}
        if terms:
            lm, tail = _monic_split(K, terms)
            red.active.append(red.add(lm, tail))
    return aff, red


def _standard_monomials(aff: PolyRing, red: _Reducers, limit: int):
    basis = []
    d = 0
    while True:
        found = False
        for m in aff.monomials_of_degree(d):
            if red.divisor(m) is None:
                basis.append(m)
                found = True
                if len(basis) > limit:
                    return None
        if not found:
            return sorted(basis)
        d += 1


def _support(I: Ideal, seed=0, ext_cap=DEFAULT_EXT_CAP, retries=DEFAULT_RETRIES) -> _Support:
    R = I.ring
    K = R.field
    if not isinstance(K, PrimeField):
        raise FieldMismatch("point splitting needs a prime coefficient field")
    D = degree_0dim(I)
    rng = make_rng(seed)
    n = R.n
    for _ in range(retries):
        A = linalg.random_invertible(K, n, rng)
        aff, red = _affine_algebra(I, A, K)
        basis = _standard_monomials(aff, red, D)
        if basis is None or len(basis) != D:
            continue  # points on the chart hyperplane
        index = {m: i for i, m in enumerate(basis)}

        def vec(terms):
            v = [0] * D
            for m, c in _reduce(K, terms, red).items():
                v[index[m]] = c
            return v

        products = [[vec({bi + bj: 1}) for bj in basis] for bi in basis]
        # traces of the multiplication maps of the basis monomials
        tr = [sum(products[m][k][k] for k in range(D)) % K.p for m in range(D)]
        trace_form = [
            [sum(c * tr[m] for m, c in enumerate(products[i][j])) % K.p for j in range(D)]
            for i in range(D)
        ]
        nil = linalg.kernel(K, trace_form)
        npts = D - len(nil)
        nil_rows, nil_piv = linalg.rref(K, nil) if nil else ([], [])

        def mod_nil(v):
            v = list(v)
            for row, pc in zip(nil_rows, nil_piv):
                c = v[pc]
                if c:
                    v = [(x - c * y) % K.p for x, y in zip(v, row)]
            return v

        # separating element: a random linear form in the affine coordinates
        sep_coeffs = [K.random_nonzero(rng) for _ in range(n - 1)]
        var_vecs = [vec({u: 1}) for u in aff._units]
        sep = [sum(c * v[k] for c, v in zip(sep_coeffs, var_vecs)) % K.p for k in range(D)]
        mult_sep = [
            [sum(sep[m] * products[m][j][i] for m in range(D)) % K.p for j in range(D)]
            for i in range(D)
        ]  # column j = sep * b_j
        powers = [mod_nil(vec({0: 1}))]
        for _ in range(npts):
            nxt = linalg.matvec(K, mult_sep, powers[-1])
            powers.append(mod_nil(nxt))
        cols = linalg.transpose(powers[:npts])
        if linalg.rank(K, cols) != npts:
            continue  # the form does not separate the points
        # minimal polynomial of sep on the reduced algebra, and coordinates
        # of each affine variable as a polynomial in sep
        system = [list(r) for r in cols]
        rel = linalg.solve(K, system, powers[npts])
        minpoly = UniPoly(K, [(-c) % K.p for c in rel] + [1])
        shape = []
        for v in var_vecs:
            shape.append(linalg.solve(K, system, mod_nil(v)))
        if any(s is None for s in shape):
            continue
        chi = UniPoly(K, linalg.charpoly(K, mult_sep))
        factors = factor_univariate(minpoly, rng)
        k = lcm_list(f.degree for f, _ in factors)
        if k > ext_cap:
            raise ExtensionCapExceeded(f"points need F_(p^{k}), cap is {ext_cap}")
        L = extension_field(K.p, k, seed=int(rng.integers(2**32)))
        chi_factors = dict(factor_univariate(chi, rng))
        points, orbits, mults = [], [], []
        for f, _ in factors:
            roots = roots_in_extension(f, L, rng)
            orbits.append((len(points), len(roots)))
            mults.append(chi_factors.get(f, 0))
            for theta in roots:
                y = [_eval_uni(L, s, theta) for s in shape] + [L.one]
                x = [_dot(L, row, y) for row in A]
                points.append(tuple(linalg.normalize_projective(L, x)))
        if not all(L.is_zero(evaluate(g, pt, L)) for g in I.generators for pt in points):
            continue
        return _Support(L, points, orbits, mults, D)
    raise ShapePositionFailure(f"no usable coordinate change after {retries} attempts")


def _eval_uni(L, coeffs, x):
    acc = L.zero
    for c in reversed(coeffs):
        acc = L.add(L.mul(acc, x), L.convert(c))
    return acc


def _dot(L, row, y):
    acc = L.zero
    for a, b in zip(row, y):
        if a:
            acc = L.add(acc, L.mul(L.convert(a), b))
    return acc


def _orbit_form(R: PolyRing, L: Field, point, others, rng, max_degree=6):
    """A form over the prime field vanishing at ``point`` (hence on its
    Galois orbit) but at none of ``others``."""
    K = R.field
    for e in range(1, max_degree + 1):
        monos = R.monomials_of_degree(e)
        polys = [R._make({m: K.one}) for m in monos]
        values = [_components(L, evaluate(f, point, L)) for f in polys]
        rows = [list(col) for col in zip(*values)]
        kern = linalg.kernel(K, rows)
        if not kern:
            continue
        for _ in range(8):
            w = [K.random(rng) for _ in kern]
            coeffs = [sum(a * v[i] for a, v in zip(w, kern)) % K.p for i in range(len(monos))]
            f = R._make({m: c for m, c in zip(monos, coeffs) if c})
            if f and all(not L.is_zero(evaluate(f, q, L)) for q in others):
                return f
    raise ShapePositionFailure("no form separates the orbit from the other points")


def _orbit_length(I: Ideal, sup: _Support, orbit: int, rng) -> int:
    start, size = sup.orbits[orbit]
    point = sup.points[start]
    others = [sup.points[s] for j, (s, _) in enumerate(sup.orbits) if j != orbit]
    f = _orbit_form(I.ring, sup.field, point, others, rng)
    rest = degree_0dim(saturate_principal(I, f)) if others else 0
    total = sup.degree - rest
    if total % size:
        raise ShapePositionFailure("orbit length is not divisible by the orbit size")
    return total // size


def split_points(
    I: Ideal, seed=0, ext_cap: int = DEFAULT_EXT_CAP, retries: int = DEFAULT_RETRIES
) -> list[SplitPoint]:
    """The points of a zero-dimensional scheme over a common extension field,
    each with its local length."""
    sup = _support(I, seed, ext_cap, retries)
    rng = make_rng(seed)
    reduced = len(sup.points) == sup.degree
    out = []
    for j, (start, size) in enumerate(sup.orbits):
        if reduced:
            mult = 1
        else:
            mult = _orbit_length(I, sup, j, rng)
        if sup.charpoly_mult[j] != mult:
            raise ShapePositionFailure(
                f"local length {mult} disagrees with eliminant multiplicity {sup.charpoly_mult[j]}"
            )
        for pt in sup.points[start : start + size]:
            out.append(SplitPoint(pt, mult, sup.field, j, size))
    return out


def local_length(I: Ideal, point, field: Field | None = None, seed=0) -> int:
    """Length of the scheme V(I) at ``point`` (and at each Galois conjugate)."""
    if isinstance(point, SplitPoint):
        field = point.field
        point = point.coordinates
    R = I.ring
    L = field or R.field
    coords = [L.convert(c) for c in point]
    if not all(L.is_zero(evaluate(g, coords, L)) for g in I.generators):
        raise PointNotOnScheme("point does not satisfy the generators")
    sup = _support(I, seed)
    target = _match_orbit(sup, coords, L)
    if target is None:
        raise PointNotOnScheme("point is not in the support of the scheme")
    if len(sup.points) == sup.degree:
        return 1
    return _orbit_length(I, sup, target, make_rng(seed))


def _match_orbit(sup: _Support, coords, L: Field):
    """Index of the orbit of ``sup`` containing the point ``coords``."""
    M = sup.field
    if L == M:
        mapped = coords
    elif isinstance(L, PrimeField) or L.k == 1:
        mapped = [M.convert(c) for c in coords]
    else:
        mapped = None
    for j, (start, size) in enumerate(sup.orbits):
        for pt in sup.points[start : start + size]:
            if mapped is not None:
                if _proportional(M, mapped, pt):
                    return j
            elif _same_point_across_fields(L, coords, M, pt):
                return j
    return None


def _proportional(K: Field, a, b) -> bool:
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if not K.is_zero(K.sub(K.mul(a[i], b[j]), K.mul(a[j], b[i]))):
                return False
    return any(not K.is_zero(x) for x in a)


def _same_point_across_fields(L, coords, M, pt) -> bool:
    # points over two different extensions: compare normalized coordinates
    # through their minimal polynomials over the prime field
    from .fields import minimal_polynomial

    a = linalg.normalize_projective(L, coords)
    b = list(pt)
    for x, y in zip(a, b):
        if minimal_polynomial(L, x) != minimal_polynomial(M, y):
            return False
    return True
