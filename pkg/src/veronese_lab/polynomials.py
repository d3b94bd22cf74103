"""Sparse multivariate polynomials over the fields of :mod:`veronese_lab.fields`.

A monomial is a single Python int that packs, from the most significant end,
the weight rows of the monomial order followed by the raw exponents.  With
that layout

* integer comparison is the monomial order,
* monomial multiplication is integer addition,
* divisibility is one subtraction and a mask test on the exponent fields.

Polynomials keep their terms in a ``{monomial: coefficient}`` dict; the
sorted view (strictly decreasing in the order) is produced on demand.
"""

from __future__ import annotations

import re
from itertools import combinations_with_replacement

from .errors import FieldMismatch, ParseError, RingMismatch
from .fields import Field, FieldElement, PrimeField

_FIELD_WIDTH = 16
_MAX_EXPONENT = (1 << (_FIELD_WIDTH - 1)) - 1


class MonomialOrder:
    """grevlex, lex or block(k) (lex between the first k variables and the rest,
    grevlex inside each block)."""

    __slots__ = ("kind", "k")

    def __init__(self, kind: str = "grevlex", k: int = 0):
        if kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "block" and k < 1:
            raise ValueError("block order needs k >= 1")
        self.kind = kind
        self.k = k if kind == "block" else 0

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        text = text.strip().lower()
        if text.startswith("block"):
            _, _, k = text.partition(":")
            try:
                return cls("block", int(k))
            except ValueError as exc:
                raise ParseError(f"bad block order {text!r}") from exc
        return cls(text)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.k) == (other.kind, other.k)

    def __hash__(self):
        return hash((self.kind, self.k))

    def __repr__(self):
        return f"block:{self.k}" if self.kind == "block" else self.kind

    def eliminates(self, k: int) -> bool:
        """True when every element with leading monomial free of the first k
        variables lies in the subring of the remaining ones."""
        return self.kind == "lex" or (self.kind == "block" and self.k == k)

    def weight_rows(self, n: int) -> list[list[int]]:
        if self.kind == "lex":
            return [[int(i == j) for j in range(n)] for i in range(n)]
        if self.kind == "grevlex":
            return _grevlex_rows(n, 0, n)
        k = min(self.k, n)
        return _grevlex_rows(n, 0, k) + _grevlex_rows(n, k, n)


def _grevlex_rows(n, start, stop):
    # grevlex on variables [start, stop) is lex on the prefix sums
    # (e_start+...+e_{stop-1}, e_start+...+e_{stop-2}, ..., e_start)
    rows = []
    for end in range(stop, start, -1):
        rows.append([1 if start <= j < end else 0 for j in range(n)])
    return rows


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


class PolyRing:
    """Polynomial ring k[x_0..x_{n-1}] with a fixed monomial order."""

    def __init__(self, names, field: Field, order: MonomialOrder | str = GREVLEX):
        if isinstance(names, str):
            names = [s for s in re.split(r"[,\s]+", names) if s]
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        if isinstance(order, str):
            order = MonomialOrder.parse(order)
        self.names = names
        self.n = len(names)
        self.field = field
        self.order = order
        self._rows = order.weight_rows(self.n)
        w = _FIELD_WIDTH
        self._nfields = self.n + len(self._rows)
        self._exp_mask = (1 << (w * self.n)) - 1
        self._guard = sum(1 << (w * i + w - 1) for i in range(self.n))
        self._field_mask = (1 << w) - 1
        self._decode_cache: dict[int, tuple] = {}
        self._index = {name: i for i, name in enumerate(names)}
        self._graded = order.kind == "grevlex"
        self._units = [self.encode(tuple(int(i == j) for j in range(self.n))) for i in range(self.n)]

    # ring identity -------------------------------------------------------
    def _key(self):
        return (self.names, self.field, self.order)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)} over {self.field}, {self.order})"

    def header(self) -> str:
        return f"ring {' '.join(self.names)} over {self.field}"

    def with_order(self, order) -> "PolyRing":
        if isinstance(order, str):
            order = MonomialOrder.parse(order)
        if order == self.order:
            return self
        return PolyRing(self.names, self.field, order)

    def with_names(self, names) -> "PolyRing":
        return PolyRing(names, self.field, self.order)

    # monomials -------------------------------------------------------------
    def encode(self, exps) -> int:
        w = _FIELD_WIDTH
        m = 0
        for row in self._rows:
            m = (m << w) | sum(r * e for r, e in zip(row, exps))
        for e in reversed(exps):
            if e < 0 or e > _MAX_EXPONENT:
                raise ValueError(f"exponent {e} out of range")
            m = (m << w) | e
        return m

    def decode(self, m: int) -> tuple:
        exps = self._decode_cache.get(m)
        if exps is None:
            w, mask = _FIELD_WIDTH, self._field_mask
            x = m
            out = []
            for _ in range(self.n):
                out.append(x & mask)
                x >>= w
            exps = tuple(out)
            self._decode_cache[m] = exps
        return exps

    def mono_degree(self, m: int) -> int:
        if self._graded and self.n:
            return m >> (_FIELD_WIDTH * (self._nfields - 1))
        return sum(self.decode(m))

    def divides(self, a: int, b: int) -> bool:
        g = self._guard
        return ((b | g) - a) & g == g

    def mono_lcm(self, a: int, b: int) -> int:
        return self.encode(tuple(map(max, self.decode(a), self.decode(b))))

    def coprime(self, a: int, b: int) -> bool:
        return not any(x and y for x, y in zip(self.decode(a), self.decode(b)))

    def one_mono(self) -> int:
        return 0

    def monomials_of_degree(self, d: int) -> list[int]:
        """All monomials of total degree d, decreasing in the order."""
        out = []
        for combo in combinations_with_replacement(range(self.n), d):
            exps = [0] * self.n
            for i in combo:
                exps[i] += 1
            out.append(self.encode(tuple(exps)))
        out.sort(reverse=True)
        return out

    def format_monomial(self, m: int) -> str:
        parts = []
        for name, e in zip(self.names, self.decode(m)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # polynomials -------------------------------------------------------------
    def _make(self, terms: dict) -> "MultiPoly":
        f = MultiPoly.__new__(MultiPoly)
        f.ring = self
        f.terms = terms
        return f

    @property
    def zero(self) -> "MultiPoly":
        return self._make({})

    @property
    def one(self) -> "MultiPoly":
        return self._make({0: self.field.one})

    def constant(self, c) -> "MultiPoly":
        c = self.field.convert(c)
        return self._make({} if self.field.is_zero(c) else {0: c})

    def gens(self) -> list["MultiPoly"]:
        return [self._make({u: self.field.one}) for u in self._units]

    def var(self, name: str) -> "MultiPoly":
        try:
            i = self._index[name]
        except KeyError as exc:
            raise ParseError(f"unknown variable {name!r}") from exc
        return self._make({self._units[i]: self.field.one})

    def monomial(self, exps, coeff=None) -> "MultiPoly":
        c = self.field.one if coeff is None else self.field.convert(coeff)
        if self.field.is_zero(c):
            return self.zero
        return self._make({self.encode(tuple(exps)): c})

    def from_dict(self, data: dict) -> "MultiPoly":
        """Build from ``{exponent tuple: coefficient}``."""
        K = self.field
        terms = {}
        for exps, c in data.items():
            c = K.convert(c)
            if not K.is_zero(c):
                m = self.encode(tuple(exps))
                terms[m] = K.add(terms[m], c) if m in terms else c
                if K.is_zero(terms[m]):
                    del terms[m]
        return self._make(terms)

    def linear_form(self, coeffs) -> "MultiPoly":
        K = self.field
        terms = {}
        for u, c in zip(self._units, coeffs):
            c = K.convert(c)
            if not K.is_zero(c):
                terms[u] = c
        return self._make(terms)

    def convert(self, f: "MultiPoly") -> "MultiPoly":
        """Move f into this ring (same variables and field, any order)."""
        if f.ring == self:
            return f
        if f.ring.names != self.names:
            raise RingMismatch(f"{f.ring} vs {self}")
        if not self.field.contains(f.ring.field):
            raise FieldMismatch(f"{f.ring.field} vs {self.field}")
        src = f.ring
        conv = self.field.convert if self.field != src.field else None
        terms = {}
        for m, c in f.terms.items():
            terms[self.encode(src.decode(m))] = conv(c) if conv else c
        return self._make(terms)

    def parse(self, text: str) -> "MultiPoly":
        return _Parser(self, text).parse()

    def __call__(self, value) -> "MultiPoly":
        if isinstance(value, MultiPoly):
            return self.convert(value)
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)


class MultiPoly:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to nonzero
    coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms=None):
        self.ring = ring
        K = ring.field
        self.terms = {m: c for m, c in (terms or {}).items() if not K.is_zero(c)}

    # basic queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def lm(self) -> int:
        return max(self.terms)

    def lc(self):
        return self.terms[max(self.terms)]

    def sorted_terms(self) -> list[tuple[int, object]]:
        return sorted(self.terms.items(), reverse=True)

    def terms_list(self) -> list[tuple[tuple, object]]:
        """(exponent tuple, coefficient) pairs, strictly decreasing in the order."""
        return [(self.ring.decode(m), c) for m, c in self.sorted_terms()]

    def leading_exponent(self) -> tuple:
        return self.ring.decode(self.lm())

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.ring.mono_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.mono_degree(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_components(self) -> dict[int, "MultiPoly"]:
        comps: dict[int, dict] = {}
        for m, c in self.terms.items():
            comps.setdefault(self.ring.mono_degree(m), {})[m] = c
        return {d: self.ring._make(t) for d, t in comps.items()}

    def coefficient(self, exps):
        return self.terms.get(self.ring.encode(tuple(exps)), self.ring.field.zero)

    def variables_used(self) -> set[int]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(self.ring.decode(m)) if e)
        return used

    # arithmetic ------------------------------------------------------------
    def _other(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                if other.ring.names == self.ring.names and other.ring.field == self.ring.field:
                    return self.ring.convert(other)
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other
        if isinstance(other, (int, FieldElement)) or other.__class__.__name__ == "Fraction":
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.ring._make(_add(self.ring.field, self.terms, other.terms, 1))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.ring._make(_add(self.ring.field, self.terms, other.terms, -1))

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        K = self.ring.field
        return self.ring._make({m: K.neg(c) for m, c in self.terms.items()})

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.ring._make(_mul(self.ring.field, self.terms, other.terms))

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        K = self.ring.field
        c = K.convert(c)
        if K.is_zero(c):
            return self.ring.zero
        return self.ring._make({m: K.mul(c, a) for m, a in self.terms.items()})

    def mul_monomial(self, m: int, c=None) -> "MultiPoly":
        K = self.ring.field
        if c is None:
            return self.ring._make({m + a: b for a, b in self.terms.items()})
        return self.ring._make({m + a: K.mul(c, b) for a, b in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        K = self.ring.field
        return self.scale(K.inv(self.lc()))

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            other = self._other(other)
        except (RingMismatch, FieldMismatch):
            return False
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # calculus and maps -------------------------------------------------------
    def derivative(self, var) -> "MultiPoly":
        R = self.ring
        K = R.field
        i = R._index[var] if isinstance(var, str) else var
        unit = R._units[i]
        terms = {}
        for m, c in self.terms.items():
            e = R.decode(m)[i]
            if e:
                c2 = K.mul(K.from_int(e), c)
                if not K.is_zero(c2):
                    terms[m - unit] = c2
        return R._make(terms)

    def evaluate(self, point, field: Field | None = None):
        """Value at a coordinate vector of raw elements of ``field`` (default:
        the coefficient field; an extension of it is allowed)."""
        return evaluate(self, point, field)

    def substitute(self, images, target: PolyRing | None = None) -> "MultiPoly":
        return substitute(self, images, target)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)})"


def _add(K, a: dict, b: dict, sign: int) -> dict:
    out = dict(a)
    if isinstance(K, PrimeField):
        p = K.p
        for m, c in b.items():
            v = (out.get(m, 0) + sign * c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out
    for m, c in b.items():
        if sign < 0:
            c = K.neg(c)
        if m in out:
            v = K.add(out[m], c)
            if K.is_zero(v):
                del out[m]
            else:
                out[m] = v
        else:
            out[m] = c
    return out


def _mul(K, a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    if isinstance(K, PrimeField):
        p = K.p
        get = out.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = ma + mb
                out[m] = get(m, 0) + ca * cb
        return {m: c % p for m, c in out.items() if c % p}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma + mb
            prod = K.mul(ca, cb)
            out[m] = K.add(out[m], prod) if m in out else prod
    return {m: c for m, c in out.items() if not K.is_zero(c)}


def poly_sum(ring: PolyRing, polys) -> MultiPoly:
    terms: dict = {}
    for f in polys:
        terms = _add(ring.field, terms, f.terms, 1)
    return ring._make(terms)


def evaluate(f: MultiPoly, point, field: Field | None = None):
    R = f.ring
    L = field or R.field
    if len(point) != R.n:
        raise FieldMismatch(f"expected {R.n} coordinates, got {len(point)}")
    if not L.contains(R.field):
        raise FieldMismatch(f"cannot evaluate {R.field} polynomial in {L}")
    conv = L.convert if L != R.field else None
    powers: list[dict[int, object]] = [{0: L.one, 1: x} for x in point]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = L.mul(power(i, e - 1), point[i])
        return cache[e]

    acc = L.zero
    for m, c in f.terms.items():
        val = conv(c) if conv else c
        for i, e in enumerate(R.decode(m)):
            if e:
                val = L.mul(val, power(i, e))
        acc = L.add(acc, val)
    return acc


def substitute(f: MultiPoly, images, target: PolyRing | None = None) -> MultiPoly:
    """Ring map sending the i-th variable of f's ring to ``images[i]``."""
    R = f.ring
    images = list(images)
    if len(images) != R.n:
        raise RingMismatch(f"need {R.n} images, got {len(images)}")
    if target is None:
        target = images[0].ring if images else R
    for g in images:
        if g.ring != target:
            raise RingMismatch(f"image lives in {g.ring}, expected {target}")
    if not target.field.contains(R.field):
        raise FieldMismatch(f"{R.field} does not embed in {target.field}")
    K = target.field
    conv = K.convert if K != R.field else None
    powers: list[dict[int, MultiPoly]] = [{0: target.one, 1: g} for g in images]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            half = power(i, e // 2)
            cache[e] = half * half if e % 2 == 0 else half * half * images[i]
        return cache[e]

    terms: dict = {}
    for m, c in f.terms.items():
        c = conv(c) if conv else c
        prod = {0: c}
        for i, e in enumerate(R.decode(m)):
            if e:
                prod = _mul(K, prod, power(i, e).terms)
                if not prod:
                    break
        terms = _add(K, terms, prod, 1)
    return target._make(terms)


def linear_substitution(f: MultiPoly, matrix, target: PolyRing | None = None) -> MultiPoly:
    """Substitute x_i -> sum_j matrix[i][j] y_j."""
    target = target or f.ring
    images = [target.linear_form(row) for row in matrix]
    return substitute(f, images, target)


def jacobian(polys) -> list[list[MultiPoly]]:
    polys = list(polys)
    if not polys:
        return []
    R = polys[0].ring
    for g in polys:
        if g.ring != R:
            raise RingMismatch("jacobian needs a common ring")
    return [[g.derivative(j) for j in range(R.n)] for g in polys]


def format_coefficient(K: Field, c) -> tuple[int, str]:
    """(sign, magnitude string) for printing."""
    if isinstance(K, PrimeField):
        if c > K.p // 2:
            return -1, str(K.p - c)
        return 1, str(c)
    s = K.format(c)
    if s.startswith("-") and "+" not in s[1:] and "-" not in s[1:]:
        return -1, s[1:]
    if "+" in s or "-" in s[1:] or "t" in s:
        return 1, f"({s})"
    return 1, s


def format_poly(f: MultiPoly) -> str:
    if not f.terms:
        return "0"
    R = f.ring
    out = []
    for m, c in f.sorted_terms():
        sign, mag = format_coefficient(R.field, c)
        mono = R.format_monomial(m)
        if mono == "1":
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if sign > 0 else f"-{body}")
        else:
            out.append(f" + {body}" if sign > 0 else f" - {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    """Recursive-descent parser for the polynomial text format."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        names = sorted(self.ring.names, key=len, reverse=True)
        tokens = []
        for num, ident, other in _TOKEN.findall(text):
            if num:
                tokens.append(("num", int(num)))
            elif ident:
                # split juxtaposed names such as x0x3 greedily
                while ident:
                    for name in names:
                        if ident.startswith(name):
                            tokens.append(("var", name))
                            ident = ident[len(name):]
                            break
                    else:
                        raise ParseError(f"unknown identifier {ident!r} in {text!r}")
                    if ident[:1].isdigit():
                        m = re.match(r"\d+", ident)
                        tokens.append(("num", int(m.group())))
                        ident = ident[m.end():]
            elif other.strip():
                if other not in "+-*^/()":
                    raise ParseError(f"unexpected character {other!r} in {text!r}")
                tokens.append(("op", other))
        return tokens

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> MultiPoly:
        if not self.tokens:
            raise ParseError("empty polynomial")
        f = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return f

    def expr(self):
        R = self.ring
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f if f is not None else R.zero

    def term(self):
        f = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                f = f * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                dk, den = self.take()
                if dk != "num" or den == 0:
                    raise ParseError(f"can only divide by a nonzero integer in {self.text!r}")
                K = self.ring.field
                f = f * self.ring.constant(K.inv(K.convert(den)))
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                f = f * self.factor()
            else:
                return f

    def factor(self):
        f = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            f = f**e
        return f

    def atom(self):
        R = self.ring
        kind, val = self.take()
        if kind == "num":
            return R.constant(val)
        if kind == "var":
            return R.var(val)
        if kind == "op" and val == "(":
            f = self.expr()
            k2, v2 = self.take()
            if (k2, v2) != ("op", ")"):
                raise ParseError(f"unbalanced parenthesis in {self.text!r}")
            return f
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_polys(ring: PolyRing, text: str) -> list[MultiPoly]:
    """One polynomial per line; blank lines and ``#`` comments are skipped."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(ring.parse(line))
    return out


def parse_ring_header(line: str) -> PolyRing:
    """Parse ``ring x0..x5 over F(32003)`` (names may also be listed)."""
    from .fields import QQ, PrimeField as _PF

    m = re.match(r"\s*ring\s+(.+?)\s+over\s+(\S+)\s*$", line)
    if not m:
        raise ParseError(f"bad ring header {line!r}")
    spec, field_text = m.groups()
    names: list[str] = []
    for chunk in re.split(r"[,\s]+", spec.strip()):
        rng = re.fullmatch(r"([A-Za-z_]+)(\d+)\.\.([A-Za-z_]*)(\d+)", chunk)
        if rng:
            stem, lo, stem2, hi = rng.groups()
            if stem2 and stem2 != stem:
                raise ParseError(f"bad variable range {chunk!r}")
            names.extend(f"{stem}{i}" for i in range(int(lo), int(hi) + 1))
        elif chunk:
            names.append(chunk)
    if field_text == "QQ":
        field = QQ
    else:
        fm = re.fullmatch(r"F\((\d+)\)", field_text)
        if not fm:
            raise ParseError(f"unsupported field {field_text!r}")
        field = _PF(int(fm.group(1)))
    return PolyRing(names, field)
