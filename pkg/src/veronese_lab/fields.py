"""Exact coefficient fields: QQ, prime fields F_p and extensions F_{p^k}.

Elements are stored in "raw" form and manipulated through the field
descriptor, which keeps the hot loops of the Groebner engine free of wrapper
objects:

* ``QQ`` uses :class:`fractions.Fraction`,
* ``PrimeField(p)`` uses plain ``int`` in ``[0, p)``,
* ``ExtensionField`` uses a ``tuple`` of ``k`` ints (residue coefficients,
  lowest degree first).

:class:`FieldElement` wraps a raw value with operator overloading for
interactive use.  Univariate polynomials (:class:`UniPoly`) and their
factorization over finite fields live here as well, since splitting
zero-dimensional schemes into points needs them.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

import numpy as np
from sympy import isprime, primefactors

from .errors import DivisionByZero, FieldMismatch, ParseError, VeroneseLabError

DEFAULT_PRIME = 32003


def make_rng(seed=None) -> np.random.Generator:
    """Return a seeded generator; pass an existing generator through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def spawn_rng(rng: np.random.Generator) -> np.random.Generator:
    """Derive an independent child stream from ``rng``."""
    return rng.spawn(1)[0]


class Field:
    """Abstract field descriptor.  Subclasses implement the raw arithmetic."""

    characteristic: int = 0
    order: int | None = None
    zero = None
    one = None

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.convert(value))

    def convert(self, value):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def from_int(self, n: int):
        return self.convert(n)

    def random(self, rng):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        raise NotImplementedError

    def contains(self, other: "Field") -> bool:
        """True when raw elements of ``other`` can be used as elements here."""
        return other == self


class RationalField(Field):
    characteristic = 0
    order = None
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    __str__ = __repr__

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def convert(self, value):
        if isinstance(value, FieldElement):
            value = value.value
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in QQ")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by 0 in QQ")
        return a / b

    def random(self, rng, bound: int = 100):
        num = int(rng.integers(-bound, bound + 1))
        den = int(rng.integers(1, bound + 1))
        return Fraction(num, den)

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {text!r}") from exc


QQ = RationalField()


class PrimeField(Field):
    """The field Z/pZ with elements represented by ints in ``[0, p)``."""

    _cache: dict[int, "PrimeField"] = {}

    def __new__(cls, p: int = DEFAULT_PRIME):
        if p in cls._cache:
            return cls._cache[p]
        if not isinstance(p, int) or p < 2 or not isprime(p):
            raise ValueError(f"{p!r} is not a prime")
        if p.bit_length() > 63:
            raise ValueError("prime must fit in a machine word")
        obj = super().__new__(cls)
        obj.p = p
        obj.characteristic = p
        obj.order = p
        obj.zero = 0
        obj.one = 1
        cls._cache[p] = obj
        return obj

    def __getnewargs__(self):
        return (self.p,)

    def __repr__(self):
        return f"F({self.p})"

    __str__ = __repr__

    def convert(self, value):
        if isinstance(value, FieldElement):
            value = value.value
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DivisionByZero(f"denominator divisible by {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"inverse of 0 in F({self.p})")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def random(self, rng):
        return int(rng.integers(self.p))

    def random_nonzero(self, rng):
        return int(rng.integers(1, self.p))

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        text = text.strip()
        try:
            if "/" in text:
                return self.convert(Fraction(text))
            return int(text) % self.p
        except ValueError as exc:
            raise ParseError(f"bad element {text!r} of {self}") from exc

    def sqrt(self, a):
        """A square root of ``a`` or ``None`` (Tonelli-Shanks)."""
        p = self.p
        a %= p
        if a == 0 or p == 2:
            return a
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
        return r


def _strip(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class ExtensionField(Field):
    """F_p[t]/(modulus) for a monic irreducible modulus of degree k.

    Elements are tuples ``(c_0, ..., c_{k-1})`` meaning ``sum c_i t^i``.
    """

    def __init__(self, base: PrimeField, modulus, check: bool = True):
        if isinstance(modulus, UniPoly):
            if modulus.field != base:
                raise FieldMismatch("modulus must have coefficients in the base field")
            coeffs = list(modulus.coeffs)
        else:
            coeffs = _strip([base.convert(c) for c in modulus])
        if not coeffs or len(coeffs) < 2:
            raise ValueError("modulus must have degree >= 1")
        if coeffs[-1] != 1:
            lc_inv = base.inv(coeffs[-1])
            coeffs = [c * lc_inv % base.p for c in coeffs]
        self.base = base
        self.p = base.p
        self.k = len(coeffs) - 1
        self.modulus = tuple(coeffs)
        self.characteristic = base.p
        self.order = base.p ** self.k
        self.zero = (0,) * self.k
        self.one = (1,) + (0,) * (self.k - 1)
        if check:
            poly = UniPoly(base, coeffs)
            factors = factor_univariate(poly, rng=0)
            if len(factors) != 1 or factors[0][1] != 1:
                raise ValueError(f"modulus {poly} is not irreducible over {base}")
        self._prepare_reduction()

    def _prepare_reduction(self):
        k, p = self.k, self.p
        # residues of t^k .. t^(2k-2) modulo the modulus
        red = []
        cur = [(-c) % p for c in self.modulus[:k]]
        for _ in range(max(k - 1, 0)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * m) % p for c, m in zip(cur, self.modulus[:k])]
        self._red = red
        self._width = 2 * p.bit_length() + (2 * k).bit_length() + 2
        w = self._width
        self._red_packed = [sum(c << (w * i) for i, c in enumerate(r)) for r in red]
        self._mask = (1 << w) - 1

    def __repr__(self):
        return f"F({self.p}^{self.k}; {format_unipoly(self.modulus, 't')})"

    __str__ = __repr__

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def contains(self, other):
        return other == self or other == self.base

    def convert(self, value):
        if isinstance(value, FieldElement):
            if value.field == self:
                return value.value
            value = value.value
        if isinstance(value, tuple):
            if len(value) != self.k:
                raise FieldMismatch("wrong length for extension element")
            return tuple(int(c) % self.p for c in value)
        if isinstance(value, (list, UniPoly)):
            coeffs = list(value.coeffs) if isinstance(value, UniPoly) else list(value)
            return self._reduce_list([int(c) % self.p for c in coeffs])
        return (self.base.convert(value),) + (0,) * (self.k - 1)

    def embed(self, c: int):
        """Image of a base-field element."""
        return (c % self.p,) + (0,) * (self.k - 1)

    def generator(self):
        """The class of ``t``."""
        if self.k == 1:
            return ((-self.modulus[0]) % self.p,)
        return (0, 1) + (0,) * (self.k - 2)

    def _reduce_list(self, coeffs: list):
        k, p = self.k, self.p
        coeffs = list(coeffs)
        for i in range(len(coeffs) - 1, k - 1, -1):
            c = coeffs[i] % p
            if c:
                for j in range(k):
                    coeffs[i - k + j] -= c * self.modulus[j]
        coeffs = coeffs[:k] + [0] * (k - len(coeffs))
        return tuple(c % p for c in coeffs)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def scale(self, c: int, a):
        p = self.p
        return tuple(c * x % p for x in a)

    def mul(self, a, b):
        k, p = self.k, self.p
        if k <= 4:
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] += x * y
            return self._reduce_list(prod)
        w, mask = self._width, self._mask
        A = 0
        for c in reversed(a):
            A = (A << w) | c
        B = 0
        for c in reversed(b):
            B = (B << w) | c
        C = A * B
        low = C & ((1 << (w * k)) - 1)
        high = C >> (w * k)
        for r in self._red_packed:
            c = (high & mask) % p
            if c:
                low += c * r
            high >>= w
        out = []
        for _ in range(k):
            out.append((low & mask) % p)
            low >>= w
        return tuple(out)

    def is_zero(self, a):
        return not any(a)

    def inv(self, a):
        if not any(a):
            raise DivisionByZero(f"inverse of 0 in {self}")
        base = self.base
        r0, r1 = list(self.modulus), _strip(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = _uni_divmod(base, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _uni_sub(base, s0, _uni_mul(base, q, s1))
        # r0 is a nonzero constant
        c = base.inv(r0[0])
        return self.convert([x * c % self.p for x in s0])

    def frobenius(self, a, times: int = 1):
        for _ in range(times % self.k if self.k else 0):
            a = self.pow(a, self.p)
        return a

    def random(self, rng):
        return tuple(int(x) for x in rng.integers(self.p, size=self.k))

    def format(self, a) -> str:
        return format_unipoly(a, "t") if any(a) else "0"

    def parse(self, text: str):
        poly = parse_unipoly(text, self.base, var="t")
        return self.convert(poly)

    def is_in_prime_field(self, a) -> bool:
        return not any(a[1:])


class FieldElement:
    """Raw value + field descriptor, with Python operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field} vs {self.field}")
            return other.value
        return self.field.convert(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._coerce(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._coerce(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inv(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        try:
            return self.value == self._coerce(other)
        except (FieldMismatch, TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def __repr__(self):
        return f"{self.field.format(self.value)} in {self.field}"


# ---------------------------------------------------------------------------
# dense univariate arithmetic on coefficient lists (lowest degree first)


def _uni_add(K, f, g):
    n = max(len(f), len(g))
    z = K.zero
    out = [K.add(f[i] if i < len(f) else z, g[i] if i < len(g) else z) for i in range(n)]
    return _strip_field(K, out)


def _uni_sub(K, f, g):
    n = max(len(f), len(g))
    z = K.zero
    out = [K.sub(f[i] if i < len(f) else z, g[i] if i < len(g) else z) for i in range(n)]
    return _strip_field(K, out)


def _strip_field(K, coeffs):
    while coeffs and K.is_zero(coeffs[-1]):
        coeffs.pop()
    return coeffs


def _uni_mul(K, f, g):
    if not f or not g:
        return []
    if isinstance(K, PrimeField):
        p = K.p
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    out[i + j] += a * b
        return _strip([c % p for c in out])
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if K.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return _strip_field(K, out)


def _uni_divmod(K, f, g):
    if not g:
        raise DivisionByZero("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    if len(f) <= dg:
        return [], f
    inv_lc = K.inv(g[-1])
    q = [K.zero] * (len(f) - dg)
    if isinstance(K, PrimeField):
        p = K.p
        for i in range(len(f) - 1, dg - 1, -1):
            c = f[i] % p
            if c:
                c = c * inv_lc % p
                q[i - dg] = c
                for j in range(dg + 1):
                    f[i - dg + j] -= c * g[j]
        r = [x % p for x in f[:dg]]
        return _strip(q), _strip(r)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if K.is_zero(c):
            continue
        c = K.mul(c, inv_lc)
        q[i - dg] = c
        for j in range(dg + 1):
            f[i - dg + j] = K.sub(f[i - dg + j], K.mul(c, g[j]))
    return _strip_field(K, q), _strip_field(K, f[:dg])


def _uni_mod(K, f, g):
    return _uni_divmod(K, f, g)[1]


def _uni_monic(K, f):
    if not f:
        return f
    c = K.inv(f[-1])
    return [K.mul(c, a) for a in f]


def _uni_gcd(K, f, g):
    while g:
        f, g = g, _uni_mod(K, f, g)
    return _uni_monic(K, f)


def _uni_mulmod(K, f, g, m):
    return _uni_mod(K, _uni_mul(K, f, g), m)


def _uni_powmod(K, f, n, m):
    result = [K.one]
    f = _uni_mod(K, f, m)
    while n:
        if n & 1:
            result = _uni_mulmod(K, result, f, m)
        n >>= 1
        if n:
            f = _uni_mulmod(K, f, f, m)
    return _uni_mod(K, result, m)


def _uni_derivative(K, f):
    return _strip_field(K, [K.mul(K.from_int(i), f[i]) for i in range(1, len(f))])


def _uni_eval(K, f, x):
    acc = K.zero
    for c in reversed(f):
        acc = K.add(K.mul(acc, x), c)
    return acc


class UniPoly:
    """Dense univariate polynomial over a field, lowest coefficient first.

    The coefficient tuple never ends in zero; the zero polynomial is ``()``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        self.field = field
        self.coeffs = tuple(_strip_field(field, [field.convert(c) for c in coeffs]))

    @classmethod
    def _raw(cls, field, coeffs):
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def x(cls, field):
        return cls._raw(field, [field.zero, field.one])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self):
        return not self.coeffs

    def _check(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly(self.field, [other])
        if other.field != self.field:
            raise FieldMismatch(f"{other.field} vs {self.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return UniPoly._raw(self.field, _uni_add(self.field, list(self.coeffs), list(other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return UniPoly._raw(self.field, _uni_sub(self.field, list(self.coeffs), list(other.coeffs)))

    def __neg__(self):
        return UniPoly._raw(self.field, [self.field.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        other = self._check(other)
        return UniPoly._raw(self.field, _uni_mul(self.field, list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._check(other)
        q, r = _uni_divmod(self.field, list(self.coeffs), list(other.coeffs))
        return UniPoly._raw(self.field, q), UniPoly._raw(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int):
        result = UniPoly._raw(self.field, [self.field.one])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __call__(self, x):
        return _uni_eval(self.field, list(self.coeffs), x)

    def monic(self) -> "UniPoly":
        return UniPoly._raw(self.field, _uni_monic(self.field, list(self.coeffs)))

    def derivative(self) -> "UniPoly":
        return UniPoly._raw(self.field, _uni_derivative(self.field, list(self.coeffs)))

    def gcd(self, other) -> "UniPoly":
        other = self._check(other)
        return UniPoly._raw(self.field, _uni_gcd(self.field, list(self.coeffs), list(other.coeffs)))

    def powmod(self, n: int, modulus: "UniPoly") -> "UniPoly":
        return UniPoly._raw(
            self.field, _uni_powmod(self.field, list(self.coeffs), n, list(modulus.coeffs))
        )

    def __repr__(self):
        return f"UniPoly({format_unipoly(self.coeffs, 'x', self.field)} over {self.field})"

    def __str__(self):
        return format_unipoly(self.coeffs, "x", self.field)


def format_unipoly(coeffs, var="x", field=None) -> str:
    fmt = field.format if field is not None else str
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if field is not None and field.is_zero(c) or field is None and c == 0:
            continue
        cs = fmt(c)
        if i == 0:
            term = cs
        else:
            mono = var if i == 1 else f"{var}^{i}"
            term = mono if cs == "1" else f"{cs}*{mono}" if "+" not in cs else f"({cs})*{mono}"
        parts.append(term)
    return "+".join(parts) if parts else "0"


def parse_unipoly(text: str, field: Field, var: str = "x") -> UniPoly:
    """Parse e.g. ``t^4+3*t+1`` with integer (or a/b) coefficients."""
    s = text.replace(" ", "").replace("-", "+-")
    coeffs: dict[int, object] = {}
    for term in filter(None, s.split("+")):
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        if var in term:
            head, _, tail = term.partition(var)
            head = head.rstrip("*")
            exp = int(tail[1:]) if tail.startswith("^") else 1
            if tail and not tail.startswith("^"):
                raise ParseError(f"bad term {term!r}")
            c = field.parse(head) if head else field.one
        else:
            exp, c = 0, field.parse(term)
        if sign < 0:
            c = field.neg(c)
        coeffs[exp] = field.add(coeffs.get(exp, field.zero), c)
    n = max(coeffs, default=-1)
    return UniPoly(field, [coeffs.get(i, field.zero) for i in range(n + 1)])


# ---------------------------------------------------------------------------
# factorization over finite fields


def _finite_order(K: Field) -> int:
    if K.order is None:
        raise VeroneseLabError("factorization requires a finite field")
    return K.order


def _pth_root(K: Field, a):
    """The unique p-th root of ``a`` in a finite field."""
    q = K.order
    return K.pow(a, q // K.characteristic)


def _squarefree_decomposition(K, f):
    """Monic squarefree factors with multiplicities, as list of (coeffs, mult)."""
    p = K.characteristic
    out = []
    if len(f) <= 1:
        return out
    df = _uni_derivative(K, f)
    if df:
        c = _uni_gcd(K, f, df)
        w = _uni_divmod(K, f, c)[0]
        i = 1
        while len(w) > 1:
            y = _uni_gcd(K, w, c)
            fac = _uni_divmod(K, w, y)[0]
            if len(fac) > 1:
                out.append((_uni_monic(K, fac), i))
            i += 1
            w = y
            c = _uni_divmod(K, c, y)[0]
        if len(c) > 1:
            root = [_pth_root(K, c[j]) for j in range(0, len(c), p)]
            out.extend((g, m * p) for g, m in _squarefree_decomposition(K, root))
    else:
        root = [_pth_root(K, f[j]) for j in range(0, len(f), p)]
        out.extend((g, m * p) for g, m in _squarefree_decomposition(K, root))
    return out


def _frobenius_power_x(K, m, q):
    """x^q mod m."""
    return _uni_powmod(K, [K.zero, K.one], q, m)


def _distinct_degree(K, f):
    q = _finite_order(K)
    out = []
    h = [K.zero, K.one]
    x = [K.zero, K.one]
    i = 1
    fstar = list(f)
    while len(fstar) - 1 >= 2 * i:
        h = _uni_powmod(K, h, q, fstar)
        g = _uni_gcd(K, fstar, _uni_sub(K, h, x))
        if len(g) > 1:
            out.append((g, i))
            fstar = _uni_divmod(K, fstar, g)[0]
            h = _uni_mod(K, h, fstar)
        i += 1
    if len(fstar) > 1:
        out.append((_uni_monic(K, fstar), len(fstar) - 1))
    return out


def _random_poly(K, n, rng):
    return _strip_field(K, [K.random(rng) for _ in range(n)])


def _splitting_element(K, a, f, d, q):
    """An element of K[x]/(f) that is +-1 (odd q) or 0/1 (even q) on each factor."""
    if q % 2:
        g = _uni_powmod(K, a, (q**d - 1) // 2, f)
        return _uni_sub(K, g, [K.one])
    # even characteristic: trace from F_{q^d} to F_2
    r = q.bit_length() - 1
    t = _uni_mod(K, a, f)
    acc = t
    for _ in range(r * d - 1):
        t = _uni_mulmod(K, t, t, f)
        acc = _uni_add(K, acc, t)
    return acc


def _equal_degree(K, f, d, rng, coefficient_sampler=None, q=None):
    """Split a squarefree monic f whose irreducible factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    q = q or _finite_order(K)
    factors = [f]
    attempts = 0
    while len(factors) < n // d:
        attempts += 1
        if attempts > 10_000:
            raise VeroneseLabError("equal-degree splitting did not converge")
        if coefficient_sampler is None:
            a = _random_poly(K, n, rng)
        else:
            a = _strip_field(K, [coefficient_sampler(rng) for _ in range(n)])
        if len(a) < 2:
            continue
        g = _splitting_element(K, a, f, d, q)
        new = []
        for u in factors:
            if len(u) - 1 > d:
                h = _uni_gcd(K, u, _uni_mod(K, g, u)) if g else [K.one]
                if 1 < len(h) < len(u):
                    new.append(h)
                    new.append(_uni_monic(K, _uni_divmod(K, u, h)[0]))
                    continue
            new.append(u)
        factors = new
    return factors


def factor_univariate(f: UniPoly, rng=None) -> list[tuple[UniPoly, int]]:
    """Factor a nonzero polynomial over a finite field into monic irreducibles.

    Returns ``[(factor, multiplicity), ...]`` sorted by (degree, coefficients);
    constants give ``[]``.  Randomized equal-degree splitting is seeded by
    ``rng`` so the output order of the search is reproducible.
    """
    K = f.field
    _finite_order(K)
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = make_rng(rng)
    coeffs = _uni_monic(K, list(f.coeffs))
    result = []
    for sqf, mult in _squarefree_decomposition(K, coeffs):
        for block, d in _distinct_degree(K, sqf):
            for fac in _equal_degree(K, block, d, rng):
                result.append((UniPoly._raw(K, _uni_monic(K, fac)), mult))
    merged: dict = {}
    for fac, mult in result:
        merged[fac] = merged.get(fac, 0) + mult
    return sorted(merged.items(), key=lambda fm: (fm[0].degree, _sort_key(K, fm[0]), fm[1]))


def _sort_key(K, f):
    return tuple(c if isinstance(c, int) else c for c in f.coeffs)


def is_irreducible(f: UniPoly) -> bool:
    """Rabin's irreducibility test over a finite field."""
    K = f.field
    q = _finite_order(K)
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    m = _uni_monic(K, list(f.coeffs))
    x = [K.zero, K.one]
    if _uni_sub(K, _uni_powmod(K, x, q**n, m), x):
        return False
    for r in primefactors(n):
        h = _uni_sub(K, _uni_powmod(K, x, q ** (n // r), m), x)
        if len(_uni_gcd(K, m, h)) > 1:
            return False
    return True


def random_irreducible(p: int, k: int, seed=None, max_tries: int = 10_000) -> UniPoly:
    """A random monic irreducible polynomial of degree k over F_p."""
    if k < 1:
        raise ValueError("degree must be >= 1")
    K = PrimeField(p)
    rng = make_rng(seed)
    for _ in range(max_tries):
        coeffs = [int(c) for c in rng.integers(p, size=k)] + [1]
        f = UniPoly._raw(K, coeffs)
        if k == 1 or coeffs[0] and is_irreducible(f):
            return f
    raise VeroneseLabError(f"no irreducible polynomial of degree {k} found")


def extension_field(p: int, k: int, seed=None) -> Field:
    """F_{p^k}; for k = 1 this degenerates to the prime field."""
    if k == 1:
        return PrimeField(p)
    return ExtensionField(PrimeField(p), random_irreducible(p, k, seed), check=False)


def lift_coefficients(L: Field, f: UniPoly) -> list:
    return [L.convert(c) for c in f.coeffs]


def subfield_trace(L: ExtensionField, a, d: int):
    """Trace of ``a`` from L = F_{p^k} down to its subfield F_{p^d}."""
    acc = a
    cur = a
    for _ in range(L.k // d - 1):
        cur = L.frobenius(cur, d)
        acc = L.add(acc, cur)
    return acc


def roots_in_extension(f: UniPoly, L: Field, rng=None) -> list:
    """All roots in L of a monic irreducible f over the prime field.

    ``deg f`` must divide the degree of L.  One root is found by equal-degree
    splitting with coefficients drawn from the subfield F_{p^d}; the others
    are its Frobenius conjugates.
    """
    rng = make_rng(rng)
    d = f.degree
    p = L.characteristic
    if d == 1:
        return [L.convert(-f.coeffs[0] * pow(int(f.coeffs[1]), -1, p))]
    if not isinstance(L, ExtensionField) or L.k % d:
        raise FieldMismatch(f"degree {d} does not divide the extension degree of {L}")
    g = lift_coefficients(L, f)
    sampler = lambda r: subfield_trace(L, L.random(r), d)  # noqa: E731
    while len(g) > 2:
        parts = _equal_degree_one_split(L, g, d, rng, sampler, p)
        g = min(parts, key=len)
    root = L.neg(L.mul(g[0], L.inv(g[1])))
    roots = [root]
    cur = root
    for _ in range(d - 1):
        cur = L.frobenius(cur)
        roots.append(cur)
    return roots


def _equal_degree_one_split(L, g, d, rng, sampler, p):
    """One nontrivial split of g (product of linear factors over L, roots in F_{p^d})."""
    n = len(g) - 1
    for _ in range(10_000):
        a = _strip_field(L, [sampler(rng) for _ in range(n)])
        if len(a) < 2:
            continue
        h = _splitting_element(L, a, g, d, p)
        h = _uni_gcd(L, g, _uni_mod(L, h, g)) if h else [L.one]
        if 1 < len(h) < len(g):
            return [h, _uni_monic(L, _uni_divmod(L, g, h)[0])]
    raise VeroneseLabError("root finding did not converge")


def minimal_polynomial(L: Field, a) -> UniPoly:
    """Minimal polynomial over the prime field of an element of L."""
    base = L.base if isinstance(L, ExtensionField) else L
    if not isinstance(L, ExtensionField):
        return UniPoly(base, [base.neg(a), base.one])
    conj = [a]
    cur = L.frobenius(a)
    while cur != a:
        conj.append(cur)
        cur = L.frobenius(cur)
    poly = [L.one]
    for c in conj:
        poly = _uni_mul(L, poly, [L.neg(c), L.one])
    return UniPoly(base, [c[0] for c in poly])


def lcm_list(values) -> int:
    return reduce(math.lcm, values, 1)
