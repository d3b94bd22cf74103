"""Intersection numbers in rings given by generators, a top-degree pairing
table and zero rules.

A class is a dict ``{monomial: int}`` where a monomial is a sorted tuple of
generator indices (``(0, 0, 1)`` is g0^2 g1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product

from .errors import DegreeMismatch, NoSolution, NonUnique, ParseError, UncoveredMonomial


def _canon(mono) -> tuple:
    return tuple(sorted(mono))


@dataclass(frozen=True)
class ChowAmbient:
    name: str
    symbols: tuple  # generator names
    degrees: tuple  # generator degrees
    top_degree: int
    table: dict  # canonical monomial -> int
    zero_rules: tuple = ()  # monomials; any top monomial divisible by one is 0
    aliases: dict = field(default_factory=dict)  # alternate spellings of symbols

    def index(self, symbol: str) -> int:
        symbol = self.aliases.get(symbol, symbol)
        try:
            return self.symbols.index(symbol)
        except ValueError as exc:
            raise ParseError(f"unknown generator {symbol!r} in {self.name}") from exc

    def mono_degree(self, mono) -> int:
        return sum(self.degrees[i] for i in mono)

    def evaluate_monomial(self, mono) -> int:
        mono = _canon(mono)
        if self.mono_degree(mono) != self.top_degree:
            raise DegreeMismatch(f"{self.format_monomial(mono)} is not of top degree")
        if mono in self.table:
            return self.table[mono]
        for rule in self.zero_rules:
            if _divides(rule, mono):
                return 0
        raise UncoveredMonomial(f"{self.format_monomial(mono)} not covered in {self.name}")

    def format_monomial(self, mono) -> str:
        parts = []
        for i in sorted(set(mono)):
            e = mono.count(i)
            parts.append(self.symbols[i] + (f"^{e}" if e > 1 else ""))
        return "*".join(parts) if parts else "1"

    def top_monomials(self):
        """All canonical monomials of top degree."""
        out = []

        def rec(start, mono, deg):
            if deg == self.top_degree:
                out.append(tuple(mono))
                return
            for i in range(start, len(self.symbols)):
                if deg + self.degrees[i] <= self.top_degree:
                    rec(i, mono + [i], deg + self.degrees[i])

        rec(0, [], 0)
        return out

    def describe(self) -> str:
        lines = [f"{self.name}: generators " + ", ".join(f"{s} (deg {d})" for s, d in zip(self.symbols, self.degrees))]
        lines.append(f"  top degree {self.top_degree}")
        for mono in self.top_monomials():
            try:
                val = self.evaluate_monomial(mono)
            except UncoveredMonomial:
                val = "?"
            lines.append(f"  {self.format_monomial(mono)} = {val}")
        if self.zero_rules:
            lines.append("  zero rules: " + ", ".join(self.format_monomial(r) + " = 0" for r in self.zero_rules))
        return "\n".join(lines)


def _divides(a, b) -> bool:
    b = list(b)
    for x in a:
        if x in b:
            b.remove(x)
        else:
            return False
    return True


class ChowClass:
    """Integer combination of monomials of one degree in an ambient.

    A zero class remembers the degree it was formed in, so that ``c * 0``
    still multiplies into a product of the right total degree."""

    __slots__ = ("ambient", "terms", "_degree")

    def __init__(self, ambient: ChowAmbient, terms: dict, degree: int | None = None):
        self.ambient = ambient
        self.terms = {_canon(m): int(c) for m, c in terms.items() if c}
        degs = {ambient.mono_degree(m) for m in self.terms}
        if len(degs) > 1 or (degs and degree is not None and degs != {degree}):
            raise DegreeMismatch("class is not homogeneous")
        self._degree = degs.pop() if degs else (degree or 0)

    @classmethod
    def generator(cls, ambient: ChowAmbient, symbol: str) -> "ChowClass":
        return cls(ambient, {(ambient.index(symbol),): 1})

    @property
    def degree(self) -> int:
        return self._degree

    def _same_degree(self, other) -> int | None:
        if not self.terms:
            return other._degree
        if not other.terms:
            return self._degree
        if self._degree != other._degree:
            raise DegreeMismatch("class is not homogeneous")
        return self._degree

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return ChowClass(self.ambient, terms, self._same_degree(other))

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.ambient, {m: -c for m, c in self.terms.items()}, self._degree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ChowClass(self.ambient, {m: c * other for m, c in self.terms.items()}, self._degree)
        terms: dict = {}
        for (m1, c1), (m2, c2) in product(self.terms.items(), other.terms.items()):
            m = _canon(m1 + m2)
            terms[m] = terms.get(m, 0) + c1 * c2
        return ChowClass(self.ambient, terms, self._degree + other._degree)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = ChowClass(self.ambient, {(): 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, ChowClass) and self.terms == other.terms

    def __repr__(self):
        parts = []
        for m, c in sorted(self.terms.items()):
            parts.append(f"{c}*{self.ambient.format_monomial(m)}")
        return " + ".join(parts) if parts else "0"


def intersect(ambient: ChowAmbient, classes) -> int:
    """Top-degree product of the classes evaluated through the table."""
    classes = list(classes)
    if sum(c.degree for c in classes) != ambient.top_degree:
        raise DegreeMismatch(
            f"degrees {[c.degree for c in classes]} do not sum to {ambient.top_degree}"
        )
    prod = ChowClass(ambient, {(): 1})
    for c in classes:
        prod = prod * c
    return sum(c * ambient.evaluate_monomial(m) for m, c in prod.terms.items())


# ---------------------------------------------------------------------------
# ansatz solving


@dataclass
class Ansatz:
    """fixed + sum_k unknown_k * basis_k, all of one degree."""

    ambient: ChowAmbient
    unknowns: tuple  # names
    basis: tuple  # ChowClass per unknown
    fixed: ChowClass | None = None

    def substitute(self, values) -> ChowClass:
        out = self.fixed if self.fixed is not None else ChowClass(self.ambient, {})
        for v, b in zip(values, self.basis):
            out = out + b * int(v)
        return out


def solve_class(ansatz: Ansatz, constraints) -> dict:
    """Integer values of the unknowns with intersect([X] + classes) = value
    for each (classes, value) constraint."""
    amb = ansatz.ambient
    rows, rhs = [], []
    for classes, value in constraints:
        row = [intersect(amb, [b] + list(classes)) for b in ansatz.basis]
        base = intersect(amb, [ansatz.fixed] + list(classes)) if ansatz.fixed is not None else 0
        rows.append(row)
        rhs.append(value - base)
    particular, basis = _solve_integer(rows, rhs, len(ansatz.unknowns))
    if basis:
        raise NonUnique(
            f"solution space has dimension {len(basis)}",
            len(basis),
            dict(zip(ansatz.unknowns, particular)),
            [dict(zip(ansatz.unknowns, b)) for b in basis],
        )
    return dict(zip(ansatz.unknowns, particular))


def _solve_integer(rows, rhs, n):
    """Rational elimination; returns (integer particular solution, basis of
    the integer kernel directions)."""
    from fractions import Fraction

    M = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(M)):
        if M[i][n] != 0:
            raise NoSolution("constraints are inconsistent")
    free = [c for c in range(n) if c not in pivots]
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = M[i][n]
    if any(v.denominator != 1 for v in x):
        raise NoSolution("no integer solution with the free unknowns set to 0")
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -M[i][f]
        scale = 1
        for e in v:
            scale = scale * e.denominator // _gcd(scale, e.denominator)
        basis.append([int(e * scale) for e in v])
    return [int(v) for v in x], basis


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# builtin ambients


def _table(symbols, entries: dict) -> dict:
    out = {}
    for text, val in entries.items():
        mono = []
        for part in text.split("*"):
            name, _, exp = part.partition("^")
            mono.extend([symbols.index(name)] * (int(exp) if exp else 1))
        out[_canon(mono)] = val
    return out


def _rules(symbols, texts) -> tuple:
    return tuple(tuple(sorted(_table(symbols, {t: 0}))[0]) for t in texts)


def _make(name, symbols, degrees, top, entries, zero_rules=(), aliases=None):
    symbols = tuple(symbols)
    return ChowAmbient(
        name, symbols, tuple(degrees), top, _table(symbols, entries), _rules(symbols, zero_rules), aliases or {}
    )


GR13 = _make("GR13", ["a", "b"], [2, 2], 4, {"a^2": 1, "b^2": 1, "a*b": 0}, aliases={"alpha": "a", "beta": "b"})
RANK5 = _make(
    "RANK5",
    ["H", "Hp"],
    [1, 1],
    4,
    {"H^4": 2, "H^3*Hp": 2, "H^2*Hp^2": 2, "H*Hp^3": 2, "Hp^4": 0},
    aliases={"H'": "Hp"},
)
CONE3 = _make(
    "CONE3",
    ["H", "F1", "F2"],
    [1, 1, 1],
    3,
    {
        "H^3": 3,
        "F1^2*H": -1,
        "F1*F2*H": 1,
        "F1*H^2": 1,
        "F2*H^2": 1,
        "F2^2*H": 0,
        "F1^2*F2": 0,
        "F2^2*F1": 0,
    },
    zero_rules=("F1^3", "F2^3"),
)
RANK4 = _make(
    "RANK4",
    ["H", "F1", "F2"],
    [1, 1, 1],
    4,
    {"H^4": 2, "F1*H^3": 1, "F2*H^3": 1, "F1*F2*H^2": 1},
    zero_rules=("F1^2", "F2^2"),
)
RANK3 = _make("RANK3", ["H", "F"], [1, 1], 4, {"H^4": 2, "H^3*F": 1}, zero_rules=("F^2",))

BUILTIN = {a.name: a for a in (GR13, RANK5, CONE3, RANK4, RANK3)}


def get_ambient(name: str) -> ChowAmbient:
    try:
        return BUILTIN[name.upper()]
    except KeyError as exc:
        raise ParseError(f"unknown ambient {name!r}; choose from {', '.join(BUILTIN)}") from exc


# ---------------------------------------------------------------------------
# expressions

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(.))")


def parse_class(ambient: ChowAmbient, text: str):
    """Parse an expression such as ``(3a+b)*(a+3b)`` or ``(H+F1)^2*H``.

    Returns a ChowClass, or an int when the expression is a pure number."""
    names = sorted(list(ambient.symbols) + list(ambient.aliases), key=len, reverse=True)
    tokens = []
    for num, ident, other in _TOKEN.findall(text):
        if num:
            tokens.append(("num", int(num)))
        elif ident:
            # juxtaposed generators such as HH' split greedily
            while ident:
                for name in names:
                    if ident.startswith(name):
                        tokens.append(("sym", name))
                        ident = ident[len(name):]
                        break
                else:
                    raise ParseError(f"unknown generator {ident!r} in {ambient.name}")
                if ident[:1].isdigit():
                    digits = re.match(r"\d+", ident).group()
                    tokens.append(("num", int(digits)))
                    ident = ident[len(digits):]
        elif other.strip():
            if other not in "+-*^()":
                raise ParseError(f"unexpected character {other!r}")
            tokens.append(("op", other))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def one():
        return ChowClass(ambient, {(): 1})

    def expr():
        sign = 1
        if peek() in (("op", "+"), ("op", "-")):
            sign = -1 if take()[1] == "-" else 1
        val = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = factor()
        while True:
            kind, v = peek()
            if (kind, v) == ("op", "*"):
                take()
                val = val * factor()
            elif kind in ("num", "sym") or (kind, v) == ("op", "("):
                val = val * factor()
            else:
                return val

    def factor():
        val = atom()
        if peek() == ("op", "^"):
            take()
            kind, e = take()
            if kind != "num":
                raise ParseError("exponent must be an integer")
            val = val**e
        return val

    def atom():
        kind, v = take()
        if kind == "num":
            return one() * v
        if kind == "sym":
            return ChowClass.generator(ambient, v)
        if (kind, v) == ("op", "("):
            val = expr()
            if take() != ("op", ")"):
                raise ParseError("unbalanced parenthesis")
            return val
        raise ParseError(f"unexpected token {v!r}")

    if not tokens:
        raise ParseError("empty expression")
    val = expr()
    if pos != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return val


def evaluate_expression(ambient: ChowAmbient, text: str) -> int:
    """Integer value of a top-degree expression."""
    cls = parse_class(ambient, text)
    if cls.degree != ambient.top_degree:
        raise DegreeMismatch(f"expression has degree {cls.degree}, top degree is {ambient.top_degree}")
    return sum(c * ambient.evaluate_monomial(m) for m, c in cls.terms.items())
