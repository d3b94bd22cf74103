"""Point configurations, Gale transforms and their certificates.

When a configuration over F_{p^k} is a union of Frobenius orbits (as the
points of a scheme defined over F_p are), the kernel basis is chosen over
F_p in the space of Frobenius-equivariant vectors.  The transformed points
are then permuted by Frobenius in the same way, so everything computed from
them downstream (for instance quartics singular at them) is defined over F_p.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations_with_replacement

from .. import linalg
from ..errors import RankDeficient
from ..fields import ExtensionField, Field, PrimeField, make_rng, subfield_trace
from ..polynomials import MultiPoly, PolyRing, evaluate


@dataclass
class PointConfiguration:
    """d labelled points of P^s over ``field``, rows normalized so the first
    nonzero coordinate is 1.  ``orbits`` lists (start, size) blocks of
    Frobenius conjugates P, F(P), F^2(P), ... when known."""

    points: tuple
    field: Field
    orbits: tuple | None = dc_field(default=None)

    def __post_init__(self):
        K = self.field
        if not self.points:
            raise ValueError("a configuration needs at least one point")
        self.points = tuple(tuple(linalg.normalize_projective(K, list(p))) for p in self.points)

    @classmethod
    def from_split(cls, split_points) -> "PointConfiguration":
        pts = list(split_points)
        L = pts[0].field
        orbits = []
        seen = {}
        for idx, sp in enumerate(pts):
            if sp.orbit not in seen:
                seen[sp.orbit] = idx
                orbits.append((idx, sp.orbit_size))
        return cls(tuple(sp.coordinates for sp in pts), L, tuple(orbits))

    @property
    def d(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return len(self.points[0]) - 1

    def matrix(self):
        return [list(p) for p in self.points]

    def is_galois_stable(self) -> bool:
        if self.orbits is None:
            return False
        L = self.field
        if not isinstance(L, ExtensionField):
            return True
        covered = sum(size for _, size in self.orbits)
        if covered != self.d:
            return False
        for start, size in self.orbits:
            for i in range(size):
                cur = self.points[start + i]
                nxt = self.points[start + (i + 1) % size]
                if tuple(L.frobenius(c) for c in cur) != nxt:
                    return False
        return True


@dataclass
class GaleResult:
    """Transformed configuration plus the certificate A^T diag(lam) B = 0."""

    config: PointConfiguration
    scalars: tuple

    def check(self, source: PointConfiguration) -> bool:
        return orthogonality_holds(source.field, source.matrix(), self.config.matrix(), self.scalars)


def orthogonality_holds(L: Field, A, B, lam) -> bool:
    if any(L.is_zero(x) for x in lam):
        return False
    for r in range(len(A[0])):
        for c in range(len(B[0])):
            acc = L.zero
            for j in range(len(A)):
                acc = L.add(acc, L.mul(L.mul(A[j][r], lam[j]), B[j][c]))
            if not L.is_zero(acc):
                return False
    return True


def orthogonality_scalars(L: Field, A, B, rng=None):
    """Nonzero lam with A^T diag(lam) B = 0, or None.

    Returns (lam, dimension of the solution space)."""
    d = len(A)
    rows = []
    for r in range(len(A[0])):
        for c in range(len(B[0])):
            rows.append([L.mul(A[j][r], B[j][c]) for j in range(d)])
    kern = linalg.kernel(L, rows)
    if not kern:
        return None, 0
    rng = make_rng(0 if rng is None else rng)
    for attempt in range(16):
        if len(kern) == 1 or attempt == 0:
            lam = list(kern[0])
        else:
            lam = [L.zero] * d
            for v in kern:
                c = L.random(rng)
                lam = [L.add(a, L.mul(c, b)) for a, b in zip(lam, v)]
        if all(not L.is_zero(x) for x in lam):
            return lam, len(kern)
        if len(kern) == 1:
            break
    return None, len(kern)


def _subfield_basis(L: ExtensionField, d: int, rng):
    """An F_p-basis of the subfield F_{p^d} inside L."""
    if d == 1:
        return [L.one]
    basis = []
    for _ in range(1000):
        cand = subfield_trace(L, L.random(rng), d)
        trial = basis + [cand]
        if linalg.rank(L.base, [list(v) for v in trial]) == len(trial):
            basis = trial
            if len(basis) == d:
                return basis
    raise RankDeficient("could not find a subfield basis")


def gale_transform(config: PointConfiguration, seed=0) -> GaleResult:
    """d points in P^s -> d points in P^(d-s-2) from a kernel basis of A^T."""
    L = config.field
    A = config.matrix()
    d, s1 = len(A), len(A[0])
    if linalg.rank(L, A) != s1:
        raise RankDeficient(f"configuration spans less than P^{s1 - 1}")
    if d < s1 + 2:
        raise RankDeficient("need at least s + 3 points")
    if isinstance(L, ExtensionField) and config.is_galois_stable():
        cols = _equivariant_kernel(config, make_rng(seed))
    else:
        cols = linalg.kernel(L, linalg.transpose(A))
    B = [[v[j] for v in cols] for j in range(d)]
    lam = []
    normed = []
    for row in B:
        if all(L.is_zero(x) for x in row):
            raise RankDeficient("a Gale point vanishes; the configuration is degenerate")
        lead = next(x for x in row if not L.is_zero(x))
        inv = L.inv(lead)
        normed.append([L.mul(inv, x) for x in row])
        lam.append(lead)
    out = PointConfiguration(tuple(tuple(r) for r in normed), L, config.orbits)
    return GaleResult(out, tuple(lam))


def _equivariant_kernel(config: PointConfiguration, rng):
    """F_p-basis of the Frobenius-equivariant vectors c with A^T c = 0,
    returned as vectors over L."""
    L = config.field
    K = L.base
    A = config.matrix()
    s1 = len(A[0])
    unknowns = []  # (orbit start, orbit size, basis element)
    for start, size in config.orbits:
        for beta in _subfield_basis(L, size, rng):
            unknowns.append((start, size, beta))
    # each unknown contributes sum_i F^i(A_rep * beta) to A^T c
    rows = []
    contributions = []
    for start, size, beta in unknowns:
        vec = []
        for r in range(s1):
            acc = L.zero
            for i in range(size):
                acc = L.add(acc, L.mul(A[start + i][r], L.frobenius(beta, i)))
            vec.extend(acc)
        contributions.append(vec)
    rows = linalg.transpose(contributions)
    kern = linalg.kernel(K, rows, ncols=len(unknowns))
    cols = []
    for v in kern:
        c = [L.zero] * config.d
        for coef, (start, size, beta) in zip(v, unknowns):
            if coef:
                for i in range(size):
                    term = L.scale(coef, L.frobenius(beta, i))
                    c[start + i] = L.add(c[start + i], term)
        cols.append(c)
    return cols


def projective_equivalence(X: PointConfiguration, Y: PointConfiguration):
    """An invertible T (as rows) mapping each point of Y to the same-labelled
    point of X, or None."""
    L = X.field
    if Y.field != L or X.d != Y.d or X.dim != Y.dim:
        return None
    n = X.dim + 1
    d = X.d
    # unknowns: T (n*n entries), mu_j (d) with T y_j - mu_j x_j = 0
    rows = []
    for j in range(d):
        y, x = Y.points[j], X.points[j]
        for r in range(n):
            row = [L.zero] * (n * n + d)
            for c in range(n):
                row[r * n + c] = y[c]
            row[n * n + j] = L.neg(x[r])
            rows.append(row)
    kern = linalg.kernel(L, rows)
    if not kern:
        return None
    rng = make_rng(0)
    for attempt in range(8):
        if attempt == 0:
            v = kern[0]
        else:
            v = [L.zero] * (n * n + d)
            for b in kern:
                c = L.random(rng)
                v = [L.add(a, L.mul(c, e)) for a, e in zip(v, b)]
        T = [[v[r * n + c] for c in range(n)] for r in range(n)]
        mus = v[n * n:]
        if all(not L.is_zero(m) for m in mus) and not L.is_zero(linalg.det(L, T)):
            return T
    return None


def projectively_equivalent(X: PointConfiguration, Y: PointConfiguration) -> bool:
    return projective_equivalence(X, Y) is not None


def quartics_singular_at(config: PointConfiguration, ring: PolyRing | None = None) -> list[MultiPoly]:
    """Basis of quartic forms all of whose first partials vanish at every
    point.  For a Frobenius-stable configuration the system is solved over
    the prime field (the solution space is defined there); otherwise over
    the configuration's field."""
    L = config.field
    n = config.dim + 1
    over_base = isinstance(L, ExtensionField) and config.is_galois_stable()
    K = L.base if over_base else L
    if ring is None:
        ring = PolyRing([f"x{i}" for i in range(n)], K)
    monos = ring.monomials_of_degree(4)
    basis = [ring._make({m: K.one}) for m in monos]
    partials = [[b.derivative(i) for i in range(n)] for b in basis]
    rows = []
    points = config.points
    if over_base:
        points = [config.points[start] for start, _ in config.orbits]
    for pt in points:
        for i in range(n):
            values = [evaluate(partials[k][i], pt, L) for k in range(len(monos))]
            if over_base:
                for comp in range(L.k):
                    rows.append([v[comp] for v in values])
            else:
                rows.append(values)
    kern = linalg.kernel(K, rows)
    return [ring._make({m: c for m, c in zip(monos, v) if not K.is_zero(c)}) for v in kern]


def monomial_exponents(n: int, d: int):
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out
