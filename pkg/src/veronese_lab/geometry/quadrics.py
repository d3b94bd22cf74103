"""Quadric hypersurfaces: Gram matrices, rank and vertex, the quadrics through
a scheme, and random isometries."""

from __future__ import annotations

from dataclasses import dataclass

from .. import linalg
from ..errors import ConstraintInfeasible, NotInvertible
from ..fields import Field, make_rng
from ..ideals import Ideal, hilbert_function, irrelevant_ideal, normal_form, saturate
from ..polynomials import GREVLEX, MultiPoly, PolyRing
from .transforms import ProjectiveTransform, eigen_transform

DEFAULT_ISOMETRY_TRIES = 16


@dataclass(frozen=True)
class QuadricForm:
    """x^T gram x, with gram symmetric."""

    gram: tuple
    ring: PolyRing

    @classmethod
    def from_poly(cls, f: MultiPoly) -> "QuadricForm":
        R = f.ring
        K = R.field
        if not f.is_homogeneous() or f.degree() != 2:
            raise ValueError("expected a quadratic form")
        half = K.inv(K.from_int(2))
        G = [[K.zero] * R.n for _ in range(R.n)]
        for m, c in f.terms.items():
            e = R.decode(m)
            idx = [i for i, v in enumerate(e) for _ in range(v)]
            i, j = idx
            if i == j:
                G[i][i] = c
            else:
                G[i][j] = G[j][i] = K.mul(c, half)
        return cls(tuple(tuple(r) for r in G), R)

    @classmethod
    def from_gram(cls, gram, ring: PolyRing) -> "QuadricForm":
        K = ring.field
        G = tuple(tuple(K.convert(x) for x in row) for row in gram)
        if any(G[i][j] != G[j][i] for i in range(len(G)) for j in range(len(G))):
            raise ValueError("Gram matrix must be symmetric")
        return cls(G, ring)

    @property
    def field(self) -> Field:
        return self.ring.field

    def rows(self):
        return [list(r) for r in self.gram]

    def poly(self) -> MultiPoly:
        R = self.ring
        K = R.field
        x = R.gens()
        acc = R.zero
        for i in range(R.n):
            for j in range(i, R.n):
                c = self.gram[i][j]
                if K.is_zero(c):
                    continue
                if i != j:
                    c = K.add(c, c)
                acc = acc + (x[i] * x[j]).scale(c)
        return acc

    def rank(self) -> int:
        return linalg.rank(self.field, self.rows())

    def bilinear(self, u, v):
        K = self.field
        return sum_field(K, (K.mul(u[i], sum_field(K, (K.mul(self.gram[i][j], v[j]) for j in range(len(v))))) for i in range(len(u))))

    def is_isometry(self, g: ProjectiveTransform, similitude=None) -> bool:
        K = self.field
        M = g.rows()
        lhs = linalg.matmul(K, linalg.matmul(K, linalg.transpose(M), self.rows()), M)
        lam = K.one if similitude is None else K.convert(similitude)
        return all(
            K.is_zero(K.sub(lhs[i][j], K.mul(lam, self.gram[i][j])))
            for i in range(len(M))
            for j in range(len(M))
        )


def sum_field(K, values):
    acc = K.zero
    for v in values:
        acc = K.add(acc, v)
    return acc


def quadric_rank_vertex(Q) -> tuple[int, Ideal]:
    """Rank of the Gram matrix and the ideal of linear forms cutting out the
    vertex (the projectivized kernel)."""
    if isinstance(Q, MultiPoly):
        Q = QuadricForm.from_poly(Q)
    R = Q.ring
    rows = linalg.row_space(Q.field, Q.rows())
    forms = [R.linear_form(r) for r in rows]
    return len(rows), Ideal(forms, R)


def quadrics_through(J: Ideal, d: int = 2) -> list[MultiPoly]:
    """Basis of the degree-d forms in the saturation of J."""
    R = J.ring
    K = R.field
    S = saturate(J, irrelevant_ideal(R)) if J.generators else J
    G = R.with_order(GREVLEX)
    basis = S.grevlex_basis() if S.generators else []
    monos = G.monomials_of_degree(d)
    if not basis:
        return []
    nfs = [normal_form(G._make({m: K.one}), basis) for m in monos]
    support = sorted({m for f in nfs for m in f.terms}, reverse=True)
    col = {m: i for i, m in enumerate(support)}
    # rows = monomials, columns = normal-form coordinates; left kernel gives
    # combinations whose normal form vanishes
    matrix = []
    for f in nfs:
        row = [K.zero] * len(support)
        for m, c in f.terms.items():
            row[col[m]] = c
        matrix.append(row)
    if support:
        kern = linalg.left_kernel(K, matrix)
    else:
        kern = linalg.identity(K, len(monos))
    out = []
    for v in kern:
        f = G._make({m: c for m, c in zip(monos, v) if not K.is_zero(c)})
        out.append(R.convert(f))
    expected = len(monos) - hilbert_function(S, d)
    assert len(out) == expected, (len(out), expected)
    return out


# ---------------------------------------------------------------------------
# isometries


def _reflection(K, G0, v):
    """Reflection in the anisotropic vector v for the form G0."""
    n = len(v)
    Gv = linalg.matvec(K, G0, v)
    q = sum_field(K, (K.mul(a, b) for a, b in zip(v, Gv)))
    coef = K.div(K.from_int(2), q)
    M = linalg.identity(K, n)
    for i in range(n):
        for j in range(n):
            M[i][j] = K.sub(M[i][j], K.mul(coef, K.mul(v[i], Gv[j])))
    return M


def random_isometry(Q: QuadricForm, constraints=(), seed=None, tries: int = DEFAULT_ISOMETRY_TRIES) -> ProjectiveTransform:
    """A random g with g^T gram g = gram fixing each constraint point
    projectively.

    In a basis (complement | kernel) the isometries have block form
    [[O, 0], [N, T]] with O orthogonal for the nondegenerate part.  O is a
    product of reflections in anisotropic vectors orthogonal to the
    constraints (so it fixes their nondegenerate parts), and (N, T) is drawn
    from the affine space of solutions of the fixed-point conditions.
    """
    K = Q.field
    rng = make_rng(seed)
    n = len(Q.gram)
    gram = Q.rows()
    kern = linalg.kernel(K, gram)
    s = len(kern)
    r = n - s
    # complete the kernel to a basis with standard vectors
    comp = []
    current = [list(v) for v in kern]
    for i in range(n):
        e = [K.one if j == i else K.zero for j in range(n)]
        if linalg.rank(K, current + comp + [e]) > len(current) + len(comp):
            comp.append(e)
        if len(comp) == r:
            break
    B = linalg.transpose(comp + [list(v) for v in kern])  # columns = basis
    Binv = linalg.inverse(K, B)
    G0 = [[Q.bilinear(comp[i], comp[j]) for j in range(r)] for i in range(r)]
    cons = []
    for pt in constraints:
        c = linalg.matvec(K, Binv, [K.convert(x) for x in pt])
        cons.append((c[:r], c[r:]))
    outside = [a for a, _ in cons if any(not K.is_zero(x) for x in a)]
    # vectors v with v^T G0 a = 0 for the nondegenerate parts a
    orth_rows = [linalg.matvec(K, G0, a) for a in outside]
    orth_space = linalg.kernel(K, orth_rows, ncols=r) if orth_rows else linalg.identity(K, r)
    for _ in range(tries):
        O = linalg.identity(K, r)
        if orth_space:
            for _ in range(r + 2):
                w = [K.random(rng) for _ in orth_space]
                v = [sum_field(K, (K.mul(c, b[i]) for c, b in zip(w, orth_space))) for i in range(r)]
                Gv = linalg.matvec(K, G0, v)
                if K.is_zero(sum_field(K, (K.mul(a, b) for a, b in zip(v, Gv)))):
                    continue
                O = linalg.matmul(K, _reflection(K, G0, v), O)
        N, T = _sample_lower_blocks(K, r, s, cons, rng)
        if N is None:
            continue
        block = linalg.zeros(K, n, n)
        for i in range(r):
            for j in range(r):
                block[i][j] = O[i][j]
        for i in range(s):
            for j in range(r):
                block[r + i][j] = N[i][j]
            for j in range(s):
                block[r + i][r + j] = T[i][j]
        M = linalg.matmul(K, linalg.matmul(K, B, block), Binv)
        try:
            g = ProjectiveTransform(M, K)
        except NotInvertible:
            continue
        if Q.is_isometry(g) and all(g.fixes([K.convert(x) for x in pt]) for pt in constraints):
            return g
    raise ConstraintInfeasible(f"no isometry satisfying the constraints after {tries} samples")


def _sample_lower_blocks(K, r, s, cons, rng):
    """Random (N, T) with N a + T k = mu k for each constraint (a, k); mu = 1
    for points with a != 0 (O fixes a) and random for kernel points."""
    if s == 0:
        return [], []
    nvars = s * r + s * s

    def n_idx(i, j):
        return i * r + j

    def t_idx(i, j):
        return s * r + i * s + j

    rows, rhs = [], []
    for a, k in cons:
        in_kernel = all(K.is_zero(x) for x in a)
        mu = K.random_nonzero(rng) if in_kernel else K.one
        for i in range(s):
            row = [K.zero] * nvars
            for j in range(r):
                row[n_idx(i, j)] = a[j]
            for j in range(s):
                row[t_idx(i, j)] = k[j]
            rows.append(row)
            rhs.append(K.mul(mu, k[i]))
    if rows:
        part = linalg.solve(K, rows, rhs)
        if part is None:
            return None, None
        kern = linalg.kernel(K, rows)
    else:
        part = [K.zero] * nvars
        kern = linalg.identity(K, nvars)
    x = list(part)
    for v in kern:
        c = K.random(rng)
        x = [K.add(a, K.mul(c, b)) for a, b in zip(x, v)]
    N = [[x[n_idx(i, j)] for j in range(r)] for i in range(s)]
    T = [[x[t_idx(i, j)] for j in range(s)] for i in range(s)]
    if K.is_zero(linalg.det(K, T)):
        return None, None
    return N, T


def fixed_point_transform(points, field: Field, seed=None) -> ProjectiveTransform:
    """Random invertible map with each given point as an eigenvector, with
    distinct random eigenvalues."""
    return eigen_transform(field, [[field.convert(x) for x in p] for p in points], make_rng(seed))
