"""Apolarity, webs of quadrics orthic to twisted cubics, quartic symmetroids
and the secant variety of the rational normal sextic."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .. import linalg
from ..errors import DegenerateConfiguration, DegenerateWeb, DegreeMismatch, RankTooLow, PointNotOnScheme
from ..fields import Field
from ..ideals import (
    Ideal,
    degree_0dim,
    dimension,
    irrelevant_ideal,
    saturate,
)
from ..polynomials import MultiPoly, PolyRing, evaluate
from .quadrics import QuadricForm
from .transforms import ProjectiveTransform
from .veronese import _det, minors

X_NAMES = ("x0", "x1", "x2", "x3")
D_NAMES = ("d0", "d1", "d2", "d3")
W_NAMES = ("w0", "w1", "w2", "w3")
SEXTIC_NAMES = tuple(f"b{i}" for i in range(7))
# Gram entries a0..a9 in the order of the web's quadratic form
GRAM_ENTRIES = ((0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3))
CATALECTICANT_CONDITIONS = ((2, 4), (3, 5), (6, 7))


def apolarity_pair(D: MultiPoly, f: MultiPoly):
    """<D, f> where d_i acts on f as the derivative in x_i; for equal degrees
    this is sum over exponents alpha of D_alpha f_alpha alpha!."""
    if D.degree() != f.degree() or not D.is_homogeneous() or not f.is_homogeneous():
        raise DegreeMismatch("apolarity pairs forms of equal degree")
    if D.ring.n != f.ring.n:
        raise DegreeMismatch("rings of different dimension")
    K = f.ring.field
    acc = K.zero
    for m, c in D.terms.items():
        e = D.ring.decode(m)
        fc = f.terms.get(f.ring.encode(e))
        if fc is None:
            continue
        weight = 1
        for a in e:
            weight *= factorial(a)
        acc = K.add(acc, K.mul(K.mul(c, fc), K.from_int(weight)))
    return acc


def standard_cubic_quadrics(ring: PolyRing) -> list[MultiPoly]:
    """The three quadrics of the twisted cubic (s^3 : s^2t : st^2 : t^3)."""
    d = ring.gens()
    return [d[0] * d[2] - d[1] * d[1], d[0] * d[3] - d[1] * d[2], d[1] * d[3] - d[2] * d[2]]


def cubic_quadrics(A: ProjectiveTransform, ring: PolyRing) -> list[MultiPoly]:
    """Quadrics of the twisted cubic A(C)."""
    inv = A.inverse
    return [inv.pull(q) for q in standard_cubic_quadrics(ring)]


def _quadric_monomials(ring: PolyRing):
    return ring.monomials_of_degree(2)


@dataclass
class WebOfQuadrics:
    """Four independent quadratic forms on P^3, stored by Gram matrix."""

    quadrics: tuple  # of QuadricForm

    def __post_init__(self):
        if len(self.quadrics) != 4:
            raise DegenerateConfiguration("a web has exactly four quadrics")
        K = self.field
        flat = [[q.gram[i][j] for i, j in GRAM_ENTRIES] for q in self.quadrics]
        if linalg.rank(K, flat) != 4:
            raise DegenerateConfiguration("web quadrics are linearly dependent")

    @property
    def field(self) -> Field:
        return self.quadrics[0].field

    def grams(self):
        return [q.rows() for q in self.quadrics]


def orthic_web(A1: ProjectiveTransform, A2: ProjectiveTransform, x_ring: PolyRing | None = None) -> WebOfQuadrics:
    """The quadrics on P^3 annihilating the six quadrics of the twisted cubics
    A1(C) and A2(C) in the dual space."""
    K = A1.field
    x_ring = x_ring or PolyRing(X_NAMES, K)
    d_ring = PolyRing(D_NAMES, K)
    conditions = cubic_quadrics(A1, d_ring) + cubic_quadrics(A2, d_ring)
    monos = _quadric_monomials(x_ring)
    basis = [x_ring._make({m: K.one}) for m in monos]
    M = [[apolarity_pair(q, b) for b in basis] for q in conditions]
    kern = linalg.kernel(K, M)
    if len(kern) != 4:
        raise DegenerateConfiguration(f"annihilator has dimension {len(kern)}, expected 4")
    quads = []
    for v in kern:
        f = x_ring._make({m: c for m, c in zip(monos, v) if not K.is_zero(c)})
        quads.append(QuadricForm.from_poly(f))
    return WebOfQuadrics(tuple(quads))


def web_matrix(K: Field, grams, ring: PolyRing):
    """Symmetric matrix of linear forms sum_k w_k G_k."""
    w = ring.gens()
    n = len(grams[0])
    return [
        [ring.linear_form([G[i][j] for G in grams]) for j in range(n)]
        for i in range(n)
    ]


def hessian_matrix(web: WebOfQuadrics, ring: PolyRing | None = None):
    """4x4 symmetric matrix of linear forms in w0..w3 (Gram of the general
    member)."""
    ring = ring or PolyRing(W_NAMES, web.field)
    return web_matrix(web.field, web.grams(), ring)


def adapted_grams(web: WebOfQuadrics, coords: ProjectiveTransform):
    """Gram matrices after the coordinate change in which coords(C) becomes
    the standard cubic: G -> A^-1 G A^-T."""
    K = web.field
    Ainv = coords.inverse.rows()
    AinvT = linalg.transpose(Ainv)
    return [linalg.matmul(K, linalg.matmul(K, Ainv, G), AinvT) for G in web.grams()]


def is_catalecticant_matrix(M) -> bool:
    """Hankel test: entry (i, j) depends only on i + j."""
    n, m = len(M), len(M[0])
    for i in range(n):
        for j in range(m):
            if i + 1 < n and j > 0 and M[i][j] != M[i + 1][j - 1]:
                return False
    return True


def is_catalecticant(web: WebOfQuadrics, coords: ProjectiveTransform | None = None) -> bool:
    """Whether the web's Hessian, after the coordinate change, satisfies
    a2 = a4, a3 = a5, a6 = a7."""
    K = web.field
    grams = adapted_grams(web, coords) if coords is not None else web.grams()
    for G in grams:
        a = [G[i][j] for i, j in GRAM_ENTRIES]
        for p, q in CATALECTICANT_CONDITIONS:
            if not K.is_zero(K.sub(a[p], a[q])):
                return False
    return True


@dataclass
class CatalecticantMatrix:
    """(a+1)x(b+1) matrix whose (i, j) entry is the linear form b_{i+j}."""

    forms: tuple
    rows: int
    cols: int

    @classmethod
    def from_ring(cls, ring: PolyRing, rows: int, cols: int) -> "CatalecticantMatrix":
        return cls(tuple(ring.gens()), rows, cols)

    def matrix(self):
        return [[self.forms[i + j] for j in range(self.cols)] for i in range(self.rows)]

    def evaluate(self, point, L: Field):
        return [[evaluate(self.forms[i + j], point, L) for j in range(self.cols)] for i in range(self.rows)]

    def minors(self, k: int):
        return minors(self.matrix(), k)


def symmetroid_and_nodes(web: WebOfQuadrics, ring: PolyRing | None = None):
    """(det of the Hessian, saturated ideal of its rank <= 2 locus)."""
    ring = ring or PolyRing(W_NAMES, web.field)
    M = hessian_matrix(web, ring)
    quartic = _det(M)
    if not quartic:
        raise DegenerateWeb("determinant vanishes identically")
    gens = []
    for g in minors(M, 3):
        if g and g not in gens:
            gens.append(g)
    nodes = saturate(Ideal(gens, ring), irrelevant_ideal(ring))
    if dimension(nodes) != 0:
        raise DegenerateWeb("rank <= 2 locus is not zero-dimensional")
    return quartic, nodes


def jacobian_ideal(f: MultiPoly) -> Ideal:
    R = f.ring
    return Ideal([f.derivative(i) for i in range(R.n)], R)


def secant_sextic_ideal(field: Field, presentation: str = "3x5") -> Ideal:
    """Secant variety of the rational normal sextic in P^6, cut out by the 3x3
    minors of the 3x5 (or 4x4) catalecticant."""
    ring = PolyRing(SEXTIC_NAMES, field)
    shape = (3, 5) if presentation == "3x5" else (4, 4)
    cat = CatalecticantMatrix.from_ring(ring, *shape)
    gens = []
    for g in cat.minors(3):
        if g and g not in gens and -g not in gens:
            gens.append(g)
    return Ideal(gens, ring)


def sextic_point(field: Field, s, t):
    """Point (s^6 : s^5 t : ... : t^6) of the rational normal sextic."""
    K = field
    out = []
    for i in range(7):
        out.append(K.mul(K.pow(s, 6 - i), K.pow(t, i)))
    return out


def secant_parameters(gamma, L: Field):
    """Binary quadric (q0, q1, q2) whose roots q0 + q1 t + q2 t^2 = 0 are the
    parameters of the chord of the sextic through gamma."""
    H = [[gamma[i + j] for j in range(5)] for i in range(3)]
    rk = linalg.rank(L, H)
    if rk < 2:
        raise RankTooLow("point lies on the curve itself")
    if rk > 2:
        raise PointNotOnScheme("point is not on the secant variety")
    kern = linalg.left_kernel(L, H)
    return linalg.normalize_projective(L, kern[0])


def hankel_coordinates(L: Field, M):
    """(b0..b6) of a 4x4 Hankel matrix."""
    return [M[0][0], M[0][1], M[0][2], M[0][3], M[1][3], M[2][3], M[3][3]]


def evaluate_matrix(L: Field, M, point):
    return [[evaluate(e, point, L) for e in row] for row in M]
