"""Veronese surfaces in P^5 and secant congruences of twisted cubics.

The standard surface is the image of u -> nu2(u) with
nu2(u) = (u0^2, u0u1, u0u2, u1^2, u1u2, u2^2); its ideal is generated by the
2x2 minors of the symmetric matrix [[x0,x1,x2],[x1,x3,x4],[x2,x4,x5]].
Every other surface here is a translate g(X) of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .. import linalg
from ..fields import Field
from ..ideals import (
    Ideal,
    eliminate,
    irrelevant_ideal,
    saturate,
)
from ..polynomials import MonomialOrder, MultiPoly, PolyRing, substitute
from .transforms import PLUCKER_PAIRS, ProjectiveTransform, hodge_star, plucker_ring, wedge2

P5_NAMES = ("x0", "x1", "x2", "x3", "x4", "x5")
PLANE_NAMES = ("u0", "u1", "u2")
# symmetric 3x3 position of each coordinate of P^5
SYM_INDEX = ((0, 1, 2), (1, 3, 4), (2, 4, 5))


def p5_ring(field: Field, names=P5_NAMES) -> PolyRing:
    return PolyRing(names, field)


def plane_ring(field: Field) -> PolyRing:
    return PolyRing(PLANE_NAMES, field)


def veronese_matrix(ring: PolyRing):
    x = ring.gens()
    return [[x[SYM_INDEX[i][j]] for j in range(3)] for i in range(3)]


def minors(M, k: int) -> list:
    rows, cols = len(M), len(M[0])
    out = []
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            out.append(_det([[M[r][c] for c in cs] for r in rs]))
    return out


def _det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        sub = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def nu2(field: Field, u):
    K = field
    return [
        K.mul(u[0], u[0]),
        K.mul(u[0], u[1]),
        K.mul(u[0], u[2]),
        K.mul(u[1], u[1]),
        K.mul(u[1], u[2]),
        K.mul(u[2], u[2]),
    ]


def standard_veronese_ideal(ring: PolyRing) -> Ideal:
    gens = []
    for g in minors(veronese_matrix(ring), 2):
        if g and g not in gens and -g not in gens:
            gens.append(g)
    return Ideal(gens, ring)


def veronese_ideal(g: ProjectiveTransform, ring: PolyRing | None = None) -> Ideal:
    """Ideal of g(X) for the standard Veronese surface X."""
    ring = ring or p5_ring(g.field)
    return g.push_ideal(standard_veronese_ideal(ring))


def veronese_parametrization(g: ProjectiveTransform, ring: PolyRing | None = None) -> list[MultiPoly]:
    """Six quadrics in u0,u1,u2 giving u -> g * nu2(u)."""
    ring = ring or plane_ring(g.field)
    u = ring.gens()
    mons = [u[0] * u[0], u[0] * u[1], u[0] * u[2], u[1] * u[1], u[1] * u[2], u[2] * u[2]]
    out = []
    for row in g.matrix:
        acc = ring.zero
        for c, m in zip(row, mons):
            if not g.field.is_zero(c):
                acc = acc + m.scale(c)
        out.append(acc)
    return out


def pullback_to_plane(J: Ideal, g: ProjectiveTransform) -> Ideal:
    """Preimage in P^2 of V(J) under u -> g nu2(u), saturated."""
    plane = plane_ring(J.ring.field)
    images = veronese_parametrization(g, plane)
    gens = [substitute(f, images, plane) for f in J.generators]
    gens = [f for f in gens if f]
    if not gens:
        return Ideal([], plane)
    return saturate(Ideal(gens, plane), irrelevant_ideal(plane))


def veronese_quadric(ring: PolyRing, A) -> MultiPoly:
    """The quadric tr(A adj M) through the standard surface, A symmetric 3x3.

    Every quadric containing the surface has this form, and its rank is
    3, 4 or 6 according as rank A is 1, 2 or 3.
    """
    M = veronese_matrix(ring)
    K = ring.field
    acc = ring.zero
    for i in range(3):
        for j in range(3):
            a = K.convert(A[i][j])
            if K.is_zero(a):
                continue
            sub = [[M[r][c] for c in range(3) if c != i] for r in range(3) if r != j]
            cof = _det(sub)
            if (i + j) % 2:
                cof = -cof
            acc = acc + cof.scale(a)
    return acc


def is_on_veronese(field: Field, point) -> bool:
    """Whether the symmetric matrix of the point has rank <= 1."""
    K = field
    M = [[point[SYM_INDEX[i][j]] for j in range(3)] for i in range(3)]
    for r1, r2 in combinations(range(3), 2):
        for c1, c2 in combinations(range(3), 2):
            d = K.sub(K.mul(M[r1][c1], M[r2][c2]), K.mul(M[r1][c2], M[r2][c1]))
            if not K.is_zero(d):
                return False
    return True


def plane_preimage(field: Field, point):
    """u with nu2(u) proportional to a point of the standard surface."""
    K = field
    M = [[point[SYM_INDEX[i][j]] for j in range(3)] for i in range(3)]
    for row in M:
        if any(not K.is_zero(x) for x in row):
            return list(row)
    raise ValueError("zero point")


# ---------------------------------------------------------------------------
# secant congruences


def chord_matrix(field: Field) -> ProjectiveTransform:
    """C with chord(e) = C nu2(e), where the chord of the twisted cubic through
    parameters with elementary symmetric functions e1, e2 (homogenized by e0)
    has Pluecker vector (e0^2, e0e1, e1^2 - e0e2, e0e2, e1e2, e2^2)."""
    K = field
    one, neg = K.one, K.neg(K.one)
    rows = [[K.zero] * 6 for _ in range(6)]
    rows[0][0] = one  # e0^2
    rows[1][1] = one  # e0e1
    rows[2][3] = one  # e1^2
    rows[2][2] = neg  # -e0e2
    rows[3][2] = one  # e0e2
    rows[4][4] = one  # e1e2
    rows[5][5] = one  # e2^2
    return ProjectiveTransform(rows, K, check=False)


def congruence_transform(h: ProjectiveTransform, dualize: bool = False) -> ProjectiveTransform:
    """G with congruence(h) = G(X) for the standard surface X."""
    g = wedge2(h) @ chord_matrix(h.field)
    if dualize:
        g = hodge_star(h.field) @ g
    return g


def congruence_ideal(h: ProjectiveTransform, dualize: bool = False, ring: PolyRing | None = None) -> Ideal:
    """Ideal in Pluecker coordinates of the chords of the twisted cubic h(C),
    computed by eliminating the chord parameters from the graph of the
    chord map."""
    K = h.field
    ring = ring or plucker_ring(K)
    W = wedge2(h)
    if dualize:
        W = hodge_star(K) @ W
    T = PolyRing(("e0", "e1", "e2") + ring.names, K, MonomialOrder("block", 3))
    v = T.gens()
    e0, e1, e2 = v[:3]
    p = v[3:]
    chord = [e0 * e0, e0 * e1, e1 * e1 - e0 * e2, e0 * e2, e1 * e2, e2 * e2]
    gens = []
    for k, row in enumerate(W.matrix):
        acc = p[k]
        for c, q in zip(row, chord):
            if not K.is_zero(c):
                acc = acc - q.scale(c)
        gens.append(acc)
    elim = eliminate(Ideal(gens, T), 3)
    return Ideal([ring.convert(g) for g in elim.generators], ring)


def twisted_cubic_point(field: Field, s, t):
    K = field
    return [
        K.mul(K.mul(s, s), s),
        K.mul(K.mul(s, s), t),
        K.mul(K.mul(s, t), t),
        K.mul(K.mul(t, t), t),
    ]


def chord_plucker(field: Field, a, b):
    """Pluecker vector of the line through points a and b of P^3."""
    K = field
    return [K.sub(K.mul(a[i], b[j]), K.mul(a[j], b[i])) for i, j in PLUCKER_PAIRS]


@dataclass
class VeroneseSurface:
    """A translate g(X) of the standard surface: ideal plus parametrization."""

    transform: ProjectiveTransform
    ideal: Ideal

    @classmethod
    def from_transform(cls, g: ProjectiveTransform, ring: PolyRing | None = None) -> "VeroneseSurface":
        return cls(g, veronese_ideal(g, ring))

    def parametrization(self, ring: PolyRing | None = None):
        return veronese_parametrization(self.transform, ring)

    def point(self, u, L: Field | None = None):
        L = L or self.transform.field
        return self.transform.apply(nu2(L, u), L)


def position_facts(field: Field, plane_points) -> dict:
    """Largest number of the given plane points on a line and on a conic,
    capped at the thresholds that matter (5 and 9)."""
    K = field
    pts = [list(p) for p in plane_points]
    lin = [[x for x in p] for p in pts]
    quad = [
        [K.mul(p[0], p[0]), K.mul(p[0], p[1]), K.mul(p[0], p[2]), K.mul(p[1], p[1]), K.mul(p[1], p[2]), K.mul(p[2], p[2])]
        for p in pts
    ]
    collinear5 = any(linalg.rank(K, [lin[i] for i in s]) <= 2 for s in combinations(range(len(pts)), 5))
    conic9 = any(linalg.rank(K, [quad[i] for i in s]) <= 5 for s in combinations(range(len(pts)), 9))
    return {"five_collinear": collinear5, "nine_on_conic": conic9}
