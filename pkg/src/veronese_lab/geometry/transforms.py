"""Projective linear maps and how they act on points, forms and ideals."""

from __future__ import annotations

from functools import cached_property
from itertools import combinations

from .. import linalg
from ..errors import NotInvertible
from ..fields import Field
from ..ideals import Ideal
from ..polynomials import MultiPoly, PolyRing, substitute

PLUCKER_PAIRS = tuple(combinations(range(4), 2))  # 01 02 03 12 13 23


class ProjectiveTransform:
    """An invertible (n+1)x(n+1) matrix acting on column vectors."""

    def __init__(self, matrix, field: Field, check: bool = True):
        self.field = field
        self.matrix = tuple(tuple(field.convert(x) for x in row) for row in matrix)
        self.size = len(self.matrix)
        if check and field.is_zero(linalg.det(field, [list(r) for r in self.matrix])):
            raise NotInvertible("projective transform must be invertible")

    @classmethod
    def identity(cls, field: Field, size: int) -> "ProjectiveTransform":
        return cls(linalg.identity(field, size), field, check=False)

    @classmethod
    def random(cls, field: Field, size: int, rng) -> "ProjectiveTransform":
        return cls(linalg.random_invertible(field, size, rng), field, check=False)

    def rows(self):
        return [list(r) for r in self.matrix]

    @cached_property
    def inverse(self) -> "ProjectiveTransform":
        return ProjectiveTransform(linalg.inverse(self.field, self.rows()), self.field, check=False)

    def __matmul__(self, other: "ProjectiveTransform") -> "ProjectiveTransform":
        return ProjectiveTransform(linalg.matmul(self.field, self.rows(), other.rows()), self.field, check=False)

    def __eq__(self, other):
        return isinstance(other, ProjectiveTransform) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"ProjectiveTransform({self.size}x{self.size} over {self.field})"

    def transpose(self) -> "ProjectiveTransform":
        return ProjectiveTransform(linalg.transpose(self.rows()), self.field, check=False)

    def apply(self, point, L: Field | None = None):
        """Image of a point given by raw coordinates over ``L`` (an extension of
        the matrix field is allowed)."""
        L = L or self.field
        out = []
        for row in self.matrix:
            acc = L.zero
            for a, x in zip(row, point):
                if not self.field.is_zero(a):
                    acc = L.add(acc, L.mul(L.convert(a), x))
            out.append(acc)
        return out

    def fixes(self, point, L: Field | None = None) -> bool:
        L = L or self.field
        image = self.apply(point, L)
        return all(
            L.is_zero(L.sub(L.mul(image[i], point[j]), L.mul(image[j], point[i])))
            for i in range(len(point))
            for j in range(i + 1, len(point))
        )

    def pull(self, f: MultiPoly) -> MultiPoly:
        """f composed with the map: x -> matrix * x."""
        R = f.ring
        return substitute(f, [R.linear_form(row) for row in self.matrix], R)

    def push_ideal(self, I: Ideal) -> Ideal:
        """Ideal of the image of V(I)."""
        inv = self.inverse
        return Ideal([inv.pull(g) for g in I.generators], I.ring)


def wedge2(h: ProjectiveTransform) -> ProjectiveTransform:
    """Induced action of a 4x4 matrix on Pluecker coordinates p01..p23."""
    K = h.field
    M = h.matrix
    rows = []
    for i, j in PLUCKER_PAIRS:
        row = []
        for k, l in PLUCKER_PAIRS:
            row.append(K.sub(K.mul(M[i][k], M[j][l]), K.mul(M[i][l], M[j][k])))
        rows.append(row)
    return ProjectiveTransform(rows, K, check=False)


def hodge_star(field: Field) -> ProjectiveTransform:
    """p01 <-> p23, p02 <-> -p13, p03 <-> p12."""
    K = field
    one, neg = K.one, K.neg(K.one)
    rows = [[K.zero] * 6 for _ in range(6)]
    rows[0][5] = one
    rows[5][0] = one
    rows[1][4] = neg
    rows[4][1] = neg
    rows[2][3] = one
    rows[3][2] = one
    return ProjectiveTransform(rows, K, check=False)


def plucker_ring(field: Field) -> PolyRing:
    return PolyRing(["p01", "p02", "p03", "p12", "p13", "p23"], field)


def plucker_quadric(ring: PolyRing) -> MultiPoly:
    p = ring.gens()
    return p[0] * p[5] - p[1] * p[4] + p[2] * p[3]


def eigen_transform(field: Field, points, rng, eigenvalues=None) -> ProjectiveTransform:
    """Random invertible matrix with each given (independent) point as an
    eigenvector: B [[diag(l), R], [0, S]] B^-1 with B = [points | random]."""
    from ..errors import DependentPoints

    K = field
    m = len(points)
    n = len(points[0])
    if linalg.rank(K, [list(p) for p in points]) < m:
        raise DependentPoints(f"{m} points are linearly dependent")
    for _ in range(64):
        extra = linalg.random_matrix(K, n - m, n, rng)
        basis_rows = [list(p) for p in points] + extra
        if linalg.rank(K, basis_rows) == n:
            break
    else:  # pragma: no cover - probability ~ n/p per draw
        raise DependentPoints("could not complete the points to a basis")
    B = linalg.transpose(basis_rows)
    if eigenvalues is None:
        eigenvalues = []
        while len(eigenvalues) < m:
            lam = K.random_nonzero(rng)
            if lam not in eigenvalues:
                eigenvalues.append(lam)
    S = linalg.random_invertible(K, n - m, rng) if n > m else []
    block = linalg.zeros(K, n, n)
    for i in range(m):
        block[i][i] = eigenvalues[i]
        for j in range(m, n):
            block[i][j] = K.random(rng)
    for i in range(m, n):
        for j in range(m, n):
            block[i][j] = S[i - m][j - m]
    M = linalg.matmul(K, linalg.matmul(K, B, block), linalg.inverse(K, B))
    return ProjectiveTransform(M, K, check=False)
