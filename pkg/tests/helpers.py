"""Independent oracles shared by the tests: everything here avoids the
Groebner engine."""

from veronese_lab import linalg


def degree_piece_rank(gens, d):
    """dim of the degree-d part of the ideal, spanned by monomial multiples."""
    if not gens:
        return 0
    R = gens[0].ring
    K = R.field
    target = R.monomials_of_degree(d)
    col = {m: i for i, m in enumerate(target)}
    rows = []
    for g in gens:
        e = g.degree()
        if e > d:
            continue
        for m in R.monomials_of_degree(d - e):
            h = g.mul_monomial(m)
            row = [K.zero] * len(target)
            for mono, c in h.terms.items():
                row[col[mono]] = c
            rows.append(row)
    return linalg.rank(K, rows) if rows else 0


def brute_hilbert(gens, d):
    R = gens[0].ring
    return len(R.monomials_of_degree(d)) - degree_piece_rank(gens, d)
