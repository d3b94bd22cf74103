from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from veronese_lab import chow
from veronese_lab.chow import Ansatz, ChowClass, evaluate_expression, intersect, parse_class, solve_class
from veronese_lab.errors import DegreeMismatch, NonUnique, NoSolution, ParseError, UncoveredMonomial


def gen(amb, s):
    return ChowClass.generator(amb, s)


def test_grassmannian_products():
    g = chow.GR13
    x, y = parse_class(g, "3a+b"), parse_class(g, "a+3b")
    assert intersect(g, [x, x]) == 10
    assert intersect(g, [x, y]) == 6
    values = {intersect(g, [c, d]) for c in (x, y) for d in (x, y)}
    assert values == {6, 10}
    assert parse_class(g, "3alpha+beta") == x


def test_rank4_chern_products():
    r4 = chow.RANK4
    H, F1, F2 = gen(r4, "H"), gen(r4, "F1"), gen(r4, "F2")
    c1, c2 = H * H * 2, H * H + H * F1 + H * F2
    assert intersect(r4, [c1, c1]) == intersect(r4, [c1, c2]) == intersect(r4, [c2, c2]) == 8


def test_rank3_and_cone_products():
    assert evaluate_expression(chow.RANK3, "(2H^2)*(2H^2)") == 8
    # H^3 + 2 F1 H^2 + F1^2 H = 3 + 2 - 1
    assert evaluate_expression(chow.CONE3, "(H+F1)^2*H") == 4
    assert evaluate_expression(chow.CONE3, "F1^3") == 0


def test_exceptional_divisors():
    r5 = chow.RANK5
    H, Hp = gen(r5, "H"), gen(r5, "Hp")
    assert solve_class(Ansatz(r5, ("a", "b"), (H, Hp)), [([H**3], 0), ([Hp**3], 2)]) == {"a": 1, "b": -1}

    r4 = chow.RANK4
    H4, F1, F2 = gen(r4, "H"), gen(r4, "F1"), gen(r4, "F2")
    sol = solve_class(Ansatz(r4, ("a1", "a2"), (F1, F2), H4), [([F1 * H4 * H4], 0), ([F2 * H4 * H4], 0)])
    assert sol == {"a1": -1, "a2": -1}


def test_rank3_exceptional_divisor_from_table():
    # with H^4 = 2 and H^3 F = 1, (H + cF) H^3 = 2 + c
    r3 = chow.RANK3
    H, F = gen(r3, "H"), gen(r3, "F")
    assert solve_class(Ansatz(r3, ("c",), (F,), H), [([H**3], 0)]) == {"c": -2}


def test_rank5_surface_family():
    r5 = chow.RANK5
    H, Hp = gen(r5, "H"), gen(r5, "Hp")
    E = H - Hp
    with pytest.raises(NonUnique) as info:
        solve_class(
            Ansatz(r5, ("alpha", "beta", "gamma"), (H * H, H * Hp, Hp * Hp)),
            [([H * H], 4), ([E * Hp], 0)],
        )
    exc = info.value
    assert exc.dimension == 1
    part, direction = exc.particular, exc.basis[0]
    assert part["gamma"] == 0 and direction["gamma"] == 0
    assert part["alpha"] + part["beta"] == 2 and direction["alpha"] + direction["beta"] == 0

    def X(a):
        return H * H * a + H * Hp * (2 - a)

    assert {intersect(r5, [X(a), X(b)]) for a in range(-5, 6) for b in range(-5, 6)} == {8}


def test_no_integer_solution():
    r5 = chow.RANK5
    H = gen(r5, "H")
    with pytest.raises(NoSolution):
        # 2a = 1
        solve_class(Ansatz(r5, ("a",), (H,)), [([H**3], 1)])
    with pytest.raises(NoSolution):
        solve_class(Ansatz(r5, ("a",), (H,)), [([H**3], 0), ([H**3], 2)])


def test_errors():
    with pytest.raises(DegreeMismatch):
        evaluate_expression(chow.RANK5, "H^3")
    with pytest.raises(DegreeMismatch):
        parse_class(chow.RANK5, "H + H^2")
    with pytest.raises(ParseError):
        parse_class(chow.GR13, "3c")
    with pytest.raises(ParseError):
        parse_class(chow.GR13, "(a")
    partial = chow.ChowAmbient("partial", ("x", "y"), (1, 1), 2, {(0, 0): 1})
    with pytest.raises(UncoveredMonomial):
        intersect(partial, [ChowClass.generator(partial, "y")] * 2)
    with pytest.raises(ParseError):
        chow.get_ambient("GR24")


def test_parser_forms():
    r5 = chow.RANK5
    assert parse_class(r5, "2HH'") == gen(r5, "H") * gen(r5, "Hp") * 2
    assert parse_class(r5, "-(H - Hp)") == gen(r5, "Hp") - gen(r5, "H")
    assert evaluate_expression(r5, "H^2 * (H + Hp)^2") == 8


@pytest.mark.parametrize("amb", list(chow.BUILTIN.values()), ids=lambda a: a.name)
def test_tables_are_complete_and_symmetric(amb):
    for mono in amb.top_monomials():
        value = amb.evaluate_monomial(mono)
        assert {amb.evaluate_monomial(p) for p in permutations(mono)} == {value}
    assert amb.name in amb.describe()


# -- properties ---------------------------------------------------------------


def _classes(amb, degree):
    monos = _monomials(amb, degree)
    return st.dictionaries(st.sampled_from(monos), st.integers(-6, 6), max_size=len(monos)).map(
        lambda d: ChowClass(amb, d, degree)
    )


def _monomials(amb, degree):
    out = []

    def rec(start, mono, deg):
        if deg == degree:
            out.append(tuple(mono))
            return
        for i in range(start, len(amb.symbols)):
            if deg + amb.degrees[i] <= degree:
                rec(i, mono + [i], deg + amb.degrees[i])

    rec(0, [], 0)
    return out


@st.composite
def product_cases(draw):
    amb = draw(st.sampled_from([chow.RANK5, chow.RANK4, chow.RANK3, chow.CONE3]))
    degrees = [1] * amb.top_degree
    if amb.top_degree == 4 and draw(st.booleans()):
        degrees = [2, 1, 1]
    classes = [draw(_classes(amb, d)) for d in degrees]
    extra = draw(_classes(amb, degrees[0]))
    a, b = draw(st.integers(-5, 5)), draw(st.integers(-5, 5))
    order = draw(st.permutations(range(len(classes))))
    return amb, classes, extra, a, b, order


@settings(max_examples=300, deadline=None)
@given(product_cases())
def test_intersection_is_symmetric_and_multilinear(case):
    amb, classes, extra, a, b, order = case
    base = intersect(amb, classes)
    assert intersect(amb, [classes[i] for i in order]) == base
    combo = classes[0] * a + extra * b
    lhs = intersect(amb, [combo] + classes[1:])
    assert lhs == a * base + b * intersect(amb, [extra] + classes[1:])
