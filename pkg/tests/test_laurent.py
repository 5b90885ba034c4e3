import random
from fractions import Fraction

import pytest

from exphodge.errors import BadPrimeError, ParseError
from exphodge.laurent import (LaurentPolynomial, format_laurent, log_derivative,
                              make_laurent, parse_laurent, reduce_mod_p)


def test_parse_basic():
    f = parse_laurent("x + x^-1", ("x",))
    assert dict(f.terms) == {(1,): 1, (-1,): 1}


def test_parse_rational_coefficients():
    f = parse_laurent("3/2*x^2*y^-1 - 1", ("x", "y"))
    assert dict(f.terms) == {(2, -1): Fraction(3, 2), (0, 0): -1}


def test_parse_syntax_error_position():
    with pytest.raises(ParseError) as exc:
        parse_laurent("x + + y")
    assert exc.value.position == 4


def test_parse_rejects_zero():
    with pytest.raises(ParseError, match="nonzero"):
        parse_laurent("x - x")


def test_parse_unknown_variable():
    with pytest.raises(ParseError, match="unknown variable"):
        parse_laurent("x + t", ("x",))


def test_parse_infers_canonical_order():
    f = parse_laurent("y + x")
    assert f.var_names == ("x", "y")
    assert dict(f.terms) == {(1, 0): 1, (0, 1): 1}


def test_parse_term_collection():
    f = parse_laurent("x + x + y")
    assert f.terms[(1, 0)] == 2


def test_format_examples():
    assert format_laurent(make_laurent(1, {(1,): 1, (-1,): 1})) == "x + x^-1"
    assert format_laurent(make_laurent(2, {(0, 0): -1})) == "-1"
    assert format_laurent(make_laurent(2, {(2, -1): Fraction(3, 2)})) == "3/2*x^2*y^-1"


def _random_poly(rng: random.Random) -> LaurentPolynomial:
    n = rng.randint(1, 4)
    terms = {}
    for _ in range(rng.randint(1, 8)):
        alpha = tuple(rng.randint(-4, 4) for _ in range(n))
        num = rng.randint(-9, 9)
        den = rng.randint(1, 9)
        if num:
            terms[alpha] = Fraction(num, den)
    if not terms:
        terms[(1,) * n] = Fraction(1)
    return make_laurent(n, terms)


def test_roundtrip_randomized():
    rng = random.Random(20260809)
    done = 0
    while done < 150:
        f = _random_poly(rng)
        text = format_laurent(f)
        g = parse_laurent(text, f.var_names)
        assert dict(g.terms) == dict(f.terms), text
        done += 1


def test_log_derivative_examples():
    f = parse_laurent("x + x^-1")
    assert dict(log_derivative(f, 1).terms) == {(1,): 1, (-1,): -1}
    g = parse_laurent("x^2 + 2*x*y + y^2", ("x", "y"))
    assert dict(log_derivative(g, 1).terms) == {(2, 0): 2, (1, 1): 2}
    h = parse_laurent("y", ("x", "y"))
    assert log_derivative(h, 1).is_zero


def test_log_derivative_linear():
    rng = random.Random(7)
    for _ in range(50):
        f = _random_poly(rng)
        g = _random_poly(rng)
        if f.nvars != g.nvars:
            continue
        i = rng.randint(1, f.nvars)
        lhs = log_derivative(f + g, i)
        rhs = log_derivative(f, i) + log_derivative(g, i)
        assert dict(lhs.terms) == dict(rhs.terms)


def test_face_restriction_examples():
    from exphodge.polytope import newton_polytope

    g = parse_laurent("x^2 + 2*x*y + y^2", ("x", "y"))
    poly = newton_polytope(g)
    edge = next(fc for fc in poly.proper_faces_excluding_origin() if fc.dim == 1)
    from exphodge.laurent import face_restriction

    assert dict(face_restriction(g, edge).terms) == dict(g.terms)

    f = parse_laurent("x + y + x^-1*y^-1")
    poly = newton_polytope(f)
    vx = next(fc for fc in poly.proper_faces_excluding_origin()
              if fc.is_vertex and fc.vertices[0] == (1, 0))
    assert dict(face_restriction(f, vx).terms) == {(1, 0): 1}

    h = parse_laurent("x^2 + x^-1")
    poly = newton_polytope(h)
    vx = next(fc for fc in poly.proper_faces_excluding_origin() if fc.vertices[0] == (2,))
    assert dict(face_restriction(h, vx).terms) == {(2,): 1}


def test_face_restriction_whole_polytope():
    from exphodge.laurent import face_restriction
    from exphodge.polytope import newton_polytope

    f = parse_laurent("x^2 + 2*x*y + y^2", ("x", "y"))
    assert face_restriction(f, newton_polytope(f).whole_face()) == f


def test_reduce_mod_p():
    assert dict(reduce_mod_p(parse_laurent("3/2*x"), 5).terms) == {(1,): 4}
    f = parse_laurent("x + y")
    assert reduce_mod_p(f, 7) == f
    with pytest.raises(BadPrimeError):
        reduce_mod_p(parse_laurent("1/3*x"), 3)
    # residues that vanish are dropped
    assert reduce_mod_p(parse_laurent("5*x + y"), 5).terms == {(0, 1): 1}


def test_evaluate():
    f = parse_laurent("x^2 + x^-1")
    assert f.evaluate([Fraction(2)]) == Fraction(9, 2)


def test_exponent_plus_sign():
    assert dict(parse_laurent("x^+2").terms) == {(2,): 1}
