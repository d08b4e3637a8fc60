import pytest
from hypothesis import given, strategies as st

from segrekit.errors import NotHomogeneousError, ParseError, RingMismatchError
from segrekit.ffpoly import (GREVLEX, LEX, MonomialOrder, Polynomial, PrimeField, Ring,
                             jacobian_ideal_generators, monomials_of_degree, parse_polynomial)

R3 = Ring(["x0", "x1", "x2", "x3"])
XY = Ring(["x", "y"])


def test_prime_field_basics():
    F = PrimeField()
    assert F.p == 32749
    assert F(-1) == 32748
    assert F.inv(3) * 3 % F.p == 1
    with pytest.raises(ValueError):
        PrimeField(32750)
    assert PrimeField((1 << 61) - 1).p == (1 << 61) - 1
    assert F.check_genericity(13) and not PrimeField(101).check_genericity(13)


@given(st.integers(1, 32748))
def test_inverse(a):
    F = PrimeField()
    assert F.inv(a) * a % F.p == 1


def test_parse_examples():
    f = R3.parse("x1*x2^3*x3^5")
    assert list(f.items()) == [((0, 1, 3, 5), 1)]
    assert R3.parse("0").is_zero() and R3.parse("0").terms() == []
    assert XY.parse("(x+y)^2 - x^2 - 2*x*y") == XY.parse("y^2")
    assert XY.parse("-x + 3") == XY.constant(3) - XY.gen(0)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as e:
        XY.parse("x + * y")
    assert e.value.pos == 4
    with pytest.raises(ParseError, match="unknown variable"):
        XY.parse("x + z")
    with pytest.raises(ParseError):
        XY.parse("(x + y")


def test_ring_ops():
    x, y = XY.gens()
    assert (x + y) * (x - y) == x ** 2 - y ** 2
    assert (x * 0).is_zero()
    G5 = Ring(["x"], 5)
    z = G5.gen(0)
    assert (z + 1) ** 3 == G5.parse("x^3 + 3*x^2 + 3*x + 1")
    with pytest.raises(RingMismatchError):
        x + R3.gen(0)


def test_terms_sorted_descending():
    f = XY.parse("y^3 + x*y + x^2 + 1")
    keys = [GREVLEX.key(e) for e, _ in f.terms()]
    assert keys == sorted(keys, reverse=True)
    assert f.leading_monomial(LEX) == (2, 0)
    assert f.leading_monomial(GREVLEX) == (0, 3)


def test_grevlex_tie_break():
    # x0*x2^2 vs x1^3 in grevlex: smaller last exponent wins
    R = Ring(["a", "b", "c"])
    assert GREVLEX.key((0, 3, 0)) > GREVLEX.key((1, 0, 2))
    assert GREVLEX.key((1, 1, 0)) > GREVLEX.key((0, 2, 0)) > GREVLEX.key((1, 0, 1))


def test_elimination_order():
    el = MonomialOrder.parse("elim(1)")
    # any monomial with x0 dominates x0-free ones
    assert el.key((1, 0, 0)) > el.key((0, 5, 5))
    assert el.name == "elim(1)"


def test_derivatives():
    f = R3.parse("x1^2*x2^3*x3^5")
    assert f.diff(2) == R3.parse("3*x1^2*x2^2*x3^5")
    assert R3.parse("x0^7").diff(1).is_zero()
    R5 = Ring([f"x{i}" for i in range(6)])
    F = R5.parse("x0^7- x1^7 - (x2^3+x3^3+x4^3+x5^3)*x0^4")
    assert F.diff(0) == R5.parse("7*x0^6 - 4*(x2^3+x3^3+x4^3+x5^3)*x0^3")


def test_true_partial_differs_from_misprint():
    f = R3.parse("x1^2*x2^3*x3^5")
    assert f.diff(2) != R3.parse("3*x1^2*x2^2*x3^4")


def test_jacobian_generators():
    x1x2x3 = R3.parse("x1*x2*x3")
    gens = jacobian_ideal_generators(x1x2x3)
    assert gens == [R3.parse("x2*x3"), R3.parse("x1*x3"), R3.parse("x1*x2")]
    assert jacobian_ideal_generators(R3.parse("x0^4")) == [R3.parse("4*x0^3")]
    P2 = Ring(["x0", "x1", "x2"])
    assert len(jacobian_ideal_generators(P2.parse("x0^2+x1^2+x2^2"))) == 3
    with pytest.raises(NotHomogeneousError):
        jacobian_ideal_generators(P2.parse("x0^2 + x1"))


def test_exponent_overflow_is_an_error():
    with pytest.raises((ValueError, OverflowError)):
        XY.monomial((70000, 0))


def test_monomials_of_degree_count():
    assert len(monomials_of_degree(4, 3)) == 20


# ---------------------------------------------------------------- properties

N = 3
RING = Ring(["a", "b", "c"])
exps = st.tuples(*[st.integers(0, 3)] * N)
polys = st.dictionaries(exps, st.integers(1, RING.p - 1), max_size=6).map(lambda d: Polynomial(RING, d))


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + (-a)).is_zero()
    assert a * b == b * a


@given(exps, exps, exps)
def test_order_compatible_with_multiplication(m1, m2, m):
    for order in (GREVLEX, LEX, MonomialOrder.parse("elim(1)")):
        if order.key(m1) < order.key(m2):
            prod1 = tuple(a + b for a, b in zip(m1, m))
            prod2 = tuple(a + b for a, b in zip(m2, m))
            assert order.key(prod1) < order.key(prod2)


@given(st.integers(0, 9), st.integers(0, 9))
def test_univariate_orders_agree(i, j):
    assert (GREVLEX.key((i,)) < GREVLEX.key((j,))) == (LEX.key((i,)) < LEX.key((j,)))


@given(polys)
def test_print_parse_roundtrip(f):
    assert parse_polynomial(f.to_string(), RING) == f


@given(st.integers(1, 4), st.data())
def test_euler_relation(d, data):
    monos = monomials_of_degree(N, d)
    coeffs = data.draw(st.lists(st.integers(0, RING.p - 1), min_size=len(monos), max_size=len(monos)))
    F = Polynomial(RING, {m: c for m, c in zip(monos, coeffs) if c})
    lhs = RING.zero()
    for i in range(N):
        lhs = lhs + RING.gen(i) * F.diff(i)
    assert lhs == F.scale(d)


def test_ring_axioms_ten_thousand_triples():
    import random
    rng = random.Random(7)

    def rand_poly():
        return Polynomial(RING, {tuple(rng.randint(0, 2) for _ in range(N)): rng.randrange(1, RING.p)
                                 for _ in range(rng.randint(0, 4))})

    for _ in range(10_000):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a + (-a)).is_zero()
