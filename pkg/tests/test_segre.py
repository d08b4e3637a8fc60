import random

import pytest

from helpers import bezout_part, projective_ring, random_excess_ideal
from segrekit.chow import ChowClass, residual_segre, tensor_line
from segrekit.errors import NotHomogeneousError
from segrekit.ffpoly import Polynomial, jacobian_ideal_generators, monomials_of_degree
from segrekit.groebner import Ideal
from segrekit.segre import (RandomPlan, projective_degrees, segre_class, segre_with_degrees,
                            truncate_to_common_degree)

P2 = projective_ring(2)
P3 = projective_ring(3)


def ideal(R, *texts):
    return Ideal(R, [R.parse(t) for t in texts])


THREE_LINES = ideal(P3, "x1*x2", "x1*x3", "x2*x3")


def test_truncation_examples():
    I = ideal(P3, "x0^2")
    assert truncate_to_common_degree(I).generators == I.generators
    J = truncate_to_common_degree(ideal(P3, "x1", "x2*x3"))
    assert set(J.generators) == {P3.parse(t) for t in ["x0*x1", "x1^2", "x1*x2", "x1*x3", "x2*x3"]}
    F = P3.parse("x1^2*x2^3*x3^5")
    K = truncate_to_common_degree(Ideal(P3, jacobian_ideal_generators(F)))
    assert {g.degree for g in K.generators} == {9}
    with pytest.raises(ValueError):
        truncate_to_common_degree(Ideal(P3, []))


def test_projective_degree_examples():
    assert projective_degrees(THREE_LINES).g == (1, 2, 1, 0)
    assert projective_degrees(ideal(P3, "x0^4")).g == (1, 0, 0, 0)
    pd = projective_degrees(ideal(P2, "x0", "x1", "x2"))
    assert pd.g == (1, 1, 1) and pd.map_degree == 1


def test_segre_examples():
    assert segre_class(THREE_LINES) == ChowClass(3, (-10, 3, 0, 0))
    fat = Ideal(projective_ring(2), [P2.parse(t) for t in ("x0^2", "x0*x1", "x1^2")])
    assert segre_class(fat) == ChowClass.point(2) * 4
    for n in (2, 3, 4):
        for d in (2, 3, 4):
            R = projective_ring(n)
            s = segre_class(Ideal(R, [R.parse(f"x0^{d - 1}")]))
            assert s == tensor_line(ChowClass.linear_space(n, n - 1, d - 1), d - 1)


def test_weighted_arrangement_jacobian():
    F = P3.parse("x1^2*x2^3*x3^5")
    s = segre_class(Ideal(P3, jacobian_ideal_generators(F)))
    assert s == ChowClass(3, (270, -46, 7, 0))
    # residual route: the partials share the divisor x1*x2^2*x3^4 of degree 7
    assert s == residual_segre(3, 7, segre_class(THREE_LINES))
    # the misprinted generator would change the answer
    bad = [F.diff(1), P3.parse("3*x1^2*x2^2*x3^4"), F.diff(3)]
    assert segre_class(Ideal(P3, bad)) != s


def test_degenerate_inputs():
    assert segre_class(Ideal(P3, [])) == ChowClass.fundamental(3)
    assert segre_class(ideal(P3, "x0", "3")) == ChowClass.zero(3)
    assert segre_class(ideal(P3, "x0", "x1", "x2", "x3")) == ChowClass.zero(3)
    with pytest.raises(NotHomogeneousError):
        segre_class(ideal(P3, "x0^2 + x1"))


def test_principal_ideal_law():
    rng = random.Random(2)
    for _ in range(8):
        n, d = rng.randint(1, 4), rng.randint(1, 5)
        R = projective_ring(n)
        monos = monomials_of_degree(n + 1, d)
        F = Polynomial(R, {m: rng.randrange(1, R.p) for m in rng.sample(monos, min(4, len(monos)))})
        assert segre_class(Ideal(R, [F])) == tensor_line(ChowClass.linear_space(n, n - 1, d), d)


def test_saturation_invariance():
    irrelevant = Ideal(P3, P3.gens())
    for I in (THREE_LINES, ideal(P3, "x0*x1", "x2^2"), ideal(P3, "x0^2", "x0*x1")):
        s = segre_class(I)
        assert segre_class(truncate_to_common_degree(I)) == s
        assert segre_class(I * irrelevant) == s


def test_bezout_excess_small_sample():
    rng = random.Random(4)
    for _ in range(6):
        n = rng.randint(1, 3)
        r = rng.randint(1, n)
        R, gens, degs = random_excess_ideal(rng, n, r)
        s = segre_class(Ideal(R, gens))
        prod = 1
        for d in degs:
            prod *= d
        assert bezout_part(n, degs, s) == prod


def test_determinism_and_seed_stability():
    outs = [segre_with_degrees(THREE_LINES, RandomPlan(seed=s)) for s in (0, 0, 1, 2, 12345)]
    assert all(o == outs[0] for o in outs)


def test_parallel_slices_match_serial():
    serial = projective_degrees(THREE_LINES, RandomPlan(workers=1))
    parallel = projective_degrees(THREE_LINES, RandomPlan(workers=2))
    assert serial == parallel


def test_small_prime_rejected():
    R = projective_ring(2, p=7)
    with pytest.raises(ValueError):
        segre_class(Ideal(R, [R.parse("x0*x1"), R.parse("x0*x2")]))
