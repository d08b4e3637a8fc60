"""Shared corpus builders for the test modules."""
import random

from segrekit.chow import ChowClass, HSeries, cap
from segrekit.ffpoly import Polynomial, Ring, monomials_of_degree


def projective_ring(n, p=32749):
    return Ring([f"x{i}" for i in range(n + 1)], p)


def random_excess_ideal(rng: random.Random, n: int, r: int, maxdeg: int = 3):
    """r forms that share structure (common factors, sparse supports) so excess intersections occur."""
    R = projective_ring(n)
    common = None
    if rng.random() < 0.5:
        # a shared linear or quadratic factor
        e = rng.randint(1, min(2, maxdeg - 1)) if maxdeg > 1 else 0
        if e:
            monos = monomials_of_degree(n + 1, e)
            common = Polynomial(R, {m: rng.randrange(1, R.p) for m in rng.sample(monos, min(2, len(monos)))})
    gens = []
    degs = []
    for _ in range(r):
        d = rng.randint(1, maxdeg)
        if common is not None and d > common.degree:
            rest = d - common.degree
            monos = monomials_of_degree(n + 1, rest)
            g = Polynomial(R, {m: rng.randrange(1, R.p) for m in rng.sample(monos, min(rng.randint(1, 3), len(monos)))})
            f = common * g
        else:
            monos = monomials_of_degree(n + 1, d)
            f = Polynomial(R, {m: rng.randrange(1, R.p) for m in rng.sample(monos, min(rng.randint(1, 3), len(monos)))})
        gens.append(f)
        degs.append(d)
    return R, gens, degs


def bezout_part(n, degs, s: ChowClass) -> int:
    """Coefficient of [P^(n-r)] in prod(1 + d_i H) ∩ s."""
    series = HSeries.one(n)
    for d in degs:
        series = series * HSeries.linear(n, d)
    return cap(s, series)[n - len(degs)]
