"""Segre classes of subschemes of P^n from projective degrees.

The generators of a homogeneous ideal (raised to a common degree d) define a
rational map P^n --> P^r.  Its projective degrees g_i count the points of a
generic i-dimensional linear section of P^n cut by i generic members of the
linear system, away from the base locus V(I).  Each count is the dimension
of a zero-dimensional quotient ring: the section is parametrised by an
affine chart, and the base locus is removed with one extra variable T and
the equation T*xi_0 - 1.
"""
from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .chow import ChowClass
from .errors import BudgetExceededError, GenericityError, NotHomogeneousError, NotZeroDimensionalError
from .ffpoly import MonomialOrder, Polynomial, Ring, monomials_of_degree
from .groebner import (DEFAULT_MAX_BASIS, DEFAULT_MAX_DEGREE, Ideal, groebner_basis,
                       is_zero_dimensional, quotient_dimension)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RandomPlan:
    seed: int = 0
    trials: int = 2
    max_degree: int = DEFAULT_MAX_DEGREE
    max_basis: int = DEFAULT_MAX_BASIS
    workers: int = 1
    order: str = "grevlex"

    def rng(self, *labels) -> random.Random:
        # str seeds are hashed with sha512 by random.Random: stable across platforms
        return random.Random("segrekit:" + ":".join(str(x) for x in (self.seed,) + labels))


@dataclass(frozen=True)
class ProjectiveDegrees:
    g: Tuple[int, ...]
    d: int
    r: int
    n: int

    @property
    def map_degree(self) -> int:
        """g_n: degree of the rational map onto its image (0 if not generically finite)."""
        return self.g[self.n]


def truncate_to_common_degree(I: Ideal) -> Ideal:
    """Replace each generator f of degree d' < d by all m*f, m of degree d - d'."""
    if I.is_zero():
        raise ValueError("zero ideal has no generators to truncate")
    if not I.is_homogeneous:
        raise NotHomogeneousError("ideal is not homogeneous")
    ring = I.ring
    d = max(g.degree for g in I.generators)
    out = []
    for g in I.generators:
        if g.degree == d:
            out.append(g)
        else:
            for m in monomials_of_degree(ring.nvars, d - g.degree):
                out.append(g.mul_monomial(m))
    return Ideal(ring, out)


def _independent_forms(gens: List[Polynomial]) -> List[Polynomial]:
    """A basis (row-echelon over GF(p)) of the span of equal-degree forms."""
    if not gens:
        return []
    ring = gens[0].ring
    p = ring.p
    monos = sorted({e for g in gens for e, _ in g.items()}, reverse=True)
    col = {e: i for i, e in enumerate(monos)}
    rows = []
    for g in gens:
        v = [0] * len(monos)
        for e, c in g.items():
            v[col[e]] = c
        rows.append(v)
    basis = []
    pivots = []
    for v in rows:
        v = v[:]
        for (pc, bv) in zip(pivots, basis):
            if v[pc]:
                f = v[pc]
                v = [(a - f * b) % p for a, b in zip(v, bv)]
        nz = next((i for i, a in enumerate(v) if a), None)
        if nz is None:
            continue
        inv = pow(v[nz], p - 2, p)
        v = [a * inv % p for a in v]
        # keep earlier rows reduced against the new pivot
        for k, bv in enumerate(basis):
            if bv[nz]:
                f = bv[nz]
                basis[k] = [(a - f * b) % p for a, b in zip(bv, v)]
        basis.append(v)
        pivots.append(nz)
    out = []
    for v in basis:
        out.append(Polynomial(ring, {monos[i]: a for i, a in enumerate(v) if a}))
    return out


# ----------------------------------------------------------------------------------
# affine substitution x = M z, z = (1, y_1, ..., y_i), evaluated by nested Horner

_W = 8  # bits per packed exponent field


def _affine_substitute(f: Polynomial, images: List[Dict[int, int]], p: int) -> Dict[int, int]:
    """f(images) with each image a packed linear polynomial; returns a packed dict."""
    nx = f.ring.nvars

    def rec(terms, k):
        if k == nx:
            c = sum(terms.values()) % p
            return {0: c} if c else {}
        groups: Dict[int, Dict] = {}
        for e, c in terms.items():
            groups.setdefault(e[k], {})[e] = c
        top = max(groups)
        img = list(images[k].items())
        result = rec(groups[top], k + 1)
        for j in range(top - 1, -1, -1):
            nxt: Dict[int, int] = {}
            for m, c in result.items():
                for lm, lc in img:
                    key = m + lm
                    nxt[key] = (nxt.get(key, 0) + c * lc) % p
            if j in groups:
                for m, c in rec(groups[j], k + 1).items():
                    nxt[m] = (nxt.get(m, 0) + c) % p
            result = {m: c for m, c in nxt.items() if c}
        return result

    return rec(dict(f.items()), 0)


def _unpack(packed: Dict[int, int], ring: Ring) -> Polynomial:
    n = ring.nvars
    fm = (1 << _W) - 1
    return Polynomial(ring, {tuple((m >> (_W * j)) & fm for j in range(n)): c
                             for m, c in packed.items() if c})


def slice_ideal(gens: List[Polynomial], i: int, plan: RandomPlan, trial: int) -> Ideal:
    """The zero-dimensional ideal whose length is g_i for one random choice.

    Variables are y_1..y_i (the chart of a random P^i) and T.
    """
    ring = gens[0].ring
    p = ring.p
    n = ring.nvars - 1
    if gens[0].degree >= 1 << _W:
        raise BudgetExceededError(f"generator degree {gens[0].degree} exceeds {(1 << _W) - 1}")
    rng = plan.rng(trial, i)
    rnd = lambda: rng.randrange(1, p)
    # xi_0 .. xi_i: random combinations of the generators
    xis = []
    for _ in range(i + 1):
        acc: Dict[tuple, int] = {}
        for g in gens:
            lam = rnd()
            for e, c in g.items():
                acc[e] = (acc.get(e, 0) + lam * c) % p
        xis.append(Polynomial(ring, {e: c for e, c in acc.items() if c}))
    # x_k = a_k + sum_t B_kt y_t : a random affine chart of a random P^i
    images = []
    for _ in range(n + 1):
        img = {0: rnd()}
        for t in range(i):
            img[1 << (_W * t)] = rnd()
        images.append(img)
    names = [f"y{t + 1}" for t in range(i)] + ["T"]
    target = Ring(names, ring.field)
    subs = [_affine_substitute(xi, images, p) for xi in xis]
    eqs = [_unpack(s, target) for s in subs[1:]]
    T = 1 << (_W * i)
    rab = {m + T: c for m, c in subs[0].items()}
    rab[0] = (rab.get(0, 0) - 1) % p
    eqs.append(_unpack(rab, target))
    return Ideal(target, eqs)


def _slice_count(gens: List[Polynomial], i: int, plan: RandomPlan, trial: int) -> int:
    """g_i for one random choice: points of the i-dimensional slice off the base locus."""
    G = groebner_basis(slice_ideal(gens, i, plan, trial), MonomialOrder.parse(plan.order),
                       max_basis=plan.max_basis, max_degree=plan.max_degree)
    if not is_zero_dimensional(G):
        raise GenericityError(f"slice {i} (trial {trial}) is not zero-dimensional")
    return quotient_dimension(G)


def _slice_job(args):
    gens, i, plan, trial = args
    return _slice_count(gens, i, plan, trial)


def slice_ideals(I: Ideal, plan: RandomPlan = RandomPlan()) -> List[Ideal]:
    """All slice ideals a projective_degrees call would solve, trial by trial."""
    prep = _prepare(I)
    if prep is None:
        return []
    forms, _ = prep
    n = I.ring.nvars - 1
    r = len(forms) - 1
    return [slice_ideal(forms, i, plan, t) for t in range(plan.trials) for i in range(min(r, n) + 1)]


def _prepare(I: Ideal):
    """Normalise generators; returns (independent forms, d) or None for an empty scheme."""
    if any(g.degree == 0 for g in I.generators):
        return None
    J = truncate_to_common_degree(I)
    forms = _independent_forms(J.generators)
    d = forms[0].degree
    return forms, d


def projective_degrees(I: Ideal, plan: RandomPlan = RandomPlan()) -> ProjectiveDegrees:
    """Projective degrees (g_0..g_n) of the map given by the generators of ``I``.

    Each trial repeats the whole vector with fresh randomness; disagreement
    raises GenericityError.
    """
    ring = I.ring
    n = ring.nvars - 1
    if I.is_zero():
        raise ValueError("zero ideal defines no rational map")
    prep = _prepare(I)
    if prep is None:
        raise ValueError("unit ideal defines no rational map")
    forms, d = prep
    if not ring.field.check_genericity(d):
        raise ValueError(f"prime {ring.p} too small for degree {d}: need p > 2*d^2")
    r = len(forms) - 1
    vectors = []
    for trial in range(plan.trials):
        jobs = [(forms, i, plan, trial) for i in range(min(r, n) + 1)]
        try:
            if plan.workers > 1 and len(jobs) > 1:
                with ProcessPoolExecutor(max_workers=plan.workers) as ex:
                    counts = list(ex.map(_slice_job, jobs))
            else:
                counts = [_slice_job(j) for j in jobs]
        except NotZeroDimensionalError as exc:
            raise GenericityError(str(exc)) from exc
        g = tuple(counts) + (0,) * (n - min(r, n))
        log.debug("trial %d: projective degrees %s", trial, g)
        for i, gi in enumerate(g):
            if gi > d ** i or gi < 0:
                raise GenericityError(f"g_{i} = {gi} exceeds the bound {d}^{i}")
        if g[0] != 1:
            raise GenericityError(f"g_0 = {g[0]} != 1")
        vectors.append(g)
    if any(v != vectors[0] for v in vectors[1:]):
        raise GenericityError(f"trials disagree: {vectors}; retry with another seed")
    return ProjectiveDegrees(vectors[0], d, r, n)


def segre_from_projective_degrees(pd: ProjectiveDegrees) -> ChowClass:
    """Push-forward of s(X, P^n) from the projective degrees of the defining map.

    On the graph of the map the exceptional divisor is E = dH - h; pushing
    E - E^2 + E^3 - ... forward with pi_*(h^j ∩ [graph]) = g_j [P^(n-j)] gives
    the coefficient of [P^(n-k)] as
    (-1)^(k-1) sum_j (-1)^j C(k, j) d^(k-j) g_j.
    """
    n, d, r, g = pd.n, pd.d, pd.r, pd.g
    coeffs = [0] * (n + 1)
    for k in range(1, n + 1):
        inner = sum((-1) ** j * comb(k, j) * d ** (k - j) * g[j] for j in range(min(k, r) + 1))
        coeffs[n - k] = (-1) ** (k - 1) * inner
    return ChowClass(n, tuple(coeffs))


def segre_with_degrees(I: Ideal, plan: RandomPlan = RandomPlan()
                       ) -> Tuple[ChowClass, Optional[ProjectiveDegrees]]:
    """Segre class together with the projective degrees it came from.

    The degrees are None for the two degenerate cases (zero ideal, empty scheme).
    """
    ring = I.ring
    n = ring.nvars - 1
    if not I.is_homogeneous:
        raise NotHomogeneousError("ideal is not homogeneous")
    if I.is_zero():
        return ChowClass.fundamental(n), None
    if _prepare(I) is None:
        return ChowClass.zero(n), None
    pd = projective_degrees(I, plan)
    return segre_from_projective_degrees(pd), pd


def segre_class(I: Ideal, plan: RandomPlan = RandomPlan()) -> ChowClass:
    """ι_* s(V(I), P^n) for a homogeneous ideal ``I``.

    The zero ideal gives [P^n]; an ideal with empty zero set gives 0.
    """
    return segre_with_degrees(I, plan)[0]
