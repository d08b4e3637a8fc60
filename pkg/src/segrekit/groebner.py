"""Buchberger's algorithm over GF(p) with the Gebauer-Moeller criteria.

Internally every monomial is a single Python int ``K``.  The high bits hold
the order's weight rows (so integer comparison is the monomial order, and
monomial multiplication is integer addition); the low ``S`` bits hold the
packed exponent vector with one guard bit per field, which turns
divisibility into one subtraction and a mask test.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceededError, NotZeroDimensionalError, RingMismatchError
from .ffpoly import GREVLEX, MonomialOrder, Polynomial, Ring

DEFAULT_MAX_BASIS = 20000
DEFAULT_MAX_DEGREE = 60


@dataclass
class Ideal:
    ring: Ring
    generators: List[Polynomial] = field(default_factory=list)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.ring != self.ring:
                raise RingMismatchError("generator from a different ring")
            if not g.is_zero():
                gens.append(g)
        self.generators = gens

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous for g in self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


class _Encoder:
    def __init__(self, nvars: int, order: MonomialOrder, max_exp: int):
        self.nvars = nvars
        w = max_exp.bit_length() + 1
        self.w = w
        self.S = S = w * nvars
        rows = order.rows(nvars)
        bound = max(1, max_exp * nvars)
        c = (2 * bound + 1).bit_length() + 1
        m = len(rows)
        self.varkey = []
        for j in range(nvars):
            W = sum(rows[r][j] << (c * (m - 1 - r)) for r in range(m))
            self.varkey.append((W << S) + (1 << (w * j)))
        self.emask = (1 << S) - 1
        self.guard = sum(1 << (w * j + w - 1) for j in range(nvars))
        self.fmask = (1 << w) - 1

    def encode(self, exps: Sequence[int]) -> int:
        return sum(e * k for e, k in zip(exps, self.varkey))

    def decode(self, K: int) -> Tuple[int, ...]:
        E = K & self.emask
        w, fm = self.w, self.fmask
        return tuple((E >> (w * j)) & fm for j in range(self.nvars))


class _Engine:
    """Mutable state of one Groebner computation."""

    def __init__(self, ring: Ring, order: MonomialOrder, max_basis: int, max_degree: int):
        self.ring = ring
        self.order = order
        self.p = ring.p
        self.max_basis = max_basis
        self.max_degree = max_degree
        max_exp = max_degree if order.kind == "grevlex" else 1 << 15
        self.enc = _Encoder(ring.nvars, order, max_exp)
        # every polynomial ever added: (lead key, lead exps, tail [(K, c)...]); leads monic
        self.lead_K: List[int] = []
        self.lead_E: List[int] = []
        self.lead_X: List[Tuple[int, ...]] = []
        self.tails: List[List[Tuple[int, int]]] = []
        self._hit: Dict[int, int] = {}
        self._scanned: Dict[int, int] = {}

    # -- conversion ------------------------------------------------------------
    def encode_poly(self, f: Polynomial) -> Dict[int, int]:
        if f.degree > self.max_degree:
            raise BudgetExceededError(f"input degree {f.degree} exceeds cap {self.max_degree}")
        enc = self.enc.encode
        return {enc(e): c for e, c in f.items()}

    def decode_terms(self, terms) -> Polynomial:
        dec = self.enc.decode
        return Polynomial(self.ring, {dec(k): c for k, c in terms})

    # -- reduction ---------------------------------------------------------------
    def _find(self, e: int) -> Optional[int]:
        h = self._hit.get(e)
        if h is not None:
            return h
        leads = self.lead_E
        start = self._scanned.get(e, 0)
        guard = self.enc.guard
        g = e | guard
        for idx in range(start, len(leads)):
            if (g - leads[idx]) & guard == guard:
                self._hit[e] = idx
                return idx
        self._scanned[e] = len(leads)
        return None

    def reduce(self, acc: Dict[int, int], top_only: bool = False) -> List[Tuple[int, int]]:
        """Fully reduce the polynomial ``acc`` (consumed) by every stored element.

        Returns the remainder as a list of (K, c) in decreasing order.
        """
        p = self.p
        mask = self.enc.emask
        heap = [-k for k in acc]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        find = self._find
        lead_K, tails = self.lead_K, self.tails
        out = []
        while heap:
            k = -pop(heap)
            c = acc.pop(k)
            if not c:
                continue
            r = find(k & mask)
            if r is None:
                out.append((k, c))
                if top_only:
                    out.extend(sorted(((kk, cc) for kk, cc in acc.items() if cc), reverse=True))
                    return out
                continue
            shift = k - lead_K[r]
            for tk, tc in tails[r]:
                nk = tk + shift
                v = acc.get(nk)
                if v is None:
                    acc[nk] = (-c * tc) % p
                    push(heap, -nk)
                else:
                    acc[nk] = (v - c * tc) % p
        return out

    def add(self, terms: List[Tuple[int, int]]) -> int:
        """Store a nonzero reduced polynomial (made monic); return its index."""
        if len(self.lead_K) >= self.max_basis:
            raise BudgetExceededError(f"basis size exceeds cap {self.max_basis}")
        p = self.p
        lk, lc = terms[0]
        inv = pow(lc, p - 2, p)
        tail = [(k, c * inv % p) for k, c in terms[1:]] if lc != 1 else list(terms[1:])
        self.lead_K.append(lk)
        self.lead_E.append(lk & self.enc.emask)
        self.lead_X.append(self.enc.decode(lk))
        self.tails.append(tail)
        return len(self.lead_K) - 1

    def spoly(self, i: int, j: int, lcm_K: int) -> Dict[int, int]:
        p = self.p
        si = lcm_K - self.lead_K[i]
        sj = lcm_K - self.lead_K[j]
        acc = {k + si: c for k, c in self.tails[i]}
        for k, c in self.tails[j]:
            nk = k + sj
            v = acc.get(nk)
            acc[nk] = (p - c) if v is None else (v - c) % p
        return acc


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class GroebnerBasis:
    """A reduced Groebner basis: monic polynomials sorted by increasing leading monomial."""

    def __init__(self, ring: Ring, order: MonomialOrder, polys: List[Polynomial],
                 stats: Optional[dict] = None):
        self.ring = ring
        self.order = order
        self.polys = polys
        self.stats = stats or {}

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def leading_monomials(self) -> List[Tuple[int, ...]]:
        return [g.leading_monomial(self.order) for g in self.polys]

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.order == other.order and self.polys == other.polys)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(g) for g in self.polys)}], order={self.order.name})"


def _run_buchberger(eng: _Engine, inputs: List[Dict[int, int]]) -> List[int]:
    """Core loop; returns indices (into eng storage) of a minimal basis."""
    lead_X = eng.lead_X
    enc = eng.enc.encode
    G: List[int] = []
    pairs: List[tuple] = []      # heap of (lcm key, serial, i, j)
    live = {}                    # (i, j) -> lcm exps, for pairs still in B
    serial = 0

    def update(h):
        nonlocal G, serial
        th = lead_X[h]
        # new pairs (h, g): Gebauer-Moeller criteria
        C = [(g, _lcm(th, lead_X[g])) for g in G]
        D = []
        for idx, (g1, l1) in enumerate(C):
            if _coprime(th, lead_X[g1]):
                D.append((g1, l1))
                continue
            dominated = False
            for g2, l2 in C[idx + 1:]:
                if _divides(l2, l1):
                    dominated = True
                    break
            if not dominated:
                for g2, l2 in D:
                    if _divides(l2, l1):
                        dominated = True
                        break
            if not dominated:
                D.append((g1, l1))
        E = [(g, l) for g, l in D if not _coprime(th, lead_X[g])]
        # prune old pairs made superfluous by h
        for key in list(live):
            l12 = live[key]
            if _divides(th, l12):
                g1, g2 = key
                if _lcm(lead_X[g1], th) != l12 and _lcm(lead_X[g2], th) != l12:
                    del live[key]
        for g, l in E:
            if sum(l) > eng.max_degree:
                raise BudgetExceededError(f"pair degree {sum(l)} exceeds cap {eng.max_degree}")
            live[(g, h)] = l
            heapq.heappush(pairs, (enc(l), serial, g, h))
            serial += 1
        G = [g for g in G if not _divides(th, lead_X[g])] + [h]

    for acc in inputs:
        rem = eng.reduce(dict(acc))
        if rem:
            update(eng.add(rem))
    npairs = 0
    while pairs:
        lk, _, i, j = heapq.heappop(pairs)
        if (i, j) not in live:
            continue
        del live[(i, j)]
        npairs += 1
        rem = eng.reduce(eng.spoly(i, j, lk))
        if rem:
            update(eng.add(rem))
    eng.npairs = npairs
    return G


def groebner_basis(I: Ideal, order: MonomialOrder = GREVLEX,
                   max_basis: int = DEFAULT_MAX_BASIS,
                   max_degree: int = DEFAULT_MAX_DEGREE) -> GroebnerBasis:
    """Reduced Groebner basis of ``I`` with respect to ``order``.

    Raises BudgetExceededError when the basis grows past ``max_basis``
    elements or a critical pair exceeds ``max_degree``.
    """
    ring = I.ring
    if not I.generators:
        return GroebnerBasis(ring, order, [])
    eng = _Engine(ring, order, max_basis, max_degree)
    inputs = [eng.encode_poly(g) for g in I.generators]
    G = _run_buchberger(eng, inputs)
    return _finalize(eng, G)


def _finalize(eng: _Engine, G: List[int]) -> GroebnerBasis:
    # minimal basis (distinct leads, none dividing another), then tail reduction
    G = sorted(G, key=lambda g: eng.lead_K[g])
    minimal = []
    for g in G:
        if not any(_divides(eng.lead_X[h], eng.lead_X[g]) for h in minimal):
            minimal.append(g)
    polys = []
    for g in minimal:
        tail = eng.reduce(dict(eng.tails[g]))
        polys.append(eng.decode_terms([(eng.lead_K[g], 1)] + tail))
    stats = {"pairs": getattr(eng, "npairs", 0), "stored": len(eng.lead_K)}
    return GroebnerBasis(eng.ring, eng.order, polys, stats)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of ``f`` on multivariate division by ``G`` (the basis need not be complete)."""
    if f.ring != G.ring:
        raise RingMismatchError("polynomial and basis live in different rings")
    if f.is_zero():
        return f
    maxdeg = max([f.degree] + [g.degree for g in G.polys] + [DEFAULT_MAX_DEGREE])
    eng = _Engine(G.ring, G.order, DEFAULT_MAX_BASIS, maxdeg)
    for g in G.polys:
        items = sorted(eng.encode_poly(g).items(), reverse=True)
        eng.add(items)
    rem = eng.reduce(eng.encode_poly(f))
    return eng.decode_terms(rem)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    ef, cf = f.leading_term(order)
    eg, cg = g.leading_term(order)
    l = _lcm(ef, eg)
    inv = f.ring.field.inv
    a = f.mul_monomial([x - y for x, y in zip(l, ef)], inv(cf))
    b = g.mul_monomial([x - y for x, y in zip(l, eg)], inv(cg))
    return a - b


def is_groebner(G: GroebnerBasis) -> bool:
    """Buchberger certificate: every S-polynomial reduces to zero modulo G."""
    polys = [g for g in G.polys if not g.is_zero()]
    if not polys:
        return True
    if any(g.ring != G.ring for g in polys):
        raise RingMismatchError("basis elements live in different rings")
    maxdeg = 2 * max([g.degree for g in polys] + [1])
    eng = _Engine(G.ring, G.order, len(polys) + 1, maxdeg)
    for g in polys:
        eng.add(sorted(eng.encode_poly(g).items(), reverse=True))
    # every pair, no criteria applied, so the check does not trust the engine's pruning
    for i, j in combinations(range(len(polys)), 2):
        lk = eng.enc.encode(_lcm(eng.lead_X[i], eng.lead_X[j]))
        if eng.reduce(eng.spoly(i, j, lk)):
            return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    leads = G.leading_monomials()
    for f, lm in zip(G.polys, leads):
        if f.leading_term(G.order)[1] != 1:
            return False
        for e, _ in f.items():
            for other in leads:
                if other is lm:
                    continue
                if _divides(other, e):
                    return False
    return True


def is_zero_dimensional(G: GroebnerBasis) -> bool:
    """True iff every variable has a pure power among the leading monomials."""
    n = G.ring.nvars
    seen = [False] * n
    for e in G.leading_monomials():
        support = [i for i, x in enumerate(e) if x]
        if len(support) == 1:
            seen[support[0]] = True
        elif not support:
            return True     # unit ideal
    return all(seen)


def standard_monomials(G: GroebnerBasis) -> List[Tuple[int, ...]]:
    """Monomials divisible by no leading monomial of G (G must be zero-dimensional)."""
    if not is_zero_dimensional(G):
        raise NotZeroDimensionalError("quotient ring is infinite-dimensional")
    leads = G.leading_monomials()
    n = G.ring.nvars
    if any(sum(e) == 0 for e in leads):
        return []
    bounds = [0] * n
    for e in leads:
        support = [i for i, x in enumerate(e) if x]
        if len(support) == 1:
            i = support[0]
            bounds[i] = e[i] if bounds[i] == 0 else min(bounds[i], e[i])
    out = []

    def rec(i, prefix):
        if i == n:
            out.append(tuple(prefix))
            return
        for a in range(bounds[i]):
            prefix.append(a)
            # prune: partial monomial (rest zero) already divisible means all extensions are too
            cand = prefix + [0] * (n - i - 1)
            if not any(_divides(l, cand) for l in leads):
                rec(i + 1, prefix)
            prefix.pop()

    rec(0, [])
    return out


def quotient_dimension(G: GroebnerBasis) -> int:
    """dim over GF(p) of R/(G), counted as standard monomials."""
    if not is_zero_dimensional(G):
        raise NotZeroDimensionalError("quotient ring is infinite-dimensional")
    leads = G.leading_monomials()
    if any(sum(e) == 0 for e in leads):
        return 0
    return _count_standard(leads, G.ring.nvars)


def _count_standard(leads, n) -> int:
    # Count monomials outside the monomial ideal by recursion on the last variable:
    # standard monomials with x_{n-1}^a correspond to those of the colon ideal.
    if n == 0:
        return 0 if any(True for _ in leads) else 1
    leads = _minimalize(leads)
    if any(sum(e) == 0 for e in leads):
        return 0
    if n == 1:
        return min(e[0] for e in leads)
    bound = min(e[-1] for e in leads if all(x == 0 for x in e[:-1]))
    total = 0
    for a in range(bound):
        sub = [e[:-1] for e in leads if e[-1] <= a]
        if sub:
            total += _count_standard(sub, n - 1)
        elif n == 1:
            total += 1
        else:
            _infinite()
    return total


def _infinite():
    raise NotZeroDimensionalError("quotient ring is infinite-dimensional")


def _minimalize(leads):
    leads = sorted(set(leads), key=sum)
    out = []
    for e in leads:
        if not any(_divides(f, e) for f in out):
            out.append(e)
    return out
