"""Projective hyperplane arrangements.

The combinatorial side works over Q: flats of the central arrangement in
affine (n+1)-space are closed sets of hyperplane indices, ranks come from
fraction-free integer elimination.  The algebraic side feeds the product of
the forms to the Segre-class engine and reads off Betti ranks of the
complement, so the two can be compared.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .charcls import hypersurface_data
from .chow import ChowClass
from .errors import ParseError
from .ffpoly import DEFAULT_PRIME, Polynomial, Ring, parse_polynomial
from .inputs import split_header
from .segre import RandomPlan

MAX_HYPERPLANES = 16

# large Mersenne prime used only to read integer coefficients through the polynomial parser
_PARSE_PRIME = (1 << 61) - 1


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix (Bareiss fraction-free elimination)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        for r in range(rank + 1, len(m)):
            row = m[r]
            f = row[col]
            m[r] = [(pr[col] * row[c] - f * pr[c]) // prev for c in range(ncols)]
        prev = pr[col]
        rank += 1
        if rank == len(m):
            break
    return rank


@dataclass
class Arrangement:
    """Hyperplanes in P^n given by integer linear forms with multiplicities."""

    n: int
    forms: List[Tuple[int, ...]]
    multiplicities: List[int] = field(default_factory=list)
    names: Optional[List[str]] = None

    def __post_init__(self):
        self.forms = [tuple(int(c) for c in f) for f in self.forms]
        if not self.multiplicities:
            self.multiplicities = [1] * len(self.forms)
        if len(self.multiplicities) != len(self.forms):
            raise ValueError("one multiplicity per hyperplane")
        if self.names is None:
            self.names = [f"x{i}" for i in range(self.n + 1)]
        for f in self.forms:
            if len(f) != self.n + 1:
                raise ValueError(f"form {f} does not have {self.n + 1} coefficients")
            if not any(f):
                raise ValueError("zero linear form")
        for m in self.multiplicities:
            if m < 1:
                raise ValueError("multiplicities must be >= 1")
        for i in range(len(self.forms)):
            for j in range(i):
                if integer_rank([self.forms[i], self.forms[j]]) < 2:
                    raise ValueError(f"hyperplanes {j} and {i} coincide; use a multiplicity instead")

    @property
    def d(self) -> int:
        return sum(self.multiplicities)

    def __len__(self):
        return len(self.forms)

    @property
    def is_reduced(self) -> bool:
        return all(m == 1 for m in self.multiplicities)

    @property
    def rank(self) -> int:
        return integer_rank(self.forms)

    @property
    def is_essential(self) -> bool:
        return self.rank == self.n + 1

    def reduction(self) -> "Arrangement":
        return Arrangement(self.n, list(self.forms), [], list(self.names))

    def polynomial(self, prime: int = DEFAULT_PRIME) -> Polynomial:
        """prod L_i^(m_i) over GF(prime)."""
        ring = Ring(self.names, prime)
        F = ring.one()
        for f, m in zip(self.forms, self.multiplicities):
            L = ring.zero()
            for i, c in enumerate(f):
                if c:
                    L = L + ring.gen(i).scale(c)
            if L.is_zero():
                raise ValueError(f"form {f} vanishes modulo {prime}")
            F = F * L ** m
        return F


_MULT = re.compile(r"^(.*?)\s*\*\s*(\d+)\s*$")


def parse_arrangement(text: str) -> Arrangement:
    """Read a ``vars`` header and one linear form per line.

    A trailing ``* k`` (integer literal) sets the multiplicity of the line's
    hyperplane, so write scalar coefficients in front: ``2*x1 + x0``.
    """
    names, body = split_header(text)
    ring = Ring(names, _PARSE_PRIME)
    field_ = ring.field
    forms, mults = [], []
    for src in body:
        content = src.text.rstrip(";,").strip()
        mult = 1
        m = _MULT.match(content)
        if m and m.group(1):
            content, mult = m.group(1), int(m.group(2))
            if mult < 1:
                raise ParseError("multiplicity must be >= 1", line=src.line)
        try:
            L = parse_polynomial(content, ring)
        except ParseError as exc:
            raise ParseError(exc.message, pos=exc.pos, line=src.line) from exc
        if L.is_zero() or L.degree != 1 or not L.is_homogeneous:
            raise ParseError("expected a nonzero homogeneous linear form", line=src.line)
        coeffs = [0] * ring.nvars
        for e, c in L.items():
            coeffs[e.index(1)] = field_.signed(c)
        forms.append(tuple(coeffs))
        mults.append(mult)
    try:
        return Arrangement(len(names) - 1, forms, mults, names)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# ----------------------------------------------------------------------------------
# intersection lattice

@dataclass(frozen=True)
class Flat:
    hyperplanes: FrozenSet[int]
    rank: int
    mobius: int


@dataclass
class IntersectionLattice:
    flats: List[Flat]

    def by_rank(self) -> Dict[int, List[Flat]]:
        out: Dict[int, List[Flat]] = {}
        for f in self.flats:
            out.setdefault(f.rank, []).append(f)
        return out

    def rank_counts(self) -> Tuple[int, ...]:
        br = self.by_rank()
        return tuple(len(br.get(k, [])) for k in range(max(br) + 1))

    def top_rank(self) -> int:
        return max(f.rank for f in self.flats)


def build_lattice(A: Arrangement) -> IntersectionLattice:
    """All flats of the central arrangement in affine (n+1)-space with their Mobius values."""
    if len(A) > MAX_HYPERPLANES:
        raise ValueError(f"{len(A)} hyperplanes exceed the bound {MAX_HYPERPLANES}")
    m = len(A)

    def closure(subset: FrozenSet[int], rank: int) -> FrozenSet[int]:
        rows = [A.forms[i] for i in subset]
        return frozenset(i for i in range(m)
                         if i in subset or integer_rank(rows + [A.forms[i]]) == rank)

    levels: List[Dict[FrozenSet[int], None]] = [{frozenset(): None}]
    while True:
        nxt: Dict[FrozenSet[int], None] = {}
        rank = len(levels)
        for flat in levels[-1]:
            for i in range(m):
                if i in flat:
                    continue
                c = closure(flat | {i}, rank)
                nxt.setdefault(c, None)
        if not nxt:
            break
        levels.append(nxt)
    mobius: Dict[FrozenSet[int], int] = {}
    flats: List[Flat] = []
    for rank, level in enumerate(levels):
        for X in level:
            if rank == 0:
                mu = 1
            else:
                mu = -sum(v for Y, v in mobius.items() if Y < X)
            mobius[X] = mu
            flats.append(Flat(X, rank, mu))
    return IntersectionLattice(flats)


# ----------------------------------------------------------------------------------
# polynomials (coefficient lists, lowest degree first)

def _divide_by_t_minus_1(coeffs: List[int]) -> List[int]:
    # synthetic division, top coefficient first
    top = list(reversed(coeffs))
    out = []
    acc = 0
    for c in top[:-1]:
        acc = acc + c
        out.append(acc)
    if acc + top[-1] != 0:
        raise ArithmeticError("characteristic polynomial not divisible by t - 1")
    return list(reversed(out))


def central_characteristic_polynomial(A: Arrangement) -> Tuple[int, ...]:
    n = A.n
    coeffs = [0] * (n + 2)
    for f in build_lattice(A).flats:
        coeffs[n + 1 - f.rank] += f.mobius
    return tuple(coeffs)


def characteristic_polynomial(A: Arrangement) -> Tuple[int, ...]:
    """Coefficients of chi_A(t) = chi_central(t)/(t - 1), lowest degree first.

    The empty arrangement gets 1 + t + ... + t^n, the value that makes the
    complement's CSM class equal c(TP^n) ∩ [P^n].
    """
    if len(A) == 0:
        return (1,) * (A.n + 1)
    return tuple(_divide_by_t_minus_1(list(central_characteristic_polynomial(A))))


def poincare_polynomial(A: Arrangement) -> Tuple[int, ...]:
    """pi_A(t) = (-t)^n chi_A(-1/t): Betti ranks of the complement (Orlik-Solomon)."""
    if len(A) == 0:
        raise ValueError("Poincare polynomial is defined for nonempty arrangements")
    chi = characteristic_polynomial(A)
    n = A.n
    out = [0] * (n + 1)
    for k, c in enumerate(chi):
        out[n - k] += (-1) ** (n - k) * c
    return tuple(out)


def csm_complement(A: Arrangement) -> ChowClass:
    """Replace t^i by [P^i] in chi_A(t + 1)."""
    chi = characteristic_polynomial(A)
    n = A.n
    shifted = [sum(c * comb(k, i) for k, c in enumerate(chi) if k >= i) for i in range(n + 1)]
    return ChowClass(n, tuple(shifted))


def betti_ranks_from_segre(n: int, d: int, s: ChowClass) -> Tuple[int, ...]:
    sigma = [(1 if i == 0 else 0) - s[n - i] for i in range(n + 1)]
    return tuple(sum(comb(k, i) * (d - 1) ** (k - i) * sigma[i] for i in range(k + 1))
                 for k in range(n + 1))


def betti_ranks_via_segre(A: Arrangement, plan: RandomPlan = RandomPlan(),
                          prime: int = DEFAULT_PRIME) -> Tuple[int, ...]:
    """Betti ranks of P^n minus A from the Segre class of the singular scheme of prod L_i^m_i."""
    if len(A) == 0:
        raise ValueError("need at least one hyperplane")
    if not A.is_essential:
        warnings.warn("arrangement is not essential; the Segre-class rank formula is "
                      "only established for essential arrangements", stacklevel=2)
    h = hypersurface_data(A.polynomial(prime), plan)
    return betti_ranks_from_segre(A.n, A.d, h.sJX)


def sja_closed_form(A: Arrangement) -> ChowClass:
    """Segre class of the singularity scheme of a reduced arrangement, in closed form."""
    if not A.is_reduced:
        raise ValueError("closed form needs a reduced arrangement (all multiplicities 1)")
    n, d = A.n, A.d
    coeffs = [0] * (n + 1)
    for i in range(2, n + 1):
        coeffs[n - i] = d * (-1) ** i * (d - 1) ** (i - 1)
    return ChowClass(n, tuple(coeffs))
