"""Prime fields, sparse multivariate polynomials and a small expression parser.

Polynomials are immutable: every operation returns a new object.  Terms are
held in a dict keyed by exponent tuples; ``terms(order)`` gives the sorted
sparse view used by printing and by the Groebner engine.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import NotHomogeneousError, ParseError, RingMismatchError

DEFAULT_PRIME = 32749
MAX_EXPONENT = 0xFFFF

Exponents = Tuple[int, ...]


def _is_prime(p: int) -> bool:
    """Miller-Rabin with the first 13 prime bases: deterministic below 3.3e24."""
    if p < 2:
        return False
    bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for b in bases:
        if p % b == 0:
            return p == b
    r, m = 0, p - 1
    while m % 2 == 0:
        r += 1
        m //= 2
    for b in bases:
        x = pow(b, m, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
        return pow(a, self.p - 2, self.p)

    def signed(self, a: int) -> int:
        """Symmetric representative in (-p/2, p/2]."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a

    def check_genericity(self, max_degree: int) -> bool:
        """True when p exceeds 2*(max_degree)^2, the desk-scale genericity heuristic."""
        return self.p > 2 * max_degree * max_degree


class MonomialOrder:
    """A monomial order given by a list of integer weight rows.

    Monomials are compared by the tuple of row dot products.  Every row set
    used here starts with a positive row, so each order is a well-order and
    compatible with multiplication.
    """

    KINDS = ("grevlex", "lex", "elim")

    def __init__(self, kind: str = "grevlex", k: int = 0):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "elim" and k < 1:
            raise ValueError("elimination order needs a block size k >= 1")
        self.kind = kind
        self.k = k

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        m = re.fullmatch(r"\s*(grevlex|lex|elim)(?:\((\d+)\))?\s*", text)
        if not m:
            raise ValueError(f"unknown monomial order {text!r}")
        return cls(m.group(1), int(m.group(2) or 0))

    @property
    def name(self) -> str:
        return f"elim({self.k})" if self.kind == "elim" else self.kind

    def __repr__(self):
        return f"MonomialOrder({self.name!r})"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.k) == (other.kind, other.k)

    def __hash__(self):
        return hash((self.kind, self.k))

    def rows(self, nvars: int) -> List[List[int]]:
        def grevlex_block(lo, hi):
            out = [[1 if lo <= j < hi else 0 for j in range(nvars)]]
            for j in range(hi - 1, lo, -1):
                out.append([-1 if i == j else 0 for i in range(nvars)])
            return out

        if self.kind == "grevlex":
            return grevlex_block(0, nvars)
        if self.kind == "lex":
            return [[1 if i == j else 0 for i in range(nvars)] for j in range(nvars)]
        k = min(self.k, nvars)
        rows = grevlex_block(0, k)
        if k < nvars:
            rows += grevlex_block(k, nvars)
        return rows

    def key(self, exps: Sequence[int]):
        """Sort key: larger key means larger monomial."""
        return tuple(sum(r * e for r, e in zip(row, exps)) for row in self.rows(len(exps)))

    def key_function(self, nvars: int):
        rows = self.rows(nvars)
        return lambda exps: tuple(sum(r * e for r, e in zip(row, exps)) for row in rows)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


class Ring:
    """GF(p)[vars] with an ordered variable list."""

    def __init__(self, names: Sequence[str], field: PrimeField | int = DEFAULT_PRIME):
        if isinstance(field, int):
            field = PrimeField(field)
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
                raise ValueError(f"invalid variable name {nm!r}")
        self.names = names
        self.field = field

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def p(self) -> int:
        return self.field.p

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names and self.field == other.field

    def __hash__(self):
        return hash((self.names, self.field.p))

    def __repr__(self):
        return f"Ring({list(self.names)}, p={self.p})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> List["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], c: int = 1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector length does not match ring")
        _check_exponents(exps)
        c %= self.p
        return Polynomial(self, {exps: c} if c else {})

    def index(self, name: str) -> int:
        return self.names.index(name)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)


def _check_exponents(exps):
    for e in exps:
        if e < 0:
            raise ValueError("negative exponent")
        if e > MAX_EXPONENT:
            raise OverflowError(f"exponent {e} exceeds {MAX_EXPONENT}")


def monomials_of_degree(nvars: int, d: int) -> List[Exponents]:
    """All exponent vectors of total degree d, in lex-descending order."""
    if nvars == 0:
        return [()] if d == 0 else []
    if nvars == 1:
        return [(d,)]
    out = []
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - a):
            out.append((a,) + rest)
    return out


class Polynomial:
    __slots__ = ("ring", "_terms", "__dict__")

    def __init__(self, ring: Ring, terms: Dict[Exponents, int]):
        self.ring = ring
        self._terms = terms

    # -- construction helpers -------------------------------------------------
    @classmethod
    def from_terms(cls, ring: Ring, items: Iterable[Tuple[Sequence[int], int]]) -> "Polynomial":
        p = ring.p
        d: Dict[Exponents, int] = {}
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != ring.nvars:
                raise ValueError("exponent vector length does not match ring")
            _check_exponents(exps)
            d[exps] = (d.get(exps, 0) + c) % p
        return cls(ring, {e: c for e, c in d.items() if c})

    # -- basic queries ---------------------------------------------------------
    @property
    def p(self) -> int:
        return self.ring.p

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coefficient(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def items(self):
        return self._terms.items()

    def terms(self, order: MonomialOrder = GREVLEX) -> List[Tuple[Exponents, int]]:
        """Terms sorted strictly decreasing in ``order``."""
        key = order.key_function(self.ring.nvars)
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> Tuple[Exponents, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key_function(self.ring.nvars)
        e = max(self._terms, key=key)
        return e, self._terms[e]

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Exponents:
        return self.leading_term(order)[0]

    @cached_property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    @cached_property
    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    def homogeneous_components(self) -> Dict[int, "Polynomial"]:
        out: Dict[int, Dict[Exponents, int]] = {}
        for e, c in self._terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {d: Polynomial(self.ring, t) for d, t in out.items()}

    # -- arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        d = dict(self._terms)
        for e, c in other._terms.items():
            v = (d.get(e, 0) + c) % p
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Polynomial(self.ring, {e: p - c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c: int) -> "Polynomial":
        p = self.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {e: (v * c) % p for e, v in self._terms.items()})

    def mul_monomial(self, exps: Sequence[int], c: int = 1) -> "Polynomial":
        p = self.p
        c %= p
        if c == 0:
            return self.ring.zero()
        out = {}
        for e, v in self._terms.items():
            ne = tuple(a + b for a, b in zip(e, exps))
            out[ne] = (v * c) % p
        for ne in out:
            _check_exponents(ne)
        return Polynomial(self.ring, out)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        acc: Dict[Exponents, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                ne = tuple(a + b for a, b in zip(e1, e2))
                acc[ne] = acc.get(ne, 0) + c1 * c2
        out = {}
        for e, c in acc.items():
            c %= p
            if c:
                _check_exponents(e)
                out[e] = c
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self._terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(self.ring.field.inv(c))

    def diff(self, i: int) -> "Polynomial":
        """Formal partial derivative with respect to variable ``i``."""
        p = self.p
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k == 0:
                continue
            v = (c * k) % p
            if v:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = v
        return Polynomial(self.ring, out)

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.p
        total = 0
        for e, c in self._terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * pow(x, k, p) % p
            total += t
        return total % p

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring map sending variable i to ``images[i]`` (images may live in another ring)."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring
        powers: List[Dict[int, Polynomial]] = [{0: target.one(), 1: img} for img in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        acc: Dict[Exponents, int] = {}
        p = target.p
        for e, c in self._terms.items():
            t = target.constant(c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            for te, tc in t._terms.items():
                acc[te] = (acc.get(te, 0) + tc) % p
        return Polynomial(target, {e: c for e, c in acc.items() if c})

    # -- comparison / hashing ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    # -- printing ------------------------------------------------------------------
    def to_string(self, order: MonomialOrder = GREVLEX) -> str:
        if not self._terms:
            return "0"
        names = self.ring.names
        field = self.ring.field
        parts = []
        for e, c in self.terms(order):
            c = field.signed(c)
            sign = "-" if c < 0 else "+"
            c = abs(c)
            factors = []
            for nm, k in zip(names, e):
                if k == 1:
                    factors.append(nm)
                elif k > 1:
                    factors.append(f"{nm}^{k}")
            if c != 1 or not factors:
                factors.insert(0, str(c))
            parts.append((sign, "*".join(factors)))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


# --------------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            # only trailing whitespace left
            if text[pos:].strip() == "":
                break
            col = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[col]!r}", pos=col)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0
        self.var_index = {nm: i for i, nm in enumerate(ring.names)}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[1] != value:
            what = "end of input" if t[0] == "end" else repr(t[1])
            raise ParseError(f"expected {value!r}, found {what}", pos=t[2])
        return t

    def parse(self) -> Polynomial:
        f = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", pos=t[2])
        return f

    def expr(self) -> Polynomial:
        negate = False
        if self.peek()[1] == "-":
            self.take()
            negate = True
        elif self.peek()[1] == "+":
            self.take()
        f = self.term()
        if negate:
            f = -f
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Polynomial:
        f = self.factor()
        while self.peek()[1] == "*":
            self.take()
            f = f * self.factor()
        return f

    def factor(self) -> Polynomial:
        b = self.base()
        if self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "num":
                raise ParseError("exponent must be a nonnegative integer literal", pos=t[2])
            k = int(t[1])
            if k > MAX_EXPONENT:
                raise ParseError(f"exponent {k} exceeds {MAX_EXPONENT}", pos=t[2])
            b = b ** k
        return b

    def base(self) -> Polynomial:
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            return self.ring.constant(int(val))
        if kind == "name":
            if val not in self.var_index:
                raise ParseError(f"unknown variable {val!r}", pos=pos)
            return self.ring.gen(self.var_index[val])
        if val == "(":
            f = self.expr()
            self.expect(")")
            return f
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {what}", pos=pos)


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``text`` as a polynomial in ``ring``; integer literals are reduced mod p."""
    return _Parser(text, ring).parse()


def jacobian_ideal_generators(F: Polynomial) -> List[Polynomial]:
    """The nonzero partial derivatives of a homogeneous form, in variable order."""
    if F.is_zero():
        raise NotHomogeneousError("the zero polynomial has no singularity subscheme")
    if not F.is_homogeneous:
        raise NotHomogeneousError(f"{F} is not homogeneous")
    return [g for g in (F.diff(i) for i in range(F.ring.nvars)) if not g.is_zero()]
