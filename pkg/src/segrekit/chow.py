"""Integer calculus in the Chow group of projective space.

A class ``sum a_i [P^i]`` is stored as its coefficient vector; operators are
truncated power series in the hyperplane class H, acting by cap product
(H lowers dimension by one).  Python ints keep everything exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb, prod
from typing import Iterable, Sequence, Tuple

from .errors import ParseError


@dataclass(frozen=True)
class HSeries:
    """Polynomial ``sum b_k H^k`` truncated above H^n."""

    n: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)[: self.n + 1]
        c = c + (0,) * (self.n + 1 - len(c))
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def one(cls, n: int) -> "HSeries":
        return cls(n, (1,))

    @classmethod
    def H(cls, n: int) -> "HSeries":
        return cls(n, (0, 1))

    @classmethod
    def linear(cls, n: int, e: int) -> "HSeries":
        """The Chern class 1 + eH of O(eH)."""
        return cls(n, (1, e))

    def __add__(self, other: "HSeries") -> "HSeries":
        _same_n(self.n, other.n)
        return HSeries(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "HSeries") -> "HSeries":
        _same_n(self.n, other.n)
        return HSeries(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return HSeries(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return HSeries(self.n, tuple(other * a for a in self.coeffs))
        _same_n(self.n, other.n)
        n = self.n
        a, b = self.coeffs, other.coeffs
        return HSeries(n, tuple(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n + 1)))

    __rmul__ = __mul__

    def inverse(self) -> "HSeries":
        a = self.coeffs
        if a[0] not in (1, -1):
            raise ValueError("only series with constant term +-1 are invertible over Z")
        inv = [0] * (self.n + 1)
        inv[0] = a[0]
        for k in range(1, self.n + 1):
            inv[k] = -a[0] * sum(a[i] * inv[k - i] for i in range(1, k + 1))
        return HSeries(self.n, tuple(inv))

    def __truediv__(self, other: "HSeries") -> "HSeries":
        return self * other.inverse()

    def __pow__(self, k: int) -> "HSeries":
        if k < 0:
            return self.inverse() ** (-k)
        out = HSeries.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


def _same_n(a, b):
    if a != b:
        raise ValueError(f"ambient mismatch: P^{a} vs P^{b}")


@dataclass(frozen=True)
class ChowClass:
    """``sum_i coeffs[i] [P^i]`` in A_*(P^n)."""

    n: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if len(c) > self.n + 1:
            if any(c[self.n + 1:]):
                raise ValueError("class has components above the ambient dimension")
            c = c[: self.n + 1]
        c = c + (0,) * (self.n + 1 - len(c))
        object.__setattr__(self, "coeffs", c)

    @property
    def ambient(self) -> int:
        return self.n

    @classmethod
    def zero(cls, n: int) -> "ChowClass":
        return cls(n, ())

    @classmethod
    def point(cls, n: int) -> "ChowClass":
        return cls(n, (1,))

    @classmethod
    def linear_space(cls, n: int, k: int, mult: int = 1) -> "ChowClass":
        """``mult [P^k]``."""
        c = [0] * (n + 1)
        c[k] = mult
        return cls(n, tuple(c))

    @classmethod
    def fundamental(cls, n: int) -> "ChowClass":
        return cls.linear_space(n, n)

    @classmethod
    def from_codim(cls, n: int, by_codim: Sequence[int]) -> "ChowClass":
        """Build from coefficients listed by codimension (H^0, H^1, ...)."""
        c = [0] * (n + 1)
        for j, v in enumerate(by_codim[: n + 1]):
            c[n - j] = v
        return cls(n, tuple(c))

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def codim_coeffs(self) -> Tuple[int, ...]:
        return tuple(reversed(self.coeffs))

    def __add__(self, other: "ChowClass") -> "ChowClass":
        _same_n(self.n, other.n)
        return ChowClass(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ChowClass") -> "ChowClass":
        _same_n(self.n, other.n)
        return ChowClass(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return ChowClass(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "ChowClass":
        if not isinstance(k, int):
            return NotImplemented
        return ChowClass(self.n, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        return render(self)

    def to_json(self) -> dict:
        return {"ambient": self.n, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict) -> "ChowClass":
        return cls(int(obj["ambient"]), tuple(int(x) for x in obj["coeffs"]))


def cap(alpha: ChowClass, f: HSeries) -> ChowClass:
    """f ∩ alpha; terms pushed below dimension 0 vanish."""
    _same_n(alpha.n, f.n)
    n = alpha.n
    a, b = alpha.coeffs, f.coeffs
    return ChowClass(n, tuple(sum(b[k] * a[i + k] for k in range(n - i + 1)) for i in range(n + 1)))


def tensor_line(alpha: ChowClass, e: int) -> ChowClass:
    """alpha ⊗ O(eH): the codimension-j part is divided by (1+eH)^j."""
    n = alpha.n
    out = ChowClass.zero(n)
    inv = HSeries.linear(n, e).inverse()
    power = HSeries.one(n)
    for j in range(n + 1):
        dim = n - j
        if alpha.coeffs[dim]:
            out = out + cap(ChowClass.linear_space(n, dim, alpha.coeffs[dim]), power)
        power = power * inv
    return out


def dual(alpha: ChowClass, variant: str = "lower") -> ChowClass:
    """``lower`` flips the sign of odd-dimensional parts; ``upper`` also multiplies by (-1)^n."""
    c = [(-1) ** i * a for i, a in enumerate(alpha.coeffs)]
    if variant == "upper":
        if alpha.n % 2:
            c = [-x for x in c]
    elif variant != "lower":
        raise ValueError(f"unknown dual variant {variant!r}")
    return ChowClass(alpha.n, tuple(c))


def residual_segre(n: int, delta: int, sR: ChowClass) -> ChowClass:
    """Segre class of D ∪ R (ideal product) from that of R, D a degree-delta hypersurface."""
    _same_n(n, sR.n)
    D = ChowClass.linear_space(n, n - 1, delta) if n >= 1 else ChowClass.zero(n)
    inner = D + cap(sR, HSeries.linear(n, -delta))
    return tensor_line(inner, delta)


def ci_segre(n: int, degrees: Sequence[int]) -> ChowClass:
    """Segre class of a proper complete intersection of the given degrees."""
    r = len(degrees)
    if r > n:
        raise ValueError(f"{r} hypersurfaces cannot cut a proper subscheme of P^{n}")
    if any(d < 1 for d in degrees):
        raise ValueError("degrees must be positive")
    base = ChowClass.linear_space(n, n - r, prod(degrees))
    series = HSeries.one(n)
    for d in degrees:
        series = series * HSeries.linear(n, d).inverse()
    return cap(base, series)


def integral(alpha: ChowClass) -> int:
    return alpha.coeffs[0]


def tangent_chern(n: int) -> HSeries:
    """c(TP^n) = (1+H)^(n+1), from the Euler sequence."""
    return HSeries.linear(n, 1) ** (n + 1)


def binom(a: int, b: int) -> int:
    """Binomial coefficient with C(a, 0) = 1 for every integer a and 0 when b < 0 or b > a >= 0."""
    if b < 0:
        return 0
    if b == 0:
        return 1
    if a >= 0:
        return comb(a, b) if b <= a else 0
    # negative upper index: C(a, b) = (-1)^b C(b - a - 1, b)
    return (-1) ** b * comb(b - a - 1, b)


# ----------------------------------------------------------------------------------
# text rendering

def render(alpha: ChowClass) -> str:
    parts = []
    for i in range(alpha.n, -1, -1):
        c = alpha.coeffs[i]
        if c:
            parts.append((c, i))
    if not parts:
        return "0"
    c, i = parts[0]
    s = f"{c} [P^{i}]" if c > 0 else f"-{-c} [P^{i}]"
    for c, i in parts[1:]:
        s += f" + {c} [P^{i}]" if c > 0 else f" - {-c} [P^{i}]"
    return s


_TERM = re.compile(r"\s*([+-])?\s*(\d+)\s*\[P\^(\d+)\]\s*")


def parse_class(text: str, n: int) -> ChowClass:
    """Inverse of :func:`render` for a known ambient dimension."""
    text = text.strip()
    if text == "0":
        return ChowClass.zero(n)
    coeffs = [0] * (n + 1)
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or (not first and m.group(1) is None):
            raise ParseError("malformed class text", pos=pos)
        sign = -1 if m.group(1) == "-" else 1
        i = int(m.group(3))
        if i > n:
            raise ParseError(f"[P^{i}] exceeds ambient P^{n}", pos=pos)
        coeffs[i] += sign * int(m.group(2))
        pos = m.end()
        first = False
    return ChowClass(n, tuple(coeffs))


def classes_equal(classes: Iterable[ChowClass]) -> bool:
    classes = list(classes)
    return all(c == classes[0] for c in classes[1:])
