"""Characteristic classes and numerical invariants of subschemes of P^n.

Everything here is a short formula over the Segre class of a singularity
subscheme, so the heavy lifting happens once per hypersurface (see
:func:`hypersurface_data`) and the rest is integer arithmetic in A_*(P^n).
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .chow import ChowClass, HSeries, binom, cap, dual, integral, tangent_chern, tensor_line
from .errors import BudgetExceededError, ConsistencyError, NotZeroDimensionalError
from .ffpoly import Polynomial, jacobian_ideal_generators
from .groebner import Ideal
from .segre import ProjectiveDegrees, RandomPlan, segre_class, segre_with_degrees

log = logging.getLogger(__name__)

DEFAULT_MAX_PRODUCT_DEGREE = 40


@dataclass(frozen=True)
class HypersurfaceData:
    """A hypersurface V(F) with the pushed-forward Segre class of its singularity scheme."""

    F: Polynomial
    n: int
    d: int
    sJX: ChowClass
    degrees: Optional[ProjectiveDegrees] = None

    def __post_init__(self):
        if self.sJX[self.n] != 0:
            raise ConsistencyError("singularity scheme cannot fill the ambient space")


@lru_cache(maxsize=256)
def _hypersurface_data(F: Polynomial, plan: RandomPlan) -> HypersurfaceData:
    n = F.ring.nvars - 1
    d = F.degree
    if d >= F.ring.p:
        raise ValueError(f"degree {d} is not below the characteristic {F.ring.p}")
    J = Ideal(F.ring, jacobian_ideal_generators(F))
    if J.is_zero():
        # only possible for constant F, which jacobian_ideal_generators rejects
        raise ValueError("hypersurface has an identically zero gradient")
    s, pd = segre_with_degrees(J, plan)
    return HypersurfaceData(F, n, d, s, pd)


def hypersurface_data(F: Polynomial, plan: RandomPlan = RandomPlan()) -> HypersurfaceData:
    """Compute (and memoise) the Segre class of the singularity scheme of V(F)."""
    return _hypersurface_data(F, plan)


def _as_data(F, plan) -> HypersurfaceData:
    return F if isinstance(F, HypersurfaceData) else hypersurface_data(F, plan)


# ----------------------------------------------------------------------------------
# classes

def chern_fulton(I: Ideal, plan: RandomPlan = RandomPlan()) -> ChowClass:
    """c(TP^n) ∩ s(V(I), P^n)."""
    n = I.ring.nvars - 1
    return cap(segre_class(I, plan), tangent_chern(n))


def c_virtual(n: int, d: int) -> ChowClass:
    """Chern class of the virtual tangent bundle of a degree-d hypersurface."""
    if d < 1:
        raise ValueError("degree must be positive")
    series = tangent_chern(n) / HSeries.linear(n, d)
    return cap(ChowClass.linear_space(n, n - 1, d), series)


def csm_from_segre(n: int, d: int, s: ChowClass) -> ChowClass:
    """CSM class of a degree-d hypersurface from s(JX, P^n)."""
    bracket = ChowClass.linear_space(n, n - 1, d) + dual(cap(s, HSeries.linear(n, d)), "upper")
    return cap(tensor_line(bracket, d), tangent_chern(n))


def csm_hypersurface(F, plan: RandomPlan = RandomPlan()) -> ChowClass:
    """CSM class of V(F).  Depends only on the support, so F may be unreduced."""
    h = _as_data(F, plan)
    return csm_from_segre(h.n, h.d, h.sJX)


def csm_subscheme(gens: Sequence[Polynomial], plan: RandomPlan = RandomPlan(),
                  max_product_degree: int = DEFAULT_MAX_PRODUCT_DEGREE) -> ChowClass:
    """CSM class of V(f_1, ..., f_r) by inclusion-exclusion over unions V(prod f_i)."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    if any(g.is_zero() for g in gens):
        raise ValueError("generators must be nonzero")
    ring = gens[0].ring
    n = ring.nvars - 1
    if len(gens) == 1:
        return csm_hypersurface(gens[0], plan)
    total = sum(g.degree for g in gens)
    if total > max_product_degree:
        raise BudgetExceededError(
            f"largest product has degree {total} > cap {max_product_degree}")
    out = ChowClass.zero(n)
    for size in range(1, len(gens) + 1):
        sign = 1 if size % 2 else -1
        for subset in itertools.combinations(range(len(gens)), size):
            F = ring.one()
            for i in subset:
                F = F * gens[i]
            log.debug("inclusion-exclusion term %s (degree %d)", subset, F.degree)
            out = out + sign * csm_hypersurface(F, plan)
    return out


def euler_characteristic(gens: Sequence[Polynomial], plan: RandomPlan = RandomPlan(),
                         max_product_degree: int = DEFAULT_MAX_PRODUCT_DEGREE) -> int:
    return integral(csm_subscheme(gens, plan, max_product_degree))


def is_reduced_by_segre(h: HypersurfaceData) -> bool:
    """A repeated factor of F shows up as a divisorial component of JX."""
    return h.n == 0 or h.sJX[h.n - 1] == 0


def milnor_class(F, plan: RandomPlan = RandomPlan()) -> ChowClass:
    """Milnor class of a reduced hypersurface, computed two ways and compared."""
    h = _as_data(F, plan)
    n, d, s = h.n, h.d, h.sJX
    if not is_reduced_by_segre(h):
        raise ValueError("hypersurface is not reduced (its singular scheme has a divisorial part)")
    sign = -1 if (n - 1) % 2 else 1
    via_definition = sign * (c_virtual(n, d) - csm_from_segre(n, d, s))
    localized = (-1) ** n * cap(tensor_line(dual(cap(s, HSeries.linear(n, d)), "upper"), d),
                                tangent_chern(n))
    if via_definition != localized:
        raise ConsistencyError(f"Milnor class routes disagree: {via_definition} vs {localized}")
    return localized


# ----------------------------------------------------------------------------------
# numbers

def _cotangent_twist(n: int, d: int) -> HSeries:
    """c(T*P^n ⊗ O(d)) = (1+(d-1)H)^(n+1) / (1+dH)."""
    return HSeries.linear(n, d - 1) ** (n + 1) / HSeries.linear(n, d)


def parusinski_from_segre(n: int, d: int, s: ChowClass) -> int:
    return integral(cap(s, _cotangent_twist(n, d)))


def parusinski_milnor(F, plan: RandomPlan = RandomPlan()) -> int:
    """Parusinski's generalised Milnor number; also the Euler obstruction of the discriminant."""
    h = _as_data(F, plan)
    return parusinski_from_segre(h.n, h.d, h.sJX)


euler_obstruction_discriminant = parusinski_milnor


def discriminant_multiplicity(F, plan: RandomPlan = RandomPlan()) -> int:
    """Multiplicity of the discriminant hypersurface at the point V(F)."""
    h = _as_data(F, plan)
    return integral(cap(h.sJX, HSeries.linear(h.n, h.d - 1) ** (h.n + 1)))


def milnor_number_sum(F, plan: RandomPlan = RandomPlan()) -> int:
    """Sum of the Milnor numbers of the (isolated) singular points of V(F)."""
    h = _as_data(F, plan)
    if any(h.sJX[i] for i in range(1, h.n + 1)):
        raise NotZeroDimensionalError("singular locus is positive-dimensional")
    return h.sJX[0]


@dataclass(frozen=True)
class LeData:
    lam: Tuple[int, ...]
    gamma: Tuple[int, ...]
    d: int
    n: int

    @property
    def le_class(self) -> ChowClass:
        return ChowClass(self.n, self.lam)


def le_from_segre(n: int, d: int, s: ChowClass) -> Tuple[int, ...]:
    return tuple(sum(binom(n - k - 1, j - k) * (d - 1) ** (j - k) * s[j] for j in range(k, n + 1))
                 for k in range(n + 1))


def polar_from_segre(n: int, d: int, s: ChowClass) -> Tuple[int, ...]:
    return tuple((d - 1) ** (n - k)
                 - sum(binom(n - k, j - k) * (d - 1) ** (j - k) * s[j] for j in range(k, n + 1))
                 for k in range(n + 1))


def le_data(n: int, d: int, s: ChowClass) -> LeData:
    """Le and polar numbers from s(JX, P^n), with the mutual consistency checks."""
    lam = le_from_segre(n, d, s)
    gamma = polar_from_segre(n, d, s)
    if ChowClass(n, lam) != tensor_line(s, -(d - 1)):
        raise ConsistencyError("Le numbers disagree with the twisted Segre class")
    if lam[n] != 0 or gamma[n] != 1:
        raise ConsistencyError(f"top Le/polar numbers are {lam[n]}, {gamma[n]} (expected 0, 1)")
    for k in range(n):
        if lam[k] != (d - 1) * gamma[k + 1] - gamma[k]:
            raise ConsistencyError(f"Le/polar relation fails at k={k}")
    return LeData(lam, gamma, d, n)


def le_numbers(F, plan: RandomPlan = RandomPlan()) -> LeData:
    h = _as_data(F, plan)
    return le_data(h.n, h.d, h.sJX)


def polar_numbers(F, plan: RandomPlan = RandomPlan()) -> Tuple[int, ...]:
    return le_numbers(F, plan).gamma


def polar_degree_from_csm(csm: ChowClass) -> int:
    n = csm.n
    return (-1) ** n - sum((-1) ** (n - i) * csm[i] for i in range(n + 1))


def polar_degree(F, plan: RandomPlan = RandomPlan()) -> int:
    """Degree of the gradient map of F, read off the CSM class."""
    h = _as_data(F, plan)
    value = polar_degree_from_csm(csm_from_segre(h.n, h.d, h.sJX))
    if h.degrees is not None and h.degrees.map_degree != value:
        raise ConsistencyError(
            f"polar degree {value} differs from the gradient map degree {h.degrees.map_degree}")
    return value


# ----------------------------------------------------------------------------------
# Le / Milnor / Segre dictionary

KINDS = ("le", "milnor", "segre")


def lms_convert(cls: ChowClass, src: str, dst: str, n: int, d: int) -> ChowClass:
    """Convert between the Le class, the Milnor class and s(JX, P^n) of a degree-d hypersurface."""
    src, dst = src.lower(), dst.lower()
    for k in (src, dst):
        if k not in KINDS:
            raise ValueError(f"unknown class kind {k!r}; expected one of {KINDS}")
    if cls.n != n:
        raise ValueError(f"class lives in P^{cls.n}, expected P^{n}")
    if src == dst:
        return cls
    sign = (-1) ** n
    one_h = HSeries.linear(n, 1)
    if (src, dst) == ("segre", "le"):
        return tensor_line(cls, -(d - 1))
    if (src, dst) == ("le", "segre"):
        return tensor_line(cls, d - 1)
    if (src, dst) == ("segre", "milnor"):
        series = one_h ** (n + 1) / HSeries.linear(n, d)
        return sign * cap(tensor_line(dual(cls, "upper"), d), series)
    if (src, dst) == ("milnor", "segre"):
        series = HSeries.linear(n, d) ** n / HSeries.linear(n, d - 1) ** (n + 1)
        return sign * cap(tensor_line(dual(cls, "upper"), d), series)
    if (src, dst) == ("le", "milnor"):
        series = one_h ** (n + 1) / HSeries.linear(n, d)
        return sign * cap(tensor_line(dual(cls, "upper"), 1), series)
    # milnor -> le
    series = one_h ** n * HSeries.linear(n, -(d - 1))
    return sign * cap(tensor_line(dual(cls, "upper"), 1), series)
