"""segrekit: Segre classes and characteristic classes of subschemes of projective space.

Polynomials live over a prime field GF(p); every class is an exact integer
vector in the Chow group of P^n.
"""
__version__ = "0.1.0"

from .chow import ChowClass, HSeries, cap, ci_segre, dual, integral, render, residual_segre, tensor_line
from .errors import (BudgetExceededError, ConsistencyError, GenericityError, NotHomogeneousError,
                     NotZeroDimensionalError, ParseError, RingMismatchError, SegreKitError)
from .ffpoly import DEFAULT_PRIME, GREVLEX, LEX, MonomialOrder, Polynomial, PrimeField, Ring, parse_polynomial
from .groebner import Ideal, groebner_basis, quotient_dimension
from .segre import ProjectiveDegrees, RandomPlan, projective_degrees, segre_class
from .charcls import (c_virtual, chern_fulton, csm_hypersurface, csm_subscheme, discriminant_multiplicity,
                      euler_characteristic, le_numbers, lms_convert, milnor_class, milnor_number_sum,
                      parusinski_milnor, polar_degree, polar_numbers)
from .arrangements import (Arrangement, betti_ranks_via_segre, build_lattice, characteristic_polynomial,
                           csm_complement, parse_arrangement, poincare_polynomial, sja_closed_form)
