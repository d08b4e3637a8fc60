import warnings
from math import comb

import pytest

from helpers import projective_ring
from segrekit import arrangements as ar
from segrekit.charcls import csm_hypersurface
from segrekit.chow import ChowClass, HSeries, cap, tangent_chern
from segrekit.errors import ParseError


def arr(text):
    return ar.parse_arrangement(text)


COORD3 = "vars x0..x3;\nx1\nx2\nx3\n"
WEIGHTED = "vars x0..x3;\nx1 * 2\nx2 * 3\nx3 * 5\n"
BOOLEAN3 = "vars x0..x3;\nx0\nx1\nx2\nx3\n"
BOOLEAN2 = "vars x0..x2;\nx0\nx1\nx2\n"
CONCURRENT = "vars x0..x2;\nx0\nx1\nx0 + x1\n"
PENCIL4 = "vars x0..x2;\nx0\nx1\nx0 + x1\nx0 - x1\n"
GENERIC4 = "vars x0..x3;\nx0\nx1\nx2\nx3\nx0 + x1 + x2 + x3\n"
GENERIC5_P2 = "vars x, y, z;\nx\ny\nz\nx + y + z\nx + 2*y + 3*z\n"
GENERIC3_P3 = "vars x0..x3;\nx0 + x1\nx1 + x2\nx0 + x2 + x3\n"
BRAID = "vars x0..x3;\nx0 - x1\nx0 - x2\nx0 - x3\nx1 - x2\nx1 - x3\nx2 - x3\n"
SINGLE = "vars x0..x2;\nx0\n"

CORPUS = [COORD3, WEIGHTED, BOOLEAN3, BOOLEAN2, CONCURRENT, PENCIL4, GENERIC4, GENERIC5_P2,
          GENERIC3_P3, BRAID, SINGLE]


def test_parse_arrangement():
    A = arr(WEIGHTED)
    assert A.n == 3 and A.forms == [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    assert A.multiplicities == [2, 3, 5] and A.d == 10 and not A.is_reduced
    B = arr("vars x, y, z;\n2*x - 3*y   # a comment\n\nz * 4\n")
    assert B.forms == [(2, -3, 0), (0, 0, 1)] and B.multiplicities == [1, 4]
    with pytest.raises(ParseError):
        arr("vars x0..x2;\nx0^2\n")
    with pytest.raises(ParseError):
        arr("vars x0..x2;\nx0\n2*x0\n")
    with pytest.raises(ParseError) as e:
        arr("vars x0..x2;\nx0\nx0 + q\n")
    assert e.value.line == 3


def test_integer_rank():
    assert ar.integer_rank([[1, 2], [2, 4]]) == 1
    assert ar.integer_rank([[0, 0, 0]]) == 0
    assert ar.integer_rank([[2, 3, 5], [7, 11, 13], [17, 19, 23]]) == 3
    # singular mod small primes but not over Q
    assert ar.integer_rank([[101, 0], [0, 1]]) == 2


def test_lattice_examples():
    L = ar.build_lattice(arr(COORD3))
    assert L.rank_counts() == (1, 3, 3, 1)
    S = ar.build_lattice(arr(SINGLE))
    assert [f.mobius for f in S.flats] == [1, -1]
    c = ar.build_lattice(arr(CONCURRENT))
    top = [f for f in c.flats if f.rank == 2]
    assert len(top) == 1 and top[0].mobius == 2
    with pytest.raises(ValueError):
        ar.build_lattice(ar.Arrangement(2, [(1, k, k * k) for k in range(17)]))


def test_mobius_sums_vanish():
    for text in CORPUS:
        L = ar.build_lattice(arr(text))
        assert L.flats[0].hyperplanes == frozenset() and L.flats[0].mobius == 1
        for x in L.flats[1:]:
            assert sum(y.mobius for y in L.flats if y.hyperplanes <= x.hyperplanes) == 0


def test_characteristic_polynomials():
    assert ar.characteristic_polynomial(arr(GENERIC3_P3)) == (0, 1, -2, 1)
    assert ar.characteristic_polynomial(arr(SINGLE)) == (0, 0, 1)
    for text, n in ((BOOLEAN2, 2), (BOOLEAN3, 3)):
        assert ar.characteristic_polynomial(arr(text)) == tuple((-1) ** (n - k) * comb(n, k) for k in range(n + 1))


def test_poincare_polynomials():
    assert ar.poincare_polynomial(arr(COORD3)) == (1, 2, 1, 0)
    assert ar.poincare_polynomial(arr(SINGLE)) == (1, 0, 0)
    # d generic hyperplanes with d <= n
    assert ar.poincare_polynomial(arr(GENERIC3_P3)) == tuple(comb(2, k) for k in range(4))
    with pytest.raises(ValueError):
        ar.poincare_polynomial(ar.Arrangement(2, []))


def test_csm_complement():
    assert ar.csm_complement(arr(COORD3)) == ChowClass(3, (0, 0, 1, 1))
    assert ar.csm_complement(arr(SINGLE)) == ChowClass(2, (1, 2, 1))
    for n in range(5):
        assert ar.csm_complement(ar.Arrangement(n, [])) == cap(ChowClass.fundamental(n), tangent_chern(n))


def test_csm_additivity():
    for text in CORPUS:
        A = arr(text)
        whole = cap(ChowClass.fundamental(A.n), tangent_chern(A.n))
        assert ar.csm_complement(A) + csm_hypersurface(A.polynomial()) == whole


def test_orlik_solomon_double_route():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for text in CORPUS:
            A = arr(text)
            assert ar.betti_ranks_via_segre(A) == ar.poincare_polynomial(A), text


def test_multiplicity_blindness():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        A = arr(WEIGHTED)
        assert ar.betti_ranks_via_segre(A) == ar.betti_ranks_via_segre(A.reduction()) == (1, 2, 1, 0)
        B = arr("vars x0..x2;\nx0 * 3\nx1\nx0 + x1 * 2\n")
        assert ar.betti_ranks_via_segre(B) == ar.betti_ranks_via_segre(B.reduction())


def test_non_essential_warning():
    with pytest.warns(UserWarning, match="not essential"):
        ar.betti_ranks_via_segre(arr(COORD3))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ar.betti_ranks_via_segre(arr(BOOLEAN3))


def test_boolean_deletion():
    # Boolean arrangements: the central characteristic polynomial is (t-1)^k t^(n+1-k)
    names = "vars x0..x4;\n"
    for k in range(1, 6):
        A = arr(names + "\n".join(f"x{i}" for i in range(k)))
        expected = [0] * 6
        for j in range(k + 1):
            expected[5 - k + j] = (-1) ** (k - j) * comb(k, j)
        assert ar.central_characteristic_polynomial(A) == tuple(expected)
        if k < 5:
            B = arr(names + "\n".join(f"x{i}" for i in range(k + 1)))
            # adding an independent hyperplane multiplies by (t-1)/t
            chiA = ar.central_characteristic_polynomial(A)
            chiB = ar.central_characteristic_polynomial(B)
            shifted = [chiA[i] - (chiA[i + 1] if i + 1 < 6 else 0) for i in range(6)]
            assert chiB == tuple(shifted)


def test_sja_closed_form():
    A = arr("vars x0..x3;\nx0\nx1\nx2\n")
    assert ar.sja_closed_form(A) == ChowClass(3, (-12, 6))
    assert ar.sja_closed_form(arr("vars x0..x3;\nx0\n")).is_zero()
    assert ar.sja_closed_form(arr(BOOLEAN2)) == ChowClass(2, (6,))
    with pytest.raises(ValueError):
        ar.sja_closed_form(arr(WEIGHTED))


def test_arrangement_validation():
    with pytest.raises(ValueError):
        ar.Arrangement(2, [(0, 0, 0)])
    with pytest.raises(ValueError):
        ar.Arrangement(2, [(1, 2, 3), (2, 4, 6)])
    with pytest.raises(ValueError):
        ar.Arrangement(2, [(1, 0, 0)], [0])
