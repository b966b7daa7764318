import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dicketopo.dicke import (
    DickeSpec,
    binomial,
    closed_form_profile,
    coherence_argmax,
    dicke_state,
    ghz_state,
    inverted_w_state,
    recognize_dicke,
    residual_spec,
    w_state,
)
from dicketopo.exceptions import ImpossibleOutcomeError, InvalidSpecError, TooLargeError
from dicketopo.quantifiers import l1_coherence
from dicketopo.statevector import basis_state, flip_all, permute_qubits

from oracles import dicke_amplitudes, pascal_binomial

# Frozen from the Pascal-triangle oracle
C_20_10 = 184756
C_100_50 = 100891344545564193334812497256


def test_frozen_values_match_oracle():
    assert pascal_binomial(20, 10) == C_20_10
    assert pascal_binomial(100, 50) == C_100_50


@pytest.mark.parametrize("n,k,expected", [(3, 1, 3), (20, 10, C_20_10), (5, 7, 0), (5, -1, 0), (0, 0, 1)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


@given(st.integers(0, 60), st.integers(-3, 63))
def test_binomial_against_pascal(n, k):
    assert binomial(n, k) == pascal_binomial(n, k)


def test_spec_validation():
    with pytest.raises(InvalidSpecError):
        DickeSpec(3, 4)
    with pytest.raises(InvalidSpecError):
        DickeSpec(-1, 0)
    assert DickeSpec(0, 0).n == 0


def test_w_state():
    psi = dicke_state(DickeSpec(3, 1))
    t = 1 / math.sqrt(3)
    np.testing.assert_allclose(psi.amplitudes, [0, t, t, 0, t, 0, 0, 0], atol=1e-15)


def test_dicke_trivial():
    np.testing.assert_array_equal(dicke_state(DickeSpec(2, 0)).amplitudes, [1, 0, 0, 0])


def test_dicke_4_2_support():
    psi = dicke_state(DickeSpec(4, 2))
    assert set(np.flatnonzero(psi.amplitudes)) == {3, 5, 6, 9, 10, 12}
    np.testing.assert_allclose(psi.amplitudes[[3, 5, 6, 9, 10, 12]], 1 / math.sqrt(6), atol=1e-15)


@pytest.mark.parametrize("n", range(1, 9))
def test_dicke_matches_enumeration(n):
    for k in range(n + 1):
        np.testing.assert_allclose(dicke_state(DickeSpec(n, k)).amplitudes, dicke_amplitudes(n, k), atol=1e-15)


def test_dicke_cap():
    with pytest.raises(TooLargeError, match="closed forms"):
        dicke_state(DickeSpec(21, 3))


def test_ghz():
    g2 = ghz_state(2)
    np.testing.assert_allclose(g2.amplitudes, [1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)])
    g3 = ghz_state(3)
    assert list(np.flatnonzero(g3.amplitudes)) == [0, 7]
    assert l1_coherence(g3) == pytest.approx(1, abs=1e-12)
    with pytest.raises(InvalidSpecError, match="GHZ"):
        ghz_state(1)


def test_aliases():
    assert w_state(4) == dicke_state(DickeSpec(4, 1))
    assert inverted_w_state(4) == dicke_state(DickeSpec(4, 3))


def test_profile_w():
    p = closed_form_profile(DickeSpec(3, 1))
    assert (p.dim, p.coherence, p.p0, p.p1, p.schmidt_rank) == (3, 2, Fraction(2, 3), Fraction(1, 3), 2)
    assert p.schmidt_coeffs == pytest.approx((math.sqrt(2 / 3), math.sqrt(1 / 3)), abs=1e-15)


def test_profile_separable():
    p = closed_form_profile(DickeSpec(4, 0))
    assert (p.dim, p.coherence, p.p0, p.schmidt_rank) == (1, 0, 1, 1)
    q = closed_form_profile(DickeSpec(4, 4))
    assert (q.coherence, q.p1, q.schmidt_rank) == (0, 1, 1)


def test_profile_big():
    assert closed_form_profile(DickeSpec(100, 50)).coherence == C_100_50 - 1
    assert len(str(C_100_50 - 1)) == 30


@given(st.integers(1, 300).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_profile_invariants(nk):
    n, k = nk
    p = closed_form_profile(DickeSpec(n, k))
    assert p.p0 + p.p1 == 1
    assert abs(sum(c * c for c in p.schmidt_coeffs) - 1) <= 1e-12
    assert (p.schmidt_rank == 1) == (k in (0, n))


def test_residual_spec():
    assert residual_spec(DickeSpec(3, 1), 1) == DickeSpec(2, 0)
    assert residual_spec(DickeSpec(3, 1), 0) == DickeSpec(2, 1)
    with pytest.raises(ImpossibleOutcomeError, match="zero-probability"):
        residual_spec(DickeSpec(4, 4), 0)
    with pytest.raises(ImpossibleOutcomeError):
        residual_spec(DickeSpec(4, 0), 1)


@pytest.mark.parametrize("n", range(2, 7))
def test_permutation_symmetry(n):
    for k in range(n + 1):
        psi = dicke_state(DickeSpec(n, k))
        for perm in itertools.permutations(range(1, n + 1)):
            assert np.array_equal(permute_qubits(psi, perm).amplitudes, psi.amplitudes)


@pytest.mark.parametrize("n", range(1, 11))
def test_bit_flip_duality(n):
    for k in range(n + 1):
        assert flip_all(dicke_state(DickeSpec(n, k))) == dicke_state(DickeSpec(n, n - k))


@pytest.mark.parametrize("n", range(1, 31))
def test_coherence_argmax(n):
    expected = [n // 2] if n % 2 == 0 else [n // 2, n // 2 + 1]
    assert coherence_argmax(n) == expected


def test_recognize():
    assert recognize_dicke(dicke_state(DickeSpec(5, 2))) == DickeSpec(5, 2)
    assert recognize_dicke(basis_state("000")) == DickeSpec(3, 0)
    assert recognize_dicke(ghz_state(3)) is None
    assert recognize_dicke(basis_state("010")) is None
