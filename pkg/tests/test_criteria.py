from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ellreg.criteria import (
    decompose,
    imaginary_quadratic_split_generator,
    multiplicative_order,
    real_quadratic_unit,
    survey_primes,
    zeta_conjugacy,
)
from ellreg.field import FieldElement, NotSplit, NumberFieldSpec, hensel_embeddings
from ellreg.lattice import divisor_of
from ellreg.padic import PrecisionContext
from oracles import conjugacy_bruteforce, primes_upto, smallest_unit


def test_examples():
    v = zeta_conjugacy(5, 42)
    assert v.answer and v.witness_r == 3 and v.decomposition == (1, 0, 21, 21)
    assert 5**3 + 1 == 126 == 2 * 3**2 * 7
    assert not zeta_conjugacy(11, 5).answer
    assert zeta_conjugacy(3, 1).answer and zeta_conjugacy(3, 1).branch == "trivial"
    v = zeta_conjugacy(2, 3)
    assert v.answer and v.witness_r == 1 and v.branch == "iii"


def test_matches_bruteforce_exhaustively():
    for ell in primes_upto(49):
        for m in range(1, 200):
            assert zeta_conjugacy(ell, m).answer == conjugacy_bruteforce(ell, m), (ell, m)


@pytest.mark.parametrize("s", [(a, s1, s2, s3) for a in (0, 1) for s1 in range(3)
                               for s2 in range(3) for s3 in range(3)])
def test_ell5_family_holds(s):
    a, s1, s2, s3 = s
    assert zeta_conjugacy(5, 2**a * 3**s1 * 5**s2 * 7**s3).answer


@given(k=st.integers(1, 40), a=st.integers(0, 3))
def test_ell11_fails_whenever_five_divides(k, a):
    assert not zeta_conjugacy(11, 5 * k * 2**a).answer


@given(ell=st.sampled_from(primes_upto(60)), m=st.integers(3, 500))
def test_witness_satisfies_congruence(ell, m):
    v = zeta_conjugacy(ell, m)
    if v.answer and v.witness_r is not None:
        assert (ell**v.witness_r + 1) % v.modulus == 0
        if v.branch == "ii":
            assert v.witness_r % 2 == 1
    a, b, c, c1 = decompose(ell, m)
    assert 2**a * (ell**b if ell != 2 else 1) * c == m


def test_bad_arguments():
    with pytest.raises(ValueError):
        zeta_conjugacy(6, 5)
    with pytest.raises(ValueError):
        zeta_conjugacy(5, 0)
    with pytest.raises(ValueError):
        multiplicative_order(5, 10)


def test_survey():
    assert survey_primes((-1, 1), 3, 30) == [2, 5, 11, 17, 23, 29]
    assert survey_primes((-1, 1), 1, 30) == primes_upto(30)
    assert survey_primes((1, 0, 1), 1, 30) == [p for p in primes_upto(30) if p % 4 == 1]


@given(m=st.integers(1, 60), bound=st.integers(2, 300))
def test_survey_primes_satisfy_criterion_with_r1(m, bound):
    out = survey_primes((1, 0, 1), m, bound)
    assert out == sorted(out) and all(p <= bound for p in out)
    for p in out:
        v = zeta_conjugacy(p, m)
        assert v.answer and v.witness_r in (1, None)
    assert set(survey_primes((1, 0, 1), m, bound // 2)) <= set(out)


@pytest.mark.parametrize("d", [2, 3, 5, 6, 7, 10, 13, 14, 21, 29, 61, 94])
def test_real_quadratic_unit_matches_search(d):
    u = real_quadratic_unit(d)
    spec = NumberFieldSpec(f=(-d, 0, 1), r1=2, r2=0)
    assert abs(spec.norm(u)) == 1
    a, b = smallest_unit(d)
    num = u.numerator + (0,) * (2 - len(u.numerator))
    assert (Fraction(num[0], u.denominator), Fraction(num[1], u.denominator)) == (a, b)


def test_real_quadratic_examples_and_errors():
    assert real_quadratic_unit(2) == FieldElement((1, 1))
    assert real_quadratic_unit(3) == FieldElement((2, 1))
    with pytest.raises(ValueError):
        real_quadratic_unit(8)


@pytest.mark.parametrize("d,ell,h", [(1, 5, 1), (5, 3, 2), (1, 13, 1), (2, 3, 1), (7, 11, 1),
                                     (5, 7, 2), (14, 3, 4)])
def test_imaginary_split_generator(d, ell, h):
    alpha, got = imaginary_quadratic_split_generator(d, ell)
    assert got == h
    spec = NumberFieldSpec(f=(d, 0, 1), r1=0, r2=1)
    assert spec.norm(alpha) == ell**h
    div = divisor_of(alpha, hensel_embeddings(spec.f, PrecisionContext(ell, 8)))
    assert sorted(div.coeffs) == [0, h]


def test_imaginary_split_generator_errors():
    with pytest.raises(NotSplit):
        imaginary_quadratic_split_generator(1, 7)
    with pytest.raises(ValueError):
        imaginary_quadratic_split_generator(14, 3, h_bound=3)
