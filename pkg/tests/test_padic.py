from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from ellreg.padic import (
    EXACT,
    PadicNumber,
    PrecisionContext,
    PrecisionError,
    iwasawa_log,
    series_terms,
    teichmuller,
    valuation,
)
from oracles import log_series, reduce_mod, teichmuller_newton, val

PRIMES = st.sampled_from([2, 3, 5, 7, 11, 13, 17])
INTS = st.integers(-10**9, 10**9)


def test_context_rejects_composite_and_bad_slack():
    with pytest.raises(ValueError):
        PrecisionContext(9, 5)
    with pytest.raises(ValueError):
        PrecisionContext(5, 3, 3)
    with pytest.raises(ValueError):
        PrecisionContext(5, 3, -1)


def test_small_sums():
    ctx = PrecisionContext(5, 4)
    x = ctx(7)
    assert (ctx.zero() + x) == x
    s = ctx(3) + ctx(2)
    assert (s.valuation, s.unit_residue) == (1, 1)


def test_cancellation_loses_a_digit():
    ctx = PrecisionContext(5, 4)
    a = ctx(2 + 5**4 * 7)
    s = a + 3
    assert s.valuation == 1 and s.unit_residue == 1
    assert s.absprec == 4 and s.relprec == 3


def test_valuation_and_inverse():
    assert valuation(PrecisionContext(5, 6)(50)) == 2
    inv = PrecisionContext(7, 3)(3).inverse()
    assert inv.residue() == 229


def test_mul_identity_and_exact_zero():
    ctx = PrecisionContext(11, 5)
    x = ctx(Fraction(13, 11))
    assert x * 1 == x
    assert ctx.zero().absprec == EXACT
    assert (x * ctx.zero()).is_zero()


def test_teichmuller_examples():
    ctx = PrecisionContext(5, 3)
    assert teichmuller(ctx(2)).residue() == 57 == teichmuller_newton(2, 5, 3)
    assert teichmuller(ctx(6)).residue() == 1
    t = teichmuller(ctx(3))
    assert teichmuller(t) == t


def test_log_examples():
    ctx = PrecisionContext(5, 4)
    assert iwasawa_log(ctx(5)).is_zero()
    assert iwasawa_log(ctx(1)).is_zero()
    # frozen from the rational series oracle
    assert iwasawa_log(ctx(6)).residue() == 555 == log_series(6, 5, 4)
    two = PrecisionContext(2, 10)
    assert iwasawa_log(two(-1)).is_zero()
    assert iwasawa_log(two(3)).residue() == log_series(3, 2, 10)


def test_log_of_zero_raises():
    ctx = PrecisionContext(3, 5)
    with pytest.raises(PrecisionError):
        iwasawa_log(ctx.zero())


def test_series_terms_bound():
    assert series_terms(1, 6, 5) == 7
    T = series_terms(2, 14, 3)
    assert T * 2 - 2 >= 14


@given(ell=PRIMES, a=INTS, b=INTS)
def test_arithmetic_matches_rationals(ell, a, b):
    ctx = PrecisionContext(ell, 8)
    assume(a and b)
    for op, exact in ((lambda x, y: x + y, a + b), (lambda x, y: x * y, a * b),
                      (lambda x, y: x - y, a - b)):
        got = op(ctx(a), ctx(b))
        if exact == 0:
            assert got.is_zero()
            continue
        assert got.agrees(ctx(exact))


@given(ell=PRIMES, a=INTS.filter(bool), b=INTS.filter(bool))
def test_division_roundtrip(ell, a, b):
    ctx = PrecisionContext(ell, 8)
    q = ctx(a) / ctx(b)
    assert q.valuation == val(Fraction(a, b), ell)
    assert (q * b).agrees(ctx(a))


@given(ell=PRIMES, a=INTS.filter(bool))
def test_canonical_form(ell, a):
    x = PrecisionContext(ell, 6)(a)
    assert x.unit_residue % ell != 0
    assert 0 < x.relprec <= 6


@given(ell=st.sampled_from([3, 5, 7, 13]), u=INTS, v=INTS)
def test_log_is_a_homomorphism(ell, u, v):
    assume(u % ell and v % ell)
    ctx = PrecisionContext(ell, 10)
    lhs = iwasawa_log(ctx(u) * ctx(v))
    rhs = iwasawa_log(ctx(u)) + iwasawa_log(ctx(v))
    d = lhs - rhs
    assert d.valuation is None or d.valuation >= ctx.certified


@given(ell=st.sampled_from([3, 5, 7, 11]), u=INTS, k=st.integers(0, 4))
def test_log_kills_roots_of_unity_and_ell(ell, u, k):
    assume(u % ell)
    ctx = PrecisionContext(ell, 8)
    w = teichmuller(ctx(u))
    assert iwasawa_log(w).is_zero()
    assert iwasawa_log(w * ell**k).is_zero()


@given(ell=st.sampled_from([2, 3, 5, 7]), u=INTS)
def test_log_matches_series_oracle(ell, u):
    assume(u % ell)
    ctx = PrecisionContext(ell, 6)
    assert iwasawa_log(ctx(u)).residue(6) == log_series(u, ell, 6) % ell**6


@given(ell=PRIMES, a=INTS.filter(bool), b=INTS.filter(bool))
def test_refinement(ell, a, b):
    lo, hi = PrecisionContext(ell, 5), PrecisionContext(ell, 9)
    x_lo = ctx_op(lo, a, b)
    x_hi = ctx_op(hi, a, b)
    if x_lo.valuation is None:
        return
    k = int(min(x_lo.absprec, x_hi.absprec))
    assert x_hi.valuation == x_lo.valuation
    assert (x_hi.unit_residue - x_lo.unit_residue) % ell ** (k - x_lo.valuation) == 0


def ctx_op(ctx, a, b):
    return (ctx(a) * ctx(b) + ctx(Fraction(a, b))) / ctx(b)


def test_bottom_propagates():
    ctx = PrecisionContext(5, 4)
    z = PadicNumber(ctx, None, 0, 3)
    assert (z + 125).is_zero() and (z + 125).absprec == 3
    s = z + 25
    assert (s.valuation, s.absprec) == (2, 3)
    assert (z * 5).absprec == 4
    with pytest.raises(PrecisionError):
        z.inverse()


def test_residue_and_digits():
    ctx = PrecisionContext(7, 3)
    x = ctx(Fraction(1, 3))
    assert x.residue() == reduce_mod(Fraction(1, 3), 7, 3)
    assert sum(d * 7**i for i, d in enumerate(x.digits())) == x.unit_residue
