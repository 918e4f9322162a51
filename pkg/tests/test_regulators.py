import random

import pytest
from hypothesis import given, strategies as st

from ellreg.field import FieldElement, hensel_embeddings, log_vector
from ellreg.lattice import dihedral_group, regular_group
from ellreg.norms import SUnitWord
from ellreg.padic import PrecisionContext
from ellreg.regulators import (
    NONZERO,
    ZERO_AT_PRECISION,
    UnsupportedCharacters,
    check_descent,
    classical_regulator,
    conjugate_log_values,
    dedekind_check,
    new_regulator,
    relative_regulator,
    unit_square_class,
    verdict,
)
from conftest import FIELDS, session
from oracles import det_leibniz, log_series


def test_rational_field_classical_regulator():
    for ell in (3, 5, 7):
        ctx = PrecisionContext(ell, 10)
        rep = classical_regulator([], hensel_embeddings((0, 1), ctx))
        assert rep.valuation == 2 and rep.verdict == NONZERO
        assert rep.det.residue(8) == log_series(1 + ell, ell, 10) ** 2 % ell**8


def test_classical_qsqrt2_and_duplicates():
    s = session("qsqrt2")
    rep = classical_regulator(s.spec.units, s.E)
    assert rep.verdict == NONZERO
    # oracle: the 2x2 Gram from series logs at each root
    M = 8
    roots = [r.residue() for r in s.E.roots]
    e0 = [log_series(8, 7, 12)] * 2
    u = [log_series(1 + r, 7, 12) for r in roots]
    gram = [[sum(a * b for a, b in zip(x, y)) for y in (e0, u)] for x in (e0, u)]
    assert rep.det.residue(M) == det_leibniz(gram) % 7**M
    dup = classical_regulator([s.spec.units[0]] * 2, s.E)
    assert dup.verdict == ZERO_AT_PRECISION


@pytest.mark.parametrize("name", FIELDS)
def test_gram_symmetry(name):
    s = session(name)
    for rep in (classical_regulator(s.spec.units, s.E),
                new_regulator(s.kernel, s.divisors, s.context, s.expected_rank)):
        g = rep.gram
        assert all(g[i][j].agrees(g[j][i]) for i in range(len(g)) for j in range(len(g)))
        assert rep.verdict == verdict(rep.det)


def test_relative_regulator():
    s = session("qzeta8")
    empty = relative_regulator([], s.E)
    assert empty.det.residue(5) == 1 and empty.verdict == NONZERO
    u = s.spec.units[0]  # 1 + sqrt 2, norm -1 down to Q(i)
    rel = relative_regulator([u], s.E, s.group)
    cl = classical_regulator([u], s.E)
    assert rel.gram[0][0].agrees(cl.gram[1][1])
    assert cl.gram[0][1].valuation is None or cl.gram[0][1].valuation >= s.context.certified
    assert cl.det.agrees(cl.gram[0][0] * rel.det)
    with pytest.raises(ValueError):
        relative_regulator([u], s.E, s.group, {"s1", "s7"})  # u is fixed by s7
    assert relative_regulator([u, u], s.E).verdict == ZERO_AT_PRECISION


def test_new_regulator_qi():
    s = session("qi")
    rep = new_regulator(s.kernel, s.divisors, s.context, s.expected_rank)
    assert rep.valuation == 0 and rep.verdict == NONZERO
    assert rep.det.residue(1) == 2
    bad = new_regulator(s.kernel, s.divisors, s.context, expected_rank=2)
    assert bad.det is None and bad.diagnostics
    zero = new_regulator(s.kernel, s.divisors, s.context,
                         basis=[SUnitWord((-1, 1, 1), s.kernel.modulus_exponent)])
    assert zero.verdict == ZERO_AT_PRECISION


def _unimodular(k, rng):
    U = [[int(i == j) for j in range(k)] for i in range(k)]
    for _ in range(6):
        i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
        if i != j:
            c = rng.randint(-3, 3)
            U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        if rng.random() < 0.3:
            U[i] = [-a for a in U[i]]
    return U


@pytest.mark.parametrize("name", FIELDS)
def test_new_regulator_unimodular_invariance(name):
    s = session(name)
    K = s.kernel
    base = new_regulator(K, s.divisors, s.context, s.expected_rank)
    words = K.quotient
    rng = random.Random(name)
    for _ in range(20):
        U = _unimodular(len(words), rng)
        basis = [SUnitWord(tuple(sum(U[i][a] * words[a].exponents[g] for a in range(len(words)))
                                 for g in range(len(words[0].exponents))), K.modulus_exponent)
                 for i in range(len(words))]
        rep = new_regulator(K, s.divisors, s.context, s.expected_rank, basis=basis)
        assert rep.valuation == base.valuation and rep.verdict == base.verdict
        assert rep.unit_class == base.unit_class


def test_unit_square_class():
    ctx = PrecisionContext(7, 6)
    assert unit_square_class(ctx(2)) == 1 and unit_square_class(ctx(3)) == -1
    assert unit_square_class(ctx(0)) is None
    assert unit_square_class(PrecisionContext(2, 6)(3 * 4)) == 3


@given(x=st.lists(st.integers(-50, 50), min_size=2, max_size=2))
def test_dedekind_two_element_group(x):
    ctx = PrecisionContext(5, 10)
    G = regular_group([0, 1], lambda a, b: (a + b) % 2)
    r = dedekind_check({"0": x[0], "1": x[1]}, G, ctx)
    assert r.lhs.agrees(ctx(x[0] ** 2 - x[1] ** 2))
    assert r.residual >= 10


@given(x=st.lists(st.integers(-10**6, 10**6), min_size=3, max_size=3))
def test_dedekind_cyclic_three(x):
    ctx = PrecisionContext(13, 10)
    G = regular_group([0, 1, 2], lambda a, b: (a + b) % 3)
    X = {str(k): x[k] for k in range(3)}
    r = dedekind_check(X, G, ctx)
    circ = [[x[(j - i) % 3] for j in range(3)] for i in range(3)]
    assert r.lhs.agrees(ctx(int(det_leibniz(circ))))
    assert r.residual >= 10


def test_dedekind_unsupported_exponent():
    G = regular_group([0, 1, 2], lambda a, b: (a + b) % 3)
    with pytest.raises(UnsupportedCharacters):
        dedekind_check({"0": 1, "1": 2, "2": 3}, G, PrecisionContext(5, 8))
    with pytest.raises(UnsupportedCharacters):
        dedekind_check({g: 1 for g in dihedral_group(3).labels}, dihedral_group(3), PrecisionContext(7, 8))


@pytest.mark.parametrize("name", ["qsqrt2", "cubic49"])
def test_dedekind_on_fields(name):
    s = session(name)
    beta = s.spec.mul(s.alpha() if s.spec.alpha is not None else s.spec.sunits[0], FieldElement((1 + s.context.ell,)))
    r = dedekind_check(conjugate_log_values(beta, s.group, s.E), s.group, s.context)
    assert r.residual >= s.context.certified - 2


def test_descent_consistency():
    s = session("qzeta8")
    up = new_regulator(s.kernel, s.divisors, s.context, s.expected_rank)
    down_session = session("qi", ell=17)
    down = new_regulator(down_session.kernel, down_session.divisors, down_session.context, 1)
    assert check_descent(up, down).consistent
    zero = classical_regulator([s.spec.units[0]] * 2, s.E)
    assert not check_descent(up, zero).consistent
    assert check_descent(zero, up).consistent


def test_log_vector_of_unit_sums_to_zero_in_regulator_rows():
    s = session("cubic49")
    for u in s.spec.units:
        lv = log_vector(u, s.E)
        t = lv[0] + lv[1] + lv[2]
        assert t.valuation is None or t.valuation >= s.context.certified
