import pytest
from hypothesis import given, strategies as st

from ellreg.lattice import (
    BaseDivisor,
    Divisor,
    GroupData,
    GroupDataError,
    PrimeTree,
    SplitPartition,
    act,
    dihedral_group,
    divisor_of,
    extend,
    norm_down,
    pair,
    pair_parts,
    regular_group,
    relative_pair,
)

coeff = st.integers(-20, 20)


def divisors(n):
    return st.lists(coeff, min_size=n, max_size=n).map(lambda c: Divisor(tuple(c)))


def cyclic(n):
    return regular_group(range(n), lambda a, b: (a + b) % n)


def test_group_validation():
    with pytest.raises(GroupDataError):
        GroupData({"a": (0, 0)})
    with pytest.raises(GroupDataError):
        GroupData({"a": (1, 0)})  # identity missing
    with pytest.raises(GroupDataError):
        GroupData({"e": (0, 1, 2), "a": (1, 0, 2), "b": (0, 2, 1)})  # not closed
    with pytest.raises(GroupDataError):
        GroupData({"e": (0, 1), "c": (1, 0)}, tau="e")
    with pytest.raises(GroupDataError):
        GroupData({"e": (0, 1), "c": (1, 0)}, h_subset={"c"}, tau="c")
    G = cyclic(4)
    assert G.order == 4 and G.exponent() == 4 and G.is_abelian()
    assert G.mul("1", "3") == G.identity == "0"


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_dihedral_group_structure(n):
    G = dihedral_group(n)
    assert G.order == 2 * n and len(G.h_subset) == n
    assert G.is_abelian() == (n <= 2)
    for h in G.h_subset:
        assert G.mul(G.mul(G.tau, h), G.tau) == G.inverse(h)


def test_divisor_of_words():
    gens = [(1, 0), (0, 1)]
    assert divisor_of((2, -3), generators=gens) == Divisor((2, -3))
    with pytest.raises(ValueError):
        divisor_of((1,), generators=gens)
    with pytest.raises(ValueError):
        pair(Divisor((1,)), Divisor((1, 2)))


@given(x=divisors(6), y=divisors(6), g=st.sampled_from(dihedral_group(3).labels),
       h=st.sampled_from(dihedral_group(3).labels))
def test_act_is_an_action(x, y, g, h):
    G = dihedral_group(3)
    assert act(G.mul(g, h), x, G) == act(g, act(h, x, G), G)
    assert act(G.identity, x, G) == x
    assert pair(act(g, x, G), act(g, y, G)) == pair(x, y)


@given(x=divisors(6), y=divisors(6))
def test_pair_is_symmetric_bilinear(x, y):
    assert pair(x, y) == pair(y, x)
    assert pair(x + y, y) == pair(x, y) + pair(y, y)
    assert pair(3 * x, y) == 3 * pair(x, y)
    assert pair(x, x) >= 0 and (pair(x, x) == 0) == x.is_zero()


@given(x=divisors(8), y=divisors(8), g=st.sampled_from(dihedral_group(4).labels))
def test_relative_pairing(x, y, g):
    G = dihedral_group(4)
    P = SplitPartition.from_group(G)
    a, b = pair_parts(x, y, P)
    assert a + b == pair(x, y)
    assert pair_parts(act(G.tau, x, G), act(G.tau, y, G), P) == (b, a)
    assert relative_pair(act(g, x, G), act(g, y, G), P) == relative_pair(x, y, P).act(g, G)


@given(d=divisors(12), i=st.integers(0, 5), j=st.integers(0, 5))
def test_tau_fixed_divisors_have_symmetric_parts(d, i, j):
    G = dihedral_group(6)
    P = SplitPartition.from_group(G)
    x = d + act(G.tau, d, G)
    hi, hj = f"r{i}", f"r{j}"
    a, b = pair_parts(act(hi, x, G), act(hj, x, G), P)
    assert a == b
    assert relative_pair(act(hi, x, G), act(hj, x, G), P).is_tau_fixed()


def test_split_partition_checks():
    G = dihedral_group(2)
    P = SplitPartition.from_group(G)
    assert len(P.part1) == len(P.part2) == 2
    with pytest.raises(ValueError):
        SplitPartition({0, 1}, {1, 2})
    with pytest.raises(ValueError):
        SplitPartition({0}, {1}).validate(n=4)
    with pytest.raises(ValueError):
        SplitPartition.from_divisor(G, Divisor.zero(4))
    assert SplitPartition.from_divisor(G, Divisor.prime(0, 4)) == P
    assert BaseDivisor(2, 2).is_tau_fixed() and not BaseDivisor(1, 2).is_tau_fixed()


TREE = PrimeTree(((0, 3, 5), (1, 2, 4)))


@given(x=divisors(2), y=divisors(2), z=divisors(6))
def test_extension_relations(x, y, z):
    assert pair(extend(x, TREE), extend(y, TREE)) == TREE.degree * pair(x, y)
    assert pair(x, norm_down(z, TREE)) == pair(extend(x, TREE), z)
    assert norm_down(extend(x, TREE), TREE) == TREE.degree * x


def test_prime_tree_checks():
    with pytest.raises(ValueError):
        PrimeTree(((0, 1), (1, 2)))
    with pytest.raises(ValueError):
        PrimeTree(((0, 1), (2,)))
