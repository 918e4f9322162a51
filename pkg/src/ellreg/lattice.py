"""The divisor module on the primes above ell, its pairings, and group actions.

Primes are indexed like the embeddings: prime ``i`` is the one cut out by
``sigma_i``.  A group element acts by a permutation ``rho`` of prime indices,
``g(l_i) = l_{rho[i]}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .field import EmbeddingSet, FieldElement, NumberFieldSpec, embed, embedding_permutation


class GroupDataError(ValueError):
    pass


def _compose(p, q):
    """``(p o q)[i] = p[q[i]]``."""
    return tuple(p[i] for i in q)


def _invert(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


@dataclass(frozen=True)
class GroupData:
    """A finite group acting on prime indices, with the quadratic-subfield data.

    ``perms[g]`` is the prime permutation of ``g``; ``h_subset`` is
    H = G(K/k) and ``tau`` the complex conjugation when a quadratic
    subfield is declared.
    """

    perms: dict
    h_subset: frozenset = frozenset()
    tau: str | None = None
    dihedral: bool = False
    _by_perm: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        perms = {str(k): tuple(v) for k, v in self.perms.items()}
        object.__setattr__(self, "perms", perms)
        object.__setattr__(self, "h_subset", frozenset(self.h_subset))
        if not perms:
            raise GroupDataError("empty group")
        n = len(next(iter(perms.values())))
        for g, p in perms.items():
            if sorted(p) != list(range(n)):
                raise GroupDataError(f"{g}: not a permutation of 0..{n - 1}")
        by_perm = {p: g for g, p in perms.items()}
        if len(by_perm) != len(perms):
            raise GroupDataError("two labels share a permutation")
        if tuple(range(n)) not in by_perm:
            raise GroupDataError("identity missing")
        for g, h in product(perms, repeat=2):
            if _compose(perms[g], perms[h]) not in by_perm:
                raise GroupDataError(f"not closed: {g}*{h} missing")
        object.__setattr__(self, "_by_perm", by_perm)
        for h in self.h_subset:
            if h not in perms:
                raise GroupDataError(f"unknown label {h!r} in H")
        if self.h_subset:
            for a, b in product(self.h_subset, repeat=2):
                if self.mul(a, b) not in self.h_subset:
                    raise GroupDataError("H is not a subgroup")
        if self.tau is not None:
            if self.tau not in perms:
                raise GroupDataError(f"unknown tau {self.tau!r}")
            if self.tau == self.identity or self.mul(self.tau, self.tau) != self.identity:
                raise GroupDataError("tau is not an involution")
            if self.tau in self.h_subset:
                raise GroupDataError("tau lies in H")
            if self.h_subset and 2 * len(self.h_subset) != len(perms):
                raise GroupDataError("|H| must be |G|/2")
        if self.dihedral:
            if self.tau is None or not self.h_subset:
                raise GroupDataError("dihedral flag needs tau and H")
            for h in self.h_subset:
                if self.mul(self.mul(self.tau, h), self.tau) != self.inverse(h):
                    raise GroupDataError(f"tau*{h}*tau != {h}^-1")

    @property
    def labels(self) -> list[str]:
        return list(self.perms)

    @property
    def order(self) -> int:
        return len(self.perms)

    @property
    def degree(self) -> int:
        return len(next(iter(self.perms.values())))

    @property
    def identity(self) -> str:
        return self._by_perm[tuple(range(self.degree))]

    def mul(self, g: str, h: str) -> str:
        return self._by_perm[_compose(self.perms[g], self.perms[h])]

    def inverse(self, g: str) -> str:
        return self._by_perm[_invert(self.perms[g])]

    def is_abelian(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for a, b in product(self.perms, repeat=2))

    def exponent(self) -> int:
        from math import lcm
        e = 1
        for g in self.perms:
            k, x = 1, g
            while x != self.identity:
                x = self.mul(x, g)
                k += 1
            e = lcm(e, k)
        return e

    def embedding_perm(self, g: str) -> tuple:
        """``pi`` with ``sigma_i(g(a)) = sigma_{pi[i]}(a)``."""
        return _invert(self.perms[g])


def regular_group(elements, mul, labels=None, h_subset=(), tau=None, dihedral=False) -> GroupData:
    """The left-regular action of an abstract group given by a multiplication."""
    elements = list(elements)
    index = {e: i for i, e in enumerate(elements)}
    labels = labels or [str(e) for e in elements]
    perms = {labels[index[g]]: tuple(index[mul(g, s)] for s in elements) for g in elements}
    name = dict(zip(elements, labels))
    return GroupData(perms, frozenset(name[h] for h in h_subset),
                     None if tau is None else name[tau], dihedral)


def dihedral_group(n: int) -> GroupData:
    """Generalized dihedral group C_n x| C_2 acting regularly on 2n primes.

    ``r{k}`` is the k-th power of the rotation (these form H) and ``r{k}t``
    is ``r^k tau``.
    """
    elements = [(k, s) for s in (0, 1) for k in range(n)]

    def mul(a, b):
        return ((a[0] + (-1) ** a[1] * b[0]) % n, a[1] ^ b[1])

    labels = [f"r{k}" + ("t" if s else "") for k, s in elements]
    return regular_group(elements, mul, labels,
                         h_subset=[(k, 0) for k in range(n)], tau=(0, 1), dihedral=True)


def group_from_field(spec: NumberFieldSpec, E: EmbeddingSet) -> GroupData:
    """Prime permutations induced by the declared automorphism images at this ell."""
    if not spec.automorphisms:
        raise GroupDataError("field declares no automorphisms")
    perms = {g: _invert(embedding_permutation(img, E)) for g, img in spec.automorphisms.items()}
    return GroupData(perms, frozenset(spec.h_subset), spec.tau, spec.dihedral)


# -- divisors -------------------------------------------------------------------

@dataclass(frozen=True)
class Divisor:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __add__(self, other):
        _same_index(self, other)
        return Divisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        _same_index(self, other)
        return Divisor(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Divisor(tuple(-a for a in self.coeffs))

    def __rmul__(self, k):
        return Divisor(tuple(k * a for a in self.coeffs))

    @classmethod
    def prime(cls, i: int, n: int) -> "Divisor":
        return cls(tuple(int(j == i) for j in range(n)))

    @classmethod
    def zero(cls, n: int) -> "Divisor":
        return cls((0,) * n)

    def is_zero(self) -> bool:
        return all((c.is_zero() if hasattr(c, "is_zero") else c == 0) for c in self.coeffs)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs)
                if not (c.is_zero() if hasattr(c, "is_zero") else c == 0)]


def _same_index(x: Divisor, y: Divisor):
    if len(x) != len(y):
        raise ValueError(f"index mismatch: {len(x)} vs {len(y)} primes")


def divisor_of(a, E: EmbeddingSet | None = None, generators=None) -> Divisor:
    """Divisor of a field element, or of an exponent word over generator divisors."""
    if isinstance(a, FieldElement):
        if a.is_zero():
            raise ValueError("divisor of zero")
        vals = []
        for i in range(E.n):
            v = embed(a, E, i).valuation
            if v is None:
                raise ValueError(f"embedding {i} of {a} indistinguishable from zero")
            vals.append(v)
        return Divisor(tuple(vals))
    exps = getattr(a, "exponents", a)
    if generators is None or len(exps) != len(generators):
        raise ValueError("word needs one generator divisor per exponent")
    n = len(generators[0])
    out = [0] * n
    for k, d in zip(exps, generators):
        if k:
            for i, c in enumerate(d):
                out[i] += k * c
    return Divisor(tuple(out))


def pair(x: Divisor, y: Divisor):
    _same_index(x, y)
    total = 0
    for a, b in zip(x.coeffs, y.coeffs):
        total = a * b + total
    return total


def act(g: str, x: Divisor, group: GroupData) -> Divisor:
    if g not in group.perms:
        raise KeyError(f"unknown group label {g!r}")
    rho = group.perms[g]
    if len(rho) != len(x):
        raise ValueError("group degree does not match the divisor")
    out = [None] * len(x)
    for i, c in enumerate(x.coeffs):
        out[rho[i]] = c
    return Divisor(tuple(out))


@dataclass(frozen=True)
class SplitPartition:
    """Primes above p1 (``part1``) and above p2 (``part2``) for ell = p1*p2 in k."""

    part1: frozenset
    part2: frozenset

    def __post_init__(self):
        object.__setattr__(self, "part1", frozenset(self.part1))
        object.__setattr__(self, "part2", frozenset(self.part2))
        if self.part1 & self.part2:
            raise ValueError("parts overlap")

    @classmethod
    def from_group(cls, group: GroupData, base: int = 0) -> "SplitPartition":
        p1 = frozenset(group.perms[h][base] for h in group.h_subset)
        p2 = frozenset(group.perms[group.tau][i] for i in p1)
        part = cls(p1, p2)
        part.validate(group)
        return part

    @classmethod
    def from_divisor(cls, group: GroupData, d: Divisor) -> "SplitPartition":
        """Partition through the support of a divisor lying over a single prime of k."""
        supp = d.support()
        if not supp:
            raise ValueError("zero divisor does not pick out a prime of k")
        return cls.from_group(group, supp[0])

    def validate(self, group: GroupData | None = None, n: int | None = None):
        n = n if n is not None else (group.degree if group else None)
        if n is not None and self.part1 | self.part2 != frozenset(range(n)):
            raise ValueError("parts do not cover all primes")
        if group is None:
            return
        tau = group.perms[group.tau]
        if frozenset(tau[i] for i in self.part1) != self.part2:
            raise ValueError("tau does not swap the parts")
        for h in group.h_subset:
            if frozenset(group.perms[h][i] for i in self.part1) != self.part1:
                raise ValueError(f"part1 is not stable under {h}")


def pair_parts(x: Divisor, y: Divisor, P: SplitPartition):
    _same_index(x, y)
    a = b = 0
    for i, (u, v) in enumerate(zip(x.coeffs, y.coeffs)):
        if i in P.part1:
            a = u * v + a
        elif i in P.part2:
            b = u * v + b
        else:
            raise ValueError(f"prime {i} lies in neither part")
    return a, b


@dataclass(frozen=True)
class BaseDivisor:
    """``p1 * p1_coeff + p2 * p2_coeff`` in the divisor module of k."""

    p1: object
    p2: object

    def act(self, g: str, group: GroupData) -> "BaseDivisor":
        # H restricts to the identity on k; everything else swaps p1 and p2
        return self if g in group.h_subset else BaseDivisor(self.p2, self.p1)

    def is_tau_fixed(self) -> bool:
        d = self.p1 - self.p2
        return d.is_zero() if hasattr(d, "is_zero") else d == 0


def relative_pair(x: Divisor, y: Divisor, P: SplitPartition) -> BaseDivisor:
    return BaseDivisor(*pair_parts(x, y, P))


# -- synthetic two-level prime trees for the extension relations ----------------

@dataclass(frozen=True)
class PrimeTree:
    """``above[i]`` lists the primes of L over prime ``i`` of K (all split)."""

    above: tuple

    def __post_init__(self):
        above = tuple(tuple(a) for a in self.above)
        object.__setattr__(self, "above", above)
        flat = [j for a in above for j in a]
        if sorted(flat) != list(range(len(flat))):
            raise ValueError("primes of L must be listed exactly once")
        if len({len(a) for a in above}) > 1:
            raise ValueError("completely split: every prime has [L:K] primes above it")

    @property
    def degree(self) -> int:
        return len(self.above[0])

    @property
    def n_upper(self) -> int:
        return sum(len(a) for a in self.above)


def extend(x: Divisor, tree: PrimeTree) -> Divisor:
    out = [0] * tree.n_upper
    for i, c in enumerate(x.coeffs):
        for j in tree.above[i]:
            out[j] = c
    return Divisor(tuple(out))


def norm_down(z: Divisor, tree: PrimeTree) -> Divisor:
    return Divisor(tuple(sum(z.coeffs[j] for j in a) for a in tree.above))
