"""Number fields given by a monic integer polynomial and their ell-adic embeddings.

When ell splits completely every completion is Q_ell itself, so an
embedding is just an ell-adic root of the defining polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .linalg import int_det
from .padic import PadicNumber, PrecisionContext, iwasawa_log


class RamifiedPrime(ValueError):
    """ell divides the discriminant: ramified, or Z[x] too small to tell."""


class NotSplit(ValueError):
    pass


# -- integer polynomials (ascending coefficient tuples) --------------------

def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_eval(p, x, m=None):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
        if m is not None:
            acc %= m
    return acc


def poly_deriv(p):
    return [i * c for i, c in enumerate(p)][1:]


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_rem_monic(a, f):
    """Remainder of an integer polynomial modulo a monic one."""
    a = list(a)
    n = len(f) - 1
    for k in range(len(a) - 1, n - 1, -1):
        c = a[k]
        if c:
            for i in range(n + 1):
                a[k - n + i] -= c * f[i]
    return trim(a[:n])


def resultant(f, g) -> int:
    """Resultant of two integer polynomials via the Sylvester matrix."""
    f, g = trim(f), trim(g)
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(f)) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(g)) + [0] * (size - n - 1 - i))
    return int_det(rows)


def discriminant(f) -> int:
    """Discriminant of a monic polynomial."""
    n = len(f) - 1
    if n == 1:
        return 1
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, poly_deriv(f))


# -- polynomials over F_p ---------------------------------------------------

def _pm_trim(a, p):
    return trim([x % p for x in a])


def _pm_divmod(a, b, p):
    a = _pm_trim(a, p)
    b = _pm_trim(b, p)
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] = (a[d + i] - c * y) % p
        a = trim(a)
    return q, a


def _pm_gcd(a, b, p):
    a, b = _pm_trim(a, p), _pm_trim(b, p)
    while b:
        _, r = _pm_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _pm_powmod(base, e, mod, p):
    result = [1]
    base = _pm_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pm_divmod(poly_mul(result, base), mod, p)[1]
        base = _pm_divmod(poly_mul(base, base), mod, p)[1]
        e >>= 1
    return result


def _split_linear(g, p, rng):
    """Roots of a squarefree product of distinct linear factors over F_p."""
    if len(g) == 1:
        return []
    if len(g) == 2:
        return [(-g[0]) * pow(g[1], -1, p) % p]
    while True:
        delta = rng.randrange(p)
        h = _pm_powmod([delta, 1], (p - 1) // 2, g, p)
        h = list(h) + [0] * (1 - len(h)) if h else [0]
        h[0] = (h[0] - 1) % p
        d = _pm_gcd(g, h, p)
        if 1 < len(d) < len(g):
            return _split_linear(d, p, rng) + _split_linear(_pm_divmod(g, d, p)[0], p, rng)


def roots_mod(f, p):
    """Distinct roots of ``f`` in F_p, ascending."""
    if p == 2:
        return [r for r in (0, 1) if poly_eval(f, r, 2) == 0]
    xp = _pm_powmod([0, 1], p, f, p)
    xp = list(xp) + [0] * max(0, 2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    g = _pm_gcd(f, xp, p)
    return sorted(_split_linear(g, p, random.Random(p)))


def _check_unramified(f, ell):
    if discriminant(f) % ell == 0:
        raise RamifiedPrime(f"{ell} divides disc(f); choose another ell")


def splits_completely(f, ell: int) -> bool:
    """Whether ``f`` has ``deg f`` distinct roots modulo ``ell``."""
    f = trim(f)
    _check_unramified(f, ell)
    return len(roots_mod(f, ell)) == len(f) - 1


# -- field elements -----------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    """``numerator(x) / denominator`` in the power basis, kept reduced."""

    numerator: tuple
    denominator: int = 1

    def __post_init__(self):
        num = tuple(trim(int(c) for c in self.numerator))
        den = int(self.denominator)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = tuple(-c for c in num), -den
        g = den
        for c in num:
            g = gcd(g, c)
        if g > 1:
            num, den = tuple(c // g for c in num), den // g
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def rational(cls, q) -> "FieldElement":
        q = Fraction(q)
        return cls((q.numerator,), q.denominator)

    def is_zero(self) -> bool:
        return not self.numerator

    def __str__(self):
        terms = []
        for i, c in enumerate(self.numerator):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x" if i == 1 else f"{c}*x^{i}")
        s = " + ".join(terms) or "0"
        return s if self.denominator == 1 else f"({s})/{self.denominator}"


@dataclass(frozen=True)
class NumberFieldSpec:
    """A number field with declared generators and optional Galois data.

    ``automorphisms`` maps a label to the image of ``x`` as a coefficient
    tuple; permutations of the embeddings are derived per ell from these.
    """

    f: tuple
    r1: int
    r2: int
    torsion_order: int = 2
    units: tuple = ()
    sunits: tuple = ()
    name: str = ""
    ell: int | None = None
    automorphisms: dict | None = None
    h_subset: tuple = ()
    tau: str | None = None
    dihedral: bool = False
    h0: str | None = None
    alpha: int | None = None
    relations: tuple = ()

    def __post_init__(self):
        f = tuple(trim(self.f))
        if len(f) < 2 or f[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree >= 1")
        object.__setattr__(self, "f", f)
        if self.r1 < 0 or self.r2 < 0 or self.r1 + 2 * self.r2 != self.degree:
            raise ValueError(f"r1 + 2*r2 = {self.r1 + 2 * self.r2} != degree {self.degree}")

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    def generators(self, ell: int | None = None) -> list[FieldElement]:
        """S-unit generator list: ``ell`` first, then units, then the other S-units."""
        ell = self.ell if ell is None else ell
        return [FieldElement.rational(ell), *self.units, *self.sunits]

    # arithmetic in K = Q[x]/(f)
    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        num = poly_rem_monic(poly_mul(a.numerator, b.numerator), self.f)
        return FieldElement(tuple(num), a.denominator * b.denominator)

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        n = max(len(a.numerator), len(b.numerator))
        pa = list(a.numerator) + [0] * (n - len(a.numerator))
        pb = list(b.numerator) + [0] * (n - len(b.numerator))
        num = [x * b.denominator + y * a.denominator for x, y in zip(pa, pb)]
        return FieldElement(tuple(num), a.denominator * b.denominator)

    def pow(self, a: FieldElement, k: int) -> FieldElement:
        if k < 0:
            raise ValueError("negative powers are not supported on field elements")
        out = FieldElement((1,))
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def norm(self, a: FieldElement) -> Fraction:
        if a.is_zero():
            return Fraction(0)
        return Fraction(resultant(self.f, a.numerator), a.denominator ** self.degree)

    def apply(self, image, a: FieldElement) -> FieldElement:
        """Apply the automorphism ``x -> image(x)`` to ``a``."""
        acc = FieldElement(())
        img = FieldElement(tuple(image))
        power = FieldElement((1,))
        for c in a.numerator:
            acc = self.add(acc, self.mul(FieldElement((c,)), power))
            power = self.mul(power, img)
        return FieldElement(acc.numerator, acc.denominator * a.denominator)

    def is_integral(self, a: FieldElement) -> bool:
        """Whether the characteristic polynomial of ``a`` has integer coefficients."""
        n = self.degree
        cols = []
        for j in range(n):
            prod = poly_rem_monic(poly_mul(a.numerator, [0] * j + [1]), self.f)
            cols.append([Fraction(c, a.denominator) for c in prod] + [Fraction(0)] * (n - len(prod)))
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        # Faddeev-LeVerrier
        coeffs = [Fraction(1)]
        Mk = [[Fraction(0)] * n for _ in range(n)]
        for k in range(1, n + 1):
            for i in range(n):
                Mk[i][i] += coeffs[-1]
            AM = [[sum(mat[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
            ck = -sum(AM[i][i] for i in range(n)) / k
            coeffs.append(ck)
            Mk = AM
        return all(c.denominator == 1 for c in coeffs)


# -- embeddings ---------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingSet:
    """The ``n`` ell-adic roots of ``f``, ordered by their residue mod ell.

    ``work`` holds the same roots lifted ``slack`` digits further; embeddings
    are evaluated there so that elements of positive valuation keep their
    full relative precision.
    """

    context: PrecisionContext
    roots: tuple
    f: tuple = ()
    work: tuple = field(default=(), repr=False)

    @property
    def n(self) -> int:
        return len(self.roots)

    @property
    def work_prec(self) -> int:
        return self.context.N + self.context.slack


def _hensel_lift(f, r, ell, prec):
    df = poly_deriv(f)
    k = 1
    while k < prec:
        k = min(2 * k, prec)
        m = ell**k
        r = (r - poly_eval(f, r, m) * pow(poly_eval(df, r, m), -1, m)) % m
    return r


def hensel_embeddings(f, context: PrecisionContext) -> EmbeddingSet:
    f = tuple(trim(f))
    ell = context.ell
    if not splits_completely(f, ell):
        raise NotSplit(f"{ell} does not split completely in Q[x]/({f})")
    W = context.N + context.slack
    work = tuple(_hensel_lift(f, r, ell, W) for r in roots_mod(f, ell))
    N = context.N
    roots = tuple(context(w % ell**N, absprec=N) for w in work)
    return EmbeddingSet(context, roots, f, work)


def embed(a: FieldElement, E: EmbeddingSet, i: int) -> PadicNumber:
    ctx = E.context
    W = E.work_prec
    val = poly_eval(a.numerator, E.work[i], ctx.ell**W)
    return ctx(val, absprec=W) / ctx(a.denominator)


def log_vector(a: FieldElement, E: EmbeddingSet) -> list[PadicNumber]:
    if a.is_zero():
        raise ValueError("log of the zero element")
    return [iwasawa_log(embed(a, E, i)) for i in range(E.n)]


def trace_pair(a_log, b_log):
    """Trace of the product of two log-vectors: the coordinate-wise dot product."""
    if len(a_log) != len(b_log):
        raise ValueError(f"length mismatch {len(a_log)} != {len(b_log)}")
    total = 0
    for x, y in zip(a_log, b_log):
        total = x * y + total
    return total


def embedding_permutation(image, E: EmbeddingSet) -> tuple:
    """``pi`` with ``sigma_i(g(a)) = sigma_{pi[i]}(a)`` for ``g: x -> image(x)``."""
    ell = E.context.ell
    m = ell**E.work_prec
    by_residue = {w % ell: j for j, w in enumerate(E.work)}
    pi = []
    for w in E.work:
        y = poly_eval(image, w, m)
        j = by_residue.get(y % ell)
        if j is None or (y - E.work[j]) % m:
            raise ValueError(f"x -> {list(image)} does not permute the roots of f")
        pi.append(j)
    if sorted(pi) != list(range(E.n)):
        raise ValueError(f"x -> {list(image)} is not a bijection on embeddings")
    return tuple(pi)
