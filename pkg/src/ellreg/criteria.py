"""When zeta_m is conjugate to its inverse over Q_ell, plus small generator searches.

Existence of ``r`` with ``ell^r = -1 (mod M)`` reduces to the order ``d`` of
ell modulo M: a solution exists iff ``d`` is even and ``ell^(d/2) = -1``, and
then the solutions are exactly ``r = d/2 (mod d)``, so an odd one exists iff
``d = 2 (mod 4)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .field import FieldElement, NotSplit, discriminant, splits_completely
from .padic import is_prime


@dataclass(frozen=True)
class ConjugacyVerdict:
    answer: bool
    branch: str
    witness_r: int | None
    decomposition: tuple  # (a, b, c, c1)
    modulus: int = 1

    def to_json(self) -> dict:
        a, b, c, c1 = self.decomposition
        return {"answer": self.answer, "branch": self.branch, "witness_r": self.witness_r,
                "decomposition": {"a": a, "b": b, "c": c, "c1": c1}, "modulus": self.modulus}


def multiplicative_order(a: int, M: int) -> int:
    if M == 1:
        return 1
    if gcd(a, M) != 1:
        raise ValueError(f"{a} is not invertible modulo {M}")
    k, x = 1, a % M
    while x != 1:
        x = x * a % M
        k += 1
    return k


def radical(c: int) -> int:
    r, p = 1, 2
    while p * p <= c:
        if c % p == 0:
            r *= p
            while c % p == 0:
                c //= p
        p += 1
    return r * c if c > 1 else r


def decompose(ell: int, m: int) -> tuple:
    a = 0
    while m % 2 == 0:
        m //= 2
        a += 1
    b = 0
    if ell != 2:
        while m % ell == 0:
            m //= ell
            b += 1
    return a, b, m, radical(m)


def minus_one_power(ell: int, M: int, odd: bool = False) -> int | None:
    """Smallest ``r >= 1`` (odd if asked) with ``ell^r = -1 (mod M)``, else None."""
    if M == 1 or M == 2 and ell % 2:
        return 1
    d = multiplicative_order(ell, M)
    if d % 2 or pow(ell, d // 2, M) != M - 1:
        return None
    if odd and d % 4 != 2:
        return None
    return d // 2


def zeta_conjugacy(ell: int, m: int) -> ConjugacyVerdict:
    if not is_prime(ell):
        raise ValueError(f"ell={ell} is not prime")
    if m < 1:
        raise ValueError("m must be a natural number")
    a, b, c, c1 = dec = decompose(ell, m)
    if m <= 2:
        return ConjugacyVerdict(True, "trivial", None, dec)
    if ell == 2:
        r = minus_one_power(2, c1)
        return ConjugacyVerdict(r is not None, "iii", r, dec, c1)
    if a <= 1:
        r = minus_one_power(ell, c1)
        return ConjugacyVerdict(r is not None, "i", r, dec, c1)
    M = 2**a * c1
    if ell % 4 != 3:
        return ConjugacyVerdict(False, "ii", None, dec, M)
    r = minus_one_power(ell, M, odd=True)
    return ConjugacyVerdict(r is not None, "ii", r, dec, M)


def survey_primes(f, m: int, bound: int) -> list[int]:
    """Primes ``ell <= bound`` with ``ell = -1 (mod m)``, unramified and split completely in ``f``."""
    disc = discriminant(f)
    out = []
    for ell in range(2, bound + 1):
        if not is_prime(ell) or m % ell == 0 or (ell + 1) % m:
            continue
        if disc % ell == 0 or not splits_completely(f, ell):
            continue
        out.append(ell)
    return out


def _is_squarefree(d: int) -> bool:
    return d > 0 and all(d % (p * p) for p in range(2, isqrt(d) + 1))


def real_quadratic_unit(d: int, max_steps: int = 100000) -> FieldElement:
    """Fundamental unit of Q(sqrt d) as an element over ``x^2 - d``.

    Walks the continued fraction of the ring generator and returns the first
    convergent of norm +-1.
    """
    if d < 2 or not _is_squarefree(d):
        raise ValueError(f"d={d} must be squarefree and at least 2")
    s = isqrt(d)
    if d % 4 == 1:
        P, Q = 1, 2
    else:
        P, Q = 0, 1
    p0, p1, q0, q1 = 0, 1, 1, 0
    for _ in range(max_steps):
        a = (P + s) // Q
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        if d % 4 == 1:
            A, B = 2 * p1 - q1, q1
            if abs(A * A - d * B * B) == 4:
                return FieldElement((A, B), 2)
        elif abs(p1 * p1 - d * q1 * q1) == 1:
            return FieldElement((p1, q1))
        P = a * Q - P
        Q = (d - P * P) // Q
    raise OverflowError(f"continued fraction of sqrt({d}) exceeded {max_steps} steps")


def imaginary_quadratic_split_generator(d: int, ell: int, h_bound: int = 12):
    """Smallest ``h`` and ``alpha`` over ``x^2 + d`` with ``N(alpha) = ell^h``, ``alpha`` primitive.

    Elements ``(x + y sqrt(-d))/2`` with ``x = y (mod 2)`` are searched when
    ``d = 3 (mod 4)``.
    """
    if not _is_squarefree(d):
        raise ValueError(f"d={d} must be squarefree and positive")
    if ell == 2 or d % ell == 0 or pow(-d % ell, (ell - 1) // 2, ell) != 1:
        raise NotSplit(f"{ell} does not split in Q(sqrt(-{d}))")
    half = d % 4 == 3
    for h in range(1, h_bound + 1):
        target = (4 if half else 1) * ell**h
        y = 0
        while d * y * y <= target:
            x2 = target - d * y * y
            x = isqrt(x2)
            if x * x == x2 and not (x % ell == 0 and y % ell == 0):
                if not half or (x - y) % 2 == 0:
                    return FieldElement((x, y), 2 if half else 1), h
            y += 1
    raise ValueError(f"no generator of a power of a prime above {ell} with h <= {h_bound} "
                     "(class-number obstruction beyond bound)")
