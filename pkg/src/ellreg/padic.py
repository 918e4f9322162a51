"""Fixed-precision arithmetic in Z_ell and Q_ell.

Numbers use a capped relative-precision model: a nonzero value is
``unit * ell**valuation`` with the unit known modulo ``ell**relprec``
(``relprec <= N``), so the value is known modulo ``ell**absprec`` where
``absprec = valuation + relprec``.  A value indistinguishable from zero is
BOTTOM (``valuation is None``) and only carries the modulus it is known to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

BOTTOM = None
EXACT = math.inf  # absprec of the exact zero

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class PrecisionError(ArithmeticError):
    """Raised when an operation needs more digits than its inputs carry."""


class ContextMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def vint(n: int, ell: int) -> int:
    """ell-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def floor_log(k: int, ell: int) -> int:
    e = 0
    while k >= ell:
        k //= ell
        e += 1
    return e


@dataclass(frozen=True)
class PrecisionContext:
    """The prime, the working precision ``N`` and the guard digits ``slack``."""

    ell: int
    N: int
    slack: int = 2

    def __post_init__(self):
        if not is_prime(self.ell):
            raise ValueError(f"ell={self.ell} is not prime")
        if self.N < 1:
            raise ValueError("precision N must be positive")
        if not 0 <= self.slack < self.N:
            raise ValueError(f"need 0 <= slack < N, got slack={self.slack}, N={self.N}")

    @property
    def certified(self) -> int:
        """Digits that survive the guard band: ``N - slack``."""
        return self.N - self.slack

    def __call__(self, value, absprec=None) -> "PadicNumber":
        """Coerce an int, Fraction or PadicNumber into this context.

        Exact rationals get full relative precision unless ``absprec`` caps
        them; the exact zero has infinite absolute precision.
        """
        if isinstance(value, PadicNumber):
            if value.context != self:
                raise ContextMismatch(f"{value.context} vs {self}")
            return value if absprec is None else value.reduce(absprec)
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError(f"cannot coerce {type(value).__name__} to a p-adic number")
        q = Fraction(value)
        if q == 0:
            return PadicNumber(self, None, 0, EXACT if absprec is None else absprec)
        num, den = q.numerator, q.denominator
        v = vint(num, self.ell) - vint(den, self.ell)
        if v > 0:
            num //= self.ell**v
        elif v < 0:
            den //= self.ell ** (-v)
        cap = v + self.N if absprec is None else min(absprec, v + self.N)
        if cap <= v:
            return PadicNumber(self, None, 0, cap)
        m = self.ell ** (cap - v)
        return PadicNumber(self, v, num * pow(den, -1, m) % m, cap)

    def zero(self) -> "PadicNumber":
        return PadicNumber(self, None, 0, EXACT)

    def one(self) -> "PadicNumber":
        return self(1)


def _normalize(ctx: PrecisionContext, n: int, v: int, absprec) -> "PadicNumber":
    # value n * ell**v known modulo ell**absprec; n need not be a unit
    if absprec == EXACT:
        if n != 0:
            raise AssertionError("only zero is exact")
        return ctx.zero()
    width = absprec - v
    if width <= 0:
        return PadicNumber(ctx, None, 0, absprec)
    ell = ctx.ell
    n %= ell**width
    if n == 0:
        return PadicNumber(ctx, None, 0, absprec)
    w = vint(n, ell)
    v += w
    n //= ell**w
    rel = min(absprec - v, ctx.N)
    return PadicNumber(ctx, v, n % ell**rel, v + rel)


@dataclass(frozen=True)
class PadicNumber:
    context: PrecisionContext
    valuation: int | None
    unit_residue: int
    absprec: int | float

    # -- basic queries ---------------------------------------------------
    def is_zero(self) -> bool:
        return self.valuation is None

    @property
    def relprec(self) -> int:
        return 0 if self.valuation is None else self.absprec - self.valuation

    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.context != self.context:
                raise ContextMismatch(f"{other.context} vs {self.context}")
            return other
        return self.context(other)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        absprec = min(self.absprec, b.absprec)
        if self.valuation is None and b.valuation is None:
            return PadicNumber(self.context, None, 0, absprec)
        if self.valuation is None:
            return b.reduce(absprec)
        if b.valuation is None:
            return self.reduce(absprec)
        ell = self.context.ell
        v = min(self.valuation, b.valuation)
        n = (self.unit_residue * ell ** (self.valuation - v)
             + b.unit_residue * ell ** (b.valuation - v))
        return _normalize(self.context, n, v, absprec)

    __radd__ = __add__

    def __neg__(self):
        if self.valuation is None:
            return self
        m = self.context.ell ** self.relprec
        return PadicNumber(self.context, self.valuation, (-self.unit_residue) % m, self.absprec)

    def __sub__(self, other):
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        a = self
        if a.valuation is None or b.valuation is None:
            if a.valuation is None and b.valuation is None:
                absprec = a.absprec + b.absprec
            elif a.valuation is None:
                absprec = a.absprec + b.valuation
            else:
                absprec = b.absprec + a.valuation
            return PadicNumber(a.context, None, 0, absprec)
        rel = min(a.relprec, b.relprec)
        v = a.valuation + b.valuation
        m = a.context.ell ** rel
        return PadicNumber(a.context, v, a.unit_residue * b.unit_residue % m, v + rel)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNumber":
        if self.valuation is None:
            raise PrecisionError("inverse of a value indistinguishable from zero")
        rel = self.relprec
        m = self.context.ell ** rel
        return PadicNumber(self.context, -self.valuation,
                           pow(self.unit_residue, -1, m), -self.valuation + rel)

    def __truediv__(self, other):
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * b.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return self.context.one()
        if self.valuation is None:
            return PadicNumber(self.context, None, 0, self.absprec * k)
        rel = self.relprec
        m = self.context.ell ** rel
        v = self.valuation * k
        return PadicNumber(self.context, v, pow(self.unit_residue, k, m), v + rel)

    # -- precision handling ----------------------------------------------
    def reduce(self, absprec) -> "PadicNumber":
        """Forget digits at and beyond ``ell**absprec``."""
        if absprec >= self.absprec:
            return self
        if self.valuation is None or absprec <= self.valuation:
            return PadicNumber(self.context, None, 0, absprec)
        rel = absprec - self.valuation
        return PadicNumber(self.context, self.valuation,
                           self.unit_residue % self.context.ell ** rel, absprec)

    def agrees(self, other, absprec=None) -> bool:
        """Congruence modulo the common known precision (optionally capped)."""
        b = self._coerce(other)
        k = min(self.absprec, b.absprec)
        if absprec is not None:
            k = min(k, absprec)
        d = (self - b).reduce(k)
        return d.valuation is None

    def lift(self) -> Fraction:
        """The canonical rational representative ``unit * ell**valuation``."""
        if self.valuation is None:
            return Fraction(0)
        return Fraction(self.unit_residue) * Fraction(self.context.ell) ** self.valuation

    def residue(self, k=None) -> int:
        """Integer representative modulo ``ell**k`` (default: the known precision)."""
        if k is None:
            k = self.absprec
        if k == EXACT:
            raise ValueError("exact zero has no finite residue modulus")
        if k > self.absprec:
            raise PrecisionError(f"value known only modulo ell^{self.absprec}")
        if self.valuation is None:
            return 0
        if self.valuation < 0:
            raise ValueError("negative valuation has no residue in Z_ell")
        m = self.context.ell ** k
        return self.unit_residue * self.context.ell ** self.valuation % m

    def digits(self) -> list[int]:
        """ell-adic digits of the unit part, least significant first."""
        ell, n, out = self.context.ell, self.unit_residue, []
        for _ in range(self.relprec):
            n, r = divmod(n, ell)
            out.append(r)
        return out

    def to_json(self) -> dict:
        absprec = None if self.absprec == EXACT else self.absprec
        return {"padic": [self.valuation, self.unit_residue, absprec]}

    def __str__(self):
        ell = self.context.ell
        if self.valuation is None:
            return "0" if self.absprec == EXACT else f"O({ell}^{self.absprec})"
        if self.valuation >= 0:
            return f"{self.residue()} + O({ell}^{self.absprec})"
        return f"{self.unit_residue}*{ell}^{self.valuation} + O({ell}^{self.absprec})"


def valuation(a: PadicNumber) -> int | None:
    return a.valuation


def teichmuller(a: PadicNumber) -> PadicNumber:
    """The root of unity in Z_ell congruent to the unit ``a`` (``+-1`` when ell=2)."""
    ctx = a.context
    if a.valuation != 0:
        raise PrecisionError("Teichmuller representative needs a unit")
    ell, N = ctx.ell, ctx.N
    if ell == 2:
        if a.relprec < 2:
            raise PrecisionError("need a unit known modulo 4 to split off +-1")
        return ctx(1 if a.unit_residue % 4 == 1 else -1)
    m = ell**N
    return PadicNumber(ctx, 0, pow(a.unit_residue % ell, ell ** (N - 1), m), N)


def series_terms(vt: int, target: int, ell: int) -> int:
    """Smallest T with ``T*vt - floor(log_ell T) >= target``."""
    T = 1
    while T * vt - floor_log(T, ell) < target:
        T += 1
    return T


def iwasawa_log(x: PadicNumber) -> PadicNumber:
    """Iwasawa logarithm: kills ``ell`` and roots of unity, power series on principal units."""
    ctx = x.context
    if x.valuation is None:
        raise PrecisionError("log of a value indistinguishable from zero")
    ell = ctx.ell
    p = x.relprec
    u = PadicNumber(ctx, 0, x.unit_residue, p)
    u1 = u / teichmuller(u)
    m = ell**p
    t = (u1.unit_residue - 1) % m
    if t == 0:
        return PadicNumber(ctx, None, 0, p)
    vt = vint(t, ell)
    T = series_terms(vt, ctx.N + ctx.slack, ell)
    E = floor_log(T, ell)
    hi = ell ** (p + E)
    total, tk = 0, 1
    for k in range(1, T + 1):
        tk = tk * t % hi
        e = vint(k, ell)
        kp = k // ell**e
        term = (tk // ell**e) * pow(kp, -1, m)
        total += term if k % 2 else -term
    return _normalize(ctx, total % m, 0, p)
