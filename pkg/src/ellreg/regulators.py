"""Classical, relative and divisor-Gram regulators with a precision-aware verdict."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .field import EmbeddingSet, FieldElement, log_vector, trace_pair
from .lattice import Divisor, GroupData, pair
from .linalg import padic_det
from .norms import KernelLattice, sum_divisor
from .padic import EXACT, PadicNumber, PrecisionContext, iwasawa_log, teichmuller

NONZERO = "nonzero"
ZERO_AT_PRECISION = "zero_at_precision"


class UnsupportedCharacters(ValueError):
    """Characters of the group do not take values in Z_ell."""


@dataclass(frozen=True)
class RegulatorReport:
    kind: str
    context: PrecisionContext
    det: PadicNumber | None
    valuation: int | None
    verdict: str | None
    precision_loss: int
    basis_used: str
    gram: tuple = ()
    unit_class: int | None = None
    diagnostics: tuple = ()

    @property
    def certified(self) -> bool:
        return self.verdict == NONZERO

    def to_json(self) -> dict:
        ctx = self.context
        return {
            "kind": self.kind,
            "ell": ctx.ell,
            "N": ctx.N,
            "slack": ctx.slack,
            "det": None if self.det is None else self.det.to_json(),
            "valuation": self.valuation,
            "verdict": self.verdict,
            "precision_loss": self.precision_loss,
            "basis_used": self.basis_used,
            "gram": [[x.to_json() for x in row] for row in self.gram],
            "unit_class": self.unit_class,
            "diagnostics": list(self.diagnostics),
        }


def precision_loss(det: PadicNumber) -> int:
    N = det.context.N
    return 0 if det.absprec == EXACT else max(0, int(N - det.absprec))


def verdict(det: PadicNumber) -> str:
    """``nonzero`` only when the valuation sits strictly inside the certified digits."""
    ctx = det.context
    if det.valuation is None:
        return ZERO_AT_PRECISION
    return NONZERO if det.valuation + precision_loss(det) < ctx.certified else ZERO_AT_PRECISION


def unit_square_class(x: PadicNumber) -> int | None:
    """Class of the unit part modulo squares: a Legendre symbol, or the unit mod 8 when ell = 2."""
    if x.valuation is None:
        return None
    ell = x.context.ell
    if ell == 2:
        if x.relprec < 3:
            return None
        return x.unit_residue % 8
    return 1 if pow(x.unit_residue % ell, (ell - 1) // 2, ell) == 1 else -1


def _report(kind, gram, ctx, basis_used, diagnostics=()):
    det = padic_det(gram, ctx)
    return RegulatorReport(kind, ctx, det, det.valuation, verdict(det), precision_loss(det),
                           basis_used, tuple(tuple(r) for r in gram), unit_square_class(det),
                           tuple(diagnostics))


def trace_gram(logs, ctx: PrecisionContext):
    return [[ctx(trace_pair(a, b)) for b in logs] for a in logs]


def base_unit(ell: int) -> int:
    return 5 if ell == 2 else 1 + ell


def classical_regulator(units, E: EmbeddingSet) -> RegulatorReport:
    """``det Sp(log e_i log e_j)`` over ``1+ell`` (5 for ell=2) followed by ``units``."""
    ctx = E.context
    e0 = iwasawa_log(ctx(base_unit(ctx.ell)))
    logs = [[e0] * E.n] + [log_vector(u, E) for u in units]
    if any(len(row) != E.n for row in logs):
        raise ValueError("log vectors have the wrong length")
    return _report("classical", trace_gram(logs, ctx), ctx,
                   f"eps0={base_unit(ctx.ell)} + {len(units)} units")


def relative_norm_log(u_log, group: GroupData, subgroup) -> list:
    """Log-vector of ``prod_{h in subgroup} h(u)``."""
    n = len(u_log)
    out = [u_log[0].context.zero()] * n
    for h in subgroup:
        pi = group.embedding_perm(h)
        out = [o + u_log[pi[i]] for i, o in enumerate(out)]
    return out


def relative_regulator(units, E: EmbeddingSet, group: GroupData | None = None,
                       subgroup=None) -> RegulatorReport:
    """``det Sp(log u_i log u_j)`` over relative units of ``K`` over the fixed field of ``subgroup``.

    With a group the relative-unit condition is checked: the ``subgroup``-norm
    (H by default) of every unit must have vanishing log.
    """
    ctx = E.context
    logs = [log_vector(u, E) for u in units]
    if group is not None and logs:
        sub = group.h_subset if subgroup is None else subgroup
        for k, lv in enumerate(logs):
            nl = relative_norm_log(lv, group, sub)
            if any(x.reduce(ctx.certified).valuation is not None for x in nl):
                raise ValueError(f"unit #{k} is not a relative unit at precision")
    return _report("relative", trace_gram(logs, ctx), ctx, f"{len(units)} relative units")


def word_divisors(words, generator_divisors) -> list:
    return [Divisor(sum_divisor(w, generator_divisors)) for w in words]


def divisor_gram(divisors, ctx: PrecisionContext, absprec=None):
    return [[ctx(pair(a, b), absprec) for b in divisors] for a in divisors]


def new_regulator(kernel: KernelLattice, generator_divisors, context: PrecisionContext,
                  expected_rank: int | None = None, basis=None) -> RegulatorReport:
    """``det <di(e_i), di(e_j)>`` over a basis of the norm lattice modulo relations.

    Entries are exact integers but the words are only known modulo
    ``ell**kernel.modulus_exponent``, which caps the entries' precision.
    """
    words = basis if basis is not None else (kernel.quotient or kernel.basis)
    M = kernel.modulus_exponent
    label = f"U_{{S,2}} surrogate: {len(words)} words mod {context.ell}^{M}"
    if expected_rank is not None and len(words) != expected_rank:
        return RegulatorReport("new", context, None, None, None, 0, label,
                               diagnostics=(f"rank {len(words)} != expected {expected_rank}",))
    divs = word_divisors(words, generator_divisors)
    return _report("new", divisor_gram(divs, context, M), context, label)


# -- Dedekind determinant ----------------------------------------------------------

def primitive_root(ell: int) -> int:
    if ell == 2:
        return 1
    phi = ell - 1
    factors = [q for q in range(2, phi + 1) if phi % q == 0 and all(q % d for d in range(2, q))]
    for g in range(2, ell):
        if all(pow(g, phi // q, ell) != 1 for q in factors):
            return g
    raise AssertionError("no primitive root")


def characters(group: GroupData):
    """All characters as maps ``label -> k`` meaning ``zeta_e^k``, ``e`` the exponent."""
    if not group.is_abelian():
        raise UnsupportedCharacters("group is not abelian")
    e = group.exponent()
    gens, span = [], {group.identity}
    for g in group.labels:
        if g not in span:
            gens.append(g)
            span = _closure(group, gens)
    chars = []
    for values in product(range(e), repeat=len(gens)):
        chi = {group.identity: 0}
        frontier = [group.identity]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for g, v in zip(gens, values):
                y = group.mul(g, x)
                w = (chi[x] + v) % e
                if y in chi:
                    if chi[y] != w:
                        ok = False
                        break
                else:
                    chi[y] = w
                    frontier.append(y)
        if ok:
            chars.append(chi)
    return chars, e


def _closure(group, gens):
    span, frontier = {group.identity}, [group.identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = group.mul(g, x)
            if y not in span:
                span.add(y)
                frontier.append(y)
    return span


@dataclass(frozen=True)
class DedekindResult:
    lhs: PadicNumber
    rhs: PadicNumber
    residual: int
    loss: int = 0
    characters: int = 0
    matrix: tuple = field(default=(), repr=False)


def dedekind_check(X: dict, group: GroupData, ctx: PrecisionContext) -> DedekindResult:
    """Compare ``det(X[s_j s_i^-1])`` with ``prod_chi sum_s conj(chi)(s) X[s]``.

    ``X`` maps each group label to ``log s(beta)`` in one fixed embedding.
    Character values are Teichmuller roots of unity, so the exponent of the
    group must divide ``ell - 1``.
    """
    e = group.exponent()
    if (ctx.ell - 1) % e:
        raise UnsupportedCharacters(f"exponent {e} does not divide ell-1={ctx.ell - 1}")
    chars, e = characters(group)
    g = primitive_root(ctx.ell)
    zeta = teichmuller(ctx(pow(g, (ctx.ell - 1) // e, ctx.ell)))
    labels = group.labels
    X = {k: ctx(v) for k, v in X.items()}
    A = [[X[group.mul(sj, group.inverse(si))] for sj in labels] for si in labels]
    lhs = padic_det(A, ctx)
    rhs = ctx.one()
    for chi in chars:
        term = ctx.zero()
        for s in labels:
            term = term + zeta ** ((-chi[s]) % e) * X[s]
        rhs = rhs * term
    d = lhs - rhs
    residual = d.valuation if d.valuation is not None else d.absprec
    loss = max(precision_loss(lhs), precision_loss(rhs))
    return DedekindResult(lhs, rhs, residual, loss, len(chars), tuple(map(tuple, A)))


def conjugate_log_values(beta: FieldElement, group: GroupData, E: EmbeddingSet, at: int = 0) -> dict:
    """``label -> log s(beta)`` read off in embedding ``at``."""
    lv = log_vector(beta, E)
    return {s: lv[group.embedding_perm(s)[at]] for s in group.labels}


# -- descent between a field and a subfield ---------------------------------------

@dataclass(frozen=True)
class DescentCheck:
    consistent: bool
    reason: str


def check_descent(upper: RegulatorReport, lower: RegulatorReport) -> DescentCheck:
    """A certified nonzero regulator upstairs forces a nonzero one downstairs.

    A ``zero_at_precision`` verdict downstairs is only a contradiction when it
    is not explained by lost digits, i.e. the downstairs determinant still has
    its full precision budget.
    """
    if upper.verdict != NONZERO:
        return DescentCheck(True, "upper regulator not certified; nothing to transfer")
    if lower.verdict == NONZERO:
        return DescentCheck(True, "both certified nonzero")
    if lower.det is not None and lower.precision_loss > 0:
        return DescentCheck(True, f"lower undetermined after losing {lower.precision_loss} digits")
    return DescentCheck(False, "upper certified nonzero but lower vanishes at full precision")


__all__ = [
    "NONZERO", "ZERO_AT_PRECISION", "RegulatorReport", "UnsupportedCharacters",
    "classical_regulator", "relative_regulator", "new_regulator", "dedekind_check",
    "conjugate_log_values", "unit_square_class", "verdict", "precision_loss",
    "check_descent", "DescentCheck", "characters", "word_divisors", "divisor_gram",
    "base_unit",
]
