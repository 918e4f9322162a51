"""S-unit words, the local-universal-norm lattice, and the coefficient systems.

The local universal norms among the S-units are exactly the words whose
total log-vector vanishes; at finite precision that is the left kernel of the
log matrix modulo ``ell**M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .field import EmbeddingSet, FieldElement, embed, log_vector
from .lattice import Divisor, GroupData, act, pair
from .linalg import SingularSystem, frac_det, modular_echelon, padic_det, solve
from .padic import PadicNumber, PrecisionContext, PrecisionError


class ConjugateRankFailure(SingularSystem):
    """The conjugate log-vectors of alpha are dependent at this precision."""


@dataclass(frozen=True)
class SUnitWord:
    """Exponents over a generator list; ``modulus_exponent`` set when known mod ell^M only."""

    exponents: tuple
    modulus_exponent: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))

    def __len__(self):
        return len(self.exponents)


def word_log(word, logs, ctx: PrecisionContext):
    """Total log-vector of a word given the generators' log-vectors."""
    exps = getattr(word, "exponents", word)
    n = len(logs[0])
    out = [ctx.zero()] * n
    for k, row in zip(exps, logs):
        if k:
            out = [o + k * x for o, x in zip(out, row)]
    return out


@dataclass(frozen=True)
class KernelLattice:
    basis: tuple
    image_rank: int
    modulus_exponent: int
    quotient: tuple = ()
    relations: tuple = ()
    pivot_valuations: tuple = ()

    @property
    def rank(self) -> int:
        """Rank after quotienting multiplicative relations (the U_{S,2} rank)."""
        return len(self.quotient) if self.quotient or self.relations else len(self.basis)


def log_matrix(generators, E: EmbeddingSet):
    return [log_vector(g, E) for g in generators]


def _int_rows(L, M: int):
    rows = []
    for row in L:
        out = []
        for x in row:
            if x.valuation is not None and x.valuation < 0:
                raise PrecisionError("log matrix entries must be ell-integral")
            out.append(x.residue(M) if x.valuation is not None else 0)
        rows.append(out)
    return rows


def modulus_for(L, ctx: PrecisionContext) -> int:
    M = ctx.certified
    for row in L:
        for x in row:
            M = min(M, x.absprec)
    if M < 1:
        raise PrecisionError("log matrix carries no certified digits")
    return int(M)


def kernel_lattice(L, context: PrecisionContext, divisors=None, relations=()) -> KernelLattice:
    """Saturated basis of ``{x : x L = 0 mod ell^M}`` with ``M = N - slack`` (or less).

    With generator ``divisors`` the kernel words whose divisor also vanishes
    are split off as relations (torsion once Leopoldt holds) and the rest is
    returned as ``quotient``.
    """
    ell = context.ell
    M = modulus_for(L, context)
    T, r, vals = modular_echelon(_int_rows(L, M), ell, M)
    # a kernel vector is pinned down only modulo ell^(M - largest pivot valuation)
    Mk = M - max(vals, default=0)
    if Mk < 1:
        raise PrecisionError("log pivots exhaust the certified precision")
    basis = tuple(SUnitWord(symmetric(row, ell**Mk), Mk) for row in T[r:])
    if divisors is None:
        return KernelLattice(basis, r, Mk, pivot_valuations=tuple(vals))
    q = ell**Mk
    for rel in relations:
        rel = getattr(rel, "exponents", rel)
        lv = word_log(rel, L, context)
        d = sum_divisor(rel, divisors)
        if any(x.reduce(M).valuation is not None for x in lv) or any(d):
            raise ValueError(f"declared relation {list(rel)} is not a torsion relation")
    kd = [[sum(w.exponents[g] * divisors[g][i] for g in range(len(divisors))) % q
           for i in range(len(divisors[0]))] for w in basis]
    T2, r2, _ = modular_echelon(kd, ell, Mk) if basis else ([], 0, [])
    words = [symmetric([sum(t[a] * basis[a].exponents[g] for a in range(len(basis)))
                        for g in range(len(divisors))], q) for t in T2]
    quotient = tuple(SUnitWord(w, Mk) for w in words[:r2])
    rels = tuple(SUnitWord(w, Mk) for w in words[r2:])
    return KernelLattice(basis, r, Mk, quotient, rels, tuple(vals))


def symmetric(values, q: int) -> list:
    """Representatives in ``(-q/2, q/2]``."""
    out = []
    for x in values:
        x %= q
        out.append(x - q if 2 * x > q else x)
    return out


def sum_divisor(word, divisors) -> tuple:
    exps = getattr(word, "exponents", word)
    n = len(divisors[0])
    return tuple(sum(k * d[i] for k, d in zip(exps, divisors)) for i in range(n))


def image_rank(L, context: PrecisionContext) -> int:
    if not L:
        return 0
    M = modulus_for(L, context)
    return modular_echelon(_int_rows(L, M), context.ell, M)[1]


def leopoldt_rank(units, E: EmbeddingSet) -> int:
    """Rank at precision of the unit log matrix; full rank is ``len(units)``."""
    return image_rank(log_matrix(units, E), E.context)


def sunit_log_rank(sunits, E: EmbeddingSet) -> int:
    return image_rank(log_matrix(sunits, E), E.context)


# -- eta words ------------------------------------------------------------------

def conjugate_logs(alpha_log, group: GroupData, labels=None):
    """Log-vectors of ``g(alpha)`` from the log-vector of ``alpha``."""
    labels = labels or group.labels
    out = []
    for g in labels:
        pi = group.embedding_perm(g)
        out.append([alpha_log[pi[i]] for i in range(len(alpha_log))])
    return out


def _check_conjugate_rank(conj_logs, ctx):
    n = len(conj_logs)
    for skip in range(n):
        rest = [row for i, row in enumerate(conj_logs) if i != skip]
        if image_rank(rest, ctx) != n - 1:
            raise ConjugateRankFailure(
                f"conjugates without #{skip} have rank < {n - 1} at precision")


@dataclass(frozen=True)
class EtaResult:
    """Words over ``[sigma_1(alpha), ..., sigma_n(alpha), eps_1, ..., eps_r]``."""

    words: tuple
    coefficients: tuple
    s: int
    pin: int
    modulus_exponent: int
    residual_valuations: tuple


def eta_construction(conj_logs, unit_logs, context: PrecisionContext, pin=None) -> EtaResult:
    """Solve ``sum_i c_ij log sigma_i(alpha) = log eps_j`` and clear denominators.

    The ``pin``-th coefficient (last by default) is fixed to 0.  The word for
    ``eta_j`` is ``prod sigma_i(alpha)^(ell^s c_ij) * eps_j^(-ell^s)``, whose
    log-vector vanishes.
    """
    n = len(conj_logs)
    r = len(unit_logs)
    pin = n - 1 if pin is None else pin
    if r == 0:
        return EtaResult((), (), 0, pin, context.certified, ())
    _check_conjugate_rank(conj_logs, context)
    free = [i for i in range(n) if i != pin]
    A = [[conj_logs[i][coord] for i in free] for coord in range(n)]
    coeffs = []
    for j in range(r):
        try:
            x, _ = solve(A, unit_logs[j], context)
        except SingularSystem as exc:
            raise ConjugateRankFailure(str(exc)) from exc
        col = [context.zero()] * n
        for i, xi in zip(free, x):
            col[i] = xi
        coeffs.append(col)
    vals = [c.valuation for col in coeffs for c in col if c.valuation is not None]
    s = max(0, -min(vals)) if vals else 0
    ell = context.ell
    scale = context(ell**s)
    d = [[c * scale for c in col] for col in coeffs]
    M = context.certified - s
    for col in d:
        for c in col:
            M = min(M, int(c.absprec) if c.absprec != float("inf") else M)
    if M < 1:
        raise PrecisionError("eta exponents carry no certified digits")
    q = ell**M
    words, residuals = [], []
    all_logs = list(conj_logs) + list(unit_logs)
    for j, col in enumerate(d):
        exps = [c.residue(M) if c.valuation is not None else 0 for c in col]
        exps += [(-(ell**s) if k == j else 0) % q for k in range(r)]
        w = SUnitWord(exps, M)
        words.append(w)
        lv = word_log(w, all_logs, context)
        residuals.append(min((x.valuation if x.valuation is not None else x.absprec) for x in lv))
    return EtaResult(tuple(words), tuple(tuple(c) for c in coeffs), s, pin, M, tuple(residuals))


# -- Artin system and the Theorem-2 matrix ---------------------------------------

@dataclass(frozen=True)
class ArtinSystem:
    alpha: FieldElement | None
    epsilon: FieldElement | None
    c: dict
    h0: str
    a: dict = field(default_factory=dict)
    residual_valuation: object = None
    base_prime: int = 0


def _h_labels(group: GroupData):
    return [g for g in group.labels if g in group.h_subset]


def artin_system(epsilon: FieldElement, alpha: FieldElement, group: GroupData,
                 E: EmbeddingSet, h0: str | None = None) -> ArtinSystem:
    """Coefficients ``c_h = a_h + a_{tau h}`` with ``2 log eps = (1+tau) sum c_h log h(alpha)``."""
    ctx = E.context
    if group.tau is None or not group.h_subset:
        raise ValueError("artin_system needs tau and H")
    H = _h_labels(group)
    if h0 is None:
        h0 = next(h for h in H if h != group.identity)
    if h0 not in group.h_subset or h0 == group.identity:
        raise ValueError("h0 must be a non-identity element of H")
    pi_tau = group.embedding_perm(group.tau)
    for i in range(E.n):
        if not embed(epsilon, E, i).agrees(embed(epsilon, E, pi_tau[i])):
            raise ValueError("epsilon is not fixed by tau at precision")
    d_alpha = [embed(alpha, E, i).valuation for i in range(E.n)]
    support = [i for i, v in enumerate(d_alpha) if v]
    if len(support) != 1:
        raise ValueError(f"alpha must have divisor supported at one prime, got {d_alpha}")
    eps_log = log_vector(epsilon, E)
    alpha_log = log_vector(alpha, E)
    labels = group.labels
    conj = conjugate_logs(alpha_log, group, labels)
    pin = labels.index(h0)
    free = [k for k in range(len(labels)) if k != pin]
    A = [[conj[k][coord] for k in free] for coord in range(E.n)]
    try:
        x, _ = solve(A, eps_log, ctx)
    except SingularSystem as exc:
        raise ConjugateRankFailure(str(exc)) from exc
    a = {g: ctx.zero() for g in labels}
    for k, xk in zip(free, x):
        a[labels[k]] = xk
    c = {h: a[h] + a[group.mul(group.tau, h)] for h in H}
    shift = c[h0]
    c = {h: v - shift for h, v in c.items()}
    # residual of 2 log eps = sum_h c_h (log h(alpha) + log tau h(alpha))
    resid = None
    for coord in range(E.n):
        total = 2 * eps_log[coord]
        for h in H:
            th = group.mul(group.tau, h)
            total = total - c[h] * (conj[labels.index(h)][coord] + conj[labels.index(th)][coord])
        v = total.valuation if total.valuation is not None else total.absprec
        resid = v if resid is None else min(resid, v)
    # the prime l with (alpha) = l^h, as seen by the identity embedding convention
    return ArtinSystem(alpha, epsilon, c, h0, a, resid, support[0])


@dataclass(frozen=True)
class ArtinGram:
    labels: tuple
    Cprime: tuple
    A: tuple
    B: tuple
    det: object


def artin_gram(system, group: GroupData, ctx: PrecisionContext | None = None) -> ArtinGram:
    """Gram matrix of ``h_i (1+tau) sum_h c_h h(l)`` from the coset-matching rules.

    An entry collects ``c_beta c_gamma`` for every match ``h_i beta = h_j gamma``
    (and the same after tau); cross terms between ``H`` and ``tau H`` form B.
    """
    c = getattr(system, "c", system)
    H = _h_labels(group)
    tau = group.tau
    zero = ctx.zero() if ctx else 0
    if ctx:
        c = {h: ctx(v) for h, v in c.items()}

    def entry(hi, hj, left_tau, right_tau):
        total = zero
        for beta in H:
            lb = group.mul(hi, group.mul(tau, beta)) if left_tau else group.mul(hi, beta)
            for gamma in H:
                rg = group.mul(hj, group.mul(tau, gamma)) if right_tau else group.mul(hj, gamma)
                if lb == rg:
                    total = total + c[beta] * c[gamma]
        return total

    A = tuple(tuple(entry(hi, hj, False, False) + entry(hi, hj, True, True) for hj in H) for hi in H)
    B = tuple(tuple(entry(hi, hj, True, False) + entry(hi, hj, False, True) for hj in H) for hi in H)
    C = tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))
    if ctx is not None:
        det = padic_det(C, ctx)
    else:
        det = frac_det(C)
    return ArtinGram(tuple(H), C, A, B, det)


def artin_gram_direct(c, group: GroupData, base: int = 0):
    """The same Gram matrix by building the divisors and pairing them outright."""
    H = _h_labels(group)
    n = group.degree
    coeffs = [0] * n
    for sigma in H:
        for g in (sigma, group.mul(group.tau, sigma)):
            j = group.perms[g][base]
            coeffs[j] = c[sigma] + coeffs[j]
    x = Divisor(tuple(coeffs))
    moved = [act(h, x, group) for h in H]
    return tuple(tuple(pair(u, v) for v in moved) for u in moved)
