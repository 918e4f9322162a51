"""The identity suite over the bundled fields, and the precision-refinement comparator."""

from __future__ import annotations

import random

from .lattice import SplitPartition, act, divisor_of, pair, pair_parts, relative_pair
from .linalg import SingularSystem, leibniz_det
from .norms import artin_gram_direct, artin_gram
from .padic import PrecisionContext, PrecisionError
from .regulators import UnsupportedCharacters, base_unit, conjugate_log_values, dedekind_check
from .reports import (
    FieldSession,
    artin_report,
    eta_report,
    jsonable,
    logvec_report,
    regulator_report,
    us2_report,
)
from .specfile import bundled_fields, load_field

# keys whose values legitimately depend on the working precision
PRECISION_KEYS = frozenset({"N", "precision_loss", "modulus_exponent", "basis", "basis_used",
                            "tolerance", "loss", "residual", "residual_valuation",
                            "residual_valuations", "lhs_absprec"})


def _vanishes(x, tolerance) -> tuple[bool, object]:
    """Whether ``x`` is zero at its known precision or has valuation >= tolerance."""
    if x.valuation is None:
        return True, x.absprec
    return x.valuation >= tolerance, x.valuation


def _identity(name, field, passed, **detail):
    return {"name": name, "field": field, "passed": passed, **detail}


def field_identities(s: FieldSession) -> list[dict]:
    spec, ctx = s.spec, s.context
    name = spec.name
    out = []
    tol = ctx.certified
    for g, lv in zip(s.generators, s.logs):
        total = ctx.zero()
        for x in lv:
            total = total + x
        ok, res = _vanishes(total, tol)
        out.append(_identity("norm_relation", name, ok, element=str(g), residual=res, tolerance=tol))
    group = s.group
    if group is None:
        return out
    divs = [divisor_of(g, s.E) for g in s.generators]
    equi = all(divisor_of(spec.apply(spec.automorphisms[h], a), s.E) == act(h, d, group)
               for h in group.labels for a, d in zip(s.generators, divs))
    out.append(_identity("divisor_equivariance", name, equi))
    pe = all(pair(act(h, x, group), act(h, y, group)) == pair(x, y)
             for h in group.labels for x in divs for y in divs)
    out.append(_identity("pairing_equivariance", name, pe))
    if group.tau is not None and group.h_subset:
        P = SplitPartition.from_group(group)
        rel = all(relative_pair(act(h, x, group), act(h, y, group), P)
                  == relative_pair(x, y, P).act(h, group)
                  for h in group.labels for x in divs for y in divs)
        out.append(_identity("relative_pairing_equivariance", name, rel))
        if group.dihedral and spec.alpha is not None:
            d = divisor_of(s.alpha(), s.E)
            x = d + act(group.tau, d, group)
            H = [h for h in group.labels if h in group.h_subset]
            sym = all(len(set(pair_parts(act(a, x, group), act(b, x, group), P))) == 1
                      for a in H for b in H)
            out.append(_identity("tau_fixed_symmetry", name, sym))
    if group.dihedral and spec.h0 is not None:
        out.extend(_artin_gram_identities(s, group))
    if group.order == spec.degree and group.is_abelian():
        out.append(_dedekind_identity(s, group))
    return out


def _artin_gram_identities(s: FieldSession, group) -> list[dict]:
    name, ctx = s.spec.name, s.context
    out = []
    H = [h for h in group.labels if h in group.h_subset]
    # structural identities with exact integer coefficients
    c = {h: (0 if h == s.spec.h0 else k + 2) for k, h in enumerate(H)}
    T = artin_gram(c, group)
    out.append(_identity("artin_gram_B_zero_exact", name, all(b == 0 for r in T.B for b in r)))
    out.append(_identity("artin_gram_A_diagonal_exact", name,
                         all(T.A[i][i] == 2 * sum(v * v for v in c.values()) for i in range(len(H)))))
    out.append(_identity("artin_gram_direct_exact", name,
                         [list(r) for r in T.Cprime] == [list(r) for r in artin_gram_direct(c, group)]))
    try:
        doc = artin_report(s)
    except (SingularSystem, PrecisionError) as exc:
        out.append(_identity("artin_gram_padic", name, None, skipped=f"precision insufficient: {exc}"))
        return out
    cs = doc["c"]
    Tp = artin_gram(cs, group, ctx)
    out.append(_identity("artin_gram_B_zero", name,
                         all(_vanishes(ctx(b), ctx.certified)[0] for r in Tp.B for b in r)))
    two_sum = ctx.zero()
    for v in cs.values():
        two_sum = two_sum + 2 * v * v
    diag = [_vanishes(Tp.A[i][i] - two_sum, ctx.certified) for i in range(len(H))]
    out.append(_identity("artin_gram_A_diagonal", name, all(ok for ok, _ in diag),
                         residual=min((r for _, r in diag), default=None)))
    out.append(_identity("artin_gram_direct", name, bool(doc["direct_agrees"])))
    lz = leibniz_det(Tp.Cprime, ctx.zero())
    out.append(_identity("artin_gram_det_expansion", name, Tp.det.agrees(lz)))
    return out


def _dedekind_identity(s: FieldSession, group) -> dict:
    name, ctx = s.spec.name, s.context
    base = s.alpha() if s.spec.alpha is not None else (s.spec.units or s.generators)[0]
    from .field import FieldElement

    beta = s.spec.mul(base, FieldElement((base_unit(ctx.ell),)))
    tol = ctx.certified - 2
    try:
        r = dedekind_check(conjugate_log_values(beta, group, s.E), group, ctx)
    except UnsupportedCharacters as exc:
        return _identity("dedekind", name, None, skipped=str(exc))
    return _identity("dedekind", name, r.residual >= tol, residual=r.residual,
                     tolerance=tol, loss=r.loss)


def field_reports(s: FieldSession) -> dict:
    out = {}
    builders = {
        "logvec": logvec_report,
        "regulator_classical": lambda t: regulator_report(t, "classical"),
        "regulator_new": lambda t: regulator_report(t, "new"),
        "us2": us2_report,
    }
    if s.group is not None and s.group.order == s.spec.degree and s.spec.alpha is not None:
        builders["eta"] = eta_report
        if s.group.dihedral and s.spec.units:
            builders["artin_matrix"] = artin_report
    for key, build in builders.items():
        try:
            out[key] = build(s)
        except (PrecisionError, SingularSystem) as exc:
            out[key] = {"error": f"precision insufficient: {exc}"}
    return out


def run_selfcheck(N: int = 12, slack: int = 2, fields=None, seed: int = 0) -> dict:
    """Run every identity on every requested field; the result is a report document."""
    names = list(fields) if fields else bundled_fields()
    identities, reports = [], {}
    for ref in names:
        spec = load_field(ref)
        s = FieldSession(spec, PrecisionContext(spec.ell, N, slack))
        identities.extend(field_identities(s))
        reports[spec.name or ref] = field_reports(s)
    identities.extend(abstract_identities(random.Random(seed)))
    failed = [i for i in identities if i["passed"] is False]
    return {"kind": "selfcheck", "ell": None, "N": N, "slack": slack, "basis": "bundled fields",
            "fields": names, "identities": identities, "reports": reports,
            "failures": len(failed), "all_passed": not failed}


def abstract_identities(rng: random.Random, trials: int = 25) -> list[dict]:
    """Pairing identities on abstract dihedral actions (no field needed)."""
    from .lattice import Divisor, dihedral_group

    out = []
    for n in (2, 3, 4, 6):
        G = dihedral_group(n)
        P = SplitPartition.from_group(G)
        H = [h for h in G.labels if h in G.h_subset]
        ok = True
        for _ in range(trials):
            d = Divisor([rng.randint(-5, 5) for _ in range(G.degree)])
            x = d + act(G.tau, d, G)
            ok &= all(len(set(pair_parts(act(a, x, G), act(b, x, G), P))) == 1 for a in H for b in H)
        out.append(_identity("tau_fixed_symmetry", f"dihedral H=C{n}", ok))
    return out


# -- refinement --------------------------------------------------------------------

def compare_refinement(hi, lo, ell: int | None = None, path: str = "$") -> list[str]:
    """Mismatches between a higher-precision document and a lower one.

    p-adic values are compared modulo the smaller of their known precisions
    and words modulo the smaller modulus; precision bookkeeping keys are skipped.
    """
    hi, lo = jsonable(hi), jsonable(lo)
    return _compare(hi, lo, ell, path)


def _compare(hi, lo, ell, path):
    if isinstance(hi, dict) and isinstance(lo, dict):
        if "error" in hi or "error" in lo:
            return []
        if "padic" in hi and "padic" in lo:
            return [] if _padic_agree(hi["padic"], lo["padic"], ell) else [path]
        if "word" in hi and "word" in lo:
            m = ell ** min(hi["modulus_exponent"], lo["modulus_exponent"])
            same = len(hi["word"]) == len(lo["word"]) and all(
                (a - b) % m == 0 for a, b in zip(hi["word"], lo["word"]))
            return [] if same else [path]
        ell = hi.get("ell", ell)
        skip = set(PRECISION_KEYS)
        det = lo.get("det")
        if isinstance(det, dict) and det.get("padic", [0])[0] is None:
            skip |= {"valuation", "verdict", "unit_class"}
        out = []
        if set(hi) != set(lo):
            out.append(f"{path}: keys differ")
        for k in sorted(set(hi) & set(lo)):
            if k in skip:
                continue
            out.extend(_compare(hi[k], lo[k], ell, f"{path}.{k}"))
        return out
    if isinstance(hi, list) and isinstance(lo, list):
        if len(hi) != len(lo):
            return [f"{path}: lengths differ"]
        out = []
        for i, (a, b) in enumerate(zip(hi, lo)):
            out.extend(_compare(a, b, ell, f"{path}[{i}]"))
        return out
    return [] if hi == lo else [path]


def _padic_agree(a, b, ell) -> bool:
    (va, ua, pa), (vb, ub, pb) = a, b
    inf = float("inf")
    k = min(inf if pa is None else pa, inf if pb is None else pb)
    if k == inf:
        return (va, ua) == (vb, ub)
    lo_v = min(v for v in (va, vb, 0) if v is not None)
    shift = -lo_v
    m = ell ** (k + shift)

    def scaled(v, u):
        return 0 if v is None else u * ell ** (v + shift)

    return (scaled(va, ua) - scaled(vb, ub)) % m == 0
