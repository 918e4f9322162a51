"""Per-field computations packaged as report documents.

A report is a plain dict whose leaves may be PadicNumbers, SUnitWords or
FieldElements; ``jsonable`` turns it into the structured form (the source of
truth) and ``render_text`` into the human form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .field import FieldElement, NumberFieldSpec, hensel_embeddings, log_vector
from .lattice import Divisor, divisor_of, group_from_field
from .norms import (
    SUnitWord,
    artin_system,
    conjugate_logs,
    eta_construction,
    kernel_lattice,
    leopoldt_rank,
    log_matrix,
    sunit_log_rank,
    artin_gram_direct,
    artin_gram,
)
from .padic import EXACT, PadicNumber, PrecisionContext
from .regulators import classical_regulator, new_regulator, relative_regulator

SURROGATE = "U_{S,2} surrogate"


@dataclass
class FieldSession:
    """A field at one prime and precision, with lazily computed shared data."""

    spec: NumberFieldSpec
    context: PrecisionContext

    @cached_property
    def E(self):
        return hensel_embeddings(self.spec.f, self.context)

    @cached_property
    def generators(self):
        return self.spec.generators(self.context.ell)

    @cached_property
    def logs(self):
        return log_matrix(self.generators, self.E)

    @cached_property
    def divisors(self):
        return [divisor_of(g, self.E).coeffs for g in self.generators]

    @cached_property
    def group(self):
        if self.spec.automorphisms is None:
            return None
        return group_from_field(self.spec, self.E)

    @property
    def relations(self):
        return self.spec.relations if self.spec.ell == self.context.ell else ()

    @cached_property
    def kernel(self):
        return kernel_lattice(self.logs, self.context, self.divisors, self.relations)

    @property
    def expected_rank(self) -> int:
        return self.spec.r1 + self.spec.r2

    def alpha(self) -> FieldElement:
        if self.spec.alpha is None:
            raise ValueError("field declares no alpha")
        return self.spec.sunits[self.spec.alpha]

    def galois_group(self):
        g = self.group
        if g is None:
            raise ValueError("field declares no group block")
        if g.order != self.spec.degree:
            raise ValueError(f"group of order {g.order} is not the full Galois group")
        return g

    def header(self, kind: str, basis: str) -> dict:
        ctx = self.context
        return {"kind": kind, "ell": ctx.ell, "N": ctx.N, "slack": ctx.slack,
                "field": self.spec.name, "basis": basis}


GENERATOR_BASIS = "generators [ell] + units + sunits"


def embed_report(s: FieldSession) -> dict:
    doc = s.header("embed", "roots of the polynomial ordered by residue mod ell")
    doc["roots"] = [r.residue() for r in s.E.roots]
    return doc


def logvec_report(s: FieldSession) -> dict:
    doc = s.header("logvec", GENERATOR_BASIS)
    rows = []
    for g, lv in zip(s.generators, s.logs):
        total = s.context.zero()
        for x in lv:
            total = total + x
        rows.append({"element": g, "log": lv, "log_sum": total})
    doc["generators"] = rows
    return doc


def divisor_report(s: FieldSession) -> dict:
    doc = s.header("divisor", GENERATOR_BASIS)
    doc["generators"] = [{"element": g, "divisor": list(d)}
                         for g, d in zip(s.generators, s.divisors)]
    return doc


def _regulator_doc(s, rep, extra=None) -> dict:
    doc = s.header(f"regulator_{rep.kind}", rep.basis_used)
    body = {k: v for k, v in rep.to_json().items() if k not in ("kind", "ell", "N", "slack")}
    body["det"] = rep.det
    body["gram"] = [list(r) for r in rep.gram]
    doc.update(body)
    doc.update(extra or {})
    return doc


def regulator_report(s: FieldSession, which: str) -> dict:
    units = list(s.spec.units)
    if which == "classical":
        rank = leopoldt_rank(units, s.E) if units else 0
        rep = classical_regulator(units, s.E)
        return _regulator_doc(s, rep, {"leopoldt_rank": rank, "leopoldt_defect": len(units) - rank})
    if which == "relative":
        g = s.group
        if g is None:
            raise ValueError("relative regulator needs a group block")
        sub = g.h_subset or frozenset(g.labels)
        rep = relative_regulator(units, s.E, g, sub)
        return _regulator_doc(s, rep, {"subgroup": sorted(sub)})
    if which == "new":
        K = s.kernel
        rep = new_regulator(K, s.divisors, s.context, expected_rank=s.expected_rank)
        return _regulator_doc(s, rep, {"lattice": SURROGATE, "kernel_rank": K.rank,
                                       "expected_rank": s.expected_rank,
                                       "words": list(K.quotient or K.basis)})
    raise ValueError(f"unknown regulator {which!r}")


def us2_report(s: FieldSession) -> dict:
    K = s.kernel
    units = list(s.spec.units)
    lrank = leopoldt_rank(units, s.E) if units else 0
    doc = s.header("us2", f"{SURROGATE}: kernel of the log map on {GENERATOR_BASIS}")
    doc.update({
        "lattice": SURROGATE,
        "image_rank": K.image_rank,
        "modulus_exponent": K.modulus_exponent,
        "pivot_valuations": list(K.pivot_valuations),
        "kernel_basis": list(K.basis),
        "quotient_basis": list(K.quotient),
        "relations": list(K.relations),
        "rank": K.rank,
        "expected_rank": s.expected_rank,
        "sunit_log_rank": sunit_log_rank(s.generators, s.E),
        "expected_log_rank": s.spec.degree - 1,
        "leopoldt_rank": lrank,
        "leopoldt_defect": len(units) - lrank,
    })
    return doc


def eta_report(s: FieldSession) -> dict:
    g = s.galois_group()
    alpha = s.alpha()
    conj = conjugate_logs(log_vector(alpha, s.E), g, g.labels)
    unit_logs = [log_vector(u, s.E) for u in s.spec.units]
    R = eta_construction(conj, unit_logs, s.context)
    labels = [f"{h}(alpha)" for h in g.labels] + [f"unit{j}" for j in range(len(unit_logs))]
    doc = s.header("eta", "words over " + ", ".join(labels))
    doc.update({
        "alpha": alpha,
        "s": R.s,
        "pin": g.labels[R.pin],
        "coefficients": [list(col) for col in R.coefficients],
        "words": list(R.words),
        "modulus_exponent": R.modulus_exponent,
        "residual_valuations": list(R.residual_valuations),
    })
    return doc


def artin_report(s: FieldSession, unit: int = 0) -> dict:
    g = s.galois_group()
    if not s.spec.units:
        raise ValueError("field declares no unit to use as epsilon")
    eps = s.spec.units[unit]
    A = artin_system(eps, s.alpha(), g, s.E, s.spec.h0)
    T = artin_gram(A, g, s.context)
    direct = artin_gram_direct(A.c, g, A.base_prime)
    direct_ok = all(x.agrees(y) for rx, ry in zip(T.Cprime, direct) for x, y in zip(rx, ry))
    doc = s.header("artin_matrix", f"H = {list(T.labels)}, h0 = {A.h0}, epsilon = {eps}")
    doc.update({
        "epsilon": eps,
        "alpha": A.alpha,
        "h0": A.h0,
        "c": dict(A.c),
        "residual_valuation": A.residual_valuation,
        "Cprime": [list(r) for r in T.Cprime],
        "A": [list(r) for r in T.A],
        "B": [list(r) for r in T.B],
        "det": T.det,
        "direct_agrees": direct_ok,
    })
    return doc


# -- serialization --------------------------------------------------------------

def jsonable(obj):
    if isinstance(obj, PadicNumber):
        return obj.to_json()
    if isinstance(obj, SUnitWord):
        return {"word": list(obj.exponents), "modulus_exponent": obj.modulus_exponent}
    if isinstance(obj, FieldElement):
        return {"num": list(obj.numerator), "den": obj.denominator}
    if isinstance(obj, Divisor):
        return list(obj.coeffs)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float) and obj == EXACT:
        return None
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def dumps(doc) -> str:
    return json.dumps(jsonable(doc), sort_keys=True, indent=2) + "\n"


def _scalar(v) -> str:
    if isinstance(v, SUnitWord):
        return f"{list(v.exponents)} mod ell^{v.modulus_exponent}"
    if isinstance(v, (PadicNumber, FieldElement, Divisor)):
        return str(v)
    if isinstance(v, (list, tuple)) and all(not isinstance(x, (dict, list, tuple)) for x in v):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def render_text(doc, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k in sorted(doc):
        v = doc[k]
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(render_text(v, indent + 1))
        elif isinstance(v, (list, tuple)) and any(isinstance(x, (dict, list, tuple)) for x in v):
            lines.append(f"{pad}{k}:")
            for x in v:
                if isinstance(x, dict):
                    lines.append(f"{pad}  -")
                    lines.append(render_text(x, indent + 2))
                else:
                    lines.append(f"{pad}  - {_scalar(x)}")
        else:
            lines.append(f"{pad}{k}: {_scalar(v)}")
    return "\n".join(line for line in lines if line)
