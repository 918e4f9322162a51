"""Reading, validating and writing field description files (JSON).

A file looks like::

    {
      "name": "Q(i)",
      "ell": 5,
      "polynomial": [1, 0, 1],
      "r1": 0,
      "r2": 1,
      "torsion_order": 4,
      "units": [],
      "sunits": [{"num": [2, 1], "den": 1}, {"num": [2, -1], "den": 1}],
      "alpha": 0,
      "group": {"elements": [{"label": "id", "image": [0, 1]}, ...],
                "h_subset": ["id"], "tau": "c", "dihedral": false, "h0": null},
      "relations": [[1, -1, -1]]
    }

Polynomials and numerators list coefficients in ascending degree.  The
generator list seen by relations is ``[ell] + units + sunits``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .field import (
    FieldElement,
    NumberFieldSpec,
    RamifiedPrime,
    hensel_embeddings,
    splits_completely,
)
from .lattice import GroupDataError, group_from_field
from .padic import PrecisionContext, is_prime

KEY_ORDER = ("name", "ell", "polynomial", "r1", "r2", "torsion_order",
             "units", "sunits", "alpha", "group", "relations")
GROUP_KEYS = ("elements", "h_subset", "tau", "dihedral", "h0")


class FieldSpecError(ValueError):
    """A field file violates the schema or a declared invariant."""

    def __init__(self, path: str, message: str, line: int | None = None, source: str = ""):
        self.path, self.line, self.source = path, line, source
        where = f"{source}:{line}: " if line else (f"{source}: " if source else "")
        super().__init__(f"{where}{path}: {message}")


def _line_of(text: str, path: str) -> int | None:
    """Best-effort line of the last named key in a JSON path."""
    keys = re.findall(r"\.([A-Za-z_0-9]+)", path)
    if not keys:
        return None
    pos = 0
    for key in keys:
        found = text.find(f'"{key}"', pos)
        if found < 0:
            break
        pos = found
    return text.count("\n", 0, pos) + 1


def _element(obj, path):
    if not isinstance(obj, dict) or set(obj) != {"num", "den"}:
        raise ValueError(f"{path}: expected {{\"num\": [...], \"den\": d}}")
    num, den = obj["num"], obj["den"]
    if not isinstance(num, list) or not all(isinstance(c, int) for c in num):
        raise ValueError(f"{path}.num: expected a list of integers")
    if not isinstance(den, int) or den <= 0:
        raise ValueError(f"{path}.den: expected a positive integer")
    return FieldElement(tuple(num), den)


def _element_json(a: FieldElement, n: int):
    num = list(a.numerator) + [0] * (n - len(a.numerator))
    return {"num": num or [0], "den": a.denominator}


def parse_field(text: str, source: str = "") -> NumberFieldSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FieldSpecError("$", f"invalid JSON: {exc.msg}", exc.lineno, source) from exc

    def fail(path, msg):
        raise FieldSpecError(path, msg, _line_of(text, path), source)

    if not isinstance(data, dict):
        fail("$", "top level must be an object")
    unknown = set(data) - set(KEY_ORDER)
    if unknown:
        fail(f"$.{sorted(unknown)[0]}", "unknown key")
    for key in ("polynomial", "r1", "r2"):
        if key not in data:
            fail(f"$.{key}", "missing required key")
    f = data["polynomial"]
    if not isinstance(f, list) or not all(isinstance(c, int) for c in f):
        fail("$.polynomial", "expected a list of integers")
    ell = data.get("ell")
    if ell is not None and (not isinstance(ell, int) or not is_prime(ell)):
        fail("$.ell", f"{ell!r} is not a prime")
    elems = {}
    for key in ("units", "sunits"):
        items = data.get(key, [])
        if not isinstance(items, list):
            fail(f"$.{key}", "expected a list")
        out = []
        for i, obj in enumerate(items):
            try:
                out.append(_element(obj, f"$.{key}[{i}]"))
            except ValueError as exc:
                fail(f"$.{key}", str(exc))
        elems[key] = tuple(out)
    group = data.get("group")
    autos, h_subset, tau, dihedral, h0 = None, (), None, False, None
    if group is not None:
        if not isinstance(group, dict) or "elements" not in group:
            fail("$.group", "expected an object with 'elements'")
        extra = set(group) - set(GROUP_KEYS)
        if extra:
            fail(f"$.group.{sorted(extra)[0]}", "unknown key")
        autos = {}
        for i, el in enumerate(group["elements"]):
            if not isinstance(el, dict) or set(el) != {"label", "image"}:
                fail("$.group.elements", f"element #{i} needs exactly 'label' and 'image'")
            if el["label"] in autos:
                fail("$.group.elements", f"duplicate label {el['label']!r}")
            autos[str(el["label"])] = tuple(el["image"])
        h_subset = tuple(group.get("h_subset", ()))
        tau = group.get("tau")
        dihedral = bool(group.get("dihedral", False))
        h0 = group.get("h0")
    relations = data.get("relations", [])
    try:
        spec = NumberFieldSpec(
            f=tuple(f), r1=data["r1"], r2=data["r2"],
            torsion_order=data.get("torsion_order", 2),
            units=elems["units"], sunits=elems["sunits"], name=data.get("name", ""),
            ell=ell, automorphisms=autos, h_subset=h_subset, tau=tau, dihedral=dihedral,
            h0=h0, alpha=data.get("alpha"), relations=tuple(tuple(r) for r in relations))
    except ValueError as exc:
        fail("$.polynomial" if "polynomial" in str(exc) else "$.r1", str(exc))
    validate_field(spec, fail)
    return spec


def validate_field(spec: NumberFieldSpec, fail) -> None:
    """Check the declared invariants; ``fail(path, message)`` must raise."""
    n = spec.degree
    if spec.ell is not None:
        try:
            if not splits_completely(spec.f, spec.ell):
                fail("$.ell", f"{spec.ell} does not split completely")
        except RamifiedPrime as exc:
            fail("$.ell", str(exc))
    for k, u in enumerate(spec.units):
        if not spec.is_integral(u) or abs(spec.norm(u)) != 1:
            fail("$.units", f"units[{k}] = {u} is not a unit (norm {spec.norm(u)})")
    if spec.ell is not None:
        for k, s in enumerate(spec.sunits):
            nm = spec.norm(s)
            if nm == 0 or not _is_ell_power(abs(nm), spec.ell):
                fail("$.sunits", f"sunits[{k}] = {s} has norm {nm}, not a power of {spec.ell}")
    ngens = 1 + len(spec.units) + len(spec.sunits)
    for k, rel in enumerate(spec.relations):
        if len(rel) != ngens or not all(isinstance(e, int) for e in rel):
            fail("$.relations", f"relations[{k}] must be {ngens} integers")
    if spec.alpha is not None and not 0 <= spec.alpha < len(spec.sunits):
        fail("$.alpha", f"index {spec.alpha} is outside sunits")
    if spec.automorphisms is not None:
        for label, img in spec.automorphisms.items():
            if not all(isinstance(c, int) for c in img) or len(img) > n:
                fail("$.group.elements", f"{label}: image must be at most {n} integers")
            if not _is_root(spec, img):
                fail("$.group.elements", f"{label}: image is not a root of the polynomial")
        labels = set(spec.automorphisms)
        for h in spec.h_subset:
            if h not in labels:
                fail("$.group.h_subset", f"unknown label {h!r}")
        if spec.tau is not None and spec.tau not in labels:
            fail("$.group.tau", f"unknown label {spec.tau!r}")
        if spec.h0 is not None and spec.h0 not in spec.h_subset:
            fail("$.group.h0", f"{spec.h0!r} is not in H")
        if spec.ell is not None:
            E = hensel_embeddings(spec.f, PrecisionContext(spec.ell, 4, 1))
            try:
                group_from_field(spec, E)
            except (GroupDataError, ValueError) as exc:
                fail("$.group", str(exc))


def _is_ell_power(q: Fraction, ell: int) -> bool:
    for part in (q.numerator, q.denominator):
        while part % ell == 0:
            part //= ell
        if part != 1:
            return False
    return True


def _is_root(spec: NumberFieldSpec, img) -> bool:
    x = FieldElement(tuple(img))
    acc = FieldElement(())
    power = FieldElement((1,))
    for c in spec.f:
        acc = spec.add(acc, spec.mul(FieldElement((c,)), power))
        power = spec.mul(power, x)
    return acc.is_zero()


def serialize_field(spec: NumberFieldSpec) -> str:
    """Canonical text: fixed key order, one key per line, compact values."""
    n = spec.degree
    data = {
        "name": spec.name,
        "ell": spec.ell,
        "polynomial": list(spec.f),
        "r1": spec.r1,
        "r2": spec.r2,
        "torsion_order": spec.torsion_order,
        "units": [_element_json(u, n) for u in spec.units],
        "sunits": [_element_json(s, n) for s in spec.sunits],
    }
    if spec.alpha is not None:
        data["alpha"] = spec.alpha
    if spec.automorphisms is not None:
        data["group"] = {
            "elements": [{"label": g, "image": list(img)} for g, img in spec.automorphisms.items()],
            "h_subset": list(spec.h_subset),
            "tau": spec.tau,
            "dihedral": spec.dihedral,
            "h0": spec.h0,
        }
    data["relations"] = [list(r) for r in spec.relations]
    lines = [f"  {json.dumps(k)}: {json.dumps(v, separators=(', ', ': '))}" for k, v in data.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def bundled_fields() -> list[str]:
    root = resources.files("ellreg") / "data" / "fields"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def bundled_text(name: str) -> str:
    return (resources.files("ellreg") / "data" / "fields" / f"{name}.json").read_text()


def load_field(ref: str) -> NumberFieldSpec:
    """Load a field from a file path or a bundled name such as ``qi``."""
    path = Path(ref)
    if path.is_file():
        return parse_field(path.read_text(), str(path))
    if ref in bundled_fields():
        return parse_field(bundled_text(ref), f"<bundled {ref}>")
    raise FieldSpecError("$", f"no field file or bundled field named {ref!r}")

