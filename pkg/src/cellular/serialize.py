"""Canonical JSON encoding of every object the command line reads or writes.

Documents are written with sorted keys, no whitespace and a trailing
newline, so equal values always give identical bytes.  Integers of
absolute value 2^53 or more are written as ``{"#bigint": "<digits>"}``;
readers also accept a plain decimal string in that position.
"""

from __future__ import annotations

import json
from typing import Any

from .certify import CellCertificate, HomEpi, HomologyPiece, ModuleEpi, ShiftedSupport
from .complexes import ChainMap, FreeComplex, HomologyObject
from .exactla import IntMatrix
from .modules import FPModule
from .relations import Obstruction, Verdict
from .rings import RingSpec, SuppSet
from .stanley import PhiFunction

BIG = 2 ** 53


class SchemaError(ValueError):
    """A document does not match the expected shape."""


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"not valid JSON: {e}") from None


def _field(doc, key, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"field {key!r} has the wrong type")
    return value


# integers

def int_to_json(x: int):
    return {"#bigint": str(x)} if abs(x) >= BIG else x


def int_from_json(v) -> int:
    if isinstance(v, bool):
        raise SchemaError("booleans are not integers")
    if isinstance(v, int):
        return v
    if isinstance(v, dict) and set(v) == {"#bigint"}:
        v = v["#bigint"]
    if isinstance(v, str):
        try:
            return int(v)
        except ValueError:
            pass
    raise SchemaError(f"expected an integer, got {v!r}")


# rings and supports

def ring_to_json(r: RingSpec) -> dict:
    return {"ring": "Z"} if r.is_integers else {"ring": f"Z/{r.n}", "n": int_to_json(r.n)}


def parse_ring_name(text: str) -> RingSpec:
    text = text.strip()
    if text in ("Z", "ZZ"):
        return RingSpec.integers()
    if text.startswith("Z/"):
        try:
            return RingSpec.mod(int(text[2:]))
        except ValueError as e:
            raise SchemaError(f"bad ring {text!r}: {e}") from None
    raise SchemaError(f"bad ring {text!r}")


def ring_from_json(doc) -> RingSpec:
    name = _field(doc, "ring", str)
    r = parse_ring_name(name)
    if not r.is_integers and "n" in doc and int_from_json(doc["n"]) != r.n:
        raise SchemaError("ring name and modulus disagree")
    return r


def supp_value(s: SuppSet):
    if s.is_everything:
        return "everything"
    return [int_to_json(p) for p in s.primes]


def supp_from_value(v, ring: RingSpec) -> SuppSet:
    if v == "everything":
        return SuppSet.everything(ring)
    if not isinstance(v, list):
        raise SchemaError("a support is \"everything\" or a list of primes")
    primes = [int_from_json(p) for p in v]
    if primes != sorted(set(primes)):
        raise SchemaError("primes of a support must be strictly increasing")
    try:
        return SuppSet.closed(ring, primes)
    except ValueError as e:
        raise SchemaError(str(e)) from None


def supp_to_json(s: SuppSet) -> dict:
    return {"supp": supp_value(s)}


def supp_from_json(doc, ring: RingSpec) -> SuppSet:
    return supp_from_value(_field(doc, "supp"), ring)


# matrices and modules

def matrix_to_json(m: IntMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "data": [[int_to_json(x) for x in row] for row in m.to_lists()]}


def matrix_from_json(doc) -> IntMatrix:
    rows = int_from_json(_field(doc, "rows"))
    cols = int_from_json(_field(doc, "cols"))
    data = _field(doc, "data", list)
    if rows < 0 or cols < 0 or len(data) != rows:
        raise SchemaError("matrix data does not match its row count")
    out = []
    for row in data:
        if not isinstance(row, list) or len(row) != cols:
            raise SchemaError("matrix row does not match the column count")
        out.append([int_from_json(x) for x in row])
    return IntMatrix(rows, cols, tuple(tuple(r) for r in out))


def module_body(m: FPModule) -> dict:
    return {"ring": ring_to_json(m.ring), "generators": m.generators,
            "relations": matrix_to_json(m.presentation)}


def module_to_json(m: FPModule, degree: int | None = None) -> dict:
    doc = {"module": module_body(m)}
    if degree is not None:
        doc["degree"] = degree
    return doc


def module_from_body(body) -> FPModule:
    ring = ring_from_json(_field(body, "ring", dict))
    g = int_from_json(_field(body, "generators"))
    rel = matrix_from_json(_field(body, "relations", dict))
    if rel.rows != g:
        raise SchemaError("relation matrix needs one row per generator")
    return FPModule(ring, rel)


def normal_form_to_json(m: FPModule) -> dict:
    return {"free_rank": m.free_rank,
            "invariant_factors": [int_to_json(d) for d in m.invariant_factors]}


# complexes, homology objects, maps

def complex_to_json(x: FreeComplex) -> dict:
    return {"complex": {
        "ring": ring_to_json(x.ring),
        "bottom": x.bottom,
        "ranks": list(x.ranks),
        "differentials": [matrix_to_json(d) for d in x.differentials],
    }}


def complex_from_json(doc) -> FreeComplex:
    body = _field(doc, "complex", dict)
    ring = ring_from_json(_field(body, "ring", dict))
    bottom = int_from_json(_field(body, "bottom"))
    ranks = [int_from_json(r) for r in _field(body, "ranks", list)]
    diffs = [matrix_from_json(d) for d in _field(body, "differentials", list)]
    return FreeComplex(ring, bottom, tuple(ranks), tuple(diffs))


def homology_to_json(h: HomologyObject) -> dict:
    return {"ring": ring_to_json(h.ring),
            "homology": [{"degree": k, "module": module_body(m.canonical())}
                         for k, m in h.summands]}


def homology_from_json(doc) -> HomologyObject:
    entries = _field(doc, "homology", list)
    modules = {}
    ring = ring_from_json(doc["ring"]) if "ring" in doc else None
    for e in entries:
        k = int_from_json(_field(e, "degree"))
        if k in modules:
            raise SchemaError(f"degree {k} listed twice")
        modules[k] = module_from_body(_field(e, "module", dict))
        ring = ring or modules[k].ring
    if ring is None:
        raise SchemaError("an empty homology object needs a \"ring\" field")
    if any(m.ring != ring for m in modules.values()):
        raise SchemaError("homology modules over different rings")
    return HomologyObject(ring, modules)


def map_to_json(f: ChainMap) -> dict:
    comps = {str(k): matrix_to_json(f.component(k))
             for k in sorted(set(f.source.degrees) & set(f.target.degrees))}
    return {"map": {"source": complex_to_json(f.source), "target": complex_to_json(f.target),
                    "components": comps}}


def map_from_json(doc) -> ChainMap:
    body = _field(doc, "map", dict)
    source = complex_from_json(_field(body, "source", dict))
    target = complex_from_json(_field(body, "target", dict))
    comps = {}
    for k, m in _field(body, "components", dict).items():
        try:
            comps[int(k)] = matrix_from_json(m)
        except ValueError:
            raise SchemaError(f"component key {k!r} is not a degree") from None
    return ChainMap(source, target, comps)


def object_from_json(doc) -> FreeComplex | HomologyObject:
    """Any finite object: a complex, a homology object, or a module in a
    degree (default 0)."""
    if not isinstance(doc, dict):
        raise SchemaError("expected a JSON object")
    if "complex" in doc:
        return complex_from_json(doc)
    if "homology" in doc:
        return homology_from_json(doc)
    if "module" in doc:
        m = module_from_body(_field(doc, "module", dict))
        return HomologyObject.of(m, int_from_json(doc.get("degree", 0)))
    raise SchemaError("expected a complex, homology or module document")


def object_to_json(x) -> dict:
    if isinstance(x, FreeComplex):
        return complex_to_json(x)
    return homology_to_json(x)


# phi

def phi_to_json(phi: PhiFunction) -> dict:
    return {"phi": {"ring": ring_to_json(phi.ring),
                    "breakpoints": [{"degree": k, "supp": supp_value(s)}
                                    for k, s in phi.breakpoints]}}


def phi_from_json(doc) -> PhiFunction:
    body = _field(doc, "phi", dict)
    ring = ring_from_json(_field(body, "ring", dict))
    points = []
    last = None
    for b in _field(body, "breakpoints", list):
        k = int_from_json(_field(b, "degree"))
        if last is not None and k <= last:
            raise SchemaError("breakpoint degrees must be strictly increasing")
        last = k
        points.append((k, supp_from_value(_field(b, "supp"), ring)))
    try:
        return PhiFunction(ring, tuple(points))
    except ValueError as e:
        raise SchemaError(str(e)) from None


# verdicts and certificates

def certificate_to_json(c: CellCertificate) -> dict:
    if isinstance(c, ModuleEpi):
        return {"type": "module_epi", "degree": c.degree, "t": c.t,
                "matrix": matrix_to_json(c.matrix)}
    if isinstance(c, HomEpi):
        return {"type": "hom_epi", "map": map_to_json(c.map)}
    if isinstance(c, ShiftedSupport):
        return {"type": "shifted_support",
                "inclusions": [{"degree": k, "supp_y": supp_value(sy),
                                "supp_x_below": supp_value(sx)}
                               for k, sy, sx in c.inclusions]}
    if isinstance(c, HomologyPiece):
        return {"type": "homology_piece", "degree": c.degree}
    raise TypeError(f"not a certificate: {c!r}")


def certificate_from_json(doc, ring: RingSpec) -> CellCertificate:
    kind = _field(doc, "type", str)
    if kind == "module_epi":
        return ModuleEpi(int_from_json(_field(doc, "degree")), int_from_json(_field(doc, "t")),
                         matrix_from_json(_field(doc, "matrix", dict)))
    if kind == "hom_epi":
        return HomEpi(map_from_json(_field(doc, "map", dict)))
    if kind == "shifted_support":
        inclusions = []
        for e in _field(doc, "inclusions", list):
            inclusions.append((int_from_json(_field(e, "degree")),
                               supp_from_value(_field(e, "supp_y"), ring),
                               supp_from_value(_field(e, "supp_x_below"), ring)))
        return ShiftedSupport(tuple(inclusions))
    if kind == "homology_piece":
        return HomologyPiece(int_from_json(_field(doc, "degree")))
    raise SchemaError(f"unknown certificate type {kind!r}")


def obstruction_to_json(o: Obstruction) -> dict:
    doc = {"degree": o.degree, "prime": None if o.prime is None else int_to_json(o.prime.p)}
    if o.kind != "support":
        doc["kind"] = o.kind
    return doc


def verdict_to_json(v: Verdict) -> dict:
    doc = {"verdict": v.status}
    if v.certificate is not None:
        doc["certificate"] = certificate_to_json(v.certificate)
    if v.obstruction is not None:
        doc["obstruction"] = obstruction_to_json(v.obstruction)
    if v.is_unknown:
        doc["rules_tried"] = list(v.rules_tried)
    return doc
