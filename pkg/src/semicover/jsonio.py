"""JSON documents for algebras, groupoids, internal groupoids, actions and covers.

All numbers are indices.  Every object rejects unknown fields; the optional
``labels`` side table is carried through but never read by the library.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .algebra import FiniteAlgebra, Signature, Witness
from .covering import CoveringOfInternal, GroupoidAction, underlying
from .errors import DocumentError, SemicoverError
from .groupoid import FiniteGroupoid, GroupoidMorphism
from .internal import InternalGroupoid

_INTS = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_TABLES = {"type": "object", "additionalProperties": _INTS}
_LABELS = {"type": "object"}

SIGNATURE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["constant", "ops"],
    "properties": {
        "constant": {"type": "string"},
        "ops": {"type": "array", "items": {
            "type": "object", "additionalProperties": False, "required": ["name", "arity"],
            "properties": {"name": {"type": "string"}, "arity": {"type": "integer", "minimum": 0}},
        }},
        "witness": {
            "type": "object", "additionalProperties": False, "required": ["alphas", "theta"],
            "properties": {"alphas": {"type": "array", "items": {"type": "string"}}, "theta": {"type": "string"}},
        },
    },
}

ALGEBRA_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["signature", "size", "tables"],
    "properties": {"signature": SIGNATURE_SCHEMA, "size": {"type": "integer", "minimum": 1},
                   "tables": _TABLES, "labels": _LABELS},
}

CARRIER_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["size"],
    "properties": {"size": {"type": "integer", "minimum": 1}, "tables": _TABLES, "labels": _LABELS},
}

GROUPOID_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["objects", "arrows", "src", "tgt", "id", "inv", "comp"],
    "properties": {
        "objects": {"type": "integer", "minimum": 1},
        "arrows": {"type": "integer", "minimum": 1},
        "src": _INTS, "tgt": _INTS, "id": _INTS, "inv": _INTS,
        "comp": {"type": "array", "items": {**_INTS, "minItems": 3, "maxItems": 3}},
        "labels": _LABELS,
    },
}

INTERNAL_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["signature", "groupoid", "object_algebra", "arrow_algebra"],
    "properties": {
        "signature": SIGNATURE_SCHEMA,
        "groupoid": GROUPOID_SCHEMA,
        "object_algebra": {**CARRIER_SCHEMA, "required": ["size", "tables"]},
        "arrow_algebra": {**CARRIER_SCHEMA, "required": ["size", "tables"]},
    },
}

_BASE = {"oneOf": [INTERNAL_SCHEMA, GROUPOID_SCHEMA]}

ACTION_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["base", "carrier", "omega", "phi"],
    "properties": {
        "base": _BASE,
        "carrier": CARRIER_SCHEMA,
        "omega": _INTS,
        "phi": {"type": "array", "items": {**_INTS, "minItems": 3, "maxItems": 3}},
    },
}

COVER_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["dom", "cod", "obj_map", "arr_map"],
    "properties": {"dom": _BASE, "cod": _BASE, "obj_map": _INTS, "arr_map": _INTS},
}

SCHEMAS = {
    "algebra": ALGEBRA_SCHEMA,
    "groupoid": GROUPOID_SCHEMA,
    "internal": INTERNAL_SCHEMA,
    "action": ACTION_SCHEMA,
    "cover": COVER_SCHEMA,
}


def _validate(doc, kind: str) -> None:
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise DocumentError(f"{kind} document invalid at {where}: {exc.message}") from None


# -- to documents --------------------------------------------------------------------

def signature_to_doc(sig: Signature) -> dict:
    doc = {"constant": sig.constant, "ops": [{"name": n, "arity": k} for n, k in sig.ops]}
    if sig.witness is not None:
        doc["witness"] = {"alphas": list(sig.witness.alphas), "theta": sig.witness.theta}
    return doc


def _tables_doc(a: FiniteAlgebra) -> dict:
    return {name: list(a.tables[name]) for name in a.sig.names if name in a.tables}


def algebra_to_doc(a: FiniteAlgebra, labels: dict | None = None) -> dict:
    doc = {"signature": signature_to_doc(a.sig), "size": a.size, "tables": _tables_doc(a)}
    if labels:
        doc["labels"] = labels
    return doc


def groupoid_to_doc(g: FiniteGroupoid, labels: dict | None = None) -> dict:
    doc = {
        "objects": g.n_objects,
        "arrows": g.n_arrows,
        "src": list(g.src),
        "tgt": list(g.tgt),
        "id": list(g.id),
        "inv": list(g.inv),
        "comp": [[a, b, ab] for (a, b), ab in sorted(g.comp.items())],
    }
    if labels:
        doc["labels"] = labels
    return doc


def internal_to_doc(ig: InternalGroupoid, labels: dict | None = None) -> dict:
    return {
        "signature": signature_to_doc(ig.sig),
        "groupoid": groupoid_to_doc(ig.gpd, labels),
        "object_algebra": {"size": ig.object_alg.size, "tables": _tables_doc(ig.object_alg)},
        "arrow_algebra": {"size": ig.arrow_alg.size, "tables": _tables_doc(ig.arrow_alg)},
    }


def base_to_doc(g, labels: dict | None = None) -> dict:
    if isinstance(g, InternalGroupoid):
        return internal_to_doc(g, labels)
    return groupoid_to_doc(g, labels)


def action_to_doc(act: GroupoidAction, labels: dict | None = None) -> dict:
    carrier = {"size": act.size}
    if act.algebra is not None:
        carrier["tables"] = _tables_doc(act.algebra)
    if labels:
        carrier["labels"] = labels
    return {
        "base": base_to_doc(act.base),
        "carrier": carrier,
        "omega": list(act.omega),
        "phi": [[a, g, b] for (a, g), b in sorted(act.phi.items())],
    }


def cover_to_doc(cov: CoveringOfInternal, dom_labels: dict | None = None) -> dict:
    return {
        "dom": base_to_doc(cov.dom, dom_labels),
        "cod": base_to_doc(cov.cod),
        "obj_map": list(cov.p.obj_map),
        "arr_map": list(cov.p.arr_map),
    }


# -- from documents ------------------------------------------------------------------

def _signature(doc: dict) -> Signature:
    w = doc.get("witness")
    try:
        return Signature(
            tuple((op["name"], op["arity"]) for op in doc["ops"]),
            doc["constant"],
            Witness(tuple(w["alphas"]), w["theta"]) if w else None,
        )
    except SemicoverError as exc:
        raise DocumentError(f"bad signature: {exc}") from None


def algebra_from_doc(doc: dict) -> FiniteAlgebra:
    _validate(doc, "algebra")
    return FiniteAlgebra(_signature(doc["signature"]), doc["size"], doc["tables"])


def groupoid_from_doc(doc: dict) -> FiniteGroupoid:
    _validate(doc, "groupoid")
    return _groupoid(doc)


def _groupoid(doc: dict) -> FiniteGroupoid:
    comp = {}
    for a, b, ab in doc["comp"]:
        if (a, b) in comp:
            raise DocumentError(f"duplicate composite for ({a}, {b})")
        comp[a, b] = ab
    return FiniteGroupoid(doc["objects"], doc["arrows"], doc["src"], doc["tgt"], doc["id"], doc["inv"], comp)


def _internal(doc: dict) -> InternalGroupoid:
    sig = _signature(doc["signature"])
    gpd = _groupoid(doc["groupoid"])
    obj = FiniteAlgebra(sig, doc["object_algebra"]["size"], doc["object_algebra"]["tables"])
    arr = FiniteAlgebra(sig, doc["arrow_algebra"]["size"], doc["arrow_algebra"]["tables"])
    try:
        return InternalGroupoid(gpd, arr, obj)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def internal_from_doc(doc: dict) -> InternalGroupoid:
    _validate(doc, "internal")
    return _internal(doc)


def _base(doc: dict):
    return _internal(doc) if "signature" in doc else _groupoid(doc)


def base_from_doc(doc: dict):
    """An internal groupoid if the document carries a signature, else a plain groupoid."""
    if isinstance(doc, dict) and "signature" in doc:
        return internal_from_doc(doc)
    return groupoid_from_doc(doc)


def action_from_doc(doc: dict) -> GroupoidAction:
    _validate(doc, "action")
    base = _base(doc["base"])
    carrier = doc["carrier"]
    algebra = None
    if "tables" in carrier:
        if not isinstance(base, InternalGroupoid):
            raise DocumentError("carrier tables need an internal-groupoid base")
        algebra = FiniteAlgebra(base.sig, carrier["size"], carrier["tables"])
    phi = {}
    for a, g, b in doc["phi"]:
        if (a, g) in phi:
            raise DocumentError(f"duplicate action entry for ({a}, {g})")
        phi[a, g] = b
    return GroupoidAction(base, carrier["size"], doc["omega"], phi, algebra)


def cover_from_doc(doc: dict) -> CoveringOfInternal:
    _validate(doc, "cover")
    dom, cod = _base(doc["dom"]), _base(doc["cod"])
    p = GroupoidMorphism(underlying(dom), underlying(cod), doc["obj_map"], doc["arr_map"])
    return CoveringOfInternal(dom, cod, p)


LOADERS = {
    "algebra": algebra_from_doc,
    "groupoid": groupoid_from_doc,
    "internal": internal_from_doc,
    "action": action_from_doc,
    "cover": cover_from_doc,
}


def read_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not valid JSON ({exc})") from None


def load(path, kind: str):
    return LOADERS[kind](read_json(path))


def dumps(doc) -> str:
    return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path, doc) -> None:
    Path(path).write_text(dumps(doc))
