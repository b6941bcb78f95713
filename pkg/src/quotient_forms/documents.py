"""JSON ingestion and export for presentations, forms, and product tensors.

Ring elements travel as strings in the signed-monomial grammar documented
in `graded`; every emitted document re-parses to an equal value.
"""

from __future__ import annotations

from .errors import SchemaError
from .calculus import BaseProduct, ProductTensor
from .fields import PLocalIntegers, make_field
from .forms import BilinearForm, QuotientPresentation, make_quotient
from .graded import GradedRing, Generator, Truncation, parse_element


def _require(doc: dict, key: str, kind=None):
    if key not in doc:
        raise SchemaError(f"missing key {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"key {key!r} must be {kind.__name__}, got {type(value).__name__}")
    return value


def _base_from_document(doc: dict):
    p = _require(doc, "p", int)
    n = doc.get("n", 1)
    if doc.get("local"):
        return PLocalIntegers(p)
    return make_field(p, n)


def _base_to_document(base):
    if isinstance(base, PLocalIntegers):
        return {"p": base.p, "local": True}
    return {"p": base.p, "n": base.n}


def ring_from_document(doc: dict) -> GradedRing:
    base = _base_from_document(_require(doc, "base_field", dict))
    gens = []
    for g in _require(doc, "generators", list):
        gens.append(
            Generator(
                _require(g, "name", str),
                _require(g, "degree", int),
                bool(g.get("invertible", False)),
            )
        )
    trunc = doc.get("truncation")
    truncation = Truncation(_require(trunc, "max_degree", int)) if trunc else None
    return GradedRing(
        base,
        tuple(gens),
        truncation,
        bool(doc.get("infinite_tail", False)),
        doc.get("tail_min_degree"),
    )


def ring_to_document(ring: GradedRing) -> dict:
    doc = {
        "base_field": _base_to_document(ring.base),
        "generators": [
            {"name": g.name, "degree": g.degree, **({"invertible": True} if g.invertible else {})}
            for g in ring.generators
        ],
    }
    if ring.truncation:
        doc["truncation"] = {"max_degree": ring.truncation.max_degree}
    if ring.infinite_tail:
        doc["infinite_tail"] = True
        doc["tail_min_degree"] = ring.tail_min_degree
    return doc


def _parse_or_schema_error(ring, text):
    try:
        return parse_element(ring, text)
    except (ValueError, KeyError) as exc:
        raise SchemaError(f"cannot parse ring element {text!r}: {exc}") from exc


def form_entries_from_document(ring, degrees, entries_doc) -> BilinearForm:
    entries = {}
    for row in entries_doc:
        if not isinstance(row, (list, tuple)) or len(row) != 3:
            raise SchemaError("form entries must be [i, j, element-string] triples")
        i, j, text = row
        entries[(int(i), int(j))] = _parse_or_schema_error(ring, text)
    return BilinearForm(ring, degrees, entries)


def presentation_from_document(doc: dict):
    """Parse a presentation document into (QuotientPresentation, BaseProduct)."""
    if not isinstance(doc, dict):
        raise SchemaError("presentation document must be an object")
    ambient = ring_from_document(_require(doc, "ambient_ring", dict))
    coeffs = ring_from_document(_require(doc, "coefficient_ring", dict))
    sequence = []
    for s in _require(doc, "regular_sequence", list):
        sequence.append((_require(s, "name", str), _require(s, "degree", int)))
    pres = make_quotient(
        ambient,
        sequence,
        coeffs,
        sequence_has_tail=bool(doc.get("sequence_has_tail", False)),
        name=doc.get("name", ""),
    )
    bp_doc = doc.get("base_product") or {}
    b = form_entries_from_document(
        coeffs, pres.module_degrees, bp_doc.get("b_base", {}).get("entries", [])
    )
    base = BaseProduct(bp_doc.get("name", "mu"), b, bp_doc.get("note", ""))
    return pres, base


def presentation_to_document(pres: QuotientPresentation, base: BaseProduct) -> dict:
    return {
        "name": pres.name,
        "ambient_ring": ring_to_document(pres.ambient) if pres.ambient else None,
        "regular_sequence": [{"name": n, "degree": d} for n, d in pres.sequence],
        "coefficient_ring": ring_to_document(pres.coefficients),
        "sequence_has_tail": pres.sequence_has_tail,
        "base_product": {
            "name": base.name,
            "note": base.note,
            "b_base": base.form.to_json(),
        },
    }


def tensor_from_document(doc: dict, pres: QuotientPresentation, base: BaseProduct) -> ProductTensor:
    if not isinstance(doc, dict):
        raise SchemaError("tensor document must be an object")
    if doc.get("base", base.name) != base.name:
        raise SchemaError(
            f"tensor is relative to base {doc.get('base')!r}, expected {base.name!r}"
        )
    terms = {}
    for t in doc.get("terms", []):
        I = tuple(_require(t, "I", list))
        J = tuple(_require(t, "J", list))
        terms[(I, J)] = _parse_or_schema_error(pres.coefficients, _require(t, "w", str))
    return ProductTensor(pres, base, terms)


def form_from_document(doc: dict, pres: QuotientPresentation) -> BilinearForm:
    if not isinstance(doc, dict):
        raise SchemaError("form document must be an object")
    return form_entries_from_document(
        pres.coefficients, pres.module_degrees, _require(doc, "entries", list)
    )
