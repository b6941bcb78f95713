"""Command-line driver: censuses, verification suites, and file-driven ops.

Exit codes: 0 success, 1 a verification check failed, 2 input/schema error,
3 unsupported parameters, 4 tensor outside the product orbit, 5 the
smoothness hypothesis fails.  With --json a single document goes to
stdout; human diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, suites
from .errors import (
    NotAProduct,
    NotSmooth,
    QuotientFormsError,
    SchemaError,
    UnsupportedParams,
)
from .calculus import act, opposite
from .classify import census, diagonalizability, equivalence, map_multiplicativity
from .documents import (
    form_from_document,
    presentation_from_document,
    tensor_from_document,
)

ELEMENT_GRAMMAR = (
    "ring elements: signed monomials joined by '+'/'-', each a '*'-separated "
    "product of an optional coefficient (integer, fraction a/b, or a "
    "parenthesized t-polynomial over an extension field) and powers name^k"
)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc


def _resolve_instance(args):
    if getattr(args, "input", None):
        pres, base = presentation_from_document(_load_json(args.input))
        return pres, base
    if getattr(args, "spectrum", None):
        params = {}
        if args.p is not None:
            params["p"] = args.p
        if args.n is not None:
            params["n"] = args.n
        if getattr(args, "window", None) is not None:
            params["window"] = args.window
        entry = catalog.get(args.spectrum, **params)
        return entry.presentation, entry.base
    raise SchemaError("either --spectrum or --input is required")


def _emit(args, document, text_lines):
    if args.json:
        json.dump(document, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for line in text_lines:
            print(line)


def cmd_census(args):
    pres, base = _resolve_instance(args)
    from .calculus import identity_tensor

    report = census(pres, identity_tensor(pres, base), instance=pres.name)
    doc = report.to_json()
    doc["formula_note"] = (
        "counts are exact cardinalities; exponent formulas follow the "
        "cardinality reading (size of the coefficient field raised to the "
        "number of free matrix entries), cross-checked by enumeration on "
        "small instances"
    )
    lines = [
        f"instance: {report.instance}",
        f"bilinear forms: {_fmt(report.bil_count)}",
        f"products: {_fmt(report.product_count)}",
        f"equivalence classes: {_fmt(report.class_count)}",
        f"commutative products: {_fmt(report.commutative_count)}",
        f"commutative classes: {_fmt(report.commutative_class_count)}",
        f"flags: {report.flags}",
    ]
    lines += [f"note: {n}" for n in report.notes]
    lines.append(f"note: {doc['formula_note']}")
    _emit(args, doc, lines)
    return 0


def _fmt(v):
    from .graded import Infinite

    if v is None:
        return "unknown"
    if isinstance(v, Infinite):
        return f"infinite ({v.witness})"
    return str(v)


def cmd_verify(args):
    rows = suites.run_suite(args.suite)
    doc = {
        "suite": args.suite,
        "checks": [
            {"name": r.name, "passed": r.passed, **({"detail": r.detail} if r.detail else {})}
            for r in rows
        ],
        "passed": all(r.passed for r in rows),
    }
    lines = [
        f"[{'PASS' if r.passed else 'FAIL'}] {r.name}" + (f" ({r.detail})" if r.detail else "")
        for r in rows
    ]
    lines.append(f"suite {args.suite}: {'PASS' if doc['passed'] else 'FAIL'}")
    _emit(args, doc, lines)
    return 0 if doc["passed"] else 1


def cmd_act(args):
    pres, base = _resolve_instance(args)
    from .calculus import identity_tensor

    T = identity_tensor(pres, base)
    if args.tensor:
        T = tensor_from_document(_load_json(args.tensor), pres, base)
    beta = form_from_document(_load_json(args.form), pres)
    result = act(beta, T)
    _emit(args, result.to_json(), [str(result)])
    return 0


def cmd_opposite(args):
    pres, base = _resolve_instance(args)
    from .calculus import identity_tensor

    T = identity_tensor(pres, base)
    if args.tensor:
        T = tensor_from_document(_load_json(args.tensor), pres, base)
    result = opposite(T)
    _emit(args, result.to_json(), [str(result)])
    return 0


def cmd_equiv(args):
    pres, base = _resolve_instance(args)
    T1 = tensor_from_document(_load_json(args.t1), pres, base)
    T2 = tensor_from_document(_load_json(args.t2), pres, base)
    rep = equivalence(T1, T2)
    doc = {
        "equivalent": rep.equivalent,
        "difference": rep.difference.to_json(),
        "witness_verified": rep.verified,
    }
    if rep.witness is not None:
        doc["witness"] = str(rep.witness)
    _emit(args, doc, [f"equivalent: {rep.equivalent}"])
    return 0


def cmd_diag(args):
    pres, base = _resolve_instance(args)
    from .calculus import identity_tensor

    T = identity_tensor(pres, base)
    if args.tensor:
        T = tensor_from_document(_load_json(args.tensor), pres, base)
    rep = diagonalizability(pres, T)
    doc = {
        "verdict": rep.verdict,
        "method": rep.method,
        "detail": rep.detail,
        "search_exhausted": rep.search_exhausted,
    }
    if rep.transform is not None:
        doc["transform"] = [[str(x) for x in row] for row in rep.transform]
    _emit(args, doc, [f"verdict: {rep.verdict} ({rep.method})"])
    return 0


def cmd_map(args):
    doc = _load_json(args.input)
    if not isinstance(doc, dict) or "map" not in doc:
        raise SchemaError("map documents carry a 'map' key naming a catalog pair")
    spec = doc["map"]
    if spec != "bp-to-pn":
        raise UnsupportedParams(f"unknown map {spec!r} (available: bp-to-pn)")
    data = catalog.bp_to_pn(int(doc.get("p", 2)), int(doc.get("n", 1)))
    gamma = None
    if "target_twist" in doc:
        gamma = form_from_document(doc["target_twist"], data.target)
    beta = None
    if "source_twist" in doc:
        beta = form_from_document(doc["source_twist"], data.source)
    rep = map_multiplicativity(data, beta=beta, gamma=gamma)
    out = {"smooth": rep.smooth, "multiplicative": rep.multiplicative, "detail": rep.detail}
    _emit(args, out, [f"smooth: {rep.smooth}", f"multiplicative: {rep.multiplicative}"])
    return 0


def _add_instance_args(sub, need_form=False, need_tensor=False):
    sub.add_argument("--spectrum", help="catalog instance (kn, k2per, pn, bp, mu-j2, hfp, toy)")
    sub.add_argument("--p", type=int, default=None)
    sub.add_argument("--n", type=int, default=None)
    sub.add_argument("--window", type=int, default=None)
    sub.add_argument("--input", help="presentation document (JSON)")
    if need_tensor:
        sub.add_argument("--tensor", help="product tensor document (JSON)")
    if need_form:
        sub.add_argument("--form", required=True, help="bilinear form document (JSON)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quotient-forms",
        description="classify products on regular quotient rings",
        epilog=ELEMENT_GRAMMAR,
    )
    parser.add_argument("--json", action="store_true", help="emit a single JSON document")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", help="count products, classes, and commutative products")
    _add_instance_args(c)
    c.set_defaults(func=cmd_census)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument(
        "--suite",
        required=True,
        choices=sorted(suites.SUITES),
    )
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("act", help="apply a bilinear form to a product tensor")
    _add_instance_args(a, need_form=True, need_tensor=True)
    a.set_defaults(func=cmd_act)

    o = sub.add_parser("opposite", help="the opposite product")
    _add_instance_args(o, need_tensor=True)
    o.set_defaults(func=cmd_opposite)

    e = sub.add_parser("equiv", help="decide equivalence of two tensors")
    _add_instance_args(e)
    e.add_argument("--t1", required=True)
    e.add_argument("--t2", required=True)
    e.set_defaults(func=cmd_equiv)

    d = sub.add_parser("diag", help="diagonalizability verdict")
    _add_instance_args(d, need_tensor=True)
    d.set_defaults(func=cmd_diag)

    m = sub.add_parser("map", help="multiplicativity of a quotient map")
    m.add_argument("--input", required=True, help="map document (JSON)")
    m.set_defaults(func=cmd_map)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedParams as exc:
        print(f"unsupported parameters: {exc}", file=sys.stderr)
        return 3
    except NotAProduct as exc:
        print(f"not a product: {exc}", file=sys.stderr)
        return 4
    except NotSmooth as exc:
        print(f"not smooth: {exc}", file=sys.stderr)
        return 5
    except QuotientFormsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
