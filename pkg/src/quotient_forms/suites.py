"""Named verification suites: symbolic identities, the orbit oracle, the
transformation rules, and the catalog reproductions.

Each suite returns a list of (name, passed, detail) rows; the CLI renders
them and the acceptance tests assert on them.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import catalog
from .calculus import (
    EndoElement,
    LambdaTensor,
    act,
    characteristic_form,
    characteristic_form_from_model,
    is_associative,
    lambda_multiply,
    opposite,
    product_identity_42,
    single_twist_brackets,
    theta,
    theta_inverse,
    verify_mult_equiv,
)
from .forms import enumerate_forms, random_form
from .graded import Infinite, homogeneous_slice


@dataclass
class CheckRow:
    name: str
    passed: bool
    detail: str = ""


def _row(name, passed, detail=""):
    return CheckRow(name, bool(passed), detail)


def _toy(p=2):
    entry = catalog.get("toy", p=p)
    return entry.presentation, entry.base, entry.base_tensor()


def suite_identities() -> list[CheckRow]:
    rows = []
    for n in range(1, 5):
        rows.append(_row(f"subset-product identity n={n}", product_identity_42(n)))
    # the plain-sign variant is only an identity for up to two symbols
    rows.append(
        _row(
            "plain-sign variant deviates from three symbols on",
            product_identity_42(1, displayed_signs=True)
            and product_identity_42(2, displayed_signs=True)
            and not product_identity_42(3, displayed_signs=True),
            "factor coefficients need the (k-1)! correction",
        )
    )
    # anticommutation and square-zero, over an odd-characteristic instance
    pres, base, _ = _toy(p=3)
    ring = pres.coefficients
    one = ring.one()
    qi = EndoElement.single(ring, ((0,),), one)
    qj = EndoElement.single(ring, ((1,),), one)
    rows.append(_row("square-zero", not qi.compose(qi)))
    rows.append(
        _row("anticommutation", not (qi.compose(qj) + qj.compose(qi)))
    )
    # both associativity composites of a single twist agree, including the
    # sign of the nested cross term
    u = ring.gen("u")
    left, right = single_twist_brackets(ring, u, 0, 1)
    rows.append(_row("single-twist brackets agree", left == right))
    cross = dict(left.terms).get(((0,), (0, 1), (1,)))
    rows.append(
        _row(
            "nested cross term carries the negative sign",
            cross is not None and cross == -(u * u),
        )
    )
    # calibration: unit law, model-extracted form, symmetry
    rng = random.Random(7)
    for p in (2, 3):
        pres, base, base_tensor = _toy(p)
        ring = pres.coefficients
        ok_unit = True
        ok_model = True
        ok_sym = True
        for _ in range(10):
            beta = random_form(pres, rng)
            T = act(beta, base_tensor)
            onel = LambdaTensor.unit(ring)
            for A in [(), (0,), (1,), (0, 1)]:
                mono = LambdaTensor.monomial(ring, A)
                ok_unit &= lambda_multiply(T, onel, mono) == mono
                ok_unit &= lambda_multiply(T, mono, onel) == mono
            b1 = characteristic_form(T)
            b2 = characteristic_form_from_model(T)
            ok_model &= b1 == b2
            ok_sym &= b1.is_symmetric()
        rows.append(_row(f"unit law on the model (p={p})", ok_unit))
        rows.append(_row(f"model form extraction agrees (p={p})", ok_model))
        rows.append(_row(f"characteristic forms symmetric (p={p})", ok_sym))
    # same calibration on an instance with a nonzero base form
    entry = catalog.get("K(n)", p=2, n=2)
    T = act(entry.base.form, entry.base_tensor())
    rows.append(
        _row(
            "model form extraction agrees (nonzero base form)",
            characteristic_form(T) == characteristic_form_from_model(T),
        )
    )
    return rows


def enumerate_unital_tensors(pres, base, index_bound=2):
    """Every degree-0 unital tensor with multi-indexes up to the bound."""
    ring = pres.coefficients
    degs = pres.module_degrees
    words = []
    for size in range(1, index_bound + 1):
        words.extend(itertools.combinations(range(pres.m), size))
    keys = [(I, J) for I in words for J in words]
    pools = []
    for I, J in keys:
        d = sum(degs[i] for i in I) + sum(degs[j] for j in J)
        s = homogeneous_slice(ring, d)
        if isinstance(s, Infinite):
            raise ValueError("tensor space not enumerable")
        pools.append(list(s))
    from .calculus import ProductTensor

    for combo in itertools.product(*pools):
        terms = {k: v for k, v in zip(keys, combo) if v}
        yield ProductTensor(pres, base, terms)


def suite_orbit_oracle() -> list[CheckRow]:
    """On the two-generator instance the associative unital degree-0 tensors
    are exactly the orbit of the base product: both sides enumerated."""
    rows = []
    for p, expected_orbit in ((2, 16), (3, 81)):
        pres, base, base_tensor = _toy(p)
        orbit = {act(beta, base_tensor) for beta in enumerate_forms(pres)}
        tensors = list(enumerate_unital_tensors(pres, base, index_bound=2))
        associative = {T for T in tensors if is_associative(T)}
        rows.append(_row(f"p={p}: every orbit member is associative", orbit <= associative))
        rows.append(
            _row(
                f"p={p}: every associative tensor lies in the orbit",
                associative <= orbit,
                f"{len(associative)} associative of {len(tensors)} enumerated",
            )
        )
        rows.append(_row(f"p={p}: the two sets coincide", associative == orbit))
        rows.append(
            _row(f"p={p}: orbit size matches the form count", len(orbit) == expected_orbit)
        )
    return rows


def suite_transforms(sample=200) -> list[CheckRow]:
    rows = []
    rng = random.Random(11)
    instances = [
        catalog.get("toy", p=2),
        catalog.get("toy", p=3),
        catalog.get("K_n", p=2, n=2),
        catalog.get("K_n", p=3, n=2),
        catalog.get("K(n)", p=2, n=2),
    ]
    ok_rule = ok_sym = ok_op = True
    for k in range(sample):
        entry = instances[k % len(instances)]
        pres = entry.presentation
        base_tensor = entry.base_tensor()
        beta = random_form(pres, rng)
        T0 = act(random_form(pres, rng), base_tensor)
        T = act(beta, T0)
        b0 = characteristic_form(T0)
        b1 = characteristic_form(T)
        ok_rule &= b1 == b0 - (beta + beta.transpose())
        ok_sym &= b1.is_symmetric()
        To = opposite(T)
        ok_op &= characteristic_form(To) == -b1
        ok_op &= opposite(To) == T
    rows.append(_row("form transformation under the action", ok_rule))
    rows.append(_row("characteristic forms symmetric", ok_sym))
    rows.append(_row("opposite flips the form and involutes", ok_op))
    # the two-step relative chain reproduces the absolute rule
    from .calculus import twist_source, twist_target

    entry = catalog.get("K_n", p=3, n=2)
    pres = entry.presentation
    b = entry.base.form
    ok_chain = True
    for _ in range(20):
        beta = random_form(pres, rng)
        chained = twist_target(twist_source(b, beta), beta)
        ok_chain &= chained == b - (beta + beta.transpose())
    rows.append(_row("relative rules compose to the absolute rule", ok_chain))
    # diagonal vanishing forced by the opposite pair along each rank-one map
    entry = catalog.get("toy", p=3)
    pres = entry.presentation
    ok_diag = True
    for _ in range(20):
        beta = random_form(pres, rng)
        for i in range(pres.m):
            one = pres.coefficients.one()
            col = tuple(
                (one,) if k == i else (pres.coefficients.zero(),) for k in range(pres.m)
            )
            from .forms import pull_back

            pulled = pull_back(beta.transpose(), col, (pres.module_degrees[i],))
            expect_zero = beta.entry(i, i).is_zero()
            ok_diag &= pulled.is_zero() == expect_zero
    rows.append(_row("rank-one restriction sees exactly the diagonal", ok_diag))
    return rows


def suite_equivalences(alternating_samples=50) -> list[CheckRow]:
    rows = []
    rng = random.Random(13)
    pools = [
        catalog.get("toy", p=2),
        catalog.get("toy", p=3),
        catalog.get("K_n", p=2, n=2),
        catalog.get("K_n", p=3, n=2),
    ]
    alternating = {
        id(entry): [b for b in enumerate_forms(entry.presentation) if b.is_alternating()]
        for entry in pools
    }
    ok_theta = True
    for k in range(alternating_samples):
        entry = pools[k % len(pools)]
        pres = entry.presentation
        beta = rng.choice(alternating[id(entry)])
        T = act(random_form(pres, rng), entry.base_tensor())
        f = theta(beta)
        ok_theta &= verify_mult_equiv(f, T, act(beta, T))
        ok_theta &= not (f.compose(theta_inverse(beta)) - EndoElement.identity(pres.coefficients, 1))
    rows.append(_row("canonical witnesses verify", ok_theta))
    # no witness at all for a symmetric non-alternating twist
    from .classify import equivalence_witness_search

    pres, base, base_tensor = _toy(p=2)
    u = pres.coefficients.gen("u")
    beta = pres.form({(0, 0): u})
    found = equivalence_witness_search(base_tensor, act(beta, base_tensor))
    rows.append(_row("no witness for a non-alternating twist", found is None))
    return rows


def suite_sec8() -> list[CheckRow]:
    rows = []
    for report in catalog.reproduce_all():
        for c in report.checks:
            rows.append(
                _row(
                    f"{report.section}: {c.name}",
                    c.passed,
                    "" if c.passed else f"expected {c.expected}, got {c.computed}",
                )
            )
    return rows


SUITES = {
    "identities": suite_identities,
    "orbit-oracle": suite_orbit_oracle,
    "transforms": suite_transforms,
    "equivalences": suite_equivalences,
    "sec8": suite_sec8,
}


def run_suite(name: str) -> list[CheckRow]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {sorted(SUITES)}")
    return SUITES[name]()
