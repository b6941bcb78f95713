"""Acceptance criteria, one test per criterion, each timed and reported.

Every expected value here is exact; the timing bounds are generous
ceilings for the exhaustive parts.
"""

import random
import time

from quotient_forms import (
    act,
    census,
    characteristic_form,
    commutative_analysis,
    diagonalizability,
    enumerate_forms,
    equivalence,
    map_multiplicativity,
    multiplicative_twist_family,
    opposite,
    product_identity_42,
    pull_back,
    random_form,
    theta,
    verify_mult_equiv,
    witness_family,
)
from quotient_forms import Infinite, catalog, homogeneous_slice
from quotient_forms.classify import InfiniteFamily, equivalence_witness_search
from quotient_forms.calculus import subset_product_expansion
from quotient_forms.forms import congruence_diagonalize
from quotient_forms.suites import enumerate_unital_tensors


def _report(name, started, limit):
    elapsed = time.monotonic() - started
    print(f"[PASS] {name} ({elapsed:.2f}s, limit {limit}s)")
    assert elapsed < limit


def test_criterion_1_height_n_census():
    started = time.monotonic()
    for n in (1, 2, 3, 4):
        entry = catalog.get("K(n)", p=2, n=n)
        r = census(entry.presentation, entry.base_tensor())
        assert r.product_count == 2
        assert r.class_count == 2
        assert r.commutative_count == 0
        base = entry.base_tensor()
        twisted = act(entry.base.form, base)
        vn = entry.presentation.coefficients.gen(f"v_{n}")
        assert dict(twisted.terms) == {((n - 1,), (n - 1,)): vn}
        assert twisted == opposite(base)
        assert not equivalence(base, twisted).equivalent
    for p in (3, 5):
        for n in (1, 2, 3):
            entry = catalog.get("K(n)", p=p, n=n)
            r = census(entry.presentation, entry.base_tensor())
            assert r.product_count == 1
            assert r.commutative_count == 1
            assert characteristic_form(entry.base_tensor()).is_zero()
    _report("criterion 1: height-n census and opposite formula", started, 5)


def test_criterion_2_periodic_census():
    started = time.monotonic()
    for p, n in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)]:
        entry = catalog.get("K_n", p=p, n=n)
        r = census(entry.presentation, entry.base_tensor())
        q = p**n
        assert r.product_count == q ** (n * n)
        assert r.class_count == q ** (n * (n + 1) // 2)
        if p == 2:
            assert r.commutative_count == 0
        elif n == 1:
            assert r.commutative_count == 1
        else:
            assert r.commutative_count == q ** (n * (n - 1) // 2)
    # exhaustive cross-checks at the two smallest instances
    for p in (2, 3):
        entry = catalog.get("K_n", p=p, n=1)
        r = census(entry.presentation, entry.base_tensor())
        assert r.cross_checked
        assert r.product_count <= 10**4
    _report("criterion 2: 2-periodic census with enumeration cross-check", started, 60)


def test_criterion_3_orbit_oracle():
    started = time.monotonic()
    entry = catalog.get("toy", p=2)
    pres, base = entry.presentation, entry.base
    orbit = {act(beta, entry.base_tensor()) for beta in enumerate_forms(pres)}
    tensors = list(enumerate_unital_tensors(pres, base, index_bound=2))
    from quotient_forms import is_associative

    associative = {T for T in tensors if is_associative(T)}
    assert associative == orbit
    assert len(orbit) == 16 and len(tensors) == 32
    _report("criterion 3: associative tensors equal the orbit, both enumerated", started, 120)


def test_criterion_4_subset_product_identity():
    started = time.monotonic()
    for n in (1, 2, 3, 4):
        assert product_identity_42(n)
    # the plain-sign rendering of the identity deviates from n = 3 on; the
    # deviation is itself pinned down exactly (see the decisions ledger)
    assert product_identity_42(2, displayed_signs=True)
    assert not product_identity_42(3, displayed_signs=True)
    plain = subset_product_expansion(3, lambda k: 1 if (k - 1) % 2 == 0 else -1)
    assert plain[frozenset({0, 1, 2})] == -1
    _report("criterion 4: telescoping subset-product identity, n <= 4", started, 1)


def test_criterion_5_transformation_rules():
    started = time.monotonic()
    rng = random.Random(101)
    pools = [
        catalog.get("toy", p=2),
        catalog.get("toy", p=3),
        catalog.get("K_n", p=2, n=2),
        catalog.get("K_n", p=3, n=2),
        catalog.get("K(n)", p=2, n=2),
    ]
    from quotient_forms.calculus import twist_source, twist_target

    for k in range(200):
        entry = pools[k % len(pools)]
        pres = entry.presentation
        beta = random_form(pres, rng)
        T0 = act(random_form(pres, rng), entry.base_tensor())
        b0 = characteristic_form(T0)
        T1 = act(beta, T0)
        b1 = characteristic_form(T1)
        assert b1 == b0 - (beta + beta.transpose())
        assert b1.is_symmetric()
        To = opposite(T1)
        assert characteristic_form(To) == -b1
        assert opposite(To) == T1
        # the source/target relative rules compose to the absolute rule
        assert twist_target(twist_source(b0, beta), beta) == b1
    _report("criterion 5: transformation rules on 200 random twists", started, 10)


def test_criterion_6_equivalence_witnesses():
    started = time.monotonic()
    rng = random.Random(103)
    pools = [
        catalog.get("toy", p=2),
        catalog.get("toy", p=3),
        catalog.get("K_n", p=2, n=2),
        catalog.get("K_n", p=3, n=2),
    ]
    alternating = {
        entry.presentation.name: [
            b for b in enumerate_forms(entry.presentation) if b.is_alternating()
        ]
        for entry in pools
    }
    for k in range(50):
        entry = pools[k % len(pools)]
        pres = entry.presentation
        beta = rng.choice(alternating[pres.name])
        T = act(random_form(pres, rng), entry.base_tensor())
        assert verify_mult_equiv(theta(beta), T, act(beta, T))
    # exhaustive search: no witness intertwines a non-alternating twist
    toy = catalog.get("toy", p=2)
    u = toy.presentation.coefficients.gen("u")
    beta = toy.presentation.form({(0, 0): u})
    assert not beta.is_alternating() and beta.is_symmetric()
    found = equivalence_witness_search(toy.base_tensor(), act(beta, toy.base_tensor()))
    assert found is None
    _report("criterion 6: canonical witnesses and exhaustive non-existence", started, 60)


def test_criterion_7_non_diagonalizable_product():
    started = time.monotonic()
    entry = catalog.get("MU/J2@p=2")
    pres = entry.presentation
    x2, x3 = pres.coefficients.gen("x_2"), pres.coefficients.gen("x_3")
    bbar = pres.form({(0, 1): x2, (1, 0): x2, (1, 1): x3})
    # the graded congruence search exhausts every degree-valid invertible matrix
    res = congruence_diagonalize(bbar, mode="graded")
    assert res.status == "exhausted"
    # the degree-argument fast path fires (4 against 6)
    twisted = act(pres.form({(0, 1): x2}), entry.base_tensor())
    rep = diagonalizability(pres, twisted)
    assert rep.verdict == "not_diagonalizable"
    assert rep.method == "degree-argument"
    assert "4" in rep.detail and "6" in rep.detail
    assert rep.search_exhausted
    # the untwisted diagonal base is diagonalizable
    assert diagonalizability(pres, entry.base_tensor()).verdict == "diagonalizable"
    _report("criterion 7: graded search exhausted and degree argument fires", started, 30)


def test_criterion_8_tower_censuses_and_maps():
    started = time.monotonic()
    # mod-p tower at p = 2: no commutative product, boundary entry as the form
    for n in (1, 2):
        entry = catalog.get("P(n)", p=2, n=n)
        comm = commutative_analysis(entry.presentation, entry.base_tensor())
        assert comm.exists is False and comm.count == 0
        [(key, v)] = entry.base.form.entries
        assert key == (n - 1, n - 1)
        assert v == entry.presentation.coefficients.gen(f"v_{n}")
    # multiplicativity of the quotient map is the pulled-back vanishing
    data = catalog.bp_to_pn(2, 1)
    assert map_multiplicativity(data).multiplicative
    tgt = data.target
    checked = 0
    for i in range(tgt.m):
        for j in range(tgt.m):
            s = homogeneous_slice(tgt.coefficients, tgt.entry_degree(i, j))
            if isinstance(s, Infinite):
                continue
            for elem in s:
                if not elem:
                    continue
                gamma = tgt.form({(i, j): elem})
                assert (
                    map_multiplicativity(data, gamma=gamma).multiplicative
                    == pull_back(gamma, data.pibar, data.source.module_degrees).is_zero()
                )
                checked += 1
    assert checked > 10
    members, infinite, _ = multiplicative_twist_family(data)
    assert members and infinite
    # the base quotient: infinitely many products, windowed witness family
    bp = catalog.get("BP", p=3)
    r = census(bp.presentation, bp.base_tensor())
    assert isinstance(r.product_count, Infinite)
    fam = witness_family(bp.presentation)
    assert isinstance(fam, InfiniteFamily) and fam.members
    diag_members = catalog.bp_family_members(bp)
    assert diag_members  # the v_k-coefficient family, degree-valid in the window
    # commutative products: all equivalent on the window (flagged); spelled
    # out, every antisymmetric difference of commutative twists is alternating
    comm = commutative_analysis(bp.presentation, bp.base_tensor())
    assert comm.exists and comm.class_count == 1
    assert r.flags["window_only"]
    pres = bp.presentation
    ring = pres.coefficients
    v1 = ring.gen("v_1")
    twists = []
    for value in (v1**3, v1**3 + v1**3, (v1**3).scale(2)):
        beta = pres.form({(0, 2): value}) - pres.form({(2, 0): value})
        assert beta.is_antisymmetric()
        assert characteristic_form(act(beta, bp.base_tensor())).is_zero()
        twists.append(beta)
    for a in twists:
        for b in twists:
            assert (a - b).is_alternating()
    _report("criterion 8: tower censuses, map criterion, witness families", started, 30)


def test_criterion_9_char2_image_property():
    started = time.monotonic()
    toy = catalog.get("toy", p=2)
    base_tensor = toy.base_tensor()
    forms = list(enumerate_forms(toy.presentation))
    image = {characteristic_form(act(b, base_tensor)) for b in forms}
    alternating = {b for b in forms if b.is_alternating()}
    assert image == alternating
    _report("criterion 9: characteristic forms sweep the alternating subgroup", started, 60)
