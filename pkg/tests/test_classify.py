import random

import pytest

from quotient_forms import (
    DifferentBase,
    Infinite,
    NotSmooth,
    act,
    census,
    characteristic_form,
    commutative_analysis,
    diagonalizability,
    enumerate_forms,
    enumerate_products,
    equivalence,
    map_multiplicativity,
    multiplicative_twist_family,
    pull_back,
    random_form,
    witness_family,
)
from quotient_forms import catalog
from quotient_forms.classify import InfiniteFamily, MapData


def test_enumerate_products_counts():
    one = catalog.get("K(n)", p=3, n=1)
    assert len(enumerate_products(one.presentation, one.base_tensor())) == 1
    for n in (1, 2, 3, 4):
        two = catalog.get("K(n)", p=2, n=n)
        products = enumerate_products(two.presentation, two.base_tensor())
        assert len(products) == 2
    bp = catalog.get("BP", p=3)
    fam = enumerate_products(bp.presentation, bp.base_tensor())
    assert isinstance(fam, InfiniteFamily)
    assert fam.members  # pairwise-distinct forms materialized in the window
    assert len({str(m) for m in fam.members}) == len(fam.members)


def test_census_periodic_formulas_and_cross_checks():
    for p, n in [(2, 1), (3, 1), (2, 2), (3, 2)]:
        entry = catalog.get("K_n", p=p, n=n)
        r = census(entry.presentation, entry.base_tensor())
        q = p**n
        assert r.product_count == q ** (n * n)
        assert r.class_count == q ** (n * (n + 1) // 2)
        assert r.cross_checked
        if p == 2:
            assert r.commutative_count == 0
        elif n == 1:
            assert r.commutative_count == 1
        else:
            assert r.commutative_count == q ** (n * (n - 1) // 2)
        assert r.class_count * r.alt_count == r.bil_count


def test_census_small_values_frozen():
    # (2,1): two products, two classes, none commutative
    r21 = census(*_pres_base("K_n", p=2, n=1))
    assert (r21.product_count, r21.class_count, r21.commutative_count) == (2, 2, 0)
    # (3,1): three products, three classes, one commutative
    r31 = census(*_pres_base("K_n", p=3, n=1))
    assert (r31.product_count, r31.class_count, r31.commutative_count) == (3, 3, 1)


def _pres_base(name, **kw):
    entry = catalog.get(name, **kw)
    return entry.presentation, entry.base_tensor()


def test_census_formula_path_at_3_3():
    entry = catalog.get("K_n", p=3, n=3)
    r = census(entry.presentation, entry.base_tensor())
    assert r.product_count == 27**9
    assert r.class_count == 27**6
    assert r.commutative_count == 27**3
    assert not r.cross_checked  # beyond the enumeration bound


def test_commutative_analysis_branches():
    # odd characteristic: half the base form is the witness
    odd = catalog.get("K_n", p=3, n=2)
    rep = commutative_analysis(odd.presentation, odd.base_tensor())
    assert rep.exists and rep.witness is not None
    assert rep.count == 9
    # the commutative products form the antisymmetric coset through the witness
    comm = [
        b
        for b in enumerate_forms(odd.presentation)
        if characteristic_form(act(b, odd.base_tensor())).is_zero()
    ]
    assert len(comm) == 9
    diffs = {str(a - comm[0]) for a in comm}
    asym = {str(b) for b in enumerate_forms(odd.presentation) if b.is_antisymmetric()}
    assert diffs == asym
    # characteristic two with a non-alternating base form: nothing commutative
    even = catalog.get("K_n", p=2, n=2)
    rep2 = commutative_analysis(even.presentation, even.base_tensor())
    assert rep2.exists is False and rep2.count == 0
    # commutative base: witness is the zero form
    toy = catalog.get("toy", p=2)
    rep3 = commutative_analysis(toy.presentation, toy.base_tensor())
    assert rep3.exists and rep3.witness.is_zero()


def test_char2_image_of_characteristic_forms():
    # with a commutative base over characteristic 2, the forms of the whole
    # orbit sweep out exactly the alternating subgroup
    toy = catalog.get("toy", p=2)
    base_tensor = toy.base_tensor()
    forms = list(enumerate_forms(toy.presentation))
    image = {characteristic_form(act(b, base_tensor)) for b in forms}
    alternating = {b for b in forms if b.is_alternating()}
    assert image == alternating


def test_equivalence_reports():
    entry = catalog.get("K(n)", p=2, n=2)
    base_tensor = entry.base_tensor()
    rep = equivalence(base_tensor, base_tensor)
    assert rep.equivalent and not rep.witness.terms[1:]  # witness is the identity
    other = act(entry.base.form, base_tensor)
    rep2 = equivalence(base_tensor, other)
    assert not rep2.equivalent
    # an alternating difference produces a verified witness
    toy = catalog.get("toy", p=3)
    u = toy.presentation.coefficients.gen("u")
    alt = toy.presentation.form({(0, 1): u, (1, 0): -u})
    T1 = toy.base_tensor()
    rep3 = equivalence(T1, act(alt, T1))
    assert rep3.equivalent and rep3.verified
    with pytest.raises(DifferentBase):
        equivalence(base_tensor, toy.base_tensor())


def test_equivalence_is_an_equivalence_relation():
    toy = catalog.get("toy", p=2)
    base_tensor = toy.base_tensor()
    rng = random.Random(51)
    tensors = [act(random_form(toy.presentation, rng), base_tensor) for _ in range(6)]
    for a in tensors:
        assert equivalence(a, a).equivalent
        for b in tensors:
            ab = equivalence(a, b)
            assert ab.equivalent == equivalence(b, a).equivalent
            for c in tensors:
                if ab.equivalent and equivalence(b, c).equivalent:
                    assert equivalence(a, c).equivalent


def test_diagonalizability_detailed():
    # any product on the 2-periodic theories
    for p, n in [(2, 1), (2, 2), (3, 1)]:
        entry = catalog.get("K_n", p=p, n=n)
        base_tensor = entry.base_tensor()
        for b in enumerate_forms(entry.presentation):
            rep = diagonalizability(entry.presentation, act(b, base_tensor))
            assert rep.verdict == "diagonalizable"
    # the non-diagonalizable cobordism product, with both negative facts
    mu = catalog.get("MU/J2@p=2")
    x2 = mu.presentation.coefficients.gen("x_2")
    twisted = act(mu.presentation.form({(0, 1): x2}), mu.base_tensor())
    rep = diagonalizability(mu.presentation, twisted)
    assert rep.verdict == "not_diagonalizable"
    assert rep.method == "degree-argument"
    assert rep.search_exhausted
    # the diagonal base and the commutative case
    assert diagonalizability(mu.presentation, mu.base_tensor()).verdict == "diagonalizable"
    toy = catalog.get("toy", p=2)
    assert diagonalizability(toy.presentation, toy.base_tensor()).verdict == "diagonalizable"


def test_diagonalizability_invariant_under_equivalence():
    # equivalent products share their characteristic form, hence the verdict
    toy = catalog.get("toy", p=2)
    base_tensor = toy.base_tensor()
    forms = list(enumerate_forms(toy.presentation))
    alternating = [b for b in forms if b.is_alternating()]
    rng = random.Random(57)
    for _ in range(8):
        T = act(rng.choice(forms), base_tensor)
        v1 = diagonalizability(toy.presentation, T).verdict
        T2 = act(rng.choice(alternating), T)
        assert equivalence(T, T2).equivalent
        assert diagonalizability(toy.presentation, T2).verdict == v1
        assert characteristic_form(T) == characteristic_form(T2)


def test_map_multiplicativity_identity_map():
    entry = catalog.get("K_n", p=3, n=2)
    pres = entry.presentation
    ring = pres.coefficients
    one, zero = ring.one(), ring.zero()
    ident = tuple(
        tuple(one if i == j else zero for j in range(pres.m)) for i in range(pres.m)
    )
    from quotient_forms import RingMap

    data = MapData(
        source=pres,
        target=pres,
        pibar=ident,
        coefficient_map=RingMap(ring, ring, tuple(ring.gen(g.name) for g in ring.generators)),
        b_source=entry.base.form,
        b_target=entry.base.form,
        b_relative=entry.base.form,
    )
    rep = map_multiplicativity(data)
    assert rep.smooth and rep.multiplicative


def test_bp_to_pn_criterion():
    # odd primes need a wider window before an obstructing twist materializes
    for p, n, xw in [(2, 1, 2), (3, 1, 3), (2, 2, 2)]:
        data = catalog.bp_to_pn(p, n, xwindow=xw)
        assert map_multiplicativity(data).multiplicative
        tgt = data.target
        # a twist supported on the surviving block keeps multiplicativity
        comm_twists = 0
        breaking = 0
        from quotient_forms import homogeneous_slice

        for i in range(tgt.m):
            for j in range(tgt.m):
                s = homogeneous_slice(tgt.coefficients, tgt.entry_degree(i, j))
                if isinstance(s, Infinite):
                    continue
                for elem in s:
                    if not elem:
                        continue
                    gamma = tgt.form({(i, j): elem})
                    verdict = map_multiplicativity(data, gamma=gamma).multiplicative
                    pulled = pull_back(gamma, data.pibar, data.source.module_degrees)
                    assert verdict == pulled.is_zero()
                    if verdict:
                        comm_twists += 1
                    else:
                        breaking += 1
        assert comm_twists and breaking  # both behaviors genuinely exercised
        members, infinite, _ = multiplicative_twist_family(data)
        assert members and infinite


def test_map_verdict_invariant_under_compatible_twists():
    # shifting the source twist by delta and the target twist by a lift of it
    # does not change the verdict
    data = catalog.bp_to_pn(2, 1)
    src, tgt = data.source, data.target
    v1s = src.coefficients.gen("v_1")
    delta = src.form({(0, 0): v1s**5})
    # the compatible target lift places the same values on the image rows
    v1t = tgt.coefficients.gen("v_1")
    delta_lift = tgt.form({(1, 1): v1t**5})
    from quotient_forms import base_change

    assert pull_back(delta_lift, data.pibar, src.module_degrees) == base_change(
        data.coefficient_map, delta
    )
    for gamma_entry in [None, (1, 2)]:
        gamma = tgt.zero_form()
        if gamma_entry:
            lead = tgt.coefficients.gen("v_3")
            gamma = tgt.form({gamma_entry: lead})
        before = map_multiplicativity(data, beta=src.zero_form(), gamma=gamma)
        after = map_multiplicativity(data, beta=delta, gamma=gamma + delta_lift)
        assert before.multiplicative == after.multiplicative


def test_not_smooth_raises():
    data = catalog.bp_to_pn(2, 1)
    zero = data.target.coefficients.zero()
    dead = tuple(tuple(zero for _ in range(data.source.m)) for _ in range(data.target.m))
    broken = MapData(
        source=data.source,
        target=data.target,
        pibar=dead,
        coefficient_map=data.coefficient_map,
        b_source=data.b_source,
        b_target=data.b_target,
        b_relative=data.b_relative,
    )
    with pytest.raises(NotSmooth):
        map_multiplicativity(broken)


def test_census_lattice_identities():
    for name, kw in [("K_n", dict(p=2, n=1)), ("K_n", dict(p=3, n=1)), ("K_n", dict(p=2, n=2))]:
        entry = catalog.get(name, **kw)
        r = census(entry.presentation, entry.base_tensor())
        assert r.class_count * r.alt_count == r.bil_count
        if r.commutative_count:
            assert r.commutative_class_count * r.alt_count == r.asym_count


def test_witness_family_for_infinite_spaces():
    bp = catalog.get("BP", p=3)
    fam = witness_family(bp.presentation)
    assert fam is not None and fam.members
    for member in fam.members:
        for _, v in member.entries:
            assert v.is_homogeneous()
    toy = catalog.get("toy", p=2)
    assert witness_family(toy.presentation) is None
