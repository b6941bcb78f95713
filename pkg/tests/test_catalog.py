import pytest

from quotient_forms import UnsupportedParams, bil_space, classify_form
from quotient_forms import catalog
from quotient_forms.documents import (
    presentation_from_document,
    presentation_to_document,
    tensor_from_document,
)


def test_get_by_spec_name_and_alias():
    a = catalog.get("K(n)", p=2, n=2)
    b = catalog.get("kn", p=2, n=2)
    assert a.presentation == b.presentation
    with pytest.raises(UnsupportedParams):
        catalog.get("nowhere")
    with pytest.raises(UnsupportedParams):
        catalog.get("K(n)", p=2, n=9)


def test_base_forms_are_symmetric_and_degree_valid():
    entries = [
        catalog.get("K(n)", p=2, n=2),
        catalog.get("K(n)", p=3, n=2),
        catalog.get("K_n", p=2, n=3),
        catalog.get("P(n)", p=2, n=1),
        catalog.get("BP", p=3),
        catalog.get("MU/J2@p=2"),
        catalog.get("HFp", p=2),
        catalog.get("toy", p=3),
    ]
    for entry in entries:
        flags = classify_form(entry.base.form)
        assert flags.symmetric
        for (i, j), v in entry.base.form.entries:
            assert i == j  # catalog bases are diagonal
            assert v.degree() == entry.presentation.entry_degree(i, j)


def test_degree_bookkeeping_forces_odd_p_triviality():
    # the boundary entry degree equals the periodicity degree exactly at p = 2
    for p in (2, 3, 5):
        for n in (1, 2, 3):
            entry = catalog.get("K(n)", p=p, n=n)
            pres = entry.presentation
            vn_degree = 2 * (p**n - 1)
            boundary = pres.entry_degree(n - 1, n - 1)
            assert (boundary == vn_degree) == (p == 2)
            assert bil_space(pres).cardinality == (2 if p == 2 else 1)


def test_kn_entry_matches_frozen_degrees():
    entry = catalog.get("K(n)", p=2, n=2)
    b = entry.base.form
    [(key, v)] = b.entries
    assert key == (1, 1)
    assert v.degree() == 6  # the invertible generator of the coefficient ring


def test_pn_entry_p2_base_form():
    for n in (1, 2):
        entry = catalog.get("P(n)", p=2, n=n)
        [(key, v)] = entry.base.form.entries
        assert key == (n - 1, n - 1)
        assert v == entry.presentation.coefficients.gen(f"v_{n}")


def test_mu_j2_matrix():
    entry = catalog.get("MU/J2@p=2")
    pres = entry.presentation
    assert pres.sequence == (("w_0", 0), ("w_1", 2))
    assert entry.base.form.entry(1, 1) == pres.coefficients.gen("x_3")
    assert entry.base.form.entry(0, 0).is_zero()


def test_reproduce_sections_all_pass():
    for section in catalog.SECTIONS:
        report = catalog.reproduce(section)
        failing = [c for c in report.checks if not c.passed]
        assert not failing, f"{section}: {[(c.name, c.expected, c.computed) for c in failing]}"


def test_reproduce_is_deterministic():
    a = catalog.reproduce("kn-census").to_json()
    b = catalog.reproduce("kn-census").to_json()
    assert a == b
    with pytest.raises(UnsupportedParams):
        catalog.reproduce("prop-unknown")


def test_bp_family_members_are_degree_valid():
    for p in (2, 3):
        entry = catalog.get("BP", p=p)
        members = catalog.bp_family_members(entry)
        assert members
        for k, form in members:
            for (i, j), v in form.entries:
                assert v.degree() == entry.presentation.entry_degree(i, j)
                assert v == entry.presentation.coefficients.gen(f"v_{k}")


def test_document_round_trip():
    for name, kw in [
        ("K(n)", dict(p=2, n=2)),
        ("K_n", dict(p=3, n=2)),
        ("MU/J2@p=2", {}),
        ("toy", dict(p=2)),
    ]:
        entry = catalog.get(name, **kw)
        doc = presentation_to_document(entry.presentation, entry.base)
        pres2, base2 = presentation_from_document(doc)
        assert pres2 == entry.presentation
        assert base2.form == entry.base.form
        tdoc = entry.base_tensor().to_json()
        assert tensor_from_document(tdoc, pres2, base2) == entry.base_tensor()
