import json

import pytest

from quotient_forms import catalog
from quotient_forms.cli import main


@pytest.fixture
def capjson(capsys):
    def run(argv):
        code = main(argv)
        out = capsys.readouterr().out
        return code, json.loads(out) if out.strip() else None

    return run


def test_census_kn(capjson):
    code, doc = capjson(["--json", "census", "--spectrum", "kn", "--p", "2", "--n", "2"])
    assert code == 0
    assert doc["products"]["int"] == 2
    assert doc["equivalence_classes"]["int"] == 2
    assert doc["commutative_products"]["int"] == 0


def test_census_periodic_formulas(capjson):
    code, doc = capjson(["--json", "census", "--spectrum", "k2per", "--p", "3", "--n", "2"])
    assert code == 0
    assert doc["products"]["int"] == 6561
    assert doc["equivalence_classes"]["int"] == 729
    assert doc["commutative_products"]["int"] == 9


def test_census_custom_document(tmp_path, capjson):
    # a zero-slice instance: exactly one product
    doc = {
        "name": "custom",
        "ambient_ring": {
            "base_field": {"p": 3, "local": True},
            "generators": [{"name": "a", "degree": 2}],
        },
        "regular_sequence": [{"name": "x", "degree": 2}],
        "coefficient_ring": {"base_field": {"p": 3}, "generators": []},
        "base_product": {"name": "mu", "b_base": {"entries": []}},
    }
    path = tmp_path / "custom.json"
    path.write_text(json.dumps(doc))
    code, out = capjson(["--json", "census", "--input", str(path)])
    assert code == 0
    assert out["products"]["int"] == 1


def test_schema_error_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{\"name\": \"oops\"}")
    assert main(["census", "--input", str(path)]) == 2
    assert "input error" in capsys.readouterr().err


def test_unsupported_params_exit_code(capsys):
    assert main(["census", "--spectrum", "kn", "--p", "7", "--n", "1"]) == 3
    capsys.readouterr()


def test_opposite_command(capjson):
    code, doc = capjson(["--json", "opposite", "--spectrum", "kn", "--p", "2", "--n", "2"])
    assert code == 0
    assert doc["terms"] == [{"I": [1], "J": [1], "w": "v_2"}]


def test_equiv_command(tmp_path, capjson):
    entry = catalog.get("K(n)", p=2, n=2)
    from quotient_forms import act, opposite

    t1 = entry.base_tensor()
    t2 = opposite(t1)
    p1, p2 = tmp_path / "t1.json", tmp_path / "t2.json"
    p1.write_text(json.dumps(t1.to_json()))
    p2.write_text(json.dumps(t2.to_json()))
    code, doc = capjson(
        ["--json", "equiv", "--spectrum", "kn", "--p", "2", "--n", "2", "--t1", str(p1), "--t2", str(p2)]
    )
    assert code == 0
    assert doc["equivalent"] is False


def test_diag_command(tmp_path, capjson):
    entry = catalog.get("MU/J2@p=2")
    pres = entry.presentation
    from quotient_forms import act

    x2 = pres.coefficients.gen("x_2")
    twisted = act(pres.form({(0, 1): x2}), entry.base_tensor())
    tpath = tmp_path / "t.json"
    tpath.write_text(json.dumps(twisted.to_json()))
    code, doc = capjson(["--json", "diag", "--spectrum", "mu-j2", "--tensor", str(tpath)])
    assert code == 0
    assert doc["verdict"] == "not_diagonalizable"
    assert doc["search_exhausted"] is True
    code2, doc2 = capjson(["--json", "diag", "--spectrum", "mu-j2"])
    assert code2 == 0 and doc2["verdict"] == "diagonalizable"


def test_act_command_round_trip(tmp_path, capjson):
    entry = catalog.get("toy", p=2)
    u = entry.presentation.coefficients.gen("u")
    beta = entry.presentation.form({(0, 1): u})
    fpath = tmp_path / "form.json"
    fpath.write_text(json.dumps(beta.to_json()))
    code, doc = capjson(["--json", "act", "--spectrum", "toy", "--p", "2", "--form", str(fpath)])
    assert code == 0
    # the emitted tensor re-parses to the same product
    from quotient_forms import act
    from quotient_forms.documents import tensor_from_document

    assert tensor_from_document(doc, entry.presentation, entry.base) == act(
        beta, entry.base_tensor()
    )


def test_map_command(tmp_path, capjson):
    path = tmp_path / "map.json"
    path.write_text(json.dumps({"map": "bp-to-pn", "p": 2, "n": 1}))
    code, doc = capjson(["--json", "map", "--input", str(path)])
    assert code == 0
    assert doc["smooth"] is True and doc["multiplicative"] is True
    # a twist on the surviving block breaks multiplicativity
    entry_target = catalog.bp_to_pn(2, 1).target
    v1 = entry_target.coefficients.gen("v_1")
    gamma = entry_target.form({(1, 1): v1**5})
    path2 = tmp_path / "map2.json"
    path2.write_text(
        json.dumps({"map": "bp-to-pn", "p": 2, "n": 1, "target_twist": gamma.to_json()})
    )
    code2, doc2 = capjson(["--json", "map", "--input", str(path2)])
    assert code2 == 0 and doc2["multiplicative"] is False


def test_verify_suite_exit_codes(capsys):
    assert main(["verify", "--suite", "identities"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out and "FAIL]" not in out.replace("[PASS]", "")


def test_not_a_product_exit_code(tmp_path, capsys):
    entry = catalog.get("toy", p=2)
    bad = {"base": "mu", "terms": [{"I": [0, 1], "J": [0, 1], "w": "u^2"}]}
    tpath = tmp_path / "bad.json"
    tpath.write_text(json.dumps(bad))
    code = main(["--json", "diag", "--spectrum", "toy", "--p", "2", "--tensor", str(tpath)])
    assert code == 4
    assert "not a product" in capsys.readouterr().err
