import pytest

import weilrep


def test_form_properties():
    f = weilrep.form("U(6)")
    assert (f.order, f.level, f.signature) == (36, 6, 0)
    assert f.q([1, 1]) == "1/6"
    assert weilrep.Form.from_json(f.to_json()).order == 36


def test_info():
    d = weilrep.info("3^+1⊕2_II^-2")
    assert d["order"] == 12


def test_rep_relation():
    s2 = weilrep.rep("2_1^+1", "S S")["entries"]
    z = weilrep.rep("2_1^+1", "Z")["entries"]
    assert s2 == z


def test_basis_verified():
    d = weilrep.basis("3^+1", verify=True, words=5)
    assert d["integrality"]["verdict"] is True
    assert len(d["columns"]) == 3


def test_invariants():
    d = weilrep.invariants("U(6)")
    assert d["dim_kernel"] == 4
    assert d["agreement"] is True
    assert all(x["value"] == 4 for x in d["formulas"])


def test_decompose():
    d = weilrep.decompose("Z(9,2)")
    assert sum(len(c["basis"]) for c in d["components"]) == 9


def test_errors():
    with pytest.raises(ValueError):
        weilrep.form("bogus")
    with pytest.raises(weilrep.InputError):
        weilrep.decompose("U(2)")
