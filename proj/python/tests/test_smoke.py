import pytest

import fusionlab as fl


def test_catalog():
    names = fl.catalog()
    assert "S4" in names and "Qd3" in names
    assert fl.catalog_group("S4").order == 24
    assert fl.load_group("cat:SL23").order == 24
    assert fl.is_isomorphic(fl.qd_group(2), fl.catalog_group("S4"))


def test_parse_and_subgroups():
    G = fl.parse_group("group D8\nperm 4\n(1 2)\n(1 3 2 4)\n")
    assert G.order == 8
    assert G.subgroup_count() == 10
    assert G.subgroup("b").order == 4
    assert G.whole().order == 8


def test_s4_fusion():
    G = fl.catalog_group("S4")
    F = fl.FusionSystem.realize(G, 2)
    assert F.S.order == 8
    assert F.verify_axioms()["ok"]
    ess = F.essentials()
    assert len(ess) == 1
    assert ess[0] == F.o_p()
    assert F.aut_order(ess[0]) == 6
    assert not F.is_h_free("sigma4")


def test_sl23_and_w():
    F = fl.FusionSystem.realize(fl.catalog_group("SL23"), 2)
    assert F.essentials() == []
    assert F.is_h_free("sigma4")
    w = fl.compute_w(fl.catalog_group("SL23"), 2)
    assert w["W"].order == 2
    assert w["chain_length"] == 0
    assert w["characteristic"]


def test_thompson():
    E = fl.catalog_group("ES27e3")
    t = fl.thompson(E.whole(), 3)
    assert t["max_abelian_order"] == 9
    assert len(t["max_abelian_subgroups"]) == 4
    assert t["A"] == t["B"]


def test_verify():
    r = fl.verify("1", fl.catalog_group("SL23"), 2)
    assert r["hypotheses_hold"] and r["conclusion_holds"]
    assert not fl.verify("thompson", fl.catalog_group("GL23"), 3)["contradiction"]
    assert fl.verify("frobenius", fl.catalog_group("A4"), 3)["conclusions"]["normal p-complement"]


def test_errors():
    with pytest.raises(fl.FusionlabError) as e:
        fl.catalog_group("nope")
    assert e.value.code == "ParseError"
    with pytest.raises(fl.FusionlabError) as e:
        fl.verify("3", fl.catalog_group("S4"), 2)
    assert e.value.code == "HypothesisViolated"
