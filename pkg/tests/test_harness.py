import json

import pytest

import oracles
from automizer_lab.catalog import CatalogEntry, by_name, cyclic, default_catalog, dihedral
from automizer_lab.harness import (
    ALIASES,
    KNOWN_IDS,
    VERIFIERS,
    TheoremResult,
    catalog_pairs,
    extension_triples_cp,
    extension_triples_sbp,
    resolve_ids,
    run_all,
    sbp_case,
    split_decomposition,
    split_controls,
    split_family,
    verify_dihedral,
    verify_tags,
)
from automizer_lab.predicates import is_minimal_non_nilpotent, is_pnc

ALL_IDS = {"L1.1", "ZASSENHAUS", "L2.1", "P2.2", "C2.3", "L3.1", "L3.2", "L3.3", "L3.4", "L3.5", "T3.6", "T3.7",
           "L3.8", "T3.9", "L3.10", "T3.11", "L3.12", "T3.13", "P3.14", "C3.15", "T3.16", "TAGS"}


@pytest.fixture(scope="module")
def report(catalog):
    return run_all(catalog)


def test_every_verifier_passes(report):
    assert {r.id for r in report.results} == ALL_IDS
    bad = [(r.id, r.failures[:2]) for r in report.results if r.status != "pass"]
    assert not bad
    assert report.ok and report.summary == {"pass": 22, "fail": 0, "vacuous": 0}


def test_observed_flags(report):
    observed = {r.id for r in report.results if r.observed}
    assert observed == {"T3.6", "T3.7", "T3.9", "T3.11"}


def test_instance_floors(report):
    res = {r.id: r for r in report.results}
    assert res["L3.1"].instances >= 5 and res["L3.2"].instances >= 5
    assert res["C3.15"].instances == 30
    assert res["T3.16"].instances >= 7
    assert res["P2.2"].instances >= 50
    assert res["L3.10"].instances >= 10 and res["T3.13"].instances >= 10


def test_empty_catalog_is_vacuous():
    rep = run_all([])
    assert {r.id for r in rep.results} == ALL_IDS
    assert all(r.status == "vacuous" for r in rep.results)
    assert rep.ok


def test_dumps_is_byte_stable(catalog):
    a = run_all(catalog, ["L2.1", "C2.3", "TAGS", "T3.16"]).dumps()
    b = run_all(default_catalog(), ["L2.1", "C2.3", "TAGS", "T3.16"]).dumps()
    assert a == b
    data = json.loads(a)
    assert list(data) == ["results", "summary"]


def test_injected_tag_fault_is_caught(catalog):
    e = by_name(catalog)["S4xZ2"]
    bad = CatalogEntry(e.name, e.construction, e.group, frozenset({"pnc"}))
    r = verify_tags([bad])
    assert r.status == "fail"
    f = r.failures[0]
    assert f["group"] == "S4xZ2" and f["witness"] == {"tag": "pnc", "computed": False}
    rep = run_all([bad], ["TAGS"])
    assert not rep.ok and rep.summary["fail"] == 1


def test_unknown_tag_is_a_failure():
    e = CatalogEntry("Z3", {"kind": "cyclic", "n": 3}, cyclic(3), frozenset({"shiny"}))
    assert verify_tags([e]).failures[0]["witness"] == {"unknown_tag": "shiny"}


def test_only_filtering_and_aliases(catalog):
    rep = run_all(catalog, ["L3.2"])
    assert [r.id for r in rep.results] == ["L3.2"]
    rep = run_all(catalog, ["C3.15", "T3.7", "L3.1"])
    assert [r.id for r in rep.results] == ["L3.1", "T3.7", "C3.15"]
    assert set(ALIASES) <= set(KNOWN_IDS) and set(VERIFIERS) <= set(KNOWN_IDS)


def test_resolve_ids():
    assert resolve_ids(None) == list(VERIFIERS)
    assert resolve_ids(["L3.3", "L3.2"]) == ["L3.1"]
    with pytest.raises(KeyError):
        resolve_ids(["X9"])


def test_result_status_rules():
    r = TheoremResult("X", "s", "h")
    assert r.status == "vacuous"
    r.instances = 1
    r.check(True, "g")
    assert r.status == "pass" and r.checks_passed == 1
    r.check(False, "g", {"w": 1})
    assert r.status == "fail" and r.to_json()["failures"] == [{"group": "g", "witness": {"w": 1}}]


def test_table_lists_every_result(catalog):
    rep = run_all(catalog, ["C3.15", "L2.1"])
    text = rep.table()
    assert "C3.15" in text and "L2.1" in text and text.splitlines()[-1].startswith("summary: 2 pass")


def test_dihedral_verifier_counts_against_oracle():
    r = verify_dihedral(range(3, 13))
    assert r.instances == 10 and r.status == "pass"
    for n in range(3, 13):
        assert oracles.pnc(dihedral(n).table.tolist()) == oracles.is_prime_power(n)


# ---------------------------------------------------------------- constructed instance sets


def test_catalog_pairs_are_distinct_classes(catalog):
    pairs = catalog_pairs(catalog)
    names = [(a.name, b.name) for a, b in pairs]
    assert len(names) == len(set(names))
    assert all(a.group.order * b.group.order <= 96 for a, b in pairs)


def test_extension_triples_are_well_formed(catalog):
    triples = list(extension_triples_sbp(catalog)) + list(extension_triples_cp(catalog))
    assert len(triples) >= 20
    for g, h, a, p in triples:
        assert h.order == a.order * g.order
        assert a.order == 1 or (oracles.is_prime_power(a.order) and a.order % p == 0)
        t = h.table
        assert all(t[x, y] == t[y, x] for x in a.members for y in range(h.order))
    assert any(h.name == "Q8:Z3" for _, h, _, _ in extension_triples_sbp(catalog))
    assert list(extension_triples_sbp([])) == [] and list(extension_triples_cp([])) == []


def test_split_family_and_controls():
    fam = split_family()
    assert len(fam) >= 5
    for name, g in fam:
        assert split_decomposition(g) is not None, name
        assert is_minimal_non_nilpotent(g) and is_pnc(g), name
    for name, g, _, expected in split_controls():
        assert split_decomposition(g) is None, name
        assert {"minimal_non_nilpotent": is_minimal_non_nilpotent(g), "pnc": is_pnc(g)} == expected


def test_sbp_cases_cover_the_catalog(catalog):
    for e in catalog:
        if e.group.order <= 64:
            cases = sbp_case(e.group)
            assert isinstance(cases, list)
