import itertools
import json

import pytest

from automizer_lab.catalog import (
    ORDER_LE_15,
    CatalogEntry,
    alternating,
    build,
    by_name,
    catalog_path,
    cyclic,
    dihedral,
    elementary_abelian,
    exp_order,
    faithful_action,
    generalized_quaternion,
    load_catalog,
    minimal_non_nilpotent_family,
    save_catalog,
    sbp_type_iii,
    symmetric,
)
from automizer_lab.errors import CatalogIoError, ParameterOutOfRange, SchemaError
from automizer_lab.group import direct_product
from automizer_lab.iso import find_isomorphism
from automizer_lab.predicates import is_cp, is_minimal_non_nilpotent, is_pnc, is_sbp
from automizer_lab.subgroups import center, fitting_subgroup

# number of groups of order 1..15 up to isomorphism
GROUP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5, 13: 1, 14: 2, 15: 1}


def test_constructor_orders():
    assert cyclic(1).order == 1
    assert dihedral(3).order == 6 and dihedral(32).order == 64
    assert [symmetric(n).order for n in range(1, 6)] == [1, 2, 6, 24, 120]
    assert [alternating(n).order for n in range(1, 6)] == [1, 1, 3, 12, 60]
    assert [generalized_quaternion(k).order for k in (8, 16, 32)] == [8, 16, 32]
    assert elementary_abelian(3, 3).order == 27


def test_constructor_ranges():
    for bad in [lambda: cyclic(0), lambda: dihedral(0), lambda: symmetric(6), lambda: alternating(6),
                lambda: generalized_quaternion(12), lambda: generalized_quaternion(64), lambda: elementary_abelian(4, 2)]:
        with pytest.raises(ParameterOutOfRange):
            bad()


def test_quaternion_has_unique_involution():
    for k in (8, 16, 32):
        q = generalized_quaternion(k)
        assert int((q.element_orders == 2).sum()) == 1 and int(q.element_orders.max()) == k // 2


def test_exp_order():
    assert exp_order(2, 3) == 2 and exp_order(2, 7) == 3 and exp_order(3, 2) == 1 and exp_order(5, 3) == 2
    with pytest.raises(ParameterOutOfRange):
        exp_order(4, 3)


def test_sbp_type_iii():
    a4 = sbp_type_iii(2, 3)
    assert a4.order == 12 and find_isomorphism(a4, alternating(4))
    g = sbp_type_iii(2, 7)
    assert g.order == 56 and is_sbp(g) and is_cp(g)
    assert fitting_subgroup(g).order == 8
    with pytest.raises(ParameterOutOfRange):
        sbp_type_iii(3, 2)


def test_family_examples():
    z3 = cyclic(3)
    v4 = elementary_abelian(2, 2)
    a4 = minimal_non_nilpotent_family(v4, z3, faithful_action(v4, z3))
    assert find_isomorphism(a4, alternating(4)) and is_minimal_non_nilpotent(a4) and is_pnc(a4)
    s3 = minimal_non_nilpotent_family(z3, cyclic(2), faithful_action(z3, cyclic(2)))
    assert find_isomorphism(s3, symmetric(3))
    with pytest.raises(ParameterOutOfRange):
        faithful_action(z3, cyclic(3))


def test_faithful_action_on_quaternion_gives_sl23():
    q8 = generalized_quaternion(8)
    g = minimal_non_nilpotent_family(q8, cyclic(3), faithful_action(q8, cyclic(3)))
    assert g.order == 24 and center(g).order == 2
    assert not find_isomorphism(g, symmetric(4))
    assert is_minimal_non_nilpotent(g) and is_pnc(g)


# ---------------------------------------------------------------- the default catalog


def test_default_catalog_contents(catalog):
    names = set(by_name(catalog))
    assert len(catalog) >= 60 and len(names) == len(catalog)
    required = {f"Z{n}" for n in range(1, 25)} | {f"D{2 * n}" for n in range(3, 33)}
    required |= {"S3", "S4", "A4", "A5", "Q8", "Q16", "Z2^2", "Z2^3", "Z3^2", "Z3^3", "S3xZ3", "S4xZ2", "SBP(2,3)", "SBP(2,7)"}
    assert required <= names


def test_orders_up_to_15_complete_and_distinct(entries):
    groups = [entries[n].group for n in ORDER_LE_15]
    counts = {}
    for g in groups:
        counts[g.order] = counts.get(g.order, 0) + 1
    assert counts == GROUP_COUNTS
    for a, b in itertools.combinations(groups, 2):
        if a.order == b.order:
            assert find_isomorphism(a, b) is None, (a.name, b.name)
    assert find_isomorphism(entries["D12"].group, entries["S3xZ2"].group)


def test_entries_are_named_and_ordered(catalog):
    for e in catalog:
        assert e.group.name == e.name
        assert e.group.order == build(e.construction).order


def test_round_trip(tmp_path, catalog):
    path = tmp_path / "cat.json"
    save_catalog(catalog, path)
    first = path.read_bytes()
    back = load_catalog(path)
    assert [e.name for e in back] == [e.name for e in catalog]
    for a, b in zip(back, catalog):
        assert (a.group.table == b.group.table).all() and a.tags == b.tags and a.construction == b.construction
    save_catalog(back, path)
    assert path.read_bytes() == first


def test_catalog_errors(tmp_path):
    with pytest.raises(CatalogIoError):
        load_catalog(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SchemaError):
        load_catalog(bad)
    bad.write_text(json.dumps({"a": 1}))
    with pytest.raises(SchemaError):
        load_catalog(bad)
    bad.write_text(json.dumps([{"name": "x"}]))
    with pytest.raises(SchemaError):
        load_catalog(bad)


def test_order_mismatch_is_rejected():
    with pytest.raises(SchemaError):
        CatalogEntry("wrong", {"kind": "cyclic", "n": 5}, cyclic(6))


def test_build_kinds():
    assert build({"kind": "direct_product", "factors": [{"kind": "cyclic", "n": 2}, {"kind": "cyclic", "n": 3}]}).order == 6
    g = build({"kind": "semidirect_cyclic", "kernel": {"kind": "cyclic", "n": 7}, "m": 3, "power": 2})
    assert g.order == 21 and is_sbp(g)
    g = build({"kind": "table", "group": {"table": [[0, 1], [1, 0]]}})
    assert g.order == 2
    with pytest.raises(SchemaError):
        build({"kind": "nonsense"})
    with pytest.raises(SchemaError):
        build({"kind": "cyclic"})


def test_catalog_path_env(monkeypatch, tmp_path):
    monkeypatch.delenv("AUTOMIZER_LAB_CATALOG", raising=False)
    assert catalog_path().name == "catalog.json"
    monkeypatch.setenv("AUTOMIZER_LAB_CATALOG", str(tmp_path / "c.json"))
    assert catalog_path() == tmp_path / "c.json"
    assert catalog_path("x.json").name == "x.json"


def test_direct_product_entries_match_factors(entries):
    g = entries["S3xZ3"].group
    assert find_isomorphism(g, direct_product(symmetric(3), cyclic(3)))
