import itertools
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from automizer_lab.catalog import (
    alternating,
    cyclic,
    cyclic_action,
    dihedral,
    elementary_abelian,
    generalized_quaternion,
    inversion,
    symmetric,
)
from automizer_lab.config import using_caps
from automizer_lab.errors import (
    InvalidAction,
    NoIdentity,
    NotAPermutation,
    NotAssociative,
    NotLatinSquare,
    NotNormal,
    OrderCapExceeded,
    ParentMismatch,
    SchemaError,
)
from automizer_lab.group import (
    SemidirectSpec,
    Subgroup,
    complement_embedding,
    cycle_string,
    direct_product,
    group_from_json,
    group_from_permutations,
    group_from_table,
    indices_to_bits,
    kernel_embedding,
    parse_permutation,
    quotient_group,
    semidirect_product,
    trivial_group,
)
from automizer_lab.iso import (
    are_isomorphic,
    automorphism_group,
    automorphisms,
    find_isomorphism,
    find_monomorphism,
)
from automizer_lab.subgroups import all_subgroups, generated_subgroup, is_normal


def s3_perm():
    return group_from_permutations(3, ["(1 2 3)", "(1 2)"], name="S3")


# ---------------------------------------------------------------- tables


def test_trivial_and_z2_tables():
    g = group_from_table([[0]])
    assert g.order == 1 and g.identity == 0
    z2 = group_from_table([[0, 1], [1, 0]])
    assert z2.order == 2 and find_isomorphism(z2, cyclic(2))


def test_bad_three_by_three_is_rejected():
    with pytest.raises((NotLatinSquare, NotAssociative)):
        group_from_table([[0, 1, 2], [1, 2, 0], [2, 1, 0]])


def test_latin_error_names_violation():
    with pytest.raises(NotLatinSquare, match="column 0"):
        group_from_table([[0, 1], [0, 1]])


def test_non_associative_latin_square_names_triple():
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative) as info:
        group_from_table(t)
    a, b, c = info.value.witness
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_identity_need_not_be_index_zero():
    g = group_from_table([[1, 2, 0], [2, 0, 1], [0, 1, 2]])
    assert g.identity == 2


def test_latin_square_without_identity():
    with pytest.raises(NoIdentity):
        group_from_table([[1, 0, 2], [0, 2, 1], [2, 1, 0]])


def test_non_square_and_out_of_range():
    with pytest.raises(Exception):
        group_from_table([[0, 1]])
    with pytest.raises(Exception):
        group_from_table([[0, 5], [5, 0]])


@given(st.sampled_from([cyclic(6), dihedral(5), symmetric(4), generalized_quaternion(8), alternating(4)]), st.randoms(use_true_random=False))
def test_relabelled_tables_validate_and_stay_isomorphic(g, rnd):
    perm = list(range(g.order))
    rnd.shuffle(perm)
    h = group_from_table(oracles.relabel(g.table.tolist(), perm))
    m = find_isomorphism(g, h)
    assert m is not None and m.is_isomorphism()


# ---------------------------------------------------------------- permutations


def test_permutation_groups_and_orders():
    assert group_from_permutations(3, ["(1 2 3)", "(1 2)"]).order == 6
    assert group_from_permutations(4, ["(1 2 3 4)", "(1 2)"]).order == 24
    assert group_from_permutations(1, []).order == 1


def test_permutation_notations_agree():
    assert parse_permutation("(1 2 3)", 3) == parse_permutation([2, 3, 1], 3) == (1, 2, 0)
    assert parse_permutation("[2, 3, 1]", 3) == (1, 2, 0)
    assert cycle_string((1, 2, 0)) == "(1 2 3)"
    assert cycle_string((0, 1)) == "()"
    for bad in ["(1 4)", "(1 1)", "1 2", [1, 1, 2]]:
        with pytest.raises(NotAPermutation):
            parse_permutation(bad, 3)


def test_composition_is_left_to_right():
    g = s3_perm()
    a, b = g.labels.index("(1 2)"), g.labels.index("(2 3)")
    # apply (1 2) first, then (2 3): 1 -> 2 -> 3, 3 -> 2, 2 -> 1
    assert g.labels[g.mul(a, b)] == "(1 3 2)"


def test_closure_cap():
    with using_caps(closure=100):
        with pytest.raises(OrderCapExceeded):
            group_from_permutations(5, ["(1 2 3 4 5)", "(1 2)"])


# ---------------------------------------------------------------- products


def test_direct_products():
    assert find_isomorphism(direct_product(trivial_group(), symmetric(3)), symmetric(3))
    assert direct_product(symmetric(3), cyclic(3)).order == 18
    assert direct_product(symmetric(4), cyclic(2)).order == 48
    assert direct_product(symmetric(3), cyclic(3)).name == "S3xZ3"


def test_semidirect_examples():
    z3, z2 = cyclic(3), cyclic(2)
    s3 = semidirect_product(SemidirectSpec(z3, z2, cyclic_action(z3, inversion(z3), 2)))
    assert s3.order == 6 and find_isomorphism(s3, s3_perm())
    v4 = elementary_abelian(2, 2)
    # the automorphism cycling the three involutions
    invol = [a for a in range(4) if a != v4.identity]
    cyc = [0] * 4
    cyc[v4.identity] = v4.identity
    for x, y in zip(invol, invol[1:] + invol[:1]):
        cyc[x] = y
    a4 = semidirect_product(SemidirectSpec(v4, cyclic(3), cyclic_action(v4, cyc, 3)))
    assert a4.order == 12 and find_isomorphism(a4, alternating(4))


def test_semidirect_embeddings():
    z7 = cyclic(7)
    spec = SemidirectSpec(z7, cyclic(3), cyclic_action(z7, [z7.power(a, 2) for a in range(7)], 3))
    g = semidirect_product(spec)
    k, q = kernel_embedding(spec, g), complement_embedding(spec, g)
    assert is_normal(g, k) and k.order == 7 and q.order == 3 and q.is_subgroup()


def test_trivial_action_matches_direct_product(catalog):
    small = [e.group for e in catalog if 1 < e.group.order <= 8]
    for a, b in itertools.product(small[:8], repeat=2):
        if a.order * b.order > 64:
            continue
        ident = tuple(tuple(range(a.order)) for _ in range(b.order))
        sd = semidirect_product(SemidirectSpec(a, b, ident))
        assert find_isomorphism(sd, direct_product(a, b))


def test_invalid_actions():
    z3, z2 = cyclic(3), cyclic(2)
    with pytest.raises(InvalidAction):  # not an automorphism
        semidirect_product(SemidirectSpec(z3, z2, [(0, 1, 2), (0, 0, 0)]))
    z5 = cyclic(5)
    with pytest.raises(InvalidAction):  # an order-4 automorphism cannot come from Z2
        semidirect_product(SemidirectSpec(z5, z2, [tuple(range(5)), tuple(z5.power(a, 2) for a in range(5))]))
    with pytest.raises(InvalidAction):  # wrong shape
        semidirect_product(SemidirectSpec(z3, z2, [(0, 1, 2)]))


# ---------------------------------------------------------------- quotients


def test_quotients():
    s4 = symmetric(4)
    g, proj = quotient_group(s4, s4.trivial())
    assert find_isomorphism(g, s4)
    g, proj = quotient_group(s4, s4.whole())
    assert g.order == 1
    v4 = next(h for h in all_subgroups(s4).normal_subgroups() if h.order == 4)
    g, proj = quotient_group(s4, v4)
    assert g.order == 6 and find_isomorphism(g, s3_perm())
    assert proj.is_homomorphism() and proj.image() == g.whole() and proj.kernel() == v4


def test_quotient_by_non_normal_names_witness():
    s3 = s3_perm()
    h = generated_subgroup(s3, [s3.labels.index("(1 2)")])
    with pytest.raises(NotNormal) as info:
        quotient_group(s3, h)
    a = info.value.witness
    conj = {s3.mul(s3.mul(a, x), s3.inv(a)) for x in h.members}
    assert conj != set(int(x) for x in h.members)


@pytest.mark.parametrize("name", ["S4", "D16", "Z3^2:Z2", "S3xZ3", "Q16"])
def test_projection_kernel_is_exactly_n(entries, name):
    g = entries[name].group
    for n in all_subgroups(g).normal_subgroups():
        q, proj = quotient_group(g, n)
        assert q.order * n.order == g.order
        assert proj.is_homomorphism() and proj.kernel() == n
        assert proj.image() == q.whole()


# ---------------------------------------------------------------- isomorphism


def test_isomorphism_examples():
    s4 = symmetric(4)
    m = find_isomorphism(s4, s4)
    assert m is not None and m.is_isomorphism()
    assert find_isomorphism(cyclic(4), elementary_abelian(2, 2)) is None
    assert find_isomorphism(dihedral(4), generalized_quaternion(8)) is None
    assert not are_isomorphic(symmetric(3), cyclic(6))


def test_isomorphism_is_symmetric_on_catalog(catalog):
    small = [e.group for e in catalog if e.group.order <= 48]
    by_order = {}
    for g in small:
        by_order.setdefault(g.order, []).append(g)
    for groups in by_order.values():
        for a, b in itertools.combinations(groups, 2):
            ab, ba = find_isomorphism(a, b), find_isomorphism(b, a)
            assert (ab is None) == (ba is None), (a.name, b.name)
            if ab is not None:
                assert ab.is_isomorphism() and ba.is_isomorphism()


def test_iso_cap():
    with using_caps(iso=10):
        with pytest.raises(OrderCapExceeded):
            find_isomorphism(symmetric(4), symmetric(4))
        assert find_isomorphism(cyclic(12), cyclic(4)) is None  # orders differ, no search


def test_monomorphism():
    m = find_monomorphism(cyclic(3), alternating(4))
    assert m is not None and m.is_homomorphism() and len(set(m.images)) == 3
    assert find_monomorphism(cyclic(4), alternating(4)) is None


# ---------------------------------------------------------------- automorphisms


def test_automorphism_group_examples():
    assert automorphism_group(trivial_group()).order == 1
    assert automorphism_group(cyclic(3)).order == 2
    aut = automorphism_group(elementary_abelian(2, 2))
    assert aut.order == 6 and find_isomorphism(aut, s3_perm())


@pytest.mark.parametrize("n", range(1, 17))
def test_aut_of_cyclic_is_totient(n):
    assert automorphism_group(cyclic(n)).order == oracles.totient(n)


@pytest.mark.parametrize("g", [symmetric(3), dihedral(4), generalized_quaternion(8), elementary_abelian(2, 3), cyclic(8)], ids=lambda g: g.name)
def test_aut_count_matches_brute_force(g):
    assert len(automorphisms(g)) == oracles.automorphism_count(g.table.tolist())


def test_aut_known_orders():
    assert len(automorphisms(alternating(4))) == 24
    assert len(automorphisms(symmetric(4))) == 24
    assert len(automorphisms(elementary_abelian(3, 2))) == 48


def test_automorphism_group_composition_law():
    g = dihedral(4)
    auts = automorphisms(g)
    a = automorphism_group(g)
    for i, j in itertools.product(range(len(auts)), repeat=2):
        k = a.mul(i, j)
        # i first, then j
        assert auts[k] == tuple(auts[j][auts[i][x]] for x in range(g.order))


def test_aut_cap():
    with using_caps(aut=10):
        with pytest.raises(OrderCapExceeded):
            automorphisms(cyclic(11))


# ---------------------------------------------------------------- subgroups as values


def test_subgroup_parent_mismatch():
    a, b = cyclic(4), cyclic(4)
    with pytest.raises(ParentMismatch):
        _ = a.whole() <= b.whole()
    assert a.whole() != b.whole()


def test_subgroup_lagrange_and_materialise(catalog):
    for e in catalog:
        if e.group.order > 32:
            continue
        for h in all_subgroups(e.group):
            assert e.group.order % h.order == 0 and h.is_subgroup()
    g = symmetric(4)
    h = Subgroup(g, indices_to_bits(generated_subgroup(g, [1, 2]).members))
    sub, incl = h.as_group()
    assert incl.is_homomorphism() and incl.image() == h


# ---------------------------------------------------------------- JSON


def test_json_round_trip():
    g = dihedral(5)
    h = group_from_json(json.loads(json.dumps(g.to_json())))
    assert np.array_equal(h.table, g.table) and h.labels == g.labels and h.name == g.name
    p = group_from_json({"degree": 3, "generators": ["(1 2 3)", "(1 2)"]})
    assert p.order == 6


def test_json_schema_errors():
    for bad in [[], {"nothing": 1}, {"order": 3, "table": [[0]]}]:
        with pytest.raises(SchemaError):
            group_from_json(bad)


def test_public_api_exports_resolve():
    import automizer_lab

    assert all(hasattr(automizer_lab, n) for n in automizer_lab.__all__)
    g = automizer_lab.group_from_permutations(6, ["(1 2 3 4)", "(1 2)", "(5 6)"])
    v = automizer_lab.pnc_verdict(g)
    h = automizer_lab.subgroup_from_witness(g, v.witness)
    assert (v.value, h.order, automizer_lab.automizer(g, h).order) == (False, 6, 2)
