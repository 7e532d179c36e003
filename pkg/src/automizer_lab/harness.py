"""One verifier per theorem-level statement, each swept over a catalog slice.

Verifier ids follow the numbering used in the source literature (``L2.1``,
``T3.16`` ...); they are stable identifiers for ``--only`` selection.
Hypotheses are always recomputed from the predicates; catalog tags are only
expectations and are cross-checked by the ``TAGS`` verifier.
"""
from __future__ import annotations

import json
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from .catalog import (
    CatalogEntry,
    cyclic,
    cyclic_action,
    dihedral,
    elementary_abelian,
    exp_order,
    faithful_action,
    generalized_quaternion,
    inversion,
    minimal_non_nilpotent_family,
    power_map,
    sbp_type_iii,
    symmetric,
)
from .config import caps
from .errors import GroupError
from .group import Group, SemidirectSpec, Subgroup, direct_product, indices_to_bits, quotient_group
from .iso import find_isomorphism
from .numtheory import factorize, is_prime_power, p_part
from .predicates import (
    PREDICATES,
    is_a_group,
    is_abelian,
    is_cp,
    is_minimal_non_nilpotent,
    is_nilpotent,
    is_nc,
    is_p_central_extension,
    is_pnc,
    is_quasi_nc,
    is_sbp,
    is_solvable,
    is_supersolvable,
    nc_nonmaximal_verdict,
    nc_prime_power_form_verdict,
    pnc_verdict,
)
from .subgroups import (
    all_subgroups,
    center,
    centralizer,
    derived_subgroup,
    fitting_subgroup,
    maximal_normal_subgroups,
    p_core,
    sylow_subgroups,
)


@dataclass
class TheoremResult:
    id: str
    statement: str
    hypothesis: str
    observed: bool = False
    instances: int = 0
    checks_passed: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        if self.instances == 0:
            return "vacuous"
        return "pass"

    def fail(self, group: str, witness) -> None:
        self.failures.append({"group": group, "witness": witness})

    def check(self, ok: bool, group: str, witness=None) -> None:
        if ok:
            self.checks_passed += 1
        else:
            self.fail(group, witness)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "statement": self.statement,
            "hypothesis": self.hypothesis,
            "observed": self.observed,
            "instances": self.instances,
            "checks_passed": self.checks_passed,
            "failures": self.failures,
            "notes": self.notes,
            "status": self.status,
        }


def _usable(entries: Iterable[CatalogEntry], max_order: int | None = None) -> list[CatalogEntry]:
    limit = caps().lattice if max_order is None else min(max_order, caps().lattice)
    return [e for e in entries if e.group.order <= limit]


def _skipped_note(entries, used, result: TheoremResult) -> None:
    skipped = len(entries) - len(used)
    if skipped:
        result.notes.append(f"{skipped} catalog groups outside the order slice were skipped")


def _pp(n: int) -> bool:
    return is_prime_power(n)


def _prime_of(n: int) -> int | None:
    f = factorize(n)
    return next(iter(f)) if len(f) == 1 else None


# ---------------------------------------------------------------- normalizer and centralizer conditions


def verify_nc_forms(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult(
        "L1.1",
        "N=C for every non-maximal abelian subgroup iff (C=A or C=N) for every abelian subgroup of prime-power order",
        "all groups of order <= 48",
    )
    used = _usable(catalog, 48)
    _skipped_note(catalog, used, r)
    agree_with_abelian = 0
    for e in used:
        g = e.group
        r.instances += 1
        left = nc_nonmaximal_verdict(g)
        right = nc_prime_power_form_verdict(g)
        r.check(left.value == right.value, e.name, {"nonmaximal_form": left.to_json(), "prime_power_form": right.to_json()})
        agree_with_abelian += right.value == is_abelian(g)
    r.notes.append(f"prime-power form coincides with commutativity on {agree_with_abelian}/{r.instances} groups")
    return r


def verify_zassenhaus(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult("ZASSENHAUS", "N=C for every abelian subgroup iff G is abelian", "all groups of order <= 48")
    used = _usable(catalog, 48)
    _skipped_note(catalog, used, r)
    for e in used:
        r.instances += 1
        r.check(is_nc(e.group) == is_abelian(e.group), e.name, {"nc": is_nc(e.group), "abelian": is_abelian(e.group)})
    return r


# ---------------------------------------------------------------- closure properties


def verify_subgroup_closed(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult("L2.1", "every subgroup of a PNC group is PNC", "PNC groups of order <= 48, every subgroup")
    used = _usable(catalog, 48)
    _skipped_note(catalog, used, r)
    for e in used:
        g = e.group
        if not is_pnc(g):
            continue
        r.instances += 1
        for h in all_subgroups(g):
            sub, _ = h.as_group(name=f"{e.name}[{h.order}]")
            v = pnc_verdict(sub)
            r.check(v.value, e.name, {"subgroup": [int(x) for x in h.members], "verdict": v.to_json()})
    return r


def _p2_2_hypothesis(g1: Group, g2: Group) -> bool:
    if g1.order == 1 or g2.order == 1:
        return False
    return math.gcd(g1.order, g2.order) == 1 or (not _pp(g1.order) and not _pp(g2.order))


def catalog_pairs(catalog: Sequence[CatalogEntry], max_order: int = 96) -> list[tuple[CatalogEntry, CatalogEntry]]:
    """Unordered pairs, one per isomorphism-class pair, meeting the decomposable-group hypothesis."""
    reps: list[CatalogEntry] = []
    for e in catalog:
        if e.group.order * 2 > max_order or e.group.order == 1:
            continue
        if any(r.group.order == e.group.order and find_isomorphism(r.group, e.group) for r in reps):
            continue
        reps.append(e)
    out = []
    for i, a in enumerate(reps):
        for b in reps[i:]:
            if a.group.order * b.group.order <= max_order and _p2_2_hypothesis(a.group, b.group):
                out.append((a, b))
    return out


def verify_direct_products(catalog: Sequence[CatalogEntry], max_order: int = 96) -> TheoremResult:
    r = TheoremResult(
        "P2.2",
        "G1 x G2 with coprime orders or two non-prime-power factors: abelian iff PNC",
        f"catalog pairs up to isomorphism, product order <= {max_order}",
    )
    for a, b in catalog_pairs(catalog, max_order):
        g = direct_product(a.group, b.group, name=f"{a.name}x{b.name}")
        if g.order > caps().lattice:
            continue
        r.instances += 1
        ab, pnc = is_abelian(g), is_pnc(g)
        r.check(ab == pnc, g.name, {"abelian": ab, "pnc": pnc})
    return r


def verify_nilpotent_pnc(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult("C2.3", "non-abelian G: nilpotent and PNC iff G is a p-group", "non-abelian groups")
    used = _usable(catalog)
    _skipped_note(catalog, used, r)
    for e in used:
        g = e.group
        if is_abelian(g):
            continue
        r.instances += 1
        lhs = is_nilpotent(g) and is_pnc(g)
        r.check(lhs == _pp(g.order), e.name, {"nilpotent": is_nilpotent(g), "pnc": is_pnc(g), "order": g.order})
    return r


# ---------------------------------------------------------------- structure of PNC groups


def verify_fitting_center_derived(catalog: Sequence[CatalogEntry]) -> list[TheoremResult]:
    hyp = "solvable non-abelian PNC groups"
    r1 = TheoremResult("L3.1", "Fitting subgroup is a p-group", hyp)
    r2 = TheoremResult("L3.2", "center is a p-group", hyp)
    r3 = TheoremResult("L3.3", "if the derived subgroup is nilpotent it is a p-group", hyp + " with nilpotent derived subgroup")
    used = _usable(catalog)
    for e in used:
        g = e.group
        if is_abelian(g) or not is_solvable(g) or not is_pnc(g):
            continue
        f, z, d = fitting_subgroup(g), center(g), derived_subgroup(g)
        r1.instances += 1
        r1.check(_pp(f.order), e.name, {"fitting_order": f.order})
        r2.instances += 1
        r2.check(_pp(z.order), e.name, {"center_order": z.order})
        dg, _ = d.as_group()
        if is_nilpotent(dg):
            r3.instances += 1
            r3.check(_pp(d.order), e.name, {"derived_order": d.order})
    return [r1, r2, r3]


def verify_supersolvable_fitting(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult("L3.4", "supersolvable non-abelian PNC: Fitting subgroup is a Sylow subgroup", "non-abelian supersolvable PNC groups")
    for e in _usable(catalog):
        g = e.group
        if is_abelian(g) or not is_supersolvable(g) or not is_pnc(g):
            continue
        r.instances += 1
        f = fitting_subgroup(g)
        p = _prime_of(f.order)
        ok = p is not None and f.order == p_part(g.order, p)
        r.check(ok, e.name, {"fitting_order": f.order, "order": g.order})
    if not catalog:
        return r
    # negative control: PNC alone does not make the Fitting subgroup Sylow
    s4 = symmetric(4)
    f = fitting_subgroup(s4)
    control = is_pnc(s4) and not is_supersolvable(s4) and f.order != p_part(24, 2)
    r.notes.append(f"control S4: pnc={is_pnc(s4)}, supersolvable={is_supersolvable(s4)}, |F|={f.order}")
    if not control:
        r.fail("S4 (control)", {"fitting_order": f.order})
    return r


def verify_central_quotients(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult("L3.5", "G PNC, H central with H meeting G' trivially: G/H is PNC", "PNC groups, every such H")
    for e in _usable(catalog):
        g = e.group
        if not is_pnc(g):
            continue
        z, d = center(g), derived_subgroup(g)
        hs = [h for h in all_subgroups(g) if h <= z and (h.bits & d.bits) == 1 << g.identity]
        if not hs:
            continue
        r.instances += 1
        for h in hs:
            quo, _ = quotient_group(g, h)
            r.check(is_pnc(quo), e.name, {"central_subgroup": [int(x) for x in h.members]})
    return r


def verify_quasi_nc_observed(catalog: Sequence[CatalogEntry]) -> list[TheoremResult]:
    hyp = "non-nilpotent quasi-NC groups"
    r6 = TheoremResult("T3.6", "Sylow subgroups are abelian", hyp, observed=True)
    r7 = TheoremResult("T3.7", "G/Z(G) is quasi-NC", hyp, observed=True)
    for e in _usable(catalog):
        g = e.group
        if is_nilpotent(g) or not is_quasi_nc(g):
            continue
        r6.instances += 1
        r6.check(is_a_group(g), e.name)
        r7.instances += 1
        quo, _ = quotient_group(g, center(g))
        r7.check(is_quasi_nc(quo), e.name)
    return [r6, r7]


def verify_a_group_center_quotient(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult("L3.8", "non-nilpotent PNC A-group: G/Z(G) is PNC", "non-nilpotent PNC A-groups")
    for e in _usable(catalog):
        g = e.group
        if is_nilpotent(g) or not is_a_group(g) or not is_pnc(g):
            continue
        r.instances += 1
        quo, _ = quotient_group(g, center(g))
        r.check(is_pnc(quo), e.name, {"center_order": center(g).order})
    return r


def sbp_case(g: Group) -> list[str]:
    """Which of the three SBP shapes ``g`` matches (should be exactly one)."""
    cases = []
    f = factorize(g.order)
    if len(f) == 1:
        cases.append("I")
    if len(f) == 2 and all(k == 1 for k in f.values()):
        cases.append("II")
    if len(f) == 2:
        for p, a in f.items():
            (q, b), = ((x, y) for x, y in f.items() if x != p)
            if b == 1 and a >= 2 and exp_order(p, q) == a:
                if find_isomorphism(g, sbp_type_iii(p, q)) is not None:
                    cases.append("III")
    return cases


def verify_sbp_shapes(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult("T3.9", "nontrivial SBP group is a p-group, of order pq, or Z_p^a x| Z_q with a = exp(p,q) >= 2", "nontrivial SBP groups", observed=True)
    for e in _usable(catalog):
        g = e.group
        if g.order == 1 or not is_sbp(g):
            continue
        r.instances += 1
        cases = sbp_case(g)
        r.check(len(cases) == 1, e.name, {"cases": cases, "order": g.order})
    return r


def _central_factor_extensions(g: Group, p: int) -> list[tuple[Group, Subgroup]]:
    """H = G x Z_p^k for a few small k, with A = {1} x Z_p^k."""
    out = []
    for fac in (cyclic(p), cyclic(p * p), elementary_abelian(p, 2)):
        if g.order * fac.order > caps().lattice:
            continue
        h = direct_product(g, fac, name=f"{g.name}x{fac.name}")
        a = Subgroup(h, indices_to_bits(g.identity * fac.order + j for j in range(fac.order)))
        out.append((h, a))
    return out


def _nonsplit_sl23() -> tuple[Group, Subgroup, Group]:
    """SL(2,3) over A4 with the central subgroup {+-I}; not a direct product."""
    q8 = generalized_quaternion(8)
    h = minimal_non_nilpotent_family(q8, cyclic(3), faithful_action(q8, cyclic(3)), name="Q8:Z3")
    return h, center(h), sbp_type_iii(2, 3)


def extension_triples_sbp(catalog: Sequence[CatalogEntry]):
    seen: list[Group] = []
    for e in _usable(catalog):
        g = e.group
        if g.order == 1 or is_nilpotent(g) or not is_sbp(g):
            continue
        if any(s.order == g.order and find_isomorphism(s, g) for s in seen):
            continue
        seen.append(g)
        f = fitting_subgroup(g)
        p = _prime_of(f.order)
        if p is None:
            continue
        yield g, g, g.trivial(), p
        for h, a in _central_factor_extensions(g, p):
            yield g, h, a, p
    if catalog:
        h, a, g = _nonsplit_sl23()
        yield g, h, a, 2


def _is_p_central(h: Group, a: Subgroup, g: Group, p: int) -> bool:
    return is_p_central_extension(h, a, g) and set(factorize(center(h).order)) <= {p}


def verify_sbp_extensions(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult("L3.10", "p-central extension of an SBP group with Fitting subgroup a p-group is PNC", "constructed extensions of non-nilpotent SBP catalog groups")
    for g, h, a, p in extension_triples_sbp(catalog):
        if not _is_p_central(h, a, g, p):
            continue
        r.instances += 1
        v = pnc_verdict(h)
        r.check(v.value, f"{h.name} over {g.name}", v.witness)
    if not catalog:
        return r
    # negative control: S4 is CP but not SBP, and S4 x Z2 is not PNC
    s4 = symmetric(4)
    r.notes.append(f"control S4xZ2 excluded: S4 sbp={is_sbp(s4)}")
    if is_sbp(s4):
        r.fail("S4 (control)", "S4 unexpectedly SBP")
    return r


def _is_generalized_quaternion(g: Group) -> bool:
    if g.order < 8 or factorize(g.order).keys() != {2}:
        return False
    involutions = int((g.element_orders == 2).sum())
    cyclic_ = int(g.element_orders.max()) == g.order
    return involutions == 1 and not cyclic_


def _cyclic_sylows(g: Group) -> bool:
    for p in factorize(g.order):
        s = sylow_subgroups(g, p)[0]
        if int(g.element_orders[s.members].max()) != s.order:
            return False
    return True


def cp_quotient_case(g: Group, p: int) -> tuple[str | None, dict]:
    P = p_core(g, p)
    quo, _ = quotient_group(g, P)
    info = {"p": p, "core_order": P.order, "quotient_order": quo.order}
    n = quo.order
    f = factorize(n)
    if n == 1 or (len(f) == 1 and p not in f and int(quo.element_orders.max()) == n):
        return "i", info
    if p != 2 and _is_generalized_quaternion(quo):
        return "ii", info
    if len(f) == 2 and p in f and _cyclic_sylows(quo):
        (q, _), = ((x, y) for x, y in f.items() if x != p)
        pa = p ** f[p]
        info["congruence_q_eq_1_mod_p^a"] = (q - 1) % pa == 0
        return "iii", info
    return None, info


def verify_cp_quotients_observed(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult("T3.11", "solvable CP group: at most two primes, and G/O_p(G) has one of three shapes", "solvable CP groups", observed=True)
    for e in _usable(catalog):
        g = e.group
        if g.order == 1 or not is_solvable(g) or not is_cp(g):
            continue
        r.instances += 1
        primes = [p for p in factorize(g.order) if p_core(g, p).order > 1]
        found = [cp_quotient_case(g, p) for p in primes]
        ok = len(factorize(g.order)) <= 2 and bool(found) and all(c is not None for c, _ in found)
        r.check(ok, e.name, [info | {"case": c} for c, info in found])
        for c, info in found:
            if info.get("congruence_q_eq_1_mod_p^a") is False:
                r.notes.append(f"{e.name}: q = 1 mod p^a does not hold ({info})")
    return r


def verify_cp_is_pnc(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult("L3.12", "every CP group is PNC", "CP groups")
    for e in _usable(catalog):
        if not is_cp(e.group):
            continue
        r.instances += 1
        v = pnc_verdict(e.group)
        r.check(v.value, e.name, v.witness)
    return r


def extension_triples_cp(catalog: Sequence[CatalogEntry]):
    seen: list[Group] = []
    for e in _usable(catalog):
        g = e.group
        f = factorize(g.order)
        if len(f) != 2 or not is_solvable(g) or not is_cp(g):
            continue
        if any(s.order == g.order and find_isomorphism(s, g) for s in seen):
            continue
        seen.append(g)
        p, q = max(f), min(f)
        if f[q] != 1:
            continue
        yield g, g, g.trivial(), p
        for h, a in _central_factor_extensions(g, p):
            yield g, h, a, p


def verify_cp_extensions(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult("T3.13", "p-central extension of a solvable CP group of order p^n q, p > q, is PNC", "constructed extensions of catalog groups")
    for g, h, a, p in extension_triples_cp(catalog):
        if not _is_p_central(h, a, g, p):
            continue
        r.instances += 1
        v = pnc_verdict(h)
        r.check(v.value, f"{h.name} over {g.name}", v.witness)
    if not catalog:
        return r
    # negative control: the hypothesis p > q is needed
    s4 = symmetric(4)
    h = direct_product(s4, cyclic(2), name="S4xZ2")
    a = Subgroup(h, indices_to_bits([0, 1]))
    applies = _is_p_central(h, a, s4, 2)
    r.notes.append(f"control S4xZ2 over S4 (p=2 < q=3): p-central={applies}, pnc={is_pnc(h)}")
    if not applies or is_pnc(h):
        r.fail("S4xZ2 (control)", {"p_central": applies, "pnc": is_pnc(h)})
    return r


def verify_abelian_maximal_normal(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult("P3.14", "solvable non-abelian PNC with an abelian maximal normal subgroup has order p^n q", "such groups")
    for e in _usable(catalog):
        g = e.group
        if is_abelian(g) or not is_solvable(g) or not is_pnc(g):
            continue
        lat = all_subgroups(g)
        idx = {h.bits: i for i, h in enumerate(lat.all)}
        if not any(lat.abelian[idx[m.bits]] for m in maximal_normal_subgroups(g)):
            continue
        r.instances += 1
        f = factorize(g.order)
        ok = (len(f) == 1 and sum(f.values()) >= 2) or (len(f) == 2 and 1 in f.values())
        r.check(ok, e.name, {"order": g.order})
    return r


def verify_dihedral(ns: Iterable[int] = range(3, 33)) -> TheoremResult:
    r = TheoremResult("C3.15", "dihedral group of order 2n is PNC iff n is a prime power", "n = 3..32")
    for n in ns:
        r.instances += 1
        g = dihedral(n)
        r.check(is_pnc(g) == _pp(n), g.name, {"n": n, "pnc": is_pnc(g)})
    return r


def split_decomposition(g: Group) -> dict | None:
    """Locate F(G) Sylow-p and a cyclic complement Q of prime order q acting nontrivially,
    with every proper subgroup of non-prime-power order abelian. None if any part fails."""
    f = fitting_subgroup(g)
    p = _prime_of(f.order)
    if p is None or f.order == 1 or f.order != p_part(g.order, p):
        return None
    idx = g.order // f.order
    if _prime_of(idx) != idx:
        return None
    cf = centralizer(g, f)
    q_sub = None
    for h in all_subgroups(g).of_order(idx):
        if (h.bits & f.bits) == 1 << g.identity and not h <= cf:
            q_sub = h
            break
    if q_sub is None:
        return None
    lat = all_subgroups(g)
    for h, ab in zip(lat.all, lat.abelian):
        if h.order < g.order and not _pp(h.order) and not ab:
            return None
    return {"p": p, "q": idx, "fitting_order": f.order, "complement": [int(x) for x in q_sub.members]}


def split_family() -> list[tuple[str, Group]]:
    z3, z2 = cyclic(3), cyclic(2)
    v4, q8 = elementary_abelian(2, 2), generalized_quaternion(8)
    return [
        ("[Z3]Z2", minimal_non_nilpotent_family(z3, z2, cyclic_action(z3, inversion(z3), 2))),
        ("[V4]Z3", sbp_type_iii(2, 3)),
        ("[Z5]Z2", minimal_non_nilpotent_family(cyclic(5), z2, cyclic_action(cyclic(5), inversion(cyclic(5)), 2))),
        ("[Z7]Z3", minimal_non_nilpotent_family(cyclic(7), z3, cyclic_action(cyclic(7), power_map(cyclic(7), 2), 3))),
        ("[Z11]Z5", minimal_non_nilpotent_family(cyclic(11), cyclic(5), cyclic_action(cyclic(11), power_map(cyclic(11), 3), 5))),
        ("[Z2^3]Z7", sbp_type_iii(2, 7)),
        ("[Q8]Z3", minimal_non_nilpotent_family(q8, z3, faithful_action(q8, z3))),
    ]


def split_controls() -> list[tuple[str, Group, str, dict]]:
    """(name, group, broken condition, expected predicate values)."""
    z3, z2 = cyclic(3), cyclic(2)
    e9 = elementary_abelian(3, 2)
    v4 = elementary_abelian(2, 2)
    # V4 acting on Z3: the first factor inverts, the second acts trivially
    flip = [tuple(range(3)) if v4.labels[k].startswith("(0") else inversion(z3) for k in range(4)]
    return [
        ("[Z3]Z2 trivial", minimal_non_nilpotent_family(z3, z2, cyclic_action(z3, tuple(range(3)), 2)), "nontrivial action", {"minimal_non_nilpotent": False, "pnc": True}),
        ("[Z3^2]Z2", minimal_non_nilpotent_family(e9, z2, cyclic_action(e9, inversion(e9), 2)), "proper non-p-subgroups abelian", {"minimal_non_nilpotent": False, "pnc": True}),
        ("[Z3](Z2xZ2)", minimal_non_nilpotent_family(z3, v4, flip), "cyclic complement of prime order", {"minimal_non_nilpotent": False, "pnc": False}),
    ]


def verify_minimal_non_nilpotent(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult("T3.16", "minimal non-nilpotent PNC iff G = [F(G)]Q with F(G) Sylow-p, Q of prime order acting nontrivially, proper non-p-subgroups abelian", "catalog (forward) and constructed family (backward)")
    for e in _usable(catalog):
        g = e.group
        if not (is_minimal_non_nilpotent(g) and is_pnc(g)):
            continue
        r.instances += 1
        d = split_decomposition(g)
        r.check(d is not None, e.name, {"direction": "forward"})
    if not catalog:
        return r
    for name, g in split_family():
        d = split_decomposition(g)
        if d is None:
            r.notes.append(f"family instance {name} does not meet the right-hand conditions")
            continue
        r.instances += 1
        ok = is_minimal_non_nilpotent(g) and is_pnc(g)
        r.check(ok, name, {"direction": "backward", "decomposition": d})
    for name, g, broken, expected in split_controls():
        got = {"minimal_non_nilpotent": is_minimal_non_nilpotent(g), "pnc": is_pnc(g)}
        r.notes.append(f"control {name} breaks '{broken}': {got}")
        if got != expected or split_decomposition(g) is not None:
            r.fail(f"{name} (control)", {"expected": expected, "got": got})
    return r


def verify_tags(catalog: Sequence[CatalogEntry]) -> TheoremResult:
    r = TheoremResult("TAGS", "catalog tags agree with computed predicate values", "tagged catalog entries")
    for e in _usable(catalog):
        if not e.tags:
            continue
        r.instances += 1
        for tag in sorted(e.tags):
            want = not tag.startswith("not:")
            name = tag[4:] if tag.startswith("not:") else tag
            if name not in PREDICATES:
                r.fail(e.name, {"unknown_tag": tag})
                continue
            got = PREDICATES[name](e.group).value
            r.check(got == want, e.name, {"tag": tag, "computed": got})
    return r


# ---------------------------------------------------------------- driver


def _one(fn) -> Callable[[Sequence[CatalogEntry]], list[TheoremResult]]:
    return lambda cat: [fn(cat)]


VERIFIERS: dict[str, Callable[[Sequence[CatalogEntry]], list[TheoremResult]]] = {
    "L1.1": _one(verify_nc_forms),
    "ZASSENHAUS": _one(verify_zassenhaus),
    "L2.1": _one(verify_subgroup_closed),
    "P2.2": _one(verify_direct_products),
    "C2.3": _one(verify_nilpotent_pnc),
    "L3.1": verify_fitting_center_derived,
    "L3.4": _one(verify_supersolvable_fitting),
    "L3.5": _one(verify_central_quotients),
    "T3.6": verify_quasi_nc_observed,
    "L3.8": _one(verify_a_group_center_quotient),
    "T3.9": _one(verify_sbp_shapes),
    "L3.10": _one(verify_sbp_extensions),
    "T3.11": _one(verify_cp_quotients_observed),
    "L3.12": _one(verify_cp_is_pnc),
    "T3.13": _one(verify_cp_extensions),
    "P3.14": _one(verify_abelian_maximal_normal),
    "C3.15": lambda cat: [verify_dihedral(range(3, 33) if cat else ())],
    "T3.16": _one(verify_minimal_non_nilpotent),
    "TAGS": _one(verify_tags),
}

# ids produced by grouped verifiers map back to the verifier that computes them
ALIASES = {"L3.2": "L3.1", "L3.3": "L3.1", "T3.7": "T3.6"}
KNOWN_IDS = tuple(VERIFIERS) + tuple(ALIASES)


@dataclass
class RunReport:
    results: list[TheoremResult]

    @property
    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "vacuous": 0}
        for r in self.results:
            out[r.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def to_json(self) -> dict:
        return {"results": [r.to_json() for r in self.results], "summary": self.summary}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def table(self) -> str:
        lines = [f"{'id':<11} {'status':<8} {'inst':>5} {'checks':>7}  statement"]
        for r in self.results:
            tag = " (observed)" if r.observed else ""
            lines.append(f"{r.id:<11} {r.status:<8} {r.instances:>5} {r.checks_passed:>7}  {r.statement}{tag}")
            for f in r.failures[:3]:
                lines.append(f"{'':<11} ! {f['group']}: {json.dumps(f['witness'], sort_keys=True)[:160]}")
        s = self.summary
        lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['vacuous']} vacuous")
        return "\n".join(lines)


def resolve_ids(only: Iterable[str] | None) -> list[str]:
    if not only:
        return list(VERIFIERS)
    out = []
    for vid in only:
        if vid not in KNOWN_IDS:
            raise KeyError(f"unknown verifier id {vid!r}")
        base = ALIASES.get(vid, vid)
        if base not in out:
            out.append(base)
    return [v for v in VERIFIERS if v in out]


def run_all(catalog: Sequence[CatalogEntry], only: Iterable[str] | None = None) -> RunReport:
    """Run verifiers in a fixed order.

    Constructed instances and controls ride along with a non-empty catalog,
    so an empty catalog yields an all-vacuous report.
    """
    results: list[TheoremResult] = []
    wanted = set(only or ())
    for vid in resolve_ids(only):
        try:
            produced = VERIFIERS[vid](catalog)
        except GroupError as exc:
            err = TheoremResult(vid, "verifier raised", "")
            err.fail("-", f"{type(exc).__name__}: {exc}")
            produced = [err]
        if wanted:
            produced = [r for r in produced if r.id in wanted]
        results.extend(produced)
    return RunReport(results)
