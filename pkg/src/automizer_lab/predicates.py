"""Decision procedures for the group properties, each with a deciding witness.

Every ``*_verdict`` function returns a :class:`Verdict`; the matching
``is_*`` function returns only the boolean.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import _kernels as K
from .config import caps
from .errors import GroupError, NotCentral, OrderCapExceeded
from .group import Group, Subgroup, quotient_group
from .iso import automorphism_group, find_isomorphism
from .numtheory import factorize, is_prime, is_prime_power
from .subgroups import (
    all_subgroups,
    automizer,
    center,
    centralizer,
    derived_series,
    inner_automorphism_group,
    is_normal,
    lower_central_series,
    normalizer,
    subgroup_is_nilpotent,
    sylow_subgroups,
)


@dataclass(frozen=True)
class Verdict:
    value: bool
    witness: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.value

    def to_json(self) -> dict:
        return {"value": self.value, "witness": self.witness, "detail": self.detail}


def describe_subgroup(h: Subgroup) -> dict:
    return {"kind": "subgroup", "order": h.order, "elements": [int(x) for x in h.members]}


def describe_element(g: Group, a: int) -> dict:
    return {"kind": "element", "index": int(a), "label": g.labels[a], "order": int(g.element_orders[a])}


def subgroup_from_witness(g: Group, witness: dict) -> Subgroup:
    from .group import indices_to_bits

    return Subgroup(g, indices_to_bits(witness["elements"]))


def _order_str(n: int) -> str:
    return "*".join(f"{p}^{k}" if k > 1 else str(p) for p, k in sorted(factorize(n).items())) or "1"


# ---------------------------------------------------------------- basic


def abelian_verdict(g: Group) -> Verdict:
    t = g.table
    bad = np.argwhere(t != t.T)
    if bad.size:
        a, b = (int(x) for x in bad[0])
        return Verdict(False, {"kind": "pair", "elements": [a, b]}, f"{g.labels[a]} and {g.labels[b]} do not commute")
    return Verdict(True, detail="all pairs commute")


def prime_power_order_verdict(h) -> Verdict:
    n = h.order
    return Verdict(is_prime_power(n), detail=f"order {_order_str(n)}")


def nilpotent_verdict(g: Group) -> Verdict:
    series = lower_central_series(g)
    last = series[-1]
    if last.order == 1:
        return Verdict(True, detail=f"lower central series has length {len(series) - 1}")
    return Verdict(False, describe_subgroup(last), f"lower central series stops at order {last.order}")


def nilpotent_by_sylows(g: Group) -> bool:
    """Cross-check: a finite group is nilpotent iff every Sylow subgroup is normal."""
    return all(len(sylow_subgroups(g, p)) == 1 for p in factorize(g.order))


def solvable_verdict(g: Group) -> Verdict:
    series = derived_series(g)
    last = series[-1]
    if last.order == 1:
        return Verdict(True, detail=f"derived length {len(series) - 1}")
    return Verdict(False, describe_subgroup(last), f"derived series stops at order {last.order}")


def _cyclic_factor(g: Group, upper: Subgroup, lower: Subgroup) -> bool:
    want = upper.order // lower.order
    rel = K.relative_orders(g.table, g.identity, upper.members, lower.mask)
    return bool((rel == want).any())


def supersolvable_verdict(g: Group) -> Verdict:
    """Depth-first search for 1 = N0 < ... < Nk = G, all Ni normal in G, cyclic factors."""
    normals = sorted(all_subgroups(g).normal_subgroups(), key=lambda h: (h.order, h.bits))
    dead: set[int] = set()
    top = g.all_bits

    def dfs(cur: Subgroup, chain: list[Subgroup]) -> list[Subgroup] | None:
        if cur.bits == top:
            return chain
        if cur.bits in dead:
            return None
        for m in normals:
            if m.order > cur.order and cur.bits & ~m.bits == 0 and _cyclic_factor(g, m, cur):
                found = dfs(m, chain + [m])
                if found is not None:
                    return found
        dead.add(cur.bits)
        return None

    chain = dfs(g.trivial(), [g.trivial()])
    if chain is not None:
        return Verdict(True, {"kind": "chain", "orders": [h.order for h in chain]}, "normal series with cyclic factors found")
    return Verdict(False, detail="no normal series with cyclic factors exists")


def supersolvable_by_maximal_index(g: Group) -> bool:
    """Cross-check: G is supersolvable iff every maximal subgroup has prime index."""
    lat = all_subgroups(g)
    proper = lat.proper()
    for h in proper:
        if not any(h < k for k in proper):
            if not is_prime(g.order // h.order):
                return False
    return True


def a_group_verdict(g: Group) -> Verdict:
    for p in sorted(factorize(g.order)):
        for s in sylow_subgroups(g, p):
            if not is_abelian_sub(s):
                return Verdict(False, describe_subgroup(s), f"Sylow {p}-subgroup of order {s.order} is non-abelian")
    return Verdict(True, detail="every Sylow subgroup is abelian")


def cp_verdict(g: Group) -> Verdict:
    for a in range(g.order):
        o = int(g.element_orders[a])
        if not is_prime_power(o):
            return Verdict(False, describe_element(g, a), f"element of order {o}")
    return Verdict(True, detail="every element has prime-power order")


def sbp_verdict(g: Group) -> Verdict:
    for h in all_subgroups(g).proper():
        if not is_prime_power(h.order):
            return Verdict(False, describe_subgroup(h), f"proper subgroup of order {h.order}")
    return Verdict(True, detail="every proper subgroup has prime-power order")


# ---------------------------------------------------------------- automizer conditions


def _scan(g: Group, select: Callable[[Subgroup, bool], bool], ok: Callable[[Subgroup, Subgroup, Subgroup], bool], what: str, scope: str) -> Verdict:
    lat = all_subgroups(g)
    checked = 0
    for h, nrm, ab in zip(lat.all, lat.normal, lat.abelian):
        if not ab or not select(h, nrm):
            continue
        checked += 1
        n, c = normalizer(g, h), centralizer(g, h)
        if not ok(h, n, c):
            return Verdict(False, describe_subgroup(h), f"{what}: subgroup of order {h.order} has |N|={n.order}, |C|={c.order}")
    return Verdict(True, detail=f"{checked} {scope} checked")


def nc_verdict(g: Group) -> Verdict:
    """N_G(A) = C_G(A) for every abelian subgroup A."""
    return _scan(g, lambda h, nrm: True, lambda h, n, c: n == c, "N != C", "abelian subgroups")


def nc_nonmaximal_verdict(g: Group) -> Verdict:
    """N_G(A) = C_G(A) for every abelian A that is not maximal abelian (C_G(A) != A)."""
    return _scan(g, lambda h, nrm: True, lambda h, n, c: c == h or n == c, "non-maximal abelian with N != C", "abelian subgroups")


def nc_prime_power_form_verdict(g: Group) -> Verdict:
    """C_G(A) = A or C_G(A) = N_G(A) for every abelian A of prime-power order."""
    return _scan(g, lambda h, nrm: is_prime_power(h.order), lambda h, n, c: c == h or n == c, "prime-power abelian with C != A, C != N", "abelian subgroups of prime-power order")


def quasi_nc_verdict(g: Group) -> Verdict:
    return _scan(g, lambda h, nrm: not nrm, lambda h, n, c: n == c, "non-normal abelian with nontrivial automizer", "non-normal abelian subgroups")


def nnc_verdict(g: Group) -> Verdict:
    return _scan(g, lambda h, nrm: not nrm, lambda h, n, c: n == c or c == h, "non-normal abelian with N != C and C != A", "non-normal abelian subgroups")


def pnc_verdict(g: Group) -> Verdict:
    return _scan(g, lambda h, nrm: not is_prime_power(h.order), lambda h, n, c: n == c, "abelian of non-prime-power order with N != C", "abelian subgroups of non-prime-power order")


def minimal_non_nilpotent_verdict(g: Group) -> Verdict:
    nil = nilpotent_verdict(g)
    if nil.value:
        return Verdict(False, detail="group is nilpotent")
    for h in all_subgroups(g).proper():
        if not subgroup_is_nilpotent(h):
            return Verdict(False, describe_subgroup(h), f"proper subgroup of order {h.order} is not nilpotent")
    return Verdict(True, detail="non-nilpotent, every proper subgroup nilpotent")


# ---------------------------------------------------------------- subgroup-level


def has_small_automizer(g: Group, h: Subgroup) -> bool:
    """Aut_G(H) isomorphic to Inn(H)."""
    if is_abelian_sub(h):
        return normalizer(g, h) == centralizer(g, h)
    if h.order > caps().aut:
        raise OrderCapExceeded(f"subgroup order {h.order} beyond automorphism cap {caps().aut}")
    aut = automizer(g, h).quotient
    hg, _ = h.as_group()
    return find_isomorphism(aut, inner_automorphism_group(hg)) is not None


def has_large_automizer(g: Group, h: Subgroup) -> bool:
    """Aut_G(H) isomorphic to Aut(H)."""
    if h.order > caps().aut:
        raise OrderCapExceeded(f"subgroup order {h.order} beyond automorphism cap {caps().aut}")
    aut = automizer(g, h).quotient
    hg, _ = h.as_group()
    full = automorphism_group(hg)
    if full.order != aut.order:
        return False
    return find_isomorphism(aut, full) is not None


def is_abelian_sub(h: Subgroup) -> bool:
    m = h.members
    block = h.parent.table[np.ix_(m, m)]
    return bool(np.array_equal(block, block.T))


def is_p_central_extension(h: Group, center_sub: Subgroup, g: Group) -> bool:
    """``h / center_sub`` is isomorphic to ``g`` and Z(h) has prime-power order."""
    z = center(h)
    if not center_sub <= z:
        raise NotCentral("subgroup is not contained in the center")
    quo, _ = quotient_group(h, center_sub)
    return is_prime_power(z.order) and find_isomorphism(quo, g) is not None


# ---------------------------------------------------------------- registry and report


def _boolean(fn):
    def inner(g):
        return fn(g).value

    inner.__name__ = fn.__name__.replace("_verdict", "")
    inner.__doc__ = fn.__doc__
    return inner


PREDICATES: dict[str, Callable[[Group], Verdict]] = {
    "a_group": a_group_verdict,
    "abelian": abelian_verdict,
    "cp": cp_verdict,
    "minimal_non_nilpotent": minimal_non_nilpotent_verdict,
    "nc": nc_verdict,
    "nc_nonmaximal": nc_nonmaximal_verdict,
    "nc_prime_power_form": nc_prime_power_form_verdict,
    "nilpotent": nilpotent_verdict,
    "nnc": nnc_verdict,
    "pnc": pnc_verdict,
    "prime_power_order": prime_power_order_verdict,
    "quasi_nc": quasi_nc_verdict,
    "sbp": sbp_verdict,
    "solvable": solvable_verdict,
    "supersolvable": supersolvable_verdict,
}

is_abelian = _boolean(abelian_verdict)
is_nilpotent = _boolean(nilpotent_verdict)
is_solvable = _boolean(solvable_verdict)
is_supersolvable = _boolean(supersolvable_verdict)
is_a_group = _boolean(a_group_verdict)
is_cp = _boolean(cp_verdict)
is_sbp = _boolean(sbp_verdict)
is_nc = _boolean(nc_verdict)
is_nc_nonmaximal = _boolean(nc_nonmaximal_verdict)
is_quasi_nc = _boolean(quasi_nc_verdict)
is_nnc = _boolean(nnc_verdict)
is_pnc = _boolean(pnc_verdict)
is_minimal_non_nilpotent = _boolean(minimal_non_nilpotent_verdict)


def is_prime_power_order(h) -> bool:
    return is_prime_power(h.order)


@dataclass
class PropertyReport:
    group: str
    order: int
    properties: dict[str, Verdict] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)

    def value(self, name: str) -> bool | None:
        v = self.properties.get(name)
        return None if v is None else v.value

    def to_json(self) -> dict:
        props = {k: self.properties[k].to_json() for k in sorted(self.properties)}
        for k in sorted(self.errors):
            props[k] = {"value": None, "witness": None, "detail": self.errors[k]}
        return {"group": self.group, "order": self.order, "properties": dict(sorted(props.items()))}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def values(self) -> dict[str, bool | None]:
        out = {k: v.value for k, v in self.properties.items()}
        out.update({k: None for k in self.errors})
        return dict(sorted(out.items()))


def property_report(g: Group, names=None) -> PropertyReport:
    names = sorted(PREDICATES) if names is None else sorted(names)
    unknown = [n for n in names if n not in PREDICATES]
    if unknown:
        raise KeyError(f"unknown properties: {', '.join(unknown)}")
    rep = PropertyReport(g.name or "?", g.order)
    for name in names:
        try:
            rep.properties[name] = PREDICATES[name](g)
        except GroupError as exc:
            rep.errors[name] = f"{type(exc).__name__}: {exc}"
    return rep
