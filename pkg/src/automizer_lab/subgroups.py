"""Subgroup lattice and the structural subgroups built on it."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .config import caps
from .errors import LatticeBlowup, OrderCapExceeded, ParentMismatch
from .group import Group, Subgroup, indices_to_bits, mask_to_bits, quotient_group
from .numtheory import factorize, is_prime_power, p_part


def _check_parent(g: Group, h: Subgroup) -> None:
    if h.parent is not g:
        raise ParentMismatch(f"subgroup belongs to {h.parent!r}, not {g!r}")


def _from_mask(g: Group, mask: np.ndarray) -> Subgroup:
    return Subgroup(g, mask_to_bits(mask))


def generated_subgroup(g: Group, seed) -> Subgroup:
    seed = [int(x) for x in seed]
    if not seed:
        return g.trivial()
    return _from_mask(g, K.closure(g.table, g.identity, sorted(set(seed))))


def join(g: Group, *subs: Subgroup) -> Subgroup:
    bits = 0
    for h in subs:
        _check_parent(g, h)
        bits |= h.bits
    return generated_subgroup(g, Subgroup(g, bits).members) if bits else g.trivial()


def cyclic_subgroup(g: Group, a: int) -> Subgroup:
    return generated_subgroup(g, [a])


@dataclass(frozen=True, eq=False)
class SubgroupLattice:
    """Every subgroup of ``parent``, sorted by (order, bitset), with per-subgroup flags."""

    parent: Group
    all: tuple[Subgroup, ...]
    normal: tuple[bool, ...]
    abelian: tuple[bool, ...]
    prime_power: tuple[bool, ...]

    def __len__(self):
        return len(self.all)

    def __iter__(self):
        return iter(self.all)

    def normal_subgroups(self) -> list[Subgroup]:
        return [h for h, f in zip(self.all, self.normal) if f]

    def abelian_subgroups(self) -> list[Subgroup]:
        return [h for h, f in zip(self.all, self.abelian) if f]

    def of_order(self, k: int) -> list[Subgroup]:
        return [h for h in self.all if h.order == k]

    def proper(self) -> list[Subgroup]:
        return [h for h in self.all if h.order < self.parent.order]


def all_subgroups(g: Group) -> SubgroupLattice:
    """Complete lattice by joining subgroups with cyclic subgroups until nothing new appears.

    Only cyclic subgroups of prime-power order are used as building blocks:
    every cyclic subgroup is the join of its Sylow parts, and every subgroup
    is the join of its cyclic subgroups.
    """
    if "lattice" in g._memo:
        return g._memo["lattice"]
    cap = caps()
    if g.order > cap.lattice:
        raise OrderCapExceeded(f"lattice of order {g.order} beyond cap {cap.lattice}")
    table, e = g.table, g.identity
    blocks: dict[int, int] = {}
    for a in range(g.order):
        if a != e and is_prime_power(int(g.element_orders[a])):
            bits = mask_to_bits(K.closure(table, e, [a]))
            blocks.setdefault(bits, a)
    block_list = sorted(blocks.items())

    gens_of: dict[int, tuple[int, ...]] = {1 << e: ()}
    frontier = [1 << e]
    while frontier:
        nxt = []
        for hb in frontier:
            hg = gens_of[hb]
            for cb, x in block_list:
                if cb & ~hb == 0:
                    continue
                jg = hg + (x,)
                jb = mask_to_bits(K.closure(table, e, jg))
                if jb not in gens_of:
                    gens_of[jb] = jg
                    nxt.append(jb)
                    if len(gens_of) > cap.lattice_size:
                        raise LatticeBlowup(f"more than {cap.lattice_size} subgroups")
        frontier = nxt

    subs = sorted((Subgroup(g, b) for b in gens_of), key=lambda h: (h.order, h.bits))
    normal = tuple(is_normal(g, h) for h in subs)
    abelian = tuple(_is_abelian_sub(g, h) for h in subs)
    pp = tuple(is_prime_power(h.order) for h in subs)
    lat = SubgroupLattice(g, tuple(subs), normal, abelian, pp)
    g._memo["lattice"] = lat
    return lat


def brute_force_subgroups(g: Group) -> list[Subgroup]:
    """Filter all 2**n subsets; an oracle for :func:`all_subgroups` at tiny orders."""
    n = g.order
    if n > 20:
        raise OrderCapExceeded("brute-force subset scan is limited to order 20")
    t = g.table
    out = []
    for bits in range(1 << n):
        if not bits >> g.identity & 1:
            continue
        mem = [i for i in range(n) if bits >> i & 1]
        if all(bits >> int(t[a, b]) & 1 for a in mem for b in mem):
            out.append(Subgroup(g, bits))
    return sorted(out, key=lambda h: (h.order, h.bits))


def _is_abelian_sub(g: Group, h: Subgroup) -> bool:
    m = h.members
    block = g.table[np.ix_(m, m)]
    return bool(np.array_equal(block, block.T))


def is_abelian_subgroup(h: Subgroup) -> bool:
    return _is_abelian_sub(h.parent, h)


def centralizer(g: Group, h: Subgroup) -> Subgroup:
    _check_parent(g, h)
    return _from_mask(g, K.centralizer(g.table, h.members))


def normalizer(g: Group, h: Subgroup) -> Subgroup:
    _check_parent(g, h)
    return _from_mask(g, K.normalizer(g.table, g.inverse, h.mask, h.members))


def is_normal(g: Group, h: Subgroup) -> bool:
    _check_parent(g, h)
    return bool(K.normalizer(g.table, g.inverse, h.mask, h.members).all())


def center(g: Group) -> Subgroup:
    if "center" not in g._memo:
        t = g.table
        g._memo["center"] = _from_mask(g, (t == t.T).all(axis=1))
    return g._memo["center"]


def commutator_subgroup(g: Group, a: Subgroup, b: Subgroup) -> Subgroup:
    """``[A, B]``, generated by all ``x*y*x^-1*y^-1`` with x in A, y in B."""
    t, inv = g.table, g.inverse
    x = a.members[:, None]
    y = b.members[None, :]
    comm = t[t[t[x, y], inv[x]], inv[y]]
    return generated_subgroup(g, np.unique(comm))


def derived_subgroup(g: Group) -> Subgroup:
    if "derived" not in g._memo:
        w = g.whole()
        g._memo["derived"] = commutator_subgroup(g, w, w)
    return g._memo["derived"]


def conjugacy_class(g: Group, a: int) -> np.ndarray:
    t, inv = g.table, g.inverse
    return np.unique(t[t[inv, a], np.arange(g.order)])


def normal_closure(g: Group, seed) -> Subgroup:
    seed = list(seed)
    if not seed:
        return g.trivial()
    conj = np.unique(np.concatenate([conjugacy_class(g, int(a)) for a in seed]))
    return generated_subgroup(g, conj)


def lower_central_series(g: Group) -> list[Subgroup]:
    series = [g.whole()]
    while True:
        nxt = commutator_subgroup(g, g.whole(), series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def derived_series(g: Group) -> list[Subgroup]:
    series = [g.whole()]
    while True:
        cur = series[-1]
        nxt = commutator_subgroup(g, cur, cur)
        if nxt == cur:
            return series
        series.append(nxt)


def subgroup_is_nilpotent(h: Subgroup) -> bool:
    """Lower central series of ``h`` computed inside its parent's table."""
    g = h.parent
    cur = h
    while cur.order > 1:
        nxt = commutator_subgroup(g, h, cur)
        if nxt == cur:
            return False
        cur = nxt
    return True


def sylow_subgroups(g: Group, p: int) -> list[Subgroup]:
    k = p_part(g.order, p)
    if k == 1:
        return [g.trivial()]
    return all_subgroups(g).of_order(k)


def hall_p_prime_subgroups(g: Group, p: int) -> list[Subgroup]:
    return all_subgroups(g).of_order(g.order // p_part(g.order, p))


def maximal_normal_subgroups(g: Group) -> list[Subgroup]:
    props = [h for h in all_subgroups(g).normal_subgroups() if h.order < g.order]
    return [h for h in props if not any(h < k for k in props)]


def fitting_subgroup(g: Group) -> Subgroup:
    """Join of all normal nilpotent subgroups in the lattice."""
    if "fitting" in g._memo:
        return g._memo["fitting"]
    lat = all_subgroups(g)
    members = [h for h in lat.normal_subgroups() if subgroup_is_nilpotent(h)]
    f = join(g, *members)
    assert is_normal(g, f) and subgroup_is_nilpotent(f), "join of normal nilpotent subgroups must be normal nilpotent"
    g._memo["fitting"] = f
    return f


def p_core(g: Group, p: int) -> Subgroup:
    """Largest normal p-subgroup, without the lattice.

    An element lies in O_p(G) exactly when its normal closure is a p-group,
    so O_p(G) is generated by those elements.
    """
    good = []
    for a in range(g.order):
        o = int(g.element_orders[a])
        if o > 1 and set(factorize(o)) == {p}:
            nc = normal_closure(g, [a])
            if set(factorize(nc.order)) <= {p}:
                good.append(a)
    return generated_subgroup(g, good)


def fitting_by_p_cores(g: Group) -> Subgroup:
    cores = [p_core(g, p) for p in factorize(g.order)]
    return join(g, *cores) if cores else g.trivial()


@dataclass(frozen=True, eq=False)
class Automizer:
    """Aut_G(H) = N_G(H) / C_G(H), carried as a concrete group."""

    subject: Subgroup
    normalizer: Subgroup
    centralizer: Subgroup
    quotient: Group

    @property
    def order(self) -> int:
        return self.quotient.order

    def is_trivial(self) -> bool:
        return self.quotient.order == 1


def _relative(h: Subgroup, host: Subgroup) -> int:
    """``h`` viewed inside the standalone group built from ``host``."""
    pos = {int(x): i for i, x in enumerate(host.members)}
    return indices_to_bits(pos[int(x)] for x in h.members)


def automizer(g: Group, h: Subgroup) -> Automizer:
    n = normalizer(g, h)
    c = centralizer(g, h)
    assert c <= n
    ng, _ = n.as_group(name="N")
    cq = Subgroup(ng, _relative(c, n))
    quo, _ = quotient_group(ng, cq, name="N/C")
    return Automizer(h, n, c, quo)


def inner_automorphism_group(h: Group) -> Group:
    """Inn(H) realised as H / Z(H)."""
    quo, _ = quotient_group(h, center(h), name=f"Inn({h.name})")
    return quo
