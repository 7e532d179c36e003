"""Isomorphism search and automorphism groups by backtracking over generator images."""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterator

import numpy as np

from . import _kernels as K
from .config import caps
from .errors import OrderCapExceeded
from .group import Group, GroupMap, group_from_table


def generating_set(g: Group) -> list[int]:
    """Small generating set, built greedily from elements of largest order.

    Each new generator lies outside the subgroup generated so far, so the
    subgroup at least doubles and the set has at most log2(|g|) elements.
    """
    if "gens" in g._memo:
        return g._memo["gens"]
    by_order = sorted(range(g.order), key=lambda a: (-int(g.element_orders[a]), a))
    gens: list[int] = []
    mask = np.zeros(g.order, dtype=bool)
    mask[g.identity] = True
    for a in by_order:
        if mask.all():
            break
        if not mask[a]:
            gens.append(a)
            mask = K.closure(g.table, g.identity, gens)
    g._memo["gens"] = gens
    return gens


def _words(g: Group, gens: list[int]) -> list[list[tuple[int, int, int]]]:
    """For each prefix gens[:j+1], BFS steps (a, s, a*s) discovering the new part of <gens[:j+1]>.

    Returns, per depth, the list of (element, generator position, product)
    edges to check for that depth.
    """
    t = g.table.tolist()
    reached = {g.identity}
    order = [g.identity]
    per_depth = []
    for j in range(len(gens)):
        edges = []
        # new elements come from re-closing the current set with gens[:j+1]
        head = 0
        while head < len(order):
            a = order[head]
            head += 1
            for pos in range(j + 1):
                b = t[a][gens[pos]]
                edges.append((a, pos, b))
                if b not in reached:
                    reached.add(b)
                    order.append(b)
        per_depth.append(edges)
    return per_depth


def _search(g1: Group, g2: Group) -> Iterator[tuple[int, ...]]:
    gens = generating_set(g1)
    o1, o2 = g1.element_orders, g2.element_orders
    cands = [[b for b in range(g2.order) if o2[b] == o1[s]] for s in gens]
    edges = _words(g1, gens)
    t2 = g2.table.tolist()
    n = g1.order
    img_gen: list[int] = [0] * len(gens)

    def extend(depth: int, phi: list[int], used: set) -> Iterator[tuple[int, ...]]:
        if depth == len(gens):
            yield tuple(phi)
            return
        for c in cands[depth]:
            img_gen[depth] = c
            new_phi = phi.copy()
            new_used = set(used)
            ok = True
            for a, pos, b in edges[depth]:
                val = t2[new_phi[a]][img_gen[pos]]
                cur = new_phi[b]
                if cur < 0:
                    if val in new_used:
                        ok = False
                        break
                    new_phi[b] = val
                    new_used.add(val)
                elif cur != val:
                    ok = False
                    break
            if ok:
                yield from extend(depth + 1, new_phi, new_used)

    phi0 = [-1] * n
    phi0[g1.identity] = g2.identity
    if not gens:
        yield tuple(phi0)
        return
    yield from extend(0, phi0, {g2.identity})


def find_isomorphism(g1: Group, g2: Group) -> GroupMap | None:
    if g1.order != g2.order:
        return None
    cap = caps().iso
    if g1.order > cap and g2.order > cap:
        raise OrderCapExceeded(f"isomorphism search beyond cap {cap}")
    if Counter(g1.element_orders.tolist()) != Counter(g2.element_orders.tolist()):
        return None
    if g1.is_abelian() != g2.is_abelian():
        return None
    for images in _search(g1, g2):
        return GroupMap(g1, g2, images)
    return None


def are_isomorphic(g1: Group, g2: Group) -> bool:
    return find_isomorphism(g1, g2) is not None


def automorphisms(g: Group) -> list[tuple[int, ...]]:
    """All automorphisms as image tuples, in backtracking (lexicographic by generator image) order."""
    cap = caps().aut
    if g.order > cap:
        raise OrderCapExceeded(f"automorphism search beyond cap {cap}")
    out = []
    for images in _search(g, g):
        out.append(images)
        if len(out) > caps().closure:
            raise OrderCapExceeded(f"automorphism group exceeds cap {caps().closure}")
    return out


def automorphism_group(g: Group) -> Group:
    """Aut(g) as a concrete group; the product ``a*b`` applies ``a`` first, then ``b``."""
    return group_of_automorphisms(g, automorphisms(g))


def group_of_automorphisms(g: Group, auts: list[tuple[int, ...]]) -> Group:
    """Concrete group on ``auts`` (closed under composition); element i is ``auts[i]``."""
    gens = generating_set(g)
    m = len(auts)
    arr = np.asarray(auts, dtype=np.int64).reshape(m, g.order)
    if not gens:
        return group_from_table(np.zeros((1, 1), dtype=np.int64), labels=["id"], name=f"Aut({g.name})")
    n = g.order
    weights = n ** np.arange(len(gens), dtype=np.int64)
    keys = arr[:, gens] @ weights
    order = np.argsort(keys)
    # (a then b)(s) = b[a[s]]
    composed = arr[:, arr[:, gens]]  # [b, a, k] = b[a[gens[k]]]
    table = order[np.searchsorted(keys[order], composed @ weights)].T
    labels = ["[" + ",".join(str(x) for x in arr[i, gens]) + "]" for i in range(m)]
    return group_from_table(table, labels=labels, name=f"Aut({g.name})")


def find_monomorphism(g1: Group, g2: Group) -> GroupMap | None:
    """An injective homomorphism g1 -> g2, or None."""
    if g2.order % g1.order:
        return None
    for images in _search(g1, g2):
        return GroupMap(g1, g2, images)
    return None
