"""Inner loops over Cayley tables.

Every kernel exists twice: a plain-loop version compiled with numba and a
vectorised numpy version. The numba path is used when numba imports and the
environment variable ``AUTOMIZER_LAB_NUMBA`` is not set to ``0``. Both
namespaces are importable directly (``numba_kernels`` / ``numpy_kernels``) so
tests and the benchmark can compare them.
"""
from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and os.environ.get("AUTOMIZER_LAB_NUMBA", "1") != "0"

_NONE3 = (-1, -1, -1)


# ---------------------------------------------------------------- loops


def _latin_violation_loop(table):
    n = table.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        seen[:] = False
        for j in range(n):
            v = table[i, j]
            if v < 0 or v >= n or seen[v]:
                return 0, i, j
            seen[v] = True
    for j in range(n):
        seen[:] = False
        for i in range(n):
            v = table[i, j]
            if seen[v]:
                return 1, i, j
            seen[v] = True
    return -1, -1, -1


def _assoc_violation_loop(table):
    n = table.shape[0]
    for a in range(n):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                if table[ab, c] != table[a, table[b, c]]:
                    return a, b, c
    return -1, -1, -1


def _light_violation_loop(table, gens):
    n = table.shape[0]
    for k in range(gens.shape[0]):
        g = gens[k]
        for x in range(n):
            xg = table[x, g]
            for y in range(n):
                if table[xg, y] != table[x, table[g, y]]:
                    return x, g, y
    return -1, -1, -1


def _closure_loop(table, identity, gens):
    n = table.shape[0]
    mask = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    mask[identity] = True
    queue[0] = identity
    size = 1
    head = 0
    while head < size:
        a = queue[head]
        head += 1
        for k in range(gens.shape[0]):
            b = table[a, gens[k]]
            if not mask[b]:
                mask[b] = True
                queue[size] = b
                size += 1
    return mask


def _centralizer_loop(table, members):
    n = table.shape[0]
    out = np.ones(n, dtype=np.bool_)
    for a in range(n):
        for k in range(members.shape[0]):
            x = members[k]
            if table[a, x] != table[x, a]:
                out[a] = False
                break
    return out


def _normalizer_loop(table, inverse, mask, members):
    n = table.shape[0]
    out = np.ones(n, dtype=np.bool_)
    for a in range(n):
        ai = inverse[a]
        for k in range(members.shape[0]):
            if not mask[table[table[a, members[k]], ai]]:
                out[a] = False
                break
    return out


def _element_orders_loop(table, identity):
    n = table.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    for a in range(n):
        k = 1
        x = a
        while x != identity:
            x = table[x, a]
            k += 1
        orders[a] = k
    return orders


def _relative_orders_loop(table, identity, elems, mask):
    # least k >= 1 with x**k in mask, per x in elems
    out = np.zeros(elems.shape[0], dtype=np.int64)
    for i in range(elems.shape[0]):
        a = elems[i]
        x = a
        k = 1
        while not mask[x]:
            x = table[x, a]
            k += 1
        out[i] = k
    return out


# ---------------------------------------------------------------- numpy


def _first(flags):
    idx = np.flatnonzero(flags)
    return int(idx[0]) if idx.size else -1


def _latin_violation_np(table):
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        bad = np.argwhere((table < 0) | (table >= n))[0]
        return 0, int(bad[0]), int(bad[1])
    target = np.arange(n)
    rows = (np.sort(table, axis=1) != target).any(axis=1)
    i = _first(rows)
    if i >= 0:
        row = table[i]
        _, first = np.unique(row, return_index=True)
        dup = np.setdiff1d(np.arange(n), first)
        return 0, i, int(dup[0])
    cols = (np.sort(table, axis=0) != target[:, None]).any(axis=0)
    j = _first(cols)
    if j >= 0:
        col = table[:, j]
        _, first = np.unique(col, return_index=True)
        dup = np.setdiff1d(np.arange(n), first)
        return 1, int(dup[0]), j
    return _NONE3


def _assoc_violation_np(table):
    n = table.shape[0]
    right_all = table[:, table]  # [a, b, c] = a . (b . c)
    for a in range(n):
        left = table[table[a]]  # [b, c] = (a . b) . c
        bad = np.argwhere(left != right_all[a])
        if bad.size:
            return a, int(bad[0, 0]), int(bad[0, 1])
    return _NONE3


def _light_violation_np(table, gens):
    for g in gens:
        left = table[table[:, g]]  # [x, y] = (x . g) . y
        right = table[:, table[g]]  # [x, y] = x . (g . y)
        bad = np.argwhere(left != right)
        if bad.size:
            return int(bad[0, 0]), int(g), int(bad[0, 1])
    return _NONE3


def _closure_np(table, identity, gens):
    n = table.shape[0]
    mask = np.zeros(n, dtype=np.bool_)
    mask[identity] = True
    frontier = np.array([identity])
    gens = np.asarray(gens)
    while frontier.size:
        cand = np.unique(table[np.ix_(frontier, gens)])
        cand = cand[~mask[cand]]
        mask[cand] = True
        frontier = cand
    return mask


def _centralizer_np(table, members):
    return (table[:, members] == table[members, :].T).all(axis=1)


def _normalizer_np(table, inverse, mask, members):
    conj = table[table[:, members], inverse[:, None]]
    return mask[conj].all(axis=1)


def _element_orders_np(table, identity):
    n = table.shape[0]
    idx = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    cur = idx.copy()
    for k in range(1, n + 1):
        hit = (cur == identity) & (orders == 0)
        orders[hit] = k
        if orders.all():
            break
        cur = table[cur, idx]
    return orders


def _relative_orders_np(table, identity, elems, mask):
    elems = np.asarray(elems)
    out = np.zeros(elems.size, dtype=np.int64)
    cur = elems.copy()
    for k in range(1, table.shape[0] + 1):
        hit = mask[cur] & (out == 0)
        out[hit] = k
        if out.all():
            break
        cur = table[cur, elems]
    return out


# ---------------------------------------------------------------- export

_LOOPS = {
    "latin_violation": _latin_violation_loop,
    "assoc_violation": _assoc_violation_loop,
    "light_violation": _light_violation_loop,
    "closure": _closure_loop,
    "centralizer": _centralizer_loop,
    "normalizer": _normalizer_loop,
    "element_orders": _element_orders_loop,
    "relative_orders": _relative_orders_loop,
}

numpy_kernels = SimpleNamespace(
    latin_violation=_latin_violation_np,
    assoc_violation=_assoc_violation_np,
    light_violation=_light_violation_np,
    closure=_closure_np,
    centralizer=_centralizer_np,
    normalizer=_normalizer_np,
    element_orders=_element_orders_np,
    relative_orders=_relative_orders_np,
)

if HAS_NUMBA:
    numba_kernels = SimpleNamespace(
        **{name: njit(cache=True, nogil=True)(fn) for name, fn in _LOOPS.items()}
    )
else:  # pragma: no cover
    numba_kernels = None

active = numba_kernels if USE_NUMBA else numpy_kernels


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


def _as_index_array(x) -> np.ndarray:
    return np.ascontiguousarray(x, dtype=np.int64)


def latin_violation(table):
    k, i, j = active.latin_violation(table)
    return int(k), int(i), int(j)


def assoc_violation(table):
    a, b, c = active.assoc_violation(table)
    return int(a), int(b), int(c)


def light_violation(table, gens):
    a, b, c = active.light_violation(table, _as_index_array(gens))
    return int(a), int(b), int(c)


def closure(table, identity, gens) -> np.ndarray:
    return active.closure(table, int(identity), _as_index_array(gens))


def centralizer(table, members) -> np.ndarray:
    return active.centralizer(table, _as_index_array(members))


def normalizer(table, inverse, mask, members) -> np.ndarray:
    return active.normalizer(table, inverse, mask, _as_index_array(members))


def element_orders(table, identity) -> np.ndarray:
    return active.element_orders(table, int(identity))


def relative_orders(table, identity, elems, mask) -> np.ndarray:
    return active.relative_orders(table, int(identity), _as_index_array(elems), mask)
