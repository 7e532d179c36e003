"""Finite groups as validated Cayley tables, plus the basic constructions."""
from __future__ import annotations

import itertools
import json
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels as K
from .config import caps
from .errors import (
    InvalidAction,
    NoIdentity,
    NoInverse,
    NotAPermutation,
    NotAssociative,
    NotLatinSquare,
    NotNormal,
    OrderCapExceeded,
    ParentMismatch,
    SchemaError,
)

FULL_ASSOC_LIMIT = 256


def bits_to_mask(bits: int, n: int) -> np.ndarray:
    raw = bits.to_bytes((n + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].astype(bool)


def mask_to_bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def indices_to_bits(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        bits |= 1 << int(i)
    return bits


class Group:
    """A finite group given by its Cayley table.

    ``table[a, b]`` is the index of ``a * b``. Instances are immutable; derived
    data (inverses, element orders, subgroup lattice) is memoised on first use.
    Use :func:`group_from_table` to build one from untrusted data.
    """

    def __init__(self, table, identity: int, labels: Sequence[str] | None = None, name: str | None = None):
        table = np.ascontiguousarray(table, dtype=np.int64)
        table.setflags(write=False)
        self.table = table
        self.identity = int(identity)
        n = table.shape[0]
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        self.name = name
        self._memo: dict = {}

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group({self.name or '?'}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        x = self.identity
        if k < 0:
            a, k = self.inv(a), -k
        for _ in range(k):
            x = int(self.table[x, a])
        return x

    def commutator(self, a: int, b: int) -> int:
        t, i = self.table, self.inverse
        return int(t[t[t[a, b], i[a]], i[b]])

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.argmax(self.table == self.identity, axis=1)
        inv.setflags(write=False)
        return inv

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = K.element_orders(self.table, self.identity)
        orders.setflags(write=False)
        return orders

    @cached_property
    def all_bits(self) -> int:
        return (1 << self.order) - 1

    def whole(self) -> Subgroup:
        return Subgroup(self, self.all_bits)

    def trivial(self) -> Subgroup:
        return Subgroup(self, 1 << self.identity)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def relabel(self, name: str) -> Group:
        return Group(self.table, self.identity, self.labels, name)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "table": self.table.tolist(),
            "labels": list(self.labels),
        }


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Subset of ``parent`` stored as a bitset (bit ``i`` set iff element ``i`` belongs)."""

    parent: Group
    bits: int

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.bits == other.bits

    def __hash__(self):
        return hash((id(self.parent), self.bits))

    def __repr__(self):
        return f"Subgroup(order={self.order}, of={self.parent.name or '?'})"

    def __contains__(self, a: int) -> bool:
        return bool(self.bits >> int(a) & 1)

    def __le__(self, other: Subgroup) -> bool:
        _same_parent(self, other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: Subgroup) -> bool:
        return self <= other and self.bits != other.bits

    @property
    def order(self) -> int:
        return bin(self.bits).count("1")

    def __len__(self) -> int:
        return self.order

    @cached_property
    def mask(self) -> np.ndarray:
        m = bits_to_mask(self.bits, self.parent.order)
        m.setflags(write=False)
        return m

    @cached_property
    def members(self) -> np.ndarray:
        m = np.flatnonzero(self.mask)
        m.setflags(write=False)
        return m

    def is_subgroup(self) -> bool:
        g = self.parent
        if self.identity_missing():
            return False
        mem = self.members
        return bool(self.mask[g.table[np.ix_(mem, mem)]].all() and self.mask[g.inverse[mem]].all())

    def identity_missing(self) -> bool:
        return self.parent.identity not in self

    def intersect(self, other: Subgroup) -> Subgroup:
        _same_parent(self, other)
        return Subgroup(self.parent, self.bits & other.bits)

    def as_group(self, name: str | None = None) -> tuple[Group, GroupMap]:
        """Re-materialise as a standalone group; also returns the inclusion map."""
        g = self.parent
        mem = self.members
        pos = np.full(g.order, -1, dtype=np.int64)
        pos[mem] = np.arange(mem.size)
        table = pos[g.table[np.ix_(mem, mem)]]
        labels = [g.labels[i] for i in mem]
        sub = group_from_table(table, labels=labels, name=name)
        return sub, GroupMap(sub, g, tuple(int(i) for i in mem))


def _same_parent(a: Subgroup, b: Subgroup) -> None:
    if a.parent is not b.parent:
        raise ParentMismatch("subgroups belong to different parent groups")


@dataclass(frozen=True, eq=False)
class GroupMap:
    source: Group
    target: Group
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.order:
            raise ValueError("images must have one entry per source element")

    def __call__(self, a: int) -> int:
        return self.images[a]

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)

    def is_homomorphism(self) -> bool:
        s, t, img = self.source.table, self.target.table, self.array
        return bool((img[s] == t[np.ix_(img, img)]).all())

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(set(self.images)) == self.source.order

    def is_isomorphism(self) -> bool:
        return self.is_bijective() and self.is_homomorphism()

    def kernel(self) -> Subgroup:
        e = self.target.identity
        return Subgroup(self.source, indices_to_bits(i for i, x in enumerate(self.images) if x == e))

    def image(self) -> Subgroup:
        return Subgroup(self.target, indices_to_bits(self.images))

    def compose(self, inner: GroupMap) -> GroupMap:
        """``self ∘ inner``: apply ``inner`` first."""
        if inner.target is not self.source:
            raise ParentMismatch("maps do not compose")
        return GroupMap(inner.source, self.target, tuple(self.images[i] for i in inner.images))


@dataclass(frozen=True, eq=False)
class SemidirectSpec:
    """Split extension data: ``action[q]`` is the automorphism of ``kernel`` induced by ``q``."""

    kernel: Group
    complement: Group
    action: tuple = field(default=())

    def action_array(self) -> np.ndarray:
        rows = [a.images if isinstance(a, GroupMap) else tuple(a) for a in self.action]
        arr = np.asarray(rows, dtype=np.int64)
        if arr.shape != (self.complement.order, self.kernel.order):
            raise InvalidAction(
                f"action must have shape ({self.complement.order}, {self.kernel.order}), got {arr.shape}"
            )
        return arr


# ------------------------------------------------------------------ construction


def _check_table(table: np.ndarray) -> int:
    n = table.shape[0]
    kind, i, j = K.latin_violation(table)
    if kind == 0:
        raise NotLatinSquare(f"row {i} is not a permutation of 0..{n - 1} (first bad column {j})", (i, j))
    if kind == 1:
        raise NotLatinSquare(f"column {j} is not a permutation of 0..{n - 1} (first repeat at row {i})", (i, j))
    idx = np.arange(n)
    rows_ok = (table == idx).all(axis=1)
    cols_ok = (table == idx[:, None]).all(axis=0)
    both = np.flatnonzero(rows_ok & cols_ok)
    if both.size == 0:
        raise NoIdentity("no element acts as a two-sided identity")
    e = int(both[0])
    for a in range(n):
        right = np.flatnonzero(table[a] == e)
        if right.size == 0 or table[right[0], a] != e:
            raise NoInverse(f"element {a} has no two-sided inverse", a)
    if n <= FULL_ASSOC_LIMIT:
        a, b, c = K.assoc_violation(table)
    else:
        a, b, c = K.light_violation(table, _greedy_generators(table, e))
    if a >= 0:
        raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", (a, b, c))
    return e


def _greedy_generators(table: np.ndarray, identity: int) -> list[int]:
    n = table.shape[0]
    gens: list[int] = []
    mask = np.zeros(n, dtype=bool)
    mask[identity] = True
    for a in range(n):
        if not mask[a]:
            gens.append(a)
            mask = K.closure(table, identity, gens)
            if mask.all():
                break
    return gens


def group_from_table(table, labels: Sequence[str] | None = None, name: str | None = None) -> Group:
    """Validate a Cayley table and wrap it as a :class:`Group`.

    Raises NotLatinSquare, NoIdentity, NoInverse or NotAssociative, naming the
    first offending row/column, element or triple.
    """
    arr = np.asarray(table)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise NotLatinSquare(f"table must be a non-empty square array, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise NotLatinSquare("table entries must be integers")
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    if labels is not None and len(labels) != arr.shape[0]:
        raise SchemaError("labels must have one entry per element")
    e = _check_table(arr)
    return Group(arr, e, labels, name)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(spec, degree: int) -> tuple[int, ...]:
    """Parse cycle notation ``"(1 2 3)(4 5)"`` or one-line notation ``[2, 3, 1]``.

    Points are 1-based on input; the result is a 0-based image tuple.
    """
    if isinstance(spec, str) and spec.strip().startswith("["):
        spec = json.loads(spec)
    if isinstance(spec, str):
        s = spec.strip()
        if _CYCLE_RE.sub("", s).strip():
            raise NotAPermutation(f"cannot parse {spec!r}")
        img = list(range(degree))
        seen: set[int] = set()
        for body in _CYCLE_RE.findall(s):
            pts = [int(t) for t in body.replace(",", " ").split()]
            for p in pts:
                if not 1 <= p <= degree or p in seen:
                    raise NotAPermutation(f"bad point {p} in {spec!r} for degree {degree}")
                seen.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a - 1] = b - 1
        return tuple(img)
    pts = [int(x) for x in spec]
    if sorted(pts) != list(range(1, degree + 1)):
        raise NotAPermutation(f"{spec!r} is not a permutation of 1..{degree}")
    return tuple(p - 1 for p in pts)


def cycle_string(perm: Sequence[int]) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        parts.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(parts) or "()"


def group_from_permutations(degree: int, generators: Sequence, name: str | None = None) -> Group:
    """Enumerate the permutation group generated by ``generators`` breadth-first.

    Products compose left to right: ``(p*q)(i) = q(p(i))``.
    """
    if degree < 1:
        raise NotAPermutation("degree must be positive")
    gens = [parse_permutation(g, degree) for g in generators]
    ident = tuple(range(degree))
    cap = caps().closure
    index = {ident: 0}
    elems = [ident]
    head = 0
    while head < len(elems):
        p = elems[head]
        head += 1
        for s in gens:
            q = tuple(s[i] for i in p)
            if q not in index:
                index[q] = len(elems)
                elems.append(q)
                if len(elems) > cap:
                    raise OrderCapExceeded(f"closure exceeds cap {cap}")
    n = len(elems)
    arr = np.asarray(elems, dtype=np.int64)  # arr[a, i] = a(i)
    composed = arr[:, arr].transpose(1, 0, 2)  # [a, b, i] = b(a(i))
    if degree <= 15:
        weights = degree ** np.arange(degree, dtype=np.int64)
        keys = arr @ weights
        order = np.argsort(keys)
        table = order[np.searchsorted(keys[order], composed @ weights)]
    else:
        table = np.array([[index[tuple(row)] for row in composed[a]] for a in range(n)], dtype=np.int64)
    labels = [cycle_string(p) for p in elems]
    return group_from_table(table, labels=labels, name=name)


def direct_product(g1: Group, g2: Group, name: str | None = None) -> Group:
    n1, n2 = g1.order, g2.order
    if n1 * n2 > caps().closure:
        raise OrderCapExceeded(f"direct product order {n1 * n2} exceeds cap {caps().closure}")
    # element (a, b) has index a * n2 + b
    t = g1.table[:, None, :, None] * n2 + g2.table[None, :, None, :]
    table = t.reshape(n1 * n2, n1 * n2)
    labels = [f"({la},{lb})" for la in g1.labels for lb in g2.labels]
    if name is None and g1.name and g2.name:
        name = f"{g1.name}x{g2.name}"
    return group_from_table(table, labels=labels, name=name)


def check_action(spec: SemidirectSpec) -> np.ndarray:
    kern, comp = spec.kernel, spec.complement
    act = spec.action_array()
    kt = kern.table
    for q in range(comp.order):
        phi = act[q]
        if len(set(phi.tolist())) != kern.order or phi.min() < 0 or phi.max() >= kern.order:
            raise InvalidAction(f"action of complement element {q} is not a bijection")
        if not (phi[kt] == kt[np.ix_(phi, phi)]).all():
            raise InvalidAction(f"action of complement element {q} is not a homomorphism")
    # action[q1*q2] == action[q1] o action[q2]
    lhs = act[comp.table]  # [q1, q2, k]
    rhs = act[np.arange(comp.order)[:, None, None], act[None, :, :]]  # [q1, q2, k] = act[q1][act[q2][k]]
    bad = np.argwhere((lhs != rhs).any(axis=2))
    if bad.size:
        q1, q2 = bad[0]
        raise InvalidAction(f"action is not a homomorphism at complement pair ({q1}, {q2})")
    return act


def semidirect_product(spec: SemidirectSpec, name: str | None = None) -> Group:
    """``(k1, q1)(k2, q2) = (k1 * action[q1](k2), q1 * q2)``.

    Element ``(k, q)`` gets index ``q * |kernel| + k``, so the kernel occupies
    indices ``0..|kernel|-1`` when the complement identity is 0.
    """
    act = check_action(spec)
    kern, comp = spec.kernel, spec.complement
    nk, nq = kern.order, comp.order
    if nk * nq > caps().closure:
        raise OrderCapExceeded(f"semidirect product order {nk * nq} exceeds cap {caps().closure}")
    k1 = np.arange(nk)[None, :, None, None]
    q1 = np.arange(nq)[:, None, None, None]
    k2 = np.arange(nk)[None, None, None, :]
    q2 = np.arange(nq)[None, None, :, None]
    knew = kern.table[k1, act[q1, k2]]
    qnew = comp.table[q1, q2]
    table = (qnew * nk + knew).reshape(nq * nk, nq * nk)
    labels = [f"({lk},{lq})" for lq in comp.labels for lk in kern.labels]
    return group_from_table(table, labels=labels, name=name)


def kernel_embedding(spec: SemidirectSpec, product: Group) -> Subgroup:
    e = spec.complement.identity
    nk = spec.kernel.order
    return Subgroup(product, indices_to_bits(e * nk + k for k in range(nk)))


def complement_embedding(spec: SemidirectSpec, product: Group) -> Subgroup:
    e = spec.kernel.identity
    nk = spec.kernel.order
    return Subgroup(product, indices_to_bits(q * nk + e for q in range(spec.complement.order)))


def normality_witness(g: Group, n: Subgroup) -> int | None:
    """An element whose conjugation moves ``n``, or None when ``n`` is normal."""
    if n.parent is not g:
        raise ParentMismatch("subgroup does not belong to this group")
    ok = K.normalizer(g.table, g.inverse, n.mask, n.members)
    bad = np.flatnonzero(~ok)
    return int(bad[0]) if bad.size else None


def quotient_group(g: Group, n: Subgroup, name: str | None = None) -> tuple[Group, GroupMap]:
    """``g / n`` with its projection. Cosets are numbered by smallest representative."""
    w = normality_witness(g, n)
    if w is not None:
        raise NotNormal(f"subgroup is not normal: conjugation by element {w} moves it", witness=w)
    coset_of = np.full(g.order, -1, dtype=np.int64)
    reps: list[int] = []
    mem = n.members
    for a in range(g.order):
        if coset_of[a] < 0:
            coset_of[g.table[a, mem]] = len(reps)
            reps.append(a)
    r = np.asarray(reps)
    table = coset_of[g.table[np.ix_(r, r)]]
    labels = [f"{g.labels[a]}N" if len(mem) > 1 else g.labels[a] for a in reps]
    quo = group_from_table(table, labels=labels, name=name)
    return quo, GroupMap(g, quo, tuple(int(c) for c in coset_of))


def trivial_group(name: str = "1") -> Group:
    return Group(np.zeros((1, 1), dtype=np.int64), 0, ["e"], name)


def group_from_json(data: dict) -> Group:
    """Accept either the table format or the permutation format."""
    if not isinstance(data, dict):
        raise SchemaError("group description must be a JSON object")
    if "table" in data:
        table = data["table"]
        if "order" in data and data["order"] != len(table):
            raise SchemaError(f"order {data['order']} does not match table size {len(table)}")
        return group_from_table(table, labels=data.get("labels"), name=data.get("name"))
    if "degree" in data:
        return group_from_permutations(int(data["degree"]), data.get("generators", []), name=data.get("name"))
    raise SchemaError("expected a 'table' or a 'degree'/'generators' description")


def iter_pairs(n: int):
    return itertools.product(range(n), repeat=2)
