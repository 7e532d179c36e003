"""Named group families and the persisted catalog of test groups."""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import CatalogIoError, NoOrderQAutomorphism, ParameterOutOfRange, SchemaError
from .group import (
    Group,
    SemidirectSpec,
    direct_product,
    group_from_json,
    group_from_permutations,
    group_from_table,
    semidirect_product,
)
from .iso import automorphisms, find_monomorphism, group_of_automorphisms
from .numtheory import is_prime, multiplicative_order

CATALOG_ENV = "AUTOMIZER_LAB_CATALOG"
DEFAULT_CATALOG_PATH = Path("catalog.json")


# ---------------------------------------------------------------- families


def cyclic(n: int) -> Group:
    if n < 1:
        raise ParameterOutOfRange(f"cyclic group needs n >= 1, got {n}")
    i = np.arange(n)
    return group_from_table((i[:, None] + i[None, :]) % n, labels=[str(k) for k in range(n)], name=f"Z{n}")


def dihedral(n: int) -> Group:
    """Symmetries of the n-gon, order 2n. Element ``r^i s^j`` has index ``i + n*j``."""
    if n < 1:
        raise ParameterOutOfRange(f"dihedral group needs n >= 1, got {n}")
    i = np.arange(n)[:, None, None, None]
    a = np.arange(2)[None, :, None, None]
    k = np.arange(n)[None, None, :, None]
    b = np.arange(2)[None, None, None, :]
    rot = (i + np.where(a == 0, k, -k)) % n
    ref = (a + b) % 2
    table = (rot + n * ref).transpose(1, 0, 3, 2).reshape(2 * n, 2 * n)
    # rows were ordered (a, i) and columns (b, k): index = i + n*a
    labels = [f"r^{x}" if y == 0 else f"r^{x}s" for y in range(2) for x in range(n)]
    return group_from_table(table, labels=labels, name=f"D{2 * n}")


def symmetric(n: int) -> Group:
    if not 1 <= n <= 5:
        raise ParameterOutOfRange(f"symmetric(n) supports 1 <= n <= 5, got {n}")
    gens = []
    if n >= 2:
        gens = ["(" + " ".join(str(k) for k in range(1, n + 1)) + ")", "(1 2)"]
    return group_from_permutations(n, gens, name=f"S{n}")


def alternating(n: int) -> Group:
    if not 1 <= n <= 5:
        raise ParameterOutOfRange(f"alternating(n) supports 1 <= n <= 5, got {n}")
    gens = [f"(1 2 {k})" for k in range(3, n + 1)]
    return group_from_permutations(n, gens, name=f"A{n}")


def generalized_quaternion(order: int) -> Group:
    """Q_{2^k} = <x, y | x^(2m) = 1, y^2 = x^m, y x y^-1 = x^-1>, with 2m = 2^(k-1)."""
    k = order.bit_length() - 1
    if order != 1 << k or not 3 <= k <= 5:
        raise ParameterOutOfRange(f"generalized quaternion order must be 8, 16 or 32, got {order}")
    h = order // 2  # order of x
    m = h // 2
    table = np.empty((order, order), dtype=np.int64)
    # element x^i y^j has index i + h*j
    for j in range(2):
        for i in range(h):
            for l in range(2):
                for kk in range(h):
                    if j == 0:
                        e, y = i + kk, l
                    elif l == 0:
                        e, y = i - kk, 1
                    else:
                        e, y = i - kk + m, 0
                    table[i + h * j, kk + h * l] = e % h + h * y
    labels = [f"x^{i}" if j == 0 else f"x^{i}y" for j in range(2) for i in range(h)]
    return group_from_table(table, labels=labels, name=f"Q{order}")


def elementary_abelian(p: int, a: int) -> Group:
    if not is_prime(p) or a < 0:
        raise ParameterOutOfRange(f"elementary_abelian needs prime p and a >= 0, got ({p}, {a})")
    n = p**a
    digits = np.array([[(x // p**d) % p for d in range(a)] for x in range(n)], dtype=np.int64).reshape(n, a)
    weights = p ** np.arange(a, dtype=np.int64)
    table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    labels = ["(" + ",".join(str(v) for v in row) + ")" for row in digits]
    return group_from_table(table.reshape(n, n), labels=labels, name=f"Z{p}^{a}")


def exp_order(p: int, q: int) -> int:
    """Multiplicative order of p modulo q."""
    if not (is_prime(p) and is_prime(q)) or p == q:
        raise ParameterOutOfRange(f"exp_order needs distinct primes, got ({p}, {q})")
    return multiplicative_order(p, q)


def _map_power(images: tuple[int, ...], k: int, n: int) -> tuple[int, ...]:
    out = tuple(range(n))
    for _ in range(k):
        out = tuple(images[x] for x in out)
    return out


def _map_order(images: tuple[int, ...]) -> int:
    n = len(images)
    ident = tuple(range(n))
    k, cur = 1, tuple(images)
    while cur != ident:
        cur = tuple(images[x] for x in cur)
        k += 1
    return k


def cyclic_action(kernel: Group, generator_images, m: int) -> tuple[tuple[int, ...], ...]:
    """Action of Z_m on ``kernel`` where the generator 1 acts by ``generator_images``."""
    gi = tuple(int(x) for x in generator_images)
    return tuple(_map_power(gi, j, kernel.order) for j in range(m))


def inversion(kernel: Group) -> tuple[int, ...]:
    return tuple(int(x) for x in kernel.inverse)


def power_map(kernel: Group, k: int) -> tuple[int, ...]:
    return tuple(kernel.power(a, k) for a in range(kernel.order))


def semidirect_cyclic(kernel: Group, m: int, generator_images, name: str | None = None) -> Group:
    spec = SemidirectSpec(kernel, cyclic(m), cyclic_action(kernel, generator_images, m))
    return semidirect_product(spec, name=name)


def sbp_type_iii(p: int, q: int) -> Group:
    """Z_p^a (elementary abelian, a = exp_order(p, q) >= 2) extended by Z_q acting faithfully.

    The acting automorphism is the lexicographically smallest image tuple of
    order q, which makes catalog construction reproducible.
    """
    a = exp_order(p, q)
    if a < 2:
        raise ParameterOutOfRange(f"exp_order({p}, {q}) = {a} < 2")
    kernel = elementary_abelian(p, a)
    chosen = next((phi for phi in sorted(automorphisms(kernel)) if _map_order(phi) == q), None)
    if chosen is None:  # pragma: no cover - q divides p^a - 1 by construction
        raise NoOrderQAutomorphism(f"no automorphism of order {q} on Z{p}^{a}")
    return semidirect_cyclic(kernel, q, chosen, name=f"SBP({p},{q})")


def minimal_non_nilpotent_family(kernel: Group, complement: Group, action, name: str | None = None) -> Group:
    """Split extension ``[kernel]complement``; the caller picks the action."""
    return semidirect_product(SemidirectSpec(kernel, complement, tuple(action)), name=name)


def faithful_action(kernel: Group, complement: Group) -> tuple[tuple[int, ...], ...]:
    """Some injective homomorphism complement -> Aut(kernel), as per-element image tuples."""
    auts = automorphisms(kernel)
    mono = find_monomorphism(complement, group_of_automorphisms(kernel, auts))
    if mono is None:
        raise ParameterOutOfRange(f"{complement.name} has no faithful action on {kernel.name}")
    # Aut multiplies left to right; the action must compose right to left, so go through q^-1
    return tuple(auts[mono.images[complement.inv(c)]] for c in range(complement.order))


# ---------------------------------------------------------------- construction descriptions


def build(desc: dict) -> Group:
    """Build a group from a tagged construction description."""
    kind = desc.get("kind")
    try:
        if kind == "cyclic":
            return cyclic(desc["n"])
        if kind == "dihedral":
            return dihedral(desc["n"])
        if kind == "symmetric":
            return symmetric(desc["n"])
        if kind == "alternating":
            return alternating(desc["n"])
        if kind == "quaternion":
            return generalized_quaternion(desc["order"])
        if kind == "elementary_abelian":
            return elementary_abelian(desc["p"], desc["a"])
        if kind == "direct_product":
            g = build(desc["factors"][0])
            for f in desc["factors"][1:]:
                g = direct_product(g, build(f))
            return g
        if kind == "sbp_type_iii":
            return sbp_type_iii(desc["p"], desc["q"])
        if kind == "semidirect_cyclic":
            kern = build(desc["kernel"])
            if "power" in desc:
                images = power_map(kern, desc["power"])
            else:
                images = desc["generator_action"]
            return semidirect_cyclic(kern, desc["m"], images)
        if kind == "semidirect_faithful":
            kern, comp = build(desc["kernel"]), build(desc["complement"])
            return minimal_non_nilpotent_family(kern, comp, faithful_action(kern, comp))
        if kind == "table":
            return group_from_json(desc["group"])
    except KeyError as exc:
        raise SchemaError(f"construction {kind!r} is missing field {exc}") from None
    raise SchemaError(f"unknown construction kind {kind!r}")


def expected_order(desc: dict) -> int | None:
    kind = desc["kind"]
    if kind == "cyclic":
        return desc["n"]
    if kind == "dihedral":
        return 2 * desc["n"]
    if kind == "symmetric":
        return math.factorial(desc["n"])
    if kind == "alternating":
        return max(1, math.factorial(desc["n"]) // 2)
    if kind == "quaternion":
        return desc["order"]
    if kind == "elementary_abelian":
        return desc["p"] ** desc["a"]
    if kind == "direct_product":
        out = 1
        for f in desc["factors"]:
            sub = expected_order(f)
            if sub is None:
                return None
            out *= sub
        return out
    if kind == "sbp_type_iii":
        return desc["p"] ** exp_order(desc["p"], desc["q"]) * desc["q"]
    if kind == "semidirect_cyclic":
        sub = expected_order(desc["kernel"])
        return None if sub is None else sub * desc["m"]
    if kind == "semidirect_faithful":
        a, b = expected_order(desc["kernel"]), expected_order(desc["complement"])
        return None if a is None or b is None else a * b
    return None


@dataclass
class CatalogEntry:
    name: str
    construction: dict
    group: Group
    tags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        want = expected_order(self.construction)
        if want is not None and want != self.group.order:
            raise SchemaError(f"{self.name}: order {self.group.order} does not match construction ({want})")
        self.tags = frozenset(self.tags)
        if self.group.name != self.name:
            self.group = self.group.relabel(self.name)

    @classmethod
    def make(cls, name: str, construction: dict, tags=()) -> CatalogEntry:
        return cls(name, construction, build(construction), frozenset(tags))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "construction": self.construction,
            "tags": sorted(self.tags),
            "group": self.group.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> CatalogEntry:
        try:
            group = group_from_json(data["group"])
            return cls(data["name"], data["construction"], group, frozenset(data.get("tags", ())))
        except KeyError as exc:
            raise SchemaError(f"catalog entry missing field {exc}") from None


def C(n):
    return {"kind": "cyclic", "n": n}


def D(n):
    return {"kind": "dihedral", "n": n}


def DP(*factors):
    return {"kind": "direct_product", "factors": list(factors)}


def _default_specs() -> list[tuple[str, dict, tuple]]:
    s3 = {"kind": "symmetric", "n": 3}
    s4 = {"kind": "symmetric", "n": 4}
    a4 = {"kind": "alternating", "n": 4}
    q8 = {"kind": "quaternion", "order": 8}
    e4 = {"kind": "elementary_abelian", "p": 2, "a": 2}
    e9 = {"kind": "elementary_abelian", "p": 3, "a": 2}
    specs: list[tuple[str, dict, tuple]] = []
    for n in range(1, 25):
        specs.append((f"Z{n}", C(n), ("abelian", "pnc")))
    for n in range(3, 33):
        specs.append((f"D{2 * n}", D(n), ()))
    specs += [
        ("S3", s3, ("pnc",)),
        ("S4", s4, ("pnc", "cp", "solvable", "not:supersolvable")),
        ("A4", a4, ()),
        ("A5", {"kind": "alternating", "n": 5}, ("not:solvable",)),
        ("Q8", q8, ()),
        ("Q16", {"kind": "quaternion", "order": 16}, ()),
        ("Q32", {"kind": "quaternion", "order": 32}, ()),
        ("Z2^2", e4, ("abelian",)),
        ("Z2^3", {"kind": "elementary_abelian", "p": 2, "a": 3}, ("abelian",)),
        ("Z3^2", e9, ("abelian",)),
        ("Z3^3", {"kind": "elementary_abelian", "p": 3, "a": 3}, ("abelian",)),
        ("S3xZ3", DP(s3, C(3)), ("pnc", "not:abelian")),
        ("S4xZ2", DP(s4, C(2)), ("not:pnc",)),
        ("SBP(2,3)", {"kind": "sbp_type_iii", "p": 2, "q": 3}, ("sbp", "cp")),
        ("SBP(2,7)", {"kind": "sbp_type_iii", "p": 2, "q": 7}, ("sbp", "cp")),
        # remaining groups of order <= 15
        ("Z4xZ2", DP(C(4), C(2)), ("abelian",)),
        ("Z2xZ6", DP(C(2), C(6)), ("abelian",)),
        ("Z3:Z4", {"kind": "semidirect_cyclic", "kernel": C(3), "m": 4, "power": -1}, ()),
        # further test material
        ("Z2xQ8", DP(C(2), q8), ()),
        ("D8xZ3", DP(D(4), C(3)), ()),
        ("A4xZ2", DP(a4, C(2)), ()),
        ("S3xZ2", DP(s3, C(2)), ()),
        ("S3xS3", DP(s3, s3), ()),
        ("Z3^2:Z2", {"kind": "semidirect_cyclic", "kernel": e9, "m": 2, "power": -1}, ()),
        ("Z7:Z3", {"kind": "semidirect_cyclic", "kernel": C(7), "m": 3, "power": 2}, ()),
        ("Z13:Z3", {"kind": "semidirect_cyclic", "kernel": C(13), "m": 3, "power": 3}, ()),
        ("Z5:Z4", {"kind": "semidirect_cyclic", "kernel": C(5), "m": 4, "power": 2}, ()),
        ("Z3^2:Q8", {"kind": "semidirect_faithful", "kernel": e9, "complement": q8}, ("cp",)),
        ("Z3^2:Z4", {"kind": "semidirect_faithful", "kernel": e9, "complement": C(4)}, ()),
        ("Q8:Z3", {"kind": "semidirect_faithful", "kernel": q8, "complement": C(3)}, ("pnc", "minimal_non_nilpotent")),
        ("S3xZ9", DP(s3, C(9)), ()),
        ("D10xZ5", DP(D(5), C(5)), ()),
        ("A4xZ4", DP(a4, C(4)), ()),
    ]
    return specs


# groups of order <= 15 up to isomorphism, one catalog name each
ORDER_LE_15 = (
    "Z1", "Z2", "Z3", "Z4", "Z2^2", "Z5", "Z6", "S3", "Z7",
    "Z8", "Z4xZ2", "Z2^3", "D8", "Q8", "Z9", "Z3^2", "Z10", "D10", "Z11",
    "Z12", "Z2xZ6", "A4", "D12", "Z3:Z4", "Z13", "Z14", "D14", "Z15",
)


def default_catalog() -> list[CatalogEntry]:
    return [CatalogEntry.make(name, desc, tags) for name, desc, tags in _default_specs()]


def save_catalog(entries: list[CatalogEntry], path) -> None:
    data = [e.to_json() for e in entries]
    try:
        Path(path).write_text(json.dumps(data, sort_keys=True, separators=(",", ":")))
    except OSError as exc:
        raise CatalogIoError(f"cannot write catalog {path}: {exc}") from None


def load_catalog(path) -> list[CatalogEntry]:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise CatalogIoError(f"cannot read catalog {path}: {exc}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"catalog {path} is not valid JSON: {exc}") from None
    if not isinstance(data, list):
        raise SchemaError("catalog must be a JSON array")
    return [CatalogEntry.from_json(d) for d in data]


def catalog_path(explicit=None) -> Path:
    if explicit:
        return Path(explicit)
    return Path(os.environ.get(CATALOG_ENV, DEFAULT_CATALOG_PATH))


def by_name(entries: list[CatalogEntry]) -> dict[str, CatalogEntry]:
    return {e.name: e for e in entries}
