"""Integer helpers for group orders (all inputs are small)."""
from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def primes_dividing(n: int) -> list[int]:
    return sorted(factorize(n))


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def is_prime_power(n: int) -> bool:
    """True for p**k with k >= 0, so 1 counts."""
    return len(factorize(n)) <= 1


def p_part(n: int, p: int) -> int:
    return p ** factorize(n).get(p, 0)


def totient(n: int) -> int:
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


def multiplicative_order(p: int, q: int) -> int:
    """Least a >= 1 with p**a == 1 (mod q)."""
    if q < 2 or p % q == 0:
        raise ValueError(f"{p} is not a unit modulo {q}")
    a, x = 1, p % q
    while x != 1:
        x = x * p % q
        a += 1
    return a
