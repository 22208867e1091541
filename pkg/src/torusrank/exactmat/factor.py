"""Integer factorization for desk-scale inputs: trial division, then Pollard-Brent rho."""

from __future__ import annotations

import os
import random
from collections import Counter
from math import gcd, isqrt

from ..errors import FactorizationRefused

DEFAULT_FACTOR_CAP = 2 ** 128
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
_TRIAL_LIMIT = 1000


def factor_cap() -> int:
    """Largest integer ``factorize`` accepts; ``TORUSRANK_FACTOR_CAP`` overrides."""
    raw = os.environ.get("TORUSRANK_FACTOR_CAP")
    if raw is None:
        return DEFAULT_FACTOR_CAP
    try:
        value = int(raw, 0)
    except ValueError:
        raise ValueError(f"TORUSRANK_FACTOR_CAP must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("TORUSRANK_FACTOR_CAP must be positive")
    return value


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin. Deterministic below 3.3e24; beyond that 15 fixed bases plus 8 random ones."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = list(_SMALL_PRIMES[:13])
    if n >= 3_317_044_064_679_887_385_961_981:
        rng = random.Random(n)
        bases = list(_SMALL_PRIMES) + [rng.randrange(2, n - 1) for _ in range(8)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, seed: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    rng = random.Random(seed)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: Counter) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] += 1
        return
    r = isqrt(n)
    if r * r == n:
        _split(r, out)
        _split(r, out)
        return
    f = _brent(n, seed=n & 0xFFFFFFFF)
    _split(f, out)
    _split(n // f, out)


def factorize(n: int) -> list[int]:
    """Prime factors of ``n >= 1`` with multiplicity, in ascending order.

    >>> factorize(12)
    [2, 2, 3]
    >>> factorize(1)
    []
    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    cap = factor_cap()
    if n > cap:
        raise FactorizationRefused(f"{n} exceeds factorization cap {cap}")
    out: Counter = Counter()
    p = 2
    while p <= _TRIAL_LIMIT and p * p <= n:
        while n % p == 0:
            out[p] += 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        if n < _TRIAL_LIMIT * _TRIAL_LIMIT:
            out[n] += 1
        else:
            _split(n, out)
    return sorted(out.elements())


def prime_divisors(n: int) -> list[int]:
    """Distinct primes dividing ``|n|``. Every prime divides 0, so 0 is rejected."""
    n = abs(n)
    if n == 0:
        raise ValueError("the set of primes dividing 0 is infinite")
    return sorted(set(factorize(n)))
