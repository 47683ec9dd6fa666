"""Elementary integer utilities: sieve, Jacobi symbol, modular square roots,
square-free decomposition.

Everything here is exact integer arithmetic; nothing returns floats.
"""

from __future__ import annotations

import math
from functools import lru_cache


@lru_cache(maxsize=8)
def sieve_primes(limit: int) -> tuple[int, ...]:
    """All primes <= limit, ascending."""
    if limit < 2:
        return ()
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return tuple(i for i in range(limit + 1) if flags[i])


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be a positive odd integer")
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod(a: int, p: int) -> int | None:
    """Canonical square root of a modulo an odd prime p, or None.

    Returns the smaller of the two roots (Tonelli-Shanks for p = 1 mod 4).
    """
    a %= p
    if a == 0:
        return 0
    if jacobi(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while jacobi(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return min(r, p - r)


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError("n must be positive")
    factors: dict[int, int] = {}
    for q in (2, 3, 5):
        while n % q == 0:
            factors[q] = factors.get(q, 0) + 1
            n //= q
    q = 7
    # wheel over 7, 11, 13, ... is overkill; plain odd trial up to 2^20
    while q * q <= n and q < (1 << 20):
        while n % q == 0:
            factors[q] = factors.get(q, 0) + 1
            n //= q
        q += 2
    if n > 1:
        for q in _factor_large(n):
            factors[q] = factors.get(q, 0) + 1
    return factors


def _factor_large(n: int) -> list[int]:
    """Factor n with no prime factor below 2^20 (Brent's rho)."""
    from .primality import is_probable_prime

    if n == 1:
        return []
    if is_probable_prime(n):
        return [n]
    d = _brent_rho(n)
    return sorted(_factor_large(d) + _factor_large(n // d))


def _brent_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        y, c, m = seed, seed + 1, 128
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
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        seed += 1


def squarefree_kernel(n: int) -> tuple[int, int]:
    """Write n = k * m^2 with k square-free; returns (k, m)."""
    if n < 1:
        raise ValueError("n must be positive")
    kernel, m = 1, 1
    for p, e in factorize(n).items():
        if e % 2:
            kernel *= p
        m *= p ** (e // 2)
    return kernel, m


def is_squarefree(n: int) -> bool:
    return squarefree_kernel(n)[0] == n
