"""Probable-prime testing.

Below a fixed threshold the verdict is unconditional (strong tests against a
base set proven sufficient for that range).  Above it, a Baillie-PSW style
combination runs: strong tests with base 2 plus deterministically re-seeded
random bases, and one strong Lucas test with Selfridge parameters.  Composite
verdicts are always correct.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .numutil import is_perfect_square, jacobi

# (exclusive bound, sufficient strong-test bases); classical verified limits
_DETERMINISTIC_BASES: tuple[tuple[int, tuple[int, ...]], ...] = (
    (2047, (2,)),
    (1373653, (2, 3)),
    (9080191, (31, 73)),
    (25326001, (2, 3, 5)),
    (3215031751, (2, 3, 5, 7)),
    (4759123141, (2, 7, 61)),
    (1122004669633, (2, 13, 23, 1662803)),
    (2152302898747, (2, 3, 5, 7, 11)),
    (3474749660383, (2, 3, 5, 7, 11, 13)),
    (341550071728321, (2, 3, 5, 7, 11, 13, 17)),
    (3825123056546413051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318665857834031151167461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
)
_DETERMINISTIC_LIMIT = _DETERMINISTIC_BASES[-1][0]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class PrimalityPolicy:
    """Contract for prime verdicts.

    deterministic_below: unconditional verdicts for n below this (capped by
        the verified base-set table, ~3.2e24).
    rounds_above: number of extra random-base strong tests above the cutoff,
        on top of base 2 and the strong Lucas test.
    """

    deterministic_below: int = 1 << 64
    rounds_above: int = 64

    def __post_init__(self) -> None:
        if self.deterministic_below > _DETERMINISTIC_LIMIT:
            raise ValueError(
                f"deterministic verdicts only available below {_DETERMINISTIC_LIMIT}"
            )
        if self.rounds_above < 0:
            raise ValueError("rounds_above must be >= 0")


DEFAULT_POLICY = PrimalityPolicy()


def _strong_probable_prime(n: int, base: int, d: int, s: int) -> bool:
    # n - 1 = d * 2^s with d odd
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _half_mod(x: int, n: int) -> int:
    x %= n
    if x & 1:
        x += n
    return (x >> 1) % n


def _strong_lucas_prp(n: int) -> bool:
    """Strong Lucas test with Selfridge's parameter choice (P=1)."""
    if is_perfect_square(n):
        return False
    D = 5
    while True:
        j = jacobi(D, n)
        if j == 0:
            return n == abs(D)
        if j == -1:
            break
        D = -D - 2 if D > 0 else -D + 2
    Q = (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    U, V, qk = 1, 1, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            U, V = _half_mod(U + V, n), _half_mod(D * U + V, n)
            qk = qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * qk) % n
        qk = qk * qk % n
        if V == 0:
            return True
    return False


def is_probable_prime(n: int, policy: PrimalityPolicy = DEFAULT_POLICY) -> bool:
    """Primality verdict under the given policy (n >= 0)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    if n < 41 * 41:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < policy.deterministic_below:
        for bound, bases in _DETERMINISTIC_BASES:
            if n < bound:
                return all(_strong_probable_prime(n, a, d, s) for a in bases)
    if not _strong_probable_prime(n, 2, d, s):
        return False
    if not _strong_lucas_prp(n):
        return False
    # extra random bases, re-seeded from n so verdicts are reproducible
    rng = random.Random(n * 0x9E3779B97F4A7C15 + 0xD1B54A32D192ED03)
    for _ in range(policy.rounds_above):
        a = rng.randrange(2, n - 1)
        if not _strong_probable_prime(n, a, d, s):
            return False
    return True
