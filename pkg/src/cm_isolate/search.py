"""Enumeration and discovery engines.

Candidate enumeration is over odd C, D in [1, bound]^2 with B = +1; the sign
symmetry (C, D) -> (-C, -D) and the B = -1 conjugates make other quadrants
redundant.  Pairs where I = 1 drop out automatically (1 is not prime); pairs
with I = p are counted.  The grid is data-parallel over disjoint C ranges and
merges deterministically regardless of worker count.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from .errors import IntegralityError, NoPrimeIndexError, SearchExhaustedError
from .exactfield import CyclicCMField
from .numutil import is_squarefree, sieve_primes
from .primality import DEFAULT_POLICY, PrimalityPolicy, is_probable_prime
from .weilnum import (
    IsolationClass,
    WeilCandidate,
    classify,
    complete_candidate,
)

CONVENTION = "odd C,D in [1,bound]^2; B=+1; I=p hits counted; I=1 excluded"


@dataclass(frozen=True)
class Hit:
    C: int
    D: int
    p: int
    I: int
    isolation: str


@dataclass
class SearchReport:
    field: tuple[int, int, int]  # (d, b, c)
    kind: str
    params: dict
    count: int
    hits: tuple[Hit, ...]
    convention: str = CONVENTION
    wall_ms: float = dc_field(default=0.0, compare=False)


def _scan_rows(field, c_values, bound, policy, large_prime_bits, smooth_bound):
    d, b, c = field.d, field.b, field.c
    b2 = b // 2
    hits = []
    for C in c_values:
        CC = C * C
        for D in range(1, bound + 1, 2):
            i4 = c * (CC - D * D) - 2 * b * C * D
            if i4 < 0:
                i4 = -i4
            if i4 & 3:
                raise IntegralityError(f"4I = {i4} not divisible by 4 at ({C}, {D})")
            I = i4 >> 2
            if I < 2 or not is_probable_prime(I, policy):
                continue
            e = b2 * (CC - D * D) + c * C * D
            n16 = e * e + d * (CC + D * D + 1)
            if n16 & 15:
                raise IntegralityError(f"16p = {n16} not divisible by 16 at ({C}, {D})")
            p = n16 >> 4
            if not is_probable_prime(p, policy):
                continue
            cand = WeilCandidate(field=field, A=-e, B=1, C=C, D=D, p=p, I=I)
            iso = classify(cand, large_prime_bits, smooth_bound, policy=policy)
            hits.append(Hit(C=C, D=D, p=p, I=I, isolation=iso.tag.value))
    return hits


def count_prime_pairs(
    field: CyclicCMField,
    bound: int,
    policy: PrimalityPolicy = DEFAULT_POLICY,
    workers: int = 1,
    large_prime_bits: int = 80,
    smooth_bound: int = 1 << 20,
) -> SearchReport:
    """Count pairs with p and I both (probable) prime, collecting every hit."""
    if bound < 3:
        raise ValueError("bound must be >= 3")
    start = time.perf_counter()
    c_values = list(range(1, bound + 1, 2))
    if workers <= 1:
        hits = _scan_rows(field, c_values, bound, policy, large_prime_bits, smooth_bound)
    else:
        chunks = [c_values[k::workers] for k in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    lambda ch: _scan_rows(
                        field, ch, bound, policy, large_prime_bits, smooth_bound
                    ),
                    chunks,
                )
            )
        hits = sorted(
            (h for part in parts for h in part), key=lambda h: (h.C, h.D)
        )
    wall = (time.perf_counter() - start) * 1000.0
    return SearchReport(
        field=(field.d, field.b, field.c),
        kind="count_prime_pairs",
        params={
            "bound": bound,
            "large_prime_bits": large_prime_bits,
            "smooth_bound": smooth_bound,
        },
        count=len(hits),
        hits=tuple(hits),
        wall_ms=wall,
    )


def counts_by_bound(report: SearchReport, bounds) -> dict[int, int]:
    """Hit counts at each sub-bound, derived from one full enumeration."""
    top = report.params["bound"]
    out = {}
    for bound in bounds:
        if bound > top:
            raise ValueError(f"bound {bound} exceeds enumerated bound {top}")
        out[bound] = sum(1 for h in report.hits if max(h.C, h.D) <= bound)
    return out


def empirical_frequency(
    field: CyclicCMField, l: int, lo: int = 3, hi: int = 2001
) -> float:
    """Fraction of odd pairs (C, D) in [lo, hi]^2 with l dividing neither p nor I.

    Computed from residue classes mod l only; exact for the stated range.
    """
    if lo % 2 == 0 or hi % 2 == 0 or lo > hi:
        raise ValueError("lo and hi must be odd with lo <= hi")
    if l < 3 or not is_probable_prime(l):
        raise ValueError(f"l = {l} must be an odd prime")
    d, b, c = field.d % l, field.b % l, field.c % l
    counts = [0] * l
    for v in range(lo, hi + 1, 2):
        counts[v % l] += 1
    total = (hi - lo) // 2 + 1
    good = 0
    for rc in range(l):
        cc = rc * rc % l
        row = 0
        for rd in range(l):
            dd = rd * rd % l
            i4 = (c * (cc - dd) - 2 * b * rc * rd) % l
            if i4 == 0:
                continue
            e = (field.b // 2) * (cc - dd) + c * rc * rd
            n16 = (e * e + d * (cc + dd + 1)) % l
            if n16 == 0:
                continue
            row += counts[rd]
        good += counts[rc] * row
    return good / (total * total)


@dataclass(frozen=True)
class FindResult:
    candidate: WeilCandidate
    isolation: IsolationClass
    attempts: int
    seed: int
    wall_ms: float = dc_field(compare=False, default=0.0)


def find_isolated(
    field: CyclicCMField,
    target_p_bits: int,
    large_prime_bits: int = 80,
    seed: int = 0,
    smooth_bound: int = 1 << 20,
    policy: PrimalityPolicy = DEFAULT_POLICY,
    max_attempts: int = 10**6,
) -> FindResult:
    """Sample odd (C, D) until p is prime and I is a prime >= 2^large_prime_bits.

    C and D are drawn with bit length about (target_p_bits + 4)/4, which puts
    p near the requested size (p grows like ((b/2)C^2)^2 / 16).  p-primality
    is tested first: it is the cheaper rejection.  Reproducible for a fixed
    seed; raises after max_attempts samples.
    """
    if target_p_bits < 64:
        raise ValueError("target_p_bits must be >= 64")
    if field.no_prime_index:
        raise NoPrimeIndexError(
            f"3 | c for {field}: 3 | p*I for every candidate, no prime index > 3"
        )
    start = time.perf_counter()
    k = max(4, (target_p_bits + 4) // 4)
    rng = random.Random(seed)
    threshold = 1 << large_prime_bits
    for attempt in range(1, max_attempts + 1):
        C = rng.randrange(1 << (k - 1), 1 << k) | 1
        D = rng.randrange(1 << (k - 1), 1 << k) | 1
        b2, c = field.b // 2, field.c
        e = b2 * (C * C - D * D) + c * C * D
        n16 = e * e + field.d * (C * C + D * D + 1)
        p = n16 >> 4
        if n16 & 15:
            raise IntegralityError(f"16p = {n16} not divisible by 16 at ({C}, {D})")
        if not is_probable_prime(p, policy):
            continue
        i4 = abs(c * (C * C - D * D) - 2 * field.b * C * D)
        I = i4 >> 2
        if I < threshold or not is_probable_prime(I, policy):
            continue
        cand = complete_candidate(field, C, D, B=1)
        iso = classify(cand, large_prime_bits, smooth_bound, policy=policy)
        wall = (time.perf_counter() - start) * 1000.0
        return FindResult(
            candidate=cand, isolation=iso, attempts=attempt, seed=seed, wall_ms=wall
        )
    raise SearchExhaustedError(f"no hit in {max_attempts} samples (seed {seed})")


# ---------------------------------------------------------------------------
# Elliptic analogue: CM by an imaginary quadratic field
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EllipticCandidate:
    p: int
    n_minus: int
    n_plus: int


def elliptic_candidate(d: int, A: int, B: int) -> EllipticCandidate:
    """p = A^2 + d*B^2 and the two half group orders (p+1)/2 -+ A.

    A must be even (the trace of Frobenius is +-2A) and d*B^2 odd so that p
    is odd.
    """
    if A <= 0 or A % 2:
        raise ValueError(f"A must be a positive even integer, got {A}")
    if B <= 0 or (d * B) % 2 == 0:
        raise ValueError("B must be positive with d*B odd")
    p = A * A + d * B * B
    half = (p + 1) // 2
    return EllipticCandidate(p=p, n_minus=half - A, n_plus=half + A)


@dataclass(frozen=True)
class EllipticHit:
    d: int
    k: int
    p: int
    n: int
    A: int
    B: int
    sign: int  # n = (p+1)/2 + sign*A
    attempts: int


def elliptic_analogue_search(
    d: int,
    k: int,
    seed: int | None = None,
    experimental: bool = False,
    policy: PrimalityPolicy = DEFAULT_POLICY,
    max_attempts: int = 10**6,
) -> EllipticHit:
    """Find a k-bit prime B and even A with p = A^2 + d*B^2 and one of
    (p+1)/2 -+ A prime.

    d = 1 is the reference case (curve y^2 = x^3 - a*x, conductor gap |B|).
    Other square-free d = 1 mod 4 use the same integral form and are gated
    behind experimental=True; d = 2, 3 mod 4 are rejected (p would be even,
    or the coordinates are half-integral).

    seed=None scans B over ascending k-bit primes and A over ascending even
    numbers; an integer seed samples instead.
    """
    if d < 1 or not is_squarefree(d):
        raise ValueError("d must be a positive square-free integer")
    if d != 1 and not experimental:
        raise ValueError(f"d = {d} requires experimental=True")
    if d % 4 != 1:
        raise ValueError(f"d = {d} is not 1 mod 4: p = A^2 + d*B^2 cannot be prime")
    if k < 2:
        raise ValueError("k must be >= 2")
    lo, hi = 1 << (k - 1), 1 << k

    def a_scan(B: int, attempts: int):
        for A in range(2, hi + 1, 2):
            attempts += 1
            if attempts > max_attempts:
                raise SearchExhaustedError(f"no hit in {max_attempts} trials")
            p = A * A + d * B * B
            if not is_probable_prime(p, policy):
                continue
            half = (p + 1) // 2
            if is_probable_prime(half - A, policy):
                return EllipticHit(d=d, k=k, p=p, n=half - A, A=A, B=B, sign=-1,
                                   attempts=attempts), attempts
            if is_probable_prime(half + A, policy):
                return EllipticHit(d=d, k=k, p=p, n=half + A, A=A, B=B, sign=+1,
                                   attempts=attempts), attempts
        return None, attempts

    attempts = 0
    if seed is None:
        if k > 22:
            raise ValueError("deterministic scan supports k <= 22; pass a seed")
        for B in sieve_primes(hi - 1):
            if B < lo:
                continue
            hit, attempts = a_scan(B, attempts)
            if hit is not None:
                return hit
        raise SearchExhaustedError(f"no hit for any {k}-bit prime B")
    rng = random.Random(seed)
    while True:
        B = rng.randrange(lo, hi) | 1
        attempts += 1
        if attempts > max_attempts:
            raise SearchExhaustedError(f"no hit in {max_attempts} trials")
        if not is_probable_prime(B, policy):
            continue
        hit, attempts = a_scan(B, attempts)
        if hit is not None:
            return hit
