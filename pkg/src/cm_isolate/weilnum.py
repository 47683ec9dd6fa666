"""Weil p-number parametrization over a cyclic quartic CM field.

A candidate is an integer quadruple (A, B, C, D) standing for the element
pi = (A + B*sqrt(d) + C*eta + D*eta')/4 with pi * conj(pi) = p.  For odd
C, D and B = +-1 the closed forms

    16*p = ((b/2)*C^2 + c*C*D - (b/2)*D^2)^2 + d*(C^2 + D^2 + 1)
    4*I  = |c*C^2 - 2*b*C*D - c*D^2|

give the prime and the index [O_K : Z[pi, conj(pi)]].  Three independent
routes to disc(pi) are provided (closed form, Galois trace formula, and the
discriminant of the characteristic polynomial); they must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import IntegralityError, WeilConditionError
from .exactfield import (
    CyclicCMField,
    FieldElement,
    Galois,
    NonNormalCMField,
    minimal_polynomial,
    poly_discriminant,
)
from .numutil import sieve_primes
from .primality import DEFAULT_POLICY, PrimalityPolicy, is_probable_prime


@dataclass(frozen=True)
class WeilCandidate:
    """Integer coordinates of a Weil number candidate with derived (p, I)."""

    field: CyclicCMField
    A: int
    B: int
    C: int
    D: int
    p: int
    I: int

    def frobenius(self) -> FieldElement:
        return self.field.from_quadruple(self.A, self.B, self.C, self.D)


class IsolationTag(Enum):
    STRICTLY_ISOLATED = "strictly_isolated"
    ISOLATED = "isolated"
    ALMOST_ISOLATED = "almost_isolated"
    NOT_ISOLATED = "not_isolated"


@dataclass(frozen=True)
class IsolationClass:
    tag: IsolationTag
    large_prime_bits: int
    smooth_bound: int
    large_prime: int | None = None
    smooth_cofactor: int | None = None


def _require_odd(C: int, D: int) -> None:
    if C % 2 == 0 or D % 2 == 0:
        raise ValueError(f"C and D must be odd, got ({C}, {D})")


def sixteen_p(field: CyclicCMField, C: int, D: int) -> int:
    """16*p as an integer, valid for any parity of C, D."""
    b2, c, d = field.b // 2, field.c, field.d
    e = b2 * (C * C - D * D) + c * C * D
    return e * e + d * (C * C + D * D + 1)


def four_index(field: CyclicCMField, C: int, D: int) -> int:
    """4*I = |c*C^2 - 2*b*C*D - c*D^2| as an integer, any parity."""
    return abs(field.c * (C * C - D * D) - 2 * field.b * C * D)


def p_from_CD(field: CyclicCMField, C: int, D: int) -> int:
    """The prime-candidate p for odd C, D (B = +-1)."""
    _require_odd(C, D)
    n16 = sixteen_p(field, C, D)
    if n16 % 16:
        raise IntegralityError(f"16p = {n16} not divisible by 16 at ({C}, {D})")
    return n16 // 16


def index_from_CD(field: CyclicCMField, C: int, D: int) -> int:
    """The index I = [O_K : Z[pi, conj(pi)]] for odd C, D and B = +-1."""
    _require_odd(C, D)
    n4 = four_index(field, C, D)
    if n4 % 4:
        raise IntegralityError(f"4I = {n4} not divisible by 4 at ({C}, {D})")
    return n4 // 4


def complete_candidate(
    field: CyclicCMField, C: int, D: int, B: int = 1
) -> WeilCandidate:
    """Build the candidate with A fixed by A*B = -(b/2)C^2 - cCD + (b/2)D^2."""
    if B not in (1, -1):
        raise ValueError("B must be +1 or -1")
    _require_odd(C, D)
    b2, c = field.b // 2, field.c
    A = B * (-b2 * C * C - c * C * D + b2 * D * D)
    p = p_from_CD(field, C, D)
    I = index_from_CD(field, C, D)
    cand = WeilCandidate(field=field, A=A, B=B, C=C, D=D, p=p, I=I)
    pi = cand.frobenius()
    prod = pi * pi.conjugate(Galois.RHO)
    if not prod.is_rational() or prod.as_rational() != p:
        raise WeilConditionError(f"pi * conj(pi) = {prod} != {p}")
    return cand


def disc_closed_form(cand: WeilCandidate) -> int:
    """disc(pi) = (a^2*d/16) * p^2 * B^4 * (c*C^2 - 2b*C*D - c*D^2)^2.

    Includes the p^2 factor: it is what makes
    index^2 * p^2 * disc(K) = disc(pi) hold.
    """
    f = cand.field
    q = f.c * (cand.C * cand.C - cand.D * cand.D) - 2 * f.b * cand.C * cand.D
    num = f.disc * cand.p * cand.p * cand.B**4 * q * q
    if num % 16:
        raise IntegralityError("closed-form discriminant is not integral")
    return num // 16


def disc_trace_form(cand: WeilCandidate) -> int:
    """disc(pi) via p^2 * [Tr((pi-pi^s)(pi-pi^sr))]^2 * Tr(pi pi^s (pi-pi^r)(pi^s-pi^sr))."""
    pi = cand.frobenius()
    pi_s = pi.conjugate(Galois.SIGMA)
    pi_r = pi.conjugate(Galois.RHO)
    pi_sr = pi.conjugate(Galois.SIGMA_RHO)
    prod = pi * pi_r
    if not prod.is_rational() or prod.as_rational() != cand.p:
        raise WeilConditionError(f"pi * conj(pi) = {prod} != {cand.p}")
    t1 = ((pi - pi_s) * (pi - pi_sr)).trace()
    t2 = (pi * pi_s * (pi - pi_r) * (pi_s - pi_sr)).trace()
    disc = cand.p * cand.p * t1 * t1 * t2
    if disc.denominator != 1:
        raise IntegralityError(f"trace-form discriminant {disc} is not integral")
    return int(disc)


def disc_char_poly(cand: WeilCandidate) -> int:
    """disc(pi) as the discriminant of the characteristic polynomial of pi."""
    disc = poly_discriminant(minimal_polynomial(cand.frobenius()))
    if disc.denominator != 1:
        raise IntegralityError(f"char-poly discriminant {disc} is not integral")
    return int(disc)


def index_of_candidate(cand: WeilCandidate) -> int:
    """[O_K : Z[pi, conj(pi)]] = (B^2/4) * |c*C^2 - 2b*C*D - c*D^2|."""
    f = cand.field
    n4 = cand.B * cand.B * four_index(f, cand.C, cand.D)
    if n4 == 0:
        raise ValueError("degenerate candidate: index is zero")
    if n4 % 4:
        raise IntegralityError(f"4I = {n4} not divisible by 4")
    return n4 // 4


@lru_cache(maxsize=4)
def _smooth_primes(bound: int) -> tuple[int, ...]:
    return sieve_primes(bound)


def classify(
    cand: WeilCandidate,
    large_prime_bits: int = 80,
    smooth_bound: int = 1 << 20,
    h_K: int | None = None,
    policy: PrimalityPolicy = DEFAULT_POLICY,
) -> IsolationClass:
    """Isolation classification of a candidate whose p is already prime.

    I prime and >= 2^large_prime_bits gives Isolated (Strictly when the class
    number is known to be 1).  Otherwise the smooth part of I is stripped by
    trial division up to smooth_bound only; a single remaining large prime
    factor gives AlmostIsolated.
    """
    threshold = 1 << large_prime_bits
    I = cand.I
    if I <= 0:
        return IsolationClass(
            tag=IsolationTag.NOT_ISOLATED,
            large_prime_bits=large_prime_bits,
            smooth_bound=smooth_bound,
        )
    if I >= 2 and is_probable_prime(I, policy):
        if I >= threshold:
            h = h_K if h_K is not None else cand.field.class_number
            tag = (
                IsolationTag.STRICTLY_ISOLATED if h == 1 else IsolationTag.ISOLATED
            )
            return IsolationClass(
                tag=tag,
                large_prime_bits=large_prime_bits,
                smooth_bound=smooth_bound,
                large_prime=I,
                smooth_cofactor=1,
            )
        return IsolationClass(
            tag=IsolationTag.NOT_ISOLATED,
            large_prime_bits=large_prime_bits,
            smooth_bound=smooth_bound,
        )
    smooth = 1
    rest = I
    for q in _smooth_primes(smooth_bound):
        if q * q > rest:
            break
        while rest % q == 0:
            smooth *= q
            rest //= q
    if 1 < rest <= smooth_bound:
        # the remaining cofactor is itself a smooth prime
        smooth *= rest
        rest = 1
    if rest >= threshold and is_probable_prime(rest, policy):
        return IsolationClass(
            tag=IsolationTag.ALMOST_ISOLATED,
            large_prime_bits=large_prime_bits,
            smooth_bound=smooth_bound,
            large_prime=rest,
            smooth_cofactor=smooth,
        )
    return IsolationClass(
        tag=IsolationTag.NOT_ISOLATED,
        large_prime_bits=large_prime_bits,
        smooth_bound=smooth_bound,
    )


def nonnormal_index_cofactor(field: NonNormalCMField, C: int, D: int) -> int:
    """|C^2 + CD + (1-d)/4 * D^2| or |C^2 - d*D^2| by the residue of d mod 4.

    Any prime l > disc(K) dividing this value divides the endomorphism-ring
    index of the corresponding Weil number (sufficient condition only).
    """
    d = field.d
    if d % 4 == 1:
        val = C * C + C * D + (1 - d) // 4 * D * D
    else:
        val = C * C - d * D * D
    return abs(val)
