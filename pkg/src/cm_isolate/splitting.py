"""Splitting behaviour of rational primes in K/Q and the local densities.

Odd primes fall into four classes: totally split in K (P_C), split in the
real quadratic subfield only (P_S), inert (P_I), or ramified (divisors of d).
The totally-split test for l not dividing b is whether (2c*sqrt(d) - 2d)/b^2
is a square mod l; the answer does not depend on which square root of d is
chosen.  Odd divisors of b split in K_0 and behave like P_C exactly when
-1 is a square mod l.

Each class carries exact local probabilities for l dividing the index I
and/or the prime p of a random candidate, and the derived correction factors
c(l) and c_p(l).  All probabilities are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .exactfield import CyclicCMField
from .numutil import jacobi, sqrt_mod
from .primality import is_probable_prime
from .weilnum import four_index, sixteen_p


class SplittingClass(Enum):
    TOTALLY_SPLIT = "totally_split"  # P_C
    HALF_SPLIT = "half_split"  # P_S
    INERT = "inert"  # P_I
    RAMIFIED = "ramified"  # R


@dataclass(frozen=True)
class LocalData:
    """Per-prime splitting class, local probabilities and correction factors."""

    l: int
    cls: SplittingClass | None  # None only for l = 2
    divides_b: bool
    prob_not_I: Fraction
    prob_neither: Fraction
    prob_not_p: Fraction
    c_l: Fraction
    c_p_l: Fraction


def _even_sqrt_mod(a: int, l: int) -> int:
    """The even representative among the two square roots of a mod l."""
    r = sqrt_mod(a, l)
    if r is None:
        raise ValueError(f"{a} is not a square mod {l}")
    if r == 0:
        return 0
    return r if r % 2 == 0 else l - r


@lru_cache(maxsize=None)
def classify_prime(field: CyclicCMField, l: int) -> SplittingClass:
    """Splitting class of an odd prime l in K/Q."""
    if l < 3 or not is_probable_prime(l):
        raise ValueError(f"l = {l} must be an odd prime")
    if field.d % l == 0:
        return SplittingClass.RAMIFIED
    if jacobi(field.d, l) == -1:
        return SplittingClass.INERT
    # l splits in K_0; decide P_C vs P_S
    if field.b % l == 0:
        # d = c^2 mod l; totally split exactly when -1 is a square mod l
        return (
            SplittingClass.TOTALLY_SPLIT if l % 4 == 1 else SplittingClass.HALF_SPLIT
        )
    r = _even_sqrt_mod(field.d, l)
    t = (2 * field.c * r - 2 * field.d) * pow(field.b, -2, l) % l
    if t == 0:  # would need l | b, excluded above
        raise ArithmeticError(f"residue test degenerated at l = {l}")
    return (
        SplittingClass.TOTALLY_SPLIT if jacobi(t, l) == 1 else SplittingClass.HALF_SPLIT
    )


def prob_not_dividing_index(field: CyclicCMField, l: int) -> Fraction:
    """Prob(l does not divide I) over random odd C, D."""
    if l == 2:
        return Fraction(1)
    if field.d % l == 0:
        return 1 - Fraction(1, l)
    if jacobi(field.d, l) == 1:  # split in K_0 (covers divisors of b and c)
        return (1 - Fraction(1, l)) ** 2
    return 1 - Fraction(1, l * l)


def prob_neither_divides(field: CyclicCMField, l: int) -> Fraction:
    """Prob(l divides neither p nor I) over random odd C, D."""
    if l == 2:
        return Fraction(1)
    if field.b % l == 0:
        if l % 4 == 1:
            return (1 - Fraction(3, l)) ** 2
        return (1 - Fraction(1, l)) ** 2
    cls = classify_prime(field, l)
    if cls is SplittingClass.TOTALLY_SPLIT:
        return (1 - Fraction(3, l)) ** 2
    if cls is SplittingClass.HALF_SPLIT:
        return (1 - Fraction(1, l)) ** 2
    if cls is SplittingClass.INERT:
        return 1 - Fraction(1, l * l)
    return 1 - Fraction(1, l)


def prob_not_dividing_p(field: CyclicCMField, l: int) -> Fraction:
    """Prob(l does not divide p) over random odd C, D.

    Proved for the totally-split and ramified classes; primes outside
    P_C and R never divide p at all.  For ramified l the congruence
    p = I^2 mod l couples the two events.
    """
    if l == 2:
        return Fraction(1)
    if field.d % l == 0:
        return 1 - Fraction(1, l)
    if field.b % l == 0:
        return (1 - Fraction(2, l)) ** 2 if l % 4 == 1 else Fraction(1)
    if classify_prime(field, l) is SplittingClass.TOTALLY_SPLIT:
        return (1 - Fraction(2, l)) ** 2
    return Fraction(1)


def correction_factor(field: CyclicCMField, l: int) -> Fraction:
    """c(l) = Prob(l divides neither p nor I) / (1 - 1/l)^2."""
    return prob_neither_divides(field, l) / (1 - Fraction(1, l)) ** 2


def cp_factor(field: CyclicCMField, l: int) -> Fraction:
    """c_p(l) = Prob(l does not divide p) / (1 - 1/l)."""
    return prob_not_dividing_p(field, l) / (1 - Fraction(1, l))


def local_data(field: CyclicCMField, l: int) -> LocalData:
    cls = None if l == 2 else classify_prime(field, l)
    return LocalData(
        l=l,
        cls=cls,
        divides_b=field.b % l == 0,
        prob_not_I=prob_not_dividing_index(field, l),
        prob_neither=prob_neither_divides(field, l),
        prob_not_p=prob_not_dividing_p(field, l),
        c_l=correction_factor(field, l),
        c_p_l=cp_factor(field, l),
    )


def uv_check(field: CyclicCMField, l: int, C: int, D: int) -> bool:
    """Verify the split-prime factorizations of 16p and 8I modulo l.

    With eps = (-c + sqrt(d))/b, eps' = (-c - sqrt(d))/b and U = C - eps*D,
    V = C - eps'*D reduced mod l, checks

        16*p = ((b/2)U^2 + eps*sqrt(d)) * ((b/2)V^2 - eps'*sqrt(d))   (mod l)
        8*I  = +- b*eps'*(U - eps*V)*(U + eps*V)                      (mod l)

    Requires l an odd prime not dividing b*d with d a square mod l.  This is
    a property harness, not a user-facing computation.
    """
    if l < 3 or not is_probable_prime(l):
        raise ValueError(f"l = {l} must be an odd prime")
    if field.b % l == 0 or field.d % l == 0:
        raise ValueError(f"l = {l} divides b*d")
    if jacobi(field.d, l) != 1:
        raise ValueError(f"d is not a square mod {l}")
    r = _even_sqrt_mod(field.d, l)
    binv = pow(field.b, -1, l)
    eps = (r - field.c) * binv % l
    epsp = (-r - field.c) * binv % l
    U = (C - eps * D) % l
    V = (C - epsp * D) % l
    half_b = field.b * pow(2, -1, l) % l
    lhs_p = sixteen_p(field, C, D) % l
    rhs_p = (half_b * U * U + eps * r) * (half_b * V * V - epsp * r) % l
    if lhs_p != rhs_p:
        raise AssertionError(f"16p factorization fails mod {l} at ({C}, {D})")
    lhs_i = 2 * four_index(field, C, D) % l
    rhs_i = field.b * epsp * (U - eps * V) * (U + eps * V) % l
    if lhs_i != rhs_i and lhs_i != (-rhs_i) % l:
        raise AssertionError(f"8I factorization fails mod {l} at ({C}, {D})")
    return True
