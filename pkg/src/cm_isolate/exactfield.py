"""Exact arithmetic in quartic CM fields K = Q(sqrt(-a - b*sqrt(d))).

Cyclic case (a = d, d = b^2 + c^2): elements are stored as exact rational
coordinates over the surd basis {1, s, e, f} with

    s = sqrt(d),   e = sqrt(-d - b*sqrt(d)),   f = sqrt(-d + b*sqrt(d)).

Multiplication is fixed by the structure constants

    s^2 = d,  e^2 = -d - b*s,  f^2 = -d + b*s,  e*f = -c*s,
    s*e = b*e + c*f,           s*f = c*e - b*f,

and the Galois action by sigma: s -> -s, e -> f, f -> -e (order 4), with
complex conjugation rho = sigma^2 negating e and f.  The sign e*f = -c*s is
the one realized by taking both e and f in the upper half plane; it is the
convention under which pi = (A + B*s + C*e + D*f)/4 satisfies

    A*B = -(b/2)*C^2 - c*C*D + (b/2)*D^2

when pi * rho(pi) is rational, which is the relation the rest of the package
is built on.  (The opposite sign flips D everywhere.)

Non-normal case: only the subfield inventory, reflex-field descriptors and
the two quadratic-polynomial factorizations are needed; those live entirely
in quadratic subfields and are handled symbolically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

from .errors import FieldConstructionError, MixedFieldError
from .numutil import is_perfect_square, is_squarefree, squarefree_kernel


class Galois(Enum):
    """The four elements of Gal(K/Q) for a cyclic quartic K."""

    ID = "id"
    SIGMA = "sigma"
    RHO = "rho"
    SIGMA_RHO = "sigma_rho"


_ALL_GALOIS = (Galois.ID, Galois.SIGMA, Galois.RHO, Galois.SIGMA_RHO)


@dataclass(frozen=True)
class CyclicCMField:
    """Cyclic quartic CM field Q(sqrt(-d - b*sqrt(d))) with d = b^2 + c^2.

    Instances are produced by make_cyclic_field, which validates the
    arithmetic preconditions and resolves eps_basis.  class_number is an
    externally supplied h(K); it is never computed here.
    """

    d: int
    b: int
    c: int
    eps_basis: int
    class_number: int | None = None

    @property
    def a(self) -> int:
        return self.d

    @property
    def disc(self) -> int:
        return self.d**3

    @property
    def no_prime_index(self) -> bool:
        """True when 3 | c: then 3 | p*I for every admissible (C, D)."""
        return self.c % 3 == 0

    def element(self, x0, x1=0, x2=0, x3=0) -> FieldElement:
        """Element x0 + x1*sqrt(d) + x2*eta + x3*eta'."""
        return FieldElement(
            self, (Fraction(x0), Fraction(x1), Fraction(x2), Fraction(x3))
        )

    def from_quadruple(self, A, B, C, D) -> FieldElement:
        """Element (A + B*sqrt(d) + C*eta + D*eta') / 4."""
        return FieldElement(
            self,
            (Fraction(A, 4), Fraction(B, 4), Fraction(C, 4), Fraction(D, 4)),
        )

    @property
    def sqrt_d(self) -> FieldElement:
        return self.element(0, 1, 0, 0)

    @property
    def eta(self) -> FieldElement:
        return self.element(0, 0, 1, 0)

    @property
    def eta_conj(self) -> FieldElement:
        return self.element(0, 0, 0, 1)

    def integral_basis(self) -> tuple[FieldElement, ...]:
        """{1, (1+sqrt(d))/2, (1+sqrt(d)+eta+eps*eta')/4, (1-sqrt(d)+eta-eps*eta')/4}."""
        eps = self.eps_basis
        h = Fraction(1, 2)
        q = Fraction(1, 4)
        return (
            self.element(1),
            FieldElement(self, (h, h, Fraction(0), Fraction(0))),
            FieldElement(self, (q, q, q, eps * q)),
            FieldElement(self, (q, -q, q, -eps * q)),
        )

    def __str__(self) -> str:
        return f"Q(sqrt(-{self.d}-{self.b}*sqrt({self.d})))"


def make_cyclic_field(
    d: int, b: int, c: int, class_number: int | None = None
) -> CyclicCMField:
    """Validated construction; resolves the integral-basis sign eps.

    Rejects (d, b, c) unless d = b^2 + c^2, d = 5 mod 8, b = 2 mod 4 and d is
    square-free; fails if neither choice of eps makes the basis integral.
    """
    if d <= 0 or b <= 0 or c <= 0:
        raise FieldConstructionError("d, b, c must be positive")
    if d != b * b + c * c:
        raise FieldConstructionError(f"d must equal b^2 + c^2 ({b**2 + c**2} != {d})")
    if d % 8 != 5:
        raise FieldConstructionError(f"d = {d} is not 5 mod 8")
    if b % 4 != 2:
        raise FieldConstructionError(f"b = {b} is not 2 mod 4")
    if not is_squarefree(d):
        raise FieldConstructionError(f"d = {d} is not square-free")
    for eps in (1, -1):
        field = CyclicCMField(d=d, b=b, c=c, eps_basis=eps, class_number=class_number)
        if all(minimal_polynomial(x).is_integral() for x in field.integral_basis()):
            return field
    raise FieldConstructionError(
        f"no sign makes the quarter-integral basis integral for (d,b,c)=({d},{b},{c})"
    )


# Coordinate images of the Galois maps: sigma(x0,x1,x2,x3) = (x0,-x1,-x3,x2).
def _apply_galois(coords, g: Galois):
    x0, x1, x2, x3 = coords
    if g is Galois.ID:
        return coords
    if g is Galois.SIGMA:
        return (x0, -x1, -x3, x2)
    if g is Galois.RHO:
        return (x0, x1, -x2, -x3)
    return (x0, -x1, x3, -x2)


@dataclass(frozen=True)
class FieldElement:
    """Exact element of a cyclic quartic CM field (immutable)."""

    field: CyclicCMField
    coords: tuple[Fraction, Fraction, Fraction, Fraction]

    def _check_same_field(self, other: FieldElement) -> None:
        if self.field != other.field:
            raise MixedFieldError("operands belong to different fields")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same_field(other)
        return FieldElement(
            self.field, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return NotImplemented

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same_field(other)
        d, b, c = self.field.d, self.field.b, self.field.c
        x0, x1, x2, x3 = self.coords
        y0, y1, y2, y3 = other.coords
        z0 = x0 * y0 + d * (x1 * y1 - x2 * y2 - x3 * y3)
        z1 = (
            x0 * y1
            + x1 * y0
            - b * x2 * y2
            + b * x3 * y3
            - c * (x2 * y3 + x3 * y2)
        )
        z2 = x0 * y2 + x2 * y0 + b * (x1 * y2 + x2 * y1) + c * (x1 * y3 + x3 * y1)
        z3 = x0 * y3 + x3 * y0 + c * (x1 * y2 + x2 * y1) - b * (x1 * y3 + x3 * y1)
        return FieldElement(self.field, (z0, z1, z2, z3))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> FieldElement:
        if n < 0:
            raise ValueError("negative powers not supported")
        out = self.field.element(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self, g: Galois) -> FieldElement:
        return FieldElement(self.field, _apply_galois(self.coords, g))

    def conjugates(self) -> tuple[FieldElement, ...]:
        """(x, x^sigma, x^rho, x^sigma_rho)."""
        return tuple(self.conjugate(g) for g in _ALL_GALOIS)

    def is_rational(self) -> bool:
        return self.coords[1] == 0 and self.coords[2] == 0 and self.coords[3] == 0

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"element is not rational: {self}")
        return self.coords[0]

    def trace(self) -> Fraction:
        return 4 * self.coords[0]

    def norm(self) -> Fraction:
        prod = self.field.element(1)
        for conj in self.conjugates():
            prod = prod * conj
        return prod.as_rational()

    def complex_embeddings(self) -> tuple[complex, ...]:
        """Numeric images under the four embeddings, Galois order as conjugates()."""
        d, b = self.field.d, self.field.b
        rd = math.sqrt(d)
        e0 = 1j * math.sqrt(d + b * rd)
        f0 = 1j * math.sqrt(d - b * rd)
        basis_images = (
            (rd, e0, f0),
            (-rd, f0, -e0),
            (rd, -e0, -f0),
            (-rd, -f0, e0),
        )
        x0, x1, x2, x3 = (float(q) for q in self.coords)
        return tuple(
            x0 + x1 * s + x2 * e + x3 * f for s, e, f in basis_images
        )

    def __str__(self) -> str:
        names = ("", "*sqrt(d)", "*eta", "*eta'")
        parts = [f"{q}{n}" for q, n in zip(self.coords, names) if q != 0]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class QuarticPoly:
    """Degree-4 polynomial with exact rational coefficients, ascending order."""

    coeffs: tuple[Fraction, Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self) -> None:
        if len(self.coeffs) != 5 or self.coeffs[4] == 0:
            raise ValueError("need exactly degree 4")

    def __call__(self, x):
        out = self.coeffs[4]
        for coef in reversed(self.coeffs[:4]):
            out = out * x + coef
        return out

    def is_monic(self) -> bool:
        return self.coeffs[4] == 1

    def is_integral(self) -> bool:
        return all(q.denominator == 1 for q in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for k in range(4, -1, -1):
            q = self.coeffs[k]
            if q:
                terms.append(f"{q}*X^{k}" if k else f"{q}")
        return " + ".join(terms) if terms else "0"


def conjugate(x: FieldElement, g: Galois) -> FieldElement:
    return x.conjugate(g)


def minimal_polynomial(x: FieldElement) -> QuarticPoly:
    """Characteristic polynomial prod_g (X - x^g), always degree 4.

    For a generator of K this is the minimal polynomial; for rationals it is
    (X - q)^4, for quadratic elements the square of the true one.
    """
    r = x.conjugates()
    e1 = r[0] + r[1] + r[2] + r[3]
    e2 = x.field.element(0)
    for u, v in combinations(r, 2):
        e2 = e2 + u * v
    e3 = r[0] * r[1] * r[2] + r[0] * r[1] * r[3] + r[0] * r[2] * r[3] + r[1] * r[2] * r[3]
    e4 = r[0] * r[1] * r[2] * r[3]
    return QuarticPoly(
        (
            e4.as_rational(),
            -e3.as_rational(),
            e2.as_rational(),
            -e1.as_rational(),
            Fraction(1),
        )
    )


def poly_discriminant(q) -> Fraction:
    """Discriminant of a degree-4 polynomial, prod_{i<j} (r_i - r_j)^2.

    Accepts a QuarticPoly or any 5-sequence of ascending coefficients.
    """
    coeffs = q.coeffs if isinstance(q, QuarticPoly) else tuple(Fraction(v) for v in q)
    if len(coeffs) != 5 or coeffs[4] == 0:
        raise ValueError("need exactly degree 4")
    a0, a1, a2, a3, a4 = coeffs
    return (
        256 * a4**3 * a0**3
        - 192 * a4**2 * a3 * a1 * a0**2
        - 128 * a4**2 * a2**2 * a0**2
        + 144 * a4**2 * a2 * a1**2 * a0
        - 27 * a4**2 * a1**4
        + 144 * a4 * a3**2 * a2 * a0**2
        - 6 * a4 * a3**2 * a1**2 * a0
        - 80 * a4 * a3 * a2**2 * a1 * a0
        + 18 * a4 * a3 * a2 * a1**3
        + 16 * a4 * a2**4 * a0
        - 4 * a4 * a2**3 * a1**2
        - 27 * a3**4 * a0**2
        + 18 * a3**3 * a2 * a1 * a0
        - 4 * a3**3 * a1**3
        - 4 * a3**2 * a2**3 * a0
        + a3**2 * a2**2 * a1**2
    )


def integral_basis_discriminant(field: CyclicCMField) -> Fraction:
    """det [Tr(w_i * w_j)] over the resolved integral basis; equals disc(K)."""
    basis = field.integral_basis()
    gram = [[(u * v).trace() for v in basis] for u in basis]
    return _det4(gram)


def _det4(m) -> Fraction:
    # cofactor expansion; 4x4 only
    def det3(a):
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )

    total = Fraction(0)
    sign = 1
    for j in range(4):
        minor = [[m[i][k] for k in range(4) if k != j] for i in range(1, 4)]
        total += sign * m[0][j] * det3(minor)
        sign = -sign
    return total


# ---------------------------------------------------------------------------
# Non-normal quartic CM fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NonNormalCMField:
    """Non-normal quartic CM field Q(sqrt(-a - b*sqrt(d))), a^2 - b^2*d > 0."""

    a: int
    b: int
    d: int

    @property
    def delta(self) -> int:
        return self.a * self.a - self.b * self.b * self.d

    @property
    def reflex0(self) -> int:
        """Square-free kernel of a^2 - b^2*d (the reflex real quadratic field)."""
        return squarefree_kernel(self.delta)[0]

    @property
    def d_mod4(self) -> int:
        """Coordinate-form branch: 1, or 2 for d = 2,3 mod 4."""
        return 1 if self.d % 4 == 1 else 2

    def __str__(self) -> str:
        return f"Q(sqrt(-{self.a}-{self.b}*sqrt({self.d})))"


def make_nonnormal_field(a: int, b: int, d: int) -> NonNormalCMField:
    if a <= 0 or b <= 0 or d <= 0:
        raise FieldConstructionError("a, b, d must be positive")
    if d == 1 or not is_squarefree(d):
        raise FieldConstructionError(f"d = {d} must be square-free and > 1")
    delta = a * a - b * b * d
    if delta <= 0:
        raise FieldConstructionError("need a^2 - b^2*d > 0 (totally imaginary)")
    if delta % d == 0 and is_perfect_square(delta // d):
        raise FieldConstructionError(
            f"a^2 - b^2*d = {delta} is d times a square: the field is cyclic"
        )
    g = math.gcd(a, b)
    if not is_squarefree(g):
        raise FieldConstructionError(f"gcd(a, b) = {g} must be square-free")
    if g % d == 0:
        raise FieldConstructionError("d must not divide gcd(a, b)")
    return NonNormalCMField(a=a, b=b, d=d)


@dataclass(frozen=True)
class QuarticDescriptor:
    """Descriptor (a, b, d) for Q(sqrt(-a - b*sqrt(d))); b may be negative."""

    a: int
    b: int
    d: int

    def __str__(self) -> str:
        sign = "-" if self.b > 0 else "+"
        return f"Q(sqrt(-{self.a}{sign}{abs(self.b)}*sqrt({self.d})))"


@dataclass(frozen=True)
class SubfieldInventory:
    """Subfields of the degree-8 normal closure of a non-normal quartic K."""

    quadratic_kernels: tuple[int, int, int]  # Q(sqrt(d)), Q(sqrt(delta)), Q(sqrt(d*delta))
    biquadratic: tuple[int, int]  # the real normal quartic Q(sqrt(d), sqrt(delta))
    k1: QuarticDescriptor
    k2: QuarticDescriptor
    k1_reflex: QuarticDescriptor
    k2_reflex: QuarticDescriptor


def nonnormal_subfields(field: NonNormalCMField) -> SubfieldInventory:
    """The three real quadratic and five quartic subfields of the closure.

    Reflex fields are Q(sqrt(-2a -+ 2*sqrt(delta))) written over the
    square-free kernel of delta.
    """
    a, b, d = field.a, field.b, field.d
    delta = field.delta
    r0, m = squarefree_kernel(delta)
    rr0 = squarefree_kernel(delta * d)[0]
    return SubfieldInventory(
        quadratic_kernels=(d, r0, rr0),
        biquadratic=(d, r0),
        k1=QuarticDescriptor(a, b, d),
        k2=QuarticDescriptor(a, -b, d),
        k1_reflex=QuarticDescriptor(2 * a, 2 * m, r0),
        k2_reflex=QuarticDescriptor(2 * a, -2 * m, r0),
    )


# Formal ring Q[S]/(S^2 - m): pairs (u, v) == u + v*S.
def _q2_add(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _q2_mul(x, y, m):
    return (x[0] * y[0] + m * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def nonnormal_factorization_check(a_coeff: int, b_coeff: int) -> bool:
    """Verify both quadratic factorizations of X^4 + a*X^2 + b symbolically.

    Expands (X^2 + t*X + S)(X^2 - t*X + S) with t^2 = 2S - a, and
    (X^2 + u*X - S)(X^2 - u*X - S) with u^2 = -2S - a, over the formal ring
    Q[S]/(S^2 - b), and confirms both products equal X^4 + a*X^2 + b exactly.

    Preconditions: a > 0, b > 0, a^2 - 4b > 0 and not a perfect square (the
    quadratic X^2 + a*X + b then has two distinct totally negative roots).
    """
    a, b = a_coeff, b_coeff
    if a <= 0 or b <= 0:
        raise ValueError("need a > 0 and b > 0")
    gap = a * a - 4 * b
    if gap <= 0:
        raise ValueError(f"a^2 - 4b = {gap} must be positive")
    if is_perfect_square(gap):
        raise ValueError(f"a^2 - 4b = {gap} must not be a perfect square")

    zero = (Fraction(0), Fraction(0))
    one = (Fraction(1), Fraction(0))
    S = (Fraction(0), Fraction(1))

    def expand(const_term, tau):
        # poly coefficients live in Q[S][t]/(t^2 - tau); each is (base, base)
        def rmul(x, y):
            u1, v1 = x
            u2, v2 = y
            return (
                _q2_add(_q2_mul(u1, u2, b), _q2_mul(tau, _q2_mul(v1, v2, b), b)),
                _q2_add(_q2_mul(u1, v2, b), _q2_mul(v1, u2, b)),
            )

        def radd(x, y):
            return (_q2_add(x[0], y[0]), _q2_add(x[1], y[1]))

        rzero = (zero, zero)
        t_plus = (zero, one)
        t_minus = (zero, (Fraction(-1), Fraction(0)))
        p1 = [(const_term, zero), t_plus, (one, zero)]  # X^2 + t*X + const
        p2 = [(const_term, zero), t_minus, (one, zero)]
        prod = [rzero] * 5
        for i, ci in enumerate(p1):
            for j, cj in enumerate(p2):
                prod[i + j] = radd(prod[i + j], rmul(ci, cj))
        return prod

    neg_S = (Fraction(0), Fraction(-1))
    tau1 = _q2_add(_q2_mul((Fraction(2), Fraction(0)), S, b), (Fraction(-a), Fraction(0)))
    tau2 = _q2_add(_q2_mul((Fraction(-2), Fraction(0)), S, b), (Fraction(-a), Fraction(0)))
    expected = [
        (Fraction(b), Fraction(0)),
        zero,
        (Fraction(a), Fraction(0)),
        zero,
        one,
    ]
    for const, tau in ((S, tau1), (neg_S, tau2)):
        prod = expand(const, tau)
        for k in range(5):
            base, tpart = prod[k]
            if tpart != zero or base != expected[k]:
                raise AssertionError(
                    f"factorization expansion mismatch at X^{k}: {prod[k]}"
                )
    return True
