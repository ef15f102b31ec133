"""Cartan subgroups of GL(2, Z/NZ) attached to imaginary quadratic orders.

An order is determined by a fundamental discriminant D < 0 and a conductor
f >= 1. The order determines a pair (delta, phi):

    D*f^2 = 0 mod 4:  delta = D*f^2/4,          phi = 0
    D*f^2 = 1 mod 4:  delta = ((D-1)/4)*f^2,    phi = f

and the Cartan subgroup at level N consists of the matrices

    c(a, b) = [[a + b*phi, b], [delta*b, a]]

whose determinant a^2 + a*b*phi - delta*b^2 is a unit mod N. The product

    c(a, b) * c(a', b') = c(a*a' + delta*b*b', a*b' + a'*b + phi*b*b')

is symmetric in the two argument pairs, so Cartan subgroups are abelian.
The normalizer is obtained by adjoining the reflection

    c_eps = [[-eps, 0], [phi, eps]]

for either sign; both signs give the same group because -Id = c(-1, 0)
already lies in the Cartan subgroup.

At levels coprime to the denominator, delta is allowed to be a fraction
(e.g. -3/4 at odd levels), which is how odd-level arguments normalize
away a unit square. CartanParams carries the numerator and denominator
separately and resolves them per level.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import factorint

from .modmat import (
    FiniteMatrixGroup,
    Mat2,
    ModulusLike,
    is_unit,
    mat_mul,
    modulus_value,
)

_ALLOWED_DENOMINATORS = (1, 4, 8)

# Full pairwise closure validation is exact up to this order; larger
# enumerations are validated on a deterministic slice (the product law
# itself is machine-verified symbolically in the test suite).
_FULL_VALIDATION_LIMIT = 500


def _is_squarefree(m: int) -> bool:
    if m == 0:
        return False
    return all(e == 1 for e in factorint(abs(m)).values())


def is_fundamental_discriminant(d: int) -> bool:
    """Whether d is the discriminant of the maximal order of Q(sqrt(d)), d < 0."""
    if d >= 0:
        return False
    if d % 4 == 1:
        return _is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return _is_squarefree(m) and m % 4 in (2, 3)
    return False


@dataclass(frozen=True)
class CmOrder:
    """An order in an imaginary quadratic field: fundamental discriminant and conductor.

    The discriminant must already be fundamental; passing e.g. -12 when
    the order Z[sqrt(-3)] is meant raises instead of silently rewriting
    to (-3, 2).

    >>> CmOrder(-4, 4).disc_f2
    -64
    >>> CmOrder(-12)
    Traceback (most recent call last):
        ...
    ValueError: -12 is not a fundamental discriminant (did you mean a conductor?)
    """

    delta_k: int
    conductor: int = 1

    def __post_init__(self) -> None:
        if not is_fundamental_discriminant(self.delta_k):
            raise ValueError(
                f"{self.delta_k} is not a fundamental discriminant (did you mean a conductor?)"
            )
        if not isinstance(self.conductor, int) or self.conductor < 1:
            raise ValueError(f"conductor must be a positive integer, got {self.conductor}")

    @property
    def disc_f2(self) -> int:
        return self.delta_k * self.conductor**2


def fraction_mod(num: int, den: int, n: ModulusLike) -> int:
    """num/den as a residue mod n; requires gcd(den, n) = 1."""
    n = modulus_value(n)
    if gcd(den, n) != 1:
        raise ValueError(f"denominator {den} is not invertible mod {n}")
    if n == 1:
        return 0
    return num * pow(den, -1, n) % n


@dataclass(frozen=True)
class CartanParams:
    """The (delta, phi) pair, with delta stored as a fraction delta_num/delta_den."""

    delta_num: int
    delta_den: int = 1
    phi: int = 0

    def __post_init__(self) -> None:
        if self.delta_den not in _ALLOWED_DENOMINATORS:
            raise ValueError(
                f"delta denominator must be one of {_ALLOWED_DENOMINATORS}, got {self.delta_den}"
            )
        if not isinstance(self.phi, int) or self.phi < 0:
            raise ValueError(f"phi must be a non-negative integer, got {self.phi}")

    def delta_mod(self, n: ModulusLike) -> int:
        return fraction_mod(self.delta_num, self.delta_den, n)


def cartan_params(order: CmOrder) -> CartanParams:
    """The (delta, phi) pair of an order, by the discriminant's residue mod 4."""
    d = order.disc_f2
    if d % 4 == 0:
        return CartanParams(d // 4, 1, 0)
    # d = 1 mod 4 is the only other possibility for a valid order
    return CartanParams(((order.delta_k - 1) // 4) * order.conductor**2, 1, order.conductor)


def c_matrix(params: CartanParams, a: int, b: int, n: ModulusLike) -> Mat2:
    """The Cartan matrix c(a, b) = [[a + b*phi, b], [delta*b, a]] mod n.

    >>> c_matrix(CartanParams(-3, 4, 0), 1, 6, 9).rows()   # -3/4 = 6 mod 9, 6*6 = 0
    ((1, 6), (0, 1))
    >>> c_matrix(CartanParams(-1, 1, 1), 1, 6, 9).rows()
    ((7, 6), (3, 1))
    """
    n = modulus_value(n)
    delta = params.delta_mod(n)
    phi = params.phi
    return Mat2(a + b * phi, b, delta * b, a, n)


def c_det(params: CartanParams, a: int, b: int, n: ModulusLike) -> int:
    """det c(a, b) = a^2 + a*b*phi - delta*b^2 mod n."""
    n = modulus_value(n)
    delta = params.delta_mod(n)
    return (a * a + a * b * params.phi - delta * b * b) % n


def c_eps(params: CartanParams, eps: int, n: ModulusLike) -> Mat2:
    """The reflection [[-eps, 0], [phi, eps]] that normalizes the Cartan subgroup."""
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps}")
    n = modulus_value(n)
    return Mat2(-eps, 0, params.phi, eps, n)


def c_eps_prime(eps: int, n: ModulusLike) -> Mat2:
    """The antidiagonal reflection [[0, eps], [eps, 0]]."""
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps}")
    n = modulus_value(n)
    return Mat2(0, eps, eps, 0, n)


def cartan_elements(params: CartanParams, n: ModulusLike) -> list[Mat2]:
    """All c(a, b) with unit determinant, in canonical order."""
    n = modulus_value(n)
    out = []
    delta = params.delta_mod(n)
    phi = params.phi
    for a in range(n):
        for b in range(n):
            det = (a * a + a * b * phi - delta * b * b) % n
            if is_unit(det, n):
                out.append(Mat2(a + b * phi, b, delta * b, a, n))
    out.sort(key=Mat2.encode)
    return out


def cartan_subgroup(params: CartanParams, n: ModulusLike) -> FiniteMatrixGroup:
    """The Cartan subgroup at level n, built by direct enumeration.

    The element set is validated to be multiplicatively closed: fully when
    the order is at most _FULL_VALIDATION_LIMIT, on a deterministic slice
    of rows otherwise.
    """
    n = modulus_value(n)
    elems = cartan_elements(params, n)
    element_set = frozenset(elems)
    rows = elems if len(elems) <= _FULL_VALIDATION_LIMIT else elems[:60]
    for x in rows:
        for y in elems:
            if mat_mul(x, y) not in element_set:
                raise AssertionError(f"Cartan enumeration not closed at {x} * {y}")
    return FiniteMatrixGroup(n, tuple(elems), element_set)


def normalizer_group(params: CartanParams, n: ModulusLike, eps: int = 1) -> FiniteMatrixGroup:
    """The normalizer: Cartan subgroup together with the reflection coset.

    Equals the closure of the Cartan elements plus c_eps. The reflection
    squares to the identity and conjugation by it sends c(a, b) back into
    the Cartan subgroup; both facts are asserted here on every element,
    which makes the two-coset union provably closed.

    For eps = 1 the conjugate is c(a + b*phi, -b) unconditionally. For
    eps = -1 the conjugate picks up correction terms 4*phi*b and
    2*phi^2*b, so the construction is only well posed when those vanish
    mod n; other inputs are rejected. (When phi = 0 the two signs differ
    by -Id and give the same group.)
    """
    n = modulus_value(n)
    if eps == -1 and ((4 * params.phi) % n != 0 or (2 * params.phi**2) % n != 0):
        raise ValueError(
            f"c_-1 does not normalize the Cartan subgroup at level {n} with phi={params.phi}"
        )
    cartan = cartan_subgroup(params, n)
    refl = c_eps(params, eps, n)
    if mat_mul(refl, refl) != Mat2.identity(n):
        raise AssertionError(f"reflection {refl} does not square to the identity")
    elements = set(cartan.elements)
    for m in cartan.elements:
        if mat_mul(mat_mul(refl, m), refl) not in cartan.elements:
            raise AssertionError(f"reflection does not normalize the Cartan subgroup at {m}")
        elements.add(mat_mul(refl, m))
    generators = (refl,) + cartan.generators
    return FiniteMatrixGroup(n, generators, frozenset(elements))
