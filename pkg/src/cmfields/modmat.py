"""2x2 matrix arithmetic and finite group enumeration over Z/NZ.

Everything downstream (Cartan subgroups, their normalizers, the named
Galois images) reduces to a few operations on 2x2 matrices with entries
mod N: multiply, determinant, inverse, closure of a generating set,
abelian invariants. Groups are stored as explicit element sets, which is
fine at the sizes that occur here (tens to a few thousand elements).

Moduli are capped at 2**16. N = 1 is allowed as the degenerate zero ring
so that projections to level 1 have somewhere to land.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Union

MAX_MODULUS = 1 << 16

#: Default element cap for closure enumeration.
CLOSURE_CAP = 10_000_000


class ModulusMismatchError(ValueError):
    """Raised when combining matrices defined over different moduli."""


class NonInvertibleError(ValueError):
    """Raised when a matrix with non-unit determinant is inverted."""


class NonInvertibleGeneratorError(NonInvertibleError):
    """Raised by group_closure when a generator is not invertible."""


class GroupTooLargeError(RuntimeError):
    """Raised when a closure enumeration exceeds its element cap."""


@dataclass(frozen=True)
class Modulus:
    """A validated level N, with 1 <= N <= 2**16.

    >>> Modulus(12).n
    12
    >>> Modulus(0)
    Traceback (most recent call last):
        ...
    ValueError: modulus must be at least 1, got 0
    """

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise TypeError(f"modulus must be an int, got {self.n!r}")
        if self.n < 1:
            raise ValueError(f"modulus must be at least 1, got {self.n}")
        if self.n > MAX_MODULUS:
            raise ValueError(f"modulus must be at most {MAX_MODULUS}, got {self.n}")

    def __int__(self) -> int:
        return self.n


ModulusLike = Union[int, Modulus]


def modulus_value(m: ModulusLike) -> int:
    """Coerce an int or Modulus to a validated int level."""
    if isinstance(m, Modulus):
        return m.n
    return Modulus(m).n


@dataclass(frozen=True)
class Mat2:
    """A 2x2 matrix [[a, b], [c, d]] over Z/nZ, entries stored reduced.

    >>> Mat2(5, -1, 0, 2, 3)
    Mat2(a=2, b=2, c=0, d=2, n=3)
    """

    a: int
    b: int
    c: int
    d: int
    n: int

    def __post_init__(self) -> None:
        n = modulus_value(self.n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", self.a % n)
        object.__setattr__(self, "b", self.b % n)
        object.__setattr__(self, "c", self.c % n)
        object.__setattr__(self, "d", self.d % n)

    @classmethod
    def identity(cls, n: ModulusLike) -> "Mat2":
        return cls(1, 0, 0, 1, modulus_value(n))

    def encode(self) -> tuple[int, int, int, int]:
        """Canonical row-major encoding, used for sorting and frozen values."""
        return (self.a, self.b, self.c, self.d)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]] mod {self.n}"


def scalar_matrix(s: int, n: ModulusLike) -> Mat2:
    """The scalar matrix s*Id over Z/nZ."""
    n = modulus_value(n)
    return Mat2(s, 0, 0, s, n)


def _check_same_modulus(x: Mat2, y: Mat2) -> None:
    if x.n != y.n:
        raise ModulusMismatchError(f"mixed moduli {x.n} and {y.n}")


def mat_mul(x: Mat2, y: Mat2) -> Mat2:
    """Matrix product over the common modulus.

    >>> m = mat_mul(Mat2(0, 1, 1, 0, 5), Mat2(2, 0, 0, 3, 5))
    >>> m.encode()
    (0, 3, 2, 0)
    """
    _check_same_modulus(x, y)
    n = x.n
    return Mat2(
        x.a * y.a + x.b * y.c,
        x.a * y.b + x.b * y.d,
        x.c * y.a + x.d * y.c,
        x.c * y.b + x.d * y.d,
        n,
    )


def mat_det(x: Mat2) -> int:
    return (x.a * x.d - x.b * x.c) % x.n


def is_unit(v: int, n: ModulusLike) -> bool:
    """Whether v is a unit mod n (everything is a unit in the zero ring)."""
    n = modulus_value(n)
    if n == 1:
        return True
    return gcd(v % n, n) == 1


def mat_inv(x: Mat2) -> Mat2:
    """Inverse via the adjugate; requires a unit determinant."""
    n = x.n
    det = mat_det(x)
    if not is_unit(det, n):
        raise NonInvertibleError(f"determinant {det} is not a unit mod {n}")
    if n == 1:
        return x
    dinv = pow(det, -1, n)
    return Mat2(dinv * x.d, -dinv * x.b, -dinv * x.c, dinv * x.a, n)


def mat_pow(x: Mat2, k: int) -> Mat2:
    """k-th power by binary exponentiation; negative k inverts first."""
    if k < 0:
        return mat_pow(mat_inv(x), -k)
    result = Mat2.identity(x.n)
    base = x
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def commutes(x: Mat2, y: Mat2) -> bool:
    return mat_mul(x, y) == mat_mul(y, x)


def element_order(x: Mat2) -> int:
    """Multiplicative order of an invertible matrix."""
    if not is_unit(mat_det(x), x.n):
        raise NonInvertibleError(f"element of non-unit determinant has no order: {x}")
    ident = Mat2.identity(x.n)
    order = 1
    y = x
    while y != ident:
        y = mat_mul(y, x)
        order += 1
    return order


@dataclass(frozen=True)
class FiniteMatrixGroup:
    """A finite subgroup of GL(2, Z/nZ) stored as an explicit element set."""

    modulus: int
    generators: tuple[Mat2, ...]
    elements: frozenset[Mat2]

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list[Mat2]:
        return sorted(self.elements, key=Mat2.encode)

    def __contains__(self, m: Mat2) -> bool:
        return m in self.elements


def group_closure(
    generators: Iterable[Mat2],
    cap: int = CLOSURE_CAP,
    modulus: ModulusLike | None = None,
) -> FiniteMatrixGroup:
    """Enumerate the subgroup generated by `generators`.

    Breadth-first over right multiplication, starting from the identity.
    Since generators are required to be invertible and the ambient group
    is finite, the multiplicative closure is already a group.

    An empty generator list yields the trivial group, but then `modulus`
    must be given explicitly. Exceeding `cap` raises GroupTooLargeError.
    """
    gens = list(generators)
    if not gens:
        if modulus is None:
            raise ValueError("group_closure with no generators needs an explicit modulus")
        n = modulus_value(modulus)
        return FiniteMatrixGroup(n, (), frozenset({Mat2.identity(n)}))
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ModulusMismatchError(f"generators mix moduli {n} and {g.n}")
        if not is_unit(mat_det(g), n):
            raise NonInvertibleGeneratorError(f"generator is not invertible: {g}")
    ident = Mat2.identity(n)
    elements: set[Mat2] = {ident}
    frontier = [ident]
    while frontier:
        next_frontier = []
        for m in frontier:
            for g in gens:
                p = mat_mul(m, g)
                if p not in elements:
                    if len(elements) >= cap:
                        raise GroupTooLargeError(f"closure exceeded cap of {cap} elements")
                    elements.add(p)
                    next_frontier.append(p)
        frontier = next_frontier
    return FiniteMatrixGroup(n, tuple(gens), frozenset(elements))


def is_abelian(group: FiniteMatrixGroup) -> bool:
    """Whether the group is abelian, tested on generator pairs.

    A group is abelian iff its generators pairwise commute. Groups built
    by direct enumeration carry their full element set as generators, so
    the test stays correct for them too (just quadratic in the order).
    """
    gens = group.generators if group.generators else tuple(group.elements)
    for i, x in enumerate(gens):
        for y in gens[i + 1 :]:
            if not commutes(x, y):
                return False
    return True


#: Invariant factors of a finite abelian group, ascending divisibility.
AbelianType = list[int]


def abelian_invariants(group: FiniteMatrixGroup) -> list[int]:
    """Invariant factors [d1, ..., dk], d1 | d2 | ... | dk, of an abelian group.

    Works by repeatedly splitting off a cyclic factor of maximal order:
    an element x of maximal order in a finite abelian G spans a direct
    summand, so G is isomorphic to <x> times G/<x> and we recurse on the
    quotient. Intended for the small groups that occur here.

    >>> g = group_closure([Mat2(0, 1, 1, 0, 8), Mat2(3, 0, 0, 3, 8)])
    >>> abelian_invariants(g)
    [2, 2]
    """
    if not is_abelian(group):
        raise ValueError("abelian_invariants requires an abelian group")
    all_elems = group.sorted_elements()
    ident = Mat2.identity(group.modulus)
    # reduce_to maps every original element to the representative of its
    # class in the current quotient; products of representatives land back
    # in the original group, so one dict suffices for the whole chain.
    reduce_to = {m: m for m in all_elems}
    current = list(all_elems)
    factors: list[int] = []

    def qmul(x: Mat2, y: Mat2) -> Mat2:
        return reduce_to[mat_mul(x, y)]

    def qorder(m: Mat2, e: Mat2) -> int:
        o = 1
        y = m
        while y != e:
            y = qmul(y, m)
            o += 1
        return o

    while len(current) > 1:
        e = reduce_to[ident]
        best = e
        best_order = 1
        for m in current:
            o = qorder(m, e)
            if o > best_order:
                best, best_order = m, o
        factors.append(best_order)
        cyclic = []
        y = e
        for _ in range(best_order):
            cyclic.append(y)
            y = qmul(y, best)
        new_rep: dict[Mat2, Mat2] = {}
        for r in current:
            if r in new_rep:
                continue
            coset = sorted((qmul(r, c) for c in cyclic), key=Mat2.encode)
            for m in coset:
                new_rep[m] = coset[0]
        reduce_to = {m: new_rep[rep] for m, rep in reduce_to.items()}
        current = sorted(set(new_rep.values()), key=Mat2.encode)

    total = 1
    for d in factors:
        total *= d
    if total != group.order:
        raise AssertionError(f"invariant factors {factors} do not multiply to {group.order}")
    return factors[::-1]


def project_group(group: FiniteMatrixGroup, d: ModulusLike) -> FiniteMatrixGroup:
    """Entrywise reduction mod a divisor d of the modulus.

    The image of a group under the reduction homomorphism is a group, so
    no re-closure is needed. d = 1 gives the trivial group over the zero
    ring.
    """
    d = modulus_value(d)
    if group.modulus % d != 0:
        raise ValueError(f"{d} does not divide the modulus {group.modulus}")
    elements = frozenset(Mat2(m.a, m.b, m.c, m.d, d) for m in group.elements)
    gens = tuple(dict.fromkeys(Mat2(g.a, g.b, g.c, g.d, d) for g in group.generators))
    return FiniteMatrixGroup(d, gens, elements)


def is_isomorphic_s3(group: FiniteMatrixGroup) -> bool:
    """S3 is the unique non-abelian group of order 6."""
    return group.order == 6 and not is_abelian(group)
