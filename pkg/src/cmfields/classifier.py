"""Decide abelianness, structure, and cyclotomicity of division fields.

For a CM elliptic curve over its minimal field of definition, the division
field at level n has abelian Galois group only for n in {1, 2, 3, 4}, and
the possible structures are pinned down by the j-invariant and a single
integer invariant of the model:

  n = 2: j = 1728 (y^2 = x^3 + A*x) is always abelian, trivial exactly when
         -A is a perfect square; j = 0 (y^2 = x^3 + d) is abelian exactly
         when d is a perfect cube; any other CM j-invariant is abelian
         exactly when disc*f^2 = 0 mod 4 or (disc = 1 mod 8 and f odd).
         Every non-abelian case is S3, every abelian nontrivial case Z/2.
  n = 3: abelian only for j = 0 with -4d a perfect cube; the group is Z/2
         when d or -3d is a perfect square, (Z/2)^2 otherwise.
  n = 4: abelian only for j = 1728; with s the fourth-power-free part of A,
         the group is (Z/2)^2 for s in {1, -1, 4, -4}, (Z/2)^3 for other
         s = +-t^2, D4 for s = +-2t^2, and D4 x Z/2 otherwise.

The division field is cyclotomic exactly when n = 1, or n = 2 with j = 1728
and -A a perfect square, or n = 3 with j = 0, d or -3d a perfect square,
and -4d a perfect cube. It never happens at n = 4: the abelian groups
there have order at least 4, but the 4th cyclotomic extension is at most
quadratic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from sympy import factorint, integer_nthroot

from .cartan import CmOrder

NON_ABELIAN_S3 = "S3"
NON_ABELIAN_D4 = "D4"
NON_ABELIAN_D4XZ2 = "D4 x Z/2"
NON_ABELIAN_UNSPECIFIED = "non-abelian, unspecified"


@dataclass(frozen=True)
class JZero:
    """y^2 = x^3 + d, the j = 0 family."""

    d: int

    def __post_init__(self) -> None:
        if self.d == 0:
            raise ValueError("d = 0 gives a singular curve")


@dataclass(frozen=True)
class J1728:
    """y^2 = x^3 + A*x, the j = 1728 family."""

    A: int

    def __post_init__(self) -> None:
        if self.A == 0:
            raise ValueError("A = 0 gives a singular curve")


@dataclass(frozen=True)
class GeneralCM:
    """A CM curve with j not 0 or 1728, known by its order."""

    order: CmOrder

    def __post_init__(self) -> None:
        if (self.order.delta_k, self.order.conductor) in ((-3, 1), (-4, 1)):
            raise ValueError(
                "the maximal orders of Q(sqrt(-3)) and Q(i) have j = 0 and 1728; "
                "use JZero or J1728"
            )


CurveInput = Union[JZero, J1728, GeneralCM]


@dataclass(frozen=True)
class ClassificationResult:
    n: int
    abelian: bool
    structure: Union[list, str]
    cyclotomic: bool

    def __post_init__(self) -> None:
        if self.cyclotomic and not self.abelian:
            raise AssertionError("cyclotomic implies abelian")
        if self.abelian and self.n not in (1, 2, 3, 4):
            raise AssertionError(f"abelian image at n = {self.n} should be impossible")

    def structure_text(self) -> str:
        if isinstance(self.structure, str):
            return self.structure
        if not self.structure:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.structure)


def is_perfect_square(v: int) -> bool:
    """Whether v is a square of an integer; 0 counts, negatives do not.

    >>> [is_perfect_square(v) for v in (0, 16, -16, 2)]
    [True, True, False, False]
    """
    if v < 0:
        return False
    return integer_nthroot(v, 2)[1]


def is_perfect_cube(v: int) -> bool:
    """Whether v is a cube of an integer; works for negatives.

    >>> [is_perfect_cube(v) for v in (-64, 16, 27, 0)]
    [True, False, True, True]
    """
    if v < 0:
        return integer_nthroot(-v, 3)[1]
    return integer_nthroot(v, 3)[1]


def fourth_power_free(s: int) -> int:
    """Strip every fourth-power prime factor from s (sign preserved).

    >>> fourth_power_free(-32), fourth_power_free(48), fourth_power_free(9)
    (-2, 3, 9)
    """
    if s == 0:
        raise ValueError("0 has no fourth-power-free part")
    out = -1 if s < 0 else 1
    for prime, exp in factorint(abs(s)).items():
        out *= prime ** (exp % 4)
    return out


def squarefree_part(t: int) -> int:
    """Strip every square prime factor from t (sign preserved).

    >>> squarefree_part(-12), squarefree_part(18)
    (-3, 2)
    """
    if t == 0:
        raise ValueError("0 has no squarefree part")
    out = -1 if t < 0 else 1
    for prime, exp in factorint(abs(t)).items():
        out *= prime ** (exp % 2)
    return out


def is_cyclotomic(curve: CurveInput, n: int) -> bool:
    """Whether the n-division field equals the n-th cyclotomic extension."""
    if n < 1:
        raise ValueError(f"level must be positive, got {n}")
    if n == 1:
        return True
    if n == 2:
        return isinstance(curve, J1728) and is_perfect_square(-curve.A)
    if n == 3:
        return (
            isinstance(curve, JZero)
            and (is_perfect_square(curve.d) or is_perfect_square(-3 * curve.d))
            and is_perfect_cube(-4 * curve.d)
        )
    return False


def _classify_n2(curve: CurveInput) -> tuple[bool, Union[list, str]]:
    if isinstance(curve, J1728):
        if is_perfect_square(-curve.A):
            return True, []
        return True, [2]
    if isinstance(curve, JZero):
        if is_perfect_cube(curve.d):
            return True, [2]
        return False, NON_ABELIAN_S3
    order = curve.order
    if order.disc_f2 % 4 == 0 or (order.delta_k % 8 == 1 and order.conductor % 2 == 1):
        return True, [2]
    return False, NON_ABELIAN_S3


def _classify_n3(curve: CurveInput) -> tuple[bool, Union[list, str]]:
    if isinstance(curve, JZero) and is_perfect_cube(-4 * curve.d):
        if is_perfect_square(curve.d) or is_perfect_square(-3 * curve.d):
            return True, [2]
        return True, [2, 2]
    return False, NON_ABELIAN_UNSPECIFIED


def _classify_n4(curve: CurveInput) -> tuple[bool, Union[list, str]]:
    if not isinstance(curve, J1728):
        return False, NON_ABELIAN_UNSPECIFIED
    s = fourth_power_free(curve.A)
    if is_perfect_square(abs(s)):
        if s in (1, -1, 4, -4):
            return True, [2, 2]
        return True, [2, 2, 2]
    if s % 2 == 0 and is_perfect_square(abs(s) // 2):
        return False, NON_ABELIAN_D4
    return False, NON_ABELIAN_D4XZ2


def classify(curve: CurveInput, n: int) -> ClassificationResult:
    """Classify the n-division field of a CM curve.

    >>> classify(JZero(16), 3)
    ClassificationResult(n=3, abelian=True, structure=[2], cyclotomic=True)
    >>> classify(JZero(1), 3).structure
    'non-abelian, unspecified'
    """
    if n < 1:
        raise ValueError(f"level must be positive, got {n}")
    if n == 1:
        return ClassificationResult(1, True, [], True)
    if n == 2:
        abelian, structure = _classify_n2(curve)
    elif n == 3:
        abelian, structure = _classify_n3(curve)
    elif n == 4:
        abelian, structure = _classify_n4(curve)
    else:
        abelian, structure = False, NON_ABELIAN_UNSPECIFIED
    return ClassificationResult(n, abelian, structure, is_cyclotomic(curve, n))
