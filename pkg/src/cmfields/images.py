"""Builders for the named candidate Galois-image groups, at finite level.

Each named group comes from one of the prime-power image analyses:

  P42_FULL / P42_CUBES / P42_SPLIT   level p (odd prime, p > 3), j = 0
  P43_H1 / H1P / H2 / H3 / H2P / H3P level 3^k, j = 0, delta' = -3/4
  P45_H1 / P45_H2                    level 2^k, j != 0, 1728, external delta
  P46_G1 / G2A / G2B / G4A..G4D      level 2^k, j = 1728, delta = -1
  P48_INDEX3 / P48_FULL              level 2^k, j = 0, delta = -1, phi = 1

Groups defined by membership conditions (P43_H1, P42_SPLIT, ...) are built
by direct enumeration and validated closed; groups defined by generators
are built with group_closure. Where a reflection c_eps is adjoined, both
signs are supported and the verification table exercises both.

The reflection sets: Gamma' is the four matrices diag(1,-1), diag(-1,1),
[[0,1],[1,0]], [[0,-1],[-1,0]] (only the antidiagonal pair applies in the
j = 0 case), and Gamma'' is the sixteen listed mod-8 preimages, four above
each element of Gamma'.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from sympy import isprime

from .cartan import (
    CartanParams,
    c_eps,
    c_matrix,
    cartan_elements,
    fraction_mod,
)
from .modmat import (
    AbelianType,
    FiniteMatrixGroup,
    Mat2,
    abelian_invariants,
    group_closure,
    is_abelian,
    is_unit,
    mat_mul,
    scalar_matrix,
)

Gamma = tuple[int, int, int, int]

_GAMMA_DIAG_PLUS: Gamma = (1, 0, 0, -1)
_GAMMA_DIAG_MINUS: Gamma = (-1, 0, 0, 1)
_GAMMA_ANTI_PLUS: Gamma = (0, 1, 1, 0)
_GAMMA_ANTI_MINUS: Gamma = (0, -1, -1, 0)

# The sixteen mod-8 preimages, keyed by the reflection they reduce to mod 4.
_GAMMA_LIFTS: dict[Gamma, tuple[Gamma, ...]] = {
    _GAMMA_DIAG_PLUS: ((5, 4, 4, 3), (1, 4, 4, 7), (5, 0, 0, 3), (1, 0, 0, 7)),
    _GAMMA_DIAG_MINUS: ((7, 4, 4, 1), (7, 0, 0, 1), (3, 0, 0, 5), (3, 4, 4, 5)),
    _GAMMA_ANTI_PLUS: ((4, 1, 1, 4), (0, 1, 1, 0), (4, 5, 5, 4), (0, 5, 5, 0)),
    _GAMMA_ANTI_MINUS: ((4, 7, 7, 4), (0, 7, 7, 0), (0, 3, 3, 0), (4, 3, 3, 4)),
}

P42_LABELS = ("P42_FULL", "P42_CUBES", "P42_SPLIT")
P43_LABELS = ("P43_H1", "P43_H1P", "P43_H2", "P43_H3", "P43_H2P", "P43_H3P")
P45_LABELS = ("P45_H1", "P45_H2")
P46_LABELS = ("P46_G1", "P46_G2A", "P46_G2B", "P46_G4A", "P46_G4B", "P46_G4C", "P46_G4D")
P48_LABELS = ("P48_INDEX3", "P48_FULL")
ALL_LABELS = P42_LABELS + P43_LABELS + P45_LABELS + P46_LABELS + P48_LABELS

_MAX_LEVEL_3ADIC = 81
_MAX_LEVEL_2ADIC = 64

#: delta' = -3/4, phi = 0: the odd-level Cartan parameters for j = 0.
DELTA_PRIME_PARAMS = CartanParams(-3, 4, 0)

#: delta = -1, phi = 0: the Cartan parameters for j = 1728.
J1728_PARAMS = CartanParams(-1, 1, 0)

#: delta = -1, phi = 1: the Cartan parameters for j = 0 at even levels.
JZERO_PARAMS = CartanParams(-1, 1, 1)


@dataclass(frozen=True)
class GammaSet:
    """The reflection set Gamma' and its sixteen mod-8 lifts Gamma''."""

    gamma_prime: tuple[Gamma, ...]
    gamma_double_prime: tuple[Gamma, ...]

    def antidiagonal_pair(self) -> tuple[Gamma, Gamma]:
        """The two-element variant of Gamma' used in the j = 0 case."""
        return (_GAMMA_ANTI_PLUS, _GAMMA_ANTI_MINUS)

    def lifts_of(self, gamma_prime: Gamma) -> tuple[Gamma, ...]:
        if gamma_prime not in _GAMMA_LIFTS:
            raise ValueError(f"{gamma_prime} is not a reflection in Gamma'")
        return _GAMMA_LIFTS[gamma_prime]


def gamma_lifts_mod8() -> GammaSet:
    """The four reflections with their sixteen mod-8 preimages, validated.

    >>> gs = gamma_lifts_mod8()
    >>> len(gs.gamma_double_prime)
    16
    >>> (5, 4, 4, 3) in gs.lifts_of((1, 0, 0, -1))
    True
    """
    prime = tuple(_GAMMA_LIFTS)
    double = []
    for gp, lifts in _GAMMA_LIFTS.items():
        target = Mat2(*gp, 4)
        for lift in lifts:
            if Mat2(*lift, 4) != target:
                raise AssertionError(f"lift {lift} does not reduce to {gp} mod 4")
            double.append(lift)
    return GammaSet(gamma_prime=prime, gamma_double_prime=tuple(double))


@dataclass(frozen=True)
class NamedImage:
    """A named image group at a specific level.

    p is the odd prime for the P42 families (defaults to the level).
    eps picks the sign of the adjoined reflection where one applies.
    alpha and delta parametrize the P45 groups. gamma_choice is an entry
    tuple from Gamma' or Gamma'' for the P46/P48 families; the P46 groups
    may also be built bare (gamma_choice=None) to inspect the base group.
    """

    label: str
    level: int
    p: Optional[int] = None
    eps: int = 1
    alpha: Optional[int] = None
    delta: Optional[int] = None
    gamma_choice: Optional[Gamma] = None

    def __post_init__(self) -> None:
        if self.label not in ALL_LABELS:
            raise ValueError(f"unknown image label {self.label!r}")
        if self.eps not in (1, -1):
            raise ValueError(f"eps must be +1 or -1, got {self.eps}")


def _require_prime_power(level: int, base: int, cap: int, label: str) -> None:
    n = level
    while n % base == 0:
        n //= base
    if n != 1 or level < base or level > cap:
        raise ValueError(f"{label} needs a power of {base} up to {cap}, got level {level}")


def _enumerated_group(elements: list[Mat2], n: int) -> FiniteMatrixGroup:
    """Wrap an enumerated element list, validating multiplicative closure."""
    element_set = frozenset(elements)
    ordered = sorted(element_set, key=Mat2.encode)
    rows = ordered if len(ordered) <= 500 else ordered[:60]
    for x in rows:
        for y in ordered:
            if mat_mul(x, y) not in element_set:
                raise AssertionError(f"enumerated set not closed at {x} * {y}")
    return FiniteMatrixGroup(n, tuple(ordered), element_set)


def _build_p42(image: NamedImage) -> FiniteMatrixGroup:
    p = image.p if image.p is not None else image.level
    if not isprime(p) or p <= 3:
        raise ValueError(f"P42 families need an odd prime p > 3, got {p}")
    if image.level != p:
        raise ValueError(f"P42 level must equal p = {p}, got {image.level}")
    params = DELTA_PRIME_PARAMS
    if image.label == "P42_FULL":
        cart = cartan_elements(params, p)
        return group_closure(cart + [c_eps(params, image.eps, p)])
    if image.label == "P42_CUBES":
        cart = cartan_elements(params, p)
        cubes = sorted({mat_mul(mat_mul(g, g), g) for g in cart}, key=Mat2.encode)
        return group_closure(cubes + [c_eps(params, image.eps, p)])
    # P42_SPLIT: diagonal matrices whose entry ratio is a cube, plus the swap
    cubes_mod_p = {pow(x, 3, p) for x in range(1, p)}
    elements = []
    for a in range(1, p):
        for b in range(1, p):
            if a * pow(b, -1, p) % p in cubes_mod_p:
                elements.append(Mat2(a, 0, 0, b, p))
    return group_closure(elements + [Mat2(0, 1, 1, 0, p)])


def _build_p43(image: NamedImage) -> FiniteMatrixGroup:
    _require_prime_power(image.level, 3, _MAX_LEVEL_3ADIC, image.label)
    n = image.level
    params = DELTA_PRIME_PARAMS
    refl = c_eps(params, image.eps, n)
    if image.label in ("P43_H1", "P43_H1P"):
        elements = []
        for a in range(n):
            if not is_unit(a, n):
                continue
            if image.label == "P43_H1P" and a % 3 != 1:
                continue
            for b in range(0, n, 3):
                elements.append(c_matrix(params, a, b, n))
        base = _enumerated_group(elements, n)
        return group_closure(list(base.elements) + [refl])
    if image.label in ("P43_H2", "P43_H2P"):
        scale = 2 if image.label == "P43_H2" else 4
        gens = [scalar_matrix(scale, n), c_matrix(params, 1, 1, n)]
    else:
        scale = 2 if image.label == "P43_H3" else 4
        a = fraction_mod(-5, 4, n)
        b = fraction_mod(1, 2, n)
        gens = [scalar_matrix(scale, n), c_matrix(params, a, b, n)]
    return group_closure(gens + [refl])


def _build_p45(image: NamedImage) -> FiniteMatrixGroup:
    _require_prime_power(image.level, 2, _MAX_LEVEL_2ADIC, image.label)
    if image.delta is None:
        raise ValueError("P45 groups need an explicit delta (= disc*f^2/4)")
    if image.alpha not in (3, 5):
        raise ValueError(f"P45 groups need alpha in (3, 5), got {image.alpha}")
    n = image.level
    sign = 1 if image.label == "P45_H1" else -1
    gens = [
        Mat2(image.eps, 0, 0, -image.eps, n),
        scalar_matrix(image.alpha, n),
        Mat2(sign * 1, sign * 1, sign * image.delta, sign * 1, n),
    ]
    return group_closure(gens)


_P46_BASE_GENERATORS = {
    "P46_G2A": ((-1, 0, 0, -1), (3, 0, 0, 3), (1, 2, -2, 1)),
    "P46_G2B": ((-1, 0, 0, -1), (3, 0, 0, 3), (2, 1, -1, 2)),
    "P46_G4A": ((5, 0, 0, 5), (1, 2, -2, 1)),
    "P46_G4B": ((5, 0, 0, 5), (-1, -2, 2, -1)),
    "P46_G4C": ((-3, 0, 0, -3), (2, -1, 1, 2)),
    "P46_G4D": ((-3, 0, 0, -3), (-2, 1, -1, -2)),
}


def _build_p46(image: NamedImage) -> FiniteMatrixGroup:
    _require_prime_power(image.level, 2, _MAX_LEVEL_2ADIC, image.label)
    n = image.level
    if image.label == "P46_G1":
        gens = cartan_elements(J1728_PARAMS, n)
    else:
        gens = [Mat2(*t, n) for t in _P46_BASE_GENERATORS[image.label]]
    if image.gamma_choice is not None:
        gens = gens + [Mat2(*image.gamma_choice, n)]
    return group_closure(gens)


_P48_THIRD_GENERATOR = {
    "P48_INDEX3": (3, 6, -6, -3),
    "P48_FULL": (2, 1, -1, 1),
}


def _build_p48(image: NamedImage) -> FiniteMatrixGroup:
    _require_prime_power(image.level, 2, _MAX_LEVEL_2ADIC, image.label)
    n = image.level
    if image.gamma_choice not in (_GAMMA_ANTI_PLUS, _GAMMA_ANTI_MINUS):
        raise ValueError(
            "P48 groups need gamma_choice from the antidiagonal pair "
            f"{(_GAMMA_ANTI_PLUS, _GAMMA_ANTI_MINUS)}, got {image.gamma_choice}"
        )
    gens = [
        Mat2(*image.gamma_choice, n),
        scalar_matrix(-1, n),
        Mat2(7, 4, -4, 3, n),
        Mat2(*_P48_THIRD_GENERATOR[image.label], n),
    ]
    return group_closure(gens)


def build_named(image: NamedImage) -> FiniteMatrixGroup:
    """Materialize a named image at its level as a FiniteMatrixGroup.

    >>> g = build_named(NamedImage("P43_H1", 3))
    >>> g.order, is_abelian(g)
    (4, True)
    """
    if image.label in P42_LABELS:
        return _build_p42(image)
    if image.label in P43_LABELS:
        return _build_p43(image)
    if image.label in P45_LABELS:
        return _build_p45(image)
    if image.label in P46_LABELS:
        return _build_p46(image)
    return _build_p48(image)


def enumerate_verdicts(
    image: NamedImage, levels: list[int]
) -> list[tuple[int, bool, Optional[AbelianType]]]:
    """Per-level (level, abelian, invariants) verdicts for a named image.

    >>> img = NamedImage("P48_INDEX3", 2, gamma_choice=(0, 1, 1, 0))
    >>> enumerate_verdicts(img, [2, 4])
    [(2, True, [2]), (4, False, None)]
    """
    out = []
    for level in levels:
        group = build_named(replace(image, level=level))
        if is_abelian(group):
            out.append((level, True, abelian_invariants(group)))
        else:
            out.append((level, False, None))
    return out
