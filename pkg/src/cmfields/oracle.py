"""Finite-field sampling cross-checks for the classifier, at N in {2, 3}.

If the N-division field of a curve over Q is the N-th cyclotomic field,
Frobenius behavior mod p is forced by a congruence on p alone:

  N = 3: E(F_p) has full 3-torsion exactly when p = 1 mod 3 (one direction
         is the Weil pairing, the other is Frobenius acting through
         Gal(Q(zeta_3)/Q)).
  N = 2: the 2-division cubic splits completely mod every good prime.

Sampling reductions mod p <= p_max therefore refutes false cyclotomicity
predictions with a concrete witness prime, and supports true ones. For
curves predicted to have a quadratic 2-division field there is a sharper
per-prime law: the cubic has a rational root, so its splitting pattern is
"1+1+1" or "1+2" according to whether the quadratic cofactor's
discriminant is a square mod p, and the pattern "3" never occurs. That
law is checked at every sampled prime.

Everything here counts points by direct enumeration over F_p and tests
squares by Euler's criterion; p_max stays desk-scale so this is plenty.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

import numpy as np
from sympy import integer_nthroot, isprime, primerange

from .classifier import J1728, JZero, classify, is_perfect_cube

PATTERN_SPLIT = "1+1+1"
PATTERN_PARTIAL = "1+2"
PATTERN_INERT = "3"

OracleCurve = Union[JZero, J1728]


def _weierstrass_ab(curve: OracleCurve) -> tuple[int, int]:
    if isinstance(curve, JZero):
        return 0, curve.d
    if isinstance(curve, J1728):
        return curve.A, 0
    raise TypeError(f"oracle needs a JZero or J1728 curve over Q, got {curve!r}")


def _discriminant(a: int, b: int) -> int:
    return 4 * a**3 + 27 * b**2


@dataclass(frozen=True)
class ReducedCurve:
    """y^2 = x^3 + a*x + b over F_p, with good reduction required."""

    a: int
    b: int
    p: int

    def __post_init__(self) -> None:
        if self.p <= 3 or not isprime(self.p):
            raise ValueError(f"need a prime p > 3, got {self.p}")
        if _discriminant(self.a, self.b) % self.p == 0:
            raise ValueError(f"bad reduction at {self.p}")
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)


@dataclass(frozen=True)
class TorsionProfile:
    p: int
    full_two_torsion: bool
    full_three_torsion: bool
    cubic_factor_pattern: str


@lru_cache(maxsize=2048)
def _power_tables(p: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(x, x^2, x^3, x^4) mod p as int64 arrays, cached per prime."""
    x = np.arange(p, dtype=np.int64)
    x2 = (x * x) % p
    x3 = (x2 * x) % p
    x4 = (x2 * x2) % p
    return x, x2, x3, x4


def _cubic_root_count(a: int, b: int, p: int) -> int:
    x, _, x3, _ = _power_tables(p)
    values = (x3 + (a % p) * x + b) % p
    return int(np.count_nonzero(values == 0))


def _is_square_mod(v: int, p: int) -> bool:
    """Euler's criterion; 0 counts as a square."""
    v %= p
    if v == 0:
        return True
    return pow(v, (p - 1) // 2, p) == 1


def _three_torsion_count(a: int, b: int, p: int) -> int:
    """Number of F_p-points of order dividing 3, including the origin."""
    x, x2, x3, x4 = _power_tables(p)
    a %= p
    b %= p
    psi3 = (3 * x4 + 6 * a * x2 + 12 * b * x - a * a) % p
    count = 1
    for x0 in np.flatnonzero(psi3 == 0):
        y2 = (int(x3[x0]) + a * int(x0) + b) % p
        if y2 == 0:
            count += 1
        elif _is_square_mod(y2, p):
            count += 2
    return count


def reduce_and_profile(curve: OracleCurve, p: int) -> TorsionProfile:
    """Reduce mod a good prime p > 3 and read off the torsion behavior.

    >>> reduce_and_profile(J1728(-1), 5).full_two_torsion
    True
    >>> reduce_and_profile(JZero(16), 5).full_three_torsion
    False
    """
    a, b = _weierstrass_ab(curve)
    reduced = ReducedCurve(a, b, p)
    roots = _cubic_root_count(reduced.a, reduced.b, p)
    if roots == 3:
        pattern = PATTERN_SPLIT
    elif roots == 1:
        pattern = PATTERN_PARTIAL
    else:
        pattern = PATTERN_INERT
    three_count = _three_torsion_count(reduced.a, reduced.b, p)
    if three_count not in (1, 3, 9):
        raise AssertionError(f"3-torsion count {three_count} at p={p} is impossible")
    full_three = three_count == 9
    if full_three and p % 3 != 1:
        raise AssertionError(f"full 3-torsion at p={p} = {p % 3} mod 3 contradicts the Weil pairing")
    return TorsionProfile(
        p=p,
        full_two_torsion=(pattern == PATTERN_SPLIT),
        full_three_torsion=full_three,
        cubic_factor_pattern=pattern,
    )


@dataclass(frozen=True)
class ConsistencyVerdict:
    """Outcome of sampling the cyclotomic hypothesis at one level.

    consistent means no sampled prime contradicted the hypothesis; it is
    evidence, not proof. witness is the first contradicting prime when
    refuted. law_witness is the first prime violating the rational-root
    splitting law for predicted-quadratic curves; it should never be set.
    """

    consistent: bool
    witness: Optional[int] = None
    law_witness: Optional[int] = None
    primes_checked: int = 0
    primes_skipped: int = 0

    def __post_init__(self) -> None:
        if self.consistent == (self.witness is not None):
            raise AssertionError("consistent verdicts carry no witness, refuted ones must")


def _quadratic_cofactor_disc(curve: OracleCurve) -> Optional[int]:
    """Discriminant of the cubic's quadratic cofactor, when a rational root exists.

    x^3 + A*x = x*(x^2 + A) has cofactor discriminant -4A. For d = e^3,
    x^3 + d = (x + e)*(x^2 - e*x + e^2) has cofactor discriminant -3e^2.
    """
    if isinstance(curve, J1728):
        return -4 * curve.A
    if is_perfect_cube(curve.d):
        root, exact = integer_nthroot(abs(curve.d), 3)
        e = root if curve.d > 0 else -root
        assert exact
        return -3 * e * e
    return None


def cyclotomic_consistency_test(
    curve: OracleCurve, ell: int, p_max: int = 500
) -> ConsistencyVerdict:
    """Sample good primes up to p_max against the cyclotomic hypothesis.

    >>> cyclotomic_consistency_test(JZero(16), 3).consistent
    True
    >>> cyclotomic_consistency_test(JZero(2), 3).consistent
    False
    """
    if ell not in (2, 3):
        raise ValueError(f"the sampling oracle covers levels 2 and 3, got {ell}")
    a, b = _weierstrass_ab(curve)
    disc = _discriminant(a, b)
    predicted = classify(curve, 2).structure if ell == 2 else None
    check_law = ell == 2 and predicted == [2]
    law_disc = _quadratic_cofactor_disc(curve) if check_law else None

    witness: Optional[int] = None
    law_witness: Optional[int] = None
    checked = 0
    skipped = 0
    for p in primerange(5, p_max + 1):
        if disc % p == 0:
            skipped += 1
            continue
        checked += 1
        if ell == 3:
            full_three = _three_torsion_count(a % p, b % p, p) == 9
            if full_three != (p % 3 == 1):
                witness = p
                break
        else:
            roots = _cubic_root_count(a % p, b % p, p)
            if witness is None and roots != 3:
                witness = p
                if not check_law:
                    break
            if check_law and law_witness is None:
                expected_roots = 3 if _is_square_mod(law_disc % p, p) else 1
                if roots != expected_roots:
                    law_witness = p
    return ConsistencyVerdict(
        consistent=witness is None,
        witness=witness,
        law_witness=law_witness,
        primes_checked=checked,
        primes_skipped=skipped,
    )


@dataclass(frozen=True)
class SplittingStats:
    """Empirical factorization-pattern counts for x^3 + d over F_p, p <= p_max."""

    d: int
    p_max: int
    counts: dict
    primes_counted: int
    primes_skipped: int

    def frequency(self, pattern: str) -> float:
        if self.primes_counted == 0:
            return 0.0
        return self.counts.get(pattern, 0) / self.primes_counted


def splitting_statistics(d: int, p_max: int) -> SplittingStats:
    """Tally cubic splitting patterns of x^3 + d over good primes up to p_max.

    A rational root forces pattern "3" to never occur; a Galois group S3
    puts pattern "1+1+1" near density 1/6 and "3" near 1/3.

    >>> splitting_statistics(1, 1000).counts[PATTERN_INERT]
    0
    """
    if d == 0:
        raise ValueError("d = 0 gives a singular curve")
    counts = {PATTERN_SPLIT: 0, PATTERN_PARTIAL: 0, PATTERN_INERT: 0}
    checked = 0
    skipped = 0
    disc = _discriminant(0, d)
    for p in primerange(5, p_max + 1):
        if disc % p == 0:
            skipped += 1
            continue
        checked += 1
        roots = _cubic_root_count(0, d % p, p)
        if roots == 3:
            counts[PATTERN_SPLIT] += 1
        elif roots == 1:
            counts[PATTERN_PARTIAL] += 1
        else:
            counts[PATTERN_INERT] += 1
    return SplittingStats(
        d=d, p_max=p_max, counts=counts, primes_counted=checked, primes_skipped=skipped
    )
