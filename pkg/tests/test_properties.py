"""Property-based checks of the group machinery and the classifier.

The acceptance-level properties (closure idempotence, projection and
closure commuting, determinant multiplicativity, quartic-twist
stability, divisor monotonicity) live here in randomized form; the
deterministic sweeps backing them are in the verifier.
"""

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cmfields.cartan import CartanParams, cartan_subgroup, normalizer_group
from cmfields.classifier import J1728, JZero, classify, fourth_power_free
from cmfields.modmat import (
    Mat2,
    group_closure,
    is_abelian,
    is_unit,
    mat_det,
    mat_mul,
    project_group,
)

# --- Strategies -------------------------------------------------------------------


@st.composite
def unit_matrix(draw, n):
    for _ in range(40):
        entries = [draw(st.integers(0, n - 1)) for _ in range(4)]
        m = Mat2(*entries, n)
        if is_unit(mat_det(m), n):
            return m
    assume(False)


@st.composite
def generator_sets(draw):
    n = draw(st.sampled_from([2, 3, 4, 5, 6, 8]))
    count = draw(st.integers(1, 3))
    return n, [draw(unit_matrix(n)) for _ in range(count)]


@st.composite
def generators_with_divisor(draw):
    n, divisor = draw(st.sampled_from([(4, 2), (6, 2), (6, 3), (8, 2), (8, 4), (9, 3), (12, 6)]))
    count = draw(st.integers(1, 3))
    return n, divisor, [draw(unit_matrix(n)) for _ in range(count)]


# --- Closure properties ---------------------------------------------------------------


@settings(deadline=None, max_examples=60)
@given(generator_sets())
def test_closure_is_idempotent(data):
    n, gens = data
    once = group_closure(gens)
    twice = group_closure(list(once.sorted_elements()))
    assert once.elements == twice.elements


@settings(deadline=None, max_examples=60)
@given(generators_with_divisor())
def test_projection_commutes_with_closure(data):
    n, divisor, gens = data
    projected_after = project_group(group_closure(gens), divisor)
    projected_first = group_closure([Mat2(*g.encode(), divisor) for g in gens])
    assert projected_after.elements == projected_first.elements


@settings(deadline=None, max_examples=60)
@given(generators_with_divisor())
def test_abelian_groups_project_to_abelian_groups(data):
    n, divisor, gens = data
    group = group_closure(gens)
    if is_abelian(group):
        assert is_abelian(project_group(group, divisor))


# --- Determinant multiplicativity ------------------------------------------------------


def _det_multiplicative_exhaustive(n):
    """All pairs of 2x2 matrices over Z/nZ, vectorized in chunks."""
    r = np.arange(n, dtype=np.int64)
    a, b, c, d = np.meshgrid(r, r, r, r, indexing="ij")
    flat = [v.ravel() for v in (a, b, c, d)]
    dets = (flat[0] * flat[3] - flat[1] * flat[2]) % n
    total = n**4
    chunk = max(1, 2**20 // total)
    for start in range(0, total, chunk):
        sl = slice(start, start + chunk)
        x = [v[sl, None] for v in flat]
        y = [v[None, :] for v in flat]
        prod_det = (
            (x[0] * y[0] + x[1] * y[2]) * (x[2] * y[1] + x[3] * y[3])
            - (x[0] * y[1] + x[1] * y[3]) * (x[2] * y[0] + x[3] * y[2])
        ) % n
        expected = (dets[sl, None] * dets[None, :]) % n
        assert (prod_det == expected).all()


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 8])
def test_det_multiplicative_exhaustive(n):
    _det_multiplicative_exhaustive(n)


# --- Classifier properties ----------------------------------------------------------------


@settings(deadline=None, max_examples=80)
@given(
    st.integers(-2000, 2000).filter(lambda v: v != 0),
    st.integers(1, 8),
)
def test_quartic_twist_stability(coeff, t):
    base = classify(J1728(coeff), 4)
    twisted = classify(J1728(coeff * t**4), 4)
    assert twisted.abelian == base.abelian
    assert twisted.structure == base.structure
    assert twisted.cyclotomic == base.cyclotomic
    assert fourth_power_free(coeff * t**4) == fourth_power_free(coeff)


@settings(deadline=None, max_examples=40)
@given(
    st.sampled_from([JZero(16), JZero(2), JZero(-1), J1728(-1), J1728(9), J1728(2)]),
    st.sampled_from([2, 3, 4, 6, 12]),
)
def test_divisor_monotonicity_of_classifier(curve, n):
    """If the n-division field is abelian, so is every m-division field, m | n."""
    if classify(curve, n).abelian:
        for m in range(2, n):
            if n % m == 0:
                assert classify(curve, m).abelian


@settings(deadline=None, max_examples=30)
@given(
    st.integers(0, 11),
    st.integers(0, 11),
    st.sampled_from([(4, 2), (6, 3), (9, 3), (12, 4)]),
)
def test_divisor_monotonicity_of_normalizers(delta, phi, levels):
    """A quotient of an abelian normalizer is abelian, contrapositively."""
    n, m = levels
    params = CartanParams(delta, 1, phi)
    big = normalizer_group(params, n)
    small = normalizer_group(params, m)
    if is_abelian(big):
        assert is_abelian(project_group(big, m))
    if not is_abelian(small):
        assert not is_abelian(big)


@settings(deadline=None, max_examples=30)
@given(st.integers(0, 8), st.integers(0, 8), st.sampled_from([3, 5, 7, 9]))
def test_cartan_subgroups_are_abelian(delta, phi, n):
    assert is_abelian(cartan_subgroup(CartanParams(delta, 1, phi), n))
