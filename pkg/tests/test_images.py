import pytest

from cmfields.cartan import c_matrix, cartan_subgroup
from cmfields.images import (
    ALL_LABELS,
    DELTA_PRIME_PARAMS,
    NamedImage,
    build_named,
    enumerate_verdicts,
    gamma_lifts_mod8,
)
from cmfields.modmat import (
    Mat2,
    abelian_invariants,
    is_abelian,
    is_isomorphic_s3,
    mat_mul,
    mat_pow,
    project_group,
)

# --- Reflection lifts ------------------------------------------------------------


def test_gamma_lifts_reduce_correctly():
    gs = gamma_lifts_mod8()
    assert len(gs.gamma_prime) == 4
    assert len(gs.gamma_double_prime) == 16
    for gp in gs.gamma_prime:
        for lift in gs.lifts_of(gp):
            assert Mat2(*lift, 4) == Mat2(*gp, 4)


def test_gamma_antidiagonal_pair():
    assert gamma_lifts_mod8().antidiagonal_pair() == ((0, 1, 1, 0), (0, -1, -1, 0))


def test_lifts_of_rejects_non_reflection():
    with pytest.raises(ValueError):
        gamma_lifts_mod8().lifts_of((1, 0, 0, 1))


# --- NamedImage validation ---------------------------------------------------------


def test_named_image_rejects_unknown_label():
    with pytest.raises(ValueError):
        NamedImage("P99_X", 3)


def test_named_image_rejects_bad_eps():
    with pytest.raises(ValueError):
        NamedImage("P43_H1", 3, eps=2)


def test_all_labels_cover_families():
    assert len(ALL_LABELS) == 20
    assert len(set(ALL_LABELS)) == 20


# --- Odd prime level (j = 0) --------------------------------------------------------


def test_p42_full_is_normalizer_sized():
    # p = 5: -3/4 = 3 mod 5 is not a square, so |C| = 24 and the normalizer is 48
    group = build_named(NamedImage("P42_FULL", 5))
    assert group.order == 48
    assert not is_abelian(group)


def test_p42_cubes_has_index_three():
    full = build_named(NamedImage("P42_FULL", 5))
    cubes = build_named(NamedImage("P42_CUBES", 5))
    assert full.order == 3 * cubes.order
    assert cubes.elements < full.elements
    assert not is_abelian(cubes)


def test_p42_split_has_index_three():
    full = build_named(NamedImage("P42_SPLIT", 7))
    cartan = cartan_subgroup(DELTA_PRIME_PARAMS, 7)
    assert 3 * full.order == 2 * cartan.order
    assert not is_abelian(full)


def test_p42_cube_law():
    for p in (5, 7, 11, 13):
        cube = mat_pow(c_matrix(DELTA_PRIME_PARAMS, 0, 1, p), 3)
        assert cube == c_matrix(DELTA_PRIME_PARAMS, 0, DELTA_PRIME_PARAMS.delta_mod(p), p)


def test_p42_rejects_bad_prime():
    with pytest.raises(ValueError):
        build_named(NamedImage("P42_FULL", 3))
    with pytest.raises(ValueError):
        build_named(NamedImage("P42_FULL", 9))
    with pytest.raises(ValueError):
        build_named(NamedImage("P42_FULL", 10, p=5))


# --- 3-adic level (j = 0) -------------------------------------------------------------


def test_p43_h1_verdicts():
    img = NamedImage("P43_H1", 3)
    assert enumerate_verdicts(img, [3, 9]) == [(3, True, [2, 2]), (9, False, None)]


def test_p43_h1p_level_three():
    group = build_named(NamedImage("P43_H1P", 3))
    assert is_abelian(group)
    assert abelian_invariants(group) == [2]


def test_p43_generator_families_nonabelian_at_level_three():
    for label in ("P43_H2", "P43_H3", "P43_H2P", "P43_H3P"):
        for eps in (1, -1):
            group = build_named(NamedImage(label, 3, eps=eps))
            assert not is_abelian(group), label


def test_p43_rejects_non_power_of_three():
    with pytest.raises(ValueError):
        build_named(NamedImage("P43_H1", 6))
    with pytest.raises(ValueError):
        build_named(NamedImage("P43_H1", 243))


# --- 2-adic level (j != 0, 1728) -------------------------------------------------------


def test_p45_level_two_is_the_unipotent_pair():
    group = build_named(NamedImage("P45_H1", 2, alpha=3, delta=-4))
    assert {m.encode() for m in group.elements} == {(1, 0, 0, 1), (1, 1, 0, 1)}


def test_p45_level_four_nonabelian_and_reduces():
    group = build_named(NamedImage("P45_H2", 4, eps=-1, alpha=5, delta=-16))
    assert not is_abelian(group)
    reduced = project_group(group, 2)
    assert {m.encode() for m in reduced.elements} == {(1, 0, 0, 1), (1, 1, 0, 1)}


def test_p45_requires_parameters():
    with pytest.raises(ValueError):
        build_named(NamedImage("P45_H1", 4, alpha=3))
    with pytest.raises(ValueError):
        build_named(NamedImage("P45_H1", 4, alpha=7, delta=-4))


# --- 2-adic level (j = 1728) -------------------------------------------------------------


def test_p46_g1_verdicts():
    img = NamedImage("P46_G1", 2, gamma_choice=(1, 0, 0, -1))
    assert enumerate_verdicts(img, [2, 4]) == [(2, True, [2]), (4, False, None)]


def test_p46_g2a_level_four_invariants():
    for gp in gamma_lifts_mod8().gamma_prime:
        group = build_named(NamedImage("P46_G2A", 4, gamma_choice=gp))
        assert abelian_invariants(group) == [2, 2, 2]


def test_p46_g2a_level_eight_lifts_nonabelian():
    gs = gamma_lifts_mod8()
    for lift in gs.lifts_of((0, 1, 1, 0)):
        group = build_named(NamedImage("P46_G2A", 8, gamma_choice=lift))
        assert not is_abelian(group)


def test_p46_base_groups_reduce_to_identity():
    for label in ("P46_G2A", "P46_G4A", "P46_G4B"):
        base = build_named(NamedImage(label, 4))
        assert project_group(base, 2).order == 1


# --- 2-adic level (j = 0) -------------------------------------------------------------


def test_p48_index3_verdicts():
    img = NamedImage("P48_INDEX3", 2, gamma_choice=(0, 1, 1, 0))
    assert enumerate_verdicts(img, [2, 4]) == [(2, True, [2]), (4, False, None)]


def test_p48_full_level_two_is_s3():
    group = build_named(NamedImage("P48_FULL", 2, gamma_choice=(0, -1, -1, 0)))
    assert is_isomorphic_s3(group)


def test_p48_index_three_at_each_level():
    for n in (2, 4, 8):
        full = build_named(NamedImage("P48_FULL", n, gamma_choice=(0, 1, 1, 0)))
        sub = build_named(NamedImage("P48_INDEX3", n, gamma_choice=(0, 1, 1, 0)))
        assert full.order == 3 * sub.order
        assert sub.elements < full.elements


def test_p48_requires_antidiagonal_gamma():
    with pytest.raises(ValueError):
        build_named(NamedImage("P48_FULL", 2, gamma_choice=(1, 0, 0, -1)))
    with pytest.raises(ValueError):
        build_named(NamedImage("P48_FULL", 2))


# --- Closure sanity across builders ---------------------------------------------------


def test_built_groups_are_closed():
    images = [
        NamedImage("P42_CUBES", 5),
        NamedImage("P43_H2", 9),
        NamedImage("P45_H1", 4, alpha=3, delta=-4),
        NamedImage("P46_G4C", 4, gamma_choice=(0, 1, 1, 0)),
        NamedImage("P48_FULL", 4, gamma_choice=(0, 1, 1, 0)),
    ]
    for image in images:
        group = build_named(image)
        elements = group.elements
        for x in list(elements)[:40]:
            for y in elements:
                assert mat_mul(x, y) in elements
