import numpy as np
import pytest

from tiltkit.algebra.complexes import BoundedComplex
from tiltkit.algebra.modules import direct_sum
from tiltkit.algebra.sequences import random_module
from tiltkit.derived import (
    Direction,
    TiltingPair,
    complex_suite,
    derived_hom_dim,
    heart_test,
    homology,
    homotopy_matches,
    ltensor_t,
    random_add_complex,
    rhom_t,
    roundtrip_check,
    theta_check,
    tilting_truncate,
    truncate_above,
    truncate_below,
    vanishing_holds,
)
from tiltkit.utils.testing import a2_algebra, a2_modules, a2_tilting

ALGEBRA = a2_algebra()
MODULES = a2_modules(ALGEBRA)
PAIR = TiltingPair(a2_tilting(ALGEBRA), 1)
INJECTIVES = direct_sum([MODULES["I1"], MODULES["I2"]])[0]


def stalk(name, degree=0):
    return BoundedComplex.stalk(MODULES[name], degree)


def nonzero_degrees(x):
    return [degree for degree, dim in x.homology_dims().items() if dim]


B_MODULES = {
    "hom_p1": homology(rhom_t(PAIR, stalk("P1")).complex, 0),
    "hom_s1": homology(rhom_t(PAIR, stalk("S1")).complex, 0),
    "ext_s2": homology(rhom_t(PAIR, stalk("S2")).complex, 1),
}
"""
The three indecomposable modules over ``End(T)^rop``.
"""


def test_standard_truncations():
    lower, sequences = truncate_below(stalk("S2"), 0)
    assert lower.homology_dim(0) == 1
    assert all(sequence.is_exact() for sequence in sequences)
    assert not truncate_below(stalk("S2", 1), 0)[0].terms
    assert not truncate_above(stalk("S2"), 1).terms
    assert truncate_above(stalk("S2"), 0).homology_dim(0) == 1


def test_derived_hom():
    assert derived_hom_dim(stalk("S1"), stalk("S2"), 0) == 0
    assert derived_hom_dim(stalk("S1"), stalk("S2"), 1) == 1
    assert derived_hom_dim(stalk("P1"), stalk("S2"), 1) == 0
    assert homotopy_matches(stalk("P1"), stalk("S2"), 0)


def test_rhom_of_simples():
    assert rhom_t(PAIR, stalk("S1")).complex.homology_dim(0) == 2
    image = rhom_t(PAIR, stalk("S2")).complex
    assert image.homology_dim(0) == 0
    assert image.homology_dim(1) == 1


def test_ltensor():
    assert ltensor_t(PAIR, BoundedComplex.stalk(PAIR.regular)).complex.homology_dim(0) == 3
    back = ltensor_t(PAIR, rhom_t(PAIR, stalk("S2")).complex).complex
    assert [back.homology_dim(degree) for degree in (-1, 0, 1)] == [0, 1, 0]


@pytest.mark.parametrize(
    ["name", "degrees"],
    [("S1", ([0], [])), ("P1", ([0], [])), ("S2", ([], [0]))],
)
def test_tilting_truncation(name, degrees):
    decomposition = tilting_truncate(PAIR, stalk(name))
    assert decomposition.homology_degrees() == degrees
    assert decomposition.is_exact()
    assert decomposition.euler_matches()
    assert vanishing_holds(PAIR, decomposition)


def test_heart():
    assert heart_test(PAIR, stalk("S1")).realization.dim == 2
    outside = heart_test(PAIR, stalk("S2"))
    assert not outside.verdict
    assert outside.homology == {1: 1}
    shifted = heart_test(PAIR, stalk("S2", -1))
    assert shifted.verdict
    assert shifted.realization.dim == 1


def test_heart_contains_the_tilting_module_and_the_injectives():
    tilting = heart_test(PAIR, BoundedComplex.stalk(PAIR.tilting))
    assert tilting.verdict
    assert tilting.realization.dim == PAIR.ring.dim == 3
    injectives = heart_test(PAIR, BoundedComplex.stalk(INJECTIVES))
    assert injectives.verdict
    assert injectives.homology == {0: 3}
    assert injectives.realization.dim == PAIR.tilting.dim


def test_ext_over_the_endomorphism_ring():
    result = theta_check(PAIR, stalk("S1"), stalk("P1"))
    assert sorted(result) == [0, 1, 2]
    assert all(over_b == over_a for over_b, over_a in result.values())
    with pytest.raises(ValueError):
        theta_check(PAIR, stalk("S2"), stalk("S1"))


def test_ext_from_the_tilting_module():
    tilting = BoundedComplex.stalk(PAIR.tilting)
    assert theta_check(PAIR, tilting, tilting) == {0: (3, 3), 1: (0, 0), 2: (0, 0)}
    assert theta_check(PAIR, tilting, BoundedComplex.stalk(INJECTIVES)) == {0: (3, 3), 1: (0, 0), 2: (0, 0)}


def heart_objects(seed, count):
    """
    ``LΦ`` of random modules over ``End(T)^rop``, which lie in the heart.
    """
    for k in range(count):
        rng = np.random.Generator(np.random.Philox(key=seed).jumped(k))
        yield ltensor_t(PAIR, BoundedComplex.stalk(random_module(PAIR.ring, rng))).complex


def test_ext_on_sampled_heart_pairs():
    objects = list(heart_objects(seed=3, count=20))
    for k, x in enumerate(objects):
        y = objects[(k + 1) % len(objects)]
        result = theta_check(PAIR, x, y)
        assert all(over_b == over_a for over_b, over_a in result.values())


@pytest.mark.parametrize("name", sorted(MODULES))
def test_roundtrip_of_stalks(name):
    certificate = roundtrip_check(PAIR, stalk(name))
    assert certificate.certified
    assert certificate.homology == {0: MODULES[name].dim}


def test_roundtrip_over_the_endomorphism_ring():
    certificate = roundtrip_check(PAIR, BoundedComplex.stalk(PAIR.regular), Direction.ENDOMORPHISMS)
    assert certificate.certified
    assert certificate.homology == {0: 3}


@pytest.mark.parametrize("name", sorted(B_MODULES))
def test_roundtrip_of_endomorphism_ring_stalks(name):
    module = B_MODULES[name]
    certificate = roundtrip_check(PAIR, BoundedComplex.stalk(module), Direction.ENDOMORPHISMS)
    assert certificate.certified
    assert certificate.homology == {0: module.dim}


def test_endomorphism_ring_indecomposables():
    assert sorted(module.dim for module in B_MODULES.values()) == [1, 1, 2]


def test_roundtrip_of_add_complexes():
    rng = np.random.Generator(np.random.Philox(key=5))
    for _ in range(3):
        assert roundtrip_check(PAIR, random_add_complex(PAIR.tilting, rng)).certified


def test_homotopy_classes_of_add_complexes():
    rng = np.random.Generator(np.random.Philox(key=11))
    for _ in range(20):
        x, y = random_add_complex(PAIR.tilting, rng), random_add_complex(PAIR.tilting, rng)
        assert all(homotopy_matches(x, y, k) for k in (-1, 0, 1))


def test_no_maps_from_the_tilting_module_far_below():
    tilting = BoundedComplex.stalk(PAIR.tilting)
    for x in complex_suite(ALGEBRA, seed=2, count=10):
        y = x.shift(x.hi + PAIR.degree + 1)
        assert all(degree <= -PAIR.degree - 1 for degree in nonzero_degrees(y))
        assert all(degree < 0 for degree in nonzero_degrees(rhom_t(PAIR, y).complex))
        assert derived_hom_dim(tilting, y, 0) == 0
        assert tilting_truncate(PAIR, y).homology_degrees()[1] == []


def test_complex_suite_is_seeded():
    first = [x.homology_dims() for x in complex_suite(ALGEBRA, seed=4, count=5)]
    second = [x.homology_dims() for x in complex_suite(ALGEBRA, seed=4, count=5)]
    assert first == second
    assert all(x.total_dim <= 12 for x in complex_suite(ALGEBRA, seed=4, count=5))


def check_complex(x):
    decomposition = tilting_truncate(PAIR, x)
    assert decomposition.is_exact()
    assert decomposition.euler_matches()
    assert vanishing_holds(PAIR, decomposition)
    lower, upper = decomposition.homology_degrees()
    assert all(degree <= 0 for degree in lower)
    assert all(degree >= 1 - PAIR.degree for degree in upper)
    assert roundtrip_check(PAIR, x).certified


def test_a_few_random_complexes():
    for x in complex_suite(ALGEBRA, seed=0, count=5):
        check_complex(x)


def test_a_few_random_endomorphism_ring_complexes():
    for y in complex_suite(PAIR.ring, seed=0, count=5):
        assert roundtrip_check(PAIR, y, Direction.ENDOMORPHISMS).certified


@pytest.mark.slow
def test_a_hundred_random_complexes():
    for x in complex_suite(ALGEBRA, seed=0, count=100):
        check_complex(x)


@pytest.mark.slow
def test_a_hundred_random_endomorphism_ring_complexes():
    for y in complex_suite(PAIR.ring, seed=0, count=100):
        assert roundtrip_check(PAIR, y, Direction.ENDOMORPHISMS).certified
