import numpy as np
import pytest

from tiltkit.pro import (
    CountableIndex,
    FreeContraElement,
    Integers,
    IntegersMod,
    MatrixRing,
    ProElement,
    levels_match,
    make_discrete,
    make_matrix_pro_ring,
    make_product,
    make_s_completion,
)


def test_s_adic_levels():
    ring = make_s_completion(2)
    assert ring.level(3) == IntegersMod(8)
    assert ring.reduce(5, 1) == 1
    assert ring.project(13, 4, 2) == 1
    assert ring.ideal_label(3) == "2^3Z_2"
    with pytest.raises(ValueError):
        ring.project(1, 2, 3)
    with pytest.raises(ValueError):
        ring.level(0)
    with pytest.raises(ValueError):
        make_s_completion(1)


@pytest.mark.parametrize(
    "ring",
    [
        make_s_completion(2),
        make_s_completion(6),
        make_discrete(IntegersMod(6)),
        make_matrix_pro_ring(make_s_completion(2), range(2)),
        make_product([make_s_completion(2), make_s_completion(3)]),
    ],
)
def test_chains_are_valid(ring):
    ring.check_chain(4)


def test_levels_match():
    assert levels_match(make_s_completion(2), make_s_completion(2), 4)
    assert not levels_match(make_s_completion(2), make_s_completion(3), 4)
    assert levels_match(make_discrete(IntegersMod(6)), make_discrete(IntegersMod(6)), 3)
    assert not levels_match(make_discrete(IntegersMod(4)), make_s_completion(2), 3)


def test_constants_and_lifts():
    ring = make_s_completion(2)
    assert ring.constant(5).at(2) == 1
    assert ring.one.at(4) == 1
    assert ring.zero.at(4) == 0

    lifted = ring.lift(3, 5)
    assert [lifted.at(n) for n in range(1, 6)] == [1, 1, 5, 5, 5]
    assert lifted.is_coherent(6)
    with pytest.raises(ValueError):
        lifted.at(0)


def test_element_arithmetic():
    ring = make_s_completion(3)
    a, b = ring.constant(4), ring.constant(7)
    assert (a + b).equals(ring.constant(11), 4)
    assert (a * b).equals(ring.constant(28), 4)
    assert (a - b).equals(ring.constant(-3), 4)
    with pytest.raises(ValueError):
        a + make_s_completion(2).constant(1)


def test_random_elements_are_coherent():
    rng = np.random.Generator(np.random.Philox(key=3))
    for ring in (make_s_completion(2), make_matrix_pro_ring(make_s_completion(3), "ab")):
        assert ring.random_element(rng).is_coherent(6)


def test_matrix_units():
    ring = make_matrix_pro_ring(make_s_completion(2), range(2))
    e12, e21 = ring.unit_matrix(0, 1), ring.unit_matrix(1, 0)
    assert (e12 * e21).equals(ring.unit_matrix(0, 0), 3)
    assert (e21 * e12).equals(ring.unit_matrix(1, 1), 3)
    assert (e12 * e12).equals(ring.zero, 3)
    assert ring.from_entries([[1, 0], [0, 1]]).equals(ring.one, 3)
    assert ring.level(2) == MatrixRing(IntegersMod(4), 2)
    with pytest.raises(ValueError):
        ring.from_entries([[1, 0]])
    with pytest.raises(ValueError):
        make_matrix_pro_ring(make_s_completion(2), [])


def test_product_components():
    ring = make_product([make_s_completion(2), make_s_completion(3)])
    element = ProElement(ring, lambda n: (5 % 2**n, 5 % 3**n))
    assert ring.component(element, 0).equals(ring.factors[0].constant(5), 4)
    assert ring.ideal_generator(2).at(2) == (0, 0)
    assert make_product([make_discrete(IntegersMod(2))]).ideal_generator(1) is None


def test_level_rings():
    assert list(IntegersMod(4).elements()) == [0, 1, 2, 3]
    assert len(list(MatrixRing(IntegersMod(2), 2).elements())) == 16
    assert not Integers().is_finite
    with pytest.raises(ValueError):
        list(Integers().elements())
    with pytest.raises(ValueError):
        IntegersMod(0)


def test_zero_convergent_family():
    ring = make_s_completion(2)
    index = CountableIndex("x")
    family = FreeContraElement.zero_convergent(ring, index, lambda k: ring.constant(2**k), lambda n: n)
    assert family.at(3) == {"x0": 1, "x1": 2, "x2": 4}
    assert family.is_coherent(5)
    assert "x12" in index and "y1" not in index


def test_free_elements():
    ring = make_s_completion(2)
    left = FreeContraElement.from_coefficients(ring, ("x", "y"), {"x": 3, "y": 2})
    right = FreeContraElement.from_coefficients(ring, ("x", "y"), {"x": 1})
    assert (left + right).at(2) == {"y": 2}
    assert (left - left).at(3) == {}
    assert left.scaled(ring.constant(2)).at(2) == {"x": 2}
    assert left.coefficient("y", 1) == 0
    with pytest.raises(ValueError):
        FreeContraElement.from_coefficients(ring, ("x",), {"z": 1}).at(1)
    with pytest.raises(ValueError):
        left + FreeContraElement.zero(ring, ("x",))
