import pytest

from tiltkit.algebra.types import VerificationError
from tiltkit.pro import (
    FreeContraElement,
    IntegersMod,
    assert_monad_laws,
    check_monad_laws,
    level_quotient,
    make_discrete,
    make_matrix_pro_ring,
    make_s_completion,
    monad_mult,
    monad_unit,
)
from tiltkit.pro.pro_ring import DiscreteProRing


class ShiftedProduct(IntegersMod):
    """
    ``Z/m`` with a product that has no unit.
    """

    def mul(self, left: int, right: int) -> int:
        return (left * right + 1) % self.modulus


def test_unit():
    ring = make_s_completion(2)
    unit = monad_unit("x", ring, ("x", "y"))
    assert level_quotient(unit, 3) == {"x": 1}
    with pytest.raises(ValueError):
        monad_unit("z", ring, ("x", "y"))


def test_multiplication_opens_parentheses():
    ring = make_s_completion(2)
    index = ("x", "y")
    x, y = monad_unit("x", ring, index), monad_unit("y", ring, index)
    combined = monad_mult([(ring.constant(3), x), (ring.one, y), (ring.constant(2), x)])
    assert level_quotient(combined, 2) == {"x": 1, "y": 1}
    assert level_quotient(combined, 3) == {"x": 5, "y": 1}
    assert combined.is_coherent(5)


def test_multiplication_cancels_in_low_levels():
    ring = make_s_completion(2)
    x = monad_unit("x", ring, ("x",))
    doubled = monad_mult([(ring.constant(2), x), (ring.constant(2), x)])
    assert level_quotient(doubled, 2) == {}
    assert level_quotient(doubled, 3) == {"x": 4}


def test_multiplication_errors():
    ring, other = make_s_completion(2), make_s_completion(3)
    with pytest.raises(ValueError):
        monad_mult([])
    with pytest.raises(ValueError):
        monad_mult([(other.one, monad_unit("x", ring, ("x",)))])
    with pytest.raises(ValueError):
        monad_mult([(ring.one, monad_unit("x", ring, ("x",))), (ring.one, FreeContraElement.zero(ring, ("y",)))])


@pytest.mark.parametrize(
    "ring",
    [
        make_s_completion(2),
        make_discrete(IntegersMod(6)),
        make_matrix_pro_ring(make_s_completion(2), range(2)),
    ],
)
def test_laws_on_a_few_instances(ring):
    check = check_monad_laws(ring, ["x", "y"], seed=1, precision=4, instances=5)
    assert check.passed
    assert check.instances == 5


def test_laws_are_seeded():
    ring = make_s_completion(3)
    first = check_monad_laws(ring, ["x", "y", "z"], seed=11, precision=3, instances=4)
    second = check_monad_laws(ring, ["x", "y", "z"], seed=11, precision=3, instances=4)
    assert first == second


def test_broken_ring_is_caught():
    ring = DiscreteProRing(ShiftedProduct(5))
    check = check_monad_laws(ring, ["x", "y"], seed=0, precision=2, instances=10)
    assert not check.passed
    assert any(law == "left unit" for _, law, _ in check.failures)
    with pytest.raises(VerificationError) as error:
        assert_monad_laws(ring, ["x", "y"], seed=0, precision=2, instances=10)
    assert error.value.witness == check.failures[0]


@pytest.mark.slow
@pytest.mark.parametrize(
    "ring",
    [
        make_s_completion(2),
        make_discrete(IntegersMod(6)),
        make_matrix_pro_ring(make_s_completion(2), range(2)),
    ],
)
def test_laws_on_a_hundred_instances(ring):
    assert_monad_laws(ring, ["x", "y"], seed=0, precision=8, instances=100)
