import pytest

from tiltkit.algebra.integers import ZModule
from tiltkit.algebra.types import Side
from tiltkit.contramodules import (
    Contramodule,
    DiscreteModule,
    adjunction_check,
    contratensor,
    hom_action,
    hom_contramodule,
    morita_transport,
)
from tiltkit.pro import Integers, IntegersMod, make_discrete, make_s_completion

TWO_ADIC = make_s_completion(2)


def test_discrete_modules():
    regular = DiscreteModule.regular(TWO_ADIC, 2)
    assert regular.group.invariants == (0, (4,))
    assert regular.action_at(3, 5).equals(regular.group.identity())
    assert regular.action_at(2, 3).equals(regular.group.identity().scaled(3))
    assert regular.at_level(4).action_at(4, 6).equals(regular.group.identity().scaled(2))
    with pytest.raises(ValueError):
        regular.action_at(1, 1)
    with pytest.raises(ValueError):
        regular.at_level(1)
    with pytest.raises(ValueError):
        DiscreteModule.over_cyclic(TWO_ADIC, 1, ZModule.cyclic(4))
    with pytest.raises(ValueError):
        DiscreteModule(TWO_ADIC, 1, ZModule.cyclic(2), [])


@pytest.mark.parametrize("size", [1, 2, 3])
@pytest.mark.parametrize(
    "module",
    [
        DiscreteModule.regular(TWO_ADIC, 1),
        DiscreteModule.regular(TWO_ADIC, 2),
        DiscreteModule.over_cyclic(TWO_ADIC, 2, ZModule.from_orders([2, 4])),
        DiscreteModule.over_cyclic(TWO_ADIC, 3, ZModule.cyclic(8)),
    ],
)
def test_contratensor_with_free(module, size):
    free = Contramodule.free(TWO_ADIC, [f"x{k}" for k in range(size)])
    product = contratensor(module, free)
    assert product.group.invariants == (0, tuple(sorted(module.group.elementary_divisors * size)))


def test_contratensor_with_a_cokernel():
    module = DiscreteModule.regular(TWO_ADIC, 2)
    contramodule = Contramodule.cokernel(TWO_ADIC, ["a"], {"b": {"a": 2}})
    product = contratensor(module, contramodule)
    assert product.group.invariants == (0, (2,))
    assert product.projection.compose(product.presentation).is_zero()
    assert product.projection.is_surjective()


def test_contratensor_does_not_depend_on_the_presentation():
    module = DiscreteModule.regular(TWO_ADIC, 2)
    padded = Contramodule.cokernel(TWO_ADIC, ["a", "z"], {"b": {"a": 2}, "c": {"z": 1}})
    assert contratensor(module, padded).group.invariants == (0, (2,))


def test_contratensor_of_zero():
    module = DiscreteModule.regular(TWO_ADIC, 1)
    assert contratensor(module, Contramodule.zero(TWO_ADIC)).group.is_zero


def test_contratensor_over_a_discrete_ring():
    ring = make_discrete(Integers())
    module = DiscreteModule.over_cyclic(ring, 1, ZModule.cyclic(6))
    contramodule = Contramodule.cokernel(ring, ["a"], {"b": {"a": 4}})
    assert contratensor(module, contramodule).group.invariants == (0, (2,))


def test_contratensor_errors():
    left = DiscreteModule.regular(TWO_ADIC, 1, side=Side.LEFT)
    with pytest.raises(ValueError):
        contratensor(left, Contramodule.free(TWO_ADIC, ["a"]))
    with pytest.raises(ValueError):
        contratensor(DiscreteModule.regular(TWO_ADIC, 1), Contramodule.free(make_s_completion(3), ["a"]))


def test_hom_contramodule():
    module = DiscreteModule.over_cyclic(TWO_ADIC, 1, ZModule.cyclic(2))
    data = hom_contramodule(module, ZModule.cyclic(4))
    assert data.hom.group.invariants == (0, (2,))
    assert data.contramodule.level_group(1).invariants == (0, (2,))
    morphism = data.to_map(data.to_element(data.hom.to_map((1,))))
    assert morphism.equals(data.hom.to_map((1,)))


def test_hom_action_evaluates_finitely_many_terms():
    module = DiscreteModule.over_cyclic(TWO_ADIC, 1, ZModule.cyclic(2))
    data = hom_contramodule(module, ZModule.cyclic(4))
    f = data.hom.to_map((1,))
    family = [(TWO_ADIC.constant(2**k), f) for k in range(6)]
    assert hom_action(data, family).equals(f)
    assert hom_action(data, family[1:]).is_zero()


def test_hom_contramodule_errors():
    with pytest.raises(ValueError):
        hom_contramodule(DiscreteModule.regular(TWO_ADIC, 1, side=Side.LEFT), ZModule.cyclic(2))
    with pytest.raises(ValueError):
        hom_contramodule(DiscreteModule.regular(TWO_ADIC, 1), ZModule.free(1))


@pytest.mark.parametrize(
    ["module", "contramodule", "target", "invariants"],
    [
        (
            DiscreteModule.over_cyclic(TWO_ADIC, 1, ZModule.cyclic(2)),
            Contramodule.free(TWO_ADIC, ["a"]),
            ZModule.cyclic(4),
            (0, (2,)),
        ),
        (DiscreteModule.regular(TWO_ADIC, 2), Contramodule.free(TWO_ADIC, ["a"]), ZModule.cyclic(4), (0, (4,))),
        (DiscreteModule.regular(TWO_ADIC, 2), Contramodule.free(TWO_ADIC, ["a", "b"]), ZModule.cyclic(2), (0, (2, 2))),
        (
            DiscreteModule.regular(TWO_ADIC, 1),
            Contramodule.cokernel(TWO_ADIC, ["a"], {"b": {"a": 2}}),
            ZModule.cyclic(2),
            (0, (2,)),
        ),
        (
            DiscreteModule.regular(TWO_ADIC, 2),
            Contramodule.cokernel(TWO_ADIC, ["a"], {"b": {"a": 2}}),
            ZModule.cyclic(4),
            (0, (2,)),
        ),
        (
            DiscreteModule.over_cyclic(TWO_ADIC, 2, ZModule.from_orders([2, 4])),
            Contramodule.free(TWO_ADIC, ["a"]),
            ZModule.cyclic(4),
            (0, (2, 4)),
        ),
    ],
)
def test_adjunction(module, contramodule, target, invariants):
    certificate = adjunction_check(module, contramodule, target)
    assert certificate.left == certificate.right == invariants


def test_adjunction_beyond_precision():
    with pytest.raises(ValueError):
        adjunction_check(DiscreteModule.regular(TWO_ADIC, 3), Contramodule.free(TWO_ADIC, ["a"]), ZModule.cyclic(2), 2)


def test_morita_transport_of_a_free_contramodule():
    transport = morita_transport(Contramodule.free(TWO_ADIC, ["a"]), ["p", "q"])
    assert transport.size == 2
    assert transport.contramodule.level_group(2).invariants == (0, (4, 4))
    assert transport.check_action(seed=0, precision=3, instances=5) == []


def test_morita_transport_along_one_point():
    base = Contramodule.cokernel(TWO_ADIC, ["a"], {"b": {"a": 2}})
    transport = morita_transport(base, ["p"])
    for level in range(1, 4):
        assert transport.contramodule.level_group(level).is_isomorphic(base.level_group(level))
    assert transport.check_action(seed=1, precision=3, instances=5) == []


def test_morita_diagonal_action():
    base = Contramodule.free(TWO_ADIC, ["a"])
    transport = morita_transport(base, ["p", "q"])
    image = transport.act(2, ((1, 0), (0, 2)), [(1,), (1,)])
    assert image == [base.normal_form(2, (1,)), base.normal_form(2, (2,))]
    with pytest.raises(ValueError):
        transport.act(2, ((1, 0), (0, 2)), [(1,)])
    with pytest.raises(ValueError):
        morita_transport(base, [])


def test_discrete_modules_over_a_finite_ring():
    ring = make_discrete(IntegersMod(6))
    module = DiscreteModule.regular(ring, 1)
    assert contratensor(module, Contramodule.free(ring, ["a", "b"])).group.invariants == (0, (2, 2, 3, 3))
