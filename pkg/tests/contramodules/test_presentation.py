import gc
import weakref

import pytest

from tiltkit.algebra.integers import ZModule
from tiltkit.contramodules import (
    Contramodule,
    Tower,
    completion_map_check,
    ideal_action_subgroup,
    pl_limit,
)
from tiltkit.pro import FreeContraElement, IntegersMod, make_discrete, make_matrix_pro_ring, make_s_completion


def halved(ring):
    """
    ``R[[a]]`` modulo ``2a``.
    """
    return Contramodule.cokernel(ring, ["a"], {"b": {"a": 2}})


@pytest.mark.parametrize("size", [1, 2, 5])
@pytest.mark.parametrize("level", range(1, 7))
def test_free_level_groups(size, level):
    ring = make_s_completion(2)
    free = Contramodule.free(ring, [f"x{k}" for k in range(size)])
    quotient = ideal_action_subgroup(free, level)
    assert quotient.quotient.invariants == (0, (2**level,) * size)
    assert quotient.subgroup.source.is_zero
    assert quotient.ideal == f"2^{level}Z_2"


def test_cokernel_level_groups():
    ring = make_s_completion(2)
    contramodule = halved(ring)
    for level in range(1, 5):
        assert contramodule.level_group(level).invariants == (0, (2,))
    quotient = ideal_action_subgroup(contramodule, 3)
    assert quotient.subgroup.source.invariants == (0, (4,))


def test_discrete_ring_quotient_is_the_contramodule():
    ring = make_discrete(IntegersMod(6))
    free = Contramodule.free(ring, ["a"])
    assert ideal_action_subgroup(free, 4).quotient.invariants == (0, (2, 3))


def test_invalid_presentations():
    ring = make_s_completion(2)
    with pytest.raises(ValueError):
        Contramodule(ring, ["a", "a"])
    with pytest.raises(ValueError):
        Contramodule(ring, ["a"], {"r": FreeContraElement.from_coefficients(ring, ("a", "b"), {"a": 1})})
    with pytest.raises(ValueError):
        Contramodule(ring, ["a"], {"r": FreeContraElement.from_coefficients(make_s_completion(3), ("a",), {"a": 1})})


def test_multiplication_and_transitions():
    ring = make_s_completion(3)
    free = Contramodule.free(ring, ["a"])
    group = free.level_group(2)
    assert group.equal_elements(free.multiplication(2, 4)((2,)), (8,))
    assert free.transition(2)((5,)) == (5,)
    assert free.level_group(1).equal_elements(free.transition(1)((5,)), (2,))
    assert free.transition(1).is_surjective()


def test_level_groups_are_cached_per_presentation():
    ring = make_s_completion(2)
    first, second = halved(ring), halved(ring)
    assert first.level_group(3) is first.level_group(3)
    assert first.transition(2) is first.transition(2)
    assert first.level_group(3) is not second.level_group(3)
    reference = weakref.ref(first)
    del first
    gc.collect()
    assert reference() is None


@pytest.mark.parametrize(
    "contramodule",
    [
        Contramodule.free(make_s_completion(2), ["a", "b"]),
        halved(make_s_completion(2)),
        Contramodule.free(make_discrete(IntegersMod(6)), ["a"]),
        Contramodule.free(make_matrix_pro_ring(make_s_completion(2), range(2)), ["a"]),
    ],
)
def test_axioms_on_a_few_instances(contramodule):
    assert contramodule.check_axioms(seed=2, precision=3, instances=5) == []


@pytest.mark.slow
@pytest.mark.parametrize(
    "contramodule",
    [
        Contramodule.free(make_s_completion(2), ["a", "b"]),
        halved(make_s_completion(2)),
        Contramodule.free(make_discrete(IntegersMod(6)), ["a"]),
        Contramodule.free(make_matrix_pro_ring(make_s_completion(2), range(2)), ["a"]),
    ],
)
def test_axioms_on_a_hundred_instances(contramodule):
    assert contramodule.check_axioms(seed=0, precision=8, instances=100) == []


def test_constant_tower_limit():
    group = ZModule.cyclic(4)
    limit = pl_limit(Tower.constant(group, 3))
    assert limit.levels == 2
    assert limit.invariants == [(0, (4,)), (0, (4,))]
    assert not limit.is_zero


def test_zero_tower_limit():
    group = ZModule.cyclic(2)
    limit = pl_limit(Tower([group] * 3, [group.zero_map(group)] * 2))
    assert limit.is_zero


def test_incompatible_towers():
    group, other = ZModule.cyclic(2), ZModule.cyclic(4)
    with pytest.raises(ValueError):
        Tower([group, group], [])
    with pytest.raises(ValueError):
        Tower([group, other], [group.identity()])
    with pytest.raises(ValueError):
        Tower([group], [], ring=make_s_completion(2))


def test_limit_of_the_completion_tower():
    ring = make_s_completion(2)
    free = Contramodule.free(ring, ["a"])
    limit = pl_limit(Tower.from_contramodule(free, 5))
    assert limit.matches(free)
    assert limit.invariants == [(0, (2,)), (0, (4,)), (0, (8,)), (0, (16,))]
    assert limit.is_coherent([(1,), (1,), (1,), (1,), (1,)])
    assert not limit.is_coherent([(1,), (0,), (1,), (1,), (1,)])
    assert limit.images[1].equal_elements(limit.act(2, 3, (1,)), (3,))
    with pytest.raises(ValueError):
        pl_limit(Tower.constant(ZModule.cyclic(2), 3)).act(1, 1, (1,))


def test_completion_of_free_contramodules():
    report = completion_map_check(Contramodule.free(make_s_completion(2), ["a", "b"]), precision=4)
    assert report.verdict == "iso"
    assert report.free
    assert report.transitions_surjective
    assert report.levels[2] == (0, (8, 8))


def test_completion_of_a_stable_tower():
    report = completion_map_check(halved(make_s_completion(2)), precision=4)
    assert report.verdict == "iso"
    assert report.stabilized_at == 1


def test_completion_over_a_discrete_ring():
    report = completion_map_check(Contramodule.free(make_discrete(IntegersMod(6)), ["a"]), precision=3)
    assert report.stabilized_at == 1
    assert report.verdict == "iso"


def test_completion_separated_up_to_precision():
    contramodule = Contramodule.cokernel(make_s_completion(2), ["a", "b"], {"r": {"b": 2}})
    report = completion_map_check(contramodule, precision=4)
    assert report.stabilized_at is None
    assert report.verdict == "separated up to level 4"
