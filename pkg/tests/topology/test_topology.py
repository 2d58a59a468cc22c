import pytest

from tiltkit.algebra.fd_algebra import linear_quiver, path_algebra
from tiltkit.algebra.integers import ZModule
from tiltkit.algebra.modules import Module
from tiltkit.pro import IntegersMod, MatrixRing, levels_match, make_s_completion
from tiltkit.topology import (
    ColimitModule,
    add_equiv_check,
    algebra_invariants,
    endo_topology_colim,
    endo_topology_fp,
    endomorphism_algebra,
    invariants_match,
    sample_zero_convergence,
)
from tiltkit.utils.testing import MODULES, a2_algebra, a2_tilting


def test_matlis_chain_is_the_two_adic_chain():
    ring = endo_topology_colim(ColimitModule.matlis_torsion(2))
    assert levels_match(ring, make_s_completion(2), 8)
    assert ring.level(1) == IntegersMod(2)
    assert ring.reduce(3, 1) == 1
    ring.check_chain(5)


def test_endomorphisms_of_a_stage():
    module = ColimitModule.matlis_torsion(2)
    assert module.stage(1).invariants == (0, (2,))
    assert module.endomorphisms(1).group.invariants == (0, (2,))
    assert module.inclusion(2).is_injective()
    module.check(6)


def test_annihilators():
    ring = endo_topology_colim(ColimitModule.matlis_torsion(3))
    assert ring.annihilates(2, 9)
    assert not ring.annihilates(2, 3)
    assert ring.ideal_label(2) == "Ann(M_2)"
    assert ring.level(2).is_zero(ring.ideal_generator(2).at(2))


def test_sum_of_coprime_chains():
    ring = endo_topology_colim(ColimitModule([2, 3]))
    assert ring.level(2) == IntegersMod(36)
    ring.check_chain(3)
    assert levels_match(ring, make_s_completion(6), 3)


@pytest.mark.parametrize("bases", [[], [1], [2, 4]])
def test_unsupported_colimit_shapes(bases):
    with pytest.raises(ValueError):
        ColimitModule(bases)


def test_endomorphisms_of_the_tilting_module():
    tilting = a2_tilting(a2_algebra())
    endomorphisms = endomorphism_algebra(tilting)
    assert endomorphisms.algebra.dim == 3
    assert endomorphisms.right_module.dim == tilting.dim
    assert invariants_match(endomorphisms.algebra, a2_algebra())
    assert endo_topology_fp(tilting).is_discrete


@pytest.mark.parametrize(["name", "dim"], [("S1", 1), ("S2", 1), ("P1", 1), ("regular", 3)])
def test_endomorphism_dimensions(name, dim):
    module = MODULES[name](a2_algebra())
    assert endomorphism_algebra(module).algebra.dim == dim


def test_endomorphisms_of_the_regular_module():
    algebra = a2_algebra()
    endomorphisms = endomorphism_algebra(Module.regular(algebra))
    assert invariants_match(endomorphisms.algebra, algebra.opposite())


def test_algebra_invariants():
    assert tuple(algebra_invariants(a2_algebra())) == (3, 1, 1, 0)
    assert algebra_invariants(path_algebra(linear_quiver(3))).radical_squared == 1


def test_endomorphisms_of_groups():
    assert endo_topology_fp(ZModule.cyclic(4)).level(1) == IntegersMod(4)
    assert endo_topology_fp(ZModule.from_orders([4, 4])).level(1) == MatrixRing(IntegersMod(4), 2)
    with pytest.raises(ValueError):
        endo_topology_fp(ZModule.from_orders([2, 4]))
    with pytest.raises(ValueError):
        endo_topology_fp(ZModule.free(1))


@pytest.mark.parametrize("index", [["a"], ["a", "b"], ["a", "b", "c"]])
def test_add_equivalence_for_the_matlis_module(index):
    report = add_equiv_check(ColimitModule.matlis_torsion(2), index, precision=8)
    assert report.verified
    assert report.counterexample is None
    assert report.levels[0].hom == str((0, (2,) * len(index)))
    assert len(report.levels) == 8


def test_add_equivalence_for_an_empty_index():
    report = add_equiv_check(ColimitModule.matlis_torsion(2), [], precision=3)
    assert report.verified
    assert report.levels[2].free == str((0, ()))


@pytest.mark.parametrize("index", [["a"], ["a", "b"]])
def test_add_equivalence_for_the_tilting_module(index):
    report = add_equiv_check(a2_tilting(a2_algebra()), index)
    assert report.verified
    assert report.levels[0].hom == str(3 * len(index))


def test_zero_convergence():
    samples = sample_zero_convergence(ColimitModule.matlis_torsion(2), seed=0, precision=3, families=10)
    assert len(samples) == 10
    assert [sample.convergent for sample in samples[:2]] == [True, False]
    assert all(sample.agrees for sample in samples)
