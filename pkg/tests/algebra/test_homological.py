import pytest

from tiltkit.algebra.fd_algebra import dual_numbers
from tiltkit.algebra.homological import (
    dual_regular,
    ext,
    hom_dim,
    injective_dimension,
    injective_envelope,
    is_isomorphic,
    is_projective,
    projective_cover,
    projective_dimension,
    projective_resolution,
    resolve,
    summand_test,
    tor,
)
from tiltkit.algebra.integers import ZModule
from tiltkit.algebra.modules import Module, simple
from tiltkit.utils.testing import a2_algebra, a2_modules, a2_tilting

A2 = a2_algebra()
MODULES = a2_modules(A2)


@pytest.mark.parametrize(
    ["source", "target", "expected"],
    [
        ("P1", "S1", 1),
        ("S1", "P1", 0),
        ("S2", "P1", 1),
        ("P2", "P1", 1),
        ("P1", "P2", 0),
        ("P1", "P1", 1),
        ("S1", "S2", 0),
        ("I2", "S1", 1),
    ],
)
def test_hom_dim(source, target, expected):
    assert hom_dim(MODULES[source], MODULES[target]) == expected


@pytest.mark.parametrize(
    ["name", "pd", "injdim"],
    [("P1", 0, 0), ("P2", 0, 1), ("S1", 1, 0), ("S2", 0, 1), ("I1", 1, 0), ("I2", 0, 0)],
)
def test_dimensions(name, pd, injdim):
    assert projective_dimension(MODULES[name]) == pd
    assert injective_dimension(MODULES[name]) == injdim


def test_dimension_edge_cases():
    assert projective_dimension(Module.zero(A2)) == -1
    algebra = dual_numbers()
    assert projective_dimension(simple(algebra, 0), cap=4) is None
    assert projective_dimension(Module.regular(algebra)) == 0


@pytest.mark.parametrize(
    ["source", "target", "degree", "expected"],
    [
        ("S1", "S2", 1, 1),
        ("S1", "P2", 1, 1),
        ("S2", "S1", 1, 0),
        ("S1", "S1", 1, 0),
        ("S1", "S2", 0, 0),
        ("S1", "S2", 2, 0),
        ("P1", "S2", 1, 0),
    ],
)
def test_ext(source, target, degree, expected):
    assert ext(MODULES[source], MODULES[target], degree) == expected


def test_ext_and_tor_over_dual_numbers():
    algebra = dual_numbers()
    point = simple(algebra, 0)
    for degree in range(4):
        assert ext(point, point, degree) == 1
    right = simple(algebra.opposite(), 0)
    for degree in range(3):
        assert tor(right, point, degree) == 1


def test_tor_over_a2():
    regular = Module.regular(A2.opposite())
    for name, module in MODULES.items():
        assert tor(regular, module, 0) == module.dim
        assert tor(regular, module, 1) == 0
    with pytest.raises(ValueError):
        tor(MODULES["S1"], MODULES["S1"], 0)


def test_integer_dispatch():
    assert ext(ZModule.cyclic(4), ZModule.free(1), 1).is_isomorphic(ZModule.cyclic(4))
    assert tor(ZModule.cyclic(4), ZModule.cyclic(2), 1).is_isomorphic(ZModule.cyclic(2))


def test_covers_and_envelopes():
    cover = projective_cover(MODULES["S1"])
    assert cover.module.vertex_dims == (1, 1)
    assert cover.map.is_surjective()
    assert cover.vertices == [0]
    envelope, inclusion = injective_envelope(MODULES["S2"])
    assert envelope.dim == 2
    assert inclusion.is_injective()
    assert is_projective(MODULES["P1"])
    assert not is_projective(MODULES["S1"])
    resolution = resolve(MODULES["S1"])
    assert resolution.length == 1
    assert resolution.is_complete
    assert resolution.complex.homology_dims() == {-1: 0, 0: 1}


def test_summands_and_isomorphism():
    tilting = a2_tilting(A2)
    assert summand_test(MODULES["P1"], tilting) is not None
    assert summand_test(MODULES["S1"], tilting) is not None
    assert summand_test(MODULES["S2"], tilting) is None
    assert is_isomorphic(dual_regular(A2), tilting)
    assert not is_isomorphic(MODULES["S1"], MODULES["S2"])


def test_projective_resolutions():
    assert projective_resolution(MODULES["S1"], 1).homology_dims() == {-1: 0, 0: 1}
    assert projective_resolution(MODULES["P1"], 0).homology_dims() == {0: 2}
    cyclic = projective_resolution(ZModule.cyclic(6), 1)
    assert [term.invariants for term in cyclic.terms] == [(1, ()), (1, ())]
    with pytest.raises(ValueError):
        projective_resolution(MODULES["S1"], -1)
