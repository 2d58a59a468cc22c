import pytest

from tiltkit.algebra.complexes import BoundedComplex, ChainMap, cone, direct_sum_complex
from tiltkit.algebra.homological import hom_space
from tiltkit.algebra.modules import Module
from tiltkit.algebra.types import VerificationError
from tiltkit.utils.testing import a2_algebra, a2_modules

A2 = a2_algebra()
MODULES = a2_modules(A2)


def presentation() -> BoundedComplex:
    (inclusion,) = hom_space(MODULES["P2"], MODULES["P1"]).basis
    return BoundedComplex(-1, [MODULES["P2"], MODULES["P1"]], [inclusion])


def test_homology():
    x = presentation()
    assert x.degrees == range(-1, 1)
    assert x.homology_dims() == {-1: 0, 0: 1}
    assert x.homology(0).module.vertex_dims == (1, 0)
    assert x.total_dim == 3
    assert x.term(5).is_zero


def test_differentials_must_compose_to_zero():
    (first,) = hom_space(MODULES["S2"], MODULES["P1"]).basis
    (second,) = hom_space(MODULES["P1"], MODULES["I2"]).basis
    with pytest.raises(ValueError):
        BoundedComplex(0, [MODULES["S2"], MODULES["P1"], MODULES["I2"]], [first, second])
    with pytest.raises(ValueError):
        BoundedComplex(0, [])


def test_shift_and_trim():
    x = presentation()
    shifted = x.shift(1)
    assert shifted.lo == -2
    assert shifted.homology_dims() == {-2: 0, -1: 1}
    padded = BoundedComplex(-2, [Module.zero(A2)] + x.terms + [Module.zero(A2)], check=False)
    trimmed = padded.trimmed()
    assert (trimmed.lo, trimmed.hi) == (-1, 0)


def test_chain_maps_and_cones():
    x = presentation()
    stalk = BoundedComplex.stalk(MODULES["S1"])
    (augmentation,) = hom_space(MODULES["P1"], MODULES["S1"]).basis
    resolution = ChainMap(x, stalk, {0: augmentation})
    assert resolution.is_quasi_isomorphism()
    assert cone(resolution).is_acyclic()
    with pytest.raises(VerificationError):
        ChainMap(BoundedComplex.stalk(MODULES["P2"], -1), x, {-1: MODULES["P2"].identity()})


def test_direct_sum_complex():
    x = presentation()
    total = direct_sum_complex([x, BoundedComplex.stalk(MODULES["S2"], 1)])
    assert (total.lo, total.hi) == (-1, 1)
    assert total.homology_dims() == {-1: 0, 0: 1, 1: 1}
