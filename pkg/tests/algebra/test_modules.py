import pytest

from tiltkit.algebra import linear
from tiltkit.algebra.fd_algebra import Arrow, Quiver, dual_numbers, path_algebra
from tiltkit.algebra.homological import hom_space, is_isomorphic
from tiltkit.algebra.modules import Module, direct_sum, pullback, pushout, vector_dual
from tiltkit.utils.testing import a2_algebra, a2_modules, a2_tilting


def test_a2_algebra():
    algebra = a2_algebra()
    assert algebra.dim == 3
    assert algebra.vertex_count == 2
    assert "a1" in algebra.labels
    assert algebra.opposite().opposite() is algebra
    algebra.check_structure()
    assert algebra.vertex_support(algebra.labels.index("a1")) == (0, 1)


def test_relations_cut_down_dimension():
    quiver = Quiver(
        vertices=("1",),
        arrows=(Arrow(name="x", source="1", target="1"),),
    )
    cube = path_algebra(quiver, [[(1, ("x", "x", "x"))]])
    assert cube.dim == 3
    assert dual_numbers().dim == 2
    with pytest.raises(ValueError):
        path_algebra(quiver, [], length_cap=4)


def test_quiver_validation():
    with pytest.raises(ValueError):
        Quiver(vertices=("1", "1"))
    with pytest.raises(ValueError):
        Quiver(vertices=("1",), arrows=(Arrow(name="a", source="1", target="2"),))


@pytest.mark.parametrize(
    ["name", "dims"],
    [("P1", (1, 1)), ("P2", (0, 1)), ("I1", (1, 0)), ("I2", (1, 1)), ("S1", (1, 0)), ("S2", (0, 1))],
)
def test_indecomposables(name, dims):
    module = a2_modules(a2_algebra())[name]
    assert module.vertex_dims == dims
    module.check_action()


def test_regular_and_sums():
    algebra = a2_algebra()
    assert Module.regular(algebra).vertex_dims == (1, 2)
    tilting = a2_tilting(algebra)
    assert tilting.vertex_dims == (2, 1)
    assert linear.to_strings(tilting.arrow_matrix("a1")) == [["1", "0"]]
    total, injections, projections = direct_sum([tilting, tilting])
    assert total.dim == 6
    for inject, project in zip(injections, projections):
        assert project.compose(inject).equals(tilting.identity())


def test_representation_shape_is_checked():
    algebra = a2_algebra()
    with pytest.raises(ValueError):
        Module.from_representation(algebra, [1, 1], {"a1": linear.matrix([[1, 0]], algebra.field)})
    with pytest.raises(ValueError):
        Module.from_representation(algebra, [1], {})


def test_kernel_cokernel():
    algebra = a2_algebra()
    modules = a2_modules(algebra)
    (projection,) = hom_space(modules["P1"], modules["S1"]).basis
    kernel = projection.kernel()
    assert kernel.source.dim == 1
    assert projection.compose(kernel).is_zero()
    (inclusion,) = hom_space(modules["S2"], modules["P1"]).basis
    cokernel = inclusion.cokernel()
    assert is_isomorphic(cokernel.target, modules["S1"])
    surjection, image = projection.image()
    assert image.compose(surjection).equals(projection)


def test_pullback_and_pushout():
    algebra = a2_algebra()
    modules = a2_modules(algebra)
    (inclusion,) = hom_space(modules["S2"], modules["P1"]).basis
    (projection,) = hom_space(modules["P1"], modules["S1"]).basis
    corner, left, right = pullback(projection, projection)
    assert projection.compose(left).equals(projection.compose(right))
    assert corner.dim == 3
    corner, left, right = pushout(inclusion, inclusion)
    assert left.compose(inclusion).equals(right.compose(inclusion))
    assert corner.dim == 3


def test_vector_dual():
    algebra = a2_algebra()
    dual = vector_dual(a2_modules(algebra)["P1"])
    assert dual.algebra is algebra.opposite()
    assert dual.dim == 2
    assert vector_dual(dual).algebra is algebra
