import pytest

from tiltkit.algebra import integers
from tiltkit.algebra.integers import ZMap, ZModule


@pytest.mark.parametrize(
    ["group", "invariants"],
    [
        (ZModule.cyclic(12), (0, (3, 4))),
        (ZModule.from_orders([2, 3]), (0, (2, 3))),
        (ZModule.from_orders([0, 4]), (1, (4,))),
        (ZModule(2, [(2, 4), (0, 6)]), (0, (2, 2, 3))),
        (ZModule.free(3), (3, ())),
        (ZModule.cyclic(1), (0, ())),
    ],
)
def test_invariants(group, invariants):
    assert group.invariants == invariants


def test_isomorphism_and_size():
    assert ZModule.cyclic(6).is_isomorphic(ZModule.from_orders([2, 3]))
    assert not ZModule.cyclic(4).is_isomorphic(ZModule.from_orders([2, 2]))
    assert ZModule.from_orders([2, 6]).size() == 12
    assert len(list(ZModule.from_orders([2, 3]).elements())) == 6
    with pytest.raises(ValueError):
        ZModule.free(1).size()


def test_canonical_coordinates():
    group = ZModule(2, [(2, 4), (0, 6)])
    for element in group.elements():
        assert group.equal_elements(group.lift(group.canonical(element)), element)
    assert group.is_zero_element((2, 4))
    assert not group.is_zero_element((1, 0))


def test_map_kernel_cokernel_image():
    doubling = ZMap(ZModule.cyclic(4), ZModule.cyclic(4), [[2]])
    assert doubling.kernel().source.is_isomorphic(ZModule.cyclic(2))
    assert doubling.cokernel().target.is_isomorphic(ZModule.cyclic(2))
    surjection, inclusion = doubling.image()
    assert surjection.is_surjective()
    assert inclusion.is_injective()
    assert inclusion.compose(surjection).equals(doubling)
    with pytest.raises(ValueError):
        ZMap(ZModule.cyclic(4), ZModule.cyclic(6), [[1]])


@pytest.mark.parametrize(
    ["source", "target", "expected"],
    [
        (ZModule.cyclic(4), ZModule.cyclic(6), ZModule.cyclic(2)),
        (ZModule.cyclic(8), ZModule.cyclic(8), ZModule.cyclic(8)),
        (ZModule.cyclic(3), ZModule.free(1), ZModule(0)),
        (ZModule.free(1), ZModule.cyclic(5), ZModule.cyclic(5)),
        (ZModule.free(2), ZModule.free(1), ZModule.free(2)),
    ],
)
def test_hom(source, target, expected):
    homs = integers.hom(source, target)
    assert homs.group.is_isomorphic(expected)
    for element in homs.group.elements() if homs.group.is_finite else []:
        assert homs.group.equal_elements(homs.coordinates(homs.to_map(element)), element)


def test_ext_and_tor():
    assert integers.ext(ZModule.cyclic(4), ZModule.free(1), 1).is_isomorphic(ZModule.cyclic(4))
    assert integers.ext(ZModule.cyclic(4), ZModule.free(1), 0).is_zero
    assert integers.ext(ZModule.cyclic(4), ZModule.cyclic(6), 1).is_isomorphic(ZModule.cyclic(2))
    assert integers.ext(ZModule.free(2), ZModule.cyclic(3), 1).is_zero
    assert integers.ext(ZModule.cyclic(4), ZModule.cyclic(4), 2).is_zero
    assert integers.tor(ZModule.cyclic(4), ZModule.cyclic(6), 1).is_isomorphic(ZModule.cyclic(2))
    assert integers.tor(ZModule.cyclic(4), ZModule.cyclic(6), 0).is_isomorphic(ZModule.cyclic(2))
    assert integers.tensor(ZModule.cyclic(9), ZModule.free(2)).is_isomorphic(ZModule.from_orders([9, 9]))
    with pytest.raises(ValueError):
        integers.ext(ZModule.cyclic(2), ZModule.cyclic(2), -1)


@pytest.mark.parametrize(
    ["module", "other", "expected"],
    [
        (ZModule.cyclic(4), ZModule.cyclic(12), True),
        (ZModule.cyclic(6), ZModule.from_orders([2, 3]), True),
        (ZModule.cyclic(2), ZModule.cyclic(4), False),
        (ZModule.free(1), ZModule.cyclic(4), False),
        (ZModule.from_orders([0, 3]), ZModule.from_orders([0, 3]), True),
    ],
)
def test_summand_test(module, other, expected):
    split = integers.summand_test(module, other)
    assert (split is not None) == expected
    if split is not None:
        section, retraction = split
        assert retraction.compose(section).equals(module.identity())


def _product(left, right):
    return [[sum(a * b for a, b in zip(row, column)) for column in zip(*right)] for row in left]


@pytest.mark.parametrize(
    ["matrix", "diagonal"],
    [
        ([[2, 4], [6, 8]], [[2, 0], [0, 4]]),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        ([[0]], [[0]]),
        ([[4, 6]], [[2, 0]]),
    ],
)
def test_smith_normal_form(matrix, diagonal):
    u, d, v = integers.smith_normal_form(matrix)
    assert d == diagonal
    assert _product(_product(u, matrix), v) == d
    assert all(type(entry) is int for form in (u, d, v) for row in form for entry in row)
