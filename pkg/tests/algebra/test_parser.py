import pytest

from tiltkit.algebra.homological import is_isomorphic
from tiltkit.algebra.parser import (
    FormatError,
    format_module,
    load_complex,
    load_module,
    load_quiver,
    parse_module,
    parse_quiver,
)
from tiltkit.utils.testing import DATA_DIR, a2_tilting


def test_fixture_files():
    algebra = load_quiver(DATA_DIR / "a2.quiver")
    assert algebra.dim == 3
    tilting = load_module(DATA_DIR / "T.mod", algebra)
    assert is_isomorphic(tilting, a2_tilting(algebra))
    x = load_complex(DATA_DIR / "P2P1.cx", algebra)
    assert (x.lo, x.hi) == (-1, 0)
    assert x.homology_dims() == {-1: 0, 0: 1}


def test_module_round_trip():
    algebra = load_quiver(DATA_DIR / "a2.quiver")
    tilting = load_module(DATA_DIR / "T.mod", algebra)
    again = parse_module(format_module(tilting), algebra)
    assert again.vertex_dims == tilting.vertex_dims
    assert is_isomorphic(again, tilting)


def test_relations_and_fields():
    algebra = parse_quiver("field: F3\nvertices: 1\narrows: x: 1 -> 1\nrelations: x*x*x\n")
    assert algebra.dim == 3
    assert algebra.field.characteristic() == 3
    square = parse_quiver(
        "vertices: 1 2 3 4\n"
        "arrows: a: 1 -> 2, b: 2 -> 4, c: 1 -> 3, d: 3 -> 4\n"
        "relations: a*b - 2*c*d\n"
    )
    assert square.dim == 4 + 4 + 1


def test_malformed_quiver_location():
    with pytest.raises(FormatError) as error:
        load_quiver(DATA_DIR / "broken.quiver")
    assert error.value.line == 2
    assert error.value.column == 9
    assert str(error.value).startswith(f"{DATA_DIR / 'broken.quiver'}:2:9:")


@pytest.mark.parametrize(
    ["text", "line"],
    [
        ("arrows: a: 1 -> 2\n", 1),
        ("vertices: 1 2\nfield: F4\n", 2),
        ("vertices: 1 2\ncolour: red\n", 2),
        ("# comment\nvertices: 1 2\narrows: a: 1 -> 3\n", 3),
        ("vertices: 1 2\narrows: a: 1 -> 2\nrelations: a\n", 3),
        ("vertices: 1\nvertices: 2\n", 2),
        ("vertices 1 2\n", 1),
    ],
)
def test_quiver_errors(text, line):
    with pytest.raises(FormatError) as error:
        parse_quiver(text)
    assert error.value.line == line


@pytest.mark.parametrize(
    ["text", "line", "column"],
    [
        ("dim: [1, 1]\nmatrix a1: [[1, 0]]\n", 2, 12),
        ("dim: [1, 1\n", 1, 6),
        ("dim: [1, 1]\nmatrix b: [[1]]\n", 2, 1),
        ("matrix a1: [[1]]\n", 1, 1),
        ("dim: [1, 1]\nmatrix a1: [[1] [2]]\n", 2, 16),
    ],
)
def test_module_errors(text, line, column):
    algebra = load_quiver(DATA_DIR / "a2.quiver")
    with pytest.raises(FormatError) as error:
        parse_module(text, algebra)
    assert (error.value.line, error.value.column) == (line, column)
