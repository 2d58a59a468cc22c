"""
Parser
------
Readers for the plain-text quiver (``.quiver``), module (``.mod``) and complex (``.cx``) formats.

Every format is a list of ``key: value`` lines. ``#`` starts a comment and blank lines are ignored.
Problems are reported as :py:class:`FormatError` with the line and column of the offending text.

Quiver::

    field: Q
    vertices: 1 2
    arrows: a: 1 -> 2
    relations: a*b - 2*c*d

Module::

    dim: [1, 1]
    matrix a: [[1]]

Complex::

    degrees: -1 0
    dim -1: [0, 1]
    dim 0: [1, 1]
    matrix 0 a: [[1]]
    d-1: [[0], [1]]
"""

from __future__ import annotations
import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

from pydantic import ValidationError

from . import linear
from .complexes import BoundedComplex
from .fd_algebra import Arrow, FdAlgebra, Quiver, path_algebra
from .modules import Module, ModuleMap

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(\[)|(\])|(,)|(-?\d+(?:/\d+)?))")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class FormatError(ValueError):
    """
    A malformed input file.

    :param message: What is wrong.
    :param line: 1-based line number.
    :param column: 1-based column number.
    :param source: File name used in the message prefix.
    """

    def __init__(self, message: str, line: int, column: int = 1, source: str = "<string>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.source = source


class Entry(NamedTuple):
    key: str
    value: str
    line: int
    column: int
    """
    Column where the value starts.
    """


def _entries(text: str, source: str) -> List[Entry]:
    entries = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            column = len(line) - len(line.lstrip()) + 1
            raise FormatError("Expected 'key: value'", number, column, source)
        key, value = line.split(":", 1)
        column = len(key) + 2 + len(value) - len(value.lstrip())
        entries.append(Entry(key.strip(), value.strip(), number, column))
    return entries


def parse_nested(entry: Entry, source: str) -> Union[List, Fraction]:
    """
    Parse a nested bracket list of integers and fractions such as ``[[1, -1/2], [0, 3]]``.
    """
    text, position = entry.value, 0
    stack: List[List] = []
    result = None
    expect_value = True
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            if not text[position:].strip():
                break
            rest = text[position:].strip()
            raise FormatError(f"Unexpected text {rest!r}", entry.line, entry.column + position, source)
        opening, closing, comma, number = match.groups()
        if opening:
            if not expect_value:
                raise FormatError("Missing ','", entry.line, entry.column + position, source)
            stack.append([])
        elif closing:
            if not stack:
                raise FormatError("Unbalanced ']'", entry.line, entry.column + position, source)
            finished = stack.pop()
            if stack:
                stack[-1].append(finished)
            else:
                result = finished
            expect_value = False
        elif comma:
            if not stack or expect_value:
                raise FormatError("Unexpected ','", entry.line, entry.column + position, source)
            expect_value = True
        else:
            if not stack or not expect_value:
                raise FormatError(f"Unexpected number {number}", entry.line, entry.column + position, source)
            stack[-1].append(Fraction(number))
            expect_value = False
        position = match.end()
    if stack or result is None:
        raise FormatError("Unbalanced '['", entry.line, entry.column, source)
    return result


def _matrix(entry: Entry, shape: Tuple[int, int], field, source: str):
    rows = parse_nested(entry, source)
    if rows and not isinstance(rows[0], list):
        raise FormatError("Expected a list of rows", entry.line, entry.column, source)
    if shape[0] == 0:
        if rows not in ([], [[]]):
            raise FormatError(f"Expected a matrix of shape {shape}", entry.line, entry.column, source)
        return linear.zeros(*shape, field)
    if len(rows) != shape[0] or any(not isinstance(row, list) or len(row) != shape[1] for row in rows):
        raise FormatError(f"Expected a matrix of shape {shape}", entry.line, entry.column, source)
    return linear.matrix(rows, field, shape)


def _unique(entries: List[Entry], source: str) -> Dict[str, Entry]:
    seen: Dict[str, Entry] = {}
    for entry in entries:
        if entry.key in seen:
            raise FormatError(f"Duplicate key {entry.key!r}", entry.line, 1, source)
        seen[entry.key] = entry
    return seen


def _parse_relation(entry: Entry, text: str, offset: int, source: str) -> List[Tuple[Fraction, Tuple[str, ...]]]:
    terms = []
    for match in re.finditer(r"([+-]?)\s*([^+-]+)", text):
        sign, body = match.groups()
        factors = [factor.strip() for factor in body.split("*")]
        coefficient = Fraction(-1 if sign == "-" else 1)
        if factors and re.fullmatch(r"\d+(?:/\d+)?", factors[0]):
            coefficient *= Fraction(factors.pop(0))
        if not factors or not all(_NAME.match(factor) for factor in factors):
            column = entry.column + offset + match.start(2)
            raise FormatError(f"Malformed path {body.strip()!r}", entry.line, column, source)
        terms.append((coefficient, tuple(factors)))
    if not terms:
        raise FormatError("Empty relation", entry.line, entry.column + offset, source)
    return terms


def _split(entry: Entry) -> List[Tuple[int, str]]:
    pieces, start = [], 0
    for part in entry.value.split(","):
        pieces.append((start + len(part) - len(part.lstrip()), part.strip()))
        start += len(part) + 1
    return [(offset, text) for offset, text in pieces if text]


def parse_quiver(text: str, source: str = "<string>", name: str = "A", length_cap: Optional[int] = None) -> FdAlgebra:
    """
    Parse a quiver file into its bound path algebra.

    :param text: File contents.
    :param source: File name used in error messages.
    :param name: Display name of the algebra.
    :param length_cap: Largest path length explored during basis enumeration.
    """
    entries = _unique(_entries(text, source), source)
    for entry in entries.values():
        if entry.key not in ("field", "vertices", "arrows", "relations"):
            raise FormatError(f"Unknown key {entry.key!r}", entry.line, 1, source)
    if "vertices" not in entries:
        raise FormatError("Missing key 'vertices'", 1, 1, source)
    field_entry = entries.get("field")
    try:
        field = linear.make_field(field_entry.value if field_entry else "Q")
    except ValueError as error:
        raise FormatError(str(error), field_entry.line, field_entry.column, source) from error
    vertices = tuple(entries["vertices"].value.split())
    arrows = []
    if "arrows" in entries:
        entry = entries["arrows"]
        for offset, piece in _split(entry):
            match = re.fullmatch(r"([A-Za-z_]\w*)\s*:\s*(\S+)\s*->\s*(\S+)", piece)
            if match is None:
                raise FormatError(f"Malformed arrow {piece!r}", entry.line, entry.column + offset, source)
            arrows.append(Arrow(name=match.group(1), source=match.group(2), target=match.group(3)))
    try:
        quiver = Quiver(vertices=vertices, arrows=tuple(arrows))
    except ValidationError as error:
        line = entries["arrows"].line if "arrows" in entries else entries["vertices"].line
        raise FormatError(error.errors()[0]["msg"], line, 1, source) from error
    relations = []
    if "relations" in entries:
        entry = entries["relations"]
        for offset, piece in _split(entry):
            relations.append(_parse_relation(entry, piece, offset, source))
    try:
        kwargs = {} if length_cap is None else {"length_cap": length_cap}
        algebra = path_algebra(quiver, relations, field, name=name, **kwargs)
    except ValueError as error:
        entry = entries.get("relations", entries["vertices"])
        raise FormatError(str(error), entry.line, entry.column, source) from error
    logger.debug(f"Parsed {algebra!r} from {source}")
    return algebra


def _module_from_entries(
    algebra: FdAlgebra, dims_entry: Entry, arrow_entries: Dict[str, Entry], source: str
) -> Module:
    dims = parse_nested(dims_entry, source)
    vertex_count = algebra.vertex_count
    if (
        not isinstance(dims, list)
        or len(dims) != vertex_count
        or any(isinstance(d, list) or d.denominator != 1 or d < 0 for d in dims)
    ):
        raise FormatError(
            f"Expected {vertex_count} non-negative integer dimensions", dims_entry.line, dims_entry.column, source
        )
    dims = [int(d) for d in dims]
    quiver = algebra.quiver
    arrows = {}
    for name, entry in arrow_entries.items():
        try:
            a = quiver.arrow_index(name)
        except ValueError as error:
            raise FormatError(str(error), entry.line, 1, source) from error
        shape = (dims[quiver.target(a)], dims[quiver.source(a)])
        arrows[name] = _matrix(entry, shape, algebra.field, source)
    try:
        return Module.from_representation(algebra, dims, arrows)
    except ValueError as error:
        raise FormatError(str(error), dims_entry.line, 1, source) from error


def parse_module(text: str, algebra: FdAlgebra, source: str = "<string>") -> Module:
    """
    Parse a module file over a path algebra.
    """
    if not algebra.is_path_algebra:
        raise ValueError(f"Algebra {algebra.name} is not a path algebra")
    entries = _entries(text, source)
    dims_entry, arrow_entries = None, {}
    for entry in entries:
        if entry.key == "dim":
            if dims_entry is not None:
                raise FormatError("Duplicate key 'dim'", entry.line, 1, source)
            dims_entry = entry
        elif entry.key.startswith("matrix "):
            name = entry.key[len("matrix ") :].strip()
            if name in arrow_entries:
                raise FormatError(f"Duplicate matrix for arrow {name!r}", entry.line, 1, source)
            arrow_entries[name] = entry
        else:
            raise FormatError(f"Unknown key {entry.key!r}", entry.line, 1, source)
    if dims_entry is None:
        raise FormatError("Missing key 'dim'", 1, 1, source)
    return _module_from_entries(algebra, dims_entry, arrow_entries, source)


def parse_complex(text: str, algebra: FdAlgebra, source: str = "<string>") -> BoundedComplex:
    """
    Parse a bounded complex of modules over a path algebra.
    """
    entries = _entries(text, source)
    degrees_entry = None
    dims: Dict[int, Entry] = {}
    arrows: Dict[int, Dict[str, Entry]] = {}
    differentials: Dict[int, Entry] = {}
    for entry in entries:
        parts = entry.key.split()
        try:
            if parts == ["degrees"]:
                degrees_entry = entry
            elif len(parts) == 2 and parts[0] == "dim":
                dims[int(parts[1])] = entry
            elif len(parts) == 3 and parts[0] == "matrix":
                arrows.setdefault(int(parts[1]), {})[parts[2]] = entry
            elif len(parts) == 1 and parts[0].startswith("d") and parts[0] != "degrees":
                differentials[int(parts[0][1:])] = entry
            else:
                raise FormatError(f"Unknown key {entry.key!r}", entry.line, 1, source)
        except ValueError as error:
            if isinstance(error, FormatError):
                raise
            raise FormatError(f"Malformed degree in key {entry.key!r}", entry.line, 1, source) from error
    if degrees_entry is None:
        raise FormatError("Missing key 'degrees'", 1, 1, source)
    try:
        lo, hi = (int(part) for part in degrees_entry.value.split())
    except ValueError as error:
        raise FormatError("Expected 'degrees: lo hi'", degrees_entry.line, degrees_entry.column, source) from error
    if hi < lo:
        raise FormatError(f"Empty degree range {lo} {hi}", degrees_entry.line, degrees_entry.column, source)
    for degree, entry in list(dims.items()) + list(differentials.items()):
        if not lo <= degree <= hi:
            raise FormatError(f"Degree {degree} outside {lo}..{hi}", entry.line, 1, source)
    terms = []
    for degree in range(lo, hi + 1):
        if degree not in dims:
            raise FormatError(f"Missing 'dim {degree}'", degrees_entry.line, 1, source)
        terms.append(_module_from_entries(algebra, dims[degree], arrows.get(degree, {}), source))
    maps = []
    for k, degree in enumerate(range(lo, hi)):
        source_module, target_module = terms[k], terms[k + 1]
        entry = differentials.get(degree)
        if entry is None:
            maps.append(source_module.zero_map(target_module))
            continue
        matrix = _matrix(entry, (target_module.dim, source_module.dim), algebra.field, source)
        try:
            maps.append(ModuleMap(source_module, target_module, matrix))
        except ValueError as error:
            raise FormatError(str(error), entry.line, entry.column, source) from error
    if hi in differentials:
        entry = differentials[hi]
        raise FormatError(f"Differential d{hi} leaves the degree range", entry.line, 1, source)
    try:
        return BoundedComplex(lo, terms, maps)
    except ValueError as error:
        raise FormatError(str(error), degrees_entry.line, 1, source) from error


def load_quiver(path: Union[str, Path], **kwargs) -> FdAlgebra:
    path = Path(path)
    return parse_quiver(path.read_text(), source=str(path), **kwargs)


def load_module(path: Union[str, Path], algebra: FdAlgebra) -> Module:
    path = Path(path)
    return parse_module(path.read_text(), algebra, source=str(path))


def load_complex(path: Union[str, Path], algebra: FdAlgebra) -> BoundedComplex:
    path = Path(path)
    return parse_complex(path.read_text(), algebra, source=str(path))


def format_matrix(mat) -> str:
    return "[" + ", ".join("[" + ", ".join(row) + "]" for row in linear.to_strings(mat)) + "]"


def format_module(module: Module) -> str:
    """
    Render a module in vertex form in the module file format.
    """
    lines = [f"dim: [{', '.join(str(d) for d in module.vertex_dims)}]"]
    for arrow in module.algebra.quiver.arrows:
        block = module.arrow_matrix(arrow.name)
        if 0 not in block.shape and not linear.is_zero(block):
            lines.append(f"matrix {arrow.name}: {format_matrix(block)}")
    return "\n".join(lines) + "\n"
