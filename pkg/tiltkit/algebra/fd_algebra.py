"""
Finite-dimensional algebras
---------------------------
Finite-dimensional algebras given by a basis and left multiplication matrices,
and the builder that produces them from a quiver with homogeneous relations.

A written path ``a*b`` means "first ``a``, then ``b``"; as an algebra element it is the product ``b·a``,
so left modules are covariant representations of the quiver and ``P_i = A e_i`` is spanned
by the paths starting at ``i``.
"""

from __future__ import annotations
import logging
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, model_validator
from sympy.polys.matrices import DomainMatrix

from . import linear
from .linear import Field

logger = logging.getLogger(__name__)

PATH_LENGTH_CAP = 64
"""
Largest path length explored when enumerating a basis.
"""
PATHS_PER_DEGREE_CAP = 4096

Path = Tuple[int, Tuple[int, ...]]
"""
A path as its start vertex index and the arrow indices in traversal order.
"""
Relation = Sequence[Tuple[Fraction, Sequence[str]]]
"""
A linear combination of paths, each path given by its arrow names in traversal order.
"""


class Arrow(BaseModel, extra="forbid", frozen=True):
    """
    An arrow of a quiver.
    """

    name: str
    source: str
    target: str


class Quiver(BaseModel, extra="forbid", frozen=True):
    """
    A finite quiver: vertex names and named arrows between them.
    """

    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()

    @model_validator(mode="after")
    def check_endpoints(self) -> Quiver:
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"Duplicate vertex names in {self.vertices}")
        names = [arrow.name for arrow in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate arrow names in {names}")
        for arrow in self.arrows:
            for endpoint in (arrow.source, arrow.target):
                if endpoint not in self.vertices:
                    raise ValueError(f"Arrow {arrow.name!r} refers to unknown vertex {endpoint!r}")
        return self

    def vertex_index(self, name: str) -> int:
        return self.vertices.index(name)

    def arrow_index(self, name: str) -> int:
        for index, arrow in enumerate(self.arrows):
            if arrow.name == name:
                return index
        raise ValueError(f"Unknown arrow {name!r}")

    def source(self, arrow: int) -> int:
        return self.vertex_index(self.arrows[arrow].source)

    def target(self, arrow: int) -> int:
        return self.vertex_index(self.arrows[arrow].target)

    def opposite(self) -> Quiver:
        return Quiver(
            vertices=self.vertices,
            arrows=tuple(Arrow(name=a.name, source=a.target, target=a.source) for a in self.arrows),
        )


class FdAlgebra:
    """
    A finite-dimensional algebra over an exact field.

    :param field: The ground field.
    :param labels: Names of the basis elements.
    :param left_multiplication: For each basis element ``x``, the matrix of ``y -> x·y``.
    :param unit: Coordinates of the unit.
    :param generators: Indices of basis elements generating the algebra; module actions are stored on them.
    :param words: For each basis element, generator positions whose actions, applied in order, give its action.
    :param quiver: The quiver when the algebra is a bound path algebra; the first generators
        are then the vertex idempotents followed by the arrows.
    :param name: Display name.
    """

    def __init__(
        self,
        field: Field,
        labels: Sequence[str],
        left_multiplication: Sequence[DomainMatrix],
        unit: Sequence,
        generators: Sequence[int],
        words: Sequence[Sequence[int]],
        quiver: Optional[Quiver] = None,
        name: str = "A",
    ):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.left_multiplication = list(left_multiplication)
        self.unit = [linear.convert(c, field) if isinstance(c, (int, Fraction)) else c for c in unit]
        self.generators = tuple(generators)
        self.words = tuple(tuple(word) for word in words)
        self.quiver = quiver
        self.name = name
        self._opposite: Optional[FdAlgebra] = None
        if len(self.left_multiplication) != self.dim or len(self.words) != self.dim:
            raise ValueError(f"Algebra {name} needs one multiplication matrix and one word per basis element")

    @classmethod
    def ground(cls, field: Field) -> FdAlgebra:
        """
        The field itself as a one-dimensional algebra.
        """
        return cls(field, ["1"], [linear.identity(1, field)], [1], [0], [[0]], name=linear.field_name(field))

    @classmethod
    def from_structure(
        cls, field: Field, labels: Sequence[str], products: Sequence[Sequence[Sequence]], unit: Sequence, name: str
    ) -> FdAlgebra:
        """
        Build an algebra from structure constants; every basis element becomes a generator.

        :param products: ``products[i][j]`` are the coordinates of ``b_i·b_j``.
        """
        size = len(labels)
        left = [
            linear.from_entries([[products[i][j][k] for j in range(size)] for k in range(size)], (size, size), field)
            for i in range(size)
        ]
        return cls(field, labels, left, unit, range(size), [[i] for i in range(size)], name=name)

    @property
    def vertex_count(self) -> int:
        return len(self.quiver.vertices) if self.quiver is not None else 0

    @property
    def is_path_algebra(self) -> bool:
        return self.quiver is not None

    def basis_vector(self, index: int) -> DomainMatrix:
        data = [[self.field.one if i == index else self.field.zero] for i in range(self.dim)]
        return linear.from_entries(data, (self.dim, 1), self.field)

    def unit_vector(self) -> DomainMatrix:
        return linear.from_entries([[c] for c in self.unit], (self.dim, 1), self.field)

    def multiply(self, left: DomainMatrix, right: DomainMatrix) -> DomainMatrix:
        """
        Product of two elements given as coordinate columns.
        """
        return linear.matmul(self.left_action(left), right)

    def left_action(self, element: DomainMatrix) -> DomainMatrix:
        coefficients = [row[0] for row in linear.entries(element)]
        return linear.linear_combination(coefficients, self.left_multiplication, (self.dim, self.dim), self.field)

    @cached_property
    def right_multiplication(self) -> List[DomainMatrix]:
        """
        For each basis element ``x``, the matrix of ``y -> y·x``.
        """
        columns = [linear.entries(mat) for mat in self.left_multiplication]
        return [
            linear.from_entries(
                [[columns[j][k][x] for j in range(self.dim)] for k in range(self.dim)], (self.dim, self.dim), self.field
            )
            for x in range(self.dim)
        ]

    def idempotent(self, vertex: int) -> int:
        """
        Basis index of the trivial path at `vertex`.
        """
        if self.quiver is None:
            raise ValueError(f"Algebra {self.name} has no vertices")
        return self.generators[vertex]

    def vertex_support(self, index: int) -> Tuple[int, int]:
        """
        Source and target vertex of a basis element of a path algebra.
        """
        source = next(v for v in range(self.vertex_count) if self._fixes(self.right_multiplication, v, index))
        target = next(v for v in range(self.vertex_count) if self._fixes(self.left_multiplication, v, index))
        return source, target

    def _fixes(self, mats: Sequence[DomainMatrix], vertex: int, index: int) -> bool:
        col = linear.entries(linear.column(mats[self.idempotent(vertex)], index))
        return all(col[k][0] == (self.field.one if k == index else self.field.zero) for k in range(self.dim))

    def opposite(self) -> FdAlgebra:
        """
        The opposite algebra, cached so that taking it twice gives back this object.
        Generators keep their positions; words are reversed and start with the target idempotent.
        """
        if self._opposite is None:
            if self.quiver is not None:
                words = []
                for index in range(self.dim):
                    word = self.words[index]
                    _, target = self.vertex_support(index)
                    words.append([target] + list(reversed(word[1:])))
                quiver = self.quiver.opposite()
            else:
                words, quiver = [list(reversed(word)) for word in self.words], None
            name = self.name[:-3] if self.name.endswith("^op") else f"{self.name}^op"
            opposite = FdAlgebra(
                self.field,
                self.labels,
                self.right_multiplication,
                self.unit,
                self.generators,
                words,
                quiver=quiver,
                name=name,
            )
            opposite._opposite = self
            self._opposite = opposite
        return self._opposite

    def check_structure(self):
        """
        Verify associativity and unitality of the stored multiplication.
        """
        identity = linear.identity(self.dim, self.field)
        if not linear.equal(self.left_action(self.unit_vector()), identity):
            raise ValueError(f"Unit of {self.name} does not act as the identity")
        for x, y in product(range(self.dim), repeat=2):
            xy = linear.column(self.left_multiplication[x], y)
            if not linear.equal(
                linear.matmul(self.left_multiplication[x], self.left_multiplication[y]), self.left_action(xy)
            ):
                pair = f"{self.labels[x]}, {self.labels[y]}"
                raise ValueError(f"Multiplication of {self.name} is not associative at {pair}")

    def __repr__(self) -> str:
        return f"FdAlgebra({self.name}, dim={self.dim}, field={linear.field_name(self.field)})"


def _compose_path(quiver: Quiver, first: Path, then: Path) -> Optional[Path]:
    start, arrows = first
    end = quiver.target(arrows[-1]) if arrows else start
    if end != then[0]:
        return None
    return start, arrows + then[1]


def _path_label(quiver: Quiver, path: Path) -> str:
    start, arrows = path
    if not arrows:
        return f"e{quiver.vertices[start]}"
    return "*".join(quiver.arrows[a].name for a in arrows)


def _paths_of_length(quiver: Quiver, length: int) -> List[Path]:
    paths: List[Path] = [(v, ()) for v in range(len(quiver.vertices))]
    for _ in range(length):
        paths = [
            (start, arrows + (a,))
            for start, arrows in paths
            for a in range(len(quiver.arrows))
            if quiver.source(a) == (quiver.target(arrows[-1]) if arrows else start)
        ]
        if len(paths) > PATHS_PER_DEGREE_CAP:
            raise ValueError(f"Quiver has more than {PATHS_PER_DEGREE_CAP} paths of length {length}")
    return sorted(paths, key=lambda path: (path[1], path[0]))


def _parse_relation(quiver: Quiver, relation: Relation) -> Dict[Tuple[int, int], List[Tuple[Fraction, Path]]]:
    pieces: Dict[Tuple[int, int], List[Tuple[Fraction, Path]]] = {}
    lengths = set()
    for coefficient, names in relation:
        if not names:
            raise ValueError("Relations must not contain trivial paths")
        arrows = tuple(quiver.arrow_index(name) for name in names)
        for first, second in zip(arrows, arrows[1:]):
            if quiver.target(first) != quiver.source(second):
                raise ValueError(f"{'*'.join(names)} is not a path")
        lengths.add(len(arrows))
        key = (quiver.source(arrows[0]), quiver.target(arrows[-1]))
        pieces.setdefault(key, []).append((Fraction(coefficient), (key[0], arrows)))
    if len(lengths) > 1:
        raise ValueError(f"Relation mixes path lengths {sorted(lengths)}; only homogeneous relations are supported")
    if lengths and min(lengths) < 2:
        raise ValueError("Relations must have path length at least 2")
    return pieces


def path_algebra(
    quiver: Quiver,
    relations: Sequence[Relation] = (),
    field: Field = None,
    name: str = "A",
    length_cap: int = PATH_LENGTH_CAP,
) -> FdAlgebra:
    """
    The bound path algebra of `quiver` modulo the ideal generated by `relations`.

    Relations are split by start and end vertex. The basis is enumerated degree by degree:
    in each degree the ideal is spanned by the paths ``u*r*v`` and standard monomials are
    the paths that are not leading terms (largest in lexicographic order) after row reduction.
    Enumeration stops at the first degree where everything lies in the ideal.

    :param quiver: The quiver.
    :param relations: Homogeneous linear combinations of paths of length at least 2.
    :param field: Ground field, ``QQ`` by default.
    :param name: Display name.
    :param length_cap: Largest path length explored; exceeding it is an error.
    :return: The algebra, with idempotents then arrows as generators.
    """
    if field is None:
        field = linear.make_field("Q")
    pieces = [piece for relation in relations for piece in _parse_relation(quiver, relation).values()]
    by_degree: Dict[int, List[List[Tuple[Fraction, Path]]]] = {}
    for piece in pieces:
        by_degree.setdefault(len(piece[0][1][1]), []).append(piece)

    # normal forms: path -> {standard path: coefficient}
    normal: Dict[Path, Dict[Path, object]] = {}
    standard: List[Path] = []
    length = 0
    while True:
        if length > length_cap:
            raise ValueError(f"Path algebra {name} is not finite-dimensional below path length {length_cap}")
        paths = _paths_of_length(quiver, length)
        if not paths:
            break
        generators = []
        for degree, degree_pieces in by_degree.items():
            if degree > length:
                continue
            for left_length in range(length - degree + 1):
                lefts = _paths_of_length(quiver, left_length)
                rights = _paths_of_length(quiver, length - degree - left_length)
                for piece in degree_pieces:
                    for u, v in product(lefts, rights):
                        combination = {}
                        for coefficient, path in piece:
                            joined = _compose_path(quiver, u, path)
                            joined = joined and _compose_path(quiver, joined, v)
                            if joined is not None:
                                combination[joined] = combination.get(joined, 0) + coefficient
                        if any(combination.values()):
                            generators.append(combination)
        order = list(reversed(paths))
        position = {path: i for i, path in enumerate(order)}
        rows = [[linear.convert(combo.get(path, 0), field) for path in order] for combo in generators]
        reduced, pivots = linear.rref(linear.from_entries(rows, (len(rows), len(order)), field))
        data = linear.entries(reduced)
        leading = {order[p]: k for k, p in enumerate(pivots)}
        degree_standard = [path for path in paths if path not in leading]
        for path in paths:
            if path in leading:
                row = data[leading[path]]
                normal[path] = {other: -row[position[other]] for other in degree_standard if row[position[other]]}
            else:
                normal[path] = {path: field.one}
        logger.debug(f"{name}: {len(degree_standard)} standard paths of length {length}")
        if not degree_standard:
            break
        standard.extend(degree_standard)
        length += 1

    vertices = len(quiver.vertices)
    standard.sort(key=lambda path: (len(path[1]), path[1], path[0]))
    index = {path: i for i, path in enumerate(standard)}
    dim = len(standard)
    left = []
    for x in standard:
        data = [[field.zero] * dim for _ in range(dim)]
        for j, y in enumerate(standard):
            joined = _compose_path(quiver, y, x)
            if joined is None or joined not in normal:
                continue
            for path, coefficient in normal[joined].items():
                data[index[path]][j] += coefficient
        left.append(linear.from_entries(data, (dim, dim), field))
    generator_indices = [index[(v, ())] for v in range(vertices)]
    for a in range(len(quiver.arrows)):
        path = (quiver.source(a), (a,))
        if path not in index:
            raise ValueError(f"Arrow {quiver.arrows[a].name!r} lies in the relation ideal")
        generator_indices.append(index[path])
    words = []
    for start, arrows in standard:
        words.append([start] + [vertices + a for a in arrows])
    unit = [field.one if not path[1] else field.zero for path in standard]
    algebra = FdAlgebra(
        field,
        [_path_label(quiver, path) for path in standard],
        left,
        unit,
        generator_indices,
        words,
        quiver=quiver,
        name=name,
    )
    logger.debug(f"Built {algebra!r}")
    return algebra


def linear_quiver(count: int) -> Quiver:
    """
    The quiver ``1 -> 2 -> ... -> count`` with arrows ``a1, a2, ...``.
    """
    vertices = tuple(str(i) for i in range(1, count + 1))
    arrows = tuple(Arrow(name=f"a{i}", source=str(i), target=str(i + 1)) for i in range(1, count))
    return Quiver(vertices=vertices, arrows=arrows)


def dual_numbers(field: Field = None) -> FdAlgebra:
    """
    The algebra ``k[x]/(x^2)`` as a one-loop quiver with ``x*x = 0``.
    """
    quiver = Quiver(vertices=("1",), arrows=(Arrow(name="x", source="1", target="1"),))
    return path_algebra(quiver, [[(Fraction(1), ("x", "x"))]], field, name="D")
