"""
Levels
------
The quotient rings ``R_n`` a pro-ring is made of.

Every level ring has a finite description and hashable elements, so level snapshots can be
stored in dictionaries and compared with ``==``. Rings whose additive group is finitely generated
also expose an additive basis with orders; contramodule presentations are built from that basis.
"""

from __future__ import annotations
import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Any, Iterator, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from tiltkit.algebra import linear
from tiltkit.algebra.fd_algebra import FdAlgebra
from tiltkit.algebra.types import IntVector

logger = logging.getLogger(__name__)

Element = Any
"""
An element of a level ring: an int, or a (nested) tuple for structured rings.
"""


class LevelRing(ABC):
    """
    A ring with a finite description.
    """

    name: str

    @property
    @abstractmethod
    def zero(self) -> Element:
        raise NotImplementedError

    @property
    @abstractmethod
    def one(self) -> Element:
        raise NotImplementedError

    @abstractmethod
    def add(self, left: Element, right: Element) -> Element:
        raise NotImplementedError

    @abstractmethod
    def mul(self, left: Element, right: Element) -> Element:
        raise NotImplementedError

    @abstractmethod
    def neg(self, element: Element) -> Element:
        raise NotImplementedError

    @abstractmethod
    def scalar(self, value: int) -> Element:
        """
        The image of an integer under the unique ring map from ``Z``.
        """
        raise NotImplementedError

    @property
    @abstractmethod
    def additive_orders(self) -> Optional[Tuple[int, ...]]:
        """
        Orders of an additive basis (0 for an infinite cyclic summand),
        or ``None`` if the additive group is not finitely generated.
        """
        raise NotImplementedError

    @abstractmethod
    def coordinates(self, element: Element) -> IntVector:
        raise NotImplementedError

    @abstractmethod
    def from_coordinates(self, coordinates: Sequence[int]) -> Element:
        raise NotImplementedError

    @abstractmethod
    def sample(self, rng) -> Element:
        """
        A random element drawn from a ``numpy.random.Generator``.
        """
        raise NotImplementedError

    def sub(self, left: Element, right: Element) -> Element:
        return self.add(left, self.neg(right))

    def is_zero(self, element: Element) -> bool:
        return element == self.zero

    def sum(self, elements: Sequence[Element]) -> Element:
        total = self.zero
        for element in elements:
            total = self.add(total, element)
        return total

    def additive_generators(self) -> List[Element]:
        orders = self._integral_orders()
        return [self.from_coordinates([int(i == j) for i in range(len(orders))]) for j in range(len(orders))]

    def _integral_orders(self) -> Tuple[int, ...]:
        orders = self.additive_orders
        if orders is None:
            raise ValueError(f"Additive group of {self.name} is not finitely generated")
        return orders

    @property
    def is_finite(self) -> bool:
        orders = self.additive_orders
        return orders is not None and all(order > 0 for order in orders)

    def elements(self) -> Iterator[Element]:
        if not self.is_finite:
            raise ValueError(f"Cannot enumerate the infinite ring {self.name}")
        for coordinates in product(*(range(order) for order in self.additive_orders)):
            yield self.from_coordinates(coordinates)

    def __repr__(self) -> str:
        return self.name


class IntegersMod(LevelRing):
    """
    ``Z/m`` with elements the residues ``0, ..., m - 1``.
    """

    def __init__(self, modulus: int):
        if modulus < 1:
            raise ValueError(f"Modulus must be positive, got {modulus}")
        self.modulus = modulus
        self.name = f"Z/{modulus}"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 % self.modulus

    def add(self, left: int, right: int) -> int:
        return (left + right) % self.modulus

    def mul(self, left: int, right: int) -> int:
        return (left * right) % self.modulus

    def neg(self, element: int) -> int:
        return (-element) % self.modulus

    def scalar(self, value: int) -> int:
        return value % self.modulus

    @property
    def additive_orders(self) -> Tuple[int, ...]:
        return (self.modulus,)

    def coordinates(self, element: int) -> IntVector:
        return (element,)

    def from_coordinates(self, coordinates: Sequence[int]) -> int:
        return int(coordinates[0]) % self.modulus

    def sample(self, rng) -> int:
        return int(rng.integers(0, self.modulus))

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegersMod) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("Z/", self.modulus))


class Integers(LevelRing):
    """
    The ring of integers, the level ring of the discrete pro-ring ``Z``.
    """

    name = "Z"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, left: int, right: int) -> int:
        return left + right

    def mul(self, left: int, right: int) -> int:
        return left * right

    def neg(self, element: int) -> int:
        return -element

    def scalar(self, value: int) -> int:
        return value

    @property
    def additive_orders(self) -> Tuple[int, ...]:
        return (0,)

    def coordinates(self, element: int) -> IntVector:
        return (element,)

    def from_coordinates(self, coordinates: Sequence[int]) -> int:
        return int(coordinates[0])

    def sample(self, rng) -> int:
        return int(rng.integers(-8, 9))

    def __eq__(self, other) -> bool:
        return isinstance(other, Integers)

    def __hash__(self) -> int:
        return hash("Z")


class MatrixRing(LevelRing):
    """
    Square matrices over a level ring; elements are tuples of rows.

    Additive coordinates run over the entries in row-major order, each entry contributing
    the coordinates of the base ring.
    """

    def __init__(self, base: LevelRing, size: int):
        if size < 1:
            raise ValueError(f"Matrix size must be positive, got {size}")
        self.base = base
        self.size = size
        self.name = f"M{size}({base.name})"

    def _build(self, entry) -> Tuple[Tuple[Element, ...], ...]:
        return tuple(tuple(entry(i, j) for j in range(self.size)) for i in range(self.size))

    @property
    def zero(self):
        return self._build(lambda i, j: self.base.zero)

    @property
    def one(self):
        return self._build(lambda i, j: self.base.one if i == j else self.base.zero)

    def unit_matrix(self, row: int, col: int, value: Element = None):
        """
        The matrix with `value` (default 1) at ``(row, col)`` and zeros elsewhere.
        """
        value = self.base.one if value is None else value
        return self._build(lambda i, j: value if (i, j) == (row, col) else self.base.zero)

    def scalar_matrix(self, value: Element):
        return self._build(lambda i, j: value if i == j else self.base.zero)

    def add(self, left, right):
        return self._build(lambda i, j: self.base.add(left[i][j], right[i][j]))

    def mul(self, left, right):
        return self._build(
            lambda i, j: self.base.sum([self.base.mul(left[i][k], right[k][j]) for k in range(self.size)])
        )

    def neg(self, element):
        return self._build(lambda i, j: self.base.neg(element[i][j]))

    def scalar(self, value: int):
        return self._build(lambda i, j: self.base.scalar(value) if i == j else self.base.zero)

    @property
    def additive_orders(self) -> Optional[Tuple[int, ...]]:
        orders = self.base.additive_orders
        return None if orders is None else orders * (self.size * self.size)

    def coordinates(self, element) -> IntVector:
        return tuple(value for row in element for entry in row for value in self.base.coordinates(entry))

    def from_coordinates(self, coordinates: Sequence[int]):
        width = len(self.base._integral_orders())

        def entry(i: int, j: int):
            start = (i * self.size + j) * width
            return self.base.from_coordinates(coordinates[start : start + width])

        return self._build(entry)

    def sample(self, rng):
        return self._build(lambda i, j: self.base.sample(rng))

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixRing) and other.size == self.size and other.base == self.base

    def __hash__(self) -> int:
        return hash(("M", self.size, self.base))


class ProductRing(LevelRing):
    """
    A finite product of level rings with componentwise operations.
    """

    def __init__(self, factors: Sequence[LevelRing]):
        if not factors:
            raise ValueError("A product ring needs at least one factor")
        self.factors = tuple(factors)
        self.name = " x ".join(factor.name for factor in self.factors)

    @property
    def zero(self):
        return tuple(factor.zero for factor in self.factors)

    @property
    def one(self):
        return tuple(factor.one for factor in self.factors)

    def add(self, left, right):
        return tuple(factor.add(a, b) for factor, a, b in zip(self.factors, left, right))

    def mul(self, left, right):
        return tuple(factor.mul(a, b) for factor, a, b in zip(self.factors, left, right))

    def neg(self, element):
        return tuple(factor.neg(a) for factor, a in zip(self.factors, element))

    def scalar(self, value: int):
        return tuple(factor.scalar(value) for factor in self.factors)

    @property
    def additive_orders(self) -> Optional[Tuple[int, ...]]:
        orders: Tuple[int, ...] = ()
        for factor in self.factors:
            if factor.additive_orders is None:
                return None
            orders += factor.additive_orders
        return orders

    def coordinates(self, element) -> IntVector:
        return tuple(value for factor, a in zip(self.factors, element) for value in factor.coordinates(a))

    def from_coordinates(self, coordinates: Sequence[int]):
        parts, start = [], 0
        for factor in self.factors:
            width = len(factor._integral_orders())
            parts.append(factor.from_coordinates(coordinates[start : start + width]))
            start += width
        return tuple(parts)

    def sample(self, rng):
        return tuple(factor.sample(rng) for factor in self.factors)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProductRing) and other.factors == self.factors

    def __hash__(self) -> int:
        return hash(("x", self.factors))


class AlgebraRing(LevelRing):
    """
    A finite-dimensional algebra viewed as a level ring; elements are coordinate tuples.

    Over a prime field the additive group is finite with one ``Z/p`` summand per basis vector.
    Over the rationals it is not finitely generated, which is enough for the monad but not
    for contramodule presentations.
    """

    def __init__(self, algebra: FdAlgebra):
        self.algebra = algebra
        self.field = algebra.field
        self.name = algebra.name

    def _vector(self, element) -> DomainMatrix:
        return linear.from_entries([[value] for value in element], (self.algebra.dim, 1), self.field)

    def _element(self, vector: DomainMatrix) -> Tuple:
        return tuple(row[0] for row in linear.entries(vector))

    @cached_property
    def zero(self):
        return tuple(self.field.zero for _ in range(self.algebra.dim))

    @cached_property
    def one(self):
        return self._element(self.algebra.unit_vector())

    def add(self, left, right):
        return tuple(a + b for a, b in zip(left, right))

    def mul(self, left, right):
        return self._element(self.algebra.multiply(self._vector(left), self._vector(right)))

    def neg(self, element):
        return tuple(-a for a in element)

    def scalar(self, value: int):
        return tuple(self.field(value) * a for a in self.one)

    @property
    def additive_orders(self) -> Optional[Tuple[int, ...]]:
        characteristic = self.field.characteristic()
        if characteristic == 0:
            return None
        return (characteristic,) * self.algebra.dim

    def coordinates(self, element) -> IntVector:
        self._integral_orders()
        return tuple(int(linear.to_fraction(a, self.field)) for a in element)

    def from_coordinates(self, coordinates: Sequence[int]):
        return tuple(self.field(int(value)) for value in coordinates)

    def sample(self, rng):
        return tuple(linear.convert(Fraction(int(rng.integers(-3, 4))), self.field) for _ in range(self.algebra.dim))

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraRing) and other.algebra is self.algebra

    def __hash__(self) -> int:
        return hash(("A", id(self.algebra)))
