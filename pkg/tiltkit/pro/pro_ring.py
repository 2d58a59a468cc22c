"""
Pro-rings
---------
Complete separated topological rings presented as chains of quotients ``R_1 <- R_2 <- ...``.

The base ideals ``U_n = ker(R -> R_n)`` are identified by their level index and a symbolic label;
they are never enumerated. Every chain built here has base ideals generated by a central element,
which makes the right-ideal condition on the topology automatic.
"""

from __future__ import annotations
import logging
from abc import ABC, abstractmethod
from typing import Dict, Hashable, Iterable, Optional, Sequence, Union

import numpy as np

from tiltkit.algebra.fd_algebra import FdAlgebra
from .elements import ProElement
from .levels import AlgebraRing, Element, IntegersMod, LevelRing, MatrixRing, ProductRing

logger = logging.getLogger(__name__)


class ProRing(ABC):
    """
    A countable chain of level rings with surjective transition maps.
    """

    name: str
    is_discrete: bool = False
    is_commutative: bool = True

    @abstractmethod
    def level(self, n: int) -> LevelRing:
        """
        The quotient ``R_n``, for ``n >= 1``.
        """
        raise NotImplementedError

    @abstractmethod
    def reduce(self, element: Element, n: int) -> Element:
        """
        The transition ``q_n: R_(n+1) -> R_n``.
        """
        raise NotImplementedError

    @abstractmethod
    def lift_to(self, element: Element, source: int, target: int) -> Element:
        """
        A fixed set-theoretic section of the projection ``R_target -> R_source``.
        """
        raise NotImplementedError

    @abstractmethod
    def ideal_label(self, n: int) -> str:
        raise NotImplementedError

    @abstractmethod
    def ideal_generator(self, n: int) -> Optional[ProElement]:
        """
        A central element generating ``U_n`` as a one-sided ideal, ``None`` when ``U_n = 0``.
        """
        raise NotImplementedError

    @abstractmethod
    def random_element(self, rng: np.random.Generator) -> ProElement:
        raise NotImplementedError

    def project(self, element: Element, source: int, target: int) -> Element:
        """
        Apply transitions from level `source` down to level `target`.
        """
        if target > source:
            raise ValueError(f"Cannot project from level {source} up to level {target}")
        for n in range(source - 1, target - 1, -1):
            element = self.reduce(element, n)
        return element

    def lift(self, n: int, element: Element) -> ProElement:
        return ProElement.from_level(self, n, element)

    def constant(self, value: int) -> ProElement:
        return ProElement.constant(self, value)

    @property
    def one(self) -> ProElement:
        return self.constant(1)

    @property
    def zero(self) -> ProElement:
        return self.constant(0)

    def check_chain(self, precision: int):
        """
        Verify that every transition up to `precision` is a unital ring map on additive generators
        and that the base ideals are ideals compatible with the chain.
        """
        for n in range(1, precision):
            upper, lower = self.level(n + 1), self.level(n)
            if self.reduce(upper.one, n) != lower.one:
                raise ValueError(f"Transition {n + 1} -> {n} of {self.name} is not unital")
            generators = upper.additive_generators()
            for a in generators:
                for b in generators:
                    if self.reduce(upper.mul(a, b), n) != lower.mul(self.reduce(a, n), self.reduce(b, n)):
                        raise ValueError(f"Transition {n + 1} -> {n} of {self.name} is not multiplicative")
        for n in range(1, precision + 1):
            generator = self.ideal_generator(n)
            if generator is None:
                continue
            if not self.level(n).is_zero(generator.at(n)):
                raise ValueError(f"Base ideal generator {n} of {self.name} does not vanish at level {n}")
            top = self.level(precision)
            for a in top.additive_generators():
                if top.mul(a, generator.at(precision)) != top.mul(generator.at(precision), a):
                    raise ValueError(f"Base ideal generator {n} of {self.name} is not central")
        logger.debug(f"Checked chain {self.name} up to level {precision}")

    def __repr__(self) -> str:
        return f"ProRing({self.name})"


class AdicProRing(ProRing):
    """
    The ``s``-adic completion of the integers: ``R_n = Z/s^n``.
    """

    def __init__(self, s: int):
        if s < 2:
            raise ValueError(f"s-adic completion needs s >= 2, got {s}")
        self.s = s
        self.name = f"Z_{s}"
        self._levels: Dict[int, IntegersMod] = {}

    def level(self, n: int) -> IntegersMod:
        if n < 1:
            raise ValueError(f"Levels start at 1, got {n}")
        if n not in self._levels:
            self._levels[n] = IntegersMod(self.s**n)
        return self._levels[n]

    def reduce(self, element: int, n: int) -> int:
        return element % self.s**n

    def lift_to(self, element: int, source: int, target: int) -> int:
        return element % self.s**source

    def ideal_label(self, n: int) -> str:
        return f"{self.s}^{n}Z_{self.s}"

    def ideal_generator(self, n: int) -> ProElement:
        return self.constant(self.s**n)

    def random_element(self, rng: np.random.Generator) -> ProElement:
        """
        An element with random ``s``-adic digits, generally not an integer.
        """
        seed = int(rng.integers(0, 2**63))
        digits = []
        digit_rng = np.random.Generator(np.random.Philox(seed))

        def producer(n: int) -> int:
            while len(digits) < n:
                digits.append(int(digit_rng.integers(0, self.s)))
            return sum(digit * self.s**k for k, digit in enumerate(digits[:n]))

        return ProElement(self, producer, label=f"digits({seed})")


class DiscreteProRing(ProRing):
    """
    A ring with the discrete topology: every level is the ring itself and ``U_n = 0``.
    """

    is_discrete = True

    def __init__(self, ring: LevelRing, commutative: bool = True):
        self.ring = ring
        self.name = ring.name
        self.is_commutative = commutative

    def level(self, n: int) -> LevelRing:
        if n < 1:
            raise ValueError(f"Levels start at 1, got {n}")
        return self.ring

    def reduce(self, element: Element, n: int) -> Element:
        return element

    def lift_to(self, element: Element, source: int, target: int) -> Element:
        return element

    def ideal_label(self, n: int) -> str:
        return "0"

    def ideal_generator(self, n: int) -> None:
        return None

    def random_element(self, rng: np.random.Generator) -> ProElement:
        return self.lift(1, self.ring.sample(rng))


class MatrixProRing(ProRing):
    """
    Square matrices with rows and columns indexed by a finite set, over a base pro-ring.
    """

    is_commutative = False

    def __init__(self, base: ProRing, index: Sequence[Hashable]):
        self.base = base
        self.index = tuple(index)
        self.size = len(self.index)
        self.is_discrete = base.is_discrete
        self.name = f"M{self.size}({base.name})"
        self._levels: Dict[int, MatrixRing] = {}

    def level(self, n: int) -> MatrixRing:
        if n not in self._levels:
            self._levels[n] = MatrixRing(self.base.level(n), self.size)
        return self._levels[n]

    def _entrywise(self, element, function):
        return tuple(tuple(function(entry) for entry in row) for row in element)

    def reduce(self, element, n: int):
        return self._entrywise(element, lambda entry: self.base.reduce(entry, n))

    def lift_to(self, element, source: int, target: int):
        return self._entrywise(element, lambda entry: self.base.lift_to(entry, source, target))

    def ideal_label(self, n: int) -> str:
        return f"M{self.size}({self.base.ideal_label(n)})"

    def ideal_generator(self, n: int) -> Optional[ProElement]:
        generator = self.base.ideal_generator(n)
        if generator is None:
            return None
        return ProElement(self, lambda m: self.level(m).scalar_matrix(generator.at(m)), label=f"{generator.label}*1")

    def random_element(self, rng: np.random.Generator) -> ProElement:
        entries = [[self.base.random_element(rng) for _ in range(self.size)] for _ in range(self.size)]
        return ProElement(self, lambda n: tuple(tuple(entry.at(n) for entry in row) for row in entries), "random")

    def unit_matrix(self, row: int, col: int, value: Optional[ProElement] = None) -> ProElement:
        """
        The matrix unit ``E_(row, col)``, scaled by `value` when given.
        """

        def producer(n: int):
            level = self.level(n)
            return level.unit_matrix(row, col, None if value is None else value.at(n))

        return ProElement(self, producer, label=f"E{row + 1}{col + 1}")

    def from_entries(self, entries: Sequence[Sequence[Union[ProElement, int]]]) -> ProElement:
        elements = [
            [entry if isinstance(entry, ProElement) else self.base.constant(entry) for entry in row] for row in entries
        ]
        if len(elements) != self.size or any(len(row) != self.size for row in elements):
            raise ValueError(f"Matrix over {self.name} must be {self.size} x {self.size}")
        return ProElement(self, lambda n: tuple(tuple(entry.at(n) for entry in row) for row in elements), "matrix")


class ProductProRing(ProRing):
    """
    A finite product of pro-rings, levels multiplied componentwise.
    """

    def __init__(self, factors: Sequence[ProRing]):
        if not factors:
            raise ValueError("A product pro-ring needs at least one factor")
        self.factors = tuple(factors)
        self.is_discrete = all(factor.is_discrete for factor in self.factors)
        self.is_commutative = all(factor.is_commutative for factor in self.factors)
        self.name = " x ".join(factor.name for factor in self.factors)
        self._levels: Dict[int, ProductRing] = {}

    def level(self, n: int) -> ProductRing:
        if n not in self._levels:
            self._levels[n] = ProductRing([factor.level(n) for factor in self.factors])
        return self._levels[n]

    def reduce(self, element, n: int):
        return tuple(factor.reduce(part, n) for factor, part in zip(self.factors, element))

    def lift_to(self, element, source: int, target: int):
        return tuple(factor.lift_to(part, source, target) for factor, part in zip(self.factors, element))

    def ideal_label(self, n: int) -> str:
        return " x ".join(factor.ideal_label(n) for factor in self.factors)

    def ideal_generator(self, n: int) -> Optional[ProElement]:
        generators = [factor.ideal_generator(n) for factor in self.factors]
        if all(generator is None for generator in generators):
            return None

        def producer(m: int):
            return tuple(
                factor.level(m).zero if generator is None else generator.at(m)
                for factor, generator in zip(self.factors, generators)
            )

        return ProElement(self, producer, label="u")

    def random_element(self, rng: np.random.Generator) -> ProElement:
        parts = [factor.random_element(rng) for factor in self.factors]
        return ProElement(self, lambda n: tuple(part.at(n) for part in parts), "random")

    def component(self, element: ProElement, k: int) -> ProElement:
        return ProElement(self.factors[k], lambda n: element.at(n)[k], label=f"{element.label}[{k}]")


def make_s_completion(s: int) -> AdicProRing:
    """
    The chain ``Z/s <- Z/s^2 <- ...`` with reduction maps.
    """
    return AdicProRing(s)


def make_discrete(ring: Union[LevelRing, FdAlgebra]) -> DiscreteProRing:
    """
    The constant chain of a ring; finite-dimensional algebras are wrapped as level rings.
    """
    if isinstance(ring, FdAlgebra):
        return DiscreteProRing(AlgebraRing(ring), commutative=False)
    return DiscreteProRing(ring, commutative=not isinstance(ring, MatrixRing))


def make_matrix_pro_ring(base: ProRing, index: Iterable[Hashable]) -> MatrixProRing:
    """
    Matrices over `base` with rows and columns indexed by the nonempty finite set `index`.
    """
    index = tuple(index)
    if not index:
        raise ValueError("Matrix pro-ring needs a nonempty index set")
    return MatrixProRing(base, index)


def make_product(factors: Sequence[ProRing]) -> ProductProRing:
    return ProductProRing(factors)


def levels_match(ring: ProRing, other: ProRing, precision: int) -> bool:
    """
    Whether two finite chains have equal level rings and equal transitions up to `precision`.

    Transitions are additive, so they are compared on additive generators.
    """
    for n in range(1, precision + 1):
        if ring.level(n) != other.level(n):
            return False
        if n < precision:
            for element in ring.level(n + 1).additive_generators():
                if ring.reduce(element, n) != other.reduce(element, n):
                    return False
    return True
