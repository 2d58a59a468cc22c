"""
Elements
--------
Elements of a pro-ring and zero-convergent formal combinations over it.

Both kinds of element are given by level producers: pure functions ``n -> value at level n``.
Values are memoized per level; memoization is idempotent because producers are deterministic.
"""

from __future__ import annotations
import logging
from typing import TYPE_CHECKING, Callable, Dict, Hashable, Iterable, Mapping, NamedTuple, Sequence, Tuple, Union

if TYPE_CHECKING:
    from .pro_ring import ProRing

logger = logging.getLogger(__name__)


class CountableIndex(NamedTuple):
    """
    The countable index set ``{prefix0, prefix1, ...}``, represented by its naming rule.
    """

    prefix: str = "x"

    def name(self, k: int) -> str:
        return f"{self.prefix}{k}"

    def __contains__(self, key) -> bool:
        return isinstance(key, str) and key.startswith(self.prefix) and key[len(self.prefix) :].isdigit()


IndexSet = Union[Tuple[Hashable, ...], CountableIndex]


def make_index(index: Union[Iterable[Hashable], CountableIndex]) -> IndexSet:
    if isinstance(index, CountableIndex):
        return index
    index = tuple(index)
    if len(set(index)) != len(index):
        raise ValueError(f"Index set has repeated names: {index}")
    return index


class ProElement:
    """
    An element of a pro-ring: a coherent choice of images in every level.

    :param ring: The owning pro-ring.
    :param producer: Level-``n`` value for every ``n >= 1``.
    :param label: Display name.
    """

    def __init__(self, ring: ProRing, producer: Callable[[int], object], label: str = "r"):
        self.ring = ring
        self.producer = producer
        self.label = label
        self._levels: Dict[int, object] = {}

    def at(self, n: int):
        if n < 1:
            raise ValueError(f"Levels start at 1, got {n}")
        if n not in self._levels:
            self._levels.setdefault(n, self.producer(n))
        return self._levels[n]

    @classmethod
    def constant(cls, ring: ProRing, value: int) -> ProElement:
        """
        The image of an integer.
        """
        return cls(ring, lambda n: ring.level(n).scalar(value), label=str(value))

    @classmethod
    def from_level(cls, ring: ProRing, level: int, element) -> ProElement:
        """
        The canonical lift of a level-`level` element: exact below `level`, a fixed section above.
        """

        def producer(n: int):
            if n <= level:
                return ring.project(element, level, n)
            return ring.lift_to(element, level, n)

        return cls(ring, producer, label=f"{element}@{level}")

    def _check(self, other: ProElement):
        if other.ring is not self.ring:
            raise ValueError(f"Pro-ring mismatch: {self.ring.name} and {other.ring.name}")

    def __add__(self, other: ProElement) -> ProElement:
        self._check(other)
        label = f"({self.label}+{other.label})"
        return ProElement(self.ring, lambda n: self.ring.level(n).add(self.at(n), other.at(n)), label)

    def __mul__(self, other: ProElement) -> ProElement:
        self._check(other)
        label = f"{self.label}*{other.label}"
        return ProElement(self.ring, lambda n: self.ring.level(n).mul(self.at(n), other.at(n)), label)

    def __neg__(self) -> ProElement:
        return ProElement(self.ring, lambda n: self.ring.level(n).neg(self.at(n)), f"-{self.label}")

    def __sub__(self, other: ProElement) -> ProElement:
        return self + (-other)

    def is_coherent(self, precision: int) -> bool:
        return all(self.ring.reduce(self.at(n + 1), n) == self.at(n) for n in range(1, precision))

    def equals(self, other: ProElement, precision: int) -> bool:
        """
        Equality at every level up to `precision`.
        """
        self._check(other)
        return all(self.at(n) == other.at(n) for n in range(1, precision + 1))

    def __repr__(self) -> str:
        return f"ProElement({self.label})"


Snapshot = Dict[Hashable, object]
"""
A finitely supported map from an index set to a level ring, zeros dropped.
"""


class FreeContraElement:
    """
    An element of the free contramodule ``R[[X]]``: a zero-convergent family of coefficients.

    :param ring: The owning pro-ring.
    :param index: The index set ``X``.
    :param producer: Level-``n`` coefficients for every ``n >= 1``; must have finite support.
    """

    def __init__(self, ring: ProRing, index: IndexSet, producer: Callable[[int], Mapping[Hashable, object]]):
        self.ring = ring
        self.index = make_index(index)
        self.producer = producer
        self._levels: Dict[int, Snapshot] = {}

    def at(self, n: int) -> Snapshot:
        if n < 1:
            raise ValueError(f"Levels start at 1, got {n}")
        if n not in self._levels:
            level = self.ring.level(n)
            snapshot: Snapshot = {}
            for key, value in self.producer(n).items():
                if key not in self.index:
                    raise ValueError(f"Coefficient at {key!r} lies outside the index set")
                if not level.is_zero(value):
                    snapshot[key] = value
            self._levels.setdefault(n, snapshot)
        return self._levels[n]

    def coefficient(self, key: Hashable, n: int):
        return self.at(n).get(key, self.ring.level(n).zero)

    @classmethod
    def zero(cls, ring: ProRing, index: IndexSet) -> FreeContraElement:
        return cls(ring, index, lambda n: {})

    @classmethod
    def from_coefficients(
        cls, ring: ProRing, index: IndexSet, coefficients: Mapping[Hashable, Union[ProElement, int]]
    ) -> FreeContraElement:
        """
        A combination with globally finite support.
        """
        elements = {
            key: value if isinstance(value, ProElement) else ProElement.constant(ring, value)
            for key, value in coefficients.items()
        }
        return cls(ring, index, lambda n: {key: value.at(n) for key, value in elements.items()})

    @classmethod
    def zero_convergent(
        cls,
        ring: ProRing,
        index: CountableIndex,
        coefficient: Callable[[int], ProElement],
        vanishing: Callable[[int], int],
    ) -> FreeContraElement:
        """
        A family over a countable index set whose coefficients at positions ``k >= vanishing(n)``
        lie in the level-``n`` base ideal.
        """
        return cls(ring, index, lambda n: {index.name(k): coefficient(k).at(n) for k in range(vanishing(n))})

    def _check(self, other: FreeContraElement):
        if other.ring is not self.ring:
            raise ValueError(f"Pro-ring mismatch: {self.ring.name} and {other.ring.name}")
        if other.index != self.index:
            raise ValueError("Index set mismatch")

    def __add__(self, other: FreeContraElement) -> FreeContraElement:
        self._check(other)

        def producer(n: int) -> Snapshot:
            level = self.ring.level(n)
            total = dict(self.at(n))
            for key, value in other.at(n).items():
                total[key] = level.add(total.get(key, level.zero), value)
            return total

        return FreeContraElement(self.ring, self.index, producer)

    def __neg__(self) -> FreeContraElement:
        return FreeContraElement(
            self.ring, self.index, lambda n: {key: self.ring.level(n).neg(value) for key, value in self.at(n).items()}
        )

    def __sub__(self, other: FreeContraElement) -> FreeContraElement:
        return self + (-other)

    def scaled(self, factor: ProElement) -> FreeContraElement:
        """
        Left multiplication of every coefficient by `factor`.
        """
        if factor.ring is not self.ring:
            raise ValueError(f"Pro-ring mismatch: {self.ring.name} and {factor.ring.name}")
        return FreeContraElement(
            self.ring,
            self.index,
            lambda n: {key: self.ring.level(n).mul(factor.at(n), value) for key, value in self.at(n).items()},
        )

    def is_coherent(self, precision: int) -> bool:
        """
        Reducing the level-``n + 1`` coefficients and dropping zeros gives the level-``n`` snapshot.
        """
        for n in range(1, precision):
            level = self.ring.level(n)
            reduced = {key: self.ring.reduce(value, n) for key, value in self.at(n + 1).items()}
            if {key: value for key, value in reduced.items() if not level.is_zero(value)} != self.at(n):
                return False
        return True

    def equals(self, other: FreeContraElement, precision: int) -> bool:
        self._check(other)
        return all(self.at(n) == other.at(n) for n in range(1, precision + 1))

    def support(self, n: int) -> Sequence[Hashable]:
        return list(self.at(n))

    def __repr__(self) -> str:
        return f"FreeContraElement(over {self.ring.name}, {len(self._levels)} levels evaluated)"
