"""
Presentation
------------
Finitely presented contramodules over a pro-ring.

A contramodule is the cokernel of a map of free contramodules ``R[[Y]] -> R[[X]]`` with finite
``X`` and ``Y``; the map is given by the images of the generators of ``Y``. Its level-``n``
snapshot ``C/(U_n ⋌ C)`` is the finitely presented abelian group ``R_n[X]`` modulo the left
``R_n``-span of the relations, computed with integer Smith forms.
"""

from __future__ import annotations
import logging
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from tiltkit.algebra.integers import ZMap, ZModule
from tiltkit.algebra.types import IntVector
from tiltkit.pro.elements import FreeContraElement, Snapshot
from tiltkit.pro.levels import Element, LevelRing
from tiltkit.pro.pro_ring import ProRing

logger = logging.getLogger(__name__)

Terms = Sequence[Tuple[Element, IntVector]]
"""
A finite formal combination ``sum r_k·c_k`` at one level: ring elements paired with group elements.
"""


class Contramodule:
    """
    The contramodule ``R[[X]] / (image of R[[Y]])``.

    :param ring: The pro-ring acting.
    :param generators: The finite set ``X``.
    :param relations: Image in ``R[[X]]`` of each generator of ``Y``.
    :param name: Display name.
    """

    def __init__(
        self,
        ring: ProRing,
        generators: Sequence[Hashable],
        relations: Optional[Mapping[Hashable, FreeContraElement]] = None,
        name: str = "C",
    ):
        self.ring = ring
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError(f"Contramodule {name} has repeated generators")
        self.relations: Dict[Hashable, FreeContraElement] = dict(relations or {})
        for key, relation in self.relations.items():
            if relation.ring is not ring:
                raise ValueError(f"Relation {key!r} lives over {relation.ring.name}, not {ring.name}")
            if relation.index != self.generators:
                raise ValueError(f"Relation {key!r} is not a combination of the generators {self.generators}")
        self.name = name
        self._level_groups: Dict[int, ZModule] = {}
        self._transitions: Dict[int, ZMap] = {}

    @classmethod
    def free(cls, ring: ProRing, generators: Sequence[Hashable], name: Optional[str] = None) -> Contramodule:
        generators = tuple(generators)
        return cls(ring, generators, name=name or f"{ring.name}[[{','.join(map(str, generators))}]]")

    @classmethod
    def zero(cls, ring: ProRing) -> Contramodule:
        return cls(ring, (), name="0")

    @classmethod
    def cokernel(
        cls,
        ring: ProRing,
        generators: Sequence[Hashable],
        relations: Mapping[Hashable, Mapping[Hashable, int]],
        name: str = "C",
    ) -> Contramodule:
        """
        A contramodule with integer relation coefficients, e.g. ``{"b": {"a": 2}}`` for ``b -> 2a``.
        """
        generators = tuple(generators)
        elements = {
            key: FreeContraElement.from_coefficients(ring, generators, coefficients)
            for key, coefficients in relations.items()
        }
        return cls(ring, generators, elements, name=name)

    @property
    def is_free(self) -> bool:
        return not self.relations

    def _width(self, n: int) -> int:
        return len(self._orders(n))

    def _level(self, n: int) -> LevelRing:
        return self.ring.level(n)

    def _orders(self, n: int) -> Tuple[int, ...]:
        orders = self._level(n).additive_orders
        if orders is None:
            raise ValueError(f"Level {n} of {self.ring.name} has no finitely generated additive group")
        return orders

    def free_coordinates(self, n: int, snapshot: Snapshot) -> IntVector:
        """
        Coordinates of a level-``n`` element of ``R_n[X]`` on the generators ``(x, basis element)``.
        """
        level, width = self._level(n), self._width(n)
        data = [0] * (len(self.generators) * width)
        for key, value in snapshot.items():
            position = self.generators.index(key)
            data[position * width : (position + 1) * width] = level.coordinates(value)
        return tuple(data)

    def snapshot(self, n: int, coordinates: Sequence[int]) -> Snapshot:
        """
        The element of ``R_n[X]`` with the given generator coordinates.
        """
        level, width = self._level(n), self._width(n)
        result = {}
        for position, key in enumerate(self.generators):
            value = level.from_coordinates(coordinates[position * width : (position + 1) * width])
            if not level.is_zero(value):
                result[key] = value
        return result

    def _left_multiple(self, n: int, factor: Element, snapshot: Snapshot) -> Snapshot:
        level = self._level(n)
        return {key: level.mul(factor, value) for key, value in snapshot.items()}

    def level_group(self, n: int) -> ZModule:
        """
        ``C/(U_n ⋌ C)`` as an abelian group.
        """
        if n in self._level_groups:
            return self._level_groups[n]
        orders = self._orders(n)
        width = len(orders)
        size = len(self.generators) * width
        relations: List[IntVector] = []
        for position in range(len(self.generators)):
            for j, order in enumerate(orders):
                if order:
                    relations.append(tuple(order if k == position * width + j else 0 for k in range(size)))
        basis = self._level(n).additive_generators()
        for relation in self.relations.values():
            snapshot = relation.at(n)
            for beta in basis:
                relations.append(self.free_coordinates(n, self._left_multiple(n, beta, snapshot)))
        group = ZModule(size, relations)
        logger.debug(f"Level {n} of {self.name}: {group!r}")
        self._level_groups[n] = group
        return group

    def element(self, n: int, snapshot: Snapshot) -> IntVector:
        """
        The class of an element of ``R_n[X]`` in the level group, as generator coordinates.
        """
        return self.free_coordinates(n, snapshot)

    def multiplication(self, n: int, factor: Element) -> ZMap:
        """
        Left multiplication by a level-``n`` ring element on the level group.
        """
        group = self.level_group(n)
        columns = []
        for k in range(group.generators):
            unit = tuple(int(i == k) for i in range(group.generators))
            columns.append(self.free_coordinates(n, self._left_multiple(n, factor, self.snapshot(n, unit))))
        matrix = [[column[i] for column in columns] for i in range(group.generators)]
        return ZMap(group, group, matrix, check=False)

    def normal_form(self, n: int, vector: Sequence[int]) -> IntVector:
        """
        A fixed representative, in generator coordinates, of the class of `vector` in the level group.
        """
        group = self.level_group(n)
        return group.lift(group.canonical(vector))

    def act(self, n: int, terms: Terms) -> IntVector:
        """
        The contramodule action on a finite combination at level ``n``, as a normal form.
        """
        group = self.level_group(n)
        total = [0] * group.generators
        for factor, vector in terms:
            image = self.multiplication(n, factor)(vector)
            total = [a + b for a, b in zip(total, image)]
        return self.normal_form(n, total)

    def transition(self, n: int) -> ZMap:
        """
        The map ``C/(U_(n+1) ⋌ C) -> C/(U_n ⋌ C)`` induced by reducing coefficients.
        """
        if n in self._transitions:
            return self._transitions[n]
        upper, lower = self.level_group(n + 1), self.level_group(n)
        columns = []
        for k in range(upper.generators):
            unit = tuple(int(i == k) for i in range(upper.generators))
            reduced = {key: self.ring.reduce(value, n) for key, value in self.snapshot(n + 1, unit).items()}
            columns.append(self.free_coordinates(n, reduced))
        matrix = [[column[i] for column in columns] for i in range(lower.generators)]
        self._transitions[n] = ZMap(upper, lower, matrix)
        return self._transitions[n]

    def sample(self, n: int, rng: np.random.Generator) -> IntVector:
        level = self._level(n)
        snapshot = {key: level.sample(rng) for key in self.generators}
        return self.element(n, {key: value for key, value in snapshot.items() if not level.is_zero(value)})

    def check_axioms(self, seed: int, precision: int = 8, instances: int = 100) -> List[Tuple[int, str, int]]:
        """
        Contra-associativity and contra-unitality on seeded random combinations at every level.

        :return: ``(instance, axiom, level)`` for every failure.
        """
        failures = []
        for k in range(instances):
            rng = np.random.Generator(np.random.Philox(key=seed).jumped(k))
            for n in range(1, precision + 1):
                level = self._level(n)
                nested = [
                    (level.sample(rng), [(level.sample(rng), self.sample(n, rng)) for _ in range(2)]) for _ in range(2)
                ]
                inner_first = self.act(n, [(r, self.act(n, inner)) for r, inner in nested])
                flattened = self.act(n, [(level.mul(r, s), c) for r, inner in nested for s, c in inner])
                if inner_first != flattened:
                    failures.append((k, "associativity", n))
                c = self.sample(n, rng)
                if self.act(n, [(level.one, c)]) != self.normal_form(n, c):
                    failures.append((k, "unit", n))
        if failures:
            logger.warning(f"Contramodule axioms for {self.name} failed {len(failures)} times")
        return failures

    def __repr__(self) -> str:
        return f"Contramodule({self.name} over {self.ring.name}, {len(self.generators)} generators)"
