"""
Discrete
--------
Discrete modules, the Hom contramodule, the contratensor product and their adjunction.

A discrete module is stored at a single level ``m``: a finite abelian group on which ``R_m`` acts,
one :py:class:`~.ZMap` per additive generator of ``R_m``. Elements of deeper levels act through
the transition maps, so the annihilator always contains ``U_m``.
"""

from __future__ import annotations
import logging
from typing import Callable, List, NamedTuple, Sequence, Tuple

from tiltkit.algebra.integers import HomGroup, ZMap, ZModule, direct_sum
from tiltkit.algebra.types import IntVector, Side, VerificationError
from tiltkit.pro.elements import FreeContraElement, ProElement
from tiltkit.pro.levels import Element, LevelRing
from tiltkit.pro.pro_ring import ProRing
from .presentation import Contramodule

logger = logging.getLogger(__name__)


def _combine(maps: Sequence[ZMap], coefficients: Sequence[int], group: ZModule) -> ZMap:
    total = group.zero_map(group)
    for coefficient, action in zip(coefficients, maps):
        if coefficient:
            total = total + action.scaled(coefficient)
    return total


class DiscreteModule:
    """
    A module over a pro-ring whose elements are annihilated by ``U_m``.

    :param ring: The pro-ring.
    :param level: The level ``m`` the module is stored at.
    :param group: The underlying finite abelian group.
    :param actions: Action of each additive generator of ``R_m``.
    :param side: Whether the ring acts on the right (for contratensor products) or on the left.
    """

    def __init__(
        self,
        ring: ProRing,
        level: int,
        group: ZModule,
        actions: Sequence[ZMap],
        side: Side = Side.RIGHT,
        name: str = "L",
        check: bool = True,
    ):
        self.ring = ring
        self.level = level
        self.group = group
        self.actions = list(actions)
        self.side = side
        self.name = name
        basis = ring.level(level).additive_generators()
        if len(self.actions) != len(basis):
            raise ValueError(f"Discrete module {name} needs {len(basis)} actions at level {level}")
        if check:
            self.check()

    @property
    def level_ring(self) -> LevelRing:
        return self.ring.level(self.level)

    def check(self):
        level = self.level_ring
        if not self.action_at(self.level, level.one).equals(self.group.identity()):
            raise ValueError(f"Unit does not act as the identity on {self.name}")
        basis = level.additive_generators()
        for a in basis:
            for b in basis:
                product = self.action_at(self.level, level.mul(a, b))
                first, then = (a, b) if self.side is Side.RIGHT else (b, a)
                if not product.equals(self.action_at(self.level, then).compose(self.action_at(self.level, first))):
                    raise ValueError(f"Action on {self.name} is not associative")

    def action_at(self, n: int, element: Element) -> ZMap:
        """
        The action of a level-``n`` ring element, ``n >= level``.
        """
        if n < self.level:
            raise ValueError(f"{self.name} lives at level {self.level}; cannot act by a level-{n} element")
        element = self.ring.project(element, n, self.level)
        return _combine(self.actions, self.level_ring.coordinates(element), self.group)

    def action(self, element: ProElement) -> ZMap:
        return self.action_at(self.level, element.at(self.level))

    def at_level(self, level: int) -> DiscreteModule:
        """
        The same module viewed at a deeper level.
        """
        if level < self.level:
            raise ValueError(f"Cannot move {self.name} from level {self.level} up to level {level}")
        actions = [self.action_at(level, beta) for beta in self.ring.level(level).additive_generators()]
        return DiscreteModule(self.ring, level, self.group, actions, self.side, self.name, check=False)

    @classmethod
    def over_cyclic(
        cls, ring: ProRing, level: int, group: ZModule, side: Side = Side.RIGHT, name: str = "L"
    ) -> DiscreteModule:
        """
        An abelian group as a module over a level ring that is a quotient of ``Z``.
        """
        orders = ring.level(level).additive_orders
        if orders is None or len(orders) != 1 or ring.level(level).one != ring.level(level).from_coordinates([1]):
            raise ValueError(f"Level {level} of {ring.name} is not a cyclic ring")
        if orders[0] and not group.identity().scaled(orders[0]).is_zero():
            raise ValueError(f"{group!r} is not annihilated by {orders[0]}")
        return cls(ring, level, group, [group.identity()], side, name, check=False)

    @classmethod
    def regular(cls, ring: ProRing, level: int, side: Side = Side.RIGHT) -> DiscreteModule:
        """
        ``R_m`` acting on itself by multiplication on the given side.
        """
        ring_level = ring.level(level)
        group = ZModule.from_orders(ring_level._integral_orders())
        basis = ring_level.additive_generators()
        actions = []
        for beta in basis:
            if side is Side.RIGHT:
                columns = [ring_level.coordinates(ring_level.mul(gamma, beta)) for gamma in basis]
            else:
                columns = [ring_level.coordinates(ring_level.mul(beta, gamma)) for gamma in basis]
            actions.append(ZMap(group, group, [[column[i] for column in columns] for i in range(len(basis))]))
        return cls(ring, level, group, actions, side, name=f"{ring_level.name}", check=False)

    @classmethod
    def zero(cls, ring: ProRing, level: int = 1, side: Side = Side.RIGHT) -> DiscreteModule:
        group = ZModule(0)
        actions = [group.identity() for _ in ring.level(level).additive_generators()]
        return cls(ring, level, group, actions, side, name="0", check=False)

    def __repr__(self) -> str:
        return f"DiscreteModule({self.name}: {self.group!r} at level {self.level} of {self.ring.name})"


def _zmap(source: ZModule, target: ZModule, image: Callable[[IntVector], Sequence[int]], check: bool = False) -> ZMap:
    """
    The map sending each generator of `source` to ``image(unit vector)``, in generator coordinates of `target`.
    """
    columns = [image(tuple(int(i == k) for i in range(source.generators))) for k in range(source.generators)]
    matrix = [[column[i] for column in columns] for i in range(target.generators)]
    return ZMap(source, target, matrix, check=check)


def _hom_element(hom: HomGroup, morphism: ZMap) -> IntVector:
    return hom.group.lift(hom.coordinates(morphism))


def _hom_map(hom: HomGroup, element: Sequence[int]) -> ZMap:
    return hom.to_map(hom.group.canonical(element))


class HomContramodule(NamedTuple):
    """
    ``Hom_Z(L, V)`` presented as a contramodule, with the data identifying its level-``m`` group.
    """

    contramodule: Contramodule
    hom: HomGroup
    module: DiscreteModule
    left_actions: List[ZMap]
    """
    Action of each additive generator ``b`` of ``R_m`` on ``hom.group``: ``(b·f)(l) = f(l·b)``.
    """

    def evaluation(self) -> ZMap:
        """
        ``R_m[X] -> Hom_Z(L, V)``, sending ``(x_i, b)`` to ``b·h_i``.
        """
        group = self.hom.group
        level_group = self.contramodule.level_group(self.module.level)
        generators = group.canonical_generators
        width = len(self.left_actions)

        def image(unit: IntVector) -> IntVector:
            position = unit.index(1)
            return self.left_actions[position % width](generators[position // width])

        return _zmap(level_group, group, image)

    def to_element(self, morphism: ZMap) -> IntVector:
        """
        The element of the level-``m`` group corresponding to a homomorphism ``L -> V``.
        """
        ring_level = self.module.level_ring
        coordinates = self.hom.coordinates(morphism)
        snapshot = {key: ring_level.scalar(value) for key, value in zip(self.contramodule.generators, coordinates)}
        snapshot = {key: value for key, value in snapshot.items() if not ring_level.is_zero(value)}
        return self.contramodule.element(self.module.level, snapshot)

    def to_map(self, element: Sequence[int]) -> ZMap:
        """
        The homomorphism ``L -> V`` represented by an element of the level-``m`` group.
        """
        return _hom_map(self.hom, self.evaluation()(element))


def _left_actions(module: DiscreteModule, hom: HomGroup) -> List[ZMap]:
    return [
        _zmap(hom.group, hom.group, lambda unit, action=action: _hom_element(hom, _hom_map(hom, unit).compose(action)))
        for action in module.actions
    ]


def hom_contramodule(module: DiscreteModule, target: ZModule) -> HomContramodule:
    """
    The contramodule ``Hom_Z(L, V)`` of a discrete right module and a finite abelian group,
    with ``(sum s_x f_x)(l) = sum f_x(l s_x)``.

    The presentation has one generator per canonical generator of the Hom group; its relations are
    lifts of the kernel of ``R_m[X] -> Hom_Z(L, V)`` together with ``u_m·x`` for a generator ``u_m``
    of the base ideal.
    """
    if module.side is not Side.RIGHT:
        raise ValueError(f"Hom contramodule needs a right discrete module, got a {module.side.value} one")
    if not module.group.is_finite or not target.is_finite:
        raise ValueError("Hom contramodule needs finite inputs")
    ring, level = module.ring, module.level
    hom = HomGroup(module.group, target)
    generators = tuple(f"h{k + 1}" for k in range(len(hom.group.orders)))
    free = Contramodule.free(ring, generators)
    kernel = HomContramodule(free, hom, module, _left_actions(module, hom)).evaluation().kernel()
    relations = {}
    for k in range(kernel.source.generators):
        snapshot = free.snapshot(level, kernel(tuple(int(i == k) for i in range(kernel.source.generators))))
        coefficients = {key: ring.lift(level, value) for key, value in snapshot.items()}
        relations[f"k{k + 1}"] = FreeContraElement.from_coefficients(ring, generators, coefficients)
    generator = ring.ideal_generator(level)
    if generator is not None:
        for key in generators:
            relations[f"u_{key}"] = FreeContraElement.from_coefficients(ring, generators, {key: generator})
    contramodule = Contramodule(ring, generators, relations, name=f"Hom({module.name},V)")
    return HomContramodule(contramodule, hom, module, _left_actions(module, hom))


def hom_action(data: HomContramodule, family: Sequence[Tuple[ProElement, ZMap]]) -> ZMap:
    """
    Evaluate ``sum s_x f_x`` directly: ``l -> sum f_x(l·s_x)``.
    """
    module = data.module
    total = module.group.zero_map(data.hom.target)
    for coefficient, morphism in family:
        total = total + morphism.compose(module.action(coefficient))
    return total


class Contratensor(NamedTuple):
    """
    ``L ⊙ C`` as the cokernel of ``L^(Y) -> L^(X)``.
    """

    group: ZModule
    projection: ZMap
    presentation: ZMap
    injections: List[ZMap]
    """
    ``L -> L^(X)``, one per generator of the contramodule.
    """


def contratensor(module: DiscreteModule, contramodule: Contramodule) -> Contratensor:
    """
    The contratensor product of a discrete right module and a finitely presented contramodule,
    computed by right exactness from ``L ⊙ R[[X]] = L^(X)``.
    """
    if module.side is not Side.RIGHT:
        raise ValueError("Side mismatch: the contratensor product needs a right discrete module")
    if module.ring is not contramodule.ring:
        raise ValueError(f"Pro-ring mismatch: {module.ring.name} and {contramodule.ring.name}")
    level = module.level
    copies_x, injections, _ = direct_sum([module.group] * len(contramodule.generators))
    keys = list(contramodule.relations)
    copies_y, _, _ = direct_sum([module.group] * len(keys))
    width = module.group.generators

    def image(unit: IntVector) -> IntVector:
        position = unit.index(1)
        relation = contramodule.relations[keys[position // width]]
        element = tuple(int(i == position % width) for i in range(width))
        total = [0] * copies_x.generators
        for x, coefficient in relation.at(level).items():
            part = injections[contramodule.generators.index(x)](module.action_at(level, coefficient)(element))
            total = [a + b for a, b in zip(total, part)]
        return total

    presentation = _zmap(copies_y, copies_x, image)
    projection = presentation.cokernel()
    return Contratensor(projection.target, projection, presentation, injections)


class AdjunctionCertificate(NamedTuple):
    """
    The two sides of ``Hom_Z(L ⊙ C, V) = Hom^R(C, Hom_Z(L, V))`` and the canonical map between them.
    """

    left: Tuple[int, Tuple[int, ...]]
    right: Tuple[int, Tuple[int, ...]]
    matrix: List[List[int]]


def _linear_maps(contramodule: Contramodule, data: HomContramodule) -> Tuple[HomGroup, ZMap]:
    """
    Maps from the level-``m`` group of `contramodule` to the Hom group, and the commutator map
    whose kernel consists of the ``R_m``-linear ones.
    """
    level = data.module.level
    maps = HomGroup(contramodule.level_group(level), data.hom.group)
    basis = data.module.level_ring.additive_generators()
    target, _, _ = direct_sum([maps.group] * len(basis))

    def image(unit: IntVector) -> List[int]:
        f = _hom_map(maps, unit)
        column: List[int] = []
        for beta, action in zip(basis, data.left_actions):
            difference = f.compose(contramodule.multiplication(level, beta)) + action.compose(f).scaled(-1)
            column.extend(_hom_element(maps, difference))
        return column

    return maps, _zmap(maps.group, target, image)


def adjunction_check(
    module: DiscreteModule, contramodule: Contramodule, target: ZModule, precision: int = 8
) -> AdjunctionCertificate:
    """
    Build both sides of the contratensor-Hom adjunction and verify that the canonical map
    ``g -> (c -> (l -> g(l ⊗ c)))`` is a bijection onto the contramodule morphisms.

    :raises VerificationError: With the offending element when the map is not a bijection.
    """
    if module.level > precision:
        raise ValueError(f"{module.name} lives at level {module.level}, beyond precision {precision}")
    level = module.level
    tensor = contratensor(module, contramodule)
    left = HomGroup(tensor.group, target)
    data = hom_contramodule(module, target)
    maps, commutator = _linear_maps(contramodule, data)
    linear = commutator.kernel()
    source = contramodule.level_group(level)
    basis = module.level_ring.additive_generators()

    def adjoint(unit: IntVector) -> IntVector:
        g = _hom_map(left, unit).compose(tensor.projection)

        def value(generator: IntVector) -> IntVector:
            position = generator.index(1)
            local = g.compose(tensor.injections[position // len(basis)])
            return _hom_element(data.hom, local.compose(module.action_at(level, basis[position % len(basis)])))

        return _hom_element(maps, _zmap(source, data.hom.group, value))

    canonical = _zmap(left.group, maps.group, adjoint)
    images = commutator.compose(canonical)
    for k in range(left.group.generators):
        unit = tuple(int(i == k) for i in range(left.group.generators))
        if not images.target.is_zero_element(images(unit)):
            raise VerificationError("Adjoint map is not a contramodule morphism", witness=unit)
    kernel = canonical.kernel()
    if not kernel.source.is_zero:
        witness = kernel(kernel.source.canonical_generators[0])
        raise VerificationError("Canonical adjunction map is not injective", witness=witness)
    if left.group.size() != linear.source.size():
        raise VerificationError("Adjunction sides differ in size", witness=(left.group.size(), linear.source.size()))
    logger.debug(f"Adjunction verified for {module.name} and {contramodule.name}: {left.group!r}")
    return AdjunctionCertificate(left.group.invariants, linear.source.invariants, canonical.matrix)
