"""
Completion
----------
Level quotients ``C/(U_n ⋌ C)``, towers of modules over the level rings, their projective limits
and the completion map of a contramodule.

Limits are evaluated up to a precision ``N``: at levels ``n < N`` the tower is replaced by the
images of ``G_N -> G_n``, which are stable approximations of the limit.
"""

from __future__ import annotations
import logging
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel

from tiltkit.algebra.integers import ZMap, ZModule
from tiltkit.algebra.types import IntVector
from tiltkit.pro.levels import Element
from tiltkit.pro.pro_ring import ProRing
from .presentation import Contramodule

logger = logging.getLogger(__name__)

Action = Callable[[Element], ZMap]
"""
Left action of a level ring element on one group of a tower.
"""


class IdealQuotient(NamedTuple):
    """
    ``C/(U_n ⋌ C)`` with the projection from ``R_n[X]``; the kernel of the projection is ``U_n ⋌ C``
    pulled back to ``R_n[X]``.
    """

    level: int
    ideal: str
    quotient: ZModule
    projection: ZMap

    @property
    def subgroup(self) -> ZMap:
        return self.projection.kernel()


def ideal_action_subgroup(contramodule: Contramodule, n: int) -> IdealQuotient:
    """
    The quotient of `contramodule` by the action of the base ideal ``U_n``.
    """
    free = Contramodule.free(contramodule.ring, contramodule.generators).level_group(n)
    quotient = contramodule.level_group(n)
    identity = [[int(i == j) for j in range(free.generators)] for i in range(quotient.generators)]
    projection = ZMap(free, quotient, identity if quotient.generators else [])
    return IdealQuotient(n, contramodule.ring.ideal_label(n), quotient, projection)


class Tower:
    """
    A level-indexed family of groups with structure maps ``G_(n+1) -> G_n``.

    :param groups: ``G_1, ..., G_N``.
    :param maps: ``maps[k]: G_(k+2) -> G_(k+1)``.
    :param ring: When given with `actions`, ``G_n`` is a module over the level ring ``R_n``.
    :param actions: Action of level-``n`` ring elements on ``G_n``, one callable per level.
    """

    def __init__(
        self,
        groups: Sequence[ZModule],
        maps: Sequence[ZMap],
        ring: Optional[ProRing] = None,
        actions: Optional[Sequence[Action]] = None,
    ):
        if len(maps) != max(len(groups) - 1, 0):
            raise ValueError(f"Incompatible tower: {len(groups)} groups need {len(groups) - 1} maps")
        for k, structure in enumerate(maps):
            if structure.source is not groups[k + 1] or structure.target is not groups[k]:
                raise ValueError(f"Incompatible tower: map {k + 2} -> {k + 1} does not connect the groups")
        if (ring is None) != (actions is None):
            raise ValueError("A tower of modules needs both a ring and actions")
        self.groups = list(groups)
        self.maps = list(maps)
        self.ring = ring
        self.actions = list(actions) if actions is not None else None
        if self.actions is not None:
            self._check_actions()

    @property
    def precision(self) -> int:
        return len(self.groups)

    def _check_actions(self):
        for k, structure in enumerate(self.maps):
            upper = self.ring.level(k + 2)
            for beta in upper.additive_generators():
                left = structure.compose(self.actions[k + 1](beta))
                right = self.actions[k](self.ring.reduce(beta, k + 1)).compose(structure)
                if not left.equals(right):
                    raise ValueError(f"Incompatible tower: map {k + 2} -> {k + 1} is not a module map")

    def composite(self, source: int, target: int) -> ZMap:
        """
        ``G_source -> G_target`` for ``source >= target`` (levels counted from 1).
        """
        result = self.groups[source - 1].identity()
        for n in range(source - 1, target - 1, -1):
            result = self.maps[n - 1].compose(result)
        return result

    @classmethod
    def constant(cls, group: ZModule, precision: int) -> Tower:
        groups = [group] * precision
        return cls(groups, [group.identity() for _ in range(precision - 1)])

    @classmethod
    def from_contramodule(cls, contramodule: Contramodule, precision: int) -> Tower:
        """
        The tower of level quotients ``C/(U_n ⋌ C)`` with the ``R_n``-actions.
        """
        groups = [contramodule.level_group(n) for n in range(1, precision + 1)]
        maps = [contramodule.transition(n) for n in range(1, precision)]
        actions = [lambda r, n=n: contramodule.multiplication(n, r) for n in range(1, precision + 1)]
        return cls(groups, maps, contramodule.ring, actions)


class ProLimit:
    """
    The limit of a tower up to its precision ``N``: the images ``I_n`` of ``G_N -> G_n`` for ``n < N``.

    Every ``I_n`` is presented as a quotient of ``G_N``, so the transitions ``I_(n+1) -> I_n``
    are identities on generators.
    """

    def __init__(self, tower: Tower):
        self.tower = tower
        top = tower.precision
        self.images: List[ZModule] = []
        self.inclusions: List[ZMap] = []
        for n in range(1, top):
            surjection, inclusion = tower.composite(top, n).image()
            self.images.append(surjection.target)
            self.inclusions.append(inclusion)
        self.transitions = [
            ZMap(upper, lower, [[int(i == j) for j in range(upper.generators)] for i in range(lower.generators)])
            for upper, lower in zip(self.images[1:], self.images[:-1])
        ]

    @property
    def levels(self) -> int:
        return len(self.images)

    @property
    def invariants(self) -> List[Tuple[int, Tuple[int, ...]]]:
        return [image.invariants for image in self.images]

    @property
    def is_zero(self) -> bool:
        return all(image.is_zero for image in self.images)

    def is_coherent(self, sequence: Sequence[IntVector]) -> bool:
        """
        Whether level elements ``g_1, ..., g_N`` of the tower form a coherent sequence.
        """
        tower = self.tower
        return all(
            tower.groups[k].equal_elements(tower.maps[k](sequence[k + 1]), sequence[k]) for k in range(len(tower.maps))
        )

    def act(self, n: int, element: Element, vector: Sequence[int]) -> IntVector:
        """
        The induced action of a level-``n`` ring element on ``I_n``, through its lift to level ``N``.
        """
        tower = self.tower
        if tower.ring is None:
            raise ValueError("The tower carries no ring action")
        top = tower.precision
        lifted = tower.ring.lift_to(element, n, top)
        image = self.images[n - 1]
        return image.lift(image.canonical(tower.actions[top - 1](lifted)(vector)))

    def matches(self, contramodule: Contramodule) -> bool:
        """
        Whether every stable image is isomorphic to the corresponding level quotient of `contramodule`.
        """
        return all(image.is_isomorphic(contramodule.level_group(n + 1)) for n, image in enumerate(self.images))


def pl_limit(tower: Tower) -> ProLimit:
    """
    The projective limit of a tower, evaluated up to its precision.
    """
    limit = ProLimit(tower)
    logger.debug(f"Limit of a tower of length {tower.precision}: {limit.invariants}")
    return limit


class CompletionReport(BaseModel, extra="forbid"):
    """
    The completion map of a contramodule, read off its tower of level quotients.
    """

    contramodule: str
    precision: int
    levels: List[Tuple[int, Tuple[int, ...]]]
    transitions_surjective: bool
    free: bool
    stabilized_at: Optional[int] = None
    verdict: str


def completion_map_check(contramodule: Contramodule, precision: int = 8) -> CompletionReport:
    """
    Compute the tower ``C/(U_n ⋌ C)`` and decide what can be decided about
    ``C -> lim C/(U_n ⋌ C)`` up to `precision`.

    Free contramodules are complete and separated. Otherwise the map is an isomorphism once
    the transitions become isomorphisms, and separatedness is only certified up to `precision`.
    """
    tower = Tower.from_contramodule(contramodule, precision)
    surjective = all(structure.is_surjective() for structure in tower.maps)
    stabilized_at = None
    for n in range(1, precision):
        if all(structure.is_isomorphism() for structure in tower.maps[n - 1 :]):
            stabilized_at = n
            break
    if precision == 1 or contramodule.ring.is_discrete:
        stabilized_at = 1
    if contramodule.is_free or stabilized_at is not None:
        verdict = "iso"
    else:
        verdict = f"separated up to level {precision}"
    return CompletionReport(
        contramodule=contramodule.name,
        precision=precision,
        levels=[group.invariants for group in tower.groups],
        transitions_surjective=surjective,
        free=contramodule.is_free,
        stabilized_at=stabilized_at,
        verdict=verdict,
    )
