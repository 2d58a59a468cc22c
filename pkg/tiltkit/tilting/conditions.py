"""
Conditions
----------
The three defining conditions of an ``n``-tilting module, each checked on its own:

* ``pd T <= n``;
* ``Ext^i(T, T) = 0`` for ``0 < i <= n``;
* a coresolution ``0 -> A -> T^0 -> ... -> T^r -> 0`` with ``T^j`` in ``add(T)`` and ``r <= n``.

Vanishing of ``Ext^i(T, T^(I))`` for arbitrary sets ``I`` follows from the case ``I = {*}``
because ``T`` has a resolution by finitely generated projectives, over which ``Ext^i(T, -)``
commutes with direct sums. Results record that this reduction was used.
"""

from __future__ import annotations
import logging
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

from tiltkit.algebra.homological import (
    Resolution,
    Universal,
    ext,
    ext_from_resolution,
    projective_dimension,
    resolve,
    summand_test,
    universal_map,
)
from tiltkit.algebra.integers import ZModule
from tiltkit.algebra.modules import Module, ModuleMap

logger = logging.getLogger(__name__)

FINITE_GENERATION_NOTE = (
    "condition (ii) checked for I = {*}: the resolution is by finitely generated projectives, "
    "so Ext^i(T, -) commutes with direct sums"
)


class PdCheck(NamedTuple):
    verdict: bool
    dimension: Optional[int]
    """
    Projective dimension, ``-1`` for the zero module, ``None`` when it exceeds the resolution cap.
    """
    resolution: Resolution
    witness: Optional[Union[Module, ZModule]]
    """
    The nonzero syzygy ``Ω^(n+1) T`` when the check fails.
    """


def check_pd(module: Union[Module, ZModule], bound: int) -> PdCheck:
    """
    Decide ``pd module <= bound``.

    :return: The verdict with a resolution of length at most `bound`, or with the first
        syzygy that does not vanish.
    """
    if bound < 0:
        raise ValueError(f"Degree bound must be non-negative, got {bound}")
    if isinstance(module, ZModule):
        resolution = resolve(module)
        dimension = -1 if module.is_zero else resolution.length
        verdict = dimension <= bound
        return PdCheck(verdict, dimension, resolution, None if verdict else resolution.term(bound + 1))
    resolution = resolve(module, length=bound)
    if resolution.is_complete:
        dimension = -1 if module.is_zero else resolution.length
        return PdCheck(True, dimension, resolution, None)
    logger.debug(f"pd {module!r} exceeds {bound}")
    return PdCheck(False, projective_dimension(module), resolution, resolution.syzygy.source)


class ExtCheck(NamedTuple):
    verdict: bool
    table: Dict[int, int]
    """
    ``dim Ext^i(T, T)`` over the ground field, or the order of ``Ext^i(T, T)`` over the integers.
    """
    failing_degree: Optional[int]
    finitely_generated: bool


def _ext_size(value: Union[int, ZModule]) -> int:
    if isinstance(value, ZModule):
        return 0 if value.is_zero else value.size()
    return value


def check_self_ext(module: Union[Module, ZModule], bound: int) -> ExtCheck:
    """
    Decide ``Ext^i(module, module) = 0`` for ``0 < i <= bound``.
    """
    if isinstance(module, ZModule):
        table = {i: _ext_size(ext(module, module, i)) for i in range(1, bound + 1)}
    else:
        resolution = resolve(module, length=bound + 1)
        table = {i: ext_from_resolution(resolution, module, i) for i in range(1, bound + 1)}
    failing = next((i for i, value in table.items() if value), None)
    return ExtCheck(failing is None, table, failing, True)


class Preenvelope(NamedTuple):
    """
    The universal map ``x -> T^k`` with ``k = dim Hom(x, T)`` and the projection onto its cokernel.
    """

    universal: Universal
    cokernel: ModuleMap

    @property
    def map(self) -> ModuleMap:
        return self.universal.map

    @property
    def power(self) -> int:
        return len(self.universal.basis)

    @property
    def is_injective(self) -> bool:
        return self.universal.map.is_injective()


def preenvelope_step(module: Module, tilting: Module) -> Preenvelope:
    """
    Evaluate ``module`` against a fixed basis of ``Hom(module, tilting)``.

    Every map from `module` into ``add(tilting)`` factors through the result.
    """
    universal = universal_map(module, tilting)
    target = universal.power
    cokernel = target.identity() if target.is_zero else universal.map.cokernel()
    logger.debug(f"Preenvelope of {module!r} into {universal.power!r}, cokernel {cokernel.target!r}")
    return Preenvelope(universal, cokernel)


class Coresolution(NamedTuple):
    """
    ``0 -> X -> T^0 -> ... -> T^(r-1) -> T^r -> 0`` as a chain of preenvelopes; the last cokernel is ``T^r``.
    """

    module: Module
    verdict: bool
    stages: List[Preenvelope]
    length: Optional[int]
    failed_stage: Optional[int]
    reason: Optional[str]
    retraction: Optional[Tuple[ModuleMap, ModuleMap]]
    """
    The pair ``(s, r)`` exhibiting the last term as a summand of a power of ``T``.
    """

    @property
    def terms(self) -> List[Module]:
        if not self.stages:
            return [self.module]
        return [stage.universal.power for stage in self.stages] + [self.stages[-1].cokernel.target]

    @property
    def maps(self) -> List[ModuleMap]:
        """
        The differentials ``T^j -> T^(j+1)`` after the first map ``X -> T^0``.
        """
        return [
            following.map.compose(stage.cokernel) for stage, following in zip(self.stages, self.stages[1:])
        ] + ([self.stages[-1].cokernel] if self.stages else [])

    def is_exact(self) -> bool:
        if not self.verdict:
            return False
        for stage in self.stages:
            if not stage.is_injective or not stage.cokernel.compose(stage.map).is_zero():
                return False
            if stage.map.target.dim != stage.map.source.dim + stage.cokernel.target.dim:
                return False
        return True


def add_coresolution(module: Module, tilting: Module, bound: int) -> Coresolution:
    """
    Coresolve `module` by ``add(tilting)`` with at most `bound` preenvelope steps.
    """
    stages: List[Preenvelope] = []
    current = module
    for stage in range(bound + 1):
        retraction = summand_test(current, tilting)
        if retraction is not None:
            logger.debug(f"Coresolution of {module!r} by {tilting!r} has length {stage}")
            return Coresolution(module, True, stages, stage, None, None, retraction)
        if stage == bound:
            break
        step = preenvelope_step(current, tilting)
        stages.append(step)
        if not step.is_injective:
            reason = f"universal map {current!r} -> {step.map.target!r} is not injective"
            return Coresolution(module, False, stages, None, stage, reason, None)
        current = step.cokernel.target
    reason = f"cokernel {current!r} after {bound} steps is not in add(T)"
    return Coresolution(module, False, stages, None, bound, reason, None)


def check_coresolution(tilting: Module, bound: int) -> Coresolution:
    """
    Coresolve the regular module by ``add(tilting)`` in at most `bound` steps.
    """
    if not isinstance(tilting, Module):
        raise TypeError(f"Coresolutions need a module over a finite-dimensional algebra, got {tilting!r}")
    return add_coresolution(Module.regular(tilting.algebra), tilting, bound)
