"""
Equivalence
-----------
``Add(M)`` against projective contramodules over ``End(M)^rop``.

The equivalence sends ``M^(X)`` to ``Hom(M, M^(X))`` and a contramodule ``C`` back to ``M ⊙ C``.
On free contramodules both directions are compared level by level with the objects they
should be isomorphic to.
"""

from __future__ import annotations
import logging
from typing import Hashable, List, Optional, Sequence, Union

from pydantic import BaseModel

from tiltkit.algebra import integers
from tiltkit.algebra.homological import Bimodule, hom_dim, tensor_product
from tiltkit.algebra.modules import Module, power
from tiltkit.algebra.types import Side
from tiltkit.contramodules import Contramodule, DiscreteModule, contratensor
from .colimit import ColimitModule, endo_topology_colim
from .endomorphisms import endomorphism_algebra

logger = logging.getLogger(__name__)


class LevelMatch(BaseModel, extra="forbid"):
    """
    Both comparisons at one level, with the invariants that were compared.
    """

    level: int
    hom: str
    free: str
    tensor: str
    power: str

    @property
    def matched(self) -> bool:
        return self.hom == self.free and self.tensor == self.power


class AddEquivalenceReport(BaseModel, extra="forbid"):
    module: str
    index: List[str]
    precision: int
    levels: List[LevelMatch]
    verified: bool
    counterexample: Optional[str] = None


def _colimit_levels(module: ColimitModule, index: Sequence[Hashable], precision: int) -> List[LevelMatch]:
    ring = endo_topology_colim(module)
    free = Contramodule.free(ring, index)
    levels = []
    for n in range(1, precision + 1):
        stage = module.stage(n)
        power_group = integers.power(stage, len(index))
        discrete = DiscreteModule.over_cyclic(ring, n, stage, Side.RIGHT, name=f"M_{n}")
        levels.append(
            LevelMatch(
                level=n,
                hom=str(integers.hom(stage, power_group).group.invariants),
                free=str(free.level_group(n).invariants),
                tensor=str(contratensor(discrete, free).group.invariants),
                power=str(power_group.invariants),
            )
        )
    return levels


def _fp_levels(module: Module, index: Sequence[Hashable]) -> List[LevelMatch]:
    endomorphisms = endomorphism_algebra(module)
    algebra = endomorphisms.algebra
    count = len(index)
    free, _, _ = power(Module.regular(algebra), count)
    tensor = tensor_product(Bimodule.from_right_module(endomorphisms.right_module), free)
    return [
        LevelMatch(
            level=1,
            hom=str(hom_dim(module, power(module, count)[0])),
            free=str(count * algebra.dim),
            tensor=str(tensor.module.dim),
            power=str(count * module.dim),
        )
    ]


def add_equiv_check(
    module: Union[Module, ColimitModule], index: Sequence[Hashable], precision: int = 8
) -> AddEquivalenceReport:
    """
    Compare ``Hom(M, M^(X))`` with the free contramodule on `index` and ``M ⊙ (free)`` with ``M^(X)``.

    Over a finitely generated module the ring is discrete and one level decides everything;
    there the comparison is by dimension.
    """
    index = tuple(index)
    if isinstance(module, ColimitModule):
        module.check(precision)
        levels = _colimit_levels(module, index, precision)
        name = module.name
    else:
        levels = _fp_levels(module, index)
        name = repr(module)
    failed = next((level for level in levels if not level.matched), None)
    counterexample = None
    if failed is not None:
        counterexample = (
            f"level {failed.level}: Hom {failed.hom} vs free {failed.free}, tensor {failed.tensor} vs {failed.power}"
        )
        logger.warning(f"Add-equivalence check for {name} failed at {counterexample}")
    return AddEquivalenceReport(
        module=name,
        index=[str(key) for key in index],
        precision=precision,
        levels=levels,
        verified=failed is None,
        counterexample=counterexample,
    )
