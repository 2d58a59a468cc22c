"""
Convergence
-----------
Sampling the zero-convergence description of morphisms ``M -> M^(X)``.

An ``X``-indexed family of endomorphisms ``f_x`` of a colimit module ``M`` assembles to a map into
the direct sum ``M^(X)`` exactly when every element of ``M`` is killed by all but finitely many
``f_x``, that is when the family converges to zero in the finite topology. Families are drawn over
a countable index set and inspected through a finite window, which is doubled to tell a stable
support from a growing one.
"""

from __future__ import annotations
import logging
from typing import Callable, List, NamedTuple, Optional

import numpy as np

from tiltkit.pro.elements import CountableIndex, FreeContraElement, ProElement
from .colimit import ColimitModule, EndomorphismProRing, endo_topology_colim

logger = logging.getLogger(__name__)


class ConvergenceSample(NamedTuple):
    family: int
    convergent: bool
    """
    Whether the family was drawn converging to zero.
    """
    assembles: bool
    """
    Whether the image of every stage generator has a support that stops growing.
    """

    @property
    def agrees(self) -> bool:
        return self.convergent == self.assembles


def _support(ring: EndomorphismProRing, family: Callable[[int], ProElement], n: int, window: int) -> List[int]:
    module = ring.module
    generator = module.generator(n)
    stage = module.stage(n)
    return [
        k for k in range(window) if not stage.is_zero_element(ring.endomorphism(n, family(k).at(n))(generator))
    ]


def _draw_family(ring: EndomorphismProRing, rng: np.random.Generator, convergent: bool, step: int):
    units = []
    base = ring.module.modulus

    def family(k: int) -> ProElement:
        while len(units) <= k:
            units.append(ring.one + ring.constant(base) * ring.random_element(rng))
        valuation = k // step if convergent else 0
        return ring.constant(base**valuation) * units[k]

    return family


def sample_zero_convergence(
    module: ColimitModule, seed: int, precision: int = 4, families: int = 50, window: Optional[int] = None
) -> List[ConvergenceSample]:
    """
    Draw `families` families, alternating between ones converging to zero and ones made of units,
    and decide for each whether it assembles to a morphism into the direct sum up to `precision`.
    """
    ring = endo_topology_colim(module)
    window = window or 4 * precision
    index = CountableIndex("x")
    samples = []
    for k in range(families):
        rng = np.random.Generator(np.random.Philox(key=seed).jumped(k))
        convergent = k % 2 == 0
        step = int(rng.integers(1, 4))
        family = _draw_family(ring, rng, convergent, step)
        assembles = all(
            _support(ring, family, n, window) == _support(ring, family, n, 2 * window) for n in range(1, precision + 1)
        )
        if convergent:
            element = FreeContraElement.zero_convergent(ring, index, family, lambda n, step=step: step * n)
            if not element.is_coherent(precision):
                raise ValueError(f"Family {k} over {ring.name} is not coherent")
        samples.append(ConvergenceSample(k, convergent, assembles))
    disagreements = sum(1 for sample in samples if not sample.agrees)
    if disagreements:
        logger.warning(f"Zero-convergence disagreed on {disagreements} of {families} families over {ring.name}")
    return samples
