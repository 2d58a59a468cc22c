"""
Morita
------
Transport of contramodules along the Morita equivalence between a pro-ring and its matrix pro-ring.

For a finite set ``Y`` the transport of ``C`` is the column contramodule ``C^Y`` over
``S = M_Y(R)``, with ``(M c)_i = sum_j M_ij c_j``. It is presented on the generators of ``C``:
a generator ``x`` stands for the column with ``x`` in the first entry, so ``(1 - E11)·x`` vanishes
and every relation ``sum r_x x`` of ``C`` becomes ``sum (r_x E11)·x``.
"""

from __future__ import annotations
import logging
from typing import Dict, Hashable, List, Sequence, Tuple

import numpy as np

from tiltkit.algebra.types import IntVector
from tiltkit.pro.elements import FreeContraElement
from tiltkit.pro.levels import Element
from tiltkit.pro.pro_ring import MatrixProRing, make_matrix_pro_ring
from .presentation import Contramodule

logger = logging.getLogger(__name__)


class MoritaTransport:
    """
    ``C^Y`` as a contramodule over ``M_Y(R)``, together with the identification of its level groups
    with columns of level elements of ``C``.

    :param base: The contramodule ``C`` over ``R``.
    :param ring: The matrix pro-ring ``M_Y(R)``.
    :param contramodule: The presented contramodule ``C^Y``.
    """

    def __init__(self, base: Contramodule, ring: MatrixProRing, contramodule: Contramodule):
        self.base = base
        self.ring = ring
        self.contramodule = contramodule

    @property
    def size(self) -> int:
        return self.ring.size

    def act(self, n: int, matrix: Element, column: Sequence[IntVector]) -> List[IntVector]:
        """
        The matrix formula: entry ``i`` of ``M c`` is ``sum_j M_ij c_j``, computed in ``C`` at level ``n``.
        """
        if len(column) != self.size:
            raise ValueError(f"Column of length {len(column)} does not match {self.ring.name}")
        return [self.base.act(n, [(matrix[i][j], column[j]) for j in range(self.size)]) for i in range(self.size)]

    def embed(self, n: int, column: Sequence[IntVector]) -> IntVector:
        """
        The element of the transport's level group corresponding to a column of level elements of ``C``.

        Entry ``i`` with coordinate ``k`` on the additive basis element ``beta_j`` of ``R_n`` becomes
        ``k·(beta_j E_i1)·x``.
        """
        if len(column) != self.size:
            raise ValueError(f"Column of length {len(column)} does not match {self.ring.name}")
        width = len(self.base.ring.level(n).additive_orders)
        block = self.size * self.size * width
        data = [0] * (len(self.base.generators) * block)
        for i, entry in enumerate(column):
            for position in range(len(self.base.generators)):
                for j in range(width):
                    data[position * block + i * self.size * width + j] += entry[position * width + j]
        return self.contramodule.normal_form(n, data)

    def check_action(self, seed: int, precision: int = 4, instances: int = 20) -> List[Tuple[int, int]]:
        """
        Compare the presented action with the matrix formula on seeded random matrices and columns.

        :return: ``(instance, level)`` for every disagreement.
        """
        failures = []
        for k in range(instances):
            rng = np.random.Generator(np.random.Philox(key=seed).jumped(k))
            for n in range(1, precision + 1):
                matrix = self.ring.level(n).sample(rng)
                column = [self.base.sample(n, rng) for _ in range(self.size)]
                direct = self.embed(n, self.act(n, matrix, column))
                presented = self.contramodule.act(n, [(matrix, self.embed(n, column))])
                if direct != presented:
                    failures.append((k, n))
        if failures:
            logger.warning(f"Transport of {self.base.name} disagrees with the matrix action {len(failures)} times")
        return failures

    def __repr__(self) -> str:
        return f"MoritaTransport({self.contramodule.name} over {self.ring.name})"


def morita_transport(contramodule: Contramodule, index: Sequence[Hashable]) -> MoritaTransport:
    """
    Transport `contramodule` to the matrix pro-ring with rows and columns indexed by `index`.
    """
    index = tuple(index)
    if not index:
        raise ValueError("Morita transport needs a nonempty index set")
    ring = make_matrix_pro_ring(contramodule.ring, index)
    generators = contramodule.generators
    relations: Dict[Hashable, FreeContraElement] = {}
    if len(index) > 1:
        complement = ring.one - ring.unit_matrix(0, 0)
        for x in generators:
            relations[("column", x)] = FreeContraElement.from_coefficients(ring, generators, {x: complement})
    for key, relation in contramodule.relations.items():

        def producer(n: int, relation: FreeContraElement = relation):
            level = ring.level(n)
            return {x: level.unit_matrix(0, 0, value) for x, value in relation.at(n).items()}

        relations[key] = FreeContraElement(ring, generators, producer)
    transported = Contramodule(ring, generators, relations, name=f"{contramodule.name}^{len(index)}")
    logger.debug(f"Transported {contramodule.name} to {ring.name}")
    return MoritaTransport(contramodule, ring, transported)
