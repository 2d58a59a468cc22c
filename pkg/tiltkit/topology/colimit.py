"""
Colimit
-------
Torsion modules given as unions of finite groups, and the pro-ring of their endomorphisms.

The supported shape is the sum over pairwise coprime ``s`` of the Matlis chains
``(1/s^n)Z/Z ⊂ Z[1/s]/Z``, so that every stage ``M_n`` is cyclic of order ``N^n`` with
``N`` the product of the ``s``.
"""

from __future__ import annotations
import logging
from math import gcd, prod
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from tiltkit.algebra.integers import HomGroup, ZMap, ZModule
from tiltkit.pro.elements import ProElement
from tiltkit.pro.levels import IntegersMod
from tiltkit.pro.pro_ring import ProRing

logger = logging.getLogger(__name__)


class ColimitModule:
    """
    ``M = M_1 ∪ M_2 ∪ ...`` with ``M_n = sum over s of (1/s^n)Z/Z``.

    :param bases: Pairwise coprime integers ``s >= 2``.
    :param name: Display name.
    """

    def __init__(self, bases: Sequence[int], name: Optional[str] = None):
        self.bases: Tuple[int, ...] = tuple(bases)
        if not self.bases:
            raise ValueError("Unsupported colimit shape: no chains given")
        for s in self.bases:
            if s < 2:
                raise ValueError(f"Unsupported colimit shape: s = {s} must be at least 2")
        for i, s in enumerate(self.bases):
            for t in self.bases[i + 1 :]:
                if gcd(s, t) != 1:
                    raise ValueError(f"Unsupported colimit shape: {s} and {t} are not coprime")
        self.modulus = prod(self.bases)
        self.name = name or " + ".join(f"Z[1/{s}]/Z" for s in self.bases)
        self._stages: Dict[int, ZModule] = {}
        self._inclusions: Dict[int, ZMap] = {}
        self._endomorphisms: Dict[int, HomGroup] = {}

    @classmethod
    def matlis_torsion(cls, s: int) -> ColimitModule:
        return cls([s], name=f"Z[1/{s}]/Z")

    def stage(self, n: int) -> ZModule:
        """
        ``M_n``, one cyclic summand per chain with generator ``1/s^n``.
        """
        if n < 1:
            raise ValueError(f"Stages start at 1, got {n}")
        if n not in self._stages:
            self._stages[n] = ZModule.from_orders([s**n for s in self.bases])
        return self._stages[n]

    def inclusion(self, n: int) -> ZMap:
        """
        ``M_n -> M_(n+1)``: the generator ``1/s^n`` goes to ``s`` times ``1/s^(n+1)``.
        """
        if n not in self._inclusions:
            size = len(self.bases)
            matrix = [[s if i == j else 0 for j in range(size)] for i, s in enumerate(self.bases)]
            self._inclusions[n] = ZMap(self.stage(n), self.stage(n + 1), matrix)
        return self._inclusions[n]

    def check(self, precision: int):
        """
        Verify that the stages are finite and that the inclusions are injective up to `precision`.
        """
        for n in range(1, precision + 1):
            if not self.stage(n).is_finite:
                raise ValueError(f"Stage {n} of {self.name} is infinite")
            if n < precision and not self.inclusion(n).is_injective():
                raise ValueError(f"Inclusion of stage {n} into stage {n + 1} of {self.name} is not injective")

    def endomorphisms(self, n: int) -> HomGroup:
        """
        ``Hom(M_n, M) = Hom(M_n, M_n)``; every map out of ``M_n`` lands in ``M_n``.
        """
        if n not in self._endomorphisms:
            self._endomorphisms[n] = HomGroup(self.stage(n), self.stage(n))
        return self._endomorphisms[n]

    def generator(self, n: int):
        return self.stage(n).canonical_generators[0]

    def __repr__(self) -> str:
        return f"ColimitModule({self.name})"


class EndomorphismProRing(ProRing):
    """
    ``End(M)^rop`` with the finite topology: level ``n`` is ``Hom(M_n, M)`` and the
    transitions restrict endomorphisms along ``M_n -> M_(n+1)``.

    A level element ``k`` stands for multiplication by ``k`` on ``M_n``.
    """

    is_commutative = True
    is_discrete = False

    def __init__(self, module: ColimitModule):
        self.module = module
        self.name = f"End({module.name})"
        self._levels: Dict[int, IntegersMod] = {}
        self._factors: Dict[int, int] = {}

    def level(self, n: int) -> IntegersMod:
        if n not in self._levels:
            orders = self.module.endomorphisms(n).group.orders
            if len(orders) != 1 or orders[0] == 0:
                raise ValueError(f"Unsupported colimit shape: Hom(M_{n}, M) of {self.module.name} is not finite cyclic")
            self._levels[n] = IntegersMod(orders[0])
        return self._levels[n]

    def endomorphism(self, n: int, element: int) -> ZMap:
        return self.module.stage(n).identity().scaled(element)

    def _restriction_factor(self, n: int) -> int:
        if n in self._factors:
            return self._factors[n]
        upper = self.module.stage(n + 1)
        generator = self.module.generator(n)
        restricted = self.endomorphism(n + 1, 1).compose(self.module.inclusion(n))
        image = upper.canonical(restricted(generator))[0]
        embedded = upper.canonical(self.module.inclusion(n)(generator))[0]
        modulus = self.level(n).modulus
        step = self.level(n + 1).modulus // modulus
        factor = (image // step) * pow(embedded // step, -1, modulus) % modulus
        logger.debug(f"Restriction {n + 1} -> {n} of {self.name} multiplies by {factor}")
        self._factors[n] = factor
        return factor

    def reduce(self, element: int, n: int) -> int:
        return element * self._restriction_factor(n) % self.level(n).modulus

    def lift_to(self, element: int, source: int, target: int) -> int:
        return element % self.level(source).modulus

    def ideal_label(self, n: int) -> str:
        return f"Ann(M_{n})"

    def ideal_generator(self, n: int) -> ProElement:
        return self.constant(self.level(n).modulus)

    def annihilates(self, n: int, element: int) -> bool:
        """
        Whether a level element of any depth acts as zero on ``M_n``.
        """
        return self.endomorphism(n, element).is_zero()

    def random_element(self, rng: np.random.Generator) -> ProElement:
        seed = int(rng.integers(0, 2**63))
        digits = []
        digit_rng = np.random.Generator(np.random.Philox(seed))
        base = self.module.modulus

        def producer(n: int) -> int:
            while len(digits) < n:
                digits.append(int(digit_rng.integers(0, base)))
            return sum(digit * base**k for k, digit in enumerate(digits[:n]))

        return ProElement(self, producer, label=f"digits({seed})")


def endo_topology_colim(module: ColimitModule) -> EndomorphismProRing:
    """
    The endomorphism pro-ring of a colimit module, levels computed from the stages.
    """
    return EndomorphismProRing(module)
