"""
Monad
-----
The free contramodule monad ``X -> R[[X]]``: its unit, its multiplication and level snapshots.

Outer combinations have globally finite support: a finite list of pairs ``(r_k, t_k)``
standing for the formal sum of the ``r_k·t_k``. Nested combinations (elements of ``R[[R[[X]]]]``
written out one level deeper) are lists of pairs ``(r_k, inner_k)`` with ``inner_k`` an outer combination.
"""

from __future__ import annotations
import logging
from typing import Hashable, List, NamedTuple, Sequence, Tuple

import numpy as np

from tiltkit.algebra.types import VerificationError
from .elements import FreeContraElement, IndexSet, ProElement, Snapshot, make_index
from .pro_ring import ProRing

logger = logging.getLogger(__name__)

Combination = Sequence[Tuple[ProElement, FreeContraElement]]
Nested = Sequence[Tuple[ProElement, Combination]]


def monad_unit(x: Hashable, ring: ProRing, index: IndexSet) -> FreeContraElement:
    """
    The formal combination with coefficient 1 at `x`.
    """
    index = make_index(index)
    if x not in index:
        raise ValueError(f"{x!r} is not in the index set")
    return FreeContraElement(ring, index, lambda n: {x: ring.level(n).one})


def monad_mult(outer: Combination) -> FreeContraElement:
    """
    Open the parentheses: the level-``n`` coefficient at ``x`` is the sum of ``r_k`` times
    the level-``n`` coefficient of ``t_k`` at ``x``.

    :param outer: Nonempty list of ``(r_k, t_k)`` over one pro-ring and one index set.
    """
    if not outer:
        raise ValueError("Empty outer combination: use FreeContraElement.zero for the zero element")
    ring, index = outer[0][1].ring, outer[0][1].index
    for coefficient, term in outer:
        if coefficient.ring is not ring or term.ring is not ring:
            raise ValueError(f"Pro-ring mismatch in outer combination over {ring.name}")
        if term.index != index:
            raise ValueError("Index set mismatch in outer combination")
    terms = list(outer)

    def producer(n: int) -> Snapshot:
        level = ring.level(n)
        total: Snapshot = {}
        for coefficient, term in terms:
            r = coefficient.at(n)
            if level.is_zero(r):
                continue
            for key, value in term.at(n).items():
                total[key] = level.add(total.get(key, level.zero), level.mul(r, value))
        return total

    return FreeContraElement(ring, index, producer)


def level_quotient(element: FreeContraElement, n: int) -> Snapshot:
    """
    The image in ``R_n[X]``: the level-``n`` coefficients with zeros dropped.
    """
    return dict(element.at(n))


def inside(nested: Nested) -> Combination:
    """
    Apply the multiplication inside: ``R[[mu]]`` on a nested combination.
    """
    return [(coefficient, monad_mult(inner)) for coefficient, inner in nested]


def flatten(nested: Nested) -> Combination:
    """
    Apply the multiplication outside: ``mu`` at ``R[[X]]`` on a nested combination.
    """
    return [
        (coefficient * inner_coefficient, term) for coefficient, inner in nested for inner_coefficient, term in inner
    ]


def random_free_element(
    ring: ProRing, index: Sequence[Hashable], rng: np.random.Generator, density: float = 0.6
) -> FreeContraElement:
    """
    A combination with random coefficients on a random part of a finite index set.
    """
    coefficients = {key: ring.random_element(rng) for key in index if rng.random() < density}
    return FreeContraElement.from_coefficients(ring, tuple(index), coefficients)


def random_combination(
    ring: ProRing, index: Sequence[Hashable], rng: np.random.Generator, terms: int = 3
) -> List[Tuple[ProElement, FreeContraElement]]:
    return [(ring.random_element(rng), random_free_element(ring, index, rng)) for _ in range(terms)]


class LawCheck(NamedTuple):
    """
    Outcome of a seeded run over the monad identities.
    """

    instances: int
    precision: int
    failures: List[Tuple[int, str, int]]
    """
    ``(instance, law, level)`` for every identity that failed.
    """

    @property
    def passed(self) -> bool:
        return not self.failures


def check_monad_laws(
    ring: ProRing, index: Sequence[Hashable], seed: int, precision: int = 8, instances: int = 100
) -> LawCheck:
    """
    Check associativity and both unit laws on seeded random instances at every level up to `precision`.

    Instance ``k`` draws from the ``k``-th jump of a Philox stream keyed by `seed`,
    so the outcome does not depend on the order in which instances are run.
    """
    index = tuple(index)
    failures = []
    for k in range(instances):
        rng = np.random.Generator(np.random.Philox(key=seed).jumped(k))
        nested = [(ring.random_element(rng), random_combination(ring, index, rng)) for _ in range(2)]
        t = random_free_element(ring, index, rng)
        associative_left = monad_mult(inside(nested))
        associative_right = monad_mult(flatten(nested))
        left_unit = monad_mult([(ring.one, t)])
        support = list(t.at(precision))
        units = [(ring.lift(precision, t.coefficient(x, precision)), monad_unit(x, ring, index)) for x in support]
        right_unit = monad_mult(units) if units else FreeContraElement.zero(ring, index)
        for n in range(1, precision + 1):
            if level_quotient(associative_left, n) != level_quotient(associative_right, n):
                failures.append((k, "associativity", n))
            if level_quotient(left_unit, n) != level_quotient(t, n):
                failures.append((k, "left unit", n))
            if level_quotient(right_unit, n) != level_quotient(t, n):
                failures.append((k, "right unit", n))
    if failures:
        logger.warning(f"Monad laws over {ring.name} failed {len(failures)} times")
    return LawCheck(instances, precision, failures)


def assert_monad_laws(ring: ProRing, index: Sequence[Hashable], seed: int, precision: int = 8, instances: int = 100):
    check = check_monad_laws(ring, index, seed, precision, instances)
    if not check.passed:
        raise VerificationError(f"Monad law failed over {ring.name}", witness=check.failures[0])
    return check
