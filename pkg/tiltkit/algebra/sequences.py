"""
Sequences
---------
Short exact sequences of modules and seeded random modules.

Random modules are quotients of sums of indecomposable projectives (or of free modules over
algebras without a quiver) by cyclic submodules ``A·v``. All draws come from a
``numpy.random.Generator``, so a seed determines the module completely.
"""

from __future__ import annotations
import logging
from typing import NamedTuple, Optional

import numpy as np
from sympy.polys.matrices import DomainMatrix

from . import linear
from .fd_algebra import FdAlgebra
from .homological import hom_space
from .modules import Module, ModuleMap, direct_sum, projective

logger = logging.getLogger(__name__)


class ShortExact(NamedTuple):
    """
    ``0 -> left -> middle -> right -> 0`` given by its two maps.
    """

    inclusion: ModuleMap
    projection: ModuleMap

    @property
    def left(self) -> Module:
        return self.inclusion.source

    @property
    def middle(self) -> Module:
        return self.inclusion.target

    @property
    def right(self) -> Module:
        return self.projection.target

    @classmethod
    def split(cls, left: Module, right: Module) -> ShortExact:
        _, injections, projections = direct_sum([left, right])
        return cls(injections[0], projections[1])

    def is_exact(self) -> bool:
        return (
            self.inclusion.is_injective()
            and self.projection.is_surjective()
            and self.projection.compose(self.inclusion).is_zero()
            and self.left.dim + self.right.dim == self.middle.dim
        )

    def section(self) -> Optional[ModuleMap]:
        """
        A map ``s: right -> middle`` with ``projection ∘ s = id``, or ``None`` when the sequence does not split.
        """
        right = self.right
        if right.is_zero:
            return right.zero_map(self.middle)
        basis = hom_space(right, self.middle)
        if not basis.basis:
            return None
        field = right.field
        images = [linear.vectorize(self.projection.compose(f).matrix) for f in basis]
        solution = linear.solve(
            linear.hstack(images, right.dim * right.dim, field), linear.vectorize(linear.identity(right.dim, field))
        )
        if solution is None:
            return None
        return basis.to_map([row[0] for row in linear.entries(solution)])

    def splits(self) -> bool:
        return self.section() is not None


def _random_vector(module: Module, rng: np.random.Generator) -> DomainMatrix:
    return linear.sample_matrix(rng, module.dim, 1, module.field, low=-1, high=1)


def cyclic_span(module: Module, vector: DomainMatrix) -> DomainMatrix:
    """
    Columns spanning the submodule ``A·v``.
    """
    return linear.hstack([linear.matmul(mat, vector) for mat in module.basis_action], module.dim, module.field)


def random_module(algebra: FdAlgebra, rng: np.random.Generator, summands: int = 2, relations: int = 2) -> Module:
    """
    A random finitely generated module ``P / (A·v_1 + ... + A·v_r)``.

    :param summands: Largest number of projective summands of ``P``.
    :param relations: Largest number of cyclic relations ``v_j``.
    """
    count = int(rng.integers(1, summands + 1))
    if algebra.is_path_algebra:
        pieces = [projective(algebra, int(rng.integers(0, algebra.vertex_count))) for _ in range(count)]
    else:
        pieces = [Module.regular(algebra)] * count
    free, _, _ = direct_sum(pieces)
    vectors = [_random_vector(free, rng) for _ in range(int(rng.integers(0, relations + 1)))]
    if not vectors:
        return free
    span = linear.hstack([cyclic_span(free, v) for v in vectors], free.dim, free.field)
    module = free.quotient(span).target
    logger.debug(f"Drew random {module!r} from {len(pieces)} projectives and {len(vectors)} relations")
    return module


def random_short_exact(module: Module, rng: np.random.Generator) -> ShortExact:
    """
    ``0 -> A·v -> module -> module / A·v -> 0`` for a random vector ``v``.
    """
    if module.is_zero:
        return ShortExact(module.identity(), module.identity())
    span = cyclic_span(module, _random_vector(module, rng))
    return ShortExact(module.submodule(span), module.quotient(span))
