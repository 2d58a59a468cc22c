"""
Complexes
---------
Bounded cochain complexes and chain maps.

Terms are either :py:class:`~.Module` or :py:class:`~.ZModule` objects; the complex only relies on
the methods both share (``zero_object``, ``zero_map``, ``compose``, ``kernel``, ``cokernel``,
``factor_through_cokernel``), so homology is computed the same way for both:
the cokernel of the incoming differential, then the kernel of the outgoing one descended to it.
"""

from __future__ import annotations
import logging
from typing import Any, Dict, List, NamedTuple, Optional

from . import linear
from .modules import ModuleMap, direct_sum, map_into_components
from .types import VerificationError

logger = logging.getLogger(__name__)


class Homology(NamedTuple):
    """
    ``H^i`` as a subobject of ``coker(d^{i-1})``.
    """

    module: Any
    inclusion: Any
    projection: Any


class BoundedComplex:
    """
    A cochain complex ``X^lo -> ... -> X^hi``; terms outside the range are zero.

    :param lo: Lowest degree.
    :param terms: Terms in degrees ``lo, lo + 1, ...``.
    :param differentials: ``differentials[k]`` goes from degree ``lo + k`` to ``lo + k + 1``;
        the last one may be omitted.
    :param zero: Zero object of the right kind, needed only for an empty complex.
    :param check: Verify that consecutive differentials compose to zero.
    """

    def __init__(
        self, lo: int, terms: List[Any], differentials: Optional[List[Any]] = None, zero=None, check: bool = True
    ):
        if zero is None:
            if not terms:
                raise ValueError("An empty complex needs an explicit zero object")
            zero = terms[0].zero_object()
        self.zero = zero
        self.lo = lo
        self.terms = list(terms)
        differentials = list(differentials or [])
        for k in range(len(differentials), len(self.terms) - 1):
            differentials.append(self.terms[k].zero_map(self.terms[k + 1]))
        self.differentials = differentials[: max(len(self.terms) - 1, 0)]
        for k, d in enumerate(self.differentials):
            if d.source is not self.terms[k] or d.target is not self.terms[k + 1]:
                raise ValueError(f"Differential {lo + k} does not connect the terms in degrees {lo + k}, {lo + k + 1}")
        if check:
            self.check()

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def term(self, degree: int):
        if self.lo <= degree <= self.hi:
            return self.terms[degree - self.lo]
        return self.zero

    def differential(self, degree: int):
        """
        ``d^degree: X^degree -> X^(degree + 1)``.
        """
        if self.lo <= degree < self.hi:
            return self.differentials[degree - self.lo]
        return self.term(degree).zero_map(self.term(degree + 1))

    def check(self):
        for degree in range(self.lo, self.hi - 1):
            square = self.differential(degree + 1).compose(self.differential(degree))
            if not square.is_zero():
                raise ValueError(f"Differentials in degrees {degree}, {degree + 1} do not compose to zero")

    def homology(self, degree: int) -> Homology:
        projection = self.differential(degree - 1).cokernel()
        descended = self.differential(degree).factor_through_cokernel(projection)
        inclusion = descended.kernel()
        return Homology(inclusion.source, inclusion, projection)

    def homology_dim(self, degree: int) -> int:
        """
        Dimension of ``H^degree`` for complexes of modules over an algebra.
        """
        incoming = self.differential(degree - 1)
        outgoing = self.differential(degree)
        return self.term(degree).dim - outgoing.rank() - incoming.rank()

    def homology_dims(self) -> Dict[int, int]:
        return {degree: self.homology_dim(degree) for degree in self.degrees}

    def is_acyclic(self) -> bool:
        return all(dim == 0 for dim in self.homology_dims().values())

    @property
    def total_dim(self) -> int:
        return sum(term.dim for term in self.terms)

    def shift(self, steps: int) -> BoundedComplex:
        """
        ``X[steps]``: degree ``i`` holds ``X^(i + steps)`` and differentials change sign for odd shifts.
        """
        sign = -1 if steps % 2 else 1
        return BoundedComplex(
            self.lo - steps, self.terms, [d.scaled(sign) for d in self.differentials], zero=self.zero, check=False
        )

    def trimmed(self) -> BoundedComplex:
        """
        The same complex with zero terms at both ends removed.
        """
        nonzero = [degree for degree in self.degrees if not self.term(degree).is_zero]
        if not nonzero:
            return BoundedComplex(0, [], zero=self.zero, check=False)
        lo, hi = nonzero[0], nonzero[-1]
        return BoundedComplex(
            lo,
            [self.term(degree) for degree in range(lo, hi + 1)],
            [self.differential(degree) for degree in range(lo, hi)],
            zero=self.zero,
            check=False,
        )

    @classmethod
    def stalk(cls, module, degree: int = 0) -> BoundedComplex:
        """
        A single object concentrated in one degree.
        """
        return cls(degree, [module], check=False)

    def __repr__(self) -> str:
        inner = ", ".join(f"{degree}: {self.term(degree)!r}" for degree in self.degrees)
        return f"BoundedComplex({inner})"


class ChainMap:
    """
    A morphism of complexes of modules, one component per degree; missing components are zero.
    """

    def __init__(
        self, source: BoundedComplex, target: BoundedComplex, components: Dict[int, ModuleMap], check: bool = True
    ):
        self.source = source
        self.target = target
        self.components = dict(components)
        if check:
            self.check()

    def component(self, degree: int) -> ModuleMap:
        if degree in self.components:
            return self.components[degree]
        return self.source.term(degree).zero_map(self.target.term(degree))

    def check(self):
        lo = min(self.source.lo, self.target.lo) - 1
        hi = max(self.source.hi, self.target.hi)
        for degree in range(lo, hi + 1):
            left = self.target.differential(degree).compose(self.component(degree))
            right = self.component(degree + 1).compose(self.source.differential(degree))
            if not left.equals(right):
                raise VerificationError(f"Chain map does not commute in degree {degree}", witness=degree)

    def homology_rank(self, degree: int) -> int:
        """
        Rank of the induced map ``H^degree(source) -> H^degree(target)``.
        """
        field = self.target.zero.field
        cycles = linear.nullspace(self.source.differential(degree).matrix)
        boundaries = self.target.differential(degree - 1).matrix
        rows = self.target.term(degree).dim
        images = linear.matmul(self.component(degree).matrix, cycles)
        return linear.rank(linear.hstack([images, boundaries], rows, field)) - linear.rank(boundaries)

    def is_quasi_isomorphism(self) -> bool:
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for degree in range(lo, hi + 1):
            rank = self.homology_rank(degree)
            if rank != self.source.homology_dim(degree) or rank != self.target.homology_dim(degree):
                return False
        return True


def _extended(complex_: BoundedComplex, lo: int, hi: int) -> BoundedComplex:
    return BoundedComplex(
        lo,
        [complex_.term(degree) for degree in range(lo, hi + 1)],
        [complex_.differential(degree) for degree in range(lo, hi)],
        zero=complex_.zero,
        check=False,
    )


def cone(morphism: ChainMap) -> BoundedComplex:
    """
    The mapping cone: ``C^i = X^(i+1) + Y^i`` with ``d(x, y) = (-d x, f x + d y)``.
    """
    source, target = morphism.source, morphism.target
    lo = min(source.lo - 1, target.lo)
    hi = max(source.hi - 1, target.hi)
    terms, sums = [], []
    for degree in range(lo, hi + 1):
        total, injections, projections = direct_sum([source.term(degree + 1), target.term(degree)], target.zero.algebra)
        terms.append(total)
        sums.append((injections, projections))
    differentials = []
    for k, degree in enumerate(range(lo, hi)):
        (_, projections), (injections, _) = sums[k], sums[k + 1]
        x_part = source.differential(degree + 1).scaled(-1).compose(projections[0])
        y_part = morphism.component(degree + 1).compose(projections[0]) + target.differential(degree).compose(
            projections[1]
        )
        d = map_into_components(terms[k + 1], injections, [x_part, y_part])
        differentials.append(d)
    return BoundedComplex(lo, terms, differentials, zero=target.zero)


def direct_sum_complex(complexes: List[BoundedComplex]) -> BoundedComplex:
    """
    Termwise direct sum.
    """
    zero = complexes[0].zero
    lo = min(c.lo for c in complexes)
    hi = max(c.hi for c in complexes)
    sums = [direct_sum([c.term(degree) for c in complexes], zero.algebra) for degree in range(lo, hi + 1)]
    differentials = []
    for k in range(hi - lo):
        source, injections_s, projections_s = sums[k]
        target, injections_t, _ = sums[k + 1]
        pieces = [
            injections_t[j].compose(c.differential(lo + k)).compose(projections_s[j]) for j, c in enumerate(complexes)
        ]
        matrix = pieces[0]
        for piece in pieces[1:]:
            matrix = matrix + piece
        differentials.append(matrix)
    return BoundedComplex(lo, [s[0] for s in sums], differentials, zero=zero)
