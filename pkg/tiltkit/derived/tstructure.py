"""
T-structure
-----------
The tilting t-structure, transported from the standard one over ``B``:
``τ^T_{<=0} x = LΦ(τ_{<=0} RΨ x)`` and ``τ^T_{>=1} x = LΦ(τ_{>=1} RΨ x)``.
Its heart consists of the complexes whose image under ``RΨ`` has homology in degree 0 only.
"""

from __future__ import annotations
import logging
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from tiltkit.algebra.complexes import BoundedComplex
from tiltkit.algebra.homological import ext
from tiltkit.algebra.modules import Module
from tiltkit.algebra.sequences import ShortExact
from tiltkit.algebra.types import VerificationError
from .functors import TiltingPair, ltensor_t, rhom_t
from .replacement import derived_hom_dim

logger = logging.getLogger(__name__)


def _nonzero_degrees(x: BoundedComplex) -> List[int]:
    return [degree for degree in x.degrees if x.homology_dim(degree)]


def truncate_below(y: BoundedComplex, degree: int = 0) -> Tuple[BoundedComplex, List[ShortExact]]:
    """
    ``τ_{<=degree} y = ... -> y^(degree-1) -> ker d^degree -> 0`` with the termwise exact sequences
    ``0 -> τ_{<=degree} y -> y -> y / τ_{<=degree} y -> 0``.
    """
    if y.lo > degree or not y.terms:
        empty = BoundedComplex(y.lo, [], zero=y.zero, check=False)
        return empty, [ShortExact(term.zero_object().zero_map(term), term.identity()) for term in y.terms]
    top = min(degree, y.hi)
    kernel = y.differential(top).kernel() if top == degree else y.term(top).identity()
    terms = [y.term(q) for q in range(y.lo, top)] + [kernel.source]
    differentials = [y.differential(q) for q in range(y.lo, top - 1)]
    if top > y.lo:
        differentials.append(y.differential(top - 1).lift_through(kernel))
    truncated = BoundedComplex(y.lo, terms, differentials, zero=y.zero, check=False)
    sequences = []
    for q in y.degrees:
        term = y.term(q)
        if q < top:
            sequences.append(ShortExact(term.identity(), term.zero_map(term.zero_object())))
        elif q == top:
            sequences.append(ShortExact(kernel, kernel.cokernel()))
        else:
            sequences.append(ShortExact(term.zero_object().zero_map(term), term.identity()))
    return truncated, sequences


def truncate_above(y: BoundedComplex, degree: int = 1) -> BoundedComplex:
    """
    ``τ_{>=degree} y = 0 -> coker d^(degree-1) -> y^(degree+1) -> ...``.
    """
    if y.hi < degree or not y.terms:
        return BoundedComplex(degree, [], zero=y.zero, check=False)
    bottom = max(degree, y.lo)
    projection = y.differential(bottom - 1).cokernel() if bottom == degree else y.term(bottom).identity()
    terms = [projection.target] + [y.term(q) for q in range(bottom + 1, y.hi + 1)]
    differentials = []
    if bottom < y.hi:
        differentials.append(y.differential(bottom).factor_through_cokernel(projection))
    differentials += [y.differential(q) for q in range(bottom + 1, y.hi)]
    return BoundedComplex(bottom, terms, differentials, zero=y.zero, check=False)


class TStructureDecomposition(NamedTuple):
    """
    ``τ^T_{<=0} x -> x -> τ^T_{>=1} x ->`` together with its image over ``B``.

    :param image: ``RΨ x``.
    :param sequences: Termwise exact sequences ``0 -> τ_{<=0} RΨ x -> RΨ x -> quotient -> 0``.
    """

    complex: BoundedComplex
    image: BoundedComplex
    lower: BoundedComplex
    upper: BoundedComplex
    sequences: List[ShortExact]
    nonpositive: BoundedComplex
    positive: BoundedComplex

    def homology_degrees(self) -> Tuple[List[int], List[int]]:
        return _nonzero_degrees(self.nonpositive), _nonzero_degrees(self.positive)

    def is_exact(self) -> bool:
        """
        Termwise exactness over ``B`` and the splitting of homology it forces.
        """
        if not all(sequence.is_exact() for sequence in self.sequences):
            return False
        for degree in self.image.degrees:
            piece = self.lower if degree <= 0 else self.upper
            if piece.homology_dim(degree) != self.image.homology_dim(degree):
                return False
        return True

    def euler_matches(self) -> bool:
        """
        The alternating sums of homology dimensions add up along the triangle.
        """

        def euler(x: BoundedComplex) -> int:
            return sum((-1) ** degree * x.homology_dim(degree) for degree in x.degrees)

        return euler(self.nonpositive) + euler(self.positive) == euler(self.complex)


def tilting_truncate(pair: TiltingPair, x: BoundedComplex) -> TStructureDecomposition:
    """
    Split `x` along the tilting t-structure.
    """
    image = rhom_t(pair, x).complex
    lower, sequences = truncate_below(image, 0)
    upper = truncate_above(image, 1)
    nonpositive = ltensor_t(pair, lower).complex
    positive = ltensor_t(pair, upper).complex
    logger.debug(f"Tilting truncation of {x!r}: {_nonzero_degrees(nonpositive)} / {_nonzero_degrees(positive)}")
    return TStructureDecomposition(x, image, lower, upper, sequences, nonpositive, positive)


def vanishing_holds(pair: TiltingPair, decomposition: TStructureDecomposition) -> bool:
    """
    ``Hom(T, τ^T_{<=0} x [i]) = 0`` for ``i > 0`` and ``Hom(T, τ^T_{>=1} x [i]) = 0`` for ``i <= 0``.
    """
    lower = rhom_t(pair, decomposition.nonpositive).complex
    upper = rhom_t(pair, decomposition.positive).complex
    return all(degree <= 0 for degree in _nonzero_degrees(lower)) and all(
        degree >= 1 for degree in _nonzero_degrees(upper)
    )


class HeartTest(NamedTuple):
    verdict: bool
    homology: Dict[int, int]
    """
    Nonzero ``dim H^i(RΨ x)``.
    """
    realization: Optional[Module]
    """
    ``H^0(RΨ x)`` when `x` lies in the heart.
    """


def heart_test(pair: TiltingPair, x: BoundedComplex) -> HeartTest:
    image = rhom_t(pair, x).complex
    homology = {degree: image.homology_dim(degree) for degree in _nonzero_degrees(image)}
    verdict = all(degree == 0 for degree in homology)
    realization = None
    if verdict:
        realization = image.homology(0).module if image.lo <= 0 <= image.hi else Module.zero(pair.ring)
    return HeartTest(verdict, homology, realization)


def theta_check(
    pair: TiltingPair, x: BoundedComplex, y: BoundedComplex, degrees: Iterable[int] = (0, 1, 2)
) -> Dict[int, Tuple[int, int]]:
    """
    Compare ``dim Ext^i_B(H^0 RΨ x, H^0 RΨ y)`` with ``dim Hom(x, y[i])`` over ``A`` for two heart objects.

    :raises VerificationError: On the first degree where they differ.
    """
    left, right = heart_test(pair, x), heart_test(pair, y)
    if not (left.verdict and right.verdict):
        raise ValueError(f"Both complexes must lie in the heart, got {left.homology} and {right.homology}")
    result = {}
    for degree in degrees:
        over_b = ext(left.realization, right.realization, degree)
        over_a = derived_hom_dim(x, y, degree)
        if over_b != over_a:
            raise VerificationError(f"Ext^{degree} over B is {over_b}, Hom in degree {degree} over A is {over_a}")
        result[degree] = (over_b, over_a)
    return result
