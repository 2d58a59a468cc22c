"""
Roundtrip
---------
Certificates that ``LΦ`` and ``RΨ`` are mutually inverse on given complexes.

Over ``A`` the counit ``T ⊗_B Hom(T, E) -> E`` is assembled into a chain map from ``LΦ RΨ x`` to
the replacement ``E`` of ``x``; over ``B`` the unit ``P -> Hom(T, T ⊗_B P)`` is assembled into a
chain map from the replacement ``P`` of ``y`` to ``RΨ LΦ y``. Each is certified by comparing ranks
on homology, together with the replacement map it is composed with.
"""

from __future__ import annotations
import logging
from enum import Enum, unique
from typing import Dict, List

from pydantic import BaseModel

from tiltkit.algebra import linear
from tiltkit.algebra.complexes import BoundedComplex, ChainMap
from tiltkit.algebra.homological import hom_space, tensor_map, tensor_product
from tiltkit.algebra.modules import Module, ModuleMap
from tiltkit.algebra.types import VerificationError
from tiltkit.tilting.good import counit_map
from .functors import TiltingPair, ltensor_t, rhom_t

logger = logging.getLogger(__name__)


@unique
class Direction(str, Enum):
    """
    Where the round trip starts: complexes over ``A`` go through ``B`` and back, and vice versa.
    """

    ALGEBRA = "A"
    ENDOMORPHISMS = "B"


class RoundTripCertificate(BaseModel, extra="forbid"):
    direction: Direction
    homology: Dict[int, int]
    """
    ``dim H^i`` of the input complex, matched by the output in every degree.
    """
    components: Dict[int, List[List[str]]]
    """
    Matrices of the comparison map, by degree.
    """
    certified: bool


def _unit_component(pair: TiltingPair, term: Module, product, resolution_map: ModuleMap, target: Module) -> ModuleMap:
    """
    ``p -> f ∘ (t -> t ⊗ p)`` from a term of the replacement over ``B`` into ``Hom(T, E)``.
    """
    tilting = pair.tilting
    field = term.field
    images = hom_space(tilting, resolution_map.target)
    columns = []
    for j in range(term.dim):
        entries = [linear.column(product.projection, a * term.dim + j) for a in range(tilting.dim)]
        inclusion = linear.hstack(entries, product.module.dim, field)
        image = ModuleMap(tilting, resolution_map.target, linear.matmul(resolution_map.matrix, inclusion), check=False)
        columns.append(images.coordinates(image))
    matrix = linear.hstack(columns, len(images), field) if columns else linear.zeros(len(images), 0, field)
    return ModuleMap(term, target, matrix, check=False)


def _comparison(pair: TiltingPair, x: BoundedComplex, direction: Direction) -> ChainMap:
    if direction == Direction.ALGEBRA:
        forward = rhom_t(pair, x)
        back = ltensor_t(pair, forward.complex)
        resolved = forward.replacement.complex
        resolution = back.replacement.map
        components = {}
        for k, degree in enumerate(back.replacement.complex.degrees):
            homs = forward.complex.term(degree)
            if homs.is_zero:
                continue
            product = tensor_product(pair.bimodule, homs)
            lifted = tensor_map(pair.bimodule, back.products[k], product, resolution.component(degree))
            components[degree] = counit_map(pair.endomorphisms, resolved.term(degree), product).compose(lifted)
        comparison = ChainMap(back.complex, resolved, components)
        if not forward.replacement.map.is_quasi_isomorphism():
            raise VerificationError(f"Replacement of {x!r} is not a quasi-isomorphism")
        return comparison
    back = ltensor_t(pair, x)
    forward = rhom_t(pair, back.complex)
    resolved = back.replacement.complex
    components = {}
    for k, degree in enumerate(resolved.degrees):
        term = resolved.term(degree)
        if term.is_zero:
            continue
        components[degree] = _unit_component(
            pair, term, back.products[k], forward.replacement.map.component(degree), forward.complex.term(degree)
        )
    if not back.replacement.map.is_quasi_isomorphism():
        raise VerificationError(f"Replacement of {x!r} is not a quasi-isomorphism")
    return ChainMap(resolved, forward.complex, components)


def roundtrip_check(
    pair: TiltingPair, x: BoundedComplex, direction: Direction = Direction.ALGEBRA
) -> RoundTripCertificate:
    """
    Certify ``LΦ RΨ x ≅ x`` (starting over ``A``) or ``RΨ LΦ x ≅ x`` (starting over ``B``).

    :raises VerificationError: With the first degree where homology is not matched.
    """
    comparison = _comparison(pair, x, direction)
    lo = min(comparison.source.lo, comparison.target.lo, x.lo)
    hi = max(comparison.source.hi, comparison.target.hi, x.hi)
    homology = {}
    for degree in range(lo, hi + 1):
        expected = x.homology_dim(degree)
        rank = comparison.homology_rank(degree)
        if not (
            rank == expected
            and comparison.source.homology_dim(degree) == expected
            and comparison.target.homology_dim(degree) == expected
        ):
            raise VerificationError(f"Round trip of {x!r} fails in degree {degree}", witness=degree)
        if expected:
            homology[degree] = expected
    logger.debug(f"Round trip over {direction.value} certified for {x!r}")
    return RoundTripCertificate(
        direction=direction,
        homology=homology,
        components={degree: linear.to_strings(c.matrix) for degree, c in comparison.components.items()},
        certified=True,
    )
