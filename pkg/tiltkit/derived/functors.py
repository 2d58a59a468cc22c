"""
Functors
--------
The derived functors of a tilting module ``T`` with ``B = End(T)^rop``:
``RΨ = RHom_A(T, -)`` from complexes over ``A`` to complexes over ``B`` and
``LΦ = T ⊗^L_B -`` back.

``RΨ`` applies ``Hom_A(T, -)`` to a replacement by modules of the tilting class, which are acyclic
for it; ``LΦ`` applies ``T ⊗_B -`` to a replacement by modules ``M`` with ``Tor_i^B(T, M) = 0``.
"""

from __future__ import annotations
import logging
from functools import cached_property
from typing import NamedTuple, Sequence

from tiltkit.algebra import linear
from tiltkit.algebra.complexes import BoundedComplex
from tiltkit.algebra.homological import TensorProduct, hom_space, tensor_map, tensor_product, tor
from tiltkit.algebra.modules import Module, ModuleMap
from tiltkit.tilting.classes import in_tilting_class
from tiltkit.tilting.good import hom_module, tilting_bimodule
from tiltkit.topology.endomorphisms import endomorphism_algebra
from .replacement import Replacement, coresolving_replacement, resolving_replacement

logger = logging.getLogger(__name__)


class TiltingPair:
    """
    A tilting module together with the data both derived functors need.

    :param tilting: ``T``, assumed to have passed the tilting check.
    :param degree: Bound ``n`` on ``pd T``.
    """

    def __init__(self, tilting: Module, degree: int):
        self.tilting = tilting
        self.degree = degree
        self.algebra = tilting.algebra
        self.endomorphisms = endomorphism_algebra(tilting)
        self.ring = self.endomorphisms.algebra
        self.bimodule = tilting_bimodule(self.endomorphisms)
        self.right = self.endomorphisms.right_module

    def in_class(self, module: Module) -> bool:
        return in_tilting_class(module, self.tilting, self.degree)

    def tor_acyclic(self, module: Module) -> bool:
        return all(tor(self.right, module, i) == 0 for i in range(1, self.degree + 1))

    @cached_property
    def regular(self) -> Module:
        return Module.regular(self.ring)

    def __repr__(self) -> str:
        return f"TiltingPair({self.tilting!r}, {self.degree})"


def homology(x: BoundedComplex, degree: int):
    """
    ``H^degree(x)`` as a module (or an integer module for complexes of abelian groups).
    """
    return x.homology(degree).module


def hom_map(pair: TiltingPair, morphism: ModuleMap, source: Module, target: Module) -> ModuleMap:
    """
    ``Hom_A(T, f)`` between the ``B``-modules computed by :py:func:`~tiltkit.tilting.good.hom_module`.
    """
    tilting = pair.tilting
    basis = hom_space(tilting, morphism.source)
    images = hom_space(tilting, morphism.target)
    field = morphism.field
    columns = [images.coordinates(morphism.compose(g)) for g in basis]
    matrix = linear.hstack(columns, len(images), field) if columns else linear.zeros(len(images), 0, field)
    return ModuleMap(source, target, matrix, check=False)


class DerivedImage(NamedTuple):
    """
    The image of a complex under a derived functor with the replacement it was computed from.
    """

    complex: BoundedComplex
    replacement: Replacement
    products: Sequence[TensorProduct] = ()
    """
    Tensor products per degree of the replacement, for ``LΦ``.
    """


def rhom_t(pair: TiltingPair, x: BoundedComplex) -> DerivedImage:
    """
    ``RHom_A(T, x)``; its ``H^i`` is ``Hom(T, x[i])`` in the derived category.
    """
    replacement = coresolving_replacement(x, pair.in_class)
    resolved = replacement.complex
    terms = [hom_module(pair.endomorphisms, term) for term in resolved.terms]
    differentials = [
        hom_map(pair, resolved.differential(degree), terms[k], terms[k + 1])
        for k, degree in enumerate(resolved.degrees)
        if k + 1 < len(terms)
    ]
    result = BoundedComplex(resolved.lo, terms, differentials, zero=Module.zero(pair.ring))
    logger.debug(f"RHom(T, {x!r}) = {result!r}")
    return DerivedImage(result, replacement)


def ltensor_t(pair: TiltingPair, y: BoundedComplex) -> DerivedImage:
    """
    ``T ⊗^L_B y``.
    """
    replacement = resolving_replacement(y, pair.tor_acyclic)
    resolved = replacement.complex
    products = [tensor_product(pair.bimodule, term) for term in resolved.terms]
    differentials = [
        tensor_map(pair.bimodule, products[k], products[k + 1], resolved.differential(degree))
        for k, degree in enumerate(resolved.degrees)
        if k + 1 < len(products)
    ]
    result = BoundedComplex(
        resolved.lo, [product.module for product in products], differentials, zero=Module.zero(pair.algebra)
    )
    logger.debug(f"T ⊗L {y!r} = {result!r}")
    return DerivedImage(result, replacement, products)
