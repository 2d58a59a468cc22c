"""
Good
----
Checks for a good tilting module: ``T`` is perfect as a right module over ``B = End(T)^rop``
and for ``E`` in the tilting class the counit ``T ⊗_B Hom(T, E) -> E`` is an isomorphism with
``Tor_i^B(T, Hom(T, E)) = 0`` for ``i > 0``.
"""

from __future__ import annotations
import logging
from typing import Dict, List, Optional

from pydantic import BaseModel

from tiltkit.algebra import linear
from tiltkit.algebra.homological import Bimodule, TensorProduct, hom_space, tensor_product, tor
from tiltkit.algebra.modules import Module, ModuleMap
from tiltkit.topology.endomorphisms import EndomorphismAlgebra, endomorphism_algebra
from .classes import in_tilting_class
from .conditions import check_pd

logger = logging.getLogger(__name__)


def tilting_bimodule(endomorphisms: EndomorphismAlgebra) -> Bimodule:
    """
    ``T`` with ``B`` acting on the right by ``t·f = f(t)``.
    """
    return Bimodule(endomorphisms.module, endomorphisms.algebra, [f.matrix for f in endomorphisms.basis], check=False)


def hom_module(endomorphisms: EndomorphismAlgebra, module: Module) -> Module:
    """
    ``Hom_A(T, module)`` as a left ``B``-module, ``f·g = g ∘ f``.
    """
    basis = hom_space(endomorphisms.module, module)
    algebra = endomorphisms.algebra
    size = len(basis)
    field = module.field
    action = []
    for f in endomorphisms.basis:
        columns = [basis.coordinates(g.compose(f)) for g in basis]
        action.append(linear.hstack(columns, size, field) if columns else linear.zeros(0, 0, field))
    return Module(algebra, action, check=False)


def counit_map(endomorphisms: EndomorphismAlgebra, module: Module, product: TensorProduct) -> ModuleMap:
    """
    ``T ⊗_B Hom_A(T, module) -> module``, ``t ⊗ g -> g(t)``, on a computed tensor product.
    """
    tilting = endomorphisms.module
    basis = hom_space(tilting, module)
    field = module.field
    # basis of T ⊗_k Hom(T, M) ordered with the T index major
    columns = [linear.column(g.matrix, a) for a in range(tilting.dim) for g in basis]
    raw = linear.hstack(columns, module.dim, field) if columns else linear.zeros(module.dim, 0, field)
    return ModuleMap(product.module, module, linear.matmul(raw, product.section), check=False)


def counit(endomorphisms: EndomorphismAlgebra, module: Module) -> ModuleMap:
    product = tensor_product(tilting_bimodule(endomorphisms), hom_module(endomorphisms, module))
    return counit_map(endomorphisms, module, product)


class GoodTiltingReport(BaseModel, extra="forbid"):
    module: str
    degree: int
    perfect: bool
    resolution_length: Optional[int] = None
    counit: Dict[str, bool] = {}
    tor: Dict[str, Dict[int, int]] = {}
    skipped: List[str] = []
    """
    Samples outside the tilting class, for which nothing is claimed.
    """

    @property
    def verdict(self) -> bool:
        return (
            self.perfect
            and all(self.counit.values())
            and all(not any(table.values()) for table in self.tor.values())
        )


def good_tilting_check(tilting: Module, degree: int, samples: Dict[str, Module]) -> GoodTiltingReport:
    """
    Check perfection of ``T`` over ``B`` and the counit on the samples lying in the tilting class.
    """
    endomorphisms = endomorphism_algebra(tilting)
    right = endomorphisms.right_module
    pd = check_pd(right, degree)
    counits, tors, skipped = {}, {}, []
    for name, module in samples.items():
        if not in_tilting_class(module, tilting, degree):
            skipped.append(name)
            continue
        counits[name] = counit(endomorphisms, module).is_isomorphism()
        homs = hom_module(endomorphisms, module)
        tors[name] = {i: tor(right, homs, i) for i in range(1, degree + 1)}
    report = GoodTiltingReport(
        module=repr(tilting),
        degree=degree,
        perfect=pd.verdict,
        resolution_length=pd.dimension,
        counit=counits,
        tor=tors,
        skipped=skipped,
    )
    logger.info(f"Good tilting check for {tilting!r}: {'passed' if report.verdict else 'failed'}")
    return report
