"""
Gorenstein
----------
Iwanaga-Gorenstein algebras and finite-dimensional cotilting modules.

An algebra is Gorenstein of dimension at most ``n`` when the injective cogenerator ``J = D(A_A)``
has projective dimension at most ``n`` and ``A`` has injective dimension at most ``n``; this holds
exactly when ``J`` is an ``n``-tilting module, which :py:func:`gorenstein_check` confirms.

Cotilting modules are checked through duality: ``D`` turns an ``add(W)``-resolution of ``D(B)``
into an ``add(D(W))``-coresolution of the regular module of ``B^op``.
"""

from __future__ import annotations
import logging
from typing import Dict, List, Optional

from pydantic import BaseModel

from tiltkit.algebra.fd_algebra import FdAlgebra
from tiltkit.algebra.homological import dual_regular, ext
from tiltkit.algebra.modules import Module, power, vector_dual
from tiltkit.algebra.types import VerificationError
from tiltkit.topology.endomorphisms import EndomorphismAlgebra
from .check import tilting_check
from .conditions import check_coresolution, check_pd

logger = logging.getLogger(__name__)

POWER_BOUND = 4
"""
Largest finite power ``W^k`` standing in for arbitrary products in the self-Ext condition of a cotilting module.
"""


class GorensteinReport(BaseModel, extra="forbid"):
    algebra: str
    degree: int
    verdict: bool
    injectives_pd: Optional[int] = None
    """
    ``pd J``, ``None`` above the resolution cap.
    """
    regular_injdim: Optional[int] = None
    tilting: bool


def gorenstein_check(algebra: FdAlgebra, degree: int) -> GorensteinReport:
    """
    Decide ``pd D(A_A) <= degree`` and ``injdim A <= degree``, then compare with the tilting check of ``D(A_A)``.
    """
    cogenerator = dual_regular(algebra)
    injectives = check_pd(cogenerator, degree)
    regular = check_pd(vector_dual(Module.regular(algebra)), degree)
    verdict = injectives.verdict and regular.verdict
    tilting = tilting_check(cogenerator, degree).verdict
    if tilting != verdict:
        raise VerificationError(
            f"{algebra.name}: Gorenstein verdict {verdict} disagrees with the tilting check of D(A) ({tilting})"
        )
    logger.info(f"{algebra.name} is {'' if verdict else 'not '}Gorenstein of dimension at most {degree}")
    return GorensteinReport(
        algebra=algebra.name,
        degree=degree,
        verdict=verdict,
        injectives_pd=injectives.dimension,
        regular_injdim=regular.dimension,
        tilting=tilting,
    )


def cotilting_dual(endomorphisms: EndomorphismAlgebra) -> Module:
    """
    ``D(T) = Hom_A(T, D(A))`` as a left module over ``B = End(T)^rop``.
    """
    return vector_dual(endomorphisms.right_module)


class CotiltingReport(BaseModel, extra="forbid"):
    module: str
    degree: int
    verdict: bool
    conditions: Dict[str, bool]
    """
    Keys ``i*``, ``ii*``, ``iii*``.
    """
    injective_dimension: Optional[int] = None
    ext_table: Dict[int, Dict[int, int]] = {}
    """
    ``dim Ext^i(W^k, W)`` by power ``k`` and degree ``i``.
    """
    resolution_length: Optional[int] = None
    proxies: List[str] = []


def cotilting_check_findim(module: Module, degree: int, power_bound: int = POWER_BOUND) -> CotiltingReport:
    """
    Decide whether `module` is ``degree``-cotilting, with products replaced by powers up to `power_bound`.
    """
    injdim = check_pd(vector_dual(module), degree)
    table = {
        k: {i: ext(power(module, k)[0], module, i) for i in range(1, degree + 1)} for k in range(1, power_bound + 1)
    }
    self_ext = not any(value for row in table.values() for value in row.values())
    resolution = check_coresolution(vector_dual(module), degree)
    conditions = {"i*": injdim.verdict, "ii*": self_ext, "iii*": resolution.verdict}
    verdict = all(conditions.values())
    logger.info(f"{module!r} is {'' if verdict else 'not '}{degree}-cotilting: {conditions}")
    return CotiltingReport(
        module=repr(module),
        degree=degree,
        verdict=verdict,
        conditions=conditions,
        injective_dimension=injdim.dimension,
        ext_table=table,
        resolution_length=resolution.length,
        proxies=[f"PROXY: Ext^i(W^I, W) checked for |I| <= {power_bound} instead of arbitrary products"],
    )
