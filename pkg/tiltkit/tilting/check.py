"""
Check
-----
The full tilting check: the three conditions, the endomorphism algebra ``B = End(T)^rop``,
generation certificates for sampled members of the tilting class and the two generation
conditions that must agree with the coresolution verdict.
"""

from __future__ import annotations
import logging
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from tiltkit.algebra import linear
from tiltkit.algebra.modules import Module
from tiltkit.topology.endomorphisms import algebra_invariants, endomorphism_algebra
from .classes import (
    check_generated_by_t,
    check_quotients_of_l,
    generation_certificate,
    in_tilting_class,
    sample_modules,
)
from .conditions import FINITE_GENERATION_NOTE, check_coresolution, check_pd, check_self_ext

logger = logging.getLogger(__name__)

UNCHECKED_NOTE = (
    "condition (iii) on unbounded complexes is certified only through the equivalent "
    "finite coresolution condition (iii_m)"
)


class TiltingReport(BaseModel, extra="forbid"):
    """
    Outcome of :py:func:`tilting_check`.
    Serializable fields describe the verdicts and carry matrices of the witnesses;
    the computed objects themselves are kept in excluded fields.
    """

    module: str
    degree: int
    verdict: bool
    conditions: Dict[str, bool]
    """
    Keys ``i``, ``ii``, ``iii_m``.
    """
    projective_dimension: Optional[int] = None
    ext_table: Dict[int, int] = {}
    coresolution_length: Optional[int] = None
    failed_stage: Optional[int] = None
    failure: Optional[str] = None
    agreement: Dict[str, bool] = {}
    """
    The coresolution verdict next to the two generation conditions; all three must coincide.
    """
    endomorphism_invariants: Optional[List[int]] = None
    """
    ``(dim, center, radical, radical squared)`` of ``B`` when it is defined over a field of characteristic 0.
    """
    witnesses: Dict[str, Any] = {}
    proxies: List[str] = []

    pd: Any = Field(None, exclude=True)
    self_ext: Any = Field(None, exclude=True)
    coresolution: Any = Field(None, exclude=True)
    endomorphisms: Any = Field(None, exclude=True)
    certificates: Dict[str, Any] = Field(default_factory=dict, exclude=True)

    @property
    def agrees(self) -> bool:
        return len(set(self.agreement.values())) <= 1


def _witnesses(report_pd, self_ext, coresolution) -> Dict[str, Any]:
    witnesses: Dict[str, Any] = {}
    if report_pd.verdict:
        witnesses["resolution"] = [linear.to_strings(d.matrix) for d in report_pd.resolution.differentials]
    elif report_pd.witness is not None:
        witnesses["syzygy"] = repr(report_pd.witness)
    if not self_ext.verdict:
        witnesses["ext_degree"] = self_ext.failing_degree
    if coresolution.verdict:
        witnesses["coresolution"] = [linear.to_strings(stage.map.matrix) for stage in coresolution.stages]
    elif coresolution.stages:
        witnesses["stage"] = {
            "index": coresolution.failed_stage,
            "map": linear.to_strings(coresolution.stages[-1].map.matrix),
        }
    return witnesses


def tilting_check(module: Module, degree: int, seed: int = 0, samples: int = 4) -> TiltingReport:
    """
    Decide whether `module` is an ``degree``-tilting module.

    :param seed: Seed for the random modules the generation conditions are tested on.
    :param samples: Number of random modules added to the indecomposable ones.
    """
    pd = check_pd(module, degree)
    self_ext = check_self_ext(module, degree)
    coresolution = check_coresolution(module, degree)
    conditions = {"i": pd.verdict, "ii": self_ext.verdict, "iii_m": coresolution.verdict}
    verdict = all(conditions.values())
    suite = sample_modules(module.algebra, seed, samples)
    generated = check_generated_by_t(module, degree, suite)
    quotients = check_quotients_of_l(module, degree, suite)
    report = TiltingReport(
        module=repr(module),
        degree=degree,
        verdict=verdict,
        conditions=conditions,
        projective_dimension=pd.dimension,
        ext_table=self_ext.table,
        coresolution_length=coresolution.length,
        failed_stage=coresolution.failed_stage,
        failure=coresolution.reason,
        agreement={"iii_m": coresolution.verdict, "generated": generated.verdict, "quotients": quotients.verdict},
        witnesses=_witnesses(pd, self_ext, coresolution),
        proxies=[FINITE_GENERATION_NOTE, UNCHECKED_NOTE],
        pd=pd,
        self_ext=self_ext,
        coresolution=coresolution,
    )
    if verdict:
        endomorphisms = endomorphism_algebra(module)
        report.endomorphisms = endomorphisms
        if module.field.characteristic() == 0:
            report.endomorphism_invariants = list(algebra_invariants(endomorphisms.algebra))
        report.certificates = {
            name: generation_certificate(sample, module, degree)
            for name, sample in suite.items()
            if in_tilting_class(sample, module, degree)
        }
    logger.info(f"{module!r} is {'' if verdict else 'not '}{degree}-tilting: {conditions}")
    if not report.agrees:
        logger.warning(f"Generation conditions disagree for {module!r}: {report.agreement}")
    return report
