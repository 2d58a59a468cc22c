"""
Classes
-------
The tilting class ``E = {E : Ext^i(T, E) = 0 for i > 0}``, its partner ``L`` of modules with a finite
``add(T)``-coresolution, sample modules to test them on, and the two generation conditions that are
equivalent to ``A`` lying in ``L``:

* every ``E`` in ``E`` is a quotient of a finite power of ``T``;
* every module is a quotient of a member of ``L``.
"""

from __future__ import annotations
import logging
from typing import Dict, List, NamedTuple, Optional

import numpy as np

from tiltkit.algebra.fd_algebra import FdAlgebra
from tiltkit.algebra.homological import Universal, ext_from_resolution, projective_cover, resolve, universal_epi
from tiltkit.algebra.modules import Module, ModuleMap, injective, projective, simple
from tiltkit.algebra.sequences import random_module
from .conditions import Coresolution, add_coresolution

logger = logging.getLogger(__name__)


def ext_table(tilting: Module, module: Module, bound: int) -> Dict[int, int]:
    """
    ``dim Ext^i(tilting, module)`` for ``0 < i <= bound``.
    """
    resolution = resolve(tilting, length=bound + 1)
    return {i: ext_from_resolution(resolution, module, i) for i in range(1, bound + 1)}


def in_tilting_class(module: Module, tilting: Module, bound: int) -> bool:
    """
    Membership in ``E``, with Ext checked up to `bound` (enough once ``pd T <= bound``).
    """
    return not any(ext_table(tilting, module, bound).values())


def sample_modules(algebra: FdAlgebra, seed: int = 0, count: int = 4) -> Dict[str, Module]:
    """
    Indecomposable projectives, injectives and simples of a path algebra followed by `count` seeded random modules.
    """
    samples: Dict[str, Module] = {}
    if algebra.is_path_algebra:
        for v, name in enumerate(algebra.quiver.vertices):
            samples[f"P{name}"] = projective(algebra, v)
            samples[f"I{name}"] = injective(algebra, v)
            samples[f"S{name}"] = simple(algebra, v)
    else:
        samples["A"] = Module.regular(algebra)
    for k in range(count):
        rng = np.random.Generator(np.random.Philox(key=seed).jumped(k))
        samples[f"random{k}"] = random_module(algebra, rng)
    return samples


class GenerationCertificate(NamedTuple):
    """
    ``T^(k_m) -> ... -> T^(k_1) -> E -> 0`` built from universal epimorphisms onto successive kernels.
    """

    module: Module
    epis: List[Universal]
    kernels: List[ModuleMap]
    kernel_tables: List[Dict[int, int]]

    @property
    def maps(self) -> List[ModuleMap]:
        """
        The sequence from the right: ``T^(k_1) -> E`` first, then ``T^(k_(j+1)) -> T^(k_j)``.
        """
        result = [self.epis[0].map] if self.epis else []
        for kernel, epi in zip(self.kernels, self.epis[1:]):
            result.append(kernel.compose(epi.map))
        return result

    @property
    def verified(self) -> bool:
        return (
            all(epi.map.is_surjective() for epi in self.epis)
            and all(not any(table.values()) for table in self.kernel_tables)
        )

    def is_exact(self) -> bool:
        maps = self.maps
        for incoming, outgoing in zip(maps[1:], maps):
            if not outgoing.compose(incoming).is_zero():
                return False
            if incoming.rank() != outgoing.source.dim - outgoing.rank():
                return False
        return bool(maps) and maps[0].is_surjective()


def generation_certificate(module: Module, tilting: Module, bound: int) -> GenerationCertificate:
    """
    Present `module` by ``add(tilting)`` in `bound` steps, keeping every kernel's Ext table.
    """
    epis, kernels, tables = [], [], []
    current = module
    for _ in range(max(bound, 1)):
        epi = universal_epi(tilting, current)
        epis.append(epi)
        if not epi.map.is_surjective():
            logger.debug(f"{current!r} is not generated by {tilting!r}")
            break
        kernel = epi.map.kernel()
        kernels.append(kernel)
        tables.append(ext_table(tilting, kernel.source, bound))
        current = kernel.source
        if current.is_zero:
            break
    return GenerationCertificate(module, epis, kernels, tables)


class GenerationCheck(NamedTuple):
    verdict: bool
    results: Dict[str, bool]
    """
    Outcome per tested sample; samples outside ``E`` are left out of the second condition.
    """
    failed: Optional[str]


def check_generated_by_t(tilting: Module, bound: int, samples: Dict[str, Module]) -> GenerationCheck:
    """
    Every sampled member of ``E`` is a quotient of a finite power of ``T``.
    """
    results = {
        name: universal_epi(tilting, module).map.is_surjective()
        for name, module in samples.items()
        if in_tilting_class(module, tilting, bound)
    }
    failed = next((name for name, ok in results.items() if not ok), None)
    return GenerationCheck(failed is None, results, failed)


def lift_from_l(module: Module, tilting: Module, bound: int) -> Optional[Coresolution]:
    """
    A member of ``L`` mapping onto `module`: either a power of ``T`` or the projective cover.

    :return: The coresolution certifying membership of the chosen cover, or ``None``.
    """
    epi = universal_epi(tilting, module)
    if epi.map.is_surjective():
        return add_coresolution(epi.power, tilting, 0)
    coresolution = add_coresolution(projective_cover(module).module, tilting, bound)
    return coresolution if coresolution.verdict else None


def check_quotients_of_l(tilting: Module, bound: int, samples: Dict[str, Module]) -> GenerationCheck:
    """
    Every sample is a quotient of a module with an ``add(T)``-coresolution of length at most `bound`.
    """
    results = {name: lift_from_l(module, tilting, bound) is not None for name, module in samples.items()}
    failed = next((name for name, ok in results.items() if not ok), None)
    return GenerationCheck(failed is None, results, failed)
