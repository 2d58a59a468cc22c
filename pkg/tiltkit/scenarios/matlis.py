"""
Matlis
------
The torsion module ``T = Z[1/s]/Z`` as a 1-tilting module over the integers, checked level by level.

The stages ``M_n = (1/s^n)Z/Z`` are finite cyclic groups, so every claim reduces to finite
abelian group computations: the endomorphism pro-ring of ``T`` is the ``s``-adic chain,
``Hom(T, T^(X))`` is the free contramodule on ``X``, ``Ext^1(T, Z)`` and the dual
``W = Hom(T, Q/Z)`` both form the ``s``-adic tower.
"""

from __future__ import annotations
import logging
from typing import Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel
from sympy import factorint

from tiltkit.algebra import integers
from tiltkit.algebra.integers import ZMap, ZModule
from tiltkit.contramodules import Contramodule, Tower, pl_limit
from tiltkit.pro import levels_match, make_s_completion
from tiltkit.topology import AddEquivalenceReport, ColimitModule, add_equiv_check, endo_topology_colim
from tiltkit.topology import sample_zero_convergence

logger = logging.getLogger(__name__)

INDEX_SIZES = (0, 1, 2, 3)
"""
Sizes of the index sets ``X`` for which ``Hom(T, T^(X))`` is compared with the free contramodule.
"""


class TowerCheck(BaseModel, extra="forbid"):
    """
    A tower of finite groups compared with the ``s``-adic levels ``Z/s^n``.
    """

    name: str
    groups: List[str]
    """
    Elementary divisors of every level group.
    """
    surjective: bool
    """
    Whether every transition map is onto.
    """
    limit: List[str]
    """
    Elementary divisors of the stable images.
    """
    verified: bool


class MatlisReport(BaseModel, extra="forbid"):
    s: int
    precision: int
    level_moduli: List[int]
    chain: bool
    """
    The endomorphism pro-ring of ``T`` equals the ``s``-adic chain up to the precision.
    """
    crt_split: Optional[Dict[int, int]] = None
    """
    Factorization of a composite ``s`` whose prime power chains were assembled and compared.
    """
    crt_verified: Optional[bool] = None
    add_equivalence: List[AddEquivalenceReport]
    ext_identification: Dict[int, bool]
    """
    ``Hom(M_n, T^(I)) ≅ Ext^1(M_n, Z^(I))`` at every level, keyed by ``|I|``.
    """
    ext_tower: TowerCheck
    w_tower: TowerCheck
    convergence: Dict[str, int]
    verified: bool


def _tower_check(name: str, tower: Tower, s: int) -> TowerCheck:
    expected = [ZModule.cyclic(s**n) for n in range(1, tower.precision + 1)]
    groups = tower.groups
    surjective = all(structure.is_surjective() for structure in tower.maps)
    limit = pl_limit(tower)
    verified = (
        surjective
        and all(group.is_isomorphic(other) for group, other in zip(groups, expected))
        and all(image.is_isomorphic(expected[n]) for n, image in enumerate(limit.images))
    )
    if not verified:
        logger.warning(f"The {name} tower does not match the {s}-adic levels")
    return TowerCheck(
        name=name,
        groups=[str(group.elementary_divisors) for group in groups],
        surjective=surjective,
        limit=[str(image.elementary_divisors) for image in limit.images],
        verified=verified,
    )


def ext_tower(module: ColimitModule, precision: int) -> Tower:
    """
    ``Ext^1(M_n, Z)`` with the maps induced by the inclusions ``M_n -> M_(n+1)``.

    ``M_n = Z/s^n`` is resolved by ``0 -> Z --s^n--> Z``; the inclusion, multiplying the generator
    by ``c``, lifts to ``c`` in degree 0 and ``c·s^n/s^(n+1)`` in degree 1, and the latter induces the map on
    ``Ext^1 = coker(Hom(Z, Z) --s^n--> Hom(Z, Z))``.
    """
    if len(module.bases) != 1:
        raise ValueError(f"Ext tower needs a single chain, got {module.name}")
    s = module.bases[0]
    groups = [ZModule.cyclic(s**n) for n in range(1, precision + 1)]
    for n, group in enumerate(groups, start=1):
        computed = integers.ext(module.stage(n), ZModule.free(1), 1)
        if not computed.is_isomorphic(group):
            raise ValueError(f"Ext^1(M_{n}, Z) is {computed!r}, not cyclic of order {s**n}")
    maps = []
    for n in range(1, precision):
        (c,) = module.inclusion(n).matrix[0]
        lifted, remainder = divmod(c * s**n, s ** (n + 1))
        if remainder:
            raise ValueError(f"Inclusion of stage {n} does not lift to the resolutions")
        maps.append(ZMap(groups[n], groups[n - 1], [[lifted]]))
    return Tower(groups, maps)


def _restriction(module: ColimitModule, n: int, upper: integers.HomGroup, lower: integers.HomGroup) -> ZMap:
    """
    ``Hom(M_(n+1), M_(n+1)) -> Hom(M_n, M_n)``, restricting along the inclusion; every map out of
    ``M_n`` lands in the image of ``M_n``.

    Both groups are cyclic: the restriction of the generator of the upper group equals the inclusion
    composed with ``k`` times the generator of the lower group, and ``k`` is read off on the generator of ``M_n``.
    """
    stage = module.stage(n + 1)
    generator = module.generator(n)
    inclusion = module.inclusion(n)
    restricted = stage.canonical(upper.to_map((1,)).compose(inclusion)(generator))[0]
    embedded = stage.canonical(inclusion.compose(lower.to_map((1,)))(generator))[0]
    modulus = lower.group.orders[0]
    step = stage.orders[0] // modulus
    if restricted % step or embedded % step:
        raise ValueError(f"Restriction to stage {n} of {module.name} leaves the image of the inclusion")
    factor = (restricted // step) * pow(embedded // step, -1, modulus) % modulus
    logger.debug(f"Restriction of endomorphisms {n + 1} -> {n} multiplies by {factor}")
    return ZMap(upper.group, lower.group, [[factor]])


def w_tower(module: ColimitModule, precision: int) -> Tower:
    """
    ``Hom(M_n, Q/Z)`` with restriction maps; ``M_n`` is killed by ``s^n``, so its maps into ``Q/Z``
    land in ``(1/s^n)Z/Z = M_n``.
    """
    homs = [integers.hom(module.stage(n), module.stage(n)) for n in range(1, precision + 1)]
    maps = [_restriction(module, n, homs[n], homs[n - 1]) for n in range(1, precision)]
    return Tower([hom.group for hom in homs], maps)


def crt_split(s: int, precision: int, seed: int = 0, samples: int = 32) -> bool:
    """
    Compare the chain of ``s`` with the chain assembled from the prime power factors of ``s``.

    Transitions are compared on sampled elements.
    """
    factors = factorint(s)
    assembled = endo_topology_colim(ColimitModule([int(p) ** e for p, e in factors.items()]))
    chain = make_s_completion(s)
    rng = np.random.Generator(np.random.Philox(key=seed))
    for n in range(1, precision + 1):
        if assembled.level(n) != chain.level(n):
            return False
        if n == precision:
            continue
        for _ in range(samples):
            element = int(rng.integers(0, s ** (n + 1)))
            if assembled.reduce(element, n) != chain.reduce(element, n):
                return False
    return True


def ext_identification(module: ColimitModule, precision: int, sizes: Sequence[int] = INDEX_SIZES) -> Dict[int, bool]:
    """
    Compare ``Hom(M_n, T^(I))``, ``Ext^1(M_n, Z^(I))`` and the free contramodule on ``I`` level by level.
    """
    ring = endo_topology_colim(module)
    result = {}
    for size in sizes:
        free = Contramodule.free(ring, range(size))
        matched = True
        for n in range(1, precision + 1):
            stage = module.stage(n)
            homs = integers.hom(stage, integers.power(stage, size)).group
            extensions = integers.ext(stage, ZModule.free(size), 1)
            if not (homs.is_isomorphic(extensions) and homs.is_isomorphic(free.level_group(n))):
                logger.warning(f"Identification for |I| = {size} fails at level {n}")
                matched = False
                break
        result[size] = matched
    return result


def matlis_verify(s: int, precision: int = 8, seed: int = 0, sizes: Sequence[int] = INDEX_SIZES) -> MatlisReport:
    """
    Run all checks for ``T = Z[1/s]/Z`` up to `precision`.
    """
    if s < 2:
        raise ValueError(f"s must be at least 2, got {s}")
    if precision < 1:
        raise ValueError(f"Precision must be positive, got {precision}")
    module = ColimitModule.matlis_torsion(s)
    module.check(precision)
    ring = endo_topology_colim(module)
    chain = levels_match(ring, make_s_completion(s), precision)
    factors = factorint(s)
    split, split_verified = None, None
    if len(factors) > 1:
        split = {int(p): int(e) for p, e in factors.items()}
        split_verified = crt_split(s, precision, seed)
    equivalence = [add_equiv_check(module, range(size), precision) for size in sizes]
    identification = ext_identification(module, precision, sizes)
    ext_check = _tower_check("Ext^1(T, Z)", ext_tower(module, precision), s)
    w_check = _tower_check("W", w_tower(module, precision), s)
    samples = sample_zero_convergence(module, seed, precision=min(precision, 4), families=20)
    convergence = {"families": len(samples), "agreements": sum(1 for sample in samples if sample.agrees)}
    verified = (
        chain
        and split_verified is not False
        and all(report.verified for report in equivalence)
        and all(identification.values())
        and ext_check.verified
        and w_check.verified
        and convergence["agreements"] == convergence["families"]
    )
    logger.info(f"Matlis scenario for s = {s} at precision {precision}: {'verified' if verified else 'FAILED'}")
    return MatlisReport(
        s=s,
        precision=precision,
        level_moduli=[ring.level(n).modulus for n in range(1, precision + 1)],
        chain=chain,
        crt_split=split,
        crt_verified=split_verified,
        add_equivalence=equivalence,
        ext_identification=identification,
        ext_tower=ext_check,
        w_tower=w_check,
        convergence=convergence,
        verified=verified,
    )
