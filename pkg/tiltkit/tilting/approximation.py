"""
Approximation
-------------
Approximation sequences for the cotorsion pair ``(L, E)`` of a tilting module:

* ``0 -> F' -> K -> X -> 0`` with ``K`` in ``L`` and ``F'`` in ``E``;
* ``0 -> X -> F -> K' -> 0`` with ``F`` in ``E`` and ``K'`` in ``L``.

Members of ``E`` are approximated directly: ``X -> X`` and the universal epimorphism ``T^h -> X``.
Otherwise ``X`` is embedded into its injective envelope ``I``, the cokernel ``X'`` is approximated
recursively, and both sequences are obtained by pulling back along ``I -> X'``.
"""

from __future__ import annotations
import logging
from typing import Dict, NamedTuple

from tiltkit.algebra.homological import ext, injective_envelope, universal_epi
from tiltkit.algebra.modules import Module, ModuleMap, direct_sum, map_into_components, pullback
from tiltkit.algebra.sequences import ShortExact
from tiltkit.algebra.types import VerificationError
from .classes import ext_table
from .conditions import Coresolution, add_coresolution

logger = logging.getLogger(__name__)


class ApproxPair(NamedTuple):
    """
    Both approximation sequences of a module with their membership certificates.

    :param precover: ``0 -> F' -> K -> X -> 0``.
    :param preenvelope: ``0 -> X -> F -> K' -> 0``.
    :param tables: Ext tables of ``F'`` and ``F`` against ``T``.
    :param coresolutions: ``add(T)``-coresolutions of ``K`` and ``K'``.
    """

    module: Module
    precover: ShortExact
    preenvelope: ShortExact
    tables: Dict[str, Dict[int, int]]
    coresolutions: Dict[str, Coresolution]

    def is_exact(self) -> bool:
        return self.precover.is_exact() and self.preenvelope.is_exact()

    @property
    def certified(self) -> bool:
        return all(not any(table.values()) for table in self.tables.values()) and all(
            coresolution.verdict for coresolution in self.coresolutions.values()
        )

    def orthogonality(self) -> Dict[str, int]:
        """
        ``dim Ext^1`` from both ``L``-terms into both ``E``-terms.
        """
        covers = {"K": self.precover.middle, "K'": self.preenvelope.right}
        classes = {"F'": self.precover.left, "F": self.preenvelope.middle}
        return {
            f"Ext1({cover}, {member})": ext(source, target, 1)
            for cover, source in covers.items()
            for member, target in classes.items()
        }


def _lift_pair(left: ModuleMap, right: ModuleMap, first: ModuleMap, second: ModuleMap) -> ModuleMap:
    """
    The map into the pullback with projections `left`, `right` whose components are `first`, `second`.
    """
    total, injections, _ = direct_sum([left.target, right.target])
    embedding = map_into_components(total, injections, [left, right])
    return map_into_components(total, injections, [first, second]).lift_through(embedding)


def _member_sequences(module: Module, tilting: Module):
    zero = module.zero_object()
    preenvelope = ShortExact(module.identity(), module.zero_map(zero))
    epi = universal_epi(tilting, module).map
    if not epi.is_surjective():
        raise VerificationError(f"{module!r} lies in the tilting class but is not generated by {tilting!r}")
    return ShortExact(epi.kernel(), epi), preenvelope


def _sequences(module: Module, tilting: Module, bound: int, depth: int):
    if depth > bound + 1:
        raise VerificationError(f"Approximation of {module!r} did not reach the tilting class after {depth} steps")
    if not any(ext_table(tilting, module, bound).values()):
        return _member_sequences(module, tilting)
    _, mono = injective_envelope(module)
    cosyzygy = mono.cokernel()
    cover, _ = _sequences(cosyzygy.target, tilting, bound, depth + 1)
    middle, to_envelope, to_cover = pullback(cosyzygy, cover.projection)
    embed = _lift_pair(to_envelope, to_cover, mono, module.zero_map(cover.middle))
    preenvelope = ShortExact(embed, to_cover)
    epi = universal_epi(tilting, middle).map
    kernel = epi.kernel()
    _, to_power, to_module = pullback(epi, embed)
    inclusion = _lift_pair(to_power, to_module, kernel, kernel.source.zero_map(module))
    return ShortExact(inclusion, to_module), preenvelope


def cotorsion_approx(module: Module, tilting: Module, bound: int) -> ApproxPair:
    """
    Both approximation sequences of `module` for a tilting module of projective dimension at most `bound`.
    """
    precover, preenvelope = _sequences(module, tilting, bound, 0)
    tables = {
        "F'": ext_table(tilting, precover.left, bound),
        "F": ext_table(tilting, preenvelope.middle, bound),
    }
    coresolutions = {
        "K": add_coresolution(precover.middle, tilting, bound),
        "K'": add_coresolution(preenvelope.right, tilting, bound),
    }
    pair = ApproxPair(module, precover, preenvelope, tables, coresolutions)
    if not pair.is_exact():
        raise VerificationError(f"Approximation sequences of {module!r} are not exact", witness=pair)
    logger.debug(f"Approximated {module!r}: K = {precover.middle!r}, F = {preenvelope.middle!r}")
    return pair
