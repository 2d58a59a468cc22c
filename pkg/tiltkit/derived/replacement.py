"""
Replacement
-----------
Quasi-isomorphic replacements of bounded complexes and Hom complexes between them.

Coresolving replacements ``X -> E`` are built degree by degree from the bottom: the next term
receives a mono from the pushout of ``X^(p+1)`` and the cokernel of the previous differential.
An injective envelope is used unless the pushout already lies in the accepted class, in which
case it is taken as it is. Resolving replacements ``P -> Y`` are the dual construction from the top,
with pullbacks and projective covers. Both stop once the pending object vanishes beyond the range
of the input complex.
"""

from __future__ import annotations
import logging
from typing import Callable, Dict, List, NamedTuple, Optional

from sympy.polys.matrices import DomainMatrix

from tiltkit.algebra import linear
from tiltkit.algebra.complexes import BoundedComplex, ChainMap
from tiltkit.algebra.homological import HomSpace, hom_space, injective_envelope, projective_cover
from tiltkit.algebra.modules import Module, ModuleMap, pullback, pushout
from tiltkit.algebra.types import VerificationError

logger = logging.getLogger(__name__)

REPLACEMENT_CAP = 16
"""
Largest number of terms added beyond the range of the input complex.
"""

Acceptance = Callable[[Module], bool]


class Replacement(NamedTuple):
    """
    A replacement complex and the comparison map: ``X -> E`` when coresolving, ``P -> Y`` when resolving.
    """

    complex: BoundedComplex
    map: ChainMap
    complete: bool = True
    """
    ``False`` when a resolving replacement was cut at a lowest degree; the map is then no quasi-isomorphism.
    """


def coresolving_replacement(x: BoundedComplex, accept: Optional[Acceptance] = None) -> Replacement:
    """
    A quasi-isomorphism ``x -> E`` into a bounded complex of injectives or of accepted modules.
    """
    if not x.terms:
        return Replacement(x, ChainMap(x, x, {}, check=False))
    terms: List[Module] = []
    differentials: List[ModuleMap] = []
    components: Dict[int, ModuleMap] = {}
    pending, into_pending, from_previous = x.term(x.lo), x.term(x.lo).identity(), None
    degree = x.lo
    while degree <= x.hi or not pending.is_zero:
        if degree > x.hi + REPLACEMENT_CAP:
            raise VerificationError(f"Coresolving replacement of {x!r} did not stop", witness=degree)
        if accept is not None and accept(pending):
            term, mono = pending, pending.identity()
        else:
            term, mono = injective_envelope(pending)
        terms.append(term)
        components[degree] = mono.compose(into_pending)
        projection = term.identity()
        if from_previous is not None:
            incoming = mono.compose(from_previous)
            differentials.append(incoming)
            projection = incoming.cokernel()
        pending, into_pending, to_pending = pushout(x.differential(degree), projection.compose(components[degree]))
        from_previous = to_pending.compose(projection)
        degree += 1
    result = BoundedComplex(x.lo, terms, differentials, zero=x.zero)
    logger.debug(f"Coresolving replacement of {x!r} has degrees {result.lo}..{result.hi}")
    return Replacement(result, ChainMap(x, result, components))


def resolving_replacement(
    y: BoundedComplex, accept: Optional[Acceptance] = None, lowest: Optional[int] = None
) -> Replacement:
    """
    A quasi-isomorphism ``P -> y`` from a bounded complex of projectives or of accepted modules.

    :param lowest: Stop below this degree even if the resolution goes on.
    """
    if not y.terms:
        return Replacement(y, ChainMap(y, y, {}, check=False))
    terms: List[Module] = []
    differentials: List[ModuleMap] = []
    components: Dict[int, ModuleMap] = {}
    pending, to_target, into_next = y.term(y.hi), y.term(y.hi).identity(), None
    degree = y.hi
    complete = True
    while degree >= y.lo or not pending.is_zero:
        if lowest is not None and degree < lowest:
            complete = False
            break
        if degree < y.lo - REPLACEMENT_CAP:
            raise VerificationError(f"Resolving replacement of {y!r} did not stop", witness=degree)
        if accept is not None and accept(pending):
            term, epi = pending, pending.identity()
        else:
            cover = projective_cover(pending)
            term, epi = cover.module, cover.map
        terms.insert(0, term)
        components[degree] = to_target.compose(epi)
        kernel = term.identity()
        if into_next is not None:
            outgoing = into_next.compose(epi)
            differentials.insert(0, outgoing)
            kernel = outgoing.kernel()
        pending, to_target, to_kernel = pullback(y.differential(degree - 1), components[degree].compose(kernel))
        into_next = kernel.compose(to_kernel)
        degree -= 1
    result = BoundedComplex(degree + 1, terms, differentials, zero=y.zero, check=complete)
    logger.debug(f"Resolving replacement of {y!r} has degrees {result.lo}..{result.hi}")
    return Replacement(result, ChainMap(result, y, components, check=complete), complete)


def _hom_blocks(p: BoundedComplex, y: BoundedComplex, k: int) -> Dict[int, HomSpace]:
    """
    ``Hom^k = sum over q of Hom(p^q, y^(q+k))``, keyed by ``q``.
    """
    return {
        q: hom_space(p.term(q), y.term(q + k))
        for q in p.degrees
        if not p.term(q).is_zero and not y.term(q + k).is_zero
    }


def _offsets(blocks: Dict[int, HomSpace]) -> Dict[int, int]:
    offsets, start = {}, 0
    for q, space in blocks.items():
        offsets[q] = start
        start += len(space)
    return offsets


def _hom_differential(p: BoundedComplex, y: BoundedComplex, k: int, field) -> DomainMatrix:
    """
    ``D(f) = d_y ∘ f - (-1)^k f ∘ d_p`` from ``Hom^k`` to ``Hom^(k+1)``.
    """
    source, target = _hom_blocks(p, y, k), _hom_blocks(p, y, k + 1)
    offsets = _offsets(target)
    rows = sum(len(space) for space in target.values())
    sign = -1 if k % 2 else 1
    columns = []
    for q, space in source.items():
        for f in space:
            column = [field.zero] * rows
            pieces = [(q, y.differential(q + k).compose(f))]
            if q - 1 in target:
                pieces.append((q - 1, f.compose(p.differential(q - 1)).scaled(-sign)))
            for block, piece in pieces:
                if block not in target:
                    continue
                coordinates = target[block].coordinates(piece)
                for i, row in enumerate(linear.entries(coordinates)):
                    column[offsets[block] + i] += row[0]
            columns.append(linear.from_entries([[c] for c in column], (rows, 1), field))
    return linear.hstack(columns, rows, field) if columns else linear.zeros(rows, 0, field)


def hom_complex_dim(p: BoundedComplex, y: BoundedComplex, k: int) -> int:
    """
    ``dim H^k`` of the Hom complex from `p` to `y`; homotopy classes of maps ``p -> y[k]``.
    """
    field = y.zero.field
    dim = sum(len(space) for space in _hom_blocks(p, y, k).values())
    outgoing = linear.rank(_hom_differential(p, y, k, field))
    incoming = linear.rank(_hom_differential(p, y, k - 1, field))
    return dim - outgoing - incoming


def derived_hom_dim(x: BoundedComplex, y: BoundedComplex, k: int) -> int:
    """
    ``dim Hom(x, y[k])`` in the bounded derived category, through a projective replacement of `x`
    cut where it no longer affects the ``k``-th cohomology of the Hom complex.
    """
    if not y.terms or not x.terms:
        return 0
    replacement = resolving_replacement(x, lowest=y.lo - k - 1)
    return hom_complex_dim(replacement.complex, y, k)


def homotopy_matches(x: BoundedComplex, y: BoundedComplex, k: int) -> bool:
    """
    Whether homotopy classes of maps ``x -> y[k]`` and morphisms in the derived category have the same dimension,
    as they must when the terms of `x` have no higher extensions into the terms of `y`.
    """
    direct = hom_complex_dim(x, y, k)
    derived = derived_hom_dim(x, y, k)
    if direct != derived:
        logger.warning(f"Homotopy classes ({direct}) and derived morphisms ({derived}) differ in degree {k}")
    return direct == derived
