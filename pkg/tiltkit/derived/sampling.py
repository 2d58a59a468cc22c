"""
Sampling
--------
Seeded random bounded complexes. Differentials are random combinations of a basis of the Hom space
between consecutive terms; a draw that does not square to zero is rejected and redrawn, and after
too many rejections the differential is taken to be zero.
"""

from __future__ import annotations
import logging
from typing import Iterator, List, Optional

import numpy as np

from tiltkit.algebra import linear
from tiltkit.algebra.complexes import BoundedComplex
from tiltkit.algebra.fd_algebra import FdAlgebra
from tiltkit.algebra.homological import hom_space
from tiltkit.algebra.modules import Module, ModuleMap, power
from tiltkit.algebra.sequences import random_module

logger = logging.getLogger(__name__)

TOTAL_DIM_CAP = 12
"""
Default bound on the sum of the dimensions of the terms.
"""


def _random_map(source: Module, target: Module, rng: np.random.Generator) -> ModuleMap:
    basis = hom_space(source, target)
    if not basis.basis:
        return source.zero_map(target)
    coefficients = [linear.convert(int(c), source.field) for c in rng.integers(-2, 3, size=len(basis))]
    return basis.to_map(coefficients)


def _differentials(terms: List[Module], rng: np.random.Generator, retries: int) -> List[ModuleMap]:
    differentials: List[ModuleMap] = []
    for k in range(len(terms) - 1):
        d = terms[k].zero_map(terms[k + 1])
        for _ in range(retries):
            candidate = _random_map(terms[k], terms[k + 1], rng)
            if not differentials or candidate.compose(differentials[-1]).is_zero():
                d = candidate
                break
        differentials.append(d)
    return differentials


def random_complex(
    algebra: FdAlgebra,
    rng: np.random.Generator,
    max_total: int = TOTAL_DIM_CAP,
    length: int = 3,
    lo: Optional[int] = None,
    retries: int = 8,
) -> BoundedComplex:
    """
    A random complex of at most `length` terms with total dimension at most `max_total`.

    :param lo: Lowest degree; drawn from ``-1, 0, 1`` when omitted.
    """
    count = int(rng.integers(1, length + 1))
    start = int(rng.integers(-1, 2)) if lo is None else lo
    terms: List[Module] = []
    total = 0
    for _ in range(count):
        term = random_module(algebra, rng)
        if total + term.dim > max_total:
            term = Module.zero(algebra)
        terms.append(term)
        total += term.dim
    result = BoundedComplex(start, terms, _differentials(terms, rng, retries), zero=Module.zero(algebra))
    logger.debug(f"Drew random {result!r}")
    return result


def random_add_complex(
    tilting: Module, rng: np.random.Generator, length: int = 2, copies: int = 2, retries: int = 8
) -> BoundedComplex:
    """
    A random complex with terms in ``add(T)``: each term is a power of `tilting` with at most `copies` factors.
    """
    terms = [power(tilting, int(rng.integers(0, copies + 1)))[0] for _ in range(int(rng.integers(1, length + 1)))]
    return BoundedComplex(
        int(rng.integers(-1, 1)), terms, _differentials(terms, rng, retries), zero=tilting.zero_object()
    )


def complex_suite(algebra: FdAlgebra, seed: int = 0, count: int = 100, **kwargs) -> Iterator[BoundedComplex]:
    """
    Complex ``k`` draws from the ``k``-th jump of a Philox stream keyed by `seed`.
    """
    for k in range(count):
        rng = np.random.Generator(np.random.Philox(key=seed).jumped(k))
        yield random_complex(algebra, rng, **kwargs)
