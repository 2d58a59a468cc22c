"""
Fixtures
--------
Small algebras and modules with known answers, shared by the tests and by the built-in
inputs of the command line.

Vertices are numbered from 1 in names and from 0 in indices: ``P1`` is ``projective(A, 0)``.
"""

from __future__ import annotations
from pathlib import Path
from typing import Callable, Dict

from tiltkit.algebra.fd_algebra import FdAlgebra, dual_numbers, linear_quiver, path_algebra
from tiltkit.algebra.modules import Module, direct_sum, injective, projective, simple

DATA_DIR = Path(__file__).parent / "data"
"""
Text-format copies of the fixtures, plus ``broken.quiver`` with a malformed arrow.
"""


def a2_algebra() -> FdAlgebra:
    """
    The path algebra of ``1 -> 2`` over the rationals.
    """
    return path_algebra(linear_quiver(2), name="A2")


def a2_modules(algebra: FdAlgebra) -> Dict[str, Module]:
    """
    The indecomposables ``P1, P2, I1, I2, S1, S2`` of the ``A2`` algebra.
    """
    modules = {}
    for vertex in range(2):
        modules[f"P{vertex + 1}"] = projective(algebra, vertex)
        modules[f"I{vertex + 1}"] = injective(algebra, vertex)
        modules[f"S{vertex + 1}"] = simple(algebra, vertex)
    return modules


def a2_tilting(algebra: FdAlgebra) -> Module:
    """
    ``T = P1 ⊕ S1``.
    """
    return direct_sum([projective(algebra, 0), simple(algebra, 0)])[0]


def a2_semisimple(algebra: FdAlgebra) -> Module:
    """
    ``S1 ⊕ S2``, which has self-extensions.
    """
    return direct_sum([simple(algebra, 0), simple(algebra, 1)])[0]


ALGEBRAS: Dict[str, Callable[[], FdAlgebra]] = {
    "a2": a2_algebra,
    "dual-numbers": dual_numbers,
}
"""
Algebras that scenario files may name instead of giving a quiver file.
"""

MODULES: Dict[str, Callable[[FdAlgebra], Module]] = {
    "T": a2_tilting,
    "S1+S2": a2_semisimple,
    "regular": Module.regular,
    **{name: (lambda algebra, name=name: a2_modules(algebra)[name]) for name in ("P1", "P2", "I1", "I2", "S1", "S2")},
}
"""
Modules that scenario files may name instead of giving a module file.
"""
