"""
Endomorphisms
-------------
Endomorphism rings of finitely generated modules, stored with the reversed multiplication,
and isomorphism invariants of finite-dimensional algebras.

For ``B = End(M)^rop`` the basis element ``i`` is the endomorphism ``f_i`` and ``f_i ⋆ f_j = f_j ∘ f_i``,
so ``M`` is a right ``B``-module through ``m·f = f(m)``. A finitely generated module has open
annihilator ``Ann(M) = 0``, hence the finite topology on ``B`` is discrete.
"""

from __future__ import annotations
import logging
from typing import List, NamedTuple, Union

from sympy.polys.matrices import DomainMatrix

from tiltkit.algebra import linear
from tiltkit.algebra.fd_algebra import FdAlgebra
from tiltkit.algebra.homological import HomSpace, hom_space
from tiltkit.algebra.integers import ZModule
from tiltkit.algebra.modules import Module, ModuleMap
from tiltkit.pro.levels import IntegersMod, MatrixRing
from tiltkit.pro.pro_ring import DiscreteProRing, make_discrete

logger = logging.getLogger(__name__)


def _column(coordinates: DomainMatrix) -> List:
    return [row[0] for row in linear.entries(coordinates)]


class EndomorphismAlgebra(NamedTuple):
    """
    ``End(M)^rop`` together with the endomorphisms its basis stands for.
    """

    module: Module
    basis: HomSpace
    algebra: FdAlgebra

    def to_map(self, element: DomainMatrix) -> ModuleMap:
        return self.basis.to_map(_column(element))

    def element(self, morphism: ModuleMap) -> DomainMatrix:
        coordinates = self.basis.coordinates(morphism)
        if coordinates is None:
            raise ValueError(f"{morphism!r} is not an endomorphism of {self.module!r}")
        return coordinates

    @property
    def right_module(self) -> Module:
        """
        ``M`` as a right ``B``-module, that is a left module over ``B^op = End(M)``.
        """
        return Module(self.algebra.opposite(), [f.matrix for f in self.basis], check=False)


def endomorphism_algebra(module: Module, name: str = "B") -> EndomorphismAlgebra:
    """
    Compute ``End(module)^rop`` from a basis of ``Hom(module, module)``.
    """
    if module.dim == 0:
        raise ValueError("The zero module has the zero ring as endomorphism ring")
    basis = hom_space(module, module)
    size = len(basis)
    products = [
        [_column(basis.coordinates(basis[j].compose(basis[i]))) for j in range(size)] for i in range(size)
    ]
    unit = _column(basis.coordinates(module.identity()))
    labels = [f"f{i + 1}" for i in range(size)]
    algebra = FdAlgebra.from_structure(module.field, labels, products, unit, name=name)
    logger.debug(f"End({module!r})^rop has dimension {size}")
    return EndomorphismAlgebra(module, basis, algebra)


def endo_topology_fp(module: Union[Module, ZModule], name: str = "B") -> DiscreteProRing:
    """
    ``End(module)^rop`` as a discrete pro-ring.

    Finite abelian groups are supported when they are free over some ``Z/m``; their endomorphism
    ring is then a matrix ring, isomorphic to its opposite through transposition.
    """
    if isinstance(module, ZModule):
        orders = module.invariant_factors
        if not orders or len(set(orders)) != 1 or not module.is_finite:
            raise ValueError(f"Endomorphisms of {module!r} are only supported for nonzero free Z/m-modules")
        base = IntegersMod(orders[0])
        return make_discrete(base if len(orders) == 1 else MatrixRing(base, len(orders)))
    return make_discrete(endomorphism_algebra(module, name).algebra)


class AlgebraInvariants(NamedTuple):
    """
    Dimensions of the algebra, its center, its Jacobson radical and the square of the radical.
    """

    dim: int
    center: int
    radical: int
    radical_squared: int


def _trace(mat: DomainMatrix, field):
    return sum((row[i] for i, row in enumerate(linear.entries(mat))), field.zero)


def algebra_invariants(algebra: FdAlgebra) -> AlgebraInvariants:
    """
    Isomorphism invariants of an algebra over a field of characteristic zero.

    The radical is the kernel of the trace form ``(x, y) -> tr(x·y·-)``.
    """
    field = algebra.field
    if field.characteristic() != 0:
        raise ValueError(f"Trace-form radical of {algebra.name} needs characteristic 0")
    dim = algebra.dim
    left, right = algebra.left_multiplication, algebra.right_multiplication
    commutators = [linear.sub(left[i], right[i]) for i in range(dim)]
    center = dim - linear.rank(linear.vstack(commutators, dim, field)) if dim else 0
    form = linear.from_entries(
        [[_trace(linear.matmul(left[i], left[j]), field) for j in range(dim)] for i in range(dim)], (dim, dim), field
    )
    radical = linear.nullspace(form)
    vectors = [linear.column(radical, k) for k in range(radical.shape[1])]
    squares = [algebra.multiply(a, b) for a in vectors for b in vectors]
    radical_squared = linear.rank(linear.hstack(squares, dim, field)) if squares else 0
    return AlgebraInvariants(dim, center, radical.shape[1], radical_squared)


def invariants_match(algebra: FdAlgebra, other: FdAlgebra) -> bool:
    """
    A certificate for ``algebra ≅ other``: equal invariants are necessary, not sufficient.
    """
    return algebra_invariants(algebra) == algebra_invariants(other)
