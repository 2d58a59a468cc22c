"""
Homological
-----------
Hom spaces, projective covers and resolutions, Ext, Tor, tensor products over an algebra,
summand tests and the duality ``D = Hom_k(-, k)``.

Functions accept :py:class:`~.Module` arguments and, where it makes sense, dispatch to the
integer versions in :py:mod:`.integers` when given :py:class:`~.ZModule` arguments.
"""

from __future__ import annotations
import logging
from collections.abc import Sequence as SequenceABC
from dataclasses import dataclass, field as dataclass_field
from functools import cached_property
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy.polys.matrices import DomainMatrix

from . import integers, linear
from .complexes import BoundedComplex
from .fd_algebra import FdAlgebra
from .integers import ZMap, ZModule
from .modules import (
    Module,
    ModuleMap,
    direct_sum,
    map_from_components,
    map_into_components,
    power,
    projective,
    vector_dual,
)
from .types import VerificationError

logger = logging.getLogger(__name__)

RESOLUTION_CAP = 16
"""
Longest resolution computed before a module is reported as having large projective dimension.
"""


def _check_same_ring(left: Module, right: Module):
    if left.algebra is not right.algebra:
        raise ValueError(f"Ring mismatch: {left.algebra.name} and {right.algebra.name}")


class HomSpace(SequenceABC):
    """
    A basis of ``Hom_A(source, target)`` with coordinate maps.
    """

    def __init__(self, source: Module, target: Module, basis: List[ModuleMap]):
        self.source = source
        self.target = target
        self.basis = basis

    def __len__(self) -> int:
        return len(self.basis)

    def __getitem__(self, index):
        return self.basis[index]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _vectors(self) -> DomainMatrix:
        size = self.source.dim * self.target.dim
        field = self.source.field
        return linear.hstack([linear.vectorize(f.matrix) for f in self.basis], size, field)

    def coordinates(self, morphism: ModuleMap) -> Optional[DomainMatrix]:
        """
        Coordinates of `morphism` in the basis, or ``None`` if it is not a homomorphism.
        """
        return linear.solve(self._vectors, linear.vectorize(morphism.matrix))

    def to_map(self, coordinates: Sequence) -> ModuleMap:
        shape = (self.target.dim, self.source.dim)
        matrix = linear.linear_combination(coordinates, [f.matrix for f in self.basis], shape, self.source.field)
        return ModuleMap(self.source, self.target, matrix, check=False)


def _vertex_equations(source: Module, target: Module) -> Tuple[DomainMatrix, List[int], List[Tuple[int, int]]]:
    algebra = source.algebra
    quiver = algebra.quiver
    field = algebra.field
    sd, td = source.vertex_dims, target.vertex_dims
    starts, total = [], 0
    for v in range(len(sd)):
        starts.append(total)
        total += sd[v] * td[v]
    rows = []
    for arrow in quiver.arrows:
        s, t = quiver.vertex_index(arrow.source), quiver.vertex_index(arrow.target)
        n_a, m_a = target.arrow_matrix(arrow.name), source.arrow_matrix(arrow.name)
        left = linear.kron(n_a, linear.identity(sd[s], field))
        right = linear.kron(linear.identity(td[t], field), linear.transpose(m_a))
        block = linear.zeros(td[t] * sd[s], total, field)
        data = linear.entries(block)
        for i, row in enumerate(linear.entries(left)):
            for j, entry in enumerate(row):
                data[i][starts[s] + j] += entry
        for i, row in enumerate(linear.entries(right)):
            for j, entry in enumerate(row):
                data[i][starts[t] + j] -= entry
        rows.extend(data)
    equations = linear.from_entries(rows, (len(rows), total), field)
    return equations, starts, list(zip(sd, td))


def hom_space(source: Union[Module, ZModule], target: Union[Module, ZModule]):
    """
    ``Hom(source, target)``.

    :return: A :py:class:`HomSpace` (a basis of maps) over an algebra, or an
        :py:class:`~.integers.HomGroup` with explicit generators over the integers.
    """
    if isinstance(source, ZModule) and isinstance(target, ZModule):
        return integers.hom(source, target)
    _check_same_ring(source, target)
    field = source.field
    if source.dim == 0 or target.dim == 0:
        return HomSpace(source, target, [])
    basis = []
    if source.vertex_dims is not None and target.vertex_dims is not None:
        equations, starts, shapes = _vertex_equations(source, target)
        solutions = linear.nullspace(equations)
        sources_at, targets_at = source.offsets, target.offsets
        for k in range(solutions.shape[1]):
            flat = [row[k] for row in linear.entries(solutions)]
            data = [[field.zero] * source.dim for _ in range(target.dim)]
            for v, (sdim, tdim) in enumerate(shapes):
                for i in range(tdim):
                    for j in range(sdim):
                        data[targets_at[v] + i][sources_at[v] + j] = flat[starts[v] + i * sdim + j]
            mat = linear.from_entries(data, (target.dim, source.dim), field)
            basis.append(ModuleMap(source, target, mat, check=False))
    else:
        blocks = []
        for s, t in zip(source.action, target.action):
            blocks.append(
                linear.sub(
                    linear.kron(t, linear.identity(source.dim, field)),
                    linear.kron(linear.identity(target.dim, field), linear.transpose(s)),
                )
            )
        equations = linear.vstack(blocks, source.dim * target.dim, field)
        solutions = linear.nullspace(equations)
        for k in range(solutions.shape[1]):
            matrix = linear.unvectorize(linear.column(solutions, k), (target.dim, source.dim))
            basis.append(ModuleMap(source, target, matrix, check=False))
    logger.debug(f"dim Hom({source!r}, {target!r}) = {len(basis)}")
    return HomSpace(source, target, basis)


def hom_dim(source: Module, target: Module) -> int:
    return len(hom_space(source, target))


@dataclass
class Cover:
    """
    A projective module mapping onto a module.

    :param module: The projective module ``P``.
    :param map: The surjection ``P -> M``.
    :param vertices: Vertex of each indecomposable summand (path algebras), else empty.
    """

    module: Module
    map: ModuleMap
    vertices: List[int] = dataclass_field(default_factory=list)


def radical_span(module: Module) -> DomainMatrix:
    """
    Columns spanning ``rad M``, the sum of the images of the arrows.
    """
    algebra = module.algebra
    images = module.action[algebra.vertex_count :]
    return linear.hstack(images, module.dim, module.field) if images else linear.zeros(module.dim, 0, module.field)


def top(module: Module) -> List[Tuple[int, DomainMatrix]]:
    """
    Vectors spanning a complement of the radical at each vertex, tagged with their vertex.
    """
    field = module.field
    radical = radical_span(module)
    result = []
    for v in range(module.algebra.vertex_count):
        start, size = module.offsets[v], module.vertex_dims[v]
        block = linear.columns(linear.identity(module.dim, field), range(start, start + size))
        local = linear.matmul(module.action[v], radical)
        complement = linear.relative_complement(local, block)
        for k in range(complement.shape[1]):
            result.append((v, linear.column(complement, k)))
    return result


def _map_from_generator(source: Module, target: Module, basis_elements: Sequence[int], vector: DomainMatrix):
    # column j is b_j acting on the chosen vector
    images = [linear.matmul(target.basis_action[b], vector) for b in basis_elements]
    return linear.hstack(images, target.dim, target.field)


def projective_cover(module: Module) -> Cover:
    """
    A projective cover over a path algebra (minimal, built from the top), otherwise a free
    module on a greedily chosen generating set.
    """
    algebra = module.algebra
    if module.is_zero:
        return Cover(module.zero_object(), module.identity(), [])
    if algebra.is_path_algebra:
        if module.vertex_dims is None:
            raise ValueError("Projective covers over path algebras need modules in vertex form")
        summands, components, vertices = [], [], []
        for v, vector in top(module):
            p = projective(algebra, v)
            chosen = sorted(
                (b for b in range(algebra.dim) if algebra.vertex_support(b)[0] == v),
                key=lambda b: algebra.vertex_support(b)[1],
            )
            summands.append(p)
            components.append(ModuleMap(p, module, _map_from_generator(p, module, chosen, vector), check=False))
            vertices.append(v)
        cover, injections, _ = direct_sum(summands, algebra)
        return Cover(cover, map_from_components(cover, injections, components), vertices)
    regular = Module.regular(algebra)
    field = module.field
    generated = linear.zeros(module.dim, 0, field)
    components = []
    for k in range(module.dim):
        vector = linear.column(linear.identity(module.dim, field), k)
        if linear.in_span(generated, vector):
            continue
        images = _map_from_generator(regular, module, range(algebra.dim), vector)
        components.append(ModuleMap(regular, module, images, check=False))
        generated = linear.hstack([generated, images], module.dim, field)
    cover, injections, _ = power(regular, len(components))
    return Cover(cover, map_from_components(cover, injections, components))


def is_projective(module: Module) -> bool:
    if module.is_zero:
        return True
    if module.algebra.is_path_algebra:
        return projective_cover(module).module.dim == module.dim
    return summand_test(module, Module.regular(module.algebra)) is not None


@dataclass
class Resolution:
    """
    A projective resolution ``... -> P_1 -> P_0 -> M -> 0``.

    :param module: The resolved module.
    :param terms: ``P_0, P_1, ...``.
    :param differentials: ``d_k: P_k -> P_(k-1)`` for ``k >= 1``; ``differentials[0]`` is ``d_1``.
    :param augmentation: ``P_0 -> M``.
    :param syzygy: Inclusion of the kernel of the last differential (zero for complete resolutions).
    """

    module: Union[Module, ZModule]
    terms: list
    differentials: list
    augmentation: Union[ModuleMap, ZMap]
    syzygy: Optional[Union[ModuleMap, ZMap]] = None
    vertices: List[List[int]] = dataclass_field(default_factory=list)

    @property
    def is_complete(self) -> bool:
        return self.syzygy is None or self.syzygy.source.is_zero

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def term(self, k: int):
        if 0 <= k < len(self.terms):
            return self.terms[k]
        return self.terms[0].zero_object()

    def differential(self, k: int):
        """
        ``d_k: P_k -> P_(k-1)``; zero outside the computed range.
        """
        if 1 <= k < len(self.terms):
            return self.differentials[k - 1]
        return self.term(k).zero_map(self.term(k - 1))

    @property
    def complex(self) -> BoundedComplex:
        """
        The resolution as a cochain complex in degrees ``-length .. 0``.
        """
        count = len(self.terms)
        return BoundedComplex(
            -(count - 1),
            list(reversed(self.terms)),
            list(reversed(self.differentials)),
            check=False,
        )


def resolve(module: Union[Module, ZModule], length: Optional[int] = None, cap: int = RESOLUTION_CAP) -> Resolution:
    """
    Compute a projective resolution.

    Over a path algebra the resolution is minimal; over other algebras it stops as soon as a
    syzygy is projective. Over the integers the canonical length-one resolution is returned.

    :param module: The module to resolve.
    :param length: Stop after ``P_length`` even if the resolution continues.
    :param cap: Largest length computed when `length` is not given.
    """
    if isinstance(module, ZModule):
        return _resolve_integers(module)
    limit = cap if length is None else length
    generic = not module.algebra.is_path_algebra

    def cover_of(target: Module) -> Cover:
        if generic and is_projective(target):
            return Cover(target, target.identity())
        return projective_cover(target)

    cover = cover_of(module)
    terms, differentials, vertices = [cover.module], [], [cover.vertices]
    augmentation = cover.map
    kernel = cover.map.kernel()
    while not kernel.source.is_zero and len(terms) <= limit:
        step = cover_of(kernel.source)
        terms.append(step.module)
        differentials.append(kernel.compose(step.map))
        vertices.append(step.vertices)
        kernel = step.map.kernel()
    if not kernel.source.is_zero and length is None:
        logger.warning(f"Resolution of {module!r} did not terminate within {cap} steps")
    logger.debug(f"Resolved {module!r} with {len(terms)} terms")
    return Resolution(module, terms, differentials, augmentation, kernel, vertices)


def _resolve_integers(module: ZModule) -> Resolution:
    orders = module.orders
    free = ZModule(len(orders))
    torsion = [k for k, order in enumerate(orders) if order]
    relations = ZModule(len(torsion))
    generators = module.canonical_generators
    augmentation = ZMap(free, module, [[gen[i] for gen in generators] for i in range(module.generators)], check=False)
    data = [[orders[k] if k == torsion[j] else 0 for j in range(len(torsion))] for k in range(len(orders))]
    terms, differentials = [free], []
    if torsion:
        terms.append(relations)
        differentials.append(ZMap(relations, free, data, check=False))
    return Resolution(module, terms, differentials, augmentation, ZModule(0).identity())


def projective_resolution(module: Union[Module, ZModule], length: int) -> BoundedComplex:
    """
    The first ``length + 1`` terms of a projective resolution as a complex in degrees ``-length .. 0``
    (trailing zero terms are dropped).
    """
    if length < 0:
        raise ValueError(f"Resolution length must be non-negative, got {length}")
    return resolve(module, length=length).complex


def projective_dimension(module: Module, cap: int = RESOLUTION_CAP) -> Optional[int]:
    """
    Projective dimension, ``-1`` for the zero module and ``None`` when it exceeds `cap`.
    """
    if module.is_zero:
        return -1
    resolution = resolve(module, cap=cap)
    if not resolution.is_complete:
        return None
    return resolution.length


def injective_dimension(module: Module, cap: int = RESOLUTION_CAP) -> Optional[int]:
    """
    Injective dimension, computed as the projective dimension of the dual.
    """
    return projective_dimension(vector_dual(module), cap)


def _restriction_rank(resolution: Resolution, target: Module, k: int) -> int:
    """
    Rank of ``Hom(P_k, N) -> Hom(P_(k+1), N)``, ``f -> f ∘ d_(k+1)``.
    """
    source = resolution.term(k)
    following = resolution.term(k + 1)
    if source.is_zero or following.is_zero:
        return 0
    d = resolution.differential(k + 1)
    images = [linear.vectorize(f.compose(d).matrix) for f in hom_space(source, target)]
    if not images:
        return 0
    return linear.rank(linear.hstack(images, following.dim * target.dim, target.field))


def ext(source: Union[Module, ZModule], target: Union[Module, ZModule], degree: int) -> Union[int, ZModule]:
    """
    ``Ext^degree(source, target)`` from a projective resolution of `source`.

    :return: The dimension over the ground field for modules over an algebra, a :py:class:`~.ZModule`
        over the integers.
    """
    if degree < 0:
        raise ValueError(f"Degree must be non-negative, got {degree}")
    if isinstance(source, ZModule):
        return integers.ext(source, target, degree)
    _check_same_ring(source, target)
    resolution = resolve(source, length=degree + 1)
    return ext_from_resolution(resolution, target, degree)


def ext_from_resolution(resolution: Resolution, target: Module, degree: int) -> int:
    """
    ``dim Ext^degree`` computed from a given (possibly non-minimal) resolution.
    """
    term = resolution.term(degree)
    cochains = hom_dim(term, target) if not term.is_zero else 0
    outgoing = _restriction_rank(resolution, target, degree)
    incoming = _restriction_rank(resolution, target, degree - 1) if degree > 0 else 0
    return cochains - outgoing - incoming


class Bimodule:
    """
    A module over ``A`` with a commuting right action of ``B``.

    :param module: The underlying left ``A``-module.
    :param right_algebra: ``B``.
    :param right_action: For each generator ``b`` of ``B``, the matrix of ``m -> m·b``.
    """

    def __init__(
        self, module: Module, right_algebra: FdAlgebra, right_action: Sequence[DomainMatrix], check: bool = True
    ):
        self.module = module
        self.right_algebra = right_algebra
        self.right_action = list(right_action)
        if check:
            # as a left module over the opposite algebra
            Module(right_algebra.opposite(), self.right_action)
            for left in module.action:
                for right in self.right_action:
                    if not linear.equal(linear.matmul(left, right), linear.matmul(right, left)):
                        raise ValueError("Left and right actions do not commute")

    @classmethod
    def from_right_module(cls, module: Module) -> Bimodule:
        """
        A right ``A``-module (a left module over the opposite) as a ``k``-``A`` bimodule.
        """
        field = module.field
        ground = FdAlgebra.ground(field)
        underlying = Module(ground, [linear.identity(module.dim, field)], check=False)
        return cls(underlying, module.algebra.opposite(), module.action, check=False)

    @property
    def right_module(self) -> Module:
        return Module(self.right_algebra.opposite(), self.right_action, check=False)


@dataclass
class TensorProduct:
    """
    ``T ⊗_B N`` with the projection from ``T ⊗_k N`` onto it and a section of that projection.
    """

    module: Module
    projection: DomainMatrix
    section: DomainMatrix


def tensor_product(bimodule: Bimodule, module: Module) -> TensorProduct:
    """
    ``T ⊗_B N``: the quotient of ``T ⊗_k N`` by ``t·b ⊗ n - t ⊗ b·n`` for generators ``b`` of ``B``.
    """
    if module.algebra is not bimodule.right_algebra:
        raise ValueError(f"Ring mismatch: {module.algebra.name} and {bimodule.right_algebra.name}")
    left = bimodule.module
    field = left.field
    size = left.dim * module.dim
    relations = [
        linear.sub(
            linear.kron(right, linear.identity(module.dim, field)), linear.kron(linear.identity(left.dim, field), act)
        )
        for right, act in zip(bimodule.right_action, module.action)
    ]
    span = linear.hstack(relations, size, field) if relations else linear.zeros(size, 0, field)
    actions = [linear.kron(act, linear.identity(module.dim, field)) for act in left.action]
    total = Module(left.algebra, actions, check=False)
    projection = total.quotient(span)
    section = linear.solve(projection.matrix, linear.identity(projection.target.dim, field))
    return TensorProduct(projection.target, projection.matrix, section)


def tensor_map(bimodule: Bimodule, source: TensorProduct, target: TensorProduct, morphism: ModuleMap) -> ModuleMap:
    """
    ``1 ⊗ f`` between tensor products computed by :py:func:`tensor_product`.
    """
    field = morphism.field
    lifted = linear.kron(linear.identity(bimodule.module.dim, field), morphism.matrix)
    matrix = linear.compose(target.projection, lifted, source.section)
    return ModuleMap(source.module, target.module, matrix, check=False)


def tor(right: Union[Module, ZModule], left: Union[Module, ZModule], degree: int) -> Union[int, ZModule]:
    """
    ``Tor_degree(right, left)``, resolving the right module.

    :param right: A right module, i.e. a module over the opposite algebra of `left`'s algebra.
    :return: The dimension over the ground field, or a :py:class:`~.ZModule` over the integers.
    """
    if degree < 0:
        raise ValueError(f"Degree must be non-negative, got {degree}")
    if isinstance(right, ZModule):
        return integers.tor(right, left, degree)
    if right.algebra is not left.algebra.opposite():
        raise ValueError(
            f"Side mismatch: {right.algebra.name} does not act on the right of {left.algebra.name} modules"
        )
    resolution = resolve(right, length=degree + 1)
    field = left.field

    def relation_span(term: Module) -> DomainMatrix:
        size = term.dim * left.dim
        blocks = [
            linear.sub(
                linear.kron(r, linear.identity(left.dim, field)), linear.kron(linear.identity(term.dim, field), l)
            )
            for r, l in zip(term.action, left.action)
        ]
        return linear.hstack(blocks, size, field) if blocks else linear.zeros(size, 0, field)

    def tensored(k: int) -> DomainMatrix:
        return linear.kron(resolution.differential(k).matrix, linear.identity(left.dim, field))

    term = resolution.term(degree)
    size = term.dim * left.dim
    if size == 0:
        return 0
    below = resolution.term(degree - 1)
    if degree > 0 and not below.is_zero:
        _, quotient = linear.quotient_projection(relation_span(below), below.dim * left.dim, field)
        cycles = size - linear.rank(linear.matmul(quotient, tensored(degree)))
    else:
        cycles = size
    boundaries = linear.hstack([relation_span(term), tensored(degree + 1)], size, field)
    return cycles - linear.rank(boundaries)


@dataclass
class Universal:
    """
    A universal map ``M -> N^h`` (or ``N^h -> M``) built from a basis of the Hom space.
    """

    power: Module
    map: ModuleMap
    injections: List[ModuleMap]
    projections: List[ModuleMap]
    basis: HomSpace


def universal_map(module: Module, other: Module) -> Universal:
    """
    ``u = (f_1, ..., f_h): M -> N^h`` for a basis ``f_j`` of ``Hom(M, N)``; every map from ``M`` into
    a finite power of ``N`` factors through it.
    """
    basis = hom_space(module, other)
    target, injections, projections = power(other, len(basis))
    if not basis.basis:
        return Universal(target, module.zero_map(target), injections, projections, basis)
    return Universal(target, map_into_components(target, injections, basis.basis), injections, projections, basis)


def universal_epi(other: Module, module: Module) -> Universal:
    """
    ``(g_1, ..., g_h): N^h -> M`` for a basis ``g_j`` of ``Hom(N, M)``; surjective exactly when ``M`` is
    generated by ``N``.
    """
    basis = hom_space(other, module)
    source, injections, projections = power(other, len(basis))
    if not basis.basis:
        return Universal(source, source.zero_map(module), injections, projections, basis)
    return Universal(source, map_from_components(source, injections, basis.basis), injections, projections, basis)


def summand_test(
    module: Union[Module, ZModule], other: Union[Module, ZModule]
) -> Optional[Tuple[Union[ModuleMap, ZMap], Union[ModuleMap, ZMap]]]:
    """
    Decide whether `module` is a direct summand of a finite direct sum of copies of `other`.

    Over an algebra this holds exactly when the universal map ``u: M -> N^h`` is a split mono; a
    retraction ``Σ c_jl h_l ∘ π_j`` with ``h_l`` running over ``Hom(N, M)`` is found by linear algebra.

    :return: ``(s, r)`` with ``r ∘ s = id`` through ``N^k``, or ``None``.
    """
    if isinstance(module, ZModule):
        return integers.summand_test(module, other)
    _check_same_ring(module, other)
    field = module.field
    if module.is_zero:
        target, _, _ = power(other, 0)
        return module.zero_map(target), target.zero_map(module)
    universal = universal_map(module, other)
    forward = universal.basis.basis
    if not forward:
        return None
    backward = hom_space(other, module).basis
    if not backward:
        return None
    size = module.dim * module.dim
    products = [linear.vectorize(h.compose(f).matrix) for f in forward for h in backward]
    system = linear.hstack(products, size, field)
    solution = linear.solve(system, linear.vectorize(linear.identity(module.dim, field)))
    if solution is None:
        return None
    coefficients = [row[0] for row in linear.entries(solution)]
    pieces = []
    for j in range(len(forward)):
        chunk = coefficients[j * len(backward) : (j + 1) * len(backward)]
        matrix = linear.linear_combination(chunk, [h.matrix for h in backward], (module.dim, other.dim), field)
        pieces.append(ModuleMap(other, module, matrix, check=False))
    retraction = map_from_components(universal.power, universal.injections, pieces)
    if not retraction.compose(universal.map).equals(module.identity()):
        raise VerificationError("Retraction does not split the universal map", witness=retraction)
    return universal.map, retraction


def injective_envelope(module: Module) -> Tuple[Module, ModuleMap]:
    """
    An injective module with a mono from `module`, dual to a projective cover of ``D(M)``.
    """
    cover = projective_cover(vector_dual(module))
    injective_module = vector_dual(cover.module)
    return injective_module, ModuleMap(module, injective_module, linear.transpose(cover.map.matrix), check=False)


def dual_regular(algebra: FdAlgebra) -> Module:
    """
    ``D(A_A)``, the injective cogenerator of left ``A``-modules.
    """
    return vector_dual(Module.regular(algebra.opposite()))


def is_isomorphic(module: Module, other: Module, attempts: int = 16, seed: int = 0) -> bool:
    """
    Decide isomorphism by looking for an invertible element of ``Hom(M, N)``.

    Random combinations of a basis are tried; over ``Q`` a failure after all attempts means the
    invertible maps form an empty set with overwhelming probability.
    """
    _check_same_ring(module, other)
    if module.dim != other.dim or module.vertex_dims != other.vertex_dims:
        return False
    if module.is_zero:
        return True
    basis = hom_space(module, other)
    if not basis.basis:
        return False
    rng = np.random.Generator(np.random.Philox(seed))
    for _ in range(attempts):
        coefficients = [linear.convert(int(value), module.field) for value in rng.integers(-100, 101, size=len(basis))]
        if basis.to_map(coefficients).is_isomorphism():
            return True
    return False
