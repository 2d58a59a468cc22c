"""
Modules
-------
Finite-dimensional left modules over a :py:class:`~.FdAlgebra` and the maps between them.

A module stores one action matrix per algebra generator. Over a bound path algebra every
module built here is kept in vertex form: the basis is grouped by vertex, idempotents act as
coordinate projections and an arrow ``a: i -> j`` acts through a ``dim_j x dim_i`` block.
Right modules are left modules over the opposite algebra.
"""

from __future__ import annotations
import logging
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from . import linear
from .fd_algebra import FdAlgebra

logger = logging.getLogger(__name__)


class Module:
    """
    A finite-dimensional left module.

    :param algebra: The acting algebra.
    :param action: One square matrix per generator of `algebra`.
    :param check: Verify that the matrices define an action.
    """

    def __init__(self, algebra: FdAlgebra, action: Sequence[DomainMatrix], check: bool = True):
        self.algebra = algebra
        self.field = algebra.field
        self.action = list(action)
        if len(self.action) != len(algebra.generators):
            raise ValueError(f"Module over {algebra.name} needs {len(algebra.generators)} action matrices")
        self.dim = self.action[0].shape[0] if self.action else 0
        for mat in self.action:
            if mat.shape != (self.dim, self.dim):
                raise ValueError(f"Action matrix of shape {mat.shape} does not fit dimension {self.dim}")
        if check:
            self.check_action()

    @classmethod
    def from_representation(
        cls, algebra: FdAlgebra, dims: Sequence[int], arrows: Dict[str, DomainMatrix], check: bool = True
    ) -> Module:
        """
        Build a module over a path algebra from a dimension vector and arrow matrices.

        :param dims: Dimension at each vertex, in vertex order.
        :param arrows: Matrix of shape ``(dim at target, dim at source)`` per arrow; missing arrows act as zero.
        """
        quiver = algebra.quiver
        if quiver is None:
            raise ValueError(f"Algebra {algebra.name} is not a path algebra")
        if len(dims) != len(quiver.vertices):
            raise ValueError(f"Dimension vector {list(dims)} does not match {len(quiver.vertices)} vertices")
        for name in arrows:
            quiver.arrow_index(name)
        field = algebra.field
        offsets = _offsets(dims)
        total = sum(dims)
        action = []
        for v in range(len(dims)):
            data = [[field.zero] * total for _ in range(total)]
            for k in range(offsets[v], offsets[v] + dims[v]):
                data[k][k] = field.one
            action.append(linear.from_entries(data, (total, total), field))
        for a, arrow in enumerate(quiver.arrows):
            s, t = quiver.source(a), quiver.target(a)
            block = arrows.get(arrow.name)
            if block is None:
                block = linear.zeros(dims[t], dims[s], field)
            if block.shape != (dims[t], dims[s]):
                shape = (dims[t], dims[s])
                raise ValueError(f"Matrix for arrow {arrow.name!r} must have shape {shape}, got {block.shape}")
            data = [[field.zero] * total for _ in range(total)]
            for i, row in enumerate(linear.entries(block)):
                for j, entry in enumerate(row):
                    data[offsets[t] + i][offsets[s] + j] = entry
            action.append(linear.from_entries(data, (total, total), field))
        return cls(algebra, action, check=check)

    @classmethod
    def zero(cls, algebra: FdAlgebra) -> Module:
        return cls(algebra, [linear.zeros(0, 0, algebra.field) for _ in algebra.generators], check=False)

    @classmethod
    def regular(cls, algebra: FdAlgebra) -> Module:
        """
        The algebra as a left module over itself, basis reordered into vertex form for path algebras.
        """
        order = list(range(algebra.dim))
        if algebra.is_path_algebra:
            order.sort(key=lambda index: algebra.vertex_support(index)[1])
        return _restrict_to_coordinates(algebra, algebra.left_multiplication, order)

    def zero_object(self) -> Module:
        return Module.zero(self.algebra)

    def check_action(self):
        """
        Verify ``ρ(1) = 1`` and ``ρ(g)ρ(b) = ρ(g·b)`` for every generator ``g`` and basis element ``b``.
        """
        algebra = self.algebra
        identity = linear.identity(self.dim, self.field)
        if not linear.equal(self.element_action(algebra.unit_vector()), identity):
            raise ValueError(f"Unit of {algebra.name} does not act as the identity")
        for position, g in enumerate(algebra.generators):
            for b in range(algebra.dim):
                product = linear.column(algebra.left_multiplication[g], b)
                if not linear.equal(
                    linear.matmul(self.action[position], self.basis_action[b]), self.element_action(product)
                ):
                    raise ValueError(
                        f"Matrices violate the relations of {algebra.name} at {algebra.labels[g]}·{algebra.labels[b]}"
                    )

    @cached_property
    def basis_action(self) -> List[DomainMatrix]:
        """
        Action matrix of every basis element of the algebra.
        """
        result = []
        for word in self.algebra.words:
            mat = linear.identity(self.dim, self.field)
            for position in word:
                mat = linear.matmul(self.action[position], mat)
            result.append(mat)
        return result

    def element_action(self, element: DomainMatrix) -> DomainMatrix:
        coefficients = [row[0] for row in linear.entries(element)]
        return linear.linear_combination(coefficients, self.basis_action, (self.dim, self.dim), self.field)

    @cached_property
    def vertex_dims(self) -> Optional[Tuple[int, ...]]:
        """
        Dimension vector when the module is in vertex form, ``None`` otherwise.
        """
        algebra = self.algebra
        if not algebra.is_path_algebra:
            return None
        dims = []
        offset = 0
        for v in range(algebra.vertex_count):
            projection = linear.entries(self.action[v])
            size = sum(1 for k in range(self.dim) if projection[k][k] == self.field.one)
            block = range(offset, offset + size)
            for i in range(self.dim):
                for j in range(self.dim):
                    expected = self.field.one if i == j and i in block else self.field.zero
                    if projection[i][j] != expected:
                        return None
            dims.append(size)
            offset += size
        return tuple(dims) if offset == self.dim else None

    @property
    def offsets(self) -> List[int]:
        if self.vertex_dims is None:
            raise ValueError("Module is not in vertex form")
        return _offsets(self.vertex_dims)

    def arrow_matrix(self, name: str) -> DomainMatrix:
        """
        The block through which an arrow acts, of shape ``(dim at target, dim at source)``.
        """
        quiver = self.algebra.quiver
        a = quiver.arrow_index(name)
        s, t = quiver.source(a), quiver.target(a)
        dims, offsets = self.vertex_dims, self.offsets
        return linear.submatrix(
            self.action[len(quiver.vertices) + a],
            range(offsets[t], offsets[t] + dims[t]),
            range(offsets[s], offsets[s] + dims[s]),
        )

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def identity(self) -> ModuleMap:
        return ModuleMap(self, self, linear.identity(self.dim, self.field), check=False)

    def zero_map(self, target: Module) -> ModuleMap:
        return ModuleMap(self, target, linear.zeros(target.dim, self.dim, self.field), check=False)

    def submodule(self, span: DomainMatrix) -> ModuleMap:
        """
        The inclusion of the submodule spanned by the columns of `span`, which must be invariant.
        """
        submodule, inclusion = _sub_or_quotient(self, span, sub=True)
        return ModuleMap(submodule, self, inclusion, check=False)

    def quotient(self, span: DomainMatrix) -> ModuleMap:
        """
        The projection onto the quotient by the invariant subspace spanned by the columns of `span`.
        """
        quotient, projection = _sub_or_quotient(self, span, sub=False)
        return ModuleMap(self, quotient, projection, check=False)

    def __repr__(self) -> str:
        if self.vertex_dims is not None:
            return f"Module({self.algebra.name}, dims={list(self.vertex_dims)})"
        return f"Module({self.algebra.name}, dim={self.dim})"


def _offsets(dims: Sequence[int]) -> List[int]:
    offsets, total = [], 0
    for d in dims:
        offsets.append(total)
        total += d
    return offsets


def _restrict_to_coordinates(algebra: FdAlgebra, mats: Sequence[DomainMatrix], order: Sequence[int]) -> Module:
    action = [linear.submatrix(mats[g], order, order) for g in algebra.generators]
    return Module(algebra, action, check=False)


def _vertex_adapted(module: Module, span: DomainMatrix) -> List[DomainMatrix]:
    """
    A basis of an invariant subspace split into its pieces at each vertex.
    """
    pieces = []
    for v in range(module.algebra.vertex_count):
        projected = linear.matmul(module.action[v], span)
        pieces.append(linear.column_basis(projected) if projected.shape[1] else projected)
    return pieces


def _sub_or_quotient(module: Module, span: DomainMatrix, sub: bool) -> Tuple[Module, DomainMatrix]:
    field, dim = module.field, module.dim
    basis = linear.column_basis(span) if span.shape[1] else linear.zeros(dim, 0, field)
    if module.vertex_dims is not None:
        pieces = _vertex_adapted(module, basis)
        if sub:
            chosen = linear.hstack(pieces, dim, field)
        else:
            # complement inside each vertex block
            offsets, dims = module.offsets, module.vertex_dims
            complements = []
            for v, piece in enumerate(pieces):
                block = linear.columns(linear.identity(dim, field), range(offsets[v], offsets[v] + dims[v]))
                complements.append(linear.relative_complement(piece, block))
            chosen = linear.hstack(complements, dim, field)
    elif sub:
        chosen = basis
    else:
        chosen = linear.complement(basis, dim, field)
    if sub:
        action = [linear.solve(chosen, linear.matmul(mat, chosen)) for mat in module.action]
        if any(mat is None for mat in action):
            raise ValueError("Subspace is not invariant under the action")
        return Module(module.algebra, action, check=False), chosen
    change = linear.inverse(linear.hstack([basis, chosen], dim, field))
    projection = linear.submatrix(change, range(basis.shape[1], dim), range(dim))
    action = [linear.compose(projection, mat, chosen) for mat in module.action]
    return Module(module.algebra, action, check=False), projection


class ModuleMap:
    """
    A module homomorphism given by its matrix, of shape ``(target.dim, source.dim)``.
    """

    def __init__(self, source: Module, target: Module, matrix: DomainMatrix, check: bool = True):
        if source.algebra is not target.algebra:
            raise ValueError(f"Ring mismatch: {source.algebra.name} and {target.algebra.name}")
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(f"Map matrix of shape {matrix.shape} does not fit {source!r} -> {target!r}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not self.is_homomorphism():
            raise ValueError("Matrix does not commute with the action")

    def is_homomorphism(self) -> bool:
        return all(
            linear.equal(linear.matmul(t, self.matrix), linear.matmul(self.matrix, s))
            for s, t in zip(self.source.action, self.target.action)
        )

    @property
    def field(self):
        return self.source.field

    def __call__(self, vector: DomainMatrix) -> DomainMatrix:
        return linear.matmul(self.matrix, vector)

    def compose(self, other: ModuleMap) -> ModuleMap:
        """
        ``self ∘ other``.
        """
        if other.target is not self.source and other.target.dim != self.source.dim:
            raise ValueError("Maps are not composable")
        return ModuleMap(other.source, self.target, linear.matmul(self.matrix, other.matrix), check=False)

    def __add__(self, other: ModuleMap) -> ModuleMap:
        return ModuleMap(self.source, self.target, linear.add(self.matrix, other.matrix), check=False)

    def __sub__(self, other: ModuleMap) -> ModuleMap:
        return ModuleMap(self.source, self.target, linear.sub(self.matrix, other.matrix), check=False)

    def scaled(self, factor) -> ModuleMap:
        return ModuleMap(self.source, self.target, linear.scale(self.matrix, factor), check=False)

    def is_zero(self) -> bool:
        return linear.is_zero(self.matrix)

    def equals(self, other: ModuleMap) -> bool:
        return linear.equal(self.matrix, other.matrix)

    def rank(self) -> int:
        return linear.rank(self.matrix)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def block(self, vertex: int) -> DomainMatrix:
        """
        The component at a vertex, for maps between modules in vertex form.
        """
        so, to = self.source.offsets, self.target.offsets
        sd, td = self.source.vertex_dims, self.target.vertex_dims
        rows = range(to[vertex], to[vertex] + td[vertex])
        return linear.submatrix(self.matrix, rows, range(so[vertex], so[vertex] + sd[vertex]))

    def kernel(self) -> ModuleMap:
        """
        The inclusion of the kernel into the source.
        """
        return self.source.submodule(linear.nullspace(self.matrix))

    def cokernel(self) -> ModuleMap:
        """
        The projection of the target onto the cokernel.
        """
        return self.target.quotient(self.matrix)

    def image(self) -> Tuple[ModuleMap, ModuleMap]:
        """
        Factor the map as a surjection onto its image followed by an inclusion.
        """
        inclusion = self.target.submodule(self.matrix)
        surjection = linear.solve(inclusion.matrix, self.matrix)
        return ModuleMap(self.source, inclusion.source, surjection, check=False), inclusion

    def factor_through_cokernel(self, projection: ModuleMap) -> ModuleMap:
        """
        The map induced on ``projection.target`` by a map vanishing on the kernel of `projection`.
        """
        section = linear.solve(projection.matrix, linear.identity(projection.target.dim, self.field))
        return ModuleMap(projection.target, self.target, linear.matmul(self.matrix, section), check=False)

    def lift_through(self, inclusion: ModuleMap) -> ModuleMap:
        """
        The map ``h`` with ``inclusion ∘ h = self``, for a map landing in the image of a mono.
        """
        solution = linear.solve(inclusion.matrix, self.matrix)
        if solution is None:
            raise ValueError("Map does not land in the image of the inclusion")
        return ModuleMap(self.source, inclusion.source, solution, check=False)

    def __repr__(self) -> str:
        return f"ModuleMap({self.source!r} -> {self.target!r})"


def direct_sum(
    modules: Sequence[Module], algebra: Optional[FdAlgebra] = None
) -> Tuple[Module, List[ModuleMap], List[ModuleMap]]:
    """
    Direct sum with injections and projections; stays in vertex form when the summands are.

    :param algebra: Needed only when `modules` is empty.
    """
    if not modules:
        return Module.zero(algebra), [], []
    algebra = modules[0].algebra
    field = algebra.field
    for module in modules:
        if module.algebra is not algebra:
            raise ValueError(f"Ring mismatch: {module.algebra.name} and {algebra.name}")
    total = sum(module.dim for module in modules)
    order = list(range(total))
    if all(module.vertex_dims is not None for module in modules) and algebra.is_path_algebra:
        starts = _offsets([module.dim for module in modules])
        order = [
            starts[k] + module.offsets[v] + i
            for v in range(algebra.vertex_count)
            for k, module in enumerate(modules)
            for i in range(module.vertex_dims[v])
        ]
    position = {old: new for new, old in enumerate(order)}
    blocks = [
        linear.block_diagonal([module.action[g] for module in modules], field) for g in range(len(algebra.generators))
    ]
    action = [linear.submatrix(block, order, order) for block in blocks]
    result = Module(algebra, action, check=False)
    injections, projections = [], []
    start = 0
    for module in modules:
        data = [[field.zero] * module.dim for _ in range(total)]
        for i in range(module.dim):
            data[position[start + i]][i] = field.one
        inject = linear.from_entries(data, (total, module.dim), field)
        injections.append(ModuleMap(module, result, inject, check=False))
        projections.append(ModuleMap(result, module, linear.transpose(inject), check=False))
        start += module.dim
    return result, injections, projections


def power(module: Module, count: int) -> Tuple[Module, List[ModuleMap], List[ModuleMap]]:
    return direct_sum([module] * count, module.algebra)


def map_from_components(source: Module, injections: Sequence[ModuleMap], maps: Sequence[ModuleMap]) -> ModuleMap:
    """
    The map out of a direct sum that restricts to ``maps[k]`` on summand ``k``.
    """
    target = maps[0].target
    matrix = linear.zeros(target.dim, source.dim, source.field)
    for inject, component in zip(injections, maps):
        matrix = linear.add(matrix, linear.matmul(component.matrix, linear.transpose(inject.matrix)))
    return ModuleMap(source, target, matrix, check=False)


def map_into_components(target: Module, injections: Sequence[ModuleMap], maps: Sequence[ModuleMap]) -> ModuleMap:
    """
    The map into a direct sum whose component ``k`` is ``maps[k]``.
    """
    source = maps[0].source
    matrix = linear.zeros(target.dim, source.dim, source.field)
    for inject, component in zip(injections, maps):
        matrix = linear.add(matrix, linear.matmul(inject.matrix, component.matrix))
    return ModuleMap(source, target, matrix, check=False)


def pullback(left: ModuleMap, right: ModuleMap) -> Tuple[Module, ModuleMap, ModuleMap]:
    """
    Pullback of ``left: X -> Z`` and ``right: Y -> Z``.

    :return: ``(P, p_X, p_Y)`` with ``left ∘ p_X = right ∘ p_Y``.
    """
    total, injections, projections = direct_sum([left.source, right.source])
    difference = map_from_components(total, injections, [left, right.scaled(-1)])
    inclusion = difference.kernel()
    return inclusion.source, projections[0].compose(inclusion), projections[1].compose(inclusion)


def pushout(left: ModuleMap, right: ModuleMap) -> Tuple[Module, ModuleMap, ModuleMap]:
    """
    Pushout of ``left: Z -> X`` and ``right: Z -> Y``.

    :return: ``(Q, q_X, q_Y)`` with ``q_X ∘ left = q_Y ∘ right``.
    """
    total, injections, _ = direct_sum([left.target, right.target])
    difference = map_into_components(total, injections, [left, right.scaled(-1)])
    projection = difference.cokernel()
    return projection.target, projection.compose(injections[0]), projection.compose(injections[1])


def vertex_module(algebra: FdAlgebra, dims: Sequence[int]) -> Module:
    """
    The semisimple module with the given dimension vector (all arrows zero).
    """
    return Module.from_representation(algebra, dims, {}, check=False)


def simple(algebra: FdAlgebra, vertex: int) -> Module:
    return vertex_module(algebra, [1 if v == vertex else 0 for v in range(algebra.vertex_count)])


def projective(algebra: FdAlgebra, vertex: int) -> Module:
    """
    ``P_i = A e_i``, with basis the basis paths starting at the vertex, sorted by target.
    """
    chosen = [b for b in range(algebra.dim) if algebra.vertex_support(b)[0] == vertex]
    chosen.sort(key=lambda b: algebra.vertex_support(b)[1])
    return _restrict_to_coordinates(algebra, algebra.left_multiplication, chosen)


def projective_generator(algebra: FdAlgebra, vertex: int) -> DomainMatrix:
    """
    Coordinates of ``e_i`` inside :py:func:`projective`.
    """
    module = projective(algebra, vertex)
    field = algebra.field
    chosen = sorted(
        (b for b in range(algebra.dim) if algebra.vertex_support(b)[0] == vertex),
        key=lambda b: algebra.vertex_support(b)[1],
    )
    position = chosen.index(algebra.idempotent(vertex))
    return linear.from_entries(
        [[field.one if i == position else field.zero] for i in range(module.dim)], (module.dim, 1), field
    )


def vector_dual(module: Module) -> Module:
    """
    ``D(M) = Hom_k(M, k)`` as a left module over the opposite algebra: every action matrix is transposed.
    """
    return Module(module.algebra.opposite(), [linear.transpose(mat) for mat in module.action], check=False)


def dual_map(morphism: ModuleMap) -> ModuleMap:
    """
    ``D(f): D(N) -> D(M)`` for ``f: M -> N``.
    """
    transposed = linear.transpose(morphism.matrix)
    return ModuleMap(vector_dual(morphism.target), vector_dual(morphism.source), transposed, check=False)


def injective(algebra: FdAlgebra, vertex: int) -> Module:
    """
    ``I_i = D(e_i A)``.
    """
    return vector_dual(projective(algebra.opposite(), vertex))
