"""
Integers
--------
Finitely generated abelian groups.

Groups are presented as ``Z^g / span(relations)`` and every computation routes through
the Smith normal form of the relation matrix: the normal form gives canonical coordinates,
isomorphism invariants (elementary divisors) and element enumeration for finite groups.
The normal form is cached on first use; recomputing it is idempotent, so instances can be
shared between threads.
"""

from __future__ import annotations
import logging
from functools import cached_property
from itertools import product
from math import gcd
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

from sympy import factorint

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from .types import IntMatrix, IntVector

logger = logging.getLogger(__name__)


class SmithForm(NamedTuple):
    """
    Unimodular factorization ``left * m * right = diagonal`` together with the inverses of both factors.
    """

    left: IntMatrix
    diagonal: IntMatrix
    right: IntMatrix
    left_inverse: IntMatrix
    right_inverse: IntMatrix

    @property
    def divisors(self) -> List[int]:
        size = min(len(self.diagonal), len(self.right))
        return [self.diagonal[i][i] for i in range(size)]


def _identity(size: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]


def int_matmul(left: IntMatrix, right: IntMatrix, inner: Optional[int] = None, cols: Optional[int] = None) -> IntMatrix:
    if inner is None:
        inner = len(right)
    if cols is None:
        cols = len(right[0]) if right else 0
    return [[sum(row[k] * right[k][j] for k in range(inner)) for j in range(cols)] for row in left]


def int_apply(mat: IntMatrix, vector: Sequence[int]) -> IntVector:
    return tuple(sum(a * b for a, b in zip(row, vector)) for row in mat)


def smith_decomposition(m: IntMatrix, cols: Optional[int] = None) -> SmithForm:
    """
    Compute the Smith normal form with both unimodular factors and their inverses.

    The elimination clears one row and column at a time with extended-gcd steps and
    restarts a pivot whenever it fails to divide the remaining block, so the diagonal
    always forms a divisibility chain.

    :param m: The integer matrix, row by row.
    :param cols: Column count; required when `m` has no rows.
    :return: The :py:class:`SmithForm`.
    """
    rows = len(m)
    if cols is None:
        cols = len(m[0]) if rows else 0
    a = [list(row) for row in m]
    u, u_inv = _identity(rows), _identity(rows)
    v, v_inv = _identity(cols), _identity(cols)

    def swap_rows(i: int, j: int):
        for mat in (a, u):
            mat[i], mat[j] = mat[j], mat[i]
        for row in u_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i: int, j: int):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]
        v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def combine_rows(t: int, i: int):
        # rows t, i <- [[x, y], [-b/g, a/g]] applied to them; zeroes a[i][t]
        p, q = a[t][t], a[i][t]
        x, y, g = (1, 0, p) if q % p == 0 else map(int, igcdex(p, q))
        pg, qg = p // g, q // g
        for mat in (a, u):
            rt, ri = mat[t], mat[i]
            mat[t], mat[i] = (
                [x * e + y * f for e, f in zip(rt, ri)],
                [-qg * e + pg * f for e, f in zip(rt, ri)],
            )
        for row in u_inv:
            ct, ci = row[t], row[i]
            row[t], row[i] = ct * pg + ci * qg, -ct * y + ci * x

    def combine_cols(t: int, j: int):
        p, q = a[t][t], a[t][j]
        x, y, g = (1, 0, p) if q % p == 0 else map(int, igcdex(p, q))
        pg, qg = p // g, q // g
        for mat in (a, v):
            for row in mat:
                ct, cj = row[t], row[j]
                row[t], row[j] = x * ct + y * cj, -qg * ct + pg * cj
        rt, rj = v_inv[t], v_inv[j]
        v_inv[t], v_inv[j] = [pg * e + qg * f for e, f in zip(rt, rj)], [-y * e + x * f for e, f in zip(rt, rj)]

    for t in range(min(rows, cols)):
        block = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j] != 0]
        if not block:
            break
        _, i, j = min(block)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    combine_rows(t, i)
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    combine_cols(t, j)
            if any(a[i][t] != 0 for i in range(t + 1, rows)):
                continue
            pivot = a[t][t]
            offender = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % pivot != 0),
                None,
            )
            if offender is None:
                break
            # r_t += r_offender
            for mat in (a, u):
                mat[t] = [e + f for e, f in zip(mat[t], mat[offender])]
            for row in u_inv:
                row[offender] -= row[t]
        if a[t][t] < 0:
            a[t] = [-e for e in a[t]]
            u[t] = [-e for e in u[t]]
            for row in u_inv:
                row[t] = -row[t]
    return SmithForm(u, a, v, u_inv, v_inv)


def smith_normal_form(m: IntMatrix, cols: Optional[int] = None) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Smith normal form of an integer matrix.

    :param m: Integer matrix, row by row.
    :param cols: Column count; required when `m` has no rows.
    :return: ``(U, D, V)`` with ``U * m * V = D``, ``D`` diagonal with ``d1 | d2 | ...``
        and ``U``, ``V`` unimodular.
    """
    form = smith_decomposition(m, cols)
    return form.left, form.diagonal, form.right


def integer_nullspace(m: IntMatrix, cols: int) -> IntMatrix:
    """
    A basis of the integer solutions of ``m x = 0``, as the columns of the result (``cols`` rows).
    """
    form = smith_decomposition(m, cols)
    nonzero = sum(1 for d in form.divisors if d != 0)
    return [[form.right[i][j] for j in range(nonzero, cols)] for i in range(cols)]


def _columns(mat: IntMatrix, rows: int) -> List[IntVector]:
    if not mat or not mat[0]:
        return []
    return [tuple(mat[i][j] for i in range(rows)) for j in range(len(mat[0]))]


def _from_columns(cols: Sequence[Sequence[int]], rows: int) -> IntMatrix:
    return [[col[i] for col in cols] for i in range(rows)]


class ZModule:
    """
    A finitely generated abelian group ``Z^generators / span(relations)``.

    :param generators: Number of generators.
    :param relations: Relation vectors, each of length `generators`.
    """

    def __init__(self, generators: int, relations: Sequence[Sequence[int]] = ()):
        if generators < 0:
            raise ValueError(f"Number of generators must be non-negative, got {generators}")
        self.generators = generators
        self.relations: Tuple[IntVector, ...] = tuple(tuple(int(e) for e in rel) for rel in relations)
        for relation in self.relations:
            if len(relation) != generators:
                raise ValueError(f"Relation {relation} does not have {generators} coordinates")

    @classmethod
    def free(cls, rank: int) -> ZModule:
        return cls(rank)

    @classmethod
    def cyclic(cls, order: int) -> ZModule:
        """
        The group ``Z/order``; ``order = 0`` gives ``Z``.
        """
        return cls(1, [(order,)] if order else [])

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> ZModule:
        """
        The group ``Z/o1 + Z/o2 + ...`` with one generator per order (0 meaning a free summand).
        """
        size = len(orders)
        relations = [tuple(order if i == k else 0 for i in range(size)) for k, order in enumerate(orders) if order]
        return cls(size, relations)

    @property
    def relation_matrix(self) -> IntMatrix:
        return _from_columns(self.relations, self.generators)

    @cached_property
    def _smith(self) -> SmithForm:
        return smith_decomposition(self.relation_matrix, len(self.relations))

    @cached_property
    def _structure(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        divisors = self._smith.divisors
        orders = [abs(divisors[i]) if i < len(divisors) else 0 for i in range(self.generators)]
        essential = tuple(i for i, order in enumerate(orders) if order != 1)
        return essential, tuple(orders[i] for i in essential)

    @property
    def orders(self) -> Tuple[int, ...]:
        """
        Orders of the canonical cyclic summands (0 for free summands), in divisibility order.
        """
        return self._structure[1]

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        return tuple(order for order in self.orders if order > 1)

    @property
    def rank(self) -> int:
        return sum(1 for order in self.orders if order == 0)

    @property
    def elementary_divisors(self) -> Tuple[int, ...]:
        """
        Prime power orders of the primary cyclic summands, sorted.
        """
        result = []
        for order in self.invariant_factors:
            result.extend(int(prime) ** exponent for prime, exponent in factorint(order).items())
        return tuple(sorted(result))

    @property
    def invariants(self) -> Tuple[int, Tuple[int, ...]]:
        """
        Complete isomorphism invariant: rank and elementary divisors.
        """
        return self.rank, self.elementary_divisors

    def is_isomorphic(self, other: ZModule) -> bool:
        return self.invariants == other.invariants

    @property
    def is_zero(self) -> bool:
        return not self.orders

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def size(self) -> int:
        if not self.is_finite:
            raise ValueError("Infinite group has no finite size")
        result = 1
        for order in self.orders:
            result *= order
        return result

    def canonical(self, element: Sequence[int]) -> IntVector:
        """
        Coordinates of `element` on the canonical cyclic summands, reduced modulo their orders.
        """
        essential, orders = self._structure
        image = int_apply(self._smith.left, element)
        return tuple(image[i] % order if order else image[i] for i, order in zip(essential, orders))

    def lift(self, coordinates: Sequence[int]) -> IntVector:
        """
        Generator coordinates of the element with the given canonical coordinates.
        """
        essential, _ = self._structure
        full = [0] * self.generators
        for i, value in zip(essential, coordinates):
            full[i] = value
        return int_apply(self._smith.left_inverse, full)

    @property
    def canonical_generators(self) -> List[IntVector]:
        size = len(self.orders)
        return [self.lift([1 if i == k else 0 for i in range(size)]) for k in range(size)]

    def is_zero_element(self, element: Sequence[int]) -> bool:
        return all(value == 0 for value in self.canonical(element))

    def equal_elements(self, left: Sequence[int], right: Sequence[int]) -> bool:
        return self.is_zero_element([a - b for a, b in zip(left, right)])

    def elements(self) -> Iterator[IntVector]:
        """
        Enumerate the elements of a finite group (as generator coordinates).
        """
        if not self.is_finite:
            raise ValueError("Cannot enumerate an infinite group")
        for coordinates in product(*(range(order) for order in self.orders)):
            yield self.lift(coordinates)

    def zero_object(self) -> ZModule:
        return ZModule(0)

    def identity(self) -> ZMap:
        return ZMap(self, self, _identity(self.generators))

    def zero_map(self, target: ZModule) -> ZMap:
        return ZMap(self, target, [[0] * self.generators for _ in range(target.generators)])

    def __repr__(self) -> str:
        parts = [f"Z/{order}" if order else "Z" for order in self.orders]
        return f"ZModule({' + '.join(parts) or '0'})"


class ZMap:
    """
    A group homomorphism given on generators: column ``j`` of `matrix` is the image of generator ``j``.
    """

    def __init__(self, source: ZModule, target: ZModule, matrix: IntMatrix, check: bool = True):
        self.source = source
        self.target = target
        self.matrix = [list(row) for row in matrix] if target.generators else []
        if len(self.matrix) != target.generators or any(len(row) != source.generators for row in self.matrix):
            raise ValueError(f"Map matrix does not have shape ({target.generators}, {source.generators})")
        if check:
            for relation in source.relations:
                if not target.is_zero_element(self(relation)):
                    raise ValueError(f"Map does not respect the source relation {relation}")

    def __call__(self, element: Sequence[int]) -> IntVector:
        return int_apply(self.matrix, element)

    def compose(self, other: ZMap) -> ZMap:
        """
        ``self ∘ other``.
        """
        if other.target.generators != self.source.generators:
            raise ValueError("Maps are not composable")
        data = int_matmul(self.matrix, other.matrix, self.source.generators, other.source.generators)
        return ZMap(other.source, self.target, data, check=False)

    def __add__(self, other: ZMap) -> ZMap:
        data = [[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)]
        return ZMap(self.source, self.target, data, check=False)

    def scaled(self, factor: int) -> ZMap:
        return ZMap(self.source, self.target, [[factor * e for e in row] for row in self.matrix], check=False)

    def is_zero(self) -> bool:
        gens = self.source.generators
        return all(self.target.is_zero_element(self(_unit(gens, j))) for j in range(gens))

    def equals(self, other: ZMap) -> bool:
        return (self + other.scaled(-1)).is_zero()

    def kernel(self) -> ZMap:
        """
        The inclusion of the kernel into the source.
        """
        src, tgt = self.source, self.target
        block = [list(row) + [rel[i] for rel in tgt.relations] for i, row in enumerate(self.matrix)]
        width = src.generators + len(tgt.relations)
        if tgt.generators == 0:
            lattice = _identity(src.generators)
        else:
            solutions = integer_nullspace(block, width)
            lattice = [solutions[i] for i in range(src.generators)]
        spanning = _columns(lattice, src.generators)
        count = len(spanning)
        stacked = [[col[i] for col in spanning] + [rel[i] for rel in src.relations] for i in range(src.generators)]
        if src.generators == 0 or count == 0:
            relation_vectors: List[IntVector] = []
        else:
            combos = integer_nullspace(stacked, count + len(src.relations))
            relation_vectors = [col[:count] for col in _columns(combos, count + len(src.relations))]
        kernel = ZModule(count, relation_vectors)
        inclusion = _from_columns(spanning, src.generators) if count else [[] for _ in range(src.generators)]
        return ZMap(kernel, src, inclusion)

    def cokernel(self) -> ZMap:
        """
        The projection of the target onto the cokernel (same generators, more relations).
        """
        images = [self(_unit(self.source.generators, j)) for j in range(self.source.generators)]
        quotient = ZModule(self.target.generators, list(self.target.relations) + images)
        return ZMap(self.target, quotient, _identity(self.target.generators), check=False)

    def image(self) -> Tuple[ZMap, ZMap]:
        """
        Factor the map as a surjection onto its image followed by an inclusion.
        """
        inclusion = self.kernel()
        kernel_columns = [inclusion(_unit(inclusion.source.generators, j)) for j in range(inclusion.source.generators)]
        image = ZModule(self.source.generators, list(self.source.relations) + kernel_columns)
        surjection = ZMap(self.source, image, _identity(self.source.generators), check=False)
        return surjection, ZMap(image, self.target, self.matrix, check=False)

    def factor_through_cokernel(self, projection: ZMap) -> ZMap:
        """
        The map induced on ``projection.target`` by a map vanishing on the kernel of `projection`.
        `projection` must come from :py:meth:`cokernel`.
        """
        return ZMap(projection.target, self.target, self.matrix)

    def is_injective(self) -> bool:
        return self.kernel().source.is_zero

    def is_surjective(self) -> bool:
        return self.cokernel().target.is_zero

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def __repr__(self) -> str:
        return f"ZMap({self.source!r} -> {self.target!r}, {self.matrix})"


def _unit(size: int, index: int) -> IntVector:
    return tuple(1 if i == index else 0 for i in range(size))


def direct_sum(modules: Sequence[ZModule]) -> Tuple[ZModule, List[ZMap], List[ZMap]]:
    """
    Direct sum with its injections and projections.
    """
    total = sum(module.generators for module in modules)
    relations, offsets, offset = [], [], 0
    for module in modules:
        offsets.append(offset)
        for relation in module.relations:
            relations.append(tuple([0] * offset + list(relation) + [0] * (total - offset - module.generators)))
        offset += module.generators
    result = ZModule(total, relations)
    injections, projections = [], []
    for module, offset in zip(modules, offsets):
        embed = [[1 if i == offset + j else 0 for j in range(module.generators)] for i in range(total)]
        project = [[1 if j == offset + i else 0 for j in range(total)] for i in range(module.generators)]
        injections.append(ZMap(module, result, embed, check=False))
        projections.append(ZMap(result, module, project, check=False))
    return result, injections, projections


def power(module: ZModule, count: int) -> ZModule:
    return direct_sum([module] * count)[0]


class HomGroup:
    """
    The group ``Hom(source, target)`` with explicit maps for its canonical generators.
    """

    def __init__(self, source: ZModule, target: ZModule):
        self.source = source
        self.target = target
        generators, orders = [], []
        # (source summand, target summand, image multiplier)
        for i, a in enumerate(source.orders):
            for j, b in enumerate(target.orders):
                if b == 0:
                    if a != 0:
                        continue
                    generators.append((i, j, 1))
                    orders.append(0)
                    continue
                g = gcd(a, b)
                generators.append((i, j, b // g))
                orders.append(g)
        self._generators = generators
        self.group = ZModule.from_orders(orders)
        logger.debug(f"Hom({source!r}, {target!r}) = {self.group!r}")

    def to_map(self, element: Sequence[int]) -> ZMap:
        """
        The homomorphism with coordinates `element` on the canonical generators of :py:attr:`group`.
        """
        src, tgt = self.source, self.target
        src_size, tgt_size = len(src.orders), len(tgt.orders)
        phi = [[0] * src_size for _ in range(tgt_size)]
        for coefficient, (i, j, multiplier) in zip(element, self._generators):
            phi[j][i] += coefficient * multiplier
        projection = [list(src._smith.left[k]) for k in src._structure[0]]
        embedding = [[tgt._smith.left_inverse[r][k] for k in tgt._structure[0]] for r in range(tgt.generators)]
        data = int_matmul(embedding, int_matmul(phi, projection, src_size, src.generators), tgt_size, src.generators)
        return ZMap(src, tgt, data if tgt.generators else [], check=False)

    def coordinates(self, hom: ZMap) -> IntVector:
        """
        Coordinates of `hom` on the canonical generators of :py:attr:`group`.
        """
        images = [self.target.canonical(hom(gen)) for gen in self.source.canonical_generators]
        result = []
        for i, j, multiplier in self._generators:
            result.append(images[i][j] // multiplier)
        return self.group.canonical(result)

    def maps(self) -> Iterator[ZMap]:
        for element in self.group.elements():
            yield self.to_map(element)


def hom(source: ZModule, target: ZModule) -> HomGroup:
    return HomGroup(source, target)


def tensor(left: ZModule, right: ZModule) -> ZModule:
    """
    ``left ⊗ right`` with generators indexed by pairs in row-major order.
    """
    m, n = left.generators, right.generators
    relations = []
    for relation in left.relations:
        for k in range(n):
            relations.append(tuple(relation[i] if j == k else 0 for i in range(m) for j in range(n)))
    for relation in right.relations:
        for k in range(m):
            relations.append(tuple(relation[j] if i == k else 0 for i in range(m) for j in range(n)))
    return ZModule(m * n, relations)


class FreeResolution(NamedTuple):
    """
    ``0 -> Z^len(torsion) --diag--> Z^len(orders) -> module -> 0`` from the canonical decomposition.
    """

    module: ZModule
    orders: Tuple[int, ...]

    @property
    def length(self) -> int:
        return 1 if any(order for order in self.orders) else 0

    @property
    def relation_orders(self) -> Tuple[int, ...]:
        return tuple(order for order in self.orders if order)


def free_resolution(module: ZModule) -> FreeResolution:
    return FreeResolution(module, module.orders)


def _diagonal_map(source: ZModule, target: ZModule, pattern: Sequence[Tuple[int, int, int]]) -> ZMap:
    data = [[0] * source.generators for _ in range(target.generators)]
    for row, col, value in pattern:
        data[row][col] = value
    return ZMap(source, target, data)


def _hom_complex_map(module: ZModule, resolution: FreeResolution) -> ZMap:
    # Hom(Z^g, N) -> Hom(Z^t, N): restrict along the relation map
    orders = resolution.orders
    torsion = [k for k, order in enumerate(orders) if order]
    g, t = len(orders), len(torsion)
    n = module.generators
    source, target = power(module, g), power(module, t)
    pattern = []
    for row, k in enumerate(torsion):
        for c in range(n):
            pattern.append((row * n + c, k * n + c, orders[k]))
    return _diagonal_map(source, target, pattern)


def _tensor_complex_map(module: ZModule, resolution: FreeResolution) -> ZMap:
    # Z^t ⊗ N -> Z^g ⊗ N
    orders = resolution.orders
    torsion = [k for k, order in enumerate(orders) if order]
    g, t = len(orders), len(torsion)
    n = module.generators
    source, target = power(module, t), power(module, g)
    pattern = []
    for col, k in enumerate(torsion):
        for c in range(n):
            pattern.append((k * n + c, col * n + c, orders[k]))
    return _diagonal_map(source, target, pattern)


def ext(source: ZModule, target: ZModule, degree: int) -> ZModule:
    """
    ``Ext^degree(source, target)`` from the length-one free resolution of `source`.
    """
    if degree < 0:
        raise ValueError(f"Degree must be non-negative, got {degree}")
    if degree >= 2:
        return ZModule(0)
    restriction = _hom_complex_map(target, free_resolution(source))
    if degree == 0:
        return restriction.kernel().source
    return restriction.cokernel().target


def tor(left: ZModule, right: ZModule, degree: int) -> ZModule:
    """
    ``Tor_degree(left, right)`` from the length-one free resolution of `left`.
    """
    if degree < 0:
        raise ValueError(f"Degree must be non-negative, got {degree}")
    if degree >= 2:
        return ZModule(0)
    relation = _tensor_complex_map(right, free_resolution(left))
    if degree == 0:
        return relation.cokernel().target
    return relation.kernel().source


def _primary_parts(order: int) -> List[Tuple[int, int]]:
    return [(int(prime), int(prime) ** exponent) for prime, exponent in sorted(factorint(order).items())]


def summand_test(module: ZModule, other: ZModule) -> Optional[Tuple[ZMap, ZMap]]:
    """
    Decide whether `module` is a direct summand of a finite power of `other`.

    Each primary cyclic summand of `module` is sent to its own copy of `other`, into a canonical
    summand whose order it divides exactly in the prime power.

    :return: Split maps ``(s, r)`` with ``r ∘ s = id`` into ``other^k``, or ``None``.
    """
    pieces = []
    for index, order in enumerate(module.orders):
        if order == 0:
            host = next((j for j, b in enumerate(other.orders) if b == 0), None)
            if host is None:
                return None
            pieces.append((index, 0, host, 1, 1))
            continue
        for prime, prime_power in _primary_parts(order):
            host = next(
                (
                    j
                    for j, b in enumerate(other.orders)
                    if b and b % prime_power == 0 and (b // prime_power) % prime != 0
                ),
                None,
            )
            if host is None:
                return None
            b = other.orders[host]
            # Z/order -> Z/p^e (CRT) -> Z/b at multiplier b/p^e; retraction back by the inverse unit
            cofactor = order // prime_power
            crt = pow(cofactor, -1, prime_power) if prime_power > 1 else 0
            pieces.append((index, prime_power, host, b // prime_power, crt))
    count = len(pieces)
    target, injections, projections = direct_sum([other] * count)
    src_canonical = len(module.orders)
    tgt_canonical = len(other.orders)
    section_phi = [[0] * src_canonical for _ in range(count * tgt_canonical)]
    retraction_phi = [[0] * (count * tgt_canonical) for _ in range(src_canonical)]
    for copy, (index, prime_power, host, multiplier, crt) in enumerate(pieces):
        order = module.orders[index]
        section_phi[copy * tgt_canonical + host][index] = multiplier
        if order == 0:
            retraction_phi[index][copy * tgt_canonical + host] = 1
        else:
            # y in Z/b maps to the element of Z/order congruent to y/multiplier mod p^e and 0 elsewhere
            retraction_phi[index][copy * tgt_canonical + host] = crt * (order // prime_power) * _unit_inverse(
                multiplier, prime_power
            )
    module_projection = [list(module._smith.left[k]) for k in module._structure[0]]
    module_embedding = [
        [module._smith.left_inverse[r][k] for k in module._structure[0]] for r in range(module.generators)
    ]
    other_projection = [list(other._smith.left[k]) for k in other._structure[0]]
    other_embedding = [[other._smith.left_inverse[r][k] for k in other._structure[0]] for r in range(other.generators)]
    big_embedding = _block_diagonal([other_embedding] * count, other.generators, tgt_canonical)
    big_projection = _block_diagonal([other_projection] * count, tgt_canonical, other.generators)
    section = int_matmul(
        big_embedding,
        int_matmul(section_phi, module_projection, src_canonical, module.generators),
        count * tgt_canonical,
        module.generators,
    )
    retraction = int_matmul(
        module_embedding,
        int_matmul(retraction_phi, big_projection, count * tgt_canonical, count * other.generators),
        src_canonical,
        count * other.generators,
    )
    s = ZMap(module, target, section if target.generators else [])
    r = ZMap(target, module, retraction if module.generators else [])
    return s, r


def _unit_inverse(value: int, modulus: int) -> int:
    if modulus == 1:
        return 0
    return pow(value % modulus, -1, modulus)


def _block_diagonal(blocks: Sequence[IntMatrix], rows: int, cols: int) -> IntMatrix:
    total_rows, total_cols = rows * len(blocks), cols * len(blocks)
    data = [[0] * total_cols for _ in range(total_rows)]
    for k, block in enumerate(blocks):
        for i in range(rows):
            for j in range(cols):
                data[k * rows + i][k * cols + j] = block[i][j]
    return data
