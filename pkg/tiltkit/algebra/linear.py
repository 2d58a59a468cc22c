"""
Linear
------
Exact linear algebra over the ground fields of the workbench.

Matrices are :py:class:`sympy.polys.matrices.DomainMatrix` instances over ``QQ`` or ``GF(p)``.
The helpers below wrap the few operations the rest of the package needs and take care
of zero-sized shapes, which appear everywhere (zero modules, empty Hom spaces).
Vectors are column matrices; subspaces are given by matrices whose columns span them.
"""

from __future__ import annotations
import logging
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy import GF, QQ, isprime
from sympy.polys.domains import Domain
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

Field = Domain
"""
A ground field: ``QQ`` or a prime field ``GF(p)``.
"""
Scalar = Union[int, Fraction, str]
"""
Anything that can be converted into a field element.
"""


def make_field(name: str) -> Field:
    """
    Build a ground field from its short name.

    :param name: ``"Q"`` for the rationals, ``"F<p>"`` for the prime field with ``p`` elements.
    :return: The sympy domain.
    """
    name = name.strip()
    if name in ("Q", "QQ"):
        return QQ
    if name.startswith("F") and name[1:].isdigit():
        prime = int(name[1:])
        if not isprime(prime):
            raise ValueError(f"Field characteristic must be prime, got {prime}")
        return GF(prime)
    raise ValueError(f"Unknown field: {name!r}")


def field_name(field: Field) -> str:
    characteristic = field.characteristic()
    return "Q" if characteristic == 0 else f"F{characteristic}"


def convert(value: Scalar, field: Field):
    """
    Convert an integer, a fraction or its string form into an element of `field`.
    """
    if isinstance(value, str):
        value = Fraction(value.strip())
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return field(value.numerator)
        return field(value.numerator) / field(value.denominator)
    if isinstance(value, int):
        return field(value)
    return field.convert(value)


def to_fraction(value, field: Field) -> Fraction:
    """
    Map a field element back to a python number (the canonical residue for prime fields).
    """
    characteristic = field.characteristic()
    if characteristic == 0:
        number = field.to_sympy(value)
        return Fraction(int(number.p), int(number.q))
    return Fraction(int(field.to_sympy(value)) % characteristic)


def matrix(rows: Sequence[Sequence[Scalar]], field: Field, shape: Optional[Tuple[int, int]] = None) -> DomainMatrix:
    """
    Build a matrix from nested rows of scalars.

    :param rows: The entries, row by row.
    :param field: The ground field.
    :param shape: Needed only when there are no rows.
    """
    data = [[convert(entry, field) for entry in row] for row in rows]
    if shape is None:
        shape = (len(data), len(data[0]) if data else 0)
    if len(data) != shape[0] or any(len(row) != shape[1] for row in data):
        raise ValueError(f"Matrix rows do not match shape {shape}")
    return DomainMatrix(data, shape, field)


def zeros(rows: int, cols: int, field: Field) -> DomainMatrix:
    return DomainMatrix([[field.zero] * cols for _ in range(rows)], (rows, cols), field)


def identity(size: int, field: Field) -> DomainMatrix:
    return DomainMatrix(
        [[field.one if i == j else field.zero for j in range(size)] for i in range(size)], (size, size), field
    )


def entries(mat: DomainMatrix) -> List[list]:
    rows, cols = mat.shape
    if rows == 0:
        return []
    if cols == 0:
        return [[] for _ in range(rows)]
    return [list(row) for row in mat.to_list()]


def from_entries(data: List[list], shape: Tuple[int, int], field: Field) -> DomainMatrix:
    return DomainMatrix([list(row) for row in data], shape, field)


def to_strings(mat: DomainMatrix) -> List[List[str]]:
    """
    Serialize a matrix as nested lists of strings (``"1/2"``), used by reports.
    """
    return [[str(to_fraction(entry, mat.domain)) for entry in row] for row in entries(mat)]


def matmul(left: DomainMatrix, right: DomainMatrix) -> DomainMatrix:
    if left.shape[1] != right.shape[0]:
        raise ValueError(f"Cannot multiply matrices of shapes {left.shape} and {right.shape}")
    if 0 in (left.shape[0], left.shape[1], right.shape[1]):
        return zeros(left.shape[0], right.shape[1], left.domain)
    return left * right


def compose(*mats: DomainMatrix) -> DomainMatrix:
    """
    Product of matrices written in composition order: ``compose(f, g, h) = f*g*h``.
    """
    result = mats[-1]
    for mat in reversed(mats[:-1]):
        result = matmul(mat, result)
    return result


def add(left: DomainMatrix, right: DomainMatrix) -> DomainMatrix:
    if left.shape != right.shape:
        raise ValueError(f"Cannot add matrices of shapes {left.shape} and {right.shape}")
    if 0 in left.shape:
        return left
    return left + right


def sub(left: DomainMatrix, right: DomainMatrix) -> DomainMatrix:
    if left.shape != right.shape:
        raise ValueError(f"Cannot subtract matrices of shapes {left.shape} and {right.shape}")
    if 0 in left.shape:
        return left
    return left - right


def scale(mat: DomainMatrix, factor) -> DomainMatrix:
    field = mat.domain
    factor = convert(factor, field) if isinstance(factor, (int, Fraction, str)) else factor
    return from_entries([[factor * entry for entry in row] for row in entries(mat)], mat.shape, field)


def linear_combination(coefficients: Sequence, mats: Sequence[DomainMatrix], shape: Tuple[int, int], field: Field):
    result = zeros(*shape, field)
    for coefficient, mat in zip(coefficients, mats):
        if coefficient != field.zero:
            result = add(result, scale(mat, coefficient))
    return result


def transpose(mat: DomainMatrix) -> DomainMatrix:
    rows, cols = mat.shape
    data = entries(mat)
    return from_entries([[data[i][j] for i in range(rows)] for j in range(cols)], (cols, rows), mat.domain)


def hstack(blocks: Sequence[DomainMatrix], rows: int, field: Field) -> DomainMatrix:
    data: List[list] = [[] for _ in range(rows)]
    cols = 0
    for block in blocks:
        if block.shape[0] != rows:
            raise ValueError(f"Block with {block.shape[0]} rows cannot be stacked next to {rows} rows")
        for i, row in enumerate(entries(block)):
            data[i].extend(row)
        cols += block.shape[1]
    return from_entries(data, (rows, cols), field)


def vstack(blocks: Sequence[DomainMatrix], cols: int, field: Field) -> DomainMatrix:
    data: List[list] = []
    for block in blocks:
        if block.shape[1] != cols:
            raise ValueError(f"Block with {block.shape[1]} columns cannot be stacked under {cols} columns")
        data.extend(entries(block))
    return from_entries(data, (len(data), cols), field)


def block_diagonal(blocks: Sequence[DomainMatrix], field: Field) -> DomainMatrix:
    rows = sum(block.shape[0] for block in blocks)
    cols = sum(block.shape[1] for block in blocks)
    data = [[field.zero] * cols for _ in range(rows)]
    row_offset = col_offset = 0
    for block in blocks:
        for i, row in enumerate(entries(block)):
            data[row_offset + i][col_offset : col_offset + len(row)] = row
        row_offset += block.shape[0]
        col_offset += block.shape[1]
    return from_entries(data, (rows, cols), field)


def submatrix(mat: DomainMatrix, rows: Iterable[int], cols: Iterable[int]) -> DomainMatrix:
    rows, cols = list(rows), list(cols)
    data = entries(mat)
    return from_entries([[data[i][j] for j in cols] for i in rows], (len(rows), len(cols)), mat.domain)


def columns(mat: DomainMatrix, cols: Iterable[int]) -> DomainMatrix:
    return submatrix(mat, range(mat.shape[0]), cols)


def column(mat: DomainMatrix, index: int) -> DomainMatrix:
    return columns(mat, [index])


def kron(left: DomainMatrix, right: DomainMatrix) -> DomainMatrix:
    """
    Kronecker product; with row-major vectorization ``vec(A X B) = kron(A, B^T) vec(X)``.
    """
    (lr, lc), (rr, rc) = left.shape, right.shape
    field = left.domain
    a, b = entries(left), entries(right)
    data = [[field.zero] * (lc * rc) for _ in range(lr * rr)]
    for i in range(lr):
        for j in range(lc):
            if a[i][j] == field.zero:
                continue
            for k in range(rr):
                for m in range(rc):
                    data[i * rr + k][j * rc + m] = a[i][j] * b[k][m]
    return from_entries(data, (lr * rr, lc * rc), field)


def vectorize(mat: DomainMatrix) -> DomainMatrix:
    """
    Row-major vectorization into a column.
    """
    flat = [entry for row in entries(mat) for entry in row]
    return from_entries([[entry] for entry in flat], (len(flat), 1), mat.domain)


def unvectorize(vec: DomainMatrix, shape: Tuple[int, int]) -> DomainMatrix:
    flat = [row[0] for row in entries(vec)]
    rows, cols = shape
    return from_entries([flat[i * cols : (i + 1) * cols] for i in range(rows)], shape, vec.domain)


def is_zero(mat: DomainMatrix) -> bool:
    zero = mat.domain.zero
    return all(entry == zero for row in entries(mat) for entry in row)


def rref(mat: DomainMatrix) -> Tuple[DomainMatrix, Tuple[int, ...]]:
    """
    Reduced row echelon form and pivot columns.
    """
    if 0 in mat.shape:
        return mat, ()
    reduced, pivots = mat.rref()
    return reduced, tuple(pivots)


def rank(mat: DomainMatrix) -> int:
    return len(rref(mat)[1])


def nullspace(mat: DomainMatrix) -> DomainMatrix:
    """
    Basis of the right nullspace, as the columns of the returned matrix.
    """
    rows, cols = mat.shape
    field = mat.domain
    reduced, pivots = rref(mat)
    free = [j for j in range(cols) if j not in pivots]
    data = entries(reduced)
    basis = []
    for j in free:
        vec = [field.zero] * cols
        vec[j] = field.one
        for row, pivot in enumerate(pivots):
            vec[pivot] = -data[row][j]
        basis.append(vec)
    return from_entries([[vec[i] for vec in basis] for i in range(cols)], (cols, len(basis)), field)


def solve(mat: DomainMatrix, rhs: DomainMatrix) -> Optional[DomainMatrix]:
    """
    Find one ``X`` with ``mat * X = rhs``, or ``None`` if the system is inconsistent.
    """
    rows, cols = mat.shape
    field = mat.domain
    if rhs.shape[0] != rows:
        raise ValueError(f"Right-hand side of shape {rhs.shape} does not fit a matrix of shape {mat.shape}")
    width = rhs.shape[1]
    if rows == 0:
        return zeros(cols, width, field)
    reduced, pivots = rref(hstack([mat, rhs], rows, field))
    if any(pivot >= cols for pivot in pivots):
        return None
    data = entries(reduced)
    solution = [[field.zero] * width for _ in range(cols)]
    for row, pivot in enumerate(pivots):
        solution[pivot] = data[row][cols:]
    return from_entries(solution, (cols, width), field)


def in_span(mat: DomainMatrix, vectors: DomainMatrix) -> bool:
    return solve(mat, vectors) is not None


def column_basis(mat: DomainMatrix) -> DomainMatrix:
    """
    A maximal independent subset of the columns, in their original order.
    """
    return columns(mat, rref(mat)[1])


def complement(subspace: DomainMatrix, ambient: int, field: Field) -> DomainMatrix:
    """
    Standard basis vectors completing the column span of `subspace` to the whole space.
    """
    span = column_basis(subspace) if subspace.shape[1] else zeros(ambient, 0, field)
    _, pivots = rref(hstack([span, identity(ambient, field)], ambient, field))
    chosen = [pivot - span.shape[1] for pivot in pivots if pivot >= span.shape[1]]
    return columns(identity(ambient, field), chosen)


def relative_complement(subspace: DomainMatrix, space: DomainMatrix) -> DomainMatrix:
    """
    Columns of `space` completing a basis of ``span(subspace)`` to a basis of ``span(space)``.
    `subspace` must lie inside the span of `space`.
    """
    rows = space.shape[0]
    field = space.domain
    span = column_basis(subspace) if subspace.shape[1] else zeros(rows, 0, field)
    _, pivots = rref(hstack([span, space], rows, field))
    return columns(space, [pivot - span.shape[1] for pivot in pivots if pivot >= span.shape[1]])


def inverse(mat: DomainMatrix) -> DomainMatrix:
    rows, cols = mat.shape
    if rows != cols:
        raise ValueError(f"Cannot invert a non-square matrix of shape {mat.shape}")
    solution = solve(mat, identity(rows, mat.domain))
    if solution is None or rank(mat) != rows:
        raise ValueError("Matrix is singular")
    return solution


def quotient_projection(subspace: DomainMatrix, ambient: int, field: Field) -> Tuple[DomainMatrix, DomainMatrix]:
    """
    Coordinates on ``K^ambient / span(subspace)``.

    :return: A pair ``(section, projection)``: `section` has as columns representatives of a
        quotient basis, `projection` maps a vector to its quotient coordinates; ``projection * section = 1``
        and `projection` vanishes on the subspace.
    """
    span = column_basis(subspace) if subspace.shape[1] else zeros(ambient, 0, field)
    section = complement(span, ambient, field)
    change = inverse(hstack([span, section], ambient, field))
    projection = submatrix(change, range(span.shape[1], ambient), range(ambient))
    return section, projection


def sample_matrix(rng, rows: int, cols: int, field: Field, low: int = -2, high: int = 2) -> DomainMatrix:
    """
    A random matrix with small integer entries, drawn from a ``numpy.random.Generator``.
    """
    data = [[convert(int(rng.integers(low, high + 1)), field) for _ in range(cols)] for _ in range(rows)]
    return from_entries(data, (rows, cols), field)


def equal(left: DomainMatrix, right: DomainMatrix) -> bool:
    return left.shape == right.shape and entries(left) == entries(right)
