"""
Exact linear algebra over a ``FieldSpec``.

Blocks are ``sympy.polys.matrices.DomainMatrix`` instances over the field's
domain; coordinate vectors are plain lists of domain elements.  The helpers
here smooth over the two awkward corners of the matrix API: zero-sized
matrices and singular inverses (reported as ``SingularBlock``).
"""

from __future__ import annotations

from typing import Sequence

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMError

from .errors import DimensionMismatch, SingularBlock
from .fields import FieldSpec, Scalar

Vector = list  # list[Scalar]


# ---------------------------------------------------------------------------
# Construction / inspection
# ---------------------------------------------------------------------------


def matrix(rows: Sequence[Sequence[Scalar]], nrows: int, ncols: int, field: FieldSpec) -> DomainMatrix:
    """Build an ``nrows × ncols`` block from row lists (values converted exactly)."""
    if len(rows) != nrows or any(len(row) != ncols for row in rows):
        raise DimensionMismatch(f"expected a {nrows}x{ncols} matrix")
    K = field.domain
    data = [[field.scalar(x) if not K.of_type(x) else x for x in row] for row in rows]
    return DomainMatrix(data, (nrows, ncols), K)


def identity(n: int, field: FieldSpec) -> DomainMatrix:
    return DomainMatrix.eye(n, field.domain).to_dense() if n else zeros(0, 0, field)


def zeros(nrows: int, ncols: int, field: FieldSpec) -> DomainMatrix:
    K = field.domain
    return DomainMatrix([[K.zero] * ncols for _ in range(nrows)], (nrows, ncols), K)


def scalar_matrix(n: int, c: Scalar, field: FieldSpec) -> DomainMatrix:
    K = field.domain
    rows = [[c if i == j else K.zero for j in range(n)] for i in range(n)]
    return DomainMatrix(rows, (n, n), K)


def entries(M: DomainMatrix) -> list[list[Scalar]]:
    nrows, ncols = M.shape
    if nrows == 0:
        return []
    if ncols == 0:
        return [[] for _ in range(nrows)]
    return M.to_list()


def equal(A: DomainMatrix, B: DomainMatrix) -> bool:
    return A.shape == B.shape and entries(A) == entries(B)


def is_identity(M: DomainMatrix) -> bool:
    n, m = M.shape
    if n != m:
        return False
    K = M.domain
    rows = entries(M)
    return all(rows[i][j] == (K.one if i == j else K.zero) for i in range(n) for j in range(n))


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------


def compose(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    """The matrix of ``A ∘ B`` (apply ``B`` first)."""
    (m, k1), (k2, n) = A.shape, B.shape
    if k1 != k2:
        raise DimensionMismatch(f"cannot compose {A.shape} with {B.shape}")
    if m == 0 or n == 0 or k1 == 0:
        K = A.domain
        return DomainMatrix([[K.zero] * n for _ in range(m)], (m, n), K)
    return A.matmul(B)


def rank(M: DomainMatrix) -> int:
    nrows, ncols = M.shape
    if nrows == 0 or ncols == 0:
        return 0
    return M.rank()


def is_invertible(M: DomainMatrix) -> bool:
    n, m = M.shape
    return n == m and rank(M) == n


def inverse(M: DomainMatrix) -> DomainMatrix:
    """Exact inverse; ``SingularBlock`` when ``M`` is not square or not invertible."""
    n, m = M.shape
    if n != m:
        raise SingularBlock(f"non-square block {M.shape} has no inverse")
    if n == 0:
        return M
    if rank(M) != n:
        raise SingularBlock(f"block of size {n} has rank {rank(M)}")
    try:
        return M.inv()
    except (DMError, ZeroDivisionError) as exc:
        raise SingularBlock(str(exc)) from exc


def power(M: DomainMatrix, n: int, field: FieldSpec) -> DomainMatrix:
    """``M**n`` for square ``M``; negative exponents go through the inverse."""
    size = M.shape[0]
    base = inverse(M) if n < 0 else M
    result = identity(size, field)
    for _ in range(abs(n)):
        result = compose(base, result)
    return result


def apply_rows(rows: list[list[Scalar]], v: Sequence[Scalar], K) -> Vector:
    """Apply a block given by its rows (see :func:`entries`) to a vector."""
    out = []
    for row in rows:
        acc = K.zero
        for a, b in zip(row, v):
            acc += a * b
        out.append(acc)
    return out


def apply(M: DomainMatrix, v: Sequence[Scalar]) -> Vector:
    nrows, ncols = M.shape
    if len(v) != ncols:
        raise DimensionMismatch(f"vector of length {len(v)} for a {M.shape} block")
    return apply_rows(entries(M), v, M.domain)


def from_columns(columns: Sequence[Sequence[Scalar]], nrows: int, field: FieldSpec) -> DomainMatrix:
    """The block whose j-th column is ``columns[j]``."""
    rows = [[col[i] for col in columns] for i in range(nrows)]
    return matrix(rows, nrows, len(columns), field)


# ---------------------------------------------------------------------------
# Subspaces and linear systems
# ---------------------------------------------------------------------------


def row_basis(vectors: Sequence[Sequence[Scalar]], n: int, field: FieldSpec) -> list[Vector]:
    """
    Reduced row-echelon basis of the span of ``vectors`` in kⁿ.

    The basis is canonical: two spanning sets of the same subspace give the
    same list.
    """
    vectors = [list(v) for v in vectors]
    if not vectors or n == 0:
        return []
    M = matrix(vectors, len(vectors), n, field)
    reduced, pivots = M.rref()
    rows = entries(reduced)
    return [rows[i] for i in range(len(pivots))]


def solve(M: DomainMatrix, b: Sequence[Scalar], field: FieldSpec) -> Vector | None:
    """
    One solution ``x`` of ``M x = b`` (free variables set to zero), or ``None``.
    """
    nrows, ncols = M.shape
    K = field.domain
    if len(b) != nrows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {M.shape}")
    if ncols == 0:
        return [] if all(x == K.zero for x in b) else None
    if nrows == 0:
        return [K.zero] * ncols
    augmented = matrix([list(row) + [b[i]] for i, row in enumerate(entries(M))], nrows, ncols + 1, field)
    reduced, pivots = augmented.rref()
    if ncols in pivots:
        return None
    rows = entries(reduced)
    x = [K.zero] * ncols
    for i, p in enumerate(pivots):
        x[p] = rows[i][ncols]
    return x


def coordinates(basis: Sequence[Sequence[Scalar]], v: Sequence[Scalar], field: FieldSpec) -> Vector:
    """Coordinates of ``v`` in a linearly independent ``basis``; raises if ``v`` is outside the span."""
    if not basis:
        if any(x != field.zero for x in v):
            raise DimensionMismatch("vector is not in the zero subspace")
        return []
    M = from_columns(basis, len(v), field)
    x = solve(M, v, field)
    if x is None:
        raise DimensionMismatch("vector is not in the span of the basis")
    return x
