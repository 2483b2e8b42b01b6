"""Exact integer matrix algebra.

Everything here works on Python integers, so there is no overflow and no
floating point. Matrices are immutable :class:`IntMatrix` values; the module
level functions also accept plain nested lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .ntheory import unit_combination

__all__ = [
    "DimensionError",
    "IntMatrix",
    "SnfDecomposition",
    "adjugate",
    "as_matrix",
    "block",
    "from_blocks",
    "inverse_mod",
    "determinant",
    "is_identity_mod",
    "mat_mod",
    "mat_mul",
    "sl_lift",
    "smith_normal_form",
    "unimodular_inverse",
]


class DimensionError(ValueError):
    """Raised when matrix shapes do not fit the requested operation."""


class IntMatrix:
    """Immutable integer matrix stored row-major.

    Parameters
    ----------
    rows : int
    cols : int
    entries : iterable of int
        ``rows * cols`` integers in row-major order.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(x) for x in entries)
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative shape {rows}x{cols}")
        if len(entries) != rows * cols:
            raise DimensionError(
                f"{len(entries)} entries do not fill a {rows}x{cols} matrix"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise DimensionError(f"row {i} has {len(r)} entries, expected {cols}")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, (int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            out[i][i] = v
        return cls.from_rows(out, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def tolist(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows([list(col) for col in zip(*self.tolist())], self.rows)

    def diagonal(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def is_diagonal(self) -> bool:
        return all(
            x == 0
            for i, r in enumerate(self.tolist())
            for j, x in enumerate(r)
            if i != j
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        return mat_mul(self, other)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return IntMatrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, (k * a for a in self.entries))

    def __eq__(self, other) -> bool:
        if isinstance(other, IntMatrix):
            return self.shape == other.shape and self.entries == other.entries
        if isinstance(other, (list, tuple)):
            try:
                return self == as_matrix(other)
            except (DimensionError, TypeError, ValueError):
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"


MatrixLike = IntMatrix | Sequence[Sequence[int]]


def as_matrix(M: MatrixLike, cols: int | None = None) -> IntMatrix:
    if isinstance(M, IntMatrix):
        return M
    return IntMatrix.from_rows(M, cols)


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ M @ V == D`` with unimodular ``U``, ``V`` and diagonal ``D``."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return self.D.diagonal()


def mat_mul(A: MatrixLike, B: MatrixLike) -> IntMatrix:
    A, B = as_matrix(A), as_matrix(B)
    if A.cols != B.rows:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    a, bt = A.tolist(), B.transpose().tolist()
    return IntMatrix(
        A.rows, B.cols, (sum(x * y for x, y in zip(r, c)) for r in a for c in bt)
    )


def mat_mod(A: MatrixLike, m: int) -> IntMatrix:
    """Reduce every entry into ``[0, m)``."""
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    A = as_matrix(A)
    return IntMatrix(A.rows, A.cols, (x % m for x in A.entries))


def is_identity_mod(A: MatrixLike, m: int) -> bool:
    A = as_matrix(A)
    if not A.is_square:
        raise DimensionError(f"{A.shape} matrix cannot be an identity")
    return mat_mod(A, m) == mat_mod(IntMatrix.identity(A.rows), m)


def determinant(M: MatrixLike) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = as_matrix(M)
    if not M.is_square:
        raise DimensionError(f"determinant of non-square {M.shape} matrix")
    n = M.rows
    if n == 0:
        return 1
    a = M.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is the Bareiss invariant
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(M: MatrixLike) -> SnfDecomposition:
    """Smith normal form via elementary row and column operations.

    The pivot is the nonzero entry of least absolute value in the active
    block, ties going to the lowest ``(row, col)``. The result satisfies
    ``U @ M @ V == D`` with ``|det U| == |det V| == 1`` and a nonnegative
    diagonal forming a divisibility chain.
    """
    M = as_matrix(M)
    m, n = M.shape
    a = M.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for r in a:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]

    for t in range(min(m, n)):
        while True:
            candidates = [
                (abs(a[i][j]), i, j)
                for i in range(t, m)
                for j in range(t, n)
                if a[i][j] != 0
            ]
            if not candidates:
                break
            _, pi, pj = min(candidates)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    add_row(i, t, -q)
                clean &= a[i][t] == 0
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    add_col(j, t, -q)
                clean &= a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]

    return SnfDecomposition(
        U=IntMatrix.from_rows(U, m),
        D=IntMatrix.from_rows(a, n),
        V=IntMatrix.from_rows(V, n),
    )


def sl_lift(A: MatrixLike, m: int) -> IntMatrix:
    """Lift a determinant-one residue matrix to an integer matrix of det 1.

    ``A`` is reduced to the identity over ``Z/m`` by row transvections; the
    inverse operations are replayed over the integers, so the result is a
    product of elementary matrices congruent to ``A`` modulo ``m``.

    Raises
    ------
    ValueError
        If ``det A`` is not congruent to 1 modulo ``m``.
    """
    A = as_matrix(A)
    if not A.is_square:
        raise DimensionError(f"sl_lift needs a square matrix, got {A.shape}")
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    n = A.rows
    if (determinant(A) - 1) % m:
        raise ValueError(f"det A = {determinant(A) % m} (mod {m}), expected 1")
    if m == 1:
        return IntMatrix.identity(n)

    a = [[x % m for x in r] for r in A.tolist()]
    lift = IntMatrix.identity(n).tolist()

    def add_row(dst, src, k):
        k %= m
        if not k:
            return
        a[dst] = [(x + k * y) % m for x, y in zip(a[dst], a[src])]
        # lift <- lift @ (I - k E_{dst,src}): col_src -= k * col_dst
        for r in lift:
            r[src] -= k * r[dst]

    for j in range(n):
        below = list(range(j + 1, n))
        xs = unit_combination(a[j][j], [a[i][j] for i in below], m)
        for i, x in zip(below, xs):
            add_row(j, i, x)
        u = a[j][j]
        if u != 1 and below:
            k = below[0]
            add_row(k, j, (1 - a[k][j]) * pow(u, -1, m))
            add_row(j, k, 1 - u)
        if a[j][j] != 1:
            raise ArithmeticError("elimination failed to reach a unit pivot")
        for i in range(n):
            if i != j:
                add_row(i, j, -a[i][j])

    return IntMatrix.from_rows(lift, n)


def adjugate(M: MatrixLike) -> IntMatrix:
    """Transpose of the cofactor matrix, so ``M @ adj(M) == det(M) * I``."""
    M = as_matrix(M)
    if not M.is_square:
        raise DimensionError(f"adjugate of non-square {M.shape} matrix")
    n = M.rows
    if n == 0:
        return M
    a = M.tolist()
    cof = [
        [
            (-1) ** (i + j)
            * determinant([r[:j] + r[j + 1:] for k, r in enumerate(a) if k != i] or IntMatrix(0, 0, ()))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return IntMatrix.from_rows(cof, n).transpose()


def inverse_mod(M: MatrixLike, m: int) -> IntMatrix:
    """Inverse over ``Z/m`` with entries in ``[0, m)``."""
    M = as_matrix(M)
    d = determinant(M)
    try:
        dinv = pow(d, -1, m)
    except ValueError:
        raise ValueError(f"det = {d} is not invertible modulo {m}") from None
    return mat_mod(adjugate(M).scale(dinv), m)


def unimodular_inverse(M: MatrixLike) -> IntMatrix:
    """Exact integer inverse of a matrix with determinant +-1."""
    M = as_matrix(M)
    d = determinant(M)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det = {d})")
    return adjugate(M).scale(d)


def block(M: MatrixLike, rows: range, cols: range) -> IntMatrix:
    M = as_matrix(M)
    return IntMatrix.from_rows([[M[i, j] for j in cols] for i in rows], len(cols))


def from_blocks(blocks: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
    """Assemble a matrix from a grid of blocks; zero-size blocks are fine."""
    heights = [max(b.rows for b in row) for row in blocks]
    widths = [max(blocks[i][j].cols for i in range(len(blocks))) for j in range(len(blocks[0]))]
    out = []
    for row, h in zip(blocks, heights):
        for i in range(h):
            line = []
            for b, w in zip(row, widths):
                line += b.tolist()[i] if b.rows else [0] * w
            out.append(line)
    return IntMatrix.from_rows(out, sum(widths))
