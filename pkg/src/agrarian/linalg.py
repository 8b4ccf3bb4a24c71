"""Matrices over (skew) fields.

Row vectors are acted on from the right (``x -> x*A``), so row operations
are left multiplications and scalars always multiply rows from the left.
"""

import random

from . import _kernels
from .errors import Cancelled, FieldMismatch, NotSquare
from .fields import QQ, RationalFunctionField

__all__ = [
    "Matrix",
    "CancelToken",
    "row_reduce",
    "apply_row_ops",
    "rank",
    "modular_rank",
    "solve_right_inverse",
    "solve_left_inverse",
    "solve_left",
    "dieudonne_det_canonical",
    "det_multiplicativity_probe",
]


class CancelToken:
    """Cooperative cancellation flag polled by long computations."""

    def __init__(self):
        self.cancelled = False

    def cancel(self):
        self.cancelled = True

    def check(self):
        if self.cancelled:
            raise Cancelled("computation cancelled")


def _check(token):
    if token is not None:
        token.check()


class Matrix:
    """Immutable ``rows x cols`` matrix with entries in ``field``."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, entries, rows=None, cols=None):
        entries = tuple(tuple(row) for row in entries)
        self.field = field
        self.rows = len(entries) if rows is None else rows
        self.cols = (len(entries[0]) if entries else 0) if cols is None else cols
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError("ragged matrix")
        self.entries = entries

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, [[field.zero] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, field, n):
        return cls(
            field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)], n, n
        )

    @classmethod
    def from_rows(cls, field, rows):
        rows = [[field(x) for x in row] for row in rows]
        return cls(field, rows)

    @classmethod
    def blocks(cls, field, grid, row_sizes, col_sizes):
        """Assemble from a grid of blocks; ``None`` means a zero block."""
        out = []
        for bi, r in enumerate(row_sizes):
            for i in range(r):
                row = []
                for bj, c in enumerate(col_sizes):
                    block = grid[bi][bj]
                    if block is None:
                        row.extend([field.zero] * c)
                    else:
                        row.extend(block.entries[i])
                out.append(row)
        return cls(field, out, sum(row_sizes), sum(col_sizes))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.shape == self.shape
            and all(a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2))
        )

    __hash__ = None

    def __add__(self, other):
        if other.shape != self.shape:
            raise ValueError("shape mismatch")
        return Matrix(
            self.field,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.rows,
            self.cols,
        )

    def __neg__(self):
        return Matrix(self.field, [[-a for a in r] for r in self.entries], self.rows, self.cols)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale_right(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.field.zero
        cols = other.column_tuples()
        out = []
        for row in self.entries:
            new = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                new.append(acc)
            out.append(new)
        return Matrix(self.field, out, self.rows, other.cols)

    def column_tuples(self):
        return list(zip(*self.entries)) if self.rows else [()] * self.cols

    def scale_left(self, c):
        return Matrix(self.field, [[c * a for a in r] for r in self.entries], self.rows, self.cols)

    def scale_right(self, c):
        return Matrix(self.field, [[a * c for a in r] for r in self.entries], self.rows, self.cols)

    def is_zero(self):
        return not any(a for row in self.entries for a in row)

    def is_square(self):
        return self.rows == self.cols

    def transpose(self):
        return Matrix(self.field, self.column_tuples(), self.cols, self.rows)

    def delete_column(self, j):
        return Matrix(
            self.field, [r[:j] + r[j + 1 :] for r in self.entries], self.rows, self.cols - 1
        )

    def delete_row(self, i):
        return Matrix(
            self.field, self.entries[:i] + self.entries[i + 1 :], self.rows - 1, self.cols
        )

    def submatrix(self, rows, cols):
        return Matrix(
            self.field, [[self.entries[i][j] for j in cols] for i in rows], len(rows), len(cols)
        )

    def map(self, fn, field=None):
        return Matrix(
            field or self.field,
            [[fn(a) for a in row] for row in self.entries],
            self.rows,
            self.cols,
        )

    def to_json(self):
        fmt = self.field.format
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[fmt(a) for a in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, field, data):
        rows, cols = data["rows"], data["cols"]
        entries = [[field.parse(s) for s in row] for row in data["entries"]]
        return cls(field, entries, rows, cols)

    def __repr__(self):
        body = "; ".join(", ".join(self.field.format(a) for a in row) for row in self.entries)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


# row reduction


def _size(field, x):
    try:
        return field.size(x)
    except AttributeError:
        return 1


def _sub_scaled(row_a, f, row_b):
    """``row_a - f * row_b`` entrywise."""
    return [a - f * b if b else a for a, b in zip(row_a, row_b)]


def row_reduce(A, token=None, reduced=True):
    """Bring ``A`` to (reduced) row-echelon form by left row operations.

    Returns ``(R, ops, rank)``.  ``ops`` lists ``("swap", i, k)``,
    ``("scale", i, c)`` (row i := c * row i) and ``("add", i, k, c)``
    (row i := row i + c * row k); :func:`apply_row_ops` replays them.
    Pivots are chosen with minimal representation size.
    """
    field = A.field
    M = [list(r) for r in A.entries]
    m, n = A.rows, A.cols
    ops = []
    r = 0
    pivots = []
    for j in range(n):
        if r == m:
            break
        _check(token)
        candidates = [i for i in range(r, m) if M[i][j]]
        if not candidates:
            continue
        p = min(candidates, key=lambda i: _size(field, M[i][j]))
        if p != r:
            M[r], M[p] = M[p], M[r]
            ops.append(("swap", r, p))
        inv = field.inv(M[r][j])
        if M[r][j] != field.one:
            M[r] = [inv * a for a in M[r]]
            ops.append(("scale", r, inv))
        for i in (range(m) if reduced else range(r + 1, m)):
            if i == r or not M[i][j]:
                continue
            f = M[i][j]
            M[i] = _sub_scaled(M[i], f, M[r])
            ops.append(("add", i, r, -f))
        pivots.append(j)
        r += 1
    R = Matrix(field, M, m, n)
    return R, ops, r


def row_pivots(R):
    out = []
    for row in R.entries:
        j = next((j for j, a in enumerate(row) if a), None)
        if j is None:
            break
        out.append(j)
    return out


def apply_row_ops(A, ops):
    M = [list(r) for r in A.entries]
    for op in ops:
        if op[0] == "swap":
            _, i, k = op
            M[i], M[k] = M[k], M[i]
        elif op[0] == "scale":
            _, i, c = op
            M[i] = [c * a for a in M[i]]
        else:
            _, i, k, c = op
            M[i] = [a + c * b for a, b in zip(M[i], M[k])]
    return Matrix(A.field, M, A.rows, A.cols)


def _modular_image(A, rng, attempts=4):
    """Entries of a commutative matrix evaluated at a random point mod p, or None."""
    field = A.field
    p = _kernels.PRIME
    if field == QQ:
        out = []
        for row in A.entries:
            new = []
            for a in row:
                v = QQ.eval_mod(a, p)
                if v is None:
                    return None
                new.append(v)
            out.append(new)
        return out
    if not isinstance(field, RationalFunctionField):
        return None
    for _ in range(attempts):
        point = [rng.randrange(2, p - 1) for _ in field.names]
        out = []
        ok = True
        for row in A.entries:
            new = []
            for a in row:
                v = a.eval_mod(point, p)
                if v is None:
                    ok = False
                    break
                new.append(v)
            if not ok:
                break
            out.append(new)
        if ok:
            return out
    return None


def modular_rank(A, rng=None):
    """A certified lower bound for the rank (evaluation mod p), or None."""
    if A.rows == 0 or A.cols == 0:
        return 0
    image = _modular_image(A, rng or random.Random(0x5EED))
    if image is None:
        return None
    return _kernels.rank_mod_p(image)


def rank(A, token=None):
    """Exact rank; a full-rank modular evaluation short-circuits elimination."""
    if A.rows == 0 or A.cols == 0:
        return 0
    lower = modular_rank(A)
    if lower is not None and lower == min(A.rows, A.cols):
        return lower
    return row_reduce(A, token, reduced=False)[2]


def _elimination_matrix(A, token=None):
    """``(E, R, rank)`` with ``E*A = R`` in reduced row-echelon form."""
    field = A.field
    m = A.rows
    aug = Matrix(
        field,
        [list(A.entries[i]) + [field.one if i == k else field.zero for k in range(m)] for i in range(m)],
        m,
        A.cols + m,
    )
    # reduce on the left block only
    M = [list(r) for r in aug.entries]
    n = A.cols
    r = 0
    for j in range(n):
        if r == m:
            break
        _check(token)
        candidates = [i for i in range(r, m) if M[i][j]]
        if not candidates:
            continue
        p = min(candidates, key=lambda i: _size(field, M[i][j]))
        M[r], M[p] = M[p], M[r]
        inv = field.inv(M[r][j])
        M[r] = [inv * a for a in M[r]]
        for i in range(m):
            if i != r and M[i][j]:
                M[i] = _sub_scaled(M[i], M[i][j], M[r])
        r += 1
    R = Matrix(field, [row[:n] for row in M], m, n)
    E = Matrix(field, [row[n:] for row in M], m, m)
    return E, R, r


def solve_right_inverse(A, token=None):
    """``B`` with ``A*B = I`` if ``A`` has full row rank, else ``None``."""
    E, R, r = _elimination_matrix(A, token)
    if r < A.rows:
        return None
    field = A.field
    piv = row_pivots(R)
    Bp = [[field.zero] * A.rows for _ in range(A.cols)]
    for i, j in enumerate(piv):
        Bp[j][i] = field.one
    return Matrix(field, Bp, A.cols, A.rows) * E


def solve_left_inverse(A, token=None):
    """``G`` with ``G*A = I`` if ``A`` has full column rank, else ``None``."""
    E, R, r = _elimination_matrix(A, token)
    if r < A.cols:
        return None
    return Matrix(A.field, E.entries[: A.cols], A.cols, A.rows)


def solve_left(A, P, token=None, free=None):
    """Some ``X`` with ``X*A = P`` or ``None`` if no solution exists.

    ``free`` optionally supplies a matrix ``W`` (``P.rows x (A.rows - rank)``)
    that selects a different solution by adding ``W * K`` where the rows of
    ``K`` span the left kernel of ``A``.
    """
    field = A.field
    E, R, r = _elimination_matrix(A, token)
    piv = row_pivots(R)
    # Y * R = P with Y = X * E^-1; Y is supported on the first r columns
    Y = [[P.entries[i][j] for j in piv] + [field.zero] * (A.rows - r) for i in range(P.rows)]
    if free is not None and A.rows > r:
        for i in range(P.rows):
            for k in range(A.rows - r):
                Y[i][r + k] = free.entries[i][k]
    Ym = Matrix(field, Y, P.rows, A.rows)
    # check that P lies in the row space
    if not (Ym * R) == P:
        return None
    return Ym * E


# Dieudonne determinant


def dieudonne_det_canonical(A, token=None, trace=None):
    """Canonical representative ``det^c`` of the Dieudonne determinant.

    Follows the inductive recursion: a zero last row gives 0; a nonzero
    corner ``a_nn`` is eliminated by ``a_ij - a_in a_nn^-1 a_nj`` and
    contributes a right factor ``a_nn``; otherwise rows ``j`` and ``n`` are
    swapped for the largest ``j < n`` with ``a_nj != 0``.  That swap rule can
    cycle on invertible matrices, so revisited row orders fall back to a rank
    check and, if the matrix is invertible, to a swap with a row whose last
    entry is nonzero.  ``trace`` (a list) records the cases taken.
    """
    if not A.is_square():
        raise NotSquare(f"det of a {A.rows}x{A.cols} matrix")
    field = A.field
    n = A.rows
    if n == 0:
        return field.one
    M = [list(r) for r in A.entries]
    sign = 1
    tail = field.one
    visited = set()
    while True:
        _check(token)
        n = len(M)
        if n == 1:
            if trace is not None:
                trace.append(1)
            result = M[0][0] * tail
            return -result if sign < 0 else result
        last = M[-1]
        if not any(last):
            if trace is not None:
                trace.append(2)
            return field.zero
        corner = last[-1]
        if corner:
            if trace is not None:
                trace.append(3)
            visited.clear()
            inv = field.inv(corner)
            col = [M[i][-1] for i in range(n - 1)]
            newM = []
            for i in range(n - 1):
                f = col[i] * inv if col[i] else None
                row = M[i][:-1]
                if f is not None:
                    row = [a - f * b if b else a for a, b in zip(row, last[:-1])]
                newM.append(row)
            M = newM
            tail = corner * tail
            continue
        state = tuple(id(r) for r in M)
        if state in visited:
            if trace is not None:
                trace.append("guard")
            visited.clear()
            if rank(Matrix(field, M, n, n), token) < n:
                return field.zero
            k = max(i for i in range(n - 1) if M[i][-1])
            M[k], M[-1] = M[-1], M[k]
            sign = -sign
            continue
        visited.add(state)
        if trace is not None:
            trace.append(4)
        j = max(i for i in range(n - 1) if last[i])
        M[j], M[-1] = M[-1], M[j]
        sign = -sign


def classical_det(A):
    """Leibniz-formula determinant; an elimination-free oracle for small commutative matrices."""
    if not A.is_square():
        raise NotSquare("determinant of a non-square matrix")
    field = A.field
    if not getattr(field, "is_commutative", False):
        raise FieldMismatch("classical determinant needs a commutative field")
    from itertools import permutations

    n = A.rows
    total = field.zero
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = field.one
        for i in range(n):
            term = term * A.entries[i][perm[i]]
            if not term:
                break
        if term:
            total = total - term if inversions % 2 else total + term
    return total


def det_multiplicativity_probe(A, B, token=None):
    """Compare ``det^c(AB)`` with ``det^c(A) det^c(B)`` under the detector battery."""
    from .invariants import same_class

    if not (A.is_square() and B.is_square()):
        raise NotSquare("multiplicativity probe needs square matrices")
    lhs = dieudonne_det_canonical(A * B, token)
    rhs = dieudonne_det_canonical(A, token) * dieudonne_det_canonical(B, token)
    if not lhs or not rhs:
        return not lhs and not rhs
    return same_class(lhs, rhs, indeterminacy="exact")
