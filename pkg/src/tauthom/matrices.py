"""Exact integer matrix arithmetic: Smith normal form, integer linear
solving, and lattice bases.

Everything works over Python's arbitrary-precision integers; no floating
point is used anywhere. Smith reduction follows a deterministic pivot rule
(smallest magnitude nonzero entry, ties broken in row-major order) so that
every factorization is reproducible across runs and platforms.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass


class IntMatrix:
    """Immutable integer matrix stored row-major as a tuple of tuples.

    Explicit row/column counts are kept so that empty shapes (0 x n and
    n x 0) round-trip correctly; those degenerate shapes show up constantly
    as relation matrices of free groups and boundaries of empty complexes.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, entries):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if len(data) != rows or any(len(row) != cols for row in data):
            raise ValueError("entries do not match the declared %dx%d shape" % (rows, cols))
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def from_rows(cls, entries):
        entries = [list(row) for row in entries]
        rows = len(entries)
        cols = len(entries[0]) if entries else 0
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [list(col) for col in columns]
        if rows is None:
            if not columns:
                raise ValueError("row count required for an empty column list")
            rows = len(columns[0])
        if any(len(col) != rows for col in columns):
            raise ValueError("columns have inconsistent heights")
        data = [[col[i] for col in columns] for i in range(rows)]
        return cls(rows, len(columns), data)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, entries, rows=None, cols=None):
        entries = list(entries)
        if rows is None:
            rows = len(entries)
        if cols is None:
            cols = len(entries)
        data = [[entries[i] if i == j and i < len(entries) else 0 for j in range(cols)]
                for i in range(rows)]
        return cls(rows, cols, data)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return "IntMatrix(%d, %d, %r)" % (self.rows, self.cols, [list(r) for r in self.data])

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, [[-x for x in row] for row in self.data])

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch in addition")
        return IntMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix(self.rows, self.cols, [[x * other for x in row] for row in self.data])
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product: %dx%d times %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        bt = list(zip(*other.data)) if other.rows else [()] * other.cols
        data = [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.data]
        return IntMatrix(self.rows, other.cols, data)

    __rmul__ = __mul__

    def transpose(self):
        return IntMatrix(self.cols, self.rows, list(zip(*self.data)) if self.rows else
                         [[] for _ in range(self.cols)])

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(row[j] for row in self.data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def apply(self, vec):
        """Matrix times column vector, returned as a tuple."""
        vec = tuple(vec)
        if len(vec) != self.cols:
            raise ValueError("vector length %d does not match %d columns" % (len(vec), self.cols))
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.data)

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def is_identity(self):
        return self.rows == self.cols and all(
            self.data[i][j] == (1 if i == j else 0)
            for i in range(self.rows) for j in range(self.cols))

    def is_diagonal(self):
        return all(self.data[i][j] == 0
                   for i in range(self.rows) for j in range(self.cols) if i != j)

    def diagonal_entries(self):
        return tuple(self.data[i][i] for i in range(min(self.rows, self.cols)))

    def max_abs(self):
        return max((abs(x) for row in self.data for x in row), default=0)

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols, "entries": [list(r) for r in self.data]}

    @classmethod
    def from_json(cls, obj):
        """Accept either the explicit {"rows","cols","entries"} form or a
        bare list of rows (shape inferred; [] means 0 x 0)."""
        if isinstance(obj, dict):
            return cls(int(obj["rows"]), int(obj["cols"]), obj["entries"])
        if isinstance(obj, list):
            return cls.from_rows(obj)
        raise ValueError("matrix JSON must be an object or a list of rows")


def hstack(*mats):
    mats = [m for m in mats]
    if not mats:
        raise ValueError("hstack of nothing")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("hstack row mismatch")
    data = [sum((list(m.data[i]) for m in mats), []) for i in range(rows)]
    return IntMatrix(rows, sum(m.cols for m in mats), data)


def vstack(*mats):
    mats = [m for m in mats]
    if not mats:
        raise ValueError("vstack of nothing")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("vstack column mismatch")
    data = [row for m in mats for row in m.data]
    return IntMatrix(sum(m.rows for m in mats), cols, data)


@dataclass(frozen=True)
class SmithForm:
    """U * M * V == D with U, V unimodular and D diagonal, nonnegative,
    each diagonal entry dividing the next. ``uinv`` and ``vinv`` are the
    exact integer inverses, maintained during the reduction."""

    u: IntMatrix
    uinv: IntMatrix
    d: IntMatrix
    v: IntMatrix
    vinv: IntMatrix

    @property
    def diagonal(self):
        return self.d.diagonal_entries()

    @property
    def rank(self):
        return sum(1 for x in self.diagonal if x != 0)


def _smith_core(mat):
    r, c = mat.rows, mat.cols
    A = [list(row) for row in mat.data]
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    Ui = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]
    Vi = [[int(i == j) for j in range(c)] for i in range(c)]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def row_add(i, j, q):
        # row_i += q * row_j; the inverse transform is a column op on Ui
        A[i] = [a + q * b for a, b in zip(A[i], A[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
        for row in Ui:
            row[j] -= q * row[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def col_add(i, j, q):
        # col_i += q * col_j
        for row in A:
            row[i] += q * row[j]
        for row in V:
            row[i] += q * row[j]
        Vi[j] = [a - q * b for a, b in zip(Vi[j], Vi[i])]

    t = 0
    mn = min(r, c)
    while t < mn:
        # deterministic pivot: smallest |entry|, first such in row-major order
        best = None
        pi = pj = -1
        for i in range(t, r):
            Ai = A[i]
            for j in range(t, c):
                x = Ai[j]
                if x:
                    ax = -x if x < 0 else x
                    if best is None or ax < best:
                        best, pi, pj = ax, i, j
        if best is None:
            break
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        if A[t][t] < 0:
            row_neg(t)
        p = A[t][t]
        dirty = False
        for i in range(t + 1, r):
            x = A[i][t]
            if x:
                q = x // p
                if q:
                    row_add(i, t, -q)
                if A[i][t]:
                    dirty = True
        for j in range(t + 1, c):
            x = A[t][j]
            if x:
                q = x // p
                if q:
                    col_add(j, t, -q)
                if A[t][j]:
                    dirty = True
        if dirty:
            continue
        d = A[t][t]
        ok = True
        for i in range(t + 1, r):
            Ai = A[i]
            for j in range(t + 1, c):
                if Ai[j] % d:
                    # pull the offending row up so the next pass shrinks the pivot to a gcd
                    row_add(t, i, 1)
                    ok = False
                    break
            if not ok:
                break
        if ok:
            t += 1

    return (IntMatrix(r, r, U), IntMatrix(r, r, Ui), IntMatrix(r, c, A),
            IntMatrix(c, c, V), IntMatrix(c, c, Vi))


@functools.lru_cache(maxsize=4096)
def smith_normal_form(mat):
    """Smith normal form with unimodular transforms and their inverses.

    The identity U*M*V == D is re-verified on every call; a failure would
    mean corrupted bookkeeping and raises immediately.
    """
    u, uinv, d, v, vinv = _smith_core(mat)
    if u * mat * v != d:
        raise AssertionError("Smith reduction bookkeeping failed")
    return SmithForm(u, uinv, d, v, vinv)


def determinant(mat):
    """Exact determinant via fraction-free Bareiss elimination."""
    if mat.rows != mat.cols:
        raise ValueError("determinant of a non-square matrix")
    n = mat.rows
    if n == 0:
        return 1
    A = [list(row) for row in mat.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if A[i][k]), None)
            if pivot is None:
                return 0
            A[k], A[pivot] = A[pivot], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def solve_columns(mat, rhs):
    """Solve mat * X == rhs over the integers, columnwise.

    Returns an IntMatrix X (mat.cols x rhs.cols) or None when some column
    has no integral solution. Free coordinates are set to zero, so the
    answer is deterministic.
    """
    if mat.rows != rhs.rows:
        raise ValueError("shape mismatch in solve")
    s = smith_normal_form(mat)
    y = s.u * rhs
    diag = s.diagonal
    rank = s.rank
    zdata = [[0] * rhs.cols for _ in range(mat.cols)]
    for i in range(mat.rows):
        d = diag[i] if i < len(diag) else 0
        for j in range(rhs.cols):
            val = y.data[i][j]
            if d == 0 or i >= rank:
                if val != 0:
                    return None
            else:
                if val % d:
                    return None
                zdata[i][j] = val // d
    return s.v * IntMatrix(mat.cols, rhs.cols, zdata)


def solve_vector(mat, vec):
    x = solve_columns(mat, IntMatrix.from_columns([list(vec)], mat.rows))
    return None if x is None else x.column(0)


def kernel_basis(mat):
    """Columns form a basis of the integer kernel lattice of ``mat``."""
    s = smith_normal_form(mat)
    cols = [s.v.column(j) for j in range(s.rank, mat.cols)]
    return IntMatrix.from_columns(cols, mat.cols)


def column_basis(mat):
    """Columns form a basis of the column span lattice of ``mat``."""
    s = smith_normal_form(mat)
    diag = s.diagonal
    cols = [tuple(d * x for x in s.uinv.column(i)) for i, d in enumerate(diag) if d]
    return IntMatrix.from_columns(cols, mat.rows)


def lattice_contains(generators, candidates):
    """Do all columns of ``candidates`` lie in the column span of ``generators``?"""
    return solve_columns(generators, candidates) is not None


def lattice_equal(a, b):
    """Column-span equality of two generator matrices over the same ambient rank."""
    if a.rows != b.rows:
        raise ValueError("lattices live in different ambient ranks")
    return lattice_contains(a, b) and lattice_contains(b, a)


def matrix_power(mat, k):
    if mat.rows != mat.cols:
        raise ValueError("power of a non-square matrix")
    result = IntMatrix.identity(mat.rows)
    base = mat
    while k:
        if k & 1:
            result = result * base
        base = base * base if k > 1 else base
        k >>= 1
    return result
