"""Exact integer linear algebra.

Dense matrices over Z with Python integers, Hermite and Smith normal forms
with unimodular transformation certificates, integer kernels, lattice
membership and saturation.

All routines are deterministic: pivots are chosen as the entry of smallest
nonzero absolute value, ties broken by lowest row and then lowest column.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SmithForm",
    "HermiteForm",
    "MatrixFormatError",
    "snf",
    "hnf",
    "invariant_factors",
    "rank",
    "kernel_basis",
    "lattice_solve",
    "lattice_contains",
    "saturation",
    "same_lattice",
    "unimodular_inverse",
]


class MatrixFormatError(ValueError):
    """Raised when matrix text cannot be parsed."""


class IntMatrix:
    """Immutable dense integer matrix.

    ``rows`` and ``cols`` are stored explicitly so that matrices with no rows
    or no columns keep their shape (a ``3 x 0`` matrix generates the zero
    sublattice of Z^3).
    """

    __slots__ = ("_data", "rows", "cols", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[int] = ()):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        flat = [int(e) for e in entries]
        if len(flat) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(flat)}"
            )
        self.rows = rows
        self.cols = cols
        self._data = tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows))
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, (e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("row count required for an empty column list")
            rows = len(columns[0])
        for c in columns:
            if len(c) != rows:
                raise ValueError("ragged columns")
        return cls(len(columns), rows, (e for c in columns for e in c)).T

    @classmethod
    def _wrap(cls, data: list[list[int]], rows: int, cols: int) -> "IntMatrix":
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._data = tuple(tuple(r) for r in data)
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._wrap([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            data[i][i] = v
        return cls._wrap(data, rows, cols)

    @classmethod
    def column_vector(cls, v: Sequence[int]) -> "IntMatrix":
        return cls(len(v), 1, v)

    @classmethod
    def hstack(cls, blocks: Sequence["IntMatrix"], rows: int | None = None) -> "IntMatrix":
        if not blocks:
            return cls.zeros(rows or 0, 0)
        r = blocks[0].rows
        if any(b.rows != r for b in blocks):
            raise ValueError("hstack: row counts differ")
        data = [[e for b in blocks for e in b._data[i]] for i in range(r)]
        return cls._wrap(data, r, sum(b.cols for b in blocks))

    @classmethod
    def vstack(cls, blocks: Sequence["IntMatrix"], cols: int | None = None) -> "IntMatrix":
        if not blocks:
            return cls.zeros(0, cols or 0)
        c = blocks[0].cols
        if any(b.cols != c for b in blocks):
            raise ValueError("vstack: column counts differ")
        data = [list(row) for b in blocks for row in b._data]
        return cls._wrap(data, sum(b.rows for b in blocks), c)

    @classmethod
    def block_diag(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        data = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b._data):
                data[r0 + i][c0:c0 + b.cols] = row
            r0 += b.rows
            c0 += b.cols
        return cls._wrap(data, rows, cols)

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(e for r in self._data for e in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self._data[i][j]

    def submatrix(self, rows: Sequence[int] | slice, cols: Sequence[int] | slice) -> "IntMatrix":
        ri = range(self.rows)[rows] if isinstance(rows, slice) else rows
        ci = range(self.cols)[cols] if isinstance(cols, slice) else cols
        return IntMatrix._wrap([[self._data[i][j] for j in ci] for i in ri], len(ri), len(ci))

    # -- arithmetic -------------------------------------------------------

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix._wrap([list(c) for c in zip(*self._data)] if self.rows else
                               [[] for _ in range(self.cols)], self.cols, self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other._data
        n = other.cols
        data = []
        for r in self._data:
            acc = [0] * n
            for k, a in enumerate(r):
                if a:
                    ok = orows[k]
                    if a == 1:
                        acc = [x + y for x, y in zip(acc, ok)]
                    else:
                        acc = [x + a * y for x, y in zip(acc, ok)]
            data.append(acc)
        return IntMatrix._wrap(data, self.rows, n)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(r, v) if a) for r in self._data)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix._wrap([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
                               self.rows, self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix._wrap([[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
                               self.rows, self.cols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix._wrap([[-a for a in r] for r in self._data], self.rows, self.cols)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix._wrap([[k * a for a in r] for r in self._data], self.rows, self.cols)

    def __pow__(self, k: int) -> "IntMatrix":
        if self.rows != self.cols or k < 0:
            raise ValueError("power requires a square matrix and k >= 0")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = self.tolist()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}, {self.cols}, {list(self.entries)!r})"

    def __str__(self) -> str:
        return self.to_text()

    # -- text format ------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines.extend(" ".join(str(e) for e in r) for r in self._data)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IntMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise MatrixFormatError("empty matrix text")
        head = lines[0].split()
        try:
            rows, cols = (int(t) for t in head)
        except ValueError:
            raise MatrixFormatError(f"bad header line: {lines[0]!r}") from None
        if rows < 0 or cols < 0:
            raise MatrixFormatError("negative dimensions")
        body = lines[1:]
        if len(body) != rows:
            raise MatrixFormatError(f"expected {rows} rows, found {len(body)}")
        data = []
        for k, ln in enumerate(body):
            try:
                r = [int(t) for t in ln.split()]
            except ValueError:
                raise MatrixFormatError(f"non-integer entry in row {k}") from None
            if len(r) != cols:
                raise MatrixFormatError(f"row {k} has {len(r)} entries, expected {cols}")
            data.append(r)
        return cls._wrap(data, rows, cols)


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with U, V unimodular and D in Smith form."""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def invariant_factors(self) -> list[int]:
        """Nonzero diagonal entries other than 1."""
        return [d for d in self.diagonal if d > 1]


@dataclass(frozen=True)
class HermiteForm:
    """``A @ U == H`` with U unimodular.

    H is in column Hermite form: its first ``rank`` columns are nonzero, the
    pivot (first nonzero entry) of column k sits in row ``pivots[k]`` with
    ``pivots`` strictly increasing, pivots are positive, and in each pivot
    row the entries to the left of the pivot lie in ``[0, pivot)``.
    """

    H: IntMatrix
    U: IntMatrix
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def basis(self) -> IntMatrix:
        """The nonzero columns of H: a basis of the column lattice."""
        return self.H.submatrix(slice(None), slice(0, self.rank))


def _identity_rows(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _row_echelon(b: list[list[int]], ncols: int, track: bool):
    """Row-style Hermite form in place. Returns (pivot columns, transform rows).

    ``W @ B_in == B_out`` where W is the returned transform (None when not
    tracked).
    """
    m = len(b)
    w = _identity_rows(m) if track else None
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            best = -1
            best_abs = 0
            for i in range(r, m):
                e = b[i][c]
                if e and (best < 0 or abs(e) < best_abs):
                    best, best_abs = i, abs(e)
            if best < 0:
                break
            if best != r:
                b[r], b[best] = b[best], b[r]
                if track:
                    w[r], w[best] = w[best], w[r]
            piv_row = b[r]
            piv = piv_row[c]
            done = True
            for i in range(r + 1, m):
                e = b[i][c]
                if e:
                    q = e // piv
                    row = b[i]
                    row[c:] = [x - q * y for x, y in zip(row[c:], piv_row[c:])]
                    if track:
                        wi, wr = w[i], w[r]
                        w[i] = [x - q * y for x, y in zip(wi, wr)]
                    if row[c]:
                        done = False
            if done:
                break
        if b[r][c] == 0:
            continue
        if b[r][c] < 0:
            b[r] = [-x for x in b[r]]
            if track:
                w[r] = [-x for x in w[r]]
        piv = b[r][c]
        piv_row = b[r]
        for i in range(r):
            e = b[i][c]
            if e < 0 or e >= piv:
                q = e // piv
                row = b[i]
                row[c:] = [x - q * y for x, y in zip(row[c:], piv_row[c:])]
                if track:
                    w[i] = [x - q * y for x, y in zip(w[i], w[r])]
        pivots.append(c)
        r += 1
    return pivots, w


def hnf(A: IntMatrix) -> HermiteForm:
    """Column Hermite form ``A @ U == H`` of an integer matrix.

    >>> hnf(IntMatrix.from_rows([[2, 0], [0, 3]])).H.tolist()
    [[2, 0], [0, 3]]
    """
    b = A.T.tolist()
    pivots, w = _row_echelon(b, A.rows, track=True)
    H = IntMatrix._wrap(b, A.cols, A.rows).T
    U = IntMatrix._wrap(w, A.cols, A.cols).T
    return HermiteForm(H=H, U=U, pivots=tuple(pivots))


def _column_basis(A: IntMatrix) -> tuple[IntMatrix, tuple[int, ...]]:
    # hnf without the transform
    b = A.T.tolist()
    pivots, _ = _row_echelon(b, A.rows, track=False)
    k = len(pivots)
    return IntMatrix._wrap(b[:k], k, A.rows).T, tuple(pivots)


def rank(A: IntMatrix) -> int:
    b = A.tolist()
    pivots, _ = _row_echelon(b, A.cols, track=False)
    return len(pivots)


def _smith(a: list[list[int]], m: int, n: int, track: bool):
    u = _identity_rows(m) if track else None
    # V is kept transposed so column operations become row operations.
    vt = _identity_rows(n) if track else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if track:
            vt[i], vt[j] = vt[j], vt[i]

    t = 0
    while t < min(m, n):
        best = None
        best_abs = 0
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                e = row[j]
                if e and (best is None or abs(e) < best_abs):
                    best, best_abs = (i, j), abs(e)
                    if best_abs == 1:
                        break
            if best_abs == 1:
                break
        if best is None:
            break
        if best[0] != t:
            swap_rows(t, best[0])
        if best[1] != t:
            swap_cols(t, best[1])
        while True:
            piv_row = a[t]
            piv = piv_row[t]
            # clear column t below the pivot
            smallest = None
            for i in range(t + 1, m):
                e = a[i][t]
                if e:
                    q = e // piv
                    row = a[i]
                    row[t:] = [x - q * y for x, y in zip(row[t:], piv_row[t:])]
                    if track:
                        u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    r = row[t]
                    if r and (smallest is None or abs(r) < abs(a[smallest][t])):
                        smallest = i
            if smallest is not None:
                swap_rows(t, smallest)
                continue
            # column t is zero below the pivot, so clearing row t only
            # touches row t itself
            smallest = None
            for j in range(t + 1, n):
                e = piv_row[j]
                if e:
                    q = e // piv
                    piv_row[j] = e - q * piv
                    if track:
                        vt[j] = [x - q * y for x, y in zip(vt[j], vt[t])]
                    r = piv_row[j]
                    if r and (smallest is None or abs(r) < abs(piv_row[smallest])):
                        smallest = j
            if smallest is not None:
                swap_cols(t, smallest)
                continue
            break
        t += 1
    r = t
    # enforce the divisibility chain on the diagonal with 2x2 gcd moves
    for i in range(r):
        for j in range(i + 1, r):
            di, dj = a[i][i], a[j][j]
            if dj % di == 0:
                continue
            g, s, tt = _xgcd(di, dj)
            a[i][i] = g
            a[j][j] = di * dj // g
            if track:
                ui, uj = u[i], u[j]
                bi, ai = dj // g, di // g
                u[i] = [s * x + tt * y for x, y in zip(ui, uj)]
                u[j] = [-bi * x + ai * y for x, y in zip(ui, uj)]
                # V columns: new_i = v_i + v_j, new_j = -tt*bi*v_i + s*ai*v_j
                vi, vj = vt[i], vt[j]
                vt[i] = [x + y for x, y in zip(vi, vj)]
                vt[j] = [-tt * bi * x + s * ai * y for x, y in zip(vi, vj)]
    for i in range(r):
        if a[i][i] < 0:
            a[i][i] = -a[i][i]
            if track:
                u[i] = [-x for x in u[i]]
    return u, vt, r


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def snf(A: IntMatrix) -> SmithForm:
    """Smith normal form with transforms: ``U @ A @ V == D``.

    >>> snf(IntMatrix.from_rows([[2, 4], [6, 8]])).diagonal
    [2, 4]
    """
    m, n = A.shape
    a = A.tolist()
    u, vt, _ = _smith(a, m, n, track=True)
    D = IntMatrix._wrap(a, m, n)
    return SmithForm(D=D, U=IntMatrix._wrap(u, m, m), V=IntMatrix._wrap(vt, n, n).T)


def smith_diagonal(A: IntMatrix) -> list[int]:
    """Diagonal of the Smith form without computing transforms."""
    m, n = A.shape
    a = A.tolist()
    _smith(a, m, n, track=False)
    return [a[i][i] for i in range(min(m, n))]


def invariant_factors(A: IntMatrix) -> list[int]:
    """Nontrivial invariant factors of the cokernel of A (1s and 0s dropped)."""
    return [d for d in smith_diagonal(A) if d > 1]


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Columns form a basis of ``{x in Z^n : A x = 0}``, in column Hermite form."""
    h = hnf(A)
    k = h.U.submatrix(slice(None), slice(h.rank, A.cols))
    if k.cols == 0:
        return k
    basis, _ = _column_basis(k)
    return basis


def lattice_solve(L: IntMatrix, v: Sequence[int], form: HermiteForm | None = None) -> tuple[int, ...] | None:
    """Integer x with ``L x == v``, or None when v is outside the column lattice."""
    if len(v) != L.rows:
        raise ValueError(f"vector of length {len(v)} against a lattice in Z^{L.rows}")
    h = form if form is not None else hnf(L)
    y = _hermite_coords(h.H, h.pivots, v)
    if y is None:
        return None
    y = list(y) + [0] * (L.cols - len(y))
    return h.U.apply(y)


def _hermite_coords(H: IntMatrix, pivots: Sequence[int], v: Sequence[int]) -> list[int] | None:
    res = list(v)
    coords = []
    start = 0
    for k, pr in enumerate(pivots):
        if any(res[start:pr]):
            return None
        piv = H[pr, k]
        if res[pr] % piv:
            return None
        c = res[pr] // piv
        coords.append(c)
        if c:
            for i in range(pr, H.rows):
                hik = H[i, k]
                if hik:
                    res[i] -= c * hik
        start = pr + 1
    if any(res[start:]):
        return None
    return coords


def lattice_contains(L: IntMatrix, v: Sequence[int], form: HermiteForm | None = None) -> bool:
    """True iff v is an integer combination of the columns of L."""
    if len(v) != L.rows:
        raise ValueError(f"vector of length {len(v)} against a lattice in Z^{L.rows}")
    if form is None:
        basis, pivots = _column_basis(L)
    else:
        basis, pivots = form.H, form.pivots
    return _hermite_coords(basis, pivots, v) is not None


def saturation(L: IntMatrix) -> IntMatrix:
    """Basis of ``{v : n v in span(L) for some n >= 1}``."""
    orth = kernel_basis(L.T)
    return kernel_basis(orth.T)


def same_lattice(A: IntMatrix, B: IntMatrix) -> bool:
    """Column lattices of A and B coincide."""
    if A.rows != B.rows:
        return False
    ha, _ = _column_basis(A)
    hb, _ = _column_basis(B)
    return ha == hb


def unimodular_inverse(P: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix, exact over Z."""
    s = snf(P)
    if s.D != IntMatrix.identity(P.rows):
        raise ValueError("matrix is not unimodular")
    # U P V = I  =>  P^-1 = V U
    return s.V @ s.U


def column_hnf_basis(A: IntMatrix) -> IntMatrix:
    """Canonical basis of the column lattice of A (Hermite form columns)."""
    return _column_basis(A)[0]


def content(v: Iterable[int]) -> int:
    g = 0
    for e in v:
        g = gcd(g, e)
    return g
