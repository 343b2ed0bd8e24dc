"""Exact linear algebra over prime fields and the rationals.

Everything is deterministic: row reduction always picks the leftmost pivot
column and the topmost nonzero row, so identical inputs produce identical
kernel bases and solutions. Prime-field arrays are int64 reduced mod q and
go through the compiled kernels in `_kernels`; rational arrays hold
`fractions.Fraction` objects and are reduced by a plain Python loop.
"""

from fractions import Fraction

import numpy as np

from . import _kernels
from .fields import Field


class NoSolutionError(ValueError):
    """Raised when a linear system a x = b has no solution."""


class Matrix:
    """Immutable exact matrix over a Field, row-major."""

    __slots__ = ("field", "data")

    def __init__(self, field, data, copy=True):
        self.field = field
        arr = np.asarray(data, dtype=field.dtype)
        if arr.ndim != 2:
            raise ValueError(f"expected 2D data, got shape {arr.shape}")
        self.data = field.normalize(arr) if copy else arr
        self.data.setflags(write=False)

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, field.zeros((rows, cols)), copy=False)

    @classmethod
    def identity(cls, field, n):
        return cls(field, field.eye(n), copy=False)

    @classmethod
    def from_rows(cls, field, rows):
        return cls(field, field.array(rows), copy=False)

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def T(self):
        return Matrix(self.field, self.data.T.copy(), copy=False)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            other = other.data
        return Matrix(self.field, self.field.mat_mul(self.data, other), copy=False)

    def __add__(self, other):
        return Matrix(self.field, self.field.mat_add(self.data, other.data), copy=False)

    def __sub__(self, other):
        return Matrix(self.field, self.field.mat_sub(self.data, other.data), copy=False)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.data.shape == other.data.shape
                and bool((self.data == other.data).all()))

    def __hash__(self):
        return hash((self.field, self.data.shape, self.data.tobytes()
                     if self.field.is_prime_field else tuple(map(str, self.data.flat))))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.data.tolist()!r})"

    def is_zero(self):
        return not (self.data != 0).any() if self.field.is_prime_field else \
            all(x == 0 for x in self.data.flat)

    def entries_str(self):
        return [self.field.format_elt(x) for x in self.data.reshape(-1)]


# ---------------------------------------------------------------------------
# Row reduction
# ---------------------------------------------------------------------------


def _rref_fraction(a):
    """In-place RREF over the rationals; returns (rank, pivot columns)."""
    rows, cols = a.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            a[[r, p], :] = a[[p, r], :]
        s = a[r, c]
        if s != 1:
            a[r, :] = [x / s for x in a[r, :]]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                a[i, :] = [x - f * y for x, y in zip(a[i, :], a[r, :])]
        piv.append(c)
        r += 1
    out = np.full(min(rows, cols), -1, dtype=np.int64)
    out[: len(piv)] = piv
    return r, out


def rref(field, arr):
    """RREF of a raw 2D array. Returns (rref_array, rank, pivot_cols list)."""
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        return arr.copy(), 0, []
    if field.is_prime_field:
        work = np.ascontiguousarray(arr % field.q, dtype=np.int64)
        rank, piv = _kernels.rref_mod(work, field.q, field.inv_table)
    else:
        work = np.empty(arr.shape, dtype=object)
        for i, x in enumerate(np.asarray(arr, dtype=object).reshape(-1)):
            work.reshape(-1)[i] = x if isinstance(x, Fraction) else Fraction(x)
        rank, piv = _rref_fraction(work)
    return work, rank, [int(c) for c in piv[:rank]]


def rank(field, arr):
    return rref(field, arr)[1]


def right_kernel(field, arr):
    """Basis of {v : arr @ v = 0}, as rows of the returned array.

    Deterministic: one basis vector per free column in ascending order, with
    a 1 in the free position and minus the RREF entry in each pivot position.
    """
    nrows, ncols = arr.shape
    if ncols == 0:
        return field.zeros((0, 0))
    if nrows == 0:
        return field.eye(ncols)
    red, rk, piv = rref(field, arr)
    free = [c for c in range(ncols) if c not in piv]
    out = field.zeros((len(free), ncols))
    one = 1 if field.is_prime_field else Fraction(1)
    for k, fcol in enumerate(free):
        out[k, fcol] = one
        for r, pcol in enumerate(piv):
            x = red[r, fcol]
            if field.is_prime_field:
                out[k, pcol] = (-int(x)) % field.q
            else:
                out[k, pcol] = -x
    return out


def left_kernel(field, arr):
    """Basis of {v : v @ arr = 0}, as rows."""
    return right_kernel(field, np.ascontiguousarray(arr.T))


def rank_kernel(m):
    """Rank and right-kernel column vectors of a Matrix, per the fixed
    leftmost-pivot reduced-echelon rule."""
    basis = right_kernel(m.field, m.data)
    vecs = [Matrix(m.field, basis[i : i + 1, :].T.copy(), copy=False)
            for i in range(basis.shape[0])]
    return rank(m.field, m.data), vecs


def solve_right(field, a, b):
    """One solution X of a @ X = b (arrays), or None if inconsistent.

    Columns of b are solved jointly from the RREF of [a | b].
    """
    nrows, ncols = a.shape
    if b.shape[0] != nrows:
        raise ValueError("row mismatch")
    k = b.shape[1]
    aug = np.concatenate([a, b], axis=1)
    red, rk, piv = rref(field, aug)
    X = field.zeros((ncols, k))
    for r, c in enumerate(piv):
        if c >= ncols:
            return None
        X[c, :] = red[r, ncols:]
    return X


def solve_all(a, b):
    """Full solution set of a @ X = b for Matrix inputs.

    Returns (particular Matrix, homogeneous basis: list of column-vector
    Matrices), or raises NoSolutionError when b is outside the column space.
    """
    if a.rows != b.rows:
        raise ValueError(f"a has {a.rows} rows but b has {b.rows}")
    X = solve_right(a.field, a.data, b.data)
    if X is None:
        raise NoSolutionError("right-hand side outside the column space")
    _, hom = rank_kernel(a)
    return Matrix(a.field, X, copy=False), hom


def row_space_basis(field, rows_arr):
    """RREF basis of the row space; rows of result are the basis."""
    red, rk, _ = rref(field, rows_arr)
    return red[:rk, :].copy()


def express_in_rows(field, basis_rows, v):
    """Coefficients c with c @ basis_rows = v, or None."""
    sol = solve_right(field, np.ascontiguousarray(basis_rows.T), v.reshape(-1, 1))
    if sol is None:
        return None
    return sol[:, 0]


def in_row_space(field, basis_rows, v):
    return express_in_rows(field, basis_rows, v) is not None


def complement_within(field, sub_rows, all_rows):
    """Rows of all_rows extending row_space(sub_rows) to row_space(stack).

    Greedy and deterministic: scans all_rows in order, keeps each row that
    increases the rank.
    """
    picked = []
    cur = sub_rows
    cur_rank = rank(field, cur) if cur.shape[0] else 0
    for i in range(all_rows.shape[0]):
        cand = np.concatenate([cur, all_rows[i : i + 1, :]], axis=0)
        r = rank(field, cand)
        if r > cur_rank:
            picked.append(i)
            cur = cand
            cur_rank = r
    return picked


def invert(field, a):
    """Exact inverse of a square array, or None if singular."""
    n = a.shape[0]
    if a.shape[1] != n:
        return None
    sol = solve_right(field, a, field.eye(n))
    if sol is None:
        return None
    if not array_equal(field, field.mat_mul(a, sol), field.eye(n)):
        return None
    return sol


def array_equal(field, a, b):
    if a.shape != b.shape:
        return False
    if field.is_prime_field:
        return bool(((a - b) % field.q == 0).all())
    return all(x == y for x, y in zip(a.reshape(-1), b.reshape(-1)))


def matrix_to_json(m):
    return {"rows": m.rows, "cols": m.cols, "entries": m.entries_str()}


def matrix_from_json(field, obj):
    r, c = obj["rows"], obj["cols"]
    ent = obj["entries"]
    if len(ent) != r * c:
        raise ValueError("entries length != rows*cols")
    arr = field.zeros((r, c))
    flat = arr.reshape(-1)
    for i, s in enumerate(ent):
        flat[i] = field.parse(s)
    return Matrix(field, arr, copy=False)
