"""Dense exact linear algebra over the rationals and prime fields.

Matrices act on column vectors (y = A @ x).  Tensor factors are flattened
row-major: the basis vector e_i (x) e_j of a product whose second factor has
dimension n sits at slot ``pair_index(i, j, n) = i*n + j``, and Kronecker
products follow the same convention.  Subspaces of k^n are stored as row
spans; the canonical form is the reduced row echelon basis, so equality of
subspaces is plain data comparison.

All values are immutable after construction and safe to share.
"""

from __future__ import annotations

import numpy as np

from .errors import FieldMismatchError, ShapeError
from .fields import QQ, GF, Field  # noqa: F401  (re-exported for convenience)


def pair_index(i, j, n):
    """Slot of e_i (x) e_j when the second tensor factor has dimension n."""
    return i * n + j


def _same_field(a, b):
    if a.field != b.field:
        raise FieldMismatchError(f"mixed fields: {a.field} vs {b.field}")
    return a.field


class Matrix:
    """An immutable dense matrix over one exact field.

    The raw numpy array is wrapped as-is; use ``from_rows`` when the entries
    still need promotion to canonical field scalars.
    """

    __slots__ = ("field", "a")

    def __init__(self, field, a):
        a = np.asarray(a, dtype=field.dtype)
        if a.ndim != 2:
            raise ShapeError(f"matrix data must be 2-D, got shape {a.shape}")
        self.field = field
        self.a = a
        a.flags.writeable = False

    @classmethod
    def from_rows(cls, field, rows):
        return cls(field, field.array(rows))

    @classmethod
    def zeros(cls, field, r, c):
        return cls(field, field.zeros(r, c))

    @classmethod
    def identity(cls, field, n):
        return cls(field, field.identity(n))

    @classmethod
    def row_vector(cls, field, entries):
        return cls.from_rows(field, [list(entries)])

    @classmethod
    def column_vector(cls, field, entries):
        return cls.from_rows(field, [[x] for x in entries])

    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    @property
    def T(self):
        return Matrix(self.field, self.a.T.copy())

    def __matmul__(self, other):
        f = _same_field(self, other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix(f, f.post(self.a @ other.a))

    def __add__(self, other):
        f = _same_field(self, other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(f, f.post(self.a + other.a))

    def __sub__(self, other):
        f = _same_field(self, other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix(f, f.post(self.a - other.a))

    def __neg__(self):
        return Matrix(self.field, self.field.post(-self.a))

    def scale(self, s):
        s = self.field.promote(s)
        return Matrix(self.field, self.field.post(self.a * s))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool((self.a == other.a).all())
        )

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self.a.flat)))

    def is_zero(self):
        return not (self.a != 0).any()

    def entry(self, i, j):
        return self.a[i, j]

    def col(self, j):
        return Matrix(self.field, self.a[:, j : j + 1].copy())

    def row(self, i):
        return Matrix(self.field, self.a[i : i + 1, :].copy())

    def to_rows(self):
        return [list(row) for row in self.a]

    def rref(self):
        r, pivots = self.field.rref(self.a)
        return Matrix(self.field, r), pivots

    def rank(self):
        return len(self.field.rref(self.a)[1])

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols})"

    def __str__(self):
        body = "\n".join(
            "[" + ", ".join(self.field.scalar_str(x) for x in row) + "]" for row in self.a
        )
        return body if body else f"[empty {self.rows}x{self.cols}]"


def kron(A, B):
    """Kronecker product under the pair_index convention:
    kron(A, B)[pair_index(r1, r2, B.rows), pair_index(c1, c2, B.cols)] = A[r1,c1]*B[r2,c2].
    """
    f = _same_field(A, B)
    return Matrix(f, f.post(np.kron(A.a, B.a)))


def hstack(*ms):
    f = ms[0].field
    for m in ms[1:]:
        _same_field(ms[0], m)
    return Matrix(f, np.hstack([m.a for m in ms]))


def vstack(*ms):
    f = ms[0].field
    for m in ms[1:]:
        _same_field(ms[0], m)
    return Matrix(f, np.vstack([m.a for m in ms]))


class Subspace:
    """A subspace of k^n stored as the row span of ``basis``.

    Canonical subspaces carry the reduced row echelon basis with zero rows
    dropped, so two canonical subspaces are equal iff their basis arrays are
    identical.
    """

    __slots__ = ("ambient_dim", "basis", "canonical")

    def __init__(self, ambient_dim, basis, canonical=False):
        if basis.cols != ambient_dim:
            raise ShapeError(f"basis has {basis.cols} columns, ambient dim is {ambient_dim}")
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.canonical = canonical

    @classmethod
    def from_rows(cls, field, ambient_dim, rows):
        """Span of the given row vectors, canonicalized."""
        if not rows:
            return cls.zero(field, ambient_dim)
        return cls(ambient_dim, Matrix.from_rows(field, rows)).canonicalize()

    @classmethod
    def from_matrix(cls, basis):
        return cls(basis.cols, basis).canonicalize()

    @classmethod
    def zero(cls, field, ambient_dim):
        return cls(ambient_dim, Matrix.zeros(field, 0, ambient_dim), canonical=True)

    @classmethod
    def full(cls, field, ambient_dim):
        return cls(ambient_dim, Matrix.identity(field, ambient_dim), canonical=True)

    @property
    def field(self):
        return self.basis.field

    @property
    def dim(self):
        if not self.canonical:
            return self.basis.rank()
        return self.basis.rows

    def canonicalize(self):
        if self.canonical:
            return self
        r, pivots = self.basis.rref()
        reduced = Matrix(self.field, r.a[: len(pivots)].copy())
        return Subspace(self.ambient_dim, reduced, canonical=True)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            return False
        return self.canonicalize().basis == other.canonicalize().basis

    def __hash__(self):
        return hash((self.ambient_dim, self.canonicalize().basis))

    def leq(self, other):
        return subspace_leq(self, other)

    def contains(self, vector):
        """Membership of a vector (a 1 x n or n x 1 Matrix)."""
        v = vector.a.reshape(-1)
        if v.shape[0] != self.ambient_dim:
            raise ShapeError("vector length does not match ambient dimension")
        row = Matrix(self.field, v.reshape(1, -1).copy())
        probe = Subspace(self.ambient_dim, vstack(self.canonicalize().basis, row))
        return probe.basis.rank() == self.dim

    def sum(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError("ambient dimensions differ")
        _same_field(self.basis, other.basis)
        return Subspace.from_matrix(vstack(self.basis, other.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient_dim} over {self.field})"


def subspace_leq(U, V):
    """True iff U is contained in V (same ambient space and field)."""
    if U.ambient_dim != V.ambient_dim:
        raise ShapeError(
            f"ambient dimensions differ: {U.ambient_dim} vs {V.ambient_dim}"
        )
    _same_field(U.basis, V.basis)
    V = V.canonicalize()
    stacked = Subspace(V.ambient_dim, vstack(V.basis, U.basis))
    return stacked.basis.rank() == V.dim


def kernel_basis(A):
    """The solution space {x : A x = 0}, canonical; dim = cols - rank."""
    r, pivots = A.rref()
    n = A.cols
    free = [c for c in range(n) if c not in set(pivots)]
    if not free:
        return Subspace.zero(A.field, n)
    rows = np.zeros((len(free), n), dtype=A.field.dtype)
    for k, fcol in enumerate(free):
        rows[k, fcol] = A.field.one
        for i, pcol in enumerate(pivots):
            rows[k, pcol] = A.field.post(-r.a[i, fcol])
    return Subspace.from_matrix(Matrix(A.field, rows))


def image_basis(A):
    """The column space of A, canonical; dim(image) + dim(kernel) = cols."""
    return Subspace.from_matrix(A.T)


def solve_right(A, B):
    """An exact solution X of A X = B, or None if the system is inconsistent.

    Free variables are set to zero; when A has full column rank the solution
    is unique.
    """
    f = _same_field(A, B)
    if A.rows != B.rows:
        raise ShapeError(f"row counts differ: {A.rows} vs {B.rows}")
    aug, pivots = hstack(A, B).rref()
    if pivots and pivots[-1] >= A.cols:
        return None
    x = np.zeros((A.cols, B.cols), dtype=f.dtype)
    for i, c in enumerate(pivots):
        x[c, :] = aug.a[i, A.cols :]
    return Matrix(f, x)


def inverse(A):
    """The inverse of a square matrix, or None if singular."""
    if A.rows != A.cols:
        raise ShapeError("only square matrices can be inverted")
    x = solve_right(A, Matrix.identity(A.field, A.rows))
    if x is None or (A @ x) != Matrix.identity(A.field, A.rows):
        return None
    return x


def solve_kron_identity_left(k, U, W):
    """Solve (I_k (x) U) X = W exactly, or return None.

    U is m x t, W is (k*m) x q; the system splits into k independent solves
    against U, batched into a single elimination.
    """
    f = _same_field(U, W)
    m, t = U.shape
    if W.rows != k * m:
        raise ShapeError(f"expected {k * m} rows, got {W.rows}")
    q = W.cols
    blocks = W.a.reshape(k, m, q).transpose(1, 0, 2).reshape(m, k * q)
    x = solve_right(U, Matrix(f, blocks.copy()))
    if x is None:
        return None
    out = x.a.reshape(t, k, q).transpose(1, 0, 2).reshape(k * t, q)
    return Matrix(f, out.copy())


def solve_kron_identity_right(U, k, W):
    """Solve (U (x) I_k) X = W exactly, or return None.

    U is m x t, W is (m*k) x q; row (r, i) only involves unknowns (c, i), so
    the system splits across the identity index.
    """
    f = _same_field(U, W)
    m, t = U.shape
    if W.rows != m * k:
        raise ShapeError(f"expected {m * k} rows, got {W.rows}")
    q = W.cols
    blocks = W.a.reshape(m, k, q).reshape(m, k * q)
    x = solve_right(U, Matrix(f, blocks.copy()))
    if x is None:
        return None
    out = x.a.reshape(t, k, q).reshape(t * k, q)
    return Matrix(f, out.copy())
