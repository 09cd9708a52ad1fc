"""Dense exact linear algebra over GF(p^m).

Matrices are immutable-by-convention wrappers around int64 numpy arrays of
integer-encoded field elements.  Multiplication uses float64 BLAS matmuls
on digit planes (entries stay below 2**53, so the products are exact);
elimination uses vectorised table gathers, one pivot at a time, with the
first nonzero candidate as pivot so that identical inputs always produce
identical reduced forms.

Subspaces are represented by matrices whose *columns* form a basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import Field

__all__ = [
    "Mat",
    "mat_mul",
    "rank",
    "kernel_basis",
    "subspace_ops",
    "SubspaceOps",
]


class FieldMismatchError(ValueError):
    pass


class ShapeError(ValueError):
    pass


class Mat:
    """A rows-by-cols matrix over a :class:`~sl2rep.field.Field`."""

    __slots__ = ("field", "a")

    def __init__(self, field: Field, a):
        a = np.asarray(a, dtype=np.int64)
        if a.ndim != 2:
            raise ShapeError(f"expected 2-D data, got ndim={a.ndim}")
        if a.size and (a.min() < 0 or a.max() >= field.q):
            raise ValueError("entries must be reduced integer encodings")
        self.field = field
        self.a = a

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Mat":
        return Mat(field, np.zeros((rows, cols), dtype=np.int64))

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        return Mat(field, np.eye(n, dtype=np.int64))

    @staticmethod
    def from_int_rows(field: Field, rows) -> "Mat":
        """Build from nested lists of rational integers (reduced mod p)."""
        arr = np.asarray(rows, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        return Mat(field, arr % field.p)

    @staticmethod
    def scalar(field: Field, n: int, size: int) -> "Mat":
        return Mat(field, np.eye(size, dtype=np.int64) * field.scalar(n))

    # -- shape ------------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def _check_same_field(self, other: "Mat"):
        if self.field != other.field:
            raise FieldMismatchError("matrices live over different fields")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if self.a.shape != other.a.shape:
            raise ShapeError("shape mismatch in addition")
        return Mat(self.field, self.field.add[self.a, other.a].astype(np.int64))

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if self.a.shape != other.a.shape:
            raise ShapeError("shape mismatch in subtraction")
        return Mat(self.field, self.field.sub[self.a, other.a].astype(np.int64))

    def __neg__(self) -> "Mat":
        return Mat(self.field, self.field.neg[self.a].astype(np.int64))

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.a.shape} by {other.a.shape}")
        F = self.field
        if F.m == 1:
            prod = (self.a.astype(np.float64) @ other.a.astype(np.float64)) % F.p
            return Mat(F, prod.astype(np.int64))
        return Mat(F, _ext_matmul(F, self.a, other.a))

    def scale(self, c: int) -> "Mat":
        """Multiply every entry by the field element c."""
        F = self.field
        return Mat(F, F.mul[int(c) % F.q, self.a].astype(np.int64))

    def power(self, n: int) -> "Mat":
        if self.rows != self.cols:
            raise ShapeError("power of a non-square matrix")
        out = Mat.identity(self.field, self.rows)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.a.T.copy())

    def trace(self) -> int:
        F = self.field
        t = 0
        for i in range(min(self.rows, self.cols)):
            t = F.add[t, self.a[i, i]]
        return int(t)

    # -- stacking / slicing ---------------------------------------------------

    def hstack(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        return Mat(self.field, np.hstack([self.a, other.a]))

    def vstack(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        return Mat(self.field, np.vstack([self.a, other.a]))

    def take_cols(self, idx) -> "Mat":
        return Mat(self.field, self.a[:, list(idx)].copy())

    def kron(self, other: "Mat") -> "Mat":
        """Kronecker product (exact, via digit-plane products)."""
        self._check_same_field(other)
        F = self.field
        if F.m == 1:
            return Mat(F, np.kron(self.a, other.a) % F.p)
        out = Mat.zeros(F, self.rows * other.rows, self.cols * other.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                block = other.scale(int(self.a[i, j]))
                out.a[i * other.rows:(i + 1) * other.rows,
                      j * other.cols:(j + 1) * other.cols] = block.a
        return out

    @staticmethod
    def block_diag(blocks) -> "Mat":
        blocks = list(blocks)
        F = blocks[0].field
        n = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        out = Mat.zeros(F, n, c)
        i = j = 0
        for b in blocks:
            out.a[i:i + b.rows, j:j + b.cols] = b.a
            i += b.rows
            j += b.cols
        return out

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.field == other.field
                and self.a.shape == other.a.shape and np.array_equal(self.a, other.a))

    def __hash__(self):
        return hash((self.field, self.a.shape, self.a.tobytes()))

    def is_zero(self) -> bool:
        return not self.a.any()

    def __repr__(self):
        return f"Mat({self.field!r}, {self.a.tolist()!r})"

    # -- elimination ----------------------------------------------------------

    def rref(self):
        """Reduced row echelon form.

        Returns:
            (R, pivots): R a new Mat in RREF, pivots the pivot column list.
        """
        F = self.field
        R = self.a.copy()
        rows, cols = R.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(R[r:, c])[0]
            if nz.size == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                R[[r, pr]] = R[[pr, r]]
            piv = R[r, c]
            if piv != 1:
                R[r] = F.mul[int(F.inv[piv]), R[r]]
            mask = np.nonzero(R[:, c])[0]
            mask = mask[mask != r]
            if mask.size:
                factors = R[mask, c]
                R[mask] = F.sub[R[mask], F.mul[factors[:, None], R[r][None, :]]]
            pivots.append(c)
            r += 1
        return Mat(F, R), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Mat":
        """Basis of the right null space; columns span ker(self)."""
        F = self.field
        R, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        K = np.zeros((self.cols, len(free)), dtype=np.int64)
        for k, fc in enumerate(free):
            K[fc, k] = 1
            for r, pc in enumerate(pivots):
                K[pc, k] = F.neg[R.a[r, fc]]
        return Mat(F, K)

    def column_space(self) -> "Mat":
        """Canonical column-span basis (RREF of the transpose, transposed)."""
        R, pivots = self.T.rref()
        return Mat(self.field, R.a[:len(pivots)].T.copy())

    def inv(self) -> "Mat":
        if self.rows != self.cols:
            raise ShapeError("inverse of a non-square matrix")
        n = self.rows
        aug = self.hstack(Mat.identity(self.field, n))
        R, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Mat(self.field, R.a[:, n:].copy())

    def solve(self, rhs: "Mat") -> "Mat":
        """Solve self @ X = rhs exactly; raises if inconsistent.

        When the solution is not unique the free coordinates are set to
        zero, which keeps the output deterministic.
        """
        self._check_same_field(rhs)
        if rhs.rows != self.rows:
            raise ShapeError("right-hand side has wrong height")
        aug = self.hstack(rhs)
        R, pivots = aug.rref()
        pivots_in_lhs = [c for c in pivots if c < self.cols]
        if len(pivots_in_lhs) != len(pivots):
            raise ValueError("inconsistent linear system")
        X = np.zeros((self.cols, rhs.cols), dtype=np.int64)
        for r, pc in enumerate(pivots_in_lhs):
            X[pc] = R.a[r, self.cols:]
        return Mat(self.field, X)


def _ext_matmul(F: Field, A, B):
    """Exact product over GF(p^m), m >= 2, via digit-plane convolution."""
    p, m = F.p, F.m
    digits = F._digits
    Ad = digits[A]  # (r, k, m)
    Bd = digits[B]  # (k, c, m)
    conv = np.zeros((A.shape[0], B.shape[1], 2 * m - 1), dtype=np.int64)
    for s in range(m):
        for t in range(m):
            conv[:, :, s + t] += (
                Ad[:, :, s].astype(np.float64) @ Bd[:, :, t].astype(np.float64)
            ).astype(np.int64)
    conv %= p
    red = F._reduction_rows()
    out_digits = np.tensordot(conv, red, axes=([2], [0])) % p
    weights = p ** np.arange(m, dtype=np.int64)
    return (out_digits * weights).sum(axis=-1)


# ----------------------------------------------------------------------
# Functional surface used throughout the package.
# ----------------------------------------------------------------------

def mat_mul(a: Mat, b: Mat) -> Mat:
    """Exact matrix product; dimension and field mismatches raise."""
    return a @ b


def rank(a: Mat) -> int:
    """Rank over the matrix's own field by exact elimination."""
    return a.rank()


def kernel_basis(a: Mat) -> list[Mat]:
    """Right null space basis as a list of column vectors."""
    K = a.kernel()
    return [K.take_cols([j]) for j in range(K.cols)]


@dataclass
class SubspaceOps:
    sum_basis: Mat
    intersection_basis: Mat
    contains: bool  # first subspace inside the second


def subspace_ops(U: Mat, V: Mat) -> SubspaceOps:
    """Sum, intersection and containment (U subset of V) of column spans."""
    if U.field != V.field:
        raise FieldMismatchError("subspaces over different fields")
    if U.rows != V.rows:
        raise ShapeError("subspaces of different ambient dimension")
    s = U.hstack(V).column_space()
    # x with U a = V b spans the intersection: solve [U | -V] kernel
    K = U.hstack(-V).kernel()
    inter = (U @ Mat(U.field, K.a[:U.cols])).column_space()
    contains = V.rank() == s.rank()
    return SubspaceOps(sum_basis=s, intersection_basis=inter, contains=contains)


def intertwiner_basis(src_gens, tgt_gens, allowed=None) -> list[Mat]:
    """Basis of {T : T X_src = X_tgt T for every generator pair}.

    Args:
        src_gens: square matrices acting on the source space.
        tgt_gens: matching generator actions on the target space.
        allowed: optional boolean (tgt_dim, src_dim) mask; entries of T
            outside the mask are constrained to zero (used for
            degree-preserving maps of graded modules).

    Returns:
        Intertwiners T (tgt_dim x src_dim), echelonised and deterministic.
    """
    if len(src_gens) != len(tgt_gens):
        raise ValueError("generator lists differ in length")
    F = src_gens[0].field
    ns = src_gens[0].rows
    nt = tgt_gens[0].rows
    if ns == 0 or nt == 0:
        return []
    blocks = []
    eye_t = Mat.identity(F, nt)
    eye_s = Mat.identity(F, ns)
    for A, B in zip(src_gens, tgt_gens):
        # vec(T A) = (I (x) A^T) vec(T),  vec(B T) = (B (x) I) vec(T)
        blocks.append((eye_t.kron(A.T) - B.kron(eye_s)).a)
    C = Mat(F, np.vstack(blocks))
    if allowed is not None:
        keep = np.nonzero(np.asarray(allowed, dtype=bool).reshape(-1))[0]
        K = Mat(F, C.a[:, keep].copy()).kernel()
        out = []
        for k in range(K.cols):
            flat = np.zeros(nt * ns, dtype=np.int64)
            flat[keep] = K.a[:, k]
            out.append(Mat(F, flat.reshape(nt, ns)))
        return out
    K = C.kernel()
    return [Mat(F, K.a[:, k].reshape(nt, ns).copy()) for k in range(K.cols)]


def spans_equal(U: Mat, V: Mat) -> bool:
    """Do two column families span the same subspace?"""
    ops = subspace_ops(U, V)
    return ops.contains and U.rank() == V.rank()


def span_contains(U: Mat, V: Mat) -> bool:
    """Is every column of V in the column span of U?"""
    return U.rank() == U.hstack(V).rank()
