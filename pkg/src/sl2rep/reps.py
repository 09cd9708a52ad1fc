"""Restricted sl2 modules as matrix triples, and their basic constructions.

A module is a triple (E, F, H) of square matrices over GF(p^m) obeying

    HE - EH = 2E,  HF - FH = -2F,  EF - FE = H,
    E^p = 0,       F^p = 0,        H^p = H.

The last identity forces H to be diagonalisable with eigenvalues in the
prime field, which is what the induction machinery in :mod:`sl2rep.graded`
relies on.

Constructors: highest-weight modules ``weyl``, their simple truncations,
``baby_verma`` induced from the Borel, the maximal submodules ``premet_w``,
adjoint twists, duals, tensor products and direct sums.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import Field
from .linalg import Mat, intertwiner_basis, span_contains

__all__ = [
    "Rep", "SL2Element", "RepInvariantError",
    "check_rep", "validate_rep",
    "weyl", "simple", "baby_verma", "premet_w",
    "twist", "dual", "tensor", "direct_sum",
    "submodule_spin", "sub_quotient", "quotient_rep",
    "sl2", "weight_spaces",
]


class RepInvariantError(ValueError):
    pass


@dataclass(frozen=True)
class Rep:
    """A restricted sl2 module: matrices act on column vectors."""

    field: Field
    E: Mat
    F: Mat
    H: Mat

    @property
    def dim(self) -> int:
        return self.E.rows

    def generators(self) -> list[Mat]:
        return [self.E, self.F, self.H]

    def sub(self, U: Mat) -> "Rep":
        """Submodule carried by a stable subspace (columns of U)."""
        return sub_quotient(self, U)

    def replace_generators(self, gens: list[Mat], field: Field | None = None) -> "Rep":
        return validate_rep(Rep(field or self.field, gens[0], gens[1], gens[2]))

    def __eq__(self, other):
        return (isinstance(other, Rep) and self.field == other.field
                and self.E == other.E and self.F == other.F and self.H == other.H)

    def __repr__(self):
        return f"<Rep dim={self.dim} over {self.field!r}>"


def _scaled(M: Mat, c: int) -> Mat:
    return M.scale(M.field.scalar(c))


def check_rep(rep: Rep) -> list[str]:
    """Names of violated structure identities (empty list = valid)."""
    E, F, H = rep.E, rep.F, rep.H
    p = rep.field.p
    bad = []
    if (H @ E - E @ H) != _scaled(E, 2):
        bad.append("[H,E]=2E")
    if (H @ F - F @ H) != _scaled(F, -2):
        bad.append("[H,F]=-2F")
    if (E @ F - F @ E) != H:
        bad.append("[E,F]=H")
    if not E.power(p).is_zero():
        bad.append("E^p=0")
    if not F.power(p).is_zero():
        bad.append("F^p=0")
    if H.power(p) != H:
        bad.append("H^p=H")
    return bad


def validate_rep(rep: Rep) -> Rep:
    bad = check_rep(rep)
    if bad:
        raise RepInvariantError(f"structure identities fail: {', '.join(bad)}")
    return rep


def _rep(field, E, F, H) -> Rep:
    return validate_rep(Rep(field, Mat(field, E), Mat(field, F), Mat(field, H)))


# ----------------------------------------------------------------------
# Highest-weight constructions.
# ----------------------------------------------------------------------

def weyl(d: int, field: Field) -> Rep:
    """The (d+1)-dimensional highest-weight-d module V(d).

    Basis v_0..v_d with H v_i = (d-2i) v_i, E v_i = (d-i+1) v_{i-1},
    F v_i = (i+1) v_{i+1}.
    """
    if d < 0:
        raise ValueError("weight must be nonnegative")
    p = field.p
    n = d + 1
    E = np.zeros((n, n), dtype=np.int64)
    F = np.zeros((n, n), dtype=np.int64)
    H = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        H[i, i] = (d - 2 * i) % p
        if i > 0:
            E[i - 1, i] = (d - i + 1) % p
        if i < d:
            F[i + 1, i] = (i + 1) % p
    return _rep(field, E, F, H)


def simple(i: int, field: Field) -> Rep:
    """The i-th simple module, 0 <= i <= p-1 (equal to weyl(i))."""
    if not 0 <= i <= field.p - 1:
        raise ValueError(f"simple highest weight must lie in 0..{field.p - 1}")
    return weyl(i, field)


def baby_verma(i: int, field: Field) -> Rep:
    """The p-dimensional module induced from the Borel weight i.

    Basis v_0..v_{p-1} with H v_j = (i-2j) v_j, F v_j = v_{j+1} and
    E v_j = j(i-j+1) v_{j-1}; the E coefficients come from commuting e
    past powers of f.
    """
    p = field.p
    if not 0 <= i <= p - 1:
        raise ValueError(f"highest weight must lie in 0..{p - 1}")
    E = np.zeros((p, p), dtype=np.int64)
    F = np.zeros((p, p), dtype=np.int64)
    H = np.zeros((p, p), dtype=np.int64)
    for j in range(p):
        H[j, j] = (i - 2 * j) % p
        if j > 0:
            E[j - 1, j] = (j * (i - j + 1)) % p
        if j < p - 1:
            F[j + 1, j] = 1
    return _rep(field, E, F, H)


def premet_w(d: int, field: Field) -> Rep:
    """The sp-dimensional maximal submodule W(d) of V(d), d = sp + a.

    In the basis of :func:`weyl` this is the span of v_0..v_{sp-1}: the
    coefficient of F v_{sp-1} is sp = 0, so the span is stable, and the
    quotient is the (a+1)-dimensional module of highest weight a.  V(d)
    contains a second sp-dimensional maximal submodule (the mirror span
    of the last sp basis vectors), so the choice is normalised by the
    one-sided freeness asserted below: W(d) restricts freely to the
    f-line and not to the e-line.  A failed assertion means the weight
    conventions are broken and aborts.
    """
    p = field.p
    s, a = divmod(d, p)
    if s < 1 or a > p - 2:
        raise ValueError("need d = sp + a with s >= 1 and 0 <= a <= p-2")
    V = weyl(d, field)
    span = np.zeros((d + 1, s * p), dtype=np.int64)
    for i in range(s * p):
        span[i, i] = 1
    W = sub_quotient(V, Mat(field, span))
    if W.dim != s * p:
        raise RepInvariantError(f"W({d}) has dimension {W.dim}, expected {s * p}")
    if W.F.power(p - 1).rank() != s or W.E.power(p - 1).rank() >= s:
        raise RepInvariantError(
            f"W({d}) is not supported on the e-line; weight conventions broken")
    return W


# ----------------------------------------------------------------------
# Group elements and adjoint twists.
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SL2Element:
    """An element of SL(2) over the field, stored as (a, b; c, d)."""

    field: Field
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        F = self.field
        det = F.sub[F.mul[self.a, self.d], F.mul[self.b, self.c]]
        if det != 1:
            raise ValueError("determinant must be 1")

    @staticmethod
    def of(field: Field, a, b, c, d) -> "SL2Element":
        enc = [x % field.q if isinstance(x, int) else x for x in (a, b, c, d)]
        return SL2Element(field, *(int(v) for v in enc))

    @staticmethod
    def from_ints(field: Field, a, b, c, d) -> "SL2Element":
        """Entries given as rational integers, reduced mod p."""
        return SL2Element(field, *(int(x) % field.p for x in (a, b, c, d)))

    @staticmethod
    def identity(field: Field) -> "SL2Element":
        return SL2Element.from_ints(field, 1, 0, 0, 1)

    @staticmethod
    def w0(field: Field) -> "SL2Element":
        """The standard Weyl group representative (0, 1; -1, 0)."""
        return SL2Element.from_ints(field, 0, 1, -1, 0)

    def __mul__(self, other: "SL2Element") -> "SL2Element":
        F = self.field
        if F != other.field:
            raise ValueError("field mismatch")
        mul, add = F.mul, F.add
        return SL2Element(
            F,
            int(add[mul[self.a, other.a], mul[self.b, other.c]]),
            int(add[mul[self.a, other.b], mul[self.b, other.d]]),
            int(add[mul[self.c, other.a], mul[self.d, other.c]]),
            int(add[mul[self.c, other.b], mul[self.d, other.d]]),
        )

    def inv(self) -> "SL2Element":
        F = self.field
        return SL2Element(F, self.d, int(F.neg[self.b]), int(F.neg[self.c]), self.a)

    def in_borel(self) -> bool:
        """Upper triangular, i.e. in the standard Borel subgroup."""
        return self.c == 0

    def in_w0_borel(self) -> bool:
        return self.a == 0

    def is_diagonal(self) -> bool:
        return self.b == 0 and self.c == 0

    def is_antidiagonal(self) -> bool:
        return self.a == 0 and self.d == 0

    def as_matrix(self) -> Mat:
        return Mat(self.field, [[self.a, self.b], [self.c, self.d]])

    def order(self) -> int:
        g = self
        n = 1
        e = SL2Element.identity(self.field)
        while g != e:
            g = g * self
            n += 1
            if n > self.field.q ** 2:
                raise RuntimeError("order computation ran away")
        return n

    def __repr__(self):
        return f"[{self.a},{self.b};{self.c},{self.d}]"


def twist(M: Rep, g: SL2Element) -> Rep:
    """The module with action precomposed with the adjoint action of g^-1.

    With g = (a, b; c, d) the conjugates of the standard basis are

        g^-1 e g = cd h + d^2 e - c^2 f
        g^-1 f g = -ab h - b^2 e + a^2 f
        g^-1 h g = (ad + bc) h + 2bd e - 2ac f

    and the twisted generators are obtained by replacing e, f, h with the
    acting matrices.
    """
    F = M.field
    if g.field != F:
        raise ValueError("group element over the wrong field")
    mul, add = F.mul, F.add
    a, b, c, d = g.a, g.b, g.c, g.d

    def combo(ch, ce, cf):
        return (M.H.scale(int(ch)) + M.E.scale(int(ce)) + M.F.scale(int(cf)))

    two = F.scalar(2)
    E2 = combo(mul[c, d], mul[d, d], F.neg[mul[c, c]])
    F2 = combo(F.neg[mul[a, b]], F.neg[mul[b, b]], mul[a, a])
    H2 = combo(add[mul[a, d], mul[b, c]],
               mul[two, mul[b, d]],
               F.neg[mul[two, mul[a, c]]])
    return validate_rep(Rep(F, E2, F2, H2))


# ----------------------------------------------------------------------
# Tensor-type constructions.
# ----------------------------------------------------------------------

def dual(M: Rep) -> Rep:
    """Dual module; generators act by the negative transpose."""
    return validate_rep(Rep(M.field, -M.E.T, -M.F.T, -M.H.T))


def tensor(M: Rep, N: Rep) -> Rep:
    """Tensor product; generators act by X (x) I + I (x) X."""
    if M.field != N.field:
        raise ValueError("tensor over different fields")
    F = M.field
    em, en = Mat.identity(F, M.dim), Mat.identity(F, N.dim)

    def t(X, Y):
        return X.kron(en) + em.kron(Y)

    return validate_rep(Rep(F, t(M.E, N.E), t(M.F, N.F), t(M.H, N.H)))


def direct_sum(M: Rep, N: Rep) -> Rep:
    if M.field != N.field:
        raise ValueError("direct sum over different fields")
    return Rep(M.field,
               Mat.block_diag([M.E, N.E]),
               Mat.block_diag([M.F, N.F]),
               Mat.block_diag([M.H, N.H]))


# ----------------------------------------------------------------------
# Submodules and subquotients.
# ----------------------------------------------------------------------

def submodule_spin(M: Rep, vectors: Mat) -> Mat:
    """Smallest E,F,H-stable subspace containing the given columns."""
    W = vectors.column_space()
    while True:
        bigger = W
        for X in M.generators():
            bigger = bigger.hstack(X @ W)
        bigger = bigger.column_space()
        if bigger.rank() == W.rank():
            return W
        W = bigger


def _complete_basis(U: Mat) -> Mat:
    """Deterministically extend full-column-rank U to a basis of the ambient."""
    n = U.rows
    _, pivots = U.T.rref()
    missing = [i for i in range(n) if i not in pivots]
    comp = np.zeros((n, len(missing)), dtype=np.int64)
    for k, i in enumerate(missing):
        comp[i, k] = 1
    return U.hstack(Mat(U.field, comp))


def sub_quotient(M: Rep, U: Mat) -> Rep:
    """The submodule of M carried by the stable subspace spanned by U."""
    for X in M.generators():
        if not span_contains(U, X @ U):
            raise ValueError("subspace is not stable under the action")
    return validate_rep(Rep(M.field,
                            U.solve(M.E @ U),
                            U.solve(M.F @ U),
                            U.solve(M.H @ U)))


def quotient_rep(M: Rep, U: Mat) -> Rep:
    """The action induced on M / span(U)."""
    for X in M.generators():
        if not span_contains(U, X @ U):
            raise ValueError("subspace is not stable under the action")
    U = U.column_space()
    B = _complete_basis(U)
    P = B.inv()
    k = U.cols

    def q(X):
        full = P @ X @ B
        return Mat(M.field, full.a[k:, k:].copy())

    return validate_rep(Rep(M.field, q(M.E), q(M.F), q(M.H)))


# ----------------------------------------------------------------------
# Weight structure.
# ----------------------------------------------------------------------

def weight_spaces(M: Rep) -> dict[int, Mat]:
    """H-eigenspace bases keyed by eigenvalue in the prime field."""
    out = {}
    total = 0
    for c in range(M.field.p):
        K = (M.H - Mat.scalar(M.field, c, M.dim)).kernel()
        if K.cols:
            out[c] = K
            total += K.cols
    if total != M.dim:
        raise RepInvariantError("H is not diagonalisable over the prime field")
    return out


def sl2(field: Field) -> Rep:
    """The adjoint module: 3-dimensional, isomorphic to weyl(2) for p > 3."""
    # basis (e, h, f); ad(e), ad(f), ad(h) written out by hand
    E = [[0, -2, 0], [0, 0, 1], [0, 0, 0]]
    F = [[0, 0, 0], [-1, 0, 0], [0, 2, 0]]
    H = [[2, 0, 0], [0, 0, 0], [0, 0, -2]]
    return validate_rep(Rep(field,
                            Mat.from_int_rows(field, E),
                            Mat.from_int_rows(field, F),
                            Mat.from_int_rows(field, H)))
