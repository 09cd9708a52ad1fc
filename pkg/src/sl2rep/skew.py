"""Modules over the skew group algebra for a cyclic group of adjoint twists.

A module is a matrix triple together with an invertible operator G
implementing a group generator g of order n prime to p:

    G X G^{-1} = (action of Ad(g) applied to the generator),  G^n = 1.

Induction from the plain module category places a twist of the module on
each of n slots and lets G cycle the slots; restriction forgets G.  The
decomposition of such induced modules is governed by the stabiliser of
the module's isomorphism class: the restriction splits into the orbit of
twists, while the number of equivariant summands equals the stabiliser
order (character twists of one equivariant structure when the module is
fully stable).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .field import Field
from .linalg import Mat, span_contains
from .reps import Rep, SL2Element, sub_quotient, twist, validate_rep

__all__ = [
    "SkewRep", "SkewInvariantError", "check_skew", "validate_skew",
    "skew_induce", "skew_restrict", "skew_decompose",
    "clifford_counts", "CliffordReport",
]


class SkewInvariantError(ValueError):
    pass


@dataclass(frozen=True)
class SkewRep:
    """An equivariant module for a cyclic group of order n generated by g."""

    rep: Rep
    g: SL2Element
    G: Mat
    n: int

    @property
    def field(self) -> Field:
        return self.rep.field

    @property
    def dim(self) -> int:
        return self.rep.dim

    def generators(self) -> list[Mat]:
        return [self.rep.E, self.rep.F, self.rep.H, self.G]

    def sub(self, U: Mat) -> "SkewRep":
        """Equivariant submodule carried by a stable subspace."""
        U = U.column_space()
        if U.cols == 0:
            z = Mat.zeros(self.field, 0, 0)
            return SkewRep(Rep(self.field, z, z, z), self.g, z, self.n)
        if not span_contains(U, self.G @ U):
            raise SkewInvariantError("subspace not stable under the group action")
        base = sub_quotient(self.rep, U)
        Gs = U.solve(self.G @ U)
        return validate_skew(SkewRep(base, self.g, Gs, self.n))

    def replace_generators(self, gens: list[Mat], field: Field | None = None) -> "SkewRep":
        F = field or self.field
        rep = validate_rep(Rep(F, gens[0], gens[1], gens[2]))
        g = self.g
        if F != self.field:
            table = self.field.embedding_table(F)
            g = SL2Element(F, int(table[g.a]), int(table[g.b]),
                           int(table[g.c]), int(table[g.d]))
        return validate_skew(SkewRep(rep, g, gens[3], self.n))

    def __eq__(self, other):
        return (isinstance(other, SkewRep) and self.rep == other.rep
                and self.g == other.g and self.G == other.G and self.n == other.n)

    def __repr__(self):
        return f"<SkewRep dim={self.dim} order={self.n} over {self.field!r}>"


def check_skew(X: SkewRep) -> list[str]:
    """Violated equivariance constraints (empty list = valid)."""
    from .reps import check_rep
    bad = list(check_rep(X.rep))
    if X.dim == 0:
        return bad
    if gcd(X.n, X.field.p) != 1:
        bad.append("group order prime to p")
    if X.G.rank() != X.dim or not X.G.power(X.n) == Mat.identity(X.field, X.dim):
        bad.append("G^n = 1")
    # G X G^{-1} must equal the Ad(g)-image of the generator actions
    conj = twist(X.rep, X.g.inv())  # generators act through Ad(g)
    Ginv = X.G.inv()
    for got, want in zip(X.rep.generators(), conj.generators()):
        if X.G @ got @ Ginv != want:
            bad.append("equivariance")
            break
    return bad


def validate_skew(X: SkewRep) -> SkewRep:
    bad = check_skew(X)
    if bad:
        raise SkewInvariantError(f"equivariance constraints fail: {', '.join(bad)}")
    return X


def skew_induce(M: Rep, g: SL2Element, n: int | None = None) -> SkewRep:
    """Induced equivariant module: twists of M on n slots, cycled by G."""
    F = M.field
    if g.field != F:
        raise ValueError("group generator over the wrong field")
    order = g.order()
    n = order if n is None else n
    if n % order:
        raise ValueError("declared order is not a multiple of the generator order")
    if gcd(n, F.p) != 1:
        raise ValueError("group order must be prime to the characteristic")
    twists = []
    power = SL2Element.identity(F)
    for _ in range(n):
        twists.append(twist(M, power))
        power = power * g
    E = Mat.block_diag([t.E for t in twists])
    Fm = Mat.block_diag([t.F for t in twists])
    H = Mat.block_diag([t.H for t in twists])
    d = M.dim
    G = np.zeros((n * d, n * d), dtype=np.int64)
    for j in range(n):
        tgt = (j + 1) % n
        G[tgt * d:(tgt + 1) * d, j * d:(j + 1) * d] = np.eye(d, dtype=np.int64)
    rep = validate_rep(Rep(F, E, Fm, H))
    return validate_skew(SkewRep(rep, g, Mat(F, G), n))


def skew_restrict(X: SkewRep) -> Rep:
    """Forget the group action."""
    return X.rep


def skew_decompose(X: SkewRep, seed: int | None = None):
    """Indecomposable equivariant summands with multiplicities."""
    from .homalg import DEFAULT_SEED, decompose
    return decompose(X, seed=DEFAULT_SEED if seed is None else seed)


@dataclass
class CliffordReport:
    group_order: int
    stabilizer_order: int
    orbit_classes: int            # iso classes among the twists of M
    count_identity: bool          # orbit_classes * stabilizer_order == |group|
    skew_summands: list           # (dimension, multiplicity) pairs
    restriction_classes_bound: bool  # summands restricting to one class <= |group|
    dims_conserved: bool


def clifford_counts(M: Rep, g: SL2Element, n: int | None = None,
                    seed: int | None = None) -> CliffordReport:
    """Counting shadows of the Clifford decomposition for a cyclic group.

    Requires M of finite support (complexity at most one); the report
    records the orbit/stabiliser count identity and the bound on the
    number of equivariant classes above a single plain class.
    """
    from .homalg import DEFAULT_SEED, is_isomorphic
    from .support import FiniteSubgroup, module_stabilizer, support
    seed = DEFAULT_SEED if seed is None else seed
    res = support(M, m=1)
    if res.complexity > 1:
        raise ValueError("module must have finite support")
    F = M.field
    X = skew_induce(M, g, n)
    n = X.n
    Gamma = FiniteSubgroup.generated_by(F, [g])
    s = module_stabilizer(Gamma, M, seed=seed).order
    # orbit of iso classes among the twists
    twists = []
    power = SL2Element.identity(F)
    for _ in range(n):
        twists.append(twist(M, power))
        power = power * g
    reps: list = []
    for T in twists:
        if not any(is_isomorphic(T, R, seed=seed) for R in reps):
            reps.append(T)
    summands = skew_decompose(X, seed=seed)
    total = sum(S.dim * m for S, m in summands)
    # how many equivariant classes restrict to each plain class
    per_class = {}
    for S, mult in summands:
        from .homalg import decompose
        parts = decompose(S.rep, seed=seed)
        for part, _ in parts:
            for k, R in enumerate(reps):
                if is_isomorphic(part, R, seed=seed):
                    per_class[k] = per_class.get(k, 0) + mult
    bound_ok = all(v <= n for v in per_class.values())
    return CliffordReport(
        group_order=n,
        stabilizer_order=s,
        orbit_classes=len(reps),
        count_identity=len(reps) * s == n,
        skew_summands=sorted((S.dim, m) for S, m in summands),
        restriction_classes_bound=bound_ok,
        dims_conserved=total == X.dim,
    )
