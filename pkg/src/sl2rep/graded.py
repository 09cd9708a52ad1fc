"""Z/p^r-graded modules: induction, character twists, the shift filtration.

A graded module is a module together with a degree in Z/p^r for every
basis vector, such that H acts on the degree-mu component by the scalar
mu mod p while E and F move degrees by +2 and -2.  These are exactly the
data of a module over the first Frobenius kernel extended by an r-th
torus kernel.

Induction from an ungraded module Z spreads its H-eigenspaces over all
of Z/p^r: the induced space is the direct sum over mu of the eigenspace
for mu mod p, with E and F acting slotwise and H by mu.  The coordinate
ring of the quotient acts through the slot shift S: mu -> mu + p^(r0)
(r0 the level induced from), and the powers of S - 1 cut out the
canonical filtration of the induced module:

    N_l = ker (S - 1)^(l+1),   l = 0 .. p^(r-r0) - 1.

All the structural identities of that filtration (step dimensions,
images and composition rules of the restricted shift powers, step
quotients) are enforced as exact matrix statements by the verification
suites; a failure is a build-breaking bug, not a tolerance issue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import Field
from .linalg import Mat, span_contains
from .reps import Rep, SL2Element, baby_verma, premet_w, sub_quotient, twist, \
    validate_rep, weight_spaces, weyl

__all__ = [
    "GradedRep", "Filtration", "GradedInvariantError",
    "check_graded", "validate_graded",
    "induce", "induce_graded", "restrict", "restrict_level", "char_twist",
    "shift_operator", "voigt_filtration", "realize_x", "verify_nonsplit_steps",
    "unit_map", "weyl_graded", "premet_w_graded", "baby_verma_graded",
    "twist_graded", "dual_graded",
]


class GradedInvariantError(ValueError):
    pass


@dataclass(frozen=True)
class GradedRep:
    """A module with a Z/p^r degree on each basis vector.

    ``shift_step`` and ``shift_perm`` are only present on modules built
    by the induction constructors; they encode the canonical slot shift.
    """

    rep: Rep
    r: int
    deg: tuple
    shift_step: int | None = None
    shift_perm: tuple | None = None

    @property
    def field(self) -> Field:
        return self.rep.field

    @property
    def dim(self) -> int:
        return self.rep.dim

    @property
    def modulus(self) -> int:
        return self.field.p ** self.r

    def generators(self) -> list[Mat]:
        return self.rep.generators()

    def degree_indices(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, d in enumerate(self.deg):
            out.setdefault(int(d), []).append(i)
        return out

    def sub(self, U: Mat) -> "GradedRep":
        """Graded submodule on a stable subspace; must be degree homogeneous."""
        F = self.field
        U = U.column_space()
        if U.cols == 0:
            z = Mat.zeros(F, 0, 0)
            return GradedRep(Rep(F, z, z, z), self.r, ())
        deg = np.asarray(self.deg)
        pieces = []
        degs: list[int] = []
        for d in sorted(set(int(x) for x in self.deg)):
            other = np.nonzero(deg != d)[0]
            A = Mat(F, U.a[other, :].copy()) if other.size else Mat.zeros(F, 0, U.cols)
            K = A.kernel()
            if K.cols:
                Bd = (U @ K).column_space()
                pieces.append(Bd)
                degs.extend([d] * Bd.cols)
        if not pieces:
            raise GradedInvariantError("subspace is not a graded subspace")
        B = pieces[0]
        for piece in pieces[1:]:
            B = B.hstack(piece)
        if B.rank() != U.cols:
            raise GradedInvariantError("subspace is not a graded subspace")
        return validate_graded(GradedRep(sub_quotient(self.rep, B), self.r, tuple(degs)))

    def replace_generators(self, gens: list[Mat], field: Field | None = None) -> "GradedRep":
        rep = validate_rep(Rep(field or self.field, gens[0], gens[1], gens[2]))
        return validate_graded(GradedRep(rep, self.r, self.deg,
                                         self.shift_step, self.shift_perm))

    def __eq__(self, other):
        return (isinstance(other, GradedRep) and self.rep == other.rep
                and self.r == other.r and self.deg == other.deg)

    def __repr__(self):
        return f"<GradedRep dim={self.dim} level={self.r} over {self.field!r}>"


def check_graded(M: GradedRep) -> list[str]:
    """Violated grading constraints (empty list = valid)."""
    from .reps import check_rep
    bad = list(check_rep(M.rep))
    F = M.field
    p, mod = F.p, M.modulus
    deg = np.asarray(M.deg, dtype=np.int64)
    if len(deg) != M.dim:
        return bad + ["degree vector length"]
    if np.any(deg < 0) or np.any(deg >= mod):
        bad.append("degrees reduced mod p^r")
    H = M.rep.H.a
    if np.any(H[~np.eye(M.dim, dtype=bool)]):
        bad.append("H diagonal")
    elif np.any(np.diagonal(H) != deg % p):
        bad.append("H matches degrees mod p")
    for X, step in [(M.rep.E.a, 2), (M.rep.F.a, -2)]:
        rows, cols = np.nonzero(X)
        if np.any((deg[rows] - deg[cols] - step) % mod):
            bad.append(f"degree step {step:+d}")
    return bad


def validate_graded(M: GradedRep) -> GradedRep:
    bad = check_graded(M)
    if bad:
        raise GradedInvariantError(f"grading constraints fail: {', '.join(bad)}")
    return M


# ----------------------------------------------------------------------
# Induction.
# ----------------------------------------------------------------------

def _build_induced(field: Field, r: int, step_level: int, fibers: dict,
                   fiber_E: Mat, fiber_F: Mat):
    """Shared assembly for both induction constructors.

    fibers: residue -> list of underlying basis indices (the fiber of any
    slot with that residue); fiber_E/fiber_F act on the underlying space;
    the slot structure places fiber copies at every degree mu in Z/p^r.
    """
    p = field.p
    mod = p ** r
    res_mod = p ** step_level
    index: dict[tuple, int] = {}
    deg: list[int] = []
    for mu in range(mod):
        for t in fibers.get(mu % res_mod, []):
            index[(mu, t)] = len(deg)
            deg.append(mu)
    n = len(deg)
    E = np.zeros((n, n), dtype=np.int64)
    F = np.zeros((n, n), dtype=np.int64)
    H = np.zeros((n, n), dtype=np.int64)
    perm = [0] * n
    for (mu, t), col in index.items():
        H[col, col] = mu % p
        perm[col] = index[((mu + res_mod) % mod, t)]
        for t2 in fibers.get((mu + 2) % res_mod, []):
            c = fiber_E.a[t2, t]
            if c:
                E[index[((mu + 2) % mod, t2)], col] = c
        for t2 in fibers.get((mu - 2) % res_mod, []):
            c = fiber_F.a[t2, t]
            if c:
                F[index[((mu - 2) % mod, t2)], col] = c
    rep = validate_rep(Rep(field, Mat(field, E), Mat(field, F), Mat(field, H)))
    return validate_graded(GradedRep(rep, r, tuple(deg),
                                     shift_step=res_mod, shift_perm=tuple(perm)))


def induce(Z: Rep, r: int) -> GradedRep:
    """Spread an ungraded module over Z/p^r (induction from the bottom level).

    The result has dimension p^(r-1) * dim Z; for r = 1 it is Z itself in
    an H-eigenbasis, with the eigenvalues as degrees.
    """
    field = Z.field
    spaces = weight_spaces(Z)  # forces H diagonalisable
    C = None
    wts: list[int] = []
    for c in sorted(spaces):
        B = spaces[c]
        C = B if C is None else C.hstack(B)
        wts.extend([c] * B.cols)
    Cinv = C.inv()
    Ez = Cinv @ Z.E @ C
    Fz = Cinv @ Z.F @ C
    fibers: dict[int, list[int]] = {}
    for t, c in enumerate(wts):
        fibers.setdefault(c, []).append(t)
    out = _build_induced(field, r, 1, fibers, Ez, Fz)
    object.__setattr__(out, "_inducing_basis", C)  # witness reconstruction
    return out


def induce_graded(Y: GradedRep, s: int) -> GradedRep:
    """Induction from level r to level r + s; dimension multiplies by p^s."""
    if s < 1:
        raise ValueError("need s >= 1")
    field = Y.field
    fibers: dict[int, list[int]] = {}
    for t, d in enumerate(Y.deg):
        fibers.setdefault(int(d), []).append(t)
    return _build_induced(field, Y.r + s, Y.r, fibers, Y.rep.E, Y.rep.F)


def restrict(M: GradedRep) -> Rep:
    """Forget the grading."""
    return M.rep


def restrict_level(M: GradedRep, r0: int) -> GradedRep:
    """Reduce all degrees mod p^r0 (restriction to the smaller level)."""
    if r0 < 1 or r0 > M.r:
        raise ValueError("target level out of range")
    if r0 == M.r:
        return M
    mod = M.field.p ** r0
    return validate_graded(GradedRep(M.rep, r0,
                                     tuple(int(d) % mod for d in M.deg)))


def char_twist(M: GradedRep, lam: int) -> GradedRep:
    """Tensor with the one-dimensional character of degree lam (p | lam)."""
    mod = M.modulus
    lam = int(lam) % mod
    if lam % M.field.p:
        raise ValueError("character degree must be divisible by p")
    return validate_graded(GradedRep(M.rep, M.r,
                                     tuple((int(d) + lam) % mod for d in M.deg),
                                     M.shift_step, M.shift_perm))


# ----------------------------------------------------------------------
# The shift operator and its filtration.
# ----------------------------------------------------------------------

def shift_operator(M: GradedRep) -> Mat:
    """The slot shift mu -> mu + p^(r0) of an induced module.

    Commutes with E, F, H; S - 1 generates the action of the quotient
    coordinate ring's augmentation ideal, and (S - 1)^(p^(r - r0)) = 0.
    """
    if M.shift_perm is None:
        raise ValueError("module was not built by an induction constructor")
    n = M.dim
    S = np.zeros((n, n), dtype=np.int64)
    for i, j in enumerate(M.shift_perm):
        S[j, i] = 1
    return Mat(M.field, S)


@dataclass
class Filtration:
    """The chain N_0 <= N_1 <= ... <= N_n cut out by powers of S - 1."""

    ambient: GradedRep
    shift: Mat
    steps: list  # column bases, steps[l] spans N_l

    @property
    def length(self) -> int:
        return len(self.steps)

    def step_module(self, l: int) -> GradedRep:
        """N_l as a graded module at the inducing level.

        The shift moves ambient degrees by p^(r0), so the steps are graded
        subspaces only after reducing degrees mod p^(r0).
        """
        p = self.ambient.field.p
        r0 = 0
        step = self.ambient.shift_step
        while p ** r0 != step:
            r0 += 1
        return restrict_level(self.ambient, r0).sub(self.steps[l])

    def step_rep(self, l: int) -> Rep:
        """N_l as an ungraded module."""
        return sub_quotient(self.ambient.rep, self.steps[l])

    def step_quotient(self, l: int) -> Rep:
        """N_l / N_{l-1} as an ungraded module."""
        from .reps import quotient_rep
        Nl = self.step_rep(l)
        if l == 0:
            return Nl
        inner = self.steps[l].solve(self.steps[l - 1])
        return quotient_rep(Nl, inner)

    def shift_power_map(self, power: int, j: int) -> Mat:
        """(S - 1)^power restricted to N_j, in the coordinates of its image step.

        The image lands in N_{j - power}; the returned matrix maps N_j
        coordinates to N_{j - power} coordinates (zero columns when the
        image is smaller).
        """
        F = self.ambient.field
        eye = Mat.identity(F, self.ambient.dim)
        img = (self.shift - eye).power(power) @ self.steps[j]
        tgt = self.steps[max(j - power, 0)] if j - power >= 0 else None
        if tgt is None:
            if not img.is_zero():
                raise GradedInvariantError("shift power should annihilate this step")
            return Mat.zeros(F, 0, self.steps[j].cols)
        return tgt.solve(img)


def voigt_filtration(M: GradedRep) -> Filtration:
    """The filtration N_l = ker (S - 1)^(l+1) of an induced module.

    Checks, exactly: dim N_l = (l+1) dim N_0, stability of each step under
    E, F, H, and that the chain is strictly increasing up to the whole
    space.
    """
    F = M.field
    S = shift_operator(M)
    length = M.modulus // M.shift_step
    eye = Mat.identity(F, M.dim)
    base = S - eye
    steps = []
    z = M.dim // length
    for l in range(length):
        op_l = base.power(l + 1)
        N = op_l.kernel()
        if N.cols != (l + 1) * z:
            raise GradedInvariantError(
                f"step {l} has dimension {N.cols}, expected {(l + 1) * z}")
        for X in M.generators():
            if not span_contains(N, X @ N):
                raise GradedInvariantError(f"step {l} is not stable")
        steps.append(N)
    return Filtration(M, S, steps)


# ----------------------------------------------------------------------
# Realisation of the graded lifts of the twisted maximal submodules.
# ----------------------------------------------------------------------

def realize_x(a: int, g: SL2Element, l: int, r: int) -> GradedRep:
    """The unique graded lift of the twisted sp-dimensional module family.

    Induce the twisted p-dimensional Borel-induced module to level r; for
    l = 1 that is already the answer, otherwise re-induce to a level
    whose filtration is long enough and take the (l-1)-st step of the
    shift filtration, reduced back to level r.  The restriction to the
    ungraded algebra is the twisted maximal submodule of weight l p^r + a.
    """
    field = g.field
    if not 0 <= a <= field.p - 2:
        raise ValueError("weight parameter out of range")
    if l < 1 or r < 1:
        raise ValueError("need l >= 1 and r >= 1")
    if g.in_borel() or g.in_w0_borel():
        raise ValueError("group element must avoid both Borel cosets")
    Z = twist(baby_verma(a, field), g)
    Y = induce(Z, r)
    if l == 1:
        return Y
    s = 1
    while field.p ** s < l:
        s += 1
    N = induce_graded(Y, s)
    filt = voigt_filtration(N)
    step = filt.step_module(l - 1)
    return restrict_level(step, r)


def unit_map(Z: Rep, M: GradedRep) -> Mat:
    """The embedding of Z onto ker(S - 1) inside its induced module."""
    C = getattr(M, "_inducing_basis", None)
    if C is None:
        raise ValueError("module was not induced from an ungraded module")
    F = Z.field
    spaces = weight_spaces(Z)
    wts: list[int] = []
    for c in sorted(spaces):
        wts.extend([c] * spaces[c].cols)
    # P maps eigencoordinate t to the sum over slots mu = wt(t) mod p
    P = np.zeros((M.dim, Z.dim), dtype=np.int64)
    deg = np.asarray(M.deg)
    pos = 0
    fibers: dict[int, list[int]] = {}
    for t, c in enumerate(wts):
        fibers.setdefault(c, []).append(t)
    index = {}
    for i, mu in enumerate(deg):
        slot = fibers[int(mu) % F.p]
        # basis vectors with equal degree appear in fiber order
        index.setdefault(int(mu), []).append(i)
    for mu, idxs in index.items():
        for fiber_pos, i in enumerate(idxs):
            t = fibers[mu % F.p][fiber_pos]
            P[i, t] = 1
    return Mat(F, P) @ C.inv()


# ----------------------------------------------------------------------
# Split/non-split analysis of the filtration steps.
# ----------------------------------------------------------------------

@dataclass
class StepReport:
    level: int
    split: bool
    middle_exact: bool | None
    middle_projective_free: bool | None


def verify_nonsplit_steps(filt: Filtration, seed: int | None = None) -> list[StepReport]:
    """For each step, does N_l decompose as N_{l-1} + (N_l / N_{l-1})?

    Also builds the middle-term sequence
    0 -> N_l -> N_{l-1} (+) N_{l+1} -> N_l -> 0 with the canonical maps
    and checks its exactness and that the middle term has no projective
    summand.
    """
    from .homalg import DEFAULT_SEED, is_isomorphic, is_projective, is_indecomposable
    from .reps import direct_sum
    seed = DEFAULT_SEED if seed is None else seed
    out = []
    n = filt.length - 1
    for l in range(1, n + 1):
        Nl = filt.step_rep(l)
        Nlm = filt.step_rep(l - 1)
        Q = filt.step_quotient(l)
        split = is_isomorphic(Nl, direct_sum(Nlm, Q), seed=seed)
        middle_exact = middle_free = None
        if l < n:
            middle_exact = _middle_sequence_exact(filt, l)
            Nlp = filt.step_rep(l + 1)
            if is_indecomposable(Nlm, seed=seed) and is_indecomposable(Nlp, seed=seed):
                # the only summands of the middle are these two
                middle_free = not is_projective(Nlm) and not is_projective(Nlp)
            else:
                from .homalg import decompose
                parts = decompose(direct_sum(Nlm, Nlp), seed=seed)
                middle_free = all(not is_projective(s) for s, _ in parts)
        out.append(StepReport(l, split, middle_exact, middle_free))
    return out


def _middle_sequence_exact(filt: Filtration, l: int) -> bool:
    """Exactness of 0 -> N_l -> N_{l-1} (+) N_{l+1} -> N_l -> 0.

    The injection is (-delta_l, incl + delta_l) and the surjection is
    (incl, (S-1)); delta_l is the sum of the restricted shift powers.
    """
    F = filt.ambient.field
    zdim = filt.steps[0].cols
    delta = None  # N_l -> N_{l-1}
    for i in range(l):
        term = filt.shift_power_map(i + 1, l)
        delta = term if delta is None else delta + term
    # inclusion N_l -> N_{l+1}:
    incl_up = filt.steps[l + 1].solve(filt.steps[l])
    # inclusion N_{l-1} -> N_l:
    incl_dn = filt.steps[l].solve(filt.steps[l - 1])
    # delta landing in N_{l+1} coordinates: include N_{l-1} into N_{l+1}
    incl_lm_up = filt.steps[l + 1].solve(filt.steps[l - 1])
    p0 = filt.shift_power_map(1, l + 1)                   # N_{l+1} -> N_l
    alpha = (-delta).vstack(incl_up + incl_lm_up @ delta)
    beta = incl_dn.hstack(p0)
    if not (beta @ alpha).is_zero():
        return False
    dims_ok = alpha.rank() == (l + 1) * zdim and beta.rank() == (l + 1) * zdim
    mid = alpha.rows
    return dims_ok and mid == (2 * l + 2) * zdim


# ----------------------------------------------------------------------
# Graded versions of the standard module families.
# ----------------------------------------------------------------------

def weyl_graded(d: int, r: int, field: Field) -> GradedRep:
    """The highest-weight module with its integral weights as degrees."""
    V = weyl(d, field)
    mod = field.p ** r
    deg = tuple((d - 2 * i) % mod for i in range(d + 1))
    return validate_graded(GradedRep(V, r, deg))


def premet_w_graded(d: int, r: int, field: Field) -> GradedRep:
    """The maximal submodule with the degrees inherited from weyl_graded."""
    W = premet_w(d, field)
    s = d // field.p
    mod = field.p ** r
    deg = tuple((d - 2 * i) % mod for i in range(s * field.p))
    return validate_graded(GradedRep(W, r, deg))


def baby_verma_graded(i: int, r: int, field: Field) -> GradedRep:
    """Borel-induced module with degrees i - 2j; extends to the torus level."""
    Z = baby_verma(i, field)
    mod = field.p ** r
    deg = tuple((i - 2 * j) % mod for j in range(field.p))
    return validate_graded(GradedRep(Z, r, deg))


def twist_graded(M: GradedRep, g: SL2Element) -> GradedRep:
    """Twist by a torus-normaliser element; degrees flip sign on the w0 coset."""
    if g.is_diagonal():
        sign = 1
    elif g.is_antidiagonal():
        sign = -1
    else:
        raise ValueError("graded twists require a torus-normaliser element")
    mod = M.modulus
    deg = tuple((sign * int(d)) % mod for d in M.deg)
    return validate_graded(GradedRep(twist(M.rep, g), M.r, deg))


def dual_graded(M: GradedRep) -> GradedRep:
    """Dual module; degrees negate."""
    from .reps import dual
    mod = M.modulus
    deg = tuple((-int(d)) % mod for d in M.deg)
    return validate_graded(GradedRep(dual(M.rep), M.r, deg))
