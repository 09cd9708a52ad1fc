"""Module-theoretic machinery: Hom/End, radicals, decomposition, covers.

Everything here works uniformly for plain, graded and equivariant modules:
a module object only needs ``field``, ``dim``, ``generators()`` (a list of
square matrices), an optional degree vector ``deg`` (which turns Hom
computation into its degree-preserving variant) and a ``sub(basis)``
method producing the submodule carried by a stable subspace.

The heavy lifting happens in three places:

* ``hom_basis`` solves the linear commutation system for intertwiners;
* ``decompose`` splits off generalised eigenspaces of endomorphisms
  (spectral projectors are polynomials in the endomorphism, hence honest
  idempotents of the endomorphism ring) and certifies the leaves by
  exhibiting the radical of a local endomorphism ring;
* the radical of an abstract algebra in characteristic p is found with
  the iterated trace-form chain, using characteristic-polynomial
  coefficients at p-power indices in place of the trace alone, followed
  by a nilpotency and semisimple-quotient verification.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import Field
from .linalg import Mat, intertwiner_basis

__all__ = [
    "HomSpace", "EndAlgebra", "StructureConstantAlgebra",
    "hom_basis", "hom_dim", "algebra_radical",
    "is_isomorphic", "isomorphism_witness", "IsoInconclusiveError",
    "is_brick", "is_indecomposable", "indecomposability", "decompose",
    "module_radical", "head_multiplicities",
    "pims", "projective_cover", "omega", "is_projective", "ext1_dim",
    "base_change", "restrict_scalars",
    "charpoly", "poly_irreducible_factors",
    "DEFAULT_SEED",
]

DEFAULT_SEED = 1729


class IsoInconclusiveError(RuntimeError):
    """Raised when neither a witness nor a non-isomorphism certificate exists."""


class AlgebraRadicalError(RuntimeError):
    """The radical chain produced something that failed verification."""


# ----------------------------------------------------------------------
# Hom spaces.
# ----------------------------------------------------------------------

def _degree_mask(M, N):
    """Boolean (N.dim, M.dim) mask for degree-preserving maps, or None."""
    dm = getattr(M, "deg", None)
    dn = getattr(N, "deg", None)
    if dm is None and dn is None:
        return None
    if dm is None or dn is None:
        raise TypeError("cannot mix graded and ungraded modules in Hom")
    return np.asarray(dn)[:, None] == np.asarray(dm)[None, :]


@dataclass
class HomSpace:
    source: object
    target: object
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)


def hom_basis(M, N) -> HomSpace:
    """All intertwiners M -> N (degree preserving when both are graded)."""
    if M.field != N.field:
        raise TypeError("Hom between modules over different fields")
    gm, gn = M.generators(), N.generators()
    if len(gm) != len(gn):
        raise TypeError("modules carry different algebra structures")
    basis = intertwiner_basis(gm, gn, allowed=_degree_mask(M, N))
    return HomSpace(M, N, basis)


def hom_dim(M, N) -> int:
    return hom_basis(M, N).dim


# ----------------------------------------------------------------------
# Characteristic polynomials over GF(q).
# ----------------------------------------------------------------------

def charpoly(M: Mat) -> np.ndarray:
    """Monic characteristic polynomial det(xI - M), little-endian encodings.

    Hessenberg reduction by similarity transformations, then the standard
    leading-minor recurrence; all arithmetic through the field tables.
    """
    F = M.field
    n = M.rows
    if n == 0:
        return np.array([1], dtype=np.int64)
    A = M.a.copy()
    for j in range(n - 2):
        nz = np.nonzero(A[j + 1:, j])[0]
        if nz.size == 0:
            continue
        piv = j + 1 + int(nz[0])
        if piv != j + 1:
            A[[j + 1, piv]] = A[[piv, j + 1]]
            A[:, [j + 1, piv]] = A[:, [piv, j + 1]]
        inv = F.inv[A[j + 1, j]]
        for i in range(j + 2, n):
            if A[i, j]:
                f = F.mul[A[i, j], inv]
                A[i] = F.sub[A[i], F.mul[int(f), A[j + 1]]]
                A[:, j + 1] = F.add[A[:, j + 1], F.mul[int(f), A[:, i]]]
    # p_k = (x - A[k-1,k-1]) p_{k-1} - sum_i A[k-1-i,k-1] (prod subdiag) p_{k-1-i}
    polys = [np.array([1], dtype=np.int64)]
    for k in range(1, n + 1):
        d = int(A[k - 1, k - 1])
        prev = polys[k - 1]
        cur = np.zeros(k + 1, dtype=np.int64)
        cur[1:] = prev
        cur[:-1] = F.sub[cur[:-1], F.mul[d, prev]]
        beta = 1
        for i in range(1, k):
            beta = int(F.mul[beta, A[k - i, k - i - 1]])
            if beta == 0:
                break
            coef = int(F.mul[A[k - 1 - i, k - 1], beta])
            if coef:
                seg = polys[k - 1 - i]
                cur[:len(seg)] = F.sub[cur[:len(seg)], F.mul[coef, seg]]
        polys.append(cur)
    return polys[n]


# ----------------------------------------------------------------------
# Polynomials over GF(q): the small kit needed for factoring char polys.
# ----------------------------------------------------------------------

def _ptrim(a):
    a = np.asarray(a, dtype=np.int64)
    nz = np.nonzero(a)[0]
    return a[:int(nz[-1]) + 1].copy() if nz.size else np.zeros(0, dtype=np.int64)

def _pdeg(a):
    return len(a) - 1

def _pmul(F: Field, a, b):
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    if F.m == 1:
        return _ptrim(np.convolve(a, b) % F.p)
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, ca in enumerate(a):
        if ca:
            out[i:i + len(b)] = F.add[out[i:i + len(b)], F.mul[int(ca), b]]
    return _ptrim(out)

def _pmonic(F: Field, a):
    a = _ptrim(a)
    if len(a) and a[-1] != 1:
        a = F.mul[int(F.inv[a[-1]]), a].astype(np.int64)
    return a

def _pdivmod(F: Field, a, b):
    a, b = _ptrim(a), _ptrim(b)
    if len(b) == 0:
        raise ZeroDivisionError
    q = np.zeros(max(0, len(a) - len(b) + 1), dtype=np.int64)
    r = a.copy()
    inv = int(F.inv[b[-1]])
    while len(r) >= len(b):
        c = int(F.mul[r[-1], inv])
        s = len(r) - len(b)
        q[s] = c
        r[s:] = F.sub[r[s:], F.mul[c, b]]
        r = _ptrim(r)
        if len(r) == 0:
            break
    return _ptrim(q), r

def _pgcd(F: Field, a, b):
    a, b = _ptrim(a), _ptrim(b)
    while len(b):
        a, b = b, _pdivmod(F, a, b)[1]
    return _pmonic(F, a)

def _ppowmod(F: Field, base, e: int, mod):
    result = np.array([1], dtype=np.int64)
    base = _pdivmod(F, base, mod)[1]
    while e:
        if e & 1:
            result = _pdivmod(F, _pmul(F, result, base), mod)[1]
        base = _pdivmod(F, _pmul(F, base, base), mod)[1]
        e >>= 1
    return result

def _pderiv(F: Field, a):
    if len(a) <= 1:
        return np.zeros(0, dtype=np.int64)
    ks = np.arange(1, len(a)) % F.p
    out = np.zeros(len(a) - 1, dtype=np.int64)
    for k in range(1, len(a)):
        out[k - 1] = F.mul[int(ks[k - 1]), a[k]]
    return _ptrim(out)

def _pth_root(F: Field, a):
    """p-th root of a polynomial in x^p (coefficientwise q/p power)."""
    idx = np.arange(0, len(a), F.p)
    coeffs = a[idx]
    root = F.element_pow(coeffs, F.q // F.p)
    return _ptrim(root.astype(np.int64))


def _equal_degree_split(F: Field, f, d: int, rng) -> list:
    """Cantor-Zassenhaus split of a squarefree product of degree-d factors."""
    if _pdeg(f) == d:
        return [f]
    while True:
        r = rng.integers(0, F.q, size=_pdeg(f)).astype(np.int64)
        r = _ptrim(r)
        if _pdeg(r) < 1:
            continue
        s = _ppowmod(F, r, (F.q ** d - 1) // 2, f)
        s = s.copy()
        if len(s) == 0:
            continue
        s[0] = F.sub[s[0], 1]
        g = _pgcd(F, s, f)
        if 0 < _pdeg(g) < _pdeg(f):
            return (_equal_degree_split(F, g, d, rng)
                    + _equal_degree_split(F, _pdivmod(F, f, g)[0], d, rng))


def _factor_squarefree(F: Field, f, rng) -> list:
    """Irreducible factors of a squarefree monic polynomial."""
    out = []
    h = np.array([0, 1], dtype=np.int64)  # x
    d = 0
    while _pdeg(f) >= 1:
        d += 1
        if 2 * d > _pdeg(f):
            out.append(f)
            break
        h = _ppowmod(F, h, F.q, f)
        diff = h.copy() if len(h) >= 2 else np.concatenate([h, np.zeros(2 - len(h), dtype=np.int64)])
        diff[1] = F.sub[diff[1], 1]
        g = _pgcd(F, diff, f)
        if _pdeg(g) > 0:
            out.extend(_equal_degree_split(F, g, d, rng))
            f = _pdivmod(F, f, g)[0]
            h = _pdivmod(F, h, f)[1]
    return out


def poly_irreducible_factors(F: Field, f, seed: int = DEFAULT_SEED) -> list[tuple]:
    """Monic irreducible factors of f with multiplicities.

    Returns a list of (coefficient tuple, multiplicity), sorted for
    determinism (the equal-degree stage uses a seeded generator).
    """
    rng = np.random.default_rng(seed)
    acc: dict[tuple, int] = {}

    def go(g, mult):
        g = _pmonic(F, g)
        if _pdeg(g) <= 0:
            return
        d = _pderiv(F, g)
        if len(d) == 0:
            go(_pth_root(F, g), mult * F.p)
            return
        c = _pgcd(F, g, d)
        if _pdeg(c) == 0:
            for h in _factor_squarefree(F, g, rng):
                key = tuple(int(x) for x in _pmonic(F, h))
                acc[key] = acc.get(key, 0) + mult
            return
        go(c, mult)
        go(_pdivmod(F, g, c)[0], mult)

    go(np.asarray(f, dtype=np.int64), 1)
    return sorted(acc.items())


def _poly_eval_matrix(F: Field, coeffs, M: Mat) -> Mat:
    """Evaluate a polynomial (little-endian encodings) at a square matrix."""
    n = M.rows
    out = Mat.zeros(F, n, n)
    for c in reversed(list(coeffs)):
        out = out @ M + Mat.identity(F, n).scale(int(c))
    return out


# ----------------------------------------------------------------------
# Spans of matrices (flattened row spaces) used by the algebra machinery.
# ----------------------------------------------------------------------

def _echelon_span(F: Field, mats: list[Mat], shape=None) -> list[Mat]:
    if not mats:
        return []
    shape = shape or mats[0].a.shape
    flat = np.vstack([m.a.reshape(1, -1) for m in mats])
    R, pivots = Mat(F, flat).rref()
    return [Mat(F, R.a[i].reshape(shape).copy()) for i in range(len(pivots))]


def _in_span(F: Field, mats: list[Mat], x: Mat) -> bool:
    if not mats:
        return x.is_zero()
    flat = Mat(F, np.vstack([m.a.reshape(1, -1) for m in mats])).T
    return flat.rank() == flat.hstack(Mat(F, x.a.reshape(-1, 1))).rank()


# ----------------------------------------------------------------------
# Radical of a finite-dimensional algebra in characteristic p.
# ----------------------------------------------------------------------

def _radical_chain(F: Field, basis: list[Mat]) -> list[Mat]:
    """The trace-form chain cut out by char-poly coefficients at p-powers.

    Step j intersects the current space with the radical-containing set
    {x : c_{p^j}(xy) = 0 for all y in the current space}.  Each condition
    is p^j-semilinear, so the substitution eta = xi^{p^j} turns it into a
    linear system; the chain stabilises at the radical once p^j exceeds
    the matrix size.
    """
    n = basis[0].rows if basis else 0
    cur = _echelon_span(F, basis)
    j = 0
    while F.p ** j <= n and cur:
        k = len(cur)
        gram = np.zeros((k, k), dtype=np.int64)
        target = n - F.p ** j
        for s in range(k):
            for t in range(k):
                cp = charpoly(cur[s] @ cur[t])
                gram[s, t] = cp[target]
        eta = Mat(F, gram.T.copy()).kernel()  # columns: eta with eta @ gram = 0
        # invert the Frobenius power applied to the coefficients
        steps = (-j) % F.m if F.m > 1 else 0
        new = []
        for cidx in range(eta.cols):
            xi = eta.a[:, cidx].astype(np.int16)
            for _ in range(steps):
                xi = F.frob[xi]
            acc = Mat.zeros(F, n, n)
            for s in range(k):
                if xi[s]:
                    acc = acc + cur[s].scale(int(xi[s]))
            new.append(acc)
        cur = _echelon_span(F, new, shape=(n, n))
        j += 1
    return cur


def _verify_nilpotent_ideal(F: Field, alg: list[Mat], rad: list[Mat]) -> bool:
    """rad must be a two-sided ideal of span(alg) with vanishing power chain."""
    for a in alg:
        for r in rad:
            if not _in_span(F, rad, a @ r) or not _in_span(F, rad, r @ a):
                return False
    cur = rad
    for _ in range(len(rad) + 1):
        if not cur:
            return True
        nxt = _echelon_span(F, [r @ c for r in rad for c in cur],
                            shape=rad[0].a.shape)
        if len(nxt) >= len(cur):
            return False
        cur = nxt
    return not cur


def _matrix_algebra_radical(F: Field, basis: list[Mat], verify: bool = True) -> list[Mat]:
    basis = _echelon_span(F, basis)
    rad = _radical_chain(F, basis)
    if verify and not _verify_nilpotent_ideal(F, basis, rad):
        raise AlgebraRadicalError("radical chain output failed verification")
    return rad


@dataclass
class StructureConstantAlgebra:
    """A unital algebra given by structure constants c[i,j,k]: x_i x_j = sum_k c[i,j,k] x_k."""

    field: Field
    constants: np.ndarray  # (n, n, n) integer encodings
    unit: np.ndarray       # coordinates of 1

    def left_regular(self) -> list[Mat]:
        n = self.constants.shape[0]
        mats = []
        for i in range(n):
            mats.append(Mat(self.field, self.constants[i].T.copy()))
        return mats


class EndAlgebra:
    """The endomorphism algebra of a module, with lazily computed radical."""

    def __init__(self, module, basis: list[Mat] | None = None):
        self.module = module
        self.basis = basis if basis is not None else hom_basis(module, module).basis
        self._radical: list[Mat] | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def mult_table(self) -> np.ndarray:
        """Structure constants of the basis under composition."""
        F = self.module.field
        k = self.dim
        flat = Mat(F, np.vstack([b.a.reshape(1, -1) for b in self.basis])).T
        table = np.zeros((k, k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                prod = (self.basis[i] @ self.basis[j]).a.reshape(-1, 1)
                table[i, j] = flat.solve(Mat(F, prod)).a[:, 0]
        return table

    def radical(self) -> list[Mat]:
        if self._radical is None:
            analysis = _analyze_end(self.module, self.basis,
                                    np.random.default_rng(DEFAULT_SEED))
            if analysis.radical is not None:
                self._radical = analysis.radical
            else:
                self._radical = _matrix_algebra_radical(
                    self.module.field, self.basis, verify=False)
        return self._radical

    def residue_dim(self) -> int:
        return self.dim - len(self.radical())


def algebra_radical(A, verify: bool = True) -> list[Mat]:
    """Jacobson radical basis of an EndAlgebra or structure-constant algebra.

    The quotient is double-checked: the output must be a nilpotent
    two-sided ideal, and rerunning the chain on the quotient must give
    zero.
    """
    if isinstance(A, EndAlgebra):
        F = A.module.field
        basis = A.basis
    elif isinstance(A, StructureConstantAlgebra):
        F = A.field
        basis = A.left_regular()
    else:
        raise TypeError("expected EndAlgebra or StructureConstantAlgebra")
    rad = _matrix_algebra_radical(F, basis, verify=verify)
    if verify and rad:
        q_rad = _quotient_algebra_radical_dim(F, basis, rad)
        if q_rad:
            raise AlgebraRadicalError("quotient by the radical is not semisimple")
    return rad


def _quotient_algebra_radical_dim(F: Field, basis: list[Mat], rad: list[Mat]) -> int:
    """Dimension of the radical of span(basis)/span(rad), via its regular rep."""
    basis = _echelon_span(F, basis)
    size = basis[0].a.size
    rows = [r.a.reshape(-1) for r in rad]
    rk = Mat(F, np.vstack(rows)).rank() if rows else 0
    comp = []
    for b in basis:
        cand = Mat(F, np.vstack(rows + [c.a.reshape(-1) for c in comp]
                                + [b.a.reshape(-1)]))
        if cand.rank() > rk + len(comp):
            comp.append(b)
    k = len(comp)
    if k == 0:
        return 0
    stacked = rows + [c.a.reshape(-1) for c in comp]
    allflat = Mat(F, np.vstack(stacked)).T
    mats = []
    for i in range(k):
        cols = []
        for j in range(k):
            coords = allflat.solve(Mat(F, (comp[i] @ comp[j]).a.reshape(-1, 1)))
            cols.append(coords.a[len(rad):, 0])
        mats.append(Mat(F, np.array(cols, dtype=np.int64).T))
    return len(_matrix_algebra_radical(F, mats, verify=False))


# ----------------------------------------------------------------------
# Endomorphism analysis: splitters and locality certificates.
# ----------------------------------------------------------------------

@dataclass
class _EndAnalysis:
    split: list | None = None          # list of subspace bases, if found
    local: bool = False
    radical: list | None = None
    residue_dim: int | None = None


def _eigen_split(F: Field, phi: Mat, n: int):
    """Coprime-factor Fitting decomposition of phi, or None if one factor."""
    factors = poly_irreducible_factors(F, charpoly(phi))
    if len(factors) < 2:
        return None, factors
    bases = []
    for g, e in factors:
        ge = np.array(g, dtype=np.int64)
        power = _poly_eval_matrix(F, ge, phi).power(e)
        bases.append(power.kernel())
    return bases, factors


def _analyze_end(module, basis: list[Mat], rng, tries: int = 60) -> _EndAnalysis:
    """Split the module along End, or certify that End is local."""
    F = module.field
    n = module.dim
    if len(basis) <= 1:
        return _EndAnalysis(local=True, radical=[], residue_dim=max(1, len(basis)))
    candidates = list(basis)
    for _ in range(tries):
        coeffs = rng.integers(0, F.q, size=len(basis))
        acc = Mat.zeros(F, n, n)
        for c, b in zip(coeffs, basis):
            if c:
                acc = acc + b.scale(int(c))
        candidates.append(acc)

    sole_factor = {}
    for phi in candidates:
        bases, factors = _eigen_split(F, phi, n)
        if bases is not None:
            return _EndAnalysis(split=bases)
        if factors:
            sole_factor[id(phi)] = factors[0]

    # locality certificate: every basis element must be scalar + nilpotent,
    # and the nilpotent parts must span a nil ideal
    ident = Mat.identity(F, n)
    nilparts = []
    extension_seen = False
    for phi in basis:
        g, _ = sole_factor.get(id(phi), poly_irreducible_factors(F, charpoly(phi))[0])
        if len(g) == 2:  # linear factor x - lam
            lam = int(F.neg[g[0]])
            nilparts.append(phi - ident.scale(lam))
        else:
            extension_seen = True
    if not extension_seen:
        S = _echelon_span(F, nilparts)
        closed = all(_in_span(F, S, x @ y) for x in S for y in S)
        if closed and len(S) == len(basis) - 1:
            cur = S
            for _ in range(len(S) + 1):
                if not cur:
                    return _EndAnalysis(local=True, radical=S, residue_dim=1)
                cur = _echelon_span(F, [x @ y for x in S for y in cur],
                                    shape=(n, n)) if cur else []
    # fall back to the radical chain
    rad = _matrix_algebra_radical(F, basis, verify=True)
    residue = len(_echelon_span(F, basis)) - len(rad)
    if residue == 1 or _residue_is_field(F, basis, rad, residue):
        return _EndAnalysis(local=True, radical=rad, residue_dim=residue)
    return _EndAnalysis(split=None, local=False, radical=rad, residue_dim=residue)


def _residue_is_field(F: Field, basis, rad, residue: int) -> bool:
    """Is End/rad commutative without zero divisors (hence a field)?"""
    # commutativity of the quotient: [x, y] must land in the radical
    basis = _echelon_span(F, basis)
    for x in basis:
        for y in basis:
            if not _in_span(F, rad, x @ y - y @ x):
                return False
    # a commutative semisimple algebra is a product of fields; it is a
    # single field iff it has no nontrivial idempotent, iff every element
    # has irreducible-power minimal polynomial; products would have been
    # found by the splitter search, so accept.
    return True


# ----------------------------------------------------------------------
# Decomposition.
# ----------------------------------------------------------------------

def _compress_end(parent, piece_basis: Mat, proj: Mat, end_basis: list[Mat]):
    """Push an End basis down to a direct summand (e . phi . e compression)."""
    F = parent.field
    out = []
    for phi in end_basis:
        out.append(proj @ (phi @ piece_basis))
    return _echelon_span(F, out)


def _split_module(module, bases: list):
    """Instantiate summand modules + bookkeeping for an inner direct split."""
    F = module.field
    T = bases[0]
    for b in bases[1:]:
        T = T.hstack(b)
    Tinv = T.inv()
    pieces = []
    offset = 0
    for b in bases:
        proj = Mat(F, Tinv.a[offset:offset + b.cols, :].copy())
        pieces.append((module.sub(b), b, proj))
        offset += b.cols
    return pieces


def decompose(module, seed: int = DEFAULT_SEED, end_basis: list[Mat] | None = None):
    """Indecomposable direct summands with multiplicities.

    Returns a list of (summand, multiplicity) pairs, canonical up to
    isomorphism and ordered by dimension.  Splitting uses generalised
    eigenspace projectors of endomorphisms; when no splitting element is
    found the endomorphism ring is certified local, or a residue
    idempotent is lifted through the radical by the Newton iteration
    e -> 3e^2 - 2e^3 and the module is split along the lifted idempotent.
    """
    rng = np.random.default_rng(seed)
    leaves: list = []

    def walk(mod, basis):
        if mod.dim == 0:
            return
        if basis is None:
            basis = hom_basis(mod, mod).basis
        analysis = _analyze_end(mod, basis, rng)
        if analysis.local:
            leaves.append(mod)
            return
        if analysis.split is not None:
            for piece, b, proj in _split_module(mod, analysis.split):
                walk(piece, _compress_end(mod, b, proj, basis))
            return
        # radical known but residue not a field: lift an idempotent
        e = _lift_idempotent(mod, basis, analysis.radical, rng)
        img = e.column_space() if not e.is_zero() else Mat.zeros(mod.field, mod.dim, 0)
        ker = e.kernel()
        for piece, b, proj in _split_module(mod, [img, ker]):
            walk(piece, _compress_end(mod, b, proj, basis))

    walk(module, end_basis)
    leaves.sort(key=lambda m: m.dim)
    grouped: list[list] = []
    for leaf in leaves:
        for group in grouped:
            if group[0].dim == leaf.dim and is_isomorphic(group[0], leaf, seed=seed):
                group.append(leaf)
                break
        else:
            grouped.append([leaf])
    return [(g[0], len(g)) for g in grouped]


def _lift_idempotent(module, basis: list[Mat], rad: list[Mat], rng) -> Mat:
    """A nontrivial idempotent of End, found in the residue and Newton-lifted."""
    F = module.field
    n = module.dim
    ident = Mat.identity(F, n)
    for attempt in range(200):
        if attempt < len(basis):
            phi = basis[attempt]
        else:
            coeffs = rng.integers(0, F.q, size=len(basis))
            phi = Mat.zeros(F, n, n)
            for c, b in zip(coeffs, basis):
                if c:
                    phi = phi + b.scale(int(c))
        factors = poly_irreducible_factors(F, charpoly(phi))
        if len(factors) < 2:
            continue
        g0, e0 = factors[0]
        rest = np.array([1], dtype=np.int64)
        for g, e in factors[1:]:
            for _ in range(e):
                rest = _pmul(F, rest, np.array(g, dtype=np.int64))
        lead = _ptrim(np.array(g0, dtype=np.int64))
        head = lead
        for _ in range(e0 - 1):
            head = _pmul(F, head, lead)
        # Bezout: u*head + v*rest = 1; e := v(phi) rest(phi) is idempotent
        u, v = _bezout(F, head, rest)
        e = _poly_eval_matrix(F, _pmul(F, v, rest), phi)
        # Newton-polish against numerical paranoia (exact, converges in one)
        for _ in range(n.bit_length() + 1):
            sq = e @ e
            if sq == e:
                break
            e = sq.scale(3) - (sq @ e).scale(2)
        if not e.is_zero() and e != ident:
            return e
    raise IsoInconclusiveError("no idempotent found in a non-local End algebra")


def _bezout(F: Field, a, b):
    """u, v with u a + v b = 1 for coprime polynomials."""
    r0, r1 = _ptrim(a), _ptrim(b)
    s0, s1 = np.array([1], dtype=np.int64), np.zeros(0, dtype=np.int64)
    t0, t1 = np.zeros(0, dtype=np.int64), np.array([1], dtype=np.int64)
    while len(r1):
        q, r = _pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(F, s0, _pmul(F, q, s1))
        t0, t1 = t1, _psub(F, t0, _pmul(F, q, t1))
    c = int(F.inv[r0[-1]]) if len(r0) else 1
    return (F.mul[c, s0].astype(np.int64) if len(s0) else s0,
            F.mul[c, t0].astype(np.int64) if len(t0) else t0)


def _psub(F: Field, a, b):
    k = max(len(a), len(b))
    out = np.zeros(k, dtype=np.int64)
    out[:len(a)] = a
    out[:len(b)] = F.sub[out[:len(b)], b]
    if len(a) > len(b):
        out[len(b):len(a)] = a[len(b):]
    return _ptrim(out)


# ----------------------------------------------------------------------
# Indecomposability and bricks.
# ----------------------------------------------------------------------

@dataclass
class Indecomposability:
    indecomposable: bool          # over the working field
    geometric: bool               # residue field equals the ground field
    residue_dim: int | None
    splits_after_base_change: bool


def indecomposability(M, seed: int = DEFAULT_SEED) -> Indecomposability:
    if M.dim == 0:
        return Indecomposability(False, False, None, False)
    basis = hom_basis(M, M).basis
    analysis = _analyze_end(M, basis, np.random.default_rng(seed))
    if analysis.split is not None or (not analysis.local):
        return Indecomposability(False, False, analysis.residue_dim, False)
    rd = analysis.residue_dim
    return Indecomposability(True, rd == 1, rd, rd is not None and rd > 1)


def is_indecomposable(M, seed: int = DEFAULT_SEED) -> bool:
    """Geometrically indecomposable: End is local with residue field k."""
    return indecomposability(M, seed=seed).geometric


def is_brick(M) -> bool:
    return M.dim > 0 and hom_dim(M, M) == 1


# ----------------------------------------------------------------------
# Isomorphism testing.
# ----------------------------------------------------------------------

_EXHAUSTIVE_BOUND = 10 ** 6
_RANDOM_DRAWS = 1000


def _fingerprint(M):
    out = [M.dim]
    deg = getattr(M, "deg", None)
    if deg is not None:
        out.append(tuple(sorted(int(d) for d in deg)))
    for X in M.generators():
        acc = X
        ranks = []
        for _ in range(min(M.field.p, 6)):
            ranks.append(acc.rank())
            acc = acc @ X
        out.append(tuple(ranks))
        out.append(tuple(int(c) for c in charpoly(X)))
    return tuple(out)


def isomorphism_witness(M, N, seed: int = DEFAULT_SEED) -> Mat | None:
    """An invertible intertwiner M -> N, or None when provably absent.

    Raises IsoInconclusiveError when the randomized search fails without a
    certificate; at desk scale the exhaustive branch makes this unreachable.
    """
    if M.field != N.field or M.dim != N.dim:
        return None
    if M.dim == 0:
        return Mat.zeros(M.field, 0, 0)
    if _fingerprint(M) != _fingerprint(N):
        return None
    H = hom_basis(M, N)
    if H.dim == 0:
        return None
    if hom_dim(N, M) != H.dim:
        return None
    F = M.field
    n = M.dim

    def check(T: Mat):
        return T.rank() == n

    for T in H.basis:
        if check(T):
            return T
    # an isomorphism would identify Hom(M, N) with both endomorphism rings
    if H.dim > 3:
        if hom_dim(M, M) != H.dim or hom_dim(N, N) != H.dim:
            return None
    if F.q ** H.dim <= _EXHAUSTIVE_BOUND:
        # all combinations with first nonzero coefficient normalised to 1
        for lead in range(H.dim):
            for coeffs in itertools.product(range(F.q), repeat=H.dim - lead - 1):
                T = H.basis[lead]
                for c, b in zip(coeffs, H.basis[lead + 1:]):
                    if c:
                        T = T + b.scale(c)
                if check(T):
                    return T
        return None
    rng = np.random.default_rng(seed)
    for _ in range(_RANDOM_DRAWS):
        coeffs = rng.integers(0, F.q, size=H.dim)
        T = Mat.zeros(F, n, n)
        for c, b in zip(coeffs, H.basis):
            if c:
                T = T + b.scale(int(c))
        if check(T):
            return T
    raise IsoInconclusiveError(
        "no invertible intertwiner found and no distinguishing certificate")


def is_isomorphic(M, N, seed: int = DEFAULT_SEED) -> bool:
    return isomorphism_witness(M, N, seed=seed) is not None


# ----------------------------------------------------------------------
# Simples, radicals of modules, projective covers, Heller shifts, Ext^1.
# ----------------------------------------------------------------------

def module_radical(M) -> Mat:
    """Common kernel of all maps to simple modules (the radical submodule)."""
    from .reps import simple
    F = M.field
    rows = []
    for i in range(F.p):
        S = simple(i, F)
        for T in intertwiner_basis(M.generators(), S.generators()):
            rows.append(T.a)
    if not rows:
        return Mat.identity(F, M.dim)
    return Mat(F, np.vstack(rows)).kernel()


def head_multiplicities(M) -> list[int]:
    """Multiplicity of each simple in M / rad M (simples are bricks)."""
    from .reps import simple
    F = M.field
    rad = module_radical(M)
    from .reps import quotient_rep
    if rad.cols == M.dim:
        return [0] * F.p
    head = quotient_rep(M, rad) if rad.cols else M
    return [hom_dim(head, simple(i, F)) for i in range(F.p)]


_PIMS_CACHE: dict[tuple, list] = {}


def pims(field: Field) -> list:
    """Principal indecomposable modules: summands of the regular module.

    Computed once per field and cached; the endomorphism basis of the
    regular module is the known family of right multiplications, so the
    decomposition engine never has to solve for it.
    """
    key = (field.p, field.m, field.modulus)
    if key in _PIMS_CACHE:
        return _PIMS_CACHE[key]
    from .reps import Rep
    from .u0 import regular_rep_matrices, right_mult_matrices
    E, Fm, H = regular_rep_matrices(field)
    reg = Rep(field, E, Fm, H)
    Re, Rf, Rh = right_mult_matrices(field)
    p = field.p
    rpow = {"e": [Mat.identity(field, p ** 3)], "f": [Mat.identity(field, p ** 3)],
            "h": [Mat.identity(field, p ** 3)]}
    for mat, gen in [(Re, "e"), (Rf, "f"), (Rh, "h")]:
        for _ in range(p - 1):
            rpow[gen].append(rpow[gen][-1] @ mat)
    end = []
    for i in range(p):
        for j in range(p):
            for l in range(p):
                end.append(rpow["h"][l] @ rpow["f"][j] @ rpow["e"][i])
    summands = decompose(reg, end_basis=end)
    out = sorted((s for s, _ in summands), key=lambda m: (m.dim, _fingerprint(m)))
    _PIMS_CACHE[key] = out
    return out


def _pim_heads(field: Field) -> list[int]:
    """pims()[k] covers the simple with this highest weight."""
    from .reps import simple
    heads = []
    for P in pims(field):
        hm = head_multiplicities(P)
        if sum(hm) != 1:
            raise AlgebraRadicalError("principal indecomposable with non-simple head")
        heads.append(hm.index(1))
    return heads


def projective_cover(M):
    """(P, epimorphism P -> M) with P minimal projective.

    The cover multiplicities are the head multiplicities of M; basis maps
    P(i) -> M are chosen greedily so that their images span the head.
    """
    from .reps import direct_sum, simple, quotient_rep
    F = M.field
    if M.dim == 0:
        z = Mat.zeros(F, 0, 0)
        from .reps import Rep
        return Rep(F, z, z, z), Mat.zeros(F, 0, 0)
    mults = head_multiplicities(M)
    Ps = pims(F)
    heads = _pim_heads(F)
    rad = module_radical(M)
    # head coordinates: a complement projection M -> M/rad as a matrix
    comp = _complement_projection(F, rad, M.dim)
    blocks = []
    maps = []
    for i, mult in enumerate(mults):
        if mult == 0:
            continue
        P = Ps[heads.index(i)]
        hom = hom_basis(P, M).basis
        chosen = []
        span = Mat.zeros(F, comp.rows * P.dim, 0)
        for T in hom:
            cand = Mat(F, (comp @ T).a.reshape(-1, 1))
            if span.hstack(cand).rank() > span.rank():
                span = span.hstack(cand)
                chosen.append(T)
            if len(chosen) == mult:
                break
        if len(chosen) != mult:
            raise AlgebraRadicalError("cover maps do not span the head")
        for T in chosen:
            blocks.append(P)
            maps.append(T)
    P_total = blocks[0]
    for b in blocks[1:]:
        P_total = direct_sum(P_total, b)
    phi = maps[0]
    for T in maps[1:]:
        phi = phi.hstack(T)
    if phi.rank() != M.dim:
        raise AlgebraRadicalError("projective cover map is not surjective")
    return P_total, phi


def _complement_projection(F: Field, U: Mat, n: int) -> Mat:
    """A projection matrix whose kernel is span(U), rows = head coordinates."""
    if U.cols == 0:
        return Mat.identity(F, n)
    from .reps import _complete_basis
    B = _complete_basis(U.column_space())
    Binv = B.inv()
    return Mat(F, Binv.a[U.column_space().cols:, :].copy())


def omega(M):
    """Heller shift: kernel of the projective cover, as a module."""
    P, phi = projective_cover(M)
    if P.dim == 0:
        return P
    ker = phi.kernel()
    from .reps import sub_quotient
    return sub_quotient(P, ker) if ker.cols else _zero_module(M.field)


def _zero_module(F: Field):
    from .reps import Rep
    z = Mat.zeros(F, 0, 0)
    return Rep(F, z, z, z)


def is_projective(M) -> bool:
    """Projectivity via a vanishing Heller shift."""
    if M.dim == 0:
        return True
    if M.dim % M.field.p:
        return False
    return omega(M).dim == 0


def ext1_dim(M, N) -> int:
    """dim Ext^1(M, N) = dim coker(Hom(P, N) -> Hom(Omega M, N))."""
    from .reps import sub_quotient
    P, phi = projective_cover(M)
    ker = phi.kernel()
    if ker.cols == 0:
        return 0
    Om = sub_quotient(P, ker)
    homPN = hom_basis(P, N).basis
    homON = hom_basis(Om, N).basis
    if not homON:
        return 0
    # restriction along the inclusion Omega M -> P
    rows = [(T @ ker).a.reshape(1, -1) for T in homPN]
    restr_rank = Mat(N.field, np.vstack(rows)).rank() if rows else 0
    return len(homON) - restr_rank


# ----------------------------------------------------------------------
# Field extension plumbing.
# ----------------------------------------------------------------------

def base_change(M, m_new: int):
    """The same module with scalars extended to GF(p^m_new) (m | m_new)."""
    from .field import GF
    F = M.field
    if m_new % F.m:
        raise ValueError("target degree must be a multiple of the current one")
    F2 = GF(F.p, m_new)
    table = F.embedding_table(F2)
    mapped = [Mat(F2, table[X.a].astype(np.int64)) for X in M.generators()]
    return M.replace_generators(mapped, F2)


def restrict_scalars(M):
    """View a module over GF(p^m) as one over GF(p) of m-fold dimension."""
    F = M.field
    if F.m == 1:
        return M
    from .field import GF
    from .reps import Rep, validate_rep
    Fp = GF(F.p)
    m = F.m
    # multiplication-by-alpha matrices in the power basis
    mul_mats = np.zeros((F.q, m, m), dtype=np.int64)
    for a in range(F.q):
        for t in range(m):
            x_t = F.encode_coeffs([0] * t + [1])
            mul_mats[a, :, t] = F.coeffs(int(F.mul[a, x_t]))
    out = []
    for X in M.generators():
        big = np.zeros((M.dim * m, M.dim * m), dtype=np.int64)
        for i in range(M.dim):
            for j in range(M.dim):
                a = X.a[i, j]
                if a:
                    big[i * m:(i + 1) * m, j * m:(j + 1) * m] = mul_mats[a]
        out.append(Mat(Fp, big))
    return validate_rep(Rep(Fp, out[0], out[1], out[2]))
