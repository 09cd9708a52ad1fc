"""Exact arithmetic in small finite fields GF(p^m) with p an odd prime.

A field element is encoded as the integer ``sum(c_i * p**i)`` standing for
the residue of ``sum(c_i * x**i)`` in GF(p)[x]/(modulus).  For the field
sizes this library targets (q = p**m up to a few hundred) full q-by-q
operation tables are cheap to build once and make vectorised matrix
kernels straightforward: every scalar operation becomes a numpy table
gather.

The modulus is pinned to the lexicographically smallest monic irreducible
polynomial of degree m (coefficients enumerated constant term first), so
serialised data is reproducible across runs.  For m = 1 the modulus is
the identity polynomial x.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "Field",
    "GF",
    "smallest_irreducible",
    "poly_mul",
    "poly_divmod",
    "poly_gcd",
]

# Beyond this the dense q x q tables stop being "free"; desk scale never
# needs more than GF(49).
_MAX_Q = 1024

_FIELD_CACHE: dict[tuple[int, int, tuple[int, ...]], "Field"] = {}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ----------------------------------------------------------------------
# Dense polynomials over GF(p): little-endian coefficient tuples.
# ----------------------------------------------------------------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mul(a, b, p):
    """Product of two coefficient lists mod p."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _trim(out)


def poly_divmod(a, b, p):
    """Quotient and remainder of coefficient lists mod p; b must be nonzero."""
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and _trim(r):
        r = _trim(r)
        if len(r) < len(b):
            break
        shift = len(r) - len(b)
        factor = (r[-1] * inv_lead) % p
        q[shift] = factor
        for i, cb in enumerate(b):
            r[shift + i] = (r[shift + i] - factor * cb) % p
        r = _trim(r)
    return _trim(q), _trim(r)


def poly_gcd(a, b, p):
    """Monic gcd of coefficient lists mod p."""
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _is_irreducible(f, p):
    """Trial division by all monic polynomials of degree <= deg(f)/2."""
    f = _trim(f)
    deg = len(f) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        # monic degree-d candidates, low coefficients enumerated as base-p ints
        for code in range(p ** d):
            g = [(code // p ** i) % p for i in range(d)] + [1]
            if not poly_divmod(f, g, p)[1]:
                return False
    return True


def smallest_irreducible(p: int, m: int):
    """Lexicographically smallest monic irreducible of degree m over GF(p).

    Candidates x^m + c_{m-1}x^{m-1} + ... + c_0 are ordered by the integer
    sum(c_i * p**i); the first irreducible wins.  For m = 1 this returns
    the identity polynomial x.
    """
    if m == 1:
        return (0, 1)
    for code in range(p ** m):
        f = [(code // p ** i) % p for i in range(m)] + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise RuntimeError("no irreducible polynomial found")  # unreachable


# ----------------------------------------------------------------------
# The field itself.
# ----------------------------------------------------------------------

class Field:
    """GF(p^m) with integer-encoded elements and dense operation tables.

    Attributes:
        p: odd prime characteristic.
        m: extension degree over the prime field.
        q: field size p**m.
        modulus: monic irreducible coefficient tuple, constant term first.
        add, sub, mul: (q, q) int16 tables.
        neg, inv, frob: length-q tables (inv[0] = 0 by convention).
    """

    __slots__ = ("p", "m", "q", "modulus", "add", "sub", "mul",
                 "neg", "inv", "frob", "_digits")

    def __init__(self, p: int, m: int = 1, modulus=None):
        if not _is_prime(p) or p == 2:
            raise ValueError(f"characteristic must be an odd prime, got {p}")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        q = p ** m
        if q > _MAX_Q:
            raise ValueError(f"field size {q} exceeds supported bound {_MAX_Q}")
        if modulus is None:
            modulus = smallest_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if m == 1 and modulus != (0, 1):
            raise ValueError("prime field modulus must be the polynomial x")
        if m > 1 and not _is_irreducible(list(modulus), p):
            raise ValueError("modulus is not irreducible")
        self.p, self.m, self.q, self.modulus = p, m, q, modulus

        # digit matrix: row i = base-p digits of the encoding of element i
        digits = np.zeros((q, m), dtype=np.int64)
        for t in range(m):
            digits[:, t] = (np.arange(q) // p ** t) % p
        self._digits = digits

        self.add = self._encode((digits[:, None, :] + digits[None, :, :]) % p)
        self.sub = self._encode((digits[:, None, :] - digits[None, :, :]) % p)
        self.neg = self._encode((-digits) % p)
        self.mul = self._build_mul(digits)
        self.inv = self._build_inv()
        self.frob = self.element_pow(np.arange(q), p)

    # -- table construction -------------------------------------------

    def _encode(self, digit_array):
        """Map an (..., m) digit array back to integer encodings."""
        weights = self.p ** np.arange(self.m, dtype=np.int64)
        return (digit_array * weights).sum(axis=-1).astype(np.int16)

    def _reduction_rows(self):
        """x^k mod modulus for k = 0..2m-2, as an (2m-1, m) digit table."""
        p, m = self.p, self.m
        rows = np.zeros((2 * m - 1, m), dtype=np.int64)
        cur = [1]
        for k in range(2 * m - 1):
            padded = cur + [0] * (m - len(cur))
            rows[k] = padded[:m]
            cur = _trim([0] + cur)
            if len(cur) == m + 1:  # subtract lead * modulus
                lead = cur[-1]
                cur = [(c - lead * md) % p for c, md in zip(cur[:m], self.modulus[:m])]
                cur = _trim(cur)
        return rows

    def _build_mul(self, digits):
        p, m, q = self.p, self.m, self.q
        if m == 1:
            return ((np.arange(q)[:, None] * np.arange(q)[None, :]) % p).astype(np.int16)
        conv = np.zeros((q, q, 2 * m - 1), dtype=np.int64)
        for s in range(m):
            for t in range(m):
                conv[:, :, s + t] += digits[:, None, s] * digits[None, :, t]
        conv %= p
        red = self._reduction_rows()  # (2m-1, m)
        out_digits = np.tensordot(conv, red, axes=([2], [0])) % p
        return self._encode(out_digits)

    def _build_inv(self):
        q = self.q
        inv = np.zeros(q, dtype=np.int16)
        eye = np.nonzero(self.mul == 1)
        inv[eye[0]] = eye[1]
        return inv

    # -- scalar helpers ------------------------------------------------

    def element_pow(self, a, n: int):
        """a**n elementwise for integer-encoded a (n >= 0)."""
        a = np.asarray(a, dtype=np.int16)
        out = np.ones_like(a)
        base = a.copy()
        while n:
            if n & 1:
                out = self.mul[out, base]
            base = self.mul[base, base]
            n >>= 1
        return out

    def coeffs(self, a: int):
        """Digit list (length m, constant term first) of one element."""
        return [int(c) for c in self._digits[int(a)]]

    def encode_coeffs(self, coeffs) -> int:
        """Inverse of :meth:`coeffs`; accepts any length <= m list."""
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            raise ValueError("coefficient list longer than extension degree")
        val = 0
        for i, c in enumerate(coeffs):
            val += (int(c) % self.p) * self.p ** i
        return val

    def scalar(self, n: int) -> int:
        """Image of the rational integer n in this field."""
        return int(n) % self.p

    def embedding_table(self, target: "Field"):
        """Length-q table realising the canonical embedding into ``target``.

        Requires p equal and m | target.m.  The image of x is the root of
        this field's modulus that is smallest in the target's element
        order, which makes the embedding deterministic.
        """
        if target.p != self.p or target.m % self.m:
            raise ValueError("no canonical embedding between these fields")
        if target.q == self.q:
            return np.arange(self.q, dtype=np.int16)
        if self.m == 1:
            # constants encode identically in every extension
            return np.arange(self.q, dtype=np.int16)
        root = None
        for cand in range(target.q):
            acc, power = 0, 1
            for c in self.modulus:
                if c:
                    acc = target.add[acc, target.mul[target.scalar(c), power]]
                power = target.mul[power, cand]
            if acc == 0 and cand >= target.p:
                root = cand
                break
        if root is None:
            raise RuntimeError("modulus has no root in target field")
        table = np.zeros(self.q, dtype=np.int16)
        for a in range(self.q):
            acc, power = 0, 1
            for c in self.coeffs(a):
                acc = target.add[acc, target.mul[target.scalar(c), power]]
                power = target.mul[power, root]
            table[a] = acc
        return table

    # -- object protocol ------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Field)
                and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus))

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"


def GF(p: int, m: int = 1) -> Field:
    """Cached field constructor with the canonical modulus."""
    key = (p, m, smallest_irreducible(p, m))
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = Field(p, m)
    return _FIELD_CACHE[key]
