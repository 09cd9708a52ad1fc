"""The restricted enveloping algebra of sl2 in its PBW basis.

The algebra has dimension p**3 with basis the ordered monomials
e^i f^j h^l, 0 <= i, j, l <= p-1, subject to

    [h, e] = 2e,   [h, f] = -2f,   [e, f] = h,
    e^p = 0,       f^p = 0,        h^p = h.

Everything here reduces to three rewriting identities:

    h e^i     = e^i (h + 2i)
    h f^j     = f^j (h - 2j)
    f e^i     = e^i f - i e^{i-1} (h + i - 1)
    f^j e     = e f^j - j f^{j-1} (h - j + 1)

Left and right multiplication by the generators become sparse matrices on
the monomial basis; the left-multiplication triple is the regular module,
whose endomorphism algebra is spanned by the right multiplications.
"""

from __future__ import annotations

from math import comb

import numpy as np

from .field import Field
from .linalg import Mat

__all__ = [
    "monomial_index",
    "regular_rep_matrices",
    "right_mult_matrices",
    "image_algebra_basis",
]


def monomial_index(p: int, i: int, j: int, l: int) -> int:
    return (i * p + j) * p + l


def _hpoly_reduce(coeffs, p):
    """Reduce an h-power coefficient list modulo h^p = h."""
    coeffs = list(coeffs)
    k = len(coeffs) - 1
    while k >= p:
        coeffs[k - p + 1] = (coeffs[k - p + 1] + coeffs[k]) % p
        coeffs[k] = 0
        k -= 1
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _hpoly_shift_power(c: int, l: int, p: int):
    """(h + c)^l as a reduced h-power coefficient list."""
    out = [0] * (l + 1)
    for k in range(l + 1):
        out[k] = (comb(l, k) * pow(c % p, l - k, p)) % p
    return _hpoly_reduce(out, p)


def _hpoly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for s, ca in enumerate(a):
        for t, cb in enumerate(b):
            out[s + t] = (out[s + t] + ca * cb) % p
    return _hpoly_reduce(out, p)


def _add_term(acc, i, j, hpoly, scale, p):
    """acc += scale * e^i f^j * (h-polynomial), already PBW ordered."""
    if scale % p == 0:
        return
    for l, c in enumerate(hpoly):
        if c:
            key = (i, j, l)
            acc[key] = (acc.get(key, 0) + scale * c) % p


def _left_mult(gen: str, i: int, j: int, l: int, p: int) -> dict:
    acc: dict = {}
    if gen == "e":
        if i + 1 < p:
            acc[(i + 1, j, l)] = 1
        return acc
    if gen == "h":
        # h e^i f^j h^l = e^i f^j (h + 2i - 2j) h^l
        hp = _hpoly_reduce([0] * l + [(2 * i - 2 * j) % p, 1], p)
        _add_term(acc, i, j, hp, 1, p)
        return acc
    if gen == "f":
        # f e^i = e^i f - i e^{i-1}(h + i - 1)
        if j + 1 < p:
            acc[(i, j + 1, l)] = 1
        if i > 0:
            # e^{i-1}(h+i-1) f^j h^l = e^{i-1} f^j (h - 2j + i - 1) h^l
            hp = _hpoly_reduce([0] * l + [(i - 1 - 2 * j) % p, 1], p)
            _add_term(acc, i - 1, j, hp, -i, p)
        return acc
    raise ValueError(gen)


def _right_mult(gen: str, i: int, j: int, l: int, p: int) -> dict:
    acc: dict = {}
    if gen == "h":
        hp = _hpoly_reduce([0] * (l + 1) + [1], p)
        _add_term(acc, i, j, hp, 1, p)
        return acc
    if gen == "f":
        # e^i f^j h^l f = e^i f^{j+1} (h - 2)^l
        if j + 1 < p:
            _add_term(acc, i, j + 1, _hpoly_shift_power(-2, l, p), 1, p)
        return acc
    if gen == "e":
        # e^i f^j h^l e = e^i (f^j e) (h + 2)^l
        shifted = _hpoly_shift_power(2, l, p)
        if i + 1 < p:
            _add_term(acc, i + 1, j, shifted, 1, p)
        if j > 0:
            # - j e^i f^{j-1} (h - j + 1) (h + 2)^l
            factor = _hpoly_mul([(1 - j) % p, 1], shifted, p)
            _add_term(acc, i, j - 1, factor, -j, p)
        return acc
    raise ValueError(gen)


def _mult_matrices(field: Field, side) -> tuple[Mat, Mat, Mat]:
    p = field.p
    n = p ** 3
    mats = {}
    for gen in "efh":
        arr = np.zeros((n, n), dtype=np.int64)
        for i in range(p):
            for j in range(p):
                for l in range(p):
                    col = monomial_index(p, i, j, l)
                    for (i2, j2, l2), c in side(gen, i, j, l, p).items():
                        arr[monomial_index(p, i2, j2, l2), col] = c % p
        mats[gen] = Mat(field, arr)
    return mats["e"], mats["f"], mats["h"]


def regular_rep_matrices(field: Field) -> tuple[Mat, Mat, Mat]:
    """Left multiplication by e, f, h on the PBW basis (the regular module)."""
    return _mult_matrices(field, _left_mult)


def right_mult_matrices(field: Field) -> tuple[Mat, Mat, Mat]:
    """Right multiplication by e, f, h; these commute with the left action."""
    return _mult_matrices(field, _right_mult)


def image_algebra_basis(E: Mat, F: Mat, H: Mat) -> list[Mat]:
    """Basis of the span of the operators E^i F^j H^l, 0 <= i,j,l < p.

    This is the image of the enveloping algebra inside the matrix algebra
    of the module, found by row-reducing the flattened monomial images.
    """
    field = E.field
    p = field.p
    n = E.rows
    epow = [Mat.identity(field, n)]
    fpow = [Mat.identity(field, n)]
    hpow = [Mat.identity(field, n)]
    for _ in range(p - 1):
        epow.append(epow[-1] @ E)
        fpow.append(fpow[-1] @ F)
        hpow.append(hpow[-1] @ H)
    flat = np.zeros((p ** 3, n * n), dtype=np.int64)
    row = 0
    for i in range(p):
        for j in range(p):
            fh = [fpow[j] @ hpow[l] for l in range(p)]
            for l in range(p):
                flat[row] = (epow[i] @ fh[l]).a.reshape(-1)
                row += 1
    R, pivots = Mat(field, flat).rref()
    return [Mat(field, R.a[r].reshape(n, n).copy()) for r in range(len(pivots))]
