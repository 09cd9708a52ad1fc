import numpy as np
import pytest

from sl2rep.field import GF, Field, smallest_irreducible, poly_mul, poly_divmod, poly_gcd


def test_prime_field_tables():
    F = GF(3)
    assert F.q == 3
    assert F.modulus == (0, 1)
    # hand-checked addition and multiplication mod 3
    assert F.add[1, 2] == 0
    assert F.add[2, 2] == 1
    assert F.mul[2, 2] == 1
    assert F.neg[1] == 2
    assert F.inv[2] == 2


def test_rejects_bad_characteristic():
    with pytest.raises(ValueError):
        Field(2)
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        Field(9)


def test_smallest_irreducible_gf9():
    # degree-2 monic polys over GF(3) enumerated by c0 + 3*c1:
    # x^2, x^2+1 has root? 1+1=2, 2^2+1=2 -> no root over GF(3): irreducible.
    assert smallest_irreducible(3, 2) == (1, 0, 1)


def test_field_axioms_random():
    rng = np.random.default_rng(0)
    for (p, m) in [(3, 1), (5, 1), (7, 1), (3, 2), (7, 2), (3, 3)]:
        F = GF(p, m)
        a, b, c = rng.integers(0, F.q, size=(3, 64))
        assert np.array_equal(F.add[a, F.add[b, c]], F.add[F.add[a, b], c])
        assert np.array_equal(F.mul[a, F.mul[b, c]], F.mul[F.mul[a, b], c])
        assert np.array_equal(F.mul[a, F.add[b, c]], F.add[F.mul[a, b], F.mul[a, c]])
        assert np.array_equal(F.add[a, F.neg[a]], np.zeros_like(a))
        nz = a[a != 0]
        assert np.array_equal(F.mul[nz, F.inv[nz]], np.ones_like(nz))
        # Frobenius is additive and fixes exactly GF(p) when m covers it
        assert np.array_equal(F.frob[F.add[a, b]], F.add[F.frob[a], F.frob[b]])


def test_element_pow_matches_python_pow_prime_field():
    F = GF(7)
    for a in range(7):
        for n in range(6):
            assert F.element_pow(np.array([a]), n)[0] == pow(a, n, 7)


def test_encode_decode_roundtrip():
    F = GF(5, 2)
    for a in range(F.q):
        assert F.encode_coeffs(F.coeffs(a)) == a


def test_embedding_gf3_into_gf9():
    F3, F9 = GF(3), GF(3, 2)
    t = F3.embedding_table(F9)
    # prime subfield maps to the constant digits
    assert list(t) == [0, 1, 2]
    # embedding is a ring hom on the subfield
    for a in range(3):
        for b in range(3):
            assert t[F3.mul[a, b]] == F9.mul[t[a], t[b]]
            assert t[F3.add[a, b]] == F9.add[t[a], t[b]]


def test_embedding_gf9_into_gf81_is_ring_hom():
    F9, F81 = GF(3, 2), GF(3, 4)
    t = F9.embedding_table(F81)
    rng = np.random.default_rng(1)
    a, b = rng.integers(0, 9, size=(2, 40))
    assert np.array_equal(t[F9.mul[a, b]], F81.mul[t[a], t[b]])
    assert np.array_equal(t[F9.add[a, b]], F81.add[t[a], t[b]])


def test_poly_helpers():
    p = 3
    # (x+1)(x+2) = x^2 + 2 over GF(3)
    assert poly_mul([1, 1], [2, 1], p) == [2, 0, 1]
    q, r = poly_divmod([2, 0, 1], [1, 1], p)
    assert q == [2, 1] and r == []
    assert poly_gcd([2, 0, 1], [1, 1], p) == [1, 1]
    assert poly_gcd([1, 0, 1], [1, 1], p) == [1]
