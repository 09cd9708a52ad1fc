import pytest

from sl2rep.field import GF
from sl2rep.linalg import Mat
from sl2rep.reps import SL2Element, baby_verma, premet_w, twist
from sl2rep.skew import (
    SkewRep, check_skew, skew_induce, skew_restrict, skew_decompose,
    clifford_counts,
)
from sl2rep.homalg import hom_dim, is_isomorphic, decompose

F7 = GF(7)
F3 = GF(3)


def torus_gen(field, n):
    # diag(z, z^-1) with z of multiplicative order n
    for c in range(2, field.q):
        acc, order = c, 1
        while acc != 1:
            acc = int(field.mul[acc, c])
            order += 1
        if order == n:
            return SL2Element(field, c, 0, 0, int(field.inv[c]))
    raise ValueError("no such element")


def test_trivial_group_is_module_itself():
    M = baby_verma(0, F3)
    X = skew_induce(M, SL2Element.identity(F3))
    assert X.dim == M.dim and X.n == 1
    assert check_skew(X) == []
    assert skew_restrict(X) == M


def test_skew_induce_dimensions_and_validity():
    g = torus_gen(F7, 3)
    M = premet_w(8, F7)
    X = skew_induce(M, g)
    assert X.n == 3 and X.dim == 3 * M.dim
    assert check_skew(X) == []


def test_restriction_is_sum_of_twists():
    g = torus_gen(F7, 3)
    M = twist(premet_w(8, F7), SL2Element.from_ints(F7, 1, 0, 1, 1))
    X = skew_induce(M, g)
    parts = decompose(skew_restrict(X))
    assert sum(m for _, m in parts) == 3
    # every summand is one of the twists
    twists = [M, twist(M, g), twist(M, g * g)]
    for S, _ in parts:
        assert any(is_isomorphic(S, T) for T in twists)


def test_stable_module_splits_into_character_twists():
    # torus-stable module: n equivariant summands, all restricting to M
    g = torus_gen(F7, 3)
    M = premet_w(8, F7)
    X = skew_induce(M, g)
    out = skew_decompose(X)
    assert sum(m for _, m in out) == 3
    assert len(out) == 3  # pairwise non-isomorphic equivariant structures
    for S, m in out:
        assert m == 1 and S.dim == M.dim
        assert is_isomorphic(S.rep, M)


def test_free_orbit_induces_indecomposable():
    # trivial stabiliser: the induced equivariant module is a brick
    g = torus_gen(F7, 3)
    M = twist(premet_w(8, F7), SL2Element.from_ints(F7, 1, 0, 1, 1))
    X = skew_induce(M, g)
    assert hom_dim(X, X) == 1
    out = skew_decompose(X)
    assert len(out) == 1 and out[0][1] == 1 and out[0][0].dim == X.dim


def test_skew_frobenius_reciprocity():
    g = torus_gen(F7, 3)
    M = premet_w(8, F7)
    X = skew_induce(M, g)
    assert hom_dim(X, X) == hom_dim(M, skew_restrict(X))


def test_clifford_counts_full_stabilizer():
    g = torus_gen(F7, 3)
    rep = clifford_counts(premet_w(8, F7), g)
    assert rep.group_order == 3
    assert rep.stabilizer_order == 3
    assert rep.orbit_classes == 1
    assert rep.count_identity
    assert rep.dims_conserved
    assert rep.restriction_classes_bound
    assert rep.skew_summands == [(7, 1), (7, 1), (7, 1)]


def test_clifford_counts_trivial_stabilizer():
    g = torus_gen(F7, 3)
    M = twist(premet_w(8, F7), SL2Element.from_ints(F7, 1, 0, 1, 1))
    rep = clifford_counts(M, g)
    assert rep.stabilizer_order == 1
    assert rep.orbit_classes == 3
    assert rep.count_identity
    assert rep.dims_conserved
    assert rep.skew_summands == [(21, 1)]


def test_skew_induce_rejects_bad_order():
    g = torus_gen(F3, 2)  # order-2 torus element over GF(3)
    M = baby_verma(0, F3)
    X = skew_induce(M, g)
    assert X.n == 2
    with pytest.raises(ValueError):
        # 3 is not a multiple of the generator order 2... and 3 = p anyway
        skew_induce(M, g, 3)


def test_skew_sub_requires_group_stability():
    g = torus_gen(F7, 2)
    M = premet_w(8, F7)
    X = skew_induce(M, g)
    # the first slot alone is E,F,H-stable but not G-stable
    import numpy as np
    U = Mat(F7, np.vstack([np.eye(7, dtype=np.int64),
                           np.zeros((7, 7), dtype=np.int64)]))
    from sl2rep.skew import SkewInvariantError
    with pytest.raises(SkewInvariantError):
        X.sub(U)
