import numpy as np
import pytest

from sl2rep.field import GF
from sl2rep.linalg import Mat, spans_equal
from sl2rep.reps import (
    Rep, SL2Element, RepInvariantError, check_rep, weyl, simple, baby_verma,
    premet_w, twist, dual, tensor, direct_sum, submodule_spin, sub_quotient,
    quotient_rep, weight_spaces,
)

F3 = GF(3)
F5 = GF(5)
F7 = GF(7)


def test_weyl_zero_is_trivial():
    V = weyl(0, F3)
    assert V.dim == 1
    assert V.E.is_zero() and V.F.is_zero() and V.H.is_zero()


@pytest.mark.parametrize("field", [F3, F5, F7])
@pytest.mark.parametrize("d", [0, 1, 2, 3, 5, 8, 11])
def test_weyl_dimension_and_relations(field, d):
    V = weyl(d, field)
    assert V.dim == d + 1
    assert check_rep(V) == []


def test_weyl1_explicit_matrices_p3():
    V = weyl(1, F3)
    assert V.H == Mat.from_int_rows(F3, [[1, 0], [0, -1]])
    assert V.E == Mat.from_int_rows(F3, [[0, 1], [0, 0]])
    assert V.F == Mat.from_int_rows(F3, [[0, 0], [1, 0]])


def test_simple_range_check():
    with pytest.raises(ValueError):
        simple(3, F3)
    assert simple(2, F3).dim == 3


@pytest.mark.parametrize("field", [F3, F5, F7])
def test_baby_verma_shapes_and_relations(field):
    p = field.p
    for i in range(p - 1):
        Z = baby_verma(i, field)
        assert Z.dim == p
        assert check_rep(Z) == []
        # highest weight vector is killed by E
        assert not Z.E.a[:, 0].any()


def test_baby_verma_explicit_e_action_p3():
    Z = baby_verma(0, F3)
    # E v_1 = 0, E v_2 = v_1 (coefficients j(i - j + 1) mod 3)
    assert not Z.E.a[:, 1].any()
    assert list(Z.E.a[:, 2]) == [0, 1, 0]


@pytest.mark.parametrize("field,d", [(F3, 3), (F3, 4), (F3, 6), (F5, 5), (F5, 7), (F7, 8)])
def test_premet_dimension(field, d):
    W = premet_w(d, field)
    s = d // field.p
    assert W.dim == s * field.p
    assert check_rep(W) == []


def test_premet_precondition():
    with pytest.raises(ValueError):
        premet_w(2, F3)  # d < p
    with pytest.raises(ValueError):
        premet_w(5, F3)  # a = p - 1


def test_premet_quotient_is_trivial_module_p3():
    V = weyl(3, F3)
    span = np.zeros((4, 3), dtype=np.int64)
    span[:3, :3] = np.eye(3, dtype=np.int64)
    Q = quotient_rep(V, Mat(F3, span))
    assert Q.dim == 1
    assert Q.E.is_zero() and Q.F.is_zero() and Q.H.is_zero()


def test_premet_quotient_dimension_general():
    for field, d in [(F3, 4), (F5, 8), (F5, 12)]:
        p = field.p
        s, a = divmod(d, p)
        span = np.zeros((d + 1, s * p), dtype=np.int64)
        span[:s * p, :s * p] = np.eye(s * p, dtype=np.int64)
        Q = quotient_rep(weyl(d, field), Mat(field, span))
        assert Q.dim == a + 1


def test_twist_identity_and_inverse():
    g = SL2Element.from_ints(F3, 1, 0, 1, 1)
    M = weyl(3, F3)
    assert twist(M, SL2Element.identity(F3)) == M
    back = twist(twist(M, g), g.inv())
    assert back == M


def test_twist_composition_order():
    # twisting by g then h equals twisting by hg in one step
    M = baby_verma(1, F5)
    g = SL2Element.from_ints(F5, 1, 0, 1, 1)
    h = SL2Element.from_ints(F5, 1, 2, 0, 1)
    assert twist(twist(M, g), h) == twist(M, h * g)


def test_twist_preserves_dim_and_relations():
    g = SL2Element.from_ints(F5, 2, 1, 1, 1)
    M = weyl(6, F5)
    Mg = twist(M, g)
    assert Mg.dim == M.dim
    assert check_rep(Mg) == []


def test_sl2element_validation_and_borel_tests():
    with pytest.raises(ValueError):
        SL2Element.from_ints(F3, 1, 1, 1, 1)  # det 0
    g = SL2Element.from_ints(F3, 1, 0, 1, 1)
    assert not g.in_borel() and not g.in_w0_borel()
    assert SL2Element.identity(F3).in_borel()
    assert SL2Element.w0(F3).in_w0_borel()
    w0 = SL2Element.w0(F3)
    assert w0 * w0.inv() == SL2Element.identity(F3)


def test_dual_and_tensor():
    M = baby_verma(1, F3)
    assert dual(dual(M)) == M
    assert tensor(M, weyl(0, F3)).dim == M.dim
    T = tensor(weyl(1, F3), weyl(1, F3))
    assert T.dim == 4
    assert check_rep(T) == []


def test_direct_sum_dims():
    M = weyl(1, F3)
    N = weyl(2, F3)
    S = direct_sum(M, N)
    assert S.dim == 5
    assert check_rep(S) == []


def test_spin_of_zero_and_highest_vector():
    M = weyl(1, F3)
    zero = Mat.zeros(F3, 2, 1)
    assert submodule_spin(M, zero).cols == 0
    v0 = Mat.from_int_rows(F3, [[1], [0]])
    assert submodule_spin(M, v0).cols == 2  # F v0 spans the rest


def test_sub_quotient_requires_stability():
    M = weyl(1, F3)
    v0 = Mat.from_int_rows(F3, [[1], [0]])
    with pytest.raises(ValueError):
        sub_quotient(M, v0)


def test_weight_spaces_partition():
    for field, d in [(F3, 4), (F5, 7)]:
        M = weyl(d, field)
        ws = weight_spaces(M)
        assert sum(W.cols for W in ws.values()) == M.dim


def test_h_eigenproduct_vanishes():
    # prod_{c in GF(p)} (H - c) = H^p - H = 0 on every constructor output
    for M in [weyl(4, F3), baby_verma(1, F3), premet_w(4, F3)]:
        acc = Mat.identity(F3, M.dim)
        for c in range(3):
            acc = acc @ (M.H - Mat.scalar(F3, c, M.dim))
        assert acc.is_zero()
