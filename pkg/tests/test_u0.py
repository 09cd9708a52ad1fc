import pytest

from sl2rep.field import GF
from sl2rep.reps import Rep, check_rep, weyl
from sl2rep.u0 import regular_rep_matrices, right_mult_matrices, image_algebra_basis


@pytest.mark.parametrize("p", [3, 5])
def test_regular_rep_satisfies_relations(p):
    F = GF(p)
    E, Fm, H = regular_rep_matrices(F)
    reg = Rep(F, E, Fm, H)
    assert reg.dim == p ** 3
    assert check_rep(reg) == []


@pytest.mark.parametrize("p", [3, 5])
def test_right_mults_commute_with_left_action(p):
    F = GF(p)
    left = regular_rep_matrices(F)
    right = right_mult_matrices(F)
    for L in left:
        for R in right:
            assert L @ R == R @ L


def test_right_mults_antihomomorphism():
    # right multiplication reverses products: R_{xy} = R_y R_x; check on [e,f]=h
    F = GF(3)
    Re, Rf, Rh = right_mult_matrices(F)
    assert Rf @ Re - Re @ Rf == Rh  # note the swap relative to left action


def test_image_algebra_of_weyl():
    F = GF(3)
    V = weyl(1, F)
    basis = image_algebra_basis(V.E, V.F, V.H)
    # V(1) is absolutely simple so the image is all of the 2x2 matrices
    assert len(basis) == 4
    V3 = weyl(3, F)
    b3 = image_algebra_basis(V3.E, V3.F, V3.H)
    assert len(b3) <= 27
    # closed under multiplication: each pairwise product stays in the span
    import numpy as np
    from sl2rep.linalg import Mat, span_contains
    flat = Mat(F, np.vstack([b.a.reshape(1, -1) for b in b3])).T
    for x in b3[:4]:
        for y in b3[:4]:
            prod = (x @ y).a.reshape(-1, 1)
            assert span_contains(flat, Mat(F, prod))
