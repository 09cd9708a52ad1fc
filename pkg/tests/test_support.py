import pytest

from sl2rep.field import GF
from sl2rep.linalg import Mat
from sl2rep.reps import SL2Element, baby_verma, premet_w, simple, twist, weyl
from sl2rep.support import (
    ProjPoint, FiniteSubgroup, nullcone_point, point_projective, support,
    act_on_point, projective_line, orbit_stabilizer, is_cyclic,
    module_stabilizer, cyclic_torus_subgroup,
)

F3 = GF(3)
F7 = GF(7)


def test_nullcone_parametrisation():
    e_pt = ProjPoint.of(F3, 1, 0)
    f_pt = ProjPoint.of(F3, 0, 1)
    assert nullcone_point(e_pt) == Mat.from_int_rows(F3, [[0, 1], [0, 0]])
    assert nullcone_point(f_pt) == Mat.from_int_rows(F3, [[0, 0], [-1, 0]])
    # every point squares to zero
    for pt in projective_line(GF(3, 2)):
        x = nullcone_point(pt)
        assert (x @ x).is_zero()
        assert (x.a[0, 0] + x.a[1, 1]) % 3 == 0


def test_point_normalisation_and_line():
    assert ProjPoint.of(F3, 2, 1) == ProjPoint.of(F3, 1, 2)
    assert len(projective_line(F3)) == 4
    assert len(projective_line(GF(3, 2))) == 10


def test_point_projective_steinberg_everywhere():
    St = simple(2, F3)
    for pt in projective_line(F3):
        assert point_projective(St, pt)


def test_premet_support_is_e_line():
    W = premet_w(3, F3)
    assert point_projective(W, ProjPoint.of(F3, 0, 1))
    assert not point_projective(W, ProjPoint.of(F3, 1, 0))
    res = support(W, m=2)
    assert res.complexity == 1
    assert res.points == [ProjPoint.of(GF(3, 2), 1, 0)]


def test_support_of_twist_moves_by_action():
    g = SL2Element.from_ints(F3, 1, 0, 1, 1)
    W = premet_w(3, F3)
    res = support(twist(W, g), m=2)
    F9 = GF(3, 2)
    expected = act_on_point(SL2Element(F9, 1, 0, 1, 1), ProjPoint.of(F9, 1, 0))
    assert res.points == [expected]
    assert res.complexity == 1


def test_support_steinberg_empty():
    res = support(simple(2, F3), m=2)
    assert res.complexity == 0 and res.points == []


def test_support_weyl_p_everywhere():
    res = support(weyl(3, F3), m=2)
    assert res.complexity == 2
    assert len(res.points) == 10


def test_baby_verma_supported_at_e():
    res = support(baby_verma(1, F3), m=1)
    assert res.complexity == 1
    assert res.points == [ProjPoint.of(F3, 1, 0)]


def test_act_on_point_group_law():
    F9 = GF(3, 2)
    import numpy as np
    rng = np.random.default_rng(4)
    pts = projective_line(F9)
    els = []
    # random SL2 elements over GF(9)
    while len(els) < 6:
        a, b, c = (int(x) for x in rng.integers(0, 9, size=3))
        # solve ad - bc = 1 for d when a invertible
        if a == 0:
            continue
        d = int(F9.mul[F9.inv[a], F9.add[1, F9.mul[b, c]]])
        els.append(SL2Element(F9, a, b, c, d))
    for g in els:
        for h in els[:3]:
            for pt in pts[:4]:
                assert act_on_point(g, act_on_point(h, pt)) == act_on_point(g * h, pt)


def test_w0_swaps_e_and_f_lines():
    w0 = SL2Element.w0(F3)
    assert act_on_point(w0, ProjPoint.of(F3, 1, 0)) == ProjPoint.of(F3, 0, 1)


def test_diagonal_fixes_e_line():
    F7_ = GF(7)
    G = cyclic_torus_subgroup(F7_, 3)
    assert G.order == 3
    pt = ProjPoint.of(F7_, 1, 0)
    orbit, stab = orbit_stabilizer(G, pt)
    assert orbit == [pt]
    assert stab.order == 3


def test_orbit_stabilizer_generic_point():
    G = cyclic_torus_subgroup(F7, 3)
    pt = ProjPoint.of(F7, 1, 1)
    orbit, stab = orbit_stabilizer(G, pt)
    assert len(orbit) == 3 and stab.order == 1
    assert is_cyclic(G)


def test_dihedral_type_subgroup():
    # diag(z, z^-1) of order 3 together with w0: order 6, non-cyclic over GF(7)
    z = 2  # 2^3 = 1 mod 7
    g = SL2Element(F7, 2, 0, 0, 4)
    G = FiniteSubgroup.generated_by(F7, [g, SL2Element.w0(F7)])
    assert G.order == 12 or G.order == 6
    orbit, stab = orbit_stabilizer(G, ProjPoint.of(F7, 1, 1))
    assert len(orbit) * stab.order == G.order


def test_module_stabilizer_matches_point_stabilizer():
    G = cyclic_torus_subgroup(F7, 3)
    W = premet_w(8, F7)
    # B-stable module: the whole torus subgroup fixes it
    assert module_stabilizer(G, W).order == 3
    h = SL2Element.from_ints(F7, 1, 0, 1, 1)
    M = twist(W, h)
    pt = act_on_point(h, ProjPoint.of(F7, 1, 0))
    _, stab = orbit_stabilizer(G, pt)
    assert module_stabilizer(G, M).order == stab.order


def test_trivial_group_cases():
    T = FiniteSubgroup.trivial(F3)
    orbit, stab = orbit_stabilizer(T, ProjPoint.of(F3, 1, 1))
    assert orbit == [ProjPoint.of(F3, 1, 1)] and stab.order == 1
    assert module_stabilizer(T, baby_verma(0, F3)).order == 1


def test_subgroup_order_coprime_check():
    # an order-3 subgroup over GF(7) is fine; over GF(3)... the torus has order 2
    G2 = cyclic_torus_subgroup(F3, 2)
    assert G2.order == 2
    with pytest.raises(ValueError):
        cyclic_torus_subgroup(F3, 5)
