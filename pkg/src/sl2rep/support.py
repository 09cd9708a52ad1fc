"""Rank varieties on the projectivised nullcone and group actions on it.

The nullcone of traceless 2x2 matrices with a^2 + bc = 0 is parametrised
by the projective line: (s : t) corresponds to

    x = [[st, s^2], [-t^2, -st]] = st h + s^2 e - t^2 f,

so (1 : 0) is the e-line and (0 : 1) the f-line.  A module is supported
at a point when its restriction to the corresponding one-parameter
subalgebra fails to be free, detected by an exact rank count.  Points are
enumerated over a chosen finite field; the complexity labels are exact
for the module families in play (single points or the whole line) and
always carry the field they were computed over.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import Field, GF
from .linalg import Mat
from .reps import Rep, SL2Element, twist

__all__ = [
    "ProjPoint", "FiniteSubgroup", "SupportResult",
    "nullcone_point", "point_projective", "support", "act_on_point",
    "projective_line", "orbit_stabilizer", "is_cyclic", "module_stabilizer",
    "cyclic_torus_subgroup",
]


@dataclass(frozen=True)
class ProjPoint:
    """A point of the projective line, normalised so equality is literal."""

    field: Field
    s: int
    t: int

    def __post_init__(self):
        if self.s == 0 and self.t == 0:
            raise ValueError("(0, 0) is not a projective point")

    @staticmethod
    def of(field: Field, s: int, t: int) -> "ProjPoint":
        s, t = int(s) % field.q, int(t) % field.q
        if s != 0:
            c = int(field.inv[s])
            return ProjPoint(field, 1, int(field.mul[c, t]))
        c = int(field.inv[t])
        return ProjPoint(field, 0, 1)

    def __repr__(self):
        return f"({self.s}:{self.t})"


def projective_line(field: Field) -> list[ProjPoint]:
    """All q + 1 rational points, (1 : t) first, then (0 : 1)."""
    pts = [ProjPoint.of(field, 1, t) for t in range(field.q)]
    pts.append(ProjPoint.of(field, 0, 1))
    return pts


def nullcone_point(pt: ProjPoint) -> Mat:
    """The nilpotent 2x2 matrix [[st, s^2], [-t^2, -st]] of a point."""
    F = pt.field
    s, t = pt.s, pt.t
    return Mat(F, np.array([
        [F.mul[s, t], F.mul[s, s]],
        [F.neg[F.mul[t, t]], F.neg[F.mul[s, t]]],
    ], dtype=np.int64))


def _acting_matrix(M: Rep, pt: ProjPoint) -> Mat:
    """st H + s^2 E - t^2 F, the action of the nullcone element."""
    F = M.field
    s, t = pt.s, pt.t
    return (M.H.scale(int(F.mul[s, t]))
            + M.E.scale(int(F.mul[s, s]))
            - M.F.scale(int(F.mul[t, t])))


def point_projective(M: Rep, pt: ProjPoint) -> bool:
    """Is the restriction to the point's line free?

    Freeness over k[x]/(x^p) holds iff rank(x^(p-1)) = dim/p; when p does
    not divide the dimension the answer is immediately no.
    """
    if M.field != pt.field:
        raise ValueError("point and module over different fields")
    p = M.field.p
    if M.dim % p:
        return False
    x = _acting_matrix(M, pt)
    return x.power(p - 1).rank() == M.dim // p


@dataclass
class SupportResult:
    field: Field
    points: list
    complexity: int  # 0, 1 or 2; exact for the families in scope

    def __repr__(self):
        return (f"SupportResult(cx{self.complexity} over {self.field!r}: "
                f"{self.points})")


def support(M: Rep, m: int = 2) -> SupportResult:
    """Non-free points of the projective line over GF(p^m), with a label.

    The module is base-changed to GF(p^m) and every rational point is
    tested.  Label 0 requires an independent projectivity certificate
    (vanishing Heller shift); an empty support without one signals that
    the chosen field is too small and raises.
    """
    from .homalg import base_change, is_projective
    F2 = GF(M.field.p, m)
    M2 = base_change(M, m) if M.field != F2 else M
    pts = [pt for pt in projective_line(F2) if not point_projective(M2, pt)]
    if not pts:
        if not is_projective(M):
            raise ValueError(
                "empty support but module is not projective; extension too small")
        return SupportResult(F2, [], 0)
    if len(pts) == F2.q + 1:
        return SupportResult(F2, pts, 2)
    return SupportResult(F2, pts, 1)


def act_on_point(g: SL2Element, pt: ProjPoint) -> ProjPoint:
    """Conjugate the nullcone matrix by g and read the point back off."""
    F = pt.field
    if g.field != F:
        raise ValueError("group element and point over different fields")
    x = nullcone_point(pt)
    gx = g.as_matrix() @ x @ g.inv().as_matrix()
    # gx is proportional to [[s't', s'^2], [-t'^2, -s't']]
    if gx.a[0, 1] != 0:
        return ProjPoint.of(F, int(gx.a[0, 1]), int(gx.a[0, 0]))
    return ProjPoint.of(F, int(gx.a[0, 0]), int(F.neg[gx.a[1, 0]]))


# ----------------------------------------------------------------------
# Finite subgroups of SL(2) and their actions.
# ----------------------------------------------------------------------

@dataclass
class FiniteSubgroup:
    field: Field
    elements: list  # SL2Elements, closed under product and inverse

    def __post_init__(self):
        seen = set(self.elements)
        if SL2Element.identity(self.field) not in seen:
            raise ValueError("subgroup must contain the identity")
        for a in self.elements:
            if a.inv() not in seen:
                raise ValueError("subgroup is not closed under inverses")
            for b in self.elements:
                if a * b not in seen:
                    raise ValueError("subgroup is not closed under products")
        if len(self.elements) % self.field.p == 0:
            raise ValueError("order must be prime to the characteristic")

    @property
    def order(self) -> int:
        return len(self.elements)

    @staticmethod
    def generated_by(field: Field, gens) -> "FiniteSubgroup":
        elems = {SL2Element.identity(field)}
        frontier = list(gens)
        while frontier:
            g = frontier.pop()
            if g in elems:
                continue
            elems.add(g)
            for h in list(elems):
                for prod in (g * h, h * g, g.inv()):
                    if prod not in elems:
                        frontier.append(prod)
            if len(elems) > field.q ** 3:
                raise RuntimeError("group generation ran away")
        ordered = sorted(elems, key=lambda e: (e.a, e.b, e.c, e.d))
        return FiniteSubgroup(field, ordered)

    @staticmethod
    def trivial(field: Field) -> "FiniteSubgroup":
        return FiniteSubgroup(field, [SL2Element.identity(field)])


def cyclic_torus_subgroup(field: Field, n: int) -> FiniteSubgroup:
    """The order-n diagonal subgroup diag(z, z^-1), n | q - 1."""
    if (field.q - 1) % n:
        raise ValueError(f"no order-{n} subgroup of the torus over this field")
    for c in range(2, field.q):
        # element orders in the multiplicative group
        order = 1
        acc = c
        while acc != 1:
            acc = int(field.mul[acc, c])
            order += 1
        if order == n:
            z = c
            break
    else:
        if n != 1:
            raise ValueError("no generator found")
        z = 1
    g = SL2Element(field, z, 0, 0, int(field.inv[z]))
    return FiniteSubgroup.generated_by(field, [g])


def orbit_stabilizer(G: FiniteSubgroup, pt: ProjPoint):
    """(orbit list, stabiliser subgroup) by direct enumeration."""
    orbit = []
    stab = []
    for g in G.elements:
        q = act_on_point(g, pt)
        if q == pt:
            stab.append(g)
        if q not in orbit:
            orbit.append(q)
    stab_group = FiniteSubgroup(G.field, stab)
    if len(orbit) * stab_group.order != G.order:
        raise RuntimeError("orbit-stabiliser count failed")
    return orbit, stab_group


def is_cyclic(G: FiniteSubgroup) -> bool:
    return any(g.order() == G.order for g in G.elements)


def module_stabilizer(G: FiniteSubgroup, M: Rep, seed: int | None = None) -> FiniteSubgroup:
    """Elements whose adjoint twist fixes the isomorphism class of M."""
    from .homalg import DEFAULT_SEED, is_isomorphic
    seed = DEFAULT_SEED if seed is None else seed
    stab = [g for g in G.elements if is_isomorphic(twist(M, g), M, seed=seed)]
    return FiniteSubgroup(G.field, stab)
