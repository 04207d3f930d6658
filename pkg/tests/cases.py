"""Shared reference data used across the test modules.

Each constructor returns a fresh object so tests can mutate copies freely.
"""

from __future__ import annotations

from chroma.datum import BraidingMatrix, Datum, ScalarMatrix, datum_from_twisted
from chroma.extensions import (ExtAutomorphism, FiniteGroup, FiniteRing,
                               GroupAut, MatchedPair, SigmaCocycle, TauCocycle,
                               ring_family)
from chroma.groups import Bicharacter, FinAbGroup
from chroma.hopfcheck import MonomialMatrix, StructBialgebra
from chroma.scalars import Rational01, Scalar, parse_scalar as P

R0 = Rational01(0, 1)
RH = Rational01(1, 2)


def basis_index_of(mp: MatchedPair, l: int, gamma: int) -> int:
    return l * mp.Gamma.n + gamma


# ---------------------------------------------------------------------------
# rank-2 data over C3
# ---------------------------------------------------------------------------


def c3_group():
    return FinAbGroup.of(3)


def c3_beta():
    # beta(s, s) = primitive third root
    return Bicharacter(c3_group(), [[Rational01(1, 3)]])


def rank2_c3_datum() -> Datum:
    """Twisted matrix [[1, q^-1], [1, q]], degrees (s, e); the orbit has
    exactly two distinct generalized diagrams."""
    G = c3_group()
    q = Scalar.variable("q")
    qt = ScalarMatrix([[Scalar.one(), q.inverse()], [Scalar.one(), q]])
    return datum_from_twisted(qt, G, c3_beta(), (G.generator(0), G.identity()))


def rank2_c3_symmetric_datum() -> Datum:
    """Symmetric twisted matrix q^{b}, b = [[0,-1],[-1,2]], degrees (s, e)."""
    G = c3_group()
    q = Scalar.variable("q")
    qt = ScalarMatrix([[Scalar.one(), q.inverse()], [q.inverse(), q * q]])
    return datum_from_twisted(qt, G, c3_beta(), (G.generator(0), G.identity()))


# ---------------------------------------------------------------------------
# the rank-4 family over C2 x C2
# ---------------------------------------------------------------------------


def klein_group():
    return FinAbGroup.of(2, 2)


def klein_beta():
    # beta(s,s) = beta(n,n) = beta(s,n) = -1, beta(n,s) = 1
    return Bicharacter(klein_group(), [[RH, RH], [R0, RH]])


def rank4_klein_datum() -> Datum:
    G = klein_group()
    s, n = G.generator(0), G.generator(1)
    q = Scalar.variable("q")
    one = Scalar.one()
    m1 = Scalar.minus_one()
    rows = [
        [P("q"), P("q^-1"), one, one],
        [one, m1, m1, one],
        [one, one, m1, P("-1*q")],
        [one, one, one, P("-1*q^-1")],
    ]
    return Datum(BraidingMatrix(rows), G, klein_beta(), (G.identity(), s, n, s))


def rank4_reference_table():
    """The six (generalized, colored) diagram pairs the rank-4 orbit must hit."""
    from chroma.dynkin import Diagram

    G = klein_group()
    e = G.identity()
    s, n = G.generator(0), G.generator(1)
    sn = s * n

    def gen(verts, edges):
        return Diagram("generalized", tuple((P(v), None) for v in verts),
                       tuple(sorted((i, j, (P(l) if l else None))
                                    for i, j, l in edges)))

    def col(verts, edges):
        return Diagram("colored", tuple((P(v), d) for v, d in verts),
                       tuple(sorted((i, j, (P(l) if l else None))
                                    for i, j, l in edges)))

    return [
        (gen(["-1", "-1", "-1", "-1*q^-1"],
             [(0, 1, "q"), (1, 2, "-1"), (0, 2, "-1*q^-1"), (2, 3, "-1*q")]),
         col([("1", s), ("1", s), ("1", sn), ("q^-1", s)],
             [(0, 1, "q"), (1, 2, None), (0, 2, "q^-1"), (2, 3, "q")])),
        (gen(["q", "-1", "-1*q^-1", "-1*q^-1"],
             [(0, 1, "q^-1"), (1, 2, "-1*q"), (2, 3, "-1*q")]),
         col([("q", e), ("1", s), ("q^-1", n), ("q^-1", s)],
             [(0, 1, "q^-1"), (1, 2, "q"), (2, 3, "q")])),
        (gen(["-1*q^-1", "-1", "-1", "-1"],
             [(0, 1, "-1*q"), (1, 2, "-1"), (1, 3, "-1*q^-1"), (2, 3, "q")]),
         col([("q^-1", n), ("1", sn), ("1", n), ("1", n)],
             [(0, 1, "q"), (1, 2, None), (1, 3, "q^-1"), (2, 3, "q")])),
        (gen(["q", "-1", "-1", "-1"],
             [(0, 1, "q^-1"), (1, 2, "-1"), (1, 3, "q"), (2, 3, "-1*q^-1")]),
         col([("q", e), ("1", sn), ("1", n), ("1", sn)],
             [(0, 1, "q^-1"), (1, 2, None), (1, 3, "q"), (2, 3, "q^-1")])),
        (gen(["-1", "-1", "-1", "q"],
             [(0, 1, "-1*q^-1"), (1, 2, "-1"), (0, 2, "q"), (2, 3, "q^-1")]),
         col([("1", sn), ("1", s), ("1", sn), ("q", e)],
             [(0, 1, "q^-1"), (1, 2, None), (0, 2, "q"), (2, 3, "q^-1")])),
        (gen(["q", "q", "-1", "-1*q^-1"],
             [(0, 1, "q^-1"), (1, 2, "q^-1"), (2, 3, "-1*q")]),
         col([("q", e), ("q", e), ("1", sn), ("q^-1", s)],
             [(0, 1, "q^-1"), (1, 2, "q^-1"), (2, 3, "q")])),
    ]


# ---------------------------------------------------------------------------
# matched pairs
# ---------------------------------------------------------------------------


def squaring_matched_pair() -> MatchedPair:
    """L = C7, Gamma = C3, trivial right action, generator of Gamma squares L."""
    L = FiniteGroup.cyclic(7)
    Gamma = FiniteGroup.cyclic(3)
    lact = [[(l * pow(2, g, 7)) % 7 for g in range(3)] for l in range(7)]
    ract = [[g for g in range(3)] for _ in range(7)]
    return MatchedPair(L, Gamma, lact, ract)


def mixed_c12_matched_pair() -> MatchedPair:
    """L = C12, Gamma = C3 with both actions nontrivial on odd elements."""
    L = FiniteGroup.cyclic(12)
    Gamma = FiniteGroup.cyclic(3)

    def la(l, g):
        if l % 2 == 0 or g == 0:
            return l
        return (l + 4 * g) % 12

    def ra(l, g):
        if g == 0:
            return 0
        return g if l % 2 == 0 else 3 - g

    return MatchedPair(L, Gamma,
                       [[la(l, g) for g in range(3)] for l in range(12)],
                       [[ra(l, g) for g in range(3)] for l in range(12)])


def inversion_automorphism_table(xi_num: int = 1):
    """The ftilde for the (C7, C3) pair over g = inversion: values xi, xi^3."""
    table = [[R0] * 7 for _ in range(3)]
    for l in range(1, 7):
        table[1][l] = Rational01(xi_num * l, 7)
        table[2][l] = Rational01(3 * xi_num * l, 7)
    return table


def c12_displayed_automorphism(xi_num: int = 1) -> ExtAutomorphism:
    """g(l) = l^7, h = id, ftilde = xi on odd elements for the C12 pair."""
    mp = mixed_c12_matched_pair()
    ft = [[R0] * 12,
          [R0 if l % 2 == 0 else Rational01(xi_num, 3) for l in range(12)],
          [R0 if l % 2 == 0 else Rational01(2 * xi_num, 3) for l in range(12)]]
    return ExtAutomorphism(GroupAut.by_power(mp.L, 7),
                           GroupAut.identity(mp.Gamma), ft)


# ---------------------------------------------------------------------------
# group-algebra color examples
# ---------------------------------------------------------------------------


def klein_group_algebra() -> StructBialgebra:
    """The group algebra of C2 x C2 (basis order: e, gamma, eta, gamma+eta)."""
    Gam = FinAbGroup.of(2, 2)
    GamF = FiniteGroup.from_fin_ab(Gam)
    return StructBialgebra.group_algebra(GamF.table, GamF.identity)


def swap_last_two() -> MonomialMatrix:
    """The order-2 automorphism gamma -> gamma, eta -> gamma + eta of C2 x C2."""
    return MonomialMatrix((0, 1, 3, 2))


def c4_color_group_case():
    """G = C4 with beta(g^i, g^j) = (-1)^{ij}; expected support {e, g^2}."""
    G = FinAbGroup.of(4)
    beta = Bicharacter(G, [[RH]])
    return G, beta, klein_group_algebra(), [swap_last_two()]


def c2c4_color_group_case():
    """G = C2 + C4 with beta = (-1)^{il - jk}; expected support {e, g + h^2}."""
    G = FinAbGroup.of(2, 4)
    beta = Bicharacter(G, [[R0, RH], [RH, R0]])
    return G, beta, klein_group_algebra(), [swap_last_two(), swap_last_two()]


def c12_extension_color_case():
    """The 36-dim extension with the order-6 twisted automorphism acting as
    both dual generators of C2 x C2; expected support {e, g + h}."""
    mp = mixed_c12_matched_pair()
    G = FinAbGroup.of(2, 2)
    beta = Bicharacter(G, [[R0, RH], [RH, R0]])
    f = c12_displayed_automorphism(1)
    dual = FinAbGroup(G.orders)
    F = f.matrix(mp)
    ident = MonomialMatrix.identity(36)
    action = {dual.element((0, 0)): ident, dual.element((1, 0)): F,
              dual.element((0, 1)): F, dual.element((1, 1)): ident}
    rho = {dual.element((0, 0)): ExtAutomorphism.identity(mp),
           dual.element((1, 0)): f, dual.element((0, 1)): f,
           dual.element((1, 1)): ExtAutomorphism.identity(mp)}
    return mp, G, beta, action, rho


# ---------------------------------------------------------------------------
# ring families
# ---------------------------------------------------------------------------


def mod3_ring_family():
    """R = Z/3, Gamma = C2 acting by -1, psi(gamma) = 1, theta = zeta3^{2x}."""
    R = FiniteRing.integers_mod(3)
    Gamma = FiniteGroup.cyclic(2)
    nu = [1, 2]
    psi = [0, 1]
    phi = [[0, 0], [0, 0]]
    eta = [R0] * 3
    theta = [R0, Rational01(2, 3), Rational01(4, 3)]
    return ring_family(R, Gamma, nu, psi, phi, eta, theta)


def mod5_ring_family():
    """R = Z/5, Gamma = C4 acting by 2, psi(gamma) = 1, theta = zeta5^{3x}."""
    R = FiniteRing.integers_mod(5)
    Gamma = FiniteGroup.cyclic(4)
    nu = [1, 2, 4, 3]
    psi = [0] * 4
    psi[1] = 1
    # twisted cocycle: psi(g^{k+1}) = psi(g) + nu(g) psi(g^k)
    for k in (2, 3):
        psi[k] = (psi[1] + 2 * psi[k - 1]) % 5
    phi = [[0] * 4 for _ in range(4)]
    eta = [R0] * 5
    theta = [Rational01(3 * x, 5) for x in range(5)]
    return ring_family(R, Gamma, nu, psi, phi, eta, theta)
