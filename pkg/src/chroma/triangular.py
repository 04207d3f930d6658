"""Reduction of a commutation factor to nondegenerate triangular data.

Pipeline: from a commutation factor beta on G, compute the Drinfeld
element u(g) = beta(g, g^{-1}) = beta(g, g), the +-1 correction kappa,
the reduced nondegenerate bicharacter beta' on G' = G/radical(beta*kappa),
the dual subgroup K = radical^perp, and a normalized 2-cocycle gamma'
whose antisymmetrization recovers beta'.  The emitted report carries the
data (A, K, gamma') that classifies the associated triangular structure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import (Bicharacter, Element, FinAbGroup, QuotientMap,
                     Subgroup, perp, quotient)
from .scalars import R01_HALF, R01_ZERO, Rational01


class NotCommutationFactor(ValueError):
    """The given bicharacter is not skew-symmetric."""


class CocycleTable:
    """A table (x, y) -> root-of-unity exponent on a finite abelian group."""

    __slots__ = ("group", "_table")

    def __init__(self, group: FinAbGroup, table: dict):
        self.group = group
        self._table = dict(table)

    def value(self, x: Element, y: Element) -> Rational01:
        return self._table[(x.residues, y.residues)]

    def items(self):
        return self._table.items()

    def to_json(self) -> list:
        return [[list(x), list(y), str(v)]
                for (x, y), v in sorted(self._table.items())]


def drinfeld_u(beta: Bicharacter) -> dict[Element, Rational01]:
    """u(g) = beta(g, g^{-1}); for a commutation factor this is beta(g, g)."""
    if not beta.is_commutation_factor():
        raise NotCommutationFactor("drinfeld element needs a commutation factor")
    out = {}
    for g in beta.group.elements():
        v = beta.eval(g, g)
        assert v in (R01_ZERO, R01_HALF)
        out[g] = v
    return out


def kappa_bicharacter(u: dict[Element, Rational01], group: FinAbGroup) -> Bicharacter:
    """kappa(g,h) = -1 iff u(g) = u(h) = -1, else 1."""
    signs = [1 if u[g] == R01_HALF else 0 for g in group.generators()]
    matrix = [[R01_HALF if si and sj else R01_ZERO for sj in signs] for si in signs]
    return Bicharacter(group, matrix)


@dataclass
class TriangularData:
    group: FinAbGroup
    u: dict[Element, Rational01]
    kappa: Bicharacter
    quotient_map: QuotientMap
    beta_prime: Bicharacter
    k_subgroup: Subgroup          # inside the dual group
    gamma_prime: CocycleTable

    @property
    def g_prime(self) -> FinAbGroup:
        return self.quotient_map.quotient


def scheunert_cocycle(beta_p: Bicharacter) -> CocycleTable:
    """A normalized 2-cocycle gamma with gamma(x,y)/gamma(y,x) = beta_p(x,y).

    Requires a commutation factor with trivial diagonal.  The cocycle is
    the lower-triangular bilinear form gamma(x,y) = prod_{i>j}
    beta_p(e_i,e_j)^{x_i y_j}, which is deterministic and normalized.
    """
    G = beta_p.group
    if not beta_p.is_commutation_factor():
        raise NotCommutationFactor("scheunert cocycle needs a commutation factor")
    for e in G.generators():
        if not beta_p.eval(e, e).is_zero():
            raise ValueError("diagonal of the bicharacter must be trivial")
    table = {}
    B = beta_p.matrix
    for x in G.elements():
        for y in G.elements():
            v = R01_ZERO
            for i in range(G.rank):
                if x.residues[i] == 0:
                    continue
                for j in range(i):
                    if y.residues[j]:
                        v = v + B[i][j].scale(x.residues[i] * y.residues[j])
            table[(x.residues, y.residues)] = v
    return CocycleTable(G, table)


def reduce_commutation_factor(beta: Bicharacter) -> TriangularData:
    """Full reduction: u, kappa, G', beta', K, and the Scheunert cocycle."""
    if not beta.is_commutation_factor():
        raise NotCommutationFactor("reduction needs a commutation factor")
    G = beta.group
    u = drinfeld_u(beta)
    kappa = kappa_bicharacter(u, G)
    bk = beta * kappa
    rad = bk.radical()
    qm = quotient(G, rad)
    Gp = qm.quotient
    # induced bicharacter on the quotient via lifts; well-definedness is
    # guaranteed because the radical is in both kernels
    matrix = []
    lifts = [qm.lift(e) for e in Gp.generators()]
    for a in lifts:
        matrix.append([bk.eval(a, b) for b in lifts])
    beta_p = Bicharacter(Gp, matrix)
    for x in Gp.elements():
        for y in Gp.elements():
            if beta_p.eval(x, y) != bk.eval(qm.lift(x), qm.lift(y)):
                raise AssertionError("induced bicharacter is not well defined")
    if not beta_p.is_nondegenerate():
        raise AssertionError("reduced bicharacter must be nondegenerate")
    for x in Gp.elements():
        if not beta_p.eval(x, x).is_zero():
            raise AssertionError("reduced bicharacter must have trivial diagonal")
    k_sub = perp(rad)
    gamma = scheunert_cocycle(beta_p)
    return TriangularData(group=G, u=u, kappa=kappa, quotient_map=qm,
                          beta_prime=beta_p, k_subgroup=k_sub, gamma_prime=gamma)


def emit_triangular(data: TriangularData) -> dict:
    """JSON-ready report: dual group, K, u values, and the twist table."""
    return {
        "schema": 1,
        "group": data.group.to_json(),
        "dual_group": data.group.to_json(),
        "u": [[list(g.residues), str(v)] for g, v in sorted(
            data.u.items(), key=lambda kv: kv[0].residues)],
        "G_prime": data.g_prime.to_json(),
        "K": [list(r) for r in sorted(data.k_subgroup.element_set)],
        "gamma_prime": data.gamma_prime.to_json(),
    }
