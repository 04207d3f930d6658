import random

import pytest

import cases
from chroma.datum import (BraidingMatrix, Datum, DegenerateBeta, DiagonalOne,
                          DimensionMismatch, ScalarMatrix, datum_from_twisted,
                          twist_matrix, untwist_matrix)
from chroma.groups import Bicharacter, FinAbGroup
from chroma.scalars import Rational01, Scalar


def test_braiding_matrix_diagonal_one_rejected():
    q = Scalar.variable("q")
    with pytest.raises(DiagonalOne):
        BraidingMatrix([[Scalar.one(), q], [q, q]])
    # the twisted matrix may carry 1 on the diagonal
    ScalarMatrix([[Scalar.one(), q], [q, q]])


def test_datum_requires_nondegenerate_beta():
    G = FinAbGroup.of(4)
    beta = Bicharacter(G, [[Rational01(1, 2)]])  # radical {1, g^2}
    q = Scalar.variable("q")
    with pytest.raises(DegenerateBeta):
        Datum(BraidingMatrix([[q]]), G, beta, (G.generator(0),))


def test_dimension_checks():
    E = cases.rank2_c3_datum()
    with pytest.raises(DimensionMismatch):
        Datum(E.q, E.group, E.beta, (E.t[0],))


def test_trivial_degrees_leave_q_unchanged():
    G = FinAbGroup.of(3)
    beta = cases.c3_beta()
    q = Scalar.variable("q")
    m = BraidingMatrix([[q, q], [q, q * q]])
    E = Datum(m, G, beta, (G.identity(), G.identity()))
    assert all(E.qt[i, j] == m[i, j] for i in range(2) for j in range(2))


def test_rank2_example_twist():
    E = cases.rank2_c3_datum()
    # q_11 = beta(s,s) * 1 = omega; edge entries survive untwisted
    assert E.q[0, 0] == Scalar.zeta(3, 1)
    assert E.q[0, 1] == Scalar.variable("q", -1)
    assert E.q[1, 1] == Scalar.variable("q")
    assert E.xi[0](E.group.generator(0)) == Rational01(1, 3)


def test_rank4_example_twist():
    E = cases.rank4_klein_datum()
    qt = E.qt
    one = Scalar.one()
    assert qt[0, 0] == Scalar.variable("q")
    assert qt[1, 1] == one
    assert qt[2, 2] == one
    assert qt[3, 3] == Scalar.variable("q", -1)


def test_twist_untwist_round_trip():
    rng = random.Random(4)
    G = FinAbGroup.of(2, 4)
    beta = Bicharacter(G, [[Rational01(1, 2), Rational01(0, 1)],
                           [Rational01(0, 1), Rational01(1, 4)]])
    elems = list(G.elements())
    for _ in range(30):
        t = tuple(rng.choice(elems) for _ in range(3))
        entries = [[Scalar(Rational01(rng.randrange(4), 4),
                           {"q": rng.randrange(-2, 3)}) for _ in range(3)]
                   for _ in range(3)]
        for i in range(3):
            if entries[i][i].is_one():
                entries[i][i] = Scalar.variable("q")
        q = BraidingMatrix(entries)
        qt = twist_matrix(q, t, beta)
        back = untwist_matrix(qt, t, beta)
        assert all(back[i, j] == q[i, j] for i in range(3) for j in range(3))
        # qt_ij qt_ji beta(ti,tj) beta(tj,ti) == q_ij q_ji
        for i in range(3):
            for j in range(3):
                pairing = beta.eval(t[i], t[j]) + beta.eval(t[j], t[i])
                lhs = qt[i, j] * qt[j, i] * Scalar.from_root(pairing)
                assert lhs == q[i, j] * q[j, i]


def test_json_round_trip():
    E = cases.rank4_klein_datum()
    assert Datum.from_json(E.to_json()) == E
    E2 = cases.rank2_c3_datum()
    assert Datum.from_json(E2.to_json()) == E2
