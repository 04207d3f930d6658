import pytest

import cases
from chroma.datum import BraidingMatrix, Datum
from chroma.dynkin import (Diagram, SizeLimit, colored_diagram,
                           diagram_from_json, diagram_to_json, emit_dot,
                           emit_text, generalized_diagram, isomorphic)
from chroma.groups import Bicharacter, FinAbGroup
from chroma.scalars import Rational01, Scalar, parse_scalar as P
from chroma.weyl import reflect_datum, reflect_matrix, weyl_orbit


def test_generalized_edgeless():
    q = Scalar.variable("q")
    m = BraidingMatrix([[q, q], [q.inverse(), q]])  # products cancel
    d = generalized_diagram(m)
    assert d.edges == ()
    assert [str(v[0]) for v in d.vertices] == ["q", "q"]


def test_generalized_chain_example():
    E = cases.rank4_klein_datum()
    d = generalized_diagram(E.q)
    labels = {(i, j): str(l) for i, j, l in d.edges}
    assert labels == {(0, 1): "q^-1", (1, 2): "-1", (2, 3): "-1*q"}
    assert [str(v[0]) for v in d.vertices] == ["q", "-1", "-1", "-1*q^-1"]


def test_colored_diagram_unlabeled_edge():
    E = cases.rank4_klein_datum()
    d = colored_diagram(E)
    by_pair = {(i, j): l for i, j, l in d.edges}
    assert set(by_pair) == {(0, 1), (1, 2), (2, 3)}
    assert str(by_pair[(0, 1)]) == "q^-1"
    assert by_pair[(1, 2)] is None  # color pairing alone links 2 and 3
    assert str(by_pair[(2, 3)]) == "q"
    assert [v[1].residues for v in d.vertices] == [(0, 0), (1, 0), (0, 1), (1, 0)]


def test_colored_trivial_degrees_match_generalized():
    G = FinAbGroup.of(3)
    beta = cases.c3_beta()
    q = Scalar.variable("q")
    m = BraidingMatrix([[q, q * q], [Scalar.one(), q]])
    E = Datum(m, G, beta, (G.identity(), G.identity()))
    dg = generalized_diagram(E.q)
    dc = colored_diagram(E)
    assert [(i, j) for i, j, _ in dc.edges] == [(i, j) for i, j, _ in dg.edges]
    assert all(l is not None for _, _, l in dc.edges)


def test_isomorphic_basic():
    E = cases.rank2_c3_datum()
    d = generalized_diagram(E.q)
    assert isomorphic(d, d)
    # reversed chain
    q = Scalar.variable("q")
    w = Scalar.zeta(3, 1)
    rev = Diagram("generalized", ((q, None), (w, None)),
                  ((0, 1, P("q^-1")),))
    assert isomorphic(d, rev)
    other = Diagram("generalized", ((q, None), (w, None)),
                    ((0, 1, P("q")),))
    assert not isomorphic(d, other)


def test_isomorphic_distinguishes_table_rows():
    table = cases.rank4_reference_table()
    # rows 2 and 6 have different vertex label multisets
    assert not isomorphic(table[1][0], table[5][0])
    # rows 1 and 3 agree as generalized diagrams but differ colored
    assert isomorphic(table[0][0], table[2][0])
    assert not isomorphic(table[0][1], table[2][1])


def test_isomorphic_size_limit():
    q = Scalar.variable("q")
    big = Diagram("generalized", tuple((q, None) for _ in range(11)), ())
    with pytest.raises(SizeLimit):
        isomorphic(big, big)


def test_equivalence_relation_on_orbit_diagrams():
    orb = weyl_orbit(cases.rank2_c3_datum())
    diagrams = [generalized_diagram(n.q) for n in orb.nodes]
    for a in diagrams:
        assert isomorphic(a, a)
    for a in diagrams[:4]:
        for b in diagrams[:4]:
            assert isomorphic(a, b) == isomorphic(b, a)
            for c in diagrams[:4]:
                if isomorphic(a, b) and isomorphic(b, c):
                    assert isomorphic(a, c)


def test_orbit_edges_match_matrix_reflection():
    orb = weyl_orbit(cases.rank2_c3_datum())
    for src, p, tgt in orb.edges:
        d1 = generalized_diagram(orb.nodes[tgt].q)
        d2 = generalized_diagram(reflect_matrix(orb.nodes[src].q, p))
        assert d1 == d2


def test_emit_text_chain_and_glyphs():
    E = cases.rank2_c3_datum()
    text = emit_text(colored_diagram(E), E.group)
    assert "●^1 —q^-1— ○^q" in text
    assert "legend" in text
    E4 = cases.rank4_klein_datum()
    text4 = emit_text(colored_diagram(E4), E4.group)
    assert "——" in text4  # the unlabeled edge
    assert "⊗" in text4


def test_emit_text_large_group_fallback():
    G = FinAbGroup.of(5)
    beta = Bicharacter(G, [[Rational01(1, 5)]])
    q = Scalar.variable("q")
    E = Datum(BraidingMatrix([[q]]), G, beta, (G.generator(0),))
    text = emit_text(colored_diagram(E), G)
    assert "legend" not in text
    assert "[1]^zeta(5,4)*q" in text  # degree tuple shown, twist absorbs beta


def test_emit_dot_deterministic():
    E = cases.rank4_klein_datum()
    d = colored_diagram(E)
    assert emit_dot(d) == emit_dot(d)
    out = emit_dot(d)
    assert out.startswith("graph dynkin {")
    assert 'v1 -- v2 [label=""]' in out  # unlabeled edge drawn without label
    g = emit_dot(generalized_diagram(E.q))
    assert 'label="-1*q"' in g


def test_diagram_single_vertex_text():
    q = Scalar.variable("q")
    d = Diagram("generalized", ((q, None),), ())
    assert emit_text(d).strip() == "○^q"


def test_json_round_trip():
    E = cases.rank4_klein_datum()
    for d in (generalized_diagram(E.q), colored_diagram(E)):
        back = diagram_from_json(diagram_to_json(d), E.group)
        assert back == d
