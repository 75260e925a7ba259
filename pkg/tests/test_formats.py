import pytest

from genuslab.dfa import dfa_from_json, dfa_to_json, format_dfa, parse_dfa
from genuslab.embedding import (
    format_rotation,
    format_witness,
    parse_witness,
    verify_witness,
    witness_from_json,
    witness_to_json,
)
from genuslab.emulator import (
    emulator_from_json,
    emulator_to_json,
    format_emulator,
    parse_emulator,
)
from genuslab.errors import FormatError
from genuslab.families import shuffle, zmod
from genuslab.fixtures import (
    build_fixtures,
    k4_planar_witness,
    shuffle_torus_witness,
    z6_planar_emulator,
)
from genuslab.graphs import (
    Edge,
    Multigraph,
    SimpleDigraph,
    digraph_from_json,
    digraph_to_json,
    format_digraph,
    format_multigraph,
    multigraph_from_json,
    multigraph_to_json,
    parse_digraph,
    parse_multigraph,
    underlying_multigraph,
)


def test_dfa_roundtrip():
    for a in (zmod(5, [0, 1, 2]), zmod(6), shuffle(4, 3)):
        assert parse_dfa(format_dfa(a)) == a
        assert dfa_from_json(dfa_to_json(a)) == a


def test_dfa_parse_errors_carry_line_numbers():
    with pytest.raises(FormatError) as err:
        parse_dfa("alphabet: a\nstates: 2\ninitial: 0\ntrans: 0 a\n")
    assert "line 4" in str(err.value)
    with pytest.raises(FormatError):
        parse_dfa("states: 2\ninitial: 0\n")
    with pytest.raises(FormatError) as err:
        parse_dfa("banana: 1\n")
    assert "banana" in str(err.value)


def test_dfa_comments_and_blank_lines():
    text = "# sum automaton\nalphabet: 0 1\n\nstates: 2\ninitial: 0\nfinal: 0\ntrans: 0 0 0 # stay\ntrans: 0 1 1\ntrans: 1 0 1\ntrans: 1 1 0\n"
    a = parse_dfa(text)
    assert a.num_states == 2 and a.finals == frozenset([0])


def test_graph_roundtrip():
    g = Multigraph(4, (Edge(0, 1, True), Edge(1, 1, False), Edge(2, 3), Edge(0, 1, True)))
    assert parse_multigraph(format_multigraph(g)) == g
    assert multigraph_from_json(multigraph_to_json(g)) == g
    assert "loop" in format_multigraph(g)

    d = SimpleDigraph(3, ((0, 1), (2, 1)))
    assert parse_digraph(format_digraph(d)) == d
    assert digraph_from_json(digraph_to_json(d)) == d


def test_digraph_rejects_edge_lines():
    with pytest.raises(FormatError):
        parse_digraph("vertices: 2\nedge: 0 1\n")


def test_witness_roundtrip():
    for w in (k4_planar_witness(), shuffle_torus_witness(4, 4)):
        again = parse_witness(format_witness(w))
        assert again.graph == w.graph
        assert again.rotation == w.rotation
        assert again.census == w.census and again.genus == w.genus
        assert verify_witness(again) == (True, None)
        viaj = witness_from_json(witness_to_json(w))
        assert viaj.rotation == w.rotation and viaj.genus == w.genus


def test_witness_verification_catches_tampering():
    w = k4_planar_witness()
    text = format_witness(w).replace("genus: 0", "genus: 1")
    ok, why = verify_witness(parse_witness(text))
    assert not ok and "genus" in why
    text2 = format_witness(w).replace("face: 3 4", "face: 3 3\nface: 4 1")
    ok, why = verify_witness(parse_witness(text2))
    assert not ok and "census" in why


def test_rotation_format_tokens():
    w = k4_planar_witness()
    text = format_rotation(w.rotation)
    assert text.startswith("rot: 0 ")
    assert "." in text.split()[2]


def test_emulator_roundtrip():
    m = z6_planar_emulator()
    assert parse_emulator(format_emulator(m)) == m
    assert emulator_from_json(emulator_to_json(m)) == m


def test_emulator_parse_errors():
    with pytest.raises(FormatError):
        parse_emulator("vertices: 1\n")  # missing total section
    m = z6_planar_emulator()
    text = format_emulator(m)
    with pytest.raises(FormatError):
        parse_emulator(text.replace("map: 0 0\n", ""))  # incomplete map
    with pytest.raises(FormatError):
        parse_emulator("arc: 0 1\n" + text)


def test_fixture_files_reparse_and_are_stable():
    files = build_fixtures()
    assert files == build_fixtures()
    for name, content in files.items():
        if name.endswith(".dfa"):
            parse_dfa(content)
        elif name.endswith(".emu"):
            parse_emulator(content)
        elif name.endswith(".wit"):
            w = parse_witness(content)
            assert verify_witness(w) == (True, None)


def test_multigraph_format_accepts_arcs_and_loops():
    mg = underlying_multigraph(zmod(3))
    text = format_multigraph(mg)
    assert parse_multigraph(text) == mg
