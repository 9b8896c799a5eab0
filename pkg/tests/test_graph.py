"""Graph invariants, the edge-list codec, induced deletion and canonical forms"""
import networkx as nx
import pytest
from hypothesis import given, settings

from factorkit.errors import CapExceededError, GraphFormatError, PreconditionError
from factorkit.generators import bowtie, complete, cycle, path
from factorkit.graph import (
    Graph,
    canonical_form,
    describe_set,
    from_canonical,
    induced_delete,
    iter_bits,
    members,
    parse_edge_list,
    read_edge_list,
    relabel,
    serialize_edge_list,
    vertex_set,
)
from tests.strategies import graphs, permuted, to_networkx


def test_vertex_set_helpers():
    assert vertex_set([0, 1, 3]) == 0b1011
    assert members(0b1011) == [0, 1, 3]
    assert list(iter_bits(0)) == []


def test_graph_rejects_broken_adjacency():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))  # not symmetric
    with pytest.raises(ValueError):
        Graph(2, (0b01, 0))  # self-loop
    with pytest.raises(ValueError):
        Graph(2, (0b100, 0))  # neighbor out of range
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


def test_basic_queries():
    g = bowtie()
    assert g.order == 5 and g.size == 6
    assert g.neighbors(2) == [0, 1, 3, 4]
    assert g.degree(0) == 2
    assert g.has_edge(3, 4) and not g.has_edge(0, 3)
    assert g.edges() == [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]
    assert complete(4).is_complete() and not g.is_complete()
    assert Graph.empty(1).is_complete()


def test_parse_edge_list_with_comments():
    g = parse_edge_list("# a path\nn 4\n\n0 1\n1 2  # middle\n2 3\n")
    assert g == path(4)


def test_serialize_format():
    assert serialize_edge_list(bowtie()) == "n 5\n0 1\n0 2\n1 2\n2 3\n2 4\n3 4"
    assert serialize_edge_list(Graph.empty(2)) == "n 2\n"


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("", 1, "missing header"),
        ("0 1\n", 1, "expected header"),
        ("n 3\n0 1\n1 1\n", 3, "self-loop"),
        ("n 3\n0 1\n1 0\n", 3, "duplicate edge"),
        ("n 3\n0 3\n", 2, "out of range"),
        ("n 3\n0 x\n", 2, "non-negative integer"),
        ("n 3\n0 1 2\n", 2, "expected '<u> <v>'"),
        ("n -2\n", 1, "non-negative integer"),
        ("n \u00b3\n", 1, "non-negative integer"),
        ("n 3\n0 \u0661\n", 2, "non-negative integer"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(GraphFormatError) as info:
        parse_edge_list(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")
    assert fragment in str(info.value)


@given(graphs(0, 8))
@settings(max_examples=100)
def test_parse_inverts_serialize(g):
    assert parse_edge_list(serialize_edge_list(g)) == g


def test_induced_delete_relabels_and_remembers():
    h = induced_delete(bowtie(), vertex_set([2]))
    assert h.order == 4
    assert h.edges() == [(0, 1), (2, 3)]
    assert h.labels == (0, 1, 3, 4)
    assert induced_delete(h, vertex_set([0])).labels == (1, 3, 4)
    with pytest.raises(PreconditionError):
        induced_delete(bowtie(), 1 << 5)


def test_canonical_form_separates_small_trees():
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert canonical_form(star) != canonical_form(path(4))
    assert canonical_form(Graph.empty(0)) == "0:"
    assert canonical_form(Graph.empty(1)) == "1:"


@given(permuted(1, 7))
@settings(max_examples=150)
def test_canonical_form_is_relabeling_invariant(case):
    g, perm = case
    assert canonical_form(relabel(g, perm)) == canonical_form(g)


@given(graphs(1, 6), graphs(1, 6))
@settings(max_examples=150)
def test_canonical_form_matches_networkx_isomorphism(g, h):
    same = canonical_form(g) == canonical_form(h)
    assert same == nx.is_isomorphic(to_networkx(g), to_networkx(h))


@given(graphs(1, 7))
@settings(max_examples=100)
def test_from_canonical_returns_representative(g):
    label = canonical_form(g)
    rebuilt = from_canonical(label)
    assert canonical_form(rebuilt) == label
    assert nx.is_isomorphic(to_networkx(rebuilt), to_networkx(g))


def test_canonical_form_cap():
    with pytest.raises(CapExceededError):
        canonical_form(cycle(11))


def test_relabel_needs_permutation():
    with pytest.raises(PreconditionError):
        relabel(path(3), [0, 0, 1])


def test_read_edge_list_from_file(tmp_path):
    target = tmp_path / "g.txt"
    target.write_text(serialize_edge_list(bowtie()) + "\n", encoding="utf-8")
    assert read_edge_list(target) == bowtie()


def test_read_edge_list_rejects_invalid_utf8(tmp_path):
    target = tmp_path / "g.txt"
    target.write_bytes(b"n 2\n\xff\n")
    with pytest.raises(GraphFormatError) as info:
        read_edge_list(target)
    assert info.value.line == 2
    assert str(info.value).startswith("line 2:")


def test_induced_delete_extremes():
    g = bowtie()
    assert induced_delete(g, 0) == g
    emptied = induced_delete(g, g.vertex_mask)
    assert emptied.order == 0 and emptied.size == 0


def test_cycle_minus_a_vertex_is_a_path():
    assert canonical_form(induced_delete(cycle(5), vertex_set([0]))) == canonical_form(path(4))


def test_describe_set():
    assert describe_set([0, 2, 3]) == "{0 2 3}"
    assert describe_set([]) == "{}"
    assert describe_set(None) == "{}"
