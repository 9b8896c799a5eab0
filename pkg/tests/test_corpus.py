"""Corpora, exhaustive connected classes and graph profiles"""
import networkx as nx
import pytest

from factorkit.corpus import (
    CorpusSpec,
    connected_graphs,
    corpus_items,
    derive_seed,
    exhaustive_items,
    profile_graph,
    profile_large,
    profile_many,
)
from factorkit.errors import CapExceededError, InvalidSpecError
from factorkit.generators import bowtie, complete, cycle, disjoint_union, hm
from factorkit.graph import canonical_form
from factorkit.rational import INFINITY, Rational
from tests.strategies import to_networkx


def test_connected_class_counts():
    classes = connected_graphs(6)
    assert [len(classes[n]) for n in range(1, 7)] == [1, 1, 2, 6, 21, 112]


def test_connected_classes_match_the_atlas():
    classes = connected_graphs(5)
    atlas = [g for g in nx.graph_atlas_g() if 1 <= g.number_of_nodes() <= 5 and nx.is_connected(g)]
    assert sum(len(v) for v in classes.values()) == len(atlas)
    for g in classes[5]:
        assert nx.is_connected(to_networkx(g))


@pytest.mark.slow
def test_connected_classes_of_order_7():
    assert len(connected_graphs(7)[7]) == 853


def test_connected_graphs_cap():
    with pytest.raises(CapExceededError):
        connected_graphs(11)


def test_corpus_is_deterministic():
    spec = CorpusSpec(sizes=(5, 6), count=4, seed=11)
    first = corpus_items(spec)
    again = corpus_items(spec)
    assert [g for g, _, _ in first] == [g for g, _, _ in again]
    assert [p for _, _, p in first] == [0.3, 0.4, 0.5, 0.6] * 2
    assert derive_seed(11, 5, 0) != derive_seed(11, 5, 1)
    assert derive_seed(11, 5, 0) != derive_seed(11, 6, 0)
    assert derive_seed(11, 5, 0) == derive_seed(11, 5, 0)


def test_deterministic_families_give_one_graph_per_size():
    specs = CorpusSpec(sizes=(3, 4, 5), family="complete").generator_specs()
    assert [s.describe() for s in specs] == ["complete(3)", "complete(4)", "complete(5)"]
    cacti = CorpusSpec(sizes=(2,), count=3, family="cactus").generator_specs()
    assert [s.blocks for s in cacti] == [2, 2, 2]


@pytest.mark.parametrize(
    "spec",
    [
        CorpusSpec(family="wheel"),
        CorpusSpec(sizes=()),
        CorpusSpec(sizes=(0, 3)),
        CorpusSpec(count=-1),
        CorpusSpec(probabilities=(0.5, 1.2)),
    ],
)
def test_invalid_corpus_rejected(spec):
    with pytest.raises(InvalidSpecError):
        spec.generator_specs()


def test_profile_of_the_bowtie():
    p = profile_graph(bowtie(), "bowtie")
    assert (p.t, p.i, p.iprime, p.bind) == (Rational(1, 2), Rational(3, 2), Rational(3), Rational(4, 3))
    assert p.cp_exists is False and p.factor5 is False
    assert p.cp_violation == []
    assert p.ft_exists is True and p.factor3 is True
    assert p.problems == ()
    assert p.canonical == canonical_form(bowtie())


def test_profile_of_complete_and_trivial_graphs():
    p = profile_graph(complete(5), "K5")
    assert p.complete and p.t == INFINITY and p.cp_exists and p.factor5
    single = profile_graph(complete(1), "K1")
    assert not single.has_parameters
    assert single.cp_exists is False and single.factor3 is False


def test_profiles_with_one_isolated_vertex():
    small = profile_graph(disjoint_union(complete(1), complete(4)), "K1+K4")
    assert small.isolated == 1
    assert small.i == Rational(3, 2)
    assert small.ft_exists is False and small.factor3 is False
    big = profile_graph(disjoint_union(complete(1), complete(7)), "K1+K7")
    assert big.isolated == 1
    assert (big.t, big.i, big.iprime, big.bind) == (Rational(0), Rational(3), Rational(6), Rational(0))
    assert big.cp_exists is False and big.cp_violation == []
    assert big.problems == ()
    assert profile_graph(bowtie(), "bowtie").isolated == 0


def test_profile_skips_above_cap():
    p = profile_graph(cycle(8), "C8", cap=6)
    assert p.skipped is not None and "exceeds cap 6" in p.skipped
    assert not p.has_parameters


def test_exhaustive_profiles_have_no_problems():
    profiles = profile_many(exhaustive_items(5), cap=26, jobs=1)
    assert len(profiles) == 1 + 2 + 6 + 21
    assert all(p.problems == () for p in profiles)
    assert all(p.cp_exists == p.factor5 and p.ft_exists == p.factor3 for p in profiles)


def test_profile_large_within_budget():
    p = profile_large(hm(3), "hm(3)", cap=26, budget=600)
    assert p.skipped is None
    assert p.iprime == Rational(4) and p.cp_exists is False


def test_profile_large_budget_covers_each_stage():
    early = profile_large(hm(3), "hm(3)", cap=26, budget=0)
    assert early.iprime is None and "I'" in early.skipped
    # complete graphs skip the I' enumeration and stop in the factor criterion
    late = profile_large(complete(16), "K16", cap=26, budget=0)
    assert late.iprime == INFINITY and late.cp_exists is None
    assert "factor criterion" in late.skipped


def test_profile_large_cap():
    p = profile_large(complete(16), "K16", cap=10, budget=600)
    assert p.skipped is not None and "exceeds cap 10" in p.skipped
