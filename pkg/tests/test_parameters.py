"""Toughness, isolated toughness, its variant and binding number"""
import time
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings

from factorkit.config import EnumerationConfig
from factorkit.errors import BudgetExceededError, CapExceededError, PreconditionError
from factorkit.generators import bowtie, complete, cycle, gm, hm, path
from factorkit.graph import Graph, vertex_set
from factorkit.parameters import (
    Parameter,
    binding_number,
    compute,
    compute_all,
    isolated_toughness,
    isolated_toughness_variant,
    masks_of_size,
    ratio_at,
    toughness,
)
from factorkit.rational import INFINITY, Rational
from tests.strategies import delete, graphs, to_networkx

UNPRUNED = EnumerationConfig(prune=False)


def brute_force(g: Graph, parameter: Parameter) -> Rational:
    """Minimum of the defining ratio straight from networkx, no pruning, no tie-break"""
    h = to_networkx(g)
    best = None
    for s in range(1 << g.order):
        k = bin(s).count("1")
        rest = delete(h, s)
        iso = sum(1 for v in rest.nodes if rest.degree(v) == 0)
        value = None
        if parameter is Parameter.TOUGHNESS and nx.number_connected_components(rest) >= 2:
            value = Fraction(k, nx.number_connected_components(rest))
        elif parameter is Parameter.ISOLATED_TOUGHNESS and iso >= 2:
            value = Fraction(k, iso)
        elif parameter is Parameter.ISOLATED_TOUGHNESS_VARIANT and iso >= 2:
            value = Fraction(k, iso - 1)
        elif parameter is Parameter.BINDING_NUMBER and s:
            nb = set().union(*(set(h[v]) for v in range(g.order) if s >> v & 1))
            if len(nb) < g.order:
                value = Fraction(len(nb), k)
        if value is not None and (best is None or value < best):
            best = value
    return INFINITY if best is None else Rational.of(best)


def test_masks_of_size_in_ascending_order():
    assert list(masks_of_size(4, 2)) == [0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]
    assert list(masks_of_size(3, 0)) == [0]
    assert list(masks_of_size(2, 3)) == []


def test_bowtie_values():
    g = bowtie()
    t = toughness(g)
    assert (t.value, t.witness_vertices) == (Rational(1, 2), [2])
    assert isolated_toughness(g).value == Rational(3, 2)
    variant = isolated_toughness_variant(g)
    assert (variant.value, variant.witness_vertices) == (Rational(3), [0, 2, 3])
    assert binding_number(g).value == Rational(4, 3)


def test_tie_break_prefers_smaller_encoding():
    # {0, 2} and {1, 2} both isolate two vertices of P4
    result = isolated_toughness(path(4))
    assert result.value == 1
    assert result.witness == vertex_set([0, 2])


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_gm_toughness(m):
    result = toughness(gm(m))
    assert result.value == Rational(m - 1, m)
    assert result.witness_vertices == list(range(m - 1))


def test_hm_values():
    result = isolated_toughness(hm(3))
    assert result.value == Rational(8, 3)
    assert result.witness_vertices == [0, 1, 2, 3, 5, 6, 8, 9]
    assert binding_number(hm(3)).value == Rational(4, 3)
    assert isolated_toughness_variant(hm(2)).value == 5
    assert isolated_toughness_variant(hm(3)).value == 4


@pytest.mark.slow
def test_hm_variant_at_larger_m():
    assert isolated_toughness_variant(hm(4)).value == Rational(11, 3)
    assert isolated_toughness_variant(hm(5)).value == Rational(7, 2)
    assert isolated_toughness(hm(4)).value == Rational(11, 4)
    assert binding_number(hm(4)).value == Rational(4, 3)


def test_complete_graph_conventions():
    g = complete(6)
    for result in (toughness(g), isolated_toughness(g), isolated_toughness_variant(g)):
        assert result.value == INFINITY
        assert result.witness == 0
    assert binding_number(complete(4)).value == 3


def test_preconditions():
    with pytest.raises(PreconditionError):
        toughness(Graph.empty(1))
    with pytest.raises(CapExceededError):
        toughness(cycle(6), EnumerationConfig(cap=5))


def test_compute_dispatch():
    assert compute(bowtie(), "iprime").value == 3
    assert compute(bowtie(), Parameter.BINDING_NUMBER).parameter is Parameter.BINDING_NUMBER
    assert set(compute_all(path(4))) == set(Parameter)


def test_result_to_dict():
    assert toughness(bowtie()).to_dict() == {"parameter": "toughness", "value": "1/2", "witness": [2]}


def test_ratio_at_side_conditions():
    g = bowtie()
    assert ratio_at(g, Parameter.TOUGHNESS, 0) is None
    assert ratio_at(g, Parameter.TOUGHNESS, vertex_set([2])) == Rational(1, 2)
    assert ratio_at(g, Parameter.BINDING_NUMBER, 0) is None
    assert ratio_at(g, Parameter.BINDING_NUMBER, vertex_set([0, 2])) is None
    assert ratio_at(g, Parameter.BINDING_NUMBER, vertex_set([2])) == 4


@given(graphs(2, 6))
@settings(max_examples=60, deadline=None)
def test_values_match_brute_force(g):
    for parameter, result in compute_all(g).items():
        assert result.value == brute_force(g, parameter)


@given(graphs(2, 7))
@settings(max_examples=60, deadline=None)
def test_pruning_never_changes_the_answer(g):
    assert compute_all(g) == compute_all(g, UNPRUNED)


@given(graphs(2, 7))
@settings(max_examples=80, deadline=None)
def test_witness_reproduces_value(g):
    for parameter, result in compute_all(g).items():
        if not result.value.is_infinite:
            assert ratio_at(g, parameter, result.witness) == result.value


@given(graphs(2, 7))
@settings(max_examples=80, deadline=None)
def test_inequality_chain(g):
    if g.is_complete():
        return
    values = {p: r.value for p, r in compute_all(g).items()}
    t, i, iprime, bind = (values[p] for p in Parameter)
    assert t <= i <= iprime
    assert i < iprime or iprime == 0
    assert bind <= i
    assert t.as_fraction() >= bind.as_fraction() - 1


@pytest.mark.slow
def test_parallel_matches_sequential():
    g = hm(3)
    config = EnumerationConfig(jobs=2)
    assert compute_all(g, config) == compute_all(g)


def test_deadline_stops_the_search():
    expired = EnumerationConfig(deadline=time.monotonic())
    with pytest.raises(BudgetExceededError, match="toughness"):
        toughness(hm(3), expired)
    with pytest.raises(BudgetExceededError):
        isolated_toughness_variant(hm(3), EnumerationConfig(deadline=time.monotonic(), prune=False))
    assert binding_number(hm(3), EnumerationConfig(deadline=time.monotonic() + 600)).value == Rational(4, 3)
