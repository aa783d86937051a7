import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from oracles import chi_by_enumeration, proper_colorings
from recolor_lab.coloring import (
    Coloring,
    chromatic_number,
    coloring_array,
    coloring_with_colors,
    count_colorings,
    enumerate_colorings,
    extend_coloring,
    is_proper,
    movable,
    optimal_coloring,
)
from recolor_lab.errors import LengthMismatch, StateSpaceTooLarge
from recolor_lab.graph import complete_graph, cycle_graph, empty_graph, path_graph
from recolor_lab.verify import graphs_up_to


def test_coloring_validates_palette():
    with pytest.raises(ValueError):
        Coloring((1, 4), 3)
    c = Coloring((1, 2, 1), 3)
    assert c.recolor(1, 3).assignment == (1, 3, 1)
    assert c.used() == {1, 2}


def test_is_proper_length_mismatch():
    with pytest.raises(LengthMismatch):
        is_proper(path_graph(3), (1, 2))
    assert is_proper(path_graph(3), (1, 2, 1))
    assert not is_proper(path_graph(3), (1, 1, 2))


def test_known_chromatic_numbers():
    assert chromatic_number(empty_graph(0)) == 0
    assert chromatic_number(empty_graph(4)) == 1
    assert chromatic_number(cycle_graph(5)) == 3
    assert chromatic_number(cycle_graph(6)) == 2
    assert chromatic_number(complete_graph(5)) == 5


def test_chromatic_number_matches_enumeration_up_to_six_vertices():
    for g in graphs_up_to(6):
        assert chromatic_number(g) == chi_by_enumeration(g)


@given(graphs(max_n=9))
def test_optimal_coloring_is_proper_and_optimal(g):
    c = optimal_coloring(g)
    assert is_proper(g, c)
    assert len(c.used()) == chromatic_number(g)


@given(graphs(max_n=6), st.integers(1, 4))
def test_enumeration_matches_brute_force(g, k):
    got = [c.assignment for c in enumerate_colorings(g, k)]
    assert got == list(proper_colorings(g, k))
    assert count_colorings(g, k) == len(got)
    arr = coloring_array(g, k)
    assert [tuple(int(x) for x in row) for row in arr] == got


@pytest.mark.parametrize("n", range(3, 9))
@pytest.mark.parametrize("k", range(1, 5))
def test_count_matches_chromatic_polynomials(n, k):
    assert count_colorings(cycle_graph(n), k) == (k - 1) ** n + (-1) ** n * (k - 1)
    assert count_colorings(path_graph(n), k) == k * (k - 1) ** (n - 1)
    assert count_colorings(complete_graph(n), k) == (math.perm(k, n) if k >= n else 0)


def test_coloring_array_guard():
    with pytest.raises(StateSpaceTooLarge):
        coloring_array(empty_graph(6), 3, max_rows=100)
    assert coloring_array(empty_graph(0), 3).shape == (1, 0)
    assert coloring_array(complete_graph(3), 2).shape == (0, 3)


def test_movable_and_palette_recoloring():
    g = path_graph(3)
    assert movable(g, (1, 2, 1), 1, 3) == [3]
    assert movable(g, (1, 2, 3), 0, 3) == [3]
    cols = coloring_with_colors(cycle_graph(5), [2, 5, 7])
    assert set(cols.values()) == {2, 5, 7}
    assert is_proper(cycle_graph(5), [cols[v] for v in range(5)])


@given(graphs(max_n=7), st.data())
def test_extend_coloring_keeps_fixed_part(g, data):
    k = chromatic_number(g) + 1
    base = optimal_coloring(g).assignment
    mask = data.draw(st.lists(st.booleans(), min_size=g.n, max_size=g.n))
    partial = [c if keep else None for c, keep in zip(base, mask)]
    ext = extend_coloring(g, partial, k)
    assert ext is not None and is_proper(g, ext)
    assert all(p is None or ext[v] == p for v, p in enumerate(partial))


def test_extend_coloring_detects_impossible():
    assert extend_coloring(complete_graph(3), [1, 2, None], 2) is None
    assert extend_coloring(path_graph(2), [1, 1], 2) is None
    with pytest.raises(LengthMismatch):
        extend_coloring(path_graph(2), [1], 2)


def test_count_agrees_with_array_on_a_larger_graph():
    g = cycle_graph(10)
    assert count_colorings(g, 3) == coloring_array(g, 3).shape[0] == 2 ** 10 + 2
    assert np.all(np.diff(coloring_array(path_graph(4), 3).astype(int) @ (3 ** np.arange(3, -1, -1))) > 0)
