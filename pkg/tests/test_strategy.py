import random
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from oracles import from_nx
from palace.characterize import is_solvable, reduce
from palace.engine import min_days_exact, verify_strategy
from palace.generate import (figure2_palace, forbidden_tree, path_palace, random_tree,
                             spider_palace, star_palace)
from palace.graph import Palace, longest_path
from palace.strategy import (PreconditionError, Unsolvable, is_linear_search, is_linear_strategy,
                             linear_search, linear_strategy, longest_paths, lower_bound,
                             optimal_length, prince_parities, vertex_partition)


def solvable_trees(max_n):
    for n in range(3, max_n + 1):
        for t in nx.nonisomorphic_trees(n):
            g = from_nx(t)
            if is_solvable(g).solvable:
                yield g


def test_linear_search_examples():
    assert linear_search(figure2_palace()).probes == (
        "1", "2", "2a", "2", "3", "3a", "3", "4", "5", "5a", "5", "5a'", "5", "6")
    assert linear_search(path_palace(5)).probes == ("1", "2", "3")
    assert linear_search(spider_palace((2, 2, 2))).probes == ("a1", "x", "a3", "x", "a2")


def test_linear_search_length_formula():
    for g in solvable_trees(10):
        p = longest_path(g)
        off = {v for v in g.vertices if v not in p.path and g.degree(v) > 1}
        assert len(linear_search(g, p)) == p.length - 1 + 2 * len(off)
        assert is_linear_search(g, linear_search(g, p).probes, p.path)


def test_linear_strategy_examples():
    p17 = linear_strategy(path_palace(17))
    assert p17.days == 30
    assert p17.probes == tuple(str(i) for i in range(1, 16)) + tuple(str(i) for i in range(15, 0, -1))
    assert linear_strategy(path_palace(5)).probes == ("1", "2", "3", "3", "2", "1")
    assert linear_strategy(path_palace(3)).probes == ("1", "1")
    assert len(linear_strategy(figure2_palace())) == 28


def test_unsolvable_inputs():
    with pytest.raises(Unsolvable):
        linear_strategy(forbidden_tree())
    with pytest.raises(Unsolvable):
        optimal_length(forbidden_tree())


def test_optimal_length_examples():
    assert optimal_length(path_palace(17)) == 30
    assert optimal_length(path_palace(1)) == 1
    assert optimal_length(path_palace(2)) == 2
    assert optimal_length(figure2_palace()) == 28


def test_strategy_properties_on_all_small_trees():
    for g in solvable_trees(11):
        s = linear_strategy(g)
        assert verify_strategy(g, s).caught
        assert len(s) == optimal_length(g) == 2 * reduce(g).m - 4
        same = [i for i, (a, b) in enumerate(zip(s, s.probes[1:])) if a == b]
        assert len(same) == 1
        assert all(a == b or b in g.adjacency[a] for a, b in zip(s, s.probes[1:]))
        assert not set(s.probes) & set(g.leaves())
        assert prince_parities(g, s) == {0, 1}
        assert is_linear_strategy(g, s)


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 40), st.integers(0, 10**6))
def test_strategy_on_random_trees(n, seed):
    g = random_tree(n, seed)
    if not is_solvable(g).solvable:
        with pytest.raises(Unsolvable):
            linear_strategy(g)
        return
    s = linear_strategy(g)
    assert len(s) == optimal_length(g)
    assert verify_strategy(g, s).caught


def test_visit_counts_in_reduced_trees():
    for g in solvable_trees(11):
        h = reduce(g).result
        if len(h) <= 4:
            continue
        part = vertex_partition(h)
        counts = Counter(linear_strategy(h).probes)
        assert all(counts[v] == 0 for v in part.B)
        assert all(counts[v] == 2 for v in part.A)
        assert all(counts[v] == 2 * (h.degree(v) - 1) for v in part.Q)


def test_partition_examples():
    part = vertex_partition(spider_palace((2, 2, 2)))
    assert part.A == {"a1", "a2", "a3"} and part.B == {"b1", "b2", "b3"} and part.Q == {"x"}
    part = vertex_partition(path_palace(6))
    assert (part.A, part.B, part.Q) == ({"1", "4"}, {"0", "5"}, {"2", "3"})
    part = vertex_partition(path_palace(5))
    assert (part.A, part.B, part.Q) == ({"1", "3"}, {"0", "4"}, {"2"})


def test_lower_bound_examples():
    assert lower_bound(spider_palace((2, 2, 2))) == 10
    assert lower_bound(path_palace(6)) == 8
    assert lower_bound(path_palace(17)) == 30


def test_partition_preconditions():
    with pytest.raises(PreconditionError):
        vertex_partition(path_palace(4))
    with pytest.raises(PreconditionError):
        vertex_partition(Palace.from_edges([("c", "1"), ("c", "2"), ("c", "3"),
                                            ("3", "4"), ("4", "5")]))
    with pytest.raises(Unsolvable):
        vertex_partition(forbidden_tree())


def test_partition_invariants_and_identity():
    for g in solvable_trees(12):
        h = reduce(g).result
        m = len(h)
        if m <= 4:
            continue
        part = vertex_partition(h)
        assert part.A | part.B | part.Q == set(h.vertices)
        assert len(part.A) + len(part.B) + len(part.Q) == m
        assert len(part.A) == len(part.B)
        assert all(h.degree(a) == 2 for a in part.A)
        assert not any(b in h.adjacency[a] for a in part.A for b in part.A)
        assert sum(h.degree(v) for v in part.Q) == 2 * (m - 1) - 3 * len(part.A)
        assert lower_bound(h) == 2 * m - 4


def test_longest_paths_lists_every_diameter():
    g = spider_palace((2, 2, 2))
    assert len(longest_paths(g)) == 6
    assert all(len(p) == 5 for p in longest_paths(g))


def test_linear_strategy_recognizer_rejects_non_linear():
    g = path_palace(5)
    assert is_linear_strategy(g, ["1", "2", "3", "3", "2", "1"])
    # restarting from the same end also flips parity, so this counts
    assert is_linear_strategy(g, ["1", "2", "3", "1", "2", "3"])
    assert not is_linear_strategy(g, ["1", "2", "3", "2", "1", "2"])
    assert not is_linear_strategy(g, ["2", "1", "3", "3", "2", "1"])
