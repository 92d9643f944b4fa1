
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gccm import (approx_pipeline, gen_counterexample, greedy, group_farness,
                  local_search_swap, reduce_graph)

from oracles import connected_graphs, farness_oracle, floyd_warshall, min_farness_oracle, random_corpus


def greedy_trace_oracle(D, k):
    """Plain greedy straight from the distance matrix, lowest id on ties."""
    S = []
    for _ in range(k):
        best = min((v for v in range(len(D)) if v not in S),
                   key=lambda v: (farness_oracle(D, S + [v]), v))
        S.append(best)
    return sorted(S), farness_oracle(D, S)


def test_greedy_k1_path(p5):
    res = greedy(p5, 1)
    assert res.set == [2] and res.farness == 6


def test_greedy_counterexample_r2():
    g, lm = gen_counterexample(2, 2)
    res = greedy(g, 2)
    assert res.set == sorted([lm["c"], lm["e"][0]]) and res.farness == 13
    assert greedy(g, 1).set == [lm["c"]]


def test_greedy_star(star5):
    res = greedy(star5, 2)
    assert res.set[0] == 0 and res.farness == 4


def test_greedy_rejects_large_k(p5):
    with pytest.raises(ValueError):
        greedy(p5, 6)


@settings(max_examples=60, deadline=None)
@given(g=connected_graphs(min_n=2, max_n=16), k=st.integers(1, 4))
def test_lazy_matches_plain_and_trace(g, k):
    k = min(k, g.n)
    lazy, plain = greedy(g, k, lazy=True), greedy(g, k, lazy=False)
    assert lazy.set == plain.set and lazy.farness == plain.farness
    assert (lazy.set, lazy.farness) == greedy_trace_oracle(floyd_warshall(g), k)
    assert lazy.evaluations <= plain.evaluations


def test_local_search_counterexample():
    g, lm = gen_counterexample(2, 2)
    res = local_search_swap(g, 2, [lm["c"], lm["e"][0]])
    assert res.farness == 9 and res.set == sorted(lm["e"]) and res.swaps == 1


def test_local_search_keeps_optimum(p5):
    res = local_search_swap(p5, 2, [1, 3])
    assert res.set == [1, 3] and res.swaps == 0 and res.farness == 3


def test_local_search_requires_k(p5):
    with pytest.raises(ValueError):
        local_search_swap(p5, 2, [1])
    with pytest.raises(ValueError):
        local_search_swap(p5, 2, [1, 1])


@pytest.mark.parametrize("g,k", random_corpus(30, (6, 14), seed=21))
def test_local_search_fixpoint_and_ratio(g, k):
    D = floyd_warshall(g)
    opt = min_farness_oracle(D, k)
    for space in (None, reduce_graph(g, k).centers(g.n)):
        start = greedy(g, k, candidates=space).set
        res = local_search_swap(g, k, start, space)
        assert res.farness == group_farness(g, res.set)
        assert res.farness <= 5 * opt
        cand = range(g.n) if space is None else space
        for s in res.set:
            for o in cand:
                if o not in res.set:
                    T = [x for x in res.set if x != s] + [o]
                    assert farness_oracle(D, T) >= res.farness


def test_approx_pipeline_examples(p5):
    g, _ = gen_counterexample(2, 2)
    assert approx_pipeline(g, 2, reduce_graph(g, 2)).farness == 9
    assert approx_pipeline(p5, 1, reduce_graph(p5, 1)).farness == 6
    assert approx_pipeline(p5, 5, reduce_graph(p5, 5)).farness == 0


def test_approx_pipeline_deterministic():
    g, _ = gen_counterexample(3, 3)
    r = reduce_graph(g, 3)
    assert approx_pipeline(g, 3, r) == approx_pipeline(g, 3, r)
