import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from epsclt.errors import DomainError
from epsclt.graphon import (
    StepGraphon,
    blowup_graph,
    cell_sum,
    constant_graphon,
    graphon_from_graph,
    half_graphon,
    rho_graph,
    rho_graphon,
)
from epsclt.graphs import SimpleGraph, complete_graph, edgeless_graph, make_graph

EDGE = SimpleGraph(2, [(1, 2)])
TRIANGLE = complete_graph(3)


def random_graph(rng, n, p=0.5):
    return SimpleGraph(n, [e for e in combinations(range(1, n + 1), 2) if rng.random() < p])


def random_step_graphon(rng, m):
    cuts = sorted(rng.sample(range(1, 12), m - 1))
    breaks = [F(0)] + [F(c, 12) for c in cuts] + [F(1)]
    vals = [[None] * m for _ in range(m)]
    for a in range(m):
        for b in range(a, m):
            vals[a][b] = vals[b][a] = F(rng.randint(0, 4), 4)
    return StepGraphon(breaks, vals)


def test_graphon_from_graph_examples():
    w = graphon_from_graph(complete_graph(2))
    assert w.breaks == (0, F(1, 2), 1) and w.values == ((0, 1), (1, 0))
    assert all(v == 0 for row in graphon_from_graph(edgeless_graph(4)).values for v in row)
    w = graphon_from_graph(make_graph("explicit", 3, [(2, 3), (1, 3)]))
    assert w.values == ((0, 0, 1), (0, 0, 1), (1, 1, 0))


def test_constant_graphon():
    assert constant_graphon(1).values == ((1,),)
    assert constant_graphon(0).values == ((0,),)
    assert constant_graphon(F(1, 2)).values == ((F(1, 2),),)
    with pytest.raises(DomainError):
        constant_graphon(2)


def test_validation():
    with pytest.raises(DomainError):
        StepGraphon((0, F(1, 2), 1), ((0, 1), (0, 0)))
    with pytest.raises(DomainError):
        StepGraphon((0, 1), ((F(3, 2),),))
    with pytest.raises(DomainError):
        StepGraphon((0, F(1, 2), F(1, 2), 1), ((0,) * 3,) * 3)
    with pytest.raises(TypeError):
        StepGraphon((0, 1), ((0.3,),))
    assert StepGraphon((0, 1), ((0.3,),), exact=False).values == ((0.3,),)


def test_evaluation():
    w = half_graphon()
    assert w(0.1, 0.9) == 1 and w(0.1, 0.2) == 0 and w(1, 0) == 1


def test_rho_graph_examples():
    assert rho_graph(EDGE, complete_graph(3)) == F(2, 3)
    assert rho_graph(EDGE, edgeless_graph(4)) == 0
    assert rho_graph(TRIANGLE, complete_graph(3)) == F(2, 9)


def test_rho_graphon_examples():
    assert rho_graphon(EDGE, constant_graphon(F(1, 3))) == F(1, 3)
    assert rho_graphon(EDGE, half_graphon()) == F(1, 2)
    assert rho_graphon(edgeless_graph(3), half_graphon()) == 1


def test_rho_graphon_float_mode():
    w = StepGraphon((0, 0.5, 1), ((0.2, 0.4), (0.4, 1.0)), exact=False)
    assert rho_graphon(EDGE, w) == pytest.approx(0.25 * (0.2 + 0.8 + 1.0))


def test_graph_step_graphon_matches_graph_density():
    # the diagonal cells of the step graphon are 0, exactly as loops are absent
    rng = random.Random(11)
    for _ in range(25):
        f = random_graph(rng, rng.randint(1, 4))
        g = random_graph(rng, rng.randint(1, 5))
        a, b = rho_graphon(f, graphon_from_graph(g)), rho_graph(f, g)
        assert a == b
        assert abs(a - b) <= F(len(f.edges) * f.n ** 2, g.n)


def test_zero_graphon_and_monotonicity():
    rng = random.Random(5)
    for _ in range(20):
        f = random_graph(rng, rng.randint(2, 4), 0.7)
        if not f.edges:
            continue
        assert rho_graphon(f, constant_graphon(0)) == 0
        w = random_step_graphon(rng, 3)
        bigger = StepGraphon(w.breaks, [[min(1, v + F(1, 4)) for v in row] for row in w.values])
        assert rho_graphon(f, w) <= rho_graphon(f, bigger)


def test_disjoint_union_is_multiplicative():
    rng = random.Random(9)
    for _ in range(10):
        f1, f2 = random_graph(rng, 3), random_graph(rng, 2)
        union = SimpleGraph(5, list(f1.edges) + [(u + 3, v + 3) for u, v in f2.edges])
        w = random_step_graphon(rng, 3)
        assert rho_graphon(union, w) == rho_graphon(f1, w) * rho_graphon(f2, w)


def test_cell_sum_direct():
    # path on three vertices against a 2-cell graphon, by hand
    w = StepGraphon((0, F(1, 3), 1), ((1, F(1, 2)), (F(1, 2), 0)))
    path = SimpleGraph(3, [(1, 2), (2, 3)])
    widths = w.widths
    expected = sum(
        widths[a] * widths[b] * widths[c] * w.values[a][b] * w.values[b][c]
        for a in range(2) for b in range(2) for c in range(2)
    )
    assert rho_graphon(path, w) == expected
    with pytest.raises(DomainError):
        cell_sum(1, [(0, 0)], [w.values], widths)


def test_blowup_converges():
    w = half_graphon()
    g = blowup_graph(w, 4)
    assert g.sorted_edges() == [(1, 3), (1, 4), (2, 3), (2, 4)]
    diffs = [abs(rho_graph(EDGE, blowup_graph(w, n)) - F(1, 2)) for n in (3, 5, 9)]
    assert diffs == sorted(diffs, reverse=True)
    with pytest.raises(DomainError):
        blowup_graph(constant_graphon(F(1, 2)), 3)
