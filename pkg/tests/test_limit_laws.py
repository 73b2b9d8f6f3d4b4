import random
from fractions import Fraction as F
from itertools import product

import pytest

from epsclt.combinatorics import WordSpec
from epsclt.decorated import lex_limit_decoration
from epsclt.errors import DomainError
from epsclt.graphon import StepGraphon, constant_graphon, half_graphon
from epsclt.graphs import SimpleGraph, complete_graph, edgeless_graph, nonempty_subsets, path_graph
from epsclt.limit_laws import (
    LimitModel,
    NormalizationParams,
    S_limit_moment,
    S_limit_moments,
    classify_sJ,
    clt_L1_moment,
    h_independent_moment,
    lex_limit_moment,
    master_limit_moment,
    sum_variance,
    tensor2_reference_moment,
)

from oracles import catalan, crossing_count, double_factorial, pair_partitions

ZERO = constant_graphon(0)
TENSOR = LimitModel(complete_graph(2), ZERO, 1, 1)


def all_words(L, p):
    subsets = nonempty_subsets(L)
    for J in product(subsets, repeat=p):
        for alpha in product("1*", repeat=p):
            yield WordSpec(J, alpha)


def test_master_examples():
    q = F(1, 3)
    dec = lex_limit_decoration(complete_graph(1), constant_graphon(q))
    assert master_limit_moment(dec, WordSpec.uniform({1}, 3)) == 0
    assert master_limit_moment(dec, WordSpec.uniform({1}, 4)) == 2 + q
    dec2 = lex_limit_decoration(complete_graph(2), ZERO)
    assert master_limit_moment(dec2, WordSpec(({1}, {2}), "11")) == 0


def test_lex_examples():
    spec = WordSpec.uniform({1, 2}, 4)
    assert lex_limit_moment(TENSOR, spec) == 2
    assert lex_limit_moment((complete_graph(2), ZERO), spec) == 2
    m = (edgeless_graph(2), ZERO)
    assert lex_limit_moment(m, WordSpec(({1, 2}, {1, 2}), "11")) == 0
    assert lex_limit_moment(m, WordSpec(({1, 2}, {1, 2}), "1*")) == 1
    assert lex_limit_moment(m, WordSpec.uniform({1, 2}, 5)) == 0


GRAPHONS = {
    "zero": ZERO,
    "half": half_graphon(),
    "third": constant_graphon(F(1, 3)),
    "step": StepGraphon((0, F(1, 4), 1), ((1, F(1, 2)), (F(1, 2), 0))),
}


@pytest.mark.parametrize("wname", sorted(GRAPHONS))
@pytest.mark.parametrize("gL", [complete_graph(2), edgeless_graph(2), SimpleGraph(1, [])], ids=["K2", "E2", "K1"])
def test_master_equals_lex(gL, wname):
    w = GRAPHONS[wname]
    dec = lex_limit_decoration(gL, w)
    for p in (2, 4):
        for spec in all_words(gL.n, p):
            assert master_limit_moment(dec, spec) == lex_limit_moment((gL, w), spec)


def test_master_equals_lex_three_layers_sample():
    rng = random.Random(5)
    gL = path_graph(3)
    dec = lex_limit_decoration(gL, half_graphon())
    subsets = nonempty_subsets(3)
    for _ in range(120):
        J = [rng.choice(subsets) for _ in range(3)]
        word = J + J
        rng.shuffle(word)
        spec = WordSpec(word, [rng.choice("1*") for _ in range(6)])
        assert master_limit_moment(dec, spec) == lex_limit_moment((gL, half_graphon()), spec)


@pytest.mark.parametrize("gL", [complete_graph(2), edgeless_graph(2), path_graph(3)], ids=["K2", "E2", "P3"])
def test_h_independence_matches_lex(gL):
    ps = (2, 4, 6) if gL.n == 2 else (2, 4)
    for p in ps:
        for spec in all_words(gL.n, p):
            assert h_independent_moment(gL, spec) == lex_limit_moment((gL, ZERO), spec)


@pytest.mark.parametrize("lam,s2", [(1, 1), (0, 1), (2, 1), (1, 4), (1, F(1, 2))])
def test_tensor_triangle(lam, s2):
    model = LimitModel(complete_graph(2), ZERO, lam, s2)
    params = NormalizationParams(F(lam), F(s2))
    assert sum_variance(model) == params.delta2
    for p in range(1, 9):
        lex = S_limit_moment(model, p, normalize="unit_variance")
        assert lex == tensor2_reference_moment(params, p)
        if p <= 6:
            assert lex == S_limit_moment(model, p, normalize="unit_variance", route="h")
            assert lex == S_limit_moment(model, p, normalize="unit_variance", route="master")


def test_tensor_fourth_moment():
    assert S_limit_moment(TENSOR, 4, normalize="unit_variance") == F(20, 9)
    assert NormalizationParams(F(1), F(1)).alpha == F(2, 3)
    assert S_limit_moments(TENSOR, 8, normalize="unit_variance") == [
        0, 1, 0, F(20, 9), 0, F(59, 9), 0, F(1826, 81)
    ]


def test_tensor_reference_examples():
    assert [tensor2_reference_moment(0, p) for p in range(1, 9)] == [0, 1, 0, 2, 0, 5, 0, 14]
    for a in (0, F(1, 3), F(2, 3), 1):
        assert tensor2_reference_moment(a, 2) == 1
    assert tensor2_reference_moment(F(2, 3), 4) == F(20, 9)
    with pytest.raises(DomainError):
        tensor2_reference_moment(F(3, 2), 2)


@pytest.mark.parametrize("L", [1, 2, 3])
def test_zero_mean_collapses_to_semicircle(L):
    gL = complete_graph(L) if L != 3 else path_graph(3)
    model = LimitModel(gL, half_graphon(), 0, 2)
    full = frozenset(range(1, L + 1))
    for p in (2, 4, 6):
        raw = S_limit_moment(model, p)
        assert raw == F(2) ** (L * p // 2) * lex_limit_moment(model, WordSpec.uniform(full, p))
    model0 = LimitModel(complete_graph(L), ZERO, 0, 1)
    assert S_limit_moments(model0, 8, normalize="unit_variance") == [0, 1, 0, 2, 0, 5, 0, 14]


def test_zero_mean_without_clique_is_circular():
    model = LimitModel(path_graph(3), ZERO, 0, 1)
    assert S_limit_moment(model, 2) == 0
    assert S_limit_moment(model, 2, alpha="1*") == 1
    assert S_limit_moment(model, 4, alpha="1*1*") == 2
    assert S_limit_moment(model, 4, alpha="11**") == 1


def test_gaussian_for_complete_layers_and_full_graphon():
    model = LimitModel(complete_graph(2), constant_graphon(1), 1, 1)
    for p in (2, 4, 6):
        assert S_limit_moment(model, p, normalize="unit_variance") == double_factorial(p - 1)


def test_single_layer_matches_clt():
    for w in GRAPHONS.values():
        model = LimitModel(complete_graph(1), w, 0, 1)
        for p in (2, 4, 6):
            assert S_limit_moment(model, p) == clt_L1_moment(w, p)


def test_clt_examples():
    assert clt_L1_moment(constant_graphon(1), 6) == 15
    assert clt_L1_moment(constant_graphon(0), 6) == 5
    assert clt_L1_moment(constant_graphon(F(1, 2)), 6) == F(71, 8)
    assert clt_L1_moment(half_graphon(), 5) == 0


@pytest.mark.parametrize("p", [2, 4, 6, 8])
def test_clt_against_crossing_polynomial(p):
    q = F(2, 7)
    brute = sum(q ** crossing_count(pi) for pi in pair_partitions(list(range(1, p + 1))))
    assert clt_L1_moment(constant_graphon(q), p) == brute
    assert clt_L1_moment(constant_graphon(0), p) == catalan(p // 2)


def test_clt_step_graphon_route():
    # a two-cell graphon that is constant goes through the generic density route
    w = StepGraphon((0, F(1, 2), 1), ((F(1, 3),) * 2,) * 2)
    for p in (4, 6):
        assert clt_L1_moment(w, p) == clt_L1_moment(constant_graphon(F(1, 3)), p)


def test_classify_examples():
    assert classify_sJ(complete_graph(3), {1, 2, 3}) == "semicircle"
    assert classify_sJ(path_graph(3), {1, 3}) == "circular"
    assert classify_sJ(edgeless_graph(4), {2}) == "semicircle"
    with pytest.raises(DomainError):
        classify_sJ(path_graph(3), set())


def test_model_and_argument_errors():
    with pytest.raises(DomainError):
        LimitModel(complete_graph(2), ZERO, 1, 0)
    with pytest.raises(DomainError):
        S_limit_moment(TENSOR, 2, alpha="1")
    with pytest.raises(DomainError):
        S_limit_moment(TENSOR, 2, normalize="other")
    with pytest.raises(DomainError):
        S_limit_moment(TENSOR, 2, route="fast")
    with pytest.raises(DomainError):
        S_limit_moment(LimitModel(complete_graph(2), half_graphon(), 1, 1), 2, route="h")


def test_star_word_variance():
    # tau(S S*) equals the variance for any model
    for gL in (complete_graph(2), edgeless_graph(2), path_graph(3)):
        for w in (ZERO, half_graphon()):
            model = LimitModel(gL, w, F(1, 2), 2)
            assert S_limit_moment(model, 2, alpha="1*") == sum_variance(model)
            assert S_limit_moment(model, 2, alpha="1*", normalize="unit_variance") == 1


def test_float_parameters():
    model = LimitModel(complete_graph(2), ZERO, 1.0, 1.0)
    assert S_limit_moment(model, 4, normalize="unit_variance") == pytest.approx(20 / 9)
