"""End-to-end acceptance checks, one test per criterion.

Each test records its outcome and runtime; ``conftest.py`` prints a single
PASS/FAIL line per criterion in the terminal summary.  Run this file with
``pytest tests/test_acceptance.py -v``.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction as F
from itertools import combinations, permutations, product

from epsclt.combinatorics import WordSpec, enumerate_partitions, kernel, pair_partitions_below
from epsclt.cumulants import ScalarLaw, epsilon_moment
from epsclt.decorated import compressed_grid, decorated_intersection_graph, hom_variants, rho_inj_product_formula
from epsclt.finite_n import Sn_full_moment, Sn_product_moment, pairing_conditions, rho_n, theta_is_noncrossing
from epsclt.graphon import constant_graphon
from epsclt.graphs import (
    GridGraph,
    LexicographicFamily,
    SimpleGraph,
    complete_graph,
    edgeless_graph,
    nonempty_subsets,
    path_graph,
)
from epsclt.limit_laws import (
    LimitModel,
    NormalizationParams,
    S_limit_moment,
    clt_L1_moment,
    h_independent_moment,
    lex_limit_moment,
    tensor2_reference_moment,
)

from oracles import catalan, crossing_count, double_factorial, pair_partitions

RESULTS = {}


@contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        RESULTS[number] = f"[{status}] {number:2d}. {title} ({elapsed:.2f}s, limit {limit}s)"


def random_grid(rng, n, L, density):
    verts = [(k, l) for k in range(1, n + 1) for l in range(1, L + 1)]
    edges = [(u, v) for a, u in enumerate(verts) for v in verts[a + 1:] if rng.random() < density]
    return GridGraph(n, L, edges)


def test_01_classical_clt():
    with criterion(1, "classical CLT: (2p-1)!! from the full graphon", 1):
        w = constant_graphon(1)
        got = [clt_L1_moment(w, 2 * p) for p in range(1, 7)]
        assert got == [1, 3, 15, 105, 945, 10395]
        assert got == [double_factorial(2 * p - 1) for p in range(1, 7)]


def test_02_free_clt():
    with criterion(2, "free CLT: Catalan numbers from the zero graphon", 1):
        got = [clt_L1_moment(constant_graphon(0), 2 * p) for p in range(1, 7)]
        assert got == [1, 2, 5, 14, 42, 132]
        assert got == [catalan(p) for p in range(1, 7)]


def test_03_q_gaussian():
    with criterion(3, "q-Gaussian crossing polynomial", 1):
        six = list(pair_partitions(list(range(1, 7))))
        for q in (F(0), F(1, 4), F(1, 2), F(3, 4), F(1)):
            brute = sum(q ** crossing_count(pi) for pi in six)
            assert brute == 5 + 6 * q + 3 * q ** 2 + q ** 3
            assert clt_L1_moment(constant_graphon(q), 6) == brute


def test_04_tensor_triangle():
    with criterion(4, "L=2 tensor law: three routes agree for p <= 8", 10):
        for lam, sigma in ((1, 1), (2, 1), (1, 2), (0, 1)):
            model = LimitModel(complete_graph(2), constant_graphon(0), lam, sigma ** 2)
            params = NormalizationParams(F(lam), F(sigma ** 2))
            J12 = frozenset({1, 2})
            for p in range(1, 9):
                master = S_limit_moment(model, p, normalize="unit_variance", route="master")
                lex = S_limit_moment(model, p, normalize="unit_variance", route="lex")
                ref = tensor2_reference_moment(params, p)
                assert master == lex == ref, (lam, sigma, p)
            # s_{12} on its own is a semicircle
            for p in (2, 4, 6):
                spec = WordSpec.uniform(J12, p)
                assert lex_limit_moment(model, spec) == catalan(p // 2)
        tensor = LimitModel(complete_graph(2), constant_graphon(0), 1, 1)
        a = NormalizationParams(F(1), F(1)).alpha
        assert a == F(2, 3)
        assert S_limit_moment(tensor, 4, normalize="unit_variance") == F(20, 9) == 2 + a ** 2 / 2


def test_05_zero_mean_semicircle():
    with criterion(5, "zero mean collapses to the semicircle", 10):
        for L in (2, 3):
            model = LimitModel(complete_graph(L), constant_graphon(0), 0, 1)
            got = [S_limit_moment(model, p, normalize="unit_variance") for p in range(1, 9)]
            assert got == [0, 1, 0, 2, 0, 5, 0, 14]


def test_06_h_independence_chain():
    with criterion(6, "limit words equal h-independent semicircle/circular words, p <= 6", 60):
        zero = constant_graphon(0)
        evaluated = 0
        for gL in (complete_graph(2), edgeless_graph(2), path_graph(3)):
            subsets = nonempty_subsets(gL.n)
            for p in range(1, 7):
                for J in product(subsets, repeat=p):
                    if not any(True for _ in pair_partitions_below(kernel(J))):
                        # no compatible pairing: both sides are empty sums for every exponent word
                        spec = WordSpec(J, "1" * p)
                        assert lex_limit_moment((gL, zero), spec) == 0
                        assert h_independent_moment(gL, spec) == 0
                        evaluated += 1
                        continue
                    for alpha in product("1*", repeat=p):
                        spec = WordSpec(J, alpha)
                        assert lex_limit_moment((gL, zero), spec) == h_independent_moment(gL, spec), spec
                        evaluated += 1
        assert evaluated > 250_000


def test_07_injective_product_formula():
    with criterion(7, "injective decorated density equals the product formula", 60):
        rng = random.Random(2024)
        for _ in range(50):
            p = rng.choice((2, 4, 6))
            L = rng.randint(1, 3)
            n = rng.randint(max(2, p // 2), 6)
            pi = rng.choice(enumerate_partitions(p, "pair"))
            J = [None] * p
            for r, s in pi.blocks:
                J[r - 1] = J[s - 1] = rng.choice(nonempty_subsets(L))
            spec = WordSpec(J, [rng.choice("1*") for _ in range(p)])
            g = random_grid(rng, n, L, rng.choice((0.5, 0.8, 1.0)))
            definition = hom_variants(decorated_intersection_graph(pi, spec, L=L), compressed_grid(g), "injective")
            assert definition == rho_inj_product_formula(pi, spec, g)


def _labelings(pi, n):
    rgs = pi.rgs
    for labels in permutations(range(1, n + 1), max(rgs) + 1):
        yield tuple(labels[b] for b in rgs)


def test_08_finite_n_pairing_rules():
    with criterion(8, "mismatched blocks vanish; grid noncrossing characterisation", 120):
        rng = random.Random(77)
        done = 0
        while done < 200:
            p = rng.choice((2, 4, 6))
            L = rng.randint(1, 3)
            n = rng.randint(max(1, p // 2), 4)
            pi = rng.choice(enumerate_partitions(p, "pair"))
            J = [rng.choice(nonempty_subsets(L)) for _ in range(p)]
            if all(J[r - 1] == J[s - 1] for r, s in pi.blocks):
                continue
            spec = WordSpec(J, [rng.choice("1*") for _ in range(p)])
            g = random_grid(rng, n, L, rng.choice((0.5, 1.0)))
            assert rho_n(pi, spec, g) == 0
            done += 1

        # exhaustive over pairings, block layer sets, exponents and labelings;
        # the largest shape (p = 6, L = 3) samples its layer/exponent words
        checked = 0
        for n in (2, 3, 4):
            for L in (1, 2, 3):
                for density in (0.5, 0.85):
                    g = random_grid(rng, n, L, density)
                    for p in (2, 4, 6):
                        if p // 2 > n:
                            continue
                        subsets = nonempty_subsets(L)
                        for pi in enumerate_partitions(p, "pair"):
                            k = len(pi.blocks)
                            if p == 6 and L == 3:
                                combos = [
                                    ([rng.choice(subsets) for _ in range(k)], [rng.choice("1*") for _ in range(p)])
                                    for _ in range(40)
                                ]
                            else:
                                combos = product(product(subsets, repeat=k), product("1*", repeat=p))
                            for blockJ, alpha in combos:
                                J = [None] * p
                                for (r, s), S in zip(pi.blocks, blockJ):
                                    J[r - 1] = J[s - 1] = S
                                spec = WordSpec(J, alpha)
                                for i in _labelings(pi, n):
                                    assert theta_is_noncrossing(i, spec, g) == pairing_conditions(pi, spec, g, i)
                                    checked += 1
        assert checked > 100_000


def test_09_finite_n_convergence():
    with criterion(9, "finite-n fourth moments: 3 - 1/n, 2, and the tensor case", 300):
        semi = ScalarLaw.semicircle(4)
        spec = WordSpec.uniform({1}, 4)
        classical = LexicographicFamily(complete_graph(1), "complete")
        for n in range(1, 10 ** 4 + 1):
            assert Sn_product_moment(classical, semi, spec, n=n) == 3 - F(1, n)
        free = LexicographicFamily(complete_graph(1), "edgeless")
        for n in list(range(1, 201)) + [10 ** 3, 10 ** 4]:
            assert Sn_product_moment(free, semi, spec, n=n) == 2
        law = ScalarLaw.semicircle(4, mean=1, variance=1)
        ns = (2, 4, 8, 16)
        vals = [Sn_full_moment(complete_graph(2), "edgeless", law, 4, n=n, normalize="unit_variance") for n in ns]
        assert vals == [F(29, 9), F(49, 18), F(89, 36), F(169, 72)]
        limit = F(20, 9)
        assert all(a > b for a, b in zip(vals, vals[1:])) and vals[-1] > limit
        for prev, cur in zip(vals, vals[1:]):
            assert abs(cur - limit) <= 2 * (prev - limit)


def _alternating(g, i):
    for j1, j2 in combinations(range(len(i)), 2):
        if i[j1] == i[j2] and all(g.has_edge(i[j1], i[j3]) for j3 in range(j1 + 1, j2)):
            return False
    return True


def test_10_alternating_words_vanish():
    with criterion(10, "centred alternating words vanish on every graph with <= 4 vertices", 60):
        law = ScalarLaw.from_free_cumulants([0, 1, F(1, 2), 2, F(-1, 3), 3])
        hits = 0
        for n in range(1, 5):
            pairs = list(combinations(range(1, n + 1), 2))
            for mask in range(2 ** len(pairs)):
                g = SimpleGraph(n, [e for b, e in enumerate(pairs) if mask >> b & 1])
                for k in range(1, 7):
                    for i in product(range(1, n + 1), repeat=k):
                        if _alternating(g, i):
                            assert epsilon_moment(g, i, law) == 0, (g, i)
                            hits += 1
        assert hits > 10_000
