"""Cross-check suites comparing independent evaluation routes.

Each check returns a :class:`CheckResult`; ``status`` is ``"pass"``,
``"fail"`` or ``"skip"`` (the model is outside the check's scope).
"""

import random
from dataclasses import dataclass
from itertools import product

from .combinatorics import WordSpec, enumerate_partitions, paired_words
from .cumulants import star_joint_moment
from .decorated import compressed_grid, decorated_intersection_graph, hom_variants, lex_limit_decoration
from .decorated import rho_inj_product_formula
from .graphs import GridGraph, h_graph, nonempty_subsets
from .limit_laws import (
    LimitModel,
    NormalizationParams,
    S_limit_moment,
    lex_limit_moment,
    master_limit_moment,
    star_variables,
    tensor2_reference_moment,
)

__all__ = [
    "CheckResult",
    "random_grid",
    "random_pair_instance",
    "check_product_formula",
    "check_master_vs_filtered",
    "check_tensor_triangle",
    "check_h_chain",
    "run_all",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str

    @property
    def ok(self):
        return self.status != "fail"


def random_grid(rng, n, L, density=0.5):
    """A grid graph on ``[n] x [L]`` keeping each possible edge with probability ``density``."""
    verts = [(k, l) for k in range(1, n + 1) for l in range(1, L + 1)]
    edges = [
        (u, v)
        for a, u in enumerate(verts)
        for v in verts[a + 1:]
        if rng.random() < density
    ]
    return GridGraph(n, L, edges)


def random_pair_instance(rng, p_choices=(2, 4, 6), L_max=3, n_max=6, n_min=2):
    """``(pi, spec, g)`` with ``J`` constant on the blocks of the pair partition ``pi``."""
    p = rng.choice(p_choices)
    L = rng.randint(1, L_max)
    n = rng.randint(n_min, n_max)
    pi = rng.choice(enumerate_partitions(p, "pair"))
    subsets = nonempty_subsets(L)
    J = [None] * p
    for r, s in pi.blocks:
        J[r - 1] = J[s - 1] = rng.choice(subsets)
    alpha = [rng.choice("1*") for _ in range(p)]
    return pi, WordSpec(J, alpha), random_grid(rng, n, L, rng.choice((0.3, 0.6, 0.9)))


def _words(L, p_max):
    subsets = nonempty_subsets(L)
    for p in range(2, p_max + 1, 2):
        for word in paired_words(subsets, p):
            for alpha in product("1*", repeat=p):
                yield WordSpec(word, alpha)


def check_product_formula(L, count=20, seed=0):
    """Injective density of the decorated crossing graph in the compressed grid, two ways."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        pi, spec, g = random_pair_instance(rng, L_max=max(1, min(L, 3)), n_max=5)
        F = decorated_intersection_graph(pi, spec, L=g.L)
        lhs = hom_variants(F, compressed_grid(g), "injective")
        if lhs != rho_inj_product_formula(pi, spec, g):
            bad += 1
    name = "product-formula identity"
    if bad:
        return CheckResult(name, "fail", f"{bad} of {count} random instances disagree")
    return CheckResult(name, "pass", f"{count} random instances (seed {seed})")


def check_master_vs_filtered(model, p_max=4):
    """Decorated density sum against the filtered pair-partition sum on every word."""
    dec = lex_limit_decoration(model.gL, model.w)
    n = bad = 0
    for spec in _words(model.L, p_max):
        n += 1
        if master_limit_moment(dec, spec) != lex_limit_moment(model, spec):
            bad += 1
    name = "decorated vs filtered limit"
    if bad:
        return CheckResult(name, "fail", f"{bad} of {n} words disagree")
    return CheckResult(name, "pass", f"{n} words, p <= {p_max}")


def _is_zero(w):
    return all(v == 0 for row in w.values for v in row)


def check_tensor_triangle(model, p_max=8):
    """Expanded limit, tensor mixture and decorated route agree for the order-2 tensor case."""
    name = "order-2 tensor triangle"
    gL = model.gL
    if gL.n != 2 or len(gL.edges) != 1 or not _is_zero(model.w):
        return CheckResult(name, "skip", "needs L = 2, complete g_L and the zero graphon")
    params = NormalizationParams(model.lam, model.sigma2)
    bad = []
    for p in range(1, p_max + 1):
        a = S_limit_moment(model, p, normalize="unit_variance", route="lex")
        b = S_limit_moment(model, p, normalize="unit_variance", route="master")
        c = tensor2_reference_moment(params, p)
        if not a == b == c:
            bad.append(p)
    if bad:
        return CheckResult(name, "fail", f"disagreement at p = {bad}")
    return CheckResult(name, "pass", f"p <= {p_max}")


def check_h_chain(model, p_max=4):
    """Limit moments of the ``s_J`` against the semicircle/circular ``h_L``-independent family."""
    name = "h-independence chain"
    if not _is_zero(model.w):
        return CheckResult(name, "skip", "needs the zero graphon")
    h = h_graph(model.gL)
    variables = star_variables(model.gL)
    n = bad = 0
    for spec in _words(model.L, p_max):
        n += 1
        if lex_limit_moment(model, spec) != star_joint_moment(h, variables, spec):
            bad += 1
    if bad:
        return CheckResult(name, "fail", f"{bad} of {n} words disagree")
    return CheckResult(name, "pass", f"{n} words, p <= {p_max}")


def run_all(model, seed=0, p_max=8):
    """All suites for ``model`` (a :class:`~epsclt.limit_laws.LimitModel`)."""
    if not isinstance(model, LimitModel):
        raise TypeError("run_all expects a LimitModel")
    word_p = 4 if model.L <= 2 else 2
    return [
        check_product_formula(model.L, seed=seed),
        check_master_vs_filtered(model, p_max=word_p),
        check_tensor_triangle(model, p_max=p_max),
        check_h_chain(model, p_max=word_p),
    ]
