"""Limiting *-moments of sums of products of epsilon-independent variables.

Three evaluation routes are provided and are meant to be played against each
other:

* :func:`master_limit_moment` integrates decorated crossing graphs against a
  decorated step graphon;
* :func:`lex_limit_moment` evaluates the lexicographic-product special case
  directly from ``gL`` and a plain step graphon;
* :func:`h_independent_moment` uses the semicircle/circular classification and
  the derived independence graph ``h_graph(gL)`` (valid for the zero graphon).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._numeric import to_number, total
from .combinatorics import (
    WordSpec,
    enumerate_partitions,
    intersection_graph,
    kernel,
    pair_partitions_below,
    paired_words,
)
from .cumulants import StarVariable, star_joint_moment, star_polynomial_moment
from .decorated import decorated_intersection_graph, lex_limit_decoration, rho_decorated
from .errors import DomainError
from .graphon import cell_sum, rho_graphon
from .graphs import SimpleGraph, h_graph, is_complete_on, nonempty_subsets

__all__ = [
    "LimitModel",
    "NormalizationParams",
    "master_limit_moment",
    "lex_limit_moment",
    "S_limit_moment",
    "S_limit_moments",
    "classify_sJ",
    "star_variables",
    "h_independent_moment",
    "clt_L1_moment",
    "tensor2_reference_moment",
    "sum_variance",
]


@dataclass(frozen=True)
class LimitModel:
    """Layer graph ``gL``, graphon limit ``w`` of ``g'_n`` and the summand law.

    Only the mean ``lam`` and variance ``sigma2`` of the law enter the limit.
    """

    gL: SimpleGraph
    w: object
    lam: object
    sigma2: object

    def __post_init__(self):
        lam = self.lam if isinstance(self.lam, float) else to_number(self.lam)
        s2 = self.sigma2 if isinstance(self.sigma2, float) else to_number(self.sigma2)
        if s2 <= 0:
            raise DomainError(f"sigma^2 must be positive, got {s2}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "sigma2", s2)

    @classmethod
    def from_law(cls, gL, w, law):
        return cls(gL, w, law.mean, law.variance)

    @property
    def L(self):
        return self.gL.n


@dataclass(frozen=True)
class NormalizationParams:
    """``delta^2 = sigma^2 (sigma^2 + 2 lambda^2)`` and ``alpha = 2 lambda^2 / (sigma^2 + 2 lambda^2)``."""

    lam: object
    sigma2: object

    @property
    def delta2(self):
        return self.sigma2 * (self.sigma2 + 2 * self.lam ** 2)

    @property
    def alpha(self):
        return Fraction(2) * self.lam ** 2 / (self.sigma2 + 2 * self.lam ** 2)


@lru_cache(maxsize=4096)
def _pairings_of(J):
    """Pair partitions compatible with the word ``J`` and their crossing pairs."""
    out = []
    for pi in pair_partitions_below(kernel(J)):
        out.append((pi, tuple(pi.crossing_block_pairs())))
    return tuple(out)


def master_limit_moment(w, spec):
    """Sum over ``pi in P_2^J(p)`` of the decorated density of ``pi``'s crossing graph in ``w``.

    Parameters
    ----------
    w : DecoratedStepGraphon
    spec : WordSpec
    """
    if spec.p % 2:
        return Fraction(0)
    terms = []
    for pi, _ in _pairings_of(spec.J):
        F = decorated_intersection_graph(pi, spec, L=w.L)
        terms.append(rho_decorated(F, w))
    return total(terms) if terms else Fraction(0)


def _gl_adjacent(gL, l1, l2):
    labels = gL.vertices
    return gL.has_edge(labels[l1 - 1], labels[l2 - 1])


def _clique(gL, J):
    labels = gL.vertices
    return is_complete_on(gL, [labels[l - 1] for l in J])


def lex_limit_moment(model, spec):
    """Joint *-moment of the limit family ``(s_J)`` for a lexicographic grid.

    Keeps the pair partitions ``pi in P_2^J(p)`` such that (1) crossing blocks
    ``u, v`` have every ``l1 != l2`` in ``J_u x J_v`` adjacent in ``gL``, and (2)
    blocks with equal exponents carry a clique of ``gL``; each survivor
    contributes the density of its crossing graph, where a crossing edge weighs
    ``w`` if ``J_u`` meets ``J_v`` and 1 otherwise.

    ``model`` may also be a ``(gL, w)`` pair.
    """
    gL, w = (model.gL, model.w) if isinstance(model, LimitModel) else model
    if spec.p % 2:
        return Fraction(0)
    J, alpha = spec.J, spec.alpha
    terms = []
    for pi, crossings in _pairings_of(J):
        blocks = pi.blocks
        Ju = [J[r - 1] for r, _ in blocks]
        ok = all(
            _clique(gL, Ju[a])
            for a, (r, s) in enumerate(blocks)
            if alpha[r - 1] == alpha[s - 1]
        )
        if not ok:
            continue
        weighted = []
        for a, b in crossings:
            if not all(
                _gl_adjacent(gL, l1, l2) for l1 in Ju[a] for l2 in Ju[b] if l1 != l2
            ):
                ok = False
                break
            if Ju[a] & Ju[b]:
                weighted.append((a, b))
        if not ok:
            continue
        terms.append(cell_sum(len(blocks), weighted, [w.values] * len(weighted), w.widths))
    return total(terms) if terms else Fraction(0)


def sum_variance(model):
    """``sum_J sigma^{2|J|} lambda^{2|J^c|} = (sigma^2 + lambda^2)^L - lambda^{2L}``."""
    L = model.L
    return (model.sigma2 + model.lam ** 2) ** L - model.lam ** (2 * L)


def _coeff_squared(model):
    """Squared weights ``sigma^{2|J|} lambda^{2|J^c|}`` of the limit summands ``s_J``."""
    L = model.L
    return {
        J: model.sigma2 ** len(J) * model.lam ** (2 * (L - len(J)))
        for J in nonempty_subsets(L)
    }


def S_limit_moment(model, p, alpha=None, normalize="raw", route="lex"):
    """``tau(S^{a_1} ... S^{a_p})`` for the limit ``S = sum_J sigma^|J| lambda^|J^c| s_J``.

    Parameters
    ----------
    model : LimitModel
    p : int
    alpha : sequence over {"1", "*"}, optional
        Defaults to ``p`` plain letters.
    normalize : {"raw", "unit_variance"}
        ``unit_variance`` divides by ``sum_variance(model) ** (p / 2)``.
    route : {"lex", "master", "h"}
        How each joint moment of the ``s_J`` is evaluated.  ``"h"`` is only
        valid for the zero graphon.

    Notes
    -----
    A word ``(J_1, ..., J_p)`` contributes only when each subset occurs an even
    number of times, so the product of coefficients is a product of squared
    coefficients and stays rational when ``lambda`` and ``sigma^2`` are.
    """
    alpha = ("1",) * p if alpha is None else tuple(alpha)
    if len(alpha) != p:
        raise DomainError(f"|alpha| = {len(alpha)} but p = {p}")
    if normalize not in ("raw", "unit_variance"):
        raise DomainError(f"unknown normalisation {normalize!r}")
    if p % 2:
        return Fraction(0)
    coeff_sq = _coeff_squared(model)
    if route == "h":
        _require_zero_graphon(model.w)
        h, variables = _h_family(model.gL)
        val = star_polynomial_moment(h, variables, coeff_sq, alpha)
    else:
        if route == "lex":
            evaluate = lambda spec: lex_limit_moment(model, spec)  # noqa: E731
        elif route == "master":
            dec = lex_limit_decoration(model.gL, model.w)
            evaluate = lambda spec: master_limit_moment(dec, spec)  # noqa: E731
        else:
            raise DomainError(f"unknown route {route!r}")
        symbols = [J for J in nonempty_subsets(model.L) if coeff_sq[J] != 0]
        terms = []
        for word in paired_words(symbols, p):
            counts = {}
            for J in word:
                counts[J] = counts.get(J, 0) + 1
            weight = 1
            for J, c in counts.items():
                weight *= coeff_sq[J] ** (c // 2)
            val = evaluate(WordSpec(word, alpha))
            if val:
                terms.append(weight * val)
        val = total(terms) if terms else Fraction(0)
    if normalize == "unit_variance":
        val = val / sum_variance(model) ** (p // 2)
    return val


def S_limit_moments(model, p_max, normalize="raw", route="lex"):
    """Moments ``tau(S^p)`` for ``p = 1..p_max``."""
    return [S_limit_moment(model, p, normalize=normalize, route=route) for p in range(1, p_max + 1)]


def classify_sJ(gL, J):
    """``"semicircle"`` if ``J`` spans a clique of ``gL``, else ``"circular"``."""
    J = frozenset(J)
    if not J:
        raise DomainError("J must be nonempty")
    return "semicircle" if _clique(gL, J) else "circular"


def star_variables(gL):
    """The limit variable type of every ``s_J``, ``J`` a nonempty subset of ``[L]``."""
    return {J: StarVariable.of_kind(classify_sJ(gL, J)) for J in nonempty_subsets(gL.n)}


def _require_zero_graphon(w):
    if any(v != 0 for row in w.values for v in row):
        raise DomainError("the h-independence description needs the zero graphon")


@lru_cache(maxsize=64)
def _h_family(gL):
    return h_graph(gL), star_variables(gL)


def h_independent_moment(gL, spec):
    """Joint moment of ``(s_J)`` as an ``h_graph(gL)``-independent semicircle/circular family."""
    h, variables = _h_family(gL)
    return star_joint_moment(h, variables, spec)


@lru_cache(maxsize=None)
def _crossing_distribution(p):
    """``(crossings, count)`` pairs over the pair partitions of ``[p]``.

    Scans positions left to right keeping, for each number of open arcs, the
    crossing-count polynomial; closing the ``t``-th most recent of ``k`` open
    arcs crosses the ``t - 1`` arcs opened after it.
    """
    states = {0: {0: 1}}
    for pos in range(p):
        nxt = {}
        for k, poly in states.items():
            if k + 1 <= p - pos - 1:
                dst = nxt.setdefault(k + 1, {})
                for c, cnt in poly.items():
                    dst[c] = dst.get(c, 0) + cnt
            if k:
                dst = nxt.setdefault(k - 1, {})
                for c, cnt in poly.items():
                    for extra in range(k):
                        dst[c + extra] = dst.get(c + extra, 0) + cnt
        states = nxt
    return tuple(sorted(states.get(0, {}).items()))


def clt_L1_moment(w, p):
    """``sum_{pi in P_2(p)} rho(f_pi, w)``; odd moments vanish."""
    if p % 2:
        return Fraction(0)
    if w.m == 1:
        # constant graphon: rho(f_pi, q) = q^{#crossings}
        q = w.values[0][0]
        return total(cnt * q ** c for c, cnt in _crossing_distribution(p))
    return total(rho_graphon(intersection_graph(pi), w) for pi in enumerate_partitions(p, "pair"))


_TENSOR2_H = SimpleGraph(3, [(1, 2)])


def tensor2_reference_moment(params, p, alpha=None):
    """Moment of ``sqrt(a)(s_1 + s_2)/sqrt(2) + sqrt(1 - a) s_3``, ``a = params.alpha``.

    ``s_1, s_2, s_3`` are semicircles, ``s_1`` and ``s_2`` classically independent,
    both free from ``s_3``.
    """
    a = params.alpha if isinstance(params, NormalizationParams) else to_number(params)
    if not 0 <= a <= 1:
        raise DomainError(f"alpha = {a} is outside [0, 1]")
    alpha = ("1",) * p if alpha is None else tuple(alpha)
    variables = {v: StarVariable.semicircle() for v in _TENSOR2_H.vertices}
    coeff_sq = {1: a / 2, 2: a / 2, 3: 1 - a}
    return star_polynomial_moment(_TENSOR2_H, variables, coeff_sq, alpha)
