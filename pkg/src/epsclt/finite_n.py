"""Exact moments of the normalised sums at finite ``n``.

The variables live on a grid graph ``g_n`` over ``[n] x [L]``: ``a_k^{(l)}`` sits
at vertex ``(k, l)``.  For a nonempty ``J`` the product
``b_k^{(J)} = prod_{l in J} a_k^{(l)}`` is taken in increasing ``l``, and

    S_n^{(J)} = n^{-1/2} sum_k b_k^{(J)}.

A word ``(S_n^{(J_1)})^{a_1} ... (S_n^{(J_p)})^{a_p}`` expands over index tuples
``i in [n]^p`` into words of grid letters whose trace is an epsilon-moment.
"""

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from ._numeric import falling_factorial, format_number, total
from .combinatorics import (
    PairPartition,
    SetPartition,
    WordSpec,
    _rgs_generate,
    is_gn_noncrossing,
    kernel,
)
from .cumulants import ScalarLaw, epsilon_moment
from .errors import BudgetError, DomainError
from .graphon import blowup_graph
from .graphs import GridGraph, LexicographicFamily, SimpleGraph, lexicographic_product, nonempty_subsets

__all__ = [
    "GridWord",
    "expand_word",
    "rho_n",
    "Sn_product_moment",
    "Sn_full_moment",
    "class_contributions",
    "empirical_constant",
    "kernel_theta",
    "theta_is_noncrossing",
    "pairing_conditions",
    "default_family",
    "convergence_table",
    "ConvergenceRow",
    "table_to_csv",
    "table_to_json",
    "default_budget",
    "BUDGET_ENV",
]

BUDGET_ENV = "EPSCLT_BUDGET"
_DEFAULT_BUDGET = 10 ** 8


def default_budget():
    """Operation budget for brute-force sums, overridable through ``EPSCLT_BUDGET``."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return _DEFAULT_BUDGET
    try:
        return int(float(raw))
    except ValueError:
        raise DomainError(f"{BUDGET_ENV}={raw!r} is not a number") from None


@dataclass(frozen=True)
class GridWord:
    """Grid letters ``theta_1, ..., theta_m`` produced by one index tuple and word."""

    letters: tuple
    i: tuple
    spec: WordSpec

    @property
    def m(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)


def _layer_orders(spec):
    out = []
    for J, a in zip(spec.J, spec.alpha):
        ls = sorted(J)
        # the adjoint of a product of self-adjoint factors reverses it
        out.append(tuple(reversed(ls)) if a == "*" else tuple(ls))
    return out


def expand_word(i, spec):
    """Grid letters of ``(b_{i_1}^{(J_1)})^{a_1} ... (b_{i_p}^{(J_p)})^{a_p}``.

    Examples
    --------
    >>> spec = WordSpec(({1, 2}, {2}), ("*", "1"))
    >>> expand_word((7, 7), spec).letters
    ((7, 2), (7, 1), (7, 2))
    """
    i = tuple(i)
    if len(i) != spec.p:
        raise DomainError(f"|i| = {len(i)} but the word has p = {spec.p} letters")
    letters = tuple((k, l) for k, ls in zip(i, _layer_orders(spec)) for l in ls)
    return GridWord(letters, i, spec)


def kernel_theta(i, spec):
    """``ker`` of the expanded grid word."""
    return kernel(expand_word(i, spec).letters)


def theta_is_noncrossing(i, spec, g):
    """Whether ``ker(theta)`` is a pair partition that is ``(g, theta)``-noncrossing.

    For a centred law with unit variance this is exactly the trace of the
    expanded word when ``ker(theta)`` consists of pairs.
    """
    theta = expand_word(i, spec).letters
    ker = kernel(theta)
    return ker.is_pair and is_gn_noncrossing(ker, theta, g)


def pairing_conditions(pi, spec, g, i):
    """The two grid conditions characterising surviving pairings.

    (1) for each block ``{r, s}`` with ``a_r = a_s``, the vertices
    ``(i_r, l), l in J_r`` span a clique of ``g``; (2) for crossing blocks
    ``{r1, s1}``, ``{r2, s2}`` every ``((i_r1, l1), (i_r2, l2))`` with
    ``(l1, l2) in J_r1 x J_r2`` is an edge.  Blocks are assumed to have
    ``J_r = J_s`` and distinct indices.
    """
    if not isinstance(pi, PairPartition):
        pi = PairPartition.from_partition(pi)
    blocks = pi.blocks
    for r, s in blocks:
        if spec.alpha[r - 1] != spec.alpha[s - 1]:
            continue
        k = i[r - 1]
        ls = sorted(spec.J[r - 1])
        if not all(g.has_edge((k, l1), (k, l2)) for l1 in ls for l2 in ls if l1 < l2):
            return False
    for a, b in pi.crossing_block_pairs():
        r1, r2 = blocks[a][0], blocks[b][0]
        k1, k2 = i[r1 - 1], i[r2 - 1]
        for l1 in spec.J[r1 - 1]:
            for l2 in spec.J[r2 - 1]:
                if not g.has_edge((k1, l1), (k2, l2)):
                    return False
    return True


def _labelings(sigma_rgs, n):
    """Index tuples with kernel given by ``sigma_rgs`` (blocks get distinct indices)."""
    k = max(sigma_rgs) + 1
    for labels in permutations(range(1, n + 1), k):
        yield tuple(labels[b] for b in sigma_rgs)


def _require_normalized(law):
    if not law.is_normalized:
        raise DomainError(
            "the law must be centred with unit variance; use law.centered() and law.scaled()"
        )


def _require_centered(law):
    if not law.is_centered:
        raise DomainError("the summand law must be centred; use law.centered()")


def rho_n(pi, spec, g, law=None):
    """``n^{-p/2} sum_{ker(i) = pi} tau(expanded word)`` for a normalised law.

    Parameters
    ----------
    pi : SetPartition
        Usually a pair partition of ``[p]``.
    spec : WordSpec
    g : GridGraph
        Its ``n`` is the number of indices.
    law : ScalarLaw, optional
        Centred and of unit variance; defaults to ``ScalarLaw((0, 1))``.
    """
    law = ScalarLaw((0, 1)) if law is None else law
    _require_normalized(law)
    p = spec.p
    if pi.size != p:
        raise DomainError(f"partition of {pi.size} positions for a word of length {p}")
    n = g.n
    if 2 * n < p:
        raise DomainError(f"rho_n needs n >= p/2, got n={n}, p={p}")
    rgs = pi.rgs
    terms = [epsilon_moment(g, expand_word(i, spec).letters, law) for i in _labelings(rgs, n)]
    s = total(terms) if terms else Fraction(0)
    return _scale(s, n, p)


def _exact_sqrt(x):
    """Rational square root of ``x`` if it has one, else ``None``."""
    if isinstance(x, float) or x < 0:
        return None
    x = Fraction(x)
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    return Fraction(a, b) if a * a == x.numerator and b * b == x.denominator else None


def _divide_power(s, d, p):
    """``s / d^{p/2}``, exact unless ``p`` is odd and ``d`` has no rational square root."""
    if s == 0:
        return s
    if isinstance(s, float) or isinstance(d, float):
        return float(s) / float(d) ** (p / 2)
    base = s / Fraction(d) ** (p // 2)
    if p % 2 == 0:
        return base
    r = _exact_sqrt(d)
    return base / r if r is not None else float(base) / math.sqrt(d)


def _scale(s, n, p):
    """``s * n^{-p/2}``, exact unless ``p`` is odd and ``n`` is not a square."""
    return _divide_power(s, n, p)


@lru_cache(maxsize=None)
def _classes(p):
    return tuple(_rgs_generate(p, min_block=2))


def _no_lonely_letter(rgs, spec):
    """False if some grid vertex occurs once in every expanded word of this kernel class.

    Such a letter is centred and alone at its vertex, so the trace vanishes.
    """
    counts = {}
    for b, J in zip(rgs, spec.J):
        for l in J:
            counts[(b, l)] = counts.get((b, l), 0) + 1
    return all(c != 1 for c in counts.values())


class _Evaluator:
    """Kernel-class sums for one grid family, with the exchangeable shortcut."""

    def __init__(self, g, n, method, budget):
        if isinstance(g, LexicographicFamily):
            if n is None:
                raise DomainError("a grid family needs an explicit n")
            self.family = g
            exchangeable = g.exchangeable
            self.grid = None if exchangeable else g.at(n)
        elif isinstance(g, GridGraph):
            if n is not None and n != g.n:
                raise DomainError(f"n = {n} disagrees with the grid's n = {g.n}")
            n = g.n
            self.family = None
            self.grid = g
            exchangeable = g.is_index_exchangeable()
        else:
            raise DomainError(f"expected a GridGraph or LexicographicFamily, got {type(g).__name__}")
        if n < 1:
            raise DomainError(f"n must be positive, got {n}")
        if method not in ("auto", "brute", "exchangeable"):
            raise DomainError(f"unknown method {method!r}")
        if method == "exchangeable" and not exchangeable:
            raise DomainError("the grid is not index-exchangeable")
        self.n = n
        self.fast = exchangeable and method != "brute"
        if method == "brute" and self.grid is None:
            self.grid = g.at(n)
        self.budget = default_budget() if budget is None else budget
        self._small = {}

    def small_grid(self, k):
        if k not in self._small:
            self._small[k] = self.family.at(k) if self.family is not None else self.grid.restrict(k)
        return self._small[k]

    def classes(self, p):
        """Kernels that can carry a nonzero trace for a centred law: no singletons."""
        return [r for r in _classes(p) if max(r) + 1 <= self.n]

    def check_budget(self, p, words):
        if self.fast:
            return
        cost = words * sum(falling_factorial(self.n, max(r) + 1) for r in self.classes(p))
        if cost > self.budget:
            raise BudgetError(
                f"brute force needs about {cost} trace evaluations (budget {self.budget}); "
                f"lower n or raise the budget"
            )

    def class_sum(self, rgs, spec, law):
        """``sum_{ker(i) = rgs} tau(expanded word)``."""
        if not _no_lonely_letter(rgs, spec):
            return Fraction(0)
        if self.fast:
            k = max(rgs) + 1
            rep = tuple(b + 1 for b in rgs)
            val = epsilon_moment(self.small_grid(k), expand_word(rep, spec).letters, law)
            return falling_factorial(self.n, k) * val
        terms = [
            epsilon_moment(self.grid, expand_word(i, spec).letters, law)
            for i in _labelings(rgs, self.n)
        ]
        return total(terms) if terms else Fraction(0)

    def word_sum(self, spec, law):
        terms = [self.class_sum(r, spec, law) for r in self.classes(spec.p)]
        return total(terms) if terms else Fraction(0)


def _product_moment_unscaled(ev, law, spec):
    _require_centered(law)
    return ev.word_sum(spec, law)


def Sn_product_moment(g, law, spec, n=None, method="auto", budget=None):
    """``tau((S_n^{(J_1)})^{a_1} ... (S_n^{(J_p)})^{a_p})`` exactly.

    Parameters
    ----------
    g : GridGraph or LexicographicFamily
        A fixed grid (``n`` is then its size) or a family evaluated at ``n``.
    law : ScalarLaw
        Shared law of all ``a_k^{(l)}``; centred with unit variance.
    spec : WordSpec
    n : int, optional
    method : {"auto", "brute", "exchangeable"}
        ``auto`` uses the exchangeable shortcut whenever every permutation of
        the indices is a grid automorphism: the trace then depends on ``i``
        only through ``ker(i)``, and each kernel class is one representative
        times a falling factorial.
    budget : int, optional
        Cap on brute-force trace evaluations (default from ``EPSCLT_BUDGET``
        or ``10**8``).

    Raises
    ------
    BudgetError
        If brute force would exceed the budget.
    """
    _require_normalized(law)
    ev = _Evaluator(g, n, method, budget)
    ev.check_budget(spec.p, 1)
    return _scale(_product_moment_unscaled(ev, law, spec), ev.n, spec.p)


def class_contributions(g, law, spec, n=None, method="auto", budget=None):
    """Scaled contribution ``n^{-p/2} sum_{ker(i) = sigma} tau(...)`` of each kernel class.

    Returns a dict ``SetPartition -> value`` over partitions without singletons.
    """
    _require_normalized(law)
    ev = _Evaluator(g, n, method, budget)
    ev.check_budget(spec.p, 1)
    return {
        SetPartition.from_rgs(r): _scale(ev.class_sum(r, spec, law), ev.n, spec.p)
        for r in ev.classes(spec.p)
    }


def empirical_constant(g, law, spec, pairs=False):
    """Largest ``|tau(expanded word)|`` over index tuples in ``[p]^p``.

    The per-class remainder bound ``|contribution(sigma)| <= C n^{|sigma| - p/2}``
    holds with this ``C``.  ``g`` must be a grid with at least ``p`` indices
    or a family.  Pair kernels are skipped unless ``pairs`` is true.
    """
    p = spec.p
    grid = g.at(p) if isinstance(g, LexicographicFamily) else g
    grid_n = min(grid.n, p)
    best = Fraction(0)
    for rgs in _rgs_generate(p, min_block=2):
        if not pairs and all(rgs.count(b) == 2 for b in set(rgs)):
            continue
        if max(rgs) + 1 > grid_n:
            continue
        for i in _labelings(rgs, grid_n):
            v = abs(epsilon_moment(grid, expand_word(i, spec).letters, law))
            if v > best:
                best = v
    return best


def _gp_family(gL, gpn):
    if isinstance(gpn, str):
        return LexicographicFamily(gL, gpn), None
    if isinstance(gpn, SimpleGraph):
        return lexicographic_product(gpn, gL), gpn.n
    if callable(gpn):
        return LexicographicFamily(gL, gpn), None
    raise DomainError(f"cannot interpret g'_n = {gpn!r}")


def Sn_full_moment(gL, gpn, law, p, alpha=None, n=None, normalize="raw", method="auto", budget=None):
    """``tau(S_n^{a_1} ... S_n^{a_p})`` for ``S_n = n^{-1/2} sum_k (prod_l a_k^{(l)} - lambda^L)``.

    Parameters
    ----------
    gL : SimpleGraph
        Layer graph on ``L`` vertices.
    gpn : {"complete", "edgeless"}, SimpleGraph or callable
        The index graph ``g'_n`` (a fixed graph fixes ``n``).
    law : ScalarLaw
        Law of every ``a_k^{(l)}``, mean ``lambda``; moments up to ``p`` are used.
    p : int
    alpha : sequence over {"1", "*"}, optional
    n : int, optional
        Required unless ``gpn`` is a fixed graph.
    normalize : {"raw", "unit_variance"}
        ``unit_variance`` divides by ``((sigma^2 + lambda^2)^L - lambda^{2L})^{p/2}``.

    Notes
    -----
    With ``y = a - lambda``, ``prod_l a^{(l)} - lambda^L = sum_J lambda^{L-|J|} prod_{l in J} y^{(l)}``,
    so ``S_n`` is a combination of ``S_n^{(J)}`` built from the centred law of ``y``.
    Every word ``(J_1, ..., J_p)`` is summed with weight ``prod_r lambda^{L - |J_r|}``.
    """
    alpha = ("1",) * p if alpha is None else tuple(alpha)
    if len(alpha) != p:
        raise DomainError(f"|alpha| = {len(alpha)} but p = {p}")
    if normalize not in ("raw", "unit_variance"):
        raise DomainError(f"unknown normalisation {normalize!r}")
    L = gL.n
    lam = law.mean
    y = law.centered()
    fam, fixed_n = _gp_family(gL, gpn)
    if fixed_n is not None:
        if n is not None and n != fixed_n:
            raise DomainError(f"n = {n} disagrees with g'_n on {fixed_n} vertices")
        n = fixed_n
    ev = _Evaluator(fam, None if fixed_n is not None else n, method, budget)
    subsets = nonempty_subsets(L)
    if lam == 0:
        subsets = [J for J in subsets if len(J) == L]
    ev.check_budget(p, len(subsets) ** p)
    terms = []
    for word in product(subsets, repeat=p):
        weight = 1
        for J in word:
            weight *= lam ** (L - len(J))
        val = ev.word_sum(WordSpec(word, alpha), y)
        if val:
            terms.append(weight * val)
    s = total(terms) if terms else Fraction(0)
    val = _scale(s, ev.n, p)
    if normalize == "unit_variance" and val:
        var = (law.variance + lam ** 2) ** L - lam ** (2 * L)
        val = _divide_power(val, var, p)
    return val


def default_family(w):
    """Deterministic ``g'_n`` converging to the step graphon ``w``.

    Constant 1 gives complete graphs, constant 0 edgeless ones, and any other
    0/1 step graphon its midpoint blow-ups.
    """
    if w.m == 1 and w.values[0][0] in (0, 1):
        return "complete" if w.values[0][0] == 1 else "edgeless"

    def blowup(n):
        return blowup_graph(w, n)

    blowup(1)  # validates that w is 0/1 valued
    blowup.__name__ = "blowup"
    return blowup


@dataclass(frozen=True)
class ConvergenceRow:
    p: int
    n: int
    finite: object
    limit: object

    @property
    def abs_diff(self):
        d = self.finite - self.limit
        return abs(d) if not isinstance(d, float) else math.fabs(d)


def convergence_table(model, family=None, p_max=4, ns=(2, 4, 8, 16), law=None,
                      normalize="unit_variance", method="auto", budget=None):
    """Finite-``n`` moments of ``S_n`` next to their limits.

    Parameters
    ----------
    model : LimitModel
    family : {"complete", "edgeless"}, callable, optional
        ``g'_n``; defaults to :func:`default_family` of ``model.w``.
    p_max : int
    ns : sequence of int
    law : ScalarLaw, optional
        Defaults to the semicircle law with the model's mean and variance.

    Returns
    -------
    list of ConvergenceRow
        Ordered by ``p``, then by ``n`` as given.
    """
    from .limit_laws import S_limit_moment

    if p_max < 1:
        raise DomainError(f"p_max must be at least 1, got {p_max}")
    if law is None:
        law = ScalarLaw.semicircle(K=max(p_max, 2), mean=model.lam, variance=model.sigma2)
    elif law.mean != model.lam or law.variance != model.sigma2:
        raise DomainError("the law's mean and variance differ from the model's")
    family = default_family(model.w) if family is None else family
    rows = []
    for p in range(1, p_max + 1):
        limit = S_limit_moment(model, p, normalize=normalize)
        for n in ns:
            finite = Sn_full_moment(model.gL, family, law, p, n=n, normalize=normalize,
                                    method=method, budget=budget)
            rows.append(ConvergenceRow(p, n, finite, limit))
    return rows


_COLUMNS = ("p", "n", "finite", "limit", "abs_diff")


def _row_values(row):
    return (row.p, row.n, row.finite, row.limit, row.abs_diff)


def table_to_csv(rows):
    """CSV text with columns ``p,n,finite,limit,abs_diff``."""
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_COLUMNS)
    for row in rows:
        p, n, *nums = _row_values(row)
        writer.writerow([p, n] + [format_number(x) for x in nums])
    return buf.getvalue()


def table_to_json(rows):
    """A list of dicts mirroring the CSV columns (numbers as ``"p/q"`` strings)."""
    out = []
    for row in rows:
        p, n, *nums = _row_values(row)
        out.append(dict(zip(_COLUMNS, [p, n] + [format_number(x) for x in nums])))
    return out
