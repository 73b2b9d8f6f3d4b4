"""Free cumulants of a single law and mixed moments of epsilon-independent variables.

Mixed moments follow the epsilon-independence moment-cumulant formula: the
trace of ``a_1 ... a_k`` with ``a_j`` living at vertex ``i_j`` of a graph is the
sum, over partitions ``pi <= ker(i)`` that are ``(g, i)``-noncrossing, of the
product of free cumulants of the blocks.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping

from ._numeric import to_number, total
from .combinatorics import (
    SetPartition,
    _rgs_generate,
    is_gn_noncrossing,
    kernel,
    pair_partitions_below,
    paired_words,
)
from .errors import DomainError

__all__ = [
    "ScalarLaw",
    "FreeCumulantSequence",
    "StarVariable",
    "moments_to_free_cumulants",
    "free_cumulants_to_moments",
    "epsilon_moment",
    "star_joint_moment",
    "star_polynomial_moment",
]


def _poly_mul(a, b, deg):
    out = [0] * (deg + 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b[: deg + 1 - i]):
            out[i + j] += x * y
    return out


def _composition_coeffs(moments, n):
    """``coeffs[s][j] = [z^j] M(z)^s`` for ``M(z) = 1 + sum m_i z^i``, ``j <= n``."""
    M = [Fraction(1)] + list(moments[:n])
    M += [0] * (n + 1 - len(M))
    powers = [[Fraction(1)] + [0] * n]
    for _ in range(n):
        powers.append(_poly_mul(powers[-1], M, n))
    return powers


def _moments_to_cumulants(moments):
    K = len(moments)
    powers = _composition_coeffs(moments, K)
    kappa = []
    for n in range(1, K + 1):
        # m_n = sum_{s=1}^{n} kappa_s [z^{n-s}] M(z)^s ; the s = n term is kappa_n
        acc = moments[n - 1]
        for s in range(1, n):
            acc -= kappa[s - 1] * powers[s][n - s]
        kappa.append(acc)
    return tuple(kappa)


def _cumulants_to_moments(kappa):
    K = len(kappa)
    moments = []
    for n in range(1, K + 1):
        powers = _composition_coeffs(moments, n)
        moments.append(total(kappa[s - 1] * powers[s][n - s] for s in range(1, n + 1)))
    return tuple(moments)


@dataclass(frozen=True)
class FreeCumulantSequence:
    """Free cumulants ``kappa_1, ..., kappa_K`` of a single law."""

    kappa: tuple

    def __post_init__(self):
        object.__setattr__(self, "kappa", tuple(_coerce(k) for k in self.kappa))

    def __len__(self):
        return len(self.kappa)

    def __getitem__(self, n):
        """``kappa_n`` (1-based)."""
        if not 1 <= n <= len(self.kappa):
            raise DomainError(f"free cumulant of order {n} is not available")
        return self.kappa[n - 1]


def _coerce(x):
    if isinstance(x, float):
        return x
    return to_number(x, exact=True)


@dataclass(frozen=True)
class ScalarLaw:
    """Moments ``m_1, ..., m_K`` of a single self-adjoint variable.

    Entries are kept exact (Fractions) unless floats are supplied.
    """

    moments: tuple
    _kappa: tuple = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        moments = tuple(_coerce(m) for m in self.moments)
        if not moments:
            raise DomainError("a law needs at least its first moment")
        object.__setattr__(self, "moments", moments)
        if len(moments) >= 2 and self.variance < 0:
            raise DomainError(f"negative variance {self.variance}")

    @classmethod
    def from_free_cumulants(cls, kappa):
        if isinstance(kappa, FreeCumulantSequence):
            kappa = kappa.kappa
        return free_cumulants_to_moments(FreeCumulantSequence(tuple(kappa)))

    @classmethod
    def semicircle(cls, K=8, mean=0, variance=1):
        """Semicircle law with the given mean and variance, moments up to ``K``."""
        kappa = [0] * K
        kappa[0] = mean
        if K >= 2:
            kappa[1] = variance
        return cls.from_free_cumulants(kappa)

    @property
    def K(self):
        return len(self.moments)

    @property
    def mean(self):
        return self.moments[0]

    @property
    def variance(self):
        if self.K < 2:
            raise DomainError("the variance needs the second moment")
        return self.moments[1] - self.moments[0] ** 2

    @property
    def is_centered(self):
        return self.moments[0] == 0

    @property
    def is_normalized(self):
        return self.K >= 2 and self.moments[0] == 0 and self.moments[1] == 1

    @property
    def free_cumulants(self):
        if self._kappa is None:
            object.__setattr__(self, "_kappa", _moments_to_cumulants(self.moments))
        return self._kappa

    def moment(self, n):
        if n == 0:
            return Fraction(1)
        if not 1 <= n <= self.K:
            raise DomainError(f"moment of order {n} is not available (K = {self.K})")
        return self.moments[n - 1]

    def shifted(self, c):
        """Law of ``a + c``."""
        out = []
        for n in range(1, self.K + 1):
            out.append(total(comb(n, j) * self.moment(j) * c ** (n - j) for j in range(n + 1)))
        return ScalarLaw(tuple(out))

    def centered(self):
        """Law of ``a - mean``."""
        return self.shifted(-self.mean)

    def scaled(self, c):
        """Law of ``c * a``."""
        return ScalarLaw(tuple(m * c ** n for n, m in enumerate(self.moments, start=1)))


def moments_to_free_cumulants(law):
    """Free cumulants of ``law`` up to its moment depth.

    ``kappa_n`` is obtained by subtracting from ``m_n`` the contribution of every
    noncrossing partition other than the one-block partition, grouped by the
    block containing position 1.
    """
    return FreeCumulantSequence(law.free_cumulants)


def free_cumulants_to_moments(kappa):
    """Moments ``m_n = sum_{pi in NC(n)} prod_{v in pi} kappa_{|v|}``."""
    if not isinstance(kappa, FreeCumulantSequence):
        kappa = FreeCumulantSequence(tuple(kappa))
    law = ScalarLaw(_cumulants_to_moments(kappa.kappa))
    object.__setattr__(law, "_kappa", kappa.kappa)
    return law


def _norm(a):
    return "1" if a in (1, "1") else a


class _LabelGraph:
    """Adjacency between first-appearance labels of a canonicalised tuple."""

    __slots__ = ("pairs",)

    def __init__(self, pairs):
        self.pairs = pairs

    def has_edge(self, u, v):
        return (u, v) in self.pairs or (v, u) in self.pairs


@lru_cache(maxsize=None)
def _local_shapes(k, min_block):
    """Noncrossing partitions of ``range(k)`` as tuples of position groups."""
    out = []
    for rgs in _rgs_generate(k, min_block=min_block, noncrossing=True):
        groups = {}
        for pos, lab in enumerate(rgs):
            groups.setdefault(lab, []).append(pos)
        out.append(tuple(tuple(g) for g in groups.values()))
    return tuple(out)


def _local_noncrossing(block, kappa, min_block):
    """Noncrossing partitions of ``block`` whose cumulant product is nonzero."""
    out = []
    for shape in _local_shapes(len(block), min_block):
        if all(kappa[len(g) - 1] != 0 for g in shape):
            out.append([tuple(block[x] for x in g) for g in shape])
    return out


@lru_cache(maxsize=200_000)
def _epsilon_core(rgs, pairs, laws):
    """Moment of a canonicalised word: labels ``rgs``, label adjacency ``pairs``."""
    ker = SetPartition.from_rgs(rgs)
    kappas = [law.free_cumulants for law in laws]
    centered = all(k[0] == 0 for k in kappas)
    min_block = 2 if centered else 1
    g = _LabelGraph(pairs)
    # sub-blocks of one kernel block share a vertex, so they may never cross
    factors = []
    for b in ker.blocks:
        local = _local_noncrossing(b, kappas[rgs[b[0] - 1]], min_block)
        if not local:
            return Fraction(0)
        factors.append(local)
    terms = []

    def rec(idx, chosen):
        if idx == len(factors):
            pi = SetPartition(chosen, len(rgs))
            if not is_gn_noncrossing(pi, rgs, g):
                return
            val = Fraction(1)
            for blk in pi.blocks:
                val *= kappas[rgs[blk[0] - 1]][len(blk) - 1]
                if val == 0:
                    return
            terms.append(val)
            return
        for part in factors[idx]:
            rec(idx + 1, chosen + part)

    rec(0, [])
    return total(terms) if terms else Fraction(0)


def _resolve_laws(i, laws):
    """One law per distinct vertex of ``i`` in first-appearance order."""
    order = list(dict.fromkeys(i))
    if isinstance(laws, ScalarLaw):
        return order, tuple(laws for _ in order)
    if isinstance(laws, Mapping):
        try:
            return order, tuple(laws[v] for v in order)
        except KeyError as exc:
            raise DomainError(f"no law given for vertex {exc.args[0]!r}") from None
    laws = list(laws)
    if len(laws) != len(i):
        raise DomainError(f"{len(laws)} laws for a word of length {len(i)}")
    per_vertex = {}
    for v, law in zip(i, laws):
        if per_vertex.setdefault(v, law) != law:
            raise DomainError(f"positions at vertex {v!r} carry different laws")
    return order, tuple(per_vertex[v] for v in order)


def epsilon_moment(g, i, laws):
    """Trace of ``a_1 ... a_k`` for ``g``-independent variables, ``a_j`` at vertex ``i_j``.

    Parameters
    ----------
    g : SimpleGraph or GridGraph
        Independence graph; adjacent vertices are classically independent.
    i : sequence
        Vertex of each position.
    laws : ScalarLaw, mapping or sequence
        A shared law, a law per vertex, or a law per position (positions on the
        same vertex must then agree).  All letters on one vertex are the same
        variable.

    Returns
    -------
    Fraction or float

    Raises
    ------
    DomainError
        If a law lacks the moment depth needed by the word.
    """
    i = tuple(i)
    if not i:
        raise DomainError("empty word")
    order, per_vertex = _resolve_laws(i, laws)
    label = {v: k for k, v in enumerate(order)}
    rgs = tuple(label[v] for v in i)
    ker = kernel(i)
    need = {}
    for b in ker.blocks:
        lab = rgs[b[0] - 1]
        need[lab] = max(need.get(lab, 0), len(b))
    for lab, depth in need.items():
        if per_vertex[lab].K < depth:
            raise DomainError(
                f"law at vertex {order[lab]!r} needs moments up to order {depth}, "
                f"has {per_vertex[lab].K}"
            )
    pairs = frozenset(
        (a, b)
        for a in range(len(order))
        for b in range(a + 1, len(order))
        if g.has_edge(order[a], order[b])
    )
    return _epsilon_core(rgs, pairs, per_vertex)


@dataclass(frozen=True)
class StarVariable:
    """A variable described by its second cumulants ``kappa_2(x^a, x^b)``.

    ``table`` maps exponent pairs ``("1"|"*", "1"|"*")`` to values; higher
    cumulants vanish for the semicircle and circular kinds.
    """

    kind: str
    table: tuple

    @classmethod
    def semicircle(cls):
        return cls("semicircle", (("1", "1", 1), ("1", "*", 1), ("*", "1", 1), ("*", "*", 1)))

    @classmethod
    def circular(cls):
        return cls("circular", (("1", "1", 0), ("1", "*", 1), ("*", "1", 1), ("*", "*", 0)))

    @classmethod
    def general(cls, table):
        return cls("general", tuple((a, b, table[(a, b)]) for a in "1*" for b in "1*"))

    @classmethod
    def of_kind(cls, kind):
        if kind == "semicircle":
            return cls.semicircle()
        if kind == "circular":
            return cls.circular()
        raise DomainError(f"unknown variable kind {kind!r}")

    def kappa2(self, a, b):
        for x, y, v in self.table:
            if (x, y) == (a, b):
                return v
        raise DomainError(f"no cumulant for exponents ({a}, {b})")


def star_joint_moment(h, variables, spec):
    """``tau(s_{J_1}^{a_1} ... s_{J_p}^{a_p})`` for an ``h``-independent family.

    Only second cumulants are used: the sum runs over pair partitions
    ``pi <= ker(J)`` that are ``(h, J)``-noncrossing, weighted by
    ``prod_{{r<s} in pi} kappa_2(s^{a_r}, s^{a_s})``.

    ``spec`` is a :class:`~epsclt.combinatorics.WordSpec` or a pair
    ``(vertices, exponents)`` when the vertices of ``h`` are not subsets.
    """
    J, alpha = (spec.J, spec.alpha) if hasattr(spec, "alpha") else spec
    return _star_word_moment(h, variables, tuple(J), tuple(alpha))


@lru_cache(maxsize=8192)
def _pairings_below(J):
    return tuple(pair_partitions_below(kernel(J)))


def _star_word_moment(h, variables, J, alpha):
    for r, v in enumerate(J, start=1):
        if v not in h.vertices:
            raise DomainError(f"letter {r} ({v!r}) is not a vertex of h")
    terms = []
    for pi in _pairings_below(J):
        if not is_gn_noncrossing(pi, J, h):
            continue
        val = 1
        for r, s in pi.blocks:
            val *= variables[J[r - 1]].kappa2(alpha[r - 1], alpha[s - 1])
            if val == 0:
                break
        if val:
            terms.append(val)
    return total(terms) if terms else Fraction(0)


def star_polynomial_moment(h, variables, coeff_squared, alpha):
    """Mixed moment of ``X = sum_J c_J s_J`` with real coefficients.

    Parameters
    ----------
    coeff_squared : mapping
        ``c_J^2`` for each vertex ``J`` of ``h``.  Only squares are needed: a
        word contributes only when each ``J`` occurs an even number of times.
    alpha : sequence over {"1", "*"}
    """
    alpha = tuple(_norm(a) for a in alpha)
    p = len(alpha)
    symbols = [J for J in h.vertices if coeff_squared.get(J, 0) != 0]
    terms = []
    for word in paired_words(symbols, p):
        weight = Fraction(1)
        counts = {}
        for J in word:
            counts[J] = counts.get(J, 0) + 1
        for J, c in counts.items():
            weight *= coeff_squared[J] ** (c // 2)
        val = _star_word_moment(h, variables, word, alpha)
        if val:
            terms.append(weight * val)
    return total(terms) if terms else Fraction(0)
