"""Brute-force reference implementations used only by the tests.

Everything here is written from the definitions, with no shared code paths
with the package beyond plain data types.
"""

from fractions import Fraction
from itertools import combinations, product
from math import comb, prod


def set_partitions(items):
    """All partitions of ``items`` as lists of sorted tuples (insertion recursion)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [(first,)] + part
        for k in range(len(part)):
            yield part[:k] + [tuple(sorted((first,) + part[k]))] + part[k + 1:]


def pair_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    a = items[0]
    for j in range(1, len(items)):
        rest = items[1:j] + items[j + 1:]
        for part in pair_partitions(rest):
            yield [(a, items[j])] + part


def crosses(b1, b2):
    """Whether positions a < b < c < d exist with a, c in one block and b, d in the other."""
    for x, y in ((b1, b2), (b2, b1)):
        for a, c in combinations(sorted(x), 2):
            for b, d in combinations(sorted(y), 2):
                if a < b < c < d:
                    return True
    return False


def crossing_count(blocks):
    return sum(1 for u, v in combinations(blocks, 2) if crosses(u, v))


def is_noncrossing(blocks):
    return crossing_count(blocks) == 0


def canon(blocks):
    return sorted(tuple(sorted(b)) for b in blocks)


def double_factorial(k):
    return prod(range(k, 0, -2)) if k > 0 else 1


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def moments_from_cumulants(kappa, K):
    """``m_n = sum_{pi in NC(n)} prod kappa_{|v|}`` by brute enumeration."""
    out = []
    for n in range(1, K + 1):
        s = Fraction(0)
        for part in set_partitions(range(1, n + 1)):
            if is_noncrossing(part):
                s += prod((Fraction(kappa[len(b) - 1]) for b in part), start=Fraction(1))
        out.append(s)
    return out


def refines_kernel(part, i):
    return all(len({i[x - 1] for x in b}) == 1 for b in part)


def eps_moment(adj, i, kappa):
    """Moment-cumulant sum over all set partitions: ``adj(u, v)`` is the independence graph.

    A partition counts if it refines ``ker(i)`` and every crossing pair of blocks
    sits on two distinct adjacent vertices.
    """
    k = len(i)
    total = Fraction(0)
    for part in set_partitions(range(1, k + 1)):
        if not refines_kernel(part, i):
            continue
        ok = True
        for u, v in combinations(part, 2):
            if crosses(u, v):
                a, b = i[u[0] - 1], i[v[0] - 1]
                if a == b or not adj(a, b):
                    ok = False
                    break
        if ok:
            total += prod((Fraction(kappa[len(b) - 1]) for b in part), start=Fraction(1))
    return total


def classical_moment(i, moments):
    """Independent commuting variables with a shared law: product of per-vertex moments."""
    counts = {}
    for v in i:
        counts[v] = counts.get(v, 0) + 1
    return prod((Fraction(moments[c - 1]) for c in counts.values()), start=Fraction(1))


def free_moment(i, kappa):
    """Free variables: noncrossing partitions refining ``ker(i)``."""
    k = len(i)
    total = Fraction(0)
    for part in set_partitions(range(1, k + 1)):
        if refines_kernel(part, i) and is_noncrossing(part):
            total += prod((Fraction(kappa[len(b) - 1]) for b in part), start=Fraction(1))
    return total


def grid_word(i, J, alpha):
    letters = []
    for k, s, a in zip(i, J, alpha):
        ls = sorted(s)
        if a == "*":
            ls.reverse()
        letters.extend((k, l) for l in ls)
    return letters


def sn_product_brute(has_edge, n, kappa, J, alpha):
    """``n^{-p/2} sum_{i in [n]^p} tau(theta(i))`` for even ``p``, every tuple enumerated."""
    p = len(J)
    assert p % 2 == 0
    total = Fraction(0)
    for i in product(range(1, n + 1), repeat=p):
        total += eps_moment(has_edge, grid_word(i, J, alpha), kappa)
    return total / Fraction(n) ** (p // 2)
