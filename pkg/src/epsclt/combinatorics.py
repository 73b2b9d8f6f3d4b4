"""Set partitions, pair partitions and the crossing structure between blocks.

Positions are 1-based throughout.  A partition is stored canonically: blocks
sorted by their minimum, elements ascending inside each block.  Enumeration
walks restricted-growth strings (RGS) and applies the block-size and
noncrossing filters while the string is being built.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import DomainError

__all__ = [
    "SetPartition",
    "PairPartition",
    "WordSpec",
    "enumerate_partitions",
    "iter_partitions",
    "pair_partitions_below",
    "kernel",
    "blocks_cross",
    "crossing_number",
    "intersection_graph",
    "refinements_below",
    "is_gn_noncrossing",
    "FILTERS",
    "paired_words",
]

FILTERS = ("all", "pair", "noncrossing", "noncrossing_pair", "min_block_2")


class SetPartition:
    """A partition of the positions ``1..size``.

    Parameters
    ----------
    blocks : iterable of iterables of int
        Disjoint nonempty blocks covering ``1..size``.
    size : int, optional
        Number of positions.  Inferred from the blocks when omitted.
    """

    __slots__ = ("size", "blocks", "_labels", "_cross")

    def __init__(self, blocks, size=None):
        blocks = [tuple(sorted(int(x) for x in b)) for b in blocks]
        if any(len(b) == 0 for b in blocks):
            raise DomainError("partition blocks must be nonempty")
        blocks.sort(key=lambda b: b[0])
        flat = sorted(x for b in blocks for x in b)
        if size is None:
            size = len(flat)
        if flat != list(range(1, size + 1)):
            raise DomainError(f"blocks {blocks} do not partition 1..{size}")
        self.size = size
        self.blocks = tuple(blocks)
        labels = [0] * size
        for idx, b in enumerate(self.blocks):
            for x in b:
                labels[x - 1] = idx
        self._labels = tuple(labels)
        self._cross = None

    @classmethod
    def from_rgs(cls, rgs):
        """Build a partition from a restricted-growth string (0-based labels)."""
        return _from_rgs(cls, tuple(rgs))

    @property
    def rgs(self):
        """Block index of every position, in canonical (RGS) form."""
        return self._labels

    def block_index(self, position):
        return self._labels[position - 1]

    def same_block(self, r, s):
        return self._labels[r - 1] == self._labels[s - 1]

    @property
    def block_sizes(self):
        return tuple(len(b) for b in self.blocks)

    @property
    def is_pair(self):
        return all(len(b) == 2 for b in self.blocks)

    def crossing_block_pairs(self):
        """Index pairs ``(a, b)``, ``a < b``, of blocks that cross."""
        if self._cross is None:
            blocks = self.blocks
            self._cross = tuple(
                (a, b)
                for a in range(len(blocks))
                for b in range(a + 1, len(blocks))
                if blocks_cross(blocks[a], blocks[b])
            )
        return self._cross

    @property
    def is_noncrossing(self):
        return not self.crossing_block_pairs()

    def __le__(self, other):
        # refinement order: every block of self lies inside a block of other
        if self.size != other.size:
            return False
        return all(len({other._labels[x - 1] for x in b}) == 1 for b in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, SetPartition):
            return NotImplemented
        return self.size == other.size and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.size, self.blocks))

    def __str__(self):
        sep = "" if self.size < 10 else ","
        return "|".join(sep.join(str(x) for x in b) for b in self.blocks)

    def __repr__(self):
        return f"{type(self).__name__}({self})"


@lru_cache(maxsize=1 << 16)
def _from_rgs(cls, rgs):
    # partitions are immutable, so equal label strings can share one object
    groups = {}
    for pos, lab in enumerate(rgs, start=1):
        groups.setdefault(lab, []).append(pos)
    return cls(groups.values(), size=len(rgs))


class PairPartition(SetPartition):
    """A set partition all of whose blocks have exactly two elements."""

    __slots__ = ()

    def __init__(self, blocks, size=None):
        super().__init__(blocks, size)
        if not self.is_pair:
            raise DomainError(f"{self} is not a pair partition")

    @classmethod
    def from_partition(cls, pi):
        return cls(pi.blocks, pi.size)


@dataclass(frozen=True)
class WordSpec:
    """A word ``(J, alpha)``: subsets ``J_r`` of ``[L]`` and exponents in ``{1, *}``.

    ``J`` entries are normalised to frozensets and ``alpha`` entries to the
    strings ``"1"`` and ``"*"``.
    """

    J: tuple
    alpha: tuple

    def __post_init__(self):
        J = tuple(frozenset(int(x) for x in s) for s in self.J)
        alpha = tuple(_norm_exponent(a) for a in self.alpha)
        if len(J) != len(alpha):
            raise DomainError(f"|J| = {len(J)} but |alpha| = {len(alpha)}")
        if not J:
            raise DomainError("a word needs at least one letter")
        for r, s in enumerate(J, start=1):
            if not s:
                raise DomainError(f"J_{r} is empty")
            if min(s) < 1:
                raise DomainError(f"J_{r} = {sorted(s)} is not a subset of [L]")
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def uniform(cls, subset, p, alpha="1"):
        """The word ``(subset, ..., subset)`` with one exponent repeated ``p`` times."""
        return cls((subset,) * p, (alpha,) * p)

    @property
    def p(self):
        return len(self.J)

    @property
    def L(self):
        return max(max(s) for s in self.J)

    def __str__(self):
        letters = []
        for s, a in zip(self.J, self.alpha):
            name = "".join(str(x) for x in sorted(s))
            letters.append(f"s{{{name}}}" + ("*" if a == "*" else ""))
        return " ".join(letters)


def _norm_exponent(a):
    if a in (1, "1"):
        return "1"
    if a == "*":
        return "*"
    raise DomainError(f"exponent {a!r} is not 1 or *")


def _rgs_generate(k, min_block=1, max_block=None, noncrossing=False):
    """Yield restricted-growth strings of length ``k`` under block constraints."""
    if max_block is None:
        max_block = k
    labels = [0] * k
    sizes = []
    first = []
    last = []

    def deficit():
        return sum(min_block - s for s in sizes if s < min_block)

    def crosses_if_added(b, j):
        t = last[b]
        for x in range(t + 1, j):
            c = labels[x]
            if c != b and first[c] < t:
                return True
        return False

    def rec(j):
        if j == k:
            if deficit() == 0:
                yield tuple(labels)
            return
        remaining = k - j - 1
        for b in range(len(sizes)):
            if sizes[b] >= max_block:
                continue
            if noncrossing and crosses_if_added(b, j):
                continue
            sizes[b] += 1
            if deficit() <= remaining:
                old_last = last[b]
                last[b] = j
                labels[j] = b
                yield from rec(j + 1)
                last[b] = old_last
            sizes[b] -= 1
        sizes.append(1)
        first.append(j)
        last.append(j)
        if deficit() <= remaining:
            labels[j] = len(sizes) - 1
            yield from rec(j + 1)
        sizes.pop()
        first.pop()
        last.pop()

    yield from rec(0)


_FILTER_ARGS = {
    "all": dict(),
    "pair": dict(min_block=2, max_block=2),
    "noncrossing": dict(noncrossing=True),
    "noncrossing_pair": dict(min_block=2, max_block=2, noncrossing=True),
    "min_block_2": dict(min_block=2),
}


def iter_partitions(k, filter="all"):
    """Lazily yield the partitions of ``[k]`` passing ``filter`` in RGS order."""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    if filter not in _FILTER_ARGS:
        raise DomainError(f"unknown filter {filter!r}; expected one of {FILTERS}")
    cls = PairPartition if filter in ("pair", "noncrossing_pair") else SetPartition
    if cls is PairPartition and k % 2:
        return
    for rgs in _rgs_generate(k, **_FILTER_ARGS[filter]):
        yield cls.from_rgs(rgs)


def enumerate_partitions(k, filter="all"):
    """All partitions of ``[k]`` passing ``filter``.

    Parameters
    ----------
    k : int
        Number of positions, ``k >= 1``.
    filter : {"all", "pair", "noncrossing", "noncrossing_pair", "min_block_2"}

    Returns
    -------
    list of SetPartition
        In restricted-growth-string order.  Pair filters return
        :class:`PairPartition` instances and an empty list for odd ``k``.

    Examples
    --------
    >>> [str(p) for p in enumerate_partitions(4, "noncrossing_pair")]
    ['12|34', '14|23']
    """
    return list(iter_partitions(k, filter))


def kernel(i):
    """The partition of positions grouping equal entries of ``i``."""
    i = tuple(i)
    if not i:
        raise DomainError("kernel of an empty tuple")
    seen = {}
    rgs = []
    for x in i:
        rgs.append(seen.setdefault(x, len(seen)))
    return SetPartition.from_rgs(rgs)


def blocks_cross(b1, b2):
    """Whether two disjoint blocks interleave as ``a < x < b < y``.

    For two pairs ``{r1, s1}``, ``{r2, s2}`` this is ``r1 < r2 < s1 < s2`` or
    ``r2 < r1 < s2 < s1``.
    """
    if len(b1) == 2 and len(b2) == 2:
        r1, s1 = b1
        r2, s2 = b2
        return r1 < r2 < s1 < s2 or r2 < r1 < s2 < s1
    merged = sorted([(x, 0) for x in b1] + [(x, 1) for x in b2])
    runs = 1
    for (_, a), (_, b) in zip(merged, merged[1:]):
        if a != b:
            runs += 1
            if runs >= 4:
                return True
    return False


def crossing_number(pi):
    """Number of crossing block pairs of ``pi``."""
    return len(pi.crossing_block_pairs())


def intersection_graph(pi):
    """Crossing graph of a pair partition.

    Vertex ``u`` (1-based) stands for ``pi.blocks[u - 1]``; two vertices are
    adjacent when their blocks cross.
    """
    from .graphs import SimpleGraph

    if not pi.is_pair:
        raise DomainError(f"{pi} is not a pair partition")
    edges = [(a + 1, b + 1) for a, b in pi.crossing_block_pairs()]
    return SimpleGraph(len(pi.blocks), edges)


def _local_partitions(block, min_block):
    if min_block <= 1:
        filt = "all"
    else:
        filt = "min_block_2"
    out = []
    for sub in iter_partitions(len(block), filt):
        out.append([tuple(block[x - 1] for x in b) for b in sub.blocks])
    return out


def refinements_below(rho, min_block=1):
    """Yield every partition below ``rho`` whose blocks have size ``>= min_block``.

    The yield order is the product order over the blocks of ``rho`` with each
    factor in RGS order.
    """
    if min_block not in (1, 2):
        raise DomainError(f"min_block must be 1 or 2, got {min_block}")
    factors = [_local_partitions(b, min_block) for b in rho.blocks]
    for choice in product(*factors):
        yield SetPartition([b for part in choice for b in part], rho.size)


def _pairings(items):
    if not items:
        yield ()
        return
    head, rest = items[0], items[1:]
    for idx in range(len(rest)):
        remaining = rest[:idx] + rest[idx + 1:]
        for tail in _pairings(remaining):
            yield ((head, rest[idx]),) + tail


def pair_partitions_below(rho):
    """Yield the pair partitions ``pi <= rho`` (empty if some block is odd)."""
    if any(len(b) % 2 for b in rho.blocks):
        return
    factors = [list(_pairings(b)) for b in rho.blocks]
    for choice in product(*factors):
        yield PairPartition([pair for part in choice for pair in part], rho.size)


def is_gn_noncrossing(pi, i, g):
    """Whether ``pi`` is ``(g, i)``-noncrossing.

    ``pi`` must refine ``ker(i)``, and whenever two distinct blocks cross, the
    vertices they carry must be adjacent in ``g``.  Two different blocks on the
    same vertex may therefore never cross (graphs are loopless).

    Parameters
    ----------
    pi : SetPartition
    i : sequence
        One vertex of ``g`` per position.
    g : SimpleGraph or GridGraph
    """
    i = tuple(i)
    if len(i) != pi.size:
        raise DomainError(f"|i| = {len(i)} but the partition has {pi.size} positions")
    verts = []
    for b in pi.blocks:
        v = i[b[0] - 1]
        if any(i[x - 1] != v for x in b):
            return False
        verts.append(v)
    for a, b in pi.crossing_block_pairs():
        if not g.has_edge(verts[a], verts[b]):
            return False
    return True


def paired_words(symbols, p):
    """Yield the words of length ``p`` over ``symbols`` using each symbol an even number of times.

    These are exactly the words whose kernel admits a pair partition; every
    other word has an empty set of compatible pairings.
    """
    from itertools import permutations

    symbols = list(symbols)
    if p % 2:
        return
    for rgs in _rgs_generate(p, min_block=2):
        counts = {}
        for lab in rgs:
            counts[lab] = counts.get(lab, 0) + 1
        if any(c % 2 for c in counts.values()):
            continue
        for assign in permutations(symbols, len(counts)):
            yield tuple(assign[lab] for lab in rgs)
