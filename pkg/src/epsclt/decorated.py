"""Subset-indexed matrix decorations of graphs and graphons.

An :class:`MLMatrix` is a ``2^L x 2^L`` matrix whose rows and columns are the
subsets of ``[L]``.  Subsets are encoded internally as bitmasks (bit ``l - 1``
for element ``l``); the public accessors take any iterable of layer labels.
"""

import math
from functools import lru_cache
from fractions import Fraction
from itertools import permutations, product

from ._numeric import total
from .combinatorics import PairPartition
from .errors import DomainError
from .graphon import cell_sum

__all__ = [
    "MAX_L",
    "XI",
    "subset_mask",
    "mask_subset",
    "MLMatrix",
    "basis_matrix",
    "DecoratedGraph",
    "DecoratedStepGraphon",
    "decorated_intersection_graph",
    "compressed_grid",
    "lex_limit_decoration",
    "constant_decoration",
    "rho_decorated",
    "hom_variants",
    "rho_inj_product_formula",
]

MAX_L = 6
XI = "xi"


def subset_mask(S):
    mask = 0
    for l in S:
        mask |= 1 << (int(l) - 1)
    return mask


def mask_subset(mask):
    return frozenset(l + 1 for l in range(mask.bit_length()) if mask >> l & 1)


def _is_subset(a, b):
    return a & ~b == 0


class MLMatrix:
    """A ``[0, 1]``-valued matrix indexed by pairs of subsets of ``[L]``.

    Parameters
    ----------
    L : int
        Number of layers, ``1 <= L <= 6``.
    data : nested sequence
        ``data[I][J]`` indexed by subset bitmasks.
    """

    __slots__ = ("L", "data", "_nz")

    def __init__(self, L, data):
        if not 1 <= L <= MAX_L:
            raise DomainError(f"L must lie in 1..{MAX_L}, got {L}")
        d = 1 << L
        data = tuple(tuple(row) for row in data)
        if len(data) != d or any(len(row) != d for row in data):
            raise DomainError(f"an M_L matrix for L={L} must be {d}x{d}")
        for row in data:
            for v in row:
                if not 0 <= v <= 1:
                    raise DomainError(f"entry {v} is outside [0, 1]")
        self.L = L
        self.data = data
        self._nz = tuple(
            (a, b, v) for a, row in enumerate(data) for b, v in enumerate(row) if v != 0
        )

    @classmethod
    def zeros(cls, L):
        d = 1 << L
        return cls(L, [[0] * d for _ in range(d)])

    @classmethod
    def from_function(cls, L, fn):
        """Build from ``fn(I, J)`` called with frozensets."""
        d = 1 << L
        subsets = [mask_subset(a) for a in range(d)]
        return cls(L, [[fn(subsets[a], subsets[b]) for b in range(d)] for a in range(d)])

    def __getitem__(self, key):
        I, J = key
        return self.data[subset_mask(I)][subset_mask(J)]

    def inner(self, other):
        """Hilbert-Schmidt inner product ``sum_{I,J} S_IJ T_IJ``."""
        if other.L != self.L:
            raise DomainError(f"L mismatch: {self.L} vs {other.L}")
        if len(self._nz) <= len(other._nz):
            a, b = self, other
        else:
            a, b = other, self
        return total(v * b.data[i][j] for i, j, v in a._nz) if a._nz else 0

    def hs_norm_squared(self):
        return total(v * v for _, _, v in self._nz) if self._nz else 0

    def hs_norm(self):
        return math.sqrt(self.hs_norm_squared())

    def transpose(self):
        return MLMatrix(self.L, list(zip(*self.data)))

    def __eq__(self, other):
        if not isinstance(other, MLMatrix):
            return NotImplemented
        return self.L == other.L and self.data == other.data

    def __hash__(self):
        return hash((self.L, self.data))

    def __repr__(self):
        items = ", ".join(
            f"({sorted(mask_subset(a))},{sorted(mask_subset(b))}):{v}" for a, b, v in self._nz
        )
        return f"MLMatrix(L={self.L}, {{{items}}})"


def basis_matrix(L, I, J):
    """Canonical basis element ``P_{I,J}``: a single 1 at ``(I, J)``."""
    a, b = subset_mask(I), subset_mask(J)
    if a >= 1 << L or b >= 1 << L:
        raise DomainError(f"subsets {sorted(I)}, {sorted(J)} are not inside [{L}]")
    return _basis(L, a, b)


@lru_cache(maxsize=4096)
def _basis(L, a, b):
    # MLMatrix is immutable, so one instance per (L, I, J) is shared
    d = 1 << L
    data = [[0] * d for _ in range(d)]
    data[a][b] = 1
    return MLMatrix(L, data)


class DecoratedGraph:
    """A graph whose edges carry ``M_L`` decorations in both orientations.

    Parameters
    ----------
    L : int
    vertices : sequence
        Hashable vertex labels in canonical order.
    edges : sequence of (u, v)
        One canonical orientation per edge.
    beta : dict
        ``beta[(u, v)]`` and ``beta[(v, u)]`` for every edge.
    """

    def __init__(self, L, vertices, edges, beta):
        self.L = L
        self.vertices = tuple(vertices)
        self._index = {v: k for k, v in enumerate(self.vertices)}
        self.edges = tuple(tuple(e) for e in edges)
        self.beta = dict(beta)
        for u, v in self.edges:
            if u == v:
                raise DomainError("decorated graphs are loopless")
            for key in ((u, v), (v, u)):
                if key not in self.beta:
                    raise DomainError(f"edge orientation {key!r} is not decorated")
                if self.beta[key].L != L:
                    raise DomainError(f"decoration of {key!r} has the wrong L")

    @property
    def n(self):
        return len(self.vertices)

    def index(self, v):
        return self._index[v]

    def decoration(self, u, v):
        """``beta(u, v)``, or ``None`` when ``uv`` is not an edge."""
        return self.beta.get((u, v))

    def __repr__(self):
        return f"DecoratedGraph(L={self.L}, |V|={self.n}, |E|={len(self.edges)})"


class DecoratedStepGraphon:
    """Piecewise-constant ``M_L``-valued kernel on ``[0, 1]^2``.

    ``values[a][b]`` is the matrix on cell ``(a, b)``.  Cells must satisfy
    ``||w(a, b)||_HS = ||w(b, a)||_HS``.
    """

    def __init__(self, breaks, values):
        breaks = tuple(breaks)
        m = len(breaks) - 1
        if m < 1 or breaks[0] != 0 or breaks[-1] != 1:
            raise DomainError("breaks must start at 0 and end at 1")
        if any(a >= b for a, b in zip(breaks, breaks[1:])):
            raise DomainError("breaks must be strictly increasing")
        values = tuple(tuple(row) for row in values)
        if len(values) != m or any(len(row) != m for row in values):
            raise DomainError(f"values must be a {m}x{m} grid of matrices")
        L = values[0][0].L
        for a in range(m):
            for b in range(m):
                if values[a][b].L != L:
                    raise DomainError("all cells must share the same L")
                if values[a][b].hs_norm_squared() != values[b][a].hs_norm_squared():
                    raise DomainError(f"HS norms differ between cells ({a},{b}) and ({b},{a})")
        self.breaks = breaks
        self.values = values
        self.L = L

    @property
    def m(self):
        return len(self.values)

    @property
    def widths(self):
        return tuple(b - a for a, b in zip(self.breaks, self.breaks[1:]))

    def __repr__(self):
        return f"DecoratedStepGraphon(L={self.L}, m={self.m})"


def constant_decoration(S):
    """The decorated graphon equal to ``S`` everywhere."""
    return DecoratedStepGraphon((0, 1), ((S,),))


def decorated_intersection_graph(pi, spec, L=None):
    """The decorated crossing graph of ``pi`` with the extra vertex ``xi``.

    Vertices are the blocks of ``pi`` (as tuples, in canonical order) followed
    by :data:`XI`.  Crossing blocks ``u, v`` are joined with decoration
    ``P_{J_u, J_v}``; a block ``{r, s}`` with ``alpha_r == alpha_s`` is joined to
    ``xi`` with ``P_{J_u, {}}`` (and ``P_{{}, J_u}`` in the other orientation).

    Raises
    ------
    DomainError
        If some block ``{r, s}`` has ``J_r != J_s``.
    """
    if not isinstance(pi, PairPartition):
        pi = PairPartition.from_partition(pi)
    if pi.size != spec.p:
        raise DomainError(f"partition of {pi.size} positions for a word of length {spec.p}")
    L = spec.L if L is None else L
    Ju = []
    for r, s in pi.blocks:
        if spec.J[r - 1] != spec.J[s - 1]:
            raise DomainError(f"block {{{r},{s}}} joins J_{r} != J_{s}")
        Ju.append(spec.J[r - 1])
    blocks = list(pi.blocks)
    empty = frozenset()
    edges, beta = [], {}
    for a, b in pi.crossing_block_pairs():
        u, v = blocks[a], blocks[b]
        edges.append((u, v))
        beta[(u, v)] = basis_matrix(L, Ju[a], Ju[b])
        beta[(v, u)] = basis_matrix(L, Ju[b], Ju[a])
    for a, (r, s) in enumerate(pi.blocks):
        if spec.alpha[r - 1] == spec.alpha[s - 1]:
            u = blocks[a]
            edges.append((u, XI))
            beta[(u, XI)] = basis_matrix(L, Ju[a], empty)
            beta[(XI, u)] = basis_matrix(L, empty, Ju[a])
    return DecoratedGraph(L, blocks + [XI], edges, beta)


def _complete_mask(J, adj):
    # every ordered pair l1 != l2 inside J is adjacent
    for l in range(J.bit_length()):
        if J >> l & 1 and not _is_subset(J & ~(1 << l), adj[l]):
            return False
    return True


def _gamma(L, cross, intra_u, intra_v):
    d = 1 << L
    data = [[0] * d for _ in range(d)]
    data[0][0] = 1
    for J in range(1, d):
        data[J][0] = 1 if _complete_mask(J, intra_u) else 0
        data[0][J] = 1 if _complete_mask(J, intra_v) else 0
    for J1 in range(1, d):
        rows = [cross[l] for l in range(L) if J1 >> l & 1]
        for J2 in range(1, d):
            data[J1][J2] = 1 if all(_is_subset(J2, r) for r in rows) else 0
    return MLMatrix(L, data)


def compressed_grid(g):
    """The decorated complete graph ``(K_n, gamma_n)`` of a grid graph.

    For ``u != v`` and nonempty ``J1, J2``: ``gamma_n(u,v)[J1,J2]`` indicates that
    every ``((u,l1),(v,l2))``, ``(l1,l2) in J1 x J2``, is an edge;
    ``gamma_n(u,v)[J,{}]`` (resp. ``[{},J]``) that ``J`` spans a clique in the
    layers of ``u`` (resp. ``v``); ``gamma_n(u,v)[{},{}] = 1``.
    """
    n, L = g.n, g.L
    if n < 2:
        raise DomainError("the compressed grid needs n >= 2")

    def adj_mask(u, v):
        return [
            sum(1 << (l2 - 1) for l2 in range(1, L + 1) if g.has_edge((u, l1), (v, l2)))
            for l1 in range(1, L + 1)
        ]

    intra = {u: adj_mask(u, u) for u in range(1, n + 1)}
    edges, beta = [], {}
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if u == v:
                continue
            if u < v:
                edges.append((u, v))
            beta[(u, v)] = _gamma(L, adj_mask(u, v), intra[u], intra[v])
    return DecoratedGraph(L, range(1, n + 1), edges, beta)


def lex_limit_decoration(gL, w):
    """Limit decoration of the compressed grids of ``g'_n . gL`` when ``g'_n -> w``.

    On every cell of ``w``: ``[J1, J2]`` equals ``w`` if ``J1`` and ``J2`` meet
    (1 otherwise) times the indicator that all ``l1 != l2`` in ``J1 x J2`` are
    ``gL``-adjacent; ``[J, {}]`` and ``[{}, J]`` indicate that ``J`` is a clique of
    ``gL``; ``[{}, {}] = 1``.
    """
    L = gL.n
    labels = gL.vertices
    adj = [
        sum(1 << (l2 - 1) for l2 in range(1, L + 1) if gL.has_edge(labels[l1 - 1], labels[l2 - 1]))
        for l1 in range(1, L + 1)
    ]
    d = 1 << L
    clique = [J == 0 or _complete_mask(J, adj) for J in range(d)]
    # off-diagonal layer pairs of J1 x J2 must all be gL-edges
    cross_ok = [[False] * d for _ in range(d)]
    for J1 in range(1, d):
        for J2 in range(1, d):
            cross_ok[J1][J2] = all(
                _is_subset(J2 & ~(1 << l), adj[l]) for l in range(L) if J1 >> l & 1
            )

    def cell(value):
        data = [[0] * d for _ in range(d)]
        data[0][0] = 1
        for J in range(1, d):
            data[J][0] = data[0][J] = 1 if clique[J] else 0
        for J1 in range(1, d):
            for J2 in range(1, d):
                if not cross_ok[J1][J2]:
                    continue
                data[J1][J2] = value if J1 & J2 else 1
        return MLMatrix(L, data)

    cache = {}
    values = []
    for row in w.values:
        out = []
        for v in row:
            if v not in cache:
                cache[v] = cell(v)
            out.append(cache[v])
        values.append(out)
    return DecoratedStepGraphon(w.breaks, values)


def rho_decorated(F, w):
    """Exact ``int prod_{(u,v) in E} <beta(u,v), w(x_u, x_v)> dx`` over the cells of ``w``."""
    if F.L != w.L:
        raise DomainError(f"L mismatch: decorated graph has L={F.L}, graphon has L={w.L}")
    m = w.m
    edges, tables, seen = [], [], {}
    for u, v in F.edges:
        b = F.beta[(u, v)]
        edges.append((F.index(u), F.index(v)))
        # decorations are often shared objects; F keeps them alive, so ids are stable here
        table = seen.get(id(b))
        if table is None:
            table = seen[id(b)] = [[b.inner(w.values[a][c]) for c in range(m)] for a in range(m)]
        tables.append(table)
    return cell_sum(F.n, edges, tables, w.widths)


def hom_variants(F, G, mode="all"):
    """Homomorphism density ``rho(F, G)`` or its injective version.

    ``mode="all"`` sums over all maps ``V(F) -> V(G)``, ``mode="injective"``
    over injective ones; both divide by ``|V(G)|^{|V(F)|}``.  Non-edges of
    ``G`` (including the diagonal) carry the zero decoration.
    """
    if F.L != G.L:
        raise DomainError(f"L mismatch: {F.L} vs {G.L}")
    if mode not in ("all", "injective"):
        raise DomainError(f"unknown mode {mode!r}")
    nF, nG = F.n, G.n
    edges = [(F.index(u), F.index(v), F.beta[(u, v)]) for u, v in F.edges]
    gverts = G.vertices
    tables = []
    for a, b, beta in edges:
        t = [[0] * nG for _ in range(nG)]
        for x in range(nG):
            for y in range(nG):
                gam = G.decoration(gverts[x], gverts[y])
                if gam is not None:
                    t[x][y] = beta.inner(gam)
        tables.append((a, b, t))
    maps = permutations(range(nG), nF) if mode == "injective" else product(range(nG), repeat=nF)
    terms = []
    for phi in maps:
        val = 1
        for a, b, t in tables:
            val *= t[phi[a]][phi[b]]
            if val == 0:
                break
        if val:
            terms.append(val)
    hom = total(terms) if terms else 0
    return Fraction(hom) / nG ** nF if not isinstance(hom, float) else hom / nG ** nF


def rho_inj_product_formula(pi, spec, g):
    """Injective density of the decorated crossing graph in ``(K_n, gamma_n)``.

    Evaluated straight from the grid edges::

        (n - p/2)/n * n^{-p/2} * sum over injective phi: blocks -> [n] of
          prod_{blocks u, alpha_r = alpha_s} [J_u spans a clique at index phi(u)]
          * prod_{crossing u, v} prod_{(l1,l2) in J_u x J_v} [((phi u, l1), (phi v, l2)) in E]
    """
    if not isinstance(pi, PairPartition):
        pi = PairPartition.from_partition(pi)
    n = g.n
    blocks = pi.blocks
    k = len(blocks)
    Ju = []
    for r, s in blocks:
        if spec.J[r - 1] != spec.J[s - 1]:
            raise DomainError(f"block {{{r},{s}}} joins J_{r} != J_{s}")
        Ju.append(sorted(spec.J[r - 1]))
    same_alpha = [spec.alpha[r - 1] == spec.alpha[s - 1] for r, s in blocks]
    crossing = pi.crossing_block_pairs()
    count = 0
    for phi in permutations(range(1, n + 1), k):
        ok = True
        for a in range(k):
            if same_alpha[a]:
                x = phi[a]
                if not all(
                    g.has_edge((x, l1), (x, l2)) for l1 in Ju[a] for l2 in Ju[a] if l1 != l2
                ):
                    ok = False
                    break
        if not ok:
            continue
        for a, b in crossing:
            x, y = phi[a], phi[b]
            if not all(g.has_edge((x, l1), (y, l2)) for l1 in Ju[a] for l2 in Ju[b]):
                ok = False
                break
        if ok:
            count += 1
    return Fraction(n * 2 - pi.size, 2 * n) * Fraction(count) / Fraction(n) ** (pi.size // 2)
