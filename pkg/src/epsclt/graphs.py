"""Loopless simple graphs, grid graphs over ``[n] x [L]`` and derived graphs."""

from itertools import combinations

from .errors import DomainError

__all__ = [
    "SimpleGraph",
    "GridGraph",
    "LexicographicFamily",
    "make_graph",
    "complete_graph",
    "edgeless_graph",
    "path_graph",
    "lexicographic_product",
    "nonempty_subsets",
    "h_graph",
    "is_complete_on",
]


class SimpleGraph:
    """Undirected loopless graph.

    Parameters
    ----------
    n : int
        Number of vertices; the vertices are ``1..n`` unless ``vertices`` is
        given.
    edges : iterable of pairs
        Unordered vertex pairs.  Duplicates are merged; loops are rejected.
    vertices : sequence, optional
        Explicit hashable vertex labels (in canonical order).
    """

    def __init__(self, n=None, edges=(), vertices=None):
        if vertices is None:
            if n is None:
                raise DomainError("either n or vertices is required")
            vertices = tuple(range(1, int(n) + 1))
        else:
            vertices = tuple(vertices)
            if n is not None and n != len(vertices):
                raise DomainError("n does not match the number of vertices")
        self.vertices = vertices
        self._index = {v: k for k, v in enumerate(vertices)}
        if len(self._index) != len(vertices):
            raise DomainError("duplicate vertex labels")
        adj = {v: set() for v in vertices}
        canon = set()
        for e in edges:
            u, v = e
            if u not in self._index or v not in self._index:
                raise DomainError(f"edge {e!r} uses a vertex outside the graph")
            if u == v:
                raise DomainError(f"loop at vertex {u!r}")
            if self._index[u] > self._index[v]:
                u, v = v, u
            canon.add((u, v))
            adj[u].add(v)
            adj[v].add(u)
        self.edges = frozenset(canon)
        self._adj = {v: frozenset(s) for v, s in adj.items()}

    @property
    def n(self):
        return len(self.vertices)

    def has_edge(self, u, v):
        nb = self._adj.get(u)
        return nb is not None and v in nb

    def neighbors(self, v):
        return self._adj[v]

    def sorted_edges(self):
        """Edges as ``(u, v)`` pairs ordered by vertex position."""
        return sorted(self.edges, key=lambda e: (self._index[e[0]], self._index[e[1]]))

    def index(self, v):
        return self._index[v]

    def __eq__(self, other):
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"SimpleGraph(n={self.n}, edges={self.sorted_edges()})"


def make_graph(kind, n, edge_list=None):
    """Build a graph on ``1..n`` of the given kind.

    ``kind`` is ``"complete"``, ``"edgeless"`` or ``"explicit"``; only the last
    one reads ``edge_list``.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if kind == "complete":
        return SimpleGraph(n, combinations(range(1, n + 1), 2))
    if kind == "edgeless":
        return SimpleGraph(n)
    if kind == "explicit":
        return SimpleGraph(n, edge_list or ())
    raise DomainError(f"unknown graph kind {kind!r}")


def complete_graph(n):
    return make_graph("complete", n)


def edgeless_graph(n):
    return make_graph("edgeless", n)


def path_graph(n):
    """The line graph ``1 - 2 - ... - n``."""
    return SimpleGraph(n, [(k, k + 1) for k in range(1, n)])


class GridGraph:
    """Loopless graph on the vertex set ``[n] x [L]``.

    Vertices are addressed as ``(k, l)``; their flat position is
    ``(k - 1) * L + (l - 1)``.
    """

    def __init__(self, n, L, edges=()):
        if n < 1 or L < 1:
            raise DomainError(f"grid dimensions must be positive, got n={n}, L={L}")
        self.n = int(n)
        self.L = int(L)
        adj = {}
        canon = set()
        for e in edges:
            a, b = (tuple(int(x) for x in v) for v in e)
            for k, l in (a, b):
                if not (1 <= k <= n and 1 <= l <= L):
                    raise DomainError(f"edge {e!r} leaves the grid [{n}]x[{L}]")
            if a == b:
                raise DomainError(f"loop at grid vertex {a}")
            if self.flat(a) > self.flat(b):
                a, b = b, a
            canon.add((a, b))
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        self.edges = frozenset(canon)
        self._adj = {v: frozenset(s) for v, s in adj.items()}

    @property
    def vertices(self):
        return tuple((k, l) for k in range(1, self.n + 1) for l in range(1, self.L + 1))

    def flat(self, v):
        return (v[0] - 1) * self.L + (v[1] - 1)

    def has_edge(self, u, v):
        nb = self._adj.get(u)
        return nb is not None and v in nb

    def sorted_edges(self):
        return sorted(self.edges, key=lambda e: (self.flat(e[0]), self.flat(e[1])))

    def restrict(self, m):
        """Induced subgraph on the indices ``1..m``."""
        if not 1 <= m <= self.n:
            raise DomainError(f"cannot restrict a grid with n={self.n} to {m} indices")
        keep = [e for e in self.edges if e[0][0] <= m and e[1][0] <= m]
        return GridGraph(m, self.L, keep)

    def is_index_exchangeable(self):
        """Whether every permutation of ``[n]`` is an automorphism.

        Equivalently, for each layer pair the edges joining equal indices and
        the edges joining distinct indices are each all present or all absent.
        Moments of index tuples then depend only on the tuple's kernel.
        """
        n, L = self.n, self.L
        for l1 in range(1, L + 1):
            for l2 in range(l1, L + 1):
                if l1 != l2:
                    same = {self.has_edge((k, l1), (k, l2)) for k in range(1, n + 1)}
                    if len(same) > 1:
                        return False
                diff = {
                    self.has_edge((k, l1), (j, l2))
                    for k in range(1, n + 1)
                    for j in range(1, n + 1)
                    if k != j
                }
                if len(diff) > 1:
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, GridGraph):
            return NotImplemented
        return (self.n, self.L, self.edges) == (other.n, other.L, other.edges)

    def __hash__(self):
        return hash((self.n, self.L, self.edges))

    def __repr__(self):
        return f"GridGraph(n={self.n}, L={self.L}, |E|={len(self.edges)})"


def lexicographic_product(gp, gL):
    """The grid graph ``gp . gL`` on ``[n] x [L]``.

    Each layer carries a copy of ``gp``; every pair of vertices in two
    ``gL``-adjacent layers is joined, including pairs with the same index.
    """
    n, L = gp.n, gL.n
    edges = []
    for u, v in gp.edges:
        i, j = gp.index(u) + 1, gp.index(v) + 1
        for l in range(1, L + 1):
            edges.append(((i, l), (j, l)))
    for a, b in gL.edges:
        l1, l2 = gL.index(a) + 1, gL.index(b) + 1
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                edges.append(((i, l1), (j, l2)))
    return GridGraph(n, L, edges)


class LexicographicFamily:
    """The sequence ``n -> g'_n . gL`` for a deterministic family ``g'_n``.

    Parameters
    ----------
    gL : SimpleGraph
        Layer graph over ``[L]``.
    base : {"complete", "edgeless"} or callable
        Either a named exchangeable family or a function ``n -> SimpleGraph``.
    """

    def __init__(self, gL, base):
        if isinstance(base, str) and base not in ("complete", "edgeless"):
            raise DomainError(f"unknown base family {base!r}")
        self.gL = gL
        self.base = base

    @property
    def L(self):
        return self.gL.n

    @property
    def exchangeable(self):
        return isinstance(self.base, str)

    def base_graph(self, n):
        if isinstance(self.base, str):
            return make_graph(self.base, n)
        g = self.base(n)
        if g.n != n:
            raise DomainError(f"base family returned a graph on {g.n} vertices for n={n}")
        return g

    def at(self, n):
        return lexicographic_product(self.base_graph(n), self.gL)

    def __repr__(self):
        name = self.base if isinstance(self.base, str) else getattr(self.base, "__name__", "custom")
        return f"LexicographicFamily(base={name}, L={self.L})"


def nonempty_subsets(L):
    """Nonempty subsets of ``[L]`` ordered by size, then lexicographically."""
    out = []
    for size in range(1, L + 1):
        for c in combinations(range(1, L + 1), size):
            out.append(frozenset(c))
    return out


def h_graph(gL):
    """Independence graph of the limit variables ``s_J``.

    Vertices are the nonempty subsets of ``[L]``; ``J1 ~ J2`` iff every pair in
    ``J1 x J2`` is an edge of ``gL``.
    """
    subsets = nonempty_subsets(gL.n)
    labels = gL.vertices
    edges = []
    for a, b in combinations(subsets, 2):
        if all(gL.has_edge(labels[x - 1], labels[y - 1]) for x in a for y in b):
            edges.append((a, b))
    return SimpleGraph(vertices=subsets, edges=edges)


def is_complete_on(g, S):
    """Whether all distinct pairs of ``S`` are edges of ``g``."""
    S = list(S)
    for v in S:
        if v not in g.vertices:
            raise DomainError(f"{v!r} is not a vertex")
    return all(g.has_edge(u, v) for u, v in combinations(S, 2))
