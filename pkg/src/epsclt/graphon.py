"""Step graphons and exact homomorphism densities of plain graphs."""

from fractions import Fraction
from itertools import product

from ._numeric import to_number, total
from .errors import DomainError
from .graphs import SimpleGraph

__all__ = [
    "StepGraphon",
    "graphon_from_graph",
    "constant_graphon",
    "half_graphon",
    "blowup_graph",
    "cell_sum",
    "rho_graph",
    "rho_graphon",
]


class StepGraphon:
    """A piecewise-constant symmetric kernel on ``[0, 1]^2``.

    Parameters
    ----------
    breaks : sequence
        ``0 = t_0 < t_1 < ... < t_m = 1``.
    values : m x m nested sequence
        ``values[a][b]`` is the kernel on ``[t_a, t_{a+1}) x [t_b, t_{b+1})``.
        Must be symmetric with entries in ``[0, 1]``.
    exact : bool, default True
        Store entries as Fractions (rejecting non-integral floats) or floats.
    """

    def __init__(self, breaks, values, exact=True):
        breaks = tuple(to_number(t, exact) for t in breaks)
        m = len(breaks) - 1
        if m < 1 or breaks[0] != 0 or breaks[-1] != 1:
            raise DomainError("breaks must start at 0, end at 1 and have at least two points")
        if any(a >= b for a, b in zip(breaks, breaks[1:])):
            raise DomainError("breaks must be strictly increasing")
        values = tuple(tuple(to_number(v, exact) for v in row) for row in values)
        if len(values) != m or any(len(row) != m for row in values):
            raise DomainError(f"values must be a {m}x{m} matrix")
        for a in range(m):
            for b in range(m):
                v = values[a][b]
                if not 0 <= v <= 1:
                    raise DomainError(f"value {v} at cell ({a}, {b}) is outside [0, 1]")
                if v != values[b][a]:
                    raise DomainError(f"values are not symmetric at cell ({a}, {b})")
        self.breaks = breaks
        self.values = values
        self.exact = exact

    @property
    def m(self):
        return len(self.values)

    @property
    def widths(self):
        return tuple(b - a for a, b in zip(self.breaks, self.breaks[1:]))

    def cell_of(self, x):
        """Index of the cell containing ``x`` (the last cell is closed)."""
        for a in range(self.m):
            if x < self.breaks[a + 1]:
                return a
        return self.m - 1

    def __call__(self, x, y):
        return self.values[self.cell_of(x)][self.cell_of(y)]

    def __eq__(self, other):
        if not isinstance(other, StepGraphon):
            return NotImplemented
        return self.breaks == other.breaks and self.values == other.values

    def __hash__(self):
        return hash((self.breaks, self.values))

    def __repr__(self):
        return f"StepGraphon(m={self.m}, breaks={[str(t) for t in self.breaks]})"


def graphon_from_graph(g):
    """The step graphon of ``g`` on ``n`` equal cells (diagonal cells are 0)."""
    n = g.n
    breaks = [Fraction(k, n) for k in range(n + 1)]
    values = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        a, b = g.index(u), g.index(v)
        values[a][b] = values[b][a] = 1
    return StepGraphon(breaks, values)


def constant_graphon(q):
    """The single-cell graphon with value ``q``."""
    exact = not isinstance(q, float)
    q = to_number(q, exact)
    if not 0 <= q <= 1:
        raise DomainError(f"q = {q} is outside [0, 1]")
    return StepGraphon((0, 1), ((q,),), exact=exact)


def half_graphon():
    """Indicator of ``[0, 1/2) x [1/2, 1] U [1/2, 1] x [0, 1/2)``."""
    return StepGraphon((0, Fraction(1, 2), 1), ((0, 1), (1, 0)))


def blowup_graph(w, n):
    """Deterministic graph on ``[n]`` sampling a 0/1 step graphon at cell midpoints.

    Vertex ``k`` sits at ``(2k - 1) / (2n)``; distinct ``k, j`` are adjacent when
    the graphon equals 1 there.  The sequence converges to ``w`` as ``n`` grows.
    """
    if any(v not in (0, 1) for row in w.values for v in row):
        raise DomainError("only 0/1-valued step graphons have deterministic blow-ups")
    cells = [w.cell_of(Fraction(2 * k - 1, 2 * n)) for k in range(1, n + 1)]
    edges = [
        (k + 1, j + 1)
        for k in range(n)
        for j in range(k + 1, n)
        if w.values[cells[k]][cells[j]] == 1
    ]
    return SimpleGraph(n, edges)


def cell_sum(nverts, edges, tables, widths):
    """Sum over cell assignments of widths times per-edge factors.

    Parameters
    ----------
    nverts : int
        Vertices are ``0..nverts-1``.
    edges : sequence of (u, v)
    tables : sequence of m x m matrices
        ``tables[e][a][b]`` is the factor of edge ``e`` when its endpoints sit
        in cells ``a`` and ``b``.
    widths : sequence
        Cell widths (they sum to 1).
    """
    m = len(widths)
    if m == 1:
        out = Fraction(1)
        for t in tables:
            out *= t[0][0]
        return out
    # edges are attached to their later endpoint so each factor is applied once
    attached = [[] for _ in range(nverts)]
    for e, (u, v) in enumerate(edges):
        if u == v:
            raise DomainError("loops are not allowed in a homomorphism density")
        if u < v:
            attached[v].append((u, tables[e], False))
        else:
            attached[u].append((v, tables[e], True))
    terms = []
    cells = [0] * nverts

    def rec(v, acc):
        if v == nverts:
            terms.append(acc)
            return
        for a in range(m):
            val = acc * widths[a]
            for u, table, flipped in attached[v]:
                val = val * (table[a][cells[u]] if flipped else table[cells[u]][a])
                if val == 0:
                    break
            if val == 0:
                continue
            cells[v] = a
            rec(v + 1, val)

    rec(0, Fraction(1))
    return total(terms) if terms else Fraction(0)


def rho_graph(f, g):
    """Homomorphism density of ``f`` in ``g`` by enumeration of all maps.

    Returns the exact fraction of maps ``V(f) -> V(g)`` sending every edge of
    ``f`` to an edge of ``g``.
    """
    verts = f.vertices
    idx = {v: k for k, v in enumerate(verts)}
    edges = [(idx[u], idx[v]) for u, v in f.sorted_edges()]
    hits = 0
    for phi in product(g.vertices, repeat=len(verts)):
        if all(g.has_edge(phi[a], phi[b]) for a, b in edges):
            hits += 1
    return Fraction(hits, g.n ** len(verts))


def rho_graphon(f, w):
    """Exact homomorphism density ``int prod_{uv in E(f)} w(x_u, x_v) dx``."""
    verts = f.vertices
    idx = {v: k for k, v in enumerate(verts)}
    edges = [(idx[u], idx[v]) for u, v in f.sorted_edges()]
    return cell_sum(len(verts), edges, [w.values] * len(edges), w.widths)
