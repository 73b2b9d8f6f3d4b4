"""Mixed moments of graph-independent variables, one graph at a time.

Variables on adjacent vertices commute and are classically independent;
variables on non-adjacent vertices are free.  The same word has different
moments depending on the graph, and words that alternate through non-edges
vanish once the variables are centred.

    python demos/graph_independence.py
"""

from fractions import Fraction

from epsclt import ScalarLaw, epsilon_moment
from epsclt.graphs import SimpleGraph, complete_graph, edgeless_graph, path_graph

# a centred law with unit variance and nonzero higher free cumulants
LAW = ScalarLaw.from_free_cumulants([0, 1, Fraction(1, 2), 2, 0, 1])

WORDS = [(1, 2, 1, 2), (1, 2, 2, 1), (1, 3, 1, 3), (1, 2, 3, 2, 1, 3), (1, 1, 2, 2, 3, 3)]


def main():
    graphs = {
        "complete": complete_graph(3),
        "edgeless": edgeless_graph(3),
        "path 1-2-3": path_graph(3),
        "edge 1-3": SimpleGraph(3, [(1, 3)]),
    }
    print("word".ljust(22) + "".join(name.rjust(13) for name in graphs))
    for i in WORDS:
        vals = [epsilon_moment(g, i, LAW) for g in graphs.values()]
        print(str(i).ljust(22) + "".join(str(v).rjust(13) for v in vals))

    print("\n(1,2,1,2) vanishes unless 1 and 2 are adjacent: two centred free variables")
    print("cannot be reordered, while commuting ones factor as tau(a^2) tau(b^2) = 1.")


if __name__ == "__main__":
    main()
