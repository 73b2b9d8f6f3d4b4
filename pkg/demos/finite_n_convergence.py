"""How fast the exact finite-n moments approach their limits.

Three cases with the exchangeable fast path (the trace depends on an index
tuple only through its kernel, so large n costs nothing extra):

* commuting summands: the fourth moment is 3 - 1/n;
* free semicircular summands: the fourth moment is exactly 2 for every n;
* the two-layer tensor model: the error halves when n doubles.

    python demos/finite_n_convergence.py
"""

from fractions import Fraction

from epsclt import LimitModel, ScalarLaw, Sn_product_moment, WordSpec, constant_graphon
from epsclt.finite_n import convergence_table, table_to_csv
from epsclt.graphs import LexicographicFamily, complete_graph


def main():
    semi = ScalarLaw.semicircle(4)
    fourth = WordSpec.uniform({1}, 4)
    classical = LexicographicFamily(complete_graph(1), "complete")
    free = LexicographicFamily(complete_graph(1), "edgeless")
    print("n        commuting     free")
    for n in (1, 2, 10, 100, 10 ** 4, 10 ** 6):
        c = Sn_product_moment(classical, semi, fourth, n=n)
        f = Sn_product_moment(free, semi, fourth, n=n)
        print(f"{n:<8} {str(c):<13} {f}")

    print("\ntwo-layer tensor model (lambda = sigma = 1), free index graph, unit variance:")
    model = LimitModel(complete_graph(2), constant_graphon(0), 1, 1)
    rows = convergence_table(model, family="edgeless", p_max=4, ns=(2, 4, 8, 16, 32))
    print(table_to_csv([r for r in rows if r.p == 4]), end="")
    diffs = [r.abs_diff for r in rows if r.p == 4]
    ratios = [a / b for a, b in zip(diffs, diffs[1:])]
    print("successive error ratios:", ", ".join(str(Fraction(r)) for r in ratios))


if __name__ == "__main__":
    main()
