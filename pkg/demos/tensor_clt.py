"""The two-layer tensor model: products of two commuting variables, freely summed.

Each summand is a_k b_k with a_k, b_k classically independent, and different
k free from one another.  The limit of the normalised sum is a mixture of a
semicircle and a classical pair of semicircles, weighted by
alpha = 2 lambda^2 / (sigma^2 + 2 lambda^2).  Three independent routes compute
the same moments.

    python demos/tensor_clt.py
"""

from fractions import Fraction

from epsclt import (
    LimitModel,
    NormalizationParams,
    S_limit_moment,
    constant_graphon,
    tensor2_reference_moment,
)
from epsclt.graphs import complete_graph, h_graph


def main():
    gL = complete_graph(2)
    print("h graph of the two layers (edges between the s_J):")
    for u, v in h_graph(gL).sorted_edges():
        print("   ", sorted(u), "--", sorted(v))
    print("s_{1,2} has no neighbours: it is free from s_1 and s_2\n")

    for lam, s2 in [(1, 1), (2, 1), (0, 1), (Fraction(1, 2), 3)]:
        model = LimitModel(gL, constant_graphon(0), lam, s2)
        params = NormalizationParams(Fraction(lam), Fraction(s2))
        print(f"lambda = {lam}, sigma^2 = {s2}: alpha = {params.alpha}")
        for p in (2, 4, 6, 8):
            routes = {
                route: S_limit_moment(model, p, normalize="unit_variance", route=route)
                for route in ("lex", "master", "h")
            }
            ref = tensor2_reference_moment(params, p)
            agree = "agree" if len(set(routes.values()) | {ref}) == 1 else "DISAGREE"
            print(f"   m_{p} = {ref}   ({agree} across lex/master/h/mixture)")
        print()

    a = NormalizationParams(Fraction(1), Fraction(1)).alpha
    print(f"fourth moment at lambda = sigma = 1 is 2 + alpha^2/2 = {2 + a ** 2 / 2}")


if __name__ == "__main__":
    main()
