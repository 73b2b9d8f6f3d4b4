"""Interpolating between the Gaussian and the semicircle with a constant graphon.

With a single layer and index graphs whose edge density tends to q, the
limit law of the normalised sum has even moments given by the crossing
polynomial of pair partitions evaluated at q.  q = 1 recovers the classical
CLT, q = 0 the free CLT.

    python demos/q_gaussian.py
"""

from fractions import Fraction

from epsclt import clt_L1_moment, constant_graphon, half_graphon

QS = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]


def main():
    print("even moments m_2p of the limit law for constant edge density q\n")
    header = "q".ljust(6) + "".join(f"m_{2 * p}".rjust(19) for p in range(1, 6))
    print(header)
    for q in QS:
        w = constant_graphon(q)
        row = [clt_L1_moment(w, 2 * p) for p in range(1, 6)]
        print(str(q).ljust(6) + "".join(str(m).rjust(19) for m in row))

    # a non-constant limit: two halves, edges only across
    w = half_graphon()
    row = [clt_L1_moment(w, 2 * p) for p in range(1, 6)]
    print("\nbipartite half graphon:", ", ".join(str(m) for m in row))
    print("(the sixth moment depends on the graphon, not only on its edge density 1/2:",
          clt_L1_moment(constant_graphon(Fraction(1, 2)), 6), "for the constant one)")


if __name__ == "__main__":
    main()
