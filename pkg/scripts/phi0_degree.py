"""Pathology degree of the three-point table, with the dual proof of the hull.

Prints the hull of every subset, the dominated measure attaining it and the
dual multipliers, then compares the packing LP with vertex enumeration.
"""
import itertools
import sys
from fractions import Fraction
from pathlib import Path

from submeasures.extended import format_ext
from submeasures.instances import phi0_table
from submeasures.pathology import hat_phi, pathology_degree

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from oracles import vertex_hull  # noqa: E402


def main():
    phi = phi0_table()
    for r in range(1, 4):
        for A in itertools.combinations(range(3), r):
            h = hat_phi(phi, A)
            ratio = Fraction(phi(A)) / h.value
            measure = ", ".join(f"{k}:{format_ext(w)}" for k, w in h.witness.weights.items())
            dual = ", ".join(f"{list(B)}:{format_ext(y)}" for B, y in h.dual.items() if y)
            oracle = vertex_hull(phi, A)
            print(f"{list(A)}  phi={format_ext(phi(A))}  hull={format_ext(h.value)}  ratio={format_ext(ratio)}"
                  f"  oracle={'agrees' if oracle == h.value else format_ext(oracle)}")
            print(f"    measure {measure}; dual {dual}")
    rep = pathology_degree(phi, 3, 3)
    print(f"degree {format_ext(rep.degree)} at {list(rep.witness_set)}")


if __name__ == "__main__":
    main()
