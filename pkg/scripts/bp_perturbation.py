"""Block selection on the perturbed basis for several lengths and norm bounds.

Reports the certified bound, the perturbation ratio sum and the runtime.
"""
import argparse
import time
from fractions import Fraction

from submeasures.extended import format_ext
from submeasures.instances import perturbed_basis, perturbed_basis_moduli
from submeasures.selectors import bp_select
from submeasures.streams import SetStream


def ratio_sum(cert) -> Fraction:
    return next(q.lhs for q in cert.evidence if q.label == "sum of perturbation ratios")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lengths", default="10,100,1000")
    ap.add_argument("--alphas", default="1,1/2")
    args = ap.parse_args()
    x = perturbed_basis()
    for alpha in (Fraction(a) for a in args.alphas.split(",")):
        for L in (int(v) for v in args.lengths.split(",")):
            t0 = time.perf_counter()
            sel, cert = bp_select(x, SetStream.naturals(modulus=perturbed_basis_moduli), alpha, L)
            dt = time.perf_counter() - t0
            print(f"alpha={format_ext(alpha):>4} L={L:>5}  verified={cert.verified}  M={format_ext(cert.bound)}"
                  f"  ratio sum={float(ratio_sum(cert)):.4g}  last index={sel.indices[-1]}  inequalities={len(cert.evidence)}  {dt:.2f}s")


if __name__ == "__main__":
    main()
